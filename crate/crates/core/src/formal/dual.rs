use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Ring;

/// First-order jet along one frame direction `e_m` and its conjugate `ē_m`.
///
/// `d` carries `c·∂_m` and `db` carries `c·∂_{m̄}` of the value, so the
/// product rule keeps everything polynomial. Conjugation swaps the two
/// directions: `∂_m conj(f) = conj(∂_{m̄} f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<R> {
    pub v: R,
    pub d: R,
    pub db: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(v: R, d: R, db: R) -> Self {
        Dual { v, d, db }
    }

    pub fn constant(v: R) -> Self {
        Dual { v, d: R::zero(), db: R::zero() }
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { v: self.v + o.v, d: self.d + o.d, db: self.db + o.db }
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { v: self.v - o.v, d: self.d - o.d, db: self.db - o.db }
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: -self.d, db: -self.db }
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = mul_skip(&self.v, &o.d) + mul_skip(&self.d, &o.v);
        let db = mul_skip(&self.v, &o.db) + mul_skip(&self.db, &o.v);
        Dual { v: mul_skip(&self.v, &o.v), d, db }
    }
}

fn mul_skip<R: Ring>(x: &R, y: &R) -> R {
    if x.is_zero() || y.is_zero() {
        R::zero()
    } else {
        x.clone() * y.clone()
    }
}

impl<R: Ring> Zero for Dual<R> {
    fn zero() -> Self {
        Self::constant(R::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero() && self.db.is_zero()
    }
}

impl<R: Ring> One for Dual<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Ring for Dual<R> {
    const EXACT: bool = R::EXACT;

    fn conj(&self) -> Self {
        Dual { v: self.v.conj(), d: self.db.conj(), db: self.d.conj() }
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::constant(R::from_rational(q))
    }

    fn magnitude(&self) -> f64 {
        self.v.magnitude().max(self.d.magnitude()).max(self.db.magnitude())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, rational, GaussRational};

    fn g(re: i64, im: i64) -> GaussRational {
        gauss(rational(re, 1), rational(im, 1))
    }

    #[test]
    fn product_rule() {
        let x = Dual::new(g(1, 2), g(3, 0), g(0, 1));
        let y = Dual::new(g(2, -1), g(1, 1), g(5, 0));
        let p = x.clone() * y.clone();
        assert_eq!(p.v, g(1, 2) * g(2, -1));
        assert_eq!(p.d, g(1, 2) * g(1, 1) + g(3, 0) * g(2, -1));
        assert_eq!(p.db, g(1, 2) * g(5, 0) + g(0, 1) * g(2, -1));
    }

    #[test]
    fn conjugation_swaps_directions() {
        let x = Dual::new(g(1, 2), g(3, 4), g(5, 6));
        let c = x.conj();
        assert_eq!(c.d, g(5, -6));
        assert_eq!(c.db, g(3, -4));
        assert_eq!(c.conj(), x);
        // |x|² is real with conjugate-symmetric derivatives
        let n = x.clone() * x.conj();
        assert_eq!(n.d, n.db.conj());
    }
}
