//! Numeric backends shared by every layer.
//!
//! Two concrete component types are used throughout: [`Complex64`] for
//! fixtures with irrational normalisations, and [`GaussRational`] (complex
//! numbers over exact big rationals) wherever a residual has to be exactly
//! zero. Polynomials in the Gauduchon parameter and forward-mode duals are
//! also [`Ring`]s, so the same tensor formulas run over all of them.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_complex::Complex64;

/// Exact complex numbers `p + q i` with `p, q` rational.
pub type GaussRational = Complex<BigRational>;

/// A commutative ring with a conjugation involution.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact, in which case residual checks demand `is_zero`.
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    /// Size used for tolerance tests (max-abs over all stored components).
    fn magnitude(&self) -> f64;

    /// Zero test honouring the backend: exact equality, or `magnitude <= tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    /// The imaginary unit; every field used here contains `i`.
    fn imag_unit() -> Self;
}

impl Ring for BigRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
}

impl Ring for GaussRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.re.abs()).max(rational_to_f64(&self.im.abs()))
    }
}

impl Field for GaussRational {
    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
}

impl Ring for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Field for Complex64 {
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: BigRational, im: BigRational) -> GaussRational {
    Complex::new(re, im)
}

/// Converts an exact component to floating point.
pub fn gauss_to_c64(z: &GaussRational) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Parses `"p"`, `"p/q"`, or a finite decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Some(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a Gaussian rational as `p`, `q*i` or `(p + q*i)`.
pub fn format_gauss(z: &GaussRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => format!("{}*i", format_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("({} {sign} {}*i)", format_rational(&z.re), format_rational(&z.im.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("2/3"), Some(rational(2, 3)));
        assert_eq!(parse_rational("-0.25"), Some(rational(-1, 4)));
        assert_eq!(parse_rational(" 4 "), Some(rational(4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn exact_negligibility_ignores_tolerance() {
        let tiny = GaussRational::from_rational(&rational(1, 1_000_000_000_000_000_000));
        assert!(!tiny.is_negligible(1e-3));
        assert!(Complex64::new(1e-14, 0.0).is_negligible(1e-12));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let z = gauss(rational(1, 2), rational(-3, 7));
        assert_eq!(Ring::conj(&Ring::conj(&z)), z);
    }
}
