//! Left-invariant exterior algebra on the complexified coframe, the
//! fundamental form, and the Lee form.
//!
//! Wedge products follow `α∧β = α⊗β - β⊗α` (no `1/k!` factors), so a
//! 2-form `Σ_{a<b} w_ab φ^a∧φ^b` evaluates to `w_ab` on `(f_a, f_b)`.

use crate::scalar::{Field, Ring};

use super::model::HermitianModel;

/// A form stored densely over monomials indexed by bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<S> {
    dim: usize,
    coeffs: Vec<S>,
}

/// Whether `φ^left ∧ φ^right` is minus the sorted monomial `φ^(left|right)`.
fn merge_sign(left: u32, right: u32) -> bool {
    // count pairs (i in left, j in right) with i > j
    let mut inversions = 0;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        inversions += (left >> (j + 1)).count_ones();
        r &= r - 1;
    }
    inversions % 2 == 1
}

impl<S: Ring> Form<S> {
    pub fn zero(dim: usize, _degree: usize) -> Self {
        assert!(dim <= 16, "exterior algebra limited to 16 generators");
        Form { dim, coeffs: vec![S::zero(); 1 << dim] }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.coeffs[0] = c;
        f
    }

    pub fn basis(dim: usize, a: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.coeffs[1 << a] = S::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: u32) -> &S {
        &self.coeffs[mask as usize]
    }

    /// Adds `c · φ^a∧φ^b`.
    pub fn add_wedge(&mut self, a: usize, b: usize, c: S) {
        if a == b {
            return;
        }
        let mask = (1usize << a) | (1usize << b);
        let v = if a < b { c } else { -c };
        self.coeffs[mask] = self.coeffs[mask].clone() + v;
    }

    pub fn add(&self, other: &Self) -> Self {
        Form { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Form { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, k: &S) -> Self {
        Form { dim: self.dim, coeffs: self.coeffs.iter().map(|a| a.clone() * k.clone()).collect() }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim, 0);
        for (m1, c1) in self.coeffs.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (m2, c2) in other.coeffs.iter().enumerate() {
                if c2.is_zero() || m1 & m2 != 0 {
                    continue;
                }
                let v = c1.clone() * c2.clone();
                let v = if merge_sign(m1 as u32, m2 as u32) { -v } else { v };
                out.coeffs[m1 | m2] = out.coeffs[m1 | m2].clone() + v;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }
}

impl<S: Field> HermitianModel<S> {
    /// Exterior derivative of a left-invariant form, extending
    /// `dφ^c = -φ^c([·, ·])` as an antiderivation.
    pub fn exterior_derivative(&self, form: &Form<S>) -> Form<S> {
        let dim = self.dim();
        let dphi: Vec<Form<S>> = (0..dim).map(|c| self.coframe_differential(c)).collect();
        let mut out = Form::zero(dim, 0);
        for (mask, coeff) in form.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let indices: Vec<usize> = (0..dim).filter(|&i| mask & (1 << i) != 0).collect();
            for (pos, &i) in indices.iter().enumerate() {
                let before: usize = indices[..pos].iter().map(|&k| 1usize << k).sum();
                let after: usize = indices[pos + 1..].iter().map(|&k| 1usize << k).sum();
                let mut left = Form::zero(dim, 0);
                left.coeffs[before] = S::one();
                let mut right = Form::zero(dim, 0);
                right.coeffs[after] = S::one();
                let term = left.wedge(&dphi[i]).wedge(&right);
                let c = if pos % 2 == 1 { -coeff.clone() } else { coeff.clone() };
                out = out.add(&term.scale(&c));
            }
        }
        out
    }

    /// `ω = g(J·, ·) = i Σ_k φ^k∧φ̄^k`.
    pub fn fundamental_form(&self) -> Form<S> {
        let n = self.n();
        let mut w = Form::zero(2 * n, 2);
        for k in 0..n {
            w.add_wedge(k, n + k, S::imag_unit());
        }
        w
    }

    /// The Lee form `θ` with `dω^{n-1} = θ∧ω^{n-1}`.
    pub fn lee_form(&self) -> LeeForm<S> {
        let n = self.n();
        let dim = 2 * n;
        let omega = self.fundamental_form();
        let mut power = Form::constant(dim, S::one());
        for _ in 0..n.saturating_sub(1) {
            power = power.wedge(&omega);
        }
        let target = self.exterior_derivative(&power);
        // φ^a∧ω^{n-1} is a single monomial: every generator except the conjugate of a
        let full: usize = (1usize << dim) - 1;
        let mut theta = vec![S::zero(); dim];
        for (a, slot) in theta.iter_mut().enumerate() {
            let image = Form::basis(dim, a).wedge(&power);
            let mask = full & !(1usize << super::model::bar(n, a));
            let denom = image.coeffs[mask].clone();
            assert!(!denom.is_zero(), "ω^(n-1) is degenerate");
            *slot = target.coeffs[mask].clone() / denom;
        }
        let mut theta_form = Form::zero(dim, 1);
        for (a, c) in theta.iter().enumerate() {
            theta_form.coeffs[1 << a] = c.clone();
        }
        let residual = target.sub(&theta_form.wedge(&power)).max_abs();
        LeeForm { components: theta, residual }
    }

    /// `dω = 0`.
    pub fn is_kahler(&self) -> bool {
        let tol = if S::EXACT { 0.0 } else { 1e-10 };
        self.exterior_derivative(&self.fundamental_form()).is_negligible(tol)
    }
}

/// Lee form components on the complexified coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct LeeForm<S> {
    /// `θ = Σ_a components[a] φ^a` over `(φ^1..φ^n, φ̄^1..φ̄^n)`.
    pub components: Vec<S>,
    /// Max-norm of `dω^{n-1} - θ∧ω^{n-1}`.
    pub residual: f64,
}

impl<S: Field> LeeForm<S> {
    /// `-θ^{1,0}/2`, which must equal the torsion 1-form `η`.
    pub fn eta(&self) -> Vec<S> {
        let n = self.components.len() / 2;
        let half = S::from_rational(&crate::scalar::rational(-1, 2));
        self.components[..n].iter().map(|c| c.clone() * half.clone()).collect()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.components.iter().all(|c| c.is_negligible(tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Complex64;

    #[test]
    fn wedge_is_graded_commutative() {
        let a: Form<Complex64> = Form::basis(4, 1);
        let b: Form<Complex64> = Form::basis(4, 3);
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&Complex64::new(-1.0, 0.0)));
        assert!(a.wedge(&a).is_negligible(0.0));
    }

    #[test]
    fn merge_sign_counts_inversions() {
        assert!(!merge_sign(0b001, 0b010));
        assert!(merge_sign(0b010, 0b001));
        assert!(!merge_sign(0b100, 0b011));
    }
}
