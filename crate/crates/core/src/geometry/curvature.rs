use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::scalar::{rational_to_f64, Field};
use crate::tensor::SquareMatrix;

use super::connection::{gauduchon, Connection};
use super::model::HermitianModel;

/// Curvature endomorphisms `R(f_a, f_b)` for all complexified direction pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature<S> {
    n: usize,
    /// `[a][b]`, row-major over `2n × 2n`.
    blocks: Vec<SquareMatrix<S>>,
}

impl<S: Field> Curvature<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `R(f_a, f_b)` as a matrix: entry `[c][d]` is the `f_c` coefficient of `R(f_a, f_b) f_d`.
    pub fn endomorphism(&self, a: usize, b: usize) -> &SquareMatrix<S> {
        &self.blocks[a * 2 * self.n + b]
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &S {
        self.endomorphism(a, b).get(c, d)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(SquareMatrix::max_abs).fold(0.0, f64::max)
    }

    /// Largest `|R(a,b) + R(b,a)|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let dim = 2 * self.n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                worst = worst.max(self.endomorphism(a, b).add(self.endomorphism(b, a)).max_abs());
            }
        }
        worst
    }

    /// Largest component of `Σ_cyc R(X,Y)Z` over frame triples.
    pub fn bianchi_defect(&self) -> f64 {
        let dim = 2 * self.n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for e in 0..dim {
                        let v = self.get(a, b, e, c).clone() + self.get(b, c, e, a).clone() + self.get(c, a, e, b).clone();
                        worst = worst.max(v.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest component of `R(JX, JY) - R(X, Y)`, using `J f_a = ±i f_a`.
    pub fn type_defect(&self) -> f64 {
        let n = self.n;
        let dim = 2 * n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                let ea = if a < n { 1 } else { -1 };
                let eb = if b < n { 1 } else { -1 };
                // R(J f_a, J f_b) = (i ε_a)(i ε_b) R(f_a, f_b)
                let factor = S::from_i64(-ea * eb - 1);
                worst = worst.max(self.endomorphism(a, b).scale(&factor).max_abs());
            }
        }
        worst
    }

    /// First Ricci trace `Ric(f_a, f_b) = Σ_i g(R(f_a, f_b) e_i, ē_i)`.
    pub fn ricci_first(&self) -> SquareMatrix<S> {
        let n = self.n;
        SquareMatrix::from_fn(2 * n, |a, b| {
            let m = self.endomorphism(a, b);
            (0..n).fold(S::zero(), |acc, i| acc + m.get(i, i).clone())
        })
    }
}

/// `R(a,b) = Γ(a)Γ(b) - Γ(b)Γ(a) - Σ_c [f_a, f_b]^c Γ(c)`.
pub fn curvature<S: Field>(model: &HermitianModel<S>, conn: &Connection<S>) -> Curvature<S> {
    let n = model.n();
    let dim = 2 * n;
    let mut blocks = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut r = conn.matrix(a).matmul(conn.matrix(b)).sub(&conn.matrix(b).matmul(conn.matrix(a)));
            for c in 0..dim {
                let f = model.bracket(c, a, b);
                if !f.is_zero() {
                    r = r.sub(&conn.matrix(c).scale(f));
                }
            }
            blocks.push(r);
        }
    }
    Curvature { n, blocks }
}

/// Largest component of the Bianchi identity with torsion,
/// `Σ_cyc R(X,Y)Z = Σ_cyc (T(T(X,Y),Z) + (∇_X T)(Y,Z))`.
pub fn general_bianchi_defect<S: Field>(model: &HermitianModel<S>, conn: &Connection<S>) -> f64 {
    let dim = model.dim();
    let r = curvature(model, conn);
    let t = conn.torsion(model);
    // (∇_a T)(f_b, f_c) and T(T(f_a, f_b), f_c), both as f_e coefficients
    let nabla_t = |e: usize, a: usize, b: usize, c: usize| -> S {
        let mut acc = S::zero();
        for g in 0..dim {
            acc = acc + conn.coeff(a, e, g).clone() * t.get(g, b, c).clone();
            acc = acc - conn.coeff(a, g, b).clone() * t.get(e, g, c).clone();
            acc = acc - conn.coeff(a, g, c).clone() * t.get(e, b, g).clone();
        }
        acc
    };
    let tt = |e: usize, a: usize, b: usize, c: usize| -> S {
        (0..dim).fold(S::zero(), |acc, h| acc + t.get(h, a, b).clone() * t.get(e, h, c).clone())
    };
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for e in 0..dim {
                    let lhs = r.get(a, b, e, c).clone() + r.get(b, c, e, a).clone() + r.get(c, a, e, b).clone();
                    let rhs = tt(e, a, b, c)
                        + tt(e, b, c, a)
                        + tt(e, c, a, b)
                        + nabla_t(e, a, b, c)
                        + nabla_t(e, b, c, a)
                        + nabla_t(e, c, a, b);
                    worst = worst.max((lhs - rhs).magnitude());
                }
            }
        }
    }
    worst
}

/// Residuals of the Kähler-like conditions for `∇^s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KahlerLikeReport {
    pub s: f64,
    pub rho_bianchi: f64,
    pub rho_type: f64,
    pub rho_flat: f64,
}

impl KahlerLikeReport {
    pub fn is_kahler_like(&self, tol: f64) -> bool {
        self.rho_bianchi <= tol && self.rho_type <= tol
    }

    pub fn is_flat(&self, tol: f64) -> bool {
        self.rho_flat <= tol
    }
}

pub fn kahler_like_residual<S: Field>(model: &HermitianModel<S>, s: &BigRational) -> KahlerLikeReport {
    let r = curvature(model, &gauduchon(model, s));
    KahlerLikeReport {
        s: rational_to_f64(s),
        rho_bianchi: r.bianchi_defect(),
        rho_type: r.type_defect(),
        rho_flat: r.max_abs(),
    }
}

/// First Ricci trace of `∇^s`.
pub fn ricci_first<S: Field>(model: &HermitianModel<S>, s: &BigRational) -> SquareMatrix<S> {
    curvature(model, &gauduchon(model, s)).ricci_first()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::test_models::*;
    use crate::scalar::rational;

    fn grid() -> Vec<BigRational> {
        [(-1, 1), (0, 1), (1, 3), (1, 2), (2, 3), (4, 5), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1), (4, 1)]
            .iter()
            .map(|&(p, q)| rational(p, q))
            .collect()
    }

    #[test]
    fn torus_is_flat_everywhere() {
        for s in grid() {
            let r = kahler_like_residual(&torus(3), &s);
            assert_eq!((r.rho_bianchi, r.rho_type, r.rho_flat), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn iwasawa_is_chern_flat_only() {
        let m = iwasawa_exact();
        assert_eq!(kahler_like_residual(&m, &rational(0, 1)).rho_flat, 0.0);
        for s in grid().into_iter().filter(|s| s != &rational(0, 1)) {
            let r = kahler_like_residual(&m, &s);
            assert!(r.rho_bianchi > 1e-3, "s = {s}: {r:?}");
        }
    }

    #[test]
    fn hopf_is_bismut_flat_but_not_chern_flat() {
        let m = hopf();
        let r2 = kahler_like_residual(&m, &rational(2, 1));
        assert!(r2.rho_flat < 1e-12, "{r2:?}");
        let r0 = kahler_like_residual(&m, &rational(0, 1));
        assert!((r0.rho_flat - 0.5).abs() < 1e-12, "{r0:?}");
        let r1 = kahler_like_residual(&m, &rational(1, 1));
        assert!((r1.rho_flat - 0.375).abs() < 1e-12, "{r1:?}");
    }

    #[test]
    fn curvature_is_antisymmetric_and_satisfies_bianchi_with_torsion() {
        for m in [hopf(), random_nilpotent(3), random_nilpotent(9)] {
            for s in grid() {
                let conn = gauduchon(&m, &s);
                assert!(curvature(&m, &conn).antisymmetry_defect() <= 1e-12);
                let d = general_bianchi_defect(&m, &conn);
                assert!(d <= 1e-10, "s = {s}: {d}");
            }
        }
    }

    #[test]
    fn exact_bianchi_on_iwasawa() {
        let m = iwasawa_exact();
        for s in grid() {
            assert_eq!(general_bianchi_defect(&m, &gauduchon(&m, &s)), 0.0);
        }
    }

    #[test]
    fn iwasawa_ricci_vanishes_on_the_grid() {
        let m = iwasawa_exact();
        for s in grid() {
            assert_eq!(ricci_first(&m, &s).max_abs(), 0.0, "s = {s}");
        }
    }

    #[test]
    fn hopf_ricci_vanishes_at_bismut_point() {
        assert!(ricci_first(&hopf(), &rational(2, 1)).max_abs() < 1e-12);
        assert!(ricci_first(&hopf(), &rational(0, 1)).max_abs() > 0.1);
    }
}
