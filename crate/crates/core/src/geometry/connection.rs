use num_rational::BigRational;

use crate::scalar::{rational, Field, Ring};
use crate::tensor::{FrameTensor, Slot, SquareMatrix};

use super::model::{bar, idx3, HermitianModel};

/// Coefficients of a left-invariant connection on the complexified frame.
///
/// `gamma[a]` is the matrix of `∇_{f_a}`: entry `[c][d]` is the coefficient
/// of `f_c` in `∇_{f_a} f_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<S> {
    n: usize,
    gamma: Vec<SquareMatrix<S>>,
}

impl<S: Field> Connection<S> {
    pub fn zero(n: usize) -> Self {
        Connection { n, gamma: vec![SquareMatrix::zeros(2 * n); 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, a: usize) -> &SquareMatrix<S> {
        &self.gamma[a]
    }

    /// Coefficient of `f_c` in `∇_{f_a} f_d`.
    pub fn coeff(&self, a: usize, c: usize, d: usize) -> &S {
        self.gamma[a].get(c, d)
    }

    fn add_to(&mut self, a: usize, c: usize, d: usize, v: S) {
        let cur = self.gamma[a].get(c, d).clone();
        self.gamma[a].set(c, d, cur + v);
    }

    /// Largest `|g(∇_a f_b, f_c) + g(f_b, ∇_a f_c)|` for the bilinear metric.
    pub fn metric_defect(&self) -> f64 {
        let n = self.n;
        let dim = 2 * n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    // g(f_x, f_y) = 1 iff y = bar(x)
                    let v = self.coeff(a, bar(n, c), b).clone() + self.coeff(a, bar(n, b), c).clone();
                    worst = worst.max(v.magnitude());
                }
            }
        }
        worst
    }

    /// Largest off-block coefficient (a nonzero value would mean `∇J ≠ 0`).
    pub fn type_defect(&self) -> f64 {
        let n = self.n;
        let dim = 2 * n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    if (c < n) != (d < n) {
                        worst = worst.max(self.coeff(a, c, d).magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest `|∇_{f̄_a} f̄_d - conj(∇_{f_a} f_d)|`.
    pub fn reality_defect(&self) -> f64 {
        let n = self.n;
        let dim = 2 * n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    let v = self.coeff(bar(n, a), bar(n, c), bar(n, d)).clone() - self.coeff(a, c, d).conj();
                    worst = worst.max(v.magnitude());
                }
            }
        }
        worst
    }

    /// Components of `T^∇(f_a, f_b) = ∇_a f_b - ∇_b f_a - [f_a, f_b]`, indexed `[c][a][b]`.
    pub fn torsion(&self, model: &HermitianModel<S>) -> FullTorsion<S> {
        let dim = 2 * self.n;
        let mut data = vec![S::zero(); dim * dim * dim];
        for c in 0..dim {
            for a in 0..dim {
                for b in 0..dim {
                    data[idx3(dim, c, a, b)] =
                        self.coeff(a, c, b).clone() - self.coeff(b, c, a).clone() - model.bracket(c, a, b).clone();
                }
            }
        }
        FullTorsion { n: self.n, data }
    }
}

/// Torsion of a connection on the complexified frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FullTorsion<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Field> FullTorsion<S> {
    /// Coefficient of `f_c` in `T(f_a, f_b)`.
    pub fn get(&self, c: usize, a: usize, b: usize) -> &S {
        &self.data[idx3(2 * self.n, c, a, b)]
    }

    /// Largest component of `T(ē_i, ē_j)` along `e_k`.
    pub fn type_02_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max(self.get(k, n + i, n + j).magnitude());
                }
            }
        }
        worst
    }

    /// Largest `|g(T(X,Y),Z) + g(T(X,Z),Y)|`: zero iff the torsion is a 3-form.
    pub fn skew_defect(&self) -> f64 {
        let n = self.n;
        let dim = 2 * n;
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = self.get(bar(n, c), a, b).clone() + self.get(bar(n, b), a, c).clone();
                    worst = worst.max(v.magnitude());
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }
}

/// The Chern connection: `∇_{ē_i} e_j = [ē_i, e_j]^{1,0}`, completed by metric
/// compatibility and reality.
pub fn chern<S: Field>(model: &HermitianModel<S>) -> Connection<S> {
    let n = model.n();
    let mut conn = Connection::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // ∇_{ē_i} e_j = [ē_i, e_j]^{1,0}
                let v = model.bracket(k, n + i, j).clone();
                conn.add_to(n + i, k, j, v.clone());
                // ∇_{e_i} ē_j = conj(∇_{ē_i} e_j)
                conn.add_to(i, n + k, n + j, v.conj());
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // g(∇_{e_i} e_j, ē_k) = -g(e_j, ∇_{e_i} ē_k)
                let v = -conn.coeff(i, n + j, n + k).clone();
                conn.add_to(i, k, j, v.clone());
                conn.add_to(n + i, n + k, n + j, v.conj());
            }
        }
    }
    conn
}

/// Chern torsion `T^k_ij` (slots `[HolUp, HolDown, HolDown]`, index order
/// `(k, i, j)`) and the torsion 1-form `η_j = T^k_kj`.
pub fn chern_torsion<S: Field>(model: &HermitianModel<S>) -> (FrameTensor<S>, FrameTensor<S>) {
    torsion_from_chern(model, &chern(model))
}

fn torsion_from_chern<S: Field>(model: &HermitianModel<S>, chern: &Connection<S>) -> (FrameTensor<S>, FrameTensor<S>) {
    let n = model.n();
    let full = chern.torsion(model);
    let half = S::from_rational(&rational(1, 2));
    let t = FrameTensor::from_fn(n, &[Slot::HolUp, Slot::HolDown, Slot::HolDown], |ix| {
        full.get(ix[0], ix[1], ix[2]).clone() * half.clone()
    });
    let eta = t.contract(0, 1).expect("hol-up pairs with hol-down");
    (t, eta)
}

/// `∇^s = ∇^c + γ^s` with `g(γ(e_i)e_j, ē_k) = -s T^k_ij` and
/// `γ(ē_i)e_j = s conj(T^j_ik) e_k`, extended by metric compatibility and reality.
pub fn gauduchon<S: Field>(model: &HermitianModel<S>, s: &BigRational) -> Connection<S> {
    let n = model.n();
    let ch = chern(model);
    let (t, _) = torsion_from_chern(model, &ch);
    let s = S::from_rational(s);
    let mut conn = ch;
    let tk = |k: usize, i: usize, j: usize| t.get(&[k, i, j]).clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let hol = -(s.clone() * tk(k, i, j));
                conn.add_to(i, k, j, hol.clone());
                conn.add_to(n + i, n + k, n + j, hol.conj());
                let mixed = s.clone() * tk(j, i, k).conj();
                conn.add_to(n + i, k, j, mixed.clone());
                conn.add_to(i, n + k, n + j, mixed.conj());
            }
        }
    }
    conn
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::test_models::*;
    use crate::scalar::{gauss_to_c64, Complex64, GaussRational};

    #[test]
    fn chern_on_iwasawa_vanishes() {
        let m = iwasawa_exact();
        let c = chern(&m);
        assert_eq!(c, Connection::zero(3));
    }

    #[test]
    fn chern_has_no_mixed_torsion() {
        for m in [hopf(), random_nilpotent(5)] {
            let c = chern(&m);
            let t = c.torsion(&m);
            let n = m.n();
            let mut worst: f64 = 0.0;
            for a in 0..n {
                for b in 0..n {
                    for k in 0..2 * n {
                        worst = worst.max(t.get(k, n + a, b).norm());
                    }
                }
            }
            assert!(worst <= 1e-12, "mixed torsion {worst}");
            assert!(c.metric_defect() <= 1e-12);
            assert!(c.type_defect() == 0.0);
        }
    }

    #[test]
    fn hopf_chern_is_nontrivial_and_metric() {
        let c = chern(&hopf());
        assert!(c.metric_defect() < 1e-12);
        assert!((0..4).any(|a| c.matrix(a).max_abs() > 0.1));
    }

    #[test]
    fn iwasawa_torsion_and_eta() {
        let (t, eta) = chern_torsion(&iwasawa_exact());
        assert_eq!(gauss_to_c64(t.get(&[2, 0, 1])), Complex64::new(0.5, 0.0));
        assert_eq!(*t.get(&[2, 1, 0]), -GaussRational::from_rational(&rational(1, 2)));
        assert!(eta.data().iter().all(|x| x == &GaussRational::from_i64(0)));
        assert_eq!(t.norm_sqr(), GaussRational::from_rational(&rational(1, 2)));
        assert_eq!(t.antisymmetry_defect(1, 2).unwrap(), 0.0);
    }

    #[test]
    fn gauduchon_at_zero_is_chern() {
        let m = iwasawa_exact();
        assert_eq!(gauduchon(&m, &rational(0, 1)), chern(&m));
        let h = hopf();
        assert_eq!(gauduchon(&h, &rational(0, 1)), chern(&h));
    }

    #[test]
    fn torsion_matches_component_formulas_exactly() {
        let m = iwasawa_exact();
        let (t, _) = chern_torsion(&m);
        let n = 3;
        for s in [rational(-2, 1), rational(1, 2), rational(2, 3), rational(4, 5), rational(1, 1), rational(3, 1)] {
            let conn = gauduchon(&m, &s);
            let ts = conn.torsion(&m);
            let sv = GaussRational::from_rational(&s);
            let two = GaussRational::from_i64(2);
            let one = GaussRational::from_i64(1);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let tk = |k: usize, i: usize, j: usize| t.get(&[k, i, j]).clone();
                        assert_eq!(*ts.get(k, i, j), two.clone() * (one.clone() - sv.clone()) * tk(k, i, j));
                        assert_eq!(*ts.get(n + k, i, j), GaussRational::from_i64(0));
                        assert_eq!(*ts.get(k, n + i, j), sv.clone() * tk(j, i, k).conj());
                        assert_eq!(*ts.get(n + k, n + i, j), -(sv.clone() * tk(i, j, k)));
                    }
                }
            }
            assert_eq!(ts.type_02_defect(), 0.0);
        }
    }

    #[test]
    fn lichnerowicz_has_no_20_torsion() {
        let m = hopf();
        let ts = gauduchon(&m, &rational(1, 1)).torsion(&m);
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(ts.get(k, i, j).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn bismut_torsion_is_totally_skew_on_hopf() {
        let m = hopf();
        let ts = gauduchon(&m, &rational(2, 1)).torsion(&m);
        assert!(ts.skew_defect() <= 1e-12);
        assert!(ts.max_abs() > 0.1);
        // Chern torsion is not skew
        assert!(chern(&m).torsion(&m).skew_defect() > 0.1);
    }

    #[test]
    fn connections_are_hermitian_for_all_sampled_s() {
        let grid = [rational(-2, 1), rational(0, 1), rational(1, 2), rational(2, 3), rational(4, 5), rational(1, 1), rational(2, 1), rational(3, 1)];
        for m in [hopf(), random_nilpotent(1), random_nilpotent(2), torus(2)] {
            for s in &grid {
                let c = gauduchon(&m, s);
                assert!(c.metric_defect() <= 1e-12);
                assert!(c.type_defect() <= 1e-12);
                assert!(c.reality_defect() <= 1e-12);
            }
        }
    }
}
