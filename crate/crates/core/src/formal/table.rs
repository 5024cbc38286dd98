use num_rational::BigRational;

use crate::geometry::{chern_torsion, covariant_derivative, gauduchon, second_covariant_derivative, HermitianModel};
use crate::scalar::{Field, Ring};
use crate::system::Coeffs;

use super::dual::Dual;
use super::point::{FormalPoint, Ix};
use super::rules::{anti_rule, divergence_form, eta_anti_form, eta_hol_form, first_order, hol_rule};

/// First and second covariant derivatives of `T` and `η`, scaled by `c` so
/// that every entry is a polynomial in the torsion and `s`.
///
/// Second-derivative slots range over the complexified directions
/// `0..2n`, with `n + l` standing for `ē_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeTable<R> {
    pub n: usize,
    /// `[k][i][j][l] = T^k_{ij,l}`
    pub t_hol: Vec<R>,
    /// `[k][i][j][l] = c T^k_{ij,l̄}`
    pub t_anti: Vec<R>,
    /// `[j][l] = η_{j,l}`
    pub eta_hol: Vec<R>,
    /// `[j][l] = c η_{j,l̄}`
    pub eta_anti: Vec<R>,
    /// `[j][a][b] = c² η_{j,ab}`
    pub eta_second: Vec<R>,
    /// `[k][j][b] = c² Σ_i T^k_{ij,īb}`
    pub divergence_second: Vec<R>,
}

impl<R: Ring> DerivativeTable<R> {
    fn ix(&self) -> Ix {
        Ix { n: self.n }
    }

    pub fn t_hol(&self, k: usize, i: usize, j: usize, l: usize) -> &R {
        &self.t_hol[self.ix().i4(k, i, j, l)]
    }

    pub fn t_anti(&self, k: usize, i: usize, j: usize, l: usize) -> &R {
        &self.t_anti[self.ix().i4(k, i, j, l)]
    }

    pub fn eta_hol(&self, j: usize, l: usize) -> &R {
        &self.eta_hol[self.ix().i2(j, l)]
    }

    pub fn eta_anti(&self, j: usize, l: usize) -> &R {
        &self.eta_anti[self.ix().i2(j, l)]
    }

    pub fn eta_second(&self, j: usize, a: usize, b: usize) -> &R {
        let d = 2 * self.n;
        &self.eta_second[(j * d + a) * d + b]
    }

    pub fn divergence_second(&self, k: usize, j: usize, b: usize) -> &R {
        &self.divergence_second[(k * self.n + j) * 2 * self.n + b]
    }

    /// Builds the table from the substitution rules alone.
    ///
    /// First derivatives of `η` are traces of the torsion rules. Second
    /// derivatives differentiate the closed forms of `η_{j,l}`, `c η_{j,l̄}`
    /// and `c Σ_i T^k_{ij,ī}` once more, with the torsion seeded as a jet
    /// whose derivatives are again given by the rules.
    pub fn by_substitution(p: &FormalPoint<R>, k: &Coeffs<R>) -> Self {
        let n = p.n();
        let ix = p.ix();
        let t = p.torsion();
        let t_hol = hol_rule(n, t, k);
        let t_anti = anti_rule(n, t, k);
        let trace = |tab: &[R], j: usize, l: usize| (0..n).fold(R::zero(), |acc, kk| acc + tab[ix.i4(kk, kk, j, l)].clone());
        let mut eta_hol = Vec::with_capacity(n * n);
        let mut eta_anti = Vec::with_capacity(n * n);
        for j in 0..n {
            for l in 0..n {
                eta_hol.push(trace(&t_hol, j, l));
                eta_anti.push(trace(&t_anti, j, l));
            }
        }

        let d = 2 * n;
        let mut eta_second = vec![R::zero(); n * d * d];
        let mut divergence_second = vec![R::zero(); n * n * d];
        let kd = Coeffs {
            s: Dual::constant(k.s.clone()),
            s3: Dual::constant(k.s3.clone()),
            s6: Dual::constant(k.s6.clone()),
            a: Dual::constant(k.a.clone()),
            b: Dual::constant(k.b.clone()),
            c: Dual::constant(k.c.clone()),
        };
        for m in 0..n {
            let seeded: Vec<Dual<R>> = (0..n * n * n)
                .map(|q| {
                    let (kk, i, j) = (q / (n * n), (q / n) % n, q % n);
                    Dual::new(t[q].clone(), k.c.clone() * t_hol[ix.i4(kk, i, j, m)].clone(), t_anti[ix.i4(kk, i, j, m)].clone())
                })
                .collect();
            let fo = first_order(n, &seeded);
            let hol = eta_hol_form(n, &seeded, &kd);
            let anti = eta_anti_form(n, &fo, &kd);
            let div = divergence_form(n, &fo, &kd);
            for j in 0..n {
                for l in 0..n {
                    let h = &hol[ix.i2(j, l)];
                    eta_second[(j * d + l) * d + m] = k.c.clone() * h.d.clone();
                    eta_second[(j * d + l) * d + n + m] = k.c.clone() * h.db.clone();
                    let a = &anti[ix.i2(j, l)];
                    eta_second[(j * d + n + l) * d + m] = a.d.clone();
                    eta_second[(j * d + n + l) * d + n + m] = a.db.clone();
                    let v = &div[ix.i2(j, l)];
                    divergence_second[(j * n + l) * d + m] = v.d.clone();
                    divergence_second[(j * n + l) * d + n + m] = v.db.clone();
                }
            }
        }
        DerivativeTable { n, t_hol, t_anti, eta_hol, eta_anti, eta_second, divergence_second }
    }
}

impl<S: Field> DerivativeTable<S> {
    /// Reads the table off the true covariant derivatives of `∇^s` on a model.
    pub fn from_connection(model: &HermitianModel<S>, s: &BigRational) -> (FormalPoint<S>, Self) {
        let n = model.n();
        let ix = Ix { n };
        let c = Coeffs::new(S::from_rational(s)).c;
        let c2 = c.clone() * c.clone();
        let conn = gauduchon(model, s);
        let (t, eta) = chern_torsion(model);
        let dt = covariant_derivative(&t, &conn);
        let de = covariant_derivative(&eta, &conn);
        let d = 2 * n;
        let mut t_hol = Vec::with_capacity(n.pow(4));
        let mut t_anti = Vec::with_capacity(n.pow(4));
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        t_hol.push(dt.directions[l].get(&[k, i, j]).clone());
                        t_anti.push(c.clone() * dt.directions[n + l].get(&[k, i, j]).clone());
                    }
                }
            }
        }
        let mut eta_hol = Vec::with_capacity(n * n);
        let mut eta_anti = Vec::with_capacity(n * n);
        for j in 0..n {
            for l in 0..n {
                eta_hol.push(de.directions[l].get(&[j]).clone());
                eta_anti.push(c.clone() * de.directions[n + l].get(&[j]).clone());
            }
        }
        let e2 = second_covariant_derivative(&eta, &conn);
        let t2 = second_covariant_derivative(&t, &conn);
        let mut eta_second = Vec::with_capacity(n * d * d);
        for j in 0..n {
            for a in 0..d {
                for b in 0..d {
                    eta_second.push(c2.clone() * e2[a][b].get(&[j]).clone());
                }
            }
        }
        let mut divergence_second = Vec::with_capacity(n * n * d);
        for k in 0..n {
            for j in 0..n {
                for b in 0..d {
                    let acc = (0..n).fold(S::zero(), |acc, i| acc + t2[n + i][b].get(&[k, i, j]).clone());
                    divergence_second.push(c2.clone() * acc);
                }
            }
        }
        let point = FormalPoint::new(n, t.data().to_vec()).expect("torsion is antisymmetric");
        debug_assert_eq!(point.ix(), ix);
        (point, DerivativeTable { n, t_hol, t_anti, eta_hol, eta_anti, eta_second, divergence_second })
    }
}
