use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::scalar::{gauss, rational, GaussRational, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormalError {
    #[error("torsion family needs n >= 2, got n = {0}")]
    DimensionTooSmall(usize),
    #[error("expected {expected} torsion components, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("torsion is not antisymmetric at T^{k}_({i},{j})")]
    NotAntisymmetric { k: usize, i: usize, j: usize },
}

/// Flat index helpers for `n`-dimensional component arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ix {
    pub n: usize,
}

impl Ix {
    #[inline]
    pub fn i2(self, a: usize, b: usize) -> usize {
        a * self.n + b
    }
    #[inline]
    pub fn i3(self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }
    #[inline]
    pub fn i4(self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }
}

/// Torsion components `T^k_ij`, stored at `[k][i][j]`, antisymmetric in `i, j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalPoint<R> {
    n: usize,
    t: Vec<R>,
}

impl<R: Ring> FormalPoint<R> {
    pub fn new(n: usize, t: Vec<R>) -> Result<Self, FormalError> {
        if t.len() != n * n * n {
            return Err(FormalError::Shape { expected: n * n * n, got: t.len() });
        }
        let ix = Ix { n };
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    if !(t[ix.i3(k, i, j)].clone() + t[ix.i3(k, j, i)].clone()).is_zero() {
                        return Err(FormalError::NotAntisymmetric { k, i, j });
                    }
                }
            }
        }
        Ok(FormalPoint { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ix(&self) -> Ix {
        Ix { n: self.n }
    }

    pub fn torsion(&self) -> &[R] {
        &self.t
    }

    pub fn t(&self, k: usize, i: usize, j: usize) -> &R {
        &self.t[self.ix().i3(k, i, j)]
    }

    pub fn eta(&self) -> Vec<R> {
        eta_of(self.n, &self.t)
    }

    /// Same components in another ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> FormalPoint<S> {
        FormalPoint { n: self.n, t: self.t.iter().map(f).collect() }
    }

    /// Largest `|Σ_cyc(i,j,k) T^r_jk T^l_ir|` over all `(i, j, k, l)`.
    pub fn cyclic_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = R::zero();
                        for r in 0..n {
                            acc = acc + self.t(r, j, k).clone() * self.t(l, i, r).clone();
                            acc = acc + self.t(r, k, i).clone() * self.t(l, j, r).clone();
                            acc = acc + self.t(r, i, j).clone() * self.t(l, k, r).clone();
                        }
                        worst = worst.max(acc.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest `|T^i_jk η_i|`.
    pub fn eta_contraction_residual(&self) -> f64 {
        let eta = self.eta();
        let n = self.n;
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                let acc = (0..n).fold(R::zero(), |acc, i| acc + self.t(i, j, k).clone() * eta[i].clone());
                worst = worst.max(acc.magnitude());
            }
        }
        worst
    }
}

/// `η_j = T^k_kj`.
pub fn eta_of<R: Ring>(n: usize, t: &[R]) -> Vec<R> {
    let ix = Ix { n };
    (0..n).map(|j| (0..n).fold(R::zero(), |acc, k| acc + t[ix.i3(k, k, j)].clone())).collect()
}

/// `T^k_ij = a_i δ^k_j - a_j δ^k_i`, the torsion shape of a locally conformally Kähler metric.
pub fn lck_torsion(a: &[GaussRational]) -> Result<FormalPoint<GaussRational>, FormalError> {
    let n = a.len();
    if n < 2 {
        return Err(FormalError::DimensionTooSmall(n));
    }
    let ix = Ix { n };
    let mut t = vec![GaussRational::zero(); n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = GaussRational::zero();
                if k == j {
                    v += a[i].clone();
                }
                if k == i {
                    v -= a[j].clone();
                }
                t[ix.i3(k, i, j)] = v;
            }
        }
    }
    FormalPoint::new(n, t)
}

/// Gaussian rational with numerators in `[-4, 4]` and denominators in `[1, 3]`.
pub fn random_gauss<G: Rng>(rng: &mut G) -> GaussRational {
    let mut part = || rational(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let re = part();
    gauss(re, part())
}

pub fn random_lck<G: Rng>(rng: &mut G, n: usize) -> Result<FormalPoint<GaussRational>, FormalError> {
    let a: Vec<GaussRational> = (0..n).map(|_| random_gauss(rng)).collect();
    lck_torsion(&a)
}
