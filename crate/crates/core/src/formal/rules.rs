//! Substitution rules for first covariant derivatives of the torsion, and
//! the closed forms of the first derivatives of `η` that get differentiated
//! a second time.
//!
//! Barred-direction derivatives are returned multiplied by `c`.

use crate::scalar::Ring;
use crate::system::Coeffs;

use super::point::{eta_of, Ix};

/// `η` and the quadratic contractions `U, V, W` (layout `[i][j]`).
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrder<R> {
    pub eta: Vec<R>,
    pub u: Vec<R>,
    pub v: Vec<R>,
    pub w: Vec<R>,
}

pub fn first_order<R: Ring>(n: usize, t: &[R]) -> FirstOrder<R> {
    let ix = Ix { n };
    let tc: Vec<R> = t.iter().map(Ring::conj).collect();
    let eta = eta_of(n, t);
    let mut u = vec![R::zero(); n * n];
    let mut v = vec![R::zero(); n * n];
    let mut w = vec![R::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut su = R::zero();
            let mut sv = R::zero();
            let mut sw = R::zero();
            for k in 0..n {
                su = su + t[ix.i3(i, j, k)].clone() * eta[k].conj();
                for r in 0..n {
                    sv = sv + t[ix.i3(r, i, k)].clone() * tc[ix.i3(r, j, k)].clone();
                    sw = sw + t[ix.i3(i, k, r)].clone() * tc[ix.i3(j, k, r)].clone();
                }
            }
            u[ix.i2(i, j)] = su;
            v[ix.i2(i, j)] = sv;
            w[ix.i2(i, j)] = sw;
        }
    }
    FirstOrder { eta, u, v, w }
}

/// `[k][i][j][l] = T^k_{ij,l} = -(s-2) T^r_ij T^k_rl`.
pub fn hol_rule<R: Ring>(n: usize, t: &[R], k: &Coeffs<R>) -> Vec<R> {
    let ix = Ix { n };
    let sm2 = k.s.clone() - R::from_i64(2);
    let mut out = Vec::with_capacity(n.pow(4));
    for kk in 0..n {
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let acc = (0..n).fold(R::zero(), |acc, r| acc + t[ix.i3(r, i, j)].clone() * t[ix.i3(kk, r, l)].clone());
                    out.push(-(sm2.clone() * acc));
                }
            }
        }
    }
    out
}

/// `[k][i][j][l] = c T^k_{ij,l̄}`:
/// `a T^r_ij T̄^r_kl + b(T^k_ir T̄^j_lr - T^k_jr T̄^i_lr) + s³(T^l_ir T̄^j_kr - T^l_jr T̄^i_kr)`.
pub fn anti_rule<R: Ring>(n: usize, t: &[R], k: &Coeffs<R>) -> Vec<R> {
    let ix = Ix { n };
    let tc: Vec<R> = t.iter().map(Ring::conj).collect();
    let at = |a, b, c| t[ix.i3(a, b, c)].clone();
    let ct = |a, b, c| tc[ix.i3(a, b, c)].clone();
    let mut out = Vec::with_capacity(n.pow(4));
    for kk in 0..n {
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let mut sa = R::zero();
                    let mut sb = R::zero();
                    let mut s3 = R::zero();
                    for r in 0..n {
                        sa = sa + at(r, i, j) * ct(r, kk, l);
                        sb = sb + at(kk, i, r) * ct(j, l, r) - at(kk, j, r) * ct(i, l, r);
                        s3 = s3 + at(l, i, r) * ct(j, kk, r) - at(l, j, r) * ct(i, kk, r);
                    }
                    out.push(k.a.clone() * sa + k.b.clone() * sb + k.s3.clone() * s3);
                }
            }
        }
    }
    out
}

/// `[j][l] = η_{j,l} = -(s-2) T^r_ij T^i_rl`.
pub fn eta_hol_form<R: Ring>(n: usize, t: &[R], k: &Coeffs<R>) -> Vec<R> {
    let ix = Ix { n };
    let sm2 = k.s.clone() - R::from_i64(2);
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for l in 0..n {
            let mut acc = R::zero();
            for i in 0..n {
                for r in 0..n {
                    acc = acc + t[ix.i3(r, i, j)].clone() * t[ix.i3(i, r, l)].clone();
                }
            }
            out.push(-(sm2.clone() * acc));
        }
    }
    out
}

/// `[j][l] = c η_{j,l̄} = (a-b) V_{jl̄} + b conj(U^j_l) + s³(W^{lj̄} - U^l_j)`.
pub fn eta_anti_form<R: Ring>(n: usize, fo: &FirstOrder<R>, k: &Coeffs<R>) -> Vec<R> {
    let ix = Ix { n };
    let amb = k.a.clone() - k.b.clone();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for l in 0..n {
            let w = fo.w[ix.i2(l, j)].clone() - fo.u[ix.i2(l, j)].clone();
            out.push(amb.clone() * fo.v[ix.i2(j, l)].clone() + k.b.clone() * fo.u[ix.i2(j, l)].conj() + k.s3.clone() * w);
        }
    }
    out
}

/// `[k][j] = c Σ_i T^k_{ij,ī} = -(a+s³) V_{jk̄} + b(W^{kj̄} - U^k_j) + s³ conj(U^j_k)`.
pub fn divergence_form<R: Ring>(n: usize, fo: &FirstOrder<R>, k: &Coeffs<R>) -> Vec<R> {
    let ix = Ix { n };
    let apt = k.a.clone() + k.s3.clone();
    let mut out = Vec::with_capacity(n * n);
    for kk in 0..n {
        for j in 0..n {
            let w = fo.w[ix.i2(kk, j)].clone() - fo.u[ix.i2(kk, j)].clone();
            out.push(-(apt.clone() * fo.v[ix.i2(j, kk)].clone()) + k.b.clone() * w + k.s3.clone() * fo.u[ix.i2(j, kk)].conj());
        }
    }
    out
}
