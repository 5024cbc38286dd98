//! Brute-force contractions of the torsion with itself and with `η̄`.
//!
//! Layouts: `u, v, w` at `[i][j]`; `x, y, z` at `[i][p][l]`.

use crate::scalar::Ring;

use super::point::{eta_of, Ix};

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionValues<R> {
    pub n: usize,
    pub eta: Vec<R>,
    /// `U^i_j = T^i_jk η̄_k`
    pub u: Vec<R>,
    /// `V_{ij̄} = T^r_ik conj(T^r_jk)`
    pub v: Vec<R>,
    /// `W^{ij̄} = T^i_kl conj(T^j_kl)`
    pub w: Vec<R>,
    /// `X^i_pl = T^k_pj T^r_kl conj(T^r_ij)`
    pub x: Vec<R>,
    /// `Y^i_pl = T^k_rj T^r_kp conj(T^l_ij)`
    pub y: Vec<R>,
    /// `Z^i_pl = T^k_jp T^i_kr conj(T^l_jr)`
    pub z: Vec<R>,
    /// `V_{kp̄} U^k_p`
    pub scalar_a: R,
    /// `W^{kr̄} U^r_k`
    pub scalar_a_tilde: R,
    /// `tr(U²)`
    pub scalar_b: R,
    /// `|U|²`
    pub scalar_c: R,
    pub norm_t: R,
    pub norm_eta: R,
}

fn sum<R: Ring>(it: impl Iterator<Item = R>) -> R {
    it.fold(R::zero(), |acc, x| acc + x)
}

impl<R: Ring> ContractionValues<R> {
    pub fn compute(n: usize, t: &[R]) -> Self {
        let ix = Ix { n };
        let tc: Vec<R> = t.iter().map(Ring::conj).collect();
        let at = |k, i, j| &t[ix.i3(k, i, j)];
        let ct = |k, i, j| &tc[ix.i3(k, i, j)];
        let eta = eta_of(n, t);
        let etab: Vec<R> = eta.iter().map(Ring::conj).collect();
        let idx2 = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
        let idx3 = || (0..n).flat_map(move |i| (0..n).flat_map(move |p| (0..n).map(move |l| (i, p, l))));

        let u: Vec<R> = idx2().map(|(i, j)| sum((0..n).map(|k| at(i, j, k).clone() * etab[k].clone()))).collect();
        let v: Vec<R> = idx2()
            .map(|(i, j)| sum(idx2().map(|(r, k)| at(r, i, k).clone() * ct(r, j, k).clone())))
            .collect();
        let w: Vec<R> = idx2()
            .map(|(i, j)| sum(idx2().map(|(k, l)| at(i, k, l).clone() * ct(j, k, l).clone())))
            .collect();
        // inner sums factor through two-index intermediates
        let x: Vec<R> = idx3()
            .map(|(i, p, l)| {
                sum(idx2().map(|(j, k)| {
                    let inner = sum((0..n).map(|r| at(r, k, l).clone() * ct(r, i, j).clone()));
                    at(k, p, j).clone() * inner
                }))
            })
            .collect();
        let y: Vec<R> = idx3()
            .map(|(i, p, l)| {
                sum(idx2().map(|(r, j)| {
                    let inner = sum((0..n).map(|k| at(k, r, j).clone() * at(r, k, p).clone()));
                    inner * ct(l, i, j).clone()
                }))
            })
            .collect();
        let z: Vec<R> = idx3()
            .map(|(i, p, l)| {
                sum(idx2().map(|(j, r)| {
                    let inner = sum((0..n).map(|k| at(k, j, p).clone() * at(i, k, r).clone()));
                    inner * ct(l, j, r).clone()
                }))
            })
            .collect();

        let scalar_a = sum(idx2().map(|(k, p)| v[ix.i2(k, p)].clone() * u[ix.i2(k, p)].clone()));
        let scalar_a_tilde = sum(idx2().map(|(k, r)| w[ix.i2(k, r)].clone() * u[ix.i2(r, k)].clone()));
        let scalar_b = sum(idx2().map(|(i, j)| u[ix.i2(i, j)].clone() * u[ix.i2(j, i)].clone()));
        let scalar_c = sum(u.iter().map(|x| x.clone() * x.conj()));
        let norm_t = sum(t.iter().zip(&tc).map(|(a, b)| a.clone() * b.clone()));
        let norm_eta = sum(eta.iter().zip(&etab).map(|(a, b)| a.clone() * b.clone()));
        ContractionValues { n, eta, u, v, w, x, y, z, scalar_a, scalar_a_tilde, scalar_b, scalar_c, norm_t, norm_eta }
    }

    pub fn ix(&self) -> Ix {
        Ix { n: self.n }
    }

    /// `(X^i_pi η̄_p, X^i_il η̄_l, Y^i_pi η̄_p, Y^i_il η̄_l, Z^i_pi η̄_p, Z^i_il η̄_l)`.
    pub fn xyz_traces(&self) -> [R; 6] {
        let n = self.n;
        let ix = self.ix();
        let first = |m: &[R]| sum((0..n).flat_map(|i| (0..n).map(move |p| (i, p))).map(|(i, p)| m[ix.i3(i, p, i)].clone() * self.eta[p].conj()));
        let second = |m: &[R]| sum((0..n).flat_map(|i| (0..n).map(move |l| (i, l))).map(|(i, l)| m[ix.i3(i, i, l)].clone() * self.eta[l].conj()));
        [first(&self.x), second(&self.x), first(&self.y), second(&self.y), first(&self.z), second(&self.z)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::point::{lck_torsion, random_lck};
    use crate::scalar::{gauss, rational, GaussRational};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64) -> GaussRational {
        gauss(rational(re, 1), rational(0, 1))
    }

    #[test]
    fn zero_torsion_gives_zero_scalars() {
        let p = lck_torsion(&[g(0), g(0)]).unwrap();
        let cv = ContractionValues::compute(2, p.torsion());
        assert!(cv.scalar_a.is_zero() && cv.scalar_a_tilde.is_zero() && cv.scalar_b.is_zero() && cv.scalar_c.is_zero());
    }

    #[test]
    fn two_dimensional_values() {
        let p = lck_torsion(&[g(1), g(0)]).unwrap();
        let cv = ContractionValues::compute(2, p.torsion());
        assert_eq!(cv.scalar_a, g(1));
        assert_eq!(cv.scalar_a_tilde, g(2));
        assert_eq!(cv.scalar_b, g(1));
        assert_eq!(cv.scalar_c, g(1));
        assert_eq!(cv.norm_eta, g(1));
        assert_eq!(cv.xyz_traces(), [g(1), g(2), g(1), g(0), g(1), g(0)]);
    }

    #[test]
    fn hermitian_and_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            let p = random_lck(&mut rng, n).unwrap();
            let cv = ContractionValues::compute(n, p.torsion());
            let ix = cv.ix();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(cv.v[ix.i2(i, j)], cv.v[ix.i2(j, i)].conj());
                    assert_eq!(cv.w[ix.i2(i, j)], cv.w[ix.i2(j, i)].conj());
                }
            }
            assert!(cv.scalar_c.im.is_zero() && cv.scalar_c.re >= rational(0, 1));
            assert_eq!(cv.scalar_a_tilde, cv.scalar_a.clone() + cv.scalar_a.clone());
        }
    }
}
