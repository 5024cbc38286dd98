//! Covariant derivatives of left-invariant frame tensors.
//!
//! Components of a left-invariant tensor are constant in a left-invariant
//! frame, so `∇_a t` is the derivation action of the connection matrix
//! `Γ(a)` on the slots of `t`.

use crate::scalar::Field;
use crate::tensor::{FrameTensor, Slot, SquareMatrix};

use super::connection::Connection;
use super::curvature::curvature;
use super::model::HermitianModel;

/// Derivation action of a type-preserving endomorphism: upper slots by `m`,
/// lower slots by `-mᵀ`, each on its own block.
pub fn endomorphism_action<S: Field>(t: &FrameTensor<S>, m: &SquareMatrix<S>) -> FrameTensor<S> {
    let n = t.n();
    let slots = t.slots().to_vec();
    FrameTensor::from_fn(n, &slots, |ix| {
        let mut acc = S::zero();
        let mut probe = ix.to_vec();
        for (p, slot) in slots.iter().enumerate() {
            let off = if slot.is_hol() { 0 } else { n };
            let i = ix[p];
            for j in 0..n {
                probe[p] = j;
                let coeff = if slot.is_upper() { m.get(off + i, off + j) } else { m.get(off + j, off + i) };
                if coeff.is_zero() {
                    continue;
                }
                let term = coeff.clone() * t.get(&probe).clone();
                acc = if slot.is_upper() { acc + term } else { acc - term };
            }
            probe[p] = i;
        }
        acc
    })
}

/// `∇t` in every complexified direction `f_0 .. f_{2n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovariantDerivative<S> {
    pub directions: Vec<FrameTensor<S>>,
}

impl<S: Field> CovariantDerivative<S> {
    /// `t_{..., l}` with the direction appended as a `HolDown` slot.
    pub fn hol(&self) -> FrameTensor<S> {
        self.appended(0, Slot::HolDown)
    }

    /// `t_{..., l̄}` with the direction appended as an `AntiDown` slot.
    pub fn anti(&self) -> FrameTensor<S> {
        self.appended(self.directions.len() / 2, Slot::AntiDown)
    }

    fn appended(&self, offset: usize, slot: Slot) -> FrameTensor<S> {
        let base = &self.directions[0];
        let mut slots = base.slots().to_vec();
        slots.push(slot);
        FrameTensor::from_fn(base.n(), &slots, |ix| {
            let (last, head) = ix.split_last().expect("appended slot");
            self.directions[offset + last].get(head).clone()
        })
    }
}

pub fn covariant_derivative<S: Field>(t: &FrameTensor<S>, conn: &Connection<S>) -> CovariantDerivative<S> {
    let dim = 2 * conn.n();
    CovariantDerivative { directions: (0..dim).map(|a| endomorphism_action(t, conn.matrix(a))).collect() }
}

/// `[p][q] = t_{,pq} = ∇_q(∇_p t) - ∇_{∇_q f_p} t`: differentiate along `f_p` first, then `f_q`.
pub fn second_covariant_derivative<S: Field>(t: &FrameTensor<S>, conn: &Connection<S>) -> Vec<Vec<FrameTensor<S>>> {
    let dim = 2 * conn.n();
    let first = covariant_derivative(t, conn);
    (0..dim)
        .map(|p| {
            (0..dim)
                .map(|q| {
                    let mut out = endomorphism_action(&first.directions[p], conn.matrix(q));
                    for c in 0..dim {
                        let g = conn.coeff(q, c, p);
                        if g.is_zero() {
                            continue;
                        }
                        let shift = first.directions[c].map(|x| x.clone() * g.clone());
                        out = out.zip_with(&shift, |x, y| x.clone() - y.clone()).expect("same shape");
                    }
                    out
                })
                .collect()
        })
        .collect()
}

/// Largest residual of `t_{,ba} - t_{,ab} = R(f_a, f_b)·t - ∇_{T(f_a, f_b)} t`.
pub fn commutation_defect<S: Field>(model: &HermitianModel<S>, conn: &Connection<S>, t: &FrameTensor<S>) -> f64 {
    let dim = model.dim();
    let second = second_covariant_derivative(t, conn);
    let first = covariant_derivative(t, conn);
    let r = curvature(model, conn);
    let tor = conn.torsion(model);
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let mut rhs = endomorphism_action(t, r.endomorphism(a, b));
            for c in 0..dim {
                let coeff = tor.get(c, a, b);
                if coeff.is_zero() {
                    continue;
                }
                let shift = first.directions[c].map(|x| x.clone() * coeff.clone());
                rhs = rhs.zip_with(&shift, |x, y| x.clone() - y.clone()).expect("same shape");
            }
            let lhs = second[b][a].zip_with(&second[a][b], |x, y| x.clone() - y.clone()).expect("same shape");
            let diff = lhs.zip_with(&rhs, |x, y| x.clone() - y.clone()).expect("same shape");
            worst = worst.max(diff.max_abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::connection::{chern_torsion, gauduchon};
    use crate::geometry::test_models::*;
    use crate::scalar::{rational, Complex64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tensor(n: usize, slots: &[Slot], seed: u64) -> FrameTensor<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = n.pow(slots.len() as u32);
        let data = (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        FrameTensor::from_data(n, slots, data).unwrap()
    }

    #[test]
    fn torus_torsion_is_parallel() {
        let m = torus(2);
        let (t, _) = chern_torsion(&m);
        let d = covariant_derivative(&t, &gauduchon(&m, &rational(1, 3)));
        assert!(d.directions.iter().all(|x| x.max_abs() == 0.0));
    }

    #[test]
    fn metric_pairing_is_parallel() {
        // δ^i_j is parallel for any Hermitian connection
        let m = hopf();
        let id = FrameTensor::<Complex64>::identity(2);
        let d = covariant_derivative(&id, &gauduchon(&m, &rational(2, 3)));
        assert!(d.directions.iter().all(|x| x.max_abs() < 1e-14));
    }

    #[test]
    fn hopf_torsion_derivative_matches_bismut_rule() {
        // at s = 2 the rule T^k_{ij,l} = -(s-2) T^r_ij T^k_rl says ∇T = 0 in (1,0)-directions
        let m = hopf();
        let (t, _) = chern_torsion(&m);
        let d = covariant_derivative(&t, &gauduchon(&m, &rational(2, 1)));
        assert!(d.hol().max_abs() < 1e-12);
    }

    #[test]
    fn commutation_identity_holds() {
        let slot_sets: [&[Slot]; 3] = [
            &[Slot::HolUp, Slot::HolDown, Slot::HolDown],
            &[Slot::HolDown],
            &[Slot::AntiUp, Slot::HolDown],
        ];
        for (seed, m) in [hopf(), random_nilpotent(4), random_nilpotent(11)].into_iter().enumerate() {
            for s in [rational(-2, 1), rational(1, 2), rational(2, 3), rational(4, 5), rational(7, 3)] {
                let conn = gauduchon(&m, &s);
                for slots in slot_sets {
                    let t = random_tensor(m.n(), slots, seed as u64);
                    let d = commutation_defect(&m, &conn, &t);
                    assert!(d < 1e-10, "s = {s}: {d}");
                }
            }
        }
    }

    #[test]
    fn appended_views_have_expected_slots() {
        let m = hopf();
        let (_, eta) = chern_torsion(&m);
        let d = covariant_derivative(&eta, &chern(&m));
        assert_eq!(d.hol().slots(), &[Slot::HolDown, Slot::HolDown]);
        assert_eq!(d.anti().slots(), &[Slot::HolDown, Slot::AntiDown]);
    }

    use crate::geometry::connection::chern;
}
