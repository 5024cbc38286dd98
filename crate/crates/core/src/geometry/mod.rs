//! Left-invariant Hermitian geometry in a unitary frame.
//!
//! Conventions:
//!
//! - The complexified basis is `f_a`, with `f_a = e_a` for `a < n` and
//!   `f_a = ē_{a-n}` otherwise.
//! - `dα(X,Y) = Xα(Y) - Yα(X) - α([X,Y])` and `α∧β = α⊗β - β⊗α`, so
//!   `φ^k([X,Y]) = -dφ^k(X,Y)` on left-invariant forms.
//! - The metric is extended complex-bilinearly: `g(e_i, ē_j) = δ_ij`. The
//!   Hermitian pairing `⟨u, v⟩ = g(u, v̄)` is linear in the first slot and
//!   antilinear in the second.
//! - `T^k_ij = ½⟨T^c(e_i, e_j), ē_k⟩` is the Chern torsion and `η_j = T^k_kj`.

pub mod connection;
pub mod curvature;
pub mod derivative;
pub mod forms;
pub mod model;

pub use connection::{chern, chern_torsion, gauduchon, Connection, FullTorsion};
pub use curvature::{curvature, general_bianchi_defect, kahler_like_residual, ricci_first, Curvature, KahlerLikeReport};
pub use derivative::{commutation_defect, covariant_derivative, second_covariant_derivative, CovariantDerivative};
pub use forms::{Form, LeeForm};
pub use model::{
    bar, build_model, from_real_lie, from_structure_equations, HermitianModel, ModelError, ModelInput, RealLieData,
    StructureEquations, ValidationFailure,
};

#[cfg(test)]
pub(crate) mod test_models {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::{Complex64, GaussRational, Ring};

    pub fn torus(n: usize) -> HermitianModel<Complex64> {
        from_structure_equations(&StructureEquations::zero(n)).unwrap()
    }

    pub fn iwasawa_exact() -> HermitianModel<GaussRational> {
        let mut eqs = StructureEquations::zero(3);
        eqs.add_hol(2, 0, 1, GaussRational::from_i64(1));
        from_structure_equations(&eqs).unwrap()
    }

    pub fn hopf_data() -> RealLieData {
        let mut r = RealLieData::new(4);
        r.add_bracket(0, 1, 2, 1.0);
        r.add_bracket(1, 2, 0, 1.0);
        r.add_bracket(2, 0, 1, 1.0);
        let j = &mut r.complex_structure;
        j[1][0] = 1.0;
        j[0][1] = -1.0;
        j[3][2] = 1.0;
        j[2][3] = -1.0;
        r
    }

    pub fn hopf() -> HermitianModel<Complex64> {
        from_real_lie(&hopf_data()).unwrap()
    }

    /// `dφ³ = α φ¹∧φ² + Σ B_ij φ^i∧φ̄^j` on a 2-step nilpotent algebra.
    pub fn random_nilpotent(seed: u64) -> HermitianModel<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut eqs = StructureEquations::zero(3);
        eqs.add_hol(2, 0, 1, z());
        for i in 0..2 {
            for j in 0..2 {
                eqs.add_mixed(2, i, j, z());
            }
        }
        from_structure_equations(&eqs).unwrap()
    }
}
