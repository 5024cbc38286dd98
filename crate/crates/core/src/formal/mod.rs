//! Exact verification of the torsion identities and their consequences.
//!
//! Torsion components are sampled from the locally conformally Kähler
//! family, lifted to constant polynomials in `s`, and every derivative is
//! produced by substitution. An item passes only when its residual is the
//! zero polynomial.

pub mod checks;
pub mod contractions;
pub mod dual;
pub mod point;
pub mod rules;
pub mod suite;
pub mod table;

pub use checks::{Context, Item, Violation};
pub use contractions::ContractionValues;
pub use dual::Dual;
pub use point::{lck_torsion, random_lck, FormalError, FormalPoint};
pub use rules::{first_order, FirstOrder};
pub use suite::{fixture_checks, formal_items, verify_lemmas};
pub use table::DerivativeTable;
