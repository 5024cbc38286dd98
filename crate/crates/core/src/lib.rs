//! Gauduchon connections on left-invariant Hermitian structures.
//!
//! The crate is layered bottom-up:
//!
//! - [`scalar`] and [`poly`]: exact and floating numeric backends, and
//!   polynomials in the Gauduchon parameter `s`.
//! - [`tensor`]: slot-typed frame tensors with contraction, conjugation and
//!   unitary frame changes.
//! - [`geometry`]: Hermitian models from structure constants, the
//!   Chern/Bismut/Gauduchon connections, torsion, curvature, Kähler-like
//!   residuals, Ricci and Lee forms.
//! - [`system`]: the coefficient polynomials `a, b, c`, the 4×4 system in
//!   `(A, B, C, <∂|η|², η̄>)`, its determinant, singular set and ranks.
//! - [`formal`]: the torsion identities and their consequences, checked as
//!   exact polynomial identities in `s` on a family of torsion tensors.
//! - [`report`] and [`cli`]: model files, per-`s` reports and the
//!   command-line surface.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod cli;
pub mod fixtures;
pub mod formal;
pub mod geometry;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod system;
pub mod tensor;

pub use poly::{GaussPoly, Poly, RationalPoly};
pub use scalar::{Complex64, Field, GaussRational, Ring};
pub use tensor::{FrameTensor, Slot, SquareMatrix, TensorError};
