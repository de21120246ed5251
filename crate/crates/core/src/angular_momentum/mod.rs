//! Angular momentum algebra for a pair of equal spins `σ`.
//!
//! Basis orderings used everywhere in the crate:
//!
//! - product basis `|μ₁, μ₂⟩`: row `i₁·d + i₂` with `μ = σ - i` (descending μ₁, then μ₂);
//! - coupled basis `|s m⟩`: `s` descending from `2σ` to `0`, and within each
//!   block `m` descending from `s` to `-s`.
//!
//! Clebsch-Gordan coefficients follow the Condon-Shortley phase convention.

mod cgc;
mod half_int;
mod table;
mod wigner;

pub use cgc::{cgc, cgc_exact, CgcQuery, SqrtRational};
pub(crate) use cgc::{racah, Factorials};
pub use half_int::HalfInt;
pub use table::{coupling_table, CouplingTable};
pub use wigner::{wigner_matrix, wigner_small_d, Euler, WignerRotation};
