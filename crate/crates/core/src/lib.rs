//! Rotationally-invariant two-spin scattering and the entanglement it can
//! generate.
//!
//! Two particles of spin `σ` scatter through a central interaction. In the
//! coupled basis `|s m⟩` the spin-sector S-matrix is diagonal with one phase
//! `e^{2iδ_s}` per total spin `s`. This crate builds those S-matrices, measures
//! the entanglement they generate from separable in-states, and searches the
//! phase torus for the perfect entanglers.
//!
//! Layout:
//!
//! - [`angular_momentum`]: exact half-integers, Clebsch-Gordan coefficients,
//!   the product/coupled change of basis and Wigner rotation matrices.
//! - [`states`]: two-spin state vectors, separable and rotated in-states.
//! - [`entanglement`]: partial trace, base-`d` entropy, Schmidt spectra.
//! - [`scattering`]: phase-shift vectors, the S-matrix and g-coefficients.
//! - [`solver`]: residuals, torus root finding, family classification and
//!   the published-system cross-checks.
//! - [`cli`]: the batch command-line front end.

pub mod angular_momentum;
pub mod cli;
pub mod entanglement;
mod error;
pub mod scattering;
pub mod solver;
pub mod states;

pub use angular_momentum::{
    cgc, coupling_table, wigner_matrix, CgcQuery, CouplingTable, Euler, HalfInt, WignerRotation,
};
pub use entanglement::{
    certify_max_entangled, entropy_of_entanglement, partial_trace, schmidt_spectrum, von_neumann_entropy,
    DensityMatrix, MaxEntCertificate, SchmidtSpectrum, Subsystem,
};
pub use error::{Error, Result};
pub use scattering::{build_s_matrix, g_vector, scatter, schmidt_from_g, GVector, PhaseShiftVector, SpinSMatrix};
pub use solver::{residual, solve, Residual, SolutionSet, SolverConfig};
pub use states::{invariant_in_state, separable_state, Basis, InStateSpec, SeparableSpec, StateVector};

pub use num_complex::Complex64;
