//! Perfect-entangler search on the phase torus.
//!
//! For the in-state `U(u)|λ, -λ⟩` the out-state is maximally entangled iff
//! `|g_χ(λ)|² = 1/d` for every `χ`. [`solve`] finds every solution of that
//! system on `(-π, π]^{2σ}`:
//!
//! 1. seed a regular grid, keeping seeds whose residual max-norm is below
//!    [`SEED_THRESHOLD`];
//! 2. refine each seed with Levenberg-Marquardt;
//! 3. sort the converged points lexicographically and drop near-duplicates;
//! 4. link points closer than [`SolverConfig::family_linkage`]; a linked
//!    group with a rank-deficient member is a family, everything else is an
//!    isolated point.
//!
//! Seeds are refined in parallel but every step after refinement runs on the
//! canonically sorted list, so the output does not depend on scheduling.

mod newton;
mod search;
mod torus;
mod verify;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular_momentum::HalfInt;
use crate::error::{domain, Error, Result};
use crate::scattering::{wrap_angle, GKernel, PhaseShiftVector};

pub use newton::{jacobian_nullity, refine};
pub use search::{entropy_scan, max_entropy_search, max_entropy_search_from, EntropySearch, ScanAxis, ScanRow};
pub use torus::torus_distance;
pub use verify::{
    lambda_independence_check, published_solutions, published_system, verify_published_solutions,
    CoefficientCorrection, EquationCheck, LambdaComparison, LambdaReport, PrintedEquation, PrintedTerm,
    PublishedResidual, VerificationReport,
};

/// Seeds whose residual max-norm is at or above this are not refined.
pub const SEED_THRESHOLD: f64 = 0.2;
/// Step of the classification Jacobian.
pub const JACOBIAN_STEP: f64 = 1e-6;

/// `|g_χ(λ)|² - 1/d` for `χ = σ, …, -σ`. Components sum to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub values: Vec<f64>,
}

impl Residual {
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn residual(lambda: HalfInt, delta: &PhaseShiftVector) -> Result<Residual> {
    let kernel = GKernel::new(delta.sigma(), lambda)?;
    Ok(ResidualSystem::new(kernel).evaluate_full(delta.deltas()))
}

/// The perfect-entangler system for fixed `(σ, λ)` as a function of the free
/// phases `δ₁..δ_{2σ}`.
#[derive(Clone, Debug)]
pub struct ResidualSystem {
    kernel: GKernel,
    target: f64,
}

impl ResidualSystem {
    pub fn new(kernel: GKernel) -> Self {
        let target = 1.0 / kernel.dim() as f64;
        Self { kernel, target }
    }

    pub fn for_spin(sigma: HalfInt, lambda: HalfInt) -> Result<Self> {
        Ok(Self::new(GKernel::new(sigma, lambda)?))
    }

    pub fn kernel(&self) -> &GKernel {
        &self.kernel
    }

    /// Number of free phases, `2σ`.
    pub fn unknowns(&self) -> usize {
        self.kernel.dim() - 1
    }

    fn full(free: &[f64]) -> Vec<f64> {
        std::iter::once(0.0).chain(free.iter().copied()).collect()
    }

    pub fn evaluate_full(&self, deltas: &[f64]) -> Residual {
        let values = self.kernel.squared_moduli(deltas).into_iter().map(|g2| g2 - self.target).collect();
        Residual { values }
    }

    pub fn evaluate(&self, free: &[f64]) -> Residual {
        self.evaluate_full(&Self::full(free))
    }

    /// Analytic `∂r_χ/∂δ_s`, `(2σ+1) × 2σ`.
    pub fn jacobian(&self, free: &[f64]) -> nalgebra::DMatrix<f64> {
        self.kernel.squared_moduli_jacobian(&Self::full(free))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid_points_per_axis: usize,
    /// Required residual max-norm of a converged point.
    pub refine_tol: f64,
    /// Points closer than this (torus max-metric) are one solution.
    pub dedup_radius: f64,
    /// Singular values below this count towards the Jacobian nullity.
    pub family_rank_tol: f64,
    pub max_newton_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points_per_axis: 48,
            refine_tol: 1e-12,
            dedup_radius: 1e-6,
            family_rank_tol: 1e-8,
            max_newton_iters: 50,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_axis == 0 || self.max_newton_iters == 0 {
            return Err(domain("grid size and Newton iteration limit must be positive"));
        }
        for (name, v) in [
            ("refine_tol", self.refine_tol),
            ("dedup_radius", self.dedup_radius),
            ("family_rank_tol", self.family_rank_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Spacing of the seed grid.
    pub fn grid_step(&self) -> f64 {
        2.0 * PI / self.grid_points_per_axis as f64
    }

    /// Converged points closer than this belong to the same family.
    pub fn family_linkage(&self) -> f64 {
        3.0 * self.grid_step()
    }

    /// Minimum spacing between the reported samples of a family.
    pub fn family_sample_spacing(&self) -> f64 {
        self.grid_step()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionPoint {
    /// `(0, δ₁, …, δ_{2σ})`.
    pub deltas: Vec<f64>,
    pub residual_max: f64,
    pub nullity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFamily {
    /// Smallest positive Jacobian nullity among the family's members, i.e. its
    /// dimension away from singular points.
    pub nullity: usize,
    /// Thinned members `(0, δ₁, …, δ_{2σ})`, lexicographically sorted.
    pub samples: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub seeds: usize,
    pub refined: usize,
    pub converged: usize,
    pub distinct: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub sigma: HalfInt,
    pub lambda: HalfInt,
    pub points: Vec<SolutionPoint>,
    pub families: Vec<SolutionFamily>,
    #[serde(skip)]
    pub stats: SolveStats,
}

impl SolutionSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("solution sets serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn seed(index: usize, n: usize, grid: usize, step: f64) -> Vec<f64> {
    let mut rest = index;
    let mut x = vec![0.0; n];
    for slot in x.iter_mut().rev() {
        let k = rest % grid;
        rest /= grid;
        *slot = -PI + (k as f64 + 0.5) * step;
    }
    x
}

/// All perfect-entangler phase vectors for the in-states `U(u)|λ, -λ⟩`.
pub fn solve(sigma: HalfInt, lambda: HalfInt, config: &SolverConfig) -> Result<SolutionSet> {
    config.validate()?;
    if sigma <= HalfInt::ZERO {
        return Err(domain(format!("spin {sigma} has no phase torus to search")));
    }
    let system = ResidualSystem::for_spin(sigma, lambda)?;
    let n = system.unknowns();
    let grid = config.grid_points_per_axis;
    let seeds = u32::try_from(n)
        .ok()
        .and_then(|n| grid.checked_pow(n))
        .filter(|&s| s <= 1 << 40)
        .ok_or_else(|| domain(format!("{grid}^{n} seeds is too many")))?;
    let step = config.grid_step();

    // Refinement is per-seed and deterministic; collect keeps seed order.
    let refined: Vec<Option<Vec<f64>>> = (0..seeds)
        .into_par_iter()
        .filter_map(|i| {
            let x0 = seed(i, n, grid, step);
            (system.evaluate(&x0).max_norm() < SEED_THRESHOLD).then(|| refine(&system, &x0, config))
        })
        .collect();
    let mut stats = SolveStats { seeds, refined: refined.len(), ..Default::default() };

    let mut converged: Vec<Vec<f64>> = refined
        .into_iter()
        .flatten()
        .map(|x| x.into_iter().map(wrap_angle).collect::<Vec<f64>>())
        .filter(|x| system.evaluate(x).max_norm() <= config.refine_tol)
        .collect();
    stats.converged = converged.len();
    converged.sort_by(|a, b| torus::lexicographic(a, b));

    let distinct: Vec<Vec<f64>> =
        torus::thin(&converged, config.dedup_radius).into_iter().map(|i| converged[i].clone()).collect();
    stats.distinct = distinct.len();

    let nullities: Vec<usize> =
        distinct.par_iter().map(|x| jacobian_nullity(&system, x, JACOBIAN_STEP, config.family_rank_tol)).collect();

    let with_gauge = |x: &[f64]| std::iter::once(0.0).chain(x.iter().copied()).collect::<Vec<f64>>();
    let point = |x: &[f64], nullity| SolutionPoint {
        deltas: with_gauge(x),
        residual_max: system.evaluate(x).max_norm(),
        nullity,
    };

    // Link every point first: converged points near the singular members
    // of a family resolve only to ~sqrt(refine_tol) and look isolated to the
    // finite-difference rank test, but they sit on the family curve.
    let mut points: Vec<SolutionPoint> = Vec::new();
    let mut families = Vec::new();
    for group in torus::single_linkage(&distinct, config.family_linkage()) {
        let nullity = group.iter().map(|&k| nullities[k]).filter(|&v| v > 0).min();
        match nullity {
            Some(nullity) if group.len() > 1 => {
                let members: Vec<Vec<f64>> = group.iter().map(|&k| distinct[k].clone()).collect();
                let samples = torus::thin(&members, config.family_sample_spacing())
                    .into_iter()
                    .map(|k| with_gauge(&members[k]))
                    .collect();
                families.push(SolutionFamily { nullity, samples });
            }
            _ => points.extend(group.iter().map(|&k| point(&distinct[k], nullities[k]))),
        }
    }
    points.sort_by(|a, b| torus::lexicographic(&a.deltas, &b.deltas));
    families.sort_by(|a, b| torus::lexicographic(&a.samples[0], &b.samples[0]));

    Ok(SolutionSet { sigma, lambda, points, families, stats })
}
