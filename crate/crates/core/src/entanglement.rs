//! Reduced density matrices and the entropy of entanglement of pure two-spin
//! states. Entropies are taken in base `d`, so a maximally entangled pair of
//! spins has entropy 1 whatever `σ` is.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::states::StateVector;

/// Eigenvalues below this are exact zeros in `p log p`.
pub const ZERO_EIGENVALUE: f64 = 1e-14;
/// Most negative eigenvalue still accepted as positive semi-definite.
pub const PSD_TOLERANCE: f64 = -1e-10;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Hermitian, unit-trace `d × d` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(domain("density matrix must be square"));
        }
        let skew = (&entries - entries.adjoint()).iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        if skew > HERMITIAN_TOLERANCE {
            return Err(domain(format!("density matrix is not Hermitian (deviation {skew:e})")));
        }
        let trace = entries.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(domain(format!("density matrix has trace {trace}")));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = SymmetricEigen::new(self.entries.clone()).eigenvalues.iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }
}

/// `ρ_keep = tr_other |ψ⟩⟨ψ|`.
pub fn partial_trace(state: &StateVector, keep: Subsystem) -> Result<DensityMatrix> {
    let c = state.amplitude_matrix()?;
    let rho = match keep {
        Subsystem::First => &c * c.adjoint(),
        Subsystem::Second => c.transpose() * c.conjugate(),
    };
    DensityMatrix::new(rho)
}

/// `-tr ρ log ρ` in base `log_base`.
pub fn von_neumann_entropy(rho: &DensityMatrix, log_base: usize) -> Result<f64> {
    if log_base < 2 {
        return Err(domain(format!("log base {log_base} must be at least 2")));
    }
    let eigenvalues = rho.eigenvalues();
    let smallest = eigenvalues.last().copied().unwrap_or(0.0);
    if smallest < PSD_TOLERANCE {
        return Err(domain(format!("density matrix has negative eigenvalue {smallest:e}")));
    }
    Ok(entropy_of_probabilities(&eigenvalues, log_base, rho.dim()))
}

fn entropy_of_probabilities(values: &[f64], log_base: usize, dim: usize) -> f64 {
    let ln_base = (log_base as f64).ln();
    // `+ 0.0` turns the -0.0 of a pure state into 0.0
    let s: f64 = values.iter().filter(|&&p| p > ZERO_EIGENVALUE).map(|&p| -p * p.ln() / ln_base).sum::<f64>() + 0.0;
    if log_base == dim {
        s.clamp(0.0, 1.0 + 1e-12)
    } else {
        s.max(0.0)
    }
}

/// Eigenvalues of the reduced state, descending, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    pub values: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Sorts descending and clips round-off negatives to zero.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            *v = v.max(0.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Base-`d` entropy of the spectrum.
    pub fn entropy(&self) -> f64 {
        let d = self.dim();
        if d < 2 {
            return 0.0;
        }
        entropy_of_probabilities(&self.values, d, d)
    }

    /// Largest `|p - 1/d|`.
    pub fn flatness(&self) -> f64 {
        let target = 1.0 / self.dim() as f64;
        self.values.iter().map(|p| (p - target).abs()).fold(0.0, f64::max)
    }

    /// Euclidean distance from the flat spectrum `(1/d, …, 1/d)`.
    pub fn distance_from_flat(&self) -> f64 {
        let target = 1.0 / self.dim() as f64;
        self.values.iter().map(|p| (p - target).powi(2)).sum::<f64>().sqrt()
    }
}

pub fn schmidt_spectrum(state: &StateVector) -> Result<SchmidtSpectrum> {
    let rho = partial_trace(state, Subsystem::First)?;
    Ok(SchmidtSpectrum::from_unsorted(rho.eigenvalues()))
}

/// `E(ψ) = S(ρ₁)` in base `d`. Zero for `σ = 0`.
pub fn entropy_of_entanglement(state: &StateVector) -> Result<f64> {
    let d = state.dim();
    if d < 2 {
        return Ok(0.0);
    }
    von_neumann_entropy(&partial_trace(state, Subsystem::First)?, d)
}

/// Result of matching a state against `d^{-1/2} Σ_j e^{iα_j} |j⟩ ⊗ |π_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxEntCertificate {
    pub is_maximal: bool,
    /// `π_j`, as 0-based product-basis indices. Empty unless maximal.
    pub permutation: Vec<usize>,
    /// `α_j` in radians. Empty unless maximal.
    pub phases: Vec<f64>,
    /// For a maximal state, the largest amplitude error of the rebuilt form.
    /// Otherwise the distance of the Schmidt spectrum from flat, or, for a
    /// flat spectrum that is not of permutation form, the largest error of
    /// the best permutation match.
    pub deviation: f64,
}

pub fn certify_max_entangled(state: &StateVector, tol: f64) -> Result<MaxEntCertificate> {
    let spectrum = schmidt_spectrum(state)?;
    let not_maximal =
        |deviation| MaxEntCertificate { is_maximal: false, permutation: vec![], phases: vec![], deviation };
    if spectrum.flatness() > tol {
        return Ok(not_maximal(spectrum.distance_from_flat()));
    }

    let c = state.amplitude_matrix()?;
    let d = c.nrows();
    let target = 1.0 / (d as f64).sqrt();
    let mut permutation = Vec::with_capacity(d);
    for row in c.row_iter() {
        let (col, _) =
            row.iter().enumerate().fold((0, -1.0), |best, (k, z)| if z.norm() > best.1 { (k, z.norm()) } else { best });
        permutation.push(col);
    }
    let phases: Vec<f64> = permutation.iter().enumerate().map(|(j, &k)| c[(j, k)].arg()).collect();
    let rebuilt = DMatrix::from_fn(d, d, |j, k| {
        if permutation[j] == k {
            Complex64::from_polar(target, phases[j])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let deviation = (&c - rebuilt).iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut seen = vec![false; d];
    let bijective = permutation.iter().all(|&k| !std::mem::replace(&mut seen[k], true));
    if !bijective || deviation > tol {
        return Ok(not_maximal(deviation));
    }
    Ok(MaxEntCertificate { is_maximal: true, permutation, phases, deviation })
}
