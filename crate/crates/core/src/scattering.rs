//! Rotationally-invariant spin S-matrices.
//!
//! In the coupled basis `S` is diagonal: every state of total spin `s` picks
//! up the phase `e^{2iδ_s}`. Phases are gauge-fixed to `δ₀ = 0`, leaving the
//! torus of `(δ₁, …, δ_{2σ})`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angular_momentum::{coupling_table, CouplingTable, HalfInt};
use crate::entanglement::SchmidtSpectrum;
use crate::error::{domain, usage, Error, Result};
use crate::states::{Basis, StateVector};

/// Maps an angle into `(-π, π]`; `-π` goes to `π`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// `(δ₀, δ₁, …, δ_{2σ})` with `δ₀ = 0` and every phase in `(-π, π]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseShiftVector {
    sigma: HalfInt,
    deltas: Vec<f64>,
}

impl PhaseShiftVector {
    /// Gauge-fixes by subtracting `δ₀` from every phase, then wraps.
    pub fn new(sigma: HalfInt, deltas: Vec<f64>) -> Result<Self> {
        if sigma < HalfInt::ZERO {
            return Err(domain(format!("spin {sigma} is negative")));
        }
        let n = sigma.multiplicity();
        if deltas.len() != n {
            return Err(usage(format!("spin {sigma} needs {n} phase shifts δ_0..δ_{}, got {}", n - 1, deltas.len())));
        }
        if let Some(bad) = deltas.iter().find(|d| !d.is_finite()) {
            return Err(domain(format!("phase shift {bad} is not finite")));
        }
        let gauge = deltas[0];
        let deltas = deltas.iter().map(|d| wrap_angle(d - gauge)).collect();
        Ok(Self { sigma, deltas })
    }

    /// Builds from the free phases `(δ₁, …, δ_{2σ})`.
    pub fn from_free(sigma: HalfInt, free: &[f64]) -> Result<Self> {
        let mut deltas = Vec::with_capacity(free.len() + 1);
        deltas.push(0.0);
        deltas.extend_from_slice(free);
        Self::new(sigma, deltas)
    }

    pub fn zero(sigma: HalfInt) -> Self {
        Self { sigma, deltas: vec![0.0; sigma.multiplicity()] }
    }

    pub fn sigma(&self) -> HalfInt {
        self.sigma
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// `(δ₁, …, δ_{2σ})`.
    pub fn free(&self) -> &[f64] {
        &self.deltas[1..]
    }
}

#[derive(Deserialize)]
struct PhaseShiftJson {
    sigma: HalfInt,
    deltas: Vec<f64>,
}

impl<'de> Deserialize<'de> for PhaseShiftVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PhaseShiftJson::deserialize(deserializer)?;
        PhaseShiftVector::new(raw.sigma, raw.deltas).map_err(serde::de::Error::custom)
    }
}

impl PhaseShiftVector {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// S-matrix on the two-spin space, in the product basis.
#[derive(Clone, Debug)]
pub struct SpinSMatrix {
    pub sigma: HalfInt,
    pub matrix: DMatrix<Complex64>,
}

impl SpinSMatrix {
    /// `M · diag(e^{2iδ_s}) · Mᵀ` for raw phases `δ_0..δ_{2σ}`, no gauge fixing.
    pub fn from_phases(table: &CouplingTable, deltas: &[f64]) -> Result<Self> {
        if deltas.len() != table.dim() {
            return Err(usage(format!("expected {} phase shifts, got {}", table.dim(), deltas.len())));
        }
        let m = table.matrix().map(|x| Complex64::new(x, 0.0));
        let diag = DVector::from_iterator(m.ncols(), column_phases(table, deltas));
        let matrix = &m * DMatrix::from_diagonal(&diag) * m.transpose();
        Ok(Self { sigma: table.sigma(), matrix })
    }

    /// `Mᵀ S M`, which is diagonal for a rotationally invariant `S`.
    pub fn coupled_form(&self) -> Result<DMatrix<Complex64>> {
        let m = coupling_table(self.sigma)?.matrix().map(|x| Complex64::new(x, 0.0));
        Ok(m.transpose() * &self.matrix * m)
    }
}

fn column_phases<'a>(table: &'a CouplingTable, deltas: &'a [f64]) -> impl Iterator<Item = Complex64> + 'a {
    table.column_spins().map(move |s| Complex64::from_polar(1.0, 2.0 * deltas[s.twice() as usize / 2]))
}

pub fn build_s_matrix(delta: &PhaseShiftVector) -> Result<SpinSMatrix> {
    SpinSMatrix::from_phases(&*coupling_table(delta.sigma)?, &delta.deltas)
}

/// `S|ψ⟩`, returned in the basis the input was given in.
pub fn scatter(state: &StateVector, delta: &PhaseShiftVector) -> Result<StateVector> {
    if state.sigma() != delta.sigma {
        return Err(usage(format!("state has spin {}, phase shifts are for spin {}", state.sigma(), delta.sigma)));
    }
    let table = coupling_table(state.sigma())?;
    let coupled = match state.basis() {
        Basis::Coupled => state.clone(),
        Basis::Product => state.to_coupled_with(&table)?,
    };
    let phases = DVector::from_iterator(coupled.amplitudes().len(), column_phases(&table, &delta.deltas));
    let out = StateVector::from_parts(state.sigma(), Basis::Coupled, coupled.amplitudes().component_mul(&phases));
    match state.basis() {
        Basis::Coupled => Ok(out),
        Basis::Product => out.to_product_with(&table),
    }
}

/// `g_χ(λ)` for `χ = σ, …, -σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GVector {
    pub sigma: HalfInt,
    pub lambda: HalfInt,
    pub values: Vec<Complex64>,
}

impl GVector {
    pub fn squared_moduli(&self) -> Vec<f64> {
        self.values.iter().map(|g| g.norm_sqr()).collect()
    }
}

/// Precomputed weights `w[χ][s] = ⟨s 0|λ, -λ⟩ ⟨χ, -χ|s 0⟩`, so that
/// `g_χ = Σ_s w[χ][s] e^{2iδ_s}`.
#[derive(Clone, Debug)]
pub struct GKernel {
    sigma: HalfInt,
    lambda: HalfInt,
    /// rows χ (descending), columns s = 0..2σ
    weights: DMatrix<f64>,
}

impl GKernel {
    pub fn new(sigma: HalfInt, lambda: HalfInt) -> Result<Self> {
        let table: Arc<CouplingTable> = coupling_table(sigma)?;
        if table.magnetic_index(lambda).is_none() {
            return Err(domain(format!("λ = {lambda} is not a projection of spin {sigma}")));
        }
        let d = table.dim();
        let chis: Vec<HalfInt> = sigma.magnetic_range().collect();
        let weights = DMatrix::from_fn(d, d, |row, s| {
            let s = HalfInt::from_int(s as i32);
            let chi = chis[row];
            table.coefficient(s, HalfInt::ZERO, lambda, -lambda) * table.coefficient(s, HalfInt::ZERO, chi, -chi)
        });
        Ok(Self { sigma, lambda, weights })
    }

    pub fn sigma(&self) -> HalfInt {
        self.sigma
    }

    pub fn lambda(&self) -> HalfInt {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    /// `g_χ` for the full phase vector `δ_0..δ_{2σ}`.
    pub fn g(&self, deltas: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(deltas.len(), self.dim());
        let phases: Vec<Complex64> = deltas.iter().map(|&d| Complex64::from_polar(1.0, 2.0 * d)).collect();
        self.weights.row_iter().map(|row| row.iter().zip(&phases).map(|(&w, &p)| p * w).sum()).collect()
    }

    pub fn squared_moduli(&self, deltas: &[f64]) -> Vec<f64> {
        self.g(deltas).iter().map(|g| g.norm_sqr()).collect()
    }

    /// `∂|g_χ|²/∂δ_s` for `s = 1..2σ` (the gauge phase `δ₀` is held fixed).
    pub fn squared_moduli_jacobian(&self, deltas: &[f64]) -> DMatrix<f64> {
        let g = self.g(deltas);
        let d = self.dim();
        DMatrix::from_fn(d, d - 1, |chi, k| {
            let s = k + 1;
            // ∂g/∂δ_s = 2i w e^{2iδ_s};  ∂|g|² = 2 Re(ḡ ∂g)
            let dg = Complex64::new(0.0, 2.0 * self.weights[(chi, s)]) * Complex64::from_polar(1.0, 2.0 * deltas[s]);
            2.0 * (g[chi].conj() * dg).re
        })
    }
}

/// `g_χ(λ) = Σ_s e^{2iδ_s} ⟨s 0|λ, -λ⟩ ⟨χ, -χ|s 0⟩`.
pub fn g_vector(lambda: HalfInt, delta: &PhaseShiftVector) -> Result<GVector> {
    let kernel = GKernel::new(delta.sigma, lambda)?;
    Ok(GVector { sigma: delta.sigma, lambda, values: kernel.g(&delta.deltas) })
}

/// Schmidt coefficients `|g_χ|²` of the out-state, sorted descending.
pub fn schmidt_from_g(g: &GVector) -> SchmidtSpectrum {
    SchmidtSpectrum::from_unsorted(g.squared_moduli())
}
