//! Two-spin pure states.
//!
//! Amplitudes are stored in the order fixed by [`CouplingTable`]: product
//! basis rows `(μ₁, μ₂)` with both labels descending, coupled basis columns
//! `(s, m)` with both labels descending.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angular_momentum::{coupling_table, wigner_matrix, CouplingTable, Euler, HalfInt};
use crate::error::{domain, usage, Error, Result};

/// Inputs whose norm is within this distance of 1 are renormalized; anything
/// further off is rejected.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Product,
    Coupled,
}

/// Unit-norm state of two spins `σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    sigma: HalfInt,
    basis: Basis,
    amplitudes: DVector<Complex64>,
}

fn normalized(mut v: DVector<Complex64>, what: &str) -> Result<DVector<Complex64>> {
    let norm = v.norm();
    if norm == 0.0 {
        return Err(domain(format!("{what} has zero norm")));
    }
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(domain(format!("{what} has norm {norm}, expected 1")));
    }
    v.unscale_mut(norm);
    Ok(v)
}

impl StateVector {
    /// Validates the length, renormalizing amplitudes whose norm is within
    /// [`NORM_TOLERANCE`] of 1.
    pub fn new(sigma: HalfInt, basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if sigma < HalfInt::ZERO {
            return Err(domain(format!("spin {sigma} is negative")));
        }
        let d = sigma.multiplicity();
        if amplitudes.len() != d * d {
            return Err(usage(format!("spin {sigma} needs {} amplitudes, got {}", d * d, amplitudes.len())));
        }
        let amplitudes = normalized(DVector::from_vec(amplitudes), "state")?;
        Ok(Self { sigma, basis, amplitudes })
    }

    pub(crate) fn from_parts(sigma: HalfInt, basis: Basis, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), sigma.multiplicity().pow(2));
        Self { sigma, basis, amplitudes }
    }

    /// Product basis vector `|μ₁, μ₂⟩`.
    pub fn basis_state(sigma: HalfInt, mu1: HalfInt, mu2: HalfInt) -> Result<Self> {
        let table = coupling_table(sigma)?;
        let idx = table
            .product_index(mu1, mu2)
            .ok_or_else(|| domain(format!("|{mu1}, {mu2}⟩ is not a state of two spins {sigma}")))?;
        let d = table.dim();
        let mut amps = DVector::zeros(d * d);
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self::from_parts(sigma, Basis::Product, amps))
    }

    pub fn sigma(&self) -> HalfInt {
        self.sigma
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.sigma.multiplicity()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn to_coupled(&self) -> Result<Self> {
        self.to_coupled_with(&*coupling_table(self.sigma)?)
    }

    pub fn to_product(&self) -> Result<Self> {
        self.to_product_with(&*coupling_table(self.sigma)?)
    }

    pub fn to_coupled_with(&self, table: &CouplingTable) -> Result<Self> {
        self.check_table(table)?;
        if self.basis != Basis::Product {
            return Err(usage("state is already in the coupled basis"));
        }
        let amps = table.matrix().transpose().map(|x| Complex64::new(x, 0.0)) * &self.amplitudes;
        Ok(Self::from_parts(self.sigma, Basis::Coupled, amps))
    }

    pub fn to_product_with(&self, table: &CouplingTable) -> Result<Self> {
        self.check_table(table)?;
        if self.basis != Basis::Coupled {
            return Err(usage("state is already in the product basis"));
        }
        let amps = table.matrix().map(|x| Complex64::new(x, 0.0)) * &self.amplitudes;
        Ok(Self::from_parts(self.sigma, Basis::Product, amps))
    }

    /// Copy of the state in the product basis, converting if necessary.
    pub fn in_product_basis(&self) -> Result<Self> {
        match self.basis {
            Basis::Product => Ok(self.clone()),
            Basis::Coupled => self.to_product(),
        }
    }

    fn check_table(&self, table: &CouplingTable) -> Result<()> {
        if table.sigma() != self.sigma {
            return Err(usage(format!("coupling table is for spin {}, state for spin {}", table.sigma(), self.sigma)));
        }
        Ok(())
    }

    /// Product-basis amplitudes as a `d × d` matrix `C[μ₁, μ₂]`.
    pub fn amplitude_matrix(&self) -> Result<DMatrix<Complex64>> {
        let product = self.in_product_basis()?;
        let d = self.dim();
        Ok(DMatrix::from_fn(d, d, |i, j| product.amplitudes[i * d + j]))
    }

    pub(crate) fn from_amplitude_matrix(sigma: HalfInt, c: &DMatrix<Complex64>) -> Self {
        let d = sigma.multiplicity();
        let amps = DVector::from_fn(d * d, |k, _| c[(k / d, k % d)]);
        Self::from_parts(sigma, Basis::Product, amps)
    }

    /// `(V ⊗ W) ψ`, returned in the product basis.
    pub fn apply_local(&self, v: &DMatrix<Complex64>, w: &DMatrix<Complex64>) -> Result<Self> {
        let d = self.dim();
        if v.shape() != (d, d) || w.shape() != (d, d) {
            return Err(usage(format!("local operators must be {d}×{d}")));
        }
        let c = self.amplitude_matrix()?;
        Ok(Self::from_amplitude_matrix(self.sigma, &(v * c * w.transpose())))
    }

    /// `⟨self | other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.sigma != other.sigma || self.basis != other.basis {
            return Err(usage("inner product needs matching spin and basis"));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            sigma: self.sigma,
            basis: self.basis,
            amplitudes: self.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_json(json: &StateJson) -> Result<Self> {
        let amps = json.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::new(json.sigma, json.basis, amps)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: StateJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// Wire form of a [`StateVector`]:
/// `{ "sigma": "1/2", "basis": "product", "amplitudes": [[re, im], ...] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub sigma: HalfInt,
    pub basis: Basis,
    pub amplitudes: Vec<[f64; 2]>,
}

/// Single-spin factors `a`, `b` of `|φ⟩ = (Σ a_μ |μ⟩) ⊗ (Σ b_μ |μ⟩)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableSpec {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl SeparableSpec {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Self {
        Self { a, b }
    }

    pub fn real(a: &[f64], b: &[f64]) -> Self {
        let lift = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self { a: lift(a), b: lift(b) }
    }
}

pub fn separable_state(sigma: HalfInt, spec: &SeparableSpec) -> Result<StateVector> {
    let d = sigma.multiplicity();
    if spec.a.len() != d || spec.b.len() != d {
        return Err(usage(format!("spin {sigma} factors need {d} entries each")));
    }
    let a = normalized(DVector::from_column_slice(&spec.a), "factor a")?;
    let b = normalized(DVector::from_column_slice(&spec.b), "factor b")?;
    let amps = DVector::from_fn(d * d, |k, _| a[k / d] * b[k % d]);
    Ok(StateVector::from_parts(sigma, Basis::Product, amps))
}

/// Rotation `u` and projection `λ` of the in-state `U(u)|λ, -λ⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InStateSpec {
    pub euler: Euler,
    pub lambda: HalfInt,
}

/// `(D^σ(u) ⊗ D^σ(u)) |λ, -λ⟩`: the zero eigenvector of the rotated total
/// spin component.
pub fn invariant_in_state(sigma: HalfInt, spec: &InStateSpec) -> Result<StateVector> {
    let table = coupling_table(sigma)?;
    let lambda = spec.lambda;
    let (Some(i), Some(j)) = (table.magnetic_index(lambda), table.magnetic_index(-lambda)) else {
        return Err(domain(format!("λ = {lambda} is not a projection of spin {sigma}")));
    };
    let rot = wigner_matrix(sigma, spec.euler).matrix;
    let d = table.dim();
    let amps = DVector::from_fn(d * d, |k, _| rot[(k / d, i)] * rot[(k % d, j)]);
    Ok(StateVector::from_parts(sigma, Basis::Product, amps))
}
