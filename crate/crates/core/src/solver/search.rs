//! Entropy landscapes over the phase torus for arbitrary in-states.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::SolverConfig;
use crate::angular_momentum::{coupling_table, CouplingTable, HalfInt};
use crate::entanglement::entropy_of_entanglement;
use crate::error::{domain, usage, Result};
use crate::scattering::{wrap_angle, PhaseShiftVector};
use crate::states::{separable_state, Basis, SeparableSpec, StateVector};

/// Grid points carried into the ascent stage.
const ASCENT_STARTS: usize = 8;
const ASCENT_ITERS: usize = 200;
const GRADIENT_STEP: f64 = 1e-6;

/// Out-state entropy as a function of the free phases, for a fixed in-state.
struct EntropyLandscape {
    sigma: HalfInt,
    table: std::sync::Arc<CouplingTable>,
    coupled: DVector<Complex64>,
}

impl EntropyLandscape {
    fn new(state: &StateVector) -> Result<Self> {
        let table = coupling_table(state.sigma())?;
        let coupled = match state.basis() {
            Basis::Coupled => state.clone(),
            Basis::Product => state.to_coupled_with(&table)?,
        };
        Ok(Self { sigma: state.sigma(), table, coupled: coupled.amplitudes().clone() })
    }

    fn entropy(&self, free: &[f64]) -> f64 {
        let phases = DVector::from_iterator(
            self.coupled.len(),
            self.table.column_spins().map(|s| {
                let k = s.twice() as usize / 2;
                let delta = if k == 0 { 0.0 } else { free[k - 1] };
                Complex64::from_polar(1.0, 2.0 * delta)
            }),
        );
        let out = StateVector::from_parts(self.sigma, Basis::Coupled, self.coupled.component_mul(&phases));
        entropy_of_entanglement(&out).expect("scattered states are normalized")
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut probe = x.to_vec();
        (0..x.len())
            .map(|k| {
                probe[k] = x[k] + GRADIENT_STEP;
                let plus = self.entropy(&probe);
                probe[k] = x[k] - GRADIENT_STEP;
                let minus = self.entropy(&probe);
                probe[k] = x[k];
                (plus - minus) / (2.0 * GRADIENT_STEP)
            })
            .collect()
    }

    /// Gradient ascent with step halving.
    fn ascend(&self, x0: Vec<f64>) -> (Vec<f64>, f64) {
        let mut x = x0;
        let mut value = self.entropy(&x);
        let mut rate = 1.0;
        for _ in 0..ASCENT_ITERS {
            let grad = self.gradient(&x);
            let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if norm < 1e-12 {
                break;
            }
            let mut improved = false;
            while rate > 1e-12 {
                let trial: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi + rate * gi).collect();
                let v = self.entropy(&trial);
                if v > value {
                    x = trial;
                    value = v;
                    improved = true;
                    rate *= 2.0;
                    break;
                }
                rate *= 0.5;
            }
            if !improved {
                break;
            }
        }
        (x.into_iter().map(wrap_angle).collect(), value)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropySearch {
    pub best_delta: PhaseShiftVector,
    pub best_entropy: f64,
}

fn grid_point(index: usize, n: usize, grid: usize) -> Vec<f64> {
    let step = 2.0 * PI / grid as f64;
    let mut rest = index;
    let mut x = vec![0.0; n];
    for slot in x.iter_mut().rev() {
        *slot = -PI + ((rest % grid) as f64 + 0.5) * step;
        rest /= grid;
    }
    x
}

/// Largest out-state entropy reachable from the separable in-state `spec`
/// over all phase vectors: grid scan, then gradient ascent from the best
/// grid points.
pub fn max_entropy_search(sigma: HalfInt, spec: &SeparableSpec, config: &SolverConfig) -> Result<EntropySearch> {
    config.validate()?;
    let state = separable_state(sigma, spec)?;
    max_entropy_search_from(&state, config)
}

/// [`max_entropy_search`] for any in-state.
pub fn max_entropy_search_from(state: &StateVector, config: &SolverConfig) -> Result<EntropySearch> {
    let sigma = state.sigma();
    if sigma <= HalfInt::ZERO {
        return Err(domain("spin 0 has no phase torus"));
    }
    let landscape = EntropyLandscape::new(state)?;
    let n = sigma.twice() as usize;
    let grid = config.grid_points_per_axis;
    let total = u32::try_from(n)
        .ok()
        .and_then(|n| grid.checked_pow(n))
        .ok_or_else(|| domain(format!("{grid}^{n} grid points is too many")))?;

    let mut scored: Vec<(usize, f64)> =
        (0..total).into_par_iter().map(|i| (i, landscape.entropy(&grid_point(i, n, grid)))).collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut best: Option<(Vec<f64>, f64)> = None;
    for &(i, _) in scored.iter().take(ASCENT_STARTS) {
        let (x, v) = landscape.ascend(grid_point(i, n, grid));
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((x, v));
        }
    }
    let (x, best_entropy) = best.expect("grid is non-empty");
    Ok(EntropySearch { best_delta: PhaseShiftVector::from_free(sigma, &x)?, best_entropy })
}

/// One varying phase of an entropy scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanAxis {
    /// Index `s ≥ 1` of the phase `δ_s`.
    pub phase: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub deltas: Vec<f64>,
    pub entropy: f64,
}

/// Out-state entropy of `state` on a regular grid over the chosen phases.
/// Axis samples sit at `-π + (k+1)·2π/N`, so `π` is included and `-π` is not.
/// Phases not on an axis keep their value from `base`. Rows are ordered with
/// the last axis varying fastest.
pub fn entropy_scan(state: &StateVector, base: &PhaseShiftVector, axes: &[ScanAxis]) -> Result<Vec<ScanRow>> {
    if base.sigma() != state.sigma() {
        return Err(usage("phase shifts and state have different spins"));
    }
    let n = state.sigma().twice() as usize;
    for axis in axes {
        if axis.phase == 0 || axis.phase > n {
            return Err(usage(format!("phase index {} outside 1..={n}", axis.phase)));
        }
        if axis.samples == 0 {
            return Err(usage("scan axes need at least one sample"));
        }
    }
    let landscape = EntropyLandscape::new(state)?;
    let total: usize = axes.iter().map(|a| a.samples).product();
    let rows = (0..total)
        .into_par_iter()
        .map(|index| {
            let mut free = base.free().to_vec();
            let mut rest = index;
            for axis in axes.iter().rev() {
                let k = rest % axis.samples;
                rest /= axis.samples;
                free[axis.phase - 1] = -PI + (k as f64 + 1.0) * 2.0 * PI / axis.samples as f64;
            }
            let entropy = landscape.entropy(&free);
            ScanRow { deltas: std::iter::once(0.0).chain(free).collect(), entropy }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular_momentum::Euler;
    use crate::states::{invariant_in_state, InStateSpec};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn stretched_state_never_entangles() {
        let spec = SeparableSpec::real(&[1.0, 0.0], &[1.0, 0.0]);
        let found = max_entropy_search(HalfInt::HALF, &spec, &SolverConfig::default()).unwrap();
        assert!(found.best_entropy.abs() < 1e-12);
    }

    #[test]
    fn invariant_state_reaches_one() {
        let state =
            invariant_in_state(HalfInt::HALF, &InStateSpec { euler: Euler::IDENTITY, lambda: HalfInt::HALF }).unwrap();
        let found = max_entropy_search_from(&state, &SolverConfig::default()).unwrap();
        assert!((found.best_entropy - 1.0).abs() < 1e-10);
        let d1 = found.best_delta.free()[0];
        assert!((d1.abs() - FRAC_PI_4).abs() < 1e-4 || (d1.abs() - 3.0 * FRAC_PI_4).abs() < 1e-4);
    }

    #[test]
    fn scan_layout() {
        let state =
            invariant_in_state(HalfInt::ONE, &InStateSpec { euler: Euler::IDENTITY, lambda: HalfInt::ONE }).unwrap();
        let base = PhaseShiftVector::zero(HalfInt::ONE);
        let rows = entropy_scan(&state, &base, &[ScanAxis { phase: 1, samples: 3 }, ScanAxis { phase: 2, samples: 2 }])
            .unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].deltas[2], 0.0);
        assert!((rows[1].deltas[2] - PI).abs() < 1e-15);
        assert!((rows[5].deltas[1] - PI).abs() < 1e-15);
        assert!(entropy_scan(&state, &base, &[ScanAxis { phase: 3, samples: 2 }]).is_err());
    }
}
