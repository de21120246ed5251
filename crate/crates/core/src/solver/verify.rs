//! Cross-checks against the closed-form trigonometric systems and solution
//! lists published for `σ = 1/2, 1, 3/2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::torus::torus_distance;
use super::{solve, ResidualSystem, SolutionSet, SolverConfig};
use crate::angular_momentum::HalfInt;
use crate::error::{domain, Result};
use crate::scattering::GKernel;

/// Random phase vectors used for the printed-system comparison.
pub const SYSTEM_SAMPLES: usize = 1000;
/// Samples drawn along each published one-parameter family.
pub const FAMILY_SAMPLES: usize = 100;
const SEED: u64 = 0x5e_ed0f_5ca7;
/// A printed equation agrees with `|g_χ|²` if it is this close everywhere.
pub const AGREEMENT_TOL: f64 = 1e-12;
/// Family samples of one solution set must solve the other's system to this.
pub const FAMILY_MATCH_TOL: f64 = 1e-9;

/// `coefficient · cos(Σ_k multipliers[k] · 2δ_{k+1})`; all-zero multipliers
/// make a constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrintedTerm {
    pub coefficient: f64,
    pub multipliers: Vec<i32>,
}

impl PrintedTerm {
    fn basis(&self, free: &[f64]) -> f64 {
        let angle: f64 = self.multipliers.iter().zip(free).map(|(&m, &d)| f64::from(m) * 2.0 * d).sum();
        angle.cos()
    }

    pub fn label(&self) -> String {
        if self.multipliers.iter().all(|&m| m == 0) {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, &m) in self.multipliers.iter().enumerate().filter(|(_, &m)| m != 0) {
            let sign = if m < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let scale = if m.abs() == 1 { "2".to_string() } else { format!("{}", 2 * m.abs()) };
            out.push_str(&format!("{sign}{scale}δ{}", k + 1));
        }
        format!("cos({out})")
    }
}

/// `|g_χ(σ)|² = (Σ terms) / denominator` as printed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrintedEquation {
    pub chi: HalfInt,
    pub denominator: f64,
    pub terms: Vec<PrintedTerm>,
}

impl PrintedEquation {
    pub fn evaluate(&self, free: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.coefficient * t.basis(free)).sum::<f64>() / self.denominator
    }
}

fn term(coefficient: f64, multipliers: &[i32]) -> PrintedTerm {
    PrintedTerm { coefficient, multipliers: multipliers.to_vec() }
}

/// The published right-hand sides for `λ = σ`, in printed order, each tied
/// to the `χ` whose `|g_χ|²` it describes. `sin²` terms are rewritten as
/// cosines of the doubled angle.
pub fn published_system(sigma: HalfInt) -> Option<Vec<PrintedEquation>> {
    let eq = |chi: i32, denominator: f64, terms: Vec<PrintedTerm>| PrintedEquation {
        chi: HalfInt::from_twice(chi),
        denominator,
        terms,
    };
    match sigma.twice() {
        // cos²δ₁, sin²δ₁
        1 => Some(vec![
            eq(1, 2.0, vec![term(1.0, &[0]), term(1.0, &[1])]),
            eq(-1, 2.0, vec![term(1.0, &[0]), term(-1.0, &[1])]),
        ]),
        2 => Some(vec![
            eq(2, 18.0, vec![term(7.0, &[0, 0]), term(6.0, &[1, 0]), term(3.0, &[1, -1]), term(1.0, &[0, 1])]),
            // (4/9) sin²δ₂
            eq(0, 18.0, vec![term(4.0, &[0, 0]), term(-4.0, &[0, 1])]),
            eq(-2, 18.0, vec![term(7.0, &[0, 0]), term(-6.0, &[1, 0]), term(-3.0, &[1, -1]), term(2.0, &[0, 1])]),
        ]),
        3 => {
            // constant, cos2δ₁, cos(2δ₁-2δ₂), cos(2δ₁-2δ₃), cos2δ₂, cos(2δ₂-2δ₃), cos2δ₃
            let shapes: [&[i32]; 7] =
                [&[0, 0, 0], &[1, 0, 0], &[1, -1, 0], &[1, 0, -1], &[0, 1, 0], &[0, 1, -1], &[0, 0, 1]];
            let build = |chi: i32, coefficients: [f64; 7]| {
                eq(chi, 400.0, coefficients.iter().zip(shapes).map(|(&c, m)| term(c, m)).collect())
            };
            Some(vec![
                build(3, [132.0, 90.0, 90.0, 18.0, 50.0, 10.0, 10.0]),
                build(-3, [132.0, -90.0, -90.0, 18.0, 50.0, -10.0, -10.0]),
                // the printed third and fourth lines are χ = -1/2 and χ = 1/2
                build(-1, [68.0, -30.0, 30.0, -18.0, -50.0, -30.0, 30.0]),
                build(1, [68.0, 30.0, -30.0, -18.0, -50.0, 30.0, -30.0]),
            ])
        }
        _ => None,
    }
}

/// Published perfect-entangler phases `(δ₁, …, δ_{2σ})`. One-parameter
/// families are sampled at `family_samples` random `δ₁`.
pub fn published_solutions(sigma: HalfInt, family_samples: usize, seed: u64) -> Option<Vec<Vec<f64>>> {
    match sigma.twice() {
        1 => Some([PI / 4.0, -PI / 4.0, 3.0 * PI / 4.0, -3.0 * PI / 4.0].iter().map(|&d| vec![d]).collect()),
        2 => {
            let mut out = Vec::new();
            for (centre1, centre2) in [(PI / 12.0, -PI / 6.0), (-PI / 12.0, PI / 6.0)] {
                for s1 in [1.0, -1.0] {
                    for s2 in [1.0, -1.0] {
                        out.push(vec![centre1 + s1 * PI / 4.0, centre2 + s2 * PI / 2.0]);
                    }
                }
            }
            Some(out)
        }
        3 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for _ in 0..family_samples {
                let t: f64 = rng.random_range(-PI..PI);
                for d2 in [PI / 2.0, -PI / 2.0] {
                    out.push(vec![t, d2, t]);
                    let shifted = if t + PI <= PI { t + PI } else { t - PI };
                    out.push(vec![t, d2, shifted]);
                }
            }
            Some(out)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PublishedResidual {
    pub lambda: HalfInt,
    pub max_residual: f64,
}

/// A printed coefficient that differs from the one reproducing `|g_χ|²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientCorrection {
    pub term: String,
    pub printed: f64,
    pub reproducing: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquationCheck {
    /// 1-based position in the printed system.
    pub index: usize,
    pub chi: HalfInt,
    pub max_deviation: f64,
    pub agrees: bool,
    /// Least-squares coefficients of the printed terms that reproduce the
    /// computed `|g_χ|²`, with the fit's own worst error.
    pub fitted: Vec<f64>,
    pub fit_residual: f64,
    pub corrections: Vec<CoefficientCorrection>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub sigma: HalfInt,
    pub lambda: HalfInt,
    pub published_points: usize,
    pub published_residuals: Vec<PublishedResidual>,
    pub samples: usize,
    pub equations: Vec<EquationCheck>,
    /// Worst `|Σ printed right-hand sides - 1|` over the samples.
    pub printed_sum_deviation: f64,
}

impl VerificationReport {
    pub fn max_published_residual(&self) -> f64 {
        self.published_residuals.iter().map(|r| r.max_residual).fold(0.0, f64::max)
    }
}

pub fn verify_published_solutions(sigma: HalfInt) -> Result<VerificationReport> {
    let (Some(system), Some(solutions)) = (published_system(sigma), published_solutions(sigma, FAMILY_SAMPLES, SEED))
    else {
        return Err(domain(format!("no published solutions for spin {sigma}; expected 1/2, 1 or 3/2")));
    };

    let mut published_residuals = Vec::new();
    for lambda in sigma.magnetic_range() {
        let residual_system = ResidualSystem::for_spin(sigma, lambda)?;
        let max_residual = solutions.iter().map(|x| residual_system.evaluate(x).max_norm()).fold(0.0, f64::max);
        published_residuals.push(PublishedResidual { lambda, max_residual });
    }

    let kernel = GKernel::new(sigma, sigma)?;
    let chis: Vec<HalfInt> = sigma.magnetic_range().collect();
    let n = sigma.twice() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples: Vec<Vec<f64>> =
        (0..SYSTEM_SAMPLES).map(|_| (0..n).map(|_| rng.random_range(-PI..PI)).collect()).collect();
    let computed: Vec<Vec<f64>> = samples
        .iter()
        .map(|x| kernel.squared_moduli(&std::iter::once(0.0).chain(x.iter().copied()).collect::<Vec<_>>()))
        .collect();

    let mut equations = Vec::new();
    for (index, eq) in system.iter().enumerate() {
        let row = chis.iter().position(|&c| c == eq.chi).expect("printed χ is a projection");
        let max_deviation =
            samples.iter().zip(&computed).map(|(x, g2)| (eq.evaluate(x) - g2[row]).abs()).fold(0.0, f64::max);

        let design = DMatrix::from_fn(samples.len(), eq.terms.len(), |i, k| eq.terms[k].basis(&samples[i]));
        let target = DVector::from_iterator(samples.len(), computed.iter().map(|g2| g2[row] * eq.denominator));
        let fitted = design.clone().svd(true, true).solve(&target, 1e-12).map_err(|e| domain(e.to_string()))?;
        let fit_residual = (&design * &fitted - &target).camax() / eq.denominator;
        let corrections = eq
            .terms
            .iter()
            .zip(fitted.iter())
            .filter(|(t, &f)| (t.coefficient - f).abs() > 1e-6)
            .map(|(t, &f)| CoefficientCorrection {
                term: t.label(),
                printed: t.coefficient,
                reproducing: (f * 1e9).round() / 1e9,
            })
            .collect();

        equations.push(EquationCheck {
            index: index + 1,
            chi: eq.chi,
            max_deviation,
            agrees: max_deviation <= AGREEMENT_TOL,
            fitted: fitted.iter().map(|f| (f * 1e9).round() / 1e9).collect(),
            fit_residual,
            corrections,
        });
    }

    let printed_sum_deviation =
        samples.iter().map(|x| (system.iter().map(|eq| eq.evaluate(x)).sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);

    Ok(VerificationReport {
        sigma,
        lambda: sigma,
        published_points: solutions.len(),
        published_residuals,
        samples: SYSTEM_SAMPLES,
        equations,
        printed_sum_deviation,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaComparison {
    pub lambda: HalfInt,
    pub points: usize,
    pub families: usize,
    pub identical: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaReport {
    pub sigma: HalfInt,
    pub reference_lambda: HalfInt,
    pub comparisons: Vec<LambdaComparison>,
    pub all_identical: bool,
    #[serde(skip)]
    pub sets: Vec<SolutionSet>,
}

fn family_samples_solve(from: &SolutionSet, system: &ResidualSystem) -> bool {
    from.families.iter().flat_map(|f| &f.samples).all(|s| system.evaluate(&s[1..]).max_norm() <= FAMILY_MATCH_TOL)
}

/// Why two solution sets differ, or `None` if they agree up to `radius`.
fn difference(a: &SolutionSet, b: &SolutionSet, radius: f64) -> Result<Option<String>> {
    if a.points.len() != b.points.len() {
        return Ok(Some(format!("{} isolated points vs {}", a.points.len(), b.points.len())));
    }
    for p in &a.points {
        if !b.points.iter().any(|q| torus_distance(&p.deltas, &q.deltas) <= radius) {
            return Ok(Some(format!("point {:?} has no partner", p.deltas)));
        }
    }
    if a.families.len() != b.families.len() {
        return Ok(Some(format!("{} families vs {}", a.families.len(), b.families.len())));
    }
    let nullities = |s: &SolutionSet| {
        let mut v: Vec<usize> = s.families.iter().map(|f| f.nullity).collect();
        v.sort_unstable();
        v
    };
    if nullities(a) != nullities(b) {
        return Ok(Some("family dimensions differ".to_string()));
    }
    let (sys_a, sys_b) = (ResidualSystem::for_spin(a.sigma, a.lambda)?, ResidualSystem::for_spin(b.sigma, b.lambda)?);
    if !family_samples_solve(a, &sys_b) || !family_samples_solve(b, &sys_a) {
        return Ok(Some("family samples do not solve the other system".to_string()));
    }
    Ok(None)
}

/// Solves for every `λ` and compares each solution set with the one for
/// `λ = σ`.
pub fn lambda_independence_check(sigma: HalfInt, config: &SolverConfig) -> Result<LambdaReport> {
    let sets: Vec<SolutionSet> =
        sigma.magnetic_range().map(|lambda| solve(sigma, lambda, config)).collect::<Result<_>>()?;
    let reference = &sets[0];
    let mut comparisons = Vec::new();
    for set in &sets {
        let diff = difference(reference, set, config.dedup_radius)?;
        comparisons.push(LambdaComparison {
            lambda: set.lambda,
            points: set.points.len(),
            families: set.families.len(),
            identical: diff.is_none(),
            detail: diff.unwrap_or_else(|| "identical".to_string()),
        });
    }
    let all_identical = comparisons.iter().all(|c| c.identical);
    Ok(LambdaReport { sigma, reference_lambda: sigma, comparisons, all_identical, sets })
}
