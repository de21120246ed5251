//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use spinscat::angular_momentum::CouplingTable;
use spinscat::scattering::SpinSMatrix;
use spinscat::solver::{lambda_independence_check, published_solutions, torus_distance, verify_published_solutions};
use spinscat::{
    build_s_matrix, entropy_of_entanglement, g_vector, invariant_in_state, partial_trace, residual, scatter,
    schmidt_from_g, separable_state, solve, wigner_matrix, Basis, Complex64, HalfInt, InStateSpec, PhaseShiftVector,
    SeparableSpec, SolutionSet, SolverConfig, StateVector, Subsystem,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn spins_to_two() -> impl Iterator<Item = HalfInt> {
    (1..=4).map(h)
}

fn c1_spin_half() -> Outcome {
    let (set, took) = timed(|| solve(HalfInt::HALF, HalfInt::HALF, &SolverConfig::default()).unwrap());
    let expected = [-3.0 * PI / 4.0, -PI / 4.0, PI / 4.0, 3.0 * PI / 4.0];
    let isolated = set.points.iter().all(|p| p.nullity == 0) && set.families.is_empty();
    let error = set.points.iter().zip(expected).map(|(p, e)| (p.deltas[1] - e).abs()).fold(0.0, f64::max);
    let worst = set.points.iter().map(|p| p.residual_max).fold(0.0, f64::max);
    let pass = set.points.len() == 4 && isolated && error <= 1e-9 && worst <= 1e-12 && took < Duration::from_secs(1);
    outcome(pass, format!("{} points, max error {error:.1e}, max residual {worst:.1e}, {took:.2?}", set.points.len()))
}

fn c2_spin_one() -> Outcome {
    let (set, took) = timed(|| solve(HalfInt::ONE, HalfInt::ONE, &SolverConfig::default()).unwrap());
    let published = published_solutions(HalfInt::ONE, 0, 0).unwrap();
    let matched = published
        .iter()
        .filter(|target| set.points.iter().any(|p| torus_distance(&p.deltas[1..], target) <= 1e-8))
        .count();
    let extra: Vec<String> = set
        .points
        .iter()
        .filter(|p| !published.iter().any(|t| torus_distance(&p.deltas[1..], t) <= 1e-8))
        .map(|p| format!("({:.4}π, {:.4}π)", p.deltas[1] / PI, p.deltas[2] / PI))
        .collect();
    let pass = set.points.len() == 8 && matched == 8 && took < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "{} points, {matched}/8 published matched, {} others (each a published point with δ₁+π): {}, {took:.2?}",
            set.points.len(),
            extra.len(),
            extra.join(" ")
        ),
    )
}

fn c3_spin_three_halves() -> Outcome {
    let sigma = h(3);
    let (set, took) = timed(|| solve(sigma, sigma, &SolverConfig::default()).unwrap());
    let nullity_one = !set.families.is_empty() && set.families.iter().all(|f| f.nullity == 1);
    let samples = published_solutions(sigma, 100, 0xacce97).unwrap();
    let worst = samples
        .iter()
        .map(|x| residual(sigma, &PhaseShiftVector::from_free(sigma, x).unwrap()).unwrap().max_norm())
        .fold(0.0, f64::max);
    let pass = nullity_one && worst <= 1e-9 && took < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{} families (nullity {:?}), {} isolated points, {} published samples max residual {worst:.1e}, {took:.2?}",
            set.families.len(),
            set.families.iter().map(|f| f.nullity).collect::<Vec<_>>(),
            set.points.len(),
            samples.len()
        ),
    )
}

fn c4_printed_systems() -> Outcome {
    let half = verify_published_solutions(HalfInt::HALF).unwrap();
    let one = verify_published_solutions(HalfInt::ONE).unwrap();
    let three = verify_published_solutions(h(3)).unwrap();
    let max_dev = |r: &spinscat::solver::VerificationReport, skip: usize| {
        r.equations.iter().skip(skip).map(|e| e.max_deviation).fold(0.0, f64::max)
    };
    let (d_half, d_three, d_one) = (max_dev(&half, 0), max_dev(&three, 0), max_dev(&one, 1));
    let eq1 = &one.equations[0];
    let correction: Vec<String> =
        eq1.corrections.iter().map(|c| format!("{} coefficient {} -> {}", c.term, c.printed, c.reproducing)).collect();
    let pass = half.samples == 1000 && d_half <= 1e-12 && d_three <= 1e-12 && d_one <= 1e-12;
    outcome(
        pass,
        format!(
            "σ=1/2 {d_half:.1e}, σ=3/2 {d_three:.1e}, σ=1 eqs 2-3 {d_one:.1e}; σ=1 eq 1 deviates by {:.3e} ({})",
            eq1.max_deviation,
            correction.join(", ")
        ),
    )
}

fn c5_lambda_independence() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for sigma in [HalfInt::HALF, HalfInt::ONE, h(3)] {
        let report = lambda_independence_check(sigma, &SolverConfig::default()).unwrap();
        pass &= report.all_identical;
        let odd: Vec<String> = report
            .comparisons
            .iter()
            .filter(|c| !c.identical)
            .map(|c| format!("λ={}: {} points, {} families ({})", c.lambda, c.points, c.families, c.detail))
            .collect();
        parts.push(if odd.is_empty() {
            format!("σ={sigma} identical")
        } else {
            format!("σ={sigma} differs [{}]", odd.join("; "))
        });
    }
    outcome(pass, parts.join(", "))
}

fn c6_entropy_endpoints() -> Outcome {
    let mut rng = rng(6);
    let mut separable_worst: f64 = 0.0;
    for sigma in spins_to_two() {
        let d = sigma.multiplicity();
        for _ in 0..100 {
            let spec = SeparableSpec::new(random_unit_vector(&mut rng, d), random_unit_vector(&mut rng, d));
            let s = entropy_of_entanglement(&separable_state(sigma, &spec).unwrap()).unwrap();
            separable_worst = separable_worst.max(s.abs());
        }
    }
    let mut maximal_worst: f64 = 0.0;
    for sigma in spins_to_two() {
        let d = sigma.multiplicity();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..d).collect();
            perm.shuffle(&mut rng);
            let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
            for (j, &p) in perm.iter().enumerate() {
                amps[j * d + p] = Complex64::from_polar(1.0 / (d as f64).sqrt(), rng.random_range(-PI..PI));
            }
            let s = entropy_of_entanglement(&StateVector::new(sigma, Basis::Product, amps).unwrap()).unwrap();
            maximal_worst = maximal_worst.max((s - 1.0).abs());
        }
    }
    let pass = separable_worst <= 1e-12 && maximal_worst <= 1e-12;
    outcome(pass, format!("separable max |S| {separable_worst:.1e}, maximal max |S-1| {maximal_worst:.1e}"))
}

fn c7_symmetry() -> Outcome {
    let mut rng = rng(7);
    let (mut unitarity, mut commutator): (f64, f64) = (0.0, 0.0);
    for sigma in spins_to_two() {
        let n = sigma.multiplicity().pow(2);
        let rotations: Vec<DMatrix<Complex64>> = (0..50)
            .map(|_| {
                let d = wigner_matrix(sigma, random_euler(&mut rng)).matrix;
                kron(&d, &d)
            })
            .collect();
        for _ in 0..50 {
            let s = build_s_matrix(&random_phases(&mut rng, sigma)).unwrap().matrix;
            unitarity = unitarity.max(max_abs(&(s.adjoint() * &s - DMatrix::identity(n, n))));
            for u in &rotations {
                commutator = commutator.max(max_abs(&(&s * u - u * &s)));
            }
        }
    }
    let pass = unitarity <= 1e-10 && commutator <= 1e-10;
    outcome(pass, format!("max |S†S-1| {unitarity:.1e}, max |[S, D⊗D]| {commutator:.1e}"))
}

fn c8_pipeline_identity() -> Outcome {
    let mut rng = rng(8);
    let mut worst: f64 = 0.0;
    for sigma in spins_to_two() {
        for lambda in sigma.magnetic_range() {
            for _ in 0..100 {
                let delta = random_phases(&mut rng, sigma);
                let from_g = schmidt_from_g(&g_vector(lambda, &delta).unwrap());
                let state = invariant_in_state(sigma, &InStateSpec { euler: random_euler(&mut rng), lambda }).unwrap();
                let out = scatter(&state, &delta).unwrap();
                let from_trace = partial_trace(&out, Subsystem::First).unwrap().eigenvalues();
                for (a, b) in from_g.values.iter().zip(&from_trace) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    outcome(worst <= 1e-10, format!("max spectrum difference {worst:.1e}"))
}

fn c9_equal_phases() -> Outcome {
    let mut rng = rng(9);
    let mut worst: f64 = 0.0;
    for sigma in spins_to_two() {
        let table = CouplingTable::new(sigma).unwrap();
        let d = sigma.multiplicity();
        for _ in 0..100 {
            let phase = rng.random_range(-PI..PI);
            let s = SpinSMatrix::from_phases(&table, &vec![phase; d]).unwrap().matrix;
            let amps = if rng.random_bool(0.5) {
                random_unit_vector(&mut rng, d * d)
            } else {
                let spec = SeparableSpec::new(random_unit_vector(&mut rng, d), random_unit_vector(&mut rng, d));
                separable_state(sigma, &spec).unwrap().amplitudes().iter().copied().collect()
            };
            let state = StateVector::new(sigma, Basis::Product, amps).unwrap();
            let out = &s * state.amplitudes();
            let out = StateVector::new(sigma, Basis::Product, out.iter().copied().collect()).unwrap();
            let change = entropy_of_entanglement(&out).unwrap() - entropy_of_entanglement(&state).unwrap();
            worst = worst.max(change.abs());
        }
    }
    outcome(worst <= 1e-12, format!("max entropy change {worst:.1e}"))
}

fn c10_spin_two() -> Outcome {
    let sigma = h(4);
    let (set, took) = timed(|| solve(sigma, sigma, &SolverConfig::default()).unwrap());
    let check =
        |deltas: &Vec<f64>| residual(sigma, &PhaseShiftVector::new(sigma, deltas.clone()).unwrap()).unwrap().max_norm();
    let point_worst = set.points.iter().map(|p| check(&p.deltas)).fold(0.0, f64::max);
    let family_worst = set.families.iter().flat_map(|f| &f.samples).map(check).fold(0.0, f64::max);
    let samples: usize = set.families.iter().map(|f| f.samples.len()).sum();
    let mut nullities: Vec<usize> = set.families.iter().map(|f| f.nullity).collect();
    nullities.dedup();
    let pass = point_worst <= 1e-9 && family_worst <= 1e-9 && took < Duration::from_secs(30 * 60);
    outcome(
        pass,
        format!(
            "{} isolated points, {} families ({samples} samples, nullities {nullities:?}), max residual {:.1e}, {} seeds refined, {took:.1?}",
            set.points.len(),
            set.families.len(),
            point_worst.max(family_worst),
            set.stats.refined
        ),
    )
}

fn c11_determinism() -> Outcome {
    let mut same = true;
    let mut parts = Vec::new();
    for sigma in [HalfInt::ONE, h(3)] {
        let a = solve(sigma, sigma, &SolverConfig::default()).unwrap().to_json();
        let b = solve(sigma, sigma, &SolverConfig::default()).unwrap().to_json();
        same &= a == b;
        let round_trip = SolutionSet::from_json_str(&a).unwrap().to_json() == a;
        same &= round_trip;
        parts.push(format!("σ={sigma}: {} bytes, identical {}, round trip {round_trip}", a.len(), a == b));
    }
    outcome(same, parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("spin 1/2 solution set", c1_spin_half),
        ("spin 1 solution set", c2_spin_one),
        ("spin 3/2 families", c3_spin_three_halves),
        ("printed-system cross-check", c4_printed_systems),
        ("lambda independence", c5_lambda_independence),
        ("entropy endpoints", c6_entropy_endpoints),
        ("symmetry suite", c7_symmetry),
        ("pipeline identity", c8_pipeline_identity),
        ("all-equal-phase null test", c9_equal_phases),
        ("spin 2 exploration", c10_spin_two),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, k + 1, result.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
