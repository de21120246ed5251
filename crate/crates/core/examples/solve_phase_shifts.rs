//! Every perfect-entangler phase vector for σ = ½, 1 and 3/2.
//!
//! ```text
//! cargo run --release --example solve_phase_shifts
//! ```

use std::f64::consts::PI;
use std::time::Instant;

use spinscat::{solve, HalfInt, SolverConfig};

fn in_pi(deltas: &[f64]) -> String {
    let parts: Vec<String> = deltas[1..].iter().map(|d| format!("{:+.4}π", d / PI)).collect();
    format!("({})", parts.join(", "))
}

fn main() -> spinscat::Result<()> {
    for twice in 1..=3 {
        let sigma = HalfInt::from_twice(twice);
        let start = Instant::now();
        let set = solve(sigma, sigma, &SolverConfig::default())?;
        println!(
            "σ = {sigma}: {} isolated points, {} families ({:.2?}, {} of {} seeds converged)",
            set.points.len(),
            set.families.len(),
            start.elapsed(),
            set.stats.converged,
            set.stats.refined
        );
        for p in &set.points {
            println!("  point {}  residual {:.1e}", in_pi(&p.deltas), p.residual_max);
        }
        for f in &set.families {
            let first = &f.samples[0];
            let last = &f.samples[f.samples.len() - 1];
            println!(
                "  family of dimension {}: {} samples from {} to {}",
                f.nullity,
                f.samples.len(),
                in_pi(first),
                in_pi(last)
            );
        }
    }
    Ok(())
}
