//! Solves the perfect-entangler system for every projection λ and compares
//! the solution sets.

use spinscat::solver::lambda_independence_check;
use spinscat::{HalfInt, SolverConfig};

fn main() -> spinscat::Result<()> {
    for twice in 1..=3 {
        let report = lambda_independence_check(HalfInt::from_twice(twice), &SolverConfig::default())?;
        println!("σ = {}: all identical = {}", report.sigma, report.all_identical);
        for c in &report.comparisons {
            println!("  λ = {:>4}: {:>2} points, {} families, {}", c.lambda, c.points, c.families, c.detail);
        }
    }
    Ok(())
}
