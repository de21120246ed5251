//! How much entanglement can scattering produce from a separable in-state
//! that is not of the `U(u)|λ, -λ⟩` form?

use std::f64::consts::PI;

use spinscat::solver::max_entropy_search;
use spinscat::{HalfInt, SeparableSpec, SolverConfig};

fn main() -> spinscat::Result<()> {
    let config = SolverConfig::default();
    println!("σ = ½, a = (cos θ, sin θ), b = (1, 0)");
    for k in 0..=8 {
        let theta = k as f64 * PI / 16.0;
        let spec = SeparableSpec::real(&[theta.cos(), theta.sin()], &[1.0, 0.0]);
        let found = max_entropy_search(HalfInt::HALF, &spec, &config)?;
        println!(
            "  θ = {:>2}π/16: best entropy {:.9} at δ₁ = {:+.5}π",
            k,
            found.best_entropy,
            found.best_delta.deltas()[1] / PI
        );
    }
    let theta = PI / 5.0;
    let spec = SeparableSpec::real(&[theta.cos(), theta.sin()], &[1.0, 0.0]);
    let found = max_entropy_search(HalfInt::HALF, &spec, &config)?;
    println!("θ = π/5: {:.12}", found.best_entropy);
    Ok(())
}
