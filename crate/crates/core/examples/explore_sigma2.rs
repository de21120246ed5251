//! σ = 2 on the 4-torus. No closed-form answer is known; everything reported
//! is re-checked from scratch.
//!
//! ```text
//! cargo run --release --example explore_sigma2 -- [grid points per axis]
//! ```

use std::f64::consts::PI;
use std::time::Instant;

use spinscat::{residual, solve, HalfInt, PhaseShiftVector, SolverConfig};

fn main() -> spinscat::Result<()> {
    let sigma = HalfInt::from_twice(4);
    let mut config = SolverConfig::default();
    if let Some(grid) = std::env::args().nth(1) {
        config.grid_points_per_axis = grid.parse().expect("grid size is an integer");
    }
    let start = Instant::now();
    let set = solve(sigma, sigma, &config)?;
    println!(
        "grid {}^4: {} seeds refined, {} converged, {} distinct, {:.1?}",
        config.grid_points_per_axis,
        set.stats.refined,
        set.stats.converged,
        set.stats.distinct,
        start.elapsed()
    );
    let check = |d: &[f64]| residual(sigma, &PhaseShiftVector::new(sigma, d.to_vec()).unwrap()).unwrap().max_norm();
    println!("{} isolated points", set.points.len());
    for p in set.points.iter().take(20) {
        let shown: Vec<String> = p.deltas[1..].iter().map(|d| format!("{:+.5}π", d / PI)).collect();
        println!("  ({})  nullity {}  residual {:.1e}", shown.join(", "), p.nullity, check(&p.deltas));
    }
    println!("{} families", set.families.len());
    for f in &set.families {
        let worst = f.samples.iter().map(|s| check(s)).fold(0.0, f64::max);
        println!("  dimension {}: {} samples, worst residual {worst:.1e}", f.nullity, f.samples.len());
    }
    Ok(())
}
