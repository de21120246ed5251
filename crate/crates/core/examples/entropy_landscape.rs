//! Writes the out-state entropy over the (δ₁, δ₂) torus for σ = 1 as CSV,
//! ready for a heat-map.
//!
//! ```text
//! cargo run --release --example entropy_landscape > landscape.csv
//! ```

use spinscat::solver::{entropy_scan, ScanAxis};
use spinscat::{invariant_in_state, Euler, HalfInt, InStateSpec, PhaseShiftVector};

fn main() -> spinscat::Result<()> {
    let sigma = HalfInt::ONE;
    let state = invariant_in_state(sigma, &InStateSpec { euler: Euler::new(0.2, 0.9, -0.4), lambda: sigma })?;
    let axes = [ScanAxis { phase: 1, samples: 120 }, ScanAxis { phase: 2, samples: 120 }];
    let rows = entropy_scan(&state, &PhaseShiftVector::zero(sigma), &axes)?;
    println!("delta1,delta2,entropy");
    for row in &rows {
        println!("{:.16e},{:.16e},{:.16e}", row.deltas[1], row.deltas[2], row.entropy);
    }
    let best = rows.iter().map(|r| r.entropy).fold(0.0, f64::max);
    eprintln!("{} rows, max entropy {best:.6}", rows.len());
    Ok(())
}
