//! Scatter `|½, -½⟩` through the S-matrix with `δ₁ = π/4`: the out-state is
//! maximally entangled, and rotating the in-state does not change that.

use std::f64::consts::FRAC_PI_4;

use spinscat::{
    build_s_matrix, entropy_of_entanglement, g_vector, invariant_in_state, scatter, Euler, HalfInt, InStateSpec,
    PhaseShiftVector, StateVector,
};

fn main() -> spinscat::Result<()> {
    let sigma = HalfInt::HALF;
    let delta = PhaseShiftVector::from_free(sigma, &[FRAC_PI_4])?;
    println!("coupled-basis S (s = 1 triplet first, then s = 0):");
    let form = build_s_matrix(&delta)?.coupled_form()?;
    for k in 0..4 {
        println!("  {:+.3}", form[(k, k)]);
    }

    let state = StateVector::basis_state(sigma, sigma, -sigma)?;
    let out = scatter(&state, &delta)?;
    let shown: Vec<String> = out.amplitudes().iter().map(|z| format!("{z:.4}")).collect();
    println!("out amplitudes (++, +-, -+, --): {}", shown.join("  "));
    println!("entropy: {} -> {:.12}", entropy_of_entanglement(&state)?, entropy_of_entanglement(&out)?);
    let g: Vec<String> = g_vector(sigma, &delta)?.values.iter().map(|z| format!("{z:.4}")).collect();
    println!("g_χ for χ = ½, -½: {}", g.join("  "));

    for euler in [Euler::new(0.4, 1.2, -2.0), Euler::new(2.5, 0.3, 1.0)] {
        let rotated = invariant_in_state(sigma, &InStateSpec { euler, lambda: sigma })?;
        println!(
            "rotated in-state {euler:?}: out entropy {:.12}",
            entropy_of_entanglement(&scatter(&rotated, &delta)?)?
        );
    }
    Ok(())
}
