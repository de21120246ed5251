//! Entropy of entanglement and Schmidt spectra of a few two-spin states.

use spinscat::entanglement::certify_max_entangled;
use spinscat::{entropy_of_entanglement, schmidt_spectrum, Basis, Complex64, HalfInt, StateVector};

fn report(name: &str, state: &StateVector) -> spinscat::Result<()> {
    let spectrum = schmidt_spectrum(state)?;
    let cert = certify_max_entangled(state, 1e-10)?;
    println!(
        "{name:<24} S = {:.6}  schmidt = {:?}  maximal = {}",
        entropy_of_entanglement(state)?,
        spectrum.values.iter().map(|p| (p * 1e6).round() / 1e6).collect::<Vec<_>>(),
        cert.is_maximal
    );
    Ok(())
}

fn main() -> spinscat::Result<()> {
    let r = |x: f64| Complex64::new(x, 0.0);
    let half = HalfInt::HALF;
    let s = std::f64::consts::FRAC_1_SQRT_2;

    report("|½,½⟩", &StateVector::basis_state(half, half, half)?)?;
    report("singlet", &StateVector::new(half, Basis::Product, vec![r(0.0), r(s), r(-s), r(0.0)])?)?;
    let uneven = vec![r(0.75f64.sqrt()), r(0.0), r(0.0), r(0.5)];
    report("√¾|½,½⟩ + ½|-½,-½⟩", &StateVector::new(half, Basis::Product, uneven)?)?;

    // spin 1: the s = 0 state is maximally entangled, with base-3 entropy 1
    let third = 1.0 / 3f64.sqrt();
    let mut amps = vec![r(0.0); 9];
    amps[2] = r(third);
    amps[4] = r(-third);
    amps[6] = r(third);
    report("spin-1 singlet", &StateVector::new(HalfInt::ONE, Basis::Product, amps)?)?;
    Ok(())
}
