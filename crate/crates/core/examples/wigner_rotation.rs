//! Wigner rotation matrices: unitarity, the spin-½ sign under a full turn,
//! and invariance of the singlet.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use spinscat::{wigner_matrix, Complex64, CouplingTable, Euler, HalfInt};

fn main() -> spinscat::Result<()> {
    let euler = Euler::new(0.3, 1.1, -0.7);
    for twice in 1..=4 {
        let sigma = HalfInt::from_twice(twice);
        let d = wigner_matrix(sigma, euler).matrix;
        let n = d.nrows();
        let unitarity = (d.adjoint() * &d - DMatrix::identity(n, n)).camax();
        let full_turn = wigner_matrix(sigma, Euler::new(0.0, 2.0 * PI, 0.0)).matrix[(0, 0)].re;
        println!("σ = {sigma:>3}: |D†D - 1| = {unitarity:.1e}, D(2π)₀₀ = {full_turn:+.0}");
    }

    // the total-spin-zero state is invariant under D ⊗ D
    let sigma = HalfInt::ONE;
    let table = CouplingTable::new(sigma)?;
    let col = table.coupled_index(HalfInt::ZERO, HalfInt::ZERO).expect("s = 0 exists");
    let singlet = table.matrix().column(col).map(|x| Complex64::new(x, 0.0));
    let d = wigner_matrix(sigma, euler).matrix;
    let rotated = d.kronecker(&d) * &singlet;
    println!("spin-1 singlet after rotation: |Δ| = {:.1e}", (rotated - singlet).norm());
    Ok(())
}
