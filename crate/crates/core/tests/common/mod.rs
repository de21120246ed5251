//! Independent reference implementations for the integration tests. Nothing
//! here goes through the Racah formula, the coupling table or the Wigner
//! sum formula used by the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinscat::{Complex64, Euler, HalfInt, PhaseShiftVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn spins_up_to(twice_max: i32) -> impl Iterator<Item = HalfInt> {
    (1..=twice_max).map(HalfInt::from_twice)
}

/// `m = j, j-1, …, -j` as twice-values.
fn twice_ms(twice_j: i32) -> Vec<i32> {
    (0..=twice_j).map(|k| twice_j - 2 * k).collect()
}

/// `J₋|j m⟩ = sqrt((j+m)(j-m+1)) |j m-1⟩` in the descending-m basis.
pub fn lowering(twice_j: i32) -> DMatrix<f64> {
    let d = (twice_j + 1) as usize;
    let j = twice_j as f64 / 2.0;
    DMatrix::from_fn(d, d, |row, col| {
        if row == col + 1 {
            let m = j - col as f64;
            ((j + m) * (j - m + 1.0)).sqrt()
        } else {
            0.0
        }
    })
}

/// `(J_x, J_y, J_z)` from the ladder operators.
pub fn spin_matrices(twice_j: i32) -> [DMatrix<Complex64>; 3] {
    let minus = lowering(twice_j).map(|x| c(x, 0.0));
    let plus = minus.transpose();
    let jx = (&plus + &minus) * c(0.5, 0.0);
    let jy = (&plus - &minus) * c(0.0, -0.5);
    let jz = DMatrix::from_diagonal(&DVector::from_iterator(
        minus.nrows(),
        twice_ms(twice_j).into_iter().map(|m| c(m as f64 / 2.0, 0.0)),
    ));
    [jx, jy, jz]
}

/// `exp(-iαJ_z) exp(-iβJ_y) exp(-iγJ_z)` by matrix exponentiation of the
/// generators.
pub fn rotation_by_generators(twice_j: i32, euler: Euler) -> DMatrix<Complex64> {
    let [_, jy, jz] = spin_matrices(twice_j);
    let exp = |m: &DMatrix<Complex64>, angle: f64| (m * c(0.0, -angle)).exp();
    exp(&jz, euler.alpha) * exp(&jy, euler.beta) * exp(&jz, euler.gamma)
}

/// The spin-½ SU(2) element with Euler angles `e`.
pub fn su2(e: Euler) -> DMatrix<Complex64> {
    rotation_by_generators(1, e)
}

/// Euler angles of an SU(2) matrix, chosen so that `su2(angles) = u`
/// exactly (not just up to sign).
pub fn su2_euler(u: &DMatrix<Complex64>) -> Euler {
    let beta = 2.0 * u[(1, 0)].norm().atan2(u[(0, 0)].norm());
    let (sum, diff) = if u[(0, 0)].norm() > 1e-12 && u[(1, 0)].norm() > 1e-12 {
        (-2.0 * u[(0, 0)].arg(), 2.0 * u[(1, 0)].arg())
    } else if u[(0, 0)].norm() > 1e-12 {
        (-2.0 * u[(0, 0)].arg(), 0.0)
    } else {
        (0.0, 2.0 * u[(1, 0)].arg())
    };
    let mut e = Euler::new((sum + diff) / 2.0, beta, (sum - diff) / 2.0);
    if (su2(e) - u).norm() > 1e-9 {
        e.alpha += 2.0 * PI;
    }
    e
}

/// Clebsch-Gordan coefficients `⟨J M | m₁ m₂⟩` for all `J, M` by building
/// the coupled states with `J₋ = J₁₋ + J₂₋` from the top state and
/// Gram-Schmidt for each lower `J`, with the Condon-Shortley phase
/// `⟨J J | j₁ j₁, j₂ J-j₁⟩ > 0`.
///
/// Returns `(J twice, M twice, vector over the product basis (m₁ desc, m₂ desc))`.
pub fn cg_by_lowering(twice_j1: i32, twice_j2: i32) -> Vec<(i32, i32, DVector<f64>)> {
    let (d1, d2) = ((twice_j1 + 1) as usize, (twice_j2 + 1) as usize);
    let eye1 = DMatrix::<f64>::identity(d1, d1);
    let eye2 = DMatrix::<f64>::identity(d2, d2);
    let total_lowering = lowering(twice_j1).kronecker(&eye2) + eye1.kronecker(&lowering(twice_j2));
    let product_ms: Vec<(i32, i32)> =
        twice_ms(twice_j1).into_iter().flat_map(|a| twice_ms(twice_j2).into_iter().map(move |b| (a, b))).collect();

    let mut states: Vec<(i32, i32, DVector<f64>)> = Vec::new();
    let mut twice_big = twice_j1 + twice_j2;
    while twice_big >= (twice_j1 - twice_j2).abs() {
        // top state of this multiplet: orthogonal to every higher multiplet's M = J state
        let candidates: Vec<usize> =
            (0..product_ms.len()).filter(|&k| product_ms[k].0 + product_ms[k].1 == twice_big).collect();
        let mut top = DVector::<f64>::zeros(product_ms.len());
        'search: for &k in &candidates {
            let mut v = DVector::<f64>::zeros(product_ms.len());
            v[k] = 1.0;
            for (_, m, w) in states.iter().filter(|(_, m, _)| *m == twice_big) {
                let _ = m;
                let overlap = w.dot(&v);
                v -= w * overlap;
            }
            if v.norm() > 1e-8 {
                top = v.normalize();
                break 'search;
            }
        }
        let lead = product_ms.iter().position(|&(a, b)| a == twice_j1 && a + b == twice_big).expect("stretched entry");
        if top[lead] < 0.0 {
            top = -top;
        }
        let mut current = top;
        let mut m = twice_big;
        let j = twice_big as f64 / 2.0;
        loop {
            states.push((twice_big, m, current.clone()));
            if m == -twice_big {
                break;
            }
            let mf = m as f64 / 2.0;
            current = &total_lowering * &current / ((j + mf) * (j - mf + 1.0)).sqrt();
            m -= 2;
        }
        twice_big -= 2;
    }
    states
}

pub fn product_index(twice_j1: i32, twice_j2: i32, twice_m1: i32, twice_m2: i32) -> usize {
    let i1 = ((twice_j1 - twice_m1) / 2) as usize;
    let i2 = ((twice_j2 - twice_m2) / 2) as usize;
    i1 * (twice_j2 + 1) as usize + i2
}

pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.1 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn random_euler(rng: &mut impl Rng) -> Euler {
    Euler::new(rng.random_range(-PI..PI), rng.random_range(0.0..PI), rng.random_range(-PI..PI))
}

pub fn random_phases(rng: &mut impl Rng, sigma: HalfInt) -> PhaseShiftVector {
    let free: Vec<f64> = (0..sigma.twice()).map(|_| rng.random_range(-PI..PI)).collect();
    PhaseShiftVector::from_free(sigma, &free).unwrap()
}

/// Random `d × d` unitary from the QR decomposition of a complex Gaussian-ish
/// matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(d, d, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    m.qr().q()
}

/// `v ⊗ w` with the first factor's index slow.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Binary entropy-like `-Σ p log_d p` straight from a probability list.
pub fn shannon(p: &[f64], base: f64) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln() / base.ln()).sum()
}
