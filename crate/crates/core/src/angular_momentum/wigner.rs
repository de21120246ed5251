use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HalfInt;

/// ZYZ Euler angles in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Euler {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Euler {
    pub const IDENTITY: Euler = Euler { alpha: 0.0, beta: 0.0, gamma: 0.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }
}

/// `D^σ(α, β, γ) = e^{-iαΣ₃} d^σ(β) e^{-iγΣ₃}` with rows and columns indexed
/// by `m = σ, …, -σ`.
///
/// Euler angles parametrize SU(2) when `α` runs over `[0, 4π)`; for
/// half-integer `σ` the angles `(α + 2π, β, γ)` give `-D`. Entropies are
/// blind to that sign.
#[derive(Clone, Debug)]
pub struct WignerRotation {
    pub sigma: HalfInt,
    pub euler: Euler,
    pub matrix: DMatrix<Complex64>,
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner small-d matrix `d^σ_{m'm}(β)` (Condon-Shortley, rotation about y).
pub fn wigner_small_d(sigma: HalfInt, beta: f64) -> DMatrix<f64> {
    let dim = sigma.multiplicity();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let z = HalfInt::ZERO;
    DMatrix::from_fn(dim, dim, |row, col| {
        let mp = sigma - HalfInt::from_int(row as i32);
        let m = sigma - HalfInt::from_int(col as i32);
        let (jpmp, jmmp) = ((sigma + mp).int_diff(z), (sigma - mp).int_diff(z));
        let (jpm, jmm) = ((sigma + m).int_diff(z), (sigma - m).int_diff(z));
        let m_minus_mp = (m - mp).int_diff(z);
        let norm = (factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm)).sqrt();
        let two_j = i64::from(sigma.twice());

        let k_min = 0.max(m_minus_mp);
        let k_max = jpm.min(jmmp);
        (k_min..=k_max)
            .map(|k| {
                let sign = if (k - m_minus_mp) % 2 == 0 { 1.0 } else { -1.0 };
                let denom = factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k - m_minus_mp);
                let cos_pow = (two_j - 2 * k + m_minus_mp) as i32;
                let sin_pow = (2 * k - m_minus_mp) as i32;
                sign * norm / denom * c.powi(cos_pow) * s.powi(sin_pow)
            })
            .sum()
    })
}

pub fn wigner_matrix(sigma: HalfInt, euler: Euler) -> WignerRotation {
    let small = wigner_small_d(sigma, euler.beta);
    let phase = |angle: f64, m: HalfInt| Complex64::from_polar(1.0, -angle * m.value());
    let dim = sigma.multiplicity();
    let matrix = DMatrix::from_fn(dim, dim, |row, col| {
        let mp = sigma - HalfInt::from_int(row as i32);
        let m = sigma - HalfInt::from_int(col as i32);
        phase(euler.alpha, mp) * small[(row, col)] * phase(euler.gamma, m)
    });
    WignerRotation { sigma, euler, matrix }
}
