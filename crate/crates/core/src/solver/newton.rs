use nalgebra::{DMatrix, DVector};

use super::{ResidualSystem, SolverConfig};

/// Step halvings tried before giving up on a direction.
const MAX_BACKTRACKS: usize = 30;

/// Damped Gauss-Newton (Levenberg-Marquardt) from `x0` on the first `2σ`
/// residual components; the last one is minus the sum of the others.
///
/// The damping is `μ = ‖r‖₂`, which keeps convergence quadratic near
/// isolated roots and stops the step from running along a solution family
/// when the Jacobian is nearly rank deficient. Steps are halved until the
/// residual max-norm decreases. Returns `None` if the tolerance is not
/// reached.
pub fn refine(system: &ResidualSystem, x0: &[f64], config: &SolverConfig) -> Option<Vec<f64>> {
    let mut x = x0.to_vec();
    let mut r = system.evaluate(&x);
    let mut best = r.max_norm();

    for _ in 0..config.max_newton_iters {
        if best <= config.refine_tol {
            return Some(x);
        }
        let n = system.unknowns();
        let step = damped_step(&system.jacobian(&x).rows(0, n).into_owned(), &r.values[..n])?;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(xi, si)| xi + t * si).collect();
            let trial_r = system.evaluate(&trial);
            let norm = trial_r.max_norm();
            if norm < best {
                x = trial;
                r = trial_r;
                best = norm;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (best <= config.refine_tol).then_some(x)
}

/// Solves `(JᵀJ + μI) p = -Jᵀr` with `μ = ‖r‖₂`.
fn damped_step(jac: &DMatrix<f64>, r: &[f64]) -> Option<DVector<f64>> {
    let r = DVector::from_column_slice(r);
    let mu = r.norm();
    let jt = jac.transpose();
    let mut normal = &jt * jac;
    for k in 0..normal.nrows() {
        normal[(k, k)] += mu;
    }
    normal.cholesky().map(|c| c.solve(&(-(jt * r))))
}

/// Number of singular values of the central-difference Jacobian below
/// `rank_tol`.
pub fn jacobian_nullity(system: &ResidualSystem, x: &[f64], step: f64, rank_tol: f64) -> usize {
    let jac = central_difference_jacobian(system, x, step);
    jac.singular_values().iter().filter(|&&s| s < rank_tol).count()
}

pub(crate) fn central_difference_jacobian(system: &ResidualSystem, x: &[f64], step: f64) -> DMatrix<f64> {
    let n = x.len();
    let rows = system.kernel().dim();
    let mut jac = DMatrix::zeros(rows, n);
    let mut probe = x.to_vec();
    for k in 0..n {
        probe[k] = x[k] + step;
        let plus = system.evaluate(&probe).values;
        probe[k] = x[k] - step;
        let minus = system.evaluate(&probe).values;
        probe[k] = x[k];
        for row in 0..rows {
            jac[(row, k)] = (plus[row] - minus[row]) / (2.0 * step);
        }
    }
    jac
}
