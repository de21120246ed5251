//! Compares the closed-form trigonometric systems printed in the literature
//! with the |g_χ|² computed from Clebsch-Gordan coefficients.

use spinscat::solver::verify_published_solutions;
use spinscat::HalfInt;

fn main() -> spinscat::Result<()> {
    for twice in 1..=3 {
        let report = verify_published_solutions(HalfInt::from_twice(twice))?;
        println!(
            "σ = {}: {} published solutions, worst residual {:.1e}, printed right-hand sides sum to 1 within {:.1e}",
            report.sigma,
            report.published_points,
            report.max_published_residual(),
            report.printed_sum_deviation
        );
        for eq in &report.equations {
            print!("  eq {} (χ = {:>4}): max deviation {:.1e}", eq.index, eq.chi, eq.max_deviation);
            if eq.agrees {
                println!();
            } else {
                let fixes: Vec<String> =
                    eq.corrections.iter().map(|c| format!("{}: {} -> {}", c.term, c.printed, c.reproducing)).collect();
                println!("  DISAGREES; least-squares fit needs {}", fixes.join(", "));
            }
        }
    }
    Ok(())
}
