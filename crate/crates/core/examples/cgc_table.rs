//! Clebsch-Gordan table for two spins, exact and in floating point.
//!
//! ```text
//! cargo run --example cgc_table -- 3/2
//! ```

use spinscat::angular_momentum::{cgc_exact, coupling_table};
use spinscat::{CgcQuery, HalfInt};

fn main() -> spinscat::Result<()> {
    let sigma: HalfInt = std::env::args().nth(1).as_deref().unwrap_or("1").parse()?;
    let table = coupling_table(sigma)?;
    println!("{:>5} {:>5} {:>5} {:>5}  {:>14}  exact square", "s", "m", "mu1", "mu2", "value");
    for &(s, m) in table.coupled_labels() {
        for (mu1, mu2) in table.product_labels() {
            if mu1 + mu2 != m {
                continue;
            }
            let exact = cgc_exact(CgcQuery::new(sigma, mu1, sigma, mu2, s, m))?;
            if exact.sign == 0 {
                continue;
            }
            let sign = if exact.sign < 0 { "-" } else { "+" };
            println!("{s:>5} {m:>5} {mu1:>5} {mu2:>5}  {:>14.10}  {sign}sqrt({})", exact.to_f64(), exact.square);
        }
    }
    Ok(())
}
