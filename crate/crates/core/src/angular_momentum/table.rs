use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use super::{racah, CgcQuery, Factorials, HalfInt};
use crate::error::{domain, Result};

/// Real orthogonal change of basis between `|μ₁, μ₂⟩` (rows) and `|s m⟩`
/// (columns) for two spins `σ`. Entry `((μ₁, μ₂), (s, m))` is `⟨s m | μ₁, μ₂⟩`.
///
/// Product-basis coordinates map to coupled coordinates through the
/// transpose: `ψ_coupled = Mᵀ ψ_product`.
#[derive(Clone, Debug)]
pub struct CouplingTable {
    sigma: HalfInt,
    dim: usize,
    matrix: DMatrix<f64>,
    coupled: Vec<(HalfInt, HalfInt)>,
}

impl CouplingTable {
    pub fn new(sigma: HalfInt) -> Result<Self> {
        if sigma < HalfInt::ZERO {
            return Err(domain(format!("spin {sigma} is negative")));
        }
        let dim = sigma.multiplicity();
        let coupled: Vec<(HalfInt, HalfInt)> = (0..=sigma.twice())
            .rev()
            .map(HalfInt::from_int)
            .flat_map(|s| s.magnetic_range().map(move |m| (s, m)))
            .collect();
        debug_assert_eq!(coupled.len(), dim * dim);

        let facts = Factorials::up_to(2 * sigma.twice() as usize + 1);
        let mut matrix = DMatrix::zeros(dim * dim, dim * dim);
        for (i1, mu1) in sigma.magnetic_range().enumerate() {
            for (i2, mu2) in sigma.magnetic_range().enumerate() {
                for (col, &(s, m)) in coupled.iter().enumerate() {
                    if m != mu1 + mu2 {
                        continue;
                    }
                    let q = CgcQuery::new(sigma, mu1, sigma, mu2, s, m);
                    matrix[(i1 * dim + i2, col)] = racah(&facts, &q).to_f64();
                }
            }
        }
        Ok(Self { sigma, dim, matrix, coupled })
    }

    pub fn sigma(&self) -> HalfInt {
        self.sigma
    }

    /// Single-spin dimension `d = 2σ + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `(s, m)` label of every column, in order.
    pub fn coupled_labels(&self) -> &[(HalfInt, HalfInt)] {
        &self.coupled
    }

    /// `(μ₁, μ₂)` label of every row, in order.
    pub fn product_labels(&self) -> Vec<(HalfInt, HalfInt)> {
        let sigma = self.sigma;
        sigma.magnetic_range().flat_map(|a| sigma.magnetic_range().map(move |b| (a, b))).collect()
    }

    /// Position of `μ` in `σ, σ-1, …, -σ`.
    pub fn magnetic_index(&self, mu: HalfInt) -> Option<usize> {
        if mu.abs() > self.sigma || !mu.same_parity(self.sigma) {
            return None;
        }
        Some(self.sigma.int_diff(mu) as usize)
    }

    pub fn product_index(&self, mu1: HalfInt, mu2: HalfInt) -> Option<usize> {
        Some(self.magnetic_index(mu1)? * self.dim + self.magnetic_index(mu2)?)
    }

    pub fn coupled_index(&self, s: HalfInt, m: HalfInt) -> Option<usize> {
        if !s.is_integer()
            || s < HalfInt::ZERO
            || s.twice() > 2 * self.sigma.twice()
            || m.abs() > s
            || !m.same_parity(s)
        {
            return None;
        }
        let s_max = self.sigma.twice() as usize;
        let s = (s.twice() / 2) as usize;
        // columns of every block s' > s come first
        let offset: usize = (s + 1..=s_max).map(|k| 2 * k + 1).sum();
        Some(offset + HalfInt::from_int(s as i32).int_diff(m) as usize)
    }

    /// `⟨s m | μ₁, μ₂⟩`, zero for labels outside the table.
    pub fn coefficient(&self, s: HalfInt, m: HalfInt, mu1: HalfInt, mu2: HalfInt) -> f64 {
        match (self.product_index(mu1, mu2), self.coupled_index(s, m)) {
            (Some(r), Some(c)) => self.matrix[(r, c)],
            _ => 0.0,
        }
    }

    /// Total spin `s` of each column, in column order.
    pub fn column_spins(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.coupled.iter().map(|&(s, _)| s)
    }
}

/// Shared, lazily built coupling table for spin `σ`.
pub fn coupling_table(sigma: HalfInt) -> Result<Arc<CouplingTable>> {
    static CACHE: OnceLock<Mutex<HashMap<HalfInt, Arc<CouplingTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(table) = cache.lock().expect("coupling cache poisoned").get(&sigma) {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(CouplingTable::new(sigma)?);
    let mut guard = cache.lock().expect("coupling cache poisoned");
    Ok(Arc::clone(guard.entry(sigma).or_insert(table)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn sigma_zero_is_identity() {
        let t = CouplingTable::new(HalfInt::ZERO).unwrap();
        assert_eq!(t.matrix(), &DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn spin_half_singlet_column() {
        let t = CouplingTable::new(HalfInt::HALF).unwrap();
        let col = t.coupled_index(h(0), h(0)).unwrap();
        assert_eq!(col, 3);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let up_down = t.product_index(h(1), h(-1)).unwrap();
        let down_up = t.product_index(h(-1), h(1)).unwrap();
        assert!((t.matrix()[(up_down, col)] - r).abs() < 1e-15);
        assert!((t.matrix()[(down_up, col)] + r).abs() < 1e-15);
        assert_eq!(t.matrix()[(0, col)], 0.0);
        assert_eq!(t.matrix()[(3, col)], 0.0);
    }

    #[test]
    fn orthogonal_and_selective() {
        for twice in 0..=4 {
            let t = CouplingTable::new(h(twice)).unwrap();
            let m = t.matrix();
            let gram = m.transpose() * m;
            let n = gram.nrows();
            assert!((gram - DMatrix::<f64>::identity(n, n)).camax() < 1e-12, "sigma {twice}/2");
            let rows = t.product_labels();
            for (r, (mu1, mu2)) in rows.iter().enumerate() {
                for (c, (_, mm)) in t.coupled_labels().iter().enumerate() {
                    if *mm != *mu1 + *mu2 {
                        assert_eq!(m[(r, c)], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn index_maps_agree_with_labels() {
        let t = CouplingTable::new(h(3)).unwrap();
        for (c, &(s, m)) in t.coupled_labels().iter().enumerate() {
            assert_eq!(t.coupled_index(s, m), Some(c));
        }
        for (r, (a, b)) in t.product_labels().into_iter().enumerate() {
            assert_eq!(t.product_index(a, b), Some(r));
        }
        assert_eq!(t.coupled_index(h(8), h(0)), None);
        assert_eq!(t.product_index(h(5), h(1)), None);
    }

    #[test]
    fn shared_tables_are_reused() {
        let a = coupling_table(h(2)).unwrap();
        let b = coupling_table(h(2)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(coupling_table(h(-1)).is_err());
    }
}
