use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::HalfInt;
use crate::error::{domain, Result};

/// Arguments of `⟨J M | j1 m1, j2 m2⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CgcQuery {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    pub j: HalfInt,
    pub m: HalfInt,
}

impl CgcQuery {
    pub fn new(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Self {
        Self { j1, m1, j2, m2, j, m }
    }

    fn validate(&self) -> Result<()> {
        for (name, j, m) in [("j1", self.j1, self.m1), ("j2", self.j2, self.m2), ("J", self.j, self.m)] {
            if j < HalfInt::ZERO {
                return Err(domain(format!("{name} = {j} is negative")));
            }
            if !j.same_parity(m) {
                return Err(domain(format!("{name} = {j} and its projection {m} differ in parity")));
            }
            if m.abs() > j {
                return Err(domain(format!("|m| = {} exceeds {name} = {j}", m.abs())));
            }
        }
        if !(self.j1 + self.j2).same_parity(self.j) {
            return Err(domain(format!("j1 + j2 + J = {} is not an integer", self.j1 + self.j2 + self.j)));
        }
        Ok(())
    }

    /// Largest factorial argument the Racah sum needs.
    fn max_factorial(&self) -> usize {
        (self.j1 + self.j2 + self.j).int_diff(HalfInt::ZERO) as usize + 1
    }
}

/// `n!` for `0 ≤ n ≤ N`, exact.
#[derive(Clone, Debug)]
pub(crate) struct Factorials(Vec<BigInt>);

impl Factorials {
    pub(crate) fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigInt::one());
        for k in 1..=n {
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        Factorials(table)
    }

    pub(crate) fn len(&self) -> usize {
        self.0.len()
    }

    fn get(&self, n: i64) -> &BigInt {
        &self.0[usize::try_from(n).expect("negative factorial argument")]
    }
}

/// A coefficient of the form `sign · √square` with `square` an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtRational {
    pub sign: i8,
    pub square: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        Self { sign: 0, square: BigRational::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let magnitude = self.square.to_f64().expect("finite rational").sqrt();
        f64::from(self.sign) * magnitude
    }
}

/// Clebsch-Gordan coefficient `⟨J M | j1 m1, j2 m2⟩` (Condon-Shortley phase).
///
/// Returns exact zero when `M ≠ m1 + m2` or the triangle rule fails.
pub fn cgc(q: CgcQuery) -> Result<f64> {
    cgc_exact(q).map(|c| c.to_f64())
}

/// Exact form of [`cgc`].
pub fn cgc_exact(q: CgcQuery) -> Result<SqrtRational> {
    q.validate()?;
    let facts = Factorials::up_to(q.max_factorial());
    Ok(racah(&facts, &q))
}

/// Racah's closed-form sum. Expects a validated query and a factorial table
/// covering `j1 + j2 + J + 1`.
pub(crate) fn racah(facts: &Factorials, q: &CgcQuery) -> SqrtRational {
    if q.m != q.m1 + q.m2 || q.j > q.j1 + q.j2 || q.j < (q.j1 - q.j2).abs() {
        return SqrtRational::zero();
    }
    debug_assert!(facts.len() > q.max_factorial());
    let z = HalfInt::ZERO;
    let f = |h: HalfInt| facts.get(h.int_diff(z));

    // (2J+1) (J+j1-j2)! (J-j1+j2)! (j1+j2-J)! / (j1+j2+J+1)!
    let mut prefactor = BigRational::new(
        BigInt::from(q.j.twice() + 1) * f(q.j + q.j1 - q.j2) * f(q.j - q.j1 + q.j2) * f(q.j1 + q.j2 - q.j),
        facts.get((q.j1 + q.j2 + q.j).int_diff(z) + 1).clone(),
    );
    prefactor *= BigRational::from_integer(
        f(q.j + q.m) * f(q.j - q.m) * f(q.j1 - q.m1) * f(q.j1 + q.m1) * f(q.j2 - q.m2) * f(q.j2 + q.m2),
    );

    // k ranges over all values keeping every factorial argument non-negative.
    let a = (q.j1 + q.j2 - q.j).int_diff(z);
    let b = (q.j1 - q.m1).int_diff(z);
    let c = (q.j2 + q.m2).int_diff(z);
    let d = (q.j - q.j2 + q.m1).int_diff(z);
    let e = (q.j - q.j1 - q.m2).int_diff(z);
    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom =
            facts.get(k) * facts.get(a - k) * facts.get(b - k) * facts.get(c - k) * facts.get(d + k) * facts.get(e + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return SqrtRational::zero();
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    SqrtRational { sign, square: prefactor * &sum * &sum }
}
