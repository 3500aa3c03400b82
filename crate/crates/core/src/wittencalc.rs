//! ψ/κ intersection numbers on moduli of stable curves.
//!
//! Correlators `⟨τ_{a₁}⋯τ_{aₙ}⟩_g = ∫_{M̄_{g,n}} ψ₁^{a₁}⋯ψₙ^{aₙ}` are computed by the
//! DVV (Virasoro) recursion from `⟨τ₀³⟩₀ = 1`. The recursion always removes
//! the largest exponent when it is at least 2; the string and dilaton
//! equations are used only when every exponent is 0 or 1. String and dilaton
//! checks on correlators with a large exponent therefore compare two genuinely
//! different evaluation paths.
//!
//! A single `κ_b` is integrated by lifting it to one extra marking with
//! `ψ^{b+1}` (κ classes as pushforwards of ψ powers along the forgetful map).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{automorphism_count, make_vine};
use crate::rational::{factorial, q, qi, Q};

/// `⟨τ_{a₁}⋯τ_{aₙ}⟩_g`; the exponent order is irrelevant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correlator {
    pub genus: u32,
    pub exponents: Vec<u32>,
}

impl Correlator {
    pub fn new(genus: u32, exponents: Vec<u32>) -> Self {
        Correlator { genus, exponents }
    }

    /// `Σ aᵢ = 3g − 3 + n`.
    pub fn satisfies_dimension(&self) -> bool {
        let sum: i64 = self.exponents.iter().map(|&a| a as i64).sum();
        sum == 3 * self.genus as i64 - 3 + self.exponents.len() as i64
    }
}

type Key = (u32, Vec<u32>);

/// Memoised DVV evaluator. The memo table is behind a lock, so one engine
/// can serve concurrent callers; values do not depend on evaluation order.
#[derive(Debug, Default)]
pub struct WittenEngine {
    memo: RwLock<HashMap<Key, Q>>,
}

/// `(2m + 1)!!` for `m ≥ −1`, i.e. `(n)!!` for odd `n = 2m + 1 ≥ −1`.
fn odd_double_factorial(n: i64) -> BigInt {
    debug_assert!(n >= -1 && n % 2 != 0);
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

impl WittenEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine shared by the CLI and the acceptance suite.
    pub fn global() -> &'static WittenEngine {
        static ENGINE: OnceLock<WittenEngine> = OnceLock::new();
        ENGINE.get_or_init(WittenEngine::new)
    }

    /// Number of memoised correlators.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Exact value of a correlator; 0 when the dimension constraint fails.
    pub fn correlator(&self, c: &Correlator) -> Result<Q> {
        let n = c.exponents.len();
        if n == 0 {
            return Err(Error::InvalidInput("a correlator needs at least one insertion".into()));
        }
        if c.genus == 0 && n < 3 {
            return Err(Error::InvalidInput(format!("genus 0 needs at least 3 insertions, got {n}")));
        }
        let mut exps = c.exponents.clone();
        exps.sort_unstable();
        Ok(self.value(c.genus, &exps))
    }

    /// Total version of [`WittenEngine::correlator`] on sorted exponents:
    /// unstable or dimensionally wrong correlators are 0.
    fn value(&self, g: u32, exps: &[u32]) -> Q {
        let n = exps.len() as i64;
        if 2 * g as i64 - 2 + n <= 0 {
            return Q::zero();
        }
        let sum: i64 = exps.iter().map(|&a| a as i64).sum();
        if sum != 3 * g as i64 - 3 + n {
            return Q::zero();
        }
        if g == 0 && exps == [0, 0, 0] {
            return Q::one();
        }
        let key = (g, exps.to_vec());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = self.evaluate(g, exps);
        self.memo.write().expect("memo lock").insert(key, v.clone());
        v
    }

    fn value_unsorted(&self, g: u32, mut exps: Vec<u32>) -> Q {
        exps.sort_unstable();
        self.value(g, &exps)
    }

    fn evaluate(&self, g: u32, exps: &[u32]) -> Q {
        // Base cases are handled by `value`, so removing one insertion always
        // leaves a stable correlator here: prefer the cheap string and
        // dilaton equations and fall back to DVV on the largest exponent.
        if exps[0] == 0 {
            let rest = &exps[1..];
            let mut total = Q::zero();
            for j in 0..rest.len() {
                if rest[j] > 0 && (j == 0 || rest[j] != rest[j - 1]) {
                    let mult = rest.iter().filter(|&&a| a == rest[j]).count() as i64;
                    let mut lowered = rest.to_vec();
                    lowered[j] -= 1;
                    total += qi(mult) * self.value_unsorted(g, lowered);
                }
            }
            return total;
        }
        if exps[0] == 1 {
            let rest = &exps[1..];
            if rest.is_empty() {
                debug_assert_eq!(g, 1);
                return self.tau1_genus1();
            }
            return qi(2 * g as i64 - 2 + rest.len() as i64) * self.value(g, rest);
        }
        let top = *exps.last().expect("nonempty");
        let mut rest = exps.to_vec();
        rest.pop();
        self.dvv(g, top - 1, &rest)
    }

    /// DVV with `τ_{k+1}` removed, `k ≥ 1`, remaining insertions `rest`.
    fn dvv(&self, g: u32, k: u32, rest: &[u32]) -> Q {
        let k = k as i64;
        let mut total = Q::zero();
        for j in 0..rest.len() {
            let d = rest[j] as i64;
            let coeff = Q::new(odd_double_factorial(2 * k + 2 * d + 1), odd_double_factorial(2 * d - 1));
            let mut raised = rest.to_vec();
            raised[j] += k as u32;
            total += coeff * self.value_unsorted(g, raised);
        }
        let half = q(1, 2);
        for r in 0..k {
            let s = k - 1 - r;
            let coeff = Q::from_integer(odd_double_factorial(2 * r + 1) * odd_double_factorial(2 * s + 1));
            if g >= 1 {
                let mut more = rest.to_vec();
                more.push(r as u32);
                more.push(s as u32);
                total += &half * &coeff * self.value_unsorted(g - 1, more);
            }
            let n = rest.len();
            let mut split = Q::zero();
            for g1 in 0..=g {
                for mask in 0u64..(1u64 << n) {
                    let mut left = vec![r as u32];
                    let mut right = vec![s as u32];
                    for (i, &a) in rest.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            left.push(a);
                        } else {
                            right.push(a);
                        }
                    }
                    let lv = self.value_unsorted(g1, left);
                    if lv.is_zero() {
                        continue;
                    }
                    split += lv * self.value_unsorted(g - g1, right);
                }
            }
            total += &half * &coeff * split;
        }
        total / Q::from_integer(odd_double_factorial(2 * k + 3))
    }

    /// `⟨τ₁⟩₁`, the one value the dilaton equation cannot reach. Applying DVV
    /// to `⟨τ₂τ₀⟩₁` gives `(3x + ½⟨τ₀³⟩₀)/15` while the string equation gives
    /// `x`; solving the linear equation yields `x`.
    fn tau1_genus1(&self) -> Q {
        let a = qi(3); // (2k + 2d + 1)!!/(2d − 1)!! with k = 1, d = 0
        let b = q(1, 2) * self.value(0, &[0, 0, 0]);
        let c = qi(15); // (2k + 3)!!
        b / (c - a)
    }
}

/// Convenience wrapper on the global engine.
pub fn witten_correlator(c: &Correlator) -> Result<Q> {
    WittenEngine::global().correlator(c)
}

/// `1/(24^g g!)`, the closed form of `⟨τ_{3g−2}⟩_g`.
pub fn one_point_closed_form(g: u32) -> Q {
    Q::one() / (Q::from_integer(BigInt::from(24).pow(g)) * factorial(g as u64))
}

/// `∫_{M̄_{g,n}} ψ₁^{a₁}⋯ψₙ^{aₙ} κ_b` (κ optional).
pub fn psi_kappa_integral(g: u32, n: usize, psi_exponents: &[u32], kappa_index: Option<u32>) -> Result<Q> {
    if psi_exponents.len() != n {
        return Err(Error::InvalidInput(format!("{} ψ exponents for n = {n}", psi_exponents.len())));
    }
    let degree: i64 = psi_exponents.iter().map(|&a| a as i64).sum::<i64>() + kappa_index.map_or(0, |b| b as i64);
    let dim = 3 * g as i64 - 3 + n as i64;
    if degree != dim {
        return Err(Error::DimensionMismatch(format!("degree {degree} but dim M̄_{{{g},{n}}} = {dim}")));
    }
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::InvalidInput(format!("M̄_{{{g},{n}}} is unstable")));
    }
    let mut exps = psi_exponents.to_vec();
    if let Some(b) = kappa_index {
        exps.push(b + 1);
    }
    witten_correlator(&Correlator::new(g, exps))
}

/// Pairing of `ψ₁^{3g−3−3i}` against `κ_{3j−1}` over the vine stratum `Γ_i`:
/// zero off the diagonal, and on it the product of the two vertex integrals.
/// With `divide_by_automorphisms`, the diagonal is divided by `|Aut(Γ_i)|`.
pub fn vine_pairing(g: u32, i: u32, j: u32, divide_by_automorphisms: bool) -> Result<Q> {
    for x in [i, j] {
        if x < 1 || x + 1 > g {
            return Err(Error::OutOfRange(format!("index {x} outside 1..={} for g = {g}", g.saturating_sub(1))));
        }
    }
    if i != j {
        return Ok(Q::zero());
    }
    let h = g - 1 - i;
    let at_v = psi_kappa_integral(h, 3, &[3 * h, 0, 0], None)?;
    let at_w = psi_kappa_integral(i, 2, &[0, 0], Some(3 * i - 1))?;
    let value = at_v * at_w;
    if divide_by_automorphisms {
        let aut = automorphism_count(&make_vine(g, i, 2)?)?;
        Ok(value / qi(aut as i64))
    } else {
        Ok(value)
    }
}

/// The `(g−1)×(g−1)` matrix of [`vine_pairing`] values.
pub fn pairing_matrix(g: u32, divide_by_automorphisms: bool) -> Result<Vec<Vec<Q>>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("pairing matrix needs g >= 2, got {g}")));
    }
    (1..g).map(|i| (1..g).map(|j| vine_pairing(g, i, j, divide_by_automorphisms)).collect()).collect()
}

/// Rank over ℚ by exact Gaussian elimination.
pub fn rank(matrix: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = matrix.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of [`pairing_matrix`]; `g − 1` certifies linear independence of the
/// vine classes.
pub fn pairing_matrix_rank(g: u32) -> Result<usize> {
    Ok(rank(&pairing_matrix(g, false)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corr(g: u32, e: &[u32]) -> Q {
        WittenEngine::new().correlator(&Correlator::new(g, e.to_vec())).unwrap()
    }

    #[test]
    fn base_and_low_genus_values() {
        assert_eq!(corr(0, &[0, 0, 0]), qi(1));
        assert_eq!(corr(1, &[1]), q(1, 24));
        assert_eq!(corr(2, &[4]), q(1, 1152));
        assert_eq!(corr(0, &[1, 0, 0, 0]), qi(1));
        assert_eq!(corr(1, &[1, 1]), q(1, 24));
        assert_eq!(corr(2, &[2, 3]), q(29, 5760));
    }

    #[test]
    fn dimension_and_stability_checks() {
        assert_eq!(corr(1, &[2]), Q::zero());
        let e = WittenEngine::new();
        assert!(matches!(e.correlator(&Correlator::new(0, vec![0, 0])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn kappa_integrals() {
        assert_eq!(psi_kappa_integral(1, 1, &[0], Some(1)).unwrap(), q(1, 24));
        assert_eq!(psi_kappa_integral(0, 3, &[0, 0, 0], None).unwrap(), qi(1));
        assert_eq!(psi_kappa_integral(2, 3, &[6, 0, 0], None).unwrap(), one_point_closed_form(2));
        assert!(matches!(psi_kappa_integral(1, 1, &[0], Some(2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(vine_pairing(2, 1, 1, false).unwrap(), q(1, 24));
        assert_eq!(vine_pairing(2, 1, 1, true).unwrap(), q(1, 48));
        assert_eq!(vine_pairing(5, 2, 3, false).unwrap(), Q::zero());
        assert_eq!(vine_pairing(3, 2, 2, false).unwrap(), q(1, 1152));
        assert_eq!(pairing_matrix_rank(4).unwrap(), 3);
        assert!(matches!(vine_pairing(3, 3, 3, false), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(rank(&m), 1);
    }
}
