use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::bipartite::BipartiteGraph;
use crate::scalar::{compensated_sum, ln_factorial, ExactCount, Real};

/// Largest side accepted by [`exact_matching_count`].
pub const PERMANENT_LIMIT: usize = 14;

/// Number of perfect matchings of `b`, the permanent of its biadjacency
/// matrix, by Ryser's formula with subsets visited in Gray-code order.
pub fn exact_matching_count<C: ExactCount>(b: &BipartiteGraph) -> Result<C, OracleError> {
    let n = b.left_size();
    if n != b.right_size() {
        return Err(OracleError::InvalidInput(format!("unequal classes {} and {}", n, b.right_size())));
    }
    if n > PERMANENT_LIMIT {
        return Err(OracleError::TooLarge { n, limit: PERMANENT_LIMIT });
    }
    if n == 0 {
        return Ok(C::one());
    }
    let cols: Vec<Vec<usize>> = (0..n).map(|j| b.right_neighbors(j).collect()).collect();
    let mut row_sums = vec![0i64; n];
    let mut total = C::zero();
    for k in 1u32..(1u32 << n) {
        let gray = k ^ (k >> 1);
        let j = k.trailing_zeros() as usize;
        let delta = if gray & (1 << j) != 0 { 1 } else { -1 };
        for &i in &cols[j] {
            row_sums[i] += delta;
        }
        let mut prod = C::one();
        for &s in &row_sums {
            if s == 0 {
                prod = C::zero();
                break;
            }
            prod = prod * C::from_i64(s).expect("row sums fit every count type");
        }
        if (n - gray.count_ones() as usize) % 2 == 1 {
            total = total - prod;
        } else {
            total = total + prod;
        }
    }
    Ok(total)
}

/// Permanent by scanning all `n!` permutations; a cross-check for small `n`.
pub fn permanent_by_permutations(b: &BipartiteGraph) -> u64 {
    fn rec(b: &BipartiteGraph, row: usize, used: &mut [bool]) -> u64 {
        if row == used.len() {
            return 1;
        }
        let mut count = 0;
        for j in b.left_neighbors(row).collect::<Vec<_>>() {
            if j < used.len() && !used[j] {
                used[j] = true;
                count += rec(b, row + 1, used);
                used[j] = false;
            }
        }
        count
    }
    if b.left_size() != b.right_size() {
        return 0;
    }
    rec(b, 0, &mut vec![false; b.right_size()])
}

/// Brégman's bound `∏ (d_k!)^{1/d_k}`, evaluated in log-space. Any zero
/// degree gives 0.
pub fn bregman_bound<F: Real>(degrees: &[usize]) -> F {
    if degrees.contains(&0) {
        return F::zero();
    }
    compensated_sum(degrees.iter().map(|&d| ln_factorial::<F>(d) / F::from_usize_lossy(d))).exp()
}

/// Van der Waerden's bound `(ρ/n)^n n!` for a `ρ`-regular `n + n` graph.
pub fn vdw_lower_bound<F: Real>(rho: usize, n: usize) -> Result<F, OracleError> {
    if rho == 0 || rho > n {
        return Err(OracleError::InvalidInput(format!("need 1 <= rho <= n, got rho = {rho}, n = {n}")));
    }
    let nf = F::from_usize_lossy(n);
    let ratio = (F::from_usize_lossy(rho) / nf).ln();
    Ok((nf * ratio + ln_factorial::<F>(n)).exp())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingCountBounds {
    /// Present when the side is at most [`PERMANENT_LIMIT`].
    pub exact: Option<u128>,
    pub bregman_upper: f64,
    /// Present when the graph is regular.
    pub vdw_lower: Option<f64>,
    /// Left degrees.
    pub degrees: Vec<usize>,
    pub rho: Option<usize>,
}

impl MatchingCountBounds {
    /// `vdw_lower ≤ exact ≤ bregman_upper` up to relative tolerance `tol`;
    /// missing quantities are skipped.
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        let Some(exact) = self.exact else {
            return self.vdw_lower.is_none_or(|lo| lo <= self.bregman_upper * (1.0 + tol));
        };
        let e = exact as f64;
        let upper_ok = e <= self.bregman_upper * (1.0 + tol);
        let lower_ok = self.vdw_lower.is_none_or(|lo| lo <= e * (1.0 + tol));
        upper_ok && lower_ok
    }
}

/// Exact count and both bounds for a balanced bipartite graph.
pub fn matching_count_bounds(b: &BipartiteGraph) -> Result<MatchingCountBounds, OracleError> {
    let n = b.left_size();
    let exact = if n <= PERMANENT_LIMIT { Some(exact_matching_count::<i128>(b)? as u128) } else { None };
    let degrees = b.left_degrees();
    let rho = b.regular_degree().filter(|&r| r > 0);
    let vdw_lower = rho.map(|r| vdw_lower_bound::<f64>(r, n)).transpose()?;
    Ok(MatchingCountBounds { exact, bregman_upper: bregman_bound(&degrees), vdw_lower, degrees, rho })
}
