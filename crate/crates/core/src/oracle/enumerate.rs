use super::OracleError;
use crate::graph::{OrientedGraph, RegularTournament};

fn check_order(n: usize, allow_nine: bool) -> Result<(), OracleError> {
    match n {
        1 | 3 | 5 | 7 => Ok(()),
        9 if allow_nine => Ok(()),
        _ => Err(OracleError::Unsupported(n)),
    }
}

/// Calls `visit` on every labeled regular tournament on `n` vertices.
///
/// Pairs `(i, j)`, `i < j`, are oriented in lexicographic order, `i → j`
/// first, pruning any branch where a semidegree exceeds `(n-1)/2`. The visit
/// order is therefore fixed. `n = 9` runs only with `allow_nine`.
pub fn for_each_regular_tournament(
    n: usize,
    allow_nine: bool,
    mut visit: impl FnMut(&RegularTournament),
) -> Result<usize, OracleError> {
    check_order(n, allow_nine)?;
    let k = (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = vec![0usize; n];
    let mut inn = vec![0usize; n];
    let mut forward = vec![false; pairs.len()];
    let mut count = 0;

    fn rec(
        idx: usize,
        pairs: &[(usize, usize)],
        k: usize,
        out: &mut [usize],
        inn: &mut [usize],
        forward: &mut [bool],
        count: &mut usize,
        visit: &mut dyn FnMut(&RegularTournament),
    ) {
        if idx == pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().zip(forward.iter()).map(|(&(i, j), &f)| if f { (i, j) } else { (j, i) }).collect();
            let g = OrientedGraph::build(out.len(), &edges).expect("one orientation per pair");
            *count += 1;
            visit(&RegularTournament::new_unchecked(g));
            return;
        }
        let (i, j) = pairs[idx];
        for (a, b, f) in [(i, j, true), (j, i, false)] {
            if out[a] < k && inn[b] < k {
                out[a] += 1;
                inn[b] += 1;
                forward[idx] = f;
                rec(idx + 1, pairs, k, out, inn, forward, count, visit);
                out[a] -= 1;
                inn[b] -= 1;
            }
        }
    }
    rec(0, &pairs, k, &mut out, &mut inn, &mut forward, &mut count, &mut visit);
    Ok(count)
}

/// All labeled regular tournaments on `n ∈ {1, 3, 5, 7}` vertices.
pub fn enumerate_regular_tournaments(n: usize) -> Result<Vec<RegularTournament>, OracleError> {
    let mut all = Vec::new();
    for_each_regular_tournament(n, false, |t| all.push(t.clone()))?;
    Ok(all)
}

/// Independent count: scans every orientation bitmask of the `n(n-1)/2`
/// pairs and tests regularity directly.
pub fn count_regular_tournaments_by_scan(n: usize) -> Result<u64, OracleError> {
    check_order(n, false)?;
    let k = (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut out = [0usize; 7];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            out[if mask >> b & 1 == 1 { i } else { j }] += 1;
        }
        if out[..n].iter().all(|&d| d == k) {
            count += 1;
        }
    }
    Ok(count)
}
