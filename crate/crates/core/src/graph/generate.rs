//! Generators for regular tournaments and almost-regular oriented graphs.

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{GraphError, OrientedGraph, RegularTournament, Tournament};
use crate::rng::{child_rng, Rng};

/// Mixing steps used when the caller does not choose: `20·n²` triangle reversals.
pub fn default_mix_steps(n: usize) -> u64 {
    20 * (n as u64) * (n as u64)
}

/// Repair budget of [`random_almost_regular_oriented`]: `50·n` toggles.
pub fn almost_regular_repair_budget(n: usize) -> usize {
    50 * n
}

/// Circulant oriented graph on `Z_n`: `i → i+s` for each `s` in `connection_set`.
///
/// Entries must be distinct and lie in `1..=(n-1)/2`; the full set yields a
/// regular tournament (see [`regular_circulant`]).
pub fn circulant_tournament(n: usize, connection_set: &[usize]) -> Result<OrientedGraph, GraphError> {
    if n.is_multiple_of(2) {
        return Err(GraphError::EvenOrder { n });
    }
    let half = (n - 1) / 2;
    let mut seen = vec![false; half + 1];
    for &s in connection_set {
        if s == 0 || s > half || std::mem::replace(&mut seen[s], true) {
            return Err(GraphError::InvalidConnectionSet { n, element: s });
        }
    }
    let mut g = OrientedGraph::empty(n);
    for i in 0..n {
        for &s in connection_set {
            g.add_edge(i, (i + s) % n)?;
        }
    }
    Ok(g)
}

/// The circulant tournament with connection set `{1, …, (n-1)/2}`.
pub fn regular_circulant(n: usize) -> Result<RegularTournament, GraphError> {
    let set: Vec<usize> = (1..=n.saturating_sub(1) / 2).collect();
    let g = circulant_tournament(n, &set)?;
    Ok(RegularTournament::new_unchecked(g))
}

/// Random regular tournament: the regular circulant mixed by `mix_steps`
/// uniformly chosen directed-triangle reversals.
///
/// Reversing a directed 3-cycle keeps every semidegree, so every
/// intermediate state is regular. The output distribution is not claimed to
/// be uniform.
pub fn random_regular_tournament(n: usize, mix_steps: u64, seed: u64) -> Result<RegularTournament, GraphError> {
    if n.is_multiple_of(2) {
        return Err(GraphError::EvenOrder { n });
    }
    if n < 3 {
        return Err(GraphError::InvalidOrder { n, min: 3 });
    }
    let mut g = regular_circulant(n)?.into_oriented();
    let mut rng = child_rng(seed, 0);
    let half = (n - 1) / 2;
    for _ in 0..mix_steps {
        let u = rng.gen_range(0..n);
        let k = rng.gen_range(0..half);
        let v = g.out_row(u).nth_common(g.out_row(u), k).expect("regular out-row has `half` entries");
        // Every edge u→v of a regular tournament lies on at least one directed triangle.
        let common = g.out_row(v).intersection_count(g.in_row(u));
        debug_assert!(common > 0);
        let w = g.out_row(v).nth_common(g.in_row(u), rng.gen_range(0..common)).expect("counted above");
        g.reverse_edge(u, v);
        g.reverse_edge(v, w);
        g.reverse_edge(w, u);
        debug_assert!([u, v, w].iter().all(|&x| g.out_degree(x) == half && g.in_degree(x) == half));
    }
    Ok(RegularTournament::new_unchecked(g))
}

/// Uniformly random tournament: each pair oriented by a fair coin.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = child_rng(seed, 0);
    let mut g = OrientedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            g.add_edge(a, b).expect("fresh pair");
        }
    }
    Tournament::try_from(g).expect("all pairs oriented")
}

/// Random oriented graph: each pair present with probability `p`, uniformly oriented.
pub fn random_oriented(n: usize, p: f64, rng: &mut Rng) -> OrientedGraph {
    let mut g = OrientedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
                g.add_edge(a, b).expect("fresh pair");
            }
        }
    }
    g
}

/// Integer semidegree window `[⌈(α−η)n⌉, ⌊(α+η)n⌋]`.
pub fn degree_window(n: usize, alpha: f64, eta: f64) -> (usize, usize) {
    let lo = ((alpha - eta) * n as f64 - 1e-9).ceil().max(0.0) as usize;
    let hi = ((alpha + eta) * n as f64 + 1e-9).floor().max(0.0) as usize;
    (lo, hi)
}

fn window_distance(d: usize, lo: usize, hi: usize) -> i64 {
    if d < lo {
        (lo - d) as i64
    } else if d > hi {
        (d - hi) as i64
    } else {
        0
    }
}

/// Random oriented graph with `(α−η)n ≤ δ⁰ ≤ Δ⁰ ≤ (α+η)n`.
///
/// Every pair becomes a uniformly oriented edge with probability `2α`; then
/// vertices outside the window are repaired one oriented-edge toggle
/// (insert, delete or reverse) at a time, always taking the toggle at a
/// violating vertex that most reduces the total window violation. After
/// [`almost_regular_repair_budget`] toggles the generator gives up with
/// [`GraphError::InfeasibleDegreeWindow`].
pub fn random_almost_regular_oriented(n: usize, alpha: f64, eta: f64, seed: u64) -> Result<OrientedGraph, GraphError> {
    if !(alpha > 0.25 && alpha < 0.5) || !(eta >= 0.0 && eta < alpha) {
        return Err(GraphError::InvalidParameter(format!("need 1/4 < alpha < 1/2 and 0 <= eta < alpha, got alpha={alpha}, eta={eta}")));
    }
    let (lo, hi) = degree_window(n, alpha, eta);
    if n < 3 || lo > hi || 2 * lo > n - 1 {
        return Err(GraphError::InfeasibleDegreeWindow { n, lo, hi, toggles: 0 });
    }
    if n % 2 == 1 && lo == (n - 1) / 2 {
        // Window collapsed onto the regular tournaments.
        return Ok(random_regular_tournament(n, default_mix_steps(n), seed)?.into_oriented());
    }

    let mut rng = child_rng(seed, 1);
    let mut g = random_oriented(n, 2.0 * alpha, &mut rng);
    let mut out: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut inn: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let cost = |d: usize| window_distance(d, lo, hi);
    let budget = almost_regular_repair_budget(n);

    for toggles in 0..=budget {
        let violating: Vec<usize> = (0..n).filter(|&v| cost(out[v]) + cost(inn[v]) > 0).collect();
        let Some(&v) = violating.choose(&mut rng) else {
            return Ok(g);
        };
        if toggles == budget {
            return Err(GraphError::InfeasibleDegreeWindow { n, lo, hi, toggles });
        }
        // (delta, tie-break, move); a move is (remove, add) with optional edges.
        let mut best: Option<(i64, u64, Option<(usize, usize)>, Option<(usize, usize)>)> = None;
        for w in (0..n).filter(|&w| w != v) {
            let mut candidates: Vec<(Option<(usize, usize)>, Option<(usize, usize)>)> = Vec::with_capacity(2);
            if g.has_edge(v, w) {
                candidates.push((Some((v, w)), None));
                candidates.push((Some((v, w)), Some((w, v))));
            } else if g.has_edge(w, v) {
                candidates.push((Some((w, v)), None));
                candidates.push((Some((w, v)), Some((v, w))));
            } else {
                candidates.push((None, Some((v, w))));
                candidates.push((None, Some((w, v))));
            }
            for (rem, add) in candidates {
                let mut delta = 0i64;
                let mut touched: Vec<(usize, i64, i64)> = Vec::with_capacity(4);
                let mut bump = |x: usize, dout: i64, din: i64| {
                    if let Some(t) = touched.iter_mut().find(|t| t.0 == x) {
                        t.1 += dout;
                        t.2 += din;
                    } else {
                        touched.push((x, dout, din));
                    }
                };
                if let Some((a, b)) = rem {
                    bump(a, -1, 0);
                    bump(b, 0, -1);
                }
                if let Some((a, b)) = add {
                    bump(a, 1, 0);
                    bump(b, 0, 1);
                }
                for &(x, dout, din) in &touched {
                    let new_out = (out[x] as i64 + dout) as usize;
                    let new_in = (inn[x] as i64 + din) as usize;
                    delta += cost(new_out) + cost(new_in) - cost(out[x]) - cost(inn[x]);
                }
                let tie: u64 = rng.gen();
                if best.as_ref().is_none_or(|b| (delta, tie) < (b.0, b.1)) {
                    best = Some((delta, tie, rem, add));
                }
            }
        }
        let (_, _, rem, add) = best.expect("n >= 3 gives candidates");
        if let Some((a, b)) = rem {
            g.remove_edge(a, b);
            out[a] -= 1;
            inn[b] -= 1;
        }
        if let Some((a, b)) = add {
            g.add_edge(a, b).expect("pair was cleared");
            out[a] += 1;
            inn[b] += 1;
        }
    }
    unreachable!("loop returns on success or budget exhaustion")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circulant_examples() {
        let tri = circulant_tournament(3, &[1]).unwrap();
        assert_eq!(tri.edges(), vec![(0, 1), (1, 2), (2, 0)]);
        for (n, set) in [(7usize, vec![1, 2, 3]), (9, vec![1, 2, 3, 4])] {
            let g = circulant_tournament(n, &set).unwrap();
            let p = g.semidegrees();
            assert_eq!((p.min, p.max), ((n - 1) / 2, (n - 1) / 2));
            assert!(RegularTournament::try_from(g).is_ok());
        }
    }

    #[test]
    fn circulant_errors() {
        assert_eq!(circulant_tournament(4, &[1]).unwrap_err(), GraphError::EvenOrder { n: 4 });
        assert!(matches!(circulant_tournament(7, &[4]), Err(GraphError::InvalidConnectionSet { .. })));
        assert!(matches!(circulant_tournament(7, &[1, 1]), Err(GraphError::InvalidConnectionSet { .. })));
        assert!(matches!(circulant_tournament(7, &[0]), Err(GraphError::InvalidConnectionSet { .. })));
    }

    #[test]
    fn circulant_regular_for_all_odd_orders() {
        for n in (3..=201).step_by(2) {
            let t = regular_circulant(n).unwrap();
            let p = t.semidegrees();
            assert!(p.is_regular() && p.min == (n - 1) / 2, "n={n}");
            assert!(t.is_tournament());
        }
    }

    #[test]
    fn zero_mixing_returns_circulant() {
        let t = random_regular_tournament(5, 0, 9).unwrap();
        assert_eq!(t.as_digraph(), regular_circulant(5).unwrap().as_digraph());
    }

    #[test]
    fn mixing_preserves_regularity_and_is_deterministic() {
        let a = random_regular_tournament(5, 10_000, 3).unwrap();
        let p = a.semidegrees();
        assert_eq!(p.out, vec![2; 5]);
        assert_eq!(p.inn, vec![2; 5]);
        let b = random_regular_tournament(5, 10_000, 3).unwrap();
        assert_eq!(a, b);
        let c = random_regular_tournament(101, 1_000_000, 11).unwrap();
        let p = c.semidegrees();
        assert_eq!((p.min, p.max), (50, 50));
        assert_ne!(c.as_digraph(), regular_circulant(101).unwrap().as_digraph());
    }

    #[test]
    fn random_regular_rejects_even() {
        assert_eq!(random_regular_tournament(6, 10, 0).unwrap_err(), GraphError::EvenOrder { n: 6 });
    }

    #[test]
    fn almost_regular_window_holds() {
        for seed in 0..3 {
            let g = random_almost_regular_oriented(200, 0.4, 0.02, seed).unwrap();
            let p = g.semidegrees();
            assert!(p.min >= 76 && p.max <= 84, "seed {seed}: [{}, {}]", p.min, p.max);
            assert!(g.is_oriented());
        }
    }

    #[test]
    fn almost_regular_collapsed_window_is_regular_tournament() {
        let n = 11;
        let alpha = (n as f64 - 1.0) / (2.0 * n as f64);
        let g = random_almost_regular_oriented(n, alpha, 0.0, 4).unwrap();
        assert!(RegularTournament::try_from(g).is_ok());
    }

    #[test]
    fn almost_regular_empty_window_is_infeasible() {
        assert!(matches!(
            random_almost_regular_oriented(50, 0.45, 0.001, 1),
            Err(GraphError::InfeasibleDegreeWindow { .. })
        ));
        assert!(matches!(random_almost_regular_oriented(50, 0.2, 0.01, 1), Err(GraphError::InvalidParameter(_))));
    }
}
