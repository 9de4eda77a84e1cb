use rand::seq::SliceRandom;
use rand::Rng as _;

use super::DecomposeError;
use crate::bipartite::BipartiteGraph;
use crate::flow::{tau_regular_union, BlowupPair};
use crate::graph::{Digraph, OrientedGraph};
use crate::rng::rng_from_seed;

/// Largest accepted `Δ⁰ - δ⁰`, as a fraction of `n`.
pub const SPREAD_LIMIT: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReserveSplit {
    pub core: Digraph,
    pub reserve: Digraph,
    /// Repair moves made after sampling.
    pub repairs: usize,
}

/// `[⌈γδ⁰/2⌉, ⌊2γΔ⁰⌋]` for the semidegrees of `g`.
pub fn reserve_window(g: &Digraph, gamma: f64) -> (usize, usize) {
    let p = g.semidegrees();
    let snap = |x: f64, up: bool| {
        let r = x.round();
        if (x - r).abs() < 1e-9 {
            r as usize
        } else if up {
            x.ceil() as usize
        } else {
            x.floor() as usize
        }
    };
    (snap(0.5 * gamma * p.min as f64, true), snap(2.0 * gamma * p.max as f64, false))
}

/// Splits `E(g)` into a core and a reserve whose semidegrees lie in
/// [`reserve_window`]. Every edge joins the reserve independently with
/// probability `γ`; then, lowest vertex first, a vertex outside the window
/// gains a random core edge or returns a random reserve edge, preferring
/// partners that stay inside the window.
pub fn reserve_split(g: &OrientedGraph, gamma: f64, seed: u64) -> Result<ReserveSplit, DecomposeError> {
    if !(gamma > 0.0 && gamma < 0.25) {
        return Err(DecomposeError::InvalidConfig(format!("gamma = {gamma} is outside (0, 1/4)")));
    }
    let g = g.as_digraph();
    let n = g.n();
    let profile = g.semidegrees();
    let limit = (SPREAD_LIMIT * n as f64).floor() as usize;
    if profile.max - profile.min > limit {
        return Err(DecomposeError::NotNearRegular { spread: profile.max - profile.min, limit });
    }
    let (lo, hi) = reserve_window(g, gamma);
    if lo > hi {
        return Err(DecomposeError::DegreeWindowUnreachable { vertex: 0, lo, hi });
    }
    let mut rng = rng_from_seed(seed);
    let mut reserve = Digraph::empty(n);
    let mut core = Digraph::empty(n);
    for (u, v) in g.edges() {
        let target = if rng.gen_bool(gamma) { &mut reserve } else { &mut core };
        target.add_edge(u, v)?;
    }

    let budget = 20 * n * (hi + 1) + 100;
    let mut repairs = 0;
    loop {
        let bad = (0..n).find_map(|v| {
            let (o, i) = (reserve.out_degree(v), reserve.in_degree(v));
            if o < lo || o > hi {
                Some((v, true, o < lo))
            } else if i < lo || i > hi {
                Some((v, false, i < lo))
            } else {
                None
            }
        });
        let Some((v, outgoing, grow)) = bad else {
            break;
        };
        if repairs == budget {
            return Err(DecomposeError::DegreeWindowUnreachable { vertex: v, lo, hi });
        }
        let (from, to) = if grow { (&mut core, &mut reserve) } else { (&mut reserve, &mut core) };
        let partners: Vec<usize> = if outgoing { from.out_neighbors(v).collect() } else { from.in_neighbors(v).collect() };
        let partner_degree = |w: usize| if outgoing { reserve_in(&*to, &*from, grow, w) } else { reserve_out(&*to, &*from, grow, w) };
        let inside: Vec<usize> =
            partners.iter().copied().filter(|&w| if grow { partner_degree(w) < hi } else { partner_degree(w) > lo }).collect();
        let pool = if inside.is_empty() { &partners } else { &inside };
        let Some(&w) = pool.choose(&mut rng) else {
            return Err(DecomposeError::DegreeWindowUnreachable { vertex: v, lo, hi });
        };
        let (a, b) = if outgoing { (v, w) } else { (w, v) };
        from.remove_edge(a, b);
        to.add_edge(a, b)?;
        repairs += 1;
    }
    Ok(ReserveSplit { core, reserve, repairs })
}

/// Reserve in-degree of `w`, whichever of the two graphs is the reserve.
fn reserve_in(to: &Digraph, from: &Digraph, grow: bool, w: usize) -> usize {
    if grow { to.in_degree(w) } else { from.in_degree(w) }
}

fn reserve_out(to: &Digraph, from: &Digraph, grow: bool, w: usize) -> usize {
    if grow { to.out_degree(w) } else { from.out_degree(w) }
}

/// A `τ`-regular spanning subgraph of `g` for the largest feasible
/// `τ ≤ δ⁰(g)`, found as a `τ`-regular subgraph of the double cover.
pub fn regular_trim(g: &Digraph) -> Digraph {
    let n = g.n();
    let profile = g.semidegrees();
    if profile.is_regular() {
        return g.clone();
    }
    let all: Vec<usize> = (0..n).collect();
    let pair = BlowupPair { left: all.clone(), right: all, pair: BipartiteGraph::double_cover(g), x: vec![0; n], y: vec![0; n] };
    for tau in (1..=profile.min).rev() {
        if let Ok(h) = tau_regular_union(n, std::slice::from_ref(&pair), &[], tau, None) {
            return h;
        }
    }
    Digraph::empty(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{default_mix_steps, random_regular_tournament};

    #[test]
    fn window_and_partition_on_regular_tournament() {
        let t = random_regular_tournament(101, default_mix_steps(101), 3).unwrap();
        let g = t.as_tournament().as_oriented();
        assert_eq!(reserve_window(g.as_digraph(), 0.1), (3, 10));
        let s = reserve_split(g, 0.1, 11).unwrap();
        for v in 0..101 {
            for d in [s.reserve.out_degree(v), s.reserve.in_degree(v)] {
                assert!((3..=10).contains(&d));
            }
        }
        assert_eq!(s.core.edge_count() + s.reserve.edge_count(), g.as_digraph().edge_count());
        assert!(s.core.edges().into_iter().all(|(u, v)| g.as_digraph().has_edge(u, v) && !s.reserve.has_edge(u, v)));
        assert!(s.core.is_oriented());
    }

    #[test]
    fn empty_window_and_bad_gamma() {
        let tri = OrientedGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(reserve_split(&tri, 0.1, 0), Err(DecomposeError::DegreeWindowUnreachable { .. })));
        assert!(matches!(reserve_split(&tri, 0.0, 0), Err(DecomposeError::InvalidConfig(_))));
    }

    #[test]
    fn trim_makes_regular() {
        let t = random_regular_tournament(31, default_mix_steps(31), 1).unwrap();
        let mut g = t.as_tournament().as_oriented().as_digraph().clone();
        let e = g.edges();
        for &(u, v) in e.iter().step_by(17) {
            g.remove_edge(u, v);
        }
        let h = regular_trim(&g);
        let p = h.semidegrees();
        assert!(p.is_regular() && p.min >= 1);
        assert!(h.edges().into_iter().all(|(u, v)| g.has_edge(u, v)));
    }
}
