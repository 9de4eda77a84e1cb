use serde::{Deserialize, Serialize};

use super::reserve::{regular_trim, reserve_split};
use super::{DecomposeError, DecomposerConfig};
use crate::factor::{few_cycle_one_factor, FewCycleParams};
use crate::graph::{Digraph, OrientedGraph};
use crate::rng::derive_seed;
use crate::rotation::{merge_into_hamilton, MergeError, MergeOptions, ReserveGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The regular core has no edges left.
    CoreExhausted,
    FailureStreak,
    ReserveDepleted,
}

/// Where the edges of one Hamilton cycle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleProvenance {
    pub factor_edges: usize,
    pub reserve_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionStats {
    pub provenance: Vec<CycleProvenance>,
    /// Factor draws across all attempts.
    pub draws: usize,
    pub failures: usize,
    pub rotations: usize,
    pub extensions: usize,
    pub direct_closures: usize,
    /// Core edges moved to the reserve to make the core regular.
    pub trimmed_edges: usize,
    pub core_degree: usize,
    /// True when no valid reserve split existed and the run used none.
    pub reserve_skipped: bool,
    pub stop_reason: StopReason,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub cycles: Vec<Vec<usize>>,
    /// Core edges left when the run stopped.
    pub leftover_edges: usize,
    /// Reserve edges left when the run stopped.
    pub reserve_residue: usize,
    pub stats: DecompositionStats,
    /// `cycles / ⌊(n-1)/2⌋`.
    pub fraction: f64,
}

impl DecompositionReport {
    /// Pretty JSON with a fixed key order and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `|E| = n·k + leftover + residue`.
    pub fn conserves(&self, edge_count: usize) -> bool {
        self.n * self.cycles.len() + self.leftover_edges + self.reserve_residue == edge_count
    }
}

/// Packs edge-disjoint Hamilton cycles into an almost regular oriented graph.
///
/// The edges are split into a core and a random reserve. The core is trimmed
/// to a regular subgraph. Each round then draws a few-cycle 1-factor of the
/// core and merges its cycles into a Hamilton cycle with reserve edges; the
/// factor leaves the core. A round that fails is retried with a
/// fresh seed; the run stops after `max_failure_streak` failures in a row.
pub fn almost_hamilton_decomposition(g: &OrientedGraph, cfg: &DecomposerConfig) -> Result<DecompositionReport, DecomposeError> {
    cfg.validate()?;
    let host = g.as_digraph();
    let n = host.n();
    let mut warnings = Vec::new();
    let profile = host.semidegrees();
    if 8 * profile.min < 3 * n {
        warnings.push(format!("minimum semidegree {} is below 3n/8", profile.min));
    }

    let (split_core, reserve, reserve_skipped) = match reserve_split(g, cfg.gamma, derive_seed(cfg.seed, 0)) {
        Ok(s) => (s.core, s.reserve, false),
        Err(e @ (DecomposeError::DegreeWindowUnreachable { .. } | DecomposeError::NotNearRegular { .. })) => {
            warnings.push(format!("{e}; running without a reserve"));
            (host.clone(), Digraph::empty(n), true)
        }
        Err(e) => return Err(e),
    };
    let mut core = regular_trim(&split_core);
    let mut reserve = ReserveGraph::from_digraph(&reserve);
    let mut trimmed_edges = 0;
    for (u, v) in split_core.edges() {
        if !core.has_edge(u, v) {
            reserve.insert(u, v);
            trimmed_edges += 1;
        }
    }
    let core_degree = core.semidegrees().min;

    let mut cycles = Vec::new();
    let mut provenance = Vec::new();
    let mut used = Digraph::empty(n);
    let (mut draws, mut failures, mut streak, mut attempt) = (0, 0, 0, 0u64);
    let (mut rotations, mut extensions, mut direct_closures) = (0, 0, 0);
    let stop_reason = loop {
        let rho = core.semidegrees().min;
        if rho == 0 {
            break StopReason::CoreExhausted;
        }
        if streak == cfg.max_failure_streak {
            break StopReason::FailureStreak;
        }
        attempt += 1;
        let mut params = FewCycleParams::for_host(n, rho);
        params.theta3 = params.theta3.min(0.49);
        params.max_resamples = cfg.max_resamples;
        if let Some(cap) = cfg.cycle_cap {
            params.cycle_cap = cap;
        }
        let factor = match few_cycle_one_factor(&core, &Digraph::empty(n), &params, derive_seed(cfg.seed, attempt)) {
            Ok(f) => f,
            Err(_) => {
                draws += params.max_resamples;
                failures += 1;
                streak += 1;
                continue;
            }
        };
        draws += factor.draws;
        let opts = MergeOptions { floor: cfg.reserve_floor, budget: cfg.edge_budget };
        let outcome = match merge_into_hamilton(&factor.factor, &reserve, &opts) {
            Ok(o) => o,
            Err(MergeError::ReserveDepleted { .. }) => {
                failures += 1;
                break StopReason::ReserveDepleted;
            }
            Err(_) => {
                failures += 1;
                streak += 1;
                continue;
            }
        };
        streak = 0;
        let cycle = outcome.factor.as_hamilton_cycle().expect("merge returns a Hamilton cycle");
        let mut from_factor = 0;
        for (u, v) in outcome.factor.edges() {
            debug_assert!(host.has_edge(u, v) && !used.has_edge(u, v));
            used.add_edge(u, v)?;
            if factor.factor.succ(u) == v {
                from_factor += 1;
            }
        }
        for (u, v) in factor.factor.edges() {
            core.remove_edge(u, v);
        }
        reserve = outcome.reserve;
        rotations += outcome.stats.rotations;
        extensions += outcome.stats.extensions;
        direct_closures += outcome.stats.direct_closures;
        provenance.push(CycleProvenance { factor_edges: from_factor, reserve_edges: n - from_factor });
        cycles.push(cycle);
    };

    let max_cycles = n.saturating_sub(1) / 2;
    let fraction = if max_cycles == 0 { 0.0 } else { cycles.len() as f64 / max_cycles as f64 };
    Ok(DecompositionReport {
        n,
        leftover_edges: core.edge_count(),
        reserve_residue: reserve.edge_count(),
        cycles,
        stats: DecompositionStats {
            provenance,
            draws,
            failures,
            rotations,
            extensions,
            direct_closures,
            trimmed_edges,
            core_degree,
            reserve_skipped,
            stop_reason,
            warnings,
        },
        fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify_decomposition;
    use crate::graph::generate::{circulant_tournament, default_mix_steps, random_regular_tournament};

    #[test]
    fn triangle() {
        let g = OrientedGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = almost_hamilton_decomposition(&g, &DecomposerConfig::default()).unwrap();
        assert_eq!(r.cycles.len(), 1);
        assert_eq!(r.fraction, 1.0);
        assert!(r.stats.reserve_skipped);
        assert!(verify_decomposition(g.as_digraph(), &r.cycles).valid);
        assert!(r.conserves(3));
    }

    #[test]
    fn circulant_five() {
        let g = circulant_tournament(5, &[1, 2]).unwrap();
        let r = almost_hamilton_decomposition(&g, &DecomposerConfig::default()).unwrap();
        assert_eq!(r.cycles.len(), 2);
        assert_eq!(r.fraction, 1.0);
        assert!(verify_decomposition(g.as_digraph(), &r.cycles).valid);
    }

    #[test]
    fn regular_tournament_101() {
        let t = random_regular_tournament(101, default_mix_steps(101), 5).unwrap();
        let g = t.as_tournament().as_oriented();
        let cfg = DecomposerConfig::with_seed(9);
        let r = almost_hamilton_decomposition(g, &cfg).unwrap();
        assert!(verify_decomposition(g.as_digraph(), &r.cycles).valid);
        assert!(r.conserves(g.as_digraph().edge_count()));
        assert!(r.cycles.len() >= 20, "only {} cycles: {:?}", r.cycles.len(), r.stats.stop_reason);
        assert_eq!(r, almost_hamilton_decomposition(g, &cfg).unwrap());
        assert_eq!(r.to_json(), almost_hamilton_decomposition(g, &cfg).unwrap().to_json());
        assert!(r.to_json().ends_with("}\n"));
    }

    #[test]
    fn invalid_gamma() {
        let g = OrientedGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let cfg = DecomposerConfig { gamma: 0.3, ..DecomposerConfig::default() };
        assert!(matches!(almost_hamilton_decomposition(&g, &cfg), Err(DecomposeError::InvalidConfig(_))));
    }
}
