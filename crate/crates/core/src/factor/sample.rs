use rand::Rng as _;

use super::{perfect_matching, FactorError};
use crate::bipartite::BipartiteGraph;
use crate::graph::{Digraph, OneFactor};
use crate::rng::{child_rng, Rng};

/// `⌈10·E·ln E⌉` switch steps for a graph with `E` edges.
pub fn default_sampling_steps(edge_count: usize) -> u64 {
    if edge_count < 2 {
        return 0;
    }
    let e = edge_count as f64;
    (10.0 * e * e.ln()).ceil() as u64
}

/// `max(1, ⌈n / (log₂ n)^{1/5}⌉)`.
pub fn default_cycle_cap(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let nf = n as f64;
    ((nf / nf.log2().powf(0.2)).ceil() as usize).max(1)
}

/// Runs the lazy switch chain on `mate` (left to right) in place.
///
/// One step picks two distinct left vertices `x₁, x₂`; if the crossed pairs
/// `x₁y₂, x₂y₁` are both edges, the partners are exchanged with probability 1/2.
pub fn switch_chain(b: &BipartiteGraph, mate: &mut [usize], steps: u64, rng: &mut Rng) {
    let n = mate.len();
    if n < 2 {
        return;
    }
    for _ in 0..steps {
        let x1 = rng.gen_range(0..n);
        let mut x2 = rng.gen_range(0..n - 1);
        if x2 >= x1 {
            x2 += 1;
        }
        let (y1, y2) = (mate[x1], mate[x2]);
        if b.has_edge(x1, y2) && b.has_edge(x2, y1) && rng.gen_bool(0.5) {
            mate.swap(x1, x2);
            debug_assert!(b.has_edge(x1, mate[x1]) && b.has_edge(x2, mate[x2]));
        }
    }
}

/// A perfect matching obtained by `steps` switch-chain transitions from the
/// Hopcroft–Karp matching.
pub fn sample_matching(b: &BipartiteGraph, steps: u64, seed: u64) -> Result<Vec<usize>, FactorError> {
    let mut mate = perfect_matching(b).ok_or(FactorError::NoPerfectMatching)?;
    let mut rng = child_rng(seed, 0);
    switch_chain(b, &mut mate, steps, &mut rng);
    Ok(mate)
}

/// Parameters of the few-cycle factor search.
#[derive(Clone, Debug, PartialEq)]
pub struct FewCycleParams {
    /// Bound on `d±_h(x)/n` for vertices of the marked sets.
    pub theta1: f64,
    /// Fraction of each marked set that forbidden edges may touch.
    pub theta2: f64,
    /// `ρ/n` of the host.
    pub theta3: f64,
    pub cycle_cap: usize,
    /// The marked sets `A₁, …, A_k`.
    pub sets: Vec<Vec<usize>>,
    pub max_resamples: usize,
    /// Switch steps per draw; `None` means [`default_sampling_steps`].
    pub steps: Option<u64>,
}

impl FewCycleParams {
    /// Defaults for a `ρ`-regular host on `n` vertices with no marked sets.
    pub fn for_host(n: usize, rho: usize) -> Self {
        FewCycleParams {
            theta1: 0.25,
            theta2: 0.25,
            theta3: if n == 0 { 0.0 } else { rho as f64 / n as f64 },
            cycle_cap: default_cycle_cap(n),
            sets: Vec::new(),
            max_resamples: 200,
            steps: None,
        }
    }

    fn validate(&self, n: usize) -> Result<(), FactorError> {
        for (name, t) in [("theta1", self.theta1), ("theta2", self.theta2), ("theta3", self.theta3)] {
            if !(t > 0.0 && t < 0.5) {
                return Err(FactorError::InvalidParams(format!("{name} = {t} is outside (0, 1/2)")));
            }
        }
        if self.max_resamples == 0 {
            return Err(FactorError::InvalidParams("max_resamples must be positive".into()));
        }
        let root = (n as f64).sqrt();
        for (i, a) in self.sets.iter().enumerate() {
            if (a.len() as f64) < root {
                return Err(FactorError::InvalidParams(format!("set {i} has {} < sqrt(n) vertices", a.len())));
            }
            if let Some(&v) = a.iter().find(|&&v| v >= n) {
                return Err(FactorError::InvalidParams(format!("set {i} contains vertex {v} >= n")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FewCycleFactor {
    pub factor: OneFactor,
    /// Samples drawn, the accepted one included.
    pub draws: usize,
}

/// A 1-factor of the regular digraph `g` with at most `cycle_cap` cycles and,
/// for every marked set `A`, at most `θ₂|A|` edges of `h` incident to `A`.
///
/// Factors are drawn by [`sample_matching`] on the double cover until one
/// satisfies both caps.
pub fn few_cycle_one_factor(g: &Digraph, h: &Digraph, p: &FewCycleParams, seed: u64) -> Result<FewCycleFactor, FactorError> {
    let n = g.n();
    let profile = g.semidegrees();
    if !profile.is_regular() || profile.min == 0 {
        return Err(FactorError::NotRegular);
    }
    p.validate(n)?;
    let limit = p.theta1 * n as f64;
    for a in &p.sets {
        for &x in a {
            let d = h.out_degree(x).max(h.in_degree(x));
            if d as f64 > limit {
                return Err(FactorError::ForbiddenDegreeTooHigh { vertex: x, degree: d, limit });
            }
        }
    }

    let b = BipartiteGraph::double_cover(g);
    let start = perfect_matching(&b).ok_or(FactorError::NoPerfectMatching)?;
    let steps = p.steps.unwrap_or_else(|| default_sampling_steps(b.edge_count()));
    let mut in_set = vec![vec![false; n]; p.sets.len()];
    for (mask, a) in in_set.iter_mut().zip(&p.sets) {
        for &x in a {
            mask[x] = true;
        }
    }

    let mut fewest = usize::MAX;
    for draw in 0..p.max_resamples {
        let mut mate = start.clone();
        let mut rng = child_rng(seed, draw as u64);
        switch_chain(&b, &mut mate, steps, &mut rng);
        let factor = OneFactor::from_successors(mate).expect("matching of a loopless double cover");
        let cycles = factor.cycle_count();
        fewest = fewest.min(cycles);
        if cycles > p.cycle_cap {
            continue;
        }
        let within = in_set.iter().zip(&p.sets).all(|(mask, a)| {
            let touching = factor.edges().filter(|&(x, y)| h.has_edge(x, y) && (mask[x] || mask[y])).count();
            touching as f64 <= p.theta2 * a.len() as f64
        });
        if within {
            return Ok(FewCycleFactor { factor, draws: draw + 1 });
        }
    }
    Err(FactorError::ResampleBudgetExhausted { draws: p.max_resamples, fewest_cycles: fewest, cycle_cap: p.cycle_cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{random_regular_tournament, regular_circulant};

    #[test]
    fn unique_matching_survives_any_steps() {
        let b = BipartiteGraph::from_edges(3, 3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(sample_matching(&b, 1000, 1).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn zero_steps_returns_initial_matching() {
        let b = BipartiteGraph::complete(3, 3);
        assert_eq!(sample_matching(&b, 0, 5).unwrap(), perfect_matching(&b).unwrap());
    }

    #[test]
    fn no_perfect_matching_is_an_error() {
        let b = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0)]);
        assert_eq!(sample_matching(&b, 10, 0), Err(FactorError::NoPerfectMatching));
    }

    #[test]
    fn default_caps() {
        assert_eq!(default_cycle_cap(1), 1);
        assert_eq!(default_cycle_cap(101), 70);
        assert_eq!(default_sampling_steps(1), 0);
    }

    #[test]
    fn triangle_factor_is_the_triangle() {
        let g = regular_circulant(3).unwrap();
        let p = FewCycleParams::for_host(3, 1);
        let f = few_cycle_one_factor(g.as_digraph(), &Digraph::empty(3), &p, 0).unwrap();
        assert_eq!(f.factor.successors(), &[1, 2, 0]);
        assert_eq!(f.draws, 1);
    }

    #[test]
    fn vacuous_caps_accept_first_draw() {
        let g = random_regular_tournament(21, 2000, 3).unwrap();
        let mut p = FewCycleParams::for_host(21, 10);
        p.cycle_cap = 21;
        let f = few_cycle_one_factor(g.as_digraph(), &Digraph::empty(21), &p, 9).unwrap();
        assert_eq!(f.draws, 1);
    }

    #[test]
    fn irregular_host_rejected() {
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = FewCycleParams::for_host(3, 1);
        assert_eq!(few_cycle_one_factor(&g, &Digraph::empty(3), &p, 0), Err(FactorError::NotRegular));
    }

    #[test]
    fn impossible_cap_exhausts_budget() {
        // Every factor of the 5-vertex circulant has at least one cycle, so cap 0 never accepts.
        let g = regular_circulant(5).unwrap();
        let mut p = FewCycleParams::for_host(5, 2);
        p.cycle_cap = 0;
        p.max_resamples = 7;
        let err = few_cycle_one_factor(g.as_digraph(), &Digraph::empty(5), &p, 0).unwrap_err();
        assert!(matches!(err, FactorError::ResampleBudgetExhausted { draws: 7, cycle_cap: 0, .. }));
    }
}
