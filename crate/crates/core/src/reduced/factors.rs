use pathfinding::kuhn_munkres::kuhn_munkres;
use pathfinding::matrix::Matrix;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::{MultiEdge, ReducedError, ReducedMultiDigraph};
use crate::graph::CycleSet;
use crate::rng::child_rng;

/// Random reservoirs tried before giving up.
pub const RESERVOIR_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlmostFactorParams {
    pub beta: f64,
    /// Fraction of clusters a collection may miss; also the reservoir fraction.
    pub c: f64,
    /// Lower degree slack: `δ⁰(R_m) ≥ (1/2 - 4d)L/β`.
    pub d: f64,
    /// Upper degree slack: `Δ⁰(R_m) ≤ (1/2 + 2η)L/β`.
    pub eta: f64,
}

impl Default for AlmostFactorParams {
    fn default() -> Self {
        AlmostFactorParams { beta: 0.05, c: 0.1, d: 0.1, eta: 0.05 }
    }
}

fn floor_tol(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r.max(0.0) as usize
    } else {
        x.floor().max(0.0) as usize
    }
}

impl AlmostFactorParams {
    /// `r = ⌊(1/2 - c)L/β⌋`.
    pub fn collections(&self, l: usize) -> usize {
        floor_tol((0.5 - self.c) * l as f64 / self.beta)
    }

    /// `⌊cL⌋`.
    pub fn reservoir_size(&self, l: usize) -> usize {
        floor_tol(self.c * l as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlmostOneFactors {
    pub collections: Vec<CycleSet>,
    /// Parallel edges used by each collection.
    pub edges: Vec<Vec<MultiEdge>>,
    pub reservoir: Vec<usize>,
    pub reservoir_attempts: usize,
    /// Degree `r′` the remainder was padded to.
    pub padded_degree: usize,
    pub temporary_edges: usize,
    /// Paths closed through the reservoir.
    pub patches: usize,
}

struct FreeEdges {
    mult: Vec<Vec<usize>>,
    next: Vec<Vec<usize>>,
}

impl FreeEdges {
    fn free(&self, i: usize, j: usize) -> bool {
        i != j && self.next[i][j] < self.mult[i][j]
    }

    fn take(&mut self, i: usize, j: usize) -> MultiEdge {
        let index = self.next[i][j];
        debug_assert!(index < self.mult[i][j]);
        self.next[i][j] += 1;
        MultiEdge { from: i, to: j, index }
    }
}

fn check_degrees(rm: &ReducedMultiDigraph, p: &AlmostFactorParams) -> Result<(), ReducedError> {
    let l = rm.order() as f64;
    let lo = (0.5 - 4.0 * p.d) * l / p.beta;
    let hi = (0.5 + 2.0 * p.eta) * l / p.beta;
    for i in 0..rm.order() {
        for degree in [rm.out_degree(i), rm.in_degree(i)] {
            let x = degree as f64;
            if x < lo - 1e-9 || x > hi + 1e-9 {
                return Err(ReducedError::DegreeHypothesisViolated { cluster: i, degree, lo, hi });
            }
        }
    }
    Ok(())
}

fn choose_reservoir(rm: &ReducedMultiDigraph, p: &AlmostFactorParams, seed: u64) -> Result<(Vec<usize>, usize), ReducedError> {
    let l = rm.order();
    let size = p.reservoir_size(l);
    let centre = 0.5 * size as f64 / p.beta;
    let slack = 5.0 * p.d * size as f64 / p.beta + 1e-9;
    for attempt in 0..RESERVOIR_ATTEMPTS {
        let mut rng = child_rng(seed, attempt as u64);
        let mut x = sample(&mut rng, l, size).into_vec();
        x.sort_unstable();
        let balanced = (0..l).all(|i| {
            let out = rm.edges_between(&[i], &x) as f64;
            let inn = rm.edges_between(&x, &[i]) as f64;
            (out - centre).abs() <= slack && (inn - centre).abs() <= slack
        });
        if balanced {
            return Ok((x, attempt + 1));
        }
    }
    Err(ReducedError::ReservoirSelectionFailed { attempts: RESERVOIR_ATTEMPTS })
}

/// One round's perfect matching on the padded remainder; `true` marks a
/// temporary edge.
type Round = Vec<(usize, usize, bool)>;

/// Peels `r′` perfect matchings off the `r′`-regular bipartite multigraph
/// `real + temp`. Each round prefers temporary edges at clusters with many
/// of them left, which packs the temporary edges into few rounds.
fn factorize(real: &mut [Vec<usize>], temp: &mut [Vec<usize>], rounds: usize) -> Vec<Round> {
    let k = real.len();
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let row: Vec<i64> = temp.iter().map(|r| r.iter().sum::<usize>() as i64).collect();
        let col: Vec<i64> = (0..k).map(|j| temp.iter().map(|r| r[j]).sum::<usize>() as i64).collect();
        let top = row.iter().chain(&col).copied().max().unwrap_or(0);
        let forbidden = -(k as i64) * (2 * top + 1) - 1;
        let weights = Matrix::from_fn(k, k, |(i, j)| {
            if temp[i][j] > 0 {
                row[i] + col[j]
            } else if real[i][j] > 0 {
                0
            } else {
                forbidden
            }
        });
        let (_, assignment) = kuhn_munkres(&weights);
        let mut round = Vec::with_capacity(k);
        for (i, &j) in assignment.iter().enumerate() {
            if temp[i][j] > 0 {
                temp[i][j] -= 1;
                round.push((i, j, true));
            } else {
                assert!(real[i][j] > 0, "regular bipartite multigraphs have perfect matchings");
                real[i][j] -= 1;
                round.push((i, j, false));
            }
        }
        out.push(round);
    }
    out
}

/// Edge-disjoint collections of vertex-disjoint cycles in `rm`, each
/// covering all but at most `cL` clusters.
///
/// A random reservoir `X` of `⌊cL⌋` clusters with balanced degrees into it
/// is set aside. The rest is padded with temporary edges (lowest deficient
/// out-cluster to lowest deficient in-cluster, loops allowed) to an
/// `r′`-regular multidigraph and split into `r′` 1-factors. The `r` factors
/// with the fewest temporary edges are kept and each path left by deleting
/// the temporary edges is closed by a route `b → b⁺ → b⁺⁺ → a⁻⁻ → a⁻ → a`
/// through four distinct reservoir clusters along unused parallel edges,
/// never reusing a reservoir cluster within one collection.
pub fn almost_one_factors(rm: &ReducedMultiDigraph, p: &AlmostFactorParams, seed: u64) -> Result<AlmostOneFactors, ReducedError> {
    if !(p.beta > 0.0 && p.c > 0.0 && p.c < 0.5 && p.d >= 0.0 && p.eta >= 0.0) {
        return Err(ReducedError::InvalidParameter(format!("invalid almost-1-factor parameters {p:?}")));
    }
    let l = rm.order();
    let r = p.collections(l);
    check_degrees(rm, p)?;
    let (reservoir, reservoir_attempts) = choose_reservoir(rm, p, seed)?;
    let mut in_x = vec![false; l];
    reservoir.iter().for_each(|&x| in_x[x] = true);
    let rest: Vec<usize> = (0..l).filter(|&i| !in_x[i]).collect();
    let k = rest.len();

    let mut real: Vec<Vec<usize>> = rest.iter().map(|&i| rest.iter().map(|&j| rm.mult(i, j)).collect()).collect();
    let out_deg: Vec<usize> = real.iter().map(|row| row.iter().sum()).collect();
    let in_deg: Vec<usize> = (0..k).map(|j| real.iter().map(|row| row[j]).sum()).collect();
    let padded = out_deg.iter().chain(&in_deg).copied().max().unwrap_or(0).max(r);
    let mut temp = vec![vec![0usize; k]; k];
    let mut out_def: Vec<usize> = out_deg.iter().map(|&d| padded - d).collect();
    let mut in_def: Vec<usize> = in_deg.iter().map(|&d| padded - d).collect();
    let temporary_edges: usize = out_def.iter().sum();
    let (mut i, mut j) = (0, 0);
    while i < k && j < k {
        if out_def[i] == 0 {
            i += 1;
        } else if in_def[j] == 0 {
            j += 1;
        } else {
            let t = out_def[i].min(in_def[j]);
            temp[i][j] += t;
            out_def[i] -= t;
            in_def[j] -= t;
        }
    }

    let mut rounds = factorize(&mut real, &mut temp, padded);
    let limit = floor_tol(p.d.sqrt() * l as f64);
    let temps = |round: &Round| round.iter().filter(|e| e.2).count();
    let mut order: Vec<usize> = (0..rounds.len()).collect();
    order.sort_by_key(|&q| (temps(&rounds[q]), q));
    let usable = order.iter().filter(|&&q| temps(&rounds[q]) <= limit).count();
    if usable < r {
        return Err(ReducedError::TemporaryEdgeExcess { needed: r, usable, limit });
    }
    let mut keep: Vec<usize> = order[..r].to_vec();
    keep.sort_unstable();

    let mut free = FreeEdges { mult: (0..l).map(|i| (0..l).map(|j| rm.mult(i, j)).collect()).collect(), next: vec![vec![0; l]; l] };
    let mut collections = Vec::with_capacity(r);
    let mut edges = Vec::with_capacity(r);
    let mut patches = 0;
    for (slot, &q) in keep.iter().enumerate() {
        let round = std::mem::take(&mut rounds[q]);
        let mut succ = vec![(usize::MAX, false); k];
        for &(a, b, is_temp) in &round {
            succ[a] = (b, is_temp);
        }
        let mut used = Vec::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; k];
        // Paths start right after a temporary edge.
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for a in 0..k {
            if succ[a].1 {
                let start = succ[a].0;
                let mut path = vec![start];
                seen[start] = true;
                let mut v = start;
                while !succ[v].1 {
                    v = succ[v].0;
                    seen[v] = true;
                    path.push(v);
                }
                paths.push(path);
            }
        }
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                cyc.push(v);
                v = succ[v].0;
            }
            cycles.push(cyc);
        }
        let mut global: Vec<Vec<usize>> = Vec::with_capacity(cycles.len() + paths.len());
        for cyc in &cycles {
            let g: Vec<usize> = cyc.iter().map(|&v| rest[v]).collect();
            for t in 0..g.len() {
                used.push(free.take(g[t], g[(t + 1) % g.len()]));
            }
            global.push(g);
        }
        let mut x_used = vec![false; l];
        paths.sort_by_key(|path| path[0]);
        for path in &paths {
            let g: Vec<usize> = path.iter().map(|&v| rest[v]).collect();
            for w in g.windows(2) {
                used.push(free.take(w[0], w[1]));
            }
            let (a, b) = (g[0], *g.last().expect("non-empty path"));
            let avail: Vec<usize> = reservoir.iter().copied().filter(|&x| !x_used[x]).collect();
            let a_minus: Vec<usize> = avail.iter().copied().filter(|&x| free.free(x, a)).collect();
            let b_plus: Vec<usize> = avail.iter().copied().filter(|&x| free.free(b, x)).collect();
            let route = a_minus.iter().find_map(|&am| {
                b_plus.iter().filter(|&&bp| bp != am).find_map(|&bp| {
                    avail.iter().filter(|&&x| x != am && x != bp && free.free(bp, x)).find_map(|&bpp| {
                        avail
                            .iter()
                            .find(|&&y| y != am && y != bp && y != bpp && free.free(bpp, y) && free.free(y, am))
                            .map(|&amm| [bp, bpp, amm, am])
                    })
                })
            });
            let Some(route) = route else {
                return Err(ReducedError::PatchingFailed { factor: slot, path: g, a_minus, b_plus });
            };
            let mut prev = b;
            for &x in &route {
                used.push(free.take(prev, x));
                x_used[x] = true;
                prev = x;
            }
            used.push(free.take(prev, a));
            let mut cyc = g;
            cyc.extend(route);
            global.push(cyc);
            patches += 1;
        }
        let set = CycleSet::new(l, global, 2).map_err(|e| ReducedError::HypothesisViolated(format!("collection {slot}: {e}")))?;
        collections.push(set);
        edges.push(used);
    }

    Ok(AlmostOneFactors {
        collections,
        edges,
        reservoir,
        reservoir_attempts,
        padded_degree: padded,
        temporary_edges,
        patches,
    })
}

/// Exact audit: `r` collections of vertex-disjoint cycles whose edges are
/// distinct parallel edges of `rm`, each covering at least `(1-c)L` clusters.
pub fn audit_almost_one_factors(rm: &ReducedMultiDigraph, out: &AlmostOneFactors, p: &AlmostFactorParams) -> Result<(), String> {
    let l = rm.order();
    let r = p.collections(l);
    if out.collections.len() != r || out.edges.len() != r {
        return Err(format!("{} collections, expected {r}", out.collections.len()));
    }
    let mut all: Vec<MultiEdge> = Vec::new();
    for (q, (set, used)) in out.collections.iter().zip(&out.edges).enumerate() {
        CycleSet::new(l, set.cycles.clone(), 2).map_err(|e| format!("collection {q}: {e}"))?;
        let mut cyc_edges: Vec<(usize, usize)> = set.edges().collect();
        let mut listed: Vec<(usize, usize)> = used.iter().map(|e| (e.from, e.to)).collect();
        cyc_edges.sort_unstable();
        listed.sort_unstable();
        if cyc_edges != listed {
            return Err(format!("collection {q}: edge list does not match its cycles"));
        }
        let need = (1.0 - p.c) * l as f64 - 1e-9;
        if (set.covered_count() as f64) < need {
            return Err(format!("collection {q} covers {} clusters, need {need}", set.covered_count()));
        }
        all.extend(used.iter().copied());
    }
    if let Some(e) = all.iter().find(|e| e.from >= l || e.to >= l || e.index >= rm.mult(e.from, e.to)) {
        return Err(format!("edge {e:?} is not a parallel edge of R_m"));
    }
    all.sort_unstable();
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("edge {:?} is used twice", w[0]));
    }
    Ok(())
}
