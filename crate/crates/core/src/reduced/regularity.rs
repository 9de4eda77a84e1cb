use rand::seq::index::sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::ReducedError;
use crate::bipartite::BipartiteGraph;
use crate::rng::child_rng;

/// Largest class size the exhaustive scan accepts.
pub const EXHAUSTIVE_LIMIT: usize = 18;

const SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityMode {
    /// Every qualifying `X` is enumerated; exact.
    Exhaustive,
    /// Random qualifying `(X, Y)`; can refute, cannot certify.
    Sampled { trials: usize, seed: u64 },
}

/// A pair of subsets and how far its density is from the reference density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub density: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub holds: bool,
    /// True for an exhaustive scan.
    pub exact: bool,
    pub reference_density: f64,
    pub worst: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub side: Side,
    pub vertex: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperRegularityVerdict {
    pub holds: bool,
    pub density_window: RegularityVerdict,
    pub degree_window_holds: bool,
    pub degree_violations: Vec<DegreeViolation>,
}

/// `⌈x⌉` that ignores float noise just above an integer, and at least 1.
fn min_size(eps: f64, m: usize) -> usize {
    let x = eps * m as f64;
    let r = x.round();
    let c = if (x - r).abs() < 1e-9 { r } else { x.ceil() };
    (c as usize).max(1)
}

fn transpose(b: &BipartiteGraph) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = b.edges().into_iter().map(|(x, y)| (y, x)).collect();
    BipartiteGraph::from_edges(b.right_size(), b.left_size(), &edges)
}

fn better(dev: f64, size: usize, best: &Option<Witness>) -> bool {
    match best {
        None => true,
        Some(w) => dev > w.deviation + SLACK || (dev > w.deviation - SLACK && size > w.xs.len() + w.ys.len()),
    }
}

/// Worst `|d(X,Y) - reference|` over all `X ⊆ A` with `|X| ≥ tx` and
/// `Y ⊆ B` with `|Y| ≥ ty`. For a fixed `X` the extreme `Y` of each size
/// takes the columns with the most (fewest) neighbours in `X`; ties prefer
/// larger sets.
fn exhaustive_scan(b: &BipartiteGraph, tx: usize, ty: usize, reference: f64) -> Option<Witness> {
    let (l, r) = (b.left_size(), b.right_size());
    let cols: Vec<u32> = (0..r).map(|y| b.right_neighbors(y).fold(0u32, |acc, x| acc | (1 << x))).collect();
    let mut best: Option<Witness> = None;
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(r);
    for mask in 1u32..(1u32 << l) {
        let sx = mask.count_ones() as usize;
        if sx < tx {
            continue;
        }
        order.clear();
        order.extend(cols.iter().enumerate().map(|(y, c)| ((c & mask).count_ones() as usize, y)));
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let total: usize = order.iter().map(|p| p.0).sum();
        let mut prefix = vec![0usize; r + 1];
        for (i, p) in order.iter().enumerate() {
            prefix[i + 1] = prefix[i] + p.0;
        }
        for k in ty..=r {
            let cells = (sx * k) as f64;
            let hi = prefix[k] as f64 / cells;
            let lo = (total - prefix[r - k]) as f64 / cells;
            for (density, top) in [(hi, true), (lo, false)] {
                let dev = (density - reference).abs();
                if better(dev, sx + k, &best) {
                    let xs = (0..l).filter(|&x| mask >> x & 1 == 1).collect();
                    let mut ys: Vec<usize> =
                        if top { order[..k].iter().map(|p| p.1).collect() } else { order[r - k..].iter().map(|p| p.1).collect() };
                    ys.sort_unstable();
                    best = Some(Witness { xs, ys, density, deviation: dev });
                }
            }
        }
    }
    best
}

fn sampled_scan(b: &BipartiteGraph, tx: usize, ty: usize, reference: f64, trials: usize, seed: u64) -> Option<Witness> {
    let (l, r) = (b.left_size(), b.right_size());
    let mut best: Option<Witness> = None;
    for t in 0..trials {
        let mut rng = child_rng(seed, t as u64);
        let sx = rng.gen_range(tx..=l);
        let sy = rng.gen_range(ty..=r);
        let mut xs = sample(&mut rng, l, sx).into_vec();
        let mut ys = sample(&mut rng, r, sy).into_vec();
        xs.sort_unstable();
        ys.sort_unstable();
        let density = b.subset_density(&xs, &ys);
        let dev = (density - reference).abs();
        if better(dev, sx + sy, &best) {
            best = Some(Witness { xs, ys, density, deviation: dev });
        }
    }
    best
}

fn density_scan(b: &BipartiteGraph, eps: f64, reference: f64, mode: RegularityMode) -> Result<(Option<Witness>, bool), ReducedError> {
    let (l, r) = (b.left_size(), b.right_size());
    if l == 0 || r == 0 {
        return Ok((None, matches!(mode, RegularityMode::Exhaustive)));
    }
    let (tx, ty) = (min_size(eps, l), min_size(eps, r));
    match mode {
        RegularityMode::Exhaustive => {
            if l.min(r) > EXHAUSTIVE_LIMIT {
                return Err(ReducedError::TooLargeForExhaustive { size: l.min(r), limit: EXHAUSTIVE_LIMIT });
            }
            if l <= r {
                Ok((exhaustive_scan(b, tx, ty, reference), true))
            } else {
                let w = exhaustive_scan(&transpose(b), ty, tx, reference)
                    .map(|w| Witness { xs: w.ys, ys: w.xs, density: w.density, deviation: w.deviation });
                Ok((w, true))
            }
        }
        RegularityMode::Sampled { trials, seed } => Ok((sampled_scan(b, tx, ty, reference, trials, seed), false)),
    }
}

fn check_tolerances(eps: f64, eps_prime: f64) -> Result<(), ReducedError> {
    if !(eps > 0.0 && eps < 1.0 && eps_prime > 0.0 && eps_prime < 1.0) {
        return Err(ReducedError::InvalidParameter(format!("tolerances must lie in (0,1): eps={eps}, eps'={eps_prime}")));
    }
    Ok(())
}

/// Tests `|d(A,B) - d(X,Y)| < ε′` for all `|X| ≥ ε|A|`, `|Y| ≥ ε|B|`.
pub fn check_regularity(pair: &BipartiteGraph, eps: f64, eps_prime: f64, mode: RegularityMode) -> Result<RegularityVerdict, ReducedError> {
    check_tolerances(eps, eps_prime)?;
    let reference = pair.density();
    let (worst, exact) = density_scan(pair, eps, reference, mode)?;
    let holds = worst.as_ref().is_none_or(|w| w.deviation < eps_prime);
    Ok(RegularityVerdict { holds, exact, reference_density: reference, worst })
}

/// `(ε, d)`-super-regularity: every qualifying `d(X,Y)` within `d ± ε`, and
/// every degree within `(d ± ε)` times the opposite class size. The degree
/// audit is always exact.
pub fn check_super_regularity(pair: &BipartiteGraph, eps: f64, d: f64, mode: RegularityMode) -> Result<SuperRegularityVerdict, ReducedError> {
    check_tolerances(eps, eps)?;
    let (worst, exact) = density_scan(pair, eps, d, mode)?;
    let density_holds = worst.as_ref().is_none_or(|w| w.deviation <= eps + SLACK);
    let density_window = RegularityVerdict { holds: density_holds, exact, reference_density: d, worst };

    let (l, r) = (pair.left_size(), pair.right_size());
    let inside = |deg: usize, other: usize| {
        let x = deg as f64;
        x >= (d - eps) * other as f64 - SLACK && x <= (d + eps) * other as f64 + SLACK
    };
    let mut degree_violations = Vec::new();
    for a in 0..l {
        let degree = pair.left_degree(a);
        if !inside(degree, r) {
            degree_violations.push(DegreeViolation { side: Side::Left, vertex: a, degree });
        }
    }
    for b in 0..r {
        let degree = pair.right_degree(b);
        if !inside(degree, l) {
            degree_violations.push(DegreeViolation { side: Side::Right, vertex: b, degree });
        }
    }
    let degree_window_holds = degree_violations.is_empty();
    Ok(SuperRegularityVerdict {
        holds: density_holds && degree_window_holds,
        density_window,
        degree_window_holds,
        degree_violations,
    })
}
