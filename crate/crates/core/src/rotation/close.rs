use serde::{Deserialize, Serialize};

use super::RotationError;
use crate::graph::Digraph;
use crate::rng::child_rng;

/// Which construction produced a closed cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RotationCase {
    /// `u_k → u_1` is an edge.
    Direct,
    /// The first `s` of `X` precede the last `s` of `Y`; five new edges.
    Case1,
    /// The first `s` of `Y` precede the last `s` of `X`; three new edges.
    Case2,
    /// Three-edge closure searched over all of `Y⁻ × X⁺`.
    Broad,
}

/// Why [`close_path`] found no cycle: the case that was tried and the two
/// position sets between which no usable edge existed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloseFailure {
    pub case: RotationCase,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

fn splice(path: &[usize], segments: &[(usize, usize)]) -> Vec<usize> {
    segments.iter().flat_map(|&(a, b)| path[a..=b].iter().copied()).collect()
}

/// Closes `path` into a cycle on the same vertices.
///
/// `xs` are positions `p` with `path[p] → path[0]` usable and `ys` positions
/// with `path[k-1] → path[p]` usable, both ascending; `green` decides which
/// non-path edges may be added. `X₁, X₂` (`Y₁, Y₂`) are the first and last
/// `s` entries of `xs` (`ys`) and `q` splits `X₁` and `Y₂` into quarters.
/// Positions are scanned in ascending order and the first valid witness wins.
pub fn close_path(
    path: &[usize],
    green: &dyn Fn(usize, usize) -> bool,
    xs: &[usize],
    ys: &[usize],
    s: usize,
    q: usize,
) -> Result<(Vec<usize>, RotationCase), CloseFailure> {
    let k = path.len();
    if k >= 2 && green(path[k - 1], path[0]) {
        return Ok((path.to_vec(), RotationCase::Direct));
    }
    let s = s.min(xs.len()).min(ys.len());
    if s == 0 {
        return Err(CloseFailure { case: RotationCase::Case2, from: Vec::new(), to: Vec::new() });
    }
    let (x1, x2) = (&xs[..s], &xs[xs.len() - s..]);
    let (y1, y2) = (&ys[..s], &ys[ys.len() - s..]);

    if x1[s - 1] < y2[0] {
        case1(path, green, x1, y2, q)
    } else if y1[s - 1] < x2[0] {
        case2(path, green, y1, x2)
    } else {
        Err(CloseFailure { case: RotationCase::Case1, from: x1.to_vec(), to: y2.to_vec() })
    }
}

fn case1(
    path: &[usize],
    green: &dyn Fn(usize, usize) -> bool,
    x1: &[usize],
    y2: &[usize],
    q: usize,
) -> Result<(Vec<usize>, RotationCase), CloseFailure> {
    let k = path.len();
    let s = x1.len();
    if q == 0 || q >= s {
        return Err(CloseFailure { case: RotationCase::Case1, from: Vec::new(), to: Vec::new() });
    }
    let (x11, x12) = x1.split_at(q);
    let (y21, y22) = y2.split_at(q);
    let x12_plus: Vec<usize> = x12.iter().map(|&p| p + 1).collect();
    let y21_minus: Vec<usize> = y21.iter().map(|&p| p - 1).collect();
    // Positions i with u_{i-1} ∈ X₁₁ sending a usable edge into X₁₂⁺.
    let x11_prime: Vec<usize> =
        x11.iter().filter(|&&p| x12_plus.iter().any(|&j| green(path[p], path[j]))).map(|&p| p + 1).collect();
    // Positions i' with u_{i'+1} ∈ Y₂₂ receiving a usable edge from Y₂₁⁻.
    let y22_prime: Vec<usize> =
        y22.iter().filter(|&&p| y21_minus.iter().any(|&j| green(path[j], path[p]))).map(|&p| p - 1).collect();

    for &ip in &y22_prime {
        for &i in &x11_prime {
            if !green(path[ip], path[i]) {
                continue;
            }
            for &j in x12_plus.iter().filter(|&&j| green(path[i - 1], path[j])) {
                for &jp in y21_minus.iter().filter(|&&jp| green(path[jp], path[ip + 1])) {
                    let ordered = 1 <= i && i < j && j <= jp && jp < ip && ip + 1 < k;
                    if !ordered {
                        continue;
                    }
                    let c = splice(path, &[(0, i - 1), (j, jp), (ip + 1, k - 1), (jp + 1, ip), (i, j - 1)]);
                    return Ok((c, RotationCase::Case1));
                }
            }
        }
    }
    Err(CloseFailure { case: RotationCase::Case1, from: y22_prime, to: x11_prime })
}

fn case2(
    path: &[usize],
    green: &dyn Fn(usize, usize) -> bool,
    y1: &[usize],
    x2: &[usize],
) -> Result<(Vec<usize>, RotationCase), CloseFailure> {
    let y1_minus: Vec<usize> = y1.iter().map(|&p| p - 1).collect();
    let x2_plus: Vec<usize> = x2.iter().map(|&p| p + 1).collect();
    three_edge_closure(path, green, &y1_minus, &x2_plus).ok_or(CloseFailure {
        case: RotationCase::Case2,
        from: y1_minus,
        to: x2_plus,
    })
    .map(|c| (c, RotationCase::Case2))
}

/// `u_1…u_i u_j…u_k u_{i+1}…u_{j-1}` for the first usable `u_i → u_j` with
/// `i` in `from`, `j` in `to` and `i + 1 < j`.
fn three_edge_closure(path: &[usize], green: &dyn Fn(usize, usize) -> bool, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    let k = path.len();
    for &i in from {
        for &j in to {
            if i + 1 < j && j < k && green(path[i], path[j]) {
                return Some(splice(path, &[(0, i), (j, k - 1), (i + 1, j - 1)]));
            }
        }
    }
    None
}

/// [`close_path`] with `X` the path in-neighbours of the start and `Y` the
/// path out-neighbours of the end under `green`, and `s, q` taken from
/// `min(|X|, |Y|)`. When that fails, every `Y⁻ × X⁺` pair is tried.
pub fn close_path_unstructured(path: &[usize], green: &dyn Fn(usize, usize) -> bool) -> Result<(Vec<usize>, RotationCase), CloseFailure> {
    let k = path.len();
    if k < 2 {
        return Err(CloseFailure { case: RotationCase::Direct, from: Vec::new(), to: Vec::new() });
    }
    let (a, b) = (path[0], path[k - 1]);
    let xs: Vec<usize> = (1..k - 1).filter(|&p| green(path[p], a)).collect();
    let ys: Vec<usize> = (1..k - 1).filter(|&p| green(b, path[p])).collect();
    let span = xs.len().min(ys.len());
    match close_path(path, green, &xs, &ys, span / 2, span / 4) {
        Ok(found) => Ok(found),
        Err(first) => {
            let y_minus: Vec<usize> = ys.iter().map(|&p| p - 1).collect();
            let x_plus: Vec<usize> = xs.iter().map(|&p| p + 1).collect();
            three_edge_closure(path, green, &y_minus, &x_plus).map(|c| (c, RotationCase::Broad)).ok_or(first)
        }
    }
}

/// A path together with its vertex classes `U`, `V` and the rotation parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationInstance {
    pub graph: Digraph,
    pub path: Vec<usize>,
    pub u_class: Vec<usize>,
    pub v_class: Vec<usize>,
    pub epsilon: f64,
    pub gamma: f64,
}

impl RotationInstance {
    pub fn m(&self) -> usize {
        self.u_class.len()
    }

    /// Positions `i` with `u_i ∈ U`, `u_{i+1} ∈ V` and `u_i → u_1`.
    pub fn x_positions(&self) -> Vec<usize> {
        let (in_u, in_v) = self.membership();
        let p = &self.path;
        (1..p.len().saturating_sub(1)).filter(|&i| in_u[p[i]] && in_v[p[i + 1]] && self.graph.has_edge(p[i], p[0])).collect()
    }

    /// Positions `i` with `u_i ∈ V`, `u_{i-1} ∈ U` and `u_k → u_i`.
    pub fn y_positions(&self) -> Vec<usize> {
        let (in_u, in_v) = self.membership();
        let p = &self.path;
        let last = p[p.len() - 1];
        (1..p.len().saturating_sub(1)).filter(|&i| in_v[p[i]] && in_u[p[i - 1]] && self.graph.has_edge(last, p[i])).collect()
    }

    fn membership(&self) -> (Vec<bool>, Vec<bool>) {
        let n = self.graph.n();
        let mut in_u = vec![false; n];
        let mut in_v = vec![false; n];
        for &u in &self.u_class {
            in_u[u] = true;
        }
        for &v in &self.v_class {
            in_v[v] = true;
        }
        (in_u, in_v)
    }

    /// Structural hypotheses, everything except the density condition.
    pub fn check_structure(&self) -> Result<(), RotationError> {
        let n = self.graph.n();
        let bad = |msg: String| Err(RotationError::HypothesisViolated(msg));
        if !(self.epsilon > 0.0 && self.gamma > 0.0 && self.gamma < 1.0) {
            return bad(format!("need 0 < epsilon and 0 < gamma < 1, got {} and {}", self.epsilon, self.gamma));
        }
        let m = self.m();
        if self.v_class.len() != m || m == 0 {
            return bad(format!("|U| = {m} and |V| = {} must be equal and positive", self.v_class.len()));
        }
        if n < 2 * m {
            return bad(format!("n = {n} < 2m = {}", 2 * m));
        }
        let (in_u, in_v) = self.membership();
        if (0..n).any(|x| in_u[x] && in_v[x]) {
            return bad("U and V intersect".into());
        }
        let p = &self.path;
        if p.len() < 2 {
            return bad("path has fewer than two vertices".into());
        }
        let mut seen = vec![false; n];
        for w in p.windows(2) {
            if !self.graph.has_edge(w[0], w[1]) {
                return bad(format!("path edge {}->{} missing", w[0], w[1]));
            }
        }
        for &x in p {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return bad(format!("path repeats or leaves the graph at {x}"));
            }
        }
        if !in_v[p[0]] || !in_u[p[p.len() - 1]] {
            return bad("path must start in V and end in U".into());
        }
        let need = self.gamma * m as f64;
        let (nx, ny) = (self.x_positions().len(), self.y_positions().len());
        if (nx as f64) < need || (ny as f64) < need {
            return bad(format!("|X| = {nx}, |Y| = {ny} below gamma*m = {need}"));
        }
        Ok(())
    }
}

/// Closes the instance's path into a cycle on the same vertices using at
/// most five new edges, removing only `X → X⁺` and `Y⁻ → Y` path edges.
///
/// The density condition is not re-verified here; see [`check_density_hypothesis`].
pub fn rotation_close(inst: &RotationInstance) -> Result<(Vec<usize>, RotationCase), RotationError> {
    inst.check_structure()?;
    let p = &inst.path;
    let k = p.len();
    if inst.graph.has_edge(p[k - 1], p[0]) {
        return Ok((p.clone(), RotationCase::Direct));
    }
    let m = inst.m() as f64;
    let s = (inst.gamma * m / 2.0 + 1e-9).floor() as usize;
    let q = (inst.gamma * m / 4.0 + 1e-9).floor() as usize;
    if q < 1 {
        return Err(RotationError::HypothesisViolated(format!("gamma*m/4 = {} < 1", inst.gamma * m / 4.0)));
    }
    let g = &inst.graph;
    let green = |a: usize, b: usize| g.has_edge(a, b);
    close_path(p, &green, &inst.x_positions(), &inst.y_positions(), s, q)
        .map_err(|f| RotationError::NoClosingEdge { case: f.case, from: pos_to_vertices(p, &f.from), to: pos_to_vertices(p, &f.to) })
}

fn pos_to_vertices(path: &[usize], pos: &[usize]) -> Vec<usize> {
    pos.iter().map(|&i| path[i]).collect()
}

/// Checks the postconditions of a closing. The cycle must have the vertex set
/// of the path and use at most `max_new` new edges. Every removed path edge
/// must have the form `X → X⁺` or `Y⁻ → Y`. Returns the number of new edges.
pub fn check_rotation(
    path: &[usize],
    cycle: &[usize],
    host: &dyn Fn(usize, usize) -> bool,
    x_positions: &[usize],
    y_positions: &[usize],
    max_new: usize,
) -> Result<usize, String> {
    let mut a = path.to_vec();
    let mut b = cycle.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || a.windows(2).any(|w| w[0] == w[1]) {
        return Err("cycle and path have different vertex sets".into());
    }
    let k = path.len();
    let pos: std::collections::HashMap<usize, usize> = path.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let is_path_edge = |u: usize, v: usize| pos[&v] == pos[&u] + 1;
    let mut new_edges = 0;
    let mut kept = vec![false; k.saturating_sub(1)];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if is_path_edge(u, v) {
            kept[pos[&u]] = true;
        } else if host(u, v) {
            new_edges += 1;
        } else {
            return Err(format!("cycle edge {u}->{v} is not in the host"));
        }
    }
    if new_edges > max_new {
        return Err(format!("{new_edges} new edges exceed {max_new}"));
    }
    for (p, &k) in kept.iter().enumerate() {
        if !k && !x_positions.contains(&p) && !y_positions.contains(&(p + 1)) {
            return Err(format!("removed path edge {}->{} is neither X->X+ nor Y-->Y", path[p], path[p + 1]));
        }
    }
    Ok(new_edges)
}

/// Verdict of [`check_density_hypothesis`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityVerdict {
    pub holds: bool,
    /// `true` when every qualifying `(S, T)` was examined.
    pub exact: bool,
    /// Smallest `e(S,T) / (γ|S||T|/2)` seen.
    pub worst_ratio: f64,
}

/// Checks `e(S,T) ≥ γ|S||T|/2` for `S ⊆ U`, `T ⊆ V`, `|S|,|T| ≥ εm`.
///
/// For `m ≤ 20` every `S` is enumerated and, for each size of `T`, only the
/// `T` with the fewest edges from `S` is examined, which decides the
/// condition exactly. Larger instances draw `trials` random `S` and can only
/// refute.
pub fn check_density_hypothesis(inst: &RotationInstance, trials: usize, seed: u64) -> DensityVerdict {
    use rand::seq::index::sample;
    use rand::Rng as _;
    let m = inst.m();
    let min_size = ((inst.epsilon * m as f64) - 1e-9).ceil().max(1.0) as usize;
    let g = &inst.graph;
    let mut worst = f64::INFINITY;
    let mut examine = |s: &[usize]| {
        let mut cols: Vec<usize> = inst.v_class.iter().map(|&v| s.iter().filter(|&&u| g.has_edge(u, v)).count()).collect();
        cols.sort_unstable();
        let mut prefix = 0usize;
        for (t, &c) in cols.iter().enumerate() {
            prefix += c;
            let size = t + 1;
            if size >= min_size {
                let bound = inst.gamma * (s.len() * size) as f64 / 2.0;
                worst = worst.min(prefix as f64 / bound);
            }
        }
    };
    let exact = m <= 20;
    if exact {
        for mask in 0u32..(1u32 << m) {
            if (mask.count_ones() as usize) < min_size {
                continue;
            }
            let s: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| inst.u_class[i]).collect();
            examine(&s);
        }
    } else {
        let mut rng = child_rng(seed, 0);
        for _ in 0..trials {
            let size = rng.gen_range(min_size.min(m)..=m);
            let s: Vec<usize> = sample(&mut rng, m, size).into_iter().map(|i| inst.u_class[i]).collect();
            examine(&s);
        }
    }
    DensityVerdict { holds: worst >= 1.0 - 1e-12, exact, worst_ratio: worst }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_uv_instance(m: usize) -> RotationInstance {
        // U = 0..m, V = m..2m, path V U V U ... ending in U.
        let u: Vec<usize> = (0..m).collect();
        let v: Vec<usize> = (m..2 * m).collect();
        let mut path = Vec::new();
        for i in 0..m {
            path.push(v[i]);
            path.push(u[i]);
        }
        let mut g = Digraph::empty(2 * m);
        for w in path.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        for &a in &u {
            for &b in &v {
                if a != path[2 * m - 1] || b != path[0] {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        RotationInstance { graph: g, path, u_class: u, v_class: v, epsilon: 0.1, gamma: 0.5 }
    }

    #[test]
    fn direct_closure_uses_one_new_edge() {
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let green = |a: usize, b: usize| g.has_edge(a, b);
        let (c, case) = close_path(&[0, 1, 2], &green, &[], &[], 0, 0).unwrap();
        assert_eq!((c, case), (vec![0, 1, 2], RotationCase::Direct));
    }

    #[test]
    fn complete_between_classes_m12() {
        let inst = complete_uv_instance(12);
        assert!(check_density_hypothesis(&inst, 0, 0).holds);
        let (c, case) = rotation_close(&inst).unwrap();
        let host = |a: usize, b: usize| inst.graph.has_edge(a, b);
        let new = check_rotation(&inst.path, &c, &host, &inst.x_positions(), &inst.y_positions(), 5).unwrap();
        assert_eq!(case, RotationCase::Case1);
        assert_eq!(new, 5);
    }

    #[test]
    fn small_x_violates_hypothesis() {
        let mut inst = complete_uv_instance(12);
        for &x in &inst.u_class.clone() {
            inst.graph.remove_edge(x, inst.path[0]);
        }
        assert!(matches!(rotation_close(&inst), Err(RotationError::HypothesisViolated(_))));
    }

    #[test]
    fn tiny_gamma_m_rejected() {
        let mut inst = complete_uv_instance(6);
        inst.gamma = 0.6;
        assert!(matches!(rotation_close(&inst), Err(RotationError::HypothesisViolated(_))));
    }

    #[test]
    fn case_two_when_y_precedes_x() {
        // Path 0..9; X late (7, 8 send to 0), Y early (2, 3 receive from 9).
        let k = 10;
        let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        edges.extend([(7, 0), (6, 0), (9, 2), (9, 3), (1, 8)]);
        let g = Digraph::from_edges(k, &edges).unwrap();
        let green = |a: usize, b: usize| g.has_edge(a, b);
        let path: Vec<usize> = (0..k).collect();
        let (c, case) = close_path(&path, &green, &[6, 7], &[2, 3], 1, 0).unwrap();
        assert_eq!(case, RotationCase::Case2);
        let new = check_rotation(&path, &c, &green, &[6, 7], &[2, 3], 3).unwrap();
        assert_eq!(new, 3);
    }
}
