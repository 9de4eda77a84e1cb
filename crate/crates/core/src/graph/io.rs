//! Plain-text formats.
//!
//! Graph: a header line `n m`, then `m` lines `u v`, 0-indexed, sorted. A
//! factor is written in the same format with one `x succ(x)` line per vertex,
//! so every factor file is also a graph file. Partitions are
//! `cluster_id vertex_id` lines and multidigraphs are `i j mult` lines after
//! an `L k` header. Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use super::{Digraph, GraphError, OneFactor, OrientedGraph};

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

/// Non-empty, comment-stripped lines as `(1-based line number, tokens)`.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_fields<const K: usize>(line: usize, tokens: &[&str]) -> Result<[usize; K], GraphError> {
    if tokens.len() != K {
        return Err(parse_err(line, format!("expected {K} integers, found {} fields", tokens.len())));
    }
    let mut out = [0usize; K];
    for (slot, tok) in out.iter_mut().zip(tokens) {
        *slot = tok.parse().map_err(|_| parse_err(line, format!("`{tok}` is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Edge list with its `n m` header.
fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), GraphError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let [n, m] = parse_fields::<2>(hline, &header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, tokens) in lines {
        let [u, v] = parse_fields::<2>(line, &tokens)?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}

pub fn write_graph(g: &Digraph) -> String {
    let mut s = String::with_capacity(12 * (g.edge_count() + 1));
    writeln!(s, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_digraph(text: &str) -> Result<Digraph, GraphError> {
    let (n, edges) = parse_edge_list(text)?;
    Digraph::from_edges(n, &edges)
}

pub fn parse_oriented(text: &str) -> Result<OrientedGraph, GraphError> {
    let (n, edges) = parse_edge_list(text)?;
    OrientedGraph::build(n, &edges)
}

pub fn write_factor(f: &OneFactor) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", f.n(), f.n()).unwrap();
    for (x, y) in f.edges() {
        writeln!(s, "{x} {y}").unwrap();
    }
    s
}

pub fn parse_factor(text: &str) -> Result<OneFactor, GraphError> {
    let (n, edges) = parse_edge_list(text)?;
    let mut succ = vec![usize::MAX; n];
    for (x, y) in edges {
        if std::mem::replace(&mut succ[x], y) != usize::MAX {
            return Err(GraphError::NotAPermutation { vertex: x });
        }
    }
    if let Some(x) = succ.iter().position(|&y| y == usize::MAX) {
        return Err(GraphError::NotAPermutation { vertex: x });
    }
    OneFactor::from_successors(succ)
}

/// `cluster_id vertex_id` lines, clusters in order, vertices in the given order.
pub fn write_partition(clusters: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for (c, members) in clusters.iter().enumerate() {
        for v in members {
            writeln!(s, "{c} {v}").unwrap();
        }
    }
    s
}

pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (line, tokens) in data_lines(text) {
        let [c, v] = parse_fields::<2>(line, &tokens)?;
        if c >= clusters.len() {
            clusters.resize(c + 1, Vec::new());
        }
        clusters[c].push(v);
    }
    Ok(clusters)
}

/// Header `L k`, then `k` lines `i j mult` in the given order.
pub fn write_multiplicities(clusters: usize, entries: &[(usize, usize, usize)]) -> String {
    let mut s = String::new();
    writeln!(s, "{clusters} {}", entries.len()).unwrap();
    for (i, j, mult) in entries {
        writeln!(s, "{i} {j} {mult}").unwrap();
    }
    s
}

pub fn parse_multiplicities(text: &str) -> Result<(usize, Vec<(usize, usize, usize)>), GraphError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `L k` header"))?;
    let [l, k] = parse_fields::<2>(hline, &header)?;
    let mut entries = Vec::with_capacity(k);
    for (line, tokens) in lines {
        let [i, j, mult] = parse_fields::<3>(line, &tokens)?;
        if i >= l || j >= l {
            return Err(parse_err(line, format!("cluster out of range for L = {l}")));
        }
        entries.push((i, j, mult));
    }
    if entries.len() != k {
        return Err(parse_err(hline, format!("header announces {k} entries, found {}", entries.len())));
    }
    Ok((l, entries))
}
