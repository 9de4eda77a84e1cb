use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use hamdecomp::bipartite::BipartiteGraph;
use hamdecomp::decompose::{almost_hamilton_decomposition, verify_decomposition, DecomposerConfig, DecompositionVerdict, Violation};
use hamdecomp::graph::generate::{default_mix_steps, degree_window, random_almost_regular_oriented, random_regular_tournament, regular_circulant};
use hamdecomp::graph::io::{parse_digraph, parse_oriented, write_graph};
use hamdecomp::oracle::{exhaustive_hamilton_decomposition, for_each_regular_tournament, matching_count_bounds};
use hamdecomp::Digraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{CliError, Format, Globals, Output};

/// Relative tolerance of the bound sandwich.
pub const SANDWICH_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Regular,
    AlmostRegular,
    Circulant,
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GraphKind,
    #[arg(long)]
    pub n: usize,
    /// Required for the random kinds.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.02)]
    pub eta: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct DecomposeArgs {
    /// Graph file.
    pub input: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = DecomposerConfig::default().gamma)]
    pub gamma: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// Decomposition report; only its `cycles` field is read.
    pub report: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct KellyArgs {
    #[arg(long)]
    pub n: usize,
    /// Permit n = 9, which takes far longer.
    #[arg(long)]
    pub allow_nine: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// Graph file; the bounds refer to its bipartite double cover.
    pub graph: PathBuf,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

pub fn gen(a: &GenArgs, _: Globals) -> Result<Output, CliError> {
    let input = |e: hamdecomp::GraphError| CliError::Input(e.to_string());
    let need_seed = || a.seed.ok_or_else(|| CliError::Input(format!("--seed is required for --kind {:?}", a.kind)));
    let g: Digraph = match a.kind {
        GraphKind::Circulant => regular_circulant(a.n).map_err(input)?.into_oriented().into_digraph(),
        GraphKind::Regular => random_regular_tournament(a.n, default_mix_steps(a.n), need_seed()?).map_err(input)?.into_oriented().into_digraph(),
        GraphKind::AlmostRegular => {
            let g = random_almost_regular_oriented(a.n, a.alpha, a.eta, need_seed()?).map_err(input)?.into_digraph();
            let (lo, hi) = degree_window(a.n, a.alpha, a.eta);
            let p = g.semidegrees();
            if p.min < lo || p.max > hi {
                return Err(CliError::Internal(format!("semidegrees [{}, {}] leave the window [{lo}, {hi}]", p.min, p.max)));
            }
            g
        }
    };
    Ok(Output::ok(write_graph(&g)))
}

pub fn decompose(a: &DecomposeArgs, globals: Globals) -> Result<Output, CliError> {
    let g = parse_oriented(&read_file(&a.input)?).map_err(|e| CliError::Input(e.to_string()))?;
    let cfg = DecomposerConfig { gamma: a.gamma, ..DecomposerConfig::with_seed(a.seed) };
    let report = almost_hamilton_decomposition(&g, &cfg).map_err(|e| CliError::Input(e.to_string()))?;
    let verdict = verify_decomposition(g.as_digraph(), &report.cycles);
    let mut body = match globals.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "n {}", report.n).unwrap();
            writeln!(s, "cycles {}", report.cycles.len()).unwrap();
            writeln!(s, "fraction {:.4}", report.fraction).unwrap();
            writeln!(s, "leftover_edges {}", report.leftover_edges).unwrap();
            writeln!(s, "reserve_residue {}", report.reserve_residue).unwrap();
            writeln!(s, "stop_reason {:?}", report.stats.stop_reason).unwrap();
            for w in &report.stats.warnings {
                writeln!(s, "warning {w}").unwrap();
            }
            s
        }
    };
    let failure = (!verdict.valid).then(|| CliError::Internal(format!("decomposer emitted an invalid packing: {:?}", verdict.violation)));
    if failure.is_some() && globals.format == Format::Text {
        body.push_str("verification FAILED\n");
    }
    Ok(Output { body, failure, inputs: vec![a.input.clone()] })
}

#[derive(Deserialize)]
struct CyclesOnly {
    #[serde(default)]
    cycles: Vec<Vec<usize>>,
}

fn describe(v: &Violation) -> String {
    match *v {
        Violation::NotPermutation { cycle } => format!("cycle {cycle} is not a permutation of the vertices"),
        Violation::MissingEdge { cycle, from, to } => format!("cycle {cycle} uses {from} -> {to}, which is not an edge"),
        Violation::DuplicateEdge { first, second, from, to } => format!("cycles {first} and {second} both use {from} -> {to}"),
    }
}

pub fn verify(a: &VerifyArgs, globals: Globals) -> Result<Output, CliError> {
    let g = parse_digraph(&read_file(&a.graph)?).map_err(|e| CliError::Input(e.to_string()))?;
    let text = read_file(&a.report)?;
    let cycles = if text.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str::<CyclesOnly>(&text).map_err(|e| CliError::Input(format!("report: {e}")))?.cycles
    };
    let verdict: DecompositionVerdict = verify_decomposition(&g, &cycles);
    let body = match globals.format {
        Format::Json => json_line(&verdict),
        Format::Text => match &verdict.violation {
            None => format!("valid {} cycles\n", verdict.cycles),
            Some(v) => format!("invalid {}\n", describe(v)),
        },
    };
    let failure = verdict.violation.as_ref().map(|v| CliError::Verification(describe(v)));
    Ok(Output { body, failure, inputs: vec![a.graph.clone(), a.report.clone()] })
}

#[derive(Debug, Serialize)]
struct KellySummary {
    n: usize,
    enumerated: usize,
    decomposed: usize,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Internal(e.to_string()))
}

pub fn kelly_check(a: &KellyArgs, globals: Globals) -> Result<Output, CliError> {
    let mut all = Vec::new();
    for_each_regular_tournament(a.n, a.allow_nine, |t| all.push(t.clone())).map_err(|e| CliError::Input(e.to_string()))?;
    let results: Vec<bool> = pool(globals.jobs)?.install(|| {
        all.par_iter().map(|t| matches!(exhaustive_hamilton_decomposition(t), Ok(Some(_)))).collect()
    });
    let summary = KellySummary { n: a.n, enumerated: all.len(), decomposed: results.iter().filter(|&&ok| ok).count() };
    let body = match globals.format {
        Format::Json => json_line(&summary),
        Format::Text => format!("n {} decomposed {}/{}\n", summary.n, summary.decomposed, summary.enumerated),
    };
    let failure = (summary.decomposed != summary.enumerated)
        .then(|| CliError::Verification(format!("{} tournaments without a decomposition", summary.enumerated - summary.decomposed)));
    Ok(Output { body, failure, inputs: Vec::new() })
}

#[derive(Debug, Serialize)]
struct BoundsRow {
    n: usize,
    rho: Option<usize>,
    vdw_lower: Option<f64>,
    exact: Option<String>,
    bregman_upper: f64,
    sandwich: bool,
}

pub fn bounds(a: &BoundsArgs, globals: Globals) -> Result<Output, CliError> {
    let g = parse_digraph(&read_file(&a.graph)?).map_err(|e| CliError::Input(e.to_string()))?;
    let b = BipartiteGraph::double_cover(&g);
    let r = matching_count_bounds(&b).map_err(|e| CliError::Input(e.to_string()))?;
    let row = BoundsRow {
        n: g.n(),
        rho: r.rho,
        vdw_lower: r.vdw_lower,
        exact: r.exact.map(|e| e.to_string()),
        bregman_upper: r.bregman_upper,
        sandwich: r.sandwich_holds(SANDWICH_TOLERANCE),
    };
    let body = match globals.format {
        Format::Json => json_line(&row),
        Format::Text => {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            format!(
                "lower {}\nexact {}\nupper {:.6e}\nsandwich {}\n",
                opt(row.vdw_lower.map(|x| format!("{x:.6e}"))),
                opt(row.exact.clone()),
                row.bregman_upper,
                if row.sandwich { "holds" } else { "VIOLATED" }
            )
        }
    };
    let failure = (!row.sandwich).then(|| CliError::Verification("bound sandwich violated".into()));
    Ok(Output { body, failure, inputs: vec![a.graph.clone()] })
}
