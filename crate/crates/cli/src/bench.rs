use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, ValueEnum};
use hamdecomp::decompose::{almost_hamilton_decomposition, regular_trim, reserve_split, DecomposerConfig};
use hamdecomp::factor::{few_cycle_one_factor, maximum_matching, FewCycleParams};
use hamdecomp::flow::{prescribed_subgraph, DegreePrescription};
use hamdecomp::graph::generate::{default_mix_steps, random_regular_tournament};
use hamdecomp::reduced::random_pair;
use hamdecomp::rng::derive_seed;
use hamdecomp::rotation::{merge_into_hamilton, MergeOptions, ReserveGraph};
use hamdecomp::Digraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Format, Globals, Output};

pub const REPETITIONS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Matching,
    Flow,
    Rotation,
    Decompose,
}

impl Suite {
    fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Matching => vec![100, 1000],
            Suite::Flow => vec![100, 400],
            Suite::Rotation => vec![51, 101],
            Suite::Decompose => vec![25, 51, 101],
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Comma-separated sizes; each suite has its own default sweep.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Serialize)]
struct Row {
    suite: Suite,
    size: usize,
    median_ms: f64,
    reps: usize,
    /// Achieved fraction of `(n-1)/2` for the decompose suite.
    fraction: Option<f64>,
}

/// Builds one instance and times the operation on it; returns the time in
/// milliseconds and the decompose fraction.
fn one_run(suite: Suite, size: usize, seed: u64) -> Result<(f64, Option<f64>), CliError> {
    let internal = |e: String| CliError::Internal(e);
    match suite {
        Suite::Matching => {
            let b = random_pair(size, size, 0.5, seed);
            let t = Instant::now();
            std::hint::black_box(maximum_matching(&b));
            Ok((t.elapsed().as_secs_f64() * 1e3, None))
        }
        Suite::Flow => {
            let b = random_pair(size, size, 0.5, seed);
            let p = DegreePrescription::new(size * 2 / 5, vec![0; size], vec![0; size]).map_err(|e| internal(e.to_string()))?;
            let t = Instant::now();
            std::hint::black_box(prescribed_subgraph(&b, &p).map_err(|e| internal(e.to_string()))?);
            Ok((t.elapsed().as_secs_f64() * 1e3, None))
        }
        Suite::Rotation => {
            let g = random_regular_tournament(size, default_mix_steps(size), seed).map_err(|e| internal(e.to_string()))?;
            let split = reserve_split(g.as_tournament().as_oriented(), 0.12, derive_seed(seed, 1)).map_err(|e| internal(e.to_string()))?;
            let core = regular_trim(&split.core);
            let rho = core.semidegrees().min;
            let f = few_cycle_one_factor(&core, &Digraph::empty(size), &FewCycleParams::for_host(size, rho), derive_seed(seed, 2))
                .map_err(|e| internal(e.to_string()))?;
            let reserve = ReserveGraph::from_digraph(&split.reserve);
            let t = Instant::now();
            let _ = std::hint::black_box(merge_into_hamilton(&f.factor, &reserve, &MergeOptions { floor: 0, budget: None }));
            Ok((t.elapsed().as_secs_f64() * 1e3, None))
        }
        Suite::Decompose => {
            let g = random_regular_tournament(size, default_mix_steps(size), seed).map_err(|e| internal(e.to_string()))?;
            let t = Instant::now();
            let r = almost_hamilton_decomposition(g.as_tournament().as_oriented(), &DecomposerConfig::with_seed(seed))
                .map_err(|e| internal(e.to_string()))?;
            Ok((t.elapsed().as_secs_f64() * 1e3, Some(r.fraction)))
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

/// Median of [`REPETITIONS`] runs per size. Every repetition uses the same
/// instance seed, so only the timing varies between them.
pub fn bench(a: &BenchArgs, globals: Globals) -> Result<Output, CliError> {
    let sizes = if a.sizes.is_empty() { a.suite.default_sizes() } else { a.sizes.clone() };
    if sizes.contains(&0) {
        return Err(CliError::Input("sizes must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(globals.jobs).build().map_err(|e| CliError::Internal(e.to_string()))?;
    let mut rows = Vec::new();
    for &size in &sizes {
        let seed = derive_seed(a.seed, size as u64);
        let runs: Vec<(f64, Option<f64>)> =
            pool.install(|| (0..REPETITIONS).into_par_iter().map(|_| one_run(a.suite, size, seed)).collect::<Result<_, _>>())?;
        let fraction = runs[0].1;
        rows.push(Row { suite: a.suite, size, median_ms: median(runs.into_iter().map(|r| r.0).collect()), reps: REPETITIONS, fraction });
    }
    let body = match globals.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::from("suite size median_ms fraction\n");
            for r in &rows {
                let frac = r.fraction.map_or("-".to_string(), |f| format!("{f:.4}"));
                writeln!(s, "{:?} {} {:.3} {}", r.suite, r.size, r.median_ms, frac).unwrap();
            }
            s
        }
    };
    Ok(Output::ok(body))
}
