use hamdecomp::decompose::{almost_hamilton_decomposition, verify_decomposition, DecomposerConfig, StopReason};
use hamdecomp::graph::generate::{circulant_tournament, default_mix_steps, random_almost_regular_oriented, random_regular_tournament};
use hamdecomp::oracle::max_edge_disjoint_hamilton_cycles;

#[test]
fn gamma_sweep_stays_valid() {
    let t = random_regular_tournament(51, default_mix_steps(51), 21).unwrap();
    for gamma in [0.05, 0.08, 0.12, 0.16, 0.2] {
        let cfg = DecomposerConfig { gamma, ..DecomposerConfig::with_seed(3) };
        let r = almost_hamilton_decomposition(&t, &cfg).unwrap();
        assert!(verify_decomposition(&t, &r.cycles).valid, "gamma {gamma}");
        assert!(r.conserves(t.edge_count()));
        // At n = 51 a 5% reserve has semidegree about 1 and cannot merge anything.
        assert!(gamma < 0.08 || !r.cycles.is_empty(), "gamma {gamma}");
        let total: usize = r.stats.provenance.iter().map(|p| p.factor_edges + p.reserve_edges).sum();
        assert_eq!(total, 51 * r.cycles.len());
    }
}

#[test]
fn almost_regular_input() {
    let g = random_almost_regular_oriented(80, 0.45, 0.02, 9).unwrap();
    let r = almost_hamilton_decomposition(&g, &DecomposerConfig::with_seed(1)).unwrap();
    assert!(verify_decomposition(&g, &r.cycles).valid);
    assert!(r.conserves(g.edge_count()));
    assert!(r.cycles.len() >= 10, "{} cycles", r.cycles.len());
}

#[test]
fn sparse_input_warns() {
    let g = random_almost_regular_oriented(60, 0.3, 0.02, 2).unwrap();
    let r = almost_hamilton_decomposition(&g, &DecomposerConfig::with_seed(1)).unwrap();
    assert!(r.stats.warnings.iter().any(|w| w.contains("3n/8")));
    assert!(verify_decomposition(&g, &r.cycles).valid);
}

#[test]
fn circulants_reach_the_exact_optimum() {
    for n in [5usize, 7] {
        let conn: Vec<usize> = (1..=(n - 1) / 2).collect();
        let g = circulant_tournament(n, &conn).unwrap();
        let r = almost_hamilton_decomposition(&g, &DecomposerConfig::with_seed(0)).unwrap();
        let best = max_edge_disjoint_hamilton_cycles(&g).unwrap().count;
        assert!(r.cycles.len() <= best);
        assert_eq!(r.stats.stop_reason, StopReason::CoreExhausted);
    }
}

#[test]
fn report_json_is_stable() {
    let t = random_regular_tournament(25, default_mix_steps(25), 2).unwrap();
    let cfg = DecomposerConfig::with_seed(8);
    let a = almost_hamilton_decomposition(&t, &cfg).unwrap().to_json();
    let b = almost_hamilton_decomposition(&t, &cfg).unwrap().to_json();
    assert_eq!(a, b);
    let keys: Vec<&str> = a.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    assert_eq!(keys, ["n", "cycles", "leftover_edges", "reserve_residue", "stats", "fraction"]);
}
