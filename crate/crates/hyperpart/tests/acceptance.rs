//! Acceptance suite. Each test covers one numbered criterion and prints one
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::time::Instant;

use common::*;
use hyperpart::cli::check_determinism;
use hyperpart::coarsen::coarsen_chain;
use hyperpart::hypergraph::Hypergraph;
use hyperpart::initial::compute_gains;
use hyperpart::io::partition_bytes;
use hyperpart::kway::{bipartition, kway_partition};
use hyperpart::matching::{compute_matching, groups_of, MatchingPolicy};
use hyperpart::metrics::{cut, imbalance};
use hyperpart::params::{Imbalance, Params};
use hyperpart::refine::{project, refine};

fn pass(n: u32, slug: &str, detail: String) {
    println!("[acceptance] criterion {n} ({slug}): PASS - {detail}");
}

/// The twenty instances shared by criteria 2 through 5: unit weights, sizes
/// up to 50k nodes, policies rotating through all five.
fn determinism_instances() -> Vec<(Hypergraph, Params)> {
    (0..20)
        .map(|i| {
            let nodes = 2_000 + i * 2_500;
            let mut rng = TestRng::new(0xD100 + i as u64);
            let h = random_hypergraph(&mut rng, nodes, nodes, 6, false);
            let params = Params {
                policy: MatchingPolicy::ALL[i % 5],
                ..Params::default()
            };
            (h, params)
        })
        .collect()
}

#[test]
fn criterion_01_gain_oracle() {
    let start = Instant::now();
    let mut rng = TestRng::new(0xC1);
    let mut checked = 0usize;
    for i in 0..500 {
        let nodes = rng.range(1, 12);
        let hedges = rng.range(0, 15);
        let h = random_hypergraph(&mut rng, nodes, hedges, 6, true);
        let p = random_bipartition(&mut rng, &h);
        let gains = compute_gains(&h, &p);
        let oracle = gains_by_flip(&h, &p);
        assert_eq!(gains, oracle, "instance {i}: gain vs flip-and-recount");
        checked += nodes;

        // Fuzzed matching validity rides along on the same corpus.
        let policy = MatchingPolicy::ALL[i % 5];
        let m = compute_matching(&h, policy);
        assert_valid_matching(&h, &m, &groups_of(&m, &h));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "criterion 1 must finish in < 10 s");
    pass(
        1,
        "gain-oracle",
        format!("500 instances, {checked} node gains exact, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_determinism_across_threads() {
    let start = Instant::now();
    let instances = determinism_instances();
    let mut runs = 0usize;
    for (i, (h, params)) in instances.iter().enumerate() {
        let report = check_determinism(h, params, &[1, 2, 4, 8], 3).unwrap();
        assert!(
            report.ok(),
            "instance {i} ({} nodes, {}): {:?}",
            h.num_nodes,
            params.policy,
            report.mismatch
        );
        runs += report.runs;

        // Byte-identical partition files between the extreme pool sizes.
        let one = hyperpart::cli::run_partition(h, params, Some(1)).unwrap().0;
        let eight = hyperpart::cli::run_partition(h, params, Some(8)).unwrap().0;
        assert_eq!(
            partition_bytes(&one),
            partition_bytes(&eight),
            "instance {i}: bytes differ between 1 and 8 threads"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 2 must finish in < 2 min"
    );
    pass(
        2,
        "thread-determinism",
        format!("20 instances x every policy, {runs} runs byte-identical, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_cut_preserved_under_projection() {
    let mut levels_checked = 0usize;
    for (i, (h, params)) in determinism_instances().iter().enumerate() {
        let chain = coarsen_chain(h, params);
        let mut rng = TestRng::new(0xCC + i as u64);
        for li in 0..chain.levels.len() {
            let level = &chain.levels[li];
            let fine = if li == 0 {
                h
            } else {
                &chain.levels[li - 1].coarse
            };
            for _ in 0..3 {
                let pc = random_bipartition(&mut rng, &level.coarse);
                let pf = project(&pc, level, fine);
                assert_eq!(
                    cut(fine, &pf),
                    cut(&level.coarse, &pc),
                    "instance {i}, level {li}"
                );
            }
            levels_checked += 1;
        }
    }
    pass(
        3,
        "cut-preservation",
        format!("{levels_checked} levels, 3 random partitions each, exact"),
    );
}

#[test]
fn criterion_04_weight_conservation() {
    let mut levels_checked = 0usize;
    for (h, params) in &determinism_instances() {
        let total = h.total_node_weight();
        let chain = coarsen_chain(h, params);
        for level in &chain.levels {
            assert_eq!(level.coarse.total_node_weight(), total);
            levels_checked += 1;
        }
    }
    pass(
        4,
        "weight-conservation",
        format!("{levels_checked} levels, total node weight identical"),
    );
}

#[test]
fn criterion_05_balance() {
    let instances = determinism_instances();
    for (i, (h, params)) in instances.iter().enumerate() {
        let out = bipartition(h, params);
        assert!(out.balanced, "instance {i} flagged unbalanced");
        let n = h.num_nodes as u64;
        let bound = 11 * n / 20; // floor(1.1 * n / 2) for unit weights
        assert!(
            out.partition.max_part_weight() <= bound,
            "instance {i}: max part {} > {bound}",
            out.partition.max_part_weight()
        );
    }
    // Multiway balance on a spread of the same instances.
    let mut multiway_checked = 0usize;
    for (i, (h, params)) in instances.iter().enumerate().step_by(4) {
        for k in [4u32, 8, 16] {
            let mut params = params.clone();
            params.k = k;
            let out = kway_partition(h, &params).unwrap();
            let report = imbalance(&out.partition, params.epsilon);
            assert!(report.balanced, "instance {i}, k={k}: bound violated");
            assert!(
                out.partition.part_weight.iter().all(|&w| w > 0),
                "instance {i}, k={k}: empty part"
            );
            multiway_checked += 1;
        }
    }
    pass(
        5,
        "balance",
        format!(
            "20 bipartitions within floor(1.1*n/2); {multiway_checked} k-way runs nonempty and in bound"
        ),
    );
}

#[test]
fn criterion_06_matching_validity() {
    let mut rng = TestRng::new(0x6AC);
    let mut checked = 0usize;
    for i in 0..200 {
        let nodes = rng.range(1, 200);
        let hedges = rng.range(0, 300);
        let h = random_hypergraph(&mut rng, nodes, hedges, 8, i % 2 == 0);
        let policy = MatchingPolicy::ALL[i % 5];
        let m = compute_matching(&h, policy);
        assert_valid_matching(&h, &m, &groups_of(&m, &h));
        checked += 1;
    }
    pass(
        6,
        "matching-validity",
        format!("{checked} fuzzed instances: groups disjoint, inside one hyperedge"),
    );
}

#[test]
fn criterion_07_separable_instances() {
    // Two tiny instances corroborated by exhaustive search.
    for seed in [1u64, 2] {
        let mut rng = TestRng::new(seed);
        let h = separable_instance(&mut rng, 5, 3);
        assert_eq!(exhaustive_min_cut(&h, 1, 10), Some(0));
    }
    let mut total = 0usize;
    for i in 0..20 {
        let mut rng = TestRng::new(0x5E9 + i);
        let half = 50 + rng.below(950);
        let h = separable_instance(&mut rng, half, half / 3);
        let out = bipartition(&h, &Params::default());
        let c = cut(&h, &out.partition);
        assert_eq!(c, 0, "instance {i} (half {half}): cut {c} != 0");
        assert!(out.balanced, "instance {i}: unbalanced");
        assert_eq!(
            out.partition.part_weight,
            vec![half as u64, half as u64],
            "instance {i}: halves not split evenly"
        );
        total += 1;
    }
    pass(
        7,
        "separable-quality",
        format!("{total}/20 instances at optimum cut 0, balanced"),
    );
}

#[test]
fn criterion_08_nested_kway_levels() {
    let mut rng = TestRng::new(0x8);
    let h = random_hypergraph(&mut rng, 300, 400, 5, false);
    for k in [2u32, 3, 4, 8, 16] {
        let params = Params {
            k,
            ..Params::default()
        };
        let out = kway_partition(&h, &params).unwrap();
        let expected = k.next_power_of_two().trailing_zeros();
        assert_eq!(
            out.bisection_levels, expected,
            "k={k}: levels {} != ceil(log2 k) = {expected}",
            out.bisection_levels
        );
    }
    pass(
        8,
        "nested-kway-levels",
        "k in {2,3,4,8,16}: exactly ceil(log2 k) bisection levels".into(),
    );
}

#[test]
fn criterion_09_parallel_serial_equivalence() {
    let mut rng = TestRng::new(0x9E9);
    let mut checked = 0usize;
    for i in 0..100 {
        let nodes = rng.range(2, 400);
        let hedges = rng.range(1, 500);
        let h = random_hypergraph(&mut rng, nodes, hedges, 6, i % 3 == 0);
        let policy = MatchingPolicy::ALL[i % 5];

        let m_par = compute_matching(&h, policy);
        let m_ser = serial_matching(&h, policy);
        assert_eq!(m_par, m_ser, "instance {i}: matching differs");

        let level_par = hyperpart::coarsen::coarsen_once(&h, policy);
        let level_ser = serial_coarsen_once(&h, policy);
        assert_eq!(level_par, level_ser, "instance {i}: coarsening differs");

        let p = random_bipartition(&mut rng, &h);
        assert_eq!(
            compute_gains(&h, &p),
            serial_gains(&h, &p),
            "instance {i}: gains differ"
        );

        let mut p_par = p.clone();
        refine(&h, &mut p_par, 2);
        let mut p_ser = p;
        serial_refine(&h, &mut p_ser, 2);
        assert_eq!(p_par, p_ser, "instance {i}: refinement differs");
        checked += 1;
    }
    pass(
        9,
        "parallel-serial-equivalence",
        format!("{checked} instances: matching, coarsening, gains, refinement bit-equal"),
    );
}

#[test]
fn criterion_10_ibm18_informational() {
    let path = std::env::var("HYPERPART_IBM18").unwrap_or_else(|_| "data/ibm18.hgr".to_string());
    let Ok(h) = hyperpart::io::read_hgr_file(std::path::Path::new(&path)) else {
        println!(
            "[acceptance] criterion 10 (ibm18): SKIP - benchmark not present at {path} \
             (informational, non-gating)"
        );
        return;
    };
    let start = Instant::now();
    let out = bipartition(&h, &Params::default());
    let elapsed = start.elapsed();
    let c = cut(&h, &out.partition);
    let report = imbalance(&out.partition, Imbalance::new(1, 10));
    println!(
        "[acceptance] criterion 10 (ibm18): INFO - {} nodes, {} hyperedges, cut {c} \
         (reference 2669, 3x = 8007), balanced {}, {elapsed:?} (informational, non-gating)",
        h.num_nodes, h.num_hedges, report.balanced
    );
}

/// Cross-checks shared by several criteria: the pipeline's reported numbers
/// agree with ground-truth recounts on a non-trivial instance.
#[test]
fn summary_self_consistency() {
    let mut rng = TestRng::new(0x5C);
    let h = random_hypergraph(&mut rng, 500, 700, 6, true);
    let params = Params::default();
    let (p, summary) = hyperpart::cli::run_partition(&h, &params, Some(2)).unwrap();
    assert_eq!(summary.cut, cut(&h, &p));
    assert_eq!(summary.cut, cut_by_distinct_count(&h, &p));
    let mut q = p.clone();
    q.recompute_weights(&h);
    assert_eq!(q.part_weight, p.part_weight);
    assert_eq!(summary.max_part, p.max_part_weight());
}
