//! Batch operations behind the command-line front end: run the pipeline
//! under a bounded thread pool, verify determinism across thread counts,
//! and sweep the parameter space.
//!
//! `threads` caps worker parallelism everywhere but must never influence
//! results; it exists so determinism can be checked under different pool
//! sizes.

use std::time::Instant;

use crate::hypergraph::Hypergraph;
use crate::kway::{kway_partition, KwayError, KwayOutcome};
use crate::matching::MatchingPolicy;
use crate::metrics::{cut, imbalance};
use crate::params::Params;
use crate::partition::Partition;

/// Run `f` on a pool of `threads` workers (all cores when `None`). With the
/// `parallel` feature disabled this just calls `f`.
pub fn with_thread_pool<T, F>(threads: Option<usize>, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    #[cfg(feature = "parallel")]
    {
        match threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("building a rayon pool")
                .install(f),
            None => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub cut: u64,
    pub max_part: u64,
    pub balanced: bool,
    /// Bisection sweeps executed (ceil(log2 k)).
    pub levels: u32,
    pub time_ms: u128,
}

impl RunSummary {
    /// The one-line summary printed by the partition command.
    pub fn line(&self) -> String {
        format!(
            "cut={} maxpart={} balanced={} levels={} time_ms={}",
            self.cut,
            self.max_part,
            if self.balanced { "yes" } else { "no" },
            self.levels,
            self.time_ms
        )
    }
}

/// Partition `h` under a bounded pool and summarize with ground-truth
/// metrics. Everything in the summary except `time_ms` is a deterministic
/// function of the input and parameters.
pub fn run_partition(
    h: &Hypergraph,
    params: &Params,
    threads: Option<usize>,
) -> Result<(Partition, RunSummary), KwayError> {
    let start = Instant::now();
    let outcome: Result<KwayOutcome, KwayError> =
        with_thread_pool(threads, || kway_partition(h, params));
    let outcome = outcome?;
    let time_ms = start.elapsed().as_millis();
    let report = imbalance(&outcome.partition, params.epsilon);
    let summary = RunSummary {
        cut: cut(h, &outcome.partition),
        max_part: report.max_part_weight,
        balanced: report.balanced,
        levels: outcome.bisection_levels,
        time_ms,
    };
    Ok((outcome.partition, summary))
}

/// Location of the first difference between two runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub node: usize,
    pub baseline_part: u32,
    pub other_part: u32,
    pub baseline_threads: usize,
    pub other_threads: usize,
    pub other_repeat: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub runs: usize,
    pub mismatch: Option<Mismatch>,
}

impl DeterminismReport {
    pub fn ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Run the pipeline for every thread count, `repeats` times each, and
/// compare the full output vectors against the first run.
pub fn check_determinism(
    h: &Hypergraph,
    params: &Params,
    thread_list: &[usize],
    repeats: usize,
) -> Result<DeterminismReport, KwayError> {
    check_determinism_with(h, params, thread_list, repeats, |h, params, threads| {
        with_thread_pool(threads, || kway_partition(h, params)).map(|o| o.partition)
    })
}

/// Determinism check with a pluggable runner, so tests can inject a
/// deliberately schedule-dependent pipeline as a negative control.
pub fn check_determinism_with<F>(
    h: &Hypergraph,
    params: &Params,
    thread_list: &[usize],
    repeats: usize,
    runner: F,
) -> Result<DeterminismReport, KwayError>
where
    F: Fn(&Hypergraph, &Params, Option<usize>) -> Result<Partition, KwayError>,
{
    let mut baseline: Option<(usize, Vec<u32>)> = None;
    let mut runs = 0;
    for &threads in thread_list {
        for repeat in 0..repeats {
            let p = runner(h, params, Some(threads))?;
            runs += 1;
            match &baseline {
                None => baseline = Some((threads, p.part)),
                Some((base_threads, base)) => {
                    if let Some(node) = (0..base.len()).find(|&v| base[v] != p.part[v]) {
                        return Ok(DeterminismReport {
                            runs,
                            mismatch: Some(Mismatch {
                                node,
                                baseline_part: base[node],
                                other_part: p.part[node],
                                baseline_threads: *base_threads,
                                other_threads: threads,
                                other_repeat: repeat,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(DeterminismReport {
        runs,
        mismatch: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub policy: MatchingPolicy,
    pub coarse_to: u32,
    pub refine_iters: u32,
    pub k: u32,
    pub cut: u64,
    pub max_part_weight: u64,
    pub balanced: bool,
    pub time_ms: u128,
}

pub const SWEEP_CSV_HEADER: &str =
    "policy,coarse_to,refine_iters,k,cut,max_part_weight,balanced,time_ms";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.policy,
            self.coarse_to,
            self.refine_iters,
            self.k,
            self.cut,
            self.max_part_weight,
            if self.balanced { "yes" } else { "no" },
            self.time_ms
        )
    }
}

/// Run the full cross product of policies, coarsening caps, and refinement
/// iteration counts. Rows come out in lexical order of the parameter tuple.
pub fn run_sweep(
    h: &Hypergraph,
    base: &Params,
    policies: &[MatchingPolicy],
    coarse_to_list: &[u32],
    refine_iters_list: &[u32],
    threads: Option<usize>,
) -> Result<Vec<SweepRow>, KwayError> {
    let mut policies: Vec<MatchingPolicy> = policies.to_vec();
    policies.sort_by_key(|p| p.name());
    policies.dedup();
    let mut coarse_to_list = coarse_to_list.to_vec();
    coarse_to_list.sort_unstable();
    coarse_to_list.dedup();
    let mut refine_iters_list = refine_iters_list.to_vec();
    refine_iters_list.sort_unstable();
    refine_iters_list.dedup();

    let mut rows = Vec::new();
    for &policy in &policies {
        for &coarse_to in &coarse_to_list {
            for &refine_iters in &refine_iters_list {
                let params = Params {
                    policy,
                    coarse_to,
                    refine_iters,
                    ..base.clone()
                };
                let (_, summary) = run_partition(h, &params, threads)?;
                rows.push(SweepRow {
                    policy,
                    coarse_to,
                    refine_iters,
                    k: params.k,
                    cut: summary.cut,
                    max_part_weight: summary.max_part,
                    balanced: summary.balanced,
                    time_ms: summary.time_ms,
                });
            }
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

/// Multi-line report for the evaluate command.
pub fn evaluate_report(h: &Hypergraph, p: &Partition, params: &Params) -> String {
    let report = imbalance(p, params.epsilon);
    let weights: Vec<String> = p.part_weight.iter().map(|w| w.to_string()).collect();
    format!(
        "cut={}\npart_weights={}\nbound={}\nbalanced={}\n",
        cut(h, p),
        weights.join(","),
        report.bound_as_f64(),
        if report.balanced { "yes" } else { "no" }
    )
}
