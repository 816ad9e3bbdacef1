//! The full multilevel bipartition pipeline and the level-synchronous
//! nested k-way driver built on top of it.

use thiserror::Error;

use crate::balance::BisectTarget;
use crate::coarsen::coarsen_chain;
use crate::hypergraph::{Hypergraph, Id};
use crate::initial::initial_partition_with_target;
use crate::params::Params;
use crate::partition::Partition;
use crate::refine::{project, rebalance_with_target, refine};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionOutcome {
    pub partition: Partition,
    /// Coarsening levels actually built.
    pub levels: usize,
    /// Whether the balance criterion was met (it can be unattainable when a
    /// single node outweighs the bound).
    pub balanced: bool,
}

/// Multilevel bipartition: coarsen, partition the coarsest graph, then walk
/// the hierarchy from coarsest to finest projecting, refining, and
/// rebalancing at each level.
pub fn bipartition(g: &Hypergraph, params: &Params) -> BipartitionOutcome {
    let target = BisectTarget::even(g.total_node_weight(), params.epsilon);
    bisect_pipeline(g, params, &target)
}

pub(crate) fn bisect_pipeline(
    g: &Hypergraph,
    params: &Params,
    target: &BisectTarget,
) -> BipartitionOutcome {
    let chain = coarsen_chain(g, params);
    let mut p = initial_partition_with_target(chain.coarsest(g), target);
    let mut balanced = true;
    for i in (0..chain.levels.len()).rev() {
        let fine = if i == 0 {
            g
        } else {
            &chain.levels[i - 1].coarse
        };
        p = project(&p, &chain.levels[i], fine);
        refine(fine, &mut p, params.refine_iters);
        balanced = rebalance_with_target(fine, &mut p, target).achieved;
    }
    if chain.levels.is_empty() {
        // No level means the loop above never ran; the balance criterion
        // still has to be enforced on the input graph itself.
        balanced = rebalance_with_target(g, &mut p, target).achieved;
    }
    BipartitionOutcome {
        partition: p,
        levels: chain.levels.len(),
        balanced,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwayOutcome {
    pub partition: Partition,
    /// Bisection sweeps executed; always ceil(log2 k).
    pub bisection_levels: u32,
    pub balanced: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KwayError {
    #[error("more parts than nodes: k = {k}, nodes = {nodes}")]
    MorePartsThanNodes { k: u32, nodes: usize },
    #[error("k must be >= 1")]
    ZeroParts,
}

struct SubProblem {
    base: u32,
    side_parts: [u32; 2],
    members: Vec<Id>,
}

/// Nested k-way partitioning by level-synchronous recursive bisection.
///
/// Part ids form ranges over a bisection tree: a tree node responsible for
/// `parts` final parts and base id `b` splits into children holding
/// `ceil(parts/2)` parts at base `b` and `floor(parts/2)` parts at base
/// `b + ceil(parts/2)`. Every tree level is processed in one sweep, and all
/// subgraphs of a sweep are independent, so the sweep may run them in
/// parallel without affecting the result. Final ids are the depth-first
/// leaf order of the tree.
///
/// Subgraphs are induced on each part's nodes with ids compacted in
/// ascending original order; hyperedges that span parts or keep fewer than
/// two pins are dropped, since their cut contribution is already fixed.
pub fn kway_partition(g: &Hypergraph, params: &Params) -> Result<KwayOutcome, KwayError> {
    let k = params.k;
    if k == 0 {
        return Err(KwayError::ZeroParts);
    }
    if k as usize > g.num_nodes {
        return Err(KwayError::MorePartsThanNodes {
            k,
            nodes: g.num_nodes,
        });
    }
    let total_weight = g.total_node_weight();
    let mut assign: Vec<u32> = vec![0; g.num_nodes];
    let mut active: Vec<(u32, u32)> = vec![(0, k)];
    let mut levels = 0u32;
    let mut balanced = true;

    while active.iter().any(|&(_, parts)| parts > 1) {
        levels += 1;

        let splittable: Vec<SubProblem> = active
            .iter()
            .filter(|&&(_, parts)| parts > 1)
            .map(|&(base, parts)| {
                let k0 = parts.div_ceil(2);
                SubProblem {
                    base,
                    side_parts: [k0, parts - k0],
                    members: Vec::new(),
                }
            })
            .collect();

        // Membership and local ranks for the whole sweep in one pass.
        let mut slot_of_base = vec![usize::MAX; (k + 1) as usize];
        let mut subs = splittable;
        for (i, sub) in subs.iter_mut().enumerate() {
            slot_of_base[sub.base as usize] = i;
        }
        let mut local_rank: Vec<u32> = vec![0; g.num_nodes];
        for v in 0..g.num_nodes {
            let slot = slot_of_base[assign[v] as usize];
            if slot != usize::MAX {
                local_rank[v] = subs[slot].members.len() as u32;
                subs[slot].members.push(v as Id);
            }
        }

        // Bucket hyperedges fully contained in one splittable part.
        let mut hedge_buckets: Vec<Vec<Id>> = vec![Vec::new(); subs.len()];
        for e in 0..g.num_hedges {
            let pins = g.pins(e as Id);
            if pins.len() < 2 {
                continue;
            }
            let b = assign[pins[0] as usize];
            if pins.iter().all(|&v| assign[v as usize] == b) {
                let slot = slot_of_base[b as usize];
                if slot != usize::MAX {
                    hedge_buckets[slot].push(e as Id);
                }
            }
        }

        let sides: Vec<Vec<u32>> = run_subproblems(
            g,
            params,
            total_weight,
            k,
            &subs,
            &hedge_buckets,
            &local_rank,
            &mut balanced,
        );

        let mut next_active = Vec::new();
        for (sub, side) in subs.iter().zip(&sides) {
            let k0 = sub.side_parts[0];
            for (i, &v) in sub.members.iter().enumerate() {
                if side[i] == 1 {
                    assign[v as usize] = sub.base + k0;
                }
            }
            next_active.push((sub.base, k0));
            if sub.side_parts[1] > 1 {
                next_active.push((sub.base + k0, sub.side_parts[1]));
            }
        }
        active = next_active;
    }

    debug_assert_eq!(levels, ceil_log2(k));
    let partition =
        Partition::from_parts(assign, k, g).expect("bisection tree assigns ids below k");
    Ok(KwayOutcome {
        partition,
        bisection_levels: levels,
        balanced,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_subproblems(
    g: &Hypergraph,
    params: &Params,
    total_weight: u64,
    k: u32,
    subs: &[SubProblem],
    hedge_buckets: &[Vec<Id>],
    local_rank: &[u32],
    balanced: &mut bool,
) -> Vec<Vec<u32>> {
    let run_one = |i: usize| -> (Vec<u32>, bool) {
        let sub = &subs[i];
        let target = BisectTarget::new(
            [sub.side_parts[0] as u64, sub.side_parts[1] as u64],
            k as u64,
            total_weight,
            params.epsilon,
        );
        let outcome = if sub.members.len() == g.num_nodes {
            // The root sweep covers the whole graph; bisect it as-is so a
            // k = 2 run and `bipartition` agree exactly.
            bisect_pipeline(g, params, &target)
        } else {
            let hedges: Vec<Vec<Id>> = hedge_buckets[i]
                .iter()
                .map(|&e| g.pins(e).iter().map(|&v| local_rank[v as usize]).collect())
                .collect();
            let hedge_weight: Vec<u64> = hedge_buckets[i]
                .iter()
                .map(|&e| g.hedge_weight[e as usize])
                .collect();
            let node_weight: Vec<u64> = sub
                .members
                .iter()
                .map(|&v| g.node_weight[v as usize])
                .collect();
            let sub_graph = Hypergraph::new(sub.members.len(), hedges, node_weight, hedge_weight)
                .expect("induced subgraph is well-formed");
            bisect_pipeline(&sub_graph, params, &target)
        };
        (outcome.partition.part, outcome.balanced)
    };

    let results: Vec<(Vec<u32>, bool)> = crate::par::map_indexed(subs.len(), run_one);
    let mut sides = Vec::with_capacity(results.len());
    for (side, ok) in results {
        *balanced &= ok;
        sides.push(side);
    }
    sides
}

fn ceil_log2(k: u32) -> u32 {
    if k <= 1 {
        0
    } else {
        u32::BITS - (k - 1).leading_zeros()
    }
}
