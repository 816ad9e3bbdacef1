//! Multilevel coarsening: merge matched node groups, absorb singletons, and
//! rebuild the hyperedge structure one level at a time.

use crate::hypergraph::{transpose, Hypergraph, Id};
use crate::matching::{compute_matching, MatchingPolicy, SENTINEL};
use crate::par;
use crate::params::Params;

/// One coarsening step: the fine-to-coarse maps plus the coarsened graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseningLevel {
    /// Coarse node id for every fine node (total map).
    pub node_parent: Vec<Id>,
    /// Coarse hyperedge id, or `None` when the hyperedge collapsed (all pins
    /// share one parent).
    pub hedge_parent: Vec<Option<Id>>,
    pub coarse: Hypergraph,
}

/// Chain of coarsening levels, finest first. Level i's fine graph is level
/// i-1's coarse graph (the original graph for i = 0).
#[derive(Debug, Clone, Default)]
pub struct MultilevelHierarchy {
    pub levels: Vec<CoarseningLevel>,
}

impl MultilevelHierarchy {
    /// The coarsest graph, or the original when no level was built.
    pub fn coarsest<'a>(&'a self, original: &'a Hypergraph) -> &'a Hypergraph {
        self.levels.last().map_or(original, |l| &l.coarse)
    }
}

/// Build one coarsened level from `fine`.
///
/// Merging follows the matching: every matched set of two or more nodes
/// becomes one coarse node; a set of one (a singleton) is absorbed into the
/// lightest already-merged coarse node among its matched hyperedge's pins,
/// measured on the weights the merged groups had before any singleton
/// joined, with ties broken by smallest coarse id. Singletons with no merged
/// neighbor in that hyperedge, and unmatched nodes, merge with themselves.
///
/// Coarse ids are assigned deterministically: merged groups ordered by their
/// hyperedge id, then self-merged nodes ordered by fine node id. Every
/// surviving fine hyperedge (one whose pins span more than one parent)
/// produces its own coarse hyperedge in fine id order, inheriting its
/// weight; identical coarse hyperedges are not deduplicated.
pub fn coarsen_once(fine: &Hypergraph, policy: MatchingPolicy) -> CoarseningLevel {
    let m = compute_matching(fine, policy);

    // Matched-set size and pre-absorption weight per hyperedge, computed by
    // scanning the hyperedge's own pins.
    let group_size: Vec<u32> = par::map_indexed(fine.num_hedges, |e| {
        fine.pins(e as Id)
            .iter()
            .filter(|&&v| m.node_hedge[v as usize] == e as u64)
            .count() as u32
    });
    let group_weight: Vec<u64> = par::map_indexed(fine.num_hedges, |e| {
        fine.pins(e as Id)
            .iter()
            .filter(|&&v| m.node_hedge[v as usize] == e as u64)
            .map(|&v| fine.node_weight[v as usize])
            .sum()
    });

    // Coarse ids for merged groups, in hyperedge id order.
    let mut group_coarse = vec![0 as Id; fine.num_hedges];
    let mut num_groups: Id = 0;
    for e in 0..fine.num_hedges {
        if group_size[e] >= 2 {
            group_coarse[e] = num_groups;
            num_groups += 1;
        }
    }

    const UNASSIGNED: Id = Id::MAX;
    let mut node_parent: Vec<Id> = par::map_indexed(fine.num_nodes, |v| {
        let e = m.node_hedge[v];
        if e != SENTINEL && group_size[e as usize] >= 2 {
            group_coarse[e as usize]
        } else {
            UNASSIGNED
        }
    });

    // Singleton absorption. Each singleton is the unique matched node of its
    // hyperedge, so the per-hyperedge scan writes disjoint parents.
    let absorptions: Vec<Option<(Id, Id)>> = par::map_indexed(fine.num_hedges, |e| {
        if group_size[e] != 1 {
            return None;
        }
        let pins = fine.pins(e as Id);
        let u = *pins
            .iter()
            .find(|&&v| m.node_hedge[v as usize] == e as u64)
            .expect("matched-set size 1");
        let target = pins
            .iter()
            .filter_map(|&w| {
                let ew = m.node_hedge[w as usize];
                if ew != SENTINEL && group_size[ew as usize] >= 2 {
                    Some((group_weight[ew as usize], group_coarse[ew as usize]))
                } else {
                    None
                }
            })
            .min()?;
        Some((u, target.1))
    });
    for pair in absorptions.into_iter().flatten() {
        node_parent[pair.0 as usize] = pair.1;
    }

    // Remaining nodes self-merge, numbered after the groups in node order.
    let mut next = num_groups;
    for parent in node_parent.iter_mut() {
        if *parent == UNASSIGNED {
            *parent = next;
            next += 1;
        }
    }
    let coarse_nodes = next as usize;

    let mut coarse_node_weight = vec![0u64; coarse_nodes];
    for (v, &p) in node_parent.iter().enumerate() {
        coarse_node_weight[p as usize] += fine.node_weight[v];
    }

    // Coarse hyperedges: deduplicated parent sets with at least two members.
    let coarse_pin_sets: Vec<Option<Vec<Id>>> = par::map_indexed(fine.num_hedges, |e| {
        let mut parents: Vec<Id> = fine
            .pins(e as Id)
            .iter()
            .map(|&v| node_parent[v as usize])
            .collect();
        parents.sort_unstable();
        parents.dedup();
        if parents.len() > 1 {
            Some(parents)
        } else {
            None
        }
    });

    let mut hedge_parent = vec![None; fine.num_hedges];
    let mut hedge_offsets = vec![0usize];
    let mut hedge_pins = Vec::new();
    let mut coarse_hedge_weight = Vec::new();
    for (e, pins) in coarse_pin_sets.into_iter().enumerate() {
        if let Some(pins) = pins {
            hedge_parent[e] = Some(coarse_hedge_weight.len() as Id);
            hedge_pins.extend_from_slice(&pins);
            hedge_offsets.push(hedge_pins.len());
            coarse_hedge_weight.push(fine.hedge_weight[e]);
        }
    }

    let (node_offsets, node_hedges) =
        transpose(&hedge_offsets, &hedge_pins, coarse_nodes).expect("parents are in range");
    let coarse = Hypergraph {
        num_nodes: coarse_nodes,
        num_hedges: coarse_hedge_weight.len(),
        hedge_offsets,
        hedge_pins,
        node_offsets,
        node_hedges,
        node_weight: coarse_node_weight,
        hedge_weight: coarse_hedge_weight,
    };

    CoarseningLevel {
        node_parent,
        hedge_parent,
        coarse,
    }
}

/// Coarsen repeatedly until the level cap is reached, a level fails to
/// shrink the node count (that level is discarded), or no hyperedges
/// survive.
pub fn coarsen_chain(g: &Hypergraph, params: &Params) -> MultilevelHierarchy {
    let mut levels: Vec<CoarseningLevel> = Vec::new();
    while (levels.len() as u32) < params.coarse_to {
        let fine = levels.last().map_or(g, |l| &l.coarse);
        if fine.num_nodes == 0 || fine.num_hedges == 0 {
            break;
        }
        let level = coarsen_once(fine, params.policy);
        if level.coarse.num_nodes == fine.num_nodes {
            break;
        }
        let stop = level.coarse.num_hedges == 0;
        levels.push(level);
        if stop {
            break;
        }
    }
    MultilevelHierarchy { levels }
}
