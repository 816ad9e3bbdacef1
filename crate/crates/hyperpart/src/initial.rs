//! Move gains and the initial bipartition of the coarsest graph.

use std::cmp::Reverse;

use crate::balance::{ceil_sqrt, BisectTarget};
use crate::hypergraph::{Hypergraph, Id};
use crate::par;
use crate::params::Params;
use crate::partition::Partition;

/// Signed cut decrease per node if that node moved to the other side.
pub type GainVector = Vec<i64>;

/// Move gains for a bipartition.
///
/// For every hyperedge with at least two pins: a pin that is alone on its
/// side gains the hyperedge weight (moving it makes the hyperedge
/// monochromatic), and a pin of a monochromatic hyperedge loses it (moving
/// it splits the hyperedge). Single-pin hyperedges contribute nothing; they
/// can never be split. `gain[v]` equals `cut(p) - cut(p with v flipped)`
/// exactly.
pub fn compute_gains(h: &Hypergraph, p: &Partition) -> GainVector {
    assert_eq!(p.k, 2, "gains are defined for bipartitions");
    // Pin count on side 0 per hyperedge; side 1 is degree minus this.
    let side0: Vec<u32> = par::map_indexed(h.num_hedges, |e| {
        h.pins(e as Id)
            .iter()
            .filter(|&&v| p.part[v as usize] == 0)
            .count() as u32
    });
    par::map_indexed(h.num_nodes, |v| {
        let my_side = p.part[v];
        let mut gain = 0i64;
        for &e in h.hedges_of(v as Id) {
            let degree = h.degree(e) as u32;
            if degree < 2 {
                continue;
            }
            let n_mine = if my_side == 0 {
                side0[e as usize]
            } else {
                degree - side0[e as usize]
            };
            let w = h.hedge_weight[e as usize] as i64;
            if n_mine == 1 {
                gain += w;
            } else if n_mine == degree {
                gain -= w;
            }
        }
        gain
    })
}

/// Candidate list for greedy moves: nodes of `side`, ordered by gain
/// descending then id ascending.
pub(crate) fn ranked_side(p: &Partition, gains: &[i64], side: u32) -> Vec<(Reverse<i64>, Id)> {
    let mut ranked: Vec<(Reverse<i64>, Id)> = (0..p.part.len())
        .filter(|&v| p.part[v] == side)
        .map(|v| (Reverse(gains[v]), v as Id))
        .collect();
    par::sort_unstable(&mut ranked);
    ranked
}

/// Greedy initial bipartition: start with everything in part 1, then move
/// the ceil(sqrt(n)) highest-gain nodes at a time to part 0, recomputing
/// gains between batches, until part 0 holds its share of the weight. The
/// move that reaches the target ends the fill, so overshoot is at most one
/// node beyond the batch boundary.
pub fn initial_partition(coarsest: &Hypergraph, params: &Params) -> Partition {
    initial_partition_with_target(
        coarsest,
        &BisectTarget::even(coarsest.total_node_weight(), params.epsilon),
    )
}

pub(crate) fn initial_partition_with_target(h: &Hypergraph, target: &BisectTarget) -> Partition {
    let n = h.num_nodes;
    let sub_weight = h.total_node_weight();
    let mut p = Partition {
        part: vec![1; n],
        k: 2,
        part_weight: vec![0, sub_weight],
    };
    if n == 0 {
        return p;
    }
    let batch = ceil_sqrt(n);
    while !target.fill_reached(p.part_weight[0], sub_weight) {
        let gains = compute_gains(h, &p);
        let ranked = ranked_side(&p, &gains, 1);
        if ranked.is_empty() {
            break;
        }
        for &(_, v) in ranked.iter().take(batch) {
            p.move_node(v, 0, h);
            if target.fill_reached(p.part_weight[0], sub_weight) {
                break;
            }
        }
    }
    p
}
