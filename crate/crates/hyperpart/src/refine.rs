//! Uncoarsening: project a partition one level down, improve it by
//! deterministic parallel swaps, and restore the balance constraint.

use crate::balance::{ceil_sqrt, BisectTarget};
use crate::coarsen::CoarseningLevel;
use crate::hypergraph::Hypergraph;
use crate::initial::{compute_gains, ranked_side};
use crate::par;
use crate::params::Imbalance;
use crate::partition::Partition;

/// Map a coarse partition onto the level's fine graph through the parent
/// map. Preserves the cut exactly: collapsed hyperedges are monochromatic
/// under any projected partition, and surviving ones span the same parts.
pub fn project(p_coarse: &Partition, level: &CoarseningLevel, fine: &Hypergraph) -> Partition {
    let part = par::map_indexed(fine.num_nodes, |v| {
        p_coarse.part[level.node_parent[v] as usize]
    });
    let mut p = Partition {
        part,
        k: p_coarse.k,
        part_weight: vec![0; p_coarse.k as usize],
    };
    p.recompute_weights(fine);
    p
}

/// One uncoarsening pass of gain-ordered swaps.
///
/// Each round recomputes all gains once, takes the nonnegative-gain nodes of
/// both sides sorted by (gain descending, id ascending), and swaps equal
/// prefixes of the two lists. Swapping equal counts leaves the side
/// cardinalities unchanged; weights may drift and are restored by
/// [`rebalance`] afterwards. Gains are not updated between the flips of one
/// round, so the cut may transiently rise within a round.
pub fn refine(h: &Hypergraph, p: &mut Partition, iters: u32) {
    assert_eq!(p.k, 2, "refinement swaps across a bipartition");
    for _ in 0..iters {
        let gains = compute_gains(h, p);
        let mut list0 = ranked_side(p, &gains, 0);
        list0.retain(|&(g, _)| g.0 >= 0);
        let mut list1 = ranked_side(p, &gains, 1);
        list1.retain(|&(g, _)| g.0 >= 0);
        let l_min = list0.len().min(list1.len());
        if l_min == 0 {
            break;
        }
        for &(_, v) in &list0[..l_min] {
            p.move_node(v, 1, h);
        }
        for &(_, v) in &list1[..l_min] {
            p.move_node(v, 0, h);
        }
    }
}

/// Did rebalancing satisfy the balance criterion?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceOutcome {
    pub achieved: bool,
}

/// Restore the balance criterion after refinement.
pub fn rebalance(h: &Hypergraph, p: &mut Partition, eps: Imbalance) -> BalanceOutcome {
    rebalance_with_target(h, p, &BisectTarget::even(h.total_node_weight(), eps))
}

/// Move nodes off the side that violates its bound, highest gain first (ids
/// break ties), up to ceil(sqrt(n)) moves per gain recomputation, stopping
/// the moment the criterion holds. A node is only moved if the receiving
/// side stays within its own bound, which makes every move strict progress;
/// when a full scan moves nothing the balance is unachievable (some single
/// node exceeds the bound) and the best achieved state is returned.
pub(crate) fn rebalance_with_target(
    h: &Hypergraph,
    p: &mut Partition,
    target: &BisectTarget,
) -> BalanceOutcome {
    assert_eq!(p.k, 2);
    let batch = ceil_sqrt(h.num_nodes);
    loop {
        if target.balanced(&p.part_weight) {
            return BalanceOutcome { achieved: true };
        }
        // At most one side can be over its cap when balance is feasible;
        // when both are over, the quota itself is unattainable and moving
        // off the heavier side is still the best effort.
        let heavy: u32 = if target.side_within_bound(0, p.part_weight[0]) {
            1
        } else {
            0
        };
        let light = 1 - heavy;
        let gains = compute_gains(h, p);
        let ranked = ranked_side(p, &gains, heavy);
        let mut moved = 0usize;
        for &(_, v) in &ranked {
            if moved == batch {
                break;
            }
            let received = p.part_weight[light as usize] + h.node_weight[v as usize];
            if !target.side_within_bound(light as usize, received) {
                continue;
            }
            p.move_node(v, light, h);
            moved += 1;
            if target.balanced(&p.part_weight) {
                return BalanceOutcome { achieved: true };
            }
        }
        if moved == 0 {
            return BalanceOutcome { achieved: false };
        }
    }
}
