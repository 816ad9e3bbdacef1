//! Shared test support: deterministic instance generators, straight-line
//! serial reference implementations of each parallel phase, and brute-force
//! oracles. Everything here is written independently of the library's
//! parallel code paths so it can serve as a cross-check.

#![allow(dead_code)]
// The serial references below are deliberately written as plain indexed
// loops over hyperedge ids.
#![allow(clippy::needless_range_loop)]

use std::collections::HashSet;

use hyperpart::coarsen::CoarseningLevel;
use hyperpart::hypergraph::{Hypergraph, Id};
use hyperpart::matching::{MatchingPolicy, MatchingState};
use hyperpart::partition::Partition;

/// Small self-contained generator (splitmix stream); stable forever, no
/// dependency on external RNG crates.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Inclusive range.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

pub fn random_hypergraph(
    rng: &mut TestRng,
    num_nodes: usize,
    num_hedges: usize,
    max_degree: usize,
    weighted: bool,
) -> Hypergraph {
    let hedges: Vec<Vec<Id>> = (0..num_hedges)
        .map(|_| {
            let d = rng.range(1, max_degree);
            let mut pins: Vec<Id> = (0..d).map(|_| rng.below(num_nodes) as Id).collect();
            pins.sort_unstable();
            pins.dedup();
            pins
        })
        .collect();
    let node_weight = if weighted {
        (0..num_nodes).map(|_| 1 + rng.below(5) as u64).collect()
    } else {
        Vec::new()
    };
    let hedge_weight = if weighted {
        (0..num_hedges).map(|_| 1 + rng.below(5) as u64).collect()
    } else {
        Vec::new()
    };
    Hypergraph::new(num_nodes, hedges, node_weight, hedge_weight).expect("generator is valid")
}

pub fn random_bipartition(rng: &mut TestRng, h: &Hypergraph) -> Partition {
    let part: Vec<u32> = (0..h.num_nodes).map(|_| rng.below(2) as u32).collect();
    Partition::from_parts(part, 2, h).unwrap()
}

/// Two disconnected unit-weight halves of equal size on contiguous id
/// ranges. Each half carries one hyperedge spanning the whole half plus a
/// few internal pair hyperedges, so coarsening collapses each half fully
/// and the optimal cut of zero is forced by construction (no hyperedge
/// crosses the halves).
pub fn separable_instance(rng: &mut TestRng, half: usize, pairs: usize) -> Hypergraph {
    assert!(half >= 2);
    let mut hedges: Vec<Vec<Id>> = Vec::new();
    hedges.push((0..half as Id).collect());
    hedges.push((half as Id..2 * half as Id).collect());
    for base in [0usize, half] {
        for _ in 0..pairs {
            let a = base + rng.below(half);
            let mut b = base + rng.below(half);
            while b == a {
                b = base + rng.below(half);
            }
            hedges.push(vec![a.min(b) as Id, a.max(b) as Id]);
        }
    }
    Hypergraph::from_hedges(2 * half, hedges).unwrap()
}

// ---------------------------------------------------------------------------
// Straight-line serial references, written from the phase definitions with
// plain sequential loops and in-place updates.
// ---------------------------------------------------------------------------

const SENTINEL: u64 = u64::MAX;
const MAX_KEY: u64 = u64::MAX - 1;

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn serial_hedge_key(policy: MatchingPolicy, e: usize, h: &Hypergraph) -> u64 {
    let degree = (h.hedge_offsets[e + 1] - h.hedge_offsets[e]) as u64;
    match policy {
        MatchingPolicy::Ldh => degree,
        MatchingPolicy::Hdh => MAX_KEY - degree,
        MatchingPolicy::Lwd => h.hedge_weight[e],
        MatchingPolicy::Hwd => MAX_KEY - h.hedge_weight[e],
        MatchingPolicy::Rand => splitmix(e as u64),
    }
}

/// Three sequential passes over hyperedges in ascending id order with
/// min-combining writes, mirroring the hedge-side formulation directly.
pub fn serial_matching(h: &Hypergraph, policy: MatchingPolicy) -> MatchingState {
    let mut hedge_priority = vec![0u64; h.num_hedges];
    let mut hedge_rand = vec![0u64; h.num_hedges];
    for e in 0..h.num_hedges {
        hedge_priority[e] = serial_hedge_key(policy, e, h);
        hedge_rand[e] = splitmix(e as u64);
    }
    let mut node_priority = vec![SENTINEL; h.num_nodes];
    let mut node_rand = vec![SENTINEL; h.num_nodes];
    let mut node_hedge = vec![SENTINEL; h.num_nodes];
    for e in 0..h.num_hedges {
        for &v in h.pins(e as Id) {
            let v = v as usize;
            node_priority[v] = node_priority[v].min(hedge_priority[e]);
        }
    }
    for e in 0..h.num_hedges {
        for &v in h.pins(e as Id) {
            let v = v as usize;
            if hedge_priority[e] == node_priority[v] {
                node_rand[v] = node_rand[v].min(hedge_rand[e]);
            }
        }
    }
    for e in 0..h.num_hedges {
        for &v in h.pins(e as Id) {
            let v = v as usize;
            if hedge_rand[e] == node_rand[v] {
                node_hedge[v] = node_hedge[v].min(e as u64);
            }
        }
    }
    MatchingState {
        node_priority,
        node_rand,
        node_hedge,
        hedge_priority,
        hedge_rand,
    }
}

/// Sequential coarsening: merge matched sets in hyperedge order, absorb
/// singletons against the pre-absorption weight snapshot, self-merge the
/// rest in node order, then emit surviving hyperedges in order.
pub fn serial_coarsen_once(h: &Hypergraph, policy: MatchingPolicy) -> CoarseningLevel {
    let m = serial_matching(h, policy);
    let unassigned = Id::MAX;
    let mut parent = vec![unassigned; h.num_nodes];

    // Matched sets per hyperedge, in pin order.
    let mut sets: Vec<Vec<Id>> = vec![Vec::new(); h.num_hedges];
    for v in 0..h.num_nodes {
        if m.node_hedge[v] != SENTINEL {
            sets[m.node_hedge[v] as usize].push(v as Id);
        }
    }

    let mut group_of_hedge = vec![unassigned; h.num_hedges];
    let mut snapshot_weight: Vec<u64> = Vec::new();
    for e in 0..h.num_hedges {
        if sets[e].len() > 1 {
            let gid = snapshot_weight.len() as Id;
            group_of_hedge[e] = gid;
            snapshot_weight.push(sets[e].iter().map(|&v| h.node_weight[v as usize]).sum());
            for &v in &sets[e] {
                parent[v as usize] = gid;
            }
        }
    }
    for e in 0..h.num_hedges {
        if sets[e].len() == 1 {
            let u = sets[e][0];
            let mut best: Option<(u64, Id)> = None;
            for &w in h.pins(e as Id) {
                let ew = m.node_hedge[w as usize];
                if ew != SENTINEL {
                    let g = group_of_hedge[ew as usize];
                    if g != unassigned {
                        let key = (snapshot_weight[g as usize], g);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            if let Some((_, g)) = best {
                parent[u as usize] = g;
            }
        }
    }
    let mut next = snapshot_weight.len() as Id;
    for p in parent.iter_mut() {
        if *p == unassigned {
            *p = next;
            next += 1;
        }
    }
    let coarse_nodes = next as usize;

    let mut node_weight = vec![0u64; coarse_nodes];
    for v in 0..h.num_nodes {
        node_weight[parent[v] as usize] += h.node_weight[v];
    }

    let mut hedge_parent: Vec<Option<Id>> = vec![None; h.num_hedges];
    let mut coarse_hedges: Vec<Vec<Id>> = Vec::new();
    let mut hedge_weight: Vec<u64> = Vec::new();
    for e in 0..h.num_hedges {
        let mut parents: Vec<Id> = h
            .pins(e as Id)
            .iter()
            .map(|&v| parent[v as usize])
            .collect();
        parents.sort_unstable();
        parents.dedup();
        if parents.len() > 1 {
            hedge_parent[e] = Some(coarse_hedges.len() as Id);
            coarse_hedges.push(parents);
            hedge_weight.push(h.hedge_weight[e]);
        }
    }

    // Build the coarse CSR by hand.
    let mut hedge_offsets = vec![0usize];
    let mut hedge_pins: Vec<Id> = Vec::new();
    for pins in &coarse_hedges {
        hedge_pins.extend_from_slice(pins);
        hedge_offsets.push(hedge_pins.len());
    }
    let mut node_lists: Vec<Vec<Id>> = vec![Vec::new(); coarse_nodes];
    for (e, pins) in coarse_hedges.iter().enumerate() {
        for &v in pins {
            node_lists[v as usize].push(e as Id);
        }
    }
    let mut node_offsets = vec![0usize];
    let mut node_hedges: Vec<Id> = Vec::new();
    for list in &node_lists {
        node_hedges.extend_from_slice(list);
        node_offsets.push(node_hedges.len());
    }

    CoarseningLevel {
        node_parent: parent,
        hedge_parent,
        coarse: Hypergraph {
            num_nodes: coarse_nodes,
            num_hedges: coarse_hedges.len(),
            hedge_offsets,
            hedge_pins,
            node_offsets,
            node_hedges,
            node_weight,
            hedge_weight,
        },
    }
}

/// Gain computation as a sequential double loop pushing contributions from
/// each hyperedge to its pins.
pub fn serial_gains(h: &Hypergraph, p: &Partition) -> Vec<i64> {
    assert_eq!(p.k, 2);
    let mut gain = vec![0i64; h.num_nodes];
    for e in 0..h.num_hedges {
        let pins = h.pins(e as Id);
        if pins.len() < 2 {
            continue;
        }
        let n0 = pins.iter().filter(|&&v| p.part[v as usize] == 0).count();
        let counts = [n0, pins.len() - n0];
        let w = h.hedge_weight[e] as i64;
        for &v in pins {
            let mine = counts[p.part[v as usize] as usize];
            if mine == 1 {
                gain[v as usize] += w;
            } else if mine == pins.len() {
                gain[v as usize] -= w;
            }
        }
    }
    gain
}

/// Sequential swap refinement with a stable library sort.
pub fn serial_refine(h: &Hypergraph, p: &mut Partition, iters: u32) {
    for _ in 0..iters {
        let gains = serial_gains(h, p);
        let side = |s: u32| -> Vec<Id> {
            let mut list: Vec<Id> = (0..h.num_nodes as Id)
                .filter(|&v| p.part[v as usize] == s && gains[v as usize] >= 0)
                .collect();
            list.sort_by_key(|&v| (std::cmp::Reverse(gains[v as usize]), v));
            list
        };
        let list0 = side(0);
        let list1 = side(1);
        let l_min = list0.len().min(list1.len());
        if l_min == 0 {
            break;
        }
        for &v in &list0[..l_min] {
            p.part[v as usize] = 1;
        }
        for &v in &list1[..l_min] {
            p.part[v as usize] = 0;
        }
        p.recompute_weights(h);
    }
}

// ---------------------------------------------------------------------------
// Brute-force oracles.
// ---------------------------------------------------------------------------

/// Cut recounted with a per-hyperedge set of distinct parts.
pub fn cut_by_distinct_count(h: &Hypergraph, p: &Partition) -> u64 {
    (0..h.num_hedges)
        .map(|e| {
            let distinct: HashSet<u32> = h
                .pins(e as Id)
                .iter()
                .map(|&v| p.part[v as usize])
                .collect();
            h.hedge_weight[e] * (distinct.len() as u64 - 1)
        })
        .sum()
}

/// Gains derived by flipping each node and recounting the whole cut.
pub fn gains_by_flip(h: &Hypergraph, p: &Partition) -> Vec<i64> {
    let base = cut_by_distinct_count(h, p) as i64;
    (0..h.num_nodes)
        .map(|v| {
            let mut flipped = p.clone();
            flipped.part[v] = 1 - flipped.part[v];
            base - cut_by_distinct_count(h, &flipped) as i64
        })
        .collect()
}

/// Validity of a multi-node matching: every matched node sits in exactly one
/// group, each group's members belong to the group's hyperedge, and every
/// node of nonzero degree is matched to an incident hyperedge.
pub fn assert_valid_matching(h: &Hypergraph, m: &MatchingState, groups: &[(Id, Vec<Id>)]) {
    let mut seen = vec![false; h.num_nodes];
    for (e, members) in groups {
        let pins: HashSet<Id> = h.pins(*e).iter().copied().collect();
        for &v in members {
            assert!(!seen[v as usize], "node {v} appears in two groups");
            seen[v as usize] = true;
            assert!(pins.contains(&v), "node {v} outside hyperedge {e}");
        }
    }
    for v in 0..h.num_nodes {
        let degree = h.node_degree(v as Id);
        if degree > 0 {
            assert!(seen[v], "node {v} with degree {degree} unmatched");
            let e = m.node_hedge[v] as Id;
            assert!(
                h.hedges_of(v as Id).contains(&e),
                "node {v} matched to non-incident hyperedge {e}"
            );
        } else {
            assert!(!seen[v]);
        }
    }
}

/// Exhaustive minimum cut over all bipartitions within the balance bound;
/// only for tiny graphs.
pub fn exhaustive_min_cut(h: &Hypergraph, eps_num: u64, eps_den: u64) -> Option<u64> {
    assert!(h.num_nodes <= 20);
    let total = h.total_node_weight();
    let mut best: Option<u64> = None;
    for bits in 0u32..(1u32 << h.num_nodes) {
        let part: Vec<u32> = (0..h.num_nodes).map(|v| (bits >> v) & 1).collect();
        let p = Partition::from_parts(part, 2, h).unwrap();
        let ok = p.part_weight.iter().all(|&w| {
            w as u128 * 2 * eps_den as u128 <= (eps_den + eps_num) as u128 * total as u128
        });
        if !ok {
            continue;
        }
        let c = cut_by_distinct_count(h, &p);
        best = Some(best.map_or(c, |b: u64| b.min(c)));
    }
    best
}
