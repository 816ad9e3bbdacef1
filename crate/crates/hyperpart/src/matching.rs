//! Deterministic multi-node matching.
//!
//! Every node of nonzero degree is assigned to exactly one incident
//! hyperedge by three cascaded min-reductions: first over a policy-derived
//! hyperedge priority, then over a hash of the hyperedge id among the
//! priority winners, then over the raw hyperedge id among the hash winners.
//! Each per-node field is a pure min over a fixed set, so the result is
//! independent of execution order and thread count.

use std::str::FromStr;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, Id};
use crate::par;

/// Sentinel for "no value yet"; compares greater than every real key.
pub const SENTINEL: u64 = u64::MAX;
/// Largest real key. Complemented policies subtract from this so that
/// smaller keys always mean higher priority.
pub const MAX_KEY: u64 = u64::MAX - 1;

/// splitmix64 finalizer. Bit-exact so hash-driven tie-breaks reproduce
/// across builds and platforms.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hyperedge priority policies. Smaller key = higher priority for all of
/// them; the "higher wins" variants complement against [`MAX_KEY`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchingPolicy {
    /// Lower-degree hyperedges first.
    Ldh,
    /// Higher-degree hyperedges first.
    Hdh,
    /// Lower-weight hyperedges first.
    Lwd,
    /// Higher-weight hyperedges first.
    Hwd,
    /// Deterministic hash of the hyperedge id.
    Rand,
}

impl MatchingPolicy {
    pub const ALL: [MatchingPolicy; 5] = [
        MatchingPolicy::Ldh,
        MatchingPolicy::Hdh,
        MatchingPolicy::Lwd,
        MatchingPolicy::Hwd,
        MatchingPolicy::Rand,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MatchingPolicy::Ldh => "LDH",
            MatchingPolicy::Hdh => "HDH",
            MatchingPolicy::Lwd => "LWD",
            MatchingPolicy::Hwd => "HWD",
            MatchingPolicy::Rand => "RAND",
        }
    }
}

impl std::fmt::Display for MatchingPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown matching policy {0:?} (expected LDH, HDH, LWD, HWD, or RAND)")]
pub struct PolicyParseError(String);

impl FromStr for MatchingPolicy {
    type Err = PolicyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "LDH" => Ok(MatchingPolicy::Ldh),
            "HDH" => Ok(MatchingPolicy::Hdh),
            "LWD" => Ok(MatchingPolicy::Lwd),
            "HWD" => Ok(MatchingPolicy::Hwd),
            "RAND" => Ok(MatchingPolicy::Rand),
            _ => Err(PolicyParseError(s.to_string())),
        }
    }
}

/// Priority key of one hyperedge under a policy.
pub fn hedge_priority(policy: MatchingPolicy, e: Id, h: &Hypergraph) -> u64 {
    match policy {
        MatchingPolicy::Ldh => h.degree(e) as u64,
        MatchingPolicy::Hdh => MAX_KEY - h.degree(e) as u64,
        MatchingPolicy::Lwd => h.hedge_weight[e as usize],
        MatchingPolicy::Hwd => MAX_KEY - h.hedge_weight[e as usize],
        MatchingPolicy::Rand => splitmix64(e as u64),
    }
}

/// Per-node and per-hyperedge matching state. Degree-0 nodes keep all three
/// sentinels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingState {
    pub node_priority: Vec<u64>,
    pub node_rand: Vec<u64>,
    /// Matched hyperedge id, widened to u64 to hold the sentinel.
    pub node_hedge: Vec<u64>,
    pub hedge_priority: Vec<u64>,
    pub hedge_rand: Vec<u64>,
}

/// Compute the multi-node matching.
///
/// The reductions below are written node-side (each node scans its incident
/// hyperedges), which is the schedule-free equivalent of the hedge-side
/// atomic-min formulation: min over a fixed candidate set.
///
/// The third pass filters on hash equality alone, not on (priority, hash)
/// jointly. With 64-bit hashes a cross-priority collision is negligible, and
/// the final min-id step keeps even that case deterministic.
pub fn compute_matching(h: &Hypergraph, policy: MatchingPolicy) -> MatchingState {
    let hedge_priority_v = par::map_indexed(h.num_hedges, |e| hedge_priority(policy, e as Id, h));
    let hedge_rand_v = par::map_indexed(h.num_hedges, |e| splitmix64(e as u64));

    let node_priority = par::map_indexed(h.num_nodes, |v| {
        h.hedges_of(v as Id)
            .iter()
            .map(|&e| hedge_priority_v[e as usize])
            .min()
            .unwrap_or(SENTINEL)
    });
    let node_rand = par::map_indexed(h.num_nodes, |v| {
        h.hedges_of(v as Id)
            .iter()
            .filter(|&&e| hedge_priority_v[e as usize] == node_priority[v])
            .map(|&e| hedge_rand_v[e as usize])
            .min()
            .unwrap_or(SENTINEL)
    });
    let node_hedge = par::map_indexed(h.num_nodes, |v| {
        h.hedges_of(v as Id)
            .iter()
            .filter(|&&e| hedge_rand_v[e as usize] == node_rand[v])
            .map(|&e| e as u64)
            .min()
            .unwrap_or(SENTINEL)
    });

    MatchingState {
        node_priority,
        node_rand,
        node_hedge,
        hedge_priority: hedge_priority_v,
        hedge_rand: hedge_rand_v,
    }
}

/// Group matched nodes by their matched hyperedge. Groups come out ordered
/// by hyperedge id with members ascending; sentinel (degree-0) nodes are
/// excluded.
pub fn groups_of(m: &MatchingState, h: &Hypergraph) -> Vec<(Id, Vec<Id>)> {
    let mut pairs: Vec<(u64, Id)> = (0..h.num_nodes)
        .filter(|&v| m.node_hedge[v] != SENTINEL)
        .map(|v| (m.node_hedge[v], v as Id))
        .collect();
    par::sort_unstable(&mut pairs);
    let mut groups: Vec<(Id, Vec<Id>)> = Vec::new();
    for (e, v) in pairs {
        match groups.last_mut() {
            Some((last, members)) if *last as u64 == e => members.push(v),
            _ => groups.push((e as Id, vec![v])),
        }
    }
    groups
}
