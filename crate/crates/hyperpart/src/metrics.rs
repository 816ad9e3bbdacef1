//! Ground-truth partition metrics: lambda per hyperedge, weighted cut, and
//! the balance check.

use crate::hypergraph::{Hypergraph, Id};
use crate::par;
use crate::params::Imbalance;
use crate::partition::Partition;

/// Number of distinct parts spanned by hyperedge `e`.
pub fn lambda(h: &Hypergraph, e: Id, p: &Partition) -> u32 {
    let pins = h.pins(e);
    if p.k <= 64 {
        let mut mask = 0u64;
        for &v in pins {
            mask |= 1u64 << p.part[v as usize];
        }
        mask.count_ones()
    } else {
        let mut parts: Vec<u32> = pins.iter().map(|&v| p.part[v as usize]).collect();
        parts.sort_unstable();
        parts.dedup();
        parts.len() as u32
    }
}

/// Weighted cut: sum over hyperedges of weight * (lambda - 1).
pub fn cut(h: &Hypergraph, p: &Partition) -> u64 {
    par::sum_indexed(h.num_hedges, |e| {
        h.hedge_weight[e] * (lambda(h, e as Id, p) as u64 - 1)
    })
}

/// Balance report for a partition under an imbalance parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImbalanceReport {
    pub max_part_weight: u64,
    pub total_weight: u64,
    pub k: u32,
    /// Bound (1 + eps) * total / k as an exact fraction.
    pub bound_num: u128,
    pub bound_den: u128,
    pub balanced: bool,
}

impl ImbalanceReport {
    pub fn bound_as_f64(&self) -> f64 {
        self.bound_num as f64 / self.bound_den as f64
    }
}

/// Check every part against the bound (1 + eps) * (total weight / k). The
/// comparison is exact: part * k * den <= (den + num) * total.
pub fn imbalance(p: &Partition, eps: Imbalance) -> ImbalanceReport {
    let total: u64 = p.part_weight.iter().sum();
    let max_part_weight = p.max_part_weight();
    let balanced = p.part_weight.iter().all(|&w| {
        w as u128 * p.k as u128 * eps.den as u128 <= (eps.den + eps.num) as u128 * total as u128
    });
    ImbalanceReport {
        max_part_weight,
        total_weight: total,
        k: p.k,
        bound_num: (eps.den + eps.num) as u128 * total as u128,
        bound_den: eps.den as u128 * p.k as u128,
        balanced,
    }
}
