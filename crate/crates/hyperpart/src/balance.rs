//! Exact-arithmetic balance targets for bisections.
//!
//! A bisection splits a (sub)graph whose parts quota is `k0 + k1`. Side `i`
//! must stay within `k_i * floor((1 + eps) * W / k)`, where `W` and `k` are
//! the total weight and part count of the original problem. Anchoring every
//! level to the same floored per-part bound keeps imbalance from compounding
//! across bisection levels and keeps the bound achievable with integer
//! weights: a quota of `k_i` parts, each at most `floor(bound)`, can hold
//! exactly `k_i * floor(bound)`. A fractional per-side cap could otherwise
//! leave a side weight that no further split satisfies.

use crate::params::Imbalance;

#[derive(Debug, Clone, Copy)]
pub(crate) struct BisectTarget {
    /// Parts each side of the bisection must eventually hold.
    pub side_parts: [u64; 2],
    /// Per-part weight cap floor((1 + eps) * W / k) of the original
    /// problem, computed in exact integer arithmetic.
    pub part_cap: u128,
}

impl BisectTarget {
    pub fn new(side_parts: [u64; 2], total_parts: u64, total_weight: u64, eps: Imbalance) -> Self {
        let num = (eps.den + eps.num) as u128 * total_weight as u128;
        let den = eps.den as u128 * total_parts as u128;
        BisectTarget {
            side_parts,
            part_cap: num / den,
        }
    }

    /// Plain bipartition of a standalone graph: one part per side.
    pub fn even(total_weight: u64, eps: Imbalance) -> Self {
        BisectTarget::new([1, 1], 2, total_weight, eps)
    }

    fn sub_parts(&self) -> u64 {
        self.side_parts[0] + self.side_parts[1]
    }

    /// Side 0 has reached its proportional share of the subgraph weight.
    /// The fill loop of the initial partition stops here.
    pub fn fill_reached(&self, w0: u64, sub_weight: u64) -> bool {
        w0 as u128 * self.sub_parts() as u128 >= self.side_parts[0] as u128 * sub_weight as u128
    }

    /// Would a side of weight `w` stay within the cap for side `i`?
    pub fn side_within_bound(&self, i: usize, w: u64) -> bool {
        w as u128 <= self.side_parts[i] as u128 * self.part_cap
    }

    pub fn balanced(&self, part_weight: &[u64]) -> bool {
        self.side_within_bound(0, part_weight[0]) && self.side_within_bound(1, part_weight[1])
    }
}

/// Smallest s with s*s >= n.
pub(crate) fn ceil_sqrt(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}
