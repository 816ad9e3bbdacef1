//! Partition state: per-node part ids plus per-part aggregate node weight.

use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// 0-based part id per node.
    pub part: Vec<u32>,
    pub k: u32,
    /// part_weight[i] = sum of node weights assigned to part i.
    pub part_weight: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("node {node} has part id {part}, but k = {k}")]
    PartOutOfRange { node: usize, part: u32, k: u32 },
    #[error("partition has {got} entries, graph has {expected} nodes")]
    LengthMismatch { got: usize, expected: usize },
}

impl Partition {
    /// Wrap a raw assignment vector, computing part weights from the graph.
    pub fn from_parts(part: Vec<u32>, k: u32, h: &Hypergraph) -> Result<Self, PartitionError> {
        if part.len() != h.num_nodes {
            return Err(PartitionError::LengthMismatch {
                got: part.len(),
                expected: h.num_nodes,
            });
        }
        if let Some((node, &p)) = part.iter().enumerate().find(|&(_, &p)| p >= k) {
            return Err(PartitionError::PartOutOfRange { node, part: p, k });
        }
        let mut state = Partition {
            part,
            k,
            part_weight: vec![0; k as usize],
        };
        state.recompute_weights(h);
        Ok(state)
    }

    /// Everything in part 0.
    pub fn all_zero(k: u32, h: &Hypergraph) -> Self {
        let mut part_weight = vec![0; k as usize];
        part_weight[0] = h.total_node_weight();
        Partition {
            part: vec![0; h.num_nodes],
            k,
            part_weight,
        }
    }

    /// Recompute part weights from scratch. The incremental bookkeeping done
    /// by the refinement phases must always agree with this.
    pub fn recompute_weights(&mut self, h: &Hypergraph) {
        self.part_weight = vec![0; self.k as usize];
        for (v, &p) in self.part.iter().enumerate() {
            self.part_weight[p as usize] += h.node_weight[v];
        }
    }

    /// Move one node to `target`, maintaining part weights.
    pub fn move_node(&mut self, v: u32, target: u32, h: &Hypergraph) {
        let from = self.part[v as usize];
        if from == target {
            return;
        }
        let w = h.node_weight[v as usize];
        self.part_weight[from as usize] -= w;
        self.part_weight[target as usize] += w;
        self.part[v as usize] = target;
    }

    pub fn max_part_weight(&self) -> u64 {
        self.part_weight.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.part_weight.iter().sum()
    }
}
