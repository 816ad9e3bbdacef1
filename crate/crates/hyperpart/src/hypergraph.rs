//! Hypergraph storage: a dual CSR holding pins per hyperedge and hyperedges
//! per node, plus integer node and hyperedge weights.

use thiserror::Error;

/// Node or hyperedge id. Ids are the 0-based positions from the input; all
/// tie-breaking in the partitioning phases uses these ids.
pub type Id = u32;

/// A hypergraph in dual CSR form.
///
/// `hedge_offsets`/`hedge_pins` list the nodes of each hyperedge;
/// `node_offsets`/`node_hedges` is the exact transpose. Pins within a
/// hyperedge are strictly increasing, and every hyperedge has at least one
/// pin. Nodes may have degree zero. Both weight vectors hold positive
/// integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub num_nodes: usize,
    pub num_hedges: usize,
    pub hedge_offsets: Vec<usize>,
    pub hedge_pins: Vec<Id>,
    pub node_offsets: Vec<usize>,
    pub node_hedges: Vec<Id>,
    pub node_weight: Vec<u64>,
    pub hedge_weight: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("pin id {pin} out of range in hyperedge {hedge} (num_nodes = {num_nodes})")]
    PinOutOfRange {
        hedge: usize,
        pin: Id,
        num_nodes: usize,
    },
    #[error("hyperedge {hedge} has no pins")]
    EmptyHedge { hedge: usize },
    #[error("{kind} weight vector has length {got}, expected {expected}")]
    WeightLength {
        kind: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{kind} {index} has zero weight")]
    ZeroWeight { kind: &'static str, index: usize },
}

/// One violated structural invariant, as reported by [`Hypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    OffsetsNotMonotone {
        kind: &'static str,
        index: usize,
    },
    OffsetsLength {
        kind: &'static str,
        got: usize,
        expected: usize,
    },
    PinCountMismatch {
        hedge_pins: usize,
        node_hedges: usize,
        offsets_total: usize,
    },
    PinOutOfRange {
        hedge: usize,
        pin: Id,
    },
    HedgeOutOfRange {
        node: Id,
        hedge: Id,
    },
    PinsNotStrictlyIncreasing {
        hedge: usize,
        position: usize,
    },
    HedgesNotStrictlyIncreasing {
        node: Id,
        position: usize,
    },
    EmptyHedge {
        hedge: usize,
    },
    DualMissing {
        hedge: Id,
        node: Id,
    },
    DualExtra {
        node: Id,
        hedge: Id,
    },
    ZeroWeight {
        kind: &'static str,
        index: usize,
    },
    WeightLength {
        kind: &'static str,
        got: usize,
        expected: usize,
    },
}

impl std::fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use InvariantViolation::*;
        match self {
            OffsetsNotMonotone { kind, index } => {
                write!(f, "{kind} offsets decrease at index {index}")
            }
            OffsetsLength { kind, got, expected } => {
                write!(f, "{kind} offsets length {got}, expected {expected}")
            }
            PinCountMismatch { hedge_pins, node_hedges, offsets_total } => write!(
                f,
                "pin count mismatch: |hedge_pins| = {hedge_pins}, |node_hedges| = {node_hedges}, offsets total = {offsets_total}"
            ),
            PinOutOfRange { hedge, pin } => write!(f, "pin {pin} out of range in hyperedge {hedge}"),
            HedgeOutOfRange { node, hedge } => {
                write!(f, "hyperedge {hedge} out of range in node {node} list")
            }
            PinsNotStrictlyIncreasing { hedge, position } => write!(
                f,
                "pins of hyperedge {hedge} not strictly increasing at position {position}"
            ),
            HedgesNotStrictlyIncreasing { node, position } => write!(
                f,
                "hyperedges of node {node} not strictly increasing at position {position}"
            ),
            EmptyHedge { hedge } => write!(f, "hyperedge {hedge} has no pins"),
            DualMissing { hedge, node } => write!(f, "dual inconsistency at ({hedge},{node}): pin present forward, missing in node list"),
            DualExtra { node, hedge } => write!(f, "dual inconsistency at ({hedge},{node}): entry present in node list, missing forward"),
            ZeroWeight { kind, index } => write!(f, "{kind} {index} has zero weight"),
            WeightLength { kind, got, expected } => {
                write!(f, "{kind} weights length {got}, expected {expected}")
            }
        }
    }
}

/// Build the node -> hyperedges side of the dual CSR by transposing the
/// hyperedge -> nodes side. Within each node the hyperedge ids come out
/// strictly increasing because hyperedges are visited in ascending order.
pub fn transpose(
    hedge_offsets: &[usize],
    hedge_pins: &[Id],
    num_nodes: usize,
) -> Result<(Vec<usize>, Vec<Id>), BuildError> {
    let num_hedges = hedge_offsets.len().saturating_sub(1);
    let mut degree = vec![0usize; num_nodes];
    for (e, window) in hedge_offsets.windows(2).enumerate() {
        for &pin in &hedge_pins[window[0]..window[1]] {
            if pin as usize >= num_nodes {
                return Err(BuildError::PinOutOfRange {
                    hedge: e,
                    pin,
                    num_nodes,
                });
            }
            degree[pin as usize] += 1;
        }
    }
    let mut node_offsets = vec![0usize; num_nodes + 1];
    for v in 0..num_nodes {
        node_offsets[v + 1] = node_offsets[v] + degree[v];
    }
    let mut cursor = node_offsets[..num_nodes].to_vec();
    let mut node_hedges = vec![0 as Id; hedge_pins.len()];
    for e in 0..num_hedges {
        for &pin in &hedge_pins[hedge_offsets[e]..hedge_offsets[e + 1]] {
            node_hedges[cursor[pin as usize]] = e as Id;
            cursor[pin as usize] += 1;
        }
    }
    Ok((node_offsets, node_hedges))
}

impl Hypergraph {
    /// Build a hypergraph from per-hyperedge pin lists. Duplicate pins within
    /// a hyperedge are collapsed and pins are sorted. Pass empty weight
    /// vectors to get unit weights.
    pub fn new(
        num_nodes: usize,
        hedges: Vec<Vec<Id>>,
        node_weight: Vec<u64>,
        hedge_weight: Vec<u64>,
    ) -> Result<Self, BuildError> {
        let num_hedges = hedges.len();
        let node_weight = if node_weight.is_empty() {
            vec![1; num_nodes]
        } else {
            node_weight
        };
        let hedge_weight = if hedge_weight.is_empty() {
            vec![1; num_hedges]
        } else {
            hedge_weight
        };
        if node_weight.len() != num_nodes {
            return Err(BuildError::WeightLength {
                kind: "node",
                got: node_weight.len(),
                expected: num_nodes,
            });
        }
        if hedge_weight.len() != num_hedges {
            return Err(BuildError::WeightLength {
                kind: "hyperedge",
                got: hedge_weight.len(),
                expected: num_hedges,
            });
        }
        if let Some(v) = node_weight.iter().position(|&w| w == 0) {
            return Err(BuildError::ZeroWeight {
                kind: "node",
                index: v,
            });
        }
        if let Some(e) = hedge_weight.iter().position(|&w| w == 0) {
            return Err(BuildError::ZeroWeight {
                kind: "hyperedge",
                index: e,
            });
        }

        let mut hedge_offsets = Vec::with_capacity(num_hedges + 1);
        let mut hedge_pins = Vec::new();
        hedge_offsets.push(0);
        for (e, mut pins) in hedges.into_iter().enumerate() {
            if pins.is_empty() {
                return Err(BuildError::EmptyHedge { hedge: e });
            }
            pins.sort_unstable();
            pins.dedup();
            if let Some(&pin) = pins.iter().find(|&&p| p as usize >= num_nodes) {
                return Err(BuildError::PinOutOfRange {
                    hedge: e,
                    pin,
                    num_nodes,
                });
            }
            hedge_pins.extend_from_slice(&pins);
            hedge_offsets.push(hedge_pins.len());
        }

        let (node_offsets, node_hedges) = transpose(&hedge_offsets, &hedge_pins, num_nodes)?;
        Ok(Hypergraph {
            num_nodes,
            num_hedges,
            hedge_offsets,
            hedge_pins,
            node_offsets,
            node_hedges,
            node_weight,
            hedge_weight,
        })
    }

    /// Unit-weight convenience constructor.
    pub fn from_hedges(num_nodes: usize, hedges: Vec<Vec<Id>>) -> Result<Self, BuildError> {
        Self::new(num_nodes, hedges, Vec::new(), Vec::new())
    }

    pub fn pins(&self, e: Id) -> &[Id] {
        &self.hedge_pins[self.hedge_offsets[e as usize]..self.hedge_offsets[e as usize + 1]]
    }

    pub fn hedges_of(&self, v: Id) -> &[Id] {
        &self.node_hedges[self.node_offsets[v as usize]..self.node_offsets[v as usize + 1]]
    }

    pub fn degree(&self, e: Id) -> usize {
        self.hedge_offsets[e as usize + 1] - self.hedge_offsets[e as usize]
    }

    pub fn node_degree(&self, v: Id) -> usize {
        self.node_offsets[v as usize + 1] - self.node_offsets[v as usize]
    }

    pub fn total_node_weight(&self) -> u64 {
        self.node_weight.iter().sum()
    }

    /// Check every structural invariant and return the violations found.
    /// Never mutates; an empty report means the graph is valid.
    pub fn validate(&self) -> Vec<InvariantViolation> {
        let mut report = Vec::new();
        if self.hedge_offsets.len() != self.num_hedges + 1 {
            report.push(InvariantViolation::OffsetsLength {
                kind: "hyperedge",
                got: self.hedge_offsets.len(),
                expected: self.num_hedges + 1,
            });
            return report;
        }
        if self.node_offsets.len() != self.num_nodes + 1 {
            report.push(InvariantViolation::OffsetsLength {
                kind: "node",
                got: self.node_offsets.len(),
                expected: self.num_nodes + 1,
            });
            return report;
        }
        for w in [
            ("hyperedge", &self.hedge_offsets),
            ("node", &self.node_offsets),
        ] {
            for (i, pair) in w.1.windows(2).enumerate() {
                if pair[0] > pair[1] {
                    report.push(InvariantViolation::OffsetsNotMonotone {
                        kind: w.0,
                        index: i,
                    });
                    return report;
                }
            }
        }
        if self.hedge_offsets[0] != 0
            || self.node_offsets[0] != 0
            || *self.hedge_offsets.last().unwrap() != self.hedge_pins.len()
            || *self.node_offsets.last().unwrap() != self.node_hedges.len()
            || self.hedge_pins.len() != self.node_hedges.len()
        {
            report.push(InvariantViolation::PinCountMismatch {
                hedge_pins: self.hedge_pins.len(),
                node_hedges: self.node_hedges.len(),
                offsets_total: *self.hedge_offsets.last().unwrap(),
            });
            return report;
        }

        for e in 0..self.num_hedges {
            let pins = self.pins(e as Id);
            if pins.is_empty() {
                report.push(InvariantViolation::EmptyHedge { hedge: e });
            }
            for (i, &p) in pins.iter().enumerate() {
                if p as usize >= self.num_nodes {
                    report.push(InvariantViolation::PinOutOfRange { hedge: e, pin: p });
                } else if i > 0 && pins[i - 1] >= p {
                    report.push(InvariantViolation::PinsNotStrictlyIncreasing {
                        hedge: e,
                        position: i,
                    });
                }
            }
        }
        for v in 0..self.num_nodes {
            let hs = self.hedges_of(v as Id);
            for (i, &e) in hs.iter().enumerate() {
                if e as usize >= self.num_hedges {
                    report.push(InvariantViolation::HedgeOutOfRange {
                        node: v as Id,
                        hedge: e,
                    });
                } else if i > 0 && hs[i - 1] >= e {
                    report.push(InvariantViolation::HedgesNotStrictlyIncreasing {
                        node: v as Id,
                        position: i,
                    });
                }
            }
        }
        if report.iter().any(|r| {
            matches!(
                r,
                InvariantViolation::PinOutOfRange { .. }
                    | InvariantViolation::HedgeOutOfRange { .. }
            )
        }) {
            return report;
        }

        // Dual consistency, both directions.
        for e in 0..self.num_hedges {
            for &v in self.pins(e as Id) {
                if self.hedges_of(v).binary_search(&(e as Id)).is_err() {
                    report.push(InvariantViolation::DualMissing {
                        hedge: e as Id,
                        node: v,
                    });
                }
            }
        }
        for v in 0..self.num_nodes {
            for &e in self.hedges_of(v as Id) {
                if self.pins(e).binary_search(&(v as Id)).is_err() {
                    report.push(InvariantViolation::DualExtra {
                        node: v as Id,
                        hedge: e,
                    });
                }
            }
        }

        if self.node_weight.len() != self.num_nodes {
            report.push(InvariantViolation::WeightLength {
                kind: "node",
                got: self.node_weight.len(),
                expected: self.num_nodes,
            });
        } else if let Some(v) = self.node_weight.iter().position(|&w| w == 0) {
            report.push(InvariantViolation::ZeroWeight {
                kind: "node",
                index: v,
            });
        }
        if self.hedge_weight.len() != self.num_hedges {
            report.push(InvariantViolation::WeightLength {
                kind: "hyperedge",
                got: self.hedge_weight.len(),
                expected: self.num_hedges,
            });
        } else if let Some(e) = self.hedge_weight.iter().position(|&w| w == 0) {
            report.push(InvariantViolation::ZeroWeight {
                kind: "hyperedge",
                index: e,
            });
        }
        report
    }
}
