//! hMetis `.hgr` reading/writing and partition-assignment files.
//!
//! Format: a header `numHedges numNodes [fmt]`, one line per hyperedge with
//! 1-based node ids (prefixed by the hyperedge weight when fmt enables it),
//! then one node-weight line per node when fmt enables those. fmt is one of
//! 1 (hyperedge weights), 10 (node weights), 11 (both), or absent. Lines
//! starting with `%` are comments. Tokens are separated by runs of spaces or
//! tabs, and a CR before the LF is tolerated.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::hypergraph::{BuildError, Hypergraph, Id};
use crate::partition::Partition;

/// Decoded header fmt field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HgrFormatFlags {
    pub has_hedge_weights: bool,
    pub has_node_weights: bool,
}

impl HgrFormatFlags {
    /// Decode the fmt token. Exactly 1, 10, and 11 are legal; an absent
    /// token means no weights at all.
    pub fn from_fmt(fmt: Option<&str>) -> Option<Self> {
        match fmt {
            None => Some(HgrFormatFlags::default()),
            Some("1") => Some(HgrFormatFlags {
                has_hedge_weights: true,
                has_node_weights: false,
            }),
            Some("10") => Some(HgrFormatFlags {
                has_hedge_weights: false,
                has_node_weights: true,
            }),
            Some("11") => Some(HgrFormatFlags {
                has_hedge_weights: true,
                has_node_weights: true,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum HgrError {
    #[error("line {line}: expected header `numHedges numNodes [fmt]`")]
    BadHeader { line: usize },
    #[error("line {line}: unsupported fmt value {fmt:?}")]
    BadFmt { line: usize, fmt: String },
    #[error("line {line}: non-numeric token {token:?}")]
    NonNumeric { line: usize, token: String },
    #[error("line {line}: node id {id} out of range [1, {max}]")]
    IdOutOfRange { line: usize, id: u64, max: usize },
    #[error("line {line}: empty hyperedge")]
    EmptyHyperedge { line: usize },
    #[error("line {line}: zero weight")]
    ZeroWeight { line: usize },
    #[error("line {line}: expected a single weight")]
    MalformedWeightLine { line: usize },
    #[error("expected {expected} {what} lines, found {found}")]
    WrongLineCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unexpected trailing content")]
    TrailingContent { line: usize },
    #[error("line {line}: partition id {id} out of range (k = {k})")]
    PartOutOfRange { line: usize, id: u64, k: u32 },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

struct Lines<R> {
    reader: R,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines { reader, line: 0 }
    }

    /// Next non-comment line, trimmed of the trailing CR. Returns the
    /// physical 1-based line number alongside.
    fn next_content(&mut self) -> Result<Option<(usize, String)>, HgrError> {
        loop {
            let mut buf = String::new();
            if self.reader.read_line(&mut buf)? == 0 {
                return Ok(None);
            }
            self.line += 1;
            while buf.ends_with('\n') || buf.ends_with('\r') {
                buf.pop();
            }
            if buf.starts_with('%') {
                continue;
            }
            return Ok(Some((self.line, buf)));
        }
    }
}

fn parse_u64(token: &str, line: usize) -> Result<u64, HgrError> {
    token.parse().map_err(|_| HgrError::NonNumeric {
        line,
        token: token.to_string(),
    })
}

/// Parse an hMetis `.hgr` stream into a [`Hypergraph`]. Node ids are
/// converted to 0-based; duplicate pins within a hyperedge collapse; missing
/// weights default to one.
pub fn parse_hgr<R: BufRead>(reader: R) -> Result<Hypergraph, HgrError> {
    let mut lines = Lines::new(reader);

    let (header_line, header) = match lines.next_content()? {
        Some((n, l)) if l.trim().is_empty() => return Err(HgrError::BadHeader { line: n }),
        Some((n, l)) => (n, l),
        None => return Err(HgrError::BadHeader { line: 1 }),
    };
    let mut tokens = header.split_ascii_whitespace();
    let num_hedges = parse_u64(
        tokens
            .next()
            .ok_or(HgrError::BadHeader { line: header_line })?,
        header_line,
    )? as usize;
    let num_nodes = parse_u64(
        tokens
            .next()
            .ok_or(HgrError::BadHeader { line: header_line })?,
        header_line,
    )? as usize;
    let fmt_token = tokens.next();
    if tokens.next().is_some() {
        return Err(HgrError::BadHeader { line: header_line });
    }
    let flags = HgrFormatFlags::from_fmt(fmt_token).ok_or_else(|| HgrError::BadFmt {
        line: header_line,
        fmt: fmt_token.unwrap_or("").to_string(),
    })?;

    let mut hedges: Vec<Vec<Id>> = Vec::with_capacity(num_hedges);
    let mut hedge_weight: Vec<u64> = Vec::new();
    for _ in 0..num_hedges {
        let (line, text) = lines.next_content()?.ok_or(HgrError::WrongLineCount {
            what: "hyperedge",
            expected: num_hedges,
            found: hedges.len(),
        })?;
        let mut tokens = text.split_ascii_whitespace().peekable();
        if tokens.peek().is_none() {
            return Err(HgrError::EmptyHyperedge { line });
        }
        if flags.has_hedge_weights {
            let w = parse_u64(tokens.next().unwrap(), line)?;
            if w == 0 {
                return Err(HgrError::ZeroWeight { line });
            }
            hedge_weight.push(w);
        }
        let mut pins = Vec::new();
        for token in tokens {
            let id = parse_u64(token, line)?;
            if id < 1 || id > num_nodes as u64 {
                return Err(HgrError::IdOutOfRange {
                    line,
                    id,
                    max: num_nodes,
                });
            }
            pins.push((id - 1) as Id);
        }
        if pins.is_empty() {
            return Err(HgrError::EmptyHyperedge { line });
        }
        hedges.push(pins);
    }

    let mut node_weight: Vec<u64> = Vec::new();
    if flags.has_node_weights {
        for _ in 0..num_nodes {
            let (line, text) = lines.next_content()?.ok_or(HgrError::WrongLineCount {
                what: "node weight",
                expected: num_nodes,
                found: node_weight.len(),
            })?;
            let mut tokens = text.split_ascii_whitespace();
            let w = parse_u64(
                tokens
                    .next()
                    .ok_or(HgrError::MalformedWeightLine { line })?,
                line,
            )?;
            if tokens.next().is_some() {
                return Err(HgrError::MalformedWeightLine { line });
            }
            if w == 0 {
                return Err(HgrError::ZeroWeight { line });
            }
            node_weight.push(w);
        }
    }

    // Anything left beyond blank lines is a line-count violation.
    while let Some((line, text)) = lines.next_content()? {
        if !text.trim().is_empty() {
            return Err(HgrError::TrailingContent { line });
        }
    }

    Ok(Hypergraph::new(
        num_nodes,
        hedges,
        node_weight,
        hedge_weight,
    )?)
}

pub fn read_hgr_file(path: &Path) -> Result<Hypergraph, HgrError> {
    parse_hgr(BufReader::new(File::open(path)?))
}

/// Write `.hgr` in canonical form: the fmt token carries hyperedge and node
/// weights only when some weight differs from one, so `parse(write(h))`
/// reproduces `h` exactly.
pub fn write_hgr<W: Write>(h: &Hypergraph, mut out: W) -> std::io::Result<()> {
    let flags = HgrFormatFlags {
        has_hedge_weights: h.hedge_weight.iter().any(|&w| w != 1),
        has_node_weights: h.node_weight.iter().any(|&w| w != 1),
    };
    match (flags.has_hedge_weights, flags.has_node_weights) {
        (false, false) => writeln!(out, "{} {}", h.num_hedges, h.num_nodes)?,
        (true, false) => writeln!(out, "{} {} 1", h.num_hedges, h.num_nodes)?,
        (false, true) => writeln!(out, "{} {} 10", h.num_hedges, h.num_nodes)?,
        (true, true) => writeln!(out, "{} {} 11", h.num_hedges, h.num_nodes)?,
    }
    let mut line = String::new();
    for e in 0..h.num_hedges {
        line.clear();
        if flags.has_hedge_weights {
            line.push_str(&h.hedge_weight[e].to_string());
        }
        for &v in h.pins(e as Id) {
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&(v + 1).to_string());
        }
        writeln!(out, "{line}")?;
    }
    if flags.has_node_weights {
        for v in 0..h.num_nodes {
            writeln!(out, "{}", h.node_weight[v])?;
        }
    }
    Ok(())
}

/// Write the partition file: exactly one decimal part id per node per line,
/// nothing else. The bytes are part of the determinism contract.
pub fn write_partition<W: Write>(p: &Partition, mut out: W) -> std::io::Result<()> {
    let mut buf = String::with_capacity(p.part.len() * 2);
    for &id in &p.part {
        buf.push_str(&id.to_string());
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())
}

/// Exact bytes [`write_partition`] would produce.
pub fn partition_bytes(p: &Partition) -> Vec<u8> {
    let mut buf = Vec::new();
    write_partition(p, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Read a partition file: one id per line, `num_nodes` lines, ids below `k`.
pub fn parse_partition<R: BufRead>(
    reader: R,
    num_nodes: usize,
    k: u32,
) -> Result<Vec<u32>, HgrError> {
    let mut lines = Lines::new(reader);
    let mut part = Vec::with_capacity(num_nodes);
    while part.len() < num_nodes {
        let (line, text) = lines.next_content()?.ok_or(HgrError::WrongLineCount {
            what: "partition",
            expected: num_nodes,
            found: part.len(),
        })?;
        let mut tokens = text.split_ascii_whitespace();
        let id = parse_u64(
            tokens
                .next()
                .ok_or(HgrError::MalformedWeightLine { line })?,
            line,
        )?;
        if tokens.next().is_some() {
            return Err(HgrError::MalformedWeightLine { line });
        }
        if id >= k as u64 {
            return Err(HgrError::PartOutOfRange { line, id, k });
        }
        part.push(id as u32);
    }
    while let Some((line, text)) = lines.next_content()? {
        if !text.trim().is_empty() {
            return Err(HgrError::TrailingContent { line });
        }
    }
    Ok(part)
}
