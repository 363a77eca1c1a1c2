//! Layered bipartite graphs with a distinguished vertex, and their compact
//! string encoding.
//!
//! The encoding is `gbg` followed by depth blocks joined by `v`. A block lists
//! the vertices of one depth joined by `p`, and each vertex lists its edge
//! multiplicities to the vertices of the previous depth joined by `x`. Depth 0
//! is the implicit distinguished vertex. Multiplicities are single decimal
//! digits, so at most 9 parallel edges can be encoded.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

const PREFIX: &str = "gbg";

/// Which grammar rule a malformed encoding violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseRule {
    MissingPrefix,
    EmptyBlock,
    EmptyToken,
    NonDigit,
    ArityMismatch { expected: usize, found: usize },
    DanglingVertex,
}

impl fmt::Display for ParseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRule::MissingPrefix => write!(f, "encoding must start with \"gbg\""),
            ParseRule::EmptyBlock => write!(f, "empty depth block"),
            ParseRule::EmptyToken => write!(f, "empty multiplicity"),
            ParseRule::NonDigit => write!(f, "multiplicity is not a single decimal digit"),
            ParseRule::ArityMismatch { expected, found } => write!(
                f,
                "vertex lists {found} multiplicities but the previous depth has {expected} vertices"
            ),
            ParseRule::DanglingVertex => {
                write!(f, "vertex has no edge to the previous depth")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad graph encoding at byte {position}: {rule}")]
pub struct ParseError {
    pub position: usize,
    pub rule: ParseRule,
}

/// A vine: layers of vertices hanging off a distinguished vertex.
///
/// `layers[d]` holds the vertices at depth `d + 1`; each vertex is the list of
/// edge multiplicities to the vertices at the previous depth.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bigraph {
    layers: Vec<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Bigraph {
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let body = s.strip_prefix(PREFIX).ok_or(ParseError {
            position: 0,
            rule: ParseRule::MissingPrefix,
        })?;
        let mut layers: Vec<Vec<Vec<u8>>> = Vec::new();
        let mut pos = PREFIX.len();
        let mut prev_width = 1;
        for block in body.split('v') {
            if block.is_empty() {
                return Err(ParseError { position: pos, rule: ParseRule::EmptyBlock });
            }
            let mut layer = Vec::new();
            for token in block.split('p') {
                let mut vertex = Vec::new();
                let token_start = pos;
                for digit in token.split('x') {
                    let b = digit.as_bytes();
                    match b {
                        [] => return Err(ParseError { position: pos, rule: ParseRule::EmptyToken }),
                        [d] if d.is_ascii_digit() => vertex.push(d - b'0'),
                        _ => return Err(ParseError { position: pos, rule: ParseRule::NonDigit }),
                    }
                    pos += digit.len() + 1;
                }
                if vertex.len() != prev_width {
                    return Err(ParseError {
                        position: token_start,
                        rule: ParseRule::ArityMismatch { expected: prev_width, found: vertex.len() },
                    });
                }
                if vertex.iter().all(|&m| m == 0) {
                    return Err(ParseError { position: token_start, rule: ParseRule::DanglingVertex });
                }
                layer.push(vertex);
            }
            prev_width = layer.len();
            layers.push(layer);
        }
        Ok(Bigraph { layers, label: None })
    }

    /// Builds a graph from layers, checking the same rules as [`Bigraph::parse`].
    pub fn from_layers(layers: Vec<Vec<Vec<u8>>>) -> Result<Self, ParseError> {
        let g = Bigraph { layers, label: None };
        Bigraph::parse(&g.to_encoding())?;
        if g.layers.iter().flatten().flatten().any(|&m| m > 9) {
            return Err(ParseError { position: 0, rule: ParseRule::NonDigit });
        }
        Ok(g)
    }

    /// The path with `n` vertices, distinguished at one end.
    pub fn path(n: usize) -> Self {
        assert!(n >= 2, "a vine needs at least one edge");
        Bigraph { layers: vec![vec![vec![1]]; n - 1], label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn layers(&self) -> &[Vec<Vec<u8>>] {
        &self.layers
    }

    pub fn to_encoding(&self) -> String {
        let blocks: Vec<String> = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|v| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("x"))
                    .collect::<Vec<_>>()
                    .join("p")
            })
            .collect();
        format!("{PREFIX}{}", blocks.join("v"))
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.layers.iter().map(Vec::len).sum::<usize>()
    }

    /// Largest depth of a vertex.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Attaches a path of `j` edges at the distinguished vertex and moves the
    /// distinguished vertex to its free end.
    pub fn translate(&self, j: usize) -> Self {
        let mut layers = vec![vec![vec![1u8]]; j];
        layers.extend(self.layers.iter().cloned());
        Bigraph { layers, label: self.label.clone() }
    }

    /// Index in canonical order of vertex `k` at depth `d`.
    pub fn vertex_index(&self, d: usize, k: usize) -> Option<usize> {
        if d == 0 {
            return (k == 0).then_some(0);
        }
        let layer = self.layers.get(d - 1)?;
        if k >= layer.len() {
            return None;
        }
        Some(1 + self.layers[..d - 1].iter().map(Vec::len).sum::<usize>() + k)
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.vertex_count();
        let mut entries = vec![0u32; n * n];
        let mut depth = vec![0usize; n];
        let mut prev_start = 0;
        let mut next = 1;
        for (d, layer) in self.layers.iter().enumerate() {
            let start = next;
            for vertex in layer {
                depth[next] = d + 1;
                for (i, &m) in vertex.iter().enumerate() {
                    let u = prev_start + i;
                    entries[u * n + next] = m as u32;
                    entries[next * n + u] = m as u32;
                }
                next += 1;
            }
            prev_start = start;
        }
        let parity = depth.iter().map(|d| (d % 2) as u8).collect();
        AdjacencyMatrix { size: n, entries, parity, depth, start_index: 0 }
    }
}

impl fmt::Display for Bigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_encoding())
    }
}

impl FromStr for Bigraph {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Bigraph::parse(s)
    }
}

/// Symmetric adjacency matrix in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub size: usize,
    entries: Vec<u32>,
    /// Distance from the distinguished vertex mod 2.
    pub parity: Vec<u8>,
    pub depth: Vec<usize>,
    pub start_index: usize,
}

impl AdjacencyMatrix {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for r in rows {
            assert_eq!(r.len(), size, "matrix must be square");
            entries.extend_from_slice(r);
        }
        AdjacencyMatrix { size, entries, parity: vec![0; size], depth: vec![0; size], start_index: 0 }
    }

    /// Largest distance `|i - j|` of a nonzero entry.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0;
        for i in 0..self.size {
            for j in 0..self.size {
                if self.get(i, j) != 0 {
                    bw = bw.max(i.abs_diff(j));
                }
            }
        }
        bw
    }

    pub fn trace_power(&self, k: u32) -> i128 {
        let n = self.size;
        let base: Vec<i128> = self.entries.iter().map(|&e| e as i128).collect();
        let mut acc: Vec<i128> = (0..n * n).map(|i| if i / n == i % n { 1 } else { 0 }).collect();
        for _ in 0..k {
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let a = acc[i * n + l];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] += a * base[l * n + j];
                    }
                }
            }
            acc = next;
        }
        (0..n).map(|i| acc[i * n + i]).sum()
    }
}
