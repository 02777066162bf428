//! The embedding JSON document, graph6 import and run reports.
//!
//! A document looks like
//!
//! ```json
//! {
//!   "version": "1",
//!   "n": 4,
//!   "rotations": [[1, 3], [2, 0], [3, 1], [0, 2]],
//!   "H_vertices": [0],
//!   "H_edges": [],
//!   "lists": [[1, 2], [1, 2], [1, 2], [1, 2]],
//!   "precoloring": {"0": 1}
//! }
//! ```
//!
//! Only `version`, `n` and `rotations` are required.

use crate::coloring::{Color, ListAssignment, Precoloring};
use crate::corpus::Fixture;
use crate::embedding::EmbeddedGraph;
use crate::graph::{SimpleGraph, SubgraphMask, VertexId};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {path}: {message}")]
    Validation { path: String, message: String },
    #[error("graph6 line {line}: {message}")]
    Graph6Syntax { line: usize, message: String },
    #[error("rotation entry {index}: {message}")]
    RotationMismatch { index: usize, message: String },
}

impl IoError {
    fn validation(path: impl Into<String>, message: impl ToString) -> Self {
        IoError::Validation {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub version: String,
    pub n: usize,
    pub rotations: Vec<Vec<VertexId>>,
    #[serde(rename = "H_vertices", default, skip_serializing_if = "Option::is_none")]
    pub h_vertices: Option<Vec<VertexId>>,
    #[serde(rename = "H_edges", default, skip_serializing_if = "Option::is_none")]
    pub h_edges: Option<Vec<(VertexId, VertexId)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<Color>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precoloring: Option<BTreeMap<VertexId, Color>>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: EmbeddedGraph,
    pub h: SubgraphMask,
    pub lists: Option<ListAssignment>,
    pub precoloring: Precoloring,
}

impl Instance {
    /// The lists, or `{1, …, k}` everywhere when the document has none.
    /// Fails naming the first vertex whose list is shorter than `k`.
    pub fn k_lists(&self, k: usize) -> Result<ListAssignment, IoError> {
        match &self.lists {
            None => Ok(ListAssignment::uniform(
                self.graph.vertex_count(),
                &(1..=k as Color).collect::<Vec<_>>(),
            )),
            Some(l) => match l.first_short_list(k) {
                Some(v) => Err(IoError::validation(
                    format!("lists[{v}]"),
                    format!(
                        "vertex {v} has a list of size {}, this command needs {k}",
                        l.get(v).len()
                    ),
                )),
                None => Ok(l.clone()),
            },
        }
    }
}

impl EmbeddingDocument {
    pub fn from_parts(
        graph: &EmbeddedGraph,
        h: &SubgraphMask,
        lists: Option<&ListAssignment>,
        precoloring: &Precoloring,
    ) -> Self {
        let h_vertices: Vec<VertexId> = h.vertices().collect();
        let h_edges: Vec<(VertexId, VertexId)> = h.edges().collect();
        EmbeddingDocument {
            version: FORMAT_VERSION.to_string(),
            n: graph.vertex_count(),
            rotations: graph.rotations().to_vec(),
            h_vertices: (!h_vertices.is_empty()).then_some(h_vertices),
            h_edges: (!h_edges.is_empty()).then_some(h_edges),
            lists: lists.map(|l| l.lists().to_vec()),
            precoloring: (!precoloring.is_empty()).then(|| precoloring.iter().collect()),
        }
    }

    pub fn from_fixture(f: &Fixture) -> Self {
        Self::from_parts(&f.graph, &f.h, f.lists.as_ref(), &f.precoloring)
    }

    pub fn validate(&self) -> Result<Instance, IoError> {
        if self.version != FORMAT_VERSION {
            return Err(IoError::validation(
                "version",
                format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.version),
            ));
        }
        if self.rotations.len() != self.n {
            return Err(IoError::validation(
                "rotations",
                format!("{} rotations for n = {}", self.rotations.len(), self.n),
            ));
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            if let Some(i) = rot.iter().position(|&w| w >= self.n) {
                return Err(IoError::validation(
                    format!("rotations[{v}][{i}]"),
                    format!("vertex {} is out of range", rot[i]),
                ));
            }
        }
        let graph = EmbeddedGraph::new(self.n, self.rotations.clone())
            .map_err(|e| IoError::validation("rotations", e))?;
        let hv = self.h_vertices.clone().unwrap_or_default();
        if let Some(i) = hv.iter().position(|&v| v >= self.n) {
            return Err(IoError::validation(
                format!("H_vertices[{i}]"),
                format!("vertex {} is out of range", hv[i]),
            ));
        }
        let he = self.h_edges.clone().unwrap_or_default();
        for (i, &(u, v)) in he.iter().enumerate() {
            if let Err(e) = SubgraphMask::new(graph.graph(), &hv, &[(u, v)]) {
                return Err(IoError::validation(format!("H_edges[{i}]"), e));
            }
        }
        let h = SubgraphMask::new(graph.graph(), &hv, &he)
            .map_err(|e| IoError::validation("H_edges", e))?;
        let lists = match &self.lists {
            None => None,
            Some(ls) => {
                if ls.len() != self.n {
                    return Err(IoError::validation(
                        "lists",
                        format!("{} lists for n = {}", ls.len(), self.n),
                    ));
                }
                if let Some(v) = ls.iter().position(Vec::is_empty) {
                    return Err(IoError::validation(format!("lists[{v}]"), "empty list"));
                }
                Some(ListAssignment::new(ls.clone()).map_err(|e| IoError::validation("lists", e))?)
            }
        };
        let mut precoloring = Precoloring::new();
        for (&v, &c) in self.precoloring.iter().flatten() {
            if v >= self.n {
                return Err(IoError::validation(
                    format!("precoloring.{v}"),
                    "vertex is out of range",
                ));
            }
            if let Some(l) = &lists {
                if !l.get(v).contains(&c) {
                    return Err(IoError::validation(
                        format!("precoloring.{v}"),
                        format!("color {c} is not in the list of vertex {v}"),
                    ));
                }
            }
            precoloring.insert(v, c);
        }
        Ok(Instance {
            graph,
            h,
            lists,
            precoloring,
        })
    }

    /// Pretty JSON with a trailing newline. Field and key order are fixed,
    /// so equal documents serialize to equal bytes.
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Parses and validates a document, reporting the first problem found.
pub fn parse_embedding(text: &str) -> Result<EmbeddingDocument, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: EmbeddingDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            IoError::validation(path, inner)
        } else {
            IoError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    doc.validate()?;
    Ok(doc)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn encode_graph6(g: &SimpleGraph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            byte |= (b as u8) << (5 - k);
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 line; `line` is only used in error messages.
pub fn decode_graph6(text: &str, line: usize) -> Result<SimpleGraph, IoError> {
    let err = |message: &str| IoError::Graph6Syntax {
        line,
        message: message.to_string(),
    };
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.first().is_some_and(|&b| b == b':' || b == b'&') {
        return Err(err("sparse6 and digraph6 are not supported"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(&format!("byte {b} is outside the graph6 range")));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty line")),
        [126, 126, ..] => return Err(err("graphs above 258047 vertices are not supported")),
        [126, rest @ ..] if rest.len() >= 3 => (
            rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize),
            &rest[3..],
        ),
        [126, ..] => return Err(err("truncated vertex count")),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(err(&format!(
            "expected {} data bytes for {n} vertices, got {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges).map_err(|e| err(&e.to_string()))
}

/// One document per non-empty graph6 line, in order.
///
/// `rotations` is JSON lines, one array of rotations per graph; each
/// rotation must be a cyclic order of exactly that vertex's neighbours.
/// Without it every vertex gets its neighbours in increasing order, which
/// is a valid embedding of some orientable genus.
pub fn import_graph6(text: &str, rotations: Option<&str>) -> Result<Vec<EmbeddingDocument>, IoError> {
    let graphs: Vec<SimpleGraph> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_graph6(l.trim(), i + 1))
        .collect::<Result<_, _>>()?;
    let rots: Option<Vec<Vec<Vec<VertexId>>>> = rotations
        .map(|r| {
            r.lines()
                .filter(|l| !l.trim().is_empty())
                .enumerate()
                .map(|(i, l)| {
                    serde_json::from_str(l).map_err(|e| IoError::RotationMismatch {
                        index: i,
                        message: e.to_string(),
                    })
                })
                .collect()
        })
        .transpose()?;
    if let Some(r) = &rots {
        if r.len() != graphs.len() {
            return Err(IoError::RotationMismatch {
                index: r.len().min(graphs.len()),
                message: format!("{} rotation entries for {} graphs", r.len(), graphs.len()),
            });
        }
    }
    graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let rotations = match &rots {
                None => (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(),
                Some(r) => {
                    let rot = &r[i];
                    if rot.len() != g.vertex_count() {
                        return Err(IoError::RotationMismatch {
                            index: i,
                            message: format!(
                                "{} rotations for a graph on {} vertices",
                                rot.len(),
                                g.vertex_count()
                            ),
                        });
                    }
                    for (v, rv) in rot.iter().enumerate() {
                        let mut sorted = rv.clone();
                        sorted.sort_unstable();
                        if sorted != g.neighbors(v) {
                            return Err(IoError::RotationMismatch {
                                index: i,
                                message: format!(
                                    "rotation at vertex {v} is not an ordering of its neighbours"
                                ),
                            });
                        }
                    }
                    rot.clone()
                }
            };
            Ok(EmbeddingDocument {
                version: FORMAT_VERSION.to_string(),
                n: g.vertex_count(),
                rotations,
                h_vertices: None,
                h_edges: None,
                lists: None,
                precoloring: None,
            })
        })
        .collect()
}

/// Process exit codes shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Success,
    VerifiedFalse,
    InputError,
    CapExceeded,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::VerifiedFalse => 1,
            ExitStatus::InputError => 2,
            ExitStatus::CapExceeded => 3,
        }
    }

    pub fn from_verdict(pass: bool) -> Self {
        if pass {
            ExitStatus::Success
        } else {
            ExitStatus::VerifiedFalse
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    /// SHA-256 over the input bytes and the normalized flags.
    pub inputs_digest: String,
    pub result: serde_json::Value,
    pub exit_status: ExitStatus,
}

/// Hex SHA-256 of the parts, each prefixed by its length.
pub fn digest_inputs<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}
