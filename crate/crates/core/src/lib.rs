//! Exact list-coloring machinery for triangle-free graphs on orientable
//! surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] and [`embedding`]: simple graphs, rotation systems, face
//!   tracing and Euler characteristic.
//! * [`coloring`]: exact counting of list-colorings extending a
//!   precoloring, canonical list-assignment enumeration and the two
//!   degree-choosability tests (block structure and brute force).
//! * [`configurations`]: small 4-faces, stamens, poppies and reducibility
//!   verdicts, both for concrete lists and for worst-case residual lists.
//! * [`discharging`]: the charge ledger, the four transfer rules and the
//!   per-class final-charge thresholds, all in exact rationals.
//! * [`harness`]: the exponential lower bound check, the doubling
//!   argument and an exhaustive criticality decider for tiny instances.
//! * [`io`]: the embedding JSON document, graph6 import and report
//!   serialization helpers.

pub mod coloring;
pub mod configurations;
pub mod corpus;
pub mod discharging;
pub mod embedding;
pub mod graph;
pub mod harness;
pub mod io;
pub mod rational;

pub use coloring::{
    count_extensions, extends_at_least, Color, ColoringError, CountResult, ListAssignment,
    Precoloring,
};
pub use embedding::{Dart, EmbeddedGraph, EmbeddingError, FaceWalk};
pub use graph::{SimpleGraph, SubgraphMask, VertexId};
pub use rational::Rational;
