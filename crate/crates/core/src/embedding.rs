//! Orientable combinatorial embeddings given by rotation systems.
//!
//! A rotation system lists, for each vertex, its neighbours in cyclic
//! order. Faces are traced with the successor rule: from the dart
//! `(a, b)` the walk continues with the successor of `(b, a)` in the
//! rotation at `b`.

use crate::graph::{GraphError, SimpleGraph, SubgraphMask, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("expected {expected} rotations, got {got}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("dart ({tail},{head}) is listed at {tail} but ({head},{tail}) is missing at {head}")]
    InconsistentRotation { tail: VertexId, head: VertexId },
    #[error("graph is not simple: {0}")]
    NonSimpleGraph(GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
}

/// The closed boundary walk of one face.
///
/// An isolated vertex bounds a single face with an empty walk; that face
/// has length zero and keeps the vertex in `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
    pub vertices: Vec<VertexId>,
}

impl FaceWalk {
    /// `|f|`, the number of darts in the walk.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Number of times `v` occurs in the walk (as a dart tail).
    pub fn instances(&self, v: VertexId) -> usize {
        self.darts.iter().filter(|d| d.tail == v).count()
    }

    /// Distinct vertices on the walk, sorted.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: SimpleGraph,
    rotation: Vec<Vec<VertexId>>,
    offsets: Vec<usize>,
    reverse: Vec<usize>,
    faces: Vec<FaceWalk>,
    dart_face: Vec<usize>,
}

impl EmbeddedGraph {
    /// Validates a rotation system and traces its faces.
    pub fn new(n: usize, rotations: Vec<Vec<VertexId>>) -> Result<Self, EmbeddingError> {
        if rotations.len() != n {
            return Err(EmbeddingError::WrongVertexCount {
                expected: n,
                got: rotations.len(),
            });
        }
        let mut edges = Vec::new();
        for (v, rot) in rotations.iter().enumerate() {
            let mut seen = Vec::with_capacity(rot.len());
            for &w in rot {
                if w >= n {
                    return Err(EmbeddingError::NonSimpleGraph(GraphError::VertexOutOfRange {
                        vertex: w,
                        n,
                    }));
                }
                if w == v {
                    return Err(EmbeddingError::NonSimpleGraph(GraphError::Loop(v)));
                }
                if seen.contains(&w) {
                    return Err(EmbeddingError::NonSimpleGraph(GraphError::ParallelEdge(
                        v.min(w),
                        v.max(w),
                    )));
                }
                seen.push(w);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &w in rot {
                if !rotations[w].contains(&v) {
                    return Err(EmbeddingError::InconsistentRotation { tail: v, head: w });
                }
            }
        }
        let graph = SimpleGraph::from_edges(n, &edges).map_err(EmbeddingError::NonSimpleGraph)?;

        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for rot in &rotations {
            offsets.push(total);
            total += rot.len();
        }
        offsets.push(total);
        let mut reverse = vec![0; total];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                let j = rotations[w].iter().position(|&x| x == v).unwrap();
                reverse[offsets[v] + i] = offsets[w] + j;
            }
        }

        let mut g = EmbeddedGraph {
            graph,
            rotation: rotations,
            offsets,
            reverse,
            faces: Vec::new(),
            dart_face: vec![usize::MAX; total],
        };
        g.trace();
        Ok(g)
    }

    /// Rotation at each vertex ordered counter-clockwise by the angle of
    /// the edge in a straight-line drawing.
    pub fn from_straight_line_drawing(
        points: &[(f64, f64)],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, EmbeddingError> {
        let n = points.len();
        let graph = SimpleGraph::from_edges(n, edges).map_err(EmbeddingError::NonSimpleGraph)?;
        let rotations = (0..n)
            .map(|v| {
                let (x, y) = points[v];
                let mut ns = graph.neighbors(v).to_vec();
                ns.sort_by(|&a, &b| {
                    let ta = (points[a].1 - y).atan2(points[a].0 - x);
                    let tb = (points[b].1 - y).atan2(points[b].0 - x);
                    ta.total_cmp(&tb)
                });
                ns
            })
            .collect();
        Self::new(n, rotations)
    }

    /// The rotation system that lists neighbours in increasing order.
    /// Always valid; the surface it describes is whatever it traces to.
    pub fn with_sorted_rotation(graph: &SimpleGraph) -> Self {
        let rotations = (0..graph.vertex_count())
            .map(|v| graph.neighbors(v).to_vec())
            .collect();
        Self::new(graph.vertex_count(), rotations).expect("sorted rotation of a simple graph")
    }

    fn dart(&self, id: usize) -> Dart {
        let tail = self.offsets.partition_point(|&o| o <= id) - 1;
        Dart {
            tail,
            head: self.rotation[tail][id - self.offsets[tail]],
        }
    }

    fn face_successor(&self, id: usize) -> usize {
        let rev = self.reverse[id];
        let head = self.dart(id).head;
        let pos = rev - self.offsets[head];
        self.offsets[head] + (pos + 1) % self.rotation[head].len()
    }

    fn trace(&mut self) {
        let total = self.reverse.len();
        for start in 0..total {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let face = self.faces.len();
            let mut darts = Vec::new();
            let mut id = start;
            loop {
                self.dart_face[id] = face;
                darts.push(self.dart(id));
                id = self.face_successor(id);
                if id == start {
                    break;
                }
            }
            let vertices = darts.iter().map(|d| d.tail).collect();
            self.faces.push(FaceWalk { darts, vertices });
        }
        for v in 0..self.vertex_count() {
            if self.rotation[v].is_empty() {
                self.faces.push(FaceWalk {
                    darts: Vec::new(),
                    vertices: vec![v],
                });
            }
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.graph.degree(v)
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    /// Face containing the dart `(tail, head)`.
    pub fn face_of(&self, tail: VertexId, head: VertexId) -> Option<usize> {
        let i = self.rotation.get(tail)?.iter().position(|&w| w == head)?;
        Some(self.dart_face[self.offsets[tail] + i])
    }

    /// Successor of a dart under the face-tracing rule.
    pub fn next_in_face(&self, d: Dart) -> Option<Dart> {
        let i = self.rotation.get(d.tail)?.iter().position(|&w| w == d.head)?;
        Some(self.dart(self.face_successor(self.offsets[d.tail] + i)))
    }

    /// `χ = |V| − |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn genus(&self) -> Genus {
        Genus::from_chi(
            self.euler_characteristic(),
            self.graph.components().len(),
        )
    }

    pub fn has_triangle(&self) -> bool {
        has_triangle(&self.graph)
    }

    /// Induced embedded subgraph on the vertices not in `removed`; the
    /// surviving darts keep their cyclic order.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Subgraph {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in removed {
            if v < n {
                gone[v] = true;
            }
        }
        let new_to_old: Vec<_> = (0..n).filter(|&v| !gone[v]).collect();
        let mut old_to_new = vec![None; n];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let rotations = new_to_old
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter_map(|&w| old_to_new[w])
                    .collect()
            })
            .collect();
        let graph = EmbeddedGraph::new(new_to_old.len(), rotations)
            .expect("restriction of a valid rotation system");
        Subgraph {
            graph,
            new_to_old,
            old_to_new,
        }
    }

    /// Connected components with `h` restricted to each, ordered by
    /// smallest vertex.
    pub fn components(&self, h: &SubgraphMask) -> Vec<Component> {
        self.graph
            .components()
            .into_iter()
            .map(|comp| {
                let mut keep = vec![false; self.vertex_count()];
                comp.iter().for_each(|&v| keep[v] = true);
                let removed: Vec<_> = (0..self.vertex_count()).filter(|&v| !keep[v]).collect();
                let sub = self.delete_vertices(&removed);
                let h = h.restrict(&sub.new_to_old);
                Component {
                    graph: sub.graph,
                    h,
                    new_to_old: sub.new_to_old,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: EmbeddedGraph,
    pub new_to_old: Vec<VertexId>,
    pub old_to_new: Vec<Option<VertexId>>,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub graph: EmbeddedGraph,
    pub h: SubgraphMask,
    pub new_to_old: Vec<VertexId>,
}

/// Euler characteristic together with both genus readings.
///
/// For an orientable embedding each component contributes `2 − 2g_i`, so
/// the orientable genus is `(2c − χ)/2` over `c` components; the Euler
/// genus is `2c − χ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus {
    pub chi: i64,
    pub components: usize,
    pub orientable_genus: Option<i64>,
    pub euler_genus: i64,
}

impl Genus {
    pub fn from_chi(chi: i64, components: usize) -> Self {
        let euler_genus = 2 * components as i64 - chi;
        Genus {
            chi,
            components,
            orientable_genus: (euler_genus % 2 == 0).then_some(euler_genus / 2),
            euler_genus,
        }
    }
}

pub fn has_triangle(g: &SimpleGraph) -> bool {
    g.edges().any(|(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn c4_has_two_faces() {
        let g = corpus::planar_cycle(4);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 4));
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn missing_reverse_dart_is_rejected() {
        let err = EmbeddedGraph::new(2, vec![vec![1], vec![]]).unwrap_err();
        assert_eq!(err, EmbeddingError::InconsistentRotation { tail: 0, head: 1 });
    }

    #[test]
    fn loops_and_repeats_are_rejected() {
        assert!(matches!(
            EmbeddedGraph::new(1, vec![vec![0]]),
            Err(EmbeddingError::NonSimpleGraph(GraphError::Loop(0)))
        ));
        assert!(matches!(
            EmbeddedGraph::new(2, vec![vec![1, 1], vec![0, 0]]),
            Err(EmbeddingError::NonSimpleGraph(GraphError::ParallelEdge(0, 1)))
        ));
        assert!(matches!(
            EmbeddedGraph::new(3, vec![vec![1], vec![0]]),
            Err(EmbeddingError::WrongVertexCount { .. })
        ));
    }

    #[test]
    fn cube_and_torus() {
        let cube = corpus::cube();
        assert_eq!(cube.faces().len(), 6);
        assert!(cube.faces().iter().all(|f| f.len() == 4));
        assert_eq!(cube.euler_characteristic(), 2);

        let torus = corpus::toroidal_grid(4, 4);
        assert_eq!((torus.vertex_count(), torus.edge_count()), (16, 32));
        assert_eq!(torus.faces().len(), 16);
        assert!(torus.faces().iter().all(|f| f.len() == 4));
        assert_eq!(torus.euler_characteristic(), 0);
        assert_eq!(torus.genus().orientable_genus, Some(1));
    }

    #[test]
    fn triangles() {
        assert!(!corpus::planar_cycle(4).has_triangle());
        assert!(has_triangle(&SimpleGraph::complete(4)));
        assert!(!has_triangle(&corpus::petersen()));
    }

    #[test]
    fn deletion() {
        let c4 = corpus::planar_cycle(4);
        let p3 = c4.delete_vertices(&[0]);
        assert_eq!(p3.graph.vertex_count(), 3);
        assert_eq!(p3.graph.edge_count(), 2);
        assert_eq!(p3.graph.faces().len(), 1);
        assert_eq!(p3.old_to_new[0], None);

        let same = c4.delete_vertices(&[]);
        assert_eq!(same.graph, c4);

        let cube = corpus::cube().delete_vertices(&[0]);
        assert_eq!((cube.graph.vertex_count(), cube.graph.edge_count()), (7, 9));
    }

    #[test]
    fn components_split_h() {
        let g = corpus::disjoint_union(&corpus::planar_cycle(4), &corpus::planar_cycle(5));
        let h = SubgraphMask::new(g.graph(), &[0], &[]).unwrap();
        let comps = g.components(&h);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].h.vertex_count(), 1);
        assert_eq!(comps[1].h.vertex_count(), 0);
        assert_eq!(comps[1].new_to_old, vec![4, 5, 6, 7, 8]);

        assert_eq!(corpus::cube().components(&SubgraphMask::empty(8)).len(), 1);
        let empty = EmbeddedGraph::new(0, vec![]).unwrap();
        assert!(empty.components(&SubgraphMask::empty(0)).is_empty());
    }

    #[test]
    fn isolated_vertex_is_a_sphere() {
        let g = EmbeddedGraph::new(1, vec![vec![]]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].len(), 0);
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.genus().orientable_genus, Some(0));
    }
}
