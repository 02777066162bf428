//! Named example instances.
//!
//! The same instances are serialized under `fixtures/` so the command-line
//! tool and the acceptance suite can load them by name; a test keeps the
//! two in sync.

use crate::coloring::{Color, ListAssignment, Precoloring};
use crate::embedding::EmbeddedGraph;
use crate::graph::{SimpleGraph, SubgraphMask, VertexId};

/// An embedded graph with its precolored part and optional lists.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: EmbeddedGraph,
    pub h: SubgraphMask,
    pub lists: Option<ListAssignment>,
    pub precoloring: Precoloring,
}

impl Fixture {
    fn new(name: &'static str, graph: EmbeddedGraph) -> Self {
        let n = graph.vertex_count();
        Fixture {
            name,
            graph,
            h: SubgraphMask::empty(n),
            lists: None,
            precoloring: Precoloring::new(),
        }
    }

    /// H becomes the subgraph induced by `vertices`.
    fn with_h(mut self, vertices: &[VertexId]) -> Self {
        self.h = SubgraphMask::induced(self.graph.graph(), vertices).expect("fixture H");
        self
    }

    fn with_lists(mut self, colors: &[Color]) -> Self {
        self.lists = Some(ListAssignment::uniform(self.graph.vertex_count(), colors));
        self
    }

    fn with_precoloring(mut self, pairs: &[(VertexId, Color)]) -> Self {
        self.precoloring = Precoloring::from_pairs(pairs.iter().copied());
        self
    }
}

/// Straight-line drawing under construction.
#[derive(Default)]
struct Drawing {
    points: Vec<(f64, f64)>,
    edges: Vec<(VertexId, VertexId)>,
    stubs: Vec<VertexId>,
}

impl Drawing {
    fn vertex(&mut self, x: f64, y: f64) -> VertexId {
        self.points.push((x, y));
        self.points.len() - 1
    }

    fn path(&mut self, vs: &[VertexId]) {
        for w in vs.windows(2) {
            self.edges.push((w[0], w[1]));
        }
    }

    /// Half-unit edge from `v` at `degrees`, ending in a new leaf.
    fn stub(&mut self, v: VertexId, degrees: f64) {
        let (x, y) = self.points[v];
        let t = degrees.to_radians();
        let leaf = self.vertex(x + 0.5 * t.cos(), y + 0.5 * t.sin());
        self.edges.push((v, leaf));
        self.stubs.push(leaf);
    }

    fn build(&self) -> EmbeddedGraph {
        EmbeddedGraph::from_straight_line_drawing(&self.points, &self.edges)
            .expect("fixture drawing")
    }
}

pub fn planar_cycle(n: usize) -> EmbeddedGraph {
    let points: Vec<_> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    EmbeddedGraph::from_straight_line_drawing(&points, &edges).expect("cycle drawing")
}

/// Outer square 0–3, inner square 4–7, spokes i–(i+4).
pub fn cube() -> EmbeddedGraph {
    let points = [
        (-2.0, -2.0),
        (2.0, -2.0),
        (2.0, 2.0),
        (-2.0, 2.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (1.0, 1.0),
        (-1.0, 1.0),
    ];
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
        edges.push((4 + i, 4 + (i + 1) % 4));
        edges.push((i, i + 4));
    }
    EmbeddedGraph::from_straight_line_drawing(&points, &edges).expect("cube drawing")
}

/// `rows × cols` grid on the torus, vertex `(i, j)` at `i·cols + j`,
/// each rotation N, E, S, W. Needs both sides ≥ 3.
pub fn toroidal_grid(rows: usize, cols: usize) -> EmbeddedGraph {
    assert!(rows >= 3 && cols >= 3);
    let at = |i: usize, j: usize| (i % rows) * cols + j % cols;
    let rotations = (0..rows * cols)
        .map(|v| {
            let (i, j) = (v / cols, v % cols);
            vec![
                at(i + rows - 1, j),
                at(i, j + 1),
                at(i + 1, j),
                at(i, j + cols - 1),
            ]
        })
        .collect();
    EmbeddedGraph::new(rows * cols, rotations).expect("toroidal grid")
}

pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::from_edges(10, &edges).unwrap()
}

/// Schlegel diagram: outer pentagon a, its pendants b, the zigzag c and
/// the inner pentagon d, labelled a_i = i, b_i = 5+i, c_i = 10+i,
/// d_i = 15+i.
pub fn dodecahedron() -> EmbeddedGraph {
    let mut d = Drawing::default();
    let polar = |r: f64, deg: f64| {
        let t = deg.to_radians();
        (r * t.cos(), r * t.sin())
    };
    for (r, off) in [(4.0, 0.0), (3.0, 0.0), (2.5, 36.0), (1.5, 36.0)] {
        for i in 0..5 {
            let (x, y) = polar(r, 72.0 * i as f64 + off);
            d.vertex(x, y);
        }
    }
    for i in 0..5 {
        let j = (i + 1) % 5;
        d.edges.extend([
            (i, j),
            (i, 5 + i),
            (5 + i, 10 + i),
            (10 + i, 5 + j),
            (10 + i, 15 + i),
            (15 + i, 15 + j),
        ]);
    }
    d.build()
}

/// Vertices of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &EmbeddedGraph, b: &EmbeddedGraph) -> EmbeddedGraph {
    let shift = a.vertex_count();
    let mut rotations = a.rotations().to_vec();
    rotations.extend(
        b.rotations()
            .iter()
            .map(|r| r.iter().map(|&w| w + shift).collect()),
    );
    EmbeddedGraph::new(shift + b.vertex_count(), rotations).expect("union of embeddings")
}

/// A stamen drawing: v (vertex 0) with five stubs
/// above and the path v, 1, 2, 3 below, ending in a 3-vertex. With
/// `root_degree_three` only two of v's stubs are kept.
fn stamen_drawing(root_degree_three: bool) -> Drawing {
    let mut d = Drawing::default();
    let v = d.vertex(0.0, 0.0);
    let p: Vec<_> = (1..=3).map(|k| d.vertex(0.0, -(k as f64))).collect();
    d.path(&[v, p[0], p[1], p[2]]);
    let up: &[f64] = if root_degree_three {
        &[70.0, 110.0]
    } else {
        &[70.0, 80.0, 90.0, 100.0, 110.0]
    };
    for &a in up {
        d.stub(v, a);
    }
    for &w in &p[..2] {
        d.stub(w, 0.0);
        d.stub(w, 180.0);
    }
    d.stub(p[2], -60.0);
    d.stub(p[2], -120.0);
    d
}

/// A poppy drawing: center 0 with the four stamens 0–5,
/// 0–1–2–5, 0–3–4–5 and 0–6–7.
fn poppy_drawing() -> Drawing {
    let mut d = Drawing::default();
    for (x, y) in [
        (0.0, 0.0),
        (1.0, 0.0),
        (1.0, 1.0),
        (-1.0, 0.0),
        (-1.0, 1.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (0.0, -2.0),
    ] {
        d.vertex(x, y);
    }
    d.path(&[0, 1, 2, 5, 4, 3, 0]);
    d.path(&[0, 5]);
    d.path(&[0, 6, 7]);
    for (v, a) in [
        (0, -45.0),
        (0, -135.0),
        (1, -60.0),
        (1, -30.0),
        (2, 60.0),
        (2, 30.0),
        (3, -120.0),
        (3, -150.0),
        (4, 120.0),
        (4, 150.0),
        (6, 0.0),
        (6, 180.0),
        (7, -60.0),
        (7, -120.0),
    ] {
        d.stub(v, a);
    }
    d
}

/// A Rule 1 drawing: v = 0, v' = 1 (in H), u = 5.
fn rule_drawing() -> Drawing {
    let mut d = Drawing::default();
    for (x, y) in [
        (0.0, 0.0),
        (1.0, 0.0),
        (1.0, 1.0),
        (-1.0, 0.0),
        (-1.0, 1.0),
        (0.0, 1.0),
    ] {
        d.vertex(x, y);
    }
    d.path(&[0, 5]);
    d.path(&[0, 1, 2, 5]);
    d.path(&[0, 3, 4, 5]);
    for (v, a) in [
        (0, -45.0),
        (0, -135.0),
        (2, 60.0),
        (2, 30.0),
        (3, -120.0),
        (3, -150.0),
        (4, 120.0),
        (4, 150.0),
    ] {
        d.stub(v, a);
    }
    d
}

fn hosted(name: &'static str, d: &Drawing) -> Fixture {
    Fixture::new(name, d.build()).with_h(&d.stubs)
}

fn theta() -> EmbeddedGraph {
    let points = [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)];
    let edges = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)];
    EmbeddedGraph::from_straight_line_drawing(&points, &edges).unwrap()
}

/// C4 on 0–3 with a pendant vertex 4 at 0.
fn c4_pendant() -> EmbeddedGraph {
    let points = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (2.0, 0.0)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)];
    EmbeddedGraph::from_straight_line_drawing(&points, &edges).unwrap()
}

/// C5 on 0–4 with a pendant vertex 5 at 0.
fn c5_pendant() -> EmbeddedGraph {
    let mut points: Vec<_> = (0..5)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 5.0;
            (t.cos(), t.sin())
        })
        .collect();
    points.push((2.0, 0.0));
    let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.push((0, 5));
    EmbeddedGraph::from_straight_line_drawing(&points, &edges).unwrap()
}

/// K_{4,4} with sides {0..3} and {4..7}, rotations in increasing order.
fn k44() -> EmbeddedGraph {
    let edges: Vec<_> = (0..4)
        .flat_map(|a| (4..8).map(move |b| (a, b)))
        .collect();
    EmbeddedGraph::with_sorted_rotation(&SimpleGraph::from_edges(8, &edges).unwrap())
}

/// Every named fixture, in a fixed order.
pub fn all() -> Vec<Fixture> {
    let four = [1, 2, 3, 4];
    let torus = toroidal_grid(4, 4);
    let checkerboard: Vec<_> = (0..16).filter(|v| (v / 4 + v % 4) % 2 == 0).collect();
    let dodeca_free = [0, 2, 8, 9, 10, 11, 17, 19];
    let dodeca_h: Vec<_> = (0..20).filter(|v| !dodeca_free.contains(v)).collect();
    let path3 = EmbeddedGraph::from_straight_line_drawing(
        &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)],
        &[(0, 1), (1, 2)],
    )
    .unwrap();
    let k2 = EmbeddedGraph::from_straight_line_drawing(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)])
        .unwrap();
    let mut c4_mixed = Fixture::new("c4_mixed_lists", planar_cycle(4));
    c4_mixed.lists = Some(
        ListAssignment::new(vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2, 3]]).unwrap(),
    );

    vec![
        Fixture::new("c4", planar_cycle(4)),
        Fixture::new("c4_2lists", planar_cycle(4)).with_lists(&[1, 2]),
        Fixture::new("c4_4lists", planar_cycle(4)).with_lists(&four),
        Fixture::new("c4_H1", planar_cycle(4))
            .with_h(&[0])
            .with_lists(&four)
            .with_precoloring(&[(0, 1)]),
        c4_mixed,
        Fixture::new("c4_pendant", c4_pendant()).with_lists(&four),
        Fixture::new("c5", planar_cycle(5)).with_lists(&[1, 2]),
        Fixture::new("c5_pendant", c5_pendant()).with_lists(&four),
        Fixture::new("k2", k2).with_h(&[0]).with_lists(&[1, 2]),
        Fixture::new("path3", path3.clone()).with_lists(&four),
        Fixture::new("path3_ends", path3).with_h(&[0, 2]).with_lists(&[1, 2]),
        Fixture::new("theta", theta())
            .with_h(&[0])
            .with_lists(&[1, 2, 3])
            .with_precoloring(&[(0, 2)]),
        Fixture::new("cube", cube()),
        Fixture::new("cube_H1", cube()).with_h(&[0]),
        Fixture::new("cube_Hside", cube()).with_h(&[0, 2, 5, 7]),
        Fixture::new("torus_4x4", torus.clone()),
        Fixture::new("torus_4x4_Hclass", torus.clone()).with_h(&checkerboard),
        Fixture::new("two_tori", disjoint_union(&torus, &torus)).with_h(&[0]),
        Fixture::new("c4_c5", disjoint_union(&planar_cycle(4), &planar_cycle(5))).with_h(&[0]),
        Fixture::new("k44_Hside", k44()).with_h(&[0, 1, 2, 3]),
        Fixture::new("dodecahedron_H", dodecahedron()).with_h(&dodeca_h),
        Fixture::new("stamen_shape", stamen_drawing(false).build()),
        hosted("stamen_hosted", &stamen_drawing(false)),
        hosted("stamen_deg3_hosted", &stamen_drawing(true)),
        Fixture::new("poppy_shape", poppy_drawing().build()),
        hosted("poppy_hosted", &poppy_drawing()),
        Fixture::new("rule1_example", rule_drawing().build()).with_h(&[1]),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = all().iter().map(|f| f.name).collect();
        names.sort();
        let len = names.len();
        names.dedup();
        assert_eq!(names.len(), len);
    }

    #[test]
    fn drawings_are_planar_and_triangle_free() {
        for f in all() {
            assert!(!f.graph.has_triangle(), "{}", f.name);
            if f.name.starts_with("stamen") || f.name.starts_with("poppy") || f.name == "rule1_example" || f.name.starts_with("c4") || f.name == "cube" {
                assert_eq!(
                    f.graph.euler_characteristic(),
                    2 * f.graph.graph().components().len() as i64,
                    "{}",
                    f.name
                );
            }
        }
    }

    #[test]
    fn drawn_degrees() {
        let s = stamen_drawing(false).build();
        assert_eq!([s.degree(0), s.degree(1), s.degree(2), s.degree(3)], [6, 4, 4, 3]);
        let p = poppy_drawing().build();
        let degs: Vec<_> = (0..8).map(|v| p.degree(v)).collect();
        assert_eq!(degs, [6, 4, 4, 4, 4, 3, 4, 3]);
        let r = rule_drawing().build();
        let degs: Vec<_> = (0..6).map(|v| r.degree(v)).collect();
        assert_eq!(degs, [5, 2, 4, 4, 4, 3]);
    }

    #[test]
    fn dodecahedron_faces_are_pentagons() {
        let d = dodecahedron();
        assert_eq!(d.faces().len(), 12);
        assert!(d.faces().iter().all(|f| f.len() == 5));
    }
}
