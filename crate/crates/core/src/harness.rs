//! Exact checks of the counting statements at desk scale: the main
//! extension bound, the doubling inequality behind reducibility, and the
//! exponential-criticality definition decided exhaustively.

use crate::coloring::{
    count_extensions, for_each_coloring, Color, ColoringError, CountResult, ListAssignment,
    Precoloring,
};
use crate::configurations::{check_reducible_concrete, ConfigError, Witness};
use crate::discharging::{vertex_bound_from_charges, DischargeError, DischargeParams, VertexBound};
use crate::embedding::EmbeddedGraph;
use crate::graph::{SimpleGraph, SubgraphMask, VertexId};
use crate::rational::{self, int, ratio, Rational};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;
use thiserror::Error;

/// Vertex cap for exact counting runs.
pub const DEFAULT_COUNT_CAP: usize = 12;
/// Vertex cap for the criticality quantifier.
pub const DEFAULT_CRITICALITY_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{size} vertices exceeds the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Discharge(#[from] DischargeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityParams {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    /// Set when α was chosen to make the bound bite at small n. Such runs
    /// say nothing about α = 130.
    pub rescaled: bool,
}

impl CriticalityParams {
    pub fn new(epsilon: Rational, alpha: Rational) -> Result<Self, HarnessError> {
        if epsilon.is_negative() || alpha.is_negative() {
            return Err(HarnessError::PreconditionViolated(
                "ε and α must be non-negative".into(),
            ));
        }
        Ok(CriticalityParams {
            epsilon,
            alpha,
            rescaled: false,
        })
    }

    /// ε = 1/8, α = 130.
    pub fn standard() -> Self {
        CriticalityParams {
            epsilon: ratio(1, 8),
            alpha: int(130),
            rescaled: false,
        }
    }

    pub fn rescaled(epsilon: Rational, alpha_prime: Rational) -> Result<Self, HarnessError> {
        let mut p = Self::new(epsilon, alpha_prime)?;
        p.rescaled = true;
        Ok(p)
    }

    pub fn standard_regime(&self) -> bool {
        self.epsilon <= ratio(1, 8)
    }

    /// `ε(n − α(g + h))`, the base-2 logarithm of the bound.
    pub fn exponent(&self, n: usize, genus: i64, h_vertices: usize) -> Rational {
        &self.epsilon * (int(n as i64) - &self.alpha * int(genus + h_vertices as i64))
    }
}

/// `count ≥ 2^e` decided over the integers: with `e = p/q`, `q > 0`, this
/// is `count^q ≥ 2^p` when `p ≥ 0` and `count ≥ 1` otherwise.
pub fn meets_bound(count: &BigUint, exponent: &Rational) -> bool {
    let p = exponent.numer();
    let q = exponent.denom();
    if !p.is_positive() {
        return !count.is_zero();
    }
    let q = u32::try_from(q).expect("denominator fits in u32");
    let p = u64::try_from(p).expect("numerator fits in u64");
    count.pow(q) >= BigUint::one() << p
}

fn genus_of(g: &EmbeddedGraph) -> i64 {
    let genus = g.genus();
    genus.orientable_genus.unwrap_or(genus.euler_genus / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub genus: i64,
    pub h_vertices: usize,
    pub params: CriticalityParams,
    #[serde(with = "rational::serde_str")]
    pub exponent: Rational,
    #[serde(with = "rational::serde_biguint")]
    pub count: BigUint,
    pub pass: bool,
}

/// Counts the extensions of `phi` and compares with
/// `2^{ε(n − α(g + |V(H)|))}`.
pub fn main_bound_check(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    lists: &ListAssignment,
    phi: &Precoloring,
    params: &CriticalityParams,
    cap: usize,
) -> Result<BoundReport, HarnessError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(HarnessError::SizeCapExceeded { size: n, cap });
    }
    if g.has_triangle() {
        return Err(HarnessError::HypothesisViolated("the graph has a triangle".into()));
    }
    if lists.len() != n {
        return Err(ColoringError::LengthMismatch { lists: lists.len(), n }.into());
    }
    if let Some(v) = lists.first_short_list(4) {
        return Err(HarnessError::HypothesisViolated(format!(
            "vertex {v} has a list of size {}",
            lists.get(v).len()
        )));
    }
    check_h_coloring(h, lists, phi)?;
    let count = count_or_zero(g.graph(), lists, phi)?;
    if count.is_zero() {
        return Err(HarnessError::HypothesisViolated(
            "the precoloring does not extend".into(),
        ));
    }
    let genus = genus_of(g);
    let exponent = params.exponent(n, genus, h.vertex_count());
    Ok(BoundReport {
        n,
        genus,
        h_vertices: h.vertex_count(),
        params: params.clone(),
        pass: meets_bound(&count, &exponent),
        exponent,
        count,
    })
}

fn check_h_coloring(
    h: &SubgraphMask,
    lists: &ListAssignment,
    phi: &Precoloring,
) -> Result<(), HarnessError> {
    for v in h.vertices() {
        match phi.get(v) {
            None => {
                return Err(HarnessError::HypothesisViolated(format!(
                    "vertex {v} of H is not precolored"
                )))
            }
            Some(c) if !lists.get(v).contains(&c) => {
                return Err(HarnessError::HypothesisViolated(format!(
                    "color {c} of vertex {v} is not in its list"
                )))
            }
            Some(_) => {}
        }
    }
    if let Some((v, _)) = phi.iter().find(|&(v, _)| !h.contains_vertex(v)) {
        return Err(HarnessError::HypothesisViolated(format!(
            "vertex {v} is precolored but not in H"
        )));
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| phi.get(u) == phi.get(v)) {
        return Err(HarnessError::HypothesisViolated(format!(
            "edge {u}-{v} of H is monochromatic"
        )));
    }
    Ok(())
}

fn exact(r: CountResult) -> BigUint {
    match r {
        CountResult::Exact { count } => count,
        CountResult::ThresholdReached { threshold } => threshold,
    }
}

/// Extensions of `phi` in `g`, zero when `phi` is already improper there.
fn count_or_zero(
    g: &SimpleGraph,
    lists: &ListAssignment,
    phi: &Precoloring,
) -> Result<BigUint, ColoringError> {
    if !phi.is_proper_on(g) {
        return Ok(BigUint::zero());
    }
    Ok(exact(count_extensions(g, lists, phi, None)?))
}

/// Every L-coloring of the graph `(V(H), E(H))`, as precolorings of G.
pub fn h_colorings(
    h: &SubgraphMask,
    lists: &ListAssignment,
) -> Result<Vec<Precoloring>, ColoringError> {
    let hv: Vec<VertexId> = h.vertices().collect();
    let index = |v: VertexId| hv.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = h.edges().map(|(u, v)| (index(u), index(v))).collect();
    let hg = SimpleGraph::from_edges(hv.len(), &edges).expect("mask edges are simple");
    let mut out = Vec::new();
    let _ = for_each_coloring(&hg, &lists.restrict(&hv), &Precoloring::new(), |c| {
        out.push(Precoloring::from_pairs(hv.iter().copied().zip(c.iter().copied())));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingFailure {
    pub phi: Precoloring,
    #[serde(with = "rational::serde_biguint")]
    pub count_g: BigUint,
    #[serde(with = "rational::serde_biguint")]
    pub count_without_q: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingReport {
    pub q: Vec<VertexId>,
    pub pass: bool,
    /// Colorings of H that extend to G.
    pub colorings_checked: usize,
    pub failure: Option<DoublingFailure>,
}

/// For every L-coloring φ of H extending to G, checks
/// `count(G, φ) ≥ 2 · count(G − Q, φ)`. Refuses to run unless Q is
/// reducible for these lists.
pub fn doubling_check(
    g: &SimpleGraph,
    h: &SubgraphMask,
    lists: &ListAssignment,
    q: &[VertexId],
    cap: usize,
) -> Result<DoublingReport, HarnessError> {
    let verdict = check_reducible_concrete(g, h, q, lists, cap)?;
    if !verdict.reducible {
        let detail = match verdict.witness {
            Some(Witness::RemainderColoring { extensions, .. }) => {
                format!("a coloring of G − Q has {extensions} extension(s)")
            }
            _ => "not reducible".into(),
        };
        return Err(HarnessError::PreconditionViolated(format!(
            "Q is not reducible for these lists: {detail}"
        )));
    }
    let mut q_sorted = q.to_vec();
    q_sorted.sort_unstable();
    let rest: Vec<VertexId> = (0..g.vertex_count())
        .filter(|v| q_sorted.binary_search(v).is_err())
        .collect();
    let (rest_graph, _) = g.induced(&rest);
    let rest_lists = lists.restrict(&rest);
    let two = BigUint::from(2u32);
    let mut checked = 0;
    for phi in h_colorings(h, lists)? {
        let count_g = count_or_zero(g, lists, &phi)?;
        if count_g.is_zero() {
            continue;
        }
        checked += 1;
        let count_without_q = count_or_zero(&rest_graph, &rest_lists, &phi.restrict(&rest))?;
        if count_g < &two * &count_without_q {
            return Ok(DoublingReport {
                q: q_sorted,
                pass: false,
                colorings_checked: checked,
                failure: Some(DoublingFailure {
                    phi,
                    count_g,
                    count_without_q,
                }),
            });
        }
    }
    Ok(DoublingReport {
        q: q_sorted,
        pass: true,
        colorings_checked: checked,
        failure: None,
    })
}

/// How the definition's φ is shared between its two clauses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityReading {
    /// For every G′ some φ meets the G′ bound and misses the G bound.
    #[default]
    Joint,
    /// For every G′ some φ meets the G′ bound, and some possibly different
    /// φ misses the G bound.
    Split,
}

/// A proper subgraph G′ ⊇ H: either G[vertices] or G minus one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProperSubgraph {
    Induced { vertices: Vec<VertexId> },
    EdgeDeleted { edge: (VertexId, VertexId) },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub critical: bool,
    pub reading: CriticalityReading,
    pub params: CriticalityParams,
    pub genus: i64,
    pub h_colorings: usize,
    pub subgraphs_checked: usize,
    /// A G′ for which no φ works, when one exists.
    pub failing_subgraph: Option<ProperSubgraph>,
    /// Whether some φ misses the bound for G itself.
    pub g_clause_holds: bool,
}

/// Decides exponential criticality by exhausting the proper subgraphs
/// that contain H and the L-colorings of H.
///
/// Removing an edge never lowers a count, and the bound for G′ depends
/// only on `|V(G′)|`, so the hardest G′ on a vertex set S ⊊ V(G) is
/// `G[S]` and the hardest spanning ones are `G − e`, `e ∉ E(H)`. Only
/// those are enumerated.
pub fn criticality_check(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    lists: &ListAssignment,
    params: &CriticalityParams,
    reading: CriticalityReading,
    cap: usize,
) -> Result<CriticalityReport, HarnessError> {
    let graph = g.graph();
    let n = graph.vertex_count();
    if n > cap {
        return Err(HarnessError::SizeCapExceeded { size: n, cap });
    }
    if lists.len() != n {
        return Err(ColoringError::LengthMismatch { lists: lists.len(), n }.into());
    }
    if !h.is_proper_in(graph) {
        return Err(HarnessError::HypothesisViolated(
            "H must be a proper subgraph of G".into(),
        ));
    }
    let genus = genus_of(g);
    let hn = h.vertex_count();
    let phis = h_colorings(h, lists)?;
    let g_bound = params.exponent(n, genus, hn);
    let misses_g: Vec<bool> = phis
        .iter()
        .map(|phi| Ok(!meets_bound(&count_or_zero(graph, lists, phi)?, &g_bound)))
        .collect::<Result<_, ColoringError>>()?;
    let g_clause_holds = misses_g.iter().any(|&m| m);

    let outside: Vec<VertexId> = (0..n).filter(|&v| !h.contains_vertex(v)).collect();
    let mut candidates = Vec::new();
    for bits in 0..(1u64 << outside.len()) - 1 {
        let mut vertices: Vec<VertexId> = h.vertices().collect();
        vertices.extend(
            outside
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        vertices.sort_unstable();
        candidates.push(ProperSubgraph::Induced { vertices });
    }
    for (u, v) in graph.edges().filter(|&(u, v)| !h.contains_edge(u, v)) {
        candidates.push(ProperSubgraph::EdgeDeleted { edge: (u, v) });
    }

    let mut checked = 0;
    let mut failing = None;
    for cand in &candidates {
        checked += 1;
        let (sub, new_to_old) = match cand {
            ProperSubgraph::Induced { vertices } => graph.induced(vertices),
            ProperSubgraph::EdgeDeleted { edge } => {
                (graph.without_edge(edge.0, edge.1), (0..n).collect())
            }
        };
        let sub_lists = lists.restrict(&new_to_old);
        let bound = params.exponent(new_to_old.len(), genus, hn);
        let mut witnessed = false;
        for (phi, &miss) in phis.iter().zip(&misses_g) {
            if reading == CriticalityReading::Joint && !miss {
                continue;
            }
            let c = count_or_zero(&sub, &sub_lists, &phi.restrict(&new_to_old))?;
            if meets_bound(&c, &bound) {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            failing = Some(cand.clone());
            break;
        }
    }
    Ok(CriticalityReport {
        critical: failing.is_none() && g_clause_holds,
        reading,
        params: params.clone(),
        genus,
        h_colorings: phis.len(),
        subgraphs_checked: checked,
        failing_subgraph: failing,
        g_clause_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBound {
    pub vertices: Vec<VertexId>,
    pub n: usize,
    pub bound: VertexBound,
    /// Whether this component's size is within the bound. Only a theorem
    /// for critical instances.
    pub within: bool,
}

/// The vertex bound evaluated on each component separately.
pub fn per_component_bound(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    params: &DischargeParams,
) -> Result<Vec<ComponentBound>, HarnessError> {
    g.components(h)
        .into_iter()
        .map(|c| {
            let n = c.graph.vertex_count();
            let bound =
                vertex_bound_from_charges(c.h.vertex_count(), c.graph.euler_characteristic(), params)?;
            Ok(ComponentBound {
                within: int(n as i64) <= bound.target_bound,
                vertices: c.new_to_old,
                n,
                bound,
            })
        })
        .collect()
}

/// The color list `1..=k` for every vertex.
pub fn uniform_lists(n: usize, k: Color) -> ListAssignment {
    ListAssignment::uniform(n, &(1..=k).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bound_comparison() {
        let c = BigUint::from(3u32);
        assert!(meets_bound(&c, &ratio(-5, 8)));
        assert!(!meets_bound(&BigUint::zero(), &ratio(-5, 8)));
        assert!(meets_bound(&c, &ratio(3, 2)));
        assert!(!meets_bound(&c, &ratio(8, 5)));
        assert!(meets_bound(&BigUint::from(4u32), &int(2)));
        assert!(meets_bound(&BigUint::one(), &int(0)));
    }

    #[test]
    fn c4_with_one_precolored_vertex() {
        let f = corpus::by_name("c4_H1").unwrap();
        let r = main_bound_check(
            &f.graph,
            &f.h,
            f.lists.as_ref().unwrap(),
            &f.precoloring,
            &CriticalityParams::standard(),
            DEFAULT_COUNT_CAP,
        )
        .unwrap();
        assert_eq!(r.count, BigUint::from(21u32));
        assert_eq!(r.exponent, ratio(4 - 130, 8));
        assert!(r.pass);
    }

    #[test]
    fn bound_guards() {
        let tri = EmbeddedGraph::new(3, vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let h = SubgraphMask::empty(3);
        let e = main_bound_check(
            &tri,
            &h,
            &uniform_lists(3, 4),
            &Precoloring::new(),
            &CriticalityParams::standard(),
            12,
        );
        assert!(matches!(e, Err(HarnessError::HypothesisViolated(_))));
        let c4 = corpus::planar_cycle(4);
        let e = main_bound_check(
            &c4,
            &SubgraphMask::empty(4),
            &uniform_lists(4, 3),
            &Precoloring::new(),
            &CriticalityParams::standard(),
            12,
        );
        assert!(matches!(e, Err(HarnessError::HypothesisViolated(_))));
    }

    #[test]
    fn doubling_examples() {
        let c4 = SimpleGraph::cycle(4);
        let r = doubling_check(&c4, &SubgraphMask::empty(4), &uniform_lists(4, 4), &[0, 1, 2, 3], 12)
            .unwrap();
        assert!(r.pass && r.colorings_checked == 1);

        let f = corpus::by_name("c4_pendant").unwrap();
        let g = f.graph.graph();
        let r = doubling_check(g, &f.h, f.lists.as_ref().unwrap(), &[4], 12).unwrap();
        assert!(r.pass);

        let c5 = SimpleGraph::cycle(5);
        let e = doubling_check(&c5, &SubgraphMask::empty(5), &uniform_lists(5, 2), &[0, 1, 2, 3, 4], 12);
        assert!(matches!(e, Err(HarnessError::PreconditionViolated(_))));
    }

    #[test]
    fn isolated_vertex_is_not_critical() {
        let g = EmbeddedGraph::new(2, vec![vec![], vec![]]).unwrap();
        let h = SubgraphMask::new(g.graph(), &[0], &[]).unwrap();
        let r = criticality_check(
            &g,
            &h,
            &uniform_lists(2, 4),
            &CriticalityParams::standard(),
            CriticalityReading::Joint,
            7,
        )
        .unwrap();
        assert!(!r.critical && !r.g_clause_holds);
    }

    #[test]
    fn epsilon_zero_collapses_to_extendability() {
        // Path 0-1-2 with H = {0, 2}; vertex 1 has list {1, 2}. φ = (1, 2)
        // extends to G − 1 but not to G.
        let g = EmbeddedGraph::new(3, vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let h = SubgraphMask::new(g.graph(), &[0, 2], &[]).unwrap();
        let lists = ListAssignment::new(vec![vec![1, 2], vec![1, 2], vec![1, 2]]).unwrap();
        let p = CriticalityParams::new(int(0), int(0)).unwrap();
        let r = criticality_check(&g, &h, &lists, &p, CriticalityReading::Joint, 7).unwrap();
        assert!(r.critical);
        let lists = ListAssignment::new(vec![vec![1], vec![1, 2, 3], vec![2]]).unwrap();
        let r = criticality_check(&g, &h, &lists, &p, CriticalityReading::Joint, 7).unwrap();
        assert!(!r.critical);
    }

    #[test]
    fn component_bounds() {
        let f = corpus::by_name("two_tori").unwrap();
        let r = per_component_bound(&f.graph, &f.h, &DischargeParams::standard()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].bound.chi, 0);
        assert_eq!(r[1].bound.chi, 0);
        assert_eq!(r[0].bound.h_vertices + r[1].bound.h_vertices, 1);
    }
}
