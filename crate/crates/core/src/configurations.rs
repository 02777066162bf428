//! Small 4-faces, stamens, poppies and reducibility verdicts.
//!
//! A configuration is a vertex set Q outside H, taken with the edges G
//! induces on it. Every other neighbor of u ∈ Q is assumed to carry its
//! own forbidden color, so u keeps `k − ext(u)` colors where
//! `ext(u) = d_G(u) − d_Q(u)`.

use crate::coloring::{
    count_extensions, for_each_coloring, is_degree_choosable_structural,
    min_colorings_over_assignments, Color, ColoringError, CountResult, ListAssignment,
    Precoloring,
};
use crate::embedding::EmbeddedGraph;
use crate::graph::{SimpleGraph, SubgraphMask, VertexId};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use thiserror::Error;

/// Default bound on the number of vertices of a stamen.
pub const DEFAULT_STAMEN_VERTICES: usize = 4;
/// Default vertex cap for [`check_reducible_concrete`].
pub const DEFAULT_CONCRETE_CAP: usize = 12;
/// Default configuration-size cap for [`check_reducible_abstract`].
pub const DEFAULT_ABSTRACT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("vertex {0} of the configuration lies in H")]
    MeetsH(VertexId),
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(VertexId),
    #[error("instance has {size} vertices, above the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("not a poppy: {0}")]
    NotAPoppy(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// A path from its root `path[0]` to its tip, a 3-vertex outside H,
/// through 4-vertices outside H.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Stamen {
    pub path: Vec<VertexId>,
}

impl Stamen {
    pub fn root(&self) -> VertexId {
        self.path[0]
    }

    pub fn tip(&self) -> VertexId {
        *self.path.last().unwrap()
    }

    pub fn internal(&self) -> &[VertexId] {
        &self.path[1..self.path.len() - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.path.len()
    }

    pub fn internally_disjoint(&self, other: &Stamen) -> bool {
        self.internal().iter().all(|v| !other.internal().contains(v))
    }

    /// Whether every vertex of the path lies on `face`.
    pub fn incident_with(&self, g: &EmbeddedGraph, face: usize) -> bool {
        let f = &g.faces()[face];
        self.path.iter().all(|&v| f.contains(v))
    }

    /// Checks the three defining clauses against `(g, h)`.
    pub fn is_valid(&self, g: &SimpleGraph, h: &SubgraphMask) -> bool {
        let p = &self.path;
        if p.len() < 2 || p.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        let mut seen = p.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == p.len()
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && g.degree(self.tip()) == 3
            && !h.contains_vertex(self.tip())
            && self
                .internal()
                .iter()
                .all(|&w| g.degree(w) == 4 && !h.contains_vertex(w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poppy {
    pub center: VertexId,
    pub stamens: Vec<Stamen>,
}

impl Poppy {
    /// Sorted vertex set of the union.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut vs: Vec<_> = std::iter::once(self.center)
            .chain(self.stamens.iter().flat_map(|s| s.path.iter().copied()))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// An induced subgraph together with its external deficits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    /// Host vertex of each local vertex, increasing.
    pub vertices: Vec<VertexId>,
    pub graph: SimpleGraph,
    pub ext: Vec<usize>,
}

impl Configuration {
    /// G[q] with `ext(u) = d_G(u) − d_Q(u)`.
    pub fn from_vertex_set(g: &SimpleGraph, q: &[VertexId]) -> Result<Self, ConfigError> {
        if q.is_empty() {
            return Err(ConfigError::EmptyConfiguration);
        }
        if let Some(&v) = q.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(ConfigError::VertexOutOfRange(v));
        }
        let mut vertices = q.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let (graph, _) = g.induced(&vertices);
        let ext = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| g.degree(v) - graph.degree(i))
            .collect();
        Ok(Configuration {
            vertices,
            graph,
            ext,
        })
    }

    /// A configuration with no host; local and host ids coincide.
    pub fn detached(graph: SimpleGraph, ext: Vec<usize>) -> Self {
        assert_eq!(graph.vertex_count(), ext.len());
        Configuration {
            vertices: (0..ext.len()).collect(),
            graph,
            ext,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `k − ext(u)`, possibly non-positive.
    pub fn residual_sizes(&self, k: usize) -> Vec<i64> {
        self.ext.iter().map(|&e| k as i64 - e as i64).collect()
    }

    fn local(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Degree in the host graph.
    fn host_degree(&self, local: usize) -> usize {
        self.graph.degree(local) + self.ext[local]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A coloring of G − V(Q) with fewer than two extensions.
    RemainderColoring {
        coloring: BTreeMap<VertexId, Color>,
        extensions: u64,
    },
    /// Residual lists on Q admitting fewer than two colorings.
    ResidualLists {
        lists: BTreeMap<VertexId, Vec<Color>>,
        colorings: u64,
    },
    /// A vertex whose residual list can be empty.
    ExhaustedResidual { vertex: VertexId, residual_size: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityVerdict {
    pub reducible: bool,
    pub witness: Option<Witness>,
    /// Remainder colorings or residual assignments inspected.
    pub checked: u64,
}

impl ReducibilityVerdict {
    fn reducible(checked: u64) -> Self {
        ReducibilityVerdict {
            reducible: true,
            witness: None,
            checked,
        }
    }

    fn failed(witness: Witness, checked: u64) -> Self {
        ReducibilityVerdict {
            reducible: false,
            witness: Some(witness),
            checked,
        }
    }
}

/// Facial 4-cycles avoiding H whose vertices all have degree ≤ 4, as
/// face indices.
pub fn find_small_4faces(g: &EmbeddedGraph, h: &SubgraphMask) -> Vec<usize> {
    g.faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let vs = f.vertex_set();
            f.len() == 4
                && vs.len() == 4
                && vs
                    .iter()
                    .all(|&v| !h.contains_vertex(v) && g.degree(v) <= 4)
        })
        .map(|(i, _)| i)
        .collect()
}

/// All v-stamens with at most `max_vertices` vertices, lexicographic by
/// vertex sequence.
pub fn find_stamens(
    g: &SimpleGraph,
    h: &SubgraphMask,
    v: VertexId,
    max_vertices: usize,
) -> Vec<Stamen> {
    let mut out = Vec::new();
    let mut path = vec![v];
    extend_stamens(g, h, &mut path, max_vertices, &mut out);
    out.sort();
    out
}

fn extend_stamens(
    g: &SimpleGraph,
    h: &SubgraphMask,
    path: &mut Vec<VertexId>,
    max_vertices: usize,
    out: &mut Vec<Stamen>,
) {
    if path.len() >= max_vertices {
        return;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if path.contains(&w) || h.contains_vertex(w) {
            continue;
        }
        match g.degree(w) {
            3 => {
                path.push(w);
                out.push(Stamen { path: path.clone() });
                path.pop();
            }
            4 => {
                path.push(w);
                extend_stamens(g, h, path, max_vertices, out);
                path.pop();
            }
            _ => {}
        }
    }
}

/// For each center outside H, a maximum internally disjoint packing of
/// its stamens; a poppy is reported when the packing has at least
/// `d(v) − 2` stamens. Among maximum packings the lexicographically
/// smallest list of stamens is chosen.
pub fn find_poppies(g: &SimpleGraph, h: &SubgraphMask, max_vertices: usize) -> Vec<Poppy> {
    (0..g.vertex_count())
        .filter(|&v| !h.contains_vertex(v))
        .filter_map(|v| {
            let packing = max_stamen_packing(&find_stamens(g, h, v, max_vertices));
            (packing.len() + 2 >= g.degree(v)).then_some(Poppy {
                center: v,
                stamens: packing,
            })
        })
        .collect()
}

/// Largest pairwise internally disjoint subfamily of `stamens` (which
/// must share a root). Exhaustive branch and bound.
pub fn max_stamen_packing(stamens: &[Stamen]) -> Vec<Stamen> {
    // single edges never conflict
    let (free, rest): (Vec<_>, Vec<_>) = stamens.iter().partition(|s| s.internal().is_empty());
    // stamens through the same first vertex conflict pairwise
    let mut groups: BTreeMap<VertexId, Vec<&Stamen>> = BTreeMap::new();
    for s in rest {
        groups.entry(s.path[1]).or_default().push(s);
    }
    let groups: Vec<Vec<&Stamen>> = groups.into_values().collect();
    let mut best: Vec<&Stamen> = Vec::new();
    let mut current: Vec<&Stamen> = Vec::new();
    pack(&groups, 0, &mut current, &mut best);
    let mut out: Vec<Stamen> = free.into_iter().cloned().collect();
    out.extend(best.into_iter().cloned());
    out.sort();
    out
}

fn pack<'a>(
    groups: &[Vec<&'a Stamen>],
    i: usize,
    current: &mut Vec<&'a Stamen>,
    best: &mut Vec<&'a Stamen>,
) {
    if current.len() + (groups.len() - i) <= best.len() {
        return;
    }
    if i == groups.len() {
        *best = current.clone();
        return;
    }
    for &s in &groups[i] {
        if current.iter().all(|c| c.internally_disjoint(s)) {
            current.push(s);
            pack(groups, i + 1, current, best);
            current.pop();
        }
    }
    pack(groups, i + 1, current, best);
}

/// If `a` and `b` share their first edge, the path obtained by walking
/// `a` back from its tip to the shared neighbour and then out along `b`.
/// It is a stamen from `a`'s tip when the shared neighbour has degree 4.
pub fn symmetric_difference_path(a: &Stamen, b: &Stamen) -> Option<Vec<VertexId>> {
    if a == b || a.path.len() < 2 || b.path.len() < 2 || a.path[1] != b.path[1] {
        return None;
    }
    let mut p: Vec<_> = a.path[1..].iter().rev().copied().collect();
    p.extend(&b.path[2..]);
    Some(p)
}

fn check_q(g: &SimpleGraph, h: &SubgraphMask, q: &[VertexId]) -> Result<(), ConfigError> {
    if q.is_empty() {
        return Err(ConfigError::EmptyConfiguration);
    }
    for &v in q {
        if v >= g.vertex_count() {
            return Err(ConfigError::VertexOutOfRange(v));
        }
        if h.contains_vertex(v) {
            return Err(ConfigError::MeetsH(v));
        }
    }
    Ok(())
}

/// Whether every L-coloring of G − Q extends to at least two
/// L-colorings of G. The first failing remainder coloring is returned as
/// the witness.
pub fn check_reducible_concrete(
    g: &SimpleGraph,
    h: &SubgraphMask,
    q: &[VertexId],
    lists: &ListAssignment,
    cap: usize,
) -> Result<ReducibilityVerdict, ConfigError> {
    check_q(g, h, q)?;
    if g.vertex_count() > cap {
        return Err(ConfigError::SizeCapExceeded {
            size: g.vertex_count(),
            cap,
        });
    }
    if lists.len() != g.vertex_count() {
        return Err(ColoringError::LengthMismatch {
            lists: lists.len(),
            n: g.vertex_count(),
        }
        .into());
    }
    let mut in_q = vec![false; g.vertex_count()];
    q.iter().for_each(|&v| in_q[v] = true);
    let rest: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !in_q[v]).collect();
    let qs: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| in_q[v]).collect();
    let (rest_graph, _) = g.induced(&rest);
    let (q_graph, _) = g.induced(&qs);

    let two = BigUint::from(2u32);
    let mut checked = 0u64;
    let mut failure = None;
    let mut error = None;
    let _ = for_each_coloring(&rest_graph, &lists.restrict(&rest), &Precoloring::new(), |phi| {
        checked += 1;
        let residual: Vec<Vec<Color>> = qs
            .iter()
            .map(|&u| {
                lists
                    .get(u)
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !g.neighbors(u)
                            .iter()
                            .any(|&w| !in_q[w] && phi[rest.binary_search(&w).unwrap()] == c)
                    })
                    .collect()
            })
            .collect();
        let extensions = if residual.iter().any(Vec::is_empty) {
            0
        } else {
            let l = ListAssignment::new(residual).unwrap();
            match count_extensions(&q_graph, &l, &Precoloring::new(), Some(&two)) {
                Ok(CountResult::Exact { count }) => u64::try_from(&count).unwrap_or(u64::MAX),
                Ok(CountResult::ThresholdReached { .. }) => 2,
                Err(e) => {
                    error = Some(e);
                    return ControlFlow::Break(());
                }
            }
        };
        if extensions < 2 {
            failure = Some(Witness::RemainderColoring {
                coloring: rest.iter().copied().zip(phi.iter().copied()).collect(),
                extensions,
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = error {
        return Err(e.into());
    }
    Ok(match failure {
        Some(w) => ReducibilityVerdict::failed(w, checked),
        None => ReducibilityVerdict::reducible(checked),
    })
}

/// Whether Q has at least two colorings from every residual assignment
/// with `|L'(u)| = k − ext(u)`.
pub fn check_reducible_abstract(
    c: &Configuration,
    k: usize,
    cap: usize,
) -> Result<ReducibilityVerdict, ConfigError> {
    if c.is_empty() {
        return Err(ConfigError::EmptyConfiguration);
    }
    if c.len() > cap {
        return Err(ConfigError::SizeCapExceeded { size: c.len(), cap });
    }
    let sizes = c.residual_sizes(k);
    if let Some((i, &s)) = sizes.iter().enumerate().find(|(_, &s)| s < 1) {
        return Ok(ReducibilityVerdict::failed(
            Witness::ExhaustedResidual {
                vertex: c.vertices[i],
                residual_size: s,
            },
            0,
        ));
    }
    let sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
    let search = min_colorings_over_assignments(&c.graph, &sizes, 2, cfg!(feature = "parallel"))?;
    Ok(match search.witness {
        Some((lists, colorings)) => ReducibilityVerdict::failed(
            Witness::ResidualLists {
                lists: c
                    .vertices
                    .iter()
                    .copied()
                    .zip(lists.lists().iter().cloned())
                    .collect(),
                colorings: colorings as u64,
            },
            search.checked,
        ),
        None => ReducibilityVerdict::reducible(search.checked),
    })
}

/// Replays the poppy argument on `c`: two residual colors at the center,
/// then every component K of Q − center must be colorable from lists of
/// size `k − ext(w) − [w ~ center] ≥ d_K(w)`, either because some vertex
/// has a spare color or because K is degree-choosable.
pub fn verify_poppy_constructive(p: &Poppy, c: &Configuration) -> Result<bool, ConfigError> {
    let center = c
        .local(p.center)
        .ok_or_else(|| ConfigError::NotAPoppy(format!("center {} not in Q", p.center)))?;
    if p.vertex_set() != c.vertices {
        return Err(ConfigError::NotAPoppy(
            "vertex set differs from the configuration".into(),
        ));
    }
    for s in &p.stamens {
        if s.root() != p.center {
            return Err(ConfigError::NotAPoppy(format!("stamen {:?} not rooted at center", s.path)));
        }
        let locals: Vec<usize> = s.path.iter().map(|&v| c.local(v).unwrap()).collect();
        let ok = locals.windows(2).all(|w| c.graph.has_edge(w[0], w[1]))
            && c.host_degree(*locals.last().unwrap()) == 3
            && locals[1..locals.len() - 1]
                .iter()
                .all(|&w| c.host_degree(w) == 4);
        if !ok {
            return Err(ConfigError::NotAPoppy(format!("{:?} is not a stamen", s.path)));
        }
    }
    for (i, a) in p.stamens.iter().enumerate() {
        if p.stamens[i + 1..].iter().any(|b| !a.internally_disjoint(b)) {
            return Err(ConfigError::NotAPoppy("stamens overlap internally".into()));
        }
    }
    if p.stamens.len() + 2 < c.host_degree(center) {
        return Err(ConfigError::NotAPoppy(format!(
            "{} stamens at a center of degree {}",
            p.stamens.len(),
            c.host_degree(center)
        )));
    }

    let sizes = c.residual_sizes(4);
    if sizes[center] < 2 {
        return Ok(false);
    }
    let others: Vec<usize> = (0..c.len()).filter(|&v| v != center).collect();
    let (rest, back) = c.graph.induced(&others);
    for comp in rest.components() {
        let (k, local) = rest.induced(&comp);
        let mut slack = false;
        for (i, &w) in local.iter().enumerate() {
            let host = back[w];
            let r = sizes[host] - c.graph.has_edge(host, center) as i64;
            let d = k.degree(i) as i64;
            if r < d {
                return Ok(false);
            }
            slack |= r > d;
        }
        if !slack && !is_degree_choosable_structural(&k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How scan verdicts are decided.
#[derive(Debug, Clone)]
pub enum ScanMode<'a> {
    /// Worst-case residual lists (`k = 4`).
    Abstract,
    /// The given lists on the whole graph.
    Concrete(&'a ListAssignment),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub vertices: Vec<VertexId>,
    pub verdict: ReducibilityVerdict,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub max_size: usize,
    /// Stop after the first size class containing a reducible set, and
    /// report only that set.
    pub stop_at_first: bool,
    /// Skip sets that fail, returning only reducible ones.
    pub reducible_only: bool,
    pub abstract_cap: usize,
    pub concrete_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_size: 8,
            stop_at_first: false,
            reducible_only: false,
            abstract_cap: DEFAULT_ABSTRACT_CAP,
            concrete_cap: DEFAULT_CONCRETE_CAP,
        }
    }
}

/// Connected vertex sets of G − V(H) with at most `max_size` vertices,
/// ordered by size and then lexicographically.
pub fn connected_subsets(g: &SimpleGraph, h: &SubgraphMask, max_size: usize) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let allowed: Vec<bool> = (0..n).map(|v| !h.contains_vertex(v)).collect();
    let mut out = Vec::new();
    for v in (0..n).filter(|&v| allowed[v]) {
        let ext: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w > v && allowed[w])
            .collect();
        esu(g, &allowed, v, &mut vec![v], ext, max_size, &mut out);
    }
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn esu(
    g: &SimpleGraph,
    allowed: &[bool],
    root: VertexId,
    sub: &mut Vec<VertexId>,
    mut ext: Vec<VertexId>,
    max_size: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    out.push(sub.clone());
    if sub.len() == max_size {
        return;
    }
    while let Some(w) = ext.pop() {
        // exclusive neighbourhood of w relative to the current subset
        let mut next = ext.clone();
        for &x in g.neighbors(w) {
            if x > root
                && allowed[x]
                && !sub.contains(&x)
                && !next.contains(&x)
                && !sub.iter().any(|&s| g.has_edge(s, x))
            {
                next.push(x);
            }
        }
        sub.push(w);
        esu(g, allowed, root, sub, next, max_size, out);
        sub.pop();
    }
}

/// Verdicts for every connected vertex set of G − V(H) up to
/// `opts.max_size`.
pub fn scan_reducible_up_to_size(
    g: &SimpleGraph,
    h: &SubgraphMask,
    mode: ScanMode<'_>,
    opts: &ScanOptions,
) -> Result<Vec<ScanEntry>, ConfigError> {
    if let ScanMode::Concrete(_) = mode {
        if g.vertex_count() > opts.concrete_cap {
            return Err(ConfigError::SizeCapExceeded {
                size: g.vertex_count(),
                cap: opts.concrete_cap,
            });
        }
    }
    if opts.max_size > opts.abstract_cap {
        if let ScanMode::Abstract = mode {
            return Err(ConfigError::SizeCapExceeded {
                size: opts.max_size,
                cap: opts.abstract_cap,
            });
        }
    }
    let subsets = connected_subsets(g, h, opts.max_size);
    let verdict = |q: &Vec<VertexId>| -> Result<ReducibilityVerdict, ConfigError> {
        match mode {
            ScanMode::Abstract => check_reducible_abstract(
                &Configuration::from_vertex_set(g, q)?,
                4,
                opts.abstract_cap,
            ),
            ScanMode::Concrete(l) => check_reducible_concrete(g, h, q, l, opts.concrete_cap),
        }
    };
    let mut out = Vec::new();
    let mut start = 0;
    while start < subsets.len() {
        let size = subsets[start].len();
        let end = start + subsets[start..].iter().take_while(|s| s.len() == size).count();
        let batch = &subsets[start..end];
        let verdicts = map_ordered(batch, &verdict)?;
        for (q, v) in batch.iter().zip(verdicts) {
            if opts.stop_at_first && v.reducible {
                out.push(ScanEntry {
                    vertices: q.clone(),
                    verdict: v,
                });
                return Ok(out);
            }
            if !opts.reducible_only || v.reducible {
                out.push(ScanEntry {
                    vertices: q.clone(),
                    verdict: v,
                });
            }
        }
        start = end;
    }
    Ok(out)
}

fn map_ordered<T, R, E>(
    items: &[T],
    f: &(impl Fn(&T) -> Result<R, E> + Sync),
) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
