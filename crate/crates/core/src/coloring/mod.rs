//! Exact counting of list-colorings that extend a precoloring.
//!
//! The engine compresses the palette to at most 128 colors, removes the
//! precolored vertices by forward checking, splits what is left into
//! connected components and counts each component by backtracking on the
//! uncolored vertex with the fewest residual colors (ties: smallest
//! index). Component counts multiply.

mod assignments;
mod choosability;

pub use assignments::{
    canonical_list_assignments, for_each_canonical_assignment, for_each_reduced_assignment,
    min_colorings_over_assignments, AssignmentSearch, MAX_UNIVERSE,
};
pub use choosability::{
    is_degree_choosable_bruteforce, is_degree_choosable_structural, DegreeChoosability,
    DEFAULT_BRUTEFORCE_CAP,
};

use crate::graph::{SimpleGraph, VertexId};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use thiserror::Error;

/// Opaque color label.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("list of vertex {0} is empty")]
    EmptyList(VertexId),
    #[error("list assignment has {lists} lists but the graph has {n} vertices")]
    LengthMismatch { lists: usize, n: usize },
    #[error("precoloring is improper: {0}")]
    ImproperPrecoloring(String),
    #[error("palette of {0} distinct colors exceeds the supported 128")]
    PaletteTooLarge(usize),
    #[error("graph is not connected")]
    DisconnectedInput,
    #[error("instance has {size} vertices, above the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// One finite color set per vertex, each sorted and non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Color>>", into = "Vec<Vec<Color>>")]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self, ColoringError> {
        let lists: Vec<Vec<Color>> = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        if let Some(v) = lists.iter().position(Vec::is_empty) {
            return Err(ColoringError::EmptyList(v));
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, colors: &[Color]) -> Self {
        Self::new(vec![colors.to_vec(); n]).expect("uniform lists must be non-empty")
    }

    /// Lists read off color bitmasks; bit `c` is color `c + 1`.
    pub fn from_masks(masks: &[u64]) -> Result<Self, ColoringError> {
        Self::new(
            masks
                .iter()
                .map(|&m| (0..64).filter(|c| m >> c & 1 == 1).map(|c| c + 1).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: VertexId) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Smallest list size, or `None` for an empty assignment.
    pub fn min_size(&self) -> Option<usize> {
        self.lists.iter().map(Vec::len).min()
    }

    /// First vertex whose list is smaller than `k`.
    pub fn first_short_list(&self, k: usize) -> Option<VertexId> {
        self.lists.iter().position(|l| l.len() < k)
    }

    /// Lists of the vertices in `keep`, in that order.
    pub fn restrict(&self, keep: &[VertexId]) -> ListAssignment {
        ListAssignment {
            lists: keep.iter().map(|&v| self.lists[v].clone()).collect(),
        }
    }

    /// Applies a color bijection to every list.
    pub fn relabel(&self, map: impl Fn(Color) -> Color) -> ListAssignment {
        Self::new(
            self.lists
                .iter()
                .map(|l| l.iter().map(|&c| map(c)).collect())
                .collect(),
        )
        .expect("relabeling keeps lists non-empty")
    }
}

impl TryFrom<Vec<Vec<Color>>> for ListAssignment {
    type Error = ColoringError;
    fn try_from(lists: Vec<Vec<Color>>) -> Result<Self, Self::Error> {
        Self::new(lists)
    }
}

impl From<ListAssignment> for Vec<Vec<Color>> {
    fn from(l: ListAssignment) -> Self {
        l.lists
    }
}

/// Partial map from vertices to colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precoloring {
    colors: BTreeMap<VertexId, Color>,
}

impl Precoloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, Color)>) -> Self {
        Precoloring {
            colors: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    pub fn insert(&mut self, v: VertexId, c: Color) {
        self.colors.insert(v, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Re-indexes through a new-to-old table, dropping vertices that do
    /// not survive.
    pub fn restrict(&self, new_to_old: &[VertexId]) -> Precoloring {
        Precoloring::from_pairs(
            new_to_old
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| self.get(v).map(|c| (i, c))),
        )
    }

    pub fn relabel(&self, map: impl Fn(Color) -> Color) -> Precoloring {
        Precoloring::from_pairs(self.iter().map(|(v, c)| (v, map(c))))
    }

    /// True when no edge of `g` joins two precolored vertices of equal
    /// color.
    pub fn is_proper_on(&self, g: &SimpleGraph) -> bool {
        self.iter().all(|(v, c)| {
            g.neighbors(v)
                .iter()
                .all(|&w| self.get(w).map_or(true, |cw| cw != c))
        })
    }
}

/// Exact number of colorings, or the statement that a threshold was met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountResult {
    Exact {
        #[serde(with = "crate::rational::serde_biguint")]
        count: BigUint,
    },
    ThresholdReached {
        #[serde(with = "crate::rational::serde_biguint")]
        threshold: BigUint,
    },
}

impl CountResult {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            CountResult::Exact { count } => Some(count),
            CountResult::ThresholdReached { .. } => None,
        }
    }

    /// Whether the true count is at least `k`.
    pub fn at_least(&self, k: &BigUint) -> bool {
        match self {
            CountResult::Exact { count } => count >= k,
            CountResult::ThresholdReached { threshold } => threshold >= k,
        }
    }
}

/// Counting options; `parallel` splits the top of the search tree across
/// the rayon pool when the `parallel` feature is enabled.
#[derive(Debug, Clone, Default)]
pub struct CountOptions {
    pub threshold: Option<BigUint>,
    pub parallel: bool,
}

/// Number of L-colorings of `g` agreeing with `pre`, or
/// `ThresholdReached` as soon as `threshold` colorings are known to exist.
pub fn count_extensions(
    g: &SimpleGraph,
    lists: &ListAssignment,
    pre: &Precoloring,
    threshold: Option<&BigUint>,
) -> Result<CountResult, ColoringError> {
    count_extensions_with(
        g,
        lists,
        pre,
        &CountOptions {
            threshold: threshold.cloned(),
            parallel: false,
        },
    )
}

pub fn count_extensions_with(
    g: &SimpleGraph,
    lists: &ListAssignment,
    pre: &Precoloring,
    opts: &CountOptions,
) -> Result<CountResult, ColoringError> {
    let problem = Residual::build(g, lists, pre)?;
    let cap = opts.threshold.as_ref().map(biguint_to_cap);
    if cap == Some(0) {
        return Ok(CountResult::ThresholdReached {
            threshold: BigUint::from(0u32),
        });
    }
    let total = problem.count(cap, opts.parallel);
    Ok(match (cap, total) {
        (Some(k), Some(t)) if t >= k => CountResult::ThresholdReached {
            threshold: opts.threshold.clone().unwrap(),
        },
        (_, Some(t)) => CountResult::Exact {
            count: BigUint::from(t),
        },
        // product overflowed u128 without a cap to stop it
        (_, None) => CountResult::Exact {
            count: problem.count_big(),
        },
    })
}

/// True iff `pre` extends to at least `k` distinct L-colorings of `g`.
/// Stops as soon as the `k`-th coloring is found.
pub fn extends_at_least(
    g: &SimpleGraph,
    lists: &ListAssignment,
    pre: &Precoloring,
    k: u64,
) -> Result<bool, ColoringError> {
    let k = BigUint::from(k);
    Ok(count_extensions(g, lists, pre, Some(&k))?.at_least(&k))
}

/// Visits every L-coloring of `g` extending `pre`, vertices colored in
/// index order. The slice passed to `visit` is indexed by vertex.
pub fn for_each_coloring(
    g: &SimpleGraph,
    lists: &ListAssignment,
    pre: &Precoloring,
    mut visit: impl FnMut(&[Color]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, ColoringError> {
    let problem = Residual::build(g, lists, pre)?;
    let n = g.vertex_count();
    let mut coloring = vec![0 as Color; n];
    for (v, c) in pre.iter() {
        coloring[v] = c;
    }
    let order: Vec<usize> = (0..problem.vertices.len()).collect();
    let mut domains = problem.domains.clone();
    Ok(enumerate_rec(
        &problem,
        &order,
        0,
        &mut domains,
        &mut coloring,
        &mut visit,
    ))
}

fn enumerate_rec(
    p: &Residual,
    order: &[usize],
    depth: usize,
    domains: &mut [u128],
    coloring: &mut [Color],
    visit: &mut impl FnMut(&[Color]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == order.len() {
        return visit(coloring);
    }
    let v = order[depth];
    let mut dom = domains[v];
    while dom != 0 {
        let bit = dom & dom.wrapping_neg();
        dom &= dom - 1;
        coloring[p.vertices[v]] = p.palette[bit.trailing_zeros() as usize];
        let mut touched = Vec::new();
        for &w in &p.adj[v] {
            if w > v && domains[w] & bit != 0 {
                domains[w] &= !bit;
                touched.push(w);
            }
        }
        let flow = if touched.iter().any(|&w| domains[w] == 0) {
            ControlFlow::Continue(())
        } else {
            enumerate_rec(p, order, depth + 1, domains, coloring, visit)
        };
        for w in touched {
            domains[w] |= bit;
        }
        flow?;
    }
    ControlFlow::Continue(())
}

fn biguint_to_cap(k: &BigUint) -> u128 {
    u128::try_from(k).unwrap_or(u128::MAX)
}

/// The uncolored part of an instance: local adjacency and residual color
/// masks over a compressed palette.
#[derive(Debug, Clone)]
pub(crate) struct Residual {
    /// Original vertex id of each local vertex.
    vertices: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    domains: Vec<u128>,
    palette: Vec<Color>,
}

impl Residual {
    fn build(
        g: &SimpleGraph,
        lists: &ListAssignment,
        pre: &Precoloring,
    ) -> Result<Residual, ColoringError> {
        let n = g.vertex_count();
        if lists.len() != n {
            return Err(ColoringError::LengthMismatch {
                lists: lists.len(),
                n,
            });
        }
        for (v, c) in pre.iter() {
            if v >= n {
                return Err(ColoringError::ImproperPrecoloring(format!(
                    "vertex {v} is not in the graph"
                )));
            }
            if !lists.get(v).contains(&c) {
                return Err(ColoringError::ImproperPrecoloring(format!(
                    "color {c} of vertex {v} is not in its list"
                )));
            }
        }
        for (v, c) in pre.iter() {
            if let Some(&w) = g
                .neighbors(v)
                .iter()
                .find(|&&w| w > v && pre.get(w) == Some(c))
            {
                return Err(ColoringError::ImproperPrecoloring(format!(
                    "adjacent vertices {v} and {w} share color {c}"
                )));
            }
        }
        let mut palette: Vec<Color> = lists.lists().iter().flatten().copied().collect();
        palette.sort_unstable();
        palette.dedup();
        if palette.len() > 128 {
            return Err(ColoringError::PaletteTooLarge(palette.len()));
        }
        let index = |c: Color| palette.binary_search(&c).unwrap();

        let vertices: Vec<VertexId> = (0..n).filter(|&v| pre.get(v).is_none()).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut domains = Vec::with_capacity(vertices.len());
        let mut adj = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            let mut dom: u128 = lists.get(v).iter().map(|&c| 1u128 << index(c)).sum();
            let mut ns = Vec::new();
            for &w in g.neighbors(v) {
                match pre.get(w) {
                    Some(c) => dom &= !(1u128 << index(c)),
                    None => ns.push(local[w]),
                }
            }
            domains.push(dom);
            adj.push(ns);
        }
        Ok(Residual {
            vertices,
            adj,
            domains,
            palette,
        })
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let m = self.vertices.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Total count capped at `cap`; `None` if an uncapped product
    /// overflows `u128`.
    fn count(&self, cap: Option<u128>, parallel: bool) -> Option<u128> {
        let comps = self.components();
        let solvers: Vec<Search> = comps.iter().map(|c| Search::new(self, c)).collect();
        // any empty component kills everything, so check existence first
        for s in &solvers {
            if s.clone().run(Some(1), false) == 0 {
                return Some(0);
            }
        }
        let mut product: u128 = 1;
        for s in solvers {
            let c = s.run(cap, parallel);
            product = product.checked_mul(c)?;
            if let Some(k) = cap {
                if product >= k {
                    return Some(k.max(product));
                }
            }
        }
        Some(product)
    }

    fn count_big(&self) -> BigUint {
        self.components()
            .iter()
            .map(|c| BigUint::from(Search::new(self, c).run(None, false)))
            .product()
    }
}

/// Backtracking counter over one connected component of the residual.
#[derive(Clone)]
struct Search {
    adj: Vec<Vec<usize>>,
    domains: Vec<u128>,
    colored: Vec<bool>,
}

impl Search {
    fn new(p: &Residual, comp: &[usize]) -> Search {
        let mut local = std::collections::HashMap::new();
        for (i, &v) in comp.iter().enumerate() {
            local.insert(v, i);
        }
        Search {
            adj: comp
                .iter()
                .map(|&v| p.adj[v].iter().map(|w| local[w]).collect())
                .collect(),
            domains: comp.iter().map(|&v| p.domains[v]).collect(),
            colored: vec![false; comp.len()],
        }
    }

    fn run(mut self, cap: Option<u128>, parallel: bool) -> u128 {
        let remaining = self.domains.len();
        if parallel && remaining > 1 {
            #[cfg(feature = "parallel")]
            return self.run_parallel(cap);
        }
        self.rec(remaining, cap.unwrap_or(u128::MAX), None)
    }

    #[cfg(feature = "parallel")]
    fn run_parallel(mut self, cap: Option<u128>) -> u128 {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicBool, Ordering};
        use std::sync::Mutex;

        let cap = cap.unwrap_or(u128::MAX);
        let Some((v, dom)) = self.pick() else {
            return 0;
        };
        let remaining = self.domains.len();
        self.colored[v] = true;
        let stop = AtomicBool::new(false);
        let total = Mutex::new(0u128);
        let bits: Vec<u128> = (0..128)
            .map(|c| 1u128 << c)
            .filter(|b| dom & b != 0)
            .collect();
        bits.par_iter().for_each(|&bit| {
            if stop.load(Ordering::Relaxed) {
                return;
            }
            let mut branch = self.clone();
            for &w in &self.adj[v] {
                if !branch.colored[w] {
                    branch.domains[w] &= !bit;
                }
            }
            let c = branch.rec(remaining - 1, cap, Some(&stop));
            let mut t = total.lock().unwrap();
            *t = t.saturating_add(c);
            if *t >= cap {
                stop.store(true, Ordering::Relaxed);
            }
        });
        let t = total.into_inner().unwrap();
        if t >= cap {
            cap
        } else {
            t
        }
    }

    /// Uncolored vertex with the fewest residual colors, smallest index
    /// first.
    fn pick(&self) -> Option<(usize, u128)> {
        let mut best: Option<(usize, u32)> = None;
        for (v, &d) in self.domains.iter().enumerate() {
            if self.colored[v] {
                continue;
            }
            let k = d.count_ones();
            if best.map_or(true, |(_, b)| k < b) {
                best = Some((v, k));
            }
        }
        best.map(|(v, _)| (v, self.domains[v]))
    }

    fn rec(
        &mut self,
        remaining: usize,
        cap: u128,
        stop: Option<&std::sync::atomic::AtomicBool>,
    ) -> u128 {
        if remaining == 0 {
            return 1;
        }
        let Some((v, dom)) = self.pick() else {
            return 1;
        };
        let options = dom.count_ones() as u128;
        if options == 0 || remaining == 1 {
            return options;
        }
        if let Some(s) = stop {
            if s.load(std::sync::atomic::Ordering::Relaxed) {
                return 0;
            }
        }
        self.colored[v] = true;
        let mut total: u128 = 0;
        let mut rest = dom;
        let mut touched: Vec<usize> = Vec::with_capacity(self.adj[v].len());
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            touched.clear();
            let mut dead = false;
            for &w in &self.adj[v] {
                if !self.colored[w] && self.domains[w] & bit != 0 {
                    self.domains[w] &= !bit;
                    touched.push(w);
                    dead |= self.domains[w] == 0;
                }
            }
            if !dead {
                total = total.saturating_add(self.rec(remaining - 1, cap - total, stop));
            }
            for &w in &touched {
                self.domains[w] |= bit;
            }
            if total >= cap {
                break;
            }
        }
        self.colored[v] = false;
        total
    }
}

/// Colorings from bitmask lists on graphs with at most 64 vertices,
/// with adjacency held as bitmasks so one instance serves many calls.
pub(crate) struct MaskCounter {
    adj: Vec<u64>,
}

impl MaskCounter {
    pub(crate) fn new(g: &SimpleGraph) -> MaskCounter {
        assert!(g.vertex_count() <= 64, "more than 64 vertices");
        MaskCounter {
            adj: (0..g.vertex_count())
                .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
                .collect(),
        }
    }

    /// Number of colorings, capped at `cap`.
    pub(crate) fn count(&self, masks: &[u64], cap: u128) -> u128 {
        let n = self.adj.len();
        if n == 0 {
            return 1;
        }
        let mut dom = [0u64; 64];
        dom[..n].copy_from_slice(masks);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.rec(&mut dom, all, cap).min(cap)
    }

    fn rec(&self, dom: &mut [u64; 64], open: u64, cap: u128) -> u128 {
        if open == 0 {
            return 1;
        }
        let mut v = 0;
        let mut fewest = u32::MAX;
        let mut rest = open;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let k = dom[w].count_ones();
            if k < fewest {
                fewest = k;
                v = w;
            }
        }
        if fewest == 0 {
            return 0;
        }
        let open = open & !(1 << v);
        if open == 0 {
            return fewest as u128;
        }
        let nbrs = self.adj[v] & open;
        let mut total: u128 = 0;
        let mut colors = dom[v];
        while colors != 0 {
            let bit = colors & colors.wrapping_neg();
            colors &= colors - 1;
            let mut had = 0u64;
            let mut dead = false;
            let mut ws = nbrs;
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                if dom[w] & bit != 0 {
                    dom[w] &= !bit;
                    had |= 1 << w;
                    dead |= dom[w] == 0;
                }
            }
            if !dead {
                total = total.saturating_add(self.rec(dom, open, cap - total));
            }
            let mut ws = had;
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                dom[w] |= bit;
            }
            if total >= cap {
                return total;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(r: CountResult) -> u128 {
        u128::try_from(r.exact().unwrap()).unwrap()
    }

    #[test]
    fn cycle_counts() {
        let c4 = SimpleGraph::cycle(4);
        let two = ListAssignment::uniform(4, &[1, 2]);
        let four = ListAssignment::uniform(4, &[1, 2, 3, 4]);
        let none = Precoloring::new();
        assert_eq!(exact(count_extensions(&c4, &two, &none, None).unwrap()), 2);
        assert_eq!(exact(count_extensions(&c4, &four, &none, None).unwrap()), 84);
        let c5 = SimpleGraph::cycle(5);
        let two5 = ListAssignment::uniform(5, &[1, 2]);
        assert_eq!(exact(count_extensions(&c5, &two5, &none, None).unwrap()), 0);
    }

    #[test]
    fn threshold_short_circuits() {
        let c4 = SimpleGraph::cycle(4);
        let two = ListAssignment::uniform(4, &[1, 2]);
        let k = BigUint::from(2u32);
        assert_eq!(
            count_extensions(&c4, &two, &Precoloring::new(), Some(&k)).unwrap(),
            CountResult::ThresholdReached { threshold: k }
        );
        let k3 = BigUint::from(3u32);
        assert_eq!(
            exact(count_extensions(&c4, &two, &Precoloring::new(), Some(&k3)).unwrap()),
            2
        );
    }

    #[test]
    fn extends_at_least_cases() {
        let c4 = SimpleGraph::cycle(4);
        let two = ListAssignment::uniform(4, &[1, 2]);
        assert!(extends_at_least(&c4, &two, &Precoloring::new(), 2).unwrap());
        let single = SimpleGraph::empty(1);
        let one = ListAssignment::uniform(1, &[1]);
        assert!(!extends_at_least(&single, &one, &Precoloring::new(), 2).unwrap());
        let full = Precoloring::from_pairs([(0, 1), (1, 2), (2, 1), (3, 2)]);
        assert!(extends_at_least(&c4, &two, &full, 1).unwrap());
    }

    #[test]
    fn precoloring_errors() {
        let c4 = SimpleGraph::cycle(4);
        let two = ListAssignment::uniform(4, &[1, 2]);
        let clash = Precoloring::from_pairs([(0, 1), (1, 1)]);
        assert!(matches!(
            count_extensions(&c4, &two, &clash, None),
            Err(ColoringError::ImproperPrecoloring(_))
        ));
        let off_list = Precoloring::from_pairs([(0, 7)]);
        assert!(matches!(
            count_extensions(&c4, &two, &off_list, None),
            Err(ColoringError::ImproperPrecoloring(_))
        ));
        assert_eq!(
            ListAssignment::new(vec![vec![1], vec![]]),
            Err(ColoringError::EmptyList(1))
        );
    }

    #[test]
    fn components_multiply() {
        // two disjoint edges with lists {1,2,3}: 6 * 6
        let g = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let l = ListAssignment::uniform(4, &[1, 2, 3]);
        assert_eq!(
            exact(count_extensions(&g, &l, &Precoloring::new(), None).unwrap()),
            36
        );
        let k = BigUint::from(30u32);
        assert!(matches!(
            count_extensions(&g, &l, &Precoloring::new(), Some(&k)).unwrap(),
            CountResult::ThresholdReached { .. }
        ));
    }

    #[test]
    fn zero_component_beats_threshold() {
        // a big free component and an uncolorable triangle
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let mut lists = vec![vec![1, 2]; 3];
        lists.extend(vec![vec![1, 2, 3, 4]; 3]);
        let l = ListAssignment::new(lists).unwrap();
        let k = BigUint::from(2u32);
        assert_eq!(
            count_extensions(&g, &l, &Precoloring::new(), Some(&k)).unwrap(),
            CountResult::Exact {
                count: BigUint::from(0u32)
            }
        );
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let g = SimpleGraph::cycle(7);
        let l = ListAssignment::uniform(7, &[1, 2, 3]);
        let seq = count_extensions(&g, &l, &Precoloring::new(), None).unwrap();
        let par = count_extensions_with(
            &g,
            &l,
            &Precoloring::new(),
            &CountOptions {
                threshold: None,
                parallel: true,
            },
        )
        .unwrap();
        assert_eq!(seq, par);
        // (k-1)^n + (-1)^n (k-1) for k = 3, n = 7
        assert_eq!(exact(seq), 126);
    }

    #[test]
    fn enumerates_every_coloring() {
        let c4 = SimpleGraph::cycle(4);
        let l = ListAssignment::uniform(4, &[1, 2, 3]);
        let pre = Precoloring::from_pairs([(0, 1)]);
        let mut seen = Vec::new();
        let _ = for_each_coloring(&c4, &l, &pre, |c| {
            seen.push(c.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        // 18 colorings of C4 from 3 colors, a third with vertex 0 = 1
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|c| c[0] == 1));
        let count = exact(count_extensions(&c4, &l, &pre, None).unwrap());
        assert_eq!(count, 6);
    }
}
