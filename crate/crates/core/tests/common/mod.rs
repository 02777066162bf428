//! Deliberately simple re-implementations used as oracles. Nothing here
//! shares code with the library beyond the graph containers.

#![allow(dead_code)]

use fourlist::graph::{SimpleGraph, SubgraphMask};
use fourlist::rational::Rational;
use fourlist::EmbeddedGraph;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Colors = Vec<Vec<u32>>;

/// Colorings of `g` from `lists` agreeing with `pre`, by plain
/// backtracking in vertex order.
pub fn naive_count(g: &SimpleGraph, lists: &[Vec<u32>], pre: &BTreeMap<usize, u32>) -> u128 {
    fn go(
        v: usize,
        g: &SimpleGraph,
        lists: &[Vec<u32>],
        pre: &BTreeMap<usize, u32>,
        col: &mut Vec<u32>,
    ) -> u128 {
        if v == col.len() {
            return 1;
        }
        let mut total = 0;
        for &c in &lists[v] {
            if pre.get(&v).is_some_and(|&p| p != c) {
                continue;
            }
            if g.neighbors(v).iter().any(|&w| w < v && col[w] == c) {
                continue;
            }
            col[v] = c;
            total += go(v + 1, g, lists, pre, col);
        }
        col[v] = 0;
        total
    }
    if pre.iter().any(|(v, c)| !lists[*v].contains(c)) {
        return 0;
    }
    go(0, g, lists, pre, &mut vec![0; g.vertex_count()])
}

/// Every proper coloring of the graph (V(H), E(H)) from the lists.
pub fn naive_h_colorings(h: &SubgraphMask, lists: &[Vec<u32>]) -> Vec<BTreeMap<usize, u32>> {
    let hv: Vec<usize> = h.vertices().collect();
    let mut out = vec![BTreeMap::new()];
    for &v in &hv {
        let mut next = Vec::new();
        for partial in &out {
            for &c in &lists[v] {
                let mut p: BTreeMap<usize, u32> = partial.clone();
                p.insert(v, c);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|p| h.edges().all(|(u, v)| p[&u] != p[&v]));
    out
}

/// `count ≥ 2^e` for rational `e`, by finding the least integer meeting
/// the bound.
pub fn at_least_pow2(count: u128, e: &Rational) -> bool {
    if *e <= Rational::zero() {
        return count >= 1;
    }
    // least k with k^q ≥ 2^p
    let (p, q) = (
        u64::try_from(e.numer()).unwrap(),
        u32::try_from(e.denom()).unwrap(),
    );
    let target = BigUint::one() << p;
    let mut lo = BigUint::one();
    let mut hi = BigUint::one() << (p / q as u64 + 1);
    while lo < hi {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        if mid.pow(q) >= target {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    BigUint::from(count) >= lo
}

pub fn orientable_genus(g: &EmbeddedGraph) -> i64 {
    let n = g.vertex_count() as i64;
    let e = g.graph().edge_count() as i64;
    let f = g.faces().len() as i64;
    let c = g.graph().components().len() as i64;
    (2 * c - (n - e + f)) / 2
}

/// The criticality definition evaluated over every subgraph G′ with
/// H ⊆ G′ ⊊ G, vertex and edge subsets alike.
pub fn naive_critical(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    lists: &[Vec<u32>],
    eps: &Rational,
    alpha: &Rational,
    joint: bool,
) -> bool {
    let graph = g.graph();
    let n = graph.vertex_count();
    let genus = orientable_genus(g);
    let hn = h.vertex_count() as i64;
    let bound = |size: usize| eps * (Rational::from_integer((size as i64).into()) - alpha * Rational::from_integer((genus + hn).into()));
    let phis = naive_h_colorings(h, lists);
    let g_counts: Vec<u128> = phis.iter().map(|p| naive_count(graph, lists, p)).collect();
    let g_bound = bound(n);
    let misses: Vec<bool> = g_counts.iter().map(|&c| !at_least_pow2(c, &g_bound)).collect();

    let free: Vec<usize> = (0..n).filter(|&v| !h.contains_vertex(v)).collect();
    let all_edges: Vec<(usize, usize)> = graph.edges().collect();
    for vbits in 0u32..(1 << free.len()) {
        let keep: Vec<usize> = (0..n)
            .filter(|&v| {
                h.contains_vertex(v) || free.iter().position(|&w| w == v).is_some_and(|i| vbits >> i & 1 == 1)
            })
            .collect();
        let optional: Vec<(usize, usize)> = all_edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep.contains(&u) && keep.contains(&v) && !h.contains_edge(u, v))
            .collect();
        for ebits in 0u32..(1 << optional.len()) {
            let full = keep.len() == n && ebits == (1 << optional.len()) - 1;
            if full {
                continue;
            }
            let idx = |v: usize| keep.iter().position(|&w| w == v).unwrap();
            let mut edges: Vec<(usize, usize)> =
                h.edges().map(|(u, v)| (idx(u), idx(v))).collect();
            edges.extend(
                optional
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| ebits >> i & 1 == 1)
                    .map(|(_, &(u, v))| (idx(u), idx(v))),
            );
            let sub = SimpleGraph::from_edges(keep.len(), &edges).unwrap();
            let sub_lists: Vec<Vec<u32>> = keep.iter().map(|&v| lists[v].clone()).collect();
            let b = bound(keep.len());
            let ok = phis.iter().zip(&misses).any(|(phi, &miss)| {
                if joint && !miss {
                    return false;
                }
                let p: BTreeMap<usize, u32> = phi.iter().map(|(&v, &c)| (idx(v), c)).collect();
                at_least_pow2(naive_count(&sub, &sub_lists, &p), &b)
            });
            if !ok {
                return false;
            }
        }
    }
    misses.iter().any(|&m| m)
}

/// Every way of giving each vertex a proper color from its list, checked
/// one by one. Used to confirm witnesses are uncolorable.
pub fn is_colorable(g: &SimpleGraph, lists: &[Vec<u32>]) -> bool {
    naive_count(g, lists, &BTreeMap::new()) > 0
}

/// Lists of a fixture, or `{1, 2, 3, 4}` everywhere.
pub fn lists_or_four(f: &fourlist::corpus::Fixture) -> Colors {
    match &f.lists {
        Some(l) => l.lists().to_vec(),
        None => vec![vec![1, 2, 3, 4]; f.graph.vertex_count()],
    }
}

pub fn precoloring_map(p: &fourlist::Precoloring) -> BTreeMap<usize, u32> {
    p.iter().collect()
}
