//! Enumeration of list assignments up to renaming of colors.
//!
//! Lists are color bitmasks over a universe of at most 64 colors. An
//! assignment is determined up to color permutation by its Venn counts:
//! for every set S of vertices, the number of colors lying in exactly the
//! lists of S. The enumeration builds lists vertex by vertex; the colors
//! seen so far fall into classes by membership pattern, and the next list
//! is fixed by how many colors it takes from each class (always the
//! lowest-numbered ones, with never-used colors as one more class). Each
//! choice sequence yields a distinct Venn vector, so every orbit appears
//! exactly once.
//!
//! # Private-color exchange
//!
//! Call a color private when it lies in exactly one list. Suppose c is
//! private to v and c' is a color outside L(v) used by some other list.
//! Replacing c by c' in L(v) cannot increase the number of colorings of
//! any graph: a coloring of the new assignment that gives v the color c'
//! becomes a coloring of the old one after recoloring v with c (nobody
//! else can use c), and all other colorings carry over unchanged. The
//! swap removes one private color and creates none, so repeating it ends
//! either with no private colors or with some list containing every used
//! color. Hence, for lower bounds on the number of colorings over all
//! assignments with given sizes, it suffices to inspect
//!
//! * assignments without private colors (at most half of Σ sizes colors
//!   in use), and
//! * for each vertex u, assignments whose universe is exactly L(u).
//!
//! [`for_each_reduced_assignment`] walks that family; the tests compare
//! it against the full canonical enumeration.

use super::{ColoringError, ListAssignment, MaskCounter};
use crate::graph::SimpleGraph;
use std::ops::ControlFlow;

/// Largest universe the bitmask representation supports.
pub const MAX_UNIVERSE: usize = 64;

/// One representative per color-permutation orbit of assignments with
/// `|L(v)| = sizes[v]` drawn from `{0, …, universe−1}`.
pub fn canonical_list_assignments(sizes: &[usize], universe: usize) -> Vec<ListAssignment> {
    let mut out = Vec::new();
    let _ = for_each_canonical_assignment(sizes, universe, |masks| {
        out.push(ListAssignment::from_masks(masks).expect("sizes are positive"));
        ControlFlow::Continue(())
    });
    out
}

/// Streaming form of [`canonical_list_assignments`]; lists are passed as
/// color bitmasks.
pub fn for_each_canonical_assignment(
    sizes: &[usize],
    universe: usize,
    visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    assert!(universe <= MAX_UNIVERSE, "universe above {MAX_UNIVERSE}");
    let mut e = Enumerator::new(sizes, universe, false, sizes.len(), visit);
    e.step(0)
}

/// Walks the reduced family of the private-color exchange (module docs):
/// first every canonical assignment without private colors, then for each
/// vertex u every canonical assignment whose universe is L(u). Some
/// orbits are visited twice.
pub fn for_each_reduced_assignment(
    sizes: &[usize],
    mut visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, ColoringError> {
    for part in reduced_parts(sizes)? {
        if part.run_sequential(&mut visit).is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Outcome of searching the reduced family for an assignment admitting
/// fewer than `k` colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentSearch {
    /// First failing assignment in enumeration order, with its number of
    /// colorings.
    pub witness: Option<(ListAssignment, u128)>,
    /// Assignments inspected up to and including the witness.
    pub checked: u64,
}

/// Searches every list assignment with the given sizes, up to color
/// renaming and the private-color exchange, for one under which `g` has
/// fewer than `k` colorings.
pub fn min_colorings_over_assignments(
    g: &SimpleGraph,
    sizes: &[usize],
    k: u128,
    parallel: bool,
) -> Result<AssignmentSearch, ColoringError> {
    assert_eq!(g.vertex_count(), sizes.len());
    if sizes.is_empty() {
        let found = k > 1;
        return Ok(AssignmentSearch {
            witness: found.then(|| (ListAssignment::new(vec![]).unwrap(), 1)),
            checked: 1,
        });
    }
    let mut checked = 0u64;
    for part in reduced_parts(sizes)? {
        let (hit, n) = part.search(g, k, parallel);
        checked += n;
        if let Some(w) = hit {
            return Ok(AssignmentSearch {
                witness: Some(w),
                checked,
            });
        }
    }
    Ok(AssignmentSearch {
        witness: None,
        checked,
    })
}

/// One canonical enumeration run, possibly over a vertex permutation.
struct Part {
    /// sizes in enumeration order
    sizes: Vec<usize>,
    universe: usize,
    no_private: bool,
    /// enumeration position -> original vertex
    order: Vec<usize>,
}

fn reduced_parts(sizes: &[usize]) -> Result<Vec<Part>, ColoringError> {
    let total: usize = sizes.iter().sum();
    let half = total / 2;
    if half > MAX_UNIVERSE || sizes.iter().any(|&s| s > MAX_UNIVERSE) {
        return Err(ColoringError::PaletteTooLarge(half.max(total)));
    }
    let n = sizes.len();
    let mut parts = vec![Part {
        sizes: sizes.to_vec(),
        universe: half,
        no_private: true,
        order: (0..n).collect(),
    }];
    for u in 0..n {
        let mut order = vec![u];
        order.extend((0..n).filter(|&v| v != u));
        parts.push(Part {
            sizes: order.iter().map(|&v| sizes[v]).collect(),
            universe: sizes[u],
            no_private: false,
            order,
        });
    }
    Ok(parts)
}

impl Part {
    fn unpermute(&self, masks: &[u64], out: &mut [u64]) {
        for (i, &v) in self.order.iter().enumerate() {
            out[v] = masks[i];
        }
    }

    fn run_sequential(&self, visit: &mut impl FnMut(&[u64]) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut buf = vec![0u64; self.sizes.len()];
        let mut e = Enumerator::new(
            &self.sizes,
            self.universe,
            self.no_private,
            self.sizes.len(),
            |m: &[u64]| {
                self.unpermute(m, &mut buf);
                visit(&buf)
            },
        );
        e.step(0)
    }

    /// First assignment (in enumeration order) with fewer than `k`
    /// colorings, and the number of assignments inspected.
    fn search(&self, g: &SimpleGraph, k: u128, parallel: bool) -> (Option<(ListAssignment, u128)>, u64) {
        #[cfg(feature = "parallel")]
        if parallel && self.sizes.len() > 2 {
            return self.search_parallel(g, k);
        }
        let _ = parallel;
        let counter = MaskCounter::new(g);
        let mut checked = 0u64;
        let mut found = None;
        let mut buf = vec![0u64; self.sizes.len()];
        let mut e = Enumerator::new(
            &self.sizes,
            self.universe,
            self.no_private,
            self.sizes.len(),
            |m: &[u64]| {
                checked += 1;
                self.unpermute(m, &mut buf);
                let c = counter.count(&buf, k);
                if c < k {
                    found = Some((ListAssignment::from_masks(&buf).unwrap(), c));
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            },
        );
        let _ = e.step(0);
        (found, checked)
    }

    #[cfg(feature = "parallel")]
    fn search_parallel(&self, g: &SimpleGraph, k: u128) -> (Option<(ListAssignment, u128)>, u64) {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicUsize, Ordering};

        let depth = prefix_depth(&self.sizes);
        let mut prefixes: Vec<Vec<u64>> = Vec::new();
        let mut e = Enumerator::new(&self.sizes, self.universe, self.no_private, depth, |m: &[u64]| {
            prefixes.push(m[..depth].to_vec());
            ControlFlow::Continue(())
        });
        let _ = e.step(0);

        let counter = MaskCounter::new(g);
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<(Option<(ListAssignment, u128)>, u64)> = prefixes
            .par_iter()
            .enumerate()
            .map(|(idx, prefix)| {
                if best.load(Ordering::Relaxed) < idx {
                    return (None, 0);
                }
                let mut checked = 0u64;
                let mut found = None;
                let mut buf = vec![0u64; self.sizes.len()];
                let mut e = Enumerator::new(
                    &self.sizes,
                    self.universe,
                    self.no_private,
                    self.sizes.len(),
                    |m: &[u64]| {
                        checked += 1;
                        if checked % 4096 == 0 && best.load(Ordering::Relaxed) < idx {
                            return ControlFlow::Break(());
                        }
                        self.unpermute(m, &mut buf);
                        let c = counter.count(&buf, k);
                        if c < k {
                            found = Some((ListAssignment::from_masks(&buf).unwrap(), c));
                            return ControlFlow::Break(());
                        }
                        ControlFlow::Continue(())
                    },
                );
                e.lists[..depth].copy_from_slice(prefix);
                let _ = e.step(depth);
                if found.is_some() {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                (found, checked)
            })
            .collect();

        // every prefix before the first witness ran to completion
        let mut checked = 0u64;
        for (found, n) in results {
            checked += n;
            if found.is_some() {
                return (found, checked);
            }
        }
        (None, checked)
    }
}

#[cfg(feature = "parallel")]
fn prefix_depth(sizes: &[usize]) -> usize {
    sizes.len().saturating_sub(2).clamp(1, 3)
}

struct Enumerator<'a, F> {
    sizes: &'a [usize],
    universe: usize,
    no_private: bool,
    stop_depth: usize,
    lists: Vec<u64>,
    /// Σ sizes[i..]
    capacity_from: Vec<usize>,
    /// class masks at each depth, reused between visits
    scratch: Vec<Vec<u64>>,
    visit: F,
}

impl<'a, F: FnMut(&[u64]) -> ControlFlow<()>> Enumerator<'a, F> {
    fn new(sizes: &'a [usize], universe: usize, no_private: bool, stop_depth: usize, visit: F) -> Self {
        let mut capacity_from = vec![0; sizes.len() + 1];
        for i in (0..sizes.len()).rev() {
            capacity_from[i] = capacity_from[i + 1] + sizes[i];
        }
        Enumerator {
            sizes,
            universe,
            no_private,
            stop_depth,
            lists: vec![0; sizes.len()],
            capacity_from,
            scratch: vec![Vec::with_capacity(universe); sizes.len()],
            visit,
        }
    }

    /// Color classes by membership pattern over the first `i` lists,
    /// ordered by decreasing pattern so unused colors come last. Returns
    /// the number of private colors.
    fn classes(&self, i: usize, out: &mut Vec<u64>) -> usize {
        let mut keyed = [(0u64, 0u64); MAX_UNIVERSE];
        for (c, slot) in keyed[..self.universe].iter_mut().enumerate() {
            let mut pattern = 0u64;
            for (j, &l) in self.lists[..i].iter().enumerate() {
                pattern |= (l >> c & 1) << j;
            }
            *slot = (pattern, 1u64 << c);
        }
        let keyed = &mut keyed[..self.universe];
        keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out.clear();
        let mut private = 0;
        let mut last = None;
        for &(pattern, bit) in keyed.iter() {
            if pattern.count_ones() == 1 {
                private += 1;
            }
            if last == Some(pattern) {
                *out.last_mut().unwrap() |= bit;
            } else {
                out.push(bit);
                last = Some(pattern);
            }
        }
        private
    }

    fn has_private(&self) -> bool {
        let mut once = 0u64;
        let mut twice = 0u64;
        for &l in &self.lists {
            twice |= once & l;
            once |= l;
        }
        once & !twice != 0
    }

    fn step(&mut self, i: usize) -> ControlFlow<()> {
        if i == self.stop_depth {
            if i == self.sizes.len() && self.no_private && self.has_private() {
                return ControlFlow::Continue(());
            }
            return (self.visit)(&self.lists);
        }
        let mut masks = std::mem::take(&mut self.scratch[i]);
        let private = self.classes(i, &mut masks);
        let flow = if self.no_private && private > self.capacity_from[i] {
            ControlFlow::Continue(())
        } else {
            let mut rest = [0usize; MAX_UNIVERSE + 1];
            for j in (0..masks.len()).rev() {
                rest[j] = rest[j + 1] + masks[j].count_ones() as usize;
            }
            self.choose(i, &masks, &rest, 0, self.sizes[i], 0)
        };
        self.scratch[i] = masks;
        flow
    }

    fn choose(
        &mut self,
        i: usize,
        masks: &[u64],
        rest: &[usize],
        j: usize,
        remaining: usize,
        acc: u64,
    ) -> ControlFlow<()> {
        if j == masks.len() {
            if remaining == 0 {
                self.lists[i] = acc;
                return self.step(i + 1);
            }
            return ControlFlow::Continue(());
        }
        let here = masks[j].count_ones() as usize;
        let hi = here.min(remaining);
        let lo = remaining.saturating_sub(rest[j + 1]);
        if lo > hi {
            return ControlFlow::Continue(());
        }
        for t in (lo..=hi).rev() {
            self.choose(i, masks, rest, j + 1, remaining - t, acc | lowest_bits(masks[j], t))?;
        }
        ControlFlow::Continue(())
    }
}

fn lowest_bits(mut mask: u64, t: usize) -> u64 {
    let mut out = 0;
    for _ in 0..t {
        let b = mask & mask.wrapping_neg();
        out |= b;
        mask &= mask - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn count(sizes: &[usize], universe: usize) -> usize {
        let mut n = 0;
        let _ = for_each_canonical_assignment(sizes, universe, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    /// Venn counts: for each vertex subset, how many colors lie in
    /// exactly those lists. Complete invariant of an orbit.
    fn venn(masks: &[u64], universe: usize) -> Vec<(u64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for c in 0..universe {
            let pattern = masks
                .iter()
                .enumerate()
                .filter(|(_, &m)| m >> c & 1 == 1)
                .fold(0u64, |p, (j, _)| p | 1 << j);
            *counts.entry(pattern).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    fn all_assignments(sizes: &[usize], universe: usize) -> Vec<Vec<u64>> {
        let subsets: Vec<Vec<u64>> = sizes
            .iter()
            .map(|&s| {
                (0u64..1 << universe)
                    .filter(|m| m.count_ones() as usize == s)
                    .collect()
            })
            .collect();
        let mut out = vec![vec![]];
        for choices in &subsets {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    choices.iter().map(move |&m| {
                        let mut q = p.clone();
                        q.push(m);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn small_orbit_counts() {
        assert_eq!(count(&[2, 2], 4), 3);
        assert_eq!(count(&[1], 1), 1);
        assert_eq!(count(&[2, 2, 2, 2], 8), 139);
        let reps = canonical_list_assignments(&[2, 2], 4);
        assert_eq!(
            reps.iter().map(|l| l.lists().to_vec()).collect::<Vec<_>>(),
            vec![
                vec![vec![1, 2], vec![1, 2]],
                vec![vec![1, 2], vec![1, 3]],
                vec![vec![1, 2], vec![3, 4]],
            ]
        );
    }

    #[test]
    fn one_representative_per_orbit() {
        for (sizes, universe) in [
            (vec![2, 2, 2], 6),
            (vec![1, 2, 3], 5),
            (vec![3, 1, 2, 2], 5),
        ] {
            let mut reps = HashSet::new();
            let _ = for_each_canonical_assignment(&sizes, universe, |m| {
                assert!(reps.insert(venn(m, universe)), "orbit repeated");
                ControlFlow::Continue(())
            });
            let all: HashSet<_> = all_assignments(&sizes, universe)
                .iter()
                .map(|m| venn(m, universe))
                .collect();
            assert_eq!(reps, all, "sizes {sizes:?}");
        }
    }

    #[test]
    fn reduced_family_has_no_strays() {
        let sizes = [2, 3, 2];
        let _ = for_each_reduced_assignment(&sizes, |m| {
            for (v, &s) in sizes.iter().enumerate() {
                assert_eq!(m[v].count_ones() as usize, s);
            }
            let used = m.iter().fold(0, |a, b| a | b);
            let private = (0..64).any(|c| m.iter().filter(|&&l| l >> c & 1 == 1).count() == 1);
            assert!(!private || m.contains(&used));
            ControlFlow::Continue(())
        })
        .unwrap();
    }

    #[test]
    fn reduced_minimum_equals_full_minimum() {
        let graphs = [
            SimpleGraph::cycle(4),
            SimpleGraph::path(3),
            SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
            SimpleGraph::complete(3),
        ];
        for g in &graphs {
            let n = g.vertex_count();
            for sizes in [vec![2; n], (0..n).map(|v| g.degree(v).max(1)).collect()] {
                let universe: usize = sizes.iter().sum::<usize>().min(9);
                let mut full_min = u128::MAX;
                let _ = for_each_canonical_assignment(&sizes, universe, |m| {
                    full_min = full_min.min(MaskCounter::new(g).count(m, u128::MAX));
                    ControlFlow::Continue(())
                });
                let mut reduced_min = u128::MAX;
                let _ = for_each_reduced_assignment(&sizes, |m| {
                    reduced_min = reduced_min.min(MaskCounter::new(g).count(m, u128::MAX));
                    ControlFlow::Continue(())
                })
                .unwrap();
                assert_eq!(full_min, reduced_min, "graph {g:?} sizes {sizes:?}");
            }
        }
    }

    #[test]
    fn search_finds_odd_cycle_witness() {
        let c5 = SimpleGraph::cycle(5);
        let s = min_colorings_over_assignments(&c5, &[2; 5], 1, false).unwrap();
        let (lists, count) = s.witness.unwrap();
        assert_eq!(count, 0);
        assert!(lists.lists().iter().all(|l| l == &lists.lists()[0]));
        let c4 = SimpleGraph::cycle(4);
        let s = min_colorings_over_assignments(&c4, &[2; 4], 2, true).unwrap();
        assert!(s.witness.is_none());
    }
}
