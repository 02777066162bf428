//! Degree-choosability: the block criterion and an exhaustive check.
//!
//! A connected graph is colorable from every assignment with
//! `|L(v)| ≥ d(v)` unless each of its blocks is a clique or an odd cycle
//! (a Gallai tree). The brute-force side quantifies over lists of size
//! exactly `d(v)`: adding colors to a list never destroys a coloring.

use super::assignments::min_colorings_over_assignments;
use super::{ColoringError, ListAssignment};
use crate::graph::SimpleGraph;

/// Default vertex cap for [`is_degree_choosable_bruteforce`].
pub const DEFAULT_BRUTEFORCE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeChoosability {
    pub choosable: bool,
    /// An uncolorable assignment with `|L(v)| = d(v)`. Absent for the
    /// one-vertex graph, whose only witness is an empty list.
    pub witness: Option<ListAssignment>,
    pub assignments_checked: u64,
}

/// False iff every block of `g` is a clique or an odd cycle.
pub fn is_degree_choosable_structural(g: &SimpleGraph) -> Result<bool, ColoringError> {
    if g.vertex_count() == 0 {
        return Ok(true);
    }
    if !g.is_connected() {
        return Err(ColoringError::DisconnectedInput);
    }
    Ok(!g
        .blocks()
        .iter()
        .all(|b| b.is_clique() || b.is_odd_cycle()))
}

/// Tries every assignment with `|L(v)| = d(v)`, up to color renaming and
/// the private-color exchange, and reports the first uncolorable one.
pub fn is_degree_choosable_bruteforce(
    g: &SimpleGraph,
    cap: usize,
) -> Result<DegreeChoosability, ColoringError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(ColoringError::SizeCapExceeded { size: n, cap });
    }
    if n == 0 {
        return Ok(DegreeChoosability {
            choosable: true,
            witness: None,
            assignments_checked: 1,
        });
    }
    if !g.is_connected() {
        return Err(ColoringError::DisconnectedInput);
    }
    if n == 1 {
        return Ok(DegreeChoosability {
            choosable: false,
            witness: None,
            assignments_checked: 1,
        });
    }
    let sizes: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let search = min_colorings_over_assignments(g, &sizes, 1, cfg!(feature = "parallel"))?;
    Ok(DegreeChoosability {
        choosable: search.witness.is_none(),
        witness: search.witness.map(|(l, _)| l),
        assignments_checked: search.checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> SimpleGraph {
        SimpleGraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn structural_examples() {
        assert!(is_degree_choosable_structural(&SimpleGraph::cycle(4)).unwrap());
        assert!(!is_degree_choosable_structural(&SimpleGraph::complete(4)).unwrap());
        assert!(!is_degree_choosable_structural(&SimpleGraph::cycle(5)).unwrap());
        assert!(is_degree_choosable_structural(&theta()).unwrap());
        let two = SimpleGraph::empty(2);
        assert_eq!(
            is_degree_choosable_structural(&two),
            Err(ColoringError::DisconnectedInput)
        );
    }

    #[test]
    fn bruteforce_examples() {
        let c4 = is_degree_choosable_bruteforce(&SimpleGraph::cycle(4), 6).unwrap();
        assert!(c4.choosable && c4.witness.is_none());

        let c5 = is_degree_choosable_bruteforce(&SimpleGraph::cycle(5), 6).unwrap();
        assert!(!c5.choosable);
        assert_eq!(c5.witness.unwrap().lists(), &vec![vec![1, 2]; 5][..]);

        let k2 = is_degree_choosable_bruteforce(&SimpleGraph::path(2), 6).unwrap();
        assert_eq!(k2.witness.unwrap().lists(), &[vec![1], vec![1]][..]);

        assert!(is_degree_choosable_bruteforce(&theta(), 6).unwrap().choosable);
        assert_eq!(
            is_degree_choosable_bruteforce(&SimpleGraph::cycle(7), 6),
            Err(ColoringError::SizeCapExceeded { size: 7, cap: 6 })
        );
    }
}
