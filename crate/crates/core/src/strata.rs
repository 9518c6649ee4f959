//! The closure order on HN strata of rank-`n` bundles.
//!
//! The closure of the stratum with polygon `P` is the union of strata with
//! polygon `≥ P`. Up-sets are infinite, so only the predicate
//! [`in_closure`] and finite down-sets are materialized.

use std::fmt::Write as _;

use crate::enumerate::concave_paths_below;
use crate::error::{Error, Result};
use crate::polygon::Polygon;

/// All HN polygons `P'` with `P' ≤ ceiling`, ordered by height profile,
/// descending (the ceiling first).
pub fn down_set(ceiling: &Polygon) -> Vec<Polygon> {
    concave_paths_below(ceiling.endpoint(), ceiling)
}

/// Whether the stratum of `target` lies in the closure of the stratum of
/// `stratum`, i.e. `stratum ≤ target`.
pub fn in_closure(target: &Polygon, stratum: &Polygon) -> Result<bool> {
    if target.endpoint() != stratum.endpoint() {
        return Err(Error::Precondition(format!(
            "endpoints differ: {} vs {}",
            target.endpoint(),
            stratum.endpoint()
        )));
    }
    Ok(stratum.leq(target))
}

/// A finite down-set of polygons under the closure order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataPoset {
    ceiling: Polygon,
    nodes: Vec<Polygon>,
}

impl StrataPoset {
    pub fn below(ceiling: &Polygon) -> Self {
        StrataPoset {
            ceiling: ceiling.clone(),
            nodes: down_set(ceiling),
        }
    }

    pub fn ceiling(&self) -> &Polygon {
        &self.ceiling
    }

    pub fn nodes(&self) -> &[Polygon] {
        &self.nodes
    }

    /// `nodes[i] ≤ nodes[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.nodes[i].leq(&self.nodes[j])
    }

    /// Strict relation matrix `nodes[i] < nodes[j]`.
    pub fn relation(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        (0..n)
            .map(|i| (0..n).map(|j| i != j && self.leq(i, j)).collect())
            .collect()
    }

    /// Covering relations `(lower, upper)`: `lower < upper` with nothing in
    /// between. Sorted by node index.
    pub fn hasse_diagram(&self) -> Vec<(usize, usize)> {
        let rel = self.relation();
        let n = self.nodes.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] && !(0..n).any(|k| rel[i][k] && rel[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for p in &self.nodes {
            let _ = writeln!(out, "  \"{p}\";");
        }
        for (i, j) in self.hasse_diagram() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.nodes[i], self.nodes[j]);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(i64, i64)]) -> Polygon {
        Polygon::from_pairs(pts.iter().copied()).unwrap()
    }

    #[test]
    fn down_set_examples() {
        let chord = poly(&[(0, 0), (3, 2)]);
        assert_eq!(down_set(&chord), std::slice::from_ref(&chord));
        assert_eq!(down_set(&poly(&[(0, 0), (1, 1), (2, 1)])).len(), 2);
        assert_eq!(down_set(&poly(&[(0, 0), (1, 2), (3, 2)])).len(), 4);
    }

    #[test]
    fn closure_examples() {
        let split = poly(&[(0, 0), (4, 9), (8, 7)]);
        let e = poly(&[(0, 0), (5, 6), (8, 7)]);
        assert!(in_closure(&e, &e).unwrap());
        assert!(in_closure(&split, &e).unwrap());
        assert!(!in_closure(&e, &split).unwrap());
        assert!(in_closure(&e, &poly(&[(0, 0), (2, 1)])).is_err());
    }

    #[test]
    fn hasse_of_chain() {
        let poset = StrataPoset::below(&poly(&[(0, 0), (1, 1), (2, 1)]));
        assert_eq!(poset.hasse_diagram(), [(1, 0)]);
        let dot = poset.to_dot();
        assert!(dot.starts_with("digraph {"));
        assert!(dot.contains("\"[(0,0),(2,1)]\" -> \"[(0,0),(1,1),(2,1)]\";"));
    }

    #[test]
    fn hasse_of_four_element_down_set() {
        // the four polygons under [(0,0),(1,2),(3,2)] form a chain
        let poset = StrataPoset::below(&poly(&[(0, 0), (1, 2), (3, 2)]));
        assert_eq!(poset.hasse_diagram(), [(1, 0), (2, 1), (3, 2)]);
    }
}
