//! Deciding whether one graph admits a maximal edge coloring.
//!
//! [`decide`] backtracks over the edges in a fixed order, assigning colors in
//! `0..k` with `k = χ'(K_n)`. Partial states are cut when
//!
//! * a color would repeat at a vertex,
//! * a color index skips an unused smaller one (colors are interchangeable,
//!   so only the first-use representative of each relabeling class is tried),
//! * some non-adjacent pair `x, y` is missing more colors from
//!   `P(x) ∪ P(y)` than `x` and `y` have uncolored edges left.
//!
//! [`brute_force_exists_mec_coloring`] is the unpruned reference used to test it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::bounds::{degree_sum_filter, independent_triple_filter, max_degree_filter};
use crate::coloring::{
    canonical_complete_coloring, chromatic_index_complete, is_maximal_edge_coloring, EdgeColoring,
};
use crate::graph::Graph;

/// Graph-level necessary conditions checked before backtracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    pub max_degree: bool,
    pub degree_sum: bool,
    pub independent_triple: bool,
}

impl Filters {
    pub const ALL: Filters = Filters {
        max_degree: true,
        degree_sum: true,
        independent_triple: true,
    };
    pub const NONE: Filters = Filters {
        max_degree: false,
        degree_sum: false,
        independent_triple: false,
    };

    /// The first enabled filter that rejects `g` with `k` colors.
    pub fn rejecting(&self, g: &Graph, k: usize) -> Option<FilterKind> {
        if self.max_degree && !max_degree_filter(g, k) {
            Some(FilterKind::MaxDegree)
        } else if self.degree_sum && !degree_sum_filter(g, k) {
            Some(FilterKind::DegreeSum)
        } else if self.independent_triple && !independent_triple_filter(g, k) {
            Some(FilterKind::IndependentTriple)
        } else {
            None
        }
    }
}

impl Default for Filters {
    fn default() -> Self {
        Filters::ALL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterKind {
    MaxDegree,
    DegreeSum,
    IndependentTriple,
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterKind::MaxDegree => "max-degree",
            FilterKind::DegreeSum => "degree-sum",
            FilterKind::IndependentTriple => "independent-triple",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A maximal coloring, verified.
    Colorable(EdgeColoring),
    /// Rejected by a graph-level filter.
    Filtered(FilterKind),
    /// The search tree was exhausted.
    NotColorable,
    /// The node budget ran out first.
    Unknown,
}

impl Decision {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            Decision::Colorable(c) => Some(c),
            _ => None,
        }
    }

    /// Decided either way.
    pub fn is_decided(&self) -> bool {
        !matches!(self, Decision::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub decision: Decision,
    /// Color assignments tried.
    pub nodes: u64,
}

/// A maximal coloring of `g` if one exists, with all filters and no budget.
pub fn exists_mec_coloring(g: &Graph) -> Option<EdgeColoring> {
    match decide(g, Filters::ALL, None).decision {
        Decision::Colorable(c) => Some(c),
        Decision::Filtered(_) | Decision::NotColorable => None,
        Decision::Unknown => unreachable!("no budget was set"),
    }
}

/// Full decision with statistics. `budget` caps the number of color assignments tried.
pub fn decide(g: &Graph, filters: Filters, budget: Option<u64>) -> Outcome {
    let n = g.order();
    let k = chromatic_index_complete(n);
    if let Some(kind) = filters.rejecting(g, k) {
        return Outcome {
            decision: Decision::Filtered(kind),
            nodes: 0,
        };
    }
    if g.is_complete() {
        let col = if n < 2 {
            EdgeColoring::for_graph(g)
        } else {
            canonical_complete_coloring(n).expect("order at least 2").1
        };
        return Outcome {
            decision: Decision::Colorable(col),
            nodes: 0,
        };
    }
    let mut s = Backtrack::new(g, k, budget);
    if !s.initially_feasible() {
        return Outcome {
            decision: Decision::NotColorable,
            nodes: 0,
        };
    }
    let decision = match s.run(0) {
        Step::Found => {
            let col = EdgeColoring::from_triples(
                g,
                k,
                s.edges
                    .iter()
                    .zip(&s.colors)
                    .map(|(&(u, v), &c)| (u, v, c as usize)),
            )
            .expect("search assigns valid colors to edges");
            debug_assert!(is_maximal_edge_coloring(g, &col));
            Decision::Colorable(col)
        }
        Step::Exhausted => Decision::NotColorable,
        Step::OutOfBudget => Decision::Unknown,
    };
    Outcome {
        decision,
        nodes: s.nodes,
    }
}

/// Edges sorted by descending `min(d(u), d(v))`, then lexicographically.
pub fn edge_order(g: &Graph) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(g.degree(u).min(g.degree(v))), u, v));
    edges
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Backtrack<'a> {
    g: &'a Graph,
    k: usize,
    full: u64,
    edges: Vec<(usize, usize)>,
    colors: Vec<u8>,
    palette: Vec<u64>,
    free: Vec<u32>,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph, k: usize, budget: Option<u64>) -> Self {
        let n = g.order();
        Backtrack {
            g,
            k,
            full: crate::bits::low_mask(k),
            edges: edge_order(g),
            colors: Vec::with_capacity(g.size()),
            palette: vec![0; n],
            free: (0..n).map(|v| g.degree(v) as u32).collect(),
            nodes: 0,
            budget,
        }
    }

    fn pair_feasible(&self, x: usize, y: usize) -> bool {
        let missing = (self.full & !(self.palette[x] | self.palette[y])).count_ones();
        missing <= self.free[x] + self.free[y]
    }

    fn vertex_feasible(&self, x: usize) -> bool {
        Bits(self.g.non_neighbors(x)).all(|y| self.pair_feasible(x, y))
    }

    fn initially_feasible(&self) -> bool {
        (0..self.g.order()).all(|x| self.vertex_feasible(x))
    }

    fn run(&mut self, i: usize) -> Step {
        if i == self.edges.len() {
            return Step::Found;
        }
        let (u, v) = self.edges[i];
        let used = self
            .colors
            .iter()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0);
        let limit = (used + 1).min(self.k);
        let allowed = !(self.palette[u] | self.palette[v]) & crate::bits::low_mask(limit);
        for c in Bits(allowed) {
            if let Some(b) = self.budget {
                if self.nodes >= b {
                    return Step::OutOfBudget;
                }
            }
            self.nodes += 1;
            let bit = 1u64 << c;
            self.palette[u] |= bit;
            self.palette[v] |= bit;
            self.free[u] -= 1;
            self.free[v] -= 1;
            self.colors.push(c as u8);
            if self.vertex_feasible(u) && self.vertex_feasible(v) {
                match self.run(i + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.colors.pop();
            self.palette[u] &= !bit;
            self.palette[v] &= !bit;
            self.free[u] += 1;
            self.free[v] += 1;
        }
        Step::Exhausted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("{k}^{m} colorings exceed the brute-force limit of 7^9")]
    TooLarge { k: usize, m: usize },
}

/// Tries every one of the `k^m` colorings, with no pruning and no symmetry
/// breaking, and returns the first maximal one in odometer order.
///
/// Only for instances with `k^m <= 7^9`.
pub fn brute_force_exists_mec_coloring(g: &Graph) -> Result<Option<EdgeColoring>, BruteForceError> {
    let k = chromatic_index_complete(g.order());
    let m = g.size();
    let too_large = BruteForceError::TooLarge { k, m };
    let total = (k as u64).checked_pow(m as u32).ok_or(too_large.clone())?;
    if total > 7u64.pow(9) {
        return Err(too_large);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if k == 0 {
        let col = EdgeColoring::for_graph(g);
        return Ok(is_maximal_edge_coloring(g, &col).then_some(col));
    }
    let n = g.order();
    let non_edges: Vec<(usize, usize)> = g.non_edges().collect();
    let all = (1u64 << k) - 1;
    let mut digits = vec![0usize; m];
    let mut seen = vec![0u64; n];
    loop {
        seen.iter_mut().for_each(|s| *s = 0);
        let mut proper = true;
        for (&(u, v), &c) in edges.iter().zip(&digits) {
            let bit = 1u64 << c;
            proper &= seen[u] & bit == 0 && seen[v] & bit == 0;
            seen[u] |= bit;
            seen[v] |= bit;
        }
        if proper && non_edges.iter().all(|&(x, y)| seen[x] | seen[y] == all) {
            let col = EdgeColoring::from_triples(
                g,
                k,
                edges.iter().zip(&digits).map(|(&(u, v), &c)| (u, v, c)),
            )
            .expect("colors in range");
            assert!(is_maximal_edge_coloring(g, &col));
            return Ok(Some(col));
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
