//! Edge colorings, palettes and the maximality verifier.
//!
//! Colors are indices `0..k`; a coloring of an `n`-vertex graph is only ever
//! judged against `k = χ'(K_n)`.

use std::fmt;

use thiserror::Error;

use crate::bits::{low_mask, Bits};
use crate::graph::{Graph, GraphError};

/// Chromatic index of `K_n`: `n - 1` for even `n`, `n` for odd `n >= 3`, `0` for `n = 1`.
pub fn chromatic_index_complete(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        n if n % 2 == 0 => n - 1,
        n => n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring declares {found} colors but order {n} requires {expected}")]
    ColorCountMismatch {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("coloring is for order {coloring} but the graph has order {graph}")]
    OrderMismatch { graph: usize, coloring: usize },
    #[error("{u}-{v} is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("color {color} is out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("edge {u}-{v} is uncolored")]
    Incomplete { u: usize, v: usize },
    #[error("vertex {vertex} sees color {color} twice")]
    Improper { vertex: usize, color: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partial or total assignment of colors `0..k` to the edges of a graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    // symmetric n*n table, NONE for unassigned
    table: Vec<u8>,
    assigned: usize,
}

const NONE: u8 = u8::MAX;

impl EdgeColoring {
    /// Empty coloring of `g` with `k` available colors.
    pub fn new(g: &Graph, k: usize) -> Result<Self, ColoringError> {
        if k > 64 {
            return Err(ColoringError::ColorCountMismatch {
                n: g.order(),
                expected: chromatic_index_complete(g.order()),
                found: k,
            });
        }
        let n = g.order();
        Ok(EdgeColoring {
            n,
            k,
            table: vec![NONE; n * n],
            assigned: 0,
        })
    }

    /// Empty coloring of `g` with `χ'(K_n)` colors.
    pub fn for_graph(g: &Graph) -> Self {
        EdgeColoring::new(g, chromatic_index_complete(g.order())).expect("k <= 64 for n <= 64")
    }

    /// Builds a coloring from `(u, v, color)` triples.
    pub fn from_triples<I>(g: &Graph, k: usize, triples: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut col = EdgeColoring::new(g, k)?;
        for (u, v, c) in triples {
            col.assign(g, u, v, c)?;
        }
        Ok(col)
    }

    /// Colors edge `uv` of `g`, overwriting any previous color.
    pub fn assign(
        &mut self,
        g: &Graph,
        u: usize,
        v: usize,
        color: usize,
    ) -> Result<(), ColoringError> {
        if g.order() != self.n {
            return Err(ColoringError::OrderMismatch {
                graph: g.order(),
                coloring: self.n,
            });
        }
        if !g.has_edge(u, v) {
            return Err(ColoringError::NotAnEdge { u, v });
        }
        if color >= self.k {
            return Err(ColoringError::ColorOutOfRange { color, k: self.k });
        }
        if self.table[u * self.n + v] == NONE {
            self.assigned += 1;
        }
        self.table[u * self.n + v] = color as u8;
        self.table[v * self.n + u] = color as u8;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of available colors.
    pub fn colors(&self) -> usize {
        self.k
    }

    pub fn color(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.table[u * self.n + v] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    pub fn num_assigned(&self) -> usize {
        self.assigned
    }

    pub fn is_total(&self, g: &Graph) -> bool {
        self.assigned == g.size()
    }

    /// Colored edges as `(u, v, color)` with `u < v`, lexicographic.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.color(u, v).map(|c| (u, v, c)))
        })
    }

    /// The same coloring with vertex `v` renamed `perm[v]`, on `g.permuted(perm)`.
    pub fn permuted(&self, perm: &[usize]) -> EdgeColoring {
        let mut out = EdgeColoring {
            n: self.n,
            k: self.k,
            table: vec![NONE; self.n * self.n],
            assigned: self.assigned,
        };
        for (u, v, c) in self.triples() {
            let (a, b) = (perm[u], perm[v]);
            out.table[a * self.n + b] = c as u8;
            out.table[b * self.n + a] = c as u8;
        }
        out
    }

    /// Renames color `c` as `colors[c]`.
    pub fn recolored(&self, colors: &[usize]) -> EdgeColoring {
        let mut out = self.clone();
        for cell in out.table.iter_mut().filter(|c| **c != NONE) {
            *cell = colors[*cell as usize] as u8;
        }
        out
    }

    fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if g.order() != self.n {
            return Err(ColoringError::OrderMismatch {
                graph: g.order(),
                coloring: self.n,
            });
        }
        let expected = chromatic_index_complete(self.n);
        if self.k != expected {
            return Err(ColoringError::ColorCountMismatch {
                n: self.n,
                expected,
                found: self.k,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(k={}, [", self.k)?;
        for (i, (u, v, c)) in self.triples().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}:{c}")?;
        }
        f.write_str("])")
    }
}

/// Colors seen at each vertex, one mask per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    seen: Vec<u64>,
}

impl Palette {
    pub fn of(g: &Graph, col: &EdgeColoring) -> Palette {
        let mut seen = vec![0u64; g.order()];
        for (u, v, c) in col.triples() {
            seen[u] |= 1u64 << c;
            seen[v] |= 1u64 << c;
        }
        Palette { seen }
    }

    /// Mask of colors seen at `v`.
    pub fn seen(&self, v: usize) -> u64 {
        self.seen[v]
    }

    pub fn sees(&self, v: usize, color: usize) -> bool {
        self.seen[v] >> color & 1 == 1
    }

    /// `|Palette(v)|`.
    pub fn len(&self, v: usize) -> usize {
        self.seen[v].count_ones() as usize
    }

    pub fn is_empty(&self, v: usize) -> bool {
        self.seen[v] == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProperVerdict {
    Proper,
    /// `vertex` has two incident edges colored `color`.
    Improper {
        vertex: usize,
        color: usize,
    },
    /// Edge `uv` has no color (the first uncolored edge in lexicographic order).
    Incomplete {
        u: usize,
        v: usize,
    },
}

/// Checks that no vertex sees a color twice.
///
/// Incompleteness is reported before improperness. The reported clash is at
/// the smallest offending vertex.
pub fn check_proper(g: &Graph, col: &EdgeColoring) -> Result<ProperVerdict, ColoringError> {
    col.check_against(g)?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| col.color(u, v).is_none()) {
        return Ok(ProperVerdict::Incomplete { u, v });
    }
    for v in 0..g.order() {
        let mut seen = 0u64;
        for u in Bits(g.neighbors(v)) {
            let c = col.color(u, v).expect("coloring is total");
            if seen >> c & 1 == 1 {
                return Ok(ProperVerdict::Improper {
                    vertex: v,
                    color: c,
                });
            }
            seen |= 1u64 << c;
        }
    }
    Ok(ProperVerdict::Proper)
}

/// A missing edge together with a color neither endpoint sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Extension {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "non-edge {}-{} accepts color {}",
            self.u, self.v, self.color
        )
    }
}

/// Finds the lexicographically smallest `(u, v, color)` such that `uv` is a
/// non-edge and neither endpoint sees `color`, or `None` if the coloring is maximal.
pub fn find_extension(g: &Graph, col: &EdgeColoring) -> Result<Option<Extension>, ColoringError> {
    match check_proper(g, col)? {
        ProperVerdict::Proper => {}
        ProperVerdict::Improper { vertex, color } => {
            return Err(ColoringError::Improper { vertex, color })
        }
        ProperVerdict::Incomplete { u, v } => return Err(ColoringError::Incomplete { u, v }),
    }
    let palette = Palette::of(g, col);
    let all = low_mask(col.colors());
    Ok(g.non_edges().find_map(|(u, v)| {
        let missing = all & !(palette.seen(u) | palette.seen(v));
        (missing != 0).then(|| Extension {
            u,
            v,
            color: missing.trailing_zeros() as usize,
        })
    }))
}

/// Outcome of the full maximality check, with the first reason for rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalityVerdict {
    Maximal,
    OrderMismatch { graph: usize, coloring: usize },
    ColorCountMismatch { expected: usize, found: usize },
    Incomplete { u: usize, v: usize },
    Improper { vertex: usize, color: usize },
    Extendable(Extension),
}

impl MaximalityVerdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, MaximalityVerdict::Maximal)
    }

    /// Stable short code for reports.
    pub fn reason_code(&self) -> &'static str {
        match self {
            MaximalityVerdict::Maximal => "maximal",
            MaximalityVerdict::OrderMismatch { .. } => "order-mismatch",
            MaximalityVerdict::ColorCountMismatch { .. } => "k-mismatch",
            MaximalityVerdict::Incomplete { .. } => "incomplete",
            MaximalityVerdict::Improper { .. } => "improper",
            MaximalityVerdict::Extendable(_) => "extendable",
        }
    }
}

impl fmt::Display for MaximalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximalityVerdict::Maximal => f.write_str("maximal"),
            MaximalityVerdict::OrderMismatch { graph, coloring } => {
                write!(
                    f,
                    "order mismatch: graph has {graph} vertices, coloring {coloring}"
                )
            }
            MaximalityVerdict::ColorCountMismatch { expected, found } => {
                write!(f, "k mismatch: expected {expected} colors, found {found}")
            }
            MaximalityVerdict::Incomplete { u, v } => {
                write!(f, "incomplete: edge {u}-{v} is uncolored")
            }
            MaximalityVerdict::Improper { vertex, color } => {
                write!(f, "improper: vertex {vertex} sees color {color} twice")
            }
            MaximalityVerdict::Extendable(ext) => write!(f, "extendable: {ext}"),
        }
    }
}

/// Full verdict: total, proper, `k = χ'(K_n)`, and no extension.
pub fn maximality(g: &Graph, col: &EdgeColoring) -> MaximalityVerdict {
    if let Err(e) = col.check_against(g) {
        return match e {
            ColoringError::ColorCountMismatch {
                expected, found, ..
            } => MaximalityVerdict::ColorCountMismatch { expected, found },
            ColoringError::OrderMismatch { graph, coloring } => {
                MaximalityVerdict::OrderMismatch { graph, coloring }
            }
            other => unreachable!("check_against returned {other:?}"),
        };
    }
    match find_extension(g, col) {
        Ok(None) => MaximalityVerdict::Maximal,
        Ok(Some(ext)) => MaximalityVerdict::Extendable(ext),
        Err(ColoringError::Incomplete { u, v }) => MaximalityVerdict::Incomplete { u, v },
        Err(ColoringError::Improper { vertex, color }) => {
            MaximalityVerdict::Improper { vertex, color }
        }
        Err(other) => unreachable!("find_extension returned {other:?}"),
    }
}

pub fn is_maximal_edge_coloring(g: &Graph, col: &EdgeColoring) -> bool {
    maximality(g, col).is_maximal()
}

/// `K_n` with the round-robin coloring in `χ'(K_n)` colors.
///
/// Odd `n`: `{i, j} -> (i + j) mod n`. Even `n`: vertices `0..n-1` sit on a
/// circle with hub `n - 1`; `{i, j} -> (i + j) mod (n - 1)` on the circle and
/// `{i, n - 1} -> 2i mod (n - 1)`.
pub fn canonical_complete_coloring(n: usize) -> Result<(Graph, EdgeColoring), ColoringError> {
    if n < 2 {
        return Err(ColoringError::Graph(GraphError::InvalidOrder(n)));
    }
    let g = Graph::complete(n)?;
    let mut col = EdgeColoring::for_graph(&g);
    if n % 2 == 1 {
        for (i, j) in g.edges() {
            col.assign(&g, i, j, (i + j) % n)?;
        }
    } else {
        let r = n - 1;
        let hub = n - 1;
        for (i, j) in g.edges() {
            let c = if j == hub { (2 * i) % r } else { (i + j) % r };
            col.assign(&g, i, j, c)?;
        }
    }
    Ok((g, col))
}
