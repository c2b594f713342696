//! Simple undirected graphs with one adjacency word per vertex.

use std::fmt;

use thiserror::Error;

use crate::bits::{low_mask, Bits};

/// Largest supported order; adjacency rows and palettes are single `u64` words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} is outside 1..={MAX_VERTICES}")]
    InvalidOrder(usize),
    #[error("vertex {vertex} is out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// `adj[v]` has bit `u` set iff `uv` is an edge. The edge count is cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::InvalidOrder(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            m: 0,
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        g.m = n * (n - 1) / 2;
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        Ok(g)
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        debug_assert!((1..=MAX_VERTICES).contains(&n));
        let m = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        let g = Graph { n, adj: rows, m };
        debug_assert!(g.is_well_formed());
        g
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        self.m += 1;
        Ok(true)
    }

    /// Removes `uv`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Ok(false);
        }
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
        self.m -= 1;
        Ok(true)
    }

    /// Order `n`.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Size `m`.
    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    /// `n(n-1)/2`.
    #[inline]
    pub fn max_size(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Vertices other than `v` that are not adjacent to it, as a bit mask.
    #[inline]
    pub fn non_neighbors(&self, v: usize) -> u64 {
        low_mask(self.n) & !self.adj[v] & !(1u64 << v)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.max_size()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v` in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |u| Bits(self.non_neighbors(u) & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let rows = (0..self.n).map(|v| self.non_neighbors(v)).collect();
        Graph {
            n: self.n,
            adj: rows,
            m: self.max_size() - self.m,
        }
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal the order"
        );
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in Bits(self.adj[v]) {
                row |= 1u64 << perm[u];
            }
            rows[perm[v]] = row;
        }
        Graph {
            n: self.n,
            adj: rows,
            m: self.m,
        }
    }

    fn is_well_formed(&self) -> bool {
        let all = low_mask(self.n);
        let twice_m: usize = self.adj.iter().map(|r| r.count_ones() as usize).sum();
        twice_m == 2 * self.m
            && (0..self.n).all(|v| {
                self.adj[v] & !all == 0
                    && self.adj[v] >> v & 1 == 0
                    && Bits(self.adj[v]).all(|u| self.adj[u] >> v & 1 == 1)
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}
