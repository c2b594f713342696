//! Canonical labeling by equitable refinement and individualization.
//!
//! The search tree is the usual one: refine the unit partition to an
//! equitable ordered partition, then repeatedly individualize each vertex of
//! the first non-singleton cell and refine again. Every leaf is a discrete
//! partition, i.e. a relabeling; the canonical form is the lexicographically
//! greatest relabeled adjacency matrix over all leaves.
//!
//! Two leaves with the same relabeled graph yield an automorphism. Those are
//! used to (a) skip children in the same orbit as an already explored child
//! under automorphisms fixing the current path, and (b) abandon a subtree as
//! soon as one of its leaves matches the first or best leaf, backing up to the
//! common ancestor of the two leaves.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::bits::Bits;
use crate::graph::Graph;

/// Result of canonical labeling.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// The input relabeled by `labeling`.
    pub graph: Graph,
    /// `labeling[v]` is the canonical position of input vertex `v`.
    pub labeling: Vec<usize>,
    /// Automorphisms of the input found during the search, as vertex maps.
    /// They need not generate the full group.
    pub automorphisms: Vec<Vec<usize>>,
    /// Search tree nodes visited.
    pub nodes: u64,
}

impl CanonicalForm {
    /// Vertex orbits under the group generated by the found automorphisms,
    /// as a representative per vertex (the smallest vertex of its orbit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.labeling.len());
        for gamma in &self.automorphisms {
            for (v, &w) in gamma.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..self.labeling.len()).map(|v| uf.min_of(v)).collect()
    }

    /// Whether some product of the found automorphisms maps edge `a` onto edge `b`.
    pub fn same_edge_orbit(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let norm = |(u, v): (usize, usize)| (u.min(v), u.max(v));
        let (a, b) = (norm(a), norm(b));
        if a == b {
            return true;
        }
        let mut seen = vec![a];
        let mut queue = VecDeque::from([a]);
        while let Some((u, v)) = queue.pop_front() {
            for gamma in &self.automorphisms {
                let image = norm((gamma[u], gamma[v]));
                if image == b {
                    return true;
                }
                if !seen.contains(&image) {
                    seen.push(image);
                    queue.push_back(image);
                }
            }
        }
        false
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        adj: g.rows(),
        n,
        first: None,
        best: None,
        automorphisms: Vec::new(),
        nodes: 0,
        scratch: Vec::with_capacity(n),
    };
    let mut cells = vec![crate::bits::low_mask(n)];
    search.refine(&mut cells, VecDeque::from([crate::bits::low_mask(n)]));
    let mut path = Vec::with_capacity(n);
    search.descend(cells, &mut path);

    let best = search.best.expect("the search tree has at least one leaf");
    let mut labeling = vec![0usize; n];
    for (p, &v) in best.order.iter().enumerate() {
        labeling[v as usize] = p;
    }
    CanonicalForm {
        graph: Graph::from_rows(best.rows),
        labeling,
        automorphisms: search
            .automorphisms
            .into_iter()
            .map(|a| a.into_iter().map(usize::from).collect())
            .collect(),
        nodes: search.nodes,
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.size() == b.size()
        && canonical_form(a).graph == canonical_form(b).graph
}

#[derive(Clone)]
struct Leaf {
    path: Vec<u8>,
    order: Vec<u8>,
    rows: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<u8>>,
    nodes: u64,
    scratch: Vec<(u32, usize)>,
}

impl Search<'_> {
    /// Refines `cells` to the coarsest equitable partition finer than it,
    /// starting from the given splitters. Split pieces stay in place, ordered
    /// by their neighbour count into the splitter.
    fn refine(&mut self, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
        while let Some(w) = queue.pop_front() {
            if cells.len() == self.n {
                return;
            }
            let mut i = 0;
            while i < cells.len() {
                let x = cells[i];
                if x & (x - 1) == 0 {
                    i += 1;
                    continue;
                }
                if w & (w - 1) == 0 {
                    let s = w.trailing_zeros() as usize;
                    let near = x & self.adj[s];
                    let far = x & !self.adj[s];
                    if near != 0 && far != 0 {
                        cells[i] = far;
                        cells.insert(i + 1, near);
                        queue.push_back(far);
                        queue.push_back(near);
                        i += 2;
                    } else {
                        i += 1;
                    }
                    continue;
                }
                self.scratch.clear();
                for v in Bits(x) {
                    self.scratch.push(((self.adj[v] & w).count_ones(), v));
                }
                let c0 = self.scratch[0].0;
                if self.scratch.iter().all(|&(c, _)| c == c0) {
                    i += 1;
                    continue;
                }
                self.scratch.sort_unstable();
                let mut pieces: Vec<u64> = Vec::new();
                let mut last = u32::MAX;
                for &(c, v) in &self.scratch {
                    if c != last {
                        pieces.push(0);
                        last = c;
                    }
                    *pieces.last_mut().unwrap() |= 1u64 << v;
                }
                let k = pieces.len();
                queue.extend(pieces.iter().copied());
                cells.splice(i..=i, pieces);
                i += k;
            }
        }
    }

    /// Returns `Some(depth)` to abandon everything below the ancestor at `depth`.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<u8>) -> Option<usize> {
        self.nodes += 1;
        let Some(t) = cells.iter().position(|c| c & (c - 1) != 0) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let target = cells[t];
        let mut tried = 0u64;
        for v in Bits(target) {
            if tried != 0 && self.equivalent_to_tried(v, tried, path) {
                continue;
            }
            tried |= 1u64 << v;
            let mut child = cells.clone();
            child[t] = 1u64 << v;
            child.insert(t + 1, target & !(1u64 << v));
            self.refine(&mut child, VecDeque::from([1u64 << v]));
            path.push(v as u8);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(to) = jump {
                if to < depth {
                    return jump;
                }
            }
        }
        None
    }

    fn equivalent_to_tried(&self, v: usize, tried: u64, path: &[u8]) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().all(|&p| gamma[p as usize] == p) {
                any = true;
                for (x, &y) in gamma.iter().enumerate() {
                    uf.union(x, y as usize);
                }
            }
        }
        any && Bits(tried).any(|u| uf.find(u) == uf.find(v))
    }

    fn leaf(&mut self, cells: &[u64], path: &[u8]) -> Option<usize> {
        let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let mut position = [0u8; 64];
        for (p, &v) in order.iter().enumerate() {
            position[v as usize] = p as u8;
        }
        let rows: Vec<u64> = order
            .iter()
            .map(|&v| Bits(self.adj[v as usize]).fold(0u64, |r, u| r | 1u64 << position[u]))
            .collect();
        let leaf = Leaf {
            path: path.to_vec(),
            order,
            rows,
        };

        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let back = common_prefix(&leaf.path, &first.path);
            let gamma = automorphism(&first.order, &leaf.order);
            self.automorphisms.push(gamma);
            return Some(back);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.rows.cmp(&best.rows) {
            Ordering::Equal => {
                let back = common_prefix(&leaf.path, &best.path);
                let gamma = automorphism(&best.order, &leaf.order);
                self.automorphisms.push(gamma);
                Some(back)
            }
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Less => None,
        }
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Map sending the vertex at each position of `from` to the vertex at the same position of `to`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut gamma = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a as usize] = b;
    }
    gamma
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller label as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn min_of(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(
            n,
            pairs
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e),
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_is_a_relabeling() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let c = canonical_form(&g);
        assert_eq!(g.permuted(&c.labeling), c.graph);
        for gamma in &c.automorphisms {
            assert_eq!(g.permuted(gamma), g);
        }
    }

    #[test]
    fn classes_of_labeled_graphs_on_five_vertices() {
        // 2^10 labeled graphs collapse to 34 classes
        let n = 5;
        let mut forms = std::collections::HashSet::new();
        for mask in 0..1u64 << 10 {
            forms.insert(canonical_form(&graph_from_mask(n, mask)).graph);
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn invariant_under_every_relabeling_of_small_graphs() {
        let n = 5;
        let perms = all_permutations(n);
        for mask in (0..1u64 << 10).step_by(7) {
            let g = graph_from_mask(n, mask);
            let form = canonical_form(&g).graph;
            for p in &perms {
                assert_eq!(
                    canonical_form(&g.permuted(p)).graph,
                    form,
                    "{g:?} under {p:?}"
                );
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_stay_cheap() {
        for n in [10, 12, 20, 40, 64] {
            let empty = Graph::new(n).unwrap();
            let c = canonical_form(&empty);
            assert_eq!(c.graph, empty);
            assert!(
                c.nodes < 10 * (n as u64) * (n as u64),
                "n = {n}: {} nodes",
                c.nodes
            );
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k).graph, k);
        }
        let c = canonical_form(&Graph::cycle(12).unwrap());
        let reps = c.orbit_representatives();
        assert!(reps.iter().all(|&r| r == 0), "C_12 is vertex-transitive");
    }

    #[test]
    fn petersen_is_recognized_under_relabeling() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let p = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        let perm: Vec<usize> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        assert!(is_isomorphic(&p, &p.permuted(&perm)));
        let c = canonical_form(&p);
        assert!(c.same_edge_orbit((0, 1), (5, 7)));
    }

    #[test]
    fn distinguishes_non_isomorphic_regular_graphs() {
        // two triangles vs. a hexagon: both 2-regular on 6 vertices
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&two_triangles, &Graph::cycle(6).unwrap()));
    }

    fn arb_graph_and_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1usize..=12).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
                .prop_map(move |(bits, perm)| {
                    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                    let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
                    (Graph::from_edges(n, edges).unwrap(), perm)
                })
        })
    }

    proptest! {
        #[test]
        fn relabeling_does_not_change_the_form((g, perm) in arb_graph_and_perm()) {
            let a = canonical_form(&g);
            let b = canonical_form(&g.permuted(&perm));
            prop_assert_eq!(&a.graph, &b.graph);
            prop_assert_eq!(g.permuted(&a.labeling), a.graph.clone());
            for gamma in &b.automorphisms {
                prop_assert_eq!(g.permuted(&perm).permuted(gamma), g.permuted(&perm));
            }
        }
    }
}
