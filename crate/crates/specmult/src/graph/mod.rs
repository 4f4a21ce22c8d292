//! Simple undirected graphs on up to 64 vertices.
//!
//! Adjacency is stored as one `u64` neighbor bitset per vertex, which keeps
//! neighborhood comparisons (twin detection, independence pruning) at a
//! single word operation. Graphs are immutable after construction and all
//! queries are pure, so values can be shared freely between workers.

mod canon;
mod graph6;
mod independence;

pub use canon::{are_isomorphic, canonical_form, CanonicalLabel, MAX_CANON_VERTICES};
pub use graph6::{parse_graph6, to_graph6};

use crate::{Error, Result};

/// Hard cap of the built-in bitset representation.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids, backed by a single 64-bit word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest vertex id in the set, if any.
    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph with `1 <= n <= 64` vertices.
///
/// Invariants enforced at construction: adjacency is symmetric, irreflexive,
/// and every endpoint is in range.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n, MAX_VERTICES));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::EndpointOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::EndpointOutOfRange(v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= 1u64 << v;
            adj[v] |= 1u64 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Graph> {
        Graph::new(n, &[])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).bits();
        for u in 0..n {
            g.adj[u] = full & !(1u64 << u);
        }
        Ok(g)
    }

    /// Cycle `C_n` (`n >= 3`).
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// Path `P_n` on vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Open neighborhood `N(u)` as a bitset.
    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                if v > u {
                    es.push((u, v));
                }
            }
        }
        es
    }

    /// Edge-complement within the same vertex set.
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|u| full & !self.adj[u] & !(1u64 << u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// True iff a traversal from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier).iter() {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == VertexSet::full(self.n).bits()
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut remaining = VertexSet::full(self.n).bits();
        let mut comps = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let mut seen = 1u64 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u64;
                for v in VertexSet(frontier).iter() {
                    next |= self.adj[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            comps.push(VertexSet(seen));
            remaining &= !seen;
        }
        comps
    }

    /// Exact independence number via branch-and-bound max clique on the
    /// complement.
    pub fn independence_number(&self) -> usize {
        independence::independence_number(self)
    }

    /// True iff some `k` vertices are pairwise nonadjacent.
    pub fn has_independent_set_of_size(&self, k: usize) -> bool {
        independence::has_independent_set_of_size(self, k)
    }

    /// All independent vertex triples, each as a sorted `(u, v, w)`.
    pub fn independent_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    continue;
                }
                let blocked = self.adj[u] | self.adj[v];
                for w in v + 1..self.n {
                    if blocked >> w & 1 == 0 {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        self.complement().independence_number()
    }

    /// Isomorphism-invariant key; equal keys iff isomorphic (`n <= 16`).
    pub fn canonical_form(&self) -> Result<CanonicalLabel> {
        canon::canonical_form(self)
    }

    /// Relabels vertices: vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                adj[perm[u]] |= 1u64 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Extends by one vertex adjacent to exactly the vertices of `mask`.
    pub fn with_new_vertex(&self, mask: VertexSet) -> Result<Graph> {
        if self.n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1, MAX_VERTICES));
        }
        debug_assert!(mask.is_subset_of(VertexSet::full(self.n)));
        let v = self.n;
        let mut adj = self.adj.clone();
        adj.push(mask.bits());
        for u in mask.iter() {
            adj[u] |= 1u64 << v;
        }
        Ok(Graph { n: self.n + 1, adj })
    }

    /// Vertices adjacent to every vertex of `set`.
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        let mut acc = VertexSet::full(self.n).bits();
        for v in set.iter() {
            acc &= self.adj[v];
        }
        VertexSet(acc)
    }

    /// True iff `set` induces a clique.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|u| set.minus(VertexSet::singleton(u)).is_subset_of(self.neighbors(u)))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
