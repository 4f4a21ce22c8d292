//! Exact independence number.
//!
//! Computed as the maximum clique of the complement with a greedy-coloring
//! branch-and-bound (Tomita-style). Membership queries for small `k` scan
//! subsets directly instead of running the full search.

use super::{Graph, VertexSet};

pub fn independence_number(g: &Graph) -> usize {
    max_clique(&g.complement(), None)
}

pub fn has_independent_set_of_size(g: &Graph, k: usize) -> bool {
    let n = g.order();
    match k {
        0 => true,
        1 => n >= 1,
        2 => g.complement().edge_count() > 0,
        3 => !g.independent_triples().is_empty(),
        4 => {
            // Direct scan of 4-subsets: extend each independent triple.
            g.independent_triples().iter().any(|&(u, v, w)| {
                let blocked =
                    g.neighbors(u).union(g.neighbors(v)).union(g.neighbors(w));
                (w + 1..n).any(|z| !blocked.contains(z))
            })
        }
        _ => max_clique(&g.complement(), Some(k)) >= k,
    }
}

/// Maximum clique size; stops early once `target` is reached when given.
fn max_clique(g: &Graph, target: Option<usize>) -> usize {
    let mut best = 0;
    let mut search = CliqueSearch {
        g,
        best: &mut best,
        target,
    };
    search.expand(0, VertexSet::full(g.order()));
    best
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: &'a mut usize,
    target: Option<usize>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, size: usize, candidates: VertexSet) {
        if candidates.is_empty() {
            if size > *self.best {
                *self.best = size;
            }
            return;
        }
        if let Some(t) = self.target {
            if *self.best >= t {
                return;
            }
        }
        // Greedy coloring of the candidates: the color index bounds the
        // largest clique extending through each vertex.
        let mut colored: Vec<(usize, usize)> = Vec::with_capacity(candidates.len());
        let mut remaining = candidates;
        let mut color = 0;
        while !remaining.is_empty() {
            color += 1;
            let mut colorable = remaining;
            while let Some(v) = colorable.min_vertex() {
                colored.push((v, color));
                colorable = colorable.minus(self.g.neighbors(v));
                colorable.remove(v);
                remaining.remove(v);
            }
        }
        let mut live = candidates;
        for &(v, bound) in colored.iter().rev() {
            if size + bound <= *self.best {
                return;
            }
            self.expand(size + 1, live.intersect(self.g.neighbors(v)));
            live.remove(v);
            if let Some(t) = self.target {
                if *self.best >= t {
                    return;
                }
            }
        }
    }
}
