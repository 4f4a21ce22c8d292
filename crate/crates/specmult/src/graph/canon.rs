//! Canonical labeling by equitable refinement plus individualization
//! backtracking.
//!
//! The canonical key of a graph is the minimum upper-triangular adjacency
//! code over all labelings reachable in the refinement tree, so equal keys
//! reconstruct equal adjacency matrices and distinct graphs can never
//! collide. Discovered automorphisms prune branches that revisit an orbit,
//! which keeps highly symmetric graphs (cliques, cycles) tractable without
//! a full automorphism-group engine.

use super::{Graph, VertexSet};
use crate::{Error, Result};

/// Upper bound for the backtracking canonizer.
pub const MAX_CANON_VERTICES: usize = 16;

/// Total-order key with `key(G) = key(H)` iff `G` and `H` are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalLabel({:02x?})", self.0)
    }
}

/// Computes the canonical key of `g` (`n <= 16`).
pub fn canonical_form(g: &Graph) -> Result<CanonicalLabel> {
    let (code, _) = canonical_code(g)?;
    let n = g.order();
    let nbits = n * (n - 1) / 2;
    let mut bytes = Vec::with_capacity(1 + nbits.div_ceil(8));
    bytes.push(n as u8);
    for chunk in 0..nbits.div_ceil(8) {
        let shift = nbits.saturating_sub(8 * (chunk + 1));
        let width = (nbits - 8 * chunk).min(8);
        bytes.push(((code >> shift) as u8) << (8 - width) >> (8 - width));
    }
    Ok(CanonicalLabel(bytes))
}

/// True iff `g` and `h` are isomorphic (both `n <= 16`).
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.degree_sequence() != h.degree_sequence() {
        // Cheap rejection; still validate the size contract.
        if g.order() > MAX_CANON_VERTICES {
            return Err(Error::CanonicalSizeExceeded(g.order(), MAX_CANON_VERTICES));
        }
        if h.order() > MAX_CANON_VERTICES {
            return Err(Error::CanonicalSizeExceeded(h.order(), MAX_CANON_VERTICES));
        }
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// Canonical adjacency code and one labeling that attains it.
///
/// The code packs the bits `(perm[i], perm[j])` for `j = 1..n`, `i < j`
/// (column order, matching graph6) into a `u128`, most significant first.
pub(crate) fn canonical_code(g: &Graph) -> Result<(u128, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANON_VERTICES {
        return Err(Error::CanonicalSizeExceeded(n, MAX_CANON_VERTICES));
    }
    if n == 1 {
        return Ok((0, vec![0]));
    }
    let mut search = Search {
        g,
        n,
        best: None,
        generators: Vec::new(),
    };
    let mut cells = vec![VertexSet::full(n)];
    refine(g, &mut cells);
    search.descend(&cells, Vec::new());
    let (code, positions) = search.best.expect("refinement tree has at least one leaf");
    Ok((code, positions))
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// Best (minimum) full code and the labeling `perm[pos] = vertex`.
    best: Option<(u128, Vec<usize>)>,
    /// Automorphisms discovered from code-equal leaves, as `vertex -> vertex`.
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: &[VertexSet], base: Vec<usize>) {
        // Positions are fixed for the maximal singleton prefix; prune on the
        // partial code as soon as it exceeds the best known prefix.
        let mut fixed = Vec::new();
        for cell in cells {
            if cell.len() == 1 {
                fixed.push(cell.min_vertex().unwrap());
            } else {
                break;
            }
        }
        let code = self.partial_code(&fixed);
        if let Some((best, _)) = &self.best {
            let total_bits = self.n * (self.n - 1) / 2;
            let bits = fixed.len() * (fixed.len() - 1) / 2;
            if code > best >> (total_bits - bits) {
                return;
            }
        }

        if fixed.len() == self.n {
            self.record_leaf(fixed);
            return;
        }

        let target = fixed.len();
        let candidates: Vec<usize> = cells[target].iter().collect();
        let mut processed: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.in_processed_orbit(v, &processed, &base) {
                continue;
            }
            processed.push(v);
            let mut child: Vec<VertexSet> = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(VertexSet::singleton(v));
            child.push(cells[target].minus(VertexSet::singleton(v)));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);
            let mut child_base = base.clone();
            child_base.push(v);
            self.descend(&child, child_base);
        }
    }

    /// Adjacency code of the currently fixed positions, column order.
    fn partial_code(&self, fixed: &[usize]) -> u128 {
        let mut code: u128 = 0;
        for (j, &vj) in fixed.iter().enumerate() {
            for &vi in &fixed[..j] {
                code = code << 1 | u128::from(self.g.has_edge(vi, vj));
            }
        }
        code
    }

    fn record_leaf(&mut self, perm: Vec<usize>) {
        let code = self.partial_code(&perm);
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best, best_perm)) => {
                if code < *best {
                    self.best = Some((code, perm));
                } else if code == *best {
                    // Two labelings with identical codes compose to an
                    // automorphism of g.
                    let mut sigma = vec![0usize; self.n];
                    for i in 0..self.n {
                        sigma[best_perm[i]] = perm[i];
                    }
                    if sigma.iter().enumerate().any(|(v, &w)| v != w)
                        && !self.generators.contains(&sigma)
                    {
                        self.generators.push(sigma);
                    }
                }
            }
        }
    }

    /// True when a known automorphism fixing `base` pointwise maps an
    /// already-processed candidate to `v`; the corresponding subtree would
    /// repeat work already done.
    fn in_processed_orbit(&self, v: usize, processed: &[usize], base: &[usize]) -> bool {
        if processed.is_empty() || self.generators.is_empty() {
            return false;
        }
        let stabilizing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|sigma| base.iter().all(|&b| sigma[b] == b))
            .collect();
        if stabilizing.is_empty() {
            return false;
        }
        // Closure of the processed set under the stabilizing generators.
        let mut orbit = 0u64;
        for &u in processed {
            orbit |= 1 << u;
        }
        loop {
            let mut next = orbit;
            for sigma in &stabilizing {
                for u in VertexSet::from_bits(orbit).iter() {
                    next |= 1 << sigma[u];
                }
            }
            if next == orbit {
                break;
            }
            orbit = next;
        }
        orbit >> v & 1 == 1
    }
}

/// Equitable refinement: repeatedly split cells by the count vector of
/// neighbors in every cell, until stable. Subcells are ordered by their
/// count vectors, which keeps the cell order isomorphism-invariant.
fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    loop {
        let mut changed = false;
        'outer: for idx in 0..cells.len() {
            if cells[idx].len() <= 1 {
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cells[idx]
                .iter()
                .map(|v| {
                    let key: Vec<u8> = cells
                        .iter()
                        .map(|c| g.neighbors(v).intersect(*c).len() as u8)
                        .collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            if keyed.first().map(|(k, _)| k) == keyed.last().map(|(k, _)| k) {
                continue;
            }
            let mut replacement: Vec<VertexSet> = Vec::new();
            let mut current = VertexSet::EMPTY;
            let mut current_key: &Vec<u8> = &keyed[0].0;
            for (key, v) in &keyed {
                if key != current_key {
                    replacement.push(current);
                    current = VertexSet::EMPTY;
                    current_key = key;
                }
                current.insert(*v);
            }
            replacement.push(current);
            cells.splice(idx..=idx, replacement);
            changed = true;
            break 'outer;
        }
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn relabelings_of_p4_share_a_key() {
        let a = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
    }

    #[test]
    fn p4_and_claw_differ() {
        let p4 = Graph::path(4).unwrap();
        let claw = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(p4.edge_count(), claw.edge_count());
        assert_ne!(p4.canonical_form().unwrap(), claw.canonical_form().unwrap());
    }

    #[test]
    fn permutation_invariance_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xca40);
        for _ in 0..400 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.9);
            let g = crate::testutil::random_graph(&mut rng, n, p);
            let key = g.canonical_form().unwrap();
            for _ in 0..4 {
                let h = g.relabel(&random_perm(&mut rng, n));
                assert_eq!(h.canonical_form().unwrap(), key);
            }
        }
    }

    #[test]
    fn g1_permutation_invariance() {
        let g1 = crate::families::build_g1(2).unwrap();
        let key = g1.canonical_form().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let h = g1.relabel(&random_perm(&mut rng, g1.order()));
            assert_eq!(h.canonical_form().unwrap(), key);
        }
    }

    #[test]
    fn symmetric_graphs_canonize_quickly() {
        for n in [8usize, 12, 16] {
            let k = Graph::complete(n).unwrap();
            let c = Graph::cycle(n).unwrap();
            assert_eq!(k.canonical_form().unwrap(), k.canonical_form().unwrap());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
            let perm = random_perm(&mut rng, n);
            assert_eq!(
                c.relabel(&perm).canonical_form().unwrap(),
                c.canonical_form().unwrap()
            );
        }
    }

    #[test]
    fn isomorphism_queries() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5, &c5.complement()).unwrap());
        let k23 = crate::families::build_complete_multipartite(&[2, 3]).unwrap();
        let k14 = crate::families::build_complete_multipartite(&[1, 4]).unwrap();
        assert!(!are_isomorphic(&k23, &k14).unwrap());
        assert!(are_isomorphic(&k23, &k23).unwrap());
    }

    #[test]
    fn size_limit_enforced() {
        let g = Graph::complete(17).unwrap();
        assert!(matches!(
            g.canonical_form(),
            Err(Error::CanonicalSizeExceeded(17, 16))
        ));
    }

    #[test]
    fn key_distinguishes_all_small_classes() {
        // All labeled graphs on 4 vertices fall into exactly 11 classes.
        let mut keys = std::collections::HashSet::new();
        for code in 0u32..1 << 6 {
            let mut edges = Vec::new();
            let mut bit = 0;
            for j in 1..4 {
                for i in 0..j {
                    if code >> bit & 1 == 1 {
                        edges.push((i, j));
                    }
                    bit += 1;
                }
            }
            keys.insert(Graph::new(4, &edges).unwrap().canonical_form().unwrap());
        }
        assert_eq!(keys.len(), 11);
    }
}
