//! Isomorph-free exhaustive generation of small connected graphs.
//!
//! Level-by-level: every connected graph on `k + 1` vertices arises from a
//! connected graph on `k` vertices by attaching a new vertex to a nonempty
//! neighborhood (every connected graph has a non-cut vertex), so extending
//! each representative by every nonempty subset and keeping one graph per
//! canonical key enumerates every isomorphism class exactly once.

use std::collections::HashSet;

use crate::graph::{CanonicalLabel, Graph, VertexSet};
use crate::{Error, Result};

/// Largest order generated natively; larger corpora arrive via graph6.
pub const MAX_ENUMERATION_ORDER: usize = 9;

/// Connected graphs on `n` vertices, one representative per isomorphism
/// class, in canonical-key order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::OutOfRange(n, "native enumeration covers 1..=9"));
    }
    let mut level: Vec<(CanonicalLabel, Graph)> = vec![{
        let g = Graph::new(1, &[])?;
        (g.canonical_form()?, g)
    }];
    for k in 1..n {
        let mut seen: HashSet<CanonicalLabel> = HashSet::new();
        let mut next: Vec<(CanonicalLabel, Graph)> = Vec::new();
        for (_, g) in &level {
            for mask in 1..(1u64 << k) {
                let h = g.with_new_vertex(VertexSet::from_bits(mask))?;
                let key = h.canonical_form()?;
                if seen.insert(key.clone()) {
                    next.push((key, h));
                }
            }
        }
        next.sort_by(|(a, _), (b, _)| a.cmp(b));
        level = next;
    }
    Ok(level.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: filter all labeled graphs, dedup canonically.
    fn connected_classes_by_filtering(n: usize) -> HashSet<CanonicalLabel> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        let mut keys = HashSet::new();
        for code in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| code >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            if g.is_connected() {
                keys.insert(g.canonical_form().unwrap());
            }
        }
        keys
    }

    #[test]
    fn counts_match_known_sequence() {
        // Connected graphs on 1..=7 vertices.
        let expected = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_connected(i + 1).unwrap().len(), count, "n={}", i + 1);
        }
    }

    #[test]
    fn matches_filtering_oracle_up_to_five() {
        for n in 1..=5 {
            let enumerated: HashSet<CanonicalLabel> = enumerate_connected(n)
                .unwrap()
                .iter()
                .map(|g| g.canonical_form().unwrap())
                .collect();
            let expected = connected_classes_by_filtering(n);
            assert_eq!(enumerated, expected, "n={n}");
        }
    }

    #[test]
    fn all_outputs_are_connected_and_ordered() {
        let graphs = enumerate_connected(6).unwrap();
        assert!(graphs.iter().all(Graph::is_connected));
        let keys: Vec<CanonicalLabel> =
            graphs.iter().map(|g| g.canonical_form().unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys.len(), sorted.len());
        assert_eq!(keys, sorted);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(enumerate_connected(0).is_err());
        assert!(enumerate_connected(10).is_err());
    }
}
