//! Vertex partitions, equitability, quotient and characteristic matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

use crate::graph::{Graph, VertexSet};
use crate::spectral::{RationalMatrix, SymMatrix};
use crate::{Error, Result};

/// An ordered partition of `0..n` into nonempty disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<VertexSet>) -> Result<Partition> {
        let mut seen = VertexSet::EMPTY;
        for b in &blocks {
            if b.is_empty() || !b.intersect(seen).is_empty() {
                return Err(Error::InvalidPartition(n));
            }
            seen = seen.union(*b);
        }
        if seen != VertexSet::full(n) {
            return Err(Error::InvalidPartition(n));
        }
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            n,
            blocks: (0..n).map(VertexSet::singleton).collect(),
        }
    }

    pub fn one_block(n: usize) -> Partition {
        Partition {
            n,
            blocks: vec![VertexSet::full(n)],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(v))
            .expect("partition covers all vertices")
    }

    /// Blocks as sorted vertex lists, the JSON form.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lists = self.to_lists();
        let mut seq = serializer.serialize_seq(Some(lists.len()))?;
        for l in &lists {
            seq.serialize_element(l)?;
        }
        seq.end()
    }
}

/// Quotient of a matrix by a partition: entry `(i, j)` is the average row
/// sum of the block `(i, j)` submatrix. Not symmetric in general.
#[derive(Clone, Debug)]
pub struct QuotientMatrix {
    order: usize,
    entries: Vec<f64>,
    block_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Eigenvalues in descending order.
    ///
    /// Valid when the quotient comes from an equitable partition of a
    /// symmetric matrix: conjugation by `diag(sqrt |X_i|)` is then
    /// symmetric and Jacobi applies.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.symmetrized()?.eigenvalues()?)
    }

    /// Eigenpairs `(lambda, alpha)` with `Q alpha = lambda alpha`,
    /// descending. Same equitability caveat as [`Self::eigenvalues`].
    pub fn eigenpairs(&self) -> Result<Vec<(f64, Vec<f64>)>> {
        let (vals, vecs) = self.symmetrized()?.eigenpairs()?;
        Ok(vals
            .into_iter()
            .zip(vecs)
            .map(|(lambda, beta)| {
                let alpha: Vec<f64> = beta
                    .iter()
                    .zip(&self.block_sizes)
                    .map(|(b, &s)| b / (s as f64).sqrt())
                    .collect();
                (lambda, alpha)
            })
            .collect())
    }

    fn symmetrized(&self) -> Result<SymMatrix> {
        let t = self.order;
        let s: Vec<f64> = self.block_sizes.iter().map(|&s| s as f64).collect();
        SymMatrix::from_fn(t, |i, j| {
            let bij = self.get(i, j) * (s[i] / s[j]).sqrt();
            let bji = self.get(j, i) * (s[j] / s[i]).sqrt();
            0.5 * (bij + bji)
        })
    }
}

/// 0/1 block indicator matrix `S`; column `i` marks block `i`.
#[derive(Clone, Debug)]
pub struct CharacteristicMatrix {
    n: usize,
    block_of: Vec<usize>,
    t: usize,
}

impl CharacteristicMatrix {
    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.t
    }

    pub fn get(&self, v: usize, i: usize) -> f64 {
        if self.block_of[v] == i {
            1.0
        } else {
            0.0
        }
    }

    /// `S alpha`: lifts a block vector to a vertex vector.
    pub fn lift(&self, alpha: &[f64]) -> Vec<f64> {
        assert_eq!(alpha.len(), self.t);
        self.block_of.iter().map(|&b| alpha[b]).collect()
    }
}

/// Builds the characteristic matrix of `p` over ground set `0..n`.
pub fn characteristic_matrix(p: &Partition, n: usize) -> Result<CharacteristicMatrix> {
    if p.ground_size() != n {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} vs requested {n}",
            p.ground_size()
        )));
    }
    Ok(CharacteristicMatrix {
        n,
        block_of: (0..n).map(|v| p.block_of(v)).collect(),
        t: p.len(),
    })
}

/// True iff every block-to-block submatrix of `m` has constant row sums,
/// within `tol`.
pub fn is_equitable(m: &SymMatrix, p: &Partition, tol: f64) -> Result<bool> {
    if p.ground_size() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} vs matrix order {}",
            p.ground_size(),
            m.order()
        )));
    }
    for bi in p.blocks() {
        for bj in p.blocks() {
            let mut first: Option<f64> = None;
            for u in bi.iter() {
                let sum: f64 = bj.iter().map(|v| m.get(u, v)).sum();
                match first {
                    None => first = Some(sum),
                    Some(f) => {
                        if (sum - f).abs() > tol {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Exact equitability for a rational matrix.
pub fn is_equitable_exact(m: &RationalMatrix, p: &Partition) -> Result<bool> {
    if p.ground_size() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} vs matrix order {}",
            p.ground_size(),
            m.order()
        )));
    }
    for bi in p.blocks() {
        for bj in p.blocks() {
            let mut first: Option<BigRational> = None;
            for u in bi.iter() {
                let sum: BigRational = bj.iter().map(|v| m.get(u, v).clone()).sum();
                match &first {
                    None => first = Some(sum),
                    Some(f) => {
                        if &sum != f {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Quotient matrix of `m` with respect to `p` (average block row sums).
pub fn quotient_matrix(m: &SymMatrix, p: &Partition) -> Result<QuotientMatrix> {
    if p.ground_size() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} vs matrix order {}",
            p.ground_size(),
            m.order()
        )));
    }
    let t = p.len();
    let mut entries = vec![0.0; t * t];
    for (i, bi) in p.blocks().iter().enumerate() {
        for (j, bj) in p.blocks().iter().enumerate() {
            let total: f64 = bi
                .iter()
                .map(|u| bj.iter().map(|v| m.get(u, v)).sum::<f64>())
                .sum();
            entries[i * t + j] = total / bi.len() as f64;
        }
    }
    Ok(QuotientMatrix {
        order: t,
        entries,
        block_sizes: p.block_sizes(),
    })
}

/// Exact rational quotient of the random-walk Laplacian, defined when the
/// partition is equitable for it (block-constant degrees and block-constant
/// neighbor counts). Similar to the quotient of the normalized Laplacian,
/// hence sharing its eigenvalues exactly.
pub fn quotient_random_walk(g: &Graph, p: &Partition) -> Result<RationalMatrix> {
    if p.ground_size() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} vs graph order {}",
            p.ground_size(),
            g.order()
        )));
    }
    let t = p.len();
    let mut entries = vec![BigRational::zero(); t * t];
    for (i, bi) in p.blocks().iter().enumerate() {
        let rep = bi.min_vertex().unwrap();
        let d = g.degree(rep);
        for (j, bj) in p.blocks().iter().enumerate() {
            let count = g.neighbors(rep).intersect(*bj).len();
            for u in bi.iter() {
                if g.degree(u) != d || g.neighbors(u).intersect(*bj).len() != count {
                    return Err(Error::InequitablePartition);
                }
            }
            let mut q = -BigRational::new(BigInt::from(count), BigInt::from(d));
            if i == j {
                q += BigRational::one();
            }
            entries[i * t + j] = q;
        }
    }
    Ok(RationalMatrix::from_fn(t, |i, j| entries[i * t + j].clone()))
}

/// The coarsest partition refining `seed` that is equitable for the
/// normalized Laplacian of `g`.
///
/// Block row sums of `L` are sums of `1/sqrt(d_u d_v)`, so vertices are
/// split by an exact signature: each term contributes `1/s` to the bucket
/// of the square-free part `k` of `d_u d_v = s^2 k`. Signatures are equal
/// exactly when the real row sums are (square roots of distinct
/// square-free integers are linearly independent over the rationals).
pub fn coarsest_equitable_refinement(g: &Graph, seed: &Partition) -> Result<Partition> {
    if seed.ground_size() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "seed over {} vs graph order {}",
            seed.ground_size(),
            g.order()
        )));
    }
    let mut blocks = seed.blocks().to_vec();
    loop {
        let mut changed = false;
        'scan: for idx in 0..blocks.len() {
            if blocks[idx].len() <= 1 {
                continue;
            }
            let mut keyed: Vec<(Vec<RadicalSum>, usize)> = blocks[idx]
                .iter()
                .map(|u| {
                    let sig: Vec<RadicalSum> = blocks
                        .iter()
                        .map(|bj| radical_row_sum(g, u, *bj))
                        .collect();
                    (sig, u)
                })
                .collect();
            keyed.sort();
            if keyed.first().map(|(k, _)| k) == keyed.last().map(|(k, _)| k) {
                continue;
            }
            let mut replacement = Vec::new();
            let mut current = VertexSet::EMPTY;
            let mut current_key = &keyed[0].0;
            for (key, v) in &keyed {
                if key != current_key {
                    replacement.push(current);
                    current = VertexSet::EMPTY;
                    current_key = key;
                }
                current.insert(*v);
            }
            replacement.push(current);
            blocks.splice(idx..=idx, replacement);
            changed = true;
            break 'scan;
        }
        if !changed {
            break;
        }
    }
    Partition::new(g.order(), blocks)
}

/// Exact value of `sum 1/sqrt(m_i)` as rational coefficients per
/// square-free radicand.
type RadicalSum = BTreeMap<u64, BigRational>;

fn radical_row_sum(g: &Graph, u: usize, block: VertexSet) -> RadicalSum {
    let mut sum = RadicalSum::new();
    let du = g.degree(u) as u64;
    for v in g.neighbors(u).intersect(block).iter() {
        let m = du * g.degree(v) as u64;
        let (s, k) = squarefree_split(m);
        *sum.entry(k).or_insert_with(BigRational::zero) +=
            BigRational::new(BigInt::one(), BigInt::from(s));
    }
    sum
}

/// Writes `m = s^2 * k` with `k` square-free.
fn squarefree_split(mut m: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut k = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        let mut count = 0;
        while m % d == 0 {
            m /= d;
            count += 1;
        }
        s *= d.pow(count / 2);
        if count % 2 == 1 {
            k *= d;
        }
        d += 1;
    }
    (s, k * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::normalized_laplacian;

    #[test]
    fn partition_validation() {
        let ok = Partition::new(4, vec![[0, 3].into_iter().collect(), [1, 2].into_iter().collect()]);
        assert!(ok.is_ok());
        // Overlap.
        assert!(Partition::new(
            3,
            vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()]
        )
        .is_err());
        // Not covering.
        assert!(Partition::new(3, vec![[0, 1].into_iter().collect()]).is_err());
        // Empty block.
        assert!(Partition::new(1, vec![VertexSet::EMPTY, VertexSet::singleton(0)]).is_err());
    }

    #[test]
    fn squarefree_split_cases() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(4), (2, 1));
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(49), (7, 1));
        assert_eq!(squarefree_split(2), (1, 2));
    }

    #[test]
    fn equitability_of_singletons_and_known_partitions() {
        let g1 = crate::families::build_g1(2).unwrap();
        let l = normalized_laplacian(&g1).unwrap();
        let p = crate::families::g1_partition(2);
        assert!(is_equitable(&l, &p, 1e-10).unwrap());
        assert!(is_equitable(&l, &Partition::singletons(7), 1e-10).unwrap());

        let p4 = Graph::path(4).unwrap();
        let l = normalized_laplacian(&p4).unwrap();
        let sym = Partition::new(
            4,
            vec![[0, 3].into_iter().collect(), [1, 2].into_iter().collect()],
        )
        .unwrap();
        assert!(is_equitable(&l, &sym, 1e-10).unwrap());
        let bad = Partition::new(
            4,
            vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect()],
        )
        .unwrap();
        assert!(!is_equitable(&l, &bad, 1e-10).unwrap());
    }

    #[test]
    fn exact_equitability_matches_float() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(2..=8);
            let g = crate::testutil::random_connected_graph(&mut rng, n, 0.5);
            let p = coarsest_equitable_refinement(&g, &Partition::one_block(n)).unwrap();
            let rw = crate::spectral::random_walk_laplacian(&g).unwrap();
            assert!(is_equitable_exact(&rw, &p).unwrap());
        }
    }

    #[test]
    fn quotient_of_identity_is_identity() {
        let id = SymMatrix::identity(5);
        let p = Partition::new(
            5,
            vec![[0, 1].into_iter().collect(), [2, 3, 4].into_iter().collect()],
        )
        .unwrap();
        let q = quotient_matrix(&id, &p).unwrap();
        assert_eq!(q.order(), 2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(q.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn characteristic_matrix_shapes() {
        let p = Partition::singletons(4);
        let s = characteristic_matrix(&p, 4).unwrap();
        for v in 0..4 {
            for i in 0..4 {
                assert_eq!(s.get(v, i), if v == i { 1.0 } else { 0.0 });
            }
        }
        let one = Partition::one_block(3);
        let s = characteristic_matrix(&one, 3).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(s.lift(&[2.5]), vec![2.5, 2.5, 2.5]);
        assert!(characteristic_matrix(&one, 4).is_err());
    }

    #[test]
    fn refinement_examples() {
        // G1(2): the six clique vertices are interchangeable, z is not.
        let g1 = crate::families::build_g1(2).unwrap();
        let p = coarsest_equitable_refinement(&g1, &Partition::one_block(7)).unwrap();
        let mut sizes = p.block_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 6]);

        // K_n stays in one block.
        let k5 = Graph::complete(5).unwrap();
        let p = coarsest_equitable_refinement(&k5, &Partition::one_block(5)).unwrap();
        assert_eq!(p.len(), 1);

        // P_4 splits ends from middles.
        let p4 = Graph::path(4).unwrap();
        let p = coarsest_equitable_refinement(&p4, &Partition::one_block(4)).unwrap();
        let mut lists = p.to_lists();
        lists.sort();
        assert_eq!(lists, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn refinement_is_idempotent_and_equitable() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xabc);
        for _ in 0..150 {
            let n = rng.gen_range(2..=9);
            let g = crate::testutil::random_connected_graph(&mut rng, n, 0.4);
            let p = coarsest_equitable_refinement(&g, &Partition::one_block(n)).unwrap();
            let l = normalized_laplacian(&g).unwrap();
            assert!(is_equitable(&l, &p, 1e-10).unwrap());
            let again = coarsest_equitable_refinement(&g, &p).unwrap();
            assert_eq!(again.len(), p.len());
        }
    }

    #[test]
    fn partition_serializes_to_lists() {
        let p = crate::families::g1_partition(2);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!([[0, 1], [2, 3], [4, 5], [6]])
        );
    }

    use crate::graph::Graph;
}
