//! Combinatorial verifiers for the spectral lemmas: twin classes,
//! shared-neighborhood cliques, quotient-eigenvector lifting, and the
//! common-vertex assertions for independent triples.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashMap;

use super::partition::{
    characteristic_matrix, is_equitable, quotient_matrix, quotient_random_walk, Partition,
};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{
    eigenvector_residual, laplacian_char_poly, normalized_laplacian, CharPoly, EigenPair, RatPoly,
};
use crate::{Error, Result};

/// Residual bound for the displayed clique-lemma eigenvectors.
pub const CLIQUE_RESIDUAL_TOL: f64 = 1e-10;
/// Residual bound for lifted quotient eigenvectors.
pub const LIFT_RESIDUAL_TOL: f64 = 1e-9;

/// Maximal classes of vertices with identical open neighborhoods
/// (`N(u) = N(v)`); untwinned vertices appear as singletons. Blocks are
/// ordered by smallest member.
pub fn twin_classes(g: &Graph) -> Partition {
    let mut groups: HashMap<u64, VertexSet> = HashMap::new();
    for u in g.vertices() {
        groups
            .entry(g.neighbors(u).bits())
            .or_insert(VertexSet::EMPTY)
            .insert(u);
    }
    let mut blocks: Vec<VertexSet> = groups.into_values().collect();
    blocks.sort_by_key(|b| b.min_vertex());
    Partition::new(g.order(), blocks).expect("neighborhood classes partition the vertices")
}

/// Twin-points bound: eigenvalue 1 must have exact multiplicity at least
/// `sum (|class| - 1)` over the twin classes.
pub fn verify_twin_lemma(g: &Graph) -> Result<bool> {
    let cp = laplacian_char_poly(g)?;
    Ok(verify_twin_lemma_with(g, &cp))
}

/// As [`verify_twin_lemma`] but reusing a precomputed polynomial.
pub fn verify_twin_lemma_with(g: &Graph, cp: &CharPoly) -> bool {
    let bound: usize = twin_classes(g)
        .blocks()
        .iter()
        .map(|b| b.len() - 1)
        .sum();
    bound == 0 || cp.multiplicity_of(&BigRational::from_integer(BigInt::one())) >= bound
}

/// Maximal cliques whose members share the same external neighborhood,
/// i.e. classes of equal closed neighborhoods (`N[u] = N[v]`). Singleton
/// classes are included; members of one class share one degree.
pub fn shared_neighborhood_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut groups: HashMap<u64, VertexSet> = HashMap::new();
    for u in g.vertices() {
        groups
            .entry(g.neighbors(u).bits() | 1 << u)
            .or_insert(VertexSet::EMPTY)
            .insert(u);
    }
    let mut cliques: Vec<VertexSet> = groups.into_values().collect();
    cliques.sort_by_key(|b| b.min_vertex());
    cliques
}

/// Clique lemma: for every shared-neighborhood clique of size `q >= 2` with
/// member degree `d`, the eigenvalue `1 + 1/d` has exact multiplicity at
/// least `q - 1` and the displayed difference vectors are eigenvectors up
/// to [`CLIQUE_RESIDUAL_TOL`].
pub fn verify_clique_lemma(g: &Graph) -> Result<bool> {
    let cp = laplacian_char_poly(g)?;
    verify_clique_lemma_with(g, &cp)
}

/// As [`verify_clique_lemma`] with a precomputed polynomial.
pub fn verify_clique_lemma_with(g: &Graph, cp: &CharPoly) -> Result<bool> {
    let l = normalized_laplacian(g)?;
    for clique in shared_neighborhood_cliques(g) {
        let q = clique.len();
        if q < 2 {
            continue;
        }
        let members = clique.to_vec();
        let d = g.degree(members[0]);
        debug_assert!(members.iter().all(|&v| g.degree(v) == d));
        let lambda = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(d));
        if cp.multiplicity_of(&lambda) < q - 1 {
            return Ok(false);
        }
        let lambda_f = 1.0 + 1.0 / d as f64;
        let norm = 1.0 / 2f64.sqrt();
        for &vi in &members[1..] {
            let mut vector = vec![0.0; g.order()];
            vector[members[0]] = norm;
            vector[vi] = -norm;
            let pair = EigenPair {
                value: lambda_f,
                vector,
            };
            if eigenvector_residual(&l, &pair)? > CLIQUE_RESIDUAL_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

use num_traits::One;

/// Quotient lifting: requires `p` equitable for `L(g)`. Every quotient
/// eigenvalue must appear among the Laplacian eigenvalues (exactly, via the
/// rational quotient, when one exists; within clustering distance in
/// floats) and every lifted eigenvector `S alpha` must be an eigenvector up
/// to [`LIFT_RESIDUAL_TOL`].
pub fn verify_quotient_lifting(g: &Graph, p: &Partition) -> Result<bool> {
    let l = normalized_laplacian(g)?;
    if !is_equitable(&l, p, 1e-10)? {
        return Err(Error::InequitablePartition);
    }
    let q = quotient_matrix(&l, p)?;
    let s = characteristic_matrix(p, g.order())?;
    let lap_eigs = l.eigenvalues()?;
    for (lambda, alpha) in q.eigenpairs()? {
        if !lap_eigs.iter().any(|mu| (mu - lambda).abs() <= 1e-8) {
            return Ok(false);
        }
        let mut vector = s.lift(&alpha);
        let norm: f64 = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut vector {
            *x /= norm;
        }
        let pair = EigenPair {
            value: lambda,
            vector,
        };
        if eigenvector_residual(&l, &pair)? > LIFT_RESIDUAL_TOL {
            return Ok(false);
        }
    }
    // Exact containment whenever the rational quotient exists: every
    // distinct root of the quotient polynomial must divide the Laplacian
    // polynomial.
    if let Ok(qrw) = quotient_random_walk(g, p) {
        let quotient_poly = qrw.char_poly();
        let mut radical = RatPoly::one();
        for (f, _) in quotient_poly.squarefree_decomposition() {
            radical = radical.mul(&f);
        }
        let lap_poly = laplacian_char_poly(g)?;
        if radical.gcd(lap_poly.poly()).degree() != radical.degree() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of one common-vertex assertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertionOutcome {
    Pass,
    Fail(String),
    /// The assertion's hypothesis has no witness in this graph/triple.
    NotApplicable,
}

/// Pass/fail report for the five common-vertex assertions evaluated on one
/// independent triple.
#[derive(Clone, Debug, Serialize)]
pub struct CommonVertexReport {
    pub triple: (usize, usize, usize),
    /// Outcomes of assertions (i) through (v), in order.
    pub assertions: Vec<AssertionOutcome>,
}

impl CommonVertexReport {
    pub fn all_pass(&self) -> bool {
        !self
            .assertions
            .iter()
            .any(|a| matches!(a, AssertionOutcome::Fail(_)))
    }
}

/// Evaluates the five common-vertex assertions on the independent triple
/// `{u, v, w}` of a connected graph, purely from degrees and adjacencies.
///
/// The caller is responsible for the spectral hypotheses (an eigenvalue of
/// multiplicity `n - 3`, second-least eigenvalue different from 1, and
/// independence number 3); violations of the combinatorial preconditions
/// (connectivity, independence) are reported as errors.
pub fn verify_commonvertex_properties(
    g: &Graph,
    u: usize,
    v: usize,
    w: usize,
) -> Result<CommonVertexReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.order();
    if u >= n || v >= n || w >= n || u == v || v == w || u == w {
        return Err(Error::TripleNotIndependent(format!("({u}, {v}, {w})")));
    }
    if g.has_edge(u, v) || g.has_edge(v, w) || g.has_edge(u, w) {
        return Err(Error::TripleNotIndependent(format!("({u}, {v}, {w})")));
    }
    let triple = [u, v, w];
    let triple_set: VertexSet = triple.iter().copied().collect();

    // (i) A vertex adjacent to exactly two of the triple is the unique
    // common neighbor of that pair.
    let mut outcome_i = AssertionOutcome::NotApplicable;
    for (a, b, c) in pair_choices(triple) {
        let pair_common = g.neighbors(a).intersect(g.neighbors(b));
        let witness = pair_common.iter().any(|x| !g.has_edge(x, c));
        if witness {
            if pair_common.len() != 1 {
                outcome_i = AssertionOutcome::Fail(format!(
                    "pair ({a}, {b}) has {} common neighbors",
                    pair_common.len()
                ));
                break;
            }
            if outcome_i == AssertionOutcome::NotApplicable {
                outcome_i = AssertionOutcome::Pass;
            }
        }
    }

    // (ii) A vertex adjacent to exactly one triple member, say a, satisfies
    // N(z) - a = N(a) - z.
    let mut outcome_ii = AssertionOutcome::NotApplicable;
    'outer: for z in g.vertices() {
        if triple_set.contains(z) {
            continue;
        }
        let adj: Vec<usize> = triple.iter().copied().filter(|&a| g.has_edge(z, a)).collect();
        if adj.len() != 1 {
            continue;
        }
        let a = adj[0];
        let nz = g.neighbors(z).minus(VertexSet::singleton(a));
        let na = g.neighbors(a).minus(VertexSet::singleton(z));
        if nz != na {
            outcome_ii = AssertionOutcome::Fail(format!(
                "vertex {z} adjacent only to {a} but N(z)-a != N(a)-z"
            ));
            break 'outer;
        }
        outcome_ii = AssertionOutcome::Pass;
    }

    // (iii) Every triple member shares a common neighbor with another one.
    let mut outcome_iii = AssertionOutcome::Pass;
    for (a, b, c) in pair_choices(triple) {
        // a plays each role once as pair_choices cycles; check member c
        // against a and b.
        let with_a = !g.neighbors(c).intersect(g.neighbors(a)).is_empty();
        let with_b = !g.neighbors(c).intersect(g.neighbors(b)).is_empty();
        if !with_a && !with_b {
            outcome_iii =
                AssertionOutcome::Fail(format!("{c} has no common neighbor with {a} or {b}"));
            break;
        }
    }

    // (iv) At most one vertex is adjacent to all three.
    let all_three = g.common_neighbors(triple_set);
    let outcome_iv = if all_three.len() <= 1 {
        AssertionOutcome::Pass
    } else {
        AssertionOutcome::Fail(format!(
            "{} vertices adjacent to the whole triple",
            all_three.len()
        ))
    };

    // (v) For x ~ {a, m}, y ~ {m, b} (x !~ b, y !~ a): x ~ y and
    // d_m^2 = d_a d_x - d_a d_m = d_y d_b - d_b d_m.
    let mut outcome_v = AssertionOutcome::NotApplicable;
    'five: for (a, b, m) in pair_choices(triple) {
        // m is the middle vertex adjacent to both witnesses.
        let xs = g
            .neighbors(a)
            .intersect(g.neighbors(m))
            .minus(g.neighbors(b));
        let ys = g
            .neighbors(m)
            .intersect(g.neighbors(b))
            .minus(g.neighbors(a));
        for x in xs.iter() {
            for y in ys.iter() {
                let (da, db, dm) = (g.degree(a) as i64, g.degree(b) as i64, g.degree(m) as i64);
                let (dx, dy) = (g.degree(x) as i64, g.degree(y) as i64);
                if !g.has_edge(x, y) {
                    outcome_v = AssertionOutcome::Fail(format!(
                        "witnesses {x} and {y} around middle {m} are nonadjacent"
                    ));
                    break 'five;
                }
                if dm * dm != da * dx - da * dm || dm * dm != dy * db - db * dm {
                    outcome_v = AssertionOutcome::Fail(format!(
                        "degree identity fails for middle {m}: d={dm}, ends {da}/{db}, witnesses {dx}/{dy}"
                    ));
                    break 'five;
                }
                outcome_v = AssertionOutcome::Pass;
            }
        }
    }

    Ok(CommonVertexReport {
        triple: (u, v, w),
        assertions: vec![outcome_i, outcome_ii, outcome_iii, outcome_iv, outcome_v],
    })
}

/// The three (pair, excluded) role assignments of a triple: returns
/// `(a, b, c)` where `{a, b}` is the pair and `c` the remaining vertex.
fn pair_choices(t: [usize; 3]) -> [(usize, usize, usize); 3] {
    [
        (t[0], t[1], t[2]),
        (t[0], t[2], t[1]),
        (t[1], t[2], t[0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_complete_multipartite, build_g1, build_g2, build_g3};

    #[test]
    fn twin_classes_examples() {
        let k23 = build_complete_multipartite(&[2, 3]).unwrap();
        let classes = twin_classes(&k23);
        let mut sizes = classes.block_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);

        let k5 = Graph::complete(5).unwrap();
        assert_eq!(twin_classes(&k5).len(), 5);

        let g1 = build_g1(2).unwrap();
        assert_eq!(twin_classes(&g1).len(), 7);

        // Blocks agree exactly with open-neighborhood equality.
        let p = twin_classes(&k23);
        for bi in p.blocks() {
            for u in bi.iter() {
                for v in bi.iter() {
                    assert_eq!(k23.neighbors(u), k23.neighbors(v));
                }
            }
        }
    }

    #[test]
    fn twin_lemma_on_multipartite() {
        let k23 = build_complete_multipartite(&[2, 3]).unwrap();
        assert!(verify_twin_lemma(&k23).unwrap());
        // K_{2,3}: bound 3 is attained exactly.
        let cp = laplacian_char_poly(&k23).unwrap();
        assert_eq!(cp.multiplicity_of(&BigRational::one()), 3);

        let kabc = build_complete_multipartite(&[1, 2, 2]).unwrap();
        let cp = laplacian_char_poly(&kabc).unwrap();
        assert_eq!(cp.multiplicity_of(&BigRational::one()), 2);
        assert!(verify_twin_lemma(&kabc).unwrap());

        // Twin-free graph: vacuous.
        assert!(verify_twin_lemma(&Graph::cycle(5).unwrap()).unwrap());
    }

    #[test]
    fn shared_cliques_examples() {
        let k6e = crate::families::build_kn_minus_e(6).unwrap();
        let cliques = shared_neighborhood_cliques(&k6e);
        let mut sizes: Vec<usize> = cliques.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4]);

        let p4 = Graph::path(4).unwrap();
        assert!(shared_neighborhood_cliques(&p4).iter().all(|c| c.len() == 1));

        let g1 = build_g1(3).unwrap();
        let cliques = shared_neighborhood_cliques(&g1);
        let mut sizes: Vec<usize> = cliques.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 3]);
    }

    #[test]
    fn clique_lemma_on_examples() {
        let k6e = crate::families::build_kn_minus_e(6).unwrap();
        assert!(verify_clique_lemma(&k6e).unwrap());
        let cp = laplacian_char_poly(&k6e).unwrap();
        let six_fifth = BigRational::new(BigInt::from(6), BigInt::from(5));
        assert_eq!(cp.multiplicity_of(&six_fifth), 3);

        // K_n: the whole graph is one shared clique.
        let k6 = Graph::complete(6).unwrap();
        assert!(verify_clique_lemma(&k6).unwrap());
        let cp = laplacian_char_poly(&k6).unwrap();
        assert_eq!(
            cp.multiplicity_of(&BigRational::new(BigInt::from(6), BigInt::from(5))),
            5
        );

        // G3(2): each K_2 block contributes, lifting fills up to 6.
        let g3 = build_g3(2).unwrap();
        assert!(verify_clique_lemma(&g3).unwrap());
        let cp = laplacian_char_poly(&g3).unwrap();
        assert_eq!(
            cp.multiplicity_of(&BigRational::new(BigInt::from(4), BigInt::from(3))),
            6
        );
    }

    #[test]
    fn quotient_lifting_on_families() {
        let g1 = build_g1(2).unwrap();
        assert!(verify_quotient_lifting(&g1, &crate::families::g1_partition(2)).unwrap());
        let g2 = build_g2(2).unwrap();
        assert!(verify_quotient_lifting(&g2, &crate::families::g2_partition(2)).unwrap());
        let g3 = build_g3(2).unwrap();
        assert!(verify_quotient_lifting(&g3, &crate::families::g3_partition(2)).unwrap());
        // Singleton partition: Q = L, trivially fine.
        assert!(verify_quotient_lifting(&g1, &Partition::singletons(7)).unwrap());
        // Inequitable partitions are rejected.
        let p4 = Graph::path(4).unwrap();
        let bad = Partition::new(
            4,
            vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect()],
        )
        .unwrap();
        assert!(matches!(
            verify_quotient_lifting(&p4, &bad),
            Err(Error::InequitablePartition)
        ));
    }

    #[test]
    fn quotient_eigenvalues_of_g1() {
        let g1 = build_g1(2).unwrap();
        let l = normalized_laplacian(&g1).unwrap();
        let q = quotient_matrix(&l, &crate::families::g1_partition(2)).unwrap();
        let mut eig = q.eigenvalues().unwrap();
        eig.reverse();
        let expected = [0.0, 0.5, 0.5, 1.5];
        for (a, e) in eig.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12, "{eig:?}");
        }
    }

    #[test]
    fn commonvertex_on_g1() {
        let g1 = build_g1(2).unwrap();
        // One vertex from each clique block.
        let report = verify_commonvertex_properties(&g1, 0, 2, 4).unwrap();
        assert!(report.all_pass());
        // (iv) always passes with witness z; (i) and (v) have no witness.
        assert_eq!(report.assertions[0], AssertionOutcome::NotApplicable);
        assert_eq!(report.assertions[2], AssertionOutcome::Pass);
        assert_eq!(report.assertions[3], AssertionOutcome::Pass);
        assert_eq!(report.assertions[4], AssertionOutcome::NotApplicable);
    }

    #[test]
    fn commonvertex_on_g2_and_g3() {
        let g2 = build_g2(2).unwrap();
        // Triple: one A vertex, the middle K_1 vertex, one C vertex.
        let report = verify_commonvertex_properties(&g2, 0, 2, 3).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.assertions[4], AssertionOutcome::Pass);

        let g3 = build_g3(1).unwrap();
        let report = verify_commonvertex_properties(&g3, 0, 1, 2).unwrap();
        assert!(report.all_pass(), "{report:?}");
        // Pairwise common vertices x, y, z form a triangle; (v) applies.
        assert_eq!(report.assertions[0], AssertionOutcome::Pass);
        assert_eq!(report.assertions[4], AssertionOutcome::Pass);
    }

    #[test]
    fn commonvertex_rejects_bad_triples() {
        let g1 = build_g1(2).unwrap();
        // 0 and 1 are adjacent (same clique).
        assert!(matches!(
            verify_commonvertex_properties(&g1, 0, 1, 2),
            Err(Error::TripleNotIndependent(_))
        ));
        assert!(matches!(
            verify_commonvertex_properties(&g1, 0, 0, 2),
            Err(Error::TripleNotIndependent(_))
        ));
    }

    use crate::graph::Graph;
}
