//! The multiplicity-(n-3) decision procedure and exhaustive verification.
//!
//! [`classify`] decides membership in the class of connected `n`-vertex
//! graphs (`n >= 5`) with a normalized-Laplacian eigenvalue of exact
//! multiplicity `n - 3`, entirely on the exact route: square-free exponents
//! witness the multiplicity, a Sturm chain decides whether the second-least
//! eigenvalue equals 1, and the independence number is computed exactly.
//! The structural recognizer runs independently; [`verify_theorem`] then
//! demands that the spectral and structural sides agree on every graph of
//! an exhaustive enumeration, in both directions.

mod enumerate;

pub use enumerate::{enumerate_connected, MAX_ENUMERATION_ORDER};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

use crate::families::{recognize_family, FamilyTag};
use crate::graph::{to_graph6, Graph};
use crate::spectral::{
    exact_eigenvalue_factors, float_exact_agree, laplacian_char_poly, rho_second_least_is_one,
    CharPoly, RatPoly, Spectrum, DEFAULT_TOL,
};
use crate::structure::verify_commonvertex_properties;
use crate::{Error, Result};

/// Which clause of the characterization a graph falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremCase {
    /// In class with second-least eigenvalue 1.
    #[serde(rename = "Case-i")]
    CaseI,
    /// In class, second-least eigenvalue != 1, independence number != 2.
    #[serde(rename = "Case-ii")]
    CaseII,
    /// In class but in the open territory: rho_{n-1} != 1 and nu = 2.
    #[serde(rename = "Uncharacterized-nu2")]
    UncharacterizedNu2,
    #[serde(rename = "NotInClass")]
    NotInClass,
}

impl std::fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TheoremCase::CaseI => "Case-i",
            TheoremCase::CaseII => "Case-ii",
            TheoremCase::UncharacterizedNu2 => "Uncharacterized-nu2",
            TheoremCase::NotInClass => "NotInClass",
        };
        write!(f, "{s}")
    }
}

/// The eigenvalue of multiplicity `n - 3`, exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum Theta {
    Rational(BigRational),
    /// Irrational values, described by their square-free factor.
    Factor(RatPoly),
}

impl std::fmt::Display for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Theta::Rational(r) => write!(f, "{r}"),
            Theta::Factor(p) => write!(f, "root of {p}"),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Verdict of the decision procedure for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    /// Some eigenvalue has exact multiplicity `n - 3`.
    pub in_class: bool,
    /// The multiplicity-`(n-3)` eigenvalues (two are possible only for
    /// `n <= 6`); empty when not in class.
    pub theta: Vec<Theta>,
    /// Exact test `rho_{n-1} = 1`.
    pub rho_second_least_is_one: bool,
    pub independence_number: usize,
    /// Structural recognition, independent of the spectral side.
    pub family: Option<FamilyTag>,
    pub theorem_case: TheoremCase,
}

/// Classifies a connected graph on at least 5 vertices.
pub fn classify(g: &Graph) -> Result<ClassificationReport> {
    let cp = laplacian_char_poly(g)?;
    classify_with(g, &cp)
}

/// As [`classify`] with a precomputed characteristic polynomial.
pub fn classify_with(g: &Graph, cp: &CharPoly) -> Result<ClassificationReport> {
    let n = g.order();
    if n < 5 {
        return Err(Error::OutOfRange(n, "classification needs n >= 5"));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let target = n - 3;
    let mut theta = Vec::new();
    for (f, e) in cp.squarefree_decomposition() {
        if e != target {
            continue;
        }
        for (r, _) in f.rational_roots() {
            theta.push(Theta::Rational(r));
        }
        let residual = f.without_rational_roots();
        if residual.degree() >= 1 {
            theta.push(Theta::Factor(residual));
        }
    }
    let in_class = !theta.is_empty();
    let rho_one = rho_second_least_is_one(cp);
    let nu = g.independence_number();
    let family = recognize_family(g)?;
    let theorem_case = if !in_class {
        TheoremCase::NotInClass
    } else if rho_one {
        TheoremCase::CaseI
    } else if nu != 2 {
        TheoremCase::CaseII
    } else {
        TheoremCase::UncharacterizedNu2
    };
    if in_class && !rho_one {
        // theta != 1 and nu <= 3 are forced; a violation is a solver bug.
        let one = BigRational::one();
        if theta.iter().any(|t| matches!(t, Theta::Rational(r) if *r == one)) {
            return Err(Error::Inconsistency(format!(
                "multiplicity-(n-3) eigenvalue 1 with rho_{{n-1}} != 1 on {}",
                to_graph6(g)?
            )));
        }
        if nu > 3 {
            return Err(Error::Inconsistency(format!(
                "independence number {nu} > 3 for an in-class graph {}",
                to_graph6(g)?
            )));
        }
    }
    Ok(ClassificationReport {
        n,
        in_class,
        theta,
        rho_second_least_is_one: rho_one,
        independence_number: nu,
        family,
        theorem_case,
    })
}

/// Everything the verification pipelines need to know about one graph.
#[derive(Clone, Debug)]
pub struct Exam {
    pub graph: Graph,
    pub graph6: String,
    pub char_poly: CharPoly,
    pub report: ClassificationReport,
}

/// Runs the full per-graph pipeline once.
pub fn examine(g: &Graph) -> Result<Exam> {
    let char_poly = laplacian_char_poly(g)?;
    let report = classify_with(g, &char_poly)?;
    Ok(Exam {
        graph: g.clone(),
        graph6: to_graph6(g)?,
        char_poly,
        report,
    })
}

fn examine_all(graphs: &[Graph], workers: usize) -> Result<Vec<Exam>> {
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| graphs.par_iter().map(examine).collect())
    } else {
        graphs.iter().map(examine).collect()
    }
}

/// Summary of a two-directional verification run over one order.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub total: usize,
    pub case_i: usize,
    pub case_ii: usize,
    pub uncharacterized_nu2: usize,
    pub not_in_class: usize,
    /// graph6 strings where the spectral and structural sides disagree.
    pub mismatches: Vec<String>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Enumerates all connected graphs of order `n` and verifies the
/// characterization in both directions.
pub fn verify_theorem(n: usize) -> Result<VerificationReport> {
    if n < 5 {
        return Err(Error::OutOfRange(n, "verification needs n >= 5"));
    }
    let graphs = enumerate_connected(n)?;
    verify_corpus(n, &graphs, 1)
}

/// Verification over an explicit corpus (one representative per class).
pub fn verify_corpus(n: usize, graphs: &[Graph], workers: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    validate_corpus(n, graphs)?;
    let exams = examine_all(graphs, workers)?;
    let mut report = VerificationReport {
        n,
        total: graphs.len(),
        case_i: 0,
        case_ii: 0,
        uncharacterized_nu2: 0,
        not_in_class: 0,
        mismatches: Vec::new(),
        elapsed_ms: 0,
    };
    for exam in &exams {
        let case = exam.report.theorem_case;
        match case {
            TheoremCase::CaseI => report.case_i += 1,
            TheoremCase::CaseII => report.case_ii += 1,
            TheoremCase::UncharacterizedNu2 => report.uncharacterized_nu2 += 1,
            TheoremCase::NotInClass => report.not_in_class += 1,
        }
        let family_side = exam.report.family;
        let mut mismatch = (case == TheoremCase::CaseI)
            != family_side.is_some_and(FamilyTag::is_case_i)
            || (case == TheoremCase::CaseII) != family_side.is_some_and(FamilyTag::is_case_ii);
        // The gap cases must stay unrecognized.
        if matches!(
            case,
            TheoremCase::UncharacterizedNu2 | TheoremCase::NotInClass
        ) && family_side.is_some()
        {
            mismatch = true;
        }
        // Every characterized case-(ii) graph satisfies the common-vertex
        // assertions on each of its (maximal) independent triples.
        if case == TheoremCase::CaseII {
            for (u, v, w) in exam.graph.independent_triples() {
                if !verify_commonvertex_properties(&exam.graph, u, v, w)?.all_pass() {
                    mismatch = true;
                }
            }
        }
        if mismatch {
            report.mismatches.push(exam.graph6.clone());
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn validate_corpus(n: usize, graphs: &[Graph]) -> Result<()> {
    for g in graphs {
        if g.order() != n {
            return Err(Error::InvalidParameter(format!(
                "corpus graph of order {} in a run for n = {n}",
                g.order()
            )));
        }
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
    }
    Ok(())
}

/// Determined-by-spectrum check: bucket a corpus by exact characteristic
/// polynomial and demand every characterized graph sits alone.
#[derive(Clone, Debug, Serialize)]
pub struct DsReport {
    pub n: usize,
    pub total: usize,
    pub characterized: usize,
    /// Cospectral buckets (graph6 lists) that contain a characterized graph
    /// together with at least one other graph.
    pub counterexamples: Vec<Vec<String>>,
    pub elapsed_ms: u128,
}

impl DsReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn ds_check(n: usize) -> Result<DsReport> {
    let graphs = enumerate_connected(n)?;
    ds_check_corpus(n, &graphs, 1)
}

pub fn ds_check_corpus(n: usize, graphs: &[Graph], workers: usize) -> Result<DsReport> {
    let start = Instant::now();
    validate_corpus(n, graphs)?;
    let exams = examine_all(graphs, workers)?;
    let mut buckets: std::collections::BTreeMap<String, Vec<&Exam>> =
        std::collections::BTreeMap::new();
    for exam in &exams {
        buckets.entry(exam.char_poly.key()).or_default().push(exam);
    }
    let mut characterized = 0;
    let mut counterexamples = Vec::new();
    for bucket in buckets.values() {
        let has_characterized = bucket.iter().any(|e| {
            matches!(
                e.report.theorem_case,
                TheoremCase::CaseI | TheoremCase::CaseII
            )
        });
        characterized += bucket
            .iter()
            .filter(|e| {
                matches!(
                    e.report.theorem_case,
                    TheoremCase::CaseI | TheoremCase::CaseII
                )
            })
            .count();
        if has_characterized && bucket.len() > 1 {
            counterexamples.push(bucket.iter().map(|e| e.graph6.clone()).collect());
        }
    }
    Ok(DsReport {
        n,
        total: graphs.len(),
        characterized,
        counterexamples,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// A graph in the still-open territory of the characterization.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCandidate {
    pub graph6: String,
    pub spectrum: Spectrum,
    pub theta: Vec<Theta>,
}

/// All connected `n`-vertex graphs with an eigenvalue of exact multiplicity
/// `n - 3`, second-least eigenvalue different from 1, and independence
/// number exactly 2, in canonical order.
pub fn conjecture_search(n: usize) -> Result<Vec<ConjectureCandidate>> {
    conjecture_search_corpus(n, &enumerate_connected(n)?, 1)
}

pub fn conjecture_search_corpus(
    n: usize,
    graphs: &[Graph],
    workers: usize,
) -> Result<Vec<ConjectureCandidate>> {
    if n < 5 {
        return Err(Error::OutOfRange(n, "conjecture search needs n >= 5"));
    }
    validate_corpus(n, graphs)?;
    // nu = 2 prefilter: some nonadjacent pair but no independent triple
    // (the complement is triangle-free and the graph is not complete).
    let filtered: Vec<Graph> = graphs
        .iter()
        .filter(|g| g.has_independent_set_of_size(2) && !g.has_independent_set_of_size(3))
        .cloned()
        .collect();
    let exams = examine_all(&filtered, workers)?;
    let mut out = Vec::new();
    for exam in exams {
        debug_assert_eq!(exam.report.independence_number, 2);
        if exam.report.theorem_case == TheoremCase::UncharacterizedNu2 {
            let spectrum = Spectrum::compute(&exam.graph, DEFAULT_TOL)?.with_exact(&exam.graph)?;
            out.push(ConjectureCandidate {
                graph6: exam.graph6,
                spectrum,
                theta: exam.report.theta,
            });
        }
    }
    Ok(out)
}

/// Cross-route consistency of one graph: either the float clustering at
/// `tol` reproduces the exact multiplicities or it flags itself uncertain.
pub fn float_route_consistent(g: &Graph, cp: &CharPoly, tol: f64) -> Result<bool> {
    let spectrum = Spectrum::compute(g, tol)?;
    if spectrum.uncertain {
        return Ok(true);
    }
    Ok(float_exact_agree(&spectrum, &exact_eigenvalue_factors(cp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        build_complete_multipartite, build_g2, build_g3, build_kn_minus_e,
    };

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
    }

    #[test]
    fn classify_case_i_examples() {
        let k122 = build_complete_multipartite(&[1, 2, 2]).unwrap();
        let r = classify(&k122).unwrap();
        assert!(r.in_class);
        assert!(r.rho_second_least_is_one);
        assert_eq!(r.theorem_case, TheoremCase::CaseI);
        assert_eq!(r.family, Some(FamilyTag::CompleteTripartite(1, 2, 2)));
        assert_eq!(r.theta, vec![Theta::Rational(rat(1, 1))]);

        let k7e = build_kn_minus_e(7).unwrap();
        let r = classify(&k7e).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::CaseI);
        assert_eq!(r.family, Some(FamilyTag::KnMinusE(7)));
        assert_eq!(r.theta, vec![Theta::Rational(rat(7, 6))]);
    }

    #[test]
    fn classify_case_ii_examples() {
        let g2 = build_g2(2).unwrap();
        let r = classify(&g2).unwrap();
        assert!(r.in_class);
        assert!(!r.rho_second_least_is_one);
        assert_eq!(r.independence_number, 3);
        assert_eq!(r.theta, vec![Theta::Rational(rat(3, 2))]);
        assert_eq!(r.family, Some(FamilyTag::G2(2)));
        assert_eq!(r.theorem_case, TheoremCase::CaseII);

        let g3 = build_g3(2).unwrap();
        let r = classify(&g3).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::CaseII);
        assert_eq!(r.family, Some(FamilyTag::G3(2)));
        assert_eq!(r.theta, vec![Theta::Rational(rat(4, 3))]);
    }

    #[test]
    fn classify_rejections_and_negatives() {
        // C_7: cycle spectra have multiplicity 2 < n - 3.
        let r = classify(&Graph::cycle(7).unwrap()).unwrap();
        assert!(!r.in_class);
        assert_eq!(r.theorem_case, TheoremCase::NotInClass);
        assert!(r.theta.is_empty());

        // K_{3,3}: eigenvalue 1 has multiplicity n - 2.
        let k33 = build_complete_multipartite(&[3, 3]).unwrap();
        let r = classify(&k33).unwrap();
        assert!(!r.in_class);

        // C_5 sits in the nu = 2 gap with two irrational thetas.
        let c5 = Graph::cycle(5).unwrap();
        let r = classify(&c5).unwrap();
        assert!(r.in_class);
        assert!(!r.rho_second_least_is_one);
        assert_eq!(r.independence_number, 2);
        assert_eq!(r.theorem_case, TheoremCase::UncharacterizedNu2);
        assert_eq!(r.theta.len(), 1);
        assert!(matches!(&r.theta[0], Theta::Factor(f) if f.degree() == 2));

        assert!(classify(&Graph::path(4).unwrap()).is_err());
        let disconnected = Graph::new(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(classify(&disconnected).is_err());
    }

    #[test]
    fn verify_small_orders() {
        let r5 = verify_theorem(5).unwrap();
        assert_eq!(r5.total, 21);
        assert_eq!(r5.case_i, 3); // K_{1,1,3}, K_{1,2,2}, K_5 - e
        assert_eq!(r5.case_ii, 0);
        assert!(r5.passed(), "{:?}", r5.mismatches);

        let r6 = verify_theorem(6).unwrap();
        assert_eq!(r6.total, 112);
        assert_eq!(r6.case_i, 4); // K_{1,1,4}, K_{1,2,3}, K_{2,2,2}, K_6 - e
        assert_eq!(r6.case_ii, 1); // G_3(1)
        assert!(r6.passed(), "{:?}", r6.mismatches);
    }

    #[test]
    fn verify_n7_finds_g1_and_g2() {
        let r7 = verify_theorem(7).unwrap();
        assert_eq!(r7.total, 853);
        assert_eq!(r7.case_i, 5); // 4 tripartitions of 7 plus K_7 - e
        assert_eq!(r7.case_ii, 2); // G_1(2), G_2(2)
        assert!(r7.passed(), "{:?}", r7.mismatches);
    }

    #[test]
    fn ds_check_small_orders() {
        let r = ds_check(6).unwrap();
        assert_eq!(r.total, 112);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert_eq!(r.characterized, 5);
    }

    #[test]
    fn conjecture_search_finds_c5() {
        let candidates = conjecture_search(5).unwrap();
        let c5_g6 = to_graph6(&Graph::cycle(5).unwrap()).unwrap();
        let keys: Vec<&str> = candidates.iter().map(|c| c.graph6.as_str()).collect();
        // C_5 has spectrum {0, ((5 - sqrt 5)/4)^2, ((5 + sqrt 5)/4)^2}.
        let c5_canon = Graph::cycle(5)
            .unwrap()
            .canonical_form()
            .unwrap();
        assert!(
            candidates.iter().any(|c| {
                crate::graph::parse_graph6(&c.graph6)
                    .unwrap()
                    .canonical_form()
                    .unwrap()
                    == c5_canon
            }),
            "C_5 ({c5_g6}) missing from {keys:?}"
        );
        for c in &candidates {
            let g = crate::graph::parse_graph6(&c.graph6).unwrap();
            assert_eq!(g.independence_number(), 2);
        }
    }

    #[test]
    fn conjecture_disjoint_from_characterized() {
        for n in [5, 6] {
            let candidates = conjecture_search(n).unwrap();
            for c in &candidates {
                let g = crate::graph::parse_graph6(&c.graph6).unwrap();
                let r = classify(&g).unwrap();
                assert_eq!(r.theorem_case, TheoremCase::UncharacterizedNu2);
                assert_eq!(r.family, None);
            }
        }
    }

    #[test]
    fn float_route_agrees_on_enumeration() {
        for g in enumerate_connected(6).unwrap() {
            let cp = laplacian_char_poly(&g).unwrap();
            assert!(float_route_consistent(&g, &cp, DEFAULT_TOL).unwrap());
        }
    }

    #[test]
    fn rho_one_iff_complete_multipartite() {
        // Lemma: for connected non-complete graphs the second-least
        // eigenvalue is 1 exactly on complete multipartite graphs. This
        // cross-checks the Sturm route against the structural recognizer.
        for n in 3..=6 {
            for g in enumerate_connected(n).unwrap() {
                if g.edge_count() == n * (n - 1) / 2 {
                    continue;
                }
                let cp = laplacian_char_poly(&g).unwrap();
                assert_eq!(
                    rho_second_least_is_one(&cp),
                    crate::families::recognize_complete_multipartite(&g).is_some(),
                    "{}",
                    to_graph6(&g).unwrap()
                );
            }
        }
    }

    use crate::graph::Graph;
}
