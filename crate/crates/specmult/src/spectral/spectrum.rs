//! Eigenvalue clustering and the two-route `Spectrum` value.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::RatPoly;
use super::rational::{exact_eigenvalue_factors, laplacian_char_poly};
use super::sym::normalized_laplacian;
use crate::graph::Graph;
use crate::{Error, Result};

/// Default absolute clustering tolerance; eigenvalues live in `[0, 2]`.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Eigenvalues of the normalized Laplacian grouped into multiplicity
/// clusters, with optional exact factors from the rational route.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// `(value, multiplicity)` clusters, descending by value.
    pub clusters: Vec<(f64, usize)>,
    /// Square-free eigenvalue factors: rational eigenvalues as linear
    /// factors, irrational ones left in residual factors. The exponent is
    /// the exact multiplicity of each root of its factor.
    pub exact: Option<Vec<(RatPoly, usize)>>,
    /// Set when some gap falls between `tol` and `10 * tol`; multiplicity
    /// counting must then defer to the exact route.
    pub uncertain: bool,
}

impl Spectrum {
    /// Floating-point spectrum of a connected graph.
    pub fn compute(g: &Graph, tol: f64) -> Result<Spectrum> {
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        Spectrum::compute_allow_disconnected(g, tol)
    }

    /// Floating-point spectrum without the connectivity requirement (the
    /// zero eigenvalue is then no longer simple).
    pub fn compute_allow_disconnected(g: &Graph, tol: f64) -> Result<Spectrum> {
        let l = normalized_laplacian(g)?;
        let vals = l.eigenvalues()?;
        let (clusters, uncertain) = cluster_values(&vals, tol);
        Ok(Spectrum {
            clusters,
            exact: None,
            uncertain,
        })
    }

    /// Attaches the exact factor list from the rational route.
    pub fn with_exact(mut self, g: &Graph) -> Result<Spectrum> {
        let cp = laplacian_char_poly(g)?;
        self.exact = Some(exact_eigenvalue_factors(&cp));
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.clusters.iter().map(|(_, m)| m).sum()
    }

    /// Sorted multiset of cluster multiplicities.
    pub fn multiplicity_multiset(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.clusters.iter().map(|&(_, m)| m).collect();
        m.sort_unstable();
        m
    }
}

/// Sorted multiset of eigenvalue multiplicities implied by exact factors:
/// a factor of degree `d` with exponent `e` contributes `d` eigenvalues of
/// multiplicity `e`.
pub fn exact_multiplicity_multiset(factors: &[(RatPoly, usize)]) -> Vec<usize> {
    let mut out = Vec::new();
    for (f, e) in factors {
        for _ in 0..f.degree() {
            out.push(*e);
        }
    }
    out.sort_unstable();
    out
}

/// Cross-route consistency: the float clustering must reproduce the exact
/// multiplicity multiset, and every rational eigenvalue must appear as a
/// cluster of the same multiplicity at (nearly) the same value.
pub fn float_exact_agree(spectrum: &Spectrum, factors: &[(RatPoly, usize)]) -> bool {
    if spectrum.multiplicity_multiset() != exact_multiplicity_multiset(factors) {
        return false;
    }
    for (f, e) in factors {
        if f.degree() != 1 {
            continue;
        }
        let root = -&f.coeffs()[0];
        let root_f = root.to_f64().unwrap();
        if !spectrum
            .clusters
            .iter()
            .any(|&(v, m)| m == *e && (v - root_f).abs() <= 1e-6)
        {
            return false;
        }
    }
    true
}

/// Groups sorted-descending eigenvalues: consecutive values join a cluster
/// when their gap is at most `tol`. Returns the clusters (value = mean)
/// and whether any gap fell in the ambiguous band `(tol, 10 tol)`.
pub fn cluster_values(sorted_desc: &[f64], tol: f64) -> (Vec<(f64, usize)>, bool) {
    let mut clusters = Vec::new();
    let mut uncertain = false;
    let mut start = 0;
    for i in 1..=sorted_desc.len() {
        let boundary = i == sorted_desc.len() || {
            let gap = sorted_desc[i - 1] - sorted_desc[i];
            if gap > tol && gap < 10.0 * tol {
                uncertain = true;
            }
            gap > tol
        };
        if boundary {
            let mean: f64 = sorted_desc[start..i].iter().sum::<f64>() / (i - start) as f64;
            let snapped = if mean.abs() <= tol { 0.0 } else { mean };
            clusters.push((snapped, i - start));
            start = i;
        }
    }
    (clusters, uncertain)
}

impl std::fmt::Display for Spectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.clusters.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}^{m}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Spectrum", 3)?;
        st.serialize_field("clusters", &self.clusters)?;
        let exact: Vec<(Vec<String>, usize)> = self
            .exact
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|(f, e)| (f.coeffs().iter().map(BigRational::to_string).collect(), *e))
            .collect();
        st.serialize_field("exact", &exact)?;
        st.serialize_field("uncertain", &self.uncertain)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_clusters(actual: &[(f64, usize)], expected: &[(f64, usize)], tol: f64) {
        assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
        for ((av, am), (ev, em)) in actual.iter().zip(expected) {
            assert!((av - ev).abs() <= tol, "{actual:?} vs {expected:?}");
            assert_eq!(am, em);
        }
    }

    #[test]
    fn k5_spectrum() {
        let s = Spectrum::compute(&Graph::complete(5).unwrap(), DEFAULT_TOL).unwrap();
        assert_clusters(&s.clusters, &[(1.25, 4), (0.0, 1)], 1e-10);
        assert!(!s.uncertain);
    }

    #[test]
    fn g1_spectrum() {
        let g1 = crate::families::build_g1(2).unwrap();
        let s = Spectrum::compute(&g1, DEFAULT_TOL).unwrap();
        assert_clusters(&s.clusters, &[(1.5, 4), (0.5, 2), (0.0, 1)], 1e-10);
    }

    #[test]
    fn k6_minus_e_spectrum() {
        let g = crate::families::build_kn_minus_e(6).unwrap();
        let s = Spectrum::compute(&g, DEFAULT_TOL).unwrap();
        assert_clusters(&s.clusters, &[(1.4, 1), (1.2, 3), (1.0, 1), (0.0, 1)], 1e-10);
    }

    #[test]
    fn disconnected_needs_flag() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            Spectrum::compute(&g, DEFAULT_TOL),
            Err(Error::NotConnected)
        ));
        let s = Spectrum::compute_allow_disconnected(&g, DEFAULT_TOL).unwrap();
        // Two components: 0 has multiplicity 2.
        assert_clusters(&s.clusters, &[(2.0, 2), (0.0, 2)], 1e-10);
    }

    #[test]
    fn trace_and_range_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x2718);
        for _ in 0..300 {
            let n = rng.gen_range(2..=10);
            let g = crate::testutil::random_connected_graph(&mut rng, n, 0.5);
            let s = Spectrum::compute(&g, DEFAULT_TOL).unwrap();
            let total: f64 = s.clusters.iter().map(|(v, m)| v * *m as f64).sum();
            assert!((total - n as f64).abs() <= 1e-9 * n as f64);
            assert_eq!(s.order(), n);
            for &(v, _) in &s.clusters {
                assert!((-1e-9..=2.0 + 1e-9).contains(&v));
            }
            // Connected: least cluster is 0 with multiplicity 1.
            let &(least, mult) = s.clusters.last().unwrap();
            assert_eq!(least, 0.0);
            assert_eq!(mult, 1);
        }
    }

    #[test]
    fn gray_zone_flags_uncertain() {
        let tol = 1e-8;
        let (clusters, uncertain) = cluster_values(&[1.0 + 5e-8, 1.0, 0.0], tol);
        assert!(uncertain);
        assert_eq!(clusters.len(), 3);
        // A clean split is confident.
        let (clusters, uncertain) = cluster_values(&[1.5, 1.5, 0.5], tol);
        assert!(!uncertain);
        assert_eq!(clusters, vec![(1.5, 2), (0.5, 1)]);
    }

    #[test]
    fn exact_agreement_on_families() {
        let g2 = crate::families::build_g2(2).unwrap();
        let s = Spectrum::compute(&g2, DEFAULT_TOL)
            .unwrap()
            .with_exact(&g2)
            .unwrap();
        let factors = s.exact.clone().unwrap();
        assert!(float_exact_agree(&s, &factors));
        assert_eq!(exact_multiplicity_multiset(&factors), vec![1, 1, 1, 4]);
        // theta = 3/2 sits in the exponent-4 factor.
        let theta_factor = factors.iter().find(|(_, e)| *e == 4).unwrap();
        assert_eq!(theta_factor.0, RatPoly::linear_from_root(&rat(3, 2)));
    }

    #[test]
    fn json_shape_is_stable() {
        let g = Graph::complete(5).unwrap();
        let s = Spectrum::compute(&g, DEFAULT_TOL).unwrap().with_exact(&g).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert!(v.get("clusters").unwrap().is_array());
        assert!(v.get("exact").unwrap().is_array());
        assert!(v.get("uncertain").unwrap().is_boolean());
        let exact = v["exact"].as_array().unwrap();
        assert_eq!(exact.len(), 2);
        assert_eq!(exact[1][0][0], "-5/4");
        assert_eq!(exact[1][1], 4);
    }

    use crate::graph::Graph;
}
