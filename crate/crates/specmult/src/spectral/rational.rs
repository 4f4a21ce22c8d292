//! Exact characteristic polynomials of rational matrices.
//!
//! The random-walk Laplacian `I - D^{-1} A` is similar to the normalized
//! Laplacian via conjugation by `D^{1/2}`, so it has the same spectrum while
//! keeping rational entries. Writing a rational matrix as `Lambda^{-1} N`
//! with `Lambda` the diagonal of row-denominator lcms and `N` integral,
//!
//! ```text
//! det(xI - M) = det(x Lambda - N) / det(Lambda),
//! ```
//!
//! and the right side is found exactly by evaluating integer determinants
//! (fraction-free Bareiss) at `n + 1` points and interpolating.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{cmp_poly, RatPoly};
use crate::graph::Graph;
use crate::{Error, Result};

/// Dense matrix of arbitrary-precision rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> RationalMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    /// Exact monic characteristic polynomial `det(xI - M)`.
    pub fn char_poly(&self) -> CharPoly {
        let n = self.n;
        // Row scaling to an integer matrix.
        let lams: Vec<BigInt> = (0..n)
            .map(|i| {
                (0..n).fold(BigInt::one(), |acc, j| acc.lcm(self.get(i, j).denom()))
            })
            .collect();
        let mut ints: Vec<BigInt> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                ints.push(e.numer() * (&lams[i] / e.denom()));
            }
        }
        let det_lambda = lams.iter().product::<BigInt>();

        // q(x) = det(x Lambda - N), degree n, via n + 1 evaluations.
        let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let values: Vec<BigInt> = points
            .iter()
            .map(|x| {
                let mut m = ints.clone();
                for i in 0..n {
                    m[i * n + i] = x * &lams[i] - &m[i * n + i];
                    for j in 0..n {
                        if j != i {
                            m[i * n + j] = -m[i * n + j].clone();
                        }
                    }
                }
                bareiss_determinant(m, n)
            })
            .collect();
        let q = lagrange_interpolate(&points, &values);
        debug_assert_eq!(q.degree(), n);
        let p = q.scale(&BigRational::new(BigInt::one(), det_lambda));
        debug_assert!(p.leading().is_some_and(|c| c.is_one()));
        CharPoly(p)
    }
}

/// The random-walk Laplacian `I - D^{-1} A`; requires minimum degree 1.
pub fn random_walk_laplacian(g: &Graph) -> Result<RationalMatrix> {
    if let Some(u) = g.vertices().find(|&u| g.degree(u) == 0) {
        return Err(Error::IsolatedVertex(u));
    }
    Ok(RationalMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            BigRational::one()
        } else if g.has_edge(i, j) {
            -BigRational::new(BigInt::one(), BigInt::from(g.degree(i)))
        } else {
            BigRational::zero()
        }
    }))
}

/// Exact characteristic polynomial of the normalized Laplacian spectrum of
/// `g`, computed on the similar random-walk form.
pub fn laplacian_char_poly(g: &Graph) -> Result<CharPoly> {
    Ok(random_walk_laplacian(g)?.char_poly())
}

/// Monic degree-`n` characteristic polynomial with exact coefficients.
///
/// Equality of `CharPoly` values is exactly cospectrality of the underlying
/// matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharPoly(RatPoly);

impl CharPoly {
    pub fn poly(&self) -> &RatPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Ascending coefficients, constant first.
    pub fn coefficients(&self) -> &[BigRational] {
        self.0.coeffs()
    }

    /// Square-free decomposition of the polynomial: pairwise-coprime monic
    /// square-free factors with exponents. An eigenvalue has multiplicity
    /// `e` exactly when it is a root of the factor with exponent `e`.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        self.0.squarefree_decomposition()
    }

    /// Exact multiplicity of a rational eigenvalue.
    pub fn multiplicity_of(&self, value: &BigRational) -> usize {
        self.0.root_multiplicity(value)
    }

    /// Stable key for cospectrality bucketing.
    pub fn key(&self) -> String {
        self.0
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharPoly({})", self.0)
    }
}

/// True iff two graphs have identical normalized-Laplacian spectra,
/// decided on exact characteristic polynomials.
pub fn cospectral(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    Ok(laplacian_char_poly(g)? == laplacian_char_poly(h)?)
}

/// Exact test for "the second-least eigenvalue equals 1" on a connected
/// graph: 1 must be a root and no root may lie in the open interval (0, 1).
pub fn rho_second_least_is_one(cp: &CharPoly) -> bool {
    let one = BigRational::one();
    let zero = BigRational::zero();
    if cp.multiplicity_of(&one) == 0 {
        return false;
    }
    // Distinct-root radical with the known roots 0 and 1 removed, so Sturm
    // endpoints are root-free.
    let mut radical = RatPoly::one();
    for (f, _) in cp.squarefree_decomposition() {
        radical = radical.mul(&f);
    }
    for r in [&zero, &one] {
        if radical.eval(r).is_zero() {
            radical = radical.div_exact(&RatPoly::linear_from_root(r));
        }
    }
    radical.count_roots_in_open(&zero, &one) == 0
}

/// Square-free factors after additionally splitting off rational roots:
/// each rational eigenvalue appears as its own linear factor `(x - r, e)`
/// and residual factors keep only irrational roots. Sorted by exponent,
/// then coefficients.
pub fn exact_eigenvalue_factors(cp: &CharPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    for (f, e) in cp.squarefree_decomposition() {
        let roots = f.rational_roots();
        for (r, m) in &roots {
            debug_assert_eq!(*m, 1, "square-free factor with a repeated root");
            out.push((RatPoly::linear_from_root(r), e));
        }
        let residual = f.without_rational_roots();
        if residual.degree() >= 1 {
            out.push((residual, e));
        }
    }
    out.sort_by(|(fa, ea), (fb, eb)| ea.cmp(eb).then_with(|| cmp_poly(fa, fb)));
    out
}

/// Fraction-free Bareiss determinant; consumes a row-major matrix.
fn bareiss_determinant(mut m: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                None => return BigInt::zero(),
                Some(r) => {
                    for j in 0..n {
                        m.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = t / &prev;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = m[k * n + k].clone();
    }
    let det = m[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Degree-`points.len()-1` polynomial through the given integer samples.
fn lagrange_interpolate(points: &[BigInt], values: &[BigInt]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (k, xk) in points.iter().enumerate() {
        let mut basis = RatPoly::one();
        let mut denom = BigRational::one();
        for (j, xj) in points.iter().enumerate() {
            if j != k {
                basis = basis.mul(&RatPoly::linear_from_root(&BigRational::from_integer(
                    xj.clone(),
                )));
                denom *= BigRational::from_integer(xk - xj);
            }
        }
        let weight = BigRational::from_integer(values[k].clone()) / denom;
        acc = acc.add(&basis.scale(&weight));
    }
    acc
}
