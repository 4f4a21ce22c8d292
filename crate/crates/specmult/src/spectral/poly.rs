//! Univariate polynomials with arbitrary-precision rational coefficients.
//!
//! Just enough exact algebra for characteristic polynomials of matrices of
//! order at most 64: ring arithmetic, Euclidean division, monic gcd, Yun's
//! square-free decomposition, rational root extraction, and Sturm-chain
//! root counting on an open interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial stored as ascending coefficients with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> RatPoly {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> RatPoly {
        RatPoly::from_i64(&[1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `x - r`.
    pub fn linear_from_root(r: &BigRational) -> RatPoly {
        RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, by: &BigRational) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * by).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading().unwrap().clone();
        let dlen = divisor.coeffs.len();
        let mut quot = vec![BigRational::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dlen - 1] / &dlead;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    let delta = &q * d;
                    rem[k + i] -= delta;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dlen - 1);
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: monic pairwise-coprime square-free
    /// `f_i` with `self = lead * prod f_i^{e_i}`, sorted by ascending
    /// exponent then coefficients. Constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == 0 {
            return vec![];
        }
        let deriv = f.derivative();
        let g = f.gcd(&deriv);
        let mut out = Vec::new();
        if g.degree() == 0 {
            out.push((f, 1));
            return out;
        }
        let mut c = f.div_exact(&g);
        let mut d = deriv.div_exact(&g).sub(&c.derivative());
        let mut i = 1;
        while c.degree() > 0 {
            let a = c.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a);
            d = d.div_exact(&a).sub(&c.derivative());
            i += 1;
        }
        out.sort_by(|(fa, ea), (fb, eb)| ea.cmp(eb).then_with(|| cmp_poly(fa, fb)));
        out
    }

    /// Multiplicity of `r` as a root, by repeated synthetic division.
    pub fn root_multiplicity(&self, r: &BigRational) -> usize {
        assert!(!self.is_zero());
        let mut mult = 0;
        let mut cur = self.clone();
        let linear = RatPoly::linear_from_root(r);
        while cur.degree() >= 1 && cur.eval(r).is_zero() {
            cur = cur.div_exact(&linear);
            mult += 1;
        }
        mult
    }

    /// All rational roots with multiplicity, descending by value.
    pub fn rational_roots(&self) -> Vec<(BigRational, usize)> {
        let mut out = Vec::new();
        let mut cur = self.monic();
        let zero = BigRational::zero();
        let m0 = cur.root_multiplicity(&zero);
        if m0 > 0 {
            out.push((zero.clone(), m0));
            for _ in 0..m0 {
                cur = cur.div_exact(&RatPoly::linear_from_root(&zero));
            }
        }
        while cur.degree() >= 1 {
            match cur.find_one_rational_root() {
                None => break,
                Some(r) => {
                    let m = cur.root_multiplicity(&r);
                    let linear = RatPoly::linear_from_root(&r);
                    for _ in 0..m {
                        cur = cur.div_exact(&linear);
                    }
                    out.push((r, m));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| b.cmp(a));
        out
    }

    /// The monic remainder after dividing out all rational roots; it has no
    /// rational root (possibly constant 1).
    pub fn without_rational_roots(&self) -> RatPoly {
        let mut cur = self.monic();
        for (r, m) in self.rational_roots() {
            let linear = RatPoly::linear_from_root(&r);
            for _ in 0..m {
                cur = cur.div_exact(&linear);
            }
        }
        cur
    }

    /// Some rational root of `self`, or None. Assumes nonzero constant term.
    fn find_one_rational_root(&self) -> Option<BigRational> {
        debug_assert!(self.degree() >= 1 && !self.coeffs[0].is_zero());
        if self.degree() == 1 {
            return Some(-&self.coeffs[0] / &self.coeffs[1]);
        }
        if self.degree() == 2 {
            // Quadratic formula; rational roots need a square discriminant.
            let (a, b, c) = (&self.coeffs[2], &self.coeffs[1], &self.coeffs[0]);
            let disc = b * b - BigRational::from_integer(BigInt::from(4)) * a * c;
            if disc.is_negative() {
                return None;
            }
            let sq = rational_sqrt(&disc)?;
            return Some((-b + sq) / (BigRational::from_integer(BigInt::from(2)) * a));
        }
        // Degree >= 3: candidates p/q with p | constant and q | leading of
        // the integer form, pruned by the Cauchy root bound.
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let lead = ints.last().unwrap().abs();
        let cons = ints.first().unwrap().abs();
        let lead_rat = BigRational::from_integer(lead.clone());
        let bound = BigRational::one()
            + ints
                .iter()
                .map(|c| BigRational::from_integer(c.abs()) / &lead_rat)
                .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        for q in divisors(&lead) {
            for p in divisors(&cons) {
                let cand = BigRational::new(p.clone(), q.clone());
                if cand > bound {
                    break; // divisors ascend, later p only grow
                }
                if self.eval(&cand).is_zero() {
                    return Some(cand);
                }
                let neg = -cand;
                if self.eval(&neg).is_zero() {
                    return Some(neg);
                }
            }
        }
        None
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    ///
    /// Requires a square-free polynomial not vanishing at either endpoint.
    pub fn count_roots_in_open(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a < b);
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return 0;
        }
        assert!(
            !self.eval(a).is_zero() && !self.eval(b).is_zero(),
            "Sturm endpoints must not be roots"
        );
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            chain.push(r.neg());
        }
        chain.pop();
        let variations = |x: &BigRational| {
            let mut count = 0;
            let mut last: Option<bool> = None;
            for p in &chain {
                let v = p.eval(x);
                if v.is_zero() {
                    continue;
                }
                let sign = v.is_positive();
                if let Some(prev) = last {
                    if prev != sign {
                        count += 1;
                    }
                }
                last = Some(sign);
            }
            count
        };
        variations(a) - variations(b)
    }
}

/// Deterministic coefficient-wise ordering for reproducible factor lists.
pub fn cmp_poly(a: &RatPoly, b: &RatPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Exact square root of a nonnegative rational, if one exists.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &(&num * &num) == x.numer() && &(&den * &den) == x.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Positive divisors in ascending order by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.is_positive());
    if let Some(small) = n.to_u64() {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                lo.push(BigInt::from(d));
                if d != small / d {
                    hi.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        hi.reverse();
        lo.extend(hi);
        return lo;
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            lo.push(d.clone());
            let other = n / &d;
            if other != d {
                hi.push(other);
            }
        }
        d += 1;
    }
    hi.reverse();
    lo.extend(hi);
    lo
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn division_round_trips() {
        let a = RatPoly::from_i64(&[2, -3, 0, 1, 4]);
        let b = RatPoly::from_i64(&[1, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = RatPoly::from_i64(&[-1, 1]); // x - 1
        let a = shared.mul(&RatPoly::from_i64(&[1, 1]));
        let b = shared.mul(&RatPoly::from_i64(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), shared.monic());
    }

    #[test]
    fn squarefree_of_known_product() {
        // x (x - 5/4)^4
        let x = RatPoly::from_i64(&[0, 1]);
        let lin = RatPoly::linear_from_root(&rat(5, 4));
        let p = x.mul(&lin).mul(&lin).mul(&lin).mul(&lin);
        let sf = p.squarefree_decomposition();
        assert_eq!(sf, vec![(x, 1), (lin, 4)]);
    }

    #[test]
    fn squarefree_recomposes() {
        let p = RatPoly::from_i64(&[0, 0, 1]) // x^2
            .mul(&RatPoly::from_i64(&[-2, 1])) // x - 2
            .mul(&RatPoly::from_i64(&[1, 2, 1])); // (x + 1)^2
        let sf = p.squarefree_decomposition();
        let mut product = RatPoly::one();
        for (f, e) in &sf {
            for _ in 0..*e {
                product = product.mul(f);
            }
        }
        assert_eq!(product, p.monic());
        let exponents: Vec<usize> = sf.iter().map(|(_, e)| *e).collect();
        assert_eq!(exponents, vec![1, 2]);
    }

    #[test]
    fn root_multiplicity_and_rational_roots() {
        let p = RatPoly::linear_from_root(&rat(3, 2));
        let p = p.mul(&p).mul(&RatPoly::from_i64(&[0, 1]));
        assert_eq!(p.root_multiplicity(&rat(3, 2)), 2);
        assert_eq!(p.root_multiplicity(&rat(0, 1)), 1);
        assert_eq!(p.root_multiplicity(&rat(1, 1)), 0);
        assert_eq!(p.rational_roots(), vec![(rat(3, 2), 2), (rat(0, 1), 1)]);
    }

    #[test]
    fn cubic_roots_found() {
        // (x - 1/2)(x - 2/3)(x + 5)
        let p = RatPoly::linear_from_root(&rat(1, 2))
            .mul(&RatPoly::linear_from_root(&rat(2, 3)))
            .mul(&RatPoly::linear_from_root(&rat(-5, 1)));
        assert_eq!(
            p.rational_roots(),
            vec![(rat(2, 3), 1), (rat(1, 2), 1), (rat(-5, 1), 1)]
        );
    }

    #[test]
    fn irrational_roots_left_behind() {
        // (x^2 - 2)(x - 1)
        let p = RatPoly::from_i64(&[-2, 0, 1]).mul(&RatPoly::from_i64(&[-1, 1]));
        assert_eq!(p.rational_roots(), vec![(rat(1, 1), 1)]);
        assert_eq!(p.without_rational_roots(), RatPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn sturm_counts() {
        // Roots 1/4 and 3/4: both inside (0, 1).
        let p = RatPoly::linear_from_root(&rat(1, 4)).mul(&RatPoly::linear_from_root(&rat(3, 4)));
        assert_eq!(p.count_roots_in_open(&rat(0, 1), &rat(1, 1)), 2);
        // x^2 - 2 has no root in (0, 1), one in (1, 2).
        let q = RatPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(q.count_roots_in_open(&rat(0, 1), &rat(1, 1)), 0);
        assert_eq!(q.count_roots_in_open(&rat(1, 1), &rat(2, 1)), 1);
        let c = RatPoly::from_i64(&[5]);
        assert_eq!(c.count_roots_in_open(&rat(0, 1), &rat(1, 1)), 0);
    }

    #[test]
    fn display_reads_naturally() {
        let p = RatPoly::from_coeffs(vec![rat(-3, 2), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.to_string(), "x^2 - 3/2");
    }
}
