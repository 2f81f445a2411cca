//! Exact counting of reverse multiples by digit length.
//!
//! The adjacency matrix A of the Young graph gets the entry x^2 wherever a
//! directed edge exists (each edge is used twice, once with and once
//! against the arrow). Row 0 of B = A + A^2 + ... = A(I-A)^{-1} then holds,
//! at column j, the series counting walks from the starting node to V_j,
//! and the generating functions are
//!
//! ```text
//! P(x) = sum over even pivots of B[0,j]      (even digit counts)
//! Q(x) = x * sum over odd pivots of B[0,j]   (odd digit counts)
//! C(x) = P(x) + Q(x)
//! ```
//!
//! All arithmetic is exact over the integers: the linear solve is a
//! fraction-free (Bareiss) elimination over integer polynomials, and each
//! entry is reduced by a polynomial gcd at the end. No floating point
//! enters this module. An independent integer path-counting route checks
//! the whole symbolic pipeline.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{NodeId, YoungGraph};

/// Node budget above which [`generating_functions`] reports series
/// coefficients instead of attempting the symbolic solve. At this size a
/// solve stays within a few seconds; the largest carry graphs (nearly 800
/// nodes before pruning) would take hours and callers must opt in.
pub const DEFAULT_GF_NODE_BUDGET: usize = 96;

/// Series horizon used for the series-only fallback.
pub const SERIES_ONLY_HORIZON: usize = 32;

/// A univariate polynomial with arbitrary-precision integer coefficients,
/// ascending degree, trailing zeros trimmed (the zero polynomial is empty).
/// Serializes as a list of decimal strings so arbitrarily large
/// coefficients survive JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

pub(crate) fn serialize_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// c * x^deg
    pub fn monomial(c: i64, deg: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = BigInt::from(c);
        IntPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Exact division; errors when the divisor does not divide self.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::NonDivisible);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dn, dd) = (self.degree().unwrap(), d.degree().unwrap());
        if dn < dd {
            return Err(Error::NonDivisible);
        }
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (dd..=dn).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::NonDivisible);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonDivisible);
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Pseudo-remainder: reduces self modulo d after scaling by powers of
    /// d's leading coefficient. Requires d nonzero.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.leading();
            let mut scaled: Vec<BigInt> = rem.coeffs.iter().map(|x| x * &lead).collect();
            for (j, dc) in d.coeffs.iter().enumerate() {
                scaled[dr - dd + j] -= &c * dc;
            }
            rem = Self::from_coeffs(scaled);
        }
        rem
    }

    /// Polynomial gcd over the integers: positive leading coefficient,
    /// content equal to the gcd of the contents. Primitive polynomial
    /// remainder sequence.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        fn positive(p: IntPolynomial) -> IntPolynomial {
            if p.leading().is_negative() {
                p.neg()
            } else {
                p
            }
        }
        if a.is_zero() {
            return positive(b.clone());
        }
        if b.is_zero() {
            return positive(a.clone());
        }
        let content = a.content().gcd(&b.content());
        let mut p = a.primitive_part();
        let mut q = b.primitive_part();
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let r = p.pseudo_rem(&q).primitive_part();
            p = q;
            q = r;
        }
        positive(p.mul_scalar(&content))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers: `1 - 2x^2 + x^4 - x^8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}", mag)?;
                }
                if i == 1 {
                    f.write_str("x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// A reduced ratio of integer polynomials, normalized so the denominator
/// has constant term +1 (its reciprocal is then a bona fide power series).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalGF {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalGF {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalGF {
                num,
                den: IntPolynomial::one(),
            });
        }
        let g = IntPolynomial::gcd(&num, &den);
        let mut num = num.exact_div(&g)?;
        let mut den = den.exact_div(&g)?;
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(Error::DenominatorNotUnit(c0.to_string()));
        }
        if c0.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        if !den.constant_term().is_one() {
            return Err(Error::DenominatorNotUnit(den.constant_term().to_string()));
        }
        Ok(RationalGF { num, den })
    }

    pub fn zero() -> Self {
        RationalGF {
            num: IntPolynomial::zero(),
            den: IntPolynomial::one(),
        }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalGF {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalGF::new(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalGF::new(num, den)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        RationalGF::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RationalGF::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn mul_poly(&self, p: &IntPolynomial) -> Result<Self> {
        RationalGF::new(&self.num * p, self.den.clone())
    }

    /// Multiplies by x; no reduction can be lost since x never divides the
    /// denominator.
    pub fn mul_x(&self) -> Self {
        RationalGF {
            num: self.num.shift(1),
            den: self.den.clone(),
        }
    }

    /// First `terms` Taylor coefficients, via the linear recurrence induced
    /// by the denominator: c_n = num_n - sum_{j>=1} den_j c_{n-j}.
    pub fn series(&self, terms: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = Vec::with_capacity(terms);
        let den_len = self.den.coeffs().len();
        for n in 0..terms {
            let mut acc = self.num.coeff(n);
            for j in 1..=n.min(den_len.saturating_sub(1)) {
                acc -= self.den.coeff(j) * &c[n - j];
            }
            c.push(acc);
        }
        c
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The adjacency matrix over monomials x^2, with nodes ordered V_0 = the
/// starting node, V_1 = the internal node \[0,0], then discovery order.
/// Returns the matrix and the graph-node index behind each matrix index.
pub fn adjacency(young: &YoungGraph) -> Result<(Vec<Vec<IntPolynomial>>, Vec<usize>)> {
    let zero_idx = young
        .node_index(NodeId::internal(0, 0))
        .ok_or_else(|| Error::Internal("graph lacks the internal node [0,0]".to_string()))?;
    let mut order = vec![0, zero_idx];
    order.extend((1..young.total_node_count()).filter(|&i| i != zero_idx));
    let mut back = vec![0usize; young.total_node_count()];
    for (m, &g) in order.iter().enumerate() {
        back[g] = m;
    }
    let n = order.len();
    let mut matrix = vec![vec![IntPolynomial::zero(); n]; n];
    for e in young.edges() {
        matrix[back[e.from]][back[e.to]] = IntPolynomial::monomial(1, 2);
    }
    Ok((matrix, order))
}

/// Row 0 of B = A(I-A)^{-1}, computed exactly: fraction-free forward
/// elimination of y^T (I-A) = (row 0 of A), then rational back substitution
/// with gcd reduction per entry. Singularities cannot occur - (I-A) is
/// invertible as a formal power series because A has no constant term - so
/// one here reports a construction bug.
pub fn start_row_of_b(matrix: &[Vec<IntPolynomial>]) -> Result<Vec<RationalGF>> {
    let n = matrix.len();
    // m = (I - A)^T, rhs = (row 0 of A)^T.
    let mut m: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = &matrix[j][i];
                    if i == j {
                        &IntPolynomial::one() - a
                    } else {
                        a.neg()
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs: Vec<IntPolynomial> = (0..n).map(|j| matrix[0][j].clone()).collect();

    // Bareiss steps; every leading principal minor of (I-A)^T has constant
    // term 1, so the pivots are never zero and no row swaps arise.
    let mut prev = IntPolynomial::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            return Err(Error::Internal(
                "zero pivot in fraction-free elimination".to_string(),
            ));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev)?;
            }
            let t = &(&m[k][k] * &rhs[i]) - &(&m[i][k] * &rhs[k]);
            rhs[i] = t.exact_div(&prev)?;
            m[i][k] = IntPolynomial::zero();
        }
        prev = m[k][k].clone();
    }

    let mut y = vec![RationalGF::zero(); n];
    for i in (0..n).rev() {
        let mut acc = RationalGF::from_poly(rhs[i].clone());
        for j in i + 1..n {
            if m[i][j].is_zero() || y[j].is_zero() {
                continue;
            }
            acc = acc.sub(&y[j].mul_poly(&m[i][j])?)?;
        }
        y[i] = acc.div(&RationalGF::from_poly(m[i][i].clone()))?;
    }
    Ok(y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingFunctions {
    pub p: RationalGF,
    pub q: RationalGF,
    pub c: RationalGF,
}

/// The generating functions of a Young graph, or exact series coefficients
/// when the symbolic solve was skipped for size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GfOutcome {
    Closed(GeneratingFunctions),
    SeriesOnly {
        horizon: usize,
        #[serde(serialize_with = "serialize_bigints")]
        coefficients: Vec<BigInt>,
    },
}

impl GfOutcome {
    pub fn closed(&self) -> Option<&GeneratingFunctions> {
        match self {
            GfOutcome::Closed(gf) => Some(gf),
            GfOutcome::SeriesOnly { .. } => None,
        }
    }

    /// Series of C(x) from whichever route was taken. Requesting more terms
    /// than a series-only fallback holds is an error rather than padding.
    pub fn c_series(&self, terms: usize) -> Result<Vec<BigInt>> {
        match self {
            GfOutcome::Closed(gf) => Ok(gf.c.series(terms)),
            GfOutcome::SeriesOnly {
                horizon,
                coefficients,
            } => {
                if terms > horizon + 1 {
                    return Err(Error::Internal(format!(
                        "series-only horizon {} cannot supply {} terms",
                        horizon, terms
                    )));
                }
                Ok(coefficients[..terms].to_vec())
            }
        }
    }
}

pub fn generating_functions(young: &YoungGraph) -> Result<GfOutcome> {
    generating_functions_with_budget(young, DEFAULT_GF_NODE_BUDGET)
}

pub fn generating_functions_with_budget(
    young: &YoungGraph,
    node_budget: usize,
) -> Result<GfOutcome> {
    if young.even_pivots().is_empty() && young.odd_pivots().is_empty() {
        return Ok(GfOutcome::Closed(GeneratingFunctions {
            p: RationalGF::zero(),
            q: RationalGF::zero(),
            c: RationalGF::zero(),
        }));
    }
    if young.total_node_count() > node_budget {
        let coefficients = path_counts(young, SERIES_ONLY_HORIZON);
        return Ok(GfOutcome::SeriesOnly {
            horizon: SERIES_ONLY_HORIZON,
            coefficients,
        });
    }
    let (matrix, order) = adjacency(young)?;
    let row = start_row_of_b(&matrix)?;
    let mut back = vec![0usize; order.len()];
    for (m, &g) in order.iter().enumerate() {
        back[g] = m;
    }
    let mut p = RationalGF::zero();
    for &i in young.even_pivots() {
        p = p.add(&row[back[i]])?;
    }
    let mut q_sum = RationalGF::zero();
    for &i in young.odd_pivots() {
        q_sum = q_sum.add(&row[back[i]])?;
    }
    let q = q_sum.mul_x();
    let c = p.add(&q)?;
    Ok(GfOutcome::Closed(GeneratingFunctions { p, q, c }))
}

/// Counts of t-digit reverse multiples for t = 0..=t_max by plain integer
/// matrix-vector powering of the 0/1 adjacency matrix. No polynomials are
/// involved, which makes this an independent oracle for the symbolic route.
pub fn path_counts(young: &YoungGraph, t_max: usize) -> Vec<BigInt> {
    let n = young.total_node_count();
    let mut even_pivot = vec![false; n];
    for &i in young.even_pivots() {
        even_pivot[i] = true;
    }
    let mut odd_pivot = vec![false; n];
    for &i in young.odd_pivots() {
        odd_pivot[i] = true;
    }
    let mut counts = vec![BigInt::zero(); t_max + 1];
    let mut walks: Vec<BigInt> = vec![BigInt::zero(); n];
    walks[0] = BigInt::one();
    for step in 1..=t_max / 2 {
        let mut next = vec![BigInt::zero(); n];
        for e in young.edges() {
            if !walks[e.from].is_zero() {
                next[e.to] += &walks[e.from];
            }
        }
        walks = next;
        if 2 * step <= t_max {
            counts[2 * step] = walks
                .iter()
                .zip(&even_pivot)
                .filter(|(_, &p)| p)
                .map(|(w, _)| w)
                .sum();
        }
        if 2 * step < t_max {
            counts[2 * step + 1] = walks
                .iter()
                .zip(&odd_pivot)
                .filter(|(_, &p)| p)
                .map(|(w, _)| w)
                .sum();
        }
    }
    counts
}

/// Cross-checks the symbolic C(x) against integer path counting for every
/// t <= t_max; an exact match is required.
pub fn path_count_check(young: &YoungGraph, t_max: usize) -> Result<()> {
    let outcome = generating_functions_with_budget(young, usize::MAX)?;
    let symbolic = outcome.c_series(t_max + 1)?;
    let counted = path_counts(young, t_max);
    for t in 0..=t_max {
        if symbolic[t] != counted[t] {
            return Err(Error::Internal(format!(
                "path-count mismatch at t={}: series gives {}, counting gives {}",
                t, symbolic[t], counted[t]
            )));
        }
    }
    Ok(())
}
