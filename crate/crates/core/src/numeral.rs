//! Exact base-g digit arithmetic: reversal, small-multiplier multiplication
//! with carry tracking, the reverse-multiple test, and an exhaustive search
//! oracle.
//!
//! A number N = sum a_i g^i is stored most-significant digit first, so for a
//! vector `d` of length n the digit `a_i` is `d[n-1-i]`. Values are never
//! converted to machine integers for arithmetic; reverse multiples grow
//! without bound.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default candidate budget for [`brute_force_search`].
pub const DEFAULT_BRUTE_BUDGET: u64 = 10_000_000;

/// A base-g number as a digit sequence, most-significant digit first.
///
/// Canonical form has no leading zero (except the single-digit zero). The
/// type can hold non-canonical sequences so that [`reverse`] can report a
/// leading zero instead of silently dropping it; operations that need a
/// canonical input check for one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DigitVector {
    base: u32,
    digits: Vec<u32>,
}

impl DigitVector {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        if base < 3 {
            return Err(Error::InvalidBase(base));
        }
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        for &d in &digits {
            if d >= base {
                return Err(Error::DigitOutOfRange { digit: d, base });
            }
        }
        Ok(DigitVector { base, digits })
    }

    /// Expands a machine integer in base g.
    pub fn from_value(base: u32, value: u64) -> Result<Self> {
        if base < 3 {
            return Err(Error::InvalidBase(base));
        }
        if value == 0 {
            return Ok(DigitVector {
                base,
                digits: vec![0],
            });
        }
        let mut digits = Vec::new();
        let mut v = value;
        while v > 0 {
            digits.push((v % base as u64) as u32);
            v /= base as u64;
        }
        digits.reverse();
        Ok(DigitVector { base, digits })
    }

    pub fn from_biguint(base: u32, value: &BigUint) -> Result<Self> {
        if base < 3 {
            return Err(Error::InvalidBase(base));
        }
        let digits = value.to_radix_be(base);
        let digits: Vec<u32> = digits.into_iter().map(u32::from).collect();
        if digits.is_empty() {
            return Ok(DigitVector {
                base,
                digits: vec![0],
            });
        }
        Ok(DigitVector { base, digits })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits, most-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Number of digits n.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a DigitVector always has at least one digit
    }

    /// The digit a_i (coefficient of g^i).
    pub fn digit(&self, i: usize) -> u32 {
        self.digits[self.digits.len() - 1 - i]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn is_canonical(&self) -> bool {
        self.digits[0] != 0 || self.digits.len() == 1
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::from(0u32);
        let base = BigUint::from(self.base);
        for &d in &self.digits {
            acc = acc * &base + BigUint::from(d);
        }
        acc
    }

    /// The value as a machine integer, when it fits.
    pub fn value_u64(&self) -> Option<u64> {
        let mut acc: u64 = 0;
        for &d in &self.digits {
            acc = acc.checked_mul(self.base as u64)?.checked_add(d as u64)?;
        }
        Some(acc)
    }

    /// Renders `(a_{n-1},...,a_0)_g`, the notation used for all I/O.
    pub fn tuple_notation(&self) -> String {
        let body: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        format!("({})_{}", body.join(","), self.base)
    }

    /// Plain decimal when the value fits 64 bits, else tuple notation.
    pub fn decimal_or_tuple(&self) -> String {
        match self.value_u64() {
            Some(v) => v.to_string(),
            None => self.tuple_notation(),
        }
    }

    /// Parses tuple notation, e.g. `(1,0,2,5,1,5)_8`.
    pub fn parse_tuple(input: &str) -> Result<Self> {
        let s = input.trim();
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let open = s.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let close = open.find(')').ok_or_else(|| err("expected ')'"))?;
        let (body, rest) = open.split_at(close);
        let rest = rest[1..].trim_start();
        let base_str = rest
            .strip_prefix('_')
            .ok_or_else(|| err("expected '_' and a base after ')'"))?
            .trim();
        let base: u32 = base_str
            .parse()
            .map_err(|_| err("base is not an integer"))?;
        let mut digits = Vec::new();
        for part in body.split(',') {
            let d: u32 = part
                .trim()
                .parse()
                .map_err(|_| err("digit is not an integer"))?;
            digits.push(d);
        }
        DigitVector::new(base, digits)
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tuple_notation())
    }
}

/// The carry digits of a multiplication by k, indexed so that `get(i)` is
/// r_i with r_{-1} = 0. For an n-digit input the sequence holds the n+1
/// values r_{-1}, r_0, ..., r_{n-1}; a reverse-multiple witness additionally
/// has r_{n-1} = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarrySequence {
    carries: Vec<u32>,
}

impl CarrySequence {
    pub(crate) fn from_raw(carries: Vec<u32>) -> Self {
        debug_assert!(carries.len() >= 2);
        debug_assert_eq!(carries[0], 0);
        CarrySequence { carries }
    }

    /// r_i for i in -1 ..= n-1.
    pub fn get(&self, i: isize) -> u32 {
        self.carries[(i + 1) as usize]
    }

    /// The interior carries r_0, ..., r_{n-2}.
    pub fn interior(&self) -> &[u32] {
        &self.carries[1..self.carries.len() - 1]
    }

    /// All carries in increasing index order: r_{-1}, r_0, ..., r_{n-1}.
    /// This is the right-to-left reading of a multiplication tableau.
    pub fn right_to_left(&self) -> &[u32] {
        &self.carries
    }

    /// Tableau order, r_{n-1} first.
    pub fn left_to_right(&self) -> Vec<u32> {
        let mut v = self.carries.clone();
        v.reverse();
        v
    }

    pub fn len(&self) -> usize {
        self.carries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carries.is_empty()
    }
}

/// Reverses the digit order. The result is deliberately not re-canonicalized:
/// a trailing zero of `d` becomes a leading zero that callers must see to
/// reject such cases.
pub fn reverse(d: &DigitVector) -> DigitVector {
    let mut digits = d.digits.clone();
    digits.reverse();
    DigitVector {
        base: d.base,
        digits,
    }
}

fn check_multiplier(g: u32, k: u32) -> Result<()> {
    if k < 2 || k >= g {
        return Err(Error::InvalidMultiplier { g, k });
    }
    Ok(())
}

/// Schoolbook multiplication by a single digit 2 <= k < g, returning the
/// product and the carry chain r_{-1} = 0, r_0, ..., r_{n-1} of
///
/// ```text
/// k a_i + r_{i-1} = p_i + r_i g.
/// ```
///
/// When the final carry r_{n-1} is nonzero it becomes the extra leading
/// digit of the product.
pub fn mul_small(d: &DigitVector, k: u32) -> Result<(DigitVector, CarrySequence)> {
    check_multiplier(d.base, k)?;
    if !d.is_canonical() {
        return Err(Error::NotCanonical);
    }
    if d.is_zero() {
        return Err(Error::ZeroValue);
    }
    let g = d.base as u64;
    let n = d.len();
    let mut carries = Vec::with_capacity(n + 1);
    carries.push(0u32);
    let mut product_lsd = Vec::with_capacity(n + 1);
    let mut carry: u64 = 0;
    for i in 0..n {
        let t = k as u64 * d.digit(i) as u64 + carry;
        product_lsd.push((t % g) as u32);
        carry = t / g;
        carries.push(carry as u32);
    }
    if carry > 0 {
        product_lsd.push(carry as u32);
    }
    product_lsd.reverse();
    let product = DigitVector {
        base: d.base,
        digits: product_lsd,
    };
    Ok((product, CarrySequence::from_raw(carries)))
}

/// Outcome of the reverse-multiple test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(CarrySequence),
    No,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// Tests whether reversing d's base-g expansion yields exactly k*d.
/// Yes requires the product to keep the same length (equivalently a_0 != 0).
pub fn is_reverse_multiple(d: &DigitVector, k: u32) -> Result<Verdict> {
    let (product, carries) = mul_small(d, k)?;
    if product.digits.len() == d.digits.len() {
        let rev = reverse(d);
        if product.digits == rev.digits {
            return Ok(Verdict::Yes(carries));
        }
    }
    Ok(Verdict::No)
}

/// Number of canonical digit vectors with 1..=n_max digits in base g.
fn candidate_count(g: u32, n_max: usize) -> u64 {
    // (g-1) * g^(n-1) per length, saturating.
    let mut total: u64 = 0;
    let mut len_count = (g - 1) as u64;
    for _ in 0..n_max {
        total = total.saturating_add(len_count);
        len_count = len_count.saturating_mul(g as u64);
    }
    total
}

/// Exhaustive oracle: all (g,k)-reverse multiples with at most `n_max`
/// digits, by scanning every canonical digit vector in length-then-
/// lexicographic order (hence ascending by value, with no sort pass).
pub fn brute_force_search(g: u32, k: u32, n_max: usize) -> Result<Vec<DigitVector>> {
    brute_force_search_with_budget(g, k, n_max, DEFAULT_BRUTE_BUDGET)
}

pub fn brute_force_search_with_budget(
    g: u32,
    k: u32,
    n_max: usize,
    budget: u64,
) -> Result<Vec<DigitVector>> {
    if g < 3 {
        return Err(Error::InvalidBase(g));
    }
    check_multiplier(g, k)?;
    let required = candidate_count(g, n_max);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut found = Vec::new();
    for n in 1..=n_max {
        // Odometer over digit vectors of length n, most-significant first.
        let mut d = vec![0u32; n];
        d[0] = 1;
        loop {
            if scan_is_reverse_multiple(g, k, &d) {
                found.push(DigitVector {
                    base: g,
                    digits: d.clone(),
                });
            }
            // increment
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                d[pos] += 1;
                if d[pos] < g {
                    break;
                }
                d[pos] = if pos == 0 { g } else { 0 };
            }
            if d[0] >= g {
                break;
            }
        }
    }
    Ok(found)
}

/// Allocation-free check used by the oracle scan. `d` is most-significant
/// first; the product digit at position i (from the least-significant end)
/// must equal a_{n-1-i}, which is d[i].
fn scan_is_reverse_multiple(g: u32, k: u32, d: &[u32]) -> bool {
    let n = d.len();
    let g = g as u64;
    let k = k as u64;
    let mut carry: u64 = 0;
    for i in 0..n {
        let t = k * d[n - 1 - i] as u64 + carry;
        if (t % g) as u32 != d[i] {
            return false;
        }
        carry = t / g;
    }
    carry == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dv(base: u32, digits: &[u32]) -> DigitVector {
        DigitVector::new(base, digits.to_vec()).unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&dv(10, &[2, 1, 7, 8])), dv(10, &[8, 7, 1, 2]));
        assert_eq!(reverse(&dv(8, &[5])), dv(8, &[5]));
        assert_eq!(
            reverse(&dv(8, &[1, 0, 2, 5, 1, 5])),
            dv(8, &[5, 1, 5, 2, 0, 1])
        );
    }

    #[test]
    fn reverse_keeps_leading_zero() {
        let r = reverse(&dv(10, &[1, 2, 0]));
        assert_eq!(r.digits(), &[0, 2, 1]);
        assert!(!r.is_canonical());
    }

    #[test]
    fn mul_small_worked_octal_example() {
        // The (8,5) tableau: carries shown right to left are 0,3,1,3,1,0,0.
        let (product, carries) = mul_small(&dv(8, &[1, 0, 2, 5, 1, 5]), 5).unwrap();
        assert_eq!(product, dv(8, &[5, 1, 5, 2, 0, 1]));
        assert_eq!(carries.interior(), &[3, 1, 3, 1, 0]);
        assert_eq!(carries.get(-1), 0);
        assert_eq!(carries.get(5), 0);
        assert_eq!(carries.left_to_right(), vec![0, 0, 1, 3, 1, 3, 0]);
    }

    #[test]
    fn mul_small_single_digit() {
        let (product, carries) = mul_small(&dv(10, &[1]), 2).unwrap();
        assert_eq!(product, dv(10, &[2]));
        assert!(carries.interior().is_empty());
    }

    #[test]
    fn mul_small_1089_by_9() {
        let (product, carries) = mul_small(&dv(10, &[1, 0, 8, 9]), 9).unwrap();
        assert_eq!(product, dv(10, &[9, 8, 0, 1]));
        assert_eq!(carries.interior(), &[8, 8, 0]);
    }

    #[test]
    fn mul_small_carry_out_grows_product() {
        let (product, carries) = mul_small(&dv(10, &[9, 9]), 9).unwrap();
        assert_eq!(product, dv(10, &[8, 9, 1]));
        assert_eq!(carries.get(1), 8);
    }

    #[test]
    fn mul_small_rejects_bad_multiplier() {
        assert!(mul_small(&dv(10, &[1]), 1).is_err());
        assert!(mul_small(&dv(10, &[1]), 10).is_err());
    }

    #[test]
    fn reverse_multiple_verdicts() {
        assert!(is_reverse_multiple(&dv(10, &[2, 1, 7, 8]), 4)
            .unwrap()
            .is_yes());
        assert_eq!(
            is_reverse_multiple(&dv(10, &[1, 2, 3, 4]), 4).unwrap(),
            Verdict::No
        );
        assert!(is_reverse_multiple(&dv(8, &[1, 1, 1, 6, 5]), 5)
            .unwrap()
            .is_yes());
    }

    #[test]
    fn reverse_multiple_rejects_trailing_zero() {
        // 4360 * 4 = 17440 has five digits, and the reversal 0634 is not
        // canonical; any trailing-zero candidate must come back No.
        assert_eq!(
            is_reverse_multiple(&dv(10, &[4, 3, 6, 0]), 4).unwrap(),
            Verdict::No
        );
    }

    #[test]
    fn brute_force_base10_k4() {
        let hits = brute_force_search(10, 4, 7).unwrap();
        let values: Vec<u64> = hits.iter().map(|d| d.value_u64().unwrap()).collect();
        assert_eq!(values, vec![2178, 21978, 219978, 2199978]);
    }

    #[test]
    fn brute_force_12_7_empty() {
        assert!(brute_force_search(12, 7, 6).unwrap().is_empty());
    }

    #[test]
    fn brute_force_base10_k9_four_digits() {
        let hits = brute_force_search(10, 9, 4).unwrap();
        let values: Vec<u64> = hits.iter().map(|d| d.value_u64().unwrap()).collect();
        assert_eq!(values, vec![1089]);
    }

    #[test]
    fn brute_force_budget_refusal() {
        let err = brute_force_search_with_budget(10, 4, 9, 1_000_000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn tuple_notation_round_trip() {
        let d = dv(24, &[1, 0, 9, 16, 18, 1, 6, 5, 13]);
        assert_eq!(d.tuple_notation(), "(1,0,9,16,18,1,6,5,13)_24");
        assert_eq!(DigitVector::parse_tuple(&d.tuple_notation()).unwrap(), d);
        assert_eq!(
            DigitVector::parse_tuple(" ( 1 , 4 )_11 ").unwrap(),
            dv(11, &[1, 4])
        );
        assert!(DigitVector::parse_tuple("(1,2)_2").is_err()); // base too small
        assert!(DigitVector::parse_tuple("(12)_10").is_err()); // digit >= base
        assert!(DigitVector::parse_tuple("1,2)_10").is_err());
    }

    #[test]
    fn decimal_rendering_small_values_only() {
        assert_eq!(dv(10, &[2, 1, 7, 8]).decimal_or_tuple(), "2178");
        assert_eq!(dv(8, &[1, 0, 2, 5, 1, 5]).value_u64(), Some(34125));
        let big = DigitVector::new(99, vec![98; 40]).unwrap();
        assert_eq!(big.value_u64(), None);
        assert!(big.decimal_or_tuple().starts_with('('));
    }

    #[test]
    fn from_value_expansion() {
        assert_eq!(
            DigitVector::from_value(10, 2178).unwrap(),
            dv(10, &[2, 1, 7, 8])
        );
        assert_eq!(DigitVector::from_value(24, 13).unwrap().digits(), &[13]);
        assert_eq!(DigitVector::from_value(10, 0).unwrap().digits(), &[0]);
    }

    proptest! {
        #[test]
        fn reverse_round_trip(base in 3u32..40, digits in proptest::collection::vec(0u32..40, 1..12)) {
            let digits: Vec<u32> = digits.into_iter().map(|d| d % base).collect();
            prop_assume!(digits[0] != 0 || digits.len() == 1);
            let d = DigitVector::new(base, digits).unwrap();
            prop_assert_eq!(reverse(&reverse(&d)), d);
        }

        #[test]
        fn biguint_round_trip(base in 3u32..60, digits in proptest::collection::vec(0u32..60, 1..14)) {
            let mut digits: Vec<u32> = digits.into_iter().map(|d| d % base).collect();
            if digits[0] == 0 { digits[0] = 1; }
            let d = DigitVector::new(base, digits).unwrap();
            prop_assert_eq!(DigitVector::from_biguint(base, &d.to_biguint()).unwrap(), d);
        }

        #[test]
        fn oracle_hits_are_reverse_multiples(g in 3u32..9, k_off in 0u32..6, n in 1usize..5) {
            let k = 2 + k_off % (g - 2);
            for hit in brute_force_search(g, k, n).unwrap() {
                prop_assert!(is_reverse_multiple(&hit, k).unwrap().is_yes());
                // (k-1) * digit sum divisible by g-1; the unqualified form
                // fails e.g. at (1,4)_11 where gcd(k-1,g-1) > 1.
                prop_assert_eq!((k as u64 - 1) * hit.digit_sum() % (g as u64 - 1), 0);
            }
        }
    }
}
