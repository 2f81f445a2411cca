//! Young-graph families, pivot-colored isomorphism, palindromic
//! factorizations of the multiples, and the conjecture auditor.
//!
//! Two Young graphs count as isomorphic when a bijection of their internal
//! nodes preserves edges, the starting node's out-neighborhood, and the
//! even/odd pivot classes. Family labels are assigned only on exact
//! isomorphism with a reference member: the 1089 graph (built from (10,4)),
//! the complete graphs K_m with every node a double pivot, the cyclic
//! graphs Z_m (a directed cycle with one edge paralleled through a looped
//! \[0,0]), and the four letter graphs first seen at (8,5), (11,7), (14,3)
//! and (19,14).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::enumerate::{enumerate_multiples, Limit};
use crate::error::{Error, Result};
use crate::genfunc::{
    generating_functions_with_budget, GfOutcome, IntPolynomial, RationalGF, DEFAULT_GF_NODE_BUDGET,
};
use crate::graphcore::{build_h_graph, build_young_graph, NodeId, YoungGraph};
use crate::numeral::{is_reverse_multiple, DigitVector, Verdict};

/// Node cap for isomorphism testing; larger inputs get the explicit
/// `TooLarge` outcome instead of a guess.
pub const DEFAULT_ISO_NODE_CAP: usize = 64;

/// Cap on the number of divisors tried during factorization.
pub const DIVISOR_CAP: usize = 10_000;

// ---------------------------------------------------------------------------
// Abstract pivot-colored graphs and isomorphism
// ---------------------------------------------------------------------------

/// The isomorphism-relevant shape of a Young graph: internal adjacency,
/// the starting node's successor set, and the pivot classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    n: usize,
    adj: Vec<Vec<bool>>,
    start_succ: Vec<bool>,
    even: Vec<bool>,
    odd: Vec<bool>,
}

impl Skeleton {
    pub fn of(young: &YoungGraph) -> Self {
        let n = young.internal_node_count();
        let mut adj = vec![vec![false; n]; n];
        let mut start_succ = vec![false; n];
        for e in young.edges() {
            if e.from == 0 {
                start_succ[e.to - 1] = true;
            } else {
                adj[e.from - 1][e.to - 1] = true;
            }
        }
        let mut even = vec![false; n];
        for &i in young.even_pivots() {
            even[i - 1] = true;
        }
        let mut odd = vec![false; n];
        for &i in young.odd_pivots() {
            odd[i - 1] = true;
        }
        Skeleton {
            n,
            adj,
            start_succ,
            even,
            odd,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|b| **b).count()
    }

    fn without_pivots(&self) -> Skeleton {
        Skeleton {
            n: self.n,
            adj: self.adj.clone(),
            start_succ: self.start_succ.clone(),
            even: vec![false; self.n],
            odd: vec![false; self.n],
        }
    }

    /// Stable iterated-refinement colors; isomorphic skeletons always get
    /// equal color multisets, making these safe for signatures and for
    /// pruning the isomorphism search.
    fn refined_colors(&self) -> Vec<u64> {
        let mut colors: Vec<u64> = (0..self.n)
            .map(|v| {
                let out = self.adj[v].iter().filter(|b| **b).count() as u64;
                let inn = (0..self.n).filter(|&u| self.adj[u][v]).count() as u64;
                let mut c = out << 32 | inn << 16;
                if self.start_succ[v] {
                    c |= 1;
                }
                if self.even[v] {
                    c |= 2;
                }
                if self.odd[v] {
                    c |= 4;
                }
                if self.adj[v][v] {
                    c |= 8;
                }
                c
            })
            .collect();
        for _ in 0..self.n {
            let mut signatures: Vec<(u64, Vec<u64>, Vec<u64>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let mut outs: Vec<u64> = (0..self.n)
                    .filter(|&u| self.adj[v][u])
                    .map(|u| colors[u])
                    .collect();
                outs.sort_unstable();
                let mut ins: Vec<u64> = (0..self.n)
                    .filter(|&u| self.adj[u][v])
                    .map(|u| colors[u])
                    .collect();
                ins.sort_unstable();
                signatures.push((colors[v], outs, ins));
            }
            // Renumber canonically (by sorted signature), so isomorphic
            // graphs assign identical color values.
            let mut order: BTreeMap<&(u64, Vec<u64>, Vec<u64>), u64> = BTreeMap::new();
            for sig in &signatures {
                order.insert(sig, 0);
            }
            for (next, (_, slot)) in order.iter_mut().enumerate() {
                *slot = next as u64;
            }
            let new_colors: Vec<u64> = signatures.iter().map(|s| order[s]).collect();
            if new_colors == colors {
                break;
            }
            colors = new_colors;
        }
        colors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    TooLarge,
}

/// Pivot-colored isomorphism of two Young graphs.
pub fn isomorphic(a: &YoungGraph, b: &YoungGraph) -> IsoOutcome {
    isomorphic_with_cap(a, b, DEFAULT_ISO_NODE_CAP)
}

pub fn isomorphic_with_cap(a: &YoungGraph, b: &YoungGraph, cap: usize) -> IsoOutcome {
    skeleton_iso(&Skeleton::of(a), &Skeleton::of(b), cap)
}

fn skeleton_iso(a: &Skeleton, b: &Skeleton, cap: usize) -> IsoOutcome {
    if a.n > cap || b.n > cap {
        return IsoOutcome::TooLarge;
    }
    if a.n != b.n || a.edge_count() != b.edge_count() {
        return IsoOutcome::NotIsomorphic;
    }
    let ca = a.refined_colors();
    let cb = b.refined_colors();
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return IsoOutcome::NotIsomorphic;
    }
    // Backtracking over nodes, most-constrained color classes first.
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));
    let mut mapping: Vec<Option<usize>> = vec![None; a.n];
    let mut used = vec![false; b.n];
    if assign(a, b, &ca, &cb, &order, 0, &mut mapping, &mut used) {
        IsoOutcome::Isomorphic
    } else {
        IsoOutcome::NotIsomorphic
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &Skeleton,
    b: &Skeleton,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.n {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        if a.start_succ[v] != b.start_succ[w]
            || a.even[v] != b.even[w]
            || a.odd[v] != b.odd[w]
            || a.adj[v][v] != b.adj[w][w]
        {
            continue;
        }
        let consistent = mapping.iter().enumerate().all(|(u, maybe)| match maybe {
            Some(mu) => a.adj[v][u] == b.adj[w][*mu] && a.adj[u][v] == b.adj[*mu][w],
            None => true,
        });
        if !consistent {
            continue;
        }
        mapping[v] = Some(w);
        used[w] = true;
        if assign(a, b, ca, cb, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[v] = None;
        used[w] = false;
    }
    false
}

/// Deterministic, isomorphism-invariant signature built from the stable
/// refinement colors. Not a complete canonical form, but equal for
/// isomorphic graphs and stable across runs.
fn signature(s: &Skeleton) -> String {
    let colors = s.refined_colors();
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &colors {
        *hist.entry(c).or_insert(0) += 1;
    }
    let mut edge_hist: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for v in 0..s.n {
        for u in 0..s.n {
            if s.adj[v][u] {
                *edge_hist.entry((colors[v], colors[u])).or_insert(0) += 1;
            }
        }
    }
    let mut start: Vec<u64> = (0..s.n)
        .filter(|&v| s.start_succ[v])
        .map(|v| colors[v])
        .collect();
    start.sort_unstable();
    let mut even: Vec<u64> = (0..s.n).filter(|&v| s.even[v]).map(|v| colors[v]).collect();
    even.sort_unstable();
    let mut odd: Vec<u64> = (0..s.n).filter(|&v| s.odd[v]).map(|v| colors[v]).collect();
    odd.sort_unstable();
    format!(
        "n{};e{};c{:?};t{:?};s{:?};ev{:?};od{:?}",
        s.n,
        s.edge_count(),
        hist.into_iter().collect::<Vec<_>>(),
        edge_hist.into_iter().collect::<Vec<_>>(),
        start,
        even,
        odd
    )
}

fn short_hash(s: &str) -> String {
    // FNV-1a, enough for a stable table tag.
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in s.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{:04x}", h & 0xffff)
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedLetter {
    H,
    I,
    J,
    M,
}

/// The graph family of a Young graph, assigned by exact pivot-colored
/// isomorphism with a reference member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyLabel {
    Graph1089,
    Complete(usize),
    Cyclic(usize),
    Letter(NamedLetter),
    Other(String),
}

impl FamilyLabel {
    /// The superscript used in the survey table. Families beyond the named
    /// letters render by family name; unrecognized shapes get a stable tag.
    pub fn table_letter(&self) -> String {
        match self {
            FamilyLabel::Graph1089 => "a".to_string(),
            FamilyLabel::Complete(2) => "b".to_string(),
            FamilyLabel::Complete(3) => "c".to_string(),
            FamilyLabel::Complete(4) => "d".to_string(),
            FamilyLabel::Cyclic(3) => "e".to_string(),
            FamilyLabel::Cyclic(5) => "f".to_string(),
            FamilyLabel::Letter(NamedLetter::H) => "h".to_string(),
            FamilyLabel::Letter(NamedLetter::I) => "i".to_string(),
            FamilyLabel::Letter(NamedLetter::J) => "j".to_string(),
            FamilyLabel::Letter(NamedLetter::M) => "m".to_string(),
            FamilyLabel::Complete(m) => format!("K{}", m),
            FamilyLabel::Cyclic(m) => format!("Z{}", m),
            FamilyLabel::Other(sig) => format!("x{}", short_hash(sig)),
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::Graph1089 => write!(f, "1089"),
            FamilyLabel::Complete(m) => write!(f, "K{}", m),
            FamilyLabel::Cyclic(m) => write!(f, "Z{}", m),
            FamilyLabel::Letter(NamedLetter::H) => write!(f, "letter-h"),
            FamilyLabel::Letter(NamedLetter::I) => write!(f, "letter-i"),
            FamilyLabel::Letter(NamedLetter::J) => write!(f, "letter-j"),
            FamilyLabel::Letter(NamedLetter::M) => write!(f, "letter-m"),
            FamilyLabel::Other(sig) => write!(f, "other({})", short_hash(sig)),
        }
    }
}

fn reference_1089() -> &'static Skeleton {
    static REF: OnceLock<Skeleton> = OnceLock::new();
    REF.get_or_init(|| {
        let (young, _) = build_young_graph(10, 4)
            .expect("valid parameters")
            .expect("the (10,4) Young graph exists");
        Skeleton::of(&young)
    })
}

fn reference_letter(letter: NamedLetter) -> &'static Skeleton {
    static REFS: OnceLock<HashMap<u8, Skeleton>> = OnceLock::new();
    let map = REFS.get_or_init(|| {
        let mut m = HashMap::new();
        for (tag, g, k) in [(b'h', 8, 5), (b'i', 11, 7), (b'j', 14, 3), (b'm', 19, 14)] {
            let (young, _) = build_young_graph(g, k)
                .expect("valid parameters")
                .expect("letter reference graph exists");
            m.insert(tag, Skeleton::of(&young));
        }
        m
    });
    let tag = match letter {
        NamedLetter::H => b'h',
        NamedLetter::I => b'i',
        NamedLetter::J => b'j',
        NamedLetter::M => b'm',
    };
    &map[&tag]
}

/// The complete graph on m nodes: every node has an edge to every node
/// (loops included), every node is both an even and odd pivot, and the
/// starting node reaches every node except \[0,0] (index 0 here).
fn reference_complete(m: usize) -> Skeleton {
    let adj = vec![vec![true; m]; m];
    let mut start_succ = vec![true; m];
    start_succ[0] = false;
    Skeleton {
        n: m,
        adj,
        start_succ,
        even: vec![true; m],
        odd: vec![true; m],
    }
}

/// The cyclic graph Z_m: a directed cycle c_1 .. c_m with the edge
/// c_m -> c_1 paralleled by a length-two path through a looped \[0,0]
/// (index 0). The mirror involution reflects the cycle (c_i <-> c_{m+1-i}),
/// so c_m -> c_1 is always a swap-pair edge and c_m an odd pivot besides
/// \[0,0]; for odd m the half-way node c_{(m+1)/2} is a diagonal label and a
/// second even pivot, for even m the crossing edge makes c_{m/2} a third
/// odd pivot. Z_1 is the two-node complete graph.
fn reference_cyclic(m: usize) -> Skeleton {
    if m == 1 {
        return reference_complete(2);
    }
    let n = m + 1;
    let mut adj = vec![vec![false; n]; n];
    adj[0][0] = true; // loop at [0,0]
    adj[0][1] = true; // [0,0] -> c_1
    adj[m][0] = true; // c_m -> [0,0]
    adj[m][1] = true; // c_m -> c_1 (the paralleled edge)
    for i in 1..m {
        adj[i][i + 1] = true;
    }
    let mut start_succ = vec![false; n];
    start_succ[1] = true;
    let mut even = vec![false; n];
    let mut odd = vec![false; n];
    even[0] = true;
    odd[0] = true;
    odd[m] = true;
    if m % 2 == 1 {
        even[m.div_ceil(2)] = true;
    } else {
        odd[m / 2] = true;
    }
    Skeleton {
        n,
        adj,
        start_succ,
        even,
        odd,
    }
}

/// Assigns the family by exact pivot-colored isomorphism against the
/// reference members, falling back to a stable signature.
pub fn classify(young: &YoungGraph) -> FamilyLabel {
    let s = Skeleton::of(young);
    let m = s.n;
    let all_diagonal = young.nodes().iter().skip(1).all(|n| n.is_diagonal());
    if all_diagonal
        && skeleton_iso(&s, &reference_complete(m), usize::MAX) == IsoOutcome::Isomorphic
    {
        return FamilyLabel::Complete(m);
    }
    if m == 4 && skeleton_iso(&s, reference_1089(), DEFAULT_ISO_NODE_CAP) == IsoOutcome::Isomorphic
    {
        return FamilyLabel::Graph1089;
    }
    if m >= 3
        && s.edge_count() == m + 2
        && skeleton_iso(&s, &reference_cyclic(m - 1), usize::MAX) == IsoOutcome::Isomorphic
    {
        return FamilyLabel::Cyclic(m - 1);
    }
    for (letter, nodes, edges) in [
        (NamedLetter::H, 8, 16),
        (NamedLetter::I, 4, 8),
        (NamedLetter::J, 6, 10),
        (NamedLetter::M, 7, 10),
    ] {
        if m == nodes
            && s.edge_count() == edges
            && skeleton_iso(&s, reference_letter(letter), DEFAULT_ISO_NODE_CAP)
                == IsoOutcome::Isomorphic
        {
            return FamilyLabel::Letter(letter);
        }
    }
    FamilyLabel::Other(signature(&s))
}

// ---------------------------------------------------------------------------
// Palindromic factorization
// ---------------------------------------------------------------------------

/// A run-length constraint observed for one digit of the beta alphabet.
/// `max_run` is recorded only when every observed run has the same length,
/// e.g. "no adjacent 1s" shows up as min_run = max_run = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunRule {
    pub digit: u32,
    pub min_run: usize,
    pub max_run: Option<usize>,
}

/// A verified gamma-beta description of the multiples: every supplied
/// multiple is gamma times a palindromic beta over the alphabet obeying
/// the run rules, and the first `verified_horizon` betas regenerate the
/// supplied multiples exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub gamma: DigitVector,
    pub alphabet: Vec<u32>,
    pub rules: Vec<RunRule>,
    pub verified_horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FactorizationOutcome {
    Found(Factorization),
    NonPalindromic,
    /// The gcd could not be factored or has too many divisors to try.
    DivisorBudgetExceeded,
}

/// Searches for the maximal divisor gamma of gcd(multiples) such that every
/// multiple divided by gamma is palindromic in base g over a small digit
/// alphabet, then infers run rules and cross-validates them by regenerating
/// the multiples from the language.
pub fn palindromic_factorization(
    g: u32,
    k: u32,
    multiples: &[DigitVector],
) -> Result<FactorizationOutcome> {
    if multiples.len() < 8 {
        return Err(Error::Precondition(format!(
            "factorization requires at least 8 multiples, got {}",
            multiples.len()
        )));
    }
    let mut values: Vec<BigUint> = Vec::with_capacity(multiples.len());
    for m in multiples {
        if m.base() != g {
            return Err(Error::Precondition(
                "multiple in the wrong base".to_string(),
            ));
        }
        if !is_reverse_multiple(m, k)?.is_yes() {
            return Err(Error::Precondition(format!(
                "{} is not a ({},{})-reverse multiple",
                m.tuple_notation(),
                g,
                k
            )));
        }
        values.push(m.to_biguint());
    }
    for w in values.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Precondition(
                "multiples must be supplied in increasing order".to_string(),
            ));
        }
    }
    let gcd = values.iter().fold(BigUint::zero(), |acc, v| acc.gcd(v));
    // The alphabet can be no larger than the sample can evidence.
    let max_alphabet = 2.max(multiples.len() - 1);

    // The gcd itself is the most common gamma; try it before any
    // factorization work.
    if let Some(f) = try_gamma(g, &gcd, &values, max_alphabet) {
        return Ok(FactorizationOutcome::Found(f));
    }
    let Some(gcd_small) = gcd.to_u128() else {
        return Ok(FactorizationOutcome::DivisorBudgetExceeded);
    };
    let divisors = match enumerate_divisors(gcd_small) {
        Some(d) => d,
        None => return Ok(FactorizationOutcome::DivisorBudgetExceeded),
    };
    for d in divisors.into_iter().rev() {
        if BigUint::from(d) == gcd {
            continue; // already tried
        }
        if let Some(f) = try_gamma(g, &BigUint::from(d), &values, max_alphabet) {
            return Ok(FactorizationOutcome::Found(f));
        }
    }
    Ok(FactorizationOutcome::NonPalindromic)
}

/// Trial division to 10^6 plus a deterministic Miller-Rabin for the
/// cofactor; `None` when the divisor set cannot be fully enumerated
/// within the cap.
fn enumerate_divisors(n: u128) -> Option<Vec<u128>> {
    if n == 0 {
        return None;
    }
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    let push = |p: u128, e: u32, factors: &mut Vec<(u128, u32)>| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    let mut e2 = 0;
    while rest.is_multiple_of(2) {
        rest /= 2;
        e2 += 1;
    }
    push(2, e2, &mut factors);
    let mut p: u128 = 3;
    while p <= 1_000_000 && p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        push(p, e, &mut factors);
        p += 2;
    }
    if rest > 1 {
        // No factor below 10^6 remains; below 10^12 the cofactor must be
        // prime, otherwise ask Miller-Rabin (deterministic to ~3.3e24).
        if rest < 1_000_000_000_000
            || (rest < 3_317_044_064_679_887_385_961_981 && is_prime_u128(rest))
        {
            factors.push((rest, 1));
        } else {
            return None;
        }
    }
    let count: u128 = factors.iter().map(|(_, e)| *e as u128 + 1).product();
    if count > DIVISOR_CAP as u128 {
        return None;
    }
    let mut divisors: Vec<u128> = vec![1];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut power: u128 = 1;
            for _ in 0..=e {
                next.push(d * power);
                power = power.saturating_mul(p);
            }
        }
        divisors = next;
    }
    divisors.sort_unstable();
    Some(divisors)
}

/// Deterministic Miller-Rabin for n below ~3.3e24 (the first 13 primes as
/// witnesses). Arithmetic goes through BigUint to avoid u128 overflow.
fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let n_big = BigUint::from(n);
    let one = BigUint::one();
    let n_minus_1 = &n_big - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, &n_big);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n_big;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn try_gamma(
    g: u32,
    gamma: &BigUint,
    values: &[BigUint],
    max_alphabet: usize,
) -> Option<Factorization> {
    if gamma.is_zero() {
        return None;
    }
    let mut betas: Vec<DigitVector> = Vec::with_capacity(values.len());
    let mut alphabet: Vec<u32> = Vec::new();
    for v in values {
        let (q, r) = v.div_rem(gamma);
        if !r.is_zero() {
            return None;
        }
        let beta = DigitVector::from_biguint(g, &q).ok()?;
        let digits = beta.digits();
        if digits.iter().rev().ne(digits.iter()) {
            return None; // not palindromic
        }
        for &d in digits {
            if !alphabet.contains(&d) {
                alphabet.push(d);
            }
        }
        if alphabet.len() > max_alphabet {
            return None;
        }
        betas.push(beta);
    }
    alphabet.sort_unstable();
    let rules = infer_run_rules(&betas, &alphabet);
    // Cross-validate: the language must regenerate the multiples exactly.
    let max_len = betas.iter().map(|b| b.len()).max().unwrap_or(1);
    let regenerated = generate_betas(g, &alphabet, &rules, values.len(), max_len + 2)?;
    if regenerated.len() < values.len() {
        return None;
    }
    for (i, beta) in regenerated.iter().take(values.len()).enumerate() {
        if gamma * beta.to_biguint() != values[i] {
            return None;
        }
    }
    let gamma_digits = DigitVector::from_biguint(g, gamma).ok()?;
    Some(Factorization {
        gamma: gamma_digits,
        alphabet,
        rules,
        verified_horizon: values.len(),
    })
}

fn infer_run_rules(betas: &[DigitVector], alphabet: &[u32]) -> Vec<RunRule> {
    let mut min_run: HashMap<u32, usize> = HashMap::new();
    let mut max_run: HashMap<u32, usize> = HashMap::new();
    for beta in betas {
        let digits = beta.digits();
        let mut i = 0;
        while i < digits.len() {
            let d = digits[i];
            let mut j = i;
            while j < digits.len() && digits[j] == d {
                j += 1;
            }
            let run = j - i;
            min_run
                .entry(d)
                .and_modify(|m| *m = (*m).min(run))
                .or_insert(run);
            max_run
                .entry(d)
                .and_modify(|m| *m = (*m).max(run))
                .or_insert(run);
            i = j;
        }
    }
    alphabet
        .iter()
        .map(|&d| {
            let lo = min_run.get(&d).copied().unwrap_or(1);
            let hi = max_run.get(&d).copied().unwrap_or(lo);
            RunRule {
                digit: d,
                min_run: lo,
                max_run: if lo == hi { Some(hi) } else { None },
            }
        })
        .collect()
}

/// Total half-string positions the beta generator may visit before giving
/// up on a candidate gamma.
const BETA_WORK_CAP: usize = 5_000_000;

/// Generates the first `count` numbers (ascending) whose base-g expansion
/// is palindromic over `alphabet` and obeys the run rules. Works length by
/// length over the free half of the palindrome, in ascending alphabet
/// order (lex order of the half is numeric order of the whole). A run that
/// completes inside the half is a genuine run of the full palindrome -
/// runs merge only across the center - so violations prune the walk early
/// and sparse languages stay cheap at long lengths. `None` when the work
/// cap is exhausted.
fn generate_betas(
    g: u32,
    alphabet: &[u32],
    rules: &[RunRule],
    count: usize,
    max_len: usize,
) -> Option<Vec<DigitVector>> {
    struct Gen<'a> {
        g: u32,
        alphabet: &'a [u32],
        rules: &'a [RunRule],
        len: usize,
        half: Vec<u32>,
        work: usize,
        out: Vec<DigitVector>,
        count: usize,
    }
    impl Gen<'_> {
        fn max_run_of(&self, d: u32) -> Option<usize> {
            self.rules
                .iter()
                .find(|r| r.digit == d)
                .and_then(|r| r.max_run)
        }
        fn min_run_of(&self, d: u32) -> usize {
            self.rules
                .iter()
                .find(|r| r.digit == d)
                .map_or(1, |r| r.min_run)
        }
    }

    let mut all = Vec::with_capacity(count);
    let mut work_total = 0usize;
    for len in 1..=max_len {
        if all.len() >= count {
            break;
        }
        let mut gen = Gen {
            g,
            alphabet,
            rules,
            len,
            half: Vec::with_capacity(len.div_ceil(2)),
            work: work_total,
            out: Vec::new(),
            count: count - all.len(),
        };
        // Recursion over half positions; runs that complete strictly
        // inside the half are final runs of the palindrome, the run at
        // the center is re-checked on the full string.
        fn drive(gen: &mut Gen<'_>, run_digit: u32, run_len: usize) -> Option<()> {
            let pos = gen.half.len();
            let target = gen.len.div_ceil(2);
            gen.work += 1;
            if gen.work > BETA_WORK_CAP {
                return None;
            }
            if pos == target {
                let mut digits = gen.half.clone();
                for p in (0..gen.len / 2).rev() {
                    digits.push(digits[p]);
                }
                if runs_satisfy(&digits, gen.rules) {
                    let beta = DigitVector::new(gen.g, digits)
                        .expect("alphabet digits are below the base");
                    gen.out.push(beta);
                }
                return Some(());
            }
            for i in 0..gen.alphabet.len() {
                let d = gen.alphabet[i];
                if pos == 0 && d == 0 {
                    continue;
                }
                if gen.out.len() >= gen.count {
                    return Some(());
                }
                if pos > 0 && d == run_digit {
                    if let Some(mx) = gen.max_run_of(d) {
                        if run_len + 1 > mx {
                            continue;
                        }
                    }
                    gen.half.push(d);
                    let r = drive(gen, d, run_len + 1);
                    gen.half.pop();
                    r?;
                } else {
                    if pos > 0 && pos + 1 < target && run_len < gen.min_run_of(run_digit) {
                        continue;
                    }
                    gen.half.push(d);
                    let r = drive(gen, d, 1);
                    gen.half.pop();
                    r?;
                }
            }
            Some(())
        }
        drive(&mut gen, u32::MAX, 0)?;
        work_total = gen.work;
        all.extend(gen.out);
    }
    Some(all)
}

fn runs_satisfy(digits: &[u32], rules: &[RunRule]) -> bool {
    let mut i = 0;
    while i < digits.len() {
        let d = digits[i];
        let mut j = i;
        while j < digits.len() && digits[j] == d {
            j += 1;
        }
        let run = j - i;
        if let Some(rule) = rules.iter().find(|r| r.digit == d) {
            if run < rule.min_run {
                return false;
            }
            if let Some(max) = rule.max_run {
                if run > max {
                    return false;
                }
            }
        }
        i = j;
    }
    true
}

// ---------------------------------------------------------------------------
// Survey
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    pub gf_node_budget: usize,
    pub sample_count: usize,
    pub factorize: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            gf_node_budget: DEFAULT_GF_NODE_BUDGET,
            // "First 50 or so": horizons this deep are needed before
            // spurious descriptions die out - the first 24 multiples of
            // (24,17) admit one, the first 40 do not.
            sample_count: 48,
            factorize: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GfSummary {
    pub p: Option<String>,
    pub q: Option<String>,
    pub c: Option<String>,
    pub series_only: bool,
    pub c_series: Vec<String>,
}

/// One survey row: everything known about a single (g,k).
#[derive(Debug, Clone, Serialize)]
pub struct SurveyRecord {
    pub g: u32,
    pub k: u32,
    pub exists: bool,
    pub nodes: usize,
    pub edges: usize,
    pub h_nodes: usize,
    pub h_edges: usize,
    pub family: Option<FamilyLabel>,
    pub letter: Option<String>,
    pub even_pivots: Vec<String>,
    pub odd_pivots: Vec<String>,
    pub gf: Option<GfSummary>,
    pub gamma: Option<String>,
    pub sample_multiples: Vec<String>,
    pub flags: Vec<String>,
}

pub fn survey_cell(g: u32, k: u32, opts: &SurveyOptions) -> Result<SurveyRecord> {
    let h = build_h_graph(g, k)?;
    let h_nodes = h.internal_node_count();
    let h_edges = h.internal_edge_count();
    let Some((young, _)) = h.prune() else {
        return Ok(SurveyRecord {
            g,
            k,
            exists: false,
            nodes: 0,
            edges: 0,
            h_nodes,
            h_edges,
            family: None,
            letter: None,
            even_pivots: Vec::new(),
            odd_pivots: Vec::new(),
            gf: None,
            gamma: None,
            sample_multiples: Vec::new(),
            flags: Vec::new(),
        });
    };
    let mut flags = Vec::new();
    let family = classify(&young);
    let gf = match generating_functions_with_budget(&young, opts.gf_node_budget)? {
        GfOutcome::Closed(gfs) => {
            let series = gfs.c.series(17);
            GfSummary {
                p: Some(gfs.p.to_string()),
                q: Some(gfs.q.to_string()),
                c: Some(gfs.c.to_string()),
                series_only: false,
                c_series: series.iter().map(|c| c.to_string()).collect(),
            }
        }
        GfOutcome::SeriesOnly { coefficients, .. } => {
            flags.push("gf-series-only".to_string());
            GfSummary {
                p: None,
                q: None,
                c: None,
                series_only: true,
                c_series: coefficients
                    .iter()
                    .take(17)
                    .map(|c| c.to_string())
                    .collect(),
            }
        }
    };
    let samples = enumerate_multiples(&young, Limit::Count(opts.sample_count))?;
    let gamma = if opts.factorize && samples.len() >= 8 {
        match palindromic_factorization(g, k, &samples)? {
            FactorizationOutcome::Found(f) => Some(f.gamma.tuple_notation()),
            FactorizationOutcome::NonPalindromic => {
                flags.push("non-palindromic".to_string());
                None
            }
            FactorizationOutcome::DivisorBudgetExceeded => {
                flags.push("factorization-divisor-budget".to_string());
                None
            }
        }
    } else {
        None
    };
    Ok(SurveyRecord {
        g,
        k,
        exists: true,
        nodes: young.internal_node_count(),
        edges: young.internal_edge_count(),
        h_nodes,
        h_edges,
        family: Some(family.clone()),
        letter: Some(family.table_letter()),
        even_pivots: young
            .even_pivots()
            .iter()
            .map(|&i| young.nodes()[i].to_string())
            .collect(),
        odd_pivots: young
            .odd_pivots()
            .iter()
            .map(|&i| young.nodes()[i].to_string())
            .collect(),
        gf: Some(gf),
        gamma,
        sample_multiples: samples.iter().map(|m| m.tuple_notation()).collect(),
        flags,
    })
}

/// All cells (g,k) for 3 <= g <= g_max, 2 <= k < g.
pub fn cells(g_max: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for g in 3..=g_max {
        for k in 2..g {
            v.push((g, k));
        }
    }
    v
}

pub fn survey(g_max: u32, opts: &SurveyOptions) -> Result<Vec<SurveyRecord>> {
    cells(g_max)
        .into_iter()
        .map(|(g, k)| survey_cell(g, k, opts))
        .collect()
}

/// Renders the survey as the two-column table of existing (g,k) pairs with
/// family superscripts: `17 | 2^b, 4^i, 5^c, 8^b, 10^i, 11^e, 16^a`.
pub fn render_survey_table(records: &[SurveyRecord]) -> String {
    let mut lines = vec![" g | k".to_string(), "---+---".to_string()];
    let mut by_g: BTreeMap<u32, Vec<&SurveyRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.exists) {
        by_g.entry(r.g).or_default().push(r);
    }
    for (g, rows) in by_g {
        let items: Vec<String> = rows
            .iter()
            .map(|r| format!("{}^{}", r.k, r.letter.as_deref().unwrap_or("?")))
            .collect();
        lines.push(format!("{:>2} | {}", g, items.join(", ")));
    }
    lines.join("\n") + "\n"
}

// ---------------------------------------------------------------------------
// Conjecture auditor
// ---------------------------------------------------------------------------

/// One conjecture violation or noteworthy finding; an empty findings list
/// means every audited statement held.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub check: String,
    pub g: u32,
    pub k: u32,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellAudit {
    pub g: u32,
    pub k: u32,
    pub exists: bool,
    #[serde(skip)]
    pub young: Option<YoungGraph>,
    pub family: Option<FamilyLabel>,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub g_max: u32,
    pub cells_scanned: usize,
    pub young_graphs: usize,
    pub findings: Vec<Finding>,
    /// First (g,k) at which each complete graph K_m occurs.
    pub k_first: Vec<(usize, u32, u32)>,
    /// First (g,k) at which each cyclic graph Z_m occurs (Z_1 = K_2).
    pub z_first: Vec<(usize, u32, u32)>,
    /// Pairs isomorphic as plain digraphs but not as pivot-colored graphs;
    /// reported without asserting either answer to the open question.
    pub iso_question_pairs: Vec<String>,
}

/// The valid two-digit seeds: positive integers r with
/// a = r(kg-1)/(k^2-1) < g and b = r(g-k)/(k^2-1) positive integers.
pub fn complete_graph_seeds(g: u32, k: u32) -> Vec<u32> {
    let g = g as u64;
    let k = k as u64;
    let d = k * k - 1;
    let mut seeds = Vec::new();
    for r in 1..=k {
        let an = r * (k * g - 1);
        let bn = r * (g - k);
        if an.is_multiple_of(d) && bn.is_multiple_of(d) {
            let a = an / d;
            let b = bn / d;
            if a > 0 && a < g && b > 0 {
                seeds.push(r as u32);
            }
        }
    }
    seeds
}

/// Direct numeral-level scan for a two-digit (g,k)-reverse multiple for
/// any k; independent of the graph machinery.
pub fn two_digit_multiple_exists(g: u32) -> bool {
    for k in 2..g {
        for b in 1..g {
            for a in 0..g {
                // (b,a) reversed is (a,b): k(bg+a) = ag+b, and the reversal
                // must not gain a digit, so a != 0.
                if a == 0 {
                    continue;
                }
                let n = (b * g + a) as u64;
                if k as u64 * n == (a * g + b) as u64 {
                    return true;
                }
            }
        }
    }
    false
}

fn is_composite(n: u32) -> bool {
    if n < 4 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .any(|d| n.is_multiple_of(d))
}

/// The exact labeled 1089 graph predicted for (g,k) with b = g/(k+1):
/// node and edge sets (from, to, left, right) including the start edge.
fn expected_1089_edges(g: u32, k: u32) -> Option<Vec<(NodeId, NodeId, u32, u32)>> {
    if !g.is_multiple_of(k + 1) {
        return None;
    }
    let b = g / (k + 1);
    let z = NodeId::internal(0, 0);
    let first = NodeId::internal(0, k - 1);
    let mid = NodeId::internal(k - 1, k - 1);
    let last = NodeId::internal(k - 1, 0);
    Some(vec![
        (NodeId::start(), first, b, k * b),
        (z, z, 0, 0),
        (z, first, b, k * b),
        (first, mid, b - 1, k * b - 1),
        (mid, mid, g - 1, g - 1),
        (mid, last, k * b - 1, b - 1),
        (last, z, k * b, b),
    ])
}

pub fn audit_cell(g: u32, k: u32, enum_horizon: usize) -> Result<CellAudit> {
    let mut findings = Vec::new();
    let Some((young, _)) = build_young_graph(g, k)? else {
        return Ok(CellAudit {
            g,
            k,
            exists: false,
            young: None,
            family: None,
            findings,
        });
    };
    let mut push = |check: &str, detail: String| {
        findings.push(Finding {
            check: check.to_string(),
            g,
            k,
            detail,
        });
    };

    let report = young.validate();
    if !report.passed() {
        push("structural", format!("{:?}", report.first()));
    }

    let family = classify(&young);

    // The divisor rule: 1089 graph iff (k+1) | g; and when it is, the
    // labels come from the b-replacement with b = g/(k+1).
    let divides = g.is_multiple_of(k + 1);
    let is_1089 = family == FamilyLabel::Graph1089;
    if is_1089 != divides {
        push(
            "divisor-rule",
            format!("1089-classified={} but (k+1)|g={}", is_1089, divides),
        );
    }
    if is_1089 && divides {
        let expected = expected_1089_edges(g, k).expect("divisibility checked");
        let mut actual: Vec<(NodeId, NodeId, u32, u32)> = young
            .edges()
            .iter()
            .map(|e| {
                (
                    young.nodes()[e.from],
                    young.nodes()[e.to],
                    e.label_left,
                    e.label_right,
                )
            })
            .collect();
        let mut expected = expected;
        expected.sort();
        actual.sort();
        if expected != actual {
            push(
                "b-replacement-labels",
                "1089 labels differ from the b-replacement".to_string(),
            );
        }
    }

    // Seed count: complete K_m iff exactly m-1 valid seeds; the labels
    // are then i*r0 for the smallest seed r0.
    let seeds = complete_graph_seeds(g, k);
    match &family {
        FamilyLabel::Complete(m) => {
            if seeds.len() != m - 1 {
                push("seed-count", format!("K{} but {} seeds", m, seeds.len()));
            } else {
                let r0 = seeds[0];
                let mut labels: Vec<u32> = young.nodes().iter().skip(1).map(|n| n.left).collect();
                labels.sort_unstable();
                let expect: Vec<u32> = (0..*m as u32).map(|i| i * r0).collect();
                if labels != expect {
                    push(
                        "seed-labels",
                        format!("labels {:?} != {:?}", labels, expect),
                    );
                }
            }
        }
        _ => {
            if !seeds.is_empty() {
                push(
                    "seed-count",
                    format!("non-complete graph with seeds {:?}", seeds),
                );
            }
        }
    }

    // Diagonal seed: a diagonal node next to the start (equivalently a
    // two-digit reverse multiple) forces the complete graph, and
    // conversely. The statement is about start-successors: every 1089
    // graph contains the diagonal node [k-1,k-1] without being complete.
    let diagonal_seed = young
        .out_edge_indices(0)
        .iter()
        .any(|&e| young.nodes()[young.edges()[e].to].is_diagonal());
    if diagonal_seed != matches!(family, FamilyLabel::Complete(_)) {
        push(
            "diagonal-seed",
            format!(
                "diagonal start-successor={} family={}",
                diagonal_seed, family
            ),
        );
    }
    // All-diagonal <=> complete, both ways; the mirror involution fixes
    // a graph pointwise exactly in this case.
    let all_diagonal = young.nodes().iter().skip(1).all(|n| n.is_diagonal());
    if all_diagonal != matches!(family, FamilyLabel::Complete(_)) {
        push(
            "all-diagonal",
            format!("all-diagonal={} family={}", all_diagonal, family),
        );
    }

    // Family generating functions: K_m gives (m-1)x^2(1+x)/(1-mx^2),
    // Z_m gives x^(m+1)(1+x)(1-x+x^m)/(1-x^2-x^(2m)).
    match &family {
        FamilyLabel::Complete(m) => {
            let c = closed_c(&young)?;
            let num = IntPolynomial::from_i64(&[*m as i64 - 1, *m as i64 - 1]).shift(2);
            let den = IntPolynomial::from_i64(&[1, 0, -(*m as i64)]);
            let expect = RationalGF::new(num, den)?;
            if c != expect {
                push("complete-gf", format!("C = {} but expected {}", c, expect));
            }
        }
        FamilyLabel::Cyclic(m) => {
            let c = closed_c(&young)?;
            // x^{m+1} (1+x) (1 - x + x^m) / (1 - x^2 - x^{2m})
            let mut head = IntPolynomial::from_i64(&[1, -1]);
            head = &head + &IntPolynomial::monomial(1, *m);
            let num = (&IntPolynomial::from_i64(&[1, 1]) * &head).shift(m + 1);
            let mut den = IntPolynomial::from_i64(&[1, 0, -1]);
            den = &den - &IntPolynomial::monomial(1, 2 * m);
            let expect = RationalGF::new(num, den)?;
            if c != expect {
                push(
                    "cyclic-gf",
                    format!("Z{} has C = {} but expected {}", m, c, expect),
                );
            }
        }
        _ => {}
    }

    // Minimum edge count: m >= 3 nodes implies at least m+2 edges.
    let nodes = young.internal_node_count();
    let edges = young.internal_edge_count();
    if nodes >= 3 && edges < nodes + 2 {
        push(
            "min-edges",
            format!("{} nodes but only {} edges", nodes, edges),
        );
    }

    // First/last digit bound on enumerated multiples: a_0 + a_{n-1} <= g,
    // equality only when (k+1) | g.
    let sample = enumerate_multiples(&young, Limit::Count(enum_horizon))?;
    for m in &sample {
        let first = m.digits()[0] as u64;
        let last = *m.digits().last().unwrap() as u64;
        if first + last > g as u64 {
            push(
                "first-last-digit",
                format!(
                    "{}: a0 + a_(n-1) = {} > g",
                    m.tuple_notation(),
                    first + last
                ),
            );
        }
        if first + last == g as u64 && !divides {
            push(
                "first-last-equality",
                format!(
                    "{}: a0 + a_(n-1) = g but (k+1) does not divide g",
                    m.tuple_notation()
                ),
            );
        }
        match is_reverse_multiple(m, k)? {
            Verdict::Yes(_) => {}
            Verdict::No => push(
                "soundness",
                format!("{} failed re-check", m.tuple_notation()),
            ),
        }
        // (k-1) * digit sum = 0 (mod g-1); hence N is divisible by
        // (g-1)/gcd(k-1,g-1) and never prime. The unqualified "divisible
        // by g-1" only holds when gcd(k-1,g-1) = 1; (1,4)_11 shows why.
        let modulus = (g - 1) as u64;
        if !((k as u64 - 1) * m.digit_sum()).is_multiple_of(modulus) {
            push(
                "digit-sum",
                format!(
                    "{}: (k-1) * digit sum not divisible by g-1",
                    m.tuple_notation()
                ),
            );
        }
        let forced = modulus / modulus.gcd(&(k as u64 - 1));
        debug_assert!(forced >= 2);
        if (m.to_biguint() % BigUint::from(forced)) != BigUint::zero() {
            push(
                "divisibility",
                format!(
                    "{} not divisible by (g-1)/gcd(k-1,g-1) = {}",
                    m.tuple_notation(),
                    forced
                ),
            );
        }
    }

    Ok(CellAudit {
        g,
        k,
        exists: true,
        young: Some(young),
        family: Some(family),
        findings,
    })
}

fn closed_c(young: &YoungGraph) -> Result<RationalGF> {
    match generating_functions_with_budget(young, usize::MAX)? {
        GfOutcome::Closed(gfs) => Ok(gfs.c),
        GfOutcome::SeriesOnly { .. } => unreachable!("unbounded budget"),
    }
}

/// Cross-cell reductions: first occurrences, the two-digit criterion, and
/// the open-question isomorphism study. Deterministic for a fixed cell
/// order regardless of how the cells were computed.
pub fn audit_finalize(g_max: u32, mut cell_audits: Vec<CellAudit>) -> Result<AuditReport> {
    cell_audits.sort_by_key(|c| (c.g, c.k));
    let mut findings: Vec<Finding> = Vec::new();
    let mut k_first: BTreeMap<usize, (u32, u32)> = BTreeMap::new();
    let mut z_first: BTreeMap<usize, (u32, u32)> = BTreeMap::new();
    let mut young_graphs = 0usize;
    for cell in &cell_audits {
        findings.extend(cell.findings.iter().cloned());
        if !cell.exists {
            continue;
        }
        young_graphs += 1;
        match cell.family.as_ref() {
            Some(FamilyLabel::Complete(m)) => {
                k_first.entry(*m).or_insert((cell.g, cell.k));
                if *m == 2 {
                    z_first.entry(1).or_insert((cell.g, cell.k));
                }
            }
            Some(FamilyLabel::Cyclic(m)) => {
                z_first.entry(*m).or_insert((cell.g, cell.k));
            }
            _ => {}
        }
    }

    // Two-digit criterion: for g >= 4 a two-digit multiple exists for
    // some k iff g+1 is composite.
    for g in 4..=g_max {
        let found = two_digit_multiple_exists(g);
        let composite = is_composite(g + 1);
        if found != composite {
            findings.push(Finding {
                check: "two-digit-criterion".to_string(),
                g,
                k: 0,
                detail: format!(
                    "two-digit multiple exists={} composite(g+1)={}",
                    found, composite
                ),
            });
        }
    }

    // Open question (i): bucket Young graphs by coarse invariants, split
    // each bucket into plain-digraph classes and pivot-colored classes,
    // and report any plain class that splits further under pivots.
    let mut buckets: BTreeMap<(usize, usize), Vec<&CellAudit>> = BTreeMap::new();
    for cell in &cell_audits {
        if let Some(young) = &cell.young {
            let key = (young.internal_node_count(), young.internal_edge_count());
            if key.0 <= DEFAULT_ISO_NODE_CAP {
                buckets.entry(key).or_default().push(cell);
            }
        }
    }
    let mut iso_question_pairs = Vec::new();
    for (_, bucket) in buckets {
        // plain classes: representatives by plain-digraph isomorphism
        let mut plain_classes: Vec<(Skeleton, Vec<&CellAudit>)> = Vec::new();
        for cell in bucket {
            let skel = Skeleton::of(cell.young.as_ref().unwrap());
            let plain = skel.without_pivots();
            match plain_classes
                .iter_mut()
                .find(|(rep, _)| skeleton_iso(rep, &plain, usize::MAX) == IsoOutcome::Isomorphic)
            {
                Some((_, members)) => members.push(cell),
                None => plain_classes.push((plain, vec![cell])),
            }
        }
        for (_, members) in plain_classes {
            if members.len() < 2 {
                continue;
            }
            // split by pivot-colored isomorphism
            let mut color_classes: Vec<(Skeleton, (u32, u32))> = Vec::new();
            for cell in &members {
                let skel = Skeleton::of(cell.young.as_ref().unwrap());
                if !color_classes
                    .iter()
                    .any(|(rep, _)| skeleton_iso(rep, &skel, usize::MAX) == IsoOutcome::Isomorphic)
                {
                    color_classes.push((skel, (cell.g, cell.k)));
                }
            }
            if color_classes.len() > 1 {
                let cells: Vec<String> = color_classes
                    .iter()
                    .map(|(_, (g, k))| format!("({},{})", g, k))
                    .collect();
                iso_question_pairs.push(cells.join(" vs "));
            }
        }
    }

    Ok(AuditReport {
        g_max,
        cells_scanned: cell_audits.len(),
        young_graphs,
        findings,
        k_first: k_first.into_iter().map(|(m, (g, k))| (m, g, k)).collect(),
        z_first: z_first.into_iter().map(|(m, (g, k))| (m, g, k)).collect(),
        iso_question_pairs,
    })
}

/// Serial driver over all cells up to g_max. Callers that want to spread
/// the pure per-cell work across threads can map [`audit_cell`] over
/// [`cells`] themselves and feed [`audit_finalize`].
pub fn audit_conjectures(g_max: u32) -> Result<AuditReport> {
    let audits: Result<Vec<CellAudit>> = cells(g_max)
        .into_iter()
        .map(|(g, k)| audit_cell(g, k, 16))
        .collect();
    audit_finalize(g_max, audits?)
}
