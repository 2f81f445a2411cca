//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Everything here pins published values; in the three spots where the
//! published account is internally inconsistent (the (24,13) pruning
//! counts, the sign of x^16 in the (24,17) generating function, and the
//! unqualified "divisible by g-1" claim), the tests assert the value
//! that independent routes confirm and print the discrepancy as a
//! finding.

use num_bigint::BigInt;
use rayon::prelude::*;

use revmul::classify::{
    audit_cell, audit_finalize, cells, classify, isomorphic, palindromic_factorization,
    FactorizationOutcome, FamilyLabel, IsoOutcome,
};
use revmul::enumerate::{enumerate_multiples, Limit};
use revmul::genfunc::{
    generating_functions_with_budget, path_counts, GfOutcome, IntPolynomial, RationalGF,
};
use revmul::graphcore::{build_h_graph, build_young_graph, YoungGraph};
use revmul::numeral::{brute_force_search, is_reverse_multiple, DigitVector, Verdict};

fn young(g: u32, k: u32) -> YoungGraph {
    build_young_graph(g, k)
        .unwrap()
        .unwrap_or_else(|| panic!("({g},{k}) Young graph should exist"))
        .0
}

fn closed_c(graph: &YoungGraph) -> RationalGF {
    match generating_functions_with_budget(graph, usize::MAX).unwrap() {
        GfOutcome::Closed(gfs) => gfs.c,
        GfOutcome::SeriesOnly { .. } => unreachable!("unbounded budget"),
    }
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(coeffs)
}

/// num = x^shift * (1+x) * head, den as given.
fn gf_form(shift: usize, head: &[i64], den: &[i64]) -> RationalGF {
    let num = (&poly(&[1, 1]) * &poly(head)).shift(shift);
    RationalGF::new(num, poly(den)).unwrap()
}

const TABLE_1: &[(u32, &[(u32, &str)])] = &[
    (3, &[(2, "a")]),
    (4, &[(3, "a")]),
    (5, &[(2, "b"), (4, "a")]),
    (6, &[(2, "a"), (5, "a")]),
    (7, &[(3, "b"), (6, "a")]),
    (8, &[(2, "b"), (3, "a"), (5, "h"), (7, "a")]),
    (9, &[(2, "a"), (4, "b"), (8, "a")]),
    (10, &[(4, "a"), (9, "a")]),
    (11, &[(2, "b"), (3, "c"), (5, "b"), (7, "i"), (10, "a")]),
    (12, &[(2, "a"), (3, "a"), (5, "a"), (11, "a")]),
    (13, &[(5, "b"), (6, "b"), (12, "a")]),
    (
        14,
        &[(2, "b"), (3, "j"), (4, "b"), (6, "a"), (9, "j"), (13, "a")],
    ),
    (
        15,
        &[(2, "a"), (3, "b"), (4, "a"), (7, "b"), (11, "h"), (14, "a")],
    ),
    (16, &[(3, "a"), (7, "a"), (15, "a")]),
    (
        17,
        &[
            (2, "b"),
            (4, "i"),
            (5, "c"),
            (8, "b"),
            (10, "i"),
            (11, "e"),
            (16, "a"),
        ],
    ),
    (18, &[(2, "a"), (5, "a"), (7, "f"), (8, "a"), (17, "a")]),
    (
        19,
        &[
            (3, "c"),
            (4, "d"),
            (6, "i"),
            (7, "b"),
            (9, "b"),
            (14, "m"),
            (18, "a"),
        ],
    ),
    (
        20,
        &[
            (2, "b"),
            (3, "a"),
            (4, "a"),
            (6, "b"),
            (9, "a"),
            (13, "j"),
            (19, "a"),
        ],
    ),
];

#[test]
fn criterion_1_table_reproduction() {
    for &(g, expected) in TABLE_1 {
        let mut found: Vec<(u32, String)> = Vec::new();
        for k in 2..g {
            if let Some((graph, _)) = build_young_graph(g, k).unwrap() {
                found.push((k, classify(&graph).table_letter()));
            }
        }
        let expected: Vec<(u32, String)> =
            expected.iter().map(|&(k, l)| (k, l.to_string())).collect();
        assert_eq!(found, expected, "row g = {}", g);
    }
    println!("ACCEPTANCE 1 (survey --max-g 20 reproduces the g<=20 table exactly): PASS");
}

#[test]
fn criterion_2_generating_function_regressions() {
    let checks: &[(u32, u32, RationalGF)] = &[
        (10, 9, gf_form(4, &[1], &[1, 0, -1, 0, -1])),
        (5, 2, gf_form(2, &[1], &[1, 0, -2])),
        (8, 5, gf_form(4, &[1], &[1, 0, -2])),
        (15, 11, gf_form(4, &[1], &[1, 0, -2])),
        (11, 7, gf_form(3, &[1], &[1, 0, -2])),
        (14, 3, gf_form(5, &[1], &[1, 0, -1, 0, -1])),
        (
            19,
            14,
            gf_form(6, &[1, -1, 0, 0, 1], &[1, 0, -1, 0, 0, 0, 0, 0, -1]),
        ),
        (24, 13, gf_form(9, &[1], &[1, 0, -1, 0, 0, 0, -1])),
        // The printed form ends -x^16; path counting on both the pruned
        // and unpruned graphs shows +x^16 (series diverge at t = 28).
        (
            24,
            17,
            gf_form(
                12,
                &[1],
                &[1, 0, -1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, -1, 0, 1],
            ),
        ),
        (
            40,
            13,
            gf_form(
                5,
                &[1, 0, -1, 0, 1, 0, 2],
                &[1, 0, -1, 0, 0, 0, 0, 0, -1, 0, -2],
            ),
        ),
    ];
    for (g, k, expected) in checks {
        let c = closed_c(&young(*g, *k));
        assert_eq!(&c, expected, "C(x) for ({},{})", g, k);
    }
    println!("  note: (24,17) denominator asserted with +x^16; the printed -x^16 fails path counting at t=28");

    // Every complete graph K_m with g <= 40 has C = (m-1) x^2 (1+x) / (1 - m x^2).
    let mut complete_cells = 0;
    for g in 3..=40u32 {
        for k in 2..g {
            let Some((graph, _)) = build_young_graph(g, k).unwrap() else {
                continue;
            };
            if let FamilyLabel::Complete(m) = classify(&graph) {
                let expect = RationalGF::new(
                    poly(&[m as i64 - 1, m as i64 - 1]).shift(2),
                    poly(&[1, 0, -(m as i64)]),
                )
                .unwrap();
                assert_eq!(closed_c(&graph), expect, "K{} at ({},{})", m, g, k);
                complete_cells += 1;
            }
        }
    }
    assert!(
        complete_cells >= 20,
        "expected many complete cells, saw {complete_cells}"
    );

    // Base-10 total: C(10,4) + C(10,9) = 2 x^4 (1+x) / (1 - x^2 - x^4).
    let total = closed_c(&young(10, 4))
        .add(&closed_c(&young(10, 9)))
        .unwrap();
    let expect = RationalGF::new(poly(&[2, 2]).shift(4), poly(&[1, 0, -1, 0, -1])).unwrap();
    assert_eq!(total, expect);

    // Isomorphic Young graphs share a generating function: every family
    // class among g <= 20 is constant in C.
    let mut by_family: std::collections::HashMap<String, (u32, u32, RationalGF)> =
        std::collections::HashMap::new();
    for (g, k) in cells(20) {
        let Some((graph, _)) = build_young_graph(g, k).unwrap() else {
            continue;
        };
        let family = classify(&graph);
        // The stable signature behind Other is not a complete canonical
        // form, so only the named classes assert equality.
        if matches!(family, FamilyLabel::Other(_)) {
            continue;
        }
        let family = family.to_string();
        let c = closed_c(&graph);
        match by_family.get(&family) {
            Some((g0, k0, c0)) => {
                assert_eq!(
                    &c, c0,
                    "family {} differs between ({},{}) and ({},{})",
                    family, g0, k0, g, k
                )
            }
            None => {
                by_family.insert(family, (g, k, c));
            }
        }
    }
    println!("ACCEPTANCE 2 (generating-function regressions, exact symbolic equality): PASS");
}

fn fibonacci(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::from(0), BigInt::from(1)];
    while f.len() <= n {
        let next = &f[f.len() - 1] + &f[f.len() - 2];
        f.push(next);
    }
    f
}

#[test]
fn criterion_3_series_coefficients() {
    let c = closed_c(&young(10, 9));
    let series = c.series(41);
    let expect: Vec<BigInt> = [1i64, 1, 1, 1, 2, 2, 3, 3, 5, 5]
        .iter()
        .map(|&v| v.into())
        .collect();
    assert_eq!(&series[4..14], &expect[..]);
    // Fibonacci repeat law c_t = F_{floor(t/2) - 1} for t >= 4.
    let fib = fibonacci(25);
    for t in 4..=40 {
        assert_eq!(series[t], fib[t / 2 - 1], "c_{}", t);
    }

    let c = closed_c(&young(19, 14));
    let series = c.series(41);
    assert_eq!(series[6], BigInt::from(1));
    for t in 7..10 {
        assert_eq!(series[t], BigInt::from(0), "c_{}", t);
    }
    // c_t = c_{t-2} + c_{t-8} for t > 11.
    for t in 12..=40 {
        let expect = &series[t - 2] + &series[t - 8];
        assert_eq!(series[t], expect, "recurrence at t = {}", t);
    }
    println!("ACCEPTANCE 3 (series coefficients and recurrences): PASS");
}

#[test]
fn criterion_4_enumeration_goldens() {
    let values = |g, k, count| -> Vec<u64> {
        enumerate_multiples(&young(g, k), Limit::Count(count))
            .unwrap()
            .iter()
            .map(|m| m.value_u64().unwrap())
            .collect()
    };
    assert_eq!(
        values(10, 4, 8),
        vec![2178, 21978, 219978, 2199978, 21782178, 21999978, 217802178, 219999978]
    );
    assert_eq!(
        values(10, 9, 8),
        vec![1089, 10989, 109989, 1099989, 10891089, 10999989, 108901089, 109999989]
    );

    // The four worked (8,5) examples with their exact carry tableaux
    // (left to right, as printed in the worked multiplications).
    let octal_examples: &[(&str, &[u32])] = &[
        ("(1,0,2,5,1,5)_8", &[0, 0, 1, 3, 1, 3, 0]),
        ("(1,1,1,6,5)_8", &[0, 0, 1, 4, 3, 0]),
        ("(1,1,2,7,6,6,5)_8", &[0, 0, 1, 4, 4, 4, 3, 0]),
        (
            "(1,1,2,6,6,5,0,1,1,2,6,6,5)_8",
            &[0, 0, 1, 4, 4, 3, 0, 0, 0, 1, 4, 4, 3, 0],
        ),
    ];
    let emitted = enumerate_multiples(&young(8, 5), Limit::MaxDigits(13)).unwrap();
    for (tuple, carries) in octal_examples {
        let n = DigitVector::parse_tuple(tuple).unwrap();
        assert!(emitted.contains(&n), "{tuple} missing from the enumeration");
        match is_reverse_multiple(&n, 5).unwrap() {
            Verdict::Yes(c) => assert_eq!(&c.left_to_right(), carries, "{tuple}"),
            Verdict::No => panic!("{tuple} must be a reverse multiple"),
        }
    }

    let first = enumerate_multiples(&young(24, 13), Limit::Count(1)).unwrap();
    assert_eq!(first[0].tuple_notation(), "(1,0,9,16,18,1,6,5,13)_24");
    let first = enumerate_multiples(&young(11, 7), Limit::Count(1)).unwrap();
    assert_eq!(first[0].tuple_notation(), "(1,1,8)_11");
    println!("ACCEPTANCE 4 (enumeration goldens with carry tableaux): PASS");
}

#[test]
fn criterion_5_graph_size_goldens() {
    let (y85, s85) = build_young_graph(8, 5).unwrap().unwrap();
    assert_eq!(
        (y85.internal_node_count(), y85.internal_edge_count()),
        (8, 16)
    );
    assert_eq!((s85.removed_nodes, s85.removed_edges), (0, 0));

    let h = build_h_graph(24, 13).unwrap();
    assert_eq!((h.internal_node_count(), h.internal_edge_count()), (24, 36));
    let (y, s) = h.prune().unwrap();
    // Published prose says 16 nodes remain; its own pivot list and
    // generating function require 18 (the walk for the 10-digit multiple
    // passes [9,7]). Edges match the published 26 exactly.
    assert_eq!(s.removed_nodes, 6);
    assert_eq!(s.removed_edges, 10);
    assert_eq!((y.internal_node_count(), y.internal_edge_count()), (18, 26));
    println!(
        "  note: (24,13) pruning keeps 18 nodes, not the published 16; [9,7]/[7,9] lie on the c_10 walk"
    );

    let (y, _) = build_young_graph(40, 13).unwrap().unwrap();
    assert_eq!((y.internal_node_count(), y.internal_edge_count()), (15, 22));
    let (y, _) = build_young_graph(24, 17).unwrap().unwrap();
    assert_eq!((y.internal_node_count(), y.internal_edge_count()), (26, 34));

    // The two largest carry graphs up to g = 100. The published counts
    // match the internal convention exactly (start node and its edges
    // excluded), so the permitted +-1 tolerance goes unused.
    let h = build_h_graph(58, 45).unwrap();
    assert_eq!(
        (h.internal_node_count(), h.internal_edge_count()),
        (588, 640)
    );
    let h = build_h_graph(99, 68).unwrap();
    assert_eq!(
        (h.internal_node_count(), h.internal_edge_count()),
        (784, 848)
    );
    println!("  note: published H-graph sizes matched with the start node excluded");

    assert!(build_young_graph(12, 7).unwrap().is_none());

    let h = build_h_graph(8, 3).unwrap();
    let (y83, s83) = h.prune().unwrap();
    assert_eq!((s83.removed_nodes, s83.removed_edges), (2, 5));
    assert_eq!(isomorphic(&y83, &young(10, 4)), IsoOutcome::Isomorphic);
    assert_eq!(classify(&y83), FamilyLabel::Graph1089);
    println!("ACCEPTANCE 5 (graph-size goldens): PASS");
}

#[test]
fn criterion_6_oracle_equivalence() {
    // Exhaustive scan agrees with path enumeration for every (g,k), g <= 12.
    let cells_small: Vec<(u32, u32)> = cells(12);
    cells_small.par_iter().for_each(|&(g, k)| {
        let brute = brute_force_search(g, k, 6).unwrap();
        match build_young_graph(g, k).unwrap() {
            None => assert!(
                brute.is_empty(),
                "({g},{k}): oracle found multiples, graph did not"
            ),
            Some((graph, _)) => {
                let enumerated = enumerate_multiples(&graph, Limit::MaxDigits(6)).unwrap();
                if enumerated.is_empty() {
                    // One-sided caveat: existence with nothing in 6 digits
                    // must mean the shortest multiple is longer.
                    let first = enumerate_multiples(&graph, Limit::Count(1)).unwrap();
                    assert!(first[0].len() > 6, "({g},{k})");
                    assert!(brute.is_empty(), "({g},{k})");
                } else {
                    assert_eq!(enumerated, brute, "({g},{k})");
                }
            }
        }
    });

    // The symbolic series equals integer path counting for every (g,k)
    // with g <= 20, t <= 16; and the number of emitted t-digit multiples
    // matches the series coefficient c_t.
    cells(20).par_iter().for_each(|&(g, k)| {
        if let Some((graph, _)) = build_young_graph(g, k).unwrap() {
            let symbolic = closed_c(&graph).series(17);
            let counted = path_counts(&graph, 16);
            assert_eq!(symbolic, counted, "({g},{k})");
            let emitted = enumerate_multiples(&graph, Limit::MaxDigits(12)).unwrap();
            for t in 0..=12usize {
                let count = emitted.iter().filter(|m| m.len() == t).count();
                assert_eq!(BigInt::from(count), symbolic[t], "({g},{k}) c_{t}");
            }
        }
    });
    println!("ACCEPTANCE 6 (exhaustive oracle and path-count cross-checks): PASS");
}

#[test]
fn criterion_7_invariant_suites() {
    let all: Vec<(u32, u32)> = cells(40);
    let literal_digit_sum_counterexamples: Vec<String> = all
        .par_iter()
        .map(|&(g, k)| {
            let Some((graph, _)) = build_young_graph(g, k).unwrap() else {
                return Vec::new();
            };
            let report = graph.validate();
            assert!(report.passed(), "({g},{k}): {:?}", report.first());
            let mut counterexamples = Vec::new();
            let multiples = enumerate_multiples(&graph, Limit::Count(16)).unwrap();
            for m in &multiples {
                match is_reverse_multiple(m, k).unwrap() {
                    Verdict::Yes(c) => {
                        // A genuine witness always carries into the second
                        // column, and the chain closes with zero.
                        assert!(c.get(0) > 0, "({g},{k}): {}", m.tuple_notation());
                        assert_eq!(c.get(m.len() as isize - 1), 0);
                    }
                    Verdict::No => panic!("({g},{k}): {} not a multiple", m.tuple_notation()),
                }
                // Corrected divisibility: (k-1) * digit sum = 0 mod g-1.
                let modulus = (g - 1) as u64;
                assert_eq!(
                    (k as u64 - 1) * m.digit_sum() % modulus,
                    0,
                    "({g},{k}): {}",
                    m.tuple_notation()
                );
                // The literal digit-sum form is implied when k-1 and g-1
                // are coprime; collect the counterexamples otherwise.
                if m.digit_sum() % modulus != 0 {
                    assert_ne!(
                        num_integer::gcd(k as u64 - 1, modulus),
                        1,
                        "({g},{k}): {} breaks the digit-sum claim despite coprimality",
                        m.tuple_notation()
                    );
                    counterexamples.push(format!("({g},{k}) {}", m.tuple_notation()));
                }
                // Small enough values admit a direct compositeness
                // check; no reverse multiple is ever prime.
                if let Some(v) = m.value_u64() {
                    if v < 10_000_000_000 {
                        let composite = (2..).take_while(|d| d * d <= v).any(|d| v % d == 0);
                        assert!(composite, "({g},{k}): {} is prime", v);
                    }
                }
                // First/last digit bound: a_0 + a_{n-1} <= g, with
                // equality only when (k+1) | g.
                let first = m.digits()[0] as u64 + *m.digits().last().unwrap() as u64;
                assert!(first <= g as u64, "({g},{k}): {}", m.tuple_notation());
                if first == g as u64 {
                    assert_eq!(g % (k + 1), 0, "({g},{k}): {}", m.tuple_notation());
                }
            }
            counterexamples
        })
        .flatten()
        .collect();
    assert!(
        !literal_digit_sum_counterexamples.is_empty(),
        "(1,4)_11 should witness that digit sums need not be divisible by g-1"
    );
    println!(
        "  note: digit sum = 0 (mod g-1) literally fails at e.g. {}; the provable form is (k-1)*sum = 0",
        literal_digit_sum_counterexamples[0]
    );
    println!("ACCEPTANCE 7 (structural validators and per-multiple invariants, g <= 40): PASS");
}

#[test]
fn criterion_8_conjecture_audit() {
    let audits: Vec<_> = cells(100)
        .into_par_iter()
        .map(|(g, k)| audit_cell(g, k, 16).unwrap())
        .collect();
    let report = audit_finalize(100, audits).unwrap();
    assert!(
        report.findings.is_empty(),
        "counterexamples found (re-verify against criteria 1-7 before celebrating): {:#?}",
        report.findings
    );
    // First complete graphs at (m^2 + m - 1, m) for m <= 9.
    for m in 2..=9u32 {
        let expect = (m as usize, m * m + m - 1, m);
        assert!(
            report.k_first.contains(&expect),
            "K{} first occurrence, got {:?}",
            m,
            report.k_first
        );
    }
    // First cyclic graphs: the published list for Z_1 .. Z_9.
    let z_expected: &[(usize, u32, u32)] = &[
        (1, 5, 2),
        (2, 49, 16),
        (3, 17, 11),
        (4, 34, 11),
        (5, 18, 7),
        (6, 33, 14),
        (7, 49, 39),
        (8, 77, 46),
        (9, 63, 40),
    ];
    for expect in z_expected {
        assert!(
            report.z_first.contains(expect),
            "Z{} first occurrence, got {:?}",
            expect.0,
            report.z_first
        );
    }
    println!(
        "  open-question scan: {} digraph-isomorphic pairs with differing pivot structure",
        report.iso_question_pairs.len()
    );
    println!("ACCEPTANCE 8 (conjecture audit to g = 100, first occurrences): PASS");
}

#[test]
fn criterion_9_factorization_goldens() {
    let factor = |g: u32, k: u32| -> FactorizationOutcome {
        let graph = young(g, k);
        let multiples = enumerate_multiples(&graph, Limit::Count(48)).unwrap();
        palindromic_factorization(g, k, &multiples).unwrap()
    };

    let FactorizationOutcome::Found(f) = factor(10, 9) else {
        panic!("(10,9) must factor")
    };
    assert_eq!(f.gamma.value_u64(), Some(99));

    let FactorizationOutcome::Found(f) = factor(10, 4) else {
        panic!("(10,4) must factor")
    };
    assert_eq!(f.gamma.value_u64(), Some(198));
    let graph = young(10, 4);
    let betas: Vec<u64> = enumerate_multiples(&graph, Limit::Count(6))
        .unwrap()
        .iter()
        .map(|m| m.value_u64().unwrap() / 198)
        .collect();
    assert_eq!(betas, vec![11, 111, 1111, 11111, 110011, 111111]);

    let FactorizationOutcome::Found(f) = factor(18, 7) else {
        panic!("(18,7) must factor")
    };
    assert_eq!(f.gamma.tuple_notation(), "(1,17,3,5,12,13)_18");

    assert_eq!(factor(24, 17), FactorizationOutcome::NonPalindromic);
    assert_eq!(factor(40, 13), FactorizationOutcome::NonPalindromic);
    println!("ACCEPTANCE 9 (gamma-beta factorization goldens): PASS");
}
