mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use gbh_core::blowup::star_example_regression;
use gbh_core::family::{
    betti_sequence, betti_tables, detect_polynomial, support_report, support_stabilization, FIGraphFamily,
    LinearPolynomial, StabilizationReport, StabilizationStatus,
};
use gbh_core::FieldKind;

#[test]
fn star_generator_count_is_quadratic() {
    let star = FIGraphFamily::star();
    let seq: Vec<i64> = betti_sequence(&star, 1, 0, 2, 3..=8, FieldKind::Rational)
        .unwrap()
        .into_iter()
        .map(|b| b as i64)
        .collect();
    let expected: Vec<i64> = (3..=8).map(|n| common::binomial(n - 1, 2) as i64).collect();
    assert_eq!(seq, expected);
    let report = detect_polynomial(&seq, 3, 2).unwrap();
    assert_eq!(report.status, StabilizationStatus::Stabilized);
    assert_eq!(report.stable_from, Some(3));
    assert_eq!(report.polynomial_text.as_deref(), Some("1/2*n^2 - 3/2*n + 1"));
    assert_eq!(report.holdout.len(), 3);
}

#[test]
fn star_relations_are_cubic_and_sit_in_degree_three() {
    let star = FIGraphFamily::star();
    let tables = betti_tables(&star, 1, 1, 5, 3..=8, FieldKind::Rational).unwrap();
    let rel: Vec<i64> = tables.iter().map(|(_, t)| t.get(1, 3) as i64).collect();
    let expected: Vec<i64> = (3..=8).map(|n| common::binomial(n - 1, 3) as i64).collect();
    assert_eq!(rel, expected);
    let fit = detect_polynomial(&rel, 3, 3).unwrap();
    assert_eq!(fit.status, StabilizationStatus::Stabilized);
    assert_eq!(fit.polynomial.unwrap().degree(), Some(3));

    let p0 = support_report(&tables, 1, 0);
    assert!(p0.constant_on_window);
    let p1 = support_report(&tables, 1, 1);
    assert_eq!(p1.status, StabilizationStatus::Stabilized);
    assert_eq!(p1.stable_from, Some(4));
    assert!(!p1.constant_on_window);
    for s in &p1.supports.unwrap()[1..] {
        assert_eq!(s.support, [3]);
    }
}

#[test]
fn star_kernel_is_generated_by_three_copies_in_weight_two() {
    let report = star_example_regression(4).unwrap();
    assert!(report.passed);
    for e in &report.entries {
        assert!(e.element_in_kernel && e.element_is_cycle && e.element_nonzero_in_homology);
        assert!(e.generated_from_three_copies);
        assert_eq!(e.kernel_generator_weights.keys().copied().collect::<Vec<_>>(), [2]);
        let k = e.n as u64;
        assert_eq!(e.kernel_generator_weights[&2] as u64, common::binomial(k - 1, 2));
    }
}

#[test]
fn bipartite_two_family_is_linear() {
    let fam = FIGraphFamily::complete_bipartite(2);
    assert_eq!(fam.edge_count_check(2..=6).unwrap(), LinearPolynomial { a: 2, b: 0 });
    let report = support_stabilization(&fam, 1, 0, 3..=7, 3, FieldKind::Prime(2)).unwrap();
    assert!(report.constant_on_window);
    let seq: Vec<i64> = betti_sequence(&fam, 1, 0, 1, 3..=7, FieldKind::Rational)
        .unwrap()
        .into_iter()
        .map(|b| b as i64)
        .collect();
    let fit = detect_polynomial(&seq, 3, 1).unwrap();
    assert_eq!(fit.polynomial_text.as_deref(), Some("n - 1"));
}

#[test]
fn report_json_shape() {
    let report = detect_polynomial(&[1, 3, 6, 10, 15], 3, 2).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["status"], "stabilized");
    assert_eq!(json["polynomial"], serde_json::json!(["1", "-3/2", "1/2"]));
    let back: StabilizationReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, report);
}

fn injection(n: usize, r: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=r).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |v| v[..n].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn detects_integer_polynomials(coeffs in proptest::collection::vec(-20i64..=20, 1..=4), start in 0usize..5) {
        let degree = coeffs.len() - 1;
        let seq: Vec<i64> = (0..degree + 4)
            .map(|i| {
                let n = (start + i) as i64;
                coeffs.iter().rev().fold(0, |acc, c| acc * n + c)
            })
            .collect();
        let report = detect_polynomial(&seq, start, degree).unwrap();
        prop_assert_eq!(report.status, StabilizationStatus::Stabilized);
        prop_assert_eq!(report.stable_from, Some(start));
        let poly = report.polynomial.unwrap();
        for (i, v) in seq.iter().enumerate() {
            let value = poly.eval((start + i) as i64);
            prop_assert!(value.is_integer());
            prop_assert_eq!(value.to_integer(), num_bigint::BigInt::from(*v));
        }
    }

    #[test]
    fn perturbed_prefix_is_skipped(c0 in -5i64..5, c1 in -5i64..5, bump in 1i64..7) {
        let mut seq: Vec<i64> = (0..7).map(|n| c0 + c1 * n).collect();
        seq[0] += bump;
        let report = detect_polynomial(&seq, 0, 1).unwrap();
        prop_assert_eq!(report.stable_from, Some(1));
        prop_assert!(!report.constant_on_window);
    }

    #[test]
    fn transitions_compose(m in 1usize..=3, f in injection(2, 3), g in injection(3, 4)) {
        let fam = FIGraphFamily::complete_bipartite(m);
        let gf: Vec<usize> = f.iter().map(|&i| g[i - 1]).collect();
        let direct = fam.transition(&gf, 4).unwrap();
        let composed = fam.transition(&f, 3).unwrap().then(&fam.transition(&g, 4).unwrap()).unwrap();
        prop_assert!(direct == composed);
        prop_assert!(direct.is_injective());
    }

    #[test]
    fn edge_counts_are_linear(m in 1usize..=4) {
        let fam = FIGraphFamily::complete_bipartite(m);
        prop_assert_eq!(fam.edge_count_check(0..=4).unwrap(), LinearPolynomial { a: m as i64, b: 0 });
        let counts: BTreeMap<usize, usize> = (0..=4).map(|n| (n, fam.evaluate(n).unwrap().num_vertices())).collect();
        for (n, v) in counts {
            prop_assert_eq!(v, m + n);
        }
    }
}
