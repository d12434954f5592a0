mod common;

use proptest::prelude::*;

use gbh_core::blowup::{blow_up, verify_les, BlowupSequence};
use gbh_core::graph::VertexIx;
use gbh_core::{corpus, FieldKind, Graph};

fn graph_and_vertex() -> impl Strategy<Value = (Graph, String)> {
    (3usize..=5, any::<u64>(), any::<prop::sample::Index>()).prop_filter_map("isolated vertices", |(nv, bits, ix)| {
        let g = common::graph_from_bits(nv, bits);
        if !g.isolated_vertices().is_empty() || g.num_edges() > 6 {
            return None;
        }
        let v = g.vertex_ids()[ix.index(nv)].clone();
        Some((g, v))
    })
}

#[test]
fn corpus_blowups_keep_edges() {
    for (_, g) in corpus::standard() {
        for v in g.vertex_ids() {
            let b = blow_up(&g, v).unwrap();
            let mu = g.degree(g.vertex(v).unwrap());
            assert_eq!(b.result.num_edges(), g.num_edges());
            assert_eq!(b.result.num_vertices() + 1, g.num_vertices() + mu);
            for new in b.half_edge_vertex_map.values() {
                assert_eq!(b.result.degree(b.result.vertex(new).unwrap()), 1);
            }
            assert_eq!(b.difference_module().rank, mu - 1);
        }
    }
}

#[test]
fn triangle_blowup_is_a_path() {
    let b = blow_up(&corpus::cycle(3), "c0").unwrap();
    let degrees: Vec<usize> = (0..4).map(|v| b.result.degree(VertexIx(v))).collect();
    assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
    assert_eq!(b.result.girth(), None);
    let report = verify_les(&corpus::cycle(3), "c0", 1, 3, FieldKind::Rational).unwrap();
    assert!(report.passed);
    // H_1(C_3) is rank one in every weight >= 2 and the path has none.
    for s in report.segments.iter().filter(|s| s.q == 1 && s.n >= 2) {
        assert_eq!(s.homology[1], 1);
        assert_eq!(s.homology[0], 0);
    }
}

#[test]
fn report_serializes() {
    let report = verify_les(&corpus::star(3), "u", 1, 2, FieldKind::Prime(2)).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["field"], "F2");
    assert_eq!(json["passed"], true);
    assert!(json["ses"].as_array().unwrap().iter().all(|c| c["exact"] == true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ses_is_exact_and_les_balances((g, v) in graph_and_vertex()) {
        let report = verify_les(&g, &v, 2, 3, FieldKind::Rational).unwrap();
        prop_assert!(report.dimension_identity);
        prop_assert!(report.ses.iter().all(|c| c.exact), "{:?}", report.ses);
        prop_assert!(report.segments.iter().all(|s| s.consistent), "{:?}", report.segments);
        prop_assert!(report.alternating_sums.iter().all(|(_, a)| *a == 0));
    }

    #[test]
    fn projection_kills_inclusion((g, v) in graph_and_vertex(), q in 0usize..=2, n in 0usize..=3) {
        let seq = BlowupSequence::new(&g, &v).unwrap();
        let (inc, proj) = seq.ses_matrices(q, n);
        prop_assert!(proj.mul(&inc).unwrap().is_zero());
    }
}
