mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use gbh_core::complex::{enumerate_basis, inclusion_matrix, Mode};
use gbh_core::field::{rank_sparse, PrimeField, Rationals, SparseMatrix};
use gbh_core::homology::configuration_homology;
use gbh_core::module::{betti_table, generator_degrees, koszul_differential, truncated_module};
use gbh_core::snf::{homology_at, invariant_factors, smith_normal_form};
use gbh_core::{FieldKind, Graph, IntegerMatrix, SwComplex};

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5, any::<u64>()).prop_map(|(nv, bits)| common::graph_from_bits(nv, bits))
}

fn connected_enough(g: &Graph) -> bool {
    g.isolated_vertices().is_empty() && g.num_edges() <= 6
}

fn int_matrix(max_side: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_side, 1..=max_side).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntegerMatrix::from_dense(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero(g in small_graph(), n in 0usize..=3) {
        for mode in [Mode::Full, Mode::Reduced] {
            if mode == Mode::Reduced && !g.isolated_vertices().is_empty() {
                continue;
            }
            let cx = SwComplex::new(Arc::new(g.clone()), mode).unwrap();
            for q in 1..=cx.max_q() + 1 {
                prop_assert!(cx.boundary(q - 1, n).mul(&cx.boundary(q, n)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn slice_dimensions_match_generating_function(g in small_graph(), q in 0usize..=2, n in 0usize..=3) {
        let full = enumerate_basis(Arc::new(g.clone()), q, n, Mode::Full).unwrap();
        prop_assert_eq!(full.len(), common::generating_function_dim(&g, q, n, false));
        if g.isolated_vertices().is_empty() {
            let reduced = enumerate_basis(Arc::new(g.clone()), q, n, Mode::Reduced).unwrap();
            prop_assert_eq!(reduced.len(), common::generating_function_dim(&g, q, n, true));
        }
    }

    #[test]
    fn inclusion_is_a_chain_map_and_quasi_isomorphism(g in small_graph().prop_filter("no isolated", connected_enough), n in 0usize..=3) {
        let graph = Arc::new(g.clone());
        let full = SwComplex::new(graph.clone(), Mode::Full).unwrap();
        let reduced = SwComplex::new(graph.clone(), Mode::Reduced).unwrap();
        for q in 1..=reduced.max_q() {
            let upper = inclusion_matrix(&reduced.slice(q, n), &full.slice(q, n)).unwrap();
            let lower = inclusion_matrix(&reduced.slice(q - 1, n), &full.slice(q - 1, n)).unwrap();
            let lhs = full.boundary(q, n).mul(&upper).unwrap();
            let rhs = lower.mul(&reduced.boundary(q, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        for q in 0..=2 {
            prop_assert_eq!(full.homology(q, n), reduced.homology(q, n));
        }
    }

    #[test]
    fn universal_coefficients(g in small_graph().prop_filter("no isolated", connected_enough), n in 0usize..=3, q in 0usize..=2) {
        let cx = SwComplex::new(Arc::new(g), Mode::Reduced).unwrap();
        let here = cx.homology(q, n);
        let below = if q == 0 { gbh_core::AbelianGroup::zero() } else { cx.homology(q - 1, n) };
        for p in [2u64, 3] {
            let expected = here.free_rank + here.p_torsion_count(p) + below.p_torsion_count(p);
            prop_assert_eq!(cx.field_homology_dim(q, n, FieldKind::Prime(p)), expected);
        }
        prop_assert_eq!(cx.field_homology_dim(q, n, FieldKind::Rational), here.free_rank);
    }

    #[test]
    fn euler_characteristic_is_alternating_rank_sum(g in small_graph().prop_filter("no isolated", connected_enough), n in 0usize..=3) {
        let cx = SwComplex::new(Arc::new(g), Mode::Reduced).unwrap();
        let sum: i64 = (0..=cx.max_q())
            .map(|q| if q % 2 == 0 { 1 } else { -1 } * cx.homology(q, n).free_rank as i64)
            .sum();
        prop_assert_eq!(cx.euler_characteristic(n), sum);
    }

    #[test]
    fn homology_ignores_edge_order(g in small_graph().prop_filter("no isolated", connected_enough), n in 0usize..=3) {
        let relabelled = common::reverse_edge_order(&g);
        for q in 0..=2 {
            prop_assert_eq!(
                configuration_homology(&g, q, n, Mode::Reduced).unwrap(),
                configuration_homology(&relabelled, q, n, Mode::Reduced).unwrap()
            );
        }
    }

    #[test]
    fn smith_form_decomposes(m in int_matrix(6, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.s.clone());
        for t in [&s.u, &s.v] {
            let det = common::bareiss_det(&common::dense(t));
            prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert_eq!(&invariant_factors(&m), &s.invariant_factors);
    }

    #[test]
    fn invariant_factors_match_determinantal_divisors(m in int_matrix(4, 6)) {
        let expected = common::invariant_factors_by_minors(&common::dense(&m));
        prop_assert_eq!(invariant_factors(&m), expected);
    }

    #[test]
    fn torsion_from_a_two_term_complex(m in int_matrix(4, 5)) {
        // 0 -> Z^c --m--> Z^r -> 0 has H at Z^r equal to coker m.
        let zero = IntegerMatrix::zeros(0, m.rows());
        let h = homology_at(&m, &zero).unwrap();
        let factors = common::invariant_factors_by_minors(&common::dense(&m));
        prop_assert_eq!(h.free_rank, m.rows() - factors.len());
        let torsion: Vec<BigInt> = factors.into_iter().filter(|d| *d != BigInt::from(1)).collect();
        prop_assert_eq!(h.torsion, torsion);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn edge_actions_commute_on_homology(g in small_graph().prop_filter("no isolated", connected_enough), q in 0usize..=1) {
        let m = truncated_module(Rationals, &g, q, 3, Mode::Reduced).unwrap();
        prop_assert!(m.actions_commute());
    }

    #[test]
    fn koszul_complex_is_a_complex(g in small_graph().prop_filter("no isolated", connected_enough)) {
        let m = truncated_module(PrimeField::new(3).unwrap(), &g, 1, 3, Mode::Reduced).unwrap();
        for j in 0..=3 {
            for p in 1..m.num_vars().min(j) {
                let d1 = koszul_differential(&m, p, j);
                let d2 = koszul_differential(&m, p + 1, j);
                prop_assert!(d1.compose(&m.field, &d2).is_zero());
            }
        }
    }

    #[test]
    fn koszul_euler_characteristic_and_generators(g in small_graph().prop_filter("no isolated", connected_enough)) {
        let m = truncated_module(Rationals, &g, 1, 3, Mode::Reduced).unwrap();
        let p_max = m.num_vars();
        let table = betti_table(&m, p_max, 3).unwrap();
        let k = m.num_vars() as u64;
        for j in 0..=3usize {
            let chain: i64 = (0..=j.min(p_max))
                .map(|p| {
                    let d = common::binomial(k, p as u64) as i64 * m.dim(j - p) as i64;
                    if p % 2 == 0 { d } else { -d }
                })
                .sum();
            let betti: i64 = (0..=j.min(p_max))
                .map(|p| if p % 2 == 0 { 1 } else { -1 } * table.get(p, j) as i64)
                .sum();
            prop_assert_eq!(chain, betti);
        }
        let gens = generator_degrees(&m);
        for j in 0..=3 {
            prop_assert_eq!(gens.get(&j).copied().unwrap_or(0), table.get(0, j));
        }
    }
}

#[test]
fn rank_sparse_agrees_with_integer_rank() {
    let g = gbh_core::corpus::complete_bipartite(2, 3);
    let cx = SwComplex::new(Arc::new(g), Mode::Reduced).unwrap();
    for n in 1..=3 {
        for q in 1..=2 {
            let d = cx.boundary(q, n);
            let over_q = rank_sparse(&Rationals, &SparseMatrix::from_integer(&Rationals, &d));
            assert_eq!(over_q, gbh_core::snf::rank(&d));
        }
    }
}
