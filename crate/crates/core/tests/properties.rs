mod common;

use proptest::prelude::*;

use common::*;
use wedgehom::complex::{independence_complex, SimplicialComplex};
use wedgehom::graph::{disjoint_union, Graph};
use wedgehom::homology::{
    boundary_matrices, default_budget, is_collapsible, profile_of_type, reduced_homology,
    Coefficients, HomologyProfile,
};
use wedgehom::predictor::{ht_join, HomotopyType};
use wedgehom::reduction::{apply_fold, find_fold, reduce_fully};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
}

fn homology(k: &SimplicialComplex) -> HomologyProfile {
    reduced_homology(k, Coefficients::Integers).unwrap()
}

fn small_types() -> impl Strategy<Value = HomotopyType> {
    prop_oneof![
        Just(HomotopyType::Contractible),
        Just(HomotopyType::JoinIdentity),
        proptest::collection::vec(0u32..4, 1..4).prop_map(HomotopyType::wedge),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_preserves_homology(g in graph_strategy(11)) {
        if let Some((v, w)) = find_fold(&g) {
            let before = homology(&independence_complex(&g).unwrap());
            let after = homology(&independence_complex(&apply_fold(&g, v, w).unwrap()).unwrap());
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn reduction_trace_replays_and_keeps_homology(g in graph_strategy(11)) {
        let t = reduce_fully(&g);
        prop_assert!(t.replay(&g));
        let ty = t.homotopy_type();
        if !ty.is_unknown() {
            let observed = homology(&independence_complex(&g).unwrap());
            prop_assert!(observed.same_homology(&profile_of_type(&ty).unwrap()));
        }
    }

    #[test]
    fn disjoint_union_is_join(g1 in graph_strategy(6), g2 in graph_strategy(6)) {
        let lhs = independence_complex(&disjoint_union(&g1, &g2).unwrap()).unwrap();
        let rhs = independence_complex(&g1).unwrap().join(&independence_complex(&g2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn join_betti_is_convolution(g1 in graph_strategy(7), g2 in graph_strategy(7)) {
        let k = independence_complex(&g1).unwrap();
        let l = independence_complex(&g2).unwrap();
        let joined = homology(&k.join(&l).unwrap());
        let expect = join_convolution(&homology(&k).reduced_betti, &homology(&l).reduced_betti);
        prop_assert_eq!(joined.reduced_betti, expect);
    }

    #[test]
    fn suspension_shifts(g in graph_strategy(9)) {
        let k = independence_complex(&g).unwrap();
        let h = homology(&k);
        let s = homology(&k.suspension().unwrap());
        let shifted: std::collections::BTreeMap<i32, u64> =
            h.reduced_betti.iter().map(|(&d, &b)| (d + 1, b)).collect();
        prop_assert_eq!(s.reduced_betti, shifted);
        prop_assert_eq!(s.torsion.len(), h.torsion.len());
    }

    #[test]
    fn operations_stay_closed(g in graph_strategy(9), v in 0usize..9) {
        let k = independence_complex(&g).unwrap();
        let v = v % g.vertex_count();
        prop_assert!(k.link(v).unwrap().is_downward_closed());
        prop_assert!(k.deletion(v).is_downward_closed());
        prop_assert!(k.suspension().unwrap().is_downward_closed());
        prop_assert!(k.cone().unwrap().is_downward_closed());
        prop_assert!(k.join(&k).unwrap().is_downward_closed());
        if let Some(&sigma) = k.maximal_faces().first() {
            prop_assert!(k.without_maximal_face(sigma).unwrap().is_downward_closed());
        }
        prop_assert!(boundary_matrices(&k).unwrap().is_chain_complex());
    }

    #[test]
    fn euler_characteristic_matches_betti(g in graph_strategy(11)) {
        let k = independence_complex(&g).unwrap();
        prop_assert_eq!(k.f_vector().reduced_euler_characteristic(), homology(&k).euler_characteristic());
    }

    #[test]
    fn collapsible_implies_acyclic(g in graph_strategy(10)) {
        let k = independence_complex(&g).unwrap();
        if is_collapsible(&k, default_budget(&k)).unwrap().certified() {
            prop_assert!(homology(&k).is_zero());
        }
    }

    #[test]
    fn type_join_matches_profile_convolution(t1 in small_types(), t2 in small_types()) {
        let p1 = profile_of_type(&t1).unwrap().reduced_betti;
        let p2 = profile_of_type(&t2).unwrap().reduced_betti;
        let joined = profile_of_type(&ht_join(&t1, &t2)).unwrap().reduced_betti;
        prop_assert_eq!(joined, join_convolution(&p1, &p2));
    }
}
