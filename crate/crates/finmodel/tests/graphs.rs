use pathcheck_finmodel::construct::{
    binary_product, codiscrete, constant_displayed, coproduct, cotensor, discrete, opposite, product, tensor, total,
};
use pathcheck_finmodel::enumerate::{gen_graph, sample, Sampler};
use pathcheck_finmodel::{construct, enumerate_graphs, Args, ConstructionKind, CovLens, FinLens, FinRxGraph, ModelError};
use proptest::prelude::*;
use std::collections::HashSet;

/// Graphs with 1..=n vertices and multiplicity k, counted vertex by vertex:
/// each vertex picks a self-edge count in 1..=k and a loop among them, each
/// ordered pair of distinct vertices an edge count in 0..=k.
fn count_oracle(max_n: u32, k: u64) -> u64 {
    let loops: u64 = (1..=k).sum();
    (1..=max_n).map(|n| loops.pow(n) * (k + 1).pow(n * (n - 1))).sum()
}

fn key(g: &FinRxGraph) -> Vec<usize> {
    let n = g.n();
    let mut k = vec![n];
    k.extend((0..n * n).map(|i| g.edges(i / n, i % n)));
    k.extend((0..n).map(|x| g.rx(x)));
    k
}

fn g(n: usize, e: &[usize], rx: &[usize]) -> FinRxGraph {
    FinRxGraph::new(n, e.to_vec(), rx.to_vec()).unwrap()
}

#[test]
fn graph_counts_match_hand_enumeration() {
    assert_eq!(enumerate_graphs(1, 1).count(), 1);
    assert_eq!(enumerate_graphs(1, 2).count(), 3);
    // One vertex, plus two vertices with each cross pair 0 or 1.
    assert_eq!(enumerate_graphs(2, 1).count(), 1 + 4);
}

#[test]
fn graph_counts_match_formula() {
    for n in 1..=3 {
        for k in 1..=3 {
            if n == 3 && k == 3 {
                continue;
            }
            assert_eq!(enumerate_graphs(n, k).count() as u64, count_oracle(n as u32, k as u64), "bounds ({n}, {k})");
        }
    }
    assert_eq!(count_oracle(3, 2), 19767);
}

#[test]
fn enumeration_is_duplicate_free_and_canonical() {
    let keys: Vec<Vec<usize>> = enumerate_graphs(3, 2).map(|g| key(&g)).collect();
    let set: HashSet<&Vec<usize>> = keys.iter().collect();
    assert_eq!(set.len(), keys.len());
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "not in lexicographic order");
    assert_eq!(keys[0], vec![1, 1, 0]);
}

#[test]
fn univalence_examples() {
    assert!(discrete(2).is_univalent());
    assert!(!codiscrete(2).is_univalent());
    assert!(!g(1, &[2], &[0]).is_univalent());
    assert_eq!(g(1, &[2], &[0]).univalence_conditions(), [false; 5]);
    assert!(g(1, &[1], &[0]).is_univalent());
}

#[test]
fn invalid_graphs_are_rejected() {
    assert!(matches!(FinRxGraph::new(1, vec![0], vec![0]), Err(ModelError::Graph(_))));
    assert!(matches!(FinRxGraph::new(1, vec![2], vec![2]), Err(ModelError::Graph(_))));
    assert!(matches!(FinRxGraph::new(2, vec![1], vec![0]), Err(ModelError::Graph(_))));
}

#[test]
fn total_of_constant_displayed_is_binary_product() {
    for a in enumerate_graphs(2, 1) {
        for b in enumerate_graphs(2, 2).step_by(7) {
            assert_eq!(total(&constant_displayed(&a, &b)), binary_product(&a, &b));
        }
    }
}

#[test]
fn transport_lens_displays_the_coproduct() {
    let base = discrete(2);
    let fam = vec![discrete(1), discrete(2)];
    let lens = CovLens {
        push: vec![vec![0], vec![0, 1]],
        push_rx: vec![vec![0], vec![0, 0]],
        base,
        fam: fam.clone(),
    };
    lens.validate().unwrap();
    assert_eq!(total(&lens.display()), coproduct(&fam));
    let built = construct(ConstructionKind::DisplayCov, Args::Lens(FinLens::Cov(lens))).unwrap();
    match built {
        pathcheck_finmodel::Constructed::Disp(d) => assert_eq!(total(&d), coproduct(&fam)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn shape_mismatch_names_the_kind() {
    let err = construct(ConstructionKind::DisplayCov, Args::Size(2)).unwrap_err();
    assert!(err.to_string().starts_with("display-cov:"), "{err}");
    let err = construct(ConstructionKind::Opposite, Args::Size(2)).unwrap_err();
    assert!(err.to_string().starts_with("opposite:"), "{err}");
}

#[test]
fn codiscrete_univalent_only_on_propositions() {
    assert!(codiscrete(0).is_univalent());
    assert!(codiscrete(1).is_univalent());
    for n in 2..6 {
        assert!(!codiscrete(n).is_univalent());
    }
}

fn graph_strategy(max_n: usize, k: usize) -> impl Strategy<Value = FinRxGraph> {
    any::<u64>().prop_map(move |seed| {
        let mut s = Sampler::new(seed, 0);
        sample(&mut |c| gen_graph(c, 1, max_n, k), &mut s, 10).unwrap()
    })
}

proptest! {
    #[test]
    fn opposite_is_involutive(g in graph_strategy(4, 3)) {
        prop_assert_eq!(opposite(&opposite(&g)), g);
    }

    #[test]
    fn univalent_iff_discrete(g in graph_strategy(4, 2)) {
        let discrete = (0..g.n()).all(|x| (0..g.n()).all(|y| g.edges(x, y) == (x == y) as usize));
        prop_assert_eq!(g.is_univalent(), discrete);
        prop_assert_eq!(g.is_univalent(), opposite(&g).is_univalent());
    }

    #[test]
    fn edge_ids_index_the_edge_list(g in graph_strategy(4, 3)) {
        for (i, (x, y, p)) in g.edge_list().into_iter().enumerate() {
            prop_assert_eq!(g.edge_id(x, y, p), i);
        }
        prop_assert_eq!(g.edge_list().len(), g.edge_total());
    }

    #[test]
    fn product_and_coproduct_sizes(a in graph_strategy(3, 2), b in graph_strategy(3, 2), k in 0usize..3) {
        let fam = vec![a.clone(), b.clone()];
        prop_assert_eq!(product(&fam).n(), a.n() * b.n());
        prop_assert_eq!(coproduct(&fam).n(), a.n() + b.n());
        prop_assert_eq!(coproduct(&fam).edge_total(), a.edge_total() + b.edge_total());
        prop_assert_eq!(product(&fam).edge_total(), a.edge_total() * b.edge_total());
        prop_assert_eq!(tensor(k, &a).n(), k * a.n());
        prop_assert_eq!(cotensor(k, &a).n(), a.n().pow(k as u32));
    }

    #[test]
    fn binary_product_is_the_two_element_product(a in graph_strategy(3, 2), b in graph_strategy(3, 2)) {
        prop_assert_eq!(binary_product(&a, &b), product(&[a, b]));
    }

    #[test]
    fn graphs_serialize_round_trip(g in graph_strategy(3, 3)) {
        let s = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<FinRxGraph>(&s).unwrap(), g);
    }
}
