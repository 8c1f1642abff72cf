use pathcheck_finmodel::construct::{codiscrete, constant_displayed, discrete, total_opposite};
use pathcheck_finmodel::enumerate::{gen_cov_lens, gen_disp, gen_graph, gen_univalent_graph, sample, Chooser, Sampler};
use pathcheck_finmodel::fibration::{fibration_roundtrip, lens_roundtrip};
use pathcheck_finmodel::gaunt::{bijection_exists, monotone_bijections};
use pathcheck_finmodel::{
    counterexample, ctrv_underlying_lens, is_cov_fibration, is_ctrv_fibration, underlying_lens, CovLens,
    FinDispRxGraph, FinRxGraph,
};
use proptest::prelude::*;

#[test]
fn counterexample_is_univalent_but_no_fibration() {
    let d = counterexample();
    assert_eq!(d.base(), &codiscrete(2));
    assert_eq!(d.fibs(), &[0, 1]);
    assert!(d.is_univalent());
    assert!(is_cov_fibration(&d).is_none());
    assert!(is_ctrv_fibration(&d).is_none());
    assert!(!d.base().is_univalent());
}

#[test]
fn counterexample_by_hand() {
    let d = FinDispRxGraph::new(codiscrete(2), vec![0, 1], |_, _, _, _, _| 1, |_, _| 0).unwrap();
    assert_eq!(d, counterexample());
    // The edge 1 -> 0 has no lift of the point over 1; dually 0 -> 1.
    assert_eq!(pathcheck_finmodel::fibration::cov_lifts(&d, (1, 0, 0), 0), vec![]);
    assert_eq!(pathcheck_finmodel::fibration::ctrv_lifts(&d, (0, 1, 0), 0), vec![]);
}

#[test]
fn identity_like_fibration_has_the_unique_lens() {
    let d = constant_displayed(&discrete(3), &discrete(1));
    let w = is_cov_fibration(&d).unwrap();
    w.validate(&d).unwrap();
    let l = underlying_lens(&d, &w).unwrap();
    assert_eq!(l.push, vec![vec![0]; 3]);
    assert_eq!(l.push_rx, vec![vec![0]; 3]);
    assert!(fibration_roundtrip(&d).unwrap().strict);
}

#[test]
fn gauntness_oracle() {
    for m in 0..=5 {
        for n in 0..=5 {
            let found = monotone_bijections(m, n);
            if m == n {
                assert_eq!(found, vec![(0..n).collect::<Vec<_>>()], "Fin {m} -> Fin {n}");
            } else {
                assert!(found.is_empty(), "Fin {m} -> Fin {n}");
            }
            assert_eq!(bijection_exists(m, n), m == n);
        }
    }
}

fn draw<T>(seed: u64, mut gen: impl FnMut(&mut dyn Chooser) -> Option<T>) -> T {
    sample(&mut gen, &mut Sampler::new(seed, 0), 1000).expect("generator produced an instance")
}

fn any_graph(c: &mut dyn Chooser) -> Option<FinRxGraph> {
    gen_graph(c, 1, 3, 2)
}

fn fam(c: &mut dyn Chooser) -> Option<FinRxGraph> {
    gen_graph(c, 0, 2, 2)
}

fn uni_fam(c: &mut dyn Chooser) -> Option<FinRxGraph> {
    gen_univalent_graph(c, 0, 2)
}

fn lens(seed: u64, univalent: bool) -> CovLens {
    draw(seed, |c| {
        let base = any_graph(c)?;
        if univalent {
            gen_cov_lens(c, &base, &uni_fam)
        } else {
            gen_cov_lens(c, &base, &fam)
        }
    })
}

proptest! {
    #[test]
    fn univalent_lens_displays_a_fibration(seed in any::<u64>()) {
        let l = lens(seed, true);
        let d = l.display();
        let w = is_cov_fibration(&d);
        prop_assert!(w.is_some());
        let l2 = underlying_lens(&d, &w.unwrap()).unwrap();
        prop_assert_eq!(&l2.push, &l.push);
        prop_assert!(lens_roundtrip(&l).is_ok());
    }

    #[test]
    fn constant_displayed_with_univalent_fibre_is_a_fibration(seed in any::<u64>(), k in 0usize..3) {
        let a = draw(seed, any_graph);
        let d = constant_displayed(&a, &discrete(k));
        prop_assert!(is_cov_fibration(&d).is_some());
        prop_assert!(is_ctrv_fibration(&d).is_some());
    }

    #[test]
    fn universal_pushforwards_iff_univalent(seed in any::<u64>()) {
        let l = lens(seed, seed % 2 == 0);
        prop_assert_eq!(l.has_universal_pushforwards(), l.components_univalent());
        prop_assert_eq!(is_cov_fibration(&l.display()).is_some(), l.components_univalent());
    }

    #[test]
    fn fibrations_round_trip(seed in any::<u64>()) {
        let d = draw(seed, |c| {
            let base = any_graph(c)?;
            gen_disp(c, &base, 2, 2, true)
        });
        if is_cov_fibration(&d).is_some() {
            prop_assert!(d.is_univalent());
            prop_assert!(fibration_roundtrip(&d).is_ok());
        }
        if let Some(w) = is_ctrv_fibration(&d) {
            prop_assert!(d.is_univalent());
            prop_assert!(ctrv_underlying_lens(&d, &w).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn total_opposite_swaps_variance(seed in any::<u64>()) {
        let d = draw(seed, |c| {
            let base = any_graph(c)?;
            gen_disp(c, &base, 2, 2, false)
        });
        prop_assert_eq!(is_cov_fibration(&d).is_some(), is_ctrv_fibration(&total_opposite(&d)).is_some());
        prop_assert_eq!(is_ctrv_fibration(&d).is_some(), is_cov_fibration(&total_opposite(&d)).is_some());
    }

    #[test]
    fn lens_upgrade_and_duality(seed in any::<u64>()) {
        let l = lens(seed, false);
        prop_assert_eq!(l.upgrade().display(), l.display());
        let t = l.total_opposite();
        prop_assert_eq!(t.display(), total_opposite(&l.display()));
        prop_assert_eq!(t.total_opposite(), l);
    }
}
