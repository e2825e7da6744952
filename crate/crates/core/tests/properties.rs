use ginvlab_core::addabs::{self, jacobson_check, Verdict};
use ginvlab_core::geninv::{self, oracle::drazin_by_linear_system, Kind};
use ginvlab_core::harness::{
    evaluate, fuzz_theorem, gen_conforming_b, gen_matrix, FuzzConfig, GenProfile, Instance,
    Profile, THEOREMS,
};
use ginvlab_core::weakdrazin::{self, WeakDrazinBase};
use ginvlab_core::{GaussRational, Mat};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = GaussRational> {
    (-3i64..=3, prop_oneof![3 => Just(0i64), 1 => -2i64..=2]).prop_map(|(re, im)| {
        &GaussRational::from_int(re) + &(&GaussRational::i() * &GaussRational::from_int(im))
    })
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(entry(), rows * cols)
        .prop_map(move |v| Mat::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn square() -> impl Strategy<Value = Mat> {
    (1usize..=4).prop_flat_map(|n| mat(n, n))
}

fn rect() -> impl Strategy<Value = Mat> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| mat(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moore_penrose_satisfies_penrose_equations(a in rect()) {
        let x = geninv::moore_penrose(&a).unwrap().inverse;
        prop_assert_eq!(&(&(&a * &x) * &a), &a);
        prop_assert_eq!(&(&(&x * &a) * &x), &x);
        prop_assert!((&a * &x).is_hermitian());
        prop_assert!((&x * &a).is_hermitian());
    }

    #[test]
    fn drazin_matches_linear_oracle(a in square()) {
        let d = geninv::drazin(&a).unwrap();
        prop_assert_eq!(&d.inverse, &drazin_by_linear_system(&a).unwrap());
        let k = d.index;
        prop_assert_eq!(a.pow(k).rank(), a.pow(k + 1).rank());
    }

    #[test]
    fn every_computed_inverse_is_certified(a in square()) {
        for kind in Kind::ALL {
            if let Ok(g) = geninv::compute(&a, kind) {
                let cert = geninv::verify_defining(&a, &g.inverse, kind, g.index).unwrap();
                prop_assert!(cert.iter().all(|c| c.1), "{kind}: {cert:?}");
            }
        }
    }

    #[test]
    fn weak_drazin_samples_and_bijection((a, z) in (1usize..=4).prop_flat_map(|n| (mat(n, n), mat(n, n)))) {
        let base = WeakDrazinBase::new(&a).unwrap();
        let x = base.tl_value(&z).unwrap();
        prop_assert!(base.tl_contains(&x).unwrap());
        prop_assert!(base.tr_contains(&base.tr_value(&z).unwrap()).unwrap());
        let e = weakdrazin::phi(&a, &x).unwrap();
        prop_assert!(base.el_contains(&e).unwrap());
        prop_assert_eq!(&weakdrazin::psi(&a, &e).unwrap(), &x);
        prop_assert!(weakdrazin::commuting_power_check(&a, &x, 2, 1).unwrap());
    }

    #[test]
    fn jacobson_holds_when_defined(x in mat(3, 2), y in mat(2, 3)) {
        prop_assert_ne!(jacobson_check(&x, &y).unwrap(), Some(false));
    }

    #[test]
    fn matrix_json_round_trips(a in rect()) {
        prop_assert_eq!(Mat::from_json(&a.to_json()).unwrap(), a);
    }
}

#[test]
fn generated_index_is_exact() {
    for seed in 0..60 {
        for n in 1..=5 {
            for k in 1..=3.min(n) {
                let a = gen_matrix(&GenProfile::new(n, k, Profile::Unconstrained, seed)).unwrap();
                assert_eq!(
                    geninv::drazin_index(&a).unwrap(),
                    k,
                    "n={n} k={k} seed={seed}"
                );
            }
        }
    }
}

#[test]
fn commuting_block_profile_is_positive_for_drazin_perturbation() {
    let mut hits = 0;
    for seed in 0..40 {
        let a = gen_matrix(&GenProfile::new(4, 2, Profile::Unconstrained, seed)).unwrap();
        let Ok(b) = gen_conforming_b(&a, &GenProfile::new(4, 2, Profile::CommutingBlocks, seed))
        else {
            continue;
        };
        let r = addabs::suite_thm_pd210(&a, &b, 2).unwrap();
        assert_eq!(r.verdict(), Verdict::Agree, "{r:?}");
        hits += usize::from(r.all_true());
    }
    assert!(hits > 20, "only {hits} positive instances");
}

#[test]
fn counterexample_pair_through_the_evaluator() {
    let mut inst = Instance {
        s: Some(1),
        ..Instance::default()
    };
    inst.matrices
        .insert("a".into(), Mat::from_ints(&[[1, 1], [0, 0]]));
    inst.matrices
        .insert("b".into(), Mat::from_ints(&[[1, 0], [0, 0]]));
    assert!(evaluate("pd31", &inst).unwrap().all_true());
    let r33 = evaluate("pd33", &inst).unwrap();
    assert!(r33.conditions.iter().all(|c| !c.1));
    assert_eq!(r33.verdict(), Verdict::Agree);
    assert!(evaluate("nope", &inst).is_err());
    inst.s = None;
    assert!(evaluate("pd31", &inst).is_err());
}

#[test]
fn small_fuzz_runs_are_clean_and_repeatable() {
    let cfg = FuzzConfig::new(3, 2, 99);
    for id in THEOREMS {
        let r = fuzz_theorem(id, &cfg, 12).unwrap();
        assert!(r.is_clean(), "{id}: {:?}", r.disagreements);
        assert_eq!(
            r.agreements + r.disagreements.len(),
            12 - r.precondition_skips
        );
        assert_eq!(r, fuzz_theorem(id, &cfg, 12).unwrap());
    }
}
