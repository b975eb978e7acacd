use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sppda::pda::{construction_a_pda, man_pda, PdaArray};
use sppda::random::{random_pda, random_profile};
use sppda::sppda::{
    construct_sppda, man_sppda_params, s_closed_form_construction_a, s_closed_form_man, s_count,
    verify_sppda, Grouping, SpVerdict,
};
use sppda::AssociationProfile;

fn random_instance(rng: &mut ChaCha8Rng) -> (PdaArray, PdaArray, AssociationProfile) {
    let lambda = rng.random_range(1..=4);
    let l1 = rng.random_range(1..=4);
    let profile = random_profile(lambda, l1, rng).unwrap();
    let f1 = rng.random_range(1..=8);
    let f2 = rng.random_range(1..=64 / f1).min(8);
    let p1 = random_pda(lambda, f1, rng.random_range(0..=f1), rng).unwrap();
    let p2 = random_pda(l1, f2, rng.random_range(0..=f2), rng).unwrap();
    (p1, p2, profile)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn construction_parameter_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2, profile) = random_instance(&mut rng);
        let q = construct_sppda(&p1, &p2, &profile).unwrap();
        let p = q.params();
        prop_assert_eq!(p.f, p1.f() * p2.f());
        prop_assert_eq!(p.z, p1.z() * p2.f() + (p1.f() - p1.z()) * p2.z());
        prop_assert_eq!(p.zh, p1.z() * p2.f());
        prop_assert_eq!(p.s, s_count(&p1, &p2, &profile).unwrap());
        prop_assert_eq!(p.s, q.grid().distinct_codes());
        prop_assert!(p.s <= p1.s() * p2.s());
        prop_assert!(p.zh <= p.z && p.z <= p.f);
        let verdict = verify_sppda(q.grid(), &profile, p.zh, &Grouping::Given((0..p.k).collect())).unwrap();
        prop_assert!(verdict.is_valid());
    }

    #[test]
    fn fewer_helper_stars_stay_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2, profile) = random_instance(&mut rng);
        let q = construct_sppda(&p1, &p2, &profile).unwrap();
        let id = Grouping::Given((0..q.grid().cols()).collect());
        for zh in 0..=q.zh() {
            prop_assert!(verify_sppda(q.grid(), &profile, zh, &id).unwrap().is_valid());
        }
    }

    #[test]
    fn shuffled_columns_are_regrouped_by_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2, profile) = random_instance(&mut rng);
        let q = construct_sppda(&p1, &p2, &profile).unwrap();
        let k = q.grid().cols();
        prop_assume!(k <= 10);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng);
        let moved = q.grid().permute_columns(&perm).unwrap();
        match verify_sppda(&moved, &profile, q.zh(), &Grouping::Search).unwrap() {
            SpVerdict::Valid { witness, .. } => {
                let again = verify_sppda(&moved, &profile, q.zh(), &Grouping::Given(witness)).unwrap();
                prop_assert!(again.is_valid());
            }
            other => prop_assert!(false, "no witness found: {:?}", other),
        }
    }
}

#[test]
fn man_pair_closed_form_matches_count() {
    for lambda in 1..=4 {
        for l1 in 1..=4 {
            for profile in AssociationProfile::enumerate(lambda * l1, lambda)
                .into_iter()
                .filter(|p| p.largest() == l1)
            {
                for t1 in 0..=lambda {
                    for t2 in 0..=l1 {
                        let p1 = man_pda(lambda, t1).unwrap();
                        let p2 = man_pda(l1, t2).unwrap();
                        let direct = construct_sppda(&p1, &p2, &profile)
                            .unwrap()
                            .grid()
                            .distinct_codes();
                        assert_eq!(
                            s_closed_form_man(lambda, t1, &profile, t2).unwrap(),
                            direct as u128,
                            "Λ={lambda} t1={t1} L={profile} t2={t2}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn construction_a_pair_closed_form_matches_count() {
    for (q, m) in [(2, 1), (2, 2), (3, 1)] {
        let lambda = q * (m + 1);
        let p1 = construction_a_pda(q, m).unwrap();
        for profile in AssociationProfile::enumerate(lambda + 2, lambda) {
            for t2 in 0..=profile.largest() {
                let p2 = man_pda(profile.largest(), t2).unwrap();
                let direct = construct_sppda(&p1, &p2, &profile)
                    .unwrap()
                    .grid()
                    .distinct_codes();
                assert_eq!(
                    s_closed_form_construction_a(q, m, &profile, t2).unwrap(),
                    direct as u128,
                    "q={q} m={m} L={profile} t2={t2}"
                );
            }
        }
    }
}

#[test]
fn man_pda_as_sppda_under_any_grouping() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 2..=7 {
        for t in 1..=k {
            for profile in AssociationProfile::enumerate(k, 2)
                .into_iter()
                .chain(AssociationProfile::enumerate(k, 3))
            {
                if t < profile.largest() {
                    assert!(man_sppda_params(k, t, &profile).is_err());
                    continue;
                }
                let params = man_sppda_params(k, t, &profile).unwrap();
                let pda = man_pda(k, t).unwrap();
                assert_eq!((params.f, params.z, params.s), (pda.f(), pda.z(), pda.s()));
                for _ in 0..3 {
                    let mut perm: Vec<usize> = (0..k).collect();
                    perm.shuffle(&mut rng);
                    match verify_sppda(pda.grid(), &profile, params.zh, &Grouping::Given(perm))
                        .unwrap()
                    {
                        SpVerdict::Valid { .. } => {}
                        other => panic!("MaN({k},{t}) with {profile}: {other:?}"),
                    }
                }
            }
        }
    }
}
