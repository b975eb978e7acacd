use sppda::format::{read_pda, read_sppda, write_pda, write_sppda};
use sppda::pda::{column_matching, man_pda, verify_pda, Verdict};
use sppda::perm::{check_e1, check_e2, exhaustive_best, DEFAULT_BUDGET};
use sppda::sppda::{construct_sppda, relabeled_block, s_count, verify_sppda, Grouping, SpVerdict};
use sppda::{AssociationProfile, Entry, PdaArray};

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn skew_profile() -> AssociationProfile {
    "6,3,2,1,1,1".parse().unwrap()
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    for name in [
        "mixed_first.pda",
        "mixed_second.pda",
        "skew_first.pda",
        "skew_second.pda",
        "skew_first_reordered.pda",
        "skew_second_reordered.pda",
    ] {
        let text = golden(name);
        assert_eq!(write_pda(&read_pda(&text).unwrap()), text, "{name}");
    }
    for name in [
        "two_man.sppda",
        "skew_original.sppda",
        "skew_reordered.sppda",
    ] {
        let text = golden(name);
        assert_eq!(write_sppda(&read_sppda(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn two_man_pdas_give_the_five_user_array() {
    let profile = AssociationProfile::new(vec![3, 2]).unwrap();
    let q = construct_sppda(&man_pda(2, 1).unwrap(), &man_pda(3, 1).unwrap(), &profile).unwrap();
    assert_eq!(write_sppda(&q.canonical()), golden("two_man.sppda"));
    assert_eq!(q.params().to_string(), "(5,2,(3,2),6,4,3,3)");
}

#[test]
fn skew_unpermuted_pair() {
    let p1 = read_pda(&golden("skew_first.pda")).unwrap();
    let p2 = read_pda(&golden("skew_second.pda")).unwrap();
    let q = construct_sppda(&p1, &p2, &skew_profile()).unwrap();
    assert_eq!(write_sppda(&q), golden("skew_original.sppda"));
    assert_eq!(s_count(&p1, &p2, &skew_profile()).unwrap(), 24);
    let p = q.params();
    assert_eq!((p.f, p.z, p.zh, p.s), (12, 8, 6, 24));
}

#[test]
fn skew_permuted_pair() {
    let p1 = read_pda(&golden("skew_first_reordered.pda")).unwrap();
    let p2 = read_pda(&golden("skew_second_reordered.pda")).unwrap();
    let q = construct_sppda(&p1, &p2, &skew_profile()).unwrap();
    assert_eq!(write_sppda(&q), golden("skew_reordered.sppda"));
    assert_eq!(s_count(&p1, &p2, &skew_profile()).unwrap(), 18);
}

#[test]
fn skew_primes_are_column_permutations() {
    for (a, b) in [
        ("skew_first.pda", "skew_first_reordered.pda"),
        ("skew_second.pda", "skew_second_reordered.pda"),
    ] {
        let a = read_pda(&golden(a)).unwrap();
        let b = read_pda(&golden(b)).unwrap();
        let perm = column_matching(a.grid(), b.grid()).expect("equivalent arrays");
        assert_eq!(a.permute_columns(&perm).unwrap(), b);
    }
}

#[test]
fn skew_phi_and_xi() {
    let p1 = read_pda(&golden("skew_first.pda")).unwrap();
    let p2 = read_pda(&golden("skew_second.pda")).unwrap();
    let p2p = read_pda(&golden("skew_second_reordered.pda")).unwrap();
    assert_eq!(p1.xi_table(), vec![0, 0, 1, 1]);
    assert_eq!(
        (1..=3).map(|l| p2.phi(l).unwrap()).collect::<Vec<_>>(),
        vec![2, 4, 6]
    );
    assert_eq!(
        (1..=6).map(|l| p2p.phi(l).unwrap()).collect::<Vec<_>>(),
        vec![2, 3, 4, 5, 6, 6]
    );
}

#[test]
fn skew_e_conditions() {
    let profile = skew_profile();
    let p1 = read_pda(&golden("skew_first.pda")).unwrap();
    let p2 = read_pda(&golden("skew_second.pda")).unwrap();
    let p1p = read_pda(&golden("skew_first_reordered.pda")).unwrap();
    let p2p = read_pda(&golden("skew_second_reordered.pda")).unwrap();
    assert!(!check_e1(&p1, DEFAULT_BUDGET).unwrap());
    assert!(check_e1(&p1p, DEFAULT_BUDGET).unwrap());
    assert!(!check_e2(&p2, &profile, DEFAULT_BUDGET).unwrap());
    assert!(check_e2(&p2p, &profile, DEFAULT_BUDGET).unwrap());
}

#[test]
fn skew_search_extremes() {
    let p1 = read_pda(&golden("skew_first.pda")).unwrap();
    let p2 = read_pda(&golden("skew_second.pda")).unwrap();
    let out = exhaustive_best(&p1, &p2, &skew_profile(), DEFAULT_BUDGET, 5).unwrap();
    assert_eq!((out.s_min, out.s_max), (18, 24));
    assert_eq!(out.evaluations, 720 * 720);
    assert_eq!(out.top[0], out.best);
    assert!(out.top.windows(2).all(|w| w[0] <= w[1]));
    let q1 = p1.permute_columns(&out.best.pi1).unwrap();
    let q2 = p2.permute_columns(&out.best.pi2).unwrap();
    assert_eq!(s_count(&q1, &q2, &skew_profile()).unwrap(), 18);
}

#[test]
fn mixed_pair_construction() {
    let p1 = read_pda(&golden("mixed_first.pda")).unwrap();
    let p2 = read_pda(&golden("mixed_second.pda")).unwrap();
    let profile: AssociationProfile = "4,2,1".parse().unwrap();
    assert_eq!(p1.xi_table(), vec![0, 0, 1]);
    let q = construct_sppda(&p1, &p2, &profile).unwrap();
    assert_eq!(q.params().to_string(), "(7,3,(4,2,1),6,4,2,5)");
    let star = Entry::Star;
    let c = Entry::Code;
    assert_eq!(
        relabeled_block(&p2, 4, 0),
        vec![vec![star, c(1), star, c(2)], vec![c(1), star, c(2), star]]
    );
    assert_eq!(
        relabeled_block(&p2, 4, 2),
        vec![vec![star, c(3), star, c(4)], vec![c(3), star, c(4), star]]
    );
    assert_eq!(
        relabeled_block(&p2, 2, 4),
        vec![vec![star, c(5)], vec![c(5), star]]
    );
    let verdict = verify_sppda(q.grid(), &profile, 2, &Grouping::Given((0..7).collect())).unwrap();
    assert!(matches!(verdict, SpVerdict::Valid { .. }));
}

#[test]
fn golden_arrays_check_out() {
    for (name, k, f, z, s) in [
        ("two_man.sppda", 5, 6, 4, 3),
        ("skew_original.sppda", 14, 12, 8, 24),
        ("skew_reordered.sppda", 14, 12, 8, 18),
    ] {
        let doc = golden(name);
        let q = read_sppda(&doc).unwrap();
        match verify_pda(q.grid()).unwrap() {
            Verdict::Valid(p) => assert_eq!((p.k, p.f, p.z, p.s), (k, f, z, s), "{name}"),
            Verdict::Invalid(v) => panic!("{name}: {v:?}"),
        }
    }
    let q = read_sppda(&golden("two_man.sppda")).unwrap();
    let verdict =
        verify_sppda(q.grid(), q.profile(), 2, &Grouping::Given((0..5).collect())).unwrap();
    assert!(verdict.is_valid());
    let p: PdaArray = q.base().clone();
    assert_eq!(p.all_star_row_count(&[0, 1, 2]).unwrap(), 3);
}
