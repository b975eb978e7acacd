use sppda::analysis::{
    compare, rate_construction_a, rate_man_pair, sweep, SchemeTag, SweepConfig, DEFAULT_VERIFY_CAP,
};
use sppda::binom::{ratio, Rational};
use sppda::AssociationProfile;

/// Pascal's triangle, separate from the library's binomials.
fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![1u128]];
    for i in 1..=n {
        let mut row = vec![1u128; i + 1];
        for j in 1..i {
            row[j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        t.push(row);
    }
    t
}

fn c(t: &[Vec<u128>], n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        t[n][k]
    }
}

#[test]
fn uniform_rate_ratio_is_exact() {
    for q in 2..=3usize {
        for m in 1..=3usize {
            let lambda = q * (m + 1);
            let t1 = m + 1;
            for size in 1..=4usize {
                let profile = AssociationProfile::uniform(lambda, size).unwrap();
                for t2 in 0..size {
                    let r = compare(q, m, t2, &profile).unwrap();
                    assert_eq!(
                        r.rate_ratio,
                        Some(ratio(t1 as u128, t1 as u128 + 1)),
                        "q={q} m={m} t2={t2}"
                    );
                    assert_eq!(r.rate_ratio_uniform, r.rate_ratio);
                    let t = pascal(lambda);
                    assert_eq!(
                        r.f_ratio_exact,
                        ratio(c(&t, lambda, t1), (q as u128).pow(m as u32))
                    );
                    assert!(r.f_ratio_exact >= Rational::from_integer(1));
                    // closed forms of the uniform case
                    let (l, k) = (lambda as u128, size as u128);
                    assert_eq!(
                        r.rate_man,
                        ratio(
                            (l - t1 as u128) * (k - t2 as u128),
                            (t1 as u128 + 1) * (t2 as u128 + 1)
                        )
                    );
                    assert_eq!(
                        r.rate_a,
                        ratio((q as u128 - 1) * (k - t2 as u128), t2 as u128 + 1)
                    );
                }
            }
        }
    }
}

#[test]
fn skewed_profile_matches_independent_evaluation() {
    let profile: AssociationProfile = "10,4,2,2,2,2,1,1".parse().unwrap();
    let t = pascal(10);
    let l = profile.parts();
    for t2 in 0..=10usize {
        let s_man: u128 = (1..=4)
            .map(|n| c(&t, 8 - n, 4) * (c(&t, 10, t2 + 1) - c(&t, 10 - l[n - 1], t2 + 1)))
            .sum();
        let s_a: u128 = 4
            * (1..=2)
                .map(|n| c(&t, 10, t2 + 1) - c(&t, 10 - l[n - 1], t2 + 1))
                .sum::<u128>();
        assert_eq!(
            rate_man_pair(8, 4, &profile, t2).unwrap(),
            ratio(s_man, 70 * c(&t, 10, t2))
        );
        assert_eq!(
            rate_construction_a(2, 3, &profile, t2).unwrap(),
            ratio(s_a, 8 * c(&t, 10, t2))
        );
    }
    let r = compare(2, 3, 0, &profile).unwrap();
    assert_eq!(r.rate_ratio, Some(ratio(211, 245)));
    assert_eq!(r.f_ratio_exact, ratio(35, 4));
    assert_eq!(compare(2, 3, 10, &profile).unwrap().rate_ratio, None);
}

#[test]
fn mp_ratio_matches_formula_and_rows_are_ordered() {
    let config = SweepConfig {
        users: 24,
        lambda: 8,
        profile: AssociationProfile::uniform(8, 3).unwrap(),
        mh_ratio: ratio(1, 2),
        t2: vec![3, 1, 2],
        schemes: vec![SchemeTag::ConstructionAPair, SchemeTag::ManPair],
        verify_cap: 0,
    };
    let rows = sweep(&config).unwrap();
    let order: Vec<(SchemeTag, usize)> = rows.iter().map(|r| (r.scheme, r.t2)).collect();
    assert_eq!(
        order,
        vec![
            (SchemeTag::ManPair, 3),
            (SchemeTag::ManPair, 1),
            (SchemeTag::ManPair, 2),
            (SchemeTag::ConstructionAPair, 3),
            (SchemeTag::ConstructionAPair, 1),
            (SchemeTag::ConstructionAPair, 2),
        ]
    );
    for r in &rows {
        assert_eq!(r.mp_ratio, ratio(1, 2) * ratio(r.t2 as u128, 3));
        assert_eq!(r.verified, None);
    }
    let bad = SweepConfig {
        mh_ratio: ratio(1, 3),
        verify_cap: DEFAULT_VERIFY_CAP,
        ..config
    };
    assert!(sweep(&bad).is_err());
}
