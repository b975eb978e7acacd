use super::SpPdaParams;
use crate::binom::choose;
use crate::error::{Error, Result};
use crate::profile::AssociationProfile;

/// Codes of a `(t+1)`-subset MaN PDA on `l1` columns that meet the first `prefix` columns.
fn man_prefix_codes(l1: usize, t2: usize, prefix: usize) -> u128 {
    choose(l1, t2 + 1) - choose(l1 - prefix, t2 + 1)
}

fn check_t2(profile: &AssociationProfile, t2: usize) -> Result<()> {
    if t2 > profile.largest() {
        return Err(Error::ParameterOutOfRange(format!(
            "t2 = {t2} exceeds L_1 = {}",
            profile.largest()
        )));
    }
    Ok(())
}

/// `S` of the SP-PDA built from `MaN(Λ, t1)` and `MaN(L_1, t2)`:
/// `Σ_{n=1}^{Λ-t1} C(Λ-n, t1) [C(L_1, t2+1) - C(L_1-L_n, t2+1)]`.
pub fn s_closed_form_man(
    lambda: usize,
    t1: usize,
    profile: &AssociationProfile,
    t2: usize,
) -> Result<u128> {
    if profile.len() != lambda {
        return Err(Error::ParameterOutOfRange(format!(
            "profile has {} parts, Λ = {lambda}",
            profile.len()
        )));
    }
    if t1 > lambda {
        return Err(Error::ParameterOutOfRange(format!(
            "t1 = {t1} exceeds Λ = {lambda}"
        )));
    }
    check_t2(profile, t2)?;
    let l1 = profile.largest();
    Ok((1..=lambda - t1)
        .map(|n| choose(lambda - n, t1) * man_prefix_codes(l1, t2, profile.part(n - 1)))
        .sum())
}

/// `S_A` of the SP-PDA built from Construction A `(q, m)` and `MaN(L_1, t2)`:
/// `q^(m-1) (q-1) Σ_{n=1}^{q} [C(L_1, t2+1) - C(L_1-L_n, t2+1)]`.
pub fn s_closed_form_construction_a(
    q: usize,
    m: usize,
    profile: &AssociationProfile,
    t2: usize,
) -> Result<u128> {
    if q < 2 || m < 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "Construction A needs q >= 2 and m >= 1, got q={q}, m={m}"
        )));
    }
    if profile.len() != q * (m + 1) {
        return Err(Error::ParameterOutOfRange(format!(
            "profile has {} parts, q(m+1) = {}",
            profile.len(),
            q * (m + 1)
        )));
    }
    check_t2(profile, t2)?;
    let l1 = profile.largest();
    let per_set = (q as u128).pow(m as u32 - 1) * (q as u128 - 1);
    Ok(per_set
        * (1..=q)
            .map(|n| man_prefix_codes(l1, t2, profile.part(n - 1)))
            .sum::<u128>())
}

/// Parameters of `MaN(K, t)` read as an SP-PDA for `profile`, valid when `t >= L_1`:
/// any `L_1` columns share `C(K-L_1, t-L_1)` all-star rows.
pub fn man_sppda_params(k: usize, t: usize, profile: &AssociationProfile) -> Result<SpPdaParams> {
    if profile.users() != k {
        return Err(Error::ProfileMismatch {
            profile_sum: profile.users(),
            columns: k,
        });
    }
    if t > k {
        return Err(Error::ParameterOutOfRange(format!(
            "t = {t} exceeds K = {k}"
        )));
    }
    let l1 = profile.largest();
    if t < l1 {
        return Err(Error::ParameterOutOfRange(format!(
            "t = {t} is below L_1 = {l1}: no helper stars are guaranteed"
        )));
    }
    let z = if t == 0 { 0 } else { choose(k - 1, t - 1) };
    Ok(SpPdaParams {
        k,
        lambda: profile.len(),
        profile: profile.clone(),
        f: choose(k, t) as usize,
        z: z as usize,
        zh: choose(k - l1, t - l1) as usize,
        s: choose(k, t + 1) as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(parts: &[usize]) -> AssociationProfile {
        AssociationProfile::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn man_pair_values() {
        assert_eq!(s_closed_form_man(2, 1, &profile(&[3, 2]), 1).unwrap(), 3);
        assert_eq!(s_closed_form_man(3, 1, &profile(&[2, 2, 1]), 1).unwrap(), 3);
        // uniform: C(Λ, t1+1) C(K/Λ, t2+1)
        assert_eq!(
            s_closed_form_man(4, 1, &profile(&[2, 2, 2, 2]), 1).unwrap(),
            choose(4, 2) * choose(2, 2)
        );
        assert!(s_closed_form_man(3, 1, &profile(&[3, 2]), 1).is_err());
        assert!(s_closed_form_man(2, 1, &profile(&[3, 2]), 4).is_err());
    }

    #[test]
    fn construction_a_pair_values() {
        assert_eq!(
            s_closed_form_construction_a(2, 1, &profile(&[2, 2, 1, 1]), 1).unwrap(),
            2
        );
        assert_eq!(
            s_closed_form_construction_a(2, 3, &profile(&[3; 8]), 1).unwrap(),
            24
        );
        // uniform: q^m (q-1) C(L_1, t2+1)
        assert_eq!(
            s_closed_form_construction_a(3, 1, &profile(&[4; 6]), 2).unwrap(),
            3 * 2 * choose(4, 3)
        );
        assert!(s_closed_form_construction_a(2, 1, &profile(&[2, 2, 1]), 1).is_err());
    }

    #[test]
    fn man_as_sppda() {
        let p = man_sppda_params(5, 3, &profile(&[3, 2])).unwrap();
        assert_eq!((p.f, p.z, p.zh, p.s), (10, 6, 1, 5));
        let p = man_sppda_params(4, 4, &profile(&[2, 2])).unwrap();
        assert_eq!((p.f, p.z, p.zh, p.s), (1, 1, 1, 0));
        let p = man_sppda_params(6, 3, &profile(&[2, 2, 2])).unwrap();
        assert_eq!(p.zh, 4);
        assert!(man_sppda_params(5, 2, &profile(&[3, 2])).is_err());
    }
}
