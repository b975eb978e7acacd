//! Closed-form rates and subpacketization of the two scheme families, and
//! memory sweeps cross-checked against simulated runs.
//!
//! Both families build the SP-PDA from a first PDA over the helper caches
//! and `MaN(L_1, t2)`. The MaN pair uses `MaN(Λ, t1)` first, the
//! Construction A pair uses Construction A `(q, m)` with `Λ = q(m+1)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{choose, ratio, Rational};
use crate::error::{Error, Result};
use crate::pda::{construction_a_pda, man_pda};
use crate::profile::AssociationProfile;
use crate::sim::{sp_run, FileLibrary};
use crate::sppda::{construct_sppda, s_closed_form_construction_a, s_closed_form_man};

pub const DEFAULT_VERIFY_CAP: u128 = 100_000;

/// `F` of the MaN pair: `C(Λ, t1)·C(L_1, t2)`.
pub fn f_man_pair(lambda: usize, t1: usize, profile: &AssociationProfile, t2: usize) -> u128 {
    choose(lambda, t1) * choose(profile.largest(), t2)
}

/// `F` of the Construction A pair: `q^m·C(L_1, t2)`.
pub fn f_construction_a_pair(q: usize, m: usize, profile: &AssociationProfile, t2: usize) -> u128 {
    (q as u128).pow(m as u32) * choose(profile.largest(), t2)
}

/// Rate `S/F` of the MaN pair, exact.
pub fn rate_man_pair(
    lambda: usize,
    t1: usize,
    profile: &AssociationProfile,
    t2: usize,
) -> Result<Rational> {
    let s = s_closed_form_man(lambda, t1, profile, t2)?;
    Ok(ratio(s, f_man_pair(lambda, t1, profile, t2)))
}

/// Rate `S_A/F_A` of the Construction A pair, exact.
pub fn rate_construction_a(
    q: usize,
    m: usize,
    profile: &AssociationProfile,
    t2: usize,
) -> Result<Rational> {
    let s = s_closed_form_construction_a(q, m, profile, t2)?;
    Ok(ratio(s, f_construction_a_pair(q, m, profile, t2)))
}

/// Both schemes at matched helper memory `M_h/N = 1/q = t1/Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub q: usize,
    pub m: usize,
    pub lambda: usize,
    pub t1: usize,
    pub t2: usize,
    pub f_man: u128,
    pub f_a: u128,
    /// `F_MaN / F_A = C(Λ, t1) / q^m`.
    pub f_ratio_exact: Rational,
    /// `Λ·t1^(t1-1)`, a loose asymptotic estimate of the ratio above.
    pub f_ratio_approx: u128,
    pub rate_man: Rational,
    pub rate_a: Rational,
    /// `R_MaN / R_A`, absent when both rates are zero.
    pub rate_ratio: Option<Rational>,
    /// `t1/(t1+1)`, present only for uniform profiles where it is exact.
    pub rate_ratio_uniform: Option<Rational>,
}

pub fn compare(
    q: usize,
    m: usize,
    t2: usize,
    profile: &AssociationProfile,
) -> Result<ComparisonReport> {
    if q < 2 || m < 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "Construction A needs q >= 2 and m >= 1, got q={q}, m={m}"
        )));
    }
    let lambda = q * (m + 1);
    if profile.len() != lambda {
        return Err(Error::MemoryMismatch {
            lambda: profile.len(),
            expected: lambda,
        });
    }
    let t1 = m + 1;
    let rate_man = rate_man_pair(lambda, t1, profile, t2)?;
    let rate_a = rate_construction_a(q, m, profile, t2)?;
    let rate_ratio = (*rate_a.numer() != 0).then(|| rate_man / rate_a);
    let f_man = f_man_pair(lambda, t1, profile, t2);
    let f_a = f_construction_a_pair(q, m, profile, t2);
    Ok(ComparisonReport {
        q,
        m,
        lambda,
        t1,
        t2,
        f_man,
        f_a,
        f_ratio_exact: ratio(choose(lambda, t1), (q as u128).pow(m as u32)),
        f_ratio_approx: lambda as u128 * (t1 as u128).pow(t1 as u32 - 1),
        rate_man,
        rate_a,
        rate_ratio,
        rate_ratio_uniform: profile
            .is_uniform()
            .then(|| ratio(t1 as u128, t1 as u128 + 1)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SchemeTag {
    ManPair,
    ConstructionAPair,
}

impl fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ManPair => "man_pair",
            Self::ConstructionAPair => "construction_a_pair",
        })
    }
}

impl std::str::FromStr for SchemeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "man_pair" | "man" => Ok(Self::ManPair),
            "construction_a_pair" | "consa" | "a" => Ok(Self::ConstructionAPair),
            other => Err(Error::ParameterOutOfRange(format!(
                "unknown scheme {other:?}"
            ))),
        }
    }
}

/// Parameters of the first PDA of a scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstPda {
    Man { t1: usize },
    ConstructionA { q: usize, m: usize },
}

/// One scheme evaluated at one private memory point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePoint {
    pub scheme: SchemeTag,
    pub first: FirstPda,
    pub lambda: usize,
    pub profile: AssociationProfile,
    pub t2: usize,
    pub mh_ratio: Rational,
    pub mp_ratio: Rational,
    pub rate: Rational,
    pub subpacketization: u128,
    pub codes: u128,
    /// Outcome of the construct-and-simulate check; absent above the cap.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub users: usize,
    pub lambda: usize,
    pub profile: AssociationProfile,
    pub mh_ratio: Rational,
    /// Values of `t2`; each must lie in `0..=L_1`.
    pub t2: Vec<usize>,
    pub schemes: Vec<SchemeTag>,
    /// Largest `F` that is constructed and simulated.
    pub verify_cap: u128,
}

/// First-PDA parameters realizing `mh_ratio` for `scheme`.
pub fn realize(scheme: SchemeTag, lambda: usize, mh_ratio: Rational) -> Result<FirstPda> {
    match scheme {
        SchemeTag::ManPair => {
            let t1 = mh_ratio * Rational::from_integer(lambda as u128);
            if !t1.is_integer() || t1 > Rational::from_integer(lambda as u128) {
                return Err(Error::UnrealizableMemory(format!(
                    "M_h/N = {mh_ratio} needs Λ·M_h/N = {t1} to be an integer in 0..={lambda}"
                )));
            }
            Ok(FirstPda::Man {
                t1: t1.to_integer() as usize,
            })
        }
        SchemeTag::ConstructionAPair => {
            let unrealizable = || {
                Error::UnrealizableMemory(format!(
                    "M_h/N = {mh_ratio} must be 1/q with q >= 2 dividing Λ = {lambda} and Λ/q >= 2"
                ))
            };
            if *mh_ratio.numer() != 1 || *mh_ratio.denom() < 2 {
                return Err(unrealizable());
            }
            let q = *mh_ratio.denom() as usize;
            if !lambda.is_multiple_of(q) || lambda / q < 2 {
                return Err(unrealizable());
            }
            Ok(FirstPda::ConstructionA {
                q,
                m: lambda / q - 1,
            })
        }
    }
}

fn evaluate(
    first: FirstPda,
    profile: &AssociationProfile,
    t2: usize,
) -> Result<(u128, u128, Rational)> {
    let lambda = profile.len();
    let l1 = Rational::from_integer(profile.largest() as u128);
    let t2r = Rational::from_integer(t2 as u128);
    match first {
        FirstPda::Man { t1 } => Ok((
            s_closed_form_man(lambda, t1, profile, t2)?,
            f_man_pair(lambda, t1, profile, t2),
            (Rational::from_integer(1) - ratio(t1 as u128, lambda as u128)) * t2r / l1,
        )),
        FirstPda::ConstructionA { q, m } => Ok((
            s_closed_form_construction_a(q, m, profile, t2)?,
            f_construction_a_pair(q, m, profile, t2),
            (Rational::from_integer(1) - ratio(1, q as u128)) * t2r / l1,
        )),
    }
}

/// Constructs the scheme and runs it with distinct demands; true when every
/// closed-form quantity matches the run and every user decodes.
fn cross_check(point: &SchemePoint) -> Result<bool> {
    let profile = &point.profile;
    let p1 = match point.first {
        FirstPda::Man { t1 } => man_pda(point.lambda, t1)?,
        FirstPda::ConstructionA { q, m } => construction_a_pda(q, m)?,
    };
    let p2 = man_pda(profile.largest(), point.t2)?;
    let q = construct_sppda(&p1, &p2, profile)?;
    let params = q.params();
    let k = profile.users();
    let library = FileLibrary::synthetic(k, params.f, point.t2 as u64, params.f)?;
    let demands: Vec<usize> = (0..k).collect();
    let run = sp_run(&q, &library, &demands)?;
    Ok(params.f as u128 == point.subpacketization
        && params.s as u128 == point.codes
        && run.rate == point.rate
        && run.mh_ratio == point.mh_ratio
        && run.mp_ratio == point.mp_ratio
        && run.all_decoded())
}

/// One row per `(scheme, t2)`, ordered by scheme then `t2`.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SchemePoint>> {
    let profile = &config.profile;
    if profile.users() != config.users || profile.len() != config.lambda {
        return Err(Error::ProfileMismatch {
            profile_sum: profile.users(),
            columns: config.users,
        });
    }
    let mut points = Vec::new();
    let mut schemes = config.schemes.clone();
    schemes.sort();
    schemes.dedup();
    for scheme in schemes {
        let first = realize(scheme, config.lambda, config.mh_ratio)?;
        for &t2 in &config.t2 {
            let (codes, f, mp_ratio) = evaluate(first, profile, t2)?;
            points.push(SchemePoint {
                scheme,
                first,
                lambda: config.lambda,
                profile: profile.clone(),
                t2,
                mh_ratio: config.mh_ratio,
                mp_ratio,
                rate: ratio(codes, f),
                subpacketization: f,
                codes,
                verified: None,
            });
        }
    }
    points
        .into_par_iter()
        .map(|mut p| {
            if p.subpacketization <= config.verify_cap {
                p.verified = Some(cross_check(&p)?);
            }
            Ok(p)
        })
        .collect()
}
