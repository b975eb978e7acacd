//! Shared-and-private placement delivery arrays.
//!
//! An SP-PDA is a `(K, F, Z, S)` PDA (condition D1) together with an
//! association profile `L` and a helper-star count `Z^(h)` such that, after
//! some column permutation, each consecutive block of `L_λ` columns has at
//! least `Z^(h)` rows made only of stars (condition D2). Those rows go to
//! the helper cache of block `λ`; the remaining stars of each column go to
//! the user's private cache.

mod closed_form;
mod construct;

pub use closed_form::{man_sppda_params, s_closed_form_construction_a, s_closed_form_man};
pub use construct::{construct_sppda, relabeled_block, s_count};

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::binom::{ratio, Rational};
use crate::error::{Error, Result};
use crate::pda::{
    check_permutation, identity, invert, verify_pda, Grid, PdaArray, Verdict, Violation,
};
use crate::profile::AssociationProfile;

/// Column count above which the D2 witness search refuses to run.
pub const GROUPING_SEARCH_LIMIT: usize = 12;

/// Parameters `(K, Λ, L, F, Z, Z^(h), S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpPdaParams {
    pub k: usize,
    pub lambda: usize,
    pub profile: AssociationProfile,
    pub f: usize,
    pub z: usize,
    pub zh: usize,
    pub s: usize,
}

impl SpPdaParams {
    /// `M_h / N = Z^(h) / F`.
    pub fn mh_ratio(&self) -> Rational {
        ratio(self.zh as u128, self.f as u128)
    }

    /// `M_p / N = (Z - Z^(h)) / F`.
    pub fn mp_ratio(&self) -> Rational {
        ratio((self.z - self.zh) as u128, self.f as u128)
    }

    /// `R = S / F`.
    pub fn rate(&self) -> Rational {
        ratio(self.s as u128, self.f as u128)
    }
}

impl fmt::Display for SpPdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{},{})",
            self.k, self.lambda, self.profile, self.f, self.z, self.zh, self.s
        )
    }
}

/// How [`verify_sppda`] finds the column grouping for D2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grouping {
    /// Use this permutation: column `k` moves to position `pi[k]`.
    Given(Vec<usize>),
    /// Try every assignment of columns to groups.
    Search,
}

/// Outcome of an SP-PDA check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpVerdict {
    Valid {
        params: SpPdaParams,
        witness: Vec<usize>,
    },
    /// D1 failed.
    NotPda(Vec<Violation>),
    /// D2 failed under the given grouping; `group` is the first short block.
    GroupShort {
        group: usize,
        all_star_rows: usize,
        required: usize,
    },
    /// The search found no grouping satisfying D2.
    NoWitness,
}

impl SpVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SpVerdict::Valid { .. })
    }
}

/// Checks D1 and D2 for `grid` with profile `profile` and helper-star count `zh`.
pub fn verify_sppda(
    grid: &Grid,
    profile: &AssociationProfile,
    zh: usize,
    mode: &Grouping,
) -> Result<SpVerdict> {
    if profile.users() != grid.cols() {
        return Err(Error::ProfileMismatch {
            profile_sum: profile.users(),
            columns: grid.cols(),
        });
    }
    if zh > grid.rows() {
        return Err(Error::ParameterOutOfRange(format!(
            "Z^(h) = {zh} exceeds F = {}",
            grid.rows()
        )));
    }
    let pda = match verify_pda(grid)? {
        Verdict::Valid(p) => p,
        Verdict::Invalid(v) => return Ok(SpVerdict::NotPda(v)),
    };
    let params = SpPdaParams {
        k: pda.k,
        lambda: profile.len(),
        profile: profile.clone(),
        f: pda.f,
        z: pda.z,
        zh,
        s: pda.s,
    };
    let star_rows = star_row_sets(grid);

    match mode {
        Grouping::Given(pi) => {
            check_permutation(pi, grid.cols())?;
            let inv = invert(pi);
            for (group, (start, &len)) in profile.offsets().iter().zip(profile.parts()).enumerate()
            {
                let members = &inv[*start..start + len];
                let count = common_star_rows(&star_rows, members, grid.rows()).count_ones(..);
                if count < zh {
                    return Ok(SpVerdict::GroupShort {
                        group,
                        all_star_rows: count,
                        required: zh,
                    });
                }
            }
            Ok(SpVerdict::Valid {
                params,
                witness: pi.clone(),
            })
        }
        Grouping::Search => {
            if grid.cols() > GROUPING_SEARCH_LIMIT {
                return Err(Error::SearchTooLarge {
                    columns: grid.cols(),
                    limit: GROUPING_SEARCH_LIMIT,
                });
            }
            let mut groups = Vec::with_capacity(profile.len());
            let mut free = vec![true; grid.cols()];
            if search_groups(
                &star_rows,
                grid.rows(),
                profile.parts(),
                zh,
                &mut free,
                &mut groups,
            ) {
                let mut pi = vec![0; grid.cols()];
                for (members, start) in groups.iter().zip(profile.offsets()) {
                    for (i, &col) in members.iter().enumerate() {
                        pi[col] = start + i;
                    }
                }
                Ok(SpVerdict::Valid {
                    params,
                    witness: pi,
                })
            } else {
                Ok(SpVerdict::NoWitness)
            }
        }
    }
}

fn star_row_sets(grid: &Grid) -> Vec<FixedBitSet> {
    (0..grid.cols())
        .map(|c| {
            let mut set = FixedBitSet::with_capacity(grid.rows());
            for (r, e) in grid.column(c).enumerate() {
                set.set(r, e.is_star());
            }
            set
        })
        .collect()
}

fn common_star_rows(star_rows: &[FixedBitSet], members: &[usize], rows: usize) -> FixedBitSet {
    let mut acc = FixedBitSet::with_capacity(rows);
    acc.insert_range(..);
    for &c in members {
        acc.intersect_with(&star_rows[c]);
    }
    acc
}

fn search_groups(
    star_rows: &[FixedBitSet],
    rows: usize,
    parts: &[usize],
    zh: usize,
    free: &mut [bool],
    groups: &mut Vec<Vec<usize>>,
) -> bool {
    let Some((&size, rest)) = parts.split_first() else {
        return true;
    };
    let candidates: Vec<usize> = (0..free.len()).filter(|&c| free[c]).collect();
    // equal-sized consecutive groups are interchangeable: order them by first member
    let floor = match groups.last() {
        Some(prev) if prev.len() == size && size > 0 => Some(prev[0]),
        _ => None,
    };
    for members in candidates.into_iter().combinations(size) {
        if let (Some(f), Some(&first)) = (floor, members.first()) {
            if first < f {
                continue;
            }
        }
        if common_star_rows(star_rows, &members, rows).count_ones(..) < zh {
            continue;
        }
        for &c in &members {
            free[c] = false;
        }
        groups.push(members);
        if search_groups(star_rows, rows, rest, zh, free, groups) {
            return true;
        }
        let members = groups.pop().unwrap();
        for c in members {
            free[c] = true;
        }
    }
    false
}

/// A PDA with a profile, a helper-star count and a D2 witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpPdaArray {
    base: PdaArray,
    profile: AssociationProfile,
    zh: usize,
    grouping: Vec<usize>,
}

impl SpPdaArray {
    /// Validates D2 for `base` under `grouping` (column `k` to position `grouping[k]`).
    pub fn new(
        base: PdaArray,
        profile: AssociationProfile,
        zh: usize,
        grouping: Vec<usize>,
    ) -> Result<Self> {
        match verify_sppda(
            base.grid(),
            &profile,
            zh,
            &Grouping::Given(grouping.clone()),
        )? {
            SpVerdict::Valid { .. } => Ok(Self {
                base,
                profile,
                zh,
                grouping,
            }),
            SpVerdict::GroupShort {
                group,
                all_star_rows,
                required,
            } => Err(Error::InsufficientStarRows {
                group,
                available: all_star_rows,
                required,
            }),
            SpVerdict::NotPda(v) => Err(Error::NotAPda(v)),
            SpVerdict::NoWitness => unreachable!("given grouping never searches"),
        }
    }

    /// Columns already laid out group by group.
    pub fn with_identity_grouping(
        base: PdaArray,
        profile: AssociationProfile,
        zh: usize,
    ) -> Result<Self> {
        let k = base.k();
        Self::new(base, profile, zh, identity(k))
    }

    pub fn base(&self) -> &PdaArray {
        &self.base
    }

    pub fn grid(&self) -> &Grid {
        self.base.grid()
    }

    pub fn profile(&self) -> &AssociationProfile {
        &self.profile
    }

    pub fn zh(&self) -> usize {
        self.zh
    }

    pub fn grouping(&self) -> &[usize] {
        &self.grouping
    }

    pub fn is_identity_grouping(&self) -> bool {
        self.grouping.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn params(&self) -> SpPdaParams {
        let p = self.base.params();
        SpPdaParams {
            k: p.k,
            lambda: self.profile.len(),
            profile: self.profile.clone(),
            f: p.f,
            z: p.z,
            zh: self.zh,
            s: p.s,
        }
    }

    /// Original column indices of the users attached to helper `group`.
    pub fn group_columns(&self, group: usize) -> Vec<usize> {
        let inv = invert(&self.grouping);
        let start = self.profile.offsets()[group];
        let mut cols = inv[start..start + self.profile.part(group)].to_vec();
        cols.sort_unstable();
        cols
    }

    /// Helper cache serving user (column) `k`.
    pub fn helper_of(&self, user: usize) -> usize {
        self.profile
            .group_of(self.grouping[user])
            .expect("grouping maps into 0..K")
    }

    /// Same array with codes renumbered by first appearance.
    pub fn canonical(&self) -> Self {
        Self {
            base: self.base.canonical(),
            ..self.clone()
        }
    }
}
