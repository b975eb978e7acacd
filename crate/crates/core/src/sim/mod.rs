//! Bit-exact execution of PDA-based caching schemes.
//!
//! [`sp_run`] runs placement, delivery and decoding for users sharing helper
//! caches and holding private caches. [`dedicated_run`] runs the
//! dedicated-cache scheme on a plain PDA and is kept as an independent path.

mod dedicated;
mod library;
mod log;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{ratio, Rational};
use crate::error::{Error, Result};
use crate::pda::Entry;
use crate::sppda::SpPdaArray;

pub use dedicated::dedicated_run;
pub use library::FileLibrary;
pub use log::{
    read_transmission_log, report_csv_header, report_csv_row, report_text, write_transmission_log,
};

/// Row indices of the subfiles each cache holds, for every file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheLayout {
    /// `H^(λ)` for each helper cache.
    pub helper_sets: Vec<Vec<usize>>,
    /// Private cache rows of each user.
    pub private_sets: Vec<Vec<usize>>,
    pub user_to_helper: Vec<usize>,
}

/// Subfiles held by one cache: the same rows of every file, stored file-major.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheStore {
    rows: Vec<usize>,
    files: usize,
    subfile_len: usize,
    data: Vec<u8>,
}

impl CacheStore {
    fn fill(rows: &[usize], library: &FileLibrary) -> Self {
        let mut rows = rows.to_vec();
        rows.sort_unstable();
        let mut data = Vec::with_capacity(library.len() * rows.len() * library.subfile_len());
        for n in 0..library.len() {
            for &j in &rows {
                data.extend_from_slice(library.subfile(n, j));
            }
        }
        Self {
            files: library.len(),
            subfile_len: library.subfile_len(),
            rows,
            data,
        }
    }

    pub fn get(&self, file: usize, row: usize) -> Option<&[u8]> {
        if file >= self.files {
            return None;
        }
        let idx = self.rows.binary_search(&row).ok()?;
        let start = (file * self.rows.len() + idx) * self.subfile_len;
        Some(&self.data[start..start + self.subfile_len])
    }

    pub fn bytes(&self) -> usize {
        self.data.len()
    }

    /// Number of stored subfiles.
    pub fn len(&self) -> usize {
        self.files * self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Placement result: the index sets and the filled caches.
#[derive(Clone, Debug)]
pub struct Placement {
    pub layout: CacheLayout,
    pub helpers: Vec<CacheStore>,
    pub privates: Vec<CacheStore>,
}

impl Placement {
    fn lookup(&self, user: usize, file: usize, row: usize) -> Option<&[u8]> {
        let helper = self.layout.user_to_helper[user];
        self.helpers[helper]
            .get(file, row)
            .or_else(|| self.privates[user].get(file, row))
    }
}

/// One broadcast: the XOR of the demanded subfiles at every cell holding `code`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transmission {
    pub code: u32,
    pub payload: Vec<u8>,
    /// `(user, row)` of each XOR term, in row-major order.
    pub components: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimReport {
    pub users: usize,
    pub subpacketization: usize,
    pub transmissions: Vec<Transmission>,
    /// Transmissions divided by F, in files.
    pub rate: Rational,
    pub mh_ratio: Rational,
    pub mp_ratio: Rational,
    pub decoded: Vec<bool>,
    /// Whether every user asked for a different file, which makes `rate` the worst case.
    pub distinct_demands: bool,
    pub helper_bytes: Vec<usize>,
    pub private_bytes: Vec<usize>,
    pub subfile_len: usize,
}

impl SimReport {
    pub fn all_decoded(&self) -> bool {
        self.decoded.iter().all(|&d| d)
    }
}

pub(crate) fn check_library(f: usize, library: &FileLibrary) -> Result<()> {
    if library.subpacketization() != f {
        return Err(Error::DimensionMismatch(format!(
            "library is split into {} subfiles, array has {f} rows",
            library.subpacketization()
        )));
    }
    Ok(())
}

pub(crate) fn check_demands(users: usize, demands: &[usize], files: usize) -> Result<()> {
    if demands.len() != users {
        return Err(Error::DimensionMismatch(format!(
            "{} demands for {users} users",
            demands.len()
        )));
    }
    if let Some((user, &demand)) = demands.iter().enumerate().find(|(_, &d)| d >= files) {
        return Err(Error::DemandOutOfRange {
            user,
            demand,
            files,
        });
    }
    Ok(())
}

pub(crate) fn xor_into(acc: &mut [u8], other: &[u8]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

pub(crate) fn all_distinct(demands: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    demands.iter().all(|d| seen.insert(*d))
}

/// Fills helper cache `λ` with the `Z^(h)` smallest all-star rows of its
/// user group and every private cache with the remaining star rows of its column.
pub fn sp_place(sppda: &SpPdaArray, library: &FileLibrary) -> Result<Placement> {
    let grid = sppda.grid();
    check_library(grid.rows(), library)?;
    let zh = sppda.zh();
    let profile = sppda.profile();

    let mut helper_sets = Vec::with_capacity(profile.len());
    for group in 0..profile.len() {
        let rows = grid.all_star_rows(&sppda.group_columns(group))?;
        if rows.len() < zh {
            return Err(Error::InsufficientStarRows {
                group,
                available: rows.len(),
                required: zh,
            });
        }
        helper_sets.push(rows[..zh].to_vec());
    }
    let user_to_helper: Vec<usize> = (0..grid.cols()).map(|k| sppda.helper_of(k)).collect();
    let private_sets: Vec<Vec<usize>> = (0..grid.cols())
        .map(|k| {
            let h = &helper_sets[user_to_helper[k]];
            (0..grid.rows())
                .filter(|&j| grid.get(j, k).is_star() && h.binary_search(&j).is_err())
                .collect()
        })
        .collect();

    let helpers = helper_sets
        .iter()
        .map(|rows| CacheStore::fill(rows, library))
        .collect();
    let privates = private_sets
        .iter()
        .map(|rows| CacheStore::fill(rows, library))
        .collect();
    Ok(Placement {
        layout: CacheLayout {
            helper_sets,
            private_sets,
            user_to_helper,
        },
        helpers,
        privates,
    })
}

/// One XOR transmission per code; user `k` requests file `demands[k]`.
pub fn sp_deliver(
    sppda: &SpPdaArray,
    library: &FileLibrary,
    demands: &[usize],
) -> Result<Vec<Transmission>> {
    deliver(sppda.grid(), library, demands)
}

pub(crate) fn deliver(
    grid: &crate::pda::Grid,
    library: &FileLibrary,
    demands: &[usize],
) -> Result<Vec<Transmission>> {
    check_library(grid.rows(), library)?;
    check_demands(grid.cols(), demands, library.len())?;
    let s = grid.distinct_codes();
    let mut out: Vec<Transmission> = (1..=s as u32)
        .map(|code| Transmission {
            code,
            payload: vec![0u8; library.subfile_len()],
            components: Vec::new(),
        })
        .collect();
    for j in 0..grid.rows() {
        for (k, e) in grid.row(j).iter().enumerate() {
            if let Entry::Code(c) = e {
                let t = &mut out[*c as usize - 1];
                xor_into(&mut t.payload, library.subfile(demands[k], j));
                t.components.push((k, j));
            }
        }
    }
    Ok(out)
}

/// Rebuilds the file requested by `user` from its helper cache, its private
/// cache and the broadcasts, truncated to `original_len` bytes.
pub fn sp_decode(
    user: usize,
    placement: &Placement,
    transmissions: &[Transmission],
    sppda: &SpPdaArray,
    demands: &[usize],
    original_len: usize,
) -> Result<Vec<u8>> {
    let grid = sppda.grid();
    let by_code: HashMap<u32, &Transmission> = transmissions.iter().map(|t| (t.code, t)).collect();
    let want = demands[user];
    let mut file = Vec::new();
    for j in 0..grid.rows() {
        match grid.get(j, user) {
            Entry::Star => {
                let piece = placement
                    .lookup(user, want, j)
                    .ok_or(Error::MissingComponent {
                        user,
                        code: 0,
                        file: want,
                        row: j,
                    })?;
                file.extend_from_slice(piece);
            }
            Entry::Code(code) => {
                let t = by_code.get(&code).ok_or(Error::CodeAbsent(code))?;
                let mut piece = t.payload.clone();
                for &(k, row) in t.components.iter().filter(|&&(k, _)| k != user) {
                    let other =
                        placement
                            .lookup(user, demands[k], row)
                            .ok_or(Error::MissingComponent {
                                user,
                                code,
                                file: demands[k],
                                row,
                            })?;
                    xor_into(&mut piece, other);
                }
                file.extend_from_slice(&piece);
            }
        }
    }
    file.truncate(original_len);
    Ok(file)
}

/// Placement, delivery and decoding for every user, with the resulting rate and memory use.
pub fn sp_run(sppda: &SpPdaArray, library: &FileLibrary, demands: &[usize]) -> Result<SimReport> {
    let placement = sp_place(sppda, library)?;
    let transmissions = sp_deliver(sppda, library, demands)?;
    let decoded = (0..sppda.grid().cols())
        .into_par_iter()
        .map(|k| {
            let len = library.original_len(demands[k]);
            let file = sp_decode(k, &placement, &transmissions, sppda, demands, len)?;
            Ok(file == library.original(demands[k]))
        })
        .collect::<Result<Vec<bool>>>()?;
    let p = sppda.params();
    Ok(SimReport {
        users: p.k,
        subpacketization: p.f,
        rate: ratio(transmissions.len() as u128, p.f as u128),
        transmissions,
        mh_ratio: p.mh_ratio(),
        mp_ratio: p.mp_ratio(),
        decoded,
        distinct_demands: all_distinct(demands),
        helper_bytes: placement.helpers.iter().map(CacheStore::bytes).collect(),
        private_bytes: placement.privates.iter().map(CacheStore::bytes).collect(),
        subfile_len: library.subfile_len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::man_pda;
    use crate::profile::AssociationProfile;
    use crate::sppda::construct_sppda;

    fn two_man() -> SpPdaArray {
        let profile = AssociationProfile::new(vec![3, 2]).unwrap();
        construct_sppda(&man_pda(2, 1).unwrap(), &man_pda(3, 1).unwrap(), &profile).unwrap()
    }

    #[test]
    fn two_man_placement() {
        let lib = FileLibrary::synthetic(5, 60, 1, 6).unwrap();
        let p = sp_place(&two_man(), &lib).unwrap();
        assert_eq!(p.layout.helper_sets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(
            p.layout.private_sets,
            vec![vec![3], vec![4], vec![5], vec![0], vec![1]]
        );
        assert_eq!(p.layout.user_to_helper, vec![0, 0, 0, 1, 1]);
        assert!(p.helpers.iter().all(|h| h.bytes() == 5 * 3 * 10));
        assert!(p.privates.iter().all(|c| c.bytes() == 5 * 10));
    }

    #[test]
    fn two_man_delivery_components() {
        let lib = FileLibrary::synthetic(5, 60, 1, 6).unwrap();
        let t = sp_deliver(&two_man(), &lib, &[0, 1, 2, 3, 4]).unwrap();
        let comps: Vec<_> = t.iter().map(|t| t.components.clone()).collect();
        assert_eq!(
            comps,
            vec![
                vec![(4, 0), (3, 1), (1, 3), (0, 4)],
                vec![(3, 2), (2, 3), (0, 5)],
                vec![(4, 2), (2, 4), (1, 5)],
            ]
        );
        let mut expect = lib.subfile(4, 0).to_vec();
        for (f, r) in [(3, 1), (1, 3), (0, 4)] {
            xor_into(&mut expect, lib.subfile(f, r));
        }
        assert_eq!(t[0].payload, expect);
    }

    #[test]
    fn two_man_round_trip() {
        let lib = FileLibrary::synthetic(5, 61, 9, 6).unwrap();
        let r = sp_run(&two_man(), &lib, &[0, 1, 2, 3, 4]).unwrap();
        assert!(r.all_decoded());
        assert_eq!(r.rate, ratio(1, 2));
        assert_eq!(r.mh_ratio, ratio(1, 2));
        assert_eq!(r.mp_ratio, ratio(1, 6));
        assert!(r.distinct_demands);
        let r = sp_run(&two_man(), &lib, &[2, 2, 0, 2, 0]).unwrap();
        assert!(r.all_decoded());
        assert!(!r.distinct_demands);
    }

    #[test]
    fn bad_demands() {
        let lib = FileLibrary::synthetic(5, 60, 1, 6).unwrap();
        assert!(matches!(
            sp_deliver(&two_man(), &lib, &[0, 1, 2, 3, 5]),
            Err(Error::DemandOutOfRange {
                user: 4,
                demand: 5,
                files: 5
            })
        ));
        assert!(matches!(
            sp_deliver(&two_man(), &lib, &[0, 1]),
            Err(Error::DimensionMismatch(_))
        ));
        let lib = FileLibrary::synthetic(5, 60, 1, 5).unwrap();
        assert!(sp_run(&two_man(), &lib, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn decode_detects_missing_subfile() {
        let q = two_man();
        let lib = FileLibrary::synthetic(5, 60, 1, 6).unwrap();
        let mut p = sp_place(&q, &lib).unwrap();
        let t = sp_deliver(&q, &lib, &[0, 1, 2, 3, 4]).unwrap();
        // user 1 cancels W_{4,2} using helper 1
        p.helpers[0] = CacheStore::default();
        let err = sp_decode(0, &p, &t, &q, &[0, 1, 2, 3, 4], 60).unwrap_err();
        assert!(matches!(err, Error::MissingComponent { user: 0, .. }));
    }
}
