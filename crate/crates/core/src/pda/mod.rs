//! Placement delivery arrays.
//!
//! An `F × K` array of stars and positive integer codes is a `(K, F, Z, S)`
//! PDA when every column holds `Z` stars (C1), the codes are exactly
//! `1..=S` (C2), and any two equal codes sit in distinct rows and columns
//! with stars at the two opposite corners of their 2×2 sub-array (C3).
//!
//! Rows play the role of subfiles and columns the role of users. All row,
//! column and permutation indices in this API are 0-based; codes are the
//! positive integers stored in the array.

mod families;
mod grid;
mod verify;

pub use families::{construction_a_pda, man_pda};
pub use grid::{Entry, Grid};
pub use verify::{verify_pda, Verdict, Violation, ViolationKind};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(K, F, Z, S)` of a valid PDA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdaParams {
    /// Columns (users).
    pub k: usize,
    /// Rows (subpacketization).
    pub f: usize,
    /// Stars per column.
    pub z: usize,
    /// Distinct codes.
    pub s: usize,
}

impl std::fmt::Display for PdaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.f, self.z, self.s)
    }
}

/// A grid that has passed [`verify_pda`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaArray {
    grid: Grid,
    params: PdaParams,
}

impl PdaArray {
    /// Validates `grid`, failing with [`Error::NotAPda`] if any condition is violated.
    pub fn new(grid: Grid) -> Result<Self> {
        match verify_pda(&grid)? {
            Verdict::Valid(params) => Ok(Self { grid, params }),
            Verdict::Invalid(violations) => Err(Error::NotAPda(violations)),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        Self::new(Grid::from_rows(rows)?)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn into_grid(self) -> Grid {
        self.grid
    }

    pub fn params(&self) -> PdaParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn f(&self) -> usize {
        self.params.f
    }

    pub fn z(&self) -> usize {
        self.params.z
    }

    pub fn s(&self) -> usize {
        self.params.s
    }

    /// Occurrence count `g` shared by every code, if there is one.
    ///
    /// Arrays without codes have no regularity.
    pub fn regularity(&self) -> Option<usize> {
        let mut counts = vec![0usize; self.params.s + 1];
        for e in self.grid.cells() {
            if let Entry::Code(c) = e {
                counts[*c as usize] += 1;
            }
        }
        let g = *counts.get(1)?;
        counts[1..].iter().all(|&c| c == g).then_some(g)
    }

    /// Moves column `k` to position `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self {
            grid: self.grid.permute_columns(perm)?,
            params: self.params,
        })
    }

    /// Same array with codes renumbered in order of first appearance (row-major).
    pub fn canonical(&self) -> Self {
        Self {
            grid: self.grid.canonicalize(),
            params: self.params,
        }
    }

    /// Number of distinct codes in the first `prefix` columns, for `1 <= prefix <= K`.
    pub fn phi(&self, prefix: usize) -> Result<usize> {
        if prefix == 0 || prefix > self.params.k {
            return Err(Error::IndexOutOfRange {
                what: "prefix length",
                value: prefix,
                expected: format!("1..={}", self.params.k),
            });
        }
        Ok(self.phi_table()[prefix])
    }

    /// `phi` for every prefix length `0..=K` (entry 0 is always 0).
    pub fn phi_table(&self) -> Vec<usize> {
        let mut seen = vec![false; self.params.s + 1];
        let mut table = Vec::with_capacity(self.params.k + 1);
        let mut count = 0;
        table.push(0);
        for col in 0..self.params.k {
            for row in 0..self.params.f {
                if let Entry::Code(c) = self.grid.get(row, col) {
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        count += 1;
                    }
                }
            }
            table.push(count);
        }
        table
    }

    /// Left-most column holding `code`.
    pub fn xi(&self, code: u32) -> Result<usize> {
        if code == 0 || code as usize > self.params.s {
            return Err(Error::CodeAbsent(code));
        }
        (0..self.params.k)
            .find(|&col| (0..self.params.f).any(|row| self.grid.get(row, col) == Entry::Code(code)))
            .ok_or(Error::CodeAbsent(code))
    }

    /// `xi` for every code; index `s - 1` holds the column of code `s`.
    pub fn xi_table(&self) -> Vec<usize> {
        let mut table = vec![usize::MAX; self.params.s];
        for col in (0..self.params.k).rev() {
            for row in 0..self.params.f {
                if let Entry::Code(c) = self.grid.get(row, col) {
                    table[c as usize - 1] = col;
                }
            }
        }
        table
    }

    /// Columns containing each code, ascending; index `s - 1` is code `s`.
    pub fn code_columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.params.s];
        for col in 0..self.params.k {
            for row in 0..self.params.f {
                if let Entry::Code(c) = self.grid.get(row, col) {
                    cols[c as usize - 1].push(col);
                }
            }
        }
        cols
    }

    /// Number of rows that are all stars when restricted to `columns`.
    pub fn all_star_row_count(&self, columns: &[usize]) -> Result<usize> {
        Ok(self.grid.all_star_rows(columns)?.len())
    }
}

/// A permutation `p` with `a.permute_columns(p) == b`, if the two arrays are equivalent.
pub fn column_matching(a: &Grid, b: &Grid) -> Option<Vec<usize>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let mut used = vec![false; b.cols()];
    let mut perm = Vec::with_capacity(a.cols());
    for ca in 0..a.cols() {
        let target = (0..b.cols())
            .find(|&cb| !used[cb] && (0..a.rows()).all(|r| a.get(r, ca) == b.get(r, cb)))?;
        used[target] = true;
        perm.push(target);
    }
    Some(perm)
}

pub(crate) fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    let ok = perm.len() == len
        && perm
            .iter()
            .all(|&p| p < len && !std::mem::replace(&mut seen[p], true));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPermutation {
            len,
            perm: perm.to_vec(),
        })
    }
}

pub fn identity(len: usize) -> Vec<usize> {
    (0..len).collect()
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (k, &p) in perm.iter().enumerate() {
        inv[p] = k;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use Entry::Star as X;

    fn c(v: u32) -> Entry {
        Entry::Code(v)
    }

    pub(crate) fn two_man() -> PdaArray {
        PdaArray::from_rows(vec![
            vec![X, X, X, X, c(1)],
            vec![X, X, X, c(1), X],
            vec![X, X, X, c(2), c(3)],
            vec![X, c(1), c(2), X, X],
            vec![c(1), X, c(3), X, X],
            vec![c(2), c(3), X, X, X],
        ])
        .unwrap()
    }

    #[test]
    fn two_man_parameters_and_regularity() {
        let q = two_man();
        assert_eq!(
            q.params(),
            PdaParams {
                k: 5,
                f: 6,
                z: 4,
                s: 3
            }
        );
        // codes 1, 2, 3 occur 4, 2, 2 times
        assert_eq!(q.regularity(), None);
    }

    #[test]
    fn smallest_man_regularity() {
        let p = PdaArray::from_rows(vec![vec![X, c(1)], vec![c(1), X]]).unwrap();
        assert_eq!(p.regularity(), Some(2));
        assert_eq!(p.xi(1).unwrap(), 0);
        assert_eq!(p.phi(1).unwrap(), 1);
    }

    #[test]
    fn phi_bounds() {
        let q = two_man();
        assert!(matches!(q.phi(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(q.phi(6), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(q.phi(5).unwrap(), 3);
        assert_eq!(q.phi_table(), vec![0, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn xi_absent() {
        let q = two_man();
        assert!(matches!(q.xi(4), Err(Error::CodeAbsent(4))));
        assert!(matches!(q.xi(0), Err(Error::CodeAbsent(0))));
        assert_eq!(q.xi_table(), vec![0, 0, 1]);
    }

    #[test]
    fn all_star_rows_of_first_group() {
        let q = two_man();
        assert_eq!(q.all_star_row_count(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(q.all_star_row_count(&[3, 4]).unwrap(), 3);
        assert_eq!(q.all_star_row_count(&[0, 1, 2, 3, 4]).unwrap(), 0);
        assert!(q.all_star_row_count(&[7]).is_err());
    }

    #[test]
    fn permutation_round_trip() {
        let q = two_man();
        assert_eq!(q.permute_columns(&identity(5)).unwrap(), q);
        let perm = vec![4, 2, 0, 1, 3];
        let moved = q.permute_columns(&perm).unwrap();
        assert_eq!(moved.params(), q.params());
        assert_eq!(column_matching(q.grid(), moved.grid()), Some(perm.clone()));
        assert_eq!(moved.permute_columns(&invert(&perm)).unwrap(), q);
        assert!(matches!(
            q.permute_columns(&[0, 0, 1, 2, 3]),
            Err(Error::InvalidPermutation { .. })
        ));
        assert!(q.permute_columns(&[0, 1, 2]).is_err());
    }

    #[test]
    fn swap_smallest() {
        let p = PdaArray::from_rows(vec![vec![X, c(1)], vec![c(1), X]]).unwrap();
        let swapped = p.permute_columns(&[1, 0]).unwrap();
        assert_eq!(swapped.grid().row(0), &[c(1), X]);
        assert_eq!(swapped.grid().row(1), &[X, c(1)]);
        assert_eq!(
            swapped.params(),
            PdaParams {
                k: 2,
                f: 2,
                z: 1,
                s: 1
            }
        );
    }
}
