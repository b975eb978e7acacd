use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::check_permutation;
use crate::error::{Error, Result};

/// A single array cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Entry {
    Star,
    Code(u32),
}

impl Entry {
    pub fn is_star(self) -> bool {
        self == Entry::Star
    }

    pub fn code(self) -> Option<u32> {
        match self {
            Entry::Star => None,
            Entry::Code(c) => Some(c),
        }
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Entry::Star => f.write_str("*"),
            Entry::Code(c) => write!(f, "{c}"),
        }
    }
}

/// A rectangular, row-major array of entries. No PDA conditions are implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<Entry>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::NonRectangular {
                row,
                expected: cols,
                found: r.len(),
            });
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Entry,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                cells.push(f(r, c));
            }
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[Entry] {
        &self.cells
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = Entry> + '_ {
        (0..self.rows).map(move |r| self.get(r, col))
    }

    pub fn to_rows(&self) -> Vec<Vec<Entry>> {
        self.cells
            .chunks(self.cols)
            .map(<[Entry]>::to_vec)
            .collect()
    }

    /// Number of distinct codes present.
    pub fn distinct_codes(&self) -> usize {
        let mut codes: Vec<u32> = self.cells.iter().filter_map(|e| e.code()).collect();
        codes.sort_unstable();
        codes.dedup();
        codes.len()
    }

    /// Column `k` of `self` becomes column `perm[k]` of the result.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.cols)?;
        let mut cells = vec![Entry::Star; self.cells.len()];
        for r in 0..self.rows {
            for (c, &dest) in perm.iter().enumerate() {
                cells[r * self.cols + dest] = self.get(r, c);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            cells,
        })
    }

    /// Renumbers codes to `1, 2, ...` in order of first appearance in a row-major scan.
    pub fn canonicalize(&self) -> Self {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let cells = self
            .cells
            .iter()
            .map(|e| match e {
                Entry::Star => Entry::Star,
                Entry::Code(c) => {
                    let next = map.len() as u32 + 1;
                    Entry::Code(*map.entry(*c).or_insert(next))
                }
            })
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            cells,
        }
    }

    /// Rows whose restriction to `columns` holds only stars, ascending.
    pub fn all_star_rows(&self, columns: &[usize]) -> Result<Vec<usize>> {
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                what: "column",
                value: bad,
                expected: format!("0..{}", self.cols),
            });
        }
        Ok((0..self.rows)
            .filter(|&r| columns.iter().all(|&c| self.get(r, c).is_star()))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_empty() {
        let ragged = vec![vec![Entry::Star, Entry::Code(1)], vec![Entry::Star]];
        assert!(matches!(
            Grid::from_rows(ragged),
            Err(Error::NonRectangular {
                row: 1,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(Grid::from_rows(vec![]), Err(Error::EmptyGrid)));
        assert!(matches!(
            Grid::from_rows(vec![vec![]]),
            Err(Error::EmptyGrid)
        ));
    }

    #[test]
    fn canonical_numbering() {
        let g = Grid::from_rows(vec![
            vec![Entry::Code(7), Entry::Star],
            vec![Entry::Code(3), Entry::Code(7)],
        ])
        .unwrap();
        let c = g.canonicalize();
        assert_eq!(c.row(0), &[Entry::Code(1), Entry::Star]);
        assert_eq!(c.row(1), &[Entry::Code(2), Entry::Code(1)]);
        assert_eq!(c.distinct_codes(), 2);
    }
}
