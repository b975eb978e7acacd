use std::collections::HashMap;

use itertools::Itertools;

use super::{Entry, Grid, PdaArray};
use crate::error::{Error, Result};

/// The `(t+1)`-regular MaN PDA with `F = C(K,t)`, `Z = C(K-1,t-1)`, `S = C(K,t+1)`.
///
/// Rows are the `t`-subsets of the columns in lexicographic order. Entry
/// `(T, k)` is a star when `k ∈ T`, otherwise the lexicographic rank of the
/// `(t+1)`-subset `T ∪ {k}` (1-based), which coincides with first-appearance
/// numbering.
pub fn man_pda(k: usize, t: usize) -> Result<PdaArray> {
    if k == 0 || t > k {
        return Err(Error::ParameterOutOfRange(format!(
            "MaN PDA needs K >= 1 and 0 <= t <= K, got K={k}, t={t}"
        )));
    }
    let rank: HashMap<Vec<usize>, u32> = (0..k)
        .combinations(t + 1)
        .enumerate()
        .map(|(i, set)| (set, i as u32 + 1))
        .collect();
    let rows: Vec<Vec<Entry>> = (0..k)
        .combinations(t)
        .map(|subset| {
            (0..k)
                .map(|col| match subset.binary_search(&col) {
                    Ok(_) => Entry::Star,
                    Err(pos) => {
                        let mut union = subset.clone();
                        union.insert(pos, col);
                        Entry::Code(rank[&union])
                    }
                })
                .collect()
        })
        .collect();
    PdaArray::from_rows(rows)
}

/// The `(m+1)`-regular `(q(m+1), q^m, q^(m-1), q^(m+1) - q^m)` PDA.
///
/// Rows are the vectors `a ∈ Z_q^m` in lexicographic order, extended with the
/// check symbol `a_m = Σ a_k mod q`. Columns are the pairs `(i, j)` with
/// `i ∈ 0..=m`, `j ∈ 0..q`, ordered group by group (`i` major). Cell
/// `(a, (i, j))` is a star when `a_i = j`; otherwise it carries the vector `a`
/// with coordinate `i` replaced by `j`. Such vectors fail the check equation,
/// each occurs once per group, and every one of them already occurs in group
/// 0, so the left-most column of any code lies among the first `q`.
pub fn construction_a_pda(q: usize, m: usize) -> Result<PdaArray> {
    if q < 2 || m < 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "Construction A needs q >= 2 and m >= 1, got q={q}, m={m}"
        )));
    }
    let rows = q
        .checked_pow(m as u32)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("q^m overflows for q={q}, m={m}")))?;
    let cols = q * (m + 1);
    let mut labels: HashMap<Vec<usize>, u32> = HashMap::new();
    let grid = Grid::from_fn(rows, cols, |row, col| {
        let mut word = digits(row, q, m);
        word.push(word.iter().sum::<usize>() % q);
        let (i, j) = (col / q, col % q);
        if word[i] == j {
            Entry::Star
        } else {
            word[i] = j;
            let next = labels.len() as u32 + 1;
            Entry::Code(*labels.entry(word).or_insert(next))
        }
    })?;
    PdaArray::new(grid)
}

/// Base-`q` digits of `n`, most significant first, padded to `len`.
fn digits(mut n: usize, q: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = n % q;
        n /= q;
    }
    out
}
