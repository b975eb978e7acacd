//! Random PDAs for property testing.
//!
//! A star pattern with `Z` stars per column is drawn uniformly, then the
//! empty cells are visited in random order and each joins the first existing
//! code it is compatible with, or opens a new code. Compatibility is C3
//! against every cell already holding that code, so the output is always a
//! valid PDA.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pda::{Entry, Grid, PdaArray};
use crate::profile::AssociationProfile;

/// A random `(k, f, z, ·)` PDA; requires `k >= 1`, `f >= 1` and `z <= f`.
pub fn random_pda<R: Rng + ?Sized>(k: usize, f: usize, z: usize, rng: &mut R) -> Result<PdaArray> {
    if k == 0 || f == 0 || z > f {
        return Err(Error::ParameterOutOfRange(format!(
            "random PDA needs K >= 1, F >= 1 and Z <= F, got K={k}, F={f}, Z={z}"
        )));
    }
    let mut star = vec![false; f * k];
    let mut rows: Vec<usize> = (0..f).collect();
    for col in 0..k {
        rows.shuffle(rng);
        for &r in &rows[..z] {
            star[r * k + col] = true;
        }
    }
    let mut cells: Vec<(usize, usize)> = (0..f)
        .flat_map(|r| (0..k).map(move |c| (r, c)))
        .filter(|&(r, c)| !star[r * k + c])
        .collect();
    cells.shuffle(rng);

    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut code = vec![0u32; f * k];
    for (r, c) in cells {
        let fits = |members: &Vec<(usize, usize)>| {
            members
                .iter()
                .all(|&(r2, c2)| r2 != r && c2 != c && star[r * k + c2] && star[r2 * k + c])
        };
        let slot = match classes.iter().position(fits) {
            Some(i) => i,
            None => {
                classes.push(Vec::new());
                classes.len() - 1
            }
        };
        classes[slot].push((r, c));
        code[r * k + c] = slot as u32 + 1;
    }
    let grid = Grid::from_fn(f, k, |r, c| {
        if star[r * k + c] {
            Entry::Star
        } else {
            Entry::Code(code[r * k + c])
        }
    })?;
    PdaArray::new(grid.canonicalize())
}

/// A random profile with `lambda` parts and largest part exactly `largest`.
pub fn random_profile<R: Rng + ?Sized>(
    lambda: usize,
    largest: usize,
    rng: &mut R,
) -> Result<AssociationProfile> {
    if lambda == 0 || largest == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "random profile needs Λ >= 1 and L_1 >= 1, got Λ={lambda}, L_1={largest}"
        )));
    }
    loop {
        let mut parts: Vec<usize> = (1..lambda).map(|_| rng.random_range(0..=largest)).collect();
        parts.push(largest);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if let Ok(p) = AssociationProfile::new(parts) {
            return Ok(p);
        }
    }
}
