use super::SpPdaArray;
use crate::error::{Error, Result};
use crate::pda::{Entry, Grid, PdaArray};
use crate::profile::AssociationProfile;

fn check_dimensions(p1: &PdaArray, p2: &PdaArray, profile: &AssociationProfile) -> Result<()> {
    if p1.k() != profile.len() {
        return Err(Error::DimensionMismatch(format!(
            "first PDA has {} columns but the profile has {} helper caches",
            p1.k(),
            profile.len()
        )));
    }
    if p2.k() != profile.largest() {
        return Err(Error::DimensionMismatch(format!(
            "second PDA has {} columns but the largest profile part is {}",
            p2.k(),
            profile.largest()
        )));
    }
    Ok(())
}

/// Distinct-code count of the array [`construct_sppda`] would build:
/// `S = Σ_s φ_P2(L_{ξ_P1(s)})`.
pub fn s_count(p1: &PdaArray, p2: &PdaArray, profile: &AssociationProfile) -> Result<usize> {
    check_dimensions(p1, p2, profile)?;
    let phi2 = p2.phi_table();
    Ok(p1
        .xi_table()
        .iter()
        .map(|&col| phi2[profile.part(col)])
        .sum())
}

/// The first `width` columns of `p2` with their codes renumbered, order
/// preserving, to `offset + 1, offset + 2, ...`.
pub fn relabeled_block(p2: &PdaArray, width: usize, offset: u32) -> Vec<Vec<Entry>> {
    let rank = prefix_ranks(p2, width);
    (0..p2.f())
        .map(|r| {
            (0..width)
                .map(|c| match p2.grid().get(r, c) {
                    Entry::Star => Entry::Star,
                    Entry::Code(v) => Entry::Code(offset + rank[v as usize]),
                })
                .collect()
        })
        .collect()
}

/// `rank[v]` is the 1-based position of code `v` among the codes of the first `width` columns.
fn prefix_ranks(p2: &PdaArray, width: usize) -> Vec<u32> {
    let mut present = vec![false; p2.s() + 1];
    for c in 0..width {
        for e in p2.grid().column(c) {
            if let Entry::Code(v) = e {
                present[v as usize] = true;
            }
        }
    }
    let mut rank = vec![0u32; p2.s() + 1];
    let mut next = 0;
    for (v, &p) in present.iter().enumerate() {
        if p {
            next += 1;
            rank[v] = next;
        }
    }
    rank
}

/// Builds the `F1·F2 × K` SP-PDA from a `Λ`-column PDA `p1` and an `L_1`-column PDA `p2`.
///
/// Each star in column `λ` of `p1` becomes an `F2 × L_λ` block of stars. Each
/// code `s` in column `λ` becomes the first `L_λ` columns of the block
/// `P̃2^(s)`: the first `L_{ξ(s)}` columns of `p2`, relabeled into a code
/// range of its own. The result has `F = F1·F2`, `Z = Z1·F2 + (F1 - Z1)·Z2`,
/// `Z^(h) = Z1·F2` and [`s_count`] codes, and is laid out group by group.
pub fn construct_sppda(
    p1: &PdaArray,
    p2: &PdaArray,
    profile: &AssociationProfile,
) -> Result<SpPdaArray> {
    check_dimensions(p1, p2, profile)?;
    let (f1, f2) = (p1.f(), p2.f());
    let xi = p1.xi_table();
    let phi2 = p2.phi_table();

    // code range start for each p1 code
    let mut offsets = Vec::with_capacity(xi.len());
    let mut acc = 0u32;
    for &col in &xi {
        offsets.push(acc);
        acc += phi2[profile.part(col)] as u32;
    }
    // ranks depend only on the block width
    let ranks: Vec<Vec<u32>> = (0..=profile.largest())
        .map(|w| prefix_ranks(p2, w))
        .collect();

    let group_start = profile.offsets();
    let mut group_of_col = Vec::with_capacity(profile.users());
    for (g, &len) in profile.parts().iter().enumerate() {
        group_of_col.extend(std::iter::repeat_n(g, len));
    }

    let grid = Grid::from_fn(f1 * f2, profile.users(), |row, col| {
        let (r1, r2) = (row / f2, row % f2);
        let lambda = group_of_col[col];
        let inner = col - group_start[lambda];
        match p1.grid().get(r1, lambda) {
            Entry::Star => Entry::Star,
            Entry::Code(s) => {
                let s = s as usize - 1;
                let width = profile.part(xi[s]);
                match p2.grid().get(r2, inner) {
                    Entry::Star => Entry::Star,
                    Entry::Code(v) => Entry::Code(offsets[s] + ranks[width][v as usize]),
                }
            }
        }
    })?;
    let zh = p1.z() * f2;
    SpPdaArray::with_identity_grouping(PdaArray::new(grid)?, profile.clone(), zh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{man_pda, PdaParams};
    use Entry::{Code, Star as X};

    #[test]
    fn two_man_from_two_man_pdas() {
        let profile = AssociationProfile::new(vec![3, 2]).unwrap();
        let q =
            construct_sppda(&man_pda(2, 1).unwrap(), &man_pda(3, 1).unwrap(), &profile).unwrap();
        let c = Code;
        assert_eq!(
            q.grid().to_rows(),
            vec![
                vec![X, X, X, X, c(1)],
                vec![X, X, X, c(1), X],
                vec![X, X, X, c(2), c(3)],
                vec![X, c(1), c(2), X, X],
                vec![c(1), X, c(3), X, X],
                vec![c(2), c(3), X, X, X],
            ]
        );
        assert_eq!(q.params().to_string(), "(5,2,(3,2),6,4,3,3)");
    }

    #[test]
    fn mixed_pair_blocks() {
        let p2 = PdaArray::from_rows(vec![
            vec![X, Code(1), X, Code(2)],
            vec![Code(1), X, Code(2), X],
        ])
        .unwrap();
        assert_eq!(
            p2.params(),
            PdaParams {
                k: 4,
                f: 2,
                z: 1,
                s: 2
            }
        );
        assert_eq!(relabeled_block(&p2, 4, 0), p2.grid().to_rows());
        assert_eq!(
            relabeled_block(&p2, 4, 2),
            vec![vec![X, Code(3), X, Code(4)], vec![Code(3), X, Code(4), X]]
        );
        assert_eq!(
            relabeled_block(&p2, 2, 4),
            vec![vec![X, Code(5)], vec![Code(5), X]]
        );
    }

    #[test]
    fn dimension_checks() {
        let profile = AssociationProfile::new(vec![3, 2]).unwrap();
        let p1 = man_pda(3, 1).unwrap();
        let p2 = man_pda(3, 1).unwrap();
        assert!(matches!(
            construct_sppda(&p1, &p2, &profile),
            Err(Error::DimensionMismatch(_))
        ));
        let p1 = man_pda(2, 1).unwrap();
        let p2 = man_pda(2, 1).unwrap();
        assert!(matches!(
            s_count(&p1, &p2, &profile),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn all_star_second_pda_gives_no_codes() {
        let profile = AssociationProfile::new(vec![3, 2]).unwrap();
        let q =
            construct_sppda(&man_pda(2, 1).unwrap(), &man_pda(3, 3).unwrap(), &profile).unwrap();
        assert_eq!(q.params().s, 0);
        assert_eq!(q.params().z, q.params().f);
    }

    #[test]
    fn zero_width_groups_are_skipped() {
        let profile = AssociationProfile::new(vec![3, 0]).unwrap();
        let p1 = man_pda(2, 1).unwrap();
        let p2 = man_pda(3, 1).unwrap();
        let q = construct_sppda(&p1, &p2, &profile).unwrap();
        assert_eq!(q.grid().cols(), 3);
        assert_eq!(q.params().s, s_count(&p1, &p2, &profile).unwrap());
        assert_eq!(q.params().s, q.grid().distinct_codes());
    }
}
