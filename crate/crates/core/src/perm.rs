//! Column permutations of the two input PDAs and their effect on the
//! number of codes of the constructed SP-PDA.
//!
//! For column orders `pi1` of `p1` and `pi2` of `p2`,
//! `S(pi1, pi2) = Σ_λ c_λ(pi1) · φ_{pi2}(L_λ)`, where `c_λ` counts the codes
//! of `p1` whose left-most column lands at position `λ`. Both factors are
//! computed from the column sets of each code, so no array is materialized.

use std::collections::BinaryHeap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pda::{identity, invert, PdaArray};
use crate::profile::AssociationProfile;
use crate::sppda::s_count;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `(φ(1), ..., φ(K))` of a PDA.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiVector(pub Vec<usize>);

impl PhiVector {
    pub fn of(pda: &PdaArray) -> Self {
        Self(pda.phi_table()[1..].to_vec())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        dominated(&self.0, &other.0)
    }
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Column orders for both inputs and the resulting code count.
///
/// `pi1[k]` is the new position of column `k` of `p1`, likewise `pi2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PermutationPair {
    pub s_value: usize,
    pub pi1: Vec<usize>,
    pub pi2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub best: PermutationPair,
    pub s_min: usize,
    pub s_max: usize,
    /// The `top_k` smallest pairs by `(s_value, pi1, pi2)`.
    pub top: Vec<PermutationPair>,
    pub evaluations: u128,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128)
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .unwrap_or(u128::MAX)
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Left-most position of each code after moving column `k` to `perm[k]`.
fn permuted_xi(code_columns: &[Vec<usize>], perm: &[usize]) -> Vec<usize> {
    code_columns
        .iter()
        .map(|cols| {
            cols.iter()
                .map(|&c| perm[c])
                .min()
                .expect("codes occur somewhere")
        })
        .collect()
}

/// `φ` for every prefix length `0..=k` of the permuted array.
fn permuted_phi(code_columns: &[Vec<usize>], perm: &[usize]) -> Vec<usize> {
    let k = perm.len();
    let mut first = vec![0usize; k + 1];
    for x in permuted_xi(code_columns, perm) {
        first[x + 1] += 1;
    }
    for l in 1..=k {
        first[l] += first[l - 1];
    }
    first
}

/// `c_λ`: how many codes have their left-most column at position `λ`.
fn column_heads(code_columns: &[Vec<usize>], perm: &[usize]) -> Vec<usize> {
    let mut c = vec![0usize; perm.len()];
    for x in permuted_xi(code_columns, perm) {
        c[x] += 1;
    }
    c
}

fn profile_weights(phi: &[usize], profile: &AssociationProfile) -> Vec<usize> {
    profile.parts().iter().map(|&l| phi[l]).collect()
}

fn check_dimensions(p1: &PdaArray, p2: &PdaArray, profile: &AssociationProfile) -> Result<()> {
    // s_count carries the dimension checks
    s_count(p1, p2, profile).map(|_| ())
}

/// Evaluates every pair of column orders and returns the smallest, the
/// extremes and the `top_k` best pairs.
///
/// Ties are broken by the lexicographically smallest `(pi1, pi2)`. Fails
/// with [`Error::BudgetExceeded`] when `Λ!·L_1!` exceeds `budget`.
pub fn exhaustive_best(
    p1: &PdaArray,
    p2: &PdaArray,
    profile: &AssociationProfile,
    budget: u128,
    top_k: usize,
) -> Result<SearchOutcome> {
    check_dimensions(p1, p2, profile)?;
    let needed = factorial(p1.k()).saturating_mul(factorial(p2.k()));
    check_budget(needed, budget)?;

    let cols1 = p1.code_columns();
    let cols2 = p2.code_columns();
    let perms1: Vec<Vec<usize>> = (0..p1.k()).permutations(p1.k()).collect();

    // distinct weight vectors (φ_{pi2}(L_λ))_λ; each pi2 keeps a class id
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of: Vec<u32> = Vec::with_capacity(factorial(p2.k()) as usize);
    let mut lookup = std::collections::HashMap::new();
    for pi2 in (0..p2.k()).permutations(p2.k()) {
        let w = profile_weights(&permuted_phi(&cols2, &pi2), profile);
        let id = *lookup.entry(w.clone()).or_insert_with(|| {
            classes.push(w);
            classes.len() as u32 - 1
        });
        class_of.push(id);
    }
    let perms2: Vec<Vec<usize>> = if top_k > 0 {
        (0..p2.k()).permutations(p2.k()).collect()
    } else {
        Vec::new()
    };

    struct Partial {
        s_min: usize,
        s_max: usize,
        best: (usize, usize, usize),
        top: BinaryHeap<(usize, usize, usize)>,
    }

    let partials: Vec<Partial> = perms1
        .par_iter()
        .enumerate()
        .fold(
            || Partial {
                s_min: usize::MAX,
                s_max: 0,
                best: (usize::MAX, usize::MAX, usize::MAX),
                top: BinaryHeap::new(),
            },
            |mut acc, (i1, pi1)| {
                let heads = column_heads(&cols1, pi1);
                let values: Vec<usize> = classes
                    .iter()
                    .map(|w| heads.iter().zip(w).map(|(c, w)| c * w).sum())
                    .collect();
                let lo = *values.iter().min().expect("at least one class");
                let hi = *values.iter().max().expect("at least one class");
                acc.s_max = acc.s_max.max(hi);
                if lo <= acc.s_min {
                    let i2 = class_of
                        .iter()
                        .position(|&c| values[c as usize] == lo)
                        .expect("minimum attained");
                    acc.s_min = lo;
                    acc.best = acc.best.min((lo, i1, i2));
                }
                if top_k > 0 {
                    for (i2, &c) in class_of.iter().enumerate() {
                        let key = (values[c as usize], i1, i2);
                        if acc.top.len() < top_k {
                            acc.top.push(key);
                        } else if key < *acc.top.peek().expect("heap is full") {
                            acc.top.pop();
                            acc.top.push(key);
                        }
                    }
                }
                acc
            },
        )
        .collect();

    let s_min = partials
        .iter()
        .map(|p| p.s_min)
        .min()
        .expect("at least one permutation");
    let s_max = partials
        .iter()
        .map(|p| p.s_max)
        .max()
        .expect("at least one permutation");
    let (_, b1, b2) = partials
        .iter()
        .map(|p| p.best)
        .min()
        .expect("at least one permutation");
    let mut top: Vec<(usize, usize, usize)> = partials
        .into_iter()
        .flat_map(|p| p.top.into_vec())
        .collect();
    top.sort_unstable();
    top.truncate(top_k);

    let pi2_at = |i2: usize| -> Vec<usize> {
        perms2.get(i2).cloned().unwrap_or_else(|| {
            (0..p2.k())
                .permutations(p2.k())
                .nth(i2)
                .expect("index in range")
        })
    };
    let best = PermutationPair {
        s_value: s_min,
        pi1: perms1[b1].clone(),
        pi2: pi2_at(b2),
    };
    let top = top
        .into_iter()
        .map(|(s, i1, i2)| PermutationPair {
            s_value: s,
            pi1: perms1[i1].clone(),
            pi2: perms2[i2].clone(),
        })
        .collect();
    Ok(SearchOutcome {
        best,
        s_min,
        s_max,
        top,
        evaluations: needed,
    })
}

/// Code count for one pair of column orders, without building any array.
pub fn s_for_pair(
    p1: &PdaArray,
    p2: &PdaArray,
    profile: &AssociationProfile,
    pi1: &[usize],
    pi2: &[usize],
) -> Result<usize> {
    check_dimensions(p1, p2, profile)?;
    crate::pda::check_permutation(pi1, p1.k())?;
    crate::pda::check_permutation(pi2, p2.k())?;
    let heads = column_heads(&p1.code_columns(), pi1);
    let w = profile_weights(&permuted_phi(&p2.code_columns(), pi2), profile);
    Ok(heads.iter().zip(&w).map(|(c, w)| c * w).sum())
}

/// Componentwise minimum of `score` over all column orders and one order attaining it, if any does.
fn minimal_order(
    pda: &PdaArray,
    budget: u128,
    score: impl Fn(&[usize]) -> Vec<usize>,
) -> Result<(Vec<usize>, Option<Vec<usize>>)> {
    check_budget(factorial(pda.k()), budget)?;
    let cols = pda.code_columns();
    let scored: Vec<(Vec<usize>, Vec<usize>)> = (0..pda.k())
        .permutations(pda.k())
        .map(|p| (score(&permuted_phi(&cols, &p)), p))
        .collect();
    let mut floor = scored[0].0.clone();
    for (v, _) in &scored {
        for (f, x) in floor.iter_mut().zip(v) {
            *f = (*f).min(*x);
        }
    }
    let witness = scored
        .into_iter()
        .find(|(v, _)| *v == floor)
        .map(|(_, p)| p);
    Ok((floor, witness))
}

fn e1_score(phi: &[usize]) -> Vec<usize> {
    phi[1..].to_vec()
}

fn e2_score(phi: &[usize], profile: &AssociationProfile) -> Vec<usize> {
    profile.parts().iter().rev().map(|&l| phi[l]).collect()
}

fn check_e2_dimensions(p2: &PdaArray, profile: &AssociationProfile) -> Result<()> {
    if p2.k() != profile.largest() {
        return Err(Error::DimensionMismatch(format!(
            "PDA has {} columns but the largest profile part is {}",
            p2.k(),
            profile.largest()
        )));
    }
    Ok(())
}

/// Whether `p1`'s φ-vector is componentwise no larger than that of every equivalent PDA.
pub fn check_e1(p1: &PdaArray, budget: u128) -> Result<bool> {
    let (floor, _) = minimal_order(p1, budget, e1_score)?;
    Ok(PhiVector::of(p1).0 == floor)
}

/// Whether `(φ(L_Λ), ..., φ(L_1))` of `p2` is componentwise no larger than
/// that of every equivalent PDA.
pub fn check_e2(p2: &PdaArray, profile: &AssociationProfile, budget: u128) -> Result<bool> {
    check_e2_dimensions(p2, profile)?;
    let (floor, _) = minimal_order(p2, budget, |phi| e2_score(phi, profile))?;
    Ok(e2_score(&p2.phi_table(), profile) == floor)
}

/// A column order under which `p1` satisfies the E1 condition, if one exists.
pub fn e1_order(p1: &PdaArray, budget: u128) -> Result<Option<Vec<usize>>> {
    Ok(minimal_order(p1, budget, e1_score)?.1)
}

/// A column order under which `p2` satisfies the E2 condition for `profile`, if one exists.
pub fn e2_order(
    p2: &PdaArray,
    profile: &AssociationProfile,
    budget: u128,
) -> Result<Option<Vec<usize>>> {
    check_e2_dimensions(p2, profile)?;
    Ok(minimal_order(p2, budget, |phi| e2_score(phi, profile))?.1)
}

/// Which input of the construction a PDA plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct Reordered {
    pub pda: PdaArray,
    /// `perm[k]` is the new position of column `k`.
    pub perm: Vec<usize>,
}

/// Greedy column order for large inputs where factorial search is out of reach.
///
/// Columns are appended one at a time, each time picking the column that
/// introduces the fewest new codes, then improved by pairwise swaps. The
/// result is kept only when its score vector (the full φ-vector for
/// [`Side::First`], φ at the profile lengths for [`Side::Second`]) is
/// componentwise no larger than the input's, so the code count of the
/// construction never grows.
pub fn heuristic_reorder(
    pda: &PdaArray,
    profile: &AssociationProfile,
    side: Side,
) -> Result<Reordered> {
    let expected = match side {
        Side::First => profile.len(),
        Side::Second => profile.largest(),
    };
    if pda.k() != expected {
        return Err(Error::DimensionMismatch(format!(
            "PDA has {} columns, expected {expected}",
            pda.k()
        )));
    }
    let cols = pda.code_columns();
    let score = |perm: &[usize]| -> Vec<usize> {
        let phi = permuted_phi(&cols, perm);
        match side {
            Side::First => e1_score(&phi),
            Side::Second => e2_score(&phi, profile),
        }
    };

    let k = pda.k();
    let baseline = identity(k);
    let base_score = score(&baseline);

    let mut seen = vec![false; pda.s()];
    let mut order = Vec::with_capacity(k);
    let mut left: Vec<usize> = (0..k).collect();
    let codes_in: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let mut v: Vec<usize> = pda
                .grid()
                .column(c)
                .filter_map(|e| e.code())
                .map(|s| s as usize - 1)
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    while !left.is_empty() {
        let (at, _) = left
            .iter()
            .enumerate()
            .min_by_key(|(_, &c)| (codes_in[c].iter().filter(|&&s| !seen[s]).count(), c))
            .expect("columns left");
        let c = left.remove(at);
        for &s in &codes_in[c] {
            seen[s] = true;
        }
        order.push(c);
    }

    let greedy = invert(&order);
    let mut current = if dominated(&score(&greedy), &base_score) {
        greedy
    } else {
        baseline
    };
    let mut current_score = score(&current);
    loop {
        let mut improved = false;
        for (a, b) in (0..k).tuple_combinations() {
            let mut next = current.clone();
            next.swap(a, b);
            let s = score(&next);
            if dominated(&s, &current_score) && s != current_score {
                current = next;
                current_score = s;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(Reordered {
        pda: pda.permute_columns(&current)?,
        perm: current,
    })
}
