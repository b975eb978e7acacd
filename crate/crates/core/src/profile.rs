//! User-to-helper association profiles.
//!
//! A profile `L = (L_1, ..., L_Λ)` is an integer partition of the user count
//! `K` into `Λ` non-increasing parts, zeros allowed, with `K >= Λ`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AssociationProfile {
    parts: Vec<usize>,
}

impl AssociationProfile {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidProfile("profile has no parts".into()));
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidProfile(format!(
                "parts must be non-increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        let k: usize = parts.iter().sum();
        if k < parts.len() {
            return Err(Error::InvalidProfile(format!(
                "{} users cannot be spread over {} helper caches",
                k,
                parts.len()
            )));
        }
        Ok(Self { parts })
    }

    /// `lambda` groups of `size` users each.
    pub fn uniform(lambda: usize, size: usize) -> Result<Self> {
        Self::new(vec![size; lambda])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Λ, the number of helper caches.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// K, the number of users.
    pub fn users(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `L_1`, the largest part.
    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn part(&self, group: usize) -> usize {
        self.parts[group]
    }

    pub fn is_uniform(&self) -> bool {
        self.parts.iter().all(|&p| p == self.parts[0])
    }

    /// First column of each group when columns are laid out group by group.
    pub fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                let start = *acc;
                *acc += p;
                Some(start)
            })
            .collect()
    }

    /// Group owning the column at `position` of the grouped layout.
    pub fn group_of(&self, position: usize) -> Option<usize> {
        let mut end = 0;
        self.parts.iter().position(|&p| {
            end += p;
            position < end
        })
    }

    /// Every partition of `users` into exactly `len` non-increasing parts (zeros allowed),
    /// in reverse lexicographic order.
    pub fn enumerate(users: usize, len: usize) -> Vec<Self> {
        fn rec(
            left: usize,
            slots: usize,
            cap: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if slots == 0 {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            // the first part is at least the average of what is left
            let lo = left.div_ceil(slots);
            for first in (lo..=cap.min(left)).rev() {
                cur.push(first);
                rec(left - first, slots - 1, first, cur, out);
                cur.pop();
            }
        }
        if len == 0 || users < len {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(users, len, users, &mut Vec::with_capacity(len), &mut out);
        out.into_iter().map(|parts| Self { parts }).collect()
    }
}

impl fmt::Display for AssociationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Parses a comma- or space-separated list, optionally parenthesized.
impl FromStr for AssociationProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidProfile(format!("not a count: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<usize>> for AssociationProfile {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<AssociationProfile> for Vec<usize> {
    fn from(p: AssociationProfile) -> Self {
        p.parts
    }
}
