use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Entry, Grid, PdaParams};
use crate::error::{Error, Result};

/// Which PDA condition a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    /// Unequal star counts across columns.
    C1,
    /// Code values are not exactly `1..=S`.
    C2,
    /// Two equal codes share a row or a column.
    C3a,
    /// Two equal codes whose opposite corners are not both stars.
    C3b,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::C1 => "C1",
            ViolationKind::C2 => "C2",
            ViolationKind::C3a => "C3-a",
            ViolationKind::C3b => "C3-b",
        })
    }
}

/// A single defect found by [`verify_pda`]. Coordinates are `(row, column)`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    StarCount {
        col: usize,
        found: usize,
        expected: usize,
    },
    MissingCode {
        code: u32,
        max: u32,
    },
    SharedLine {
        code: u32,
        first: (usize, usize),
        second: (usize, usize),
    },
    MissingStar {
        code: u32,
        first: (usize, usize),
        second: (usize, usize),
        at: (usize, usize),
        found: Entry,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::StarCount { .. } => ViolationKind::C1,
            Violation::MissingCode { .. } => ViolationKind::C2,
            Violation::SharedLine { .. } => ViolationKind::C3a,
            Violation::MissingStar { .. } => ViolationKind::C3b,
        }
    }
}

// Reports number rows and columns from 1.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |(r, c): (usize, usize)| format!("({},{})", r + 1, c + 1);
        write!(f, "{}: ", self.kind())?;
        match self {
            Violation::StarCount {
                col,
                found,
                expected,
            } => {
                write!(
                    f,
                    "column {} has {found} stars, column 1 has {expected}",
                    col + 1
                )
            }
            Violation::MissingCode { code, max } => {
                write!(f, "code {code} is missing although codes go up to {max}")
            }
            Violation::SharedLine {
                code,
                first,
                second,
            } => write!(
                f,
                "code {code} at {} and {} shares a {}",
                one(*first),
                one(*second),
                if first.0 == second.0 { "row" } else { "column" }
            ),
            Violation::MissingStar {
                code,
                first,
                second,
                at,
                found,
            } => write!(
                f,
                "code {code} at {} and {} needs a star at {}, found {found}",
                one(*first),
                one(*second),
                one(*at)
            ),
        }
    }
}

/// Outcome of checking a grid against the PDA conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid(PdaParams),
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn params(&self) -> Option<PdaParams> {
        match self {
            Verdict::Valid(p) => Some(*p),
            Verdict::Invalid(_) => None,
        }
    }
}

/// Checks C1, C2 and C3, collecting every violation.
///
/// A grid with no codes at all is accepted with `S = 0`.
pub fn verify_pda(grid: &Grid) -> Result<Verdict> {
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut positions: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for r in 0..rows {
        for c in 0..cols {
            if let Entry::Code(v) = grid.get(r, c) {
                if v == 0 {
                    return Err(Error::NonPositiveCode { row: r, col: c });
                }
                positions.entry(v).or_default().push((r, c));
            }
        }
    }

    let mut violations = Vec::new();

    let stars: Vec<usize> = (0..cols)
        .map(|c| grid.column(c).filter(|e| e.is_star()).count())
        .collect();
    let z = stars[0];
    for (col, &found) in stars.iter().enumerate().skip(1) {
        if found != z {
            violations.push(Violation::StarCount {
                col,
                found,
                expected: z,
            });
        }
    }

    let s = positions.len();
    if let Some(&max) = positions.keys().next_back() {
        for code in 1..max {
            if !positions.contains_key(&code) {
                violations.push(Violation::MissingCode { code, max });
            }
        }
    }

    for (&code, cells) in &positions {
        for (i, &first) in cells.iter().enumerate() {
            for &second in &cells[i + 1..] {
                let (j1, k1) = first;
                let (j2, k2) = second;
                if j1 == j2 || k1 == k2 {
                    violations.push(Violation::SharedLine {
                        code,
                        first,
                        second,
                    });
                    continue;
                }
                for at in [(j1, k2), (j2, k1)] {
                    let found = grid.get(at.0, at.1);
                    if !found.is_star() {
                        violations.push(Violation::MissingStar {
                            code,
                            first,
                            second,
                            at,
                            found,
                        });
                    }
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(Verdict::Valid(PdaParams {
            k: cols,
            f: rows,
            z,
            s,
        }))
    } else {
        Ok(Verdict::Invalid(violations))
    }
}
