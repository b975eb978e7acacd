//! Text and JSON forms of PDAs and SP-PDAs.
//!
//! PDA text:
//!
//! ```text
//! pda K F Z S
//! * 1
//! 1 *
//! ```
//!
//! SP-PDA text adds the profile and the grouping witness, where `pi` lists
//! the 1-based group-layout position of each column or is `id`:
//!
//! ```text
//! sppda K Λ F Z Zh S
//! L: 3,2
//! pi: id
//! <F rows of K tokens>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. The JSON
//! form carries the same fields under a `schema` tag.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pda::{identity, verify_pda, Entry, Grid, PdaArray, PdaParams, Verdict};
use crate::profile::AssociationProfile;
use crate::sppda::SpPdaArray;

pub const PDA_SCHEMA: &str = "sppda.pda/1";
pub const SPPDA_SCHEMA: &str = "sppda.sppda/1";

/// Header fields of an SP-PDA file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpHeader {
    pub k: usize,
    pub lambda: usize,
    pub f: usize,
    pub z: usize,
    pub zh: usize,
    pub s: usize,
}

/// A parsed array file, checked for shape but not for validity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrayDoc {
    Pda {
        header: PdaParams,
        grid: Grid,
    },
    SpPda {
        header: SpHeader,
        profile: AssociationProfile,
        grouping: Vec<usize>,
        grid: Grid,
    },
}

impl ArrayDoc {
    pub fn grid(&self) -> &Grid {
        match self {
            Self::Pda { grid, .. } | Self::SpPda { grid, .. } => grid,
        }
    }

    /// Header `(Z, S)`.
    fn claimed_z_s(&self) -> (usize, usize) {
        match self {
            Self::Pda { header, .. } => (header.z, header.s),
            Self::SpPda { header, .. } => (header.z, header.s),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn render_row(row: &[Entry]) -> String {
    row.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_grid(grid: &Grid, out: &mut String) {
    for r in 0..grid.rows() {
        out.push_str(&render_row(grid.row(r)));
        out.push('\n');
    }
}

fn parse_token(tok: &str, line: usize, row: usize, col: usize) -> Result<Entry> {
    if tok == "*" {
        return Ok(Entry::Star);
    }
    match tok.parse::<u32>() {
        Ok(0) => Err(Error::NonPositiveCode { row, col }),
        Ok(v) => Ok(Entry::Code(v)),
        Err(_) => Err(parse_err(
            line,
            format!("expected '*' or a positive integer, found {tok:?}"),
        )),
    }
}

fn parse_row(text: &str, line: usize, row: usize) -> Result<Vec<Entry>> {
    text.split_whitespace()
        .enumerate()
        .map(|(col, t)| parse_token(t, line, row, col))
        .collect()
}

fn parse_numbers(fields: &[&str], line: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_err(line, format!("not a number: {f:?}")))
        })
        .collect()
}

fn check_shape(grid: &Grid, k: usize, f: usize) -> Result<()> {
    if grid.cols() != k || grid.rows() != f {
        return Err(parse_err(
            1,
            format!(
                "header declares {f}x{k} but the grid is {}x{}",
                grid.rows(),
                grid.cols()
            ),
        ));
    }
    Ok(())
}

fn parse_grouping(spec: &str, k: usize, line: usize) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if spec == "id" {
        return Ok(identity(k));
    }
    let one_based = parse_numbers(
        &spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect::<Vec<_>>(),
        line,
    )?;
    if one_based.contains(&0) {
        return Err(parse_err(line, "grouping positions count from 1"));
    }
    let perm: Vec<usize> = one_based.iter().map(|p| p - 1).collect();
    crate::pda::check_permutation(&perm, k)?;
    Ok(perm)
}

fn render_grouping(perm: &[usize]) -> String {
    if perm.iter().enumerate().all(|(k, &p)| k == p) {
        "id".into()
    } else {
        perm.iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses the text or JSON form, checking the header against the grid shape only.
pub fn parse_array(text: &str) -> Result<ArrayDoc> {
    if text.trim_start().starts_with('{') {
        return from_json(text);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.first().copied() {
        Some("pda") => {
            let n = parse_numbers(&fields[1..], hline)?;
            if n.len() != 4 {
                return Err(parse_err(hline, "expected `pda K F Z S`"));
            }
            let rows = lines
                .enumerate()
                .map(|(r, (line, l))| parse_row(l, line, r))
                .collect::<Result<Vec<_>>>()?;
            let grid = Grid::from_rows(rows)?;
            check_shape(&grid, n[0], n[1])?;
            Ok(ArrayDoc::Pda {
                header: PdaParams {
                    k: n[0],
                    f: n[1],
                    z: n[2],
                    s: n[3],
                },
                grid,
            })
        }
        Some("sppda") => {
            let n = parse_numbers(&fields[1..], hline)?;
            if n.len() != 6 {
                return Err(parse_err(hline, "expected `sppda K Λ F Z Zh S`"));
            }
            let header = SpHeader {
                k: n[0],
                lambda: n[1],
                f: n[2],
                z: n[3],
                zh: n[4],
                s: n[5],
            };
            let (pline, l) = lines
                .next()
                .ok_or_else(|| parse_err(hline + 1, "missing `L:` line"))?;
            let profile: AssociationProfile = l
                .strip_prefix("L:")
                .ok_or_else(|| parse_err(pline, "expected `L: ...`"))?
                .parse()?;
            if profile.len() != header.lambda || profile.users() != header.k {
                return Err(parse_err(
                    pline,
                    format!(
                        "profile {profile} does not match K={} and Λ={}",
                        header.k, header.lambda
                    ),
                ));
            }
            let (gline, l) = lines
                .next()
                .ok_or_else(|| parse_err(pline + 1, "missing `pi:` line"))?;
            let spec = l
                .strip_prefix("pi:")
                .ok_or_else(|| parse_err(gline, "expected `pi: ...`"))?;
            let grouping = parse_grouping(spec, header.k, gline)?;
            let rows = lines
                .enumerate()
                .map(|(r, (line, l))| parse_row(l, line, r))
                .collect::<Result<Vec<_>>>()?;
            let grid = Grid::from_rows(rows)?;
            check_shape(&grid, header.k, header.f)?;
            Ok(ArrayDoc::SpPda {
                header,
                profile,
                grouping,
                grid,
            })
        }
        _ => Err(parse_err(hline, "expected a `pda` or `sppda` header")),
    }
}

fn validated(doc: &ArrayDoc) -> Result<PdaArray> {
    let params = match verify_pda(doc.grid())? {
        Verdict::Valid(p) => p,
        Verdict::Invalid(v) => return Err(Error::NotAPda(v)),
    };
    let (z, s) = doc.claimed_z_s();
    if (z, s) != (params.z, params.s) {
        return Err(parse_err(
            1,
            format!(
                "header declares Z={z}, S={s} but the array has Z={}, S={}",
                params.z, params.s
            ),
        ));
    }
    PdaArray::new(doc.grid().clone())
}

/// Reads a PDA; an SP-PDA file yields its underlying PDA.
pub fn read_pda(text: &str) -> Result<PdaArray> {
    validated(&parse_array(text)?)
}

pub fn read_sppda(text: &str) -> Result<SpPdaArray> {
    let doc = parse_array(text)?;
    let base = validated(&doc)?;
    match doc {
        ArrayDoc::SpPda {
            header,
            profile,
            grouping,
            ..
        } => SpPdaArray::new(base, profile, header.zh, grouping),
        ArrayDoc::Pda { .. } => Err(parse_err(1, "expected an `sppda` header")),
    }
}

pub fn write_pda(pda: &PdaArray) -> String {
    let p = pda.params();
    let mut out = format!("pda {} {} {} {}\n", p.k, p.f, p.z, p.s);
    render_grid(pda.grid(), &mut out);
    out
}

pub fn write_sppda(sppda: &SpPdaArray) -> String {
    let p = sppda.params();
    let parts: Vec<String> = p.profile.parts().iter().map(ToString::to_string).collect();
    let mut out = format!(
        "sppda {} {} {} {} {} {}\nL: {}\npi: {}\n",
        p.k,
        p.lambda,
        p.f,
        p.z,
        p.zh,
        p.s,
        parts.join(","),
        render_grouping(sppda.grouping())
    );
    render_grid(sppda.grid(), &mut out);
    out
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    schema: String,
    k: usize,
    f: usize,
    z: usize,
    s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zh: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profile: Option<Vec<usize>>,
    /// 1-based positions, like the text form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grouping: Option<Vec<usize>>,
    rows: Vec<String>,
}

fn json_rows(grid: &Grid) -> Vec<String> {
    (0..grid.rows()).map(|r| render_row(grid.row(r))).collect()
}

pub fn pda_to_json(pda: &PdaArray) -> String {
    let p = pda.params();
    let doc = JsonDoc {
        schema: PDA_SCHEMA.into(),
        k: p.k,
        f: p.f,
        z: p.z,
        s: p.s,
        lambda: None,
        zh: None,
        profile: None,
        grouping: None,
        rows: json_rows(pda.grid()),
    };
    serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
}

pub fn sppda_to_json(sppda: &SpPdaArray) -> String {
    let p = sppda.params();
    let doc = JsonDoc {
        schema: SPPDA_SCHEMA.into(),
        k: p.k,
        f: p.f,
        z: p.z,
        s: p.s,
        lambda: Some(p.lambda),
        zh: Some(p.zh),
        profile: Some(p.profile.parts().to_vec()),
        grouping: Some(sppda.grouping().iter().map(|g| g + 1).collect()),
        rows: json_rows(sppda.grid()),
    };
    serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
}

fn from_json(text: &str) -> Result<ArrayDoc> {
    let doc: JsonDoc = serde_json::from_str(text)?;
    let rows = doc
        .rows
        .iter()
        .enumerate()
        .map(|(r, l)| parse_row(l, r + 1, r))
        .collect::<Result<Vec<_>>>()?;
    let grid = Grid::from_rows(rows)?;
    check_shape(&grid, doc.k, doc.f)?;
    match doc.schema.as_str() {
        PDA_SCHEMA => Ok(ArrayDoc::Pda {
            header: PdaParams {
                k: doc.k,
                f: doc.f,
                z: doc.z,
                s: doc.s,
            },
            grid,
        }),
        SPPDA_SCHEMA => {
            let missing =
                |field: &str| parse_err(1, format!("{SPPDA_SCHEMA} document lacks `{field}`"));
            let profile = AssociationProfile::new(doc.profile.ok_or_else(|| missing("profile"))?)?;
            let lambda = doc.lambda.ok_or_else(|| missing("lambda"))?;
            if profile.len() != lambda || profile.users() != doc.k {
                return Err(parse_err(
                    1,
                    format!(
                        "profile {profile} does not match K={} and Λ={lambda}",
                        doc.k
                    ),
                ));
            }
            let grouping = match doc.grouping {
                None => identity(doc.k),
                Some(g) => {
                    if g.contains(&0) {
                        return Err(parse_err(1, "grouping positions count from 1"));
                    }
                    let perm: Vec<usize> = g.iter().map(|p| p - 1).collect();
                    crate::pda::check_permutation(&perm, doc.k)?;
                    perm
                }
            };
            Ok(ArrayDoc::SpPda {
                header: SpHeader {
                    k: doc.k,
                    lambda,
                    f: doc.f,
                    z: doc.z,
                    zh: doc.zh.ok_or_else(|| missing("zh"))?,
                    s: doc.s,
                },
                profile,
                grouping,
                grid,
            })
        }
        other => Err(parse_err(1, format!("unknown schema {other:?}"))),
    }
}
