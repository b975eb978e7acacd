//! Transmission logs and run reports.
//!
//! The log holds one JSON object per line and per code:
//! `{"code":1,"payload":"<hex>","components":[{"user":5,"row":1,"file":1}, ...]}`,
//! with users, rows and files counted from 1.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{SimReport, Transmission};
use crate::binom::to_decimal;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Component {
    user: usize,
    row: usize,
    file: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    code: u32,
    payload: String,
    components: Vec<Component>,
}

pub fn write_transmission_log(transmissions: &[Transmission], demands: &[usize]) -> String {
    let mut out = String::new();
    for t in transmissions {
        let record = Record {
            code: t.code,
            payload: hex::encode(&t.payload),
            components: t
                .components
                .iter()
                .map(|&(user, row)| Component {
                    user: user + 1,
                    row: row + 1,
                    file: demands[user] + 1,
                })
                .collect(),
        };
        out.push_str(&serde_json::to_string(&record).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Parses a log back into transmissions (0-based indices).
pub fn read_transmission_log(text: &str) -> Result<Vec<Transmission>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let r: Record = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            let payload = hex::decode(&r.payload).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            let components = r
                .components
                .iter()
                .map(|c| {
                    if c.user == 0 || c.row == 0 {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: "users and rows count from 1".into(),
                        });
                    }
                    Ok((c.user - 1, c.row - 1))
                })
                .collect::<Result<_>>()?;
            Ok(Transmission {
                code: r.code,
                payload,
                components,
            })
        })
        .collect()
}

/// `key=value` lines describing a run.
pub fn report_text(report: &SimReport) -> String {
    let mut out = String::new();
    let ok = report.decoded.iter().filter(|&&d| d).count();
    let failed: Vec<String> = report
        .decoded
        .iter()
        .enumerate()
        .filter(|(_, &d)| !d)
        .map(|(k, _)| (k + 1).to_string())
        .collect();
    let list = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(out, "users={}", report.users);
    let _ = writeln!(out, "subpacketization={}", report.subpacketization);
    let _ = writeln!(out, "transmissions={}", report.transmissions.len());
    let _ = writeln!(out, "subfile_bytes={}", report.subfile_len);
    let _ = writeln!(out, "rate={}", report.rate);
    let _ = writeln!(out, "rate_decimal={}", to_decimal(&report.rate, 6));
    let _ = writeln!(out, "mh_ratio={}", report.mh_ratio);
    let _ = writeln!(out, "mp_ratio={}", report.mp_ratio);
    let _ = writeln!(out, "distinct_demands={}", report.distinct_demands);
    let _ = writeln!(out, "worst_case={}", report.distinct_demands);
    let _ = writeln!(out, "helper_cache_bytes={}", list(&report.helper_bytes));
    let _ = writeln!(out, "private_cache_bytes={}", list(&report.private_bytes));
    let _ = writeln!(out, "decoded={}/{}", ok, report.users);
    let _ = writeln!(out, "decode_failures={}", failed.join(","));
    out
}

pub fn report_csv_header() -> &'static str {
    "users,subpacketization,transmissions,rate,rate_decimal,mh_ratio,mp_ratio,distinct_demands,decoded"
}

pub fn report_csv_row(report: &SimReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        report.users,
        report.subpacketization,
        report.transmissions.len(),
        report.rate,
        to_decimal(&report.rate, 6),
        report.mh_ratio,
        report.mp_ratio,
        report.distinct_demands,
        report.decoded.iter().filter(|&&d| d).count()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_round_trip() {
        let t = vec![
            Transmission {
                code: 1,
                payload: vec![0xde, 0xad],
                components: vec![(4, 0), (3, 1)],
            },
            Transmission {
                code: 2,
                payload: vec![],
                components: vec![],
            },
        ];
        let text = write_transmission_log(&t, &[0, 1, 2, 3, 4]);
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"code":1,"payload":"dead","components":[{"user":5,"row":1,"file":5},{"user":4,"row":2,"file":4}]}"#
        );
        assert_eq!(read_transmission_log(&text).unwrap(), t);
        assert!(read_transmission_log("{").is_err());
    }
}
