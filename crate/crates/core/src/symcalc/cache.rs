//! Line-oriented pair cache: one record `i j <resultant> p1,p2,...` per
//! pair, `-` for an empty prime list. Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::delta::PairRecord;
use super::PAIR_COUNT;
use crate::error::{Error, Result};

pub const HEADER: &str = "# a6arc pair cache v1: i j resultant primes";

pub fn format_cache(records: &[PairRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 64);
    out.push_str(HEADER);
    out.push('\n');
    for r in records {
        let primes = if r.primes.is_empty() {
            "-".to_string()
        } else {
            r.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        };
        writeln!(out, "{} {} {} {}", r.i, r.j, r.resultant, primes).expect("string write");
    }
    out
}

fn parse_line(line: &str) -> std::result::Result<PairRecord, String> {
    let fields: Vec<&str> = line.split(' ').collect();
    let [i, j, res, primes] = fields[..] else {
        return Err(format!("expected 4 fields, found {}", fields.len()));
    };
    let i: usize = i.parse().map_err(|_| format!("bad index {i:?}"))?;
    let j: usize = j.parse().map_err(|_| format!("bad index {j:?}"))?;
    let resultant: BigInt = res.parse().map_err(|_| format!("bad integer {res:?}"))?;
    if resultant.is_zero() {
        return Err("zero resultant".into());
    }
    let primes: Vec<BigUint> = if primes == "-" {
        Vec::new()
    } else {
        primes
            .split(',')
            .map(|p| p.parse().map_err(|_| format!("bad prime {p:?}")))
            .collect::<std::result::Result<_, _>>()?
    };
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err("primes not strictly increasing".into());
    }
    let abs = resultant.abs().to_biguint().expect("non-negative");
    if let Some(p) = primes.iter().find(|p| *p <= &BigUint::one() || !(&abs % *p).is_zero()) {
        return Err(format!("{p} does not divide the resultant"));
    }
    Ok(PairRecord { i, j, resultant, primes })
}

/// Parses a cache, requiring exactly the pairs `1 <= i < j <= 89` in
/// lexicographic order.
pub fn parse_cache(text: &str) -> Result<Vec<PairRecord>> {
    let mut expected = (1..90usize).flat_map(|i| (i + 1..90).map(move |j| (i, j)));
    let mut records = Vec::with_capacity(PAIR_COUNT);
    let mut last_line = 0;
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        if line.starts_with('#') {
            continue;
        }
        let rec = parse_line(line).map_err(|reason| Error::CorruptCache { line: line_no, reason })?;
        match expected.next() {
            Some(want) if want == (rec.i, rec.j) => records.push(rec),
            Some((i, j)) => {
                return Err(Error::CorruptCache {
                    line: line_no,
                    reason: format!("expected pair ({i}, {j}), found ({}, {})", rec.i, rec.j),
                })
            }
            None => return Err(Error::CorruptCache { line: line_no, reason: "too many records".into() }),
        }
    }
    if records.len() != PAIR_COUNT {
        return Err(Error::CorruptCache {
            line: last_line + 1,
            reason: format!("expected {PAIR_COUNT} records, found {}", records.len()),
        });
    }
    Ok(records)
}

pub fn write_cache(path: &Path, records: &[PairRecord]) -> Result<()> {
    std::fs::write(path, format_cache(records))?;
    Ok(())
}

pub fn load_cache(path: &Path) -> Result<Vec<PairRecord>> {
    parse_cache(&std::fs::read_to_string(path)?)
}
