//! Prime-pair sweeps with CSV or JSON-lines output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use cyclogaps_core::basicwords::{is_prime, PrimePair};
use cyclogaps_core::cyclotomic::{build_word, verify_with, Claim, GapProfile};

use crate::{
    oracle_check, EXIT_INPUT, EXIT_IO, EXIT_OK, EXIT_ORACLE_MISMATCH, EXIT_THEOREM_VIOLATION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub p_max: u64,
    pub q_max: u64,
    pub format: SweepFormat,
    /// 0 selects one worker per available core.
    pub jobs: usize,
    /// Cross-check every word against the polynomial oracle.
    pub oracle: bool,
}

/// One row of a sweep. `oracle_match` is `None` when the oracle was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub quotient: usize,
    pub g1: usize,
    pub g1_count: usize,
    pub g2: Option<usize>,
    pub g2_count: Option<usize>,
    pub oracle_match: Option<bool>,
    pub theorem_failures: Vec<Claim>,
}

#[derive(Serialize)]
struct CsvRow {
    p: usize,
    q: usize,
    r: usize,
    quotient: usize,
    g1: usize,
    g1_count: usize,
    g2: Option<usize>,
    g2_count: Option<usize>,
    oracle_match: Option<bool>,
}

impl From<&SweepRecord> for CsvRow {
    fn from(r: &SweepRecord) -> Self {
        Self {
            p: r.p,
            q: r.q,
            r: r.r,
            quotient: r.quotient,
            g1: r.g1,
            g1_count: r.g1_count,
            g2: r.g2,
            g2_count: r.g2_count,
            oracle_match: r.oracle_match,
        }
    }
}

/// All prime pairs `3 <= p < q <= q_max` with `p <= p_max`, ordered by `(p, q)`.
pub fn prime_pairs(p_max: u64, q_max: u64) -> Vec<PrimePair> {
    let primes: Vec<u64> = (3..=q_max).filter(|&n| is_prime(n)).collect();
    let mut pairs = Vec::new();
    for &p in primes.iter().take_while(|&&p| p <= p_max) {
        for &q in primes.iter().filter(|&&q| q > p) {
            pairs.push(PrimePair::new(p as i64, q as i64).expect("primes from the sieve"));
        }
    }
    pairs
}

pub fn sweep_record(pair: &PrimePair, with_oracle: bool) -> SweepRecord {
    let word = build_word(pair);
    let profile = GapProfile::from_word(pair, word.word());
    let report = verify_with(pair, &word, &profile);
    let oracle_match = with_oracle.then(|| oracle_check(pair, word.word()).matches());
    SweepRecord {
        p: pair.p(),
        q: pair.q(),
        r: pair.r(),
        quotient: pair.quotient(),
        g1: profile.g1,
        g1_count: profile.count(profile.g1),
        g2: profile.g2,
        g2_count: profile.g2.map(|g2| profile.count(g2)),
        oracle_match,
        theorem_failures: report.failures(),
    }
}

/// Computes every record on a pool of `jobs` workers. The output order is
/// the `(p, q)` order of [`prime_pairs`] regardless of completion order.
pub fn run_sweep(options: &SweepOptions) -> Vec<SweepRecord> {
    let pairs = prime_pairs(options.p_max, options.q_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        pairs
            .par_iter()
            .map(|pair| sweep_record(pair, options.oracle))
            .collect()
    })
}

pub fn write_records(
    records: &[SweepRecord],
    format: SweepFormat,
    out: impl Write,
) -> std::io::Result<()> {
    match format {
        SweepFormat::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            if records.is_empty() {
                writer.write_record([
                    "p",
                    "q",
                    "r",
                    "quotient",
                    "g1",
                    "g1_count",
                    "g2",
                    "g2_count",
                    "oracle_match",
                ])?;
            }
            for record in records {
                writer.serialize(CsvRow::from(record))?;
            }
            writer.flush()
        }
        SweepFormat::Jsonl => {
            let mut out = out;
            for record in records {
                serde_json::to_writer(&mut out, record)?;
                writeln!(out)?;
            }
            out.flush()
        }
    }
}

pub fn cmd_sweep(
    options: &SweepOptions,
    path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    if options.p_max < 3 || options.q_max < 3 {
        writeln!(err, "error: --p-max and --q-max must be at least 3")?;
        return Ok(EXIT_INPUT);
    }
    let file = match File::create(path) {
        Ok(file) => file,
        Err(e) => {
            writeln!(err, "error: cannot write {}: {e}", path.display())?;
            return Ok(EXIT_IO);
        }
    };
    let records = run_sweep(options);
    if let Err(e) = write_records(&records, options.format, BufWriter::new(file)) {
        writeln!(err, "error: writing {}: {e}", path.display())?;
        return Ok(EXIT_IO);
    }

    let mismatches: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| r.oracle_match == Some(false))
        .collect();
    let violations: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| !r.theorem_failures.is_empty())
        .collect();
    writeln!(
        out,
        "{} pairs, {} oracle mismatches, {} theorem violations{}",
        records.len(),
        mismatches.len(),
        violations.len(),
        if options.oracle {
            ""
        } else {
            " (oracle skipped)"
        }
    )?;
    for r in &mismatches {
        writeln!(err, "ORACLE MISMATCH for ({}, {})", r.p, r.q)?;
    }
    for r in &violations {
        let ids: Vec<&str> = r.theorem_failures.iter().map(|c| c.id()).collect();
        writeln!(
            err,
            "THEOREM VIOLATION for ({}, {}): {}",
            r.p,
            r.q,
            ids.join(", ")
        )?;
    }
    Ok(if !mismatches.is_empty() {
        EXIT_ORACLE_MISMATCH
    } else if !violations.is_empty() {
        EXIT_THEOREM_VIOLATION
    } else {
        EXIT_OK
    })
}
