//! `cyclogaps` command line: word generation, basic-word dumps, gap
//! profiles, theorem verification and prime-pair sweeps.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cyclogaps_core::basicwords::{PrimePair, ResidueClass};
use cyclogaps_core::cyclotomic::{build_word, verify_with, GapProfile, TheoremReport};
use cyclogaps_core::oracle::{cyclotomic_pq, poly_gapset, word_from_poly};
use cyclogaps_core::words::TernaryWord;

pub mod sweep;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_ORACLE_MISMATCH: u8 = 3;
pub const EXIT_THEOREM_VIOLATION: u8 = 4;
pub const EXIT_IO: u8 = 5;

/// Set to `1` to skip the oracle cross-check during sweeps.
pub const NO_ORACLE_ENV: &str = "CYCLOGAPS_NO_ORACLE";

#[derive(Debug, Parser)]
#[command(
    name = "cyclogaps",
    version,
    about = "Gap structure of binary cyclotomic polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the coefficient word of Φ_pq (ascending degree).
    Coeffs {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value_t = CoeffFormat::Text)]
        format: CoeffFormat,
    },
    /// Report the gap profile of Φ_pq.
    Gaps {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        json: bool,
    },
    /// Dump the basic words d_i and ω_i of the residue class (p, r).
    BasicWords {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        r: i64,
    },
    /// Cross-check against the polynomial oracle and verify the gap theorems.
    Verify {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        json: bool,
    },
    /// Sweep all prime pairs 3 <= p < q <= q_max with p <= p_max.
    Sweep {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        q_max: u64,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = sweep::SweepFormat::Csv)]
        format: sweep::SweepFormat,
        /// Worker threads; 0 means one per available core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffFormat {
    Text,
    Json,
    Sparse,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Coeffs { p, q, format } => cmd_coeffs(p, q, format, out, err),
        Command::Gaps { p, q, json } => cmd_gaps(p, q, json, out, err),
        Command::BasicWords { p, r } => cmd_basic_words(p, r, out, err),
        Command::Verify { p, q, json } => cmd_verify(p, q, json, out, err),
        Command::Sweep {
            p_max,
            q_max,
            out: path,
            format,
            jobs,
        } => {
            let oracle = std::env::var(NO_ORACLE_ENV).map_or(true, |v| v != "1");
            let options = sweep::SweepOptions {
                p_max,
                q_max,
                format,
                jobs,
                oracle,
            };
            sweep::cmd_sweep(&options, &path, out, err)
        }
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_IO
    })
}

fn pair_or_report(p: i64, q: i64, err: &mut dyn Write) -> std::io::Result<Option<PrimePair>> {
    match PrimePair::new(p, q) {
        Ok(pair) => Ok(Some(pair)),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(None)
        }
    }
}

pub fn cmd_coeffs(
    p: i64,
    q: i64,
    format: CoeffFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let Some(pair) = pair_or_report(p, q, err)? else {
        return Ok(EXIT_INPUT);
    };
    let word = build_word(&pair);
    write_word(word.word(), format, out)?;
    Ok(EXIT_OK)
}

pub fn write_word(
    word: &TernaryWord,
    format: CoeffFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        CoeffFormat::Text => writeln!(out, "{word}"),
        CoeffFormat::Json => {
            serde_json::to_writer(&mut *out, word.letters())?;
            writeln!(out)
        }
        CoeffFormat::Sparse => {
            for (j, &l) in word.letters().iter().enumerate() {
                match l {
                    1 => writeln!(out, "{j} +")?,
                    -1 => writeln!(out, "{j} -")?,
                    _ => {}
                }
            }
            Ok(())
        }
    }
}

pub fn cmd_gaps(
    p: i64,
    q: i64,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let Some(pair) = pair_or_report(p, q, err)? else {
        return Ok(EXIT_INPUT);
    };
    let profile = cyclogaps_core::cyclotomic::gap_profile(&pair);
    if json {
        serde_json::to_writer(&mut *out, &profile)?;
        writeln!(out)?;
    } else {
        write_profile_text(&profile, out)?;
    }
    Ok(EXIT_OK)
}

fn write_profile_text(profile: &GapProfile, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "p = {}, q = {}, r = {}",
        profile.p, profile.q, profile.r
    )?;
    writeln!(
        out,
        "g1 = {} (count {}) at {:?}",
        profile.g1,
        profile.count(profile.g1),
        profile.g1_positions
    )?;
    match profile.g2 {
        Some(g2) => writeln!(
            out,
            "g2 = {} (count {}) at {:?}",
            g2,
            profile.count(g2),
            profile.g2_positions
        )?,
        None => writeln!(out, "g2 = none")?,
    }
    for (gap, count) in profile.counts.iter().rev() {
        writeln!(out, "  gap {gap:>4}: {count}")?;
    }
    Ok(())
}

pub fn cmd_basic_words(
    p: i64,
    r: i64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let class = match ResidueClass::new(p, r) {
        Ok(class) => class,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INPUT);
        }
    };
    let family = class.family();
    writeln!(out, "p = {}, r = {}", class.p(), class.r())?;
    writeln!(out, "u+ = {}, u- = {}", class.u_plus(), class.u_minus())?;
    for (i, d) in family.ds().iter().enumerate() {
        writeln!(out, "d[{i}] = {d}")?;
    }
    for (i, omega) in family.omegas().iter().enumerate() {
        writeln!(out, "omega[{i}] = {omega}")?;
    }
    let table = |f: &dyn Fn(usize) -> usize| -> String {
        (0..class.p())
            .map(|j| f(j).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(out, "I+ = {}", table(&|j| class.index_plus(j).unwrap()))?;
    writeln!(out, "I- = {}", table(&|j| class.index_minus(j).unwrap()))?;
    Ok(EXIT_OK)
}

/// Outcome of comparing the basic-word construction with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub word_match: bool,
    /// First differing position, or the shorter length on a length mismatch.
    pub first_mismatch: Option<usize>,
    pub gapset_match: bool,
}

impl OracleCheck {
    pub fn matches(&self) -> bool {
        self.word_match && self.gapset_match
    }
}

/// Recomputes `Φ_pq` by polynomial division and compares it with `word`,
/// letter by letter and by gapset (`G(poly) \ {1}` against `G(word)`).
pub fn oracle_check(pair: &PrimePair, word: &TernaryWord) -> OracleCheck {
    let poly = cyclotomic_pq(pair.p() as u64, pair.q() as u64).expect("validated prime pair");
    let Ok(oracle_word) = word_from_poly(&poly) else {
        return OracleCheck {
            word_match: false,
            first_mismatch: Some(0),
            gapset_match: false,
        };
    };
    let first_mismatch = oracle_word
        .letters()
        .iter()
        .zip(word.letters())
        .position(|(a, b)| a != b)
        .or_else(|| (oracle_word.len() != word.len()).then(|| oracle_word.len().min(word.len())));
    let mut poly_gaps = poly_gapset(&poly).expect("Φ_pq is nonzero");
    poly_gaps.remove(&1);
    let gapset_match = word.gapset().is_ok_and(|g| g.gaps() == &poly_gaps);
    OracleCheck {
        word_match: first_mismatch.is_none(),
        first_mismatch,
        gapset_match,
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    p: usize,
    q: usize,
    r: usize,
    quotient: usize,
    m: usize,
    oracle_match: bool,
    oracle: &'a OracleCheck,
    theorems_hold: bool,
    claims: &'a [cyclogaps_core::cyclotomic::ClaimRecord],
}

pub fn cmd_verify(
    p: i64,
    q: i64,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let Some(pair) = pair_or_report(p, q, err)? else {
        return Ok(EXIT_INPUT);
    };
    let word = build_word(&pair);
    let profile = GapProfile::from_word(&pair, word.word());
    let report = verify_with(&pair, &word, &profile);
    let oracle = oracle_check(&pair, word.word());

    if json {
        let payload = VerifyJson {
            p: pair.p(),
            q: pair.q(),
            r: pair.r(),
            quotient: pair.quotient(),
            m: pair.m(),
            oracle_match: oracle.matches(),
            oracle: &oracle,
            theorems_hold: report.all_hold(),
            claims: &report.claims,
        };
        serde_json::to_writer_pretty(&mut *out, &payload)?;
        writeln!(out)?;
    } else {
        write_report_text(&pair, &oracle, &report, out)?;
    }

    if !oracle.matches() {
        writeln!(err, "ORACLE MISMATCH for ({}, {})", pair.p(), pair.q())?;
        return Ok(EXIT_ORACLE_MISMATCH);
    }
    if !report.all_hold() {
        let ids: Vec<&str> = report.failures().iter().map(|c| c.id()).collect();
        writeln!(
            err,
            "THEOREM VIOLATION for ({}, {}): {}",
            pair.p(),
            pair.q(),
            ids.join(", ")
        )?;
        return Ok(EXIT_THEOREM_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn write_report_text(
    pair: &PrimePair,
    oracle: &OracleCheck,
    report: &TheoremReport,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    writeln!(
        out,
        "p = {}, q = {}, r = {}, floor(q/p) = {}, m = {}",
        pair.p(),
        pair.q(),
        pair.r(),
        pair.quotient(),
        pair.m()
    )?;
    if oracle.matches() {
        writeln!(out, "oracle: match ({} letters)", pair.m() + 1)?;
    } else {
        writeln!(
            out,
            "oracle: MISMATCH (word match: {}, first difference: {:?}, gapset match: {})",
            oracle.word_match, oracle.first_mismatch, oracle.gapset_match
        )?;
    }
    for record in &report.claims {
        if !record.applicable {
            writeln!(
                out,
                "[n/a ] {:<6} {}",
                record.claim.id(),
                record.hypothesis.as_deref().unwrap_or("")
            )?;
        } else {
            let tag = if record.holds { "PASS" } else { "FAIL" };
            writeln!(out, "[{tag}] {:<6} {}", record.claim.id(), record.details)?;
        }
    }
    Ok(())
}
