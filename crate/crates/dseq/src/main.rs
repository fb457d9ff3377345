//! Command-line front end: stream generation, period reports,
//! autocorrelation CSV, and the built-in verification suite.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dseq::analysis;
use dseq::dsequence::{DSeqConfig, DSeqStream};
use dseq::encoding::{self, BitEncoder, OutputEncoding};
use dseq::kak_rng::{KakIndexConfig, KakIndexStream, KakPowerConfig, KakPowerStream};
use dseq::recursive_rng::{self, PeriodMeasurement, RecursiveConfig, RecursiveStream};
use dseq::{verify, BitStream, Modulus, OddPrime};

#[derive(Parser)]
#[command(
    name = "dseq",
    version,
    about = "d-sequence pseudorandom bit generators, period prediction, and autocorrelation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Ascii01,
    Hex,
    Packed,
}

impl From<EncodingArg> for OutputEncoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Ascii01 => OutputEncoding::Ascii01,
            EncodingArg::Hex => OutputEncoding::Hex,
            EncodingArg::Packed => OutputEncoding::Packed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Circular,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a plain d-sequence digit stream: (base^i mod prime) mod base
    Dseq {
        /// Odd prime p
        #[arg(long)]
        prime: u64,
        /// Digit base r (the prime must not divide it)
        #[arg(long, default_value_t = 2)]
        base: u64,
        /// Number of digits to emit
        #[arg(long)]
        length: u64,
        /// First index i of the expansion
        #[arg(long, default_value_t = 1)]
        start_index: u64,
        #[arg(long, value_enum, default_value_t = EncodingArg::Ascii01)]
        encoding: EncodingArg,
    },
    /// XOR the binary d-sequences of several primes at a shared index
    KakIndex {
        /// Comma-separated odd primes, pairwise distinct
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Number of bits to emit
        #[arg(long)]
        length: u64,
        /// First index i
        #[arg(long, default_value_t = 1)]
        start_index: u64,
        #[arg(long, value_enum, default_value_t = EncodingArg::Ascii01)]
        encoding: EncodingArg,
    },
    /// Iterated-squaring generator: bit j XORs the low bits of seed^(2^j)
    KakPower {
        /// Seed S, coprime to every modulus
        #[arg(long)]
        seed: u64,
        /// Comma-separated moduli (primes or products of primes)
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        /// Number of bits to emit
        #[arg(long)]
        length: u64,
        /// Require every prime factor of every modulus to be 3 mod 4
        #[arg(long)]
        enforce_bbs: bool,
        #[arg(long, value_enum, default_value_t = EncodingArg::Ascii01)]
        encoding: EncodingArg,
    },
    /// Recursive nested-loop generator over inner and outer primes
    Recursive {
        /// Seed S >= 2, coprime to every inner prime
        #[arg(long)]
        seed: u64,
        /// Comma-separated inner primes
        #[arg(long, value_delimiter = ',', required = true)]
        inner: Vec<u64>,
        /// Comma-separated outer primes
        #[arg(long, value_delimiter = ',', required = true)]
        outer: Vec<u64>,
        /// Outer iteration count u; the full stream has w * u bits
        #[arg(long)]
        iterations: u64,
        /// SeedSet size w (default: one full inner period)
        #[arg(long)]
        seedset_size: Option<u64>,
        /// Truncate the output to this many bits (at most w * u)
        #[arg(long)]
        length: Option<u64>,
        #[arg(long, value_enum, default_value_t = EncodingArg::Ascii01)]
        encoding: EncodingArg,
    },
    /// Predict the recursive generator's period; optionally measure it
    Period {
        /// Seed S >= 2, coprime to every inner prime
        #[arg(long)]
        seed: u64,
        /// Comma-separated inner primes
        #[arg(long, value_delimiter = ',', required = true)]
        inner: Vec<u64>,
        /// Comma-separated outer primes
        #[arg(long, value_delimiter = ',', required = true)]
        outer: Vec<u64>,
        /// SeedSet size w (default: one full inner period)
        #[arg(long)]
        seedset_size: Option<u64>,
        /// Brute-force window size in bits; adds measured period and verdict
        #[arg(long, value_name = "MAX_BITS")]
        measure: Option<u64>,
    },
    /// Circular or linear autocorrelation of a bit stream, as CSV
    Autocorr {
        /// Input file (default: standard input)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Largest lag to report (default: window - 1)
        #[arg(long)]
        max_lag: Option<u64>,
        /// Number of leading bits to analyze (default: min(length, 40000))
        #[arg(long)]
        window: Option<u64>,
        /// Encoding of the input stream
        #[arg(long, value_enum, default_value_t = EncodingArg::Ascii01)]
        input_encoding: EncodingArg,
    },
    /// Re-run the built-in reference examples and report pass/fail
    Verify,
}

enum CliError {
    Validation(String),
    Io(io::Error),
    VerificationFailed,
}

impl From<dseq::Error> for CliError {
    fn from(e: dseq::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// 0 success, 1 validation error, 2 I/O error, 3 verification failure.
fn error_exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Validation(_) => 1,
        CliError::Io(_) => 2,
        CliError::VerificationFailed => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Validation(msg) => eprintln!("error: {msg}"),
                CliError::Io(e) => eprintln!("i/o error: {e}"),
                CliError::VerificationFailed => {}
            }
            ExitCode::from(error_exit_code(&err))
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Dseq {
            prime,
            base,
            length,
            start_index,
            encoding,
        } => cmd_dseq(prime, base, length, start_index, encoding.into()),
        Command::KakIndex {
            primes,
            length,
            start_index,
            encoding,
        } => cmd_kak_index(&primes, length, start_index, encoding.into()),
        Command::KakPower {
            seed,
            moduli,
            length,
            enforce_bbs,
            encoding,
        } => cmd_kak_power(seed, &moduli, length, enforce_bbs, encoding.into()),
        Command::Recursive {
            seed,
            inner,
            outer,
            iterations,
            seedset_size,
            length,
            encoding,
        } => cmd_recursive(
            seed,
            &inner,
            &outer,
            iterations,
            seedset_size,
            length,
            encoding.into(),
        ),
        Command::Period {
            seed,
            inner,
            outer,
            seedset_size,
            measure,
        } => cmd_period(seed, &inner, &outer, seedset_size, measure),
        Command::Autocorr {
            input,
            mode,
            max_lag,
            window,
            input_encoding,
        } => cmd_autocorr(input, mode, max_lag, window, input_encoding.into()),
        Command::Verify => cmd_verify(),
    }
}

fn parse_primes(values: &[u64]) -> Result<Vec<OddPrime>, CliError> {
    values.iter().map(|&v| Ok(OddPrime::new(v)?)).collect()
}

fn require_positive_length(length: u64) -> Result<(), CliError> {
    if length == 0 {
        return Err(CliError::Validation("length must be at least 1".into()));
    }
    Ok(())
}

/// Streams bits through the chosen encoder to stdout. ascii01 and hex get
/// a trailing newline; packed output is raw bytes.
fn emit_bits(
    bits: impl Iterator<Item = u8>,
    count: u64,
    encoding: OutputEncoding,
) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut enc = BitEncoder::new(io::BufWriter::new(stdout.lock()), encoding);
    for b in bits.take(count as usize) {
        enc.push(b)?;
    }
    let mut writer = enc.finish()?;
    if encoding != OutputEncoding::Packed {
        writer.write_all(b"\n")?;
        writer.flush()?;
    }
    Ok(())
}

fn cmd_dseq(
    prime: u64,
    base: u64,
    length: u64,
    start_index: u64,
    encoding: OutputEncoding,
) -> Result<(), CliError> {
    require_positive_length(length)?;
    let prime = OddPrime::new(prime)?;
    let cfg = DSeqConfig::new(prime, base)?.with_start_index(start_index)?;
    if base == 2 {
        return emit_bits(DSeqStream::new(&cfg).map(|d| d as u8), length, encoding);
    }
    // Digits above 1 only fit the ascii encoding, one character each.
    if encoding != OutputEncoding::Ascii01 {
        return Err(CliError::Validation(
            "hex and packed encodings apply to bit streams; use base 2".into(),
        ));
    }
    if base > 10 {
        return Err(CliError::Validation(
            "ascii digit output supports bases up to 10".into(),
        ));
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for digit in DSeqStream::new(&cfg).take(length as usize) {
        out.write_all(&[b'0' + digit as u8])?;
    }
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn cmd_kak_index(
    primes: &[u64],
    length: u64,
    start_index: u64,
    encoding: OutputEncoding,
) -> Result<(), CliError> {
    require_positive_length(length)?;
    if start_index == 0 {
        return Err(CliError::Validation(
            "start index must be at least 1".into(),
        ));
    }
    let cfg = KakIndexConfig::new(parse_primes(primes)?)?;
    emit_bits(
        KakIndexStream::with_start_index(&cfg, start_index),
        length,
        encoding,
    )
}

fn cmd_kak_power(
    seed: u64,
    moduli: &[u64],
    length: u64,
    enforce_bbs: bool,
    encoding: OutputEncoding,
) -> Result<(), CliError> {
    require_positive_length(length)?;
    let moduli: Vec<Modulus> = moduli
        .iter()
        .map(|&m| Ok(Modulus::new(m)?))
        .collect::<Result<_, CliError>>()?;
    let cfg = KakPowerConfig::new(seed, moduli, enforce_bbs)?;
    emit_bits(KakPowerStream::new(&cfg), length, encoding)
}

fn build_recursive_config(
    seed: u64,
    inner: &[u64],
    outer: &[u64],
    iterations: u64,
    seedset_size: Option<u64>,
) -> Result<RecursiveConfig, CliError> {
    let mut cfg =
        RecursiveConfig::new(seed, parse_primes(inner)?, parse_primes(outer)?, iterations)?;
    if let Some(w) = seedset_size {
        cfg = cfg.with_seedset_size(w)?;
    }
    Ok(cfg)
}

fn cmd_recursive(
    seed: u64,
    inner: &[u64],
    outer: &[u64],
    iterations: u64,
    seedset_size: Option<u64>,
    length: Option<u64>,
    encoding: OutputEncoding,
) -> Result<(), CliError> {
    let cfg = build_recursive_config(seed, inner, outer, iterations, seedset_size)?;
    let w = recursive_rng::build_seedset(&cfg)?.len() as u64;
    let total = w
        .checked_mul(iterations)
        .ok_or_else(|| CliError::Validation("w * iterations overflows".into()))?;
    let count = match length {
        Some(l) => {
            require_positive_length(l)?;
            if l > total {
                return Err(CliError::Validation(format!(
                    "length {l} exceeds the stream size w * u = {total}"
                )));
            }
            l
        }
        None => total,
    };
    emit_bits(RecursiveStream::new(&cfg)?, count, encoding)
}

fn cmd_period(
    seed: u64,
    inner: &[u64],
    outer: &[u64],
    seedset_size: Option<u64>,
    measure: Option<u64>,
) -> Result<(), CliError> {
    // iteration count is irrelevant to the prediction; any valid value works
    let cfg = build_recursive_config(seed, inner, outer, 1, seedset_size)?;
    let report = recursive_rng::predict_period(&cfg)?;

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    writeln!(out, "seed={seed}")?;
    writeln!(out, "inner_primes={}", join(inner))?;
    writeln!(out, "outer_primes={}", join(outer))?;
    writeln!(out, "t={}", report.inner_period)?;
    writeln!(out, "w={}", report.seedset_size())?;
    for (q, row) in report.order_matrix.iter().enumerate() {
        for (r, v) in row.iter().enumerate() {
            writeln!(out, "order[{}][{}]={v}", q + 1, r + 1)?;
        }
    }
    for (r, v) in report.per_prime_lcm.iter().enumerate() {
        writeln!(out, "per_prime_lcm[{}]={v}", r + 1)?;
    }
    writeln!(out, "outer_period={}", report.outer_period)?;
    writeln!(out, "total_period={}", report.total_period)?;
    for (p, primitive) in cfg.inner_primes().iter().zip(&report.seed_primitivity) {
        writeln!(out, "seed_primitive[{p}]={primitive}")?;
    }
    if let Some(note) = verify::documented_mismatch_note(&cfg) {
        writeln!(out, "note={note}")?;
    }

    if let Some(max_bits) = measure {
        match recursive_rng::measure_period(&cfg, max_bits)? {
            PeriodMeasurement::Minimal(p) => {
                writeln!(out, "measured={p}")?;
                let verdict = if p == report.total_period {
                    "AGREE"
                } else {
                    "DISAGREE"
                };
                writeln!(out, "verdict={verdict}")?;
            }
            PeriodMeasurement::NotFound => {
                writeln!(out, "measured=none")?;
                writeln!(out, "verdict=DISAGREE")?;
            }
            PeriodMeasurement::DivisorsChecked { prediction, holds } => {
                writeln!(out, "measured=none")?;
                for (d, ok) in holds {
                    writeln!(out, "divisor_holds[{d}]={ok}")?;
                }
                writeln!(
                    out,
                    "verdict=INCONCLUSIVE (prediction {prediction} exceeds half the window)"
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_autocorr(
    input: Option<PathBuf>,
    mode: ModeArg,
    max_lag: Option<u64>,
    window: Option<u64>,
    input_encoding: OutputEncoding,
) -> Result<(), CliError> {
    let raw = match input {
        Some(path) => fs::read(&path)?,
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    let bits = encoding::decode_bits(&raw, input_encoding)?;
    if bits.is_empty() {
        return Err(CliError::Validation("empty input".into()));
    }
    let take = window
        .map(|w| w as usize)
        .unwrap_or(analysis::DEFAULT_ANALYSIS_WINDOW)
        .min(bits.len());
    if take == 0 {
        return Err(CliError::Validation("window must be at least 1".into()));
    }
    let stream = BitStream::new(bits[..take].to_vec())?;
    let bipolar = analysis::to_bipolar(&stream);
    let series = match mode {
        ModeArg::Circular => analysis::circular_autocorr(&bipolar, max_lag)?,
        ModeArg::Linear => analysis::linear_autocorr(&bipolar, max_lag)?,
    };

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    writeln!(out, "lag,value")?;
    for (lag, value) in &series.entries {
        writeln!(out, "{lag},{value}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify() -> Result<(), CliError> {
    let checks = verify::reproduction_checks()?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut all_passed = true;
    for c in &checks {
        writeln!(
            out,
            "{}: expected {} actual {} {}",
            c.name,
            c.expected,
            c.actual,
            if c.passed { "PASS" } else { "FAIL" }
        )?;
        if let Some(note) = &c.note {
            writeln!(out, "  note: {note}")?;
        }
        all_passed &= c.passed;
    }
    writeln!(
        out,
        "{}/{} checks passed",
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    )?;
    out.flush()?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_map_by_error_kind() {
        assert_eq!(error_exit_code(&CliError::Validation("x".into())), 1);
        assert_eq!(error_exit_code(&CliError::Io(io::Error::other("disk"))), 2);
        assert_eq!(error_exit_code(&CliError::VerificationFailed), 3);
    }
}
