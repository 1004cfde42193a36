//! Command-line front end.
//!
//! Every command prints compact JSON with lexicographically ordered keys.
//! Exit codes: 0 success, 1 sweep mismatch, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cube::{self, recognize_cube};
use crate::error::Error;
use crate::kerror::{celcs, kerror_lc, max_kerror_lc};
use crate::pary::{self, PrimePeriodicSequence};
use crate::sequence::PeriodicSequence;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `n` swept without `--allow-large`.
pub const DEFAULT_SWEEP_BOUND: u32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cubelc",
    version,
    about = "Linear complexity and cube structure of 2^n-periodic binary sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bit string if only 0/1 with power-of-two length, hex otherwise
    Auto,
    Bits,
    Hex,
}

#[derive(Debug, Args)]
struct SequenceInput {
    /// Sequence text, or @path to read it from a file
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Linear complexity
    Lc(SequenceInput),
    /// k-error linear complexity and stability
    Klc {
        #[command(flatten)]
        seq: SequenceInput,
        #[arg(long)]
        k: usize,
    },
    /// Critical points of the k-error linear complexity
    Celcs(SequenceInput),
    /// Disjoint cube decomposition
    Decompose(SequenceInput),
    /// Full report: k-error table, spectrum, stability and optional decomposition
    Report {
        #[command(flatten)]
        seq: SequenceInput,
        /// Largest k in the k-error table (defaults to the period)
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        decompose: bool,
    },
    /// Build a sequence with the largest stable k-error linear complexity
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        anchor: usize,
        /// Support of a lower-complexity cube to superpose, e.g. 6,10 (repeatable)
        #[arg(long)]
        extras: Vec<String>,
    },
    /// Exhaustive check of the maximum k-error linear complexity
    Sweep {
        #[arg(long)]
        n: u32,
        /// Largest k checked (defaults to 2^n - 1)
        #[arg(long)]
        k_max: Option<usize>,
        /// Directory receiving sweep.tsv and summary.json
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "CUBELC_WORKERS")]
        workers: Option<usize>,
        /// Permit n above the default bound
        #[arg(long)]
        allow_large: bool,
    },
    /// Sequences of period p^n over F_p
    #[command(subcommand)]
    Pary(ParyCommand),
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Debug, Subcommand)]
enum ParyCommand {
    /// Linear complexity over F_p
    Lc {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated elements, or @path
        input: String,
    },
    /// Whether the complexity equals p^n
    Full {
        #[command(flatten)]
        field: FieldArgs,
        input: String,
    },
    /// Complexity and 1-error complexity of a x^k (1 - x^(b p^m))
    TwoTerm {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(raw.trim().to_string()),
    }
}

/// Parses a binary sequence according to `format`.
pub fn parse_sequence(text: &str, format: Format) -> Result<(PeriodicSequence, Format), Error> {
    let format = match format {
        Format::Auto => {
            let is_bits = !text.is_empty()
                && text.len().is_power_of_two()
                && text.chars().all(|c| c == '0' || c == '1');
            if is_bits {
                Format::Bits
            } else {
                Format::Hex
            }
        }
        f => f,
    };
    let s = match format {
        Format::Hex => PeriodicSequence::from_hex(text)?,
        _ => text.parse()?,
    };
    Ok((s, format))
}

fn load(input: &SequenceInput) -> Result<(PeriodicSequence, Format), Failure> {
    let text = read_input(&input.input)?;
    Ok(parse_sequence(&text, input.format)?)
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    writeln!(out, "{value}").map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("write failed: {e}"),
    })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Lc(input) => {
            let (s, _) = load(&input)?;
            emit(out, &json!({ "n": s.n(), "lc": s.lc() }))?;
        }
        Command::Klc { seq, k } => {
            let (s, _) = load(&seq)?;
            let klc = kerror_lc(&s, k)?;
            let lc = s.lc();
            emit(
                out,
                &json!({ "lc": lc, "k": k, "klc": klc, "stable": klc == lc }),
            )?;
        }
        Command::Celcs(input) => {
            let (s, _) = load(&input)?;
            emit(out, &to_value(&celcs(&s)))?;
        }
        Command::Decompose(input) => {
            let (s, _) = load(&input)?;
            emit(out, &to_value(&cube::decompose_with_impulse(&s)?))?;
        }
        Command::Report {
            seq,
            k_max,
            decompose,
        } => {
            let (s, format) = load(&seq)?;
            emit(out, &analysis_report(&s, format, k_max, decompose)?)?;
        }
        Command::Construct {
            n,
            k,
            anchor,
            extras,
        } => return construct(n, k, anchor, &extras, out),
        Command::Sweep {
            n,
            k_max,
            out: dir,
            workers,
            allow_large,
        } => return sweep_command(n, k_max, dir.as_deref(), workers, allow_large, out),
        Command::Pary(cmd) => pary_command(cmd, out)?,
    }
    Ok(EXIT_OK)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Report with the k-error table, spectrum and stability verdicts.
pub fn analysis_report(
    s: &PeriodicSequence,
    format: Format,
    k_max: Option<usize>,
    with_decomposition: bool,
) -> Result<Value, Error> {
    let k_max = k_max.unwrap_or(s.period());
    let table = (0..=k_max)
        .map(|k| kerror_lc(s, k))
        .collect::<Result<Vec<_>, _>>()?;
    let lc = table[0];
    let profile = celcs(s);
    let decomposition = if with_decomposition {
        to_value(&cube::decompose_with_impulse(s)?)
    } else {
        Value::Null
    };
    let format = match format {
        Format::Hex => "hex",
        _ => "bits",
    };
    Ok(json!({
        "format": format,
        "n": s.n(),
        "input": s.to_string(),
        "lc": lc,
        "kerror": table.iter().enumerate().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
        "stable": table.iter().enumerate().map(|(k, &v)| json!([k, v == lc])).collect::<Vec<_>>(),
        "celcs": to_value(&profile),
        "decomposition": decomposition,
    }))
}

fn parse_positions(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| usage(format!("bad position {t:?}: {e}")))
        })
        .collect()
}

fn construct(
    n: u32,
    k: usize,
    anchor: usize,
    extras: &[String],
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut s = cube::construct_max_stable(n, k, anchor)?;
    for extra in extras {
        let positions = parse_positions(extra)?;
        let c = recognize_cube(n, &positions)?
            .ok_or_else(|| usage(format!("extra {extra:?} is not a cube")))?;
        s = cube::superpose_preserving(&s, &c.to_sequence())?;
    }
    let profile = celcs(&s);
    let stable_through = profile.points.get(1).map_or(s.period(), |&(k, _)| k - 1);
    writeln!(out, "{s}").map_err(|e| usage(e.to_string()))?;
    emit(
        out,
        &json!({ "lc": s.lc(), "stable_through": stable_through }),
    )?;
    Ok(EXIT_OK)
}

/// One row of an exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub max_klc: usize,
    pub formula_value: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Maximum of `L_k` over every sequence of period `2^n`, for `k = 1..=k_max`.
///
/// The value space is split into contiguous chunks and merged by elementwise
/// maximum, so the result does not depend on the worker count.
pub fn sweep_max_kerror(n: u32, k_max: usize, workers: usize) -> Result<Vec<usize>, Error> {
    if n > 5 {
        return Err(Error::PeriodTooLarge(n));
    }
    let period = 1usize << n;
    if k_max == 0 || k_max >= period {
        return Err(Error::KOutOfRange {
            k: k_max,
            max: period - 1,
        });
    }
    let total: u64 = 1 << period;
    let chunks = (workers as u64 * 8).clamp(1, total);
    let chunk_len = total.div_ceil(chunks);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let best = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut best = vec![0usize; k_max + 1];
                let end = ((c + 1) * chunk_len).min(total);
                for v in c * chunk_len..end {
                    let s = PeriodicSequence::from_u64(n, v).expect("n <= 5");
                    for (k, slot) in best.iter_mut().enumerate().skip(1) {
                        *slot = (*slot).max(kerror_lc(&s, k).expect("k < period"));
                    }
                }
                best
            })
            .reduce(
                || vec![0usize; k_max + 1],
                |a, b| a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect(),
            )
    });
    Ok(best[1..].to_vec())
}

pub fn sweep_rows(n: u32, k_max: usize, workers: usize) -> Result<Vec<SweepRow>, Error> {
    let maxima = sweep_max_kerror(n, k_max, workers)?;
    maxima
        .into_iter()
        .enumerate()
        .map(|(i, max_klc)| {
            let k = i + 1;
            let formula_value = max_kerror_lc(n, k)?;
            Ok(SweepRow {
                k,
                max_klc,
                formula_value,
                matches: max_klc == formula_value,
            })
        })
        .collect()
}

pub fn rows_to_tsv(rows: &[SweepRow]) -> String {
    let mut tsv = String::from("k\tmax_klc\tformula_value\tmatch\n");
    for r in rows {
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            r.k, r.max_klc, r.formula_value, r.matches
        ));
    }
    tsv
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn sweep_command(
    n: u32,
    k_max: Option<usize>,
    dir: Option<&Path>,
    workers: Option<usize>,
    allow_large: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if n == 0 {
        return Err(usage("sweep needs n >= 1"));
    }
    if n > DEFAULT_SWEEP_BOUND && !allow_large {
        return Err(usage(format!(
            "n = {n} exceeds the sweep bound {DEFAULT_SWEEP_BOUND}; pass --allow-large to override"
        )));
    }
    if n > 5 {
        return Err(usage(format!("n = {n} cannot be enumerated")));
    }
    let k_max = k_max.unwrap_or((1 << n) - 1);
    let workers = workers.unwrap_or_else(default_workers).max(1);
    let rows = sweep_rows(n, k_max, workers)?;
    let all_match = rows.iter().all(|r| r.matches);
    let summary = json!({
        "n": n,
        "k_max": k_max,
        "sequences": 1u64 << (1u64 << n),
        "all_match": all_match,
        "rows": to_value(&rows),
    });
    if let Some(dir) = dir {
        let io = |e: std::io::Error| usage(format!("cannot write to {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join("sweep.tsv"), rows_to_tsv(&rows)).map_err(io)?;
        fs::write(dir.join("summary.json"), format!("{summary}\n")).map_err(io)?;
    }
    emit(out, &summary)?;
    Ok(if all_match { EXIT_OK } else { EXIT_MISMATCH })
}

fn load_p(field: &FieldArgs, input: &str) -> Result<PrimePeriodicSequence, Failure> {
    let text = read_input(input)?;
    Ok(PrimePeriodicSequence::parse(field.p, field.n, &text)?)
}

fn pary_command(cmd: ParyCommand, out: &mut dyn Write) -> Result<(), Failure> {
    let value = match cmd {
        ParyCommand::Lc { field, input } => {
            let s = load_p(&field, &input)?;
            json!({ "lc": pary::lc_p(&s) })
        }
        ParyCommand::Full { field, input } => {
            let s = load_p(&field, &input)?;
            json!({ "full": pary::has_full_complexity_p(&s) })
        }
        ParyCommand::TwoTerm { field, a, k, b, m } => {
            let r = pary::two_term_lc(field.p, field.n, a, k, b, m)?;
            json!({
                "expected": r.expected,
                "lc": r.lc,
                "one_error_lc": r.one_error_lc,
                "holds": r.holds(),
            })
        }
    };
    emit(out, &value)
}

/// Shared by the binary: run with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
