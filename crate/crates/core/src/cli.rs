//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 property failure, 2 parse error, 3 numeric failure,
//! 4 inconsistency between independent computations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::blaschke::{BoundaryPoint, DiskPoint};
use crate::error::Error;
use crate::io::{
    load_config, matrix_csv, to_json_complex, AttoMatrixJson, BlaschkeJson, ConfigError, ElementJson, Instance,
    SymbolJson, SymbolSource,
};
use crate::symbols::is_zero_symbol;
use crate::tto::{self, atto_matrix, outer_product};
use crate::verify;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_INCONSISTENT: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "atto", version, about = "Asymmetric truncated Toeplitz operators on model spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the operator matrix of a configured instance.
    Matrix {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the entries as `row,col,re,im` CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decide whether the configured symbol gives the zero operator.
    CheckZero {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `tolerances.matrix`.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Transport the operator through Crofoot transforms at `a` and `b`.
    Crofoot {
        #[arg(long)]
        config: PathBuf,
        /// Point `re,im` in the disk; defaults to `alpha(0)`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Option<Complex64>,
        /// Point `re,im` in the disk; defaults to `beta(0)`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        b: Option<Complex64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bound on the conjugation residual; defaults to `tolerances.matrix`.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build a rank-one operator and compare it with its outer product.
    RankOne {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the builder named in the config.
        #[arg(long, value_enum)]
        kind: Option<RankOneKind>,
        /// `re,im`; interior for `a`/`b`, on the circle for `boundary`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        point: Option<Complex64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Defaults to 1e-9 for interior points and 1e-8 on the circle.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the randomized property suites.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Trials per property; defaults to each property's own count.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankOneKind {
    A,
    B,
    Boundary,
}

/// Parses `re,im` or a bare real number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got {s:?}")),
    }
}

/// A failed command: exit code and diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure { code: EXIT_PARSE, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_PARSE,
            _ => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_NUMERIC, message: format!("{}: {e}", path.display()) }
}

fn inconsistent(message: String) -> Failure {
    Failure { code: EXIT_INCONSISTENT, message }
}

/// Writes through a temporary file in the destination directory, renamed on success.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_failure(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_failure(path, e))?;
    tmp.persist(path).map_err(|e| io_failure(path, e.error))?;
    Ok(())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Output goes to `out` if given, otherwise to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn instance(config: &Path) -> Result<Instance, Failure> {
    Ok(load_config(config)?.resolve()?)
}

fn parse_failure(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_PARSE, message: format!("{flag}: {e}") }
}

fn disk_arg(flag: &str, v: Complex64) -> Result<DiskPoint, Failure> {
    DiskPoint::new(v).map_err(|e| parse_failure(flag, e))
}

fn positive(tol: Option<f64>, default: f64) -> Result<f64, Failure> {
    match tol {
        Some(t) if !(t > 0.0) => Err(Failure { code: EXIT_PARSE, message: format!("--tol must be positive, got {t}") }),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn cmd_matrix(config: &Path, out: Option<&Path>, csv: Option<&Path>) -> Result<u8, Failure> {
    let inst = instance(config)?;
    let m = atto_matrix(&inst.alpha, &inst.beta, &inst.symbol)?;
    let json = to_pretty(&AttoMatrixJson::from(&m));
    // both payloads are computed before anything is written
    let csv_text = csv.map(|_| matrix_csv(&m));
    emit(out, &json)?;
    if let (Some(p), Some(text)) = (csv, csv_text) {
        write_atomic(p, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_check_zero(config: &Path, out: Option<&Path>, tol: Option<f64>) -> Result<u8, Failure> {
    let inst = instance(config)?;
    let tol = positive(tol, inst.tolerances.matrix)?;
    let verdict = is_zero_symbol(&inst.alpha, &inst.beta, &inst.symbol, tol)?;
    let norm = atto_matrix(&inst.alpha, &inst.beta, &inst.symbol)?.norm();
    let matrix_zero = norm < tol;
    let report = json!({
        "is_zero": verdict.is_zero,
        "c": if verdict.is_zero { Some(to_json_complex(verdict.c)) } else { None },
        "pair_residual": verdict.residual,
        "pair_threshold": verdict.threshold,
        "matrix_norm": norm,
        "matrix_is_zero": matrix_zero,
    });
    emit(out, &to_pretty(&report))?;
    zero_consistency(verdict.is_zero, norm, tol)
}

fn zero_consistency(symbol_zero: bool, norm: f64, tol: f64) -> Result<u8, Failure> {
    if symbol_zero != (norm < tol) {
        return Err(inconsistent(format!(
            "symbol-level verdict {symbol_zero} disagrees with matrix norm {norm:e} at tolerance {tol:e}"
        )));
    }
    Ok(EXIT_OK)
}

fn cmd_crofoot(
    config: &Path,
    a: Option<Complex64>,
    b: Option<Complex64>,
    out: Option<&Path>,
    tol: Option<f64>,
) -> Result<u8, Failure> {
    let inst = instance(config)?;
    let tol = positive(tol, inst.tolerances.matrix)?;
    let zero = Complex64::new(0.0, 0.0);
    let a = disk_arg("--a", a.unwrap_or_else(|| inst.alpha.alpha().eval(zero)))?;
    let b = disk_arg("--b", b.unwrap_or_else(|| inst.beta.alpha().eval(zero)))?;
    let check = verify::transport_residual(&inst.alpha, &inst.beta, a, b, &inst.symbol)?;
    let report = json!({
        "a": to_json_complex(a.value()),
        "b": to_json_complex(b.value()),
        "alpha_a": BlaschkeJson::from(check.conjugated.alpha()),
        "beta_b": BlaschkeJson::from(check.conjugated.beta()),
        "alpha_a_at_0": to_json_complex(check.conjugated.alpha().eval(zero)),
        "beta_b_at_0": to_json_complex(check.conjugated.beta().eval(zero)),
        "transported_symbol": SymbolJson::from(&check.symbol),
        "source_matrix": AttoMatrixJson::from(&check.source),
        "conjugated_matrix": AttoMatrixJson::from(&check.conjugated),
        "transported_matrix": AttoMatrixJson::from(&check.transported),
        "residual": check.residual,
        "tolerance": tol,
    });
    emit(out, &to_pretty(&report))?;
    if !(check.residual < tol) {
        return Err(inconsistent(format!("conjugation residual {:e} exceeds {tol:e}", check.residual)));
    }
    Ok(EXIT_OK)
}

fn cmd_rank_one(
    config: &Path,
    kind: Option<RankOneKind>,
    point: Option<Complex64>,
    out: Option<&Path>,
    csv: Option<&Path>,
    tol: Option<f64>,
) -> Result<u8, Failure> {
    let inst = instance(config)?;
    let (kind, point) = match (kind, point, inst.source) {
        (Some(k), Some(p), _) => (k, p),
        (k, p, SymbolSource::RankOneA(w)) if k.is_none_or(|k| k == RankOneKind::A) => {
            (RankOneKind::A, p.unwrap_or(w.value()))
        }
        (k, p, SymbolSource::RankOneB(w)) if k.is_none_or(|k| k == RankOneKind::B) => {
            (RankOneKind::B, p.unwrap_or(w.value()))
        }
        (k, p, SymbolSource::RankOneBoundary(e)) if k.is_none_or(|k| k == RankOneKind::Boundary) => {
            (RankOneKind::Boundary, p.unwrap_or(e.value()))
        }
        _ => {
            return Err(Failure {
                code: EXIT_PARSE,
                message: "rank-one needs --kind and --point, or a rank_one_* builder in the config".into(),
            })
        }
    };
    let (alpha, beta) = (&inst.alpha, &inst.beta);
    let (label, (symbol, m), left, right, default_tol) = match kind {
        RankOneKind::A => {
            let w = disk_arg("--point", point)?;
            let built = tto::rank_one_interior_a(alpha, beta, w)?;
            ("a", built, beta.conjugate_kernel(w)?, alpha.kernel(w), 1e-9)
        }
        RankOneKind::B => {
            let w = disk_arg("--point", point)?;
            let built = tto::rank_one_interior_b(alpha, beta, w)?;
            ("b", built, beta.kernel(w), alpha.conjugate_kernel(w)?, 1e-9)
        }
        RankOneKind::Boundary => {
            let eta = BoundaryPoint::new(point).map_err(|e| parse_failure("--point", e))?;
            let built = tto::rank_one_boundary(alpha, beta, eta)?;
            ("boundary", built, beta.kernel(eta), alpha.kernel(eta), 1e-8)
        }
    };
    let tol = positive(tol, default_tol)?;
    let expected = outer_product(&left, &right);
    let residual = m.distance(&expected);
    let report = json!({
        "kind": label,
        "point": to_json_complex(point),
        "symbol": SymbolJson::from(&symbol),
        "matrix": AttoMatrixJson::from(&m),
        "left": ElementJson::from(&left),
        "right": ElementJson::from(&right),
        "outer_product": AttoMatrixJson::from(&expected),
        "residual": residual,
        "tolerance": tol,
    });
    let csv_text = csv.map(|_| matrix_csv(&m));
    emit(out, &to_pretty(&report))?;
    if let (Some(p), Some(text)) = (csv, csv_text) {
        write_atomic(p, &text)?;
    }
    if !(residual < tol) {
        return Err(inconsistent(format!("rank-one residual {residual:e} exceeds {tol:e}")));
    }
    Ok(EXIT_OK)
}

fn cmd_verify(seed: u64, trials: Option<usize>, report: Option<&Path>) -> Result<u8, Failure> {
    let start = Instant::now();
    let suite = verify::run_suite(seed, trials);
    let elapsed = start.elapsed().as_secs_f64();
    for line in suite.summary_lines() {
        println!("{line}");
    }
    if let Some(path) = report {
        let doc = json!({
            "metadata": {
                "tool": "atto",
                "version": env!("CARGO_PKG_VERSION"),
                "elapsed_seconds": elapsed,
            },
            "seed": suite.seed,
            "trials": suite.trials,
            "properties": suite.properties,
        });
        write_atomic(path, &to_pretty(&doc))?;
    }
    if suite.all_pass() {
        Ok(EXIT_OK)
    } else {
        let names: Vec<_> = suite.failing().iter().map(|p| p.name.as_str()).collect();
        Err(Failure { code: EXIT_PROPERTY, message: format!("failing properties: {}", names.join(", ")) })
    }
}

/// Runs a parsed command, returning the exit code.
pub fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Matrix { config, out, csv } => cmd_matrix(&config, out.as_deref(), csv.as_deref()),
        Command::CheckZero { config, out, tol } => cmd_check_zero(&config, out.as_deref(), tol),
        Command::Crofoot { config, a, b, out, tol } => cmd_crofoot(&config, a, b, out.as_deref(), tol),
        Command::RankOne { config, kind, point, out, csv, tol } => {
            cmd_rank_one(&config, kind, point, out.as_deref(), csv.as_deref(), tol)
        }
        Command::Verify { seed, trials, report } => cmd_verify(seed, trials, report.as_deref()),
    }
}

/// Entry point for the binary. Argument errors exit with code 2.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("0.5,-0.25").unwrap(), Complex64::new(0.5, -0.25));
        assert_eq!(parse_complex(" 0.3 ").unwrap(), Complex64::new(0.3, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, "first\n").unwrap();
        write_atomic(&p, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "second\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn disagreeing_zero_verdicts_are_flagged() {
        assert_eq!(zero_consistency(true, 1e-12, 1e-9).unwrap(), EXIT_OK);
        assert_eq!(zero_consistency(false, 0.5, 1e-9).unwrap(), EXIT_OK);
        assert_eq!(zero_consistency(true, 0.5, 1e-9).unwrap_err().code, EXIT_INCONSISTENT);
        assert_eq!(zero_consistency(false, 1e-12, 1e-9).unwrap_err().code, EXIT_INCONSISTENT);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
