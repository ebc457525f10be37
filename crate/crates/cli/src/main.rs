//! Command-line front end: runs the index and pairing experiments end to end
//! and emits machine-readable reports (JSON or CSV).
//!
//! Exit codes: 0 success, 1 malformed configuration or runtime failure,
//! 2 index computed but not stabilized, 3 symbol not Fredholm.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use landau_toeplitz::bergman::compare_weights;
use landau_toeplitz::chern::{odd_chern_report, winding_number, ChernReport};
use landau_toeplitz::error::Error;
use landau_toeplitz::index::{check_fredholm, graded_index_with_tolerance, IndexReport};
use landau_toeplitz::landau::{landau_kernel, LevelSpec};
use landau_toeplitz::multi_index::MultiIndex;
use landau_toeplitz::symbols::{
    coordinate_symbol, parse_symbol, su2_symbol, zpow_symbol, BoundarySymbol,
};
use landau_toeplitz::toeplitz::{assemble_toeplitz, commutator_tail_norm, BasisCache};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "landau-toeplitz",
    version,
    about = "Toeplitz operators on Landau levels: truncated Fredholm indices and odd Chern pairings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fredholm index of a Toeplitz truncation (JSON report)
    Index(IndexArgs),
    /// Winding number / odd Chern character pairing of a symbol (JSON)
    Chern(ChernArgs),
    /// Landau vs Bergman coordinate weights (CSV)
    CompareBergman(CompareArgs),
    /// Commutator tail norms over a window sweep (CSV)
    CommutatorDecay(DecayArgs),
    /// Cross-check the analytic index against the topological prediction
    Verify(IndexArgs),
    /// Singular values of a Toeplitz truncation (CSV)
    Spectrum(IndexArgs),
    /// Reproducing-kernel values on a deterministic point grid (CSV)
    Kernel(KernelArgs),
}

#[derive(Args, Clone)]
struct IndexArgs {
    /// Complex dimension n
    #[arg(long)]
    n: usize,
    /// Particular level as comma-separated naturals, e.g. "0" or "1,0"
    #[arg(long, conflicts_with = "full_level")]
    level: Option<String>,
    /// Full level l (direct sum over all |k| = l)
    #[arg(long)]
    full_level: Option<u32>,
    /// Symbol: one of coordinate:<i>, su2, zpow:<d>, constant, or a literal
    #[arg(long)]
    symbol: String,
    /// Column degree cap of the truncation
    #[arg(long = "D", default_value_t = 10)]
    degree_cap: u32,
    #[arg(long, default_value_t = 1e-8)]
    rank_tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    /// json or csv where applicable
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args, Clone)]
struct ChernArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CompareArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Shift axis (1-based)
    #[arg(long, default_value_t = 1)]
    axis: usize,
    #[arg(long = "D", default_value_t = 200)]
    degree_cap: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct DecayArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Level k as comma-separated naturals
    #[arg(long, default_value = "0")]
    level: String,
    #[arg(long, default_value = "coordinate:1")]
    symbol: String,
    /// Degree caps to sweep, comma separated
    #[arg(long, default_value = "5,10,20")]
    d_values: String,
    /// Ambient energy cutoffs to sweep, comma separated
    #[arg(long, default_value = "2,4")]
    k_values: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct KernelArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "0")]
    level: String,
    /// Number of sample points (pairs are the full grid square)
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    subcommand: String,
    n: usize,
    level: String,
    symbol: String,
    degree_cap: u32,
    rank_tolerance: f64,
    det_threshold: f64,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: String,
    kind: &'a str,
    version: &'a str,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not configuration errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let kind = match &err {
                Error::NotFredholm { .. } => "not_fredholm",
                Error::Parse(_) => "parse",
                _ => "runtime",
            };
            let report = ErrorReport {
                error: err.to_string(),
                kind,
                version: VERSION,
            };
            eprintln!("{}", serde_json::to_string_pretty(&report).unwrap());
            match err {
                Error::NotFredholm { .. } => ExitCode::from(3),
                Error::Parse(_) => ExitCode::from(1),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Index(args) => run_index(args),
        Cmd::Chern(args) => run_chern(args),
        Cmd::CompareBergman(args) => run_compare_bergman(args),
        Cmd::CommutatorDecay(args) => run_commutator_decay(args),
        Cmd::Verify(args) => run_verify(args),
        Cmd::Spectrum(args) => run_spectrum(args),
        Cmd::Kernel(args) => run_kernel(args),
    }
}

fn parse_level(n: usize, text: &str) -> Result<MultiIndex, Error> {
    let entries: Result<Vec<u32>, _> = text.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let entries = entries.map_err(|_| Error::Parse(format!("bad level '{text}'")))?;
    if entries.len() != n {
        return Err(Error::Parse(format!(
            "level '{text}' has {} entries, expected {n}",
            entries.len()
        )));
    }
    Ok(MultiIndex::new(entries))
}

fn resolve_symbol(n: usize, text: &str) -> Result<BoundarySymbol, Error> {
    if let Some(axis) = text.strip_prefix("coordinate:") {
        let axis: usize = axis
            .parse()
            .map_err(|_| Error::Parse(format!("bad coordinate axis '{text}'")))?;
        if axis == 0 || axis > n {
            return Err(Error::Parse(format!(
                "coordinate axis {axis} out of range 1..={n}"
            )));
        }
        return coordinate_symbol(n, axis - 1);
    }
    if let Some(d) = text.strip_prefix("zpow:") {
        if n != 1 {
            return Err(Error::Parse(
                "zpow symbols live on the circle (n = 1)".into(),
            ));
        }
        let d: i64 = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad zpow degree '{text}'")))?;
        return Ok(zpow_symbol(d));
    }
    match text {
        "su2" => {
            if n != 2 {
                return Err(Error::Parse("the su2 symbol requires n = 2".into()));
            }
            Ok(su2_symbol())
        }
        "constant" => Ok(BoundarySymbol::identity(n, 1)),
        literal => parse_symbol(n, literal),
    }
}

fn resolve_spec(args: &IndexArgs) -> Result<LevelSpec, Error> {
    match (&args.level, args.full_level) {
        (Some(level), None) => Ok(LevelSpec::particular(parse_level(args.n, level)?)),
        (None, Some(ell)) => Ok(LevelSpec::full(args.n, ell)),
        (None, None) => Ok(LevelSpec::particular(MultiIndex::zeros(args.n))),
        (Some(_), Some(_)) => Err(Error::Parse(
            "--level and --full-level are mutually exclusive".into(),
        )),
    }
}

fn config_for(args: &IndexArgs, spec: &LevelSpec, subcommand: &str) -> ResolvedConfig {
    ResolvedConfig {
        subcommand: subcommand.to_string(),
        n: args.n,
        level: spec.describe(),
        symbol: args.symbol.clone(),
        degree_cap: args.degree_cap,
        rank_tolerance: args.rank_tol,
        det_threshold: landau_toeplitz::index::DET_THRESHOLD,
    }
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{content}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::DomainError(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
        Some(p) => write_atomic(p, content),
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content.as_bytes())
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Error::DomainError(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct IndexOutput {
    config: ResolvedConfig,
    version: &'static str,
    report: IndexReport,
}

fn run_index(args: IndexArgs) -> Result<ExitCode, Error> {
    let spec = resolve_spec(&args)?;
    let symbol = resolve_symbol(args.n, &args.symbol)?;
    let mut cache = BasisCache::new(args.n);
    let report =
        graded_index_with_tolerance(&spec, &symbol, args.degree_cap, args.rank_tol, &mut cache)?;
    let stabilized = report.stabilized;
    let rendered = match args.format.as_str() {
        "json" => {
            let out = IndexOutput {
                config: config_for(&args, &spec, "index"),
                version: VERSION,
                report,
            };
            serde_json::to_string_pretty(&out).unwrap()
        }
        "csv" => {
            let mut csv = String::from("D,ker,coker,index,stabilized\n");
            for h in &report.history {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    h.degree_cap,
                    h.kernel_dim,
                    h.cokernel_dim,
                    h.kernel_dim as i64 - h.cokernel_dim as i64,
                    stabilized
                );
            }
            csv.trim_end().to_string()
        }
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    emit(&args.output, &rendered)?;
    Ok(if stabilized {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[derive(Serialize)]
struct ChernOutput {
    n: usize,
    symbol: String,
    value_re: f64,
    value_im: f64,
    nearest_integer: i64,
    quadrature_nodes: usize,
    converged: bool,
    winding: Option<i64>,
    version: &'static str,
}

fn run_chern(args: ChernArgs) -> Result<ExitCode, Error> {
    let symbol = resolve_symbol(args.n, &args.symbol)?;
    let report: ChernReport = odd_chern_report(&symbol)?;
    let winding = if args.n == 1 {
        Some(winding_number(&symbol, 4096)?)
    } else {
        None
    };
    let out = ChernOutput {
        n: args.n,
        symbol: args.symbol.clone(),
        value_re: report.value.re,
        value_im: report.value.im,
        nearest_integer: report.nearest,
        quadrature_nodes: report.nodes,
        converged: report.converged,
        winding,
        version: VERSION,
    };
    emit(&args.output, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(ExitCode::SUCCESS)
}

fn run_compare_bergman(args: CompareArgs) -> Result<ExitCode, Error> {
    if args.axis == 0 || args.axis > args.n {
        return Err(Error::Parse(format!(
            "axis {} out of range 1..={}",
            args.axis, args.n
        )));
    }
    let rows = compare_weights(args.n, args.axis - 1, args.degree_cap)?;
    let mut csv = String::from(
        "abs_m,m,lambda_eta,lambda_mu_exact,lambda_mu_asymptotic,diff,diff_times_absm\n",
    );
    for r in rows {
        let m_txt =
            r.m.entries()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(";");
        let _ = writeln!(
            csv,
            "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            r.m.total(),
            m_txt,
            r.lambda_eta,
            r.lambda_mu_exact,
            r.lambda_mu_asymptotic,
            r.diff,
            r.diff_times_absm
        );
    }
    emit(&args.output, csv.trim_end())?;
    Ok(ExitCode::SUCCESS)
}

fn run_commutator_decay(args: DecayArgs) -> Result<ExitCode, Error> {
    let level = parse_level(args.n, &args.level)?;
    let symbol = resolve_symbol(args.n, &args.symbol)?;
    let parse_list = |text: &str| -> Result<Vec<u32>, Error> {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad sweep list '{text}'")))
            })
            .collect()
    };
    let d_values = parse_list(&args.d_values)?;
    let k_values = parse_list(&args.k_values)?;
    let mut cache = BasisCache::new(args.n);
    let mut csv = String::from("D,K,sigma_max\n");
    for &k_cap in &k_values {
        for &d in &d_values {
            let norm = commutator_tail_norm(&level, &symbol, d, k_cap, d, &mut cache)?;
            let _ = writeln!(csv, "{d},{k_cap},{norm:.12e}");
        }
    }
    emit(&args.output, csv.trim_end())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyOutput {
    config: ResolvedConfig,
    version: &'static str,
    analytic: IndexReport,
    chern_value_re: f64,
    chern_value_im: f64,
    prediction: i64,
    agree: bool,
}

fn run_verify(args: IndexArgs) -> Result<ExitCode, Error> {
    let spec = resolve_spec(&args)?;
    let symbol = resolve_symbol(args.n, &args.symbol)?;
    let mut cache = BasisCache::new(args.n);
    let analytic =
        graded_index_with_tolerance(&spec, &symbol, args.degree_cap, args.rank_tol, &mut cache)?;
    let ell = match &spec {
        LevelSpec::Full { ell, .. } => *ell,
        LevelSpec::Particular(_) => 0,
    };
    let chern = odd_chern_report(&symbol)?;
    let prediction =
        landau_toeplitz::chern::landau_prediction_from_value(ell, args.n, chern.value)?;
    let agree = analytic.index == prediction;
    let stabilized = analytic.stabilized;
    let out = VerifyOutput {
        config: config_for(&args, &spec, "verify"),
        version: VERSION,
        analytic,
        chern_value_re: chern.value.re,
        chern_value_im: chern.value.im,
        prediction,
        agree,
    };
    emit(&args.output, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(if agree && stabilized {
        ExitCode::SUCCESS
    } else if !stabilized {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    })
}

fn run_spectrum(args: IndexArgs) -> Result<ExitCode, Error> {
    let spec = resolve_spec(&args)?;
    let symbol = resolve_symbol(args.n, &args.symbol)?;
    // surface the Fredholm check with the usual exit contract
    let check = check_fredholm(&symbol)?;
    if !check.fredholm {
        return Err(Error::NotFredholm {
            min_abs_det: check.min_abs_det,
        });
    }
    let mut cache = BasisCache::new(args.n);
    let t = assemble_toeplitz(&spec, &symbol, args.degree_cap, &mut cache)?;
    let mut csv = String::from("idx,sigma\n");
    for (i, s) in t.singular_values().iter().enumerate() {
        let _ = writeln!(csv, "{i},{s:.12e}");
    }
    emit(&args.output, csv.trim_end())?;
    Ok(ExitCode::SUCCESS)
}

fn run_kernel(args: KernelArgs) -> Result<ExitCode, Error> {
    let level = parse_level(args.n, &args.level)?;
    // deterministic spiral of sample points in the disk of radius 2
    let points: Vec<Vec<Complex64>> = (0..args.samples)
        .map(|j| {
            let t = j as f64 / args.samples.max(1) as f64;
            let r = 2.0 * t.sqrt();
            let th = 2.399_963_229_728_653 * j as f64; // golden angle
            (0..args.n)
                .map(|axis| {
                    let rot = th + axis as f64;
                    Complex64::new(r * rot.cos(), r * rot.sin())
                })
                .collect()
        })
        .collect();
    let mut csv = String::from("z,w,re,im\n");
    let fmt_pt = |p: &Vec<Complex64>| {
        p.iter()
            .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
            .collect::<Vec<_>>()
            .join(";")
    };
    for z in &points {
        for w in &points {
            let v = landau_kernel(args.n, &level, z, w);
            let _ = writeln!(
                csv,
                "{},{},{:.12e},{:.12e}",
                fmt_pt(z),
                fmt_pt(w),
                v.re,
                v.im
            );
        }
    }
    emit(&args.output, csv.trim_end())?;
    Ok(ExitCode::SUCCESS)
}
