//! `osc-alg`: batch front end for the oscillator library.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use osc_core::GroupKind;

use config::{Convention, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] osc_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Library(osc_core::Error::Label(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "osc-alg", version, about = "Spectra, ladder checks and operator blocks of the polar harmonic oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: Args,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Energies and degeneracies of the admissible labels.
    Spectrum,
    /// Schrödinger residuals, orthonormality and commutators; exits 1 on any failure.
    Verify,
    /// M² and Δ block matrices, their eigenvalues and the l-content, one file per table.
    Blocks,
    /// Timelike norms and energies under the Kim–Noz and FKR conventions.
    Ghost,
    /// One eigenstate on a polar grid.
    Eval,
    /// Monomial coefficients of the rank-j tensor operator.
    Tensor,
}

#[derive(clap::Args)]
struct Args {
    /// Flat key = value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse_group)]
    group: Option<GroupKind>,
    /// Angular offset.
    #[arg(long, global = true, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, global = true)]
    nmax: Option<u32>,
    #[arg(long, global = true)]
    lmax: Option<u32>,
    #[arg(long, global = true)]
    mmax: Option<u32>,
    /// Single level N - s (2D) or N (3D).
    #[arg(long, global = true)]
    mode: Option<u32>,
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    l: Option<u32>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    m: Option<i32>,
    /// Tensor rank.
    #[arg(long, global = true)]
    j: Option<u32>,
    /// Grid points per axis for `eval`.
    #[arg(long, global = true)]
    points: Option<u32>,
    #[arg(long, global = true)]
    rho_max: Option<f64>,
    #[arg(long, global = true, value_enum)]
    convention: Option<Convention>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Shift added to the eigenvalue 2E in the residual checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    perturb: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; a directory for `blocks`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    radial_nodes: Option<usize>,
    #[arg(long, global = true)]
    azimuthal_nodes: Option<usize>,
    #[arg(long, global = true)]
    polar_nodes: Option<usize>,
    #[arg(long, global = true)]
    beta_cutoff: Option<f64>,
}

fn parse_group(s: &str) -> Result<GroupKind, String> {
    s.parse().map_err(|e: osc_core::Error| e.to_string())
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        macro_rules! put {
            ($($field:ident),*) => {
                $(if let Some(x) = &self.$field {
                    v.push((stringify!($field), x.to_string()));
                })*
            };
        }
        put!(s, nmax, lmax, mmax, mode, n, l, m, j, points, rho_max, convention, tol, perturb);
        put!(radial_nodes, azimuthal_nodes, polar_nodes, beta_cutoff);
        if let Some(g) = self.group {
            v.push(("group", g.name().to_string()));
        }
        if let Some(f) = self.format {
            v.push(("format", f.extension().to_string()));
        }
        if let Some(o) = &self.out {
            v.push(("out", o.display().to_string()));
        }
        v
    }

    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.load(path)?;
        }
        for (k, v) in self.overrides() {
            cfg.set(k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("OSC_ALG_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("OSC_ALG_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    init_threads()?;
    let cfg = cli.args.resolve()?;
    match cli.command {
        Command::Spectrum => commands::spectrum(&cfg)?.emit()?,
        Command::Verify => {
            let (doc, passed) = commands::verify(&cfg)?;
            doc.emit()?;
            if !passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Blocks => {
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for path in commands::blocks(&cfg)?.emit_split(&dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Ghost => commands::ghost(&cfg)?.emit()?,
        Command::Eval => commands::eval(&cfg)?.emit()?,
        Command::Tensor => commands::tensor(&cfg)?.emit()?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
