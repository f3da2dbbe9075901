//! `pleijel`: Pleijel constants, Bessel zeros, spectra and ratio traces
//! for separable planar domains, emitted as CSV or JSON.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pleijel_core::spectra::{BoundaryCondition, DomainSpec};
use pleijel_core::{Error, Result};

use output::{Format, OutputSpec};

#[derive(Parser)]
#[command(
    name = "pleijel",
    version,
    about = "Pleijel constants for separable planar domains",
    propagate_version = true
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<String>,
    /// Decimal digits for CSV floats (JSON always round-trips exactly)
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BcArg {
    Dirichlet,
    Neumann,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZeroKindArg {
    /// zeros of J_nu
    J,
    /// zeros of J'_nu
    Jprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainKind {
    Disk,
    Sector,
    Annulus,
    AnnularSector,
    Orthotope,
}

#[derive(Args)]
struct DomainArgs {
    /// Domain family
    #[arg(long, value_enum)]
    domain: DomainKind,
    /// Inner radius (annulus, annular-sector)
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Opening angle in radians (sector, annular-sector)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Side lengths, comma separated (orthotope)
    #[arg(long, value_name = "A1,A2,...")]
    lengths: Option<String>,
}

impl DomainArgs {
    fn to_spec(&self) -> Result<DomainSpec> {
        let need = |opt: Option<f64>, what: &str| {
            opt.ok_or_else(|| Error::InvalidInput(format!("--{what} is required for this domain")))
        };
        match self.domain {
            DomainKind::Disk => Ok(DomainSpec::disk()),
            DomainKind::Sector => DomainSpec::sector(need(self.alpha, "alpha")?),
            DomainKind::Annulus => DomainSpec::annulus(need(self.r, "r")?),
            DomainKind::AnnularSector => {
                DomainSpec::annular_sector(need(self.r, "r")?, need(self.alpha, "alpha")?)
            }
            DomainKind::Orthotope => {
                let raw = self
                    .lengths
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("--lengths is required".into()))?;
                DomainSpec::orthotope(parse_f64_list(raw)?)
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pleijel bounds gamma(N), rho(N) and their consecutive ratios
    Constants {
        #[arg(long, value_name = "N")]
        n_max: u32,
    },
    /// Pleijel constant of the unit disk: 8 sup_x { x cos^2(theta(x)) }
    Disk {
        /// Requested accuracy of the maximizer in x
        #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
        tolerance: f64,
    },
    /// Positive zeros of J_nu or J'_nu
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// Single index K or inclusive range LO:HI
        #[arg(long, value_name = "K|LO:HI")]
        k: String,
        #[arg(long, value_enum, default_value_t = ZeroKindArg::J)]
        kind: ZeroKindArg,
    },
    /// Zeros a_{nu,k}(r) of the cross-product J_nu(rz)Y_nu(z) - J_nu(z)Y_nu(rz)
    Cross {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// Inner radius of the annulus
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, value_name = "K|LO:HI")]
        k: String,
    },
    /// Nodal ratio trace mu/n over the ordered spectrum
    Trace {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        /// Boundary condition (Neumann: disk only)
        #[arg(long, value_enum, default_value_t = BcArg::Dirichlet)]
        bc: BcArg,
    },
    /// Scan an inner-radius bracket for a crossing of two zero branches
    Scan {
        /// Branch as NU,K; pass exactly twice
        #[arg(long = "pair", value_name = "NU,K", num_args = 1, action = clap::ArgAction::Append)]
        pairs: Vec<String>,
        /// Radius bracket LO:HI
        #[arg(long, value_name = "LO:HI")]
        r: String,
    },
    /// Finite-k surrogate of the annulus Pleijel characterization
    AnnulusSurrogate {
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Grid LO:HI:STEP for the angular-to-radial ratio x
        #[arg(long, value_name = "LO:HI:STEP")]
        x_grid: String,
        #[arg(long, default_value_t = 64)]
        k_max: u32,
    },
    /// Audit the lower bound a_{kx,k} > 3.4 k / sqrt(1 - r^2)
    Audit {
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Indices, comma separated
        #[arg(long, value_name = "K1,K2,...")]
        k: String,
    },
    /// Cross-mode eigenvalue pairs with relative gap below a tolerance
    NearDeg {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        gap_tol: f64,
    },
    /// Leading Weyl term, optionally against the exact counting function
    Weyl {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Also enumerate and report the relative deviation
        #[arg(long)]
        enumerate: bool,
    },
    /// Dump evaluation-regime diagnostics (maintenance)
    #[command(hide = true)]
    EvalDiag {
        #[arg(long, value_name = "NU1,NU2,...")]
        nu: String,
        #[arg(long, value_name = "LO:HI:STEP")]
        x_grid: String,
    },
}

fn parse_f64_list(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad number {s:?}")))
        })
        .collect()
}

fn parse_u32_list(raw: &str) -> Result<Vec<u32>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad index {s:?}")))
        })
        .collect()
}

/// "K" -> (1, K); "LO:HI" -> (LO, HI).
fn parse_index_range(raw: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidInput(format!("bad index range {raw:?} (want K or LO:HI)"));
    let parts: Vec<&str> = raw.split(':').collect();
    match parts.as_slice() {
        [one] => {
            let k: u32 = one.trim().parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            Ok((1, k))
        }
        [lo, hi] => {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo == 0 || hi < lo {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        _ => Err(bad()),
    }
}

/// "LO:HI" -> (LO, HI), floating point.
fn parse_bracket(raw: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidInput(format!("bad bracket {raw:?} (want LO:HI)"));
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

/// "LO:HI:STEP" -> inclusive grid.
fn parse_grid(raw: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidInput(format!("bad grid {raw:?} (want LO:HI:STEP)"));
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let step: f64 = parts[2].trim().parse().map_err(|_| bad())?;
    if step.is_nan() || step <= 0.0 || hi < lo {
        return Err(bad());
    }
    let n = ((hi - lo) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// "NU,K" -> (nu, k).
fn parse_pair(raw: &str) -> Result<(f64, u32)> {
    let bad = || Error::InvalidInput(format!("bad pair {raw:?} (want NU,K)"));
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 2 {
        return Err(bad());
    }
    let nu: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let k: u32 = parts[1].trim().parse().map_err(|_| bad())?;
    Ok((nu, k))
}

fn run(cli: Cli) -> Result<()> {
    let spec = OutputSpec::new(
        match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        cli.output.clone(),
        cli.precision,
    )?;

    let table = match cli.command {
        Command::Constants { n_max } => commands::constants(n_max)?,
        Command::Disk { tolerance } => commands::disk(tolerance)?,
        Command::Zeros { nu, k, kind } => commands::zeros(
            nu,
            parse_index_range(&k)?,
            match kind {
                ZeroKindArg::J => commands::ZeroKind::J,
                ZeroKindArg::Jprime => commands::ZeroKind::JPrime,
            },
        )?,
        Command::Cross { nu, r, k } => commands::cross(nu, r, parse_index_range(&k)?)?,
        Command::Trace {
            domain,
            lambda_max,
            bc,
        } => commands::trace(
            domain.to_spec()?,
            lambda_max,
            match bc {
                BcArg::Dirichlet => BoundaryCondition::Dirichlet,
                BcArg::Neumann => BoundaryCondition::Neumann,
            },
        )?,
        Command::Scan { pairs, r } => {
            if pairs.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "--pair must be given exactly twice, got {}",
                    pairs.len()
                )));
            }
            let (lo, hi) = parse_bracket(&r)?;
            commands::scan(parse_pair(&pairs[0])?, parse_pair(&pairs[1])?, lo, hi)?
        }
        Command::AnnulusSurrogate { r, x_grid, k_max } => {
            commands::annulus_surrogate(r, parse_grid(&x_grid)?, k_max)?
        }
        Command::Audit { r, x, k } => commands::audit(r, x, parse_u32_list(&k)?)?,
        Command::NearDeg {
            domain,
            lambda_max,
            gap_tol,
        } => commands::near_deg(domain.to_spec()?, lambda_max, gap_tol)?,
        Command::Weyl {
            domain,
            lambda,
            enumerate,
        } => commands::weyl(domain.to_spec()?, lambda, enumerate)?,
        Command::EvalDiag { nu, x_grid } => {
            commands::eval_diag(parse_f64_list(&nu)?, parse_grid(&x_grid)?)?
        }
    };

    table
        .write(&spec)
        .map_err(|e| Error::InvalidInput(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    // worker cap; computations are deterministic regardless
    if let Ok(threads) = std::env::var("PLEIJEL_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
