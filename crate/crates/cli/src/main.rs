//! `planarconst`: compute certified enclosures, and replay certificate files.
//!
//! Exit status is 0 on success, 1 when a certificate is rejected or a
//! computation fails, and 2 on a usage error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use planarconst::{compute_all, Config, Pipeline};
use planarconst_cert::{verify, verify_bytes, CertificateFile, Rejection};
use planarconst_exact::{outward_round, RatInterval, Rational};

#[derive(Parser)]
#[command(name = "planarconst", version, about = "Certified planar-graph constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute enclosures and optionally write their certificate.
    Compute {
        #[arg(long, value_enum, default_value_t = Constant::All)]
        constant: Constant,
        /// Width budget for log and sqrt enclosures, as `n/d` or a decimal.
        #[arg(long)]
        budget: Option<Rational>,
        /// Width goal for the `t0` bracket.
        #[arg(long)]
        t0_width: Option<Rational>,
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Decimal places in the printed enclosures.
        #[arg(long, default_value_t = 11)]
        digits: u32,
    },
    /// Replay a certificate file.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 11)]
        digits: u32,
    },
    /// Print the claims of a certificate file without replaying it.
    Show {
        path: PathBuf,
        #[arg(long, default_value_t = 11)]
        digits: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Constant {
    T0,
    Nu,
    Rho,
    ExpNegNu,
    All,
}

enum Failure {
    Rejected(Rejection),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute {
            constant,
            budget,
            t0_width,
            cert_out,
            digits,
        } => compute(constant, budget, t0_width, cert_out, digits),
        Command::Verify { path, digits } => verify_file(&path, digits),
        Command::Show { path, digits } => show(&path, digits),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(r)) => {
            eprintln!("{r}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Writes one line to stdout. A closed reader is not an error.
fn emit(line: String) {
    let _ = writeln!(io::stdout().lock(), "{line}");
}

fn row(name: &str, v: &RatInterval, digits: u32) {
    emit(format!("{name} {}", outward_round(v, digits)));
}

fn compute(
    constant: Constant,
    budget: Option<Rational>,
    t0_width: Option<Rational>,
    cert_out: Option<PathBuf>,
    digits: u32,
) -> Result<(), Failure> {
    let mut config = Config::default();
    if let Some(b) = budget {
        config.width_budget = b;
    }
    if let Some(w) = t0_width {
        config.t0_width = w;
    }
    let file = if constant == Constant::All {
        let report = compute_all(&config).context("computation failed")?;
        for (name, v) in report.rows() {
            row(name, v, digits);
        }
        report.certificate
    } else {
        let mut p = Pipeline::new(config).context("invalid configuration")?;
        let (name, value) = match constant {
            Constant::T0 => ("t0", p.t0()),
            Constant::Nu => ("nu", p.nu()),
            Constant::Rho => ("rho", p.rho()),
            Constant::ExpNegNu => ("exp_neg_nu", p.exp_neg_nu()),
            Constant::All => unreachable!("handled above"),
        };
        row(name, &value.context("computation failed")?, digits);
        let file = p.certificate();
        verify(&file).map_err(Failure::Rejected)?;
        file
    };
    if let Some(path) = cert_out {
        fs::write(&path, file.to_bytes())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn read(path: &PathBuf) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn verify_file(path: &PathBuf, digits: u32) -> Result<(), Failure> {
    let verified = verify_bytes(&read(path)?).map_err(Failure::Rejected)?;
    emit(format!("accepted {} certificates", verified.enclosures.len()));
    for (name, v) in &verified.enclosures {
        row(name, v, digits);
    }
    Ok(())
}

fn show(path: &PathBuf, digits: u32) -> Result<(), Failure> {
    let file = CertificateFile::from_bytes(&read(path)?)
        .with_context(|| format!("cannot decode {}", path.display()))?;
    emit(format!("schema {}", file.meta.schema));
    emit(format!("digest {}", file.meta.digest));
    for cert in &file.certificates {
        row(&cert.name, &cert.claim.enclosure, digits);
    }
    Ok(())
}
