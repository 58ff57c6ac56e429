use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod text;

use commands::{Outcome, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "cone-anomaly", version, about = "Anomaly of the metric cone over even spheres and the flat torus")]
struct Cli {
    /// Decimal digits of working precision.
    #[arg(long, global = true, env = "CONE_ANOMALY_DIGITS", default_value_t = 60,
          value_parser = clap::value_parser!(u32).range(20..=500))]
    digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Compare the output with this file, or write it when missing.
    #[arg(long, global = true)]
    snapshot: Option<PathBuf>,

    /// Cap on binomial series indices.
    #[arg(long = "j-cutoff", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    j_cutoff: Option<u64>,

    /// Lattice cutoff of direct sums.
    #[arg(long = "n-cutoff", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    n_cutoff: Option<u64>,

    /// Cap on the number of Bessel terms.
    #[arg(long = "m-cutoff", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    m_cutoff: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorial and analytic anomaly of the cone over S^{2p}.
    Sphere {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        /// Largest accepted p.
        #[arg(long, default_value_t = cone_anomaly::sphere::DEFAULT_MAX_P)]
        max_p: u32,
        /// Check the exact spectral identities.
        #[arg(long)]
        identities: bool,
        /// Compare the reduced zeta function with brute-force spectral sums at s.
        #[arg(long)]
        oracle_s: Option<String>,
        /// Number of directly summed eigenvalues per degree.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        oracle_terms: u64,
    },
    /// Anomaly of the cone over the flat torus.
    Torus {
        /// Add finite-difference and raw-spectrum cross-checks.
        #[arg(long)]
        oracles: bool,
    },
    /// Check the explicit bounds and closed-form sums.
    CertifyBounds,
    /// Evaluate one zeta function.
    Zeta {
        #[arg(value_enum)]
        kind: commands::ZetaKind,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Derivative at s = 0.
        #[arg(long)]
        deriv: bool,
        /// Shift sign for the half-shifted functions.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i32,
    },
    /// The explicit constants.
    Constants,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        digits: cli.digits,
        format: cli.format,
        j_cutoff: cli.j_cutoff,
        n_cutoff: cli.n_cutoff,
        m_cutoff: cli.m_cutoff,
    };
    let (name, result) = match &cli.command {
        Command::Sphere { p, max_p, identities, oracle_s, oracle_terms } => {
            ("sphere", commands::sphere(&config, *p, *max_p, *identities, oracle_s.as_deref(), *oracle_terms))
        }
        Command::Torus { oracles } => ("torus", commands::torus(&config, *oracles)),
        Command::CertifyBounds => ("certify-bounds", commands::certify_bounds(&config)),
        Command::Zeta { kind, s, deriv, sign } => ("zeta", commands::zeta(&config, *kind, s, *deriv, *sign)),
        Command::Constants => ("constants", commands::constants(&config)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => Outcome::from_error(e),
    };
    let rendered = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.envelope(name, &config)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text::render(name, &outcome),
    };
    let mut code = outcome.exit_code;
    if let Some(path) = &cli.snapshot {
        match std::fs::read_to_string(path) {
            Ok(golden) => {
                if golden != rendered {
                    eprintln!("snapshot mismatch: {}", path.display());
                    code = code.max(1);
                }
            }
            Err(_) => {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("cannot write snapshot {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(rendered.as_bytes());
    ExitCode::from(code)
}
