//! `f4res`: compute, print and verify the F4 degenerate-Eisenstein tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use f4_core::scalars::rat::{parse_rat, Rat};

#[derive(Parser, Debug)]
#[command(name = "f4res", version, about = "Exact Hecke-algebra and constant-term computations for degenerate Eisenstein series on F4")]
struct Cli {
    /// Directory holding fixture JSON files (default: the bundled copies).
    #[arg(long, global = true, value_name = "PATH")]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Point {
    /// Maximal parabolic P_i.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    parabolic: u8,
    /// Reducibility point z0 (a rational such as 5/2).
    #[arg(long = "z", value_parser = parse_z, allow_hyphen_values = true)]
    z: Rat,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Emit JSON in the fixture schema (sorted keys).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV with a header row.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exponents of the Jacquet module of i_M^G(z0 ϖ_i).
    Jacquet {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        format: Format,
        /// Diff against the matching fixture.
        #[arg(long)]
        verify: bool,
    },
    /// Certified image ranks of the operators N_w(z0), w ∈ W(P_i, G).
    Images {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        format: Format,
        /// A single word such as w1w2w3 (the identity is the empty word).
        #[arg(long)]
        word: Option<String>,
        /// Diff against the matching fixture (or the rank facts at P3).
        #[arg(long)]
        verify: bool,
    },
    /// Gindikin–Karpelevich factors, pole orders, class ratios and labels.
    Gk {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        format: Format,
        /// Number of Laurent coefficients printed for each class sum.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        truncation: u32,
        /// Diff against the matching fixture.
        #[arg(long)]
        verify: bool,
    },
    /// Run every fixture diff, invariant suite and lemma check.
    VerifyThesis {
        /// Restrict to one module.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(f4_core::verify::MODULES))]
        only: Option<String>,
        /// Emit the check matrix as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn parse_z(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = match &cli.fixtures {
        Some(dir) if !dir.is_dir() => {
            eprintln!("error: fixture directory {} does not exist", dir.display());
            return ExitCode::from(2);
        }
        Some(dir) => f4_core::fixtures::FixtureSource::from_dir(dir),
        None => f4_core::fixtures::FixtureSource::bundled(),
    };
    let result = match cli.command {
        Command::Jacquet { point, format, verify } => commands::jacquet(&source, &point, format, verify),
        Command::Images { point, format, word, verify } => commands::images(&source, &point, format, word.as_deref(), verify),
        Command::Gk { point, format, truncation, verify } => commands::gk(&source, &point, format, truncation, verify),
        Command::VerifyThesis { only, json } => commands::verify_thesis(source, only.as_deref(), json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
