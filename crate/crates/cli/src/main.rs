// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use abcage_cli::config::BoundaryName;
use abcage_cli::{run, Command, ParamOverrides};
use clap::{Parser, Subcommand, ValueEnum};

/// Non-Hermitian Aharonov-Bohm cage simulator.
#[derive(Parser)]
#[command(name = "abcage", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Real-space eigenvalues.
    Spectrum(RunArgs),
    /// Spectra over a phase sweep.
    Sweep(RunArgs),
    /// Time evolution of an initial state.
    Evolve(RunArgs),
    /// Compact localized states and single-site decompositions.
    Cls(RunArgs),
    /// Three-mode resonator versus its eliminated two-mode model.
    Resonator(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Open,
    Periodic,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON run file; `-` reads standard input.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write an SVG plot.
    #[arg(long)]
    svg: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    j: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    phi1: Option<f64>,
    #[arg(long)]
    phi2: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryArg>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Spectrum(a) => (Command::Spectrum, a),
        Cmd::Sweep(a) => (Command::Sweep, a),
        Cmd::Evolve(a) => (Command::Evolve, a),
        Cmd::Cls(a) => (Command::Cls, a),
        Cmd::Resonator(a) => (Command::Resonator, a),
    };
    let flags = ParamOverrides {
        j: args.j,
        gamma: args.gamma,
        phi1: args.phi1,
        phi2: args.phi2,
        n: args.n,
        boundary: args.boundary.map(|b| match b {
            BoundaryArg::Open => BoundaryName::Open,
            BoundaryArg::Periodic => BoundaryName::Periodic,
        }),
    };
    let result = abcage_cli::config::load_config_text(args.config.as_deref())
        .and_then(|text| run(command, &text, &flags, &args.out, args.svg));
    match result {
        Ok((paths, warnings)) => {
            for w in warnings {
                eprintln!("{}", serde_json::json!({ "warning": w }));
            }
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
