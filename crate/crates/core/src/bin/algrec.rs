use std::path::PathBuf;
use std::process::ExitCode;

use algrec::experiment::{exit_code_for, run, Command, RunOptions};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "algrec",
    version,
    about = "Seeded random-walk and semigroup-closure experiments"
)]
struct Cli {
    /// Scenario config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed to run; repeat to run several. Overrides the config's list.
    #[arg(long = "seed", global = true)]
    seeds: Vec<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "ALGREC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write walk traces and position CSVs.
    Walk,
    /// Truncated closure of each walk tail.
    Closure,
    /// Ball coverage and inverse-witness fractions per prefix length.
    ArEstimate,
    /// Classify the subsemigroup of Z^d generated by the rows of a file.
    LatticeClassify { input: PathBuf },
    /// Prefix, cancellation, growth and reflected-walk statistics in F_d.
    FreeStats,
    /// Sweep the Heisenberg central-exponent identity.
    NilpotentCheck,
    /// Inverse witnesses: exact identities, plus walk tails with --config.
    WitnessCheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Walk => Command::Walk,
        Cmd::Closure => Command::Closure,
        Cmd::ArEstimate => Command::ArEstimate,
        Cmd::LatticeClassify { input } => Command::LatticeClassify { input },
        Cmd::FreeStats => Command::FreeStats,
        Cmd::NilpotentCheck => Command::NilpotentCheck,
        Cmd::WitnessCheck => Command::WitnessCheck,
    };
    let options = RunOptions {
        config: cli.config,
        seeds: cli.seeds,
        out: cli.out,
        threads: cli.threads,
    };
    match run(&command, &options) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            println!(
                "wrote {}",
                outcome
                    .out_dir
                    .join(algrec::experiment::MANIFEST_FILE)
                    .display()
            );
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
