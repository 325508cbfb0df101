use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gradconf_cli::{run, Command, Job};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Exact checks and constructions for graded conformal algebras.
#[derive(Debug, Parser)]
#[command(name = "gradconf", version)]
struct Args {
    /// Job description file (TOML).
    #[arg(long)]
    input: String,
    #[arg(long, value_enum)]
    command: Command,
    /// Monomial degree bound (cend-assoc) or number of T-multiples (simplicity).
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Seed for the randomized submodule search.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let job = Job { command: args.command, input: args.input, degree_bound: args.degree_bound, seed: args.seed };
    let report = run(&job);
    match args.format {
        Format::Human => print!("{}", report.render_human()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    ExitCode::from(report.exit_code())
}
