use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qccdts_cli::commands::{self, Outcome, SearchArgs, EXIT_USAGE};

/// Quantum convolutional codes from strong difference triangle sets.
#[derive(Parser)]
#[command(name = "qccdts", version)]
struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,

    /// Read and print sets as 1-based (the default for code files).
    #[arg(long, global = true, conflicts_with = "zero_based")]
    one_based: bool,

    /// Read and print sets as 0-based exponent sets.
    #[arg(long, global = true)]
    zero_based: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Code file in JSON; `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build X(D) and Z(D) and print their parameters.
    Build(InputArg),
    /// Reflect the family and print the Z family and both matrices.
    Reflect(InputArg),
    /// Run every structural check; exit 1 if any fails.
    Verify(InputArg),
    /// Free distance and column distances of X(D).
    Distance {
        #[command(flatten)]
        input: InputArg,
        /// Weight budget for exact search (default: certificate for CSOC
        /// codes, otherwise w + 1).
        #[arg(long)]
        budget: Option<u32>,
        /// Largest column distance index (default: 2 * memory, clipped to
        /// the 64-bit window).
        #[arg(long)]
        window: Option<usize>,
    },
    /// Rebuild and verify the embedded reference tables.
    Tables {
        #[arg(long)]
        table: Option<u8>,
        #[arg(long)]
        row: Option<u8>,
    },
    /// Enumerate strong DTS families as JSON lines.
    Search {
        /// Number of sets r.
        #[arg(long)]
        sets: usize,
        /// Set size w.
        #[arg(long)]
        weight: usize,
        /// Largest allowed exponent.
        #[arg(long)]
        max_scope: u32,
        /// Stop after this many families.
        #[arg(long)]
        limit: Option<usize>,
        /// Keep only families whose differences fill 1..=M.
        #[arg(long)]
        full_strong: bool,
    },
}

fn read_input(arg: &InputArg) -> Result<String, Outcome> {
    let result = if arg.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&arg.input)
    };
    result.map_err(|e| Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: cannot read {}: {e}\n", arg.input.display()),
    })
}

fn run(cli: Cli) -> Outcome {
    let convention = match (cli.one_based, cli.zero_based) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    };
    let guard = match commands::search_override(std::env::var("QCCDTS_MAX_SEARCH").ok().as_deref())
    {
        Ok(g) => g,
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let with_input = |arg: &InputArg, f: &dyn Fn(&str) -> Outcome| match read_input(arg) {
        Ok(text) => f(&text),
        Err(o) => o,
    };
    match &cli.command {
        Command::Build(a) => with_input(a, &|t| commands::build(t, convention, cli.json)),
        Command::Reflect(a) => with_input(a, &|t| commands::reflect(t, convention, cli.json)),
        Command::Verify(a) => with_input(a, &|t| commands::verify(t, convention, cli.json)),
        Command::Distance {
            input,
            budget,
            window,
        } => with_input(input, &|t| {
            commands::distance(t, convention, cli.json, *budget, *window, guard)
        }),
        Command::Tables { table, row } => commands::tables(*table, *row, cli.json),
        Command::Search {
            sets,
            weight,
            max_scope,
            limit,
            full_strong,
        } => commands::search(
            &SearchArgs {
                sets: *sets,
                weight: *weight,
                max_scope: *max_scope,
                limit: *limit,
                full_strong: *full_strong,
                one_based: convention.unwrap_or(false),
            },
            guard,
        ),
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
