use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latkit::commands;
use latkit::report::{Body, Report, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "latkit",
    version,
    about = "Exact checks for even lattices and their isometries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant group with its q and b tables.
    Disc {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Vectors of norm at most the bound, up to sign.
    Shortvec {
        file: PathBuf,
        #[arg(long)]
        bound: i64,
        /// Print counts per norm without listing the vectors.
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Builds the overlattice generated by the glue rows.
    Overlattice {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Runs the claim suite.
    Repro {
        /// Only claims with this tag.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        /// Corrupt a construction on purpose: nu-coord or h-action.
        #[arg(long = "inject-fault")]
        inject_fault: Option<String>,
    },
    /// Invariance, dihedral, fixed-point and moduli checks for a family file.
    Family {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let (json, result) = match cli.command {
        Command::Disc { file, json } => (json, commands::disc(echo.clone(), &file)),
        Command::Shortvec {
            file,
            bound,
            count_only,
            json,
        } => (
            json,
            commands::shortvec(echo.clone(), &file, bound, count_only),
        ),
        Command::Overlattice { file, json } => (json, commands::overlattice(echo.clone(), &file)),
        Command::Repro {
            filter,
            json,
            inject_fault,
        } => (json, commands::repro(echo.clone(), filter, inject_fault)),
        Command::Family { file, json } => (json, commands::family(echo.clone(), &file)),
    };
    let report = result.unwrap_or_else(|e| {
        Report::new(
            echo,
            Body::Error {
                message: e.to_string(),
            },
            EXIT_INPUT,
        )
    });
    if json {
        println!("{}", report.json());
    } else if matches!(report.result, Body::Error { .. }) {
        eprint!("{}", report.text());
    } else {
        print!("{}", report.text());
    }
    ExitCode::from(report.exit_code as u8)
}
