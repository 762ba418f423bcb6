use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use heffter_cli::commands::{
    cmd_coverage, cmd_generate, cmd_search, cmd_verify, CliError, CoverageFormat, OutputFormat,
};

#[derive(Parser)]
#[command(
    name = "heffter",
    about = "Construct, verify, and search square integer Heffter arrays H(n;k)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the H(n;k) for a solved parameter class and print or save it
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Output format
        #[arg(long, value_enum, default_value = "grid")]
        format: OutputFormat,
        /// Write to this path instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Heffter axioms of a stored array (grid or JSON)
    Verify {
        path: PathBuf,
        /// Also require balanced signs in every line
        #[arg(long)]
        shiftable: bool,
        /// Also look for a primary transversal with balanced removal
        #[arg(long)]
        strippable: bool,
    },
    /// Run the backtracking oracle for H(n;k)
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Explore the entire space, verifying every solution
        #[arg(long)]
        exhaust: bool,
        /// Count all solutions without storing them
        #[arg(long)]
        all: bool,
        /// Abort after this many accepted placements
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the existence verdict for every (n, k) up to a bound
    Coverage {
        #[arg(long = "max-n")]
        max_n: usize,
        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: CoverageFormat,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate { n, k, format, out } => cmd_generate(n, k, format, out.as_deref()),
        Command::Verify { path, shiftable, strippable } => cmd_verify(&path, shiftable, strippable),
        Command::Search { n, k, exhaust, all, budget } => cmd_search(n, k, exhaust, all, budget),
        Command::Coverage { max_n, format } => cmd_coverage(max_n, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
