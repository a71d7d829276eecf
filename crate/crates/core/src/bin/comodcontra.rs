use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use comodcontra::cli::{self, Defaults, Report};

#[derive(Parser)]
#[command(name = "comodcontra", version, about = "Exact comodule and contramodule computations")]
struct Args {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,
    #[arg(long, global = true, default_value_t = 5)]
    depth: usize,
    #[arg(long, global = true, default_value_t = 3)]
    cap: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Schema, reference and axiom checks on a scenario file or bundled name.
    Validate { scenario: String },
    /// Runs every task of a scenario in order.
    Run { scenario: String },
    /// A seeded campaign over one property family.
    Fuzz { family: String },
    /// Lists bundled scenarios, fuzz families and operations.
    Formats,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Structured,
    Human,
}

fn emit(args: &Args, report: &Report) -> std::io::Result<()> {
    let text = match args.format {
        Format::Structured => report.structured(),
        Format::Human => report.human(),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, report.structured())?;
            print!("{}", report.human());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let defaults = Defaults { seed: args.seed, cap: args.cap, depth: args.depth, count: 4 };
    let report = match &args.verb {
        Verb::Validate { scenario } => {
            let diags = match cli::load(scenario) {
                Ok(s) => cli::validate(&s).err().unwrap_or_default(),
                Err(e) => vec![e],
            };
            for d in &diags {
                eprintln!("{d}");
            }
            if diags.is_empty() {
                println!("ok");
                return ExitCode::SUCCESS;
            }
            return ExitCode::FAILURE;
        }
        Verb::Run { scenario } => cli::run_source(scenario, defaults),
        Verb::Fuzz { family } => cli::fuzz(family, args.seed, args.count),
        Verb::Formats => {
            println!("formats: structured (JSON), human");
            println!("bundled scenarios: {}", cli::BUNDLED.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "));
            println!("fuzz families: {}", cli::FAMILIES.iter().map(|f| f.name).collect::<Vec<_>>().join(", "));
            println!("operations: {}", cli::OPS.iter().map(|(o, _)| *o).collect::<Vec<_>>().join(", "));
            return ExitCode::SUCCESS;
        }
    };
    if let Err(e) = emit(&args, &report) {
        eprintln!("{e}");
        return ExitCode::FAILURE;
    }
    if report.exit_code() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
