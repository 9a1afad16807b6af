//! Command-line toolkit for fiber products of branched covers.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fiberprod::dessin::{dessin_fiber_product, Dessin};
use fiberprod::fiber::decompose;
use fiberprod_cli::corpus::{format_outcomes, run_corpus};
use fiberprod_cli::cover_file::{emit_cover_file, parse_cover_file};
use fiberprod_cli::expr::parse_map_file;
use fiberprod_cli::report::{build_report, emit_json, emit_text, ReportOptions};

#[derive(Parser)]
#[command(
    name = "fiberprod",
    about = "Fiber products of branched covers of Riemann surfaces in the monodromy model",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on single cover files
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Fiber products of two covers
    Fiber {
        #[command(subcommand)]
        command: FiberCommand,
    },
    /// Dessins d'enfants
    Dessin {
        #[command(subcommand)]
        command: DessinCommand,
    },
    /// Rational self-maps of the sphere
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// The bundled corpus
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Parse and validate a cover file
    Validate { file: String },
    /// Print the genus of a cover
    Genus { file: String },
}

#[derive(Subcommand)]
enum FiberCommand {
    /// Decompose the fiber product of two covers
    Decompose(DecomposeArgs),
    /// Evaluate the irreducibility criteria for two covers
    Criteria { file1: String, file2: String },
}

#[derive(Args)]
struct DecomposeArgs {
    file1: String,
    file2: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Check pairwise isomorphism of the components
    #[arg(long)]
    isomorphism: bool,
    /// Include the Jacobian dimension report
    #[arg(long)]
    jacobian: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum DessinCommand {
    /// Fiber product of two dessins given as Belyi cover files
    Product { file1: String, file2: String },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Numerical monodromy of a rational map (an expression, a map file, or -)
    Monodromy {
        input: String,
        /// Write the resulting cover file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Run every corpus case and print the pass/fail table
    Run,
}

enum AppError {
    /// Parse or validation failure: exit code 1.
    Parse(String),
    /// Numerical failure: exit code 2.
    Numerical(String),
    /// Corpus mismatch: exit code 3.
    CorpusMismatch,
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Parse(_) => 1,
            AppError::Numerical(_) => 2,
            AppError::CorpusMismatch => 3,
        }
    }
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| AppError::Parse(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| AppError::Parse(format!("{path}: {e}")))
    }
}

fn load_cover(path: &str) -> Result<fiberprod::BranchedCover, AppError> {
    let text = read_input(path)?;
    parse_cover_file(&text).map_err(|e| AppError::Parse(format!("{path}: {e}")))
}

fn write_output(target: Option<&Path>, content: &str) -> Result<(), AppError> {
    match target {
        Some(path) => fs::write(path, content)
            .map_err(|e| AppError::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Cover { command } => match command {
            CoverCommand::Validate { file } => {
                let cover = load_cover(&file)?;
                println!(
                    "ok: degree {}, base genus {}, {} branch points",
                    cover.degree(),
                    cover.base_genus(),
                    cover.branch_points().len()
                );
                Ok(())
            }
            CoverCommand::Genus { file } => {
                let cover = load_cover(&file)?;
                let genus = cover
                    .genus()
                    .map_err(|e| AppError::Parse(format!("{file}: {e}")))?;
                println!("{genus}");
                Ok(())
            }
        },
        Command::Fiber { command } => match command {
            FiberCommand::Decompose(args) => {
                let c1 = load_cover(&args.file1)?;
                let c2 = load_cover(&args.file2)?;
                let dec =
                    decompose(&c1, &c2).map_err(|e| AppError::Parse(format!("decompose: {e}")))?;
                let options = ReportOptions {
                    isomorphism: args.isomorphism,
                    jacobian: args.jacobian,
                };
                let report = build_report(&c1, &c2, &dec, options)
                    .map_err(|e| AppError::Parse(format!("report: {e}")))?;
                let rendered = match args.format {
                    Format::Text => emit_text(&report),
                    Format::Structured => emit_json(&report),
                };
                write_output(args.report.as_deref(), &rendered)
            }
            FiberCommand::Criteria { file1, file2 } => {
                let c1 = load_cover(&file1)?;
                let c2 = load_cover(&file2)?;
                let dec =
                    decompose(&c1, &c2).map_err(|e| AppError::Parse(format!("criteria: {e}")))?;
                let c = &dec.criteria;
                println!("cond1 (coprime degrees): {}", c.cond1);
                println!("cond2 (coprime local-order lcms): {}", c.cond2);
                for (label, a1, a2) in &c.a_values {
                    println!("  a[{label}] = ({a1}, {a2})");
                }
                println!("predicted irreducible: {}", c.predicted_irreducible);
                println!("actual components: {}", c.actual_component_count);
                Ok(())
            }
        },
        Command::Dessin { command } => match command {
            DessinCommand::Product { file1, file2 } => {
                let to_dessin = |path: &str| -> Result<Dessin, AppError> {
                    let cover = load_cover(path)?;
                    Dessin::from_cover(&cover)
                        .map_err(|e| AppError::Parse(format!("{path}: {e}")))
                };
                let d1 = to_dessin(&file1)?;
                let d2 = to_dessin(&file2)?;
                let parts = dessin_fiber_product(&d1, &d2)
                    .map_err(|e| AppError::Parse(format!("product: {e}")))?;
                println!("components: {}", parts.len());
                for (k, dessin) in parts.iter().enumerate() {
                    let v = dessin.valence();
                    let fmt = |xs: &[usize]| {
                        xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                    };
                    println!(
                        "dessin {k}: edges {}, valence ({}; {}; {}), genus {}",
                        dessin.edges(),
                        fmt(&v.blacks),
                        fmt(&v.whites),
                        fmt(&v.faces),
                        dessin.euler_genus().expect("valid dessin")
                    );
                }
                Ok(())
            }
        },
        Command::Map { command } => match command {
            MapCommand::Monodromy { input, out } => {
                let text = if input == "-" || Path::new(&input).exists() {
                    read_input(&input)?
                } else {
                    input.clone()
                };
                let map =
                    parse_map_file(&text).map_err(|e| AppError::Parse(format!("map: {e}")))?;
                let cover = map
                    .monodromy()
                    .map_err(|e| AppError::Numerical(format!("monodromy: {e}")))?;
                write_output(out.as_deref(), &emit_cover_file(&cover))
            }
        },
        Command::Corpus { command } => match command {
            CorpusCommand::Run => {
                let outcomes =
                    run_corpus().map_err(|e| AppError::Parse(format!("corpus: {e}")))?;
                print!("{}", format_outcomes(&outcomes));
                if outcomes.iter().all(|o| o.passed()) {
                    Ok(())
                } else {
                    Err(AppError::CorpusMismatch)
                }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                AppError::Parse(m) | AppError::Numerical(m) => eprintln!("error: {m}"),
                AppError::CorpusMismatch => {}
            }
            ExitCode::from(err.code())
        }
    }
}
