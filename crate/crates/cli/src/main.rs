use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use redprod_cli::{parse_instance, run_command, CliError, Command, Settings};

/// Reduced products of finite binary structures: connectivity, components
/// and path witnesses, checked by two independent methods.
#[derive(Debug, Parser)]
#[command(name = "redprod", version)]
struct Args {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the quotient structure in Graphviz format to this file.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Seed for randomized commands; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Refuse products with more tuples than this.
    #[arg(long, global = true, env = "REDPROD_CAP", default_value_t = redprod::product::DEFAULT_CAP)]
    cap: u128,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Connectivity of the reduced product by quotient BFS and by condition (b).
    Check { instance: PathBuf },
    /// Components by quotient BFS and by the distance-set criterion.
    Components { instance: PathBuf },
    /// Criterion and path witness for two points (or two sequences).
    Witness {
        instance: PathBuf,
        /// Point name, sequence name or tuple such as `(0,1,2)`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Diameter stratification and condition (b) witnesses.
    ConditionB { instance: PathBuf },
    /// Compare both oracles on seeded random instances.
    Verify {
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long, default_value_t = 4)]
        max_index: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Random point pairs per instance.
        #[arg(long, default_value_t = 12)]
        pairs: usize,
    },
    /// Falsification harness for Horn or positive formulas.
    Preserve {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Export the quotient structure.
    Export {
        instance: PathBuf,
        /// Graphviz output on stdout (default).
        #[arg(long = "as-dot", conflicts_with = "as_json")]
        as_dot: bool,
        /// JSON output on stdout.
        #[arg(long = "as-json")]
        as_json: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn run(args: Args) -> Result<i32, CliError> {
    let settings = Settings { seed: args.seed, cap: args.cap, timing: args.timing };
    let (command, file, export_dot) = match args.command {
        Cmd::Check { instance } => (Command::Check, Some(instance), false),
        Cmd::Components { instance } => (Command::Components, Some(instance), false),
        Cmd::Witness { instance, x, y } => (Command::Witness { x, y }, Some(instance), false),
        Cmd::ConditionB { instance } => (Command::ConditionB, Some(instance), false),
        Cmd::Verify { seeds, max_index, max_size, pairs } => {
            if max_index == 0 || max_size == 0 {
                return Err(CliError::Usage("--max-index and --max-size must be positive".into()));
            }
            (Command::Verify { seeds, max_index, max_size, pairs }, None, false)
        }
        Cmd::Preserve { formula, trials, max_index, max_size } => {
            if max_index == 0 || max_size == 0 {
                return Err(CliError::Usage("--max-index and --max-size must be positive".into()));
            }
            (Command::Preserve { formula, trials, max_index, max_size }, None, false)
        }
        Cmd::Export { instance, as_json, .. } => (Command::Export, Some(instance), !(as_json || args.json)),
    };
    let spec = match &file {
        Some(path) => Some(parse_instance(&read(path)?)?),
        None => None,
    };
    let report = run_command(&command, spec.as_ref(), &settings)?;
    if let (Some(path), Some(dot)) = (&args.dot, &report.dot) {
        std::fs::write(path, dot).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    if export_dot {
        print!("{}", report.dot.as_deref().unwrap_or_default());
    } else if args.json || matches!(command, Command::Export) {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.agree { 0 } else { 4 })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let json = args.json;
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            if json {
                let mut err = serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } });
                if let Some((line, column)) = e.location() {
                    err["error"]["line"] = line.into();
                    err["error"]["column"] = column.into();
                }
                println!("{}", serde_json::to_string_pretty(&err).expect("json"));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
