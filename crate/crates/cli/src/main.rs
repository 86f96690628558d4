//! `topepair`: build tope-pair and Salvetti posets, run the structural
//! verifications, and compute resonance data from matroid files.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;
use topepair_core::verify::VerifyOptions;

use commands::{Structure, Target};
use input::InputError;
use output::{InputInfo, RunReport};

#[derive(Parser)]
#[command(name = "topepair", version, about = "Tope-pair posets, Salvetti complexes and resonance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON; for `build`, export the poset as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Highest homology degree (default: all, or 1 for posets above 1000 elements).
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Number of sampled fibers on large inputs.
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Record wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the oriented matroid (or lines) axioms of an input file.
    Check { input: PathBuf },
    /// Build a poset and export its Hasse diagram.
    Build {
        input: PathBuf,
        #[arg(value_enum)]
        which: Structure,
        /// Element label, for the deconed posets.
        element: Option<String>,
        /// Write Graphviz DOT (with --json: elements and covers as JSON).
        #[arg(long)]
        dot: bool,
        /// Output file for the export (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integer homology of the order complex of a poset.
    Homology {
        input: PathBuf,
        #[arg(value_enum)]
        which: Structure,
        element: Option<String>,
    },
    /// Run one verification target.
    Verify {
        input: PathBuf,
        #[arg(value_enum)]
        target: Target,
        /// Element label (deconing, psi, cordovil).
        element: Option<String>,
    },
    /// Local resonance components, dimension function, whirls and multinet scan.
    Resonance {
        input: PathBuf,
        /// Also enumerate F_q^E for q in {3, 5, 7}.
        #[arg(long)]
        scan_field: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("TOPEPAIR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // the global pool can only be set once; a second attempt is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<i32, InputError> {
    let start = Instant::now();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let opts = VerifyOptions {
        seed: cli.seed,
        fiber_samples: cli.samples,
        max_degree: cli.max_degree,
        ..VerifyOptions::default()
    };
    let (loaded, outcome) = match &cli.command {
        Command::Check { input } => {
            let loaded = input::load(input)?;
            let outcome = commands::check(&loaded);
            (loaded, outcome)
        }
        Command::Build { input, which, element, dot, output } => {
            let loaded = input::load(input)?;
            let built = commands::build(&loaded, *which, element.as_deref())?;
            if *dot && cli.json {
                return Err(InputError("choose one of --dot and --json".into()));
            }
            if *dot || cli.json {
                let text = if *dot {
                    built.dot()
                } else {
                    serde_json::to_string_pretty(&built.json()).expect("poset serializes") + "\n"
                };
                match output {
                    Some(path) => {
                        std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?
                    }
                    None => print!("{text}"),
                }
                return Ok(0);
            }
            let outcome = commands::Outcome { report: topepair_core::Report::new(), data: built.summary() };
            (loaded, outcome)
        }
        Command::Homology { input, which, element } => {
            let loaded = input::load(input)?;
            let built = commands::build(&loaded, *which, element.as_deref())?;
            let outcome = commands::homology(&built, cli.max_degree);
            (loaded, outcome)
        }
        Command::Verify { input, target, element } => {
            let loaded = input::load(input)?;
            let m = loaded.oriented()?;
            let e = element.as_deref().map(|l| loaded.element(l)).transpose()?;
            let outcome = commands::verify_target(&m, *target, e, &opts)?;
            (loaded, outcome)
        }
        Command::Resonance { input, scan_field } => {
            let loaded = input::load(input)?;
            let m = loaded.matroid()?;
            let outcome = commands::resonance(&m, *scan_field)?;
            (loaded, outcome)
        }
    };
    let info = InputInfo { path: loaded.path.clone(), format: loaded.format(), sha256: loaded.sha256.clone() };
    let mut report = RunReport::new(echo, info, &outcome.report, outcome.data);
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.data == Value::Null && outcome.report.checks.is_empty() {
        return Ok(0);
    }
    Ok(output::exit_code(&outcome.report))
}
