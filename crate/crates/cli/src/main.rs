use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hms_cli::input::{ingest, InputDocument, ModelError};
use hms_cli::selftest::{run_selftest, SelftestOptions};
use hms_cli::svg::emit_svg;
use hms_cli::verify::{verify_model, VerifyOptions};
use hms_core::tropical::TropicalModel;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "hms", version, about = "Tropical mirror symmetry verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// Truncation index J for ray families.
    #[arg(long)]
    truncate: Option<u32>,
    /// Twists k range over -W..=W.
    #[arg(long = "k-window")]
    k_window: Option<u32>,
    /// Highest arity checked by A-infinity suites.
    #[arg(long)]
    arity: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the tropical model as JSON.
    Build {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare both sides and run the invariant suites.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        /// Write the structured JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw the subdivision and the tropical curve.
    Svg {
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run the A-infinity property suites.
    AinfSelftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<(InputDocument, TropicalModel), ExitCode> {
    let doc = ingest(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INPUT)
    })?;
    let model = doc.model().map_err(|e: ModelError| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INPUT)
    })?;
    Ok((doc, model))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), ExitCode> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(EXIT_INPUT)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Build { input, output } => {
            let (_, model) = load(&input)?;
            let text = serde_json::to_string_pretty(&model).expect("model serializes") + "\n";
            write_out(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, overrides, output } => {
            let (doc, model) = load(&input)?;
            let mut options = doc.options;
            options.truncation = overrides.truncate.unwrap_or(options.truncation);
            options.k_window = overrides.k_window.unwrap_or(options.k_window);
            options.arity = overrides.arity.unwrap_or(options.arity);
            options.seed = overrides.seed.unwrap_or(options.seed);
            let report = verify_model(&model, &VerifyOptions::from(options));
            print!("{}", report.render());
            if let Some(p) = output {
                write_out(Some(&p), &(report.to_json() + "\n"))?;
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
        }
        Command::Svg { input, output } => {
            let (_, model) = load(&input)?;
            emit_svg(&model, &output).map_err(|e| {
                eprintln!("error: cannot write {}: {e}", output.display());
                ExitCode::from(EXIT_INPUT)
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::AinfSelftest { seed, arity, output } => {
            let results = run_selftest(&SelftestOptions::new(seed, arity));
            for r in &results {
                println!("{:<22} {} ({} cases)", r.name, if r.passed() { "PASS" } else { "FAIL" }, r.cases);
                for f in &r.failures {
                    println!("  {f}");
                }
            }
            if let Some(p) = output {
                write_out(Some(&p), &(serde_json::to_string_pretty(&results).expect("results serialize") + "\n"))?;
            }
            let ok = results.iter().all(|r| r.passed());
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
