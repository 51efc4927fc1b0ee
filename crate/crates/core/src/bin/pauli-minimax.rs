use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pauli_minimax::io::{
    read_pair_file, read_state_file, report_json, report_text, states_json, states_text, sweep_csv, write_atomic,
};
use pauli_minimax::oracle::minimax_states;
use pauli_minimax::verify::{run, VerifyConfig};
use pauli_minimax::{full_report, Error};

#[derive(Parser)]
#[command(name = "pauli-minimax", version, about = "Minimax and Bayesian discrimination of two qubit Pauli channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact analysis of one channel pair.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// CSV of all risk curves on a uniform grid plus every breakpoint.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
        points: u32,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized closed-form versus oracle checks.
    Verify {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pair file used as the first trial.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Minimax discrimination of two density matrices.
    States {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyze every *.json pair file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

const EXIT_INVARIANT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_OUTPUT: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn output(path: &Path, err: std::io::Error) -> Self {
        Failure { code: EXIT_OUTPUT, message: format!("cannot write {}: {err}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Format { .. }
            | Error::Parse { .. }
            | Error::InvalidDistribution { .. }
            | Error::InvalidArgument(_)
            | Error::NotDensityMatrix(_)
            | Error::NotHermitian(_)
            | Error::DimensionMismatch(_) => EXIT_INPUT,
            _ => EXIT_INVARIANT,
        };
        Failure { code, message: err.to_string() }
    }
}

fn render_report(path: &Path, format: Format) -> Result<String, Failure> {
    let file = read_pair_file(path)?;
    let report = full_report(&file.pair)?;
    Ok(match format {
        Format::Json => {
            let v = report_json(file.label.as_deref(), &report)?;
            serde_json::to_string_pretty(&v).expect("JSON value serializes") + "\n"
        }
        Format::Text => report_text(file.label.as_deref(), &report),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text).map_err(|e| Failure::output(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn batch(dir: &Path, out: &Path, format: Format) -> Result<(), Failure> {
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("cannot read {}: {e}", dir.display()) })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    inputs.sort();
    std::fs::create_dir_all(out).map_err(|e| Failure::output(out, e))?;
    let ext = match format {
        Format::Json => "report.json",
        Format::Text => "report.txt",
    };
    let results: Vec<(PathBuf, Result<(), Failure>)> = inputs
        .par_iter()
        .map(|input| {
            let stem = input.file_stem().unwrap_or_default().to_string_lossy();
            let target = out.join(format!("{stem}.{ext}"));
            let result = render_report(input, format)
                .and_then(|text| write_atomic(&target, &text).map_err(|e| Failure::output(&target, e)));
            (input.clone(), result)
        })
        .collect();
    let mut worst = 0u8;
    for (input, result) in &results {
        match result {
            Ok(()) => println!("ok    {}", input.display()),
            Err(f) => {
                println!("error {}: {}", input.display(), f.message);
                worst = worst.max(f.code);
            }
        }
    }
    if worst == 0 {
        Ok(())
    } else {
        Err(Failure {
            code: worst,
            message: format!("{} of {} files failed", results.iter().filter(|r| r.1.is_err()).count(), results.len()),
        })
    }
}

fn main_inner(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, format } => emit(None, &render_report(&file, format)?),
        Command::Sweep { file, points, out } => {
            let pair = read_pair_file(&file)?.pair;
            emit(out.as_deref(), &sweep_csv(&pair, points as usize)?)
        }
        Command::Verify { trials, seed, pair, format } => {
            let mut config = VerifyConfig::new(trials as usize, seed);
            if let Some(path) = pair {
                config.pair = Some(read_pair_file(&path)?.pair);
            }
            let summary = run(&config);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
                Format::Text => summary.render(),
            };
            emit(None, &text)?;
            if summary.all_passed() {
                Ok(())
            } else {
                Err(Failure { code: EXIT_INVARIANT, message: "invariant violations found".into() })
            }
        }
        Command::States { file, format } => {
            let states = read_state_file(&file)?;
            let m = minimax_states(&states.rho1, &states.rho2)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&states_json(&m)).expect("JSON value serializes") + "\n",
                Format::Text => states_text(&m),
            };
            emit(None, &text)
        }
        Command::Batch { dir, out, format } => batch(&dir, &out, format),
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
