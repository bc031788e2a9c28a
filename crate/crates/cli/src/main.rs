use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use okounkov_lab::{run, CommandName, CommandRequest, Params};

/// Exact Okounkov bodies, weight measures and their limits.
///
/// Set OKOUNKOV_THREADS to cap the number of worker threads.
#[derive(Parser)]
#[command(name = "okounkov-lab", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandName,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Degree, or the largest degree checked by `check`.
    #[arg(long)]
    k: Option<u32>,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',')]
    k_list: Vec<u32>,
    /// Overrides `c` of a normal-cone datum, as p/q.
    #[arg(long)]
    c: Option<String>,
    /// Slice parameter for `normal-cone`, as p/q.
    #[arg(long)]
    a: Option<String>,
}

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("OKOUNKOV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("OKOUNKOV_THREADS={raw:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let req = CommandRequest {
        command: cli.command,
        input: cli.input,
        output: cli.output,
        params: Params {
            k: cli.k,
            k_list: cli.k_list,
            c: cli.c,
            a: cli.a,
        },
    };
    match run(&req) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("note: {note}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
