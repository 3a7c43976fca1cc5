use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use minimal_cw::cli::{run, Command, FlagSource, Format, JobSpec};

/// Twisted minimal chain complexes of real hyperplane arrangements.
#[derive(Parser, Debug)]
#[command(name = "minimal-cw", version)]
struct Args {
    /// Arrangement file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    command: Command,
    /// Build the flag from this seed.
    #[arg(long, conflicts_with = "flag_file")]
    flag_seed: Option<u64>,
    /// Read the flag from a file (`{"base": [...], "basis": [[...], ...]}`).
    #[arg(long)]
    flag_file: Option<PathBuf>,
    /// Weights `q_1..q_n` as a comma-separated list, e.g. `2,-1,1/3`.
    #[arg(short = 'q', long = "q", conflicts_with = "q_grid", allow_hyphen_values = true)]
    q: Option<String>,
    /// Assignment grid: `v1,v2,...` for every coordinate, or `l1;l2;...;ln`.
    #[arg(long, allow_hyphen_values = true)]
    q_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flag = match (args.flag_file, args.flag_seed) {
        (Some(p), _) => Some(FlagSource::File(p)),
        (None, Some(s)) => Some(FlagSource::Seed(s)),
        (None, None) => None,
    };
    let job = JobSpec {
        input: args.input,
        command: args.command,
        flag,
        q: args.q,
        q_grid: args.q_grid,
        format: args.format,
    };
    let out = run(&job);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
