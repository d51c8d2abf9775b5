mod chi;
mod enumerate;
mod objects;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "feynops", version, about = "Truncated F-ops, Feynman transforms and the functors L, R, L^!, R^!")]
struct Cli {
    /// Directory for cached graph enumerations.
    #[arg(long, global = true, env = "FEYNOPS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, env = "FEYNOPS_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus-one Euler characteristics A, B, C and chi(Delta_{1,n}).
    Chi(chi::ChiArgs),
    /// Run one of the verifications.
    Verify(verify::VerifyArgs),
    /// Count (and optionally list) isomorphism classes of graphs.
    Enumerate(enumerate::EnumerateArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Tsv,
    Json,
}

/// Outcome of a command: stdout text and the failures to report on stderr.
pub struct Outcome {
    pub stdout: String,
    pub failures: serde_json::Value,
    pub failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    feynops::graphkit::set_cache_dir(cli.cache_dir.clone());
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Chi(a) => chi::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Enumerate(a) => enumerate::run(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.failed {
                eprintln!("{}", serde_json::to_string_pretty(&out.failures).expect("plain data"));
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
