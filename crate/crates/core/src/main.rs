use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use comodlim::coalg::standard_corpus;
use comodlim::dsl::{json, parse_session, RunOptions, Runner};
use comodlim::selftest;

/// Exact limits and colimits of comodules, driven by session files.
#[derive(Parser)]
#[command(name = "comodlim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and resolve a session without running it.
    Check { file: PathBuf },
    /// Run a session and print its transcript.
    Run {
        file: PathBuf,
        /// Print the transcript as JSON.
        #[arg(long)]
        json: bool,
        /// Continue after a failing directive.
        #[arg(long)]
        keep_going: bool,
        /// Skip certificates.
        #[arg(long)]
        no_certify: bool,
    },
    /// Print the standard coalgebras as JSON.
    Corpus,
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check { file } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_session(&text) {
                Ok(s) => {
                    println!("{}: {} directives", file.display(), s.directives.len());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    ExitCode::from(1)
                }
            }
        }
        Command::Run {
            file,
            json: as_json,
            keep_going,
            no_certify,
        } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let session = match parse_session(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let mut runner = Runner::new(RunOptions {
                keep_going,
                certify: !no_certify,
            });
            runner.run(&session);
            let t = runner.transcript();
            if as_json {
                println!("{}", t.to_json());
            } else {
                print!("{}", t.render_text());
            }
            ExitCode::from(t.exit_code() as u8)
        }
        Command::Corpus => {
            let all: Vec<_> = standard_corpus().iter().map(|c| json::coalgebra(c)).collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
            ExitCode::SUCCESS
        }
        Command::Selftest { seed } => {
            let outcomes = selftest::run_all(seed);
            for o in &outcomes {
                println!("{}", o.line());
            }
            ExitCode::from(selftest::exit_code(&outcomes) as u8)
        }
    }
}
