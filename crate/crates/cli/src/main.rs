use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use jetdisc::dimension::OracleMode;
use jetdisc_cli::{emit_report, run_job, Budgets, Format, RunOptions};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "jetdisc", version, about = "Minimal log discrepancies from truncated jet schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more job files.
    Run {
        #[arg(required = true)]
        jobs: Vec<PathBuf>,
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        oracle: Option<OracleMode>,
        /// Directory for report files; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "text,csv")]
        format: Vec<Format>,
    },
}

fn main() -> ExitCode {
    let Command::Run { jobs, max_level, seed, oracle, out, format } = Cli::parse().command;
    let budgets = match std::env::var("JETDISC_BUDGET") {
        Ok(s) => match Budgets::parse_env(&s) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("error: JETDISC_BUDGET: {e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => Budgets::default(),
    };
    let opts = RunOptions { max_level, seed, oracle, budgets };
    let results: Vec<_> = jobs
        .par_iter()
        .map(|p| {
            let t = Instant::now();
            (run_job(p, &opts), t.elapsed())
        })
        .collect();
    let mut code = 0;
    let stdout = std::io::stdout();
    for (path, (res, elapsed)) in jobs.iter().zip(results) {
        match res {
            Ok(report) => {
                eprintln!("{}: done in {} ms", path.display(), elapsed.as_millis());
                match &out {
                    Some(dir) => match emit_report(&report, &format, dir) {
                        Ok(files) => files.iter().for_each(|f| eprintln!("wrote {}", f.display())),
                        Err(e) => {
                            eprintln!("error: {}: {e}", dir.display());
                            code = code.max(1);
                        }
                    },
                    None => {
                        let mut lock = stdout.lock();
                        for f in &format {
                            let body = match f {
                                Format::Text => report.render_text(),
                                Format::Csv => report.render_csv(),
                            };
                            let _ = lock.write_all(body.as_bytes());
                        }
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                code = code.max(e.exit_code());
            }
        }
    }
    ExitCode::from(code as u8)
}
