use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser};
use weilkit_cli::{run_path, run_suite_timed, InputError, Mutation, Report, RunOptions, SuiteOptions, DEFAULT_SEED};

/// Run a weilkit scenario or the acceptance suite and print a JSON report.
#[derive(Parser, Debug)]
#[command(name = "weilkit", version)]
#[command(group(ArgGroup::new("input").required(true).args(["scenario", "suite"])))]
struct Args {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Run every suite check with pinned seeds.
    #[arg(long)]
    suite: bool,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest group the closure enumerations may build.
    #[arg(long)]
    cap: Option<usize>,
    /// Break one suite kernel on purpose.
    #[arg(long, value_enum, requires = "suite")]
    mutate: Option<Mutation>,
}

fn run(args: &Args) -> Result<Report, InputError> {
    let start = Instant::now();
    let report = if args.suite {
        let opts = SuiteOptions {
            seed: args.seed.unwrap_or(DEFAULT_SEED),
            mutation: args.mutate,
        };
        let (report, times) = run_suite_timed(&opts);
        for (name, t) in times {
            eprintln!("{name:<28} {:>8.3} s", t.as_secs_f64());
        }
        report
    } else {
        let path = args.scenario.as_ref().expect("clap enforces the group");
        run_path(
            path,
            RunOptions {
                seed: args.seed,
                cap: args.cap,
            },
        )?
    };
    eprintln!("elapsed {:.3} s", start.elapsed().as_secs_f64());
    Ok(report)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match run(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_canonical_json();
    print!("{text}");
    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, &text) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
