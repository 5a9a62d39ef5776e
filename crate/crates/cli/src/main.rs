use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

mod builtins;
mod checks;
mod report;
mod run;
mod scenario;

use report::Report;
use scenario::InputError;

#[derive(Parser)]
#[command(name = "lrdesk", version, about = "Run exact verification scenarios and write JSON reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// write the JSON report here (otherwise it goes to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// seed for randomized scenarios
    #[arg(long)]
    seed: Option<u64>,
    /// enumeration depth for building scenarios
    #[arg(long)]
    depth: Option<usize>,
    /// worker threads
    #[arg(long)]
    jobs: Option<usize>,
    /// include wall-clock timings (reports are then no longer byte-stable)
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a builtin suite: all, paper or random
    Suite {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// List builtin scenarios
    ListBuiltins,
    /// Print the anchor and formula of a check
    Explain { check: String },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let input = e.downcast_ref::<InputError>().is_some();
            ExitCode::from(if input { EXIT_INPUT } else { EXIT_FAIL })
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Run { scenario, common } => {
            set_jobs(common.jobs)?;
            let text = std::fs::read_to_string(&scenario).map_err(|e| InputError::Io {
                path: scenario.display().to_string(),
                msg: e.to_string(),
            })?;
            let mut s = scenario::parse(&text)?;
            if let Some(seed) = common.seed {
                s.seed = seed;
            }
            let name = scenario.file_stem().and_then(|n| n.to_str()).unwrap_or("scenario").to_string();
            let r = run::run_scenario(&name, &s, options(&common))?;
            emit(&Report::new(vec![r]), common.out.as_deref())
        }
        Command::Suite { name, common } => {
            set_jobs(common.jobs)?;
            let scenarios = builtins::suite(&name, common.seed.unwrap_or(1))?;
            let opts = options(&common);
            let reports = scenarios
                .par_iter()
                .map(|(n, s)| run::run_scenario(n, s, opts))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&Report::new(reports), common.out.as_deref())
        }
        Command::ListBuiltins => {
            for b in builtins::builtins() {
                let kind = b.scenario["kind"].as_str().unwrap_or("?");
                println!("{:<24} {:<8} {}", b.name, b.tag.as_str(), kind);
            }
            Ok(0)
        }
        Command::Explain { check } => match checks::lookup(&check) {
            Some(info) => {
                println!("{}\n  anchor:  {}\n  formula: {}", info.name, info.anchor, info.formula);
                Ok(0)
            }
            None => {
                eprintln!("unknown check {check:?}; known checks:");
                for c in checks::CHECKS {
                    eprintln!("  {}", c.name);
                }
                Ok(EXIT_INPUT)
            }
        },
    }
}

fn options(c: &Common) -> run::Options {
    run::Options { depth: c.depth, timing: c.timing }
}

fn set_jobs(jobs: Option<usize>) -> anyhow::Result<()> {
    if let Some(n) = jobs {
        if n == 0 {
            return Err(scenario::schema("--jobs", "must be positive").into());
        }
        // a second call in the same process is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn emit(report: &Report, out: Option<&Path>) -> anyhow::Result<u8> {
    let json = report.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", report.summary_lines());
        }
        None => {
            print!("{json}");
            eprint!("{}", report.summary_lines());
        }
    }
    Ok(if report.all_pass() { 0 } else { EXIT_FAIL })
}
