use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modres_core::report::{self, Aggregate, Command, Job, Report, RunOptions};
use modres_core::Error;

#[derive(Parser)]
#[command(name = "modres", version, about = "Modular Specht resolutions, fusion dimensions and TQFT checks")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run every job in a JSON job list instead of a subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    jobs: Option<std::path::PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Sub {
    /// Build C_{p,k} on L^n and test exactness.
    Resolve(Params),
    /// Modular trace against the alternating sum of ordinary characters.
    Character(Params),
    /// Composition factors of S^τ.
    Factors(Params),
    /// Verlinde dimensions in genus g.
    Dims(Params),
    /// Fusion ring data: R_p, Perron norms, quantum dimensions.
    Fusion(Params),
    /// Alexander-type trace of a symplectic word.
    Alexander(Params),
    /// Johnson–Morita extension checks.
    Jm(Params),
    /// Run the acceptance suite.
    Selftest(Params),
}

#[derive(Args, Default)]
struct Params {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    /// Two-row diagram as a,b.
    #[arg(long, value_parser = parse_tau)]
    tau: Option<[usize; 2]>,
    /// Cycle type as comma-separated parts.
    #[arg(long, value_delimiter = ',')]
    cycle: Option<Vec<usize>>,
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<i8>,
    #[arg(long)]
    quick: bool,
}

fn parse_tau(s: &str) -> Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts[..] {
        [a, b] => Ok([a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?]),
        _ => Err(format!("expected a,b, got {s:?}")),
    }
}

fn job_of(sub: Sub, seed: Option<u64>) -> Job {
    let (command, p) = match sub {
        Sub::Resolve(p) => (Command::Resolve, p),
        Sub::Character(p) => (Command::Character, p),
        Sub::Factors(p) => (Command::Factors, p),
        Sub::Dims(p) => (Command::Dims, p),
        Sub::Fusion(p) => (Command::Fusion, p),
        Sub::Alexander(p) => (Command::Alexander, p),
        Sub::Jm(p) => (Command::Jm, p),
        Sub::Selftest(p) => (Command::Selftest, p),
    };
    let mut job = Job::new(command);
    job.p = p.p;
    job.n = p.n;
    job.k = p.k;
    job.g = p.g;
    job.tau = p.tau;
    job.cycle = p.cycle;
    job.word = p.word;
    job.sign = p.sign;
    job.seed = seed;
    job.quick = p.quick;
    job
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("modres: {msg}");
    ExitCode::from(2)
}

fn print(output: Output, reports: &[Report], batch: bool) -> bool {
    let aggregate = Aggregate::new(reports.to_vec());
    match (output, batch) {
        (Output::Json, true) => println!("{}", aggregate.to_json()),
        (Output::Json, false) => println!("{}", reports[0].to_json()),
        (Output::Text, _) => {
            for r in reports {
                print!("{}", r.to_text());
            }
            if batch {
                println!("{} jobs: {}", reports.len(), aggregate.status.label());
            }
        }
    }
    reports.iter().all(Report::passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let options = RunOptions { timings: cli.timings };
    let (jobs, batch) = match (&cli.jobs, cli.command) {
        (Some(path), None) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", path.display())),
            };
            match report::parse_jobs(&text) {
                Ok(mut jobs) => {
                    if let Some(seed) = cli.seed {
                        jobs.iter_mut().filter(|j| j.seed.is_none()).for_each(|j| j.seed = Some(seed));
                    }
                    (jobs, true)
                }
                Err(e) => return usage(e),
            }
        }
        (None, Some(sub)) => (vec![job_of(sub, cli.seed)], false),
        (Some(_), Some(_)) => return usage("--jobs cannot be combined with a subcommand"),
        (None, None) => return usage("a subcommand or --jobs FILE is required (see --help)"),
    };
    let reports = match report::with_workers(cli.workers, || report::run_batch(&jobs, options)) {
        Ok(Ok(r)) => r,
        Ok(Err(Error::Usage(msg))) => return usage(msg),
        Ok(Err(e)) | Err(e) => return usage(e),
    };
    if print(cli.output, &reports, batch) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
