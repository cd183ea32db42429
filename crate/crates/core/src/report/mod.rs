//! Jobs, reports and the self-test suite behind the `modres` binary.

mod jobs;
pub mod selftest;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Result};

pub use selftest::{run_criterion, CriterionResult, SelftestConfig, CRITERIA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Resolve,
    Character,
    Factors,
    Dims,
    Fusion,
    Alexander,
    Jm,
    Selftest,
}

/// One unit of work. Fields mirror the CLI flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub quick: bool,
}

impl Job {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            p: None,
            n: None,
            k: None,
            g: None,
            tau: None,
            cycle: None,
            word: None,
            sign: None,
            seed: None,
            quick: false,
        }
    }

    fn need<T: Copy>(&self, value: Option<T>, name: &str) -> Result<T> {
        value.ok_or_else(|| Error::Usage(format!("{:?} needs --{name}", self.command).to_lowercase()))
    }

    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, ok: bool, details: impl Into<String>) -> Self {
        Self { name: name.to_string(), status: Status::from_bool(ok), details: details.into() }
    }

    pub fn skip(name: &str, details: impl Into<String>) -> Self {
        Self { name: name.to_string(), status: Status::Skip, details: details.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub job: Job,
    pub results: Value,
    pub checks: Vec<Check>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let job = serde_json::to_value(&self.job).expect("jobs serialize");
        let _ = writeln!(out, "job: {job}");
        if let Value::Object(map) = &self.results {
            for (key, value) in map {
                let _ = writeln!(out, "  {key}: {value}");
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", c.status.label(), c.name, c.details);
        }
        for (key, ms) in &self.timings_ms {
            let _ = writeln!(out, "  time {key}: {ms} ms");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timings: bool,
}

/// Runs one job. Parameter problems come back as `Err` (usage errors).
pub fn run(job: &Job, options: RunOptions) -> Result<Report> {
    let start = Instant::now();
    let (results, checks, mut timings_ms) = match job.command {
        Command::Resolve => jobs::resolve(job)?,
        Command::Character => jobs::character(job)?,
        Command::Factors => jobs::factors(job)?,
        Command::Dims => jobs::dims(job)?,
        Command::Fusion => jobs::fusion(job)?,
        Command::Alexander => jobs::alexander(job)?,
        Command::Jm => jobs::jm(job)?,
        Command::Selftest => selftest::selftest(job)?,
    };
    if options.timings {
        timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    } else {
        timings_ms.clear();
    }
    Ok(Report { job: job.clone(), results, checks, timings_ms })
}

/// Parses a job list: a JSON array of job objects.
pub fn parse_jobs(text: &str) -> Result<Vec<Job>> {
    serde_json::from_str(text).map_err(|e| Error::Usage(format!("job file line {} column {}: {e}", e.line(), e.column())))
}

/// Runs independent jobs on the current rayon pool; output order follows input order.
pub fn run_batch(jobs: &[Job], options: RunOptions) -> Result<Vec<Report>> {
    jobs.par_iter().map(|j| run(j, options)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub jobs: Vec<Report>,
    pub status: Status,
}

impl Aggregate {
    pub fn new(jobs: Vec<Report>) -> Self {
        let status = Status::from_bool(jobs.iter().all(Report::passed));
        Self { jobs, status }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs `f` on a fresh pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_round_trip() {
        let text = r#"[{"command": "resolve", "p": 3, "n": 4, "k": 1}, {"command": "dims", "p": 5, "g": 3}]"#;
        let jobs = parse_jobs(text).unwrap();
        assert_eq!(jobs.len(), 2);
        assert_eq!(jobs[1].g, Some(3));
        let back = serde_json::to_string(&jobs[0]).unwrap();
        assert_eq!(back, r#"{"command":"resolve","p":3,"n":4,"k":1}"#);
        assert!(parse_jobs(r#"[{"command": "resolve", "q": 1}]"#).is_err());
        assert!(parse_jobs("[]").unwrap().is_empty());
    }

    #[test]
    fn resolve_example() {
        let mut job = Job::new(Command::Resolve);
        (job.p, job.n, job.k) = (Some(3), Some(4), Some(1));
        let r = run(&job, RunOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.results["terms"], serde_json::json!([5, 1]));
        assert_eq!(r.results["dims"], serde_json::json!([1, 2]));
        assert_eq!(r.results["dimD"], serde_json::json!(1));
        assert!(r.timings_ms.is_empty());
    }

    #[test]
    fn missing_parameter_is_usage_error() {
        let job = Job::new(Command::Resolve);
        assert!(matches!(run(&job, RunOptions::default()), Err(Error::Usage(_))));
    }

    #[test]
    fn batch_order_and_status() {
        let mut a = Job::new(Command::Dims);
        (a.p, a.g) = (Some(5), Some(3));
        let mut b = Job::new(Command::Resolve);
        (b.p, b.n, b.k) = (Some(5), Some(6), Some(3));
        let reports = with_workers(3, || run_batch(&[a.clone(), b.clone(), a.clone()], RunOptions::default()))
            .unwrap()
            .unwrap();
        assert_eq!(reports.len(), 3);
        assert_eq!(reports[0].job, a);
        assert_eq!(reports[1].job, b);
        assert_eq!(Aggregate::new(reports).status, Status::Pass);
        assert_eq!(Aggregate::new(vec![]).status, Status::Pass);
    }
}
