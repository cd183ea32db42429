//! Full-range acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use modres_core::fusion;
use modres_core::report::{run_criterion, selftest, CriterionResult, SelftestConfig, Status, CRITERIA};

const SEED: u64 = 0;

fn modres(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_modres")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn job_file() -> PathBuf {
    let path = std::env::temp_dir().join(format!("modres-acceptance-{}.json", std::process::id()));
    let jobs: Vec<_> = selftest::determinism_batch(SEED)
        .into_iter()
        .chain(std::iter::once(serde_json::from_str(r#"{"command": "selftest", "quick": true}"#).unwrap()))
        .collect::<Vec<modres_core::report::Job>>();
    std::fs::write(&path, serde_json::to_string(&jobs).unwrap()).unwrap();
    path
}

/// Byte-identical JSON from the binary: repeated full selftests and a job
/// batch at 1 and 4 workers.
fn binary_determinism() -> CriterionResult {
    let mut problems = Vec::new();
    let (c1, first) = modres(&["selftest", "--output", "json"]);
    let (c2, second) = modres(&["selftest", "--output", "json"]);
    if c1 != Some(0) || c2 != Some(0) {
        problems.push(format!("selftest exit codes {c1:?} {c2:?}"));
    }
    if first != second {
        problems.push("selftest output differs between runs".into());
    }
    let path = job_file();
    let p = path.to_str().unwrap();
    let (_, one) = modres(&["--jobs", p, "--workers", "1", "--output", "json"]);
    let (_, four) = modres(&["--jobs", p, "--workers", "4", "--output", "json"]);
    let _ = std::fs::remove_file(&path);
    if one != four || one.is_empty() {
        problems.push("batch output differs between 1 and 4 workers".into());
    }
    let ok = problems.is_empty();
    CriterionResult {
        id: 13,
        name: CRITERIA[12],
        status: if ok { Status::Pass } else { Status::Fail },
        details: if ok { format!("binary: {} bytes twice, batch {} bytes at 1 and 4 workers", first.len(), one.len()) } else { problems.join("; ") },
    }
}

fn pinned_constants() -> Vec<String> {
    let mut bad = Vec::new();
    if selftest::TOLERANCE != 1e-9 {
        bad.push(format!("tolerance is {}", selftest::TOLERANCE));
    }
    let printed = [
        (5, "f"),
        (7, "2f^2 - 7f + 7"),
        (9, "2f^3 - 9f^2 + 9f + 3"),
        (11, "3f^4 - 22f^3 + 55f^2 - 55f + 22"),
        (13, "3f^5 - 26f^4 + 78f^3 - 91f^2 + 26f + 13"),
    ];
    for (p, s) in printed {
        let got = fusion::tschebycheff_r(p).unwrap().to_string();
        if got != s {
            bad.push(format!("R_{p} = {got}"));
        }
    }
    if fusion::p5_closed_forms(2) != [5, 4, 1, 0] || fusion::p5_closed_forms(3) != [14, 14, 6, 1] {
        bad.push("genus 2 and 3 dimensions".into());
    }
    bad
}

fn main() -> ExitCode {
    let cfg = SelftestConfig { seed: SEED, quick: false };
    let mut results: Vec<CriterionResult> = (1..=CRITERIA.len()).map(|id| run_criterion(id, &cfg)).collect();
    let bin = binary_determinism();
    let last = results.last_mut().unwrap();
    if !bin.passed() {
        last.status = Status::Fail;
    }
    last.details = format!("{}; {}", last.details, bin.details);
    let pins = pinned_constants();
    for r in &results {
        println!("{}", r.line());
    }
    if !pins.is_empty() {
        println!("pinned constants FAIL: {}", pins.join("; "));
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() && pins.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
