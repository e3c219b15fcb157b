//! Acceptance run: the seeded battery plus the command-line fixtures, with
//! one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use symspace_cli::commands::{execute, Cli, Outcome};
use symspace_cli::document::{emit, parse, ElementDocument};
use symspace_cli::report::{RunReport, SuiteReport};
use symspace_cli::selftest::{run_selftest, SelftestOptions};

const SEED: u64 = 42;

struct Criterion {
    title: &'static str,
    passed: bool,
    detail: String,
}

fn suite<'a>(report: &'a RunReport, name: &str) -> &'a SuiteReport {
    report.suite(name).unwrap_or_else(|| panic!("suite {name} missing from the battery"))
}

/// Passes when every named suite passes, and summarizes them.
fn suites(report: &RunReport, names: &[&str]) -> (bool, String) {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names {
        let s = suite(report, name);
        passed &= s.passed;
        parts.push(format!("{name}: {} cases, max {:.2e} (tol {:e})", s.cases, s.max_residual, s.tol));
        parts.extend(s.failures.iter().take(3).map(|f| format!("  {f}")));
    }
    (passed, parts.join("; "))
}

fn within(report: &RunReport, name: &str, seconds: f64) -> (bool, String) {
    let t = suite(report, name).wall_time_s;
    (t < seconds, format!("{name} {t:.2} s (limit {seconds} s)"))
}

fn run(args: &[&str]) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("symspace").chain(args.iter().copied())).expect("valid arguments");
    execute(&cli, &args.join(" "))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Byte-stable fixture handling: canonical fixtures re-emit to identical
/// bytes, a conversion round trip reproduces its input, and the check
/// fixtures give their expected exit codes.
fn fixture_checks() -> (bool, String) {
    let dir = fixtures();
    let path = |name: &str| dir.join(name).display().to_string();
    let mut problems = Vec::new();
    for name in ["o11_c_base.json", "sp2_c_base.json", "sp2_u_i.json", "sp2_u_minus_i.json", "real_one.json"] {
        let text = std::fs::read_to_string(dir.join(name)).expect("fixture exists");
        let doc: ElementDocument = parse(&text).expect("fixture parses");
        if emit(&doc).expect("fixture emits") != text {
            problems.push(format!("{name} does not re-emit byte-identically"));
        }
    }
    let original = std::fs::read_to_string(dir.join("sp2_c_base.json")).unwrap();
    let half_space = run(&["convert", "--from", "SP2/C", "--to", "SP2/U+", "--in", &path("sp2_c_base.json")]);
    let scratch = std::env::temp_dir().join(format!("symspace-acceptance-{}.json", std::process::id()));
    std::fs::write(&scratch, &half_space.stdout).unwrap();
    let back = run(&["convert", "--from", "SP2/U+", "--to", "SP2/C", "--in", scratch.to_str().unwrap()]);
    std::fs::remove_file(&scratch).ok();
    if back.stdout != original {
        problems.push("SP2/C -> SP2/U+ -> SP2/C changed the bytes".into());
    }
    let expectations = [
        (vec!["check", "--family", "O11", "--model", "C", "--tol", "1e-9", "--in"], "o11_c_base.json", 0),
        (
            vec!["check", "--family", "SP2", "--model", "U", "--sign", "1", "--tol", "1e-9", "--in"],
            "sp2_u_minus_i.json",
            1,
        ),
        (vec!["check", "--family", "SP2", "--model", "U", "--tol", "1e-9", "--in"], "malformed.json", 2),
    ];
    for (mut args, file, code) in expectations {
        let p = path(file);
        args.push(&p);
        let out = run(&args);
        if out.exit_code != code {
            problems.push(format!("check on {file} exited {} instead of {code}", out.exit_code));
        }
    }
    let n = problems.len();
    (n == 0, if n == 0 { "fixtures byte-stable, check exit codes as expected".into() } else { problems.join("; ") })
}

fn main() -> ExitCode {
    let options = SelftestOptions { seed: SEED, ..SelftestOptions::default() };
    let command = format!("selftest --seed {SEED}");
    let start = Instant::now();
    let report = run_selftest(&options, command.clone());
    let total = start.elapsed().as_secs_f64();
    let again = run_selftest(&options, command);

    let mut criteria = Vec::new();
    let mut add = |title, checks: Vec<(bool, String)>| {
        let passed = checks.iter().all(|c| c.0);
        let detail = checks.into_iter().map(|c| c.1).collect::<Vec<_>>().join("; ");
        criteria.push(Criterion { title, passed, detail });
    };
    add("algebra laws", vec![suites(&report, &["algebra"]), within(&report, "algebra", 5.0)]);
    add("group closure and membership", vec![suites(&report, &["groups"]), within(&report, "groups", 10.0)]);
    add("Cartan relations", vec![suites(&report, &["cartan"])]);
    add("base point stabilizers", vec![suites(&report, &["stabilizers"])]);
    add("equivariance of conversions", vec![suites(&report, &["equivariance"]), within(&report, "equivariance", 30.0)]);
    add("round trips", vec![suites(&report, &["round_trips"])]);
    add("differentials", vec![suites(&report, &["differentials", "fd_convergence"])]);
    add("metric", vec![suites(&report, &["metric_invariance", "metric_positivity", "metric_base"])]);
    add("incarnation", vec![suites(&report, &["incarnation"])]);
    add("Hitchin HKR traces", vec![suites(&report, &["hkr_traces", "hkr_round_trip"])]);
    add("Hitchin invariance", vec![suites(&report, &["hitchin_invariance", "hitchin_equivariance"])]);
    add(
        "command line",
        vec![
            (report.passed, format!("battery {}", if report.passed { "passed" } else { "failed" })),
            (total < 60.0, format!("{total:.2} s (limit 60 s)")),
            (report.without_timing() == again.without_timing(), "repeat run identical".into()),
            fixture_checks(),
        ],
    );

    let mut all = true;
    for (k, c) in criteria.iter().enumerate() {
        all &= c.passed;
        println!("{} {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, k + 1, c.title, c.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
