//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use bohrify::model::LoadOptions;
use bohrify::verify::{load_fixtures, verify_all};
use bohrify_core::Exec;

const RUNTIME_BUDGET_SECS: f64 = 60.0;

fn run_binary() -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_bohrify"))
        .arg("verify-all")
        .output()
        .expect("bohrify binary runs");
    (out.status.code(), out.stdout)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let fixtures = load_fixtures(LoadOptions::default()).expect("fixtures load");
    let v = verify_all(&fixtures, Exec::default()).expect("suite runs");
    let elapsed = started.elapsed().as_secs_f64();
    let mut all = true;
    for c in &v.criteria {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}  {}: {}", c.id, c.name, c.detail);
        all &= c.passed;
    }

    let (code_a, first) = run_binary();
    let (code_b, second) = run_binary();
    let identical = !first.is_empty() && first == second;
    let exit_ok = code_a == Some(0) && code_b == Some(0);
    println!(
        "criterion 12 {}  determinism (binary): two verify-all runs byte-identical, {} bytes, exit codes {:?}/{:?}",
        if identical && exit_ok { "PASS" } else { "FAIL" },
        first.len(),
        code_a,
        code_b
    );
    all &= identical && exit_ok;

    let budget = elapsed < RUNTIME_BUDGET_SECS;
    println!(
        "runtime      {}  suite finished in {elapsed:.2} s (budget {RUNTIME_BUDGET_SECS} s)",
        if budget { "PASS" } else { "FAIL" }
    );
    all &= budget;

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
