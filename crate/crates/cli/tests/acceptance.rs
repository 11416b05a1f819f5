//! Runs acceptance criteria 1-9, printing one line per criterion.

use std::process::Command;
use std::time::Instant;

use perdom_cli::criteria::{self, Outcome};

fn line(o: &Outcome, ok: bool) -> String {
    let limit = o
        .limit
        .map(|l| format!(", limit {}s", l.as_secs()))
        .unwrap_or_default();
    format!(
        "criterion {} ({}): {} [{}; {:.2}s{limit}]",
        o.result.id,
        o.result.name,
        if ok { "PASS" } else { "FAIL" },
        o.result.detail,
        o.elapsed.as_secs_f64()
    )
}

fn selftest_bytes() -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_perdom"))
        .args(["--format", "machine", "selftest"])
        .output()
        .expect("binary runs");
    (out.status.success(), out.stdout)
}

#[test]
fn acceptance_criteria() {
    let mut failures = vec![];
    for o in criteria::all() {
        let ok = if o.result.id == 9 {
            // in-process check plus two full selftest runs of the binary
            let start = Instant::now();
            let (ok_a, a) = selftest_bytes();
            let (ok_b, b) = selftest_bytes();
            let ok = o.result.passed && ok_a && ok_b && a == b && !a.is_empty();
            println!(
                "{} + 2 selftest runs {} ({} bytes, {:.2}s)",
                line(&o, ok),
                if a == b { "identical" } else { "differ" },
                a.len(),
                start.elapsed().as_secs_f64()
            );
            ok
        } else {
            let ok = o.result.passed && o.within_limit();
            println!("{}", line(&o, ok));
            ok
        };
        if !ok {
            failures.push(o.result.id);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
