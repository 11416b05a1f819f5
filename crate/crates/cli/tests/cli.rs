use std::process::{Command, Output};

use perdom_cli::report::CommandResult;
use perdom_cli::Report;

fn perdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> Report {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = perdom(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    Report::from_machine(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn temp_file(name: &str, content: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("perdom-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn drinfeld_one_machine_output() {
    let r = machine(&["cohomology", "--preset", "drinfeld:1"]);
    let CommandResult::Cohomology { summands, .. } = &r.result else {
        panic!("wrong result type");
    };
    let degrees: Vec<usize> = summands.iter().map(|s| s.degree).collect();
    assert_eq!(degrees, vec![1, 2]);
    assert_eq!(summands[0].rep.kind, "v");
    assert!(summands[0].rep.set.is_empty());
    assert_eq!(summands[1].rep.kind, "i");
    assert_eq!(summands[1].rep.set, vec!["a1"]);
    assert_eq!((summands[1].galois.rank, summands[1].galois.twist), (1, -1));
}

#[test]
fn drinfeld_two_with_verdict() {
    let r = machine(&["cohomology", "--preset", "drinfeld:2", "--p", "3", "--n", "1"]);
    assert_eq!(r.verdicts.len(), 1);
    assert_eq!(r.verdicts[0].verdict, "ProvenByTheorem");
    let CommandResult::Cohomology { summands, .. } = &r.result else {
        panic!()
    };
    assert_eq!(summands.len(), 3);
}

#[test]
fn machine_format_round_trips() {
    for args in [
        vec!["cohomology", "--preset", "quadric:7", "--p", "2"],
        vec!["boundary", "--preset", "drinfeld:3"],
        vec!["schubert", "--preset", "split:A2xB2:2,1,1,0"],
        vec!["kottwitz", "--gln", "4", "--mu", "2,1,0,-1"],
        vec!["check", "--preset", "gln_basic:4,1,1,0,0:1/2"],
    ] {
        let mut all = vec!["--format", "machine"];
        all.extend_from_slice(&args);
        let text = String::from_utf8(perdom(&all).stdout).unwrap();
        let r = Report::from_machine(&text).unwrap();
        assert_eq!(r.to_machine(), text, "{args:?}");
        assert_eq!(text, String::from_utf8(perdom(&all).stdout).unwrap());
    }
}

#[test]
fn kottwitz_gl3_chain() {
    let r = machine(&["kottwitz", "--gln", "3", "--mu", "1,0,0"]);
    let CommandResult::Kottwitz { points, edges, .. } = r.result else {
        panic!()
    };
    let newton: Vec<Vec<String>> = points.iter().map(|p| p.newton.clone()).collect();
    assert_eq!(
        newton,
        vec![
            vec!["1/1", "0/1", "0/1"],
            vec!["1/2", "1/2", "0/1"],
            vec!["1/3", "1/3", "1/3"],
        ]
    );
    assert_eq!(edges, vec![[1, 0], [2, 1]]);
    assert_eq!(points.iter().filter(|p| p.basic).count(), 1);
}

#[test]
fn anisotropic_j_has_empty_boundary() {
    let r = machine(&["cohomology", "--preset", "gln_basic:2,1:0,1/2"]);
    let CommandResult::Cohomology { summands, .. } = &r.result else {
        panic!()
    };
    assert_eq!(summands.iter().map(|s| s.degree).collect::<Vec<_>>(), vec![0, 2]);
    assert!(summands.iter().all(|s| s.rep.kind == "i" && s.rep.set.is_empty()));
    let b = machine(&["boundary", "--preset", "gln_basic:2,1:0,1/2"]);
    let CommandResult::Boundary {
        boundary_empty,
        summands,
        ..
    } = b.result
    else {
        panic!()
    };
    assert!(boundary_empty && summands.is_empty());
    let text = String::from_utf8(
        perdom(&["--format", "machine", "boundary", "--preset", "gln_basic:2,1:0,1/2"]).stdout,
    )
    .unwrap();
    assert!(text.contains("\"boundary_empty\": true"));
    assert!(text.contains("\"summands\": []"));
}

#[test]
fn ext_command() {
    let r = machine(&["ext", "--size", "3", "--i", "a1", "--j", "a2", "--p", "3"]);
    let CommandResult::Ext { ext, .. } = r.result else {
        panic!()
    };
    assert_eq!(ext.answer, "OutsideTheorem");
    assert_eq!(ext.torsion_bound, Some(3));
    assert!(!ext.proven);
    let r = machine(&["ext", "--size", "2", "--i", "a1", "--j", "a1,a2", "--p", "2", "--class", "gln_d:3"]);
    let CommandResult::Ext { ext, .. } = r.result else {
        panic!()
    };
    assert_eq!(ext.answer, "FreeRankOne");
}

#[test]
fn human_output_is_a_table() {
    let out = perdom(&["cohomology", "--preset", "drinfeld:2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree  rep"));
    assert!(text.contains("v_{a1}"));
}

#[test]
fn datum_files() {
    let explicit = perdom_cli::criteria::EXPLICIT_DATUM;
    let path = temp_file("unitary.json", explicit);
    let r = machine(&["cohomology", "--datum", path.to_str().unwrap()]);
    assert_eq!(r.provenance.as_deref(), Some("explicit"));
    assert_eq!(r.datum.as_ref().unwrap().galois.cycles, vec![vec!["a1", "a2"]]);

    let preset = temp_file("preset.json", r#"{"preset": "drinfeld:2"}"#);
    let r = machine(&["cohomology", "--datum", preset.to_str().unwrap()]);
    assert_eq!(r.provenance.as_deref(), Some("preset drinfeld:2"));

    let slope = temp_file("slope.json", r#"{"group": "GL4", "mu": [1,1,0,0], "nu": "1/2"}"#);
    let r = machine(&["cohomology", "--datum", slope.to_str().unwrap()]);
    assert_eq!(r.datum.unwrap().class, "gln_d:2");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| perdom(args).status.code();
    assert_eq!(code(&["cohomology", "--preset", "nonsense:1"]), Some(1));
    assert_eq!(code(&["cohomology"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    let bad_json = temp_file("bad.json", "{ group: ");
    assert_eq!(code(&["cohomology", "--datum", bad_json.to_str().unwrap()]), Some(1));
    assert_eq!(code(&["cohomology", "--datum", "/nonexistent/datum.json"]), Some(1));

    let out = perdom(&["cohomology", "--preset", "gln_basic:3,1,0,0:0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty period domain"));
    assert_eq!(code(&["cohomology", "--preset", "split:A2:1,0"]), Some(2));
    assert_eq!(code(&["cohomology", "--preset", "drinfeld:2", "--p", "4"]), Some(2));
    let needs_j = temp_file("needs_j.json", r#"{"group": "B2", "mu": [1,0], "nu": ["1/2","0"]}"#);
    assert_eq!(code(&["cohomology", "--datum", needs_j.to_str().unwrap()]), Some(2));
    let bad_order = temp_file(
        "order.json",
        r#"{"group": "A3", "galois": {"cycles": [["a1","a3"]], "order": 3}, "mu": [2,0,2], "nu": [0,0,0]}"#,
    );
    assert_eq!(code(&["cohomology", "--datum", bad_order.to_str().unwrap()]), Some(2));

    let empty_dir = std::env::temp_dir().join(format!("perdom-empty-golden-{}", std::process::id()));
    std::fs::create_dir_all(&empty_dir).unwrap();
    let out = perdom(&["selftest", "--golden-dir", empty_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("missing"));
}

#[test]
fn weyl_bound_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_perdom"))
        .args(["cohomology", "--preset", "drinfeld:4"])
        .env(perdom_cli::datum::BOUND_ENV, "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_perdom"))
        .args(["cohomology", "--preset", "drinfeld:4"])
        .env(perdom_cli::datum::BOUND_ENV, "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_and_selftest_pass() {
    assert_eq!(perdom(&["check", "--preset", "split:G2:2,3", "--p", "2,3,5"]).status.code(), Some(0));
    let out = perdom(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn zp_coefficients_relabel() {
    let r = machine(&["cohomology", "--preset", "drinfeld:2", "--coefficients", "zp"]);
    let CommandResult::Cohomology { summands, coefficients, .. } = r.result else {
        panic!()
    };
    assert_eq!(coefficients, "zp");
    assert_eq!(summands[0].rep.kind, "v_cont");
}
