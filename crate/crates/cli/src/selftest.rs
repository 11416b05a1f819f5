//! Preset regression against golden files, plus every acceptance criterion.

use std::path::{Path, PathBuf};

use perdom_core::cohomology::Coefficients;

use crate::commands;
use crate::criteria;
use crate::error::{CliError, CliResult};
use crate::report::{CommandResult, GoldenOut, Report, ENGINE};

pub fn default_golden_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            ':' | ',' => '_',
            '/' => '-',
            c => c,
        })
        .collect()
}

/// `(file name, machine report)` for every golden file, in a fixed order.
pub fn golden_reports() -> CliResult<Vec<(String, String)>> {
    let mut out = vec![];
    for (name, d) in criteria::suite_data()? {
        let stem = file_stem(name);
        let hc = commands::cohomology(&d, Coefficients::ModPn, Some(3), Some(1))?;
        out.push((format!("{stem}.cohomology.json"), hc.to_machine()));
        out.push((format!("{stem}.boundary.json"), commands::boundary(&d)?.to_machine()));
    }
    out.push((
        "kottwitz_gl3_1_0_0.json".into(),
        commands::kottwitz(3, &[1, 0, 0])?.to_machine(),
    ));
    Ok(out)
}

fn compare(dir: &Path, file: &str, content: &str, bless: bool) -> CliResult<GoldenOut> {
    let path = dir.join(file);
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let status = if bless {
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(&path, content).map_err(io)?;
        "blessed"
    } else {
        match std::fs::read_to_string(&path) {
            Ok(old) if old == content => "match",
            Ok(_) => "mismatch",
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => "missing",
            Err(e) => return Err(io(e)),
        }
    };
    Ok(GoldenOut {
        file: file.into(),
        status: status.into(),
    })
}

pub fn run(golden_dir: &Path, bless: bool) -> CliResult<Report> {
    let outcomes = criteria::all();
    let golden = golden_reports()?
        .iter()
        .map(|(file, content)| compare(golden_dir, file, content, bless))
        .collect::<CliResult<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.result.passed)
        && golden.iter().all(|g| g.status == "match" || g.status == "blessed");
    Ok(Report {
        engine: ENGINE.into(),
        command: "selftest".into(),
        provenance: None,
        datum: None,
        result: CommandResult::Selftest {
            passed,
            criteria: outcomes.into_iter().map(|o| o.result).collect(),
            golden,
        },
        verdicts: vec![],
    })
}
