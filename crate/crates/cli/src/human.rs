//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::report::{CommandResult, ExtOut, Report, RepOut, SummandOut};

fn table(out: &mut String, headers: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (c, w)) in cells.iter().zip(&width).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        s.trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(headers.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// `"3/1"` as `3`.
fn rational(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn rationals(v: &[String]) -> String {
    v.iter().map(|x| rational(x)).collect::<Vec<_>>().join(",")
}

fn set(s: &[String]) -> String {
    format!("{{{}}}", s.join(","))
}

fn rep(r: &RepOut) -> String {
    format!("{}_{}", r.kind, set(&r.set))
}

fn summand_rows(s: &[SummandOut]) -> Vec<Vec<String>> {
    s.iter()
        .map(|s| {
            vec![
                s.degree.to_string(),
                rep(&s.rep),
                s.galois.rank.to_string(),
                s.galois.twist.to_string(),
                format!("{} (size {}, length {})", s.orbit.id, s.orbit.size, s.orbit.length),
            ]
        })
        .collect()
}

const SUMMAND_HEADERS: [&str; 5] = ["degree", "rep", "rank", "twist", "orbit"];

fn ext(e: &ExtOut) -> String {
    let bound = e.torsion_bound.map(|b| format!(", {b}-torsion")).unwrap_or_default();
    let status = if e.proven { "proven" } else { "open" };
    format!("{}{bound} [{status}: {}]", e.answer, e.hypothesis)
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.engine, r.command);
    if let Some(p) = &r.provenance {
        let _ = writeln!(out, "datum: {p}");
    }
    if let Some(d) = &r.datum {
        let cycles: Vec<String> = d.galois.cycles.iter().map(|c| format!("({})", c.join(" "))).collect();
        let _ = writeln!(
            out,
            "group {}  mu ({})  nu ({})  s {}  class {}",
            d.group,
            d.mu.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            rationals(&d.nu),
            d.s,
            d.class
        );
        let _ = writeln!(
            out,
            "galois {} (order {})  |Delta_J| {}  dim F {}  |W^mu| {}",
            if cycles.is_empty() { "id".to_string() } else { cycles.join("") },
            d.galois.order,
            d.j.labels.len(),
            d.dim_flag,
            d.kostant_size
        );
    }
    let _ = writeln!(out);
    match &r.result {
        CommandResult::Cohomology {
            coefficients,
            p,
            n,
            summands,
            orbits,
        } => {
            let ring = match (coefficients.as_str(), p, n) {
                ("zp", Some(p), _) => format!("Z_{p}"),
                ("zp", None, _) => "Z_p".into(),
                (_, Some(p), Some(n)) => format!("Z/{p}^{n}"),
                _ => "Z/p^n".into(),
            };
            let _ = writeln!(out, "H^*_c(F^wa, {ring})");
            table(&mut out, &SUMMAND_HEADERS, &summand_rows(summands));
            let _ = writeln!(out);
            let rows: Vec<Vec<String>> = orbits
                .iter()
                .map(|o| {
                    vec![
                        o.id.to_string(),
                        o.size.to_string(),
                        o.length.to_string(),
                        set(&o.i_set),
                        o.n.to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["orbit", "size", "length", "I", "n"], &rows);
        }
        CommandResult::Boundary {
            boundary_empty,
            summands,
            e1,
            e2,
        } => {
            if *boundary_empty {
                let _ = writeln!(out, "boundary is empty");
            } else {
                let _ = writeln!(out, "H^*(boundary)");
                table(&mut out, &SUMMAND_HEADERS, &summand_rows(summands));
            }
            for (name, page) in [("E1", e1), ("E2", e2)] {
                if page.is_empty() {
                    continue;
                }
                let _ = writeln!(out, "\n{name}");
                let rows: Vec<Vec<String>> = page
                    .iter()
                    .map(|c| {
                        vec![
                            format!("({},{})", c.i, c.j),
                            rep(&c.rep),
                            c.galois.rank.to_string(),
                            c.galois.twist.to_string(),
                            c.orbit.to_string(),
                        ]
                    })
                    .collect();
                table(&mut out, &["(i,j)", "rep", "rank", "twist", "orbit"], &rows);
            }
        }
        CommandResult::Schubert { subsets } => {
            for s in subsets {
                let omega: Vec<String> = s.omega.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "I = {}  Omega_I = [{}]", set(&s.set), omega.join(","));
                if !s.summands.is_empty() {
                    table(&mut out, &SUMMAND_HEADERS, &summand_rows(&s.summands));
                }
                let _ = writeln!(out);
            }
        }
        CommandResult::Strata { i, strata } => {
            let _ = writeln!(out, "strata with |Delta \\ I| = {i}");
            let rows: Vec<Vec<String>> = strata
                .iter()
                .map(|s| vec![set(&s.set), if s.nonempty { "nonempty" } else { "empty" }.into()])
                .collect();
            table(&mut out, &["I", "Omega_I"], &rows);
        }
        CommandResult::Kottwitz { n, mu, points, edges } => {
            let mu: Vec<String> = mu.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "A(GL_{n}, ({}))", mu.join(","));
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    vec![
                        p.id.to_string(),
                        format!("({})", rationals(&p.newton)),
                        p.kappa.to_string(),
                        if p.basic { "basic" } else { "" }.into(),
                    ]
                })
                .collect();
            table(&mut out, &["id", "newton", "kappa", ""], &rows);
            let e: Vec<String> = edges.iter().map(|[a, b]| format!("{a} < {b}")).collect();
            let _ = writeln!(out, "covering relations: {}", e.join(", "));
        }
        CommandResult::Ext {
            size,
            i_set,
            j_set,
            p,
            class,
            ext: e,
        } => {
            let _ = writeln!(
                out,
                "Ext^1(v_{}, v_{}) over |Delta| = {size}, p = {p}, class {class}",
                set(i_set),
                set(j_set)
            );
            let _ = writeln!(out, "{}", ext(e));
        }
        CommandResult::Check {
            passed,
            euler,
            splitting,
            invariants,
        } => {
            let rows: Vec<Vec<String>> = euler
                .iter()
                .map(|e| {
                    vec![
                        format!("euler p={} n={}", e.p, e.n),
                        pass(e.passed).into(),
                        format!("{} residual terms", e.residual.len()),
                    ]
                })
                .chain(splitting.iter().map(|s| {
                    vec![format!("splitting p={}", s.p), "info".into(), s.verdict.clone()]
                }))
                .chain(
                    invariants
                        .iter()
                        .map(|c| vec![c.name.clone(), pass(c.passed).into(), c.detail.clone()]),
                )
                .collect();
            table(&mut out, &["check", "status", "detail"], &rows);
            let _ = writeln!(out, "\noverall: {}", pass(*passed));
        }
        CommandResult::Selftest {
            passed,
            criteria,
            golden,
        } => {
            let rows: Vec<Vec<String>> = criteria
                .iter()
                .map(|c| vec![c.id.to_string(), pass(c.passed).into(), c.name.clone(), c.detail.clone()])
                .collect();
            table(&mut out, &["#", "status", "criterion", "detail"], &rows);
            let _ = writeln!(out);
            let rows: Vec<Vec<String>> = golden
                .iter()
                .map(|g| vec![g.file.clone(), g.status.clone()])
                .collect();
            table(&mut out, &["golden file", "status"], &rows);
            let _ = writeln!(out, "\noverall: {}", pass(*passed));
        }
    }
    for v in &r.verdicts {
        let _ = writeln!(out, "\nsplitting hypothesis at p = {}: {}", v.p, v.verdict);
        let rows: Vec<Vec<String>> = v
            .pairs
            .iter()
            .map(|p| {
                vec![
                    p.j.to_string(),
                    set(&p.from),
                    set(&p.to),
                    ext(&p.ext),
                ]
            })
            .collect();
        if !rows.is_empty() {
            table(&mut out, &["degree", "from", "to", "Ext^1"], &rows);
        }
    }
    out
}
