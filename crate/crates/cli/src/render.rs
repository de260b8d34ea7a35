//! Markdown rendering of the reports.

use std::fmt::Write;

use riccati_core::connections::FormalChernCheck;
use riccati_core::form_algebra::{MatrixOneForm, MatrixTwoForm};
use riccati_core::monodromy::{HolonomyResult, TableReport};
use riccati_core::surfaces::{CatalogEntry, StructureReport, Variant};

use crate::commands::{GroupOutcome, SurfaceSummary};

pub fn matrix1(m: &MatrixOneForm) -> [[String; 2]; 2] {
    [[m.e[0][0].to_string(), m.e[0][1].to_string()], [m.e[1][0].to_string(), m.e[1][1].to_string()]]
}

pub fn matrix2(m: &MatrixTwoForm) -> [[String; 2]; 2] {
    [[m.e[0][0].to_string(), m.e[0][1].to_string()], [m.e[1][0].to_string(), m.e[1][1].to_string()]]
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn variant(v: &Variant) -> String {
    match v {
        Variant::TorusType(k) => format!("type {}", k),
        Variant::HopfRow(1) => "lambda != 0, m = 1".to_string(),
        Variant::HopfRow(2) => "lambda = 0, a != b^2".to_string(),
        Variant::HopfRow(_) => "lambda = 0, a = b^2".to_string(),
        Variant::Kodaira => "-".to_string(),
        Variant::InoueSM => "M".to_string(),
        Variant::InoueSPlus => "N".to_string(),
        Variant::Elliptic => "-".to_string(),
    }
}

fn header(out: &mut String, s: &SurfaceSummary) {
    let _ = writeln!(out, "Family: {} ({})", s.family, variant(&s.variant));
    let params: Vec<String> = s
        .parameters
        .iter()
        .map(|(k, [re, im])| if *im == 0.0 { format!("{}={}", k, re) } else { format!("{}={}{:+}i", k, re, im) })
        .collect();
    let _ = writeln!(out, "Parameters: {}", params.join(", "));
    let _ = writeln!(out, "Foliation: {}\n", s.foliation);
}

pub fn catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::from("# Catalog\n\n");
    for e in entries {
        let _ = writeln!(out, "## {} (`{}`)\n", e.title, e.key);
        let _ = writeln!(out, "Cover: {:?}\n", e.cover_domain);
        out.push_str("| Parameter | Kind | Default | Constraint |\n|---|---|---|---|\n");
        for p in &e.parameters {
            let _ = writeln!(out, "| {} | {} | {} | {} |", p.name, p.kind, p.default, p.constraint);
        }
        out.push_str("\nGenerators:\n");
        for g in &e.generators {
            let _ = writeln!(out, "- {}: {}", g.label, g.map);
        }
        let _ = writeln!(out, "\nConnection parameters: {}", e.connection_params.join(", "));
        if !e.tables.is_empty() {
            out.push_str("\nMonodromy table:\n");
            for t in &e.tables {
                let _ = writeln!(out, "- {}", t);
            }
        }
        out.push('\n');
    }
    out
}

pub fn check(s: &SurfaceSummary, r: &StructureReport, failures: &[String]) -> String {
    let mut out = String::from("# Structure check\n\n");
    header(&mut out, s);
    out.push_str("| Check | Holds |\n|---|---|\n");
    let _ = writeln!(out, "| flat | {} |", yes(r.flat));
    let _ = writeln!(out, "| trace-free | {} |", yes(r.trace_free));
    let _ = writeln!(out, "| integrable | {} |", yes(r.foliation));
    let _ = writeln!(out, "| parallelizable | {} |", yes(r.parallelizable));
    if let Some(c) = r.commuting {
        let _ = writeln!(out, "| commuting | {} |", yes(c));
    }
    for d in &r.descent {
        let kind = if d.numeric_only { " (numeric)" } else { "" };
        let _ = writeln!(out, "| descends along {}{} | {} |", d.generator, kind, yes(d.descends));
    }
    if !failures.is_empty() {
        out.push_str("\nFailures:\n");
        for f in failures {
            let _ = writeln!(out, "- {}", f);
        }
    }
    let _ = writeln!(out, "\nResult: {}", verdict(r.passed()));
    out
}

pub fn monodromy(s: &SurfaceSummary, rs: &[HolonomyResult], g: &GroupOutcome, tol: f64) -> String {
    let mut out = String::from("# Monodromy\n\n");
    header(&mut out, s);
    let _ = writeln!(out, "Tolerance: {:e}\n", tol);
    out.push_str("| Generator | Monodromy | Class | Table | Match | Steps | Error |\n|---|---|---|---|---|---|---|\n");
    for r in rs {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {:.1e} |",
            r.generator,
            r.monodromy,
            r.class,
            r.table_text.as_deref().unwrap_or("-"),
            r.match_report.kind,
            r.step_count,
            r.error_estimate
        );
    }
    match g {
        GroupOutcome::Classified(rep) => {
            let _ = writeln!(out, "\nGroup: {}", rep.classification);
            let e = &rep.evidence;
            let _ = writeln!(out, "Evidence: {} elements to depth {}, closed: {}", e.elements, e.depth, yes(e.closed));
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "Witness: {} ({})", w.word, w.class);
            }
        }
        GroupOutcome::Inconclusive { word_bound, .. } => {
            let _ = writeln!(out, "\nGroup: inconclusive within word bound {}", word_bound);
        }
    }
    let _ = writeln!(out, "\nResult: {}", verdict(rs.iter().all(|r| r.passed())));
    out
}

pub fn tables(r: &TableReport, draws: usize, tol: f64) -> String {
    let mut out = String::from("# Monodromy tables\n\n");
    let _ = writeln!(out, "Seed: {}, draws: {}, tolerance: {:e}\n", r.seed, draws, tol);
    let mut family = None;
    for row in &r.rows {
        if family != Some(row.family) {
            family = Some(row.family);
            let _ = writeln!(out, "\n## {}\n", row.family.title());
            out.push_str("| Type/Condition | Instance | Foliation | Generator | Table | Computed | Match |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
        }
        let res = &row.result;
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            variant(&row.variant),
            row.instance,
            row.foliation,
            res.generator,
            res.table_text.as_deref().unwrap_or("-"),
            res.monodromy,
            if row.passed { res.match_report.kind.to_string() } else { format!("FAIL ({})", res.match_report.kind) }
        );
    }
    if !r.errors.is_empty() {
        out.push_str("\n## Errors\n\n");
        for e in &r.errors {
            let _ = writeln!(out, "- {}", e);
        }
    }
    let passed = r.rows.iter().filter(|x| x.passed).count();
    let _ = writeln!(out, "\nRows matched: {}/{}\nResult: {}", passed, r.rows.len(), verdict(r.passed()));
    out
}

pub fn chern(c: &FormalChernCheck) -> String {
    let mut out = format!("# Chern identity, n = {}\n\n| k | Holds | Residual |\n|---|---|---|\n", c.n);
    for r in &c.rows {
        let _ = writeln!(out, "| {} | {} | {} |", r.k, yes(r.holds), r.residual);
    }
    let _ = writeln!(out, "\nR2 = c2 - ({}) c1^2, residual: {}", c.r2_coefficient, c.r2_residual);
    let _ = writeln!(out, "Result: {}", verdict(c.passed()));
    out
}

pub fn pencil(u: &str, form: &str, k: &str, flat: bool) -> String {
    let mut out = String::from("# Pencil\n\n");
    let _ = writeln!(out, "u = {}", u);
    let _ = writeln!(out, "Members: dx + t ({})*dy", u);
    let _ = writeln!(out, "Induced foliation: {}", form);
    let _ = writeln!(out, "K(P) = {}", k);
    let _ = writeln!(out, "Flat: {}", yes(flat));
    out
}
