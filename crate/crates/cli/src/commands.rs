use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use riccati_core::connections::{chern_identity_check, distribution_curvature};
use riccati_core::form_algebra::parse_expr;
use riccati_core::monodromy::{group_classify_labeled, surface_monodromy, verify_tables, MobiusGroupReport};
use riccati_core::pencils_webs::{pencil_curvature, pencil_to_riccati, Pencil};
use riccati_core::surfaces::{
    catalog_listing, parse_descriptor, parse_param_assignment, structure_check, Family, SurfaceDescriptor, SurfaceModel,
};
use riccati_core::Error;

use crate::args::{Command, RunConfig};
use crate::render;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit status 2.
    Usage(String),
    /// A computation failed: exit status 1.
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidParameters(_)
            | Error::OutOfRange(_)
            | Error::NotTransverse
            | Error::NotNormalized(_)
            | Error::DegenerateWeb(..)
            | Error::Unsupported(_)
            | Error::DivisionByZero => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub markdown: String,
    /// 0 when every check passes, 1 on a mathematical mismatch.
    pub status: u8,
}

impl Outcome {
    fn new<T: Serialize>(command: &str, body: &T, markdown: String, passed: bool) -> Outcome {
        let mut json = serde_json::to_value(body).expect("serializable report");
        if let Value::Object(m) = &mut json {
            m.insert("command".into(), Value::String(command.into()));
        }
        Outcome { json, markdown, status: if passed { 0 } else { 1 } }
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::Catalog { filter } => cmd_catalog(filter.as_deref()),
        Command::Check => cmd_check(cfg),
        Command::Monodromy => cmd_monodromy(cfg),
        Command::VerifyTables { draws } => cmd_verify_tables(cfg, *draws),
        Command::Chern { n, k } => cmd_chern(*n, k.unwrap_or(*n)),
        Command::Pencil { u } => cmd_pencil(u),
    }
}

pub fn load_descriptor(src: &str) -> Result<SurfaceDescriptor, CliError> {
    let t = src.trim();
    if let Some(f) = Family::from_key(t) {
        return Ok(SurfaceDescriptor::new(f));
    }
    let text = if t.starts_with('{') {
        t.to_string()
    } else {
        std::fs::read_to_string(t).map_err(|e| CliError::Usage(format!("cannot read surface `{}`: {}", t, e)))?
    };
    Ok(parse_descriptor(&text)?)
}

fn load_surface(cfg: &RunConfig) -> Result<SurfaceModel, CliError> {
    let src = cfg.surface.as_deref().ok_or_else(|| CliError::Usage("--surface is required".into()))?;
    let mut d = load_descriptor(src)?;
    for p in &cfg.params {
        let (k, v) = parse_param_assignment(p)?;
        d.params.insert(k, v);
    }
    Ok(d.build()?)
}

#[derive(Serialize)]
pub struct SurfaceSummary {
    pub family: Family,
    pub variant: riccati_core::surfaces::Variant,
    pub parameters: BTreeMap<String, [f64; 2]>,
    pub foliation: String,
}

pub fn summary(s: &SurfaceModel) -> SurfaceSummary {
    SurfaceSummary {
        family: s.family,
        variant: s.variant,
        parameters: s.values.iter().map(|(k, v)| (k.clone(), [v.re, v.im])).collect(),
        foliation: s.connection.form.to_string(),
    }
}

fn cmd_catalog(filter: Option<&str>) -> Result<Outcome, CliError> {
    let families = catalog_listing(filter)?;
    let md = render::catalog(&families);
    Ok(Outcome::new("catalog", &json!({ "families": families }), md, true))
}

fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = load_surface(cfg)?;
    let report = structure_check(&s)?;
    let mut failures = Vec::new();
    if !report.flat {
        failures.push(format!("curvature of the reduced connection is nonzero: {:?}", render::matrix2(&report.curvature_residual)));
    }
    if !report.trace_free {
        failures.push("reduced connection has nonzero trace".to_string());
    }
    if !report.foliation {
        failures.push("induced distribution is not integrable".to_string());
    }
    if !report.parallelizable {
        failures.push("connection form is not closed".to_string());
    }
    if report.commuting == Some(false) {
        failures.push("A1 A2 - A2 A1 is nonzero".to_string());
    }
    for d in report.descent.iter().filter(|d| !d.descends) {
        let residual = match (&d.residual, d.max_numeric_residual) {
            (Some(r), _) => format!("{:?}", render::matrix1(r)),
            (None, Some(e)) => format!("max numeric residual {:e}", e),
            (None, None) => String::new(),
        };
        failures.push(format!("descent residual for {}: {}", d.generator, residual));
    }
    let passed = report.passed();
    let sum = summary(&s);
    let md = render::check(&sum, &report, &failures);
    let body = json!({ "surface": sum, "report": report, "failures": failures, "passed": passed });
    Ok(Outcome::new("check", &body, md, passed))
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum GroupOutcome {
    Classified(MobiusGroupReport),
    Inconclusive { classification: &'static str, word_bound: usize },
}

fn cmd_monodromy(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = load_surface(cfg)?;
    let results = surface_monodromy(&s, cfg.tol)?;
    let labeled: Vec<(String, _)> = results.iter().map(|r| (r.generator.clone(), r.monodromy)).collect();
    let group = match group_classify_labeled(&labeled, cfg.word_bound) {
        Ok(g) => GroupOutcome::Classified(g),
        Err(Error::Inconclusive(_)) => GroupOutcome::Inconclusive { classification: "inconclusive", word_bound: cfg.word_bound },
        Err(e) => return Err(e.into()),
    };
    let passed = results.iter().all(|r| r.passed());
    let sum = summary(&s);
    let md = render::monodromy(&sum, &results, &group, cfg.tol);
    let body = json!({ "surface": sum, "tolerance": cfg.tol, "generators": results, "group": group, "passed": passed });
    Ok(Outcome::new("monodromy", &body, md, passed))
}

fn cmd_verify_tables(cfg: &RunConfig, draws: usize) -> Result<Outcome, CliError> {
    let report = verify_tables(cfg.seed, draws, cfg.tol);
    let passed = report.passed();
    let md = render::tables(&report, draws, cfg.tol);
    let body = json!({ "seed": report.seed, "draws": draws, "tolerance": cfg.tol, "rows": report.rows, "errors": report.errors, "passed": passed });
    Ok(Outcome::new("verify-tables", &body, md, passed))
}

fn cmd_chern(n: usize, k: usize) -> Result<Outcome, CliError> {
    let c = chern_identity_check(n, k)?;
    let passed = c.passed();
    let md = render::chern(&c);
    let body = json!({ "n": c.n, "rows": c.rows, "r2_residual": c.r2_residual, "r2_coefficient": c.r2_coefficient, "passed": passed });
    Ok(Outcome::new("chern", &body, md, passed))
}

fn cmd_pencil(src: &str) -> Result<Outcome, CliError> {
    let u = parse_expr(src)?;
    let p = Pencil::normal(u.clone())?;
    let form = pencil_to_riccati(&p)?;
    let k = pencil_curvature(&p)?;
    // the pencil curvature must agree with the distribution curvature
    let consistent = distribution_curvature(&form) == k;
    let flat = k.is_zero();
    let body = json!({
        "u": u.to_string(),
        "omega0": p.omega0,
        "omegaInf": p.omega_inf,
        "riccati": form,
        "foliation": form.to_string(),
        "curvature": k,
        "curvature_text": k.to_string(),
        "flat": flat,
        "passed": consistent,
    });
    let md = render::pencil(&u.to_string(), &form.to_string(), &k.to_string(), flat);
    Ok(Outcome::new("pencil", &body, md, consistent))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_sources() {
        assert_eq!(load_descriptor("torus").unwrap().family, Family::Torus);
        assert_eq!(load_descriptor(r#"{"family": "kodaira"}"#).unwrap().family, Family::Kodaira);
        assert!(matches!(load_descriptor("/nonexistent/surface.json"), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(CliError::from(Error::InvalidParameters("x".into())), CliError::Usage(_)));
        assert!(matches!(CliError::from(Error::NoConvergence { estimate: 1.0, tol: 0.1 }), CliError::Failure(_)));
        assert!(matches!(CliError::from(Error::PoleOnPath("p".into())), CliError::Failure(_)));
    }
}
