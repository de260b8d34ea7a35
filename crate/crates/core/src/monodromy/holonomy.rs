//! Monodromy of a deck generator: Jacobian action composed with inverse transport.

use num_complex::Complex64;
use serde::Serialize;

use super::mobius::{expm_tracefree, mat_mul, CMat, Mobius, MobiusClass};
use super::tables::{table_entry, TableEntry};
use super::transport::holonomy_transport;
use crate::connections::{theta_from_riccati_form, RiccatiForm};
use crate::error::{Error, Result};
use crate::form_algebra::{evaluate, NumericBinding, RationalExpr};
use crate::surfaces::{generator_path, DeckGenerator, Family, SurfaceModel};

/// Relative tolerance for table and oracle comparisons.
pub const MATCH_TOL: f64 = 1e-8;
/// Multiple of the transport error estimate admitted when matching.
pub const ERROR_MARGIN: f64 = 10.0;

/// `max(MATCH_TOL, ERROR_MARGIN · estimate)`.
pub fn match_tolerance(error_estimate: f64) -> f64 {
    MATCH_TOL.max(ERROR_MARGIN * error_estimate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatchKind {
    #[serde(rename = "exact-convention match")]
    Exact,
    #[serde(rename = "match up to inverse")]
    Inverse,
    #[serde(rename = "match up to conjugacy")]
    Conjugacy,
    #[serde(rename = "mismatch")]
    Mismatch,
    #[serde(rename = "no table entry")]
    NoEntry,
}

impl std::fmt::Display for MatchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchKind::Exact => "exact-convention match",
            MatchKind::Inverse => "match up to inverse",
            MatchKind::Conjugacy => "match up to conjugacy",
            MatchKind::Mismatch => "mismatch",
            MatchKind::NoEntry => "no table entry",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub kind: MatchKind,
    /// `h` with `h ∘ table ∘ h⁻¹ = computed`.
    pub conjugator: Option<Mobius>,
    /// `true` when the conjugator is one of the documented frame changes.
    pub documented: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolonomyResult {
    pub generator: String,
    pub transport: Mobius,
    pub jacobian_action: Mobius,
    pub monodromy: Mobius,
    pub class: MobiusClass,
    pub step_count: usize,
    pub error_estimate: f64,
    /// The catalog table entry, literally.
    pub closed_form: Option<Mobius>,
    pub table_text: Option<String>,
    pub match_report: MatchReport,
    /// `J·exp(A·Δ)` for constant `θ` and affine deck maps.
    pub oracle: Option<Mobius>,
    pub oracle_distance: Option<f64>,
    /// Relative tolerance used for the table and oracle comparisons.
    pub match_tolerance: f64,
}

impl HolonomyResult {
    /// Table agreement (any documented equivalence) and oracle agreement.
    pub fn passed(&self) -> bool {
        let table_ok = !matches!(self.match_report.kind, MatchKind::Mismatch);
        let oracle_ok = self.oracle_distance.map_or(true, |d| d <= self.match_tolerance * self.monodromy.norm());
        table_ok && oracle_ok
    }
}

/// Frame changes that the tables are known to use: `w = 1/z`, `w = −1/z`.
pub fn standard_conjugators() -> Vec<Mobius> {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    vec![Mobius::from_coeffs(z, o, o, z), Mobius::from_coeffs(z, -o, o, z)]
}

pub fn compare(computed: &Mobius, entry: Option<&TableEntry>, tol: f64) -> MatchReport {
    let Some(entry) = entry else {
        return MatchReport { kind: MatchKind::NoEntry, conjugator: None, documented: false };
    };
    let t = &entry.mobius;
    let report = |kind, conjugator, documented| MatchReport { kind, conjugator, documented };
    if computed.approx_eq(t, tol) {
        return report(MatchKind::Exact, None, false);
    }
    if computed.approx_eq(&t.inverse(), tol) {
        return report(MatchKind::Inverse, None, false);
    }
    let standard = standard_conjugators();
    let mut documented = entry.frames.clone();
    documented.extend(standard.iter().copied());
    // a row frame combined with a chart swap
    for f in &entry.frames {
        for s in &standard {
            documented.push(f.compose(s));
            documented.push(s.compose(f));
        }
    }
    for h in documented {
        if t.conjugate_by(&h).approx_eq(computed, tol) {
            return report(MatchKind::Conjugacy, Some(h), true);
        }
    }
    match super::mobius::conjugator(t, computed, tol) {
        Some(h) => report(MatchKind::Conjugacy, Some(h), false),
        None => report(MatchKind::Mismatch, None, false),
    }
}

fn eval_matrix(m: &[[RationalExpr; 2]; 2], p: &[Complex64; 2], b: &NumericBinding) -> Result<CMat> {
    let e = |x: &RationalExpr| evaluate(x, p[0], p[1], b);
    Ok([[e(&m[0][0])?, e(&m[0][1])?], [e(&m[1][0])?, e(&m[1][1])?]])
}

/// Closed-form monodromy when `θ` has constant coefficients and the deck map
/// is affine: the flat system integrates to `V = exp(−A·Δ)`.
pub fn constant_coefficient_oracle(
    s: &SurfaceModel,
    form: &RiccatiForm,
    b: &NumericBinding,
    g: &DeckGenerator,
) -> Result<Option<Mobius>> {
    let th = theta_from_riccati_form(form).theta;
    let (ax, ay) = th.components();
    let constant = |m: &[[RationalExpr; 2]; 2]| m.iter().flatten().all(RationalExpr::is_parametric_constant);
    let Some(change) = &g.change else { return Ok(None) };
    if !constant(&ax) || !constant(&ay) || !constant(&change.jacobian) {
        return Ok(None);
    }
    let p = s.basepoint;
    let q = g.apply(&p, b)?;
    let (ax, ay) = (eval_matrix(&ax, &p, b)?, eval_matrix(&ay, &p, b)?);
    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
    let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = ax[i][j] * dx + ay[i][j] * dy;
        }
    }
    let j = eval_matrix(&change.jacobian, &p, b)?;
    Ok(Mobius::try_new(mat_mul(&j, &expm_tracefree(&a))).map(|m| Mobius::from_linear(&m.m)))
}

pub fn generator_monodromy(s: &SurfaceModel, g: &DeckGenerator, tol: f64) -> Result<HolonomyResult> {
    generator_monodromy_with(s, &s.connection.form, &s.binding(), g, tol)
}

/// Monodromy of `form` (an instance of the family of `s`) along `g`.
pub fn generator_monodromy_with(
    s: &SurfaceModel,
    form: &RiccatiForm,
    b: &NumericBinding,
    g: &DeckGenerator,
    tol: f64,
) -> Result<HolonomyResult> {
    if s.family == Family::EllipticGenusGe2 {
        return Err(Error::Unsupported("monodromy is not computed for the elliptic family".into()));
    }
    if !form.is_foliation() {
        return Err(Error::InvalidParameters("the Riccati distribution is not integrable".into()));
    }
    let path = generator_path(s, g)?;
    let t = holonomy_transport(form, &path, b, tol)?;
    let jac = g.jacobian_at(&s.basepoint, b)?;
    let jacobian_action = Mobius::try_new(jac)
        .map(|m| Mobius::from_linear(&m.m))
        .ok_or_else(|| Error::NotInvertible("singular Jacobian at the basepoint".into()))?;
    let monodromy = jacobian_action.compose(&t.mobius.inverse());
    let entry = table_entry(s, g);
    let match_tol = match_tolerance(t.error_estimate);
    let match_report = compare(&monodromy, entry.as_ref(), match_tol);
    let oracle = constant_coefficient_oracle(s, form, b, g)?;
    Ok(HolonomyResult {
        generator: g.label.clone(),
        transport: t.mobius,
        jacobian_action,
        class: monodromy.classify(),
        monodromy,
        step_count: t.step_count,
        error_estimate: t.error_estimate,
        closed_form: entry.as_ref().map(|e| e.mobius),
        table_text: entry.map(|e| e.text),
        match_report,
        oracle_distance: oracle.map(|o| o.distance(&monodromy)),
        oracle,
        match_tolerance: match_tol,
    })
}

/// Monodromy of every generator of `s`.
pub fn surface_monodromy(s: &SurfaceModel, tol: f64) -> Result<Vec<HolonomyResult>> {
    s.generators.iter().map(|g| generator_monodromy(s, g, tol)).collect()
}
