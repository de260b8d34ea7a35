//! Catalog of compact complex surfaces with their universal covers, deck
//! transformations and admissible Riccati connections.

mod catalog;
mod descriptor;
mod listing;
mod path;

pub use catalog::{build_surface, elliptic_context, Params, ParamValue};
pub use descriptor::{parse_descriptor, parse_param_assignment, parse_param_value, SurfaceDescriptor};
pub use listing::{catalog_entry, catalog_listing, CatalogEntry, GeneratorSpec, ParamSpec};
pub use path::{generator_path, Path};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::connections::{
    cocycle_transform, connection_form, distribution_curvature, pullback_matrix, riccati_form_from_theta, CoordinateChange,
    RiccatiConnection, RiccatiForm,
};
use crate::error::{Error, Result};
use crate::form_algebra::{
    evaluate, evaluate_matrix, scalar_mat_mul, MatrixOneForm, MatrixTwoForm, NumericBinding, PolyMap, RationalExpr,
};

pub type Point = [Complex64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Torus,
    Kodaira,
    HopfPrimary,
    HopfSecondary,
    #[serde(rename = "inoue_sm")]
    InoueSM,
    #[serde(rename = "inoue_splus")]
    InoueSPlus,
    #[serde(rename = "elliptic")]
    EllipticGenusGe2,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Torus,
        Family::Kodaira,
        Family::HopfPrimary,
        Family::HopfSecondary,
        Family::InoueSM,
        Family::InoueSPlus,
        Family::EllipticGenusGe2,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            Family::Torus => "torus",
            Family::Kodaira => "kodaira",
            Family::HopfPrimary => "hopf_primary",
            Family::HopfSecondary => "hopf_secondary",
            Family::InoueSM => "inoue_sm",
            Family::InoueSPlus => "inoue_splus",
            Family::EllipticGenusGe2 => "elliptic",
        }
    }

    pub fn from_key(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.key() == s)
    }

    pub fn title(&self) -> &'static str {
        match self {
            Family::Torus => "Complex torus",
            Family::Kodaira => "Primary Kodaira surface",
            Family::HopfPrimary => "Primary Hopf surface",
            Family::HopfSecondary => "Secondary Hopf surface",
            Family::InoueSM => "Inoue surface S_M",
            Family::InoueSPlus => "Inoue surface S+",
            Family::EllipticGenusGe2 => "Elliptic surface over a curve of genus >= 2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoverDomain {
    C2,
    C2MinusOrigin,
    /// `Im x > 0`.
    HxC,
    /// `Im y > 0`.
    CxH,
}

impl CoverDomain {
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            CoverDomain::C2 => p.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            CoverDomain::C2MinusOrigin => p[0].norm() + p[1].norm() > 0.0,
            CoverDomain::HxC => p[0].im > 0.0,
            CoverDomain::CxH => p[1].im > 0.0,
        }
    }
}

/// Deck map of the elliptic family: `(x, y) ↦ (x + log(cy + d), (ay + b)/(cy + d))`
/// for `[[a, b], [c, d]] ∈ SL(2, ℝ)`, principal branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogShift {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LogShift {
    pub fn apply(&self, p: &Point) -> Point {
        let w = p[1] * self.c + self.d;
        [p[0] + w.ln(), (p[1] * self.a + self.b) / w]
    }

    /// Jacobian and the `y`-derivative of the Jacobian (its only nonzero direction).
    pub fn jacobian(&self, p: &Point) -> ([[Complex64; 2]; 2], [[Complex64; 2]; 2]) {
        let w = p[1] * self.c + self.d;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let j = [[one, self.c / w], [zero, one / (w * w)]];
        let dj = [[zero, -self.c * self.c / (w * w)], [zero, -2.0 * self.c / (w * w * w)]];
        (j, dj)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeckMap {
    Poly(PolyMap),
    NumericOnly(LogShift),
}

#[derive(Clone, Debug)]
pub struct DeckGenerator {
    pub label: String,
    pub map: DeckMap,
    /// Present for polynomial maps.
    pub change: Option<CoordinateChange>,
}

impl DeckGenerator {
    pub fn poly(label: &str, map: PolyMap) -> Result<Self> {
        let change = CoordinateChange::new(map.as_coord_map().clone())?;
        Ok(DeckGenerator { label: label.to_string(), map: DeckMap::Poly(map), change: Some(change) })
    }

    pub fn numeric(label: &str, m: LogShift) -> Self {
        DeckGenerator { label: label.to_string(), map: DeckMap::NumericOnly(m), change: None }
    }

    pub fn apply(&self, p: &Point, b: &NumericBinding) -> Result<Point> {
        match &self.map {
            DeckMap::Poly(m) => Ok([evaluate(&m.fx, p[0], p[1], b)?, evaluate(&m.fy, p[0], p[1], b)?]),
            DeckMap::NumericOnly(m) => Ok(m.apply(p)),
        }
    }

    pub fn jacobian_at(&self, p: &Point, b: &NumericBinding) -> Result<[[Complex64; 2]; 2]> {
        match (&self.map, &self.change) {
            (DeckMap::Poly(_), Some(c)) => {
                let j = &c.jacobian;
                let ev = |e: &RationalExpr| evaluate(e, p[0], p[1], b);
                Ok([[ev(&j[0][0])?, ev(&j[0][1])?], [ev(&j[1][0])?, ev(&j[1][1])?]])
            }
            (DeckMap::NumericOnly(m), _) => Ok(m.jacobian(p).0),
            _ => unreachable!("polynomial generators carry their coordinate change"),
        }
    }

    pub fn describe(&self) -> String {
        match &self.map {
            DeckMap::Poly(m) => m.to_string(),
            DeckMap::NumericOnly(m) => format!(
                "(x, y) -> (x + log({}*y + {}), ({}*y + {})/({}*y + {}))",
                m.c, m.d, m.a, m.b, m.c, m.d
            ),
        }
    }
}

/// Table row of the family that the parameters select.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    TorusType(u8),
    Kodaira,
    /// Row of the Hopf tables: 1 (`λ ≠ 0, m = 1`), 2 (`λ = 0`, generic), 3 (resonant).
    HopfRow(u8),
    #[serde(rename = "inoue_sm")]
    InoueSM,
    #[serde(rename = "inoue_splus")]
    InoueSPlus,
    Elliptic,
}

/// The admissible Riccati connections of a family.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectionFamily {
    /// As displayed for the family (may carry trace).
    pub theta: RiccatiConnection,
    /// `reduce(theta)` restricted to the flat subfamily.
    pub reduced: RiccatiConnection,
    pub form: RiccatiForm,
    pub free_params: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub family: Family,
    pub variant: Variant,
    pub cover_domain: CoverDomain,
    pub generators: Vec<DeckGenerator>,
    /// Numeric values of every parameter atom.
    pub values: BTreeMap<String, Complex64>,
    /// Integer matrix data (Inoue `M` or `N`, elliptic group elements).
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
    pub connection: ConnectionFamily,
    pub basepoint: Point,
}

impl SurfaceModel {
    pub fn binding(&self) -> NumericBinding {
        let mut b = NumericBinding::new();
        for (k, v) in &self.values {
            b = b.constant(k, *v);
        }
        if self.family == Family::EllipticGenusGe2 {
            // f = h = 0 satisfies both automorphy rules for every group element
            b = b.univariate("f", |_| Complex64::new(0.0, 0.0)).univariate("h", |_| Complex64::new(0.0, 0.0));
        }
        b
    }

    pub fn value(&self, name: &str) -> Complex64 {
        self.values.get(name).copied().unwrap_or_default()
    }

    pub fn generator(&self, label: &str) -> Option<&DeckGenerator> {
        self.generators.iter().find(|g| g.label == label)
    }
}

pub fn connection_family(s: &SurfaceModel) -> &ConnectionFamily {
    &s.connection
}

/// Outcome of the descent check for one generator.
#[derive(Clone, Debug, Serialize)]
pub struct Descent {
    pub generator: String,
    pub descends: bool,
    /// `true` when only a numeric spot check was possible.
    pub numeric_only: bool,
    pub residual: Option<MatrixOneForm>,
    pub max_numeric_residual: Option<f64>,
}

/// `T_g(θ) − g*θ` where `g*θ` pulls back every entry along the deck map.
pub fn descent_residual(theta: &RiccatiConnection, g: &DeckGenerator) -> Result<MatrixOneForm> {
    let change = g.change.as_ref().ok_or(Error::NumericOnly)?;
    let transformed = cocycle_transform(theta, change)?;
    let pulled = pullback_matrix(&theta.theta, &change.phi)?;
    Ok(transformed.theta.sub(&pulled))
}

pub fn descends(theta: &RiccatiConnection, g: &DeckGenerator) -> Result<(bool, MatrixOneForm)> {
    let r = descent_residual(theta, g)?;
    Ok((r.is_zero(), r))
}

type CMat = [[Complex64; 2]; 2];

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let f = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

fn cinv(a: &CMat) -> CMat {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

/// Numeric spot check of descent for a non-polynomial deck map at `points`.
pub fn descends_numeric(theta: &RiccatiConnection, g: &DeckGenerator, b: &NumericBinding, points: &[Point]) -> Result<f64> {
    let DeckMap::NumericOnly(m) = &g.map else {
        return Err(Error::InvalidParameters("numeric spot check expects a numeric deck map".into()));
    };
    let mut worst: f64 = 0.0;
    for p in points {
        let q = m.apply(p);
        let (j, dj) = m.jacobian(p);
        let th_p = evaluate_matrix(&theta.theta, p[0], p[1], b)?;
        let th_q = evaluate_matrix(&theta.theta, q[0], q[1], b)?;
        let ji = cinv(&j);
        // dg only has a dy component
        let mc_y = cmul(&dj, &ji);
        let half_tr_y = (mc_y[0][0] + mc_y[1][1]) * 0.5;
        for dir in 0..2 {
            let a: CMat = [[th_p[0][0][dir], th_p[0][1][dir]], [th_p[1][0][dir], th_p[1][1][dir]]];
            let mut lhs = cmul(&cmul(&j, &a), &ji);
            if dir == 1 {
                for i in 0..2 {
                    for k in 0..2 {
                        lhs[i][k] -= mc_y[i][k];
                    }
                    lhs[i][i] += half_tr_y;
                }
            }
            // (g*θ)(∂dir) = θ(q)(Dg ∂dir)
            for i in 0..2 {
                for k in 0..2 {
                    let rhs = th_q[i][k][0] * j[0][dir] + th_q[i][k][1] * j[1][dir];
                    worst = worst.max((lhs[i][k] - rhs).norm());
                }
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub family: Family,
    pub variant: Variant,
    pub flat: bool,
    pub trace_free: bool,
    pub parallelizable: bool,
    pub foliation: bool,
    pub curvature_residual: MatrixTwoForm,
    /// Curvature of the displayed (unreduced) connection.
    pub displayed_curvature: MatrixTwoForm,
    /// Torus only: `A1A2 − A2A1 = 0`.
    pub commuting: Option<bool>,
    pub descent: Vec<Descent>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.flat
            && self.trace_free
            && self.parallelizable
            && self.foliation
            && self.commuting.unwrap_or(true)
            && self.descent.iter().all(|d| d.descends)
    }
}

pub fn structure_check(s: &SurfaceModel) -> Result<StructureReport> {
    let red = &s.connection.reduced;
    let curvature = red.curvature();
    let form = riccati_form_from_theta(red)?;
    let commuting = if s.family == Family::Torus {
        let (a1, a2) = red.theta.components();
        let p = scalar_mat_mul(&a1, &a2);
        let q = scalar_mat_mul(&a2, &a1);
        Some((0..2).all(|i| (0..2).all(|j| p[i][j] == q[i][j])))
    } else {
        None
    };
    let b = s.binding();
    let mut descent = Vec::new();
    for g in &s.generators {
        // The displayed connection must descend, not only its reduction.
        let d = match &g.map {
            DeckMap::Poly(_) => {
                let (ok, r) = descends(&s.connection.theta, g)?;
                Descent { generator: g.label.clone(), descends: ok, numeric_only: false, residual: Some(r), max_numeric_residual: None }
            }
            DeckMap::NumericOnly(_) => {
                let pts = sample_points(s);
                let err = descends_numeric(red, g, &b, &pts)?;
                Descent {
                    generator: g.label.clone(),
                    descends: err < 1e-9,
                    numeric_only: true,
                    residual: None,
                    max_numeric_residual: Some(err),
                }
            }
        };
        descent.push(d);
    }
    Ok(StructureReport {
        family: s.family,
        variant: s.variant,
        flat: curvature.is_zero(),
        trace_free: red.is_reduced(),
        parallelizable: distribution_curvature(&form).is_zero(),
        foliation: form.is_foliation(),
        curvature_residual: curvature,
        displayed_curvature: s.connection.theta.curvature(),
        commuting,
        descent,
    })
}

fn sample_points(s: &SurfaceModel) -> Vec<Point> {
    let p = s.basepoint;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    vec![p, [p[0] + c(0.3, -0.2), p[1] + c(0.1, 0.4)], [p[0] + c(-0.5, 0.1), p[1] + c(-0.2, 0.7)]]
}

/// `κ` of the catalog foliation.
pub fn catalog_connection_form(s: &SurfaceModel) -> Result<crate::form_algebra::OneForm> {
    Ok(connection_form(&riccati_form_from_theta(&s.connection.reduced)?))
}

#[cfg(test)]
mod tests;
