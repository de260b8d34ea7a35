//! Holonomy transport: `dV/dt = −θ(ċ)V` along a piecewise-linear path.

use num_complex::Complex64;
use serde::Serialize;

use super::mobius::{mat_mul, CMat, Mobius};
use crate::connections::{theta_from_riccati_form, RiccatiForm};
use crate::error::{Error, Result};
use crate::form_algebra::{CompiledExpr, NumericBinding};
use crate::surfaces::{Path, Point};

/// Upper bound on step halvings before giving up.
pub const MAX_HALVINGS: usize = 20;
pub const DEFAULT_TOL: f64 = 1e-10;
const INITIAL_STEPS: usize = 4;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const IDENTITY: CMat = [[ONE, ZERO], [ZERO, ONE]];

#[derive(Clone, Debug, Serialize)]
pub struct Transport {
    pub mobius: Mobius,
    /// Fundamental solution `V(end)` with `V(start) = I`.
    #[serde(skip)]
    pub matrix: CMat,
    /// RK4 steps per segment in the accepted pass.
    pub steps_per_segment: usize,
    pub step_count: usize,
    /// Projective distance between the last two passes.
    pub error_estimate: f64,
}

/// `θ` entries compiled per direction: `theta[i][j][dir]`.
struct Field {
    theta: [[[CompiledExpr; 2]; 2]; 2],
    trivial: bool,
}

impl Field {
    fn new(r: &RiccatiForm) -> Field {
        let th = theta_from_riccati_form(r).theta;
        let c = |i: usize, j: usize| [CompiledExpr::new(&th.e[i][j].cx), CompiledExpr::new(&th.e[i][j].cy)];
        let theta = [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]];
        let trivial = theta.iter().flatten().flatten().all(CompiledExpr::is_zero);
        Field { theta, trivial }
    }

    /// `−θ(v)` at `p`.
    fn rhs(&self, p: &Point, v: &Point, b: &NumericBinding) -> Result<CMat> {
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let f = |d: usize| -> Result<Complex64> {
                    self.theta[i][j][d].eval(p[0], p[1], b).map_err(|e| match e {
                        Error::PoleAtPoint => Error::PoleOnPath(format!("({}, {})", p[0], p[1])),
                        other => other,
                    })
                };
                out[i][j] = -(f(0)? * v[0] + f(1)? * v[1]);
            }
        }
        Ok(out)
    }
}

fn axpy(a: &CMat, s: Complex64, b: &CMat) -> CMat {
    let mut o = *a;
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] += s * b[i][j];
        }
    }
    o
}

fn lerp(p: &Point, q: &Point, t: f64) -> Point {
    [p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t]
}

/// One pass of fixed-step RK4 with `n` steps per segment.
fn integrate(field: &Field, path: &Path, b: &NumericBinding, n: usize) -> Result<CMat> {
    let mut v = IDENTITY;
    for (p, q) in path.segments() {
        let vel = [q[0] - p[0], q[1] - p[1]];
        let h = 1.0 / n as f64;
        let hc = Complex64::new(h, 0.0);
        for k in 0..n {
            let t = k as f64 * h;
            let a0 = field.rhs(&lerp(&p, &q, t), &vel, b)?;
            let am = field.rhs(&lerp(&p, &q, t + h / 2.0), &vel, b)?;
            let a1 = field.rhs(&lerp(&p, &q, t + h), &vel, b)?;
            let k1 = mat_mul(&a0, &v);
            let k2 = mat_mul(&am, &axpy(&v, hc / 2.0, &k1));
            let k3 = mat_mul(&am, &axpy(&v, hc / 2.0, &k2));
            let k4 = mat_mul(&a1, &axpy(&v, hc, &k3));
            for i in 0..2 {
                for j in 0..2 {
                    v[i][j] += hc / 6.0 * (k1[i][j] + k2[i][j] * 2.0 + k3[i][j] * 2.0 + k4[i][j]);
                }
            }
        }
    }
    Ok(v)
}

/// Lifts the Riccati equation along `path`; doubles the step count until two
/// successive passes agree projectively within `tol`.
pub fn holonomy_transport(r: &RiccatiForm, path: &Path, b: &NumericBinding, tol: f64) -> Result<Transport> {
    let field = Field::new(r);
    let segments = path.waypoints.len().saturating_sub(1);
    if field.trivial {
        return Ok(Transport {
            mobius: Mobius::identity(),
            matrix: IDENTITY,
            steps_per_segment: 0,
            step_count: 0,
            error_estimate: 0.0,
        });
    }
    let mut n = INITIAL_STEPS;
    let mut prev = integrate(&field, path, b, n)?;
    let mut estimate = f64::INFINITY;
    for _ in 0..MAX_HALVINGS {
        n *= 2;
        let next = integrate(&field, path, b, n)?;
        let (m0, m1) = (
            Mobius::try_new(prev).ok_or_else(|| Error::PoleOnPath("singular transport".into()))?,
            Mobius::try_new(next).ok_or_else(|| Error::PoleOnPath("singular transport".into()))?,
        );
        estimate = m0.distance(&m1);
        if estimate < tol {
            return Ok(Transport {
                mobius: Mobius::from_linear(&m1.m),
                matrix: next,
                steps_per_segment: n,
                step_count: n * segments,
                error_estimate: estimate,
            });
        }
        prev = next;
    }
    Err(Error::NoConvergence { estimate, tol })
}
