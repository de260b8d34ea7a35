//! Numeric evaluation of expressions and forms at points of ℂ².
//!
//! [`evaluate`] converts the point and the atom values to exact rationals and
//! folds to `f64` once at the end. [`CompiledExpr`] is a plain double-precision
//! evaluator for inner loops such as the holonomy integrator.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::atom::{Atom, AtomKind, Var};
use super::coeff::Coeff;
use super::forms::{MatrixOneForm, OneForm, TwoForm};
use super::poly::Poly;
use super::rational::RationalExpr;
use crate::error::{Error, Result};

pub type Fn1 = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
pub type Fn2 = Arc<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

/// How a non-variable atom is evaluated.
#[derive(Clone)]
pub enum Binding {
    Const(Complex64),
    /// Function of the atom's own variable. Derivative atoms without their
    /// own binding are computed from this one when `differentiate` is set.
    Univariate { f: Fn1, differentiate: bool },
    Bivariate { f: Fn2, differentiate: bool },
}

impl std::fmt::Debug for Binding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Binding::Const(c) => write!(f, "Const({})", c),
            Binding::Univariate { differentiate, .. } => write!(f, "Univariate(differentiate={})", differentiate),
            Binding::Bivariate { differentiate, .. } => write!(f, "Bivariate(differentiate={})", differentiate),
        }
    }
}

/// Atom name (as printed, e.g. `u'`) to binding.
#[derive(Clone, Debug, Default)]
pub struct NumericBinding {
    map: BTreeMap<String, Binding>,
}

/// Radius and node count for the contour-quadrature derivative.
const CAUCHY_RADIUS: f64 = 1e-2;
const CAUCHY_NODES: usize = 32;

fn cauchy_derivative(f: impl Fn(Complex64) -> Complex64, z: Complex64, k: u32) -> Complex64 {
    if k == 0 {
        return f(z);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..CAUCHY_NODES {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / CAUCHY_NODES as f64);
        acc += f(z + w * CAUCHY_RADIUS) * w.powi(-(k as i32));
    }
    let fact: f64 = (1..=k).map(|v| v as f64).product();
    acc * fact / (CAUCHY_NODES as f64 * CAUCHY_RADIUS.powi(k as i32))
}

impl NumericBinding {
    pub fn new() -> Self {
        NumericBinding::default()
    }

    pub fn constant(mut self, name: &str, v: Complex64) -> Self {
        self.map.insert(name.to_string(), Binding::Const(v));
        self
    }

    pub fn univariate(mut self, name: &str, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.map.insert(name.to_string(), Binding::Univariate { f: Arc::new(f), differentiate: true });
        self
    }

    /// Binds `name` without allowing derivatives to be derived from it.
    pub fn univariate_exact(mut self, name: &str, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.map.insert(name.to_string(), Binding::Univariate { f: Arc::new(f), differentiate: false });
        self
    }

    pub fn bivariate(
        mut self,
        name: &str,
        f: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.map.insert(name.to_string(), Binding::Bivariate { f: Arc::new(f), differentiate: true });
        self
    }

    pub fn insert(&mut self, name: &str, b: Binding) {
        self.map.insert(name.to_string(), b);
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.map.get(name)
    }

    /// Numeric value of a non-exp atom at `(x, y)`.
    pub fn atom_value(&self, a: &Atom, x: Complex64, y: Complex64) -> Result<Complex64> {
        if let AtomKind::Exp(p) = a.kind() {
            return Ok(CompiledExpr::new(p).eval(x, y, self)?.exp());
        }
        if let Some(b) = self.map.get(a.name()) {
            return Ok(match b {
                Binding::Const(c) => *c,
                Binding::Univariate { f, .. } => match a.kind() {
                    AtomKind::FnY { .. } => f(y),
                    _ => f(x),
                },
                Binding::Bivariate { f, .. } => f(x, y),
            });
        }
        let unbound = || Error::UnboundAtom(a.name().to_string());
        match a.kind() {
            AtomKind::FnX { order } | AtomKind::FnY { order } => {
                let root = a.parent_chain_root();
                match self.map.get(root.name()) {
                    Some(Binding::Univariate { f, differentiate: true }) => {
                        let z = if matches!(a.kind(), AtomKind::FnY { .. }) { y } else { x };
                        Ok(cauchy_derivative(|t| f(t), z, *order))
                    }
                    _ => Err(unbound()),
                }
            }
            AtomKind::FnXY { dx, dy } => {
                let root = a.parent_chain_root();
                match self.map.get(root.name()) {
                    Some(Binding::Bivariate { f, differentiate: true }) => {
                        let g = |s: Complex64| cauchy_derivative(|t| f(s, t), y, *dy);
                        Ok(cauchy_derivative(g, x, *dx))
                    }
                    _ => Err(unbound()),
                }
            }
            _ => Err(unbound()),
        }
    }
}

fn var_value(v: &Var, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<Complex64> {
    match v {
        Var::X => Ok(x),
        Var::Y => Ok(y),
        Var::Atom(a) => b.atom_value(a, x, y),
    }
}

/// Relative threshold under which a denominator counts as a pole.
pub const POLE_REL_TOL: f64 = 1e-12;

fn exact_poly(p: &Poly, vals: &BTreeMap<Var, Coeff>) -> (Coeff, f64) {
    let mut acc = Coeff::zero();
    let mut scale = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.factors() {
            t = &t * &vals[v].pow(*e);
        }
        scale += t.to_complex64().norm();
        acc += &t;
    }
    (acc, scale)
}

/// Exact-until-the-last-step evaluation of `e` at `(x, y)`.
pub fn evaluate(e: &RationalExpr, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<Complex64> {
    let mut vals = BTreeMap::new();
    for v in e.vars() {
        let z = var_value(&v, x, y, b)?;
        let c = Coeff::from_complex64(z).ok_or(Error::PoleAtPoint)?;
        vals.insert(v, c);
    }
    let (n, _) = exact_poly(e.numer(), &vals);
    let (d, dscale) = exact_poly(e.denom(), &vals);
    if d.is_zero() || d.to_complex64().norm() <= POLE_REL_TOL * dscale {
        return Err(Error::PoleAtPoint);
    }
    Ok((&n / &d).to_complex64())
}

pub fn evaluate_oneform(w: &OneForm, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<[Complex64; 2]> {
    Ok([evaluate(&w.cx, x, y, b)?, evaluate(&w.cy, x, y, b)?])
}

pub fn evaluate_twoform(w: &TwoForm, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<Complex64> {
    evaluate(&w.cxy, x, y, b)
}

/// Entry `[i][j]` is `[θij(∂x), θij(∂y)]`.
pub fn evaluate_matrix(m: &MatrixOneForm, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<[[[Complex64; 2]; 2]; 2]> {
    Ok([
        [evaluate_oneform(&m.e[0][0], x, y, b)?, evaluate_oneform(&m.e[0][1], x, y, b)?],
        [evaluate_oneform(&m.e[1][0], x, y, b)?, evaluate_oneform(&m.e[1][1], x, y, b)?],
    ])
}

type Terms = Vec<(Complex64, Vec<(usize, i32)>)>;

/// Double-precision evaluator with precomputed term lists.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    vars: Vec<Var>,
    num: Terms,
    den: Terms,
}

impl CompiledExpr {
    pub fn new(e: &RationalExpr) -> Self {
        let vars: Vec<Var> = e.vars().into_iter().collect();
        let idx: BTreeMap<&Var, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let compile = |p: &Poly| -> Terms {
            p.terms()
                .map(|(m, c)| {
                    let fs = m.factors().map(|(v, e)| (idx[v], *e as i32)).collect();
                    (c.to_complex64(), fs)
                })
                .collect()
        };
        let num = compile(e.numer());
        let den = compile(e.denom());
        CompiledExpr { vars, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn eval(&self, x: Complex64, y: Complex64, b: &NumericBinding) -> Result<Complex64> {
        if self.num.is_empty() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut vals = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            vals.push(var_value(v, x, y, b)?);
        }
        let sum = |ts: &Terms| -> (Complex64, f64) {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut scale = 0.0;
            for (c, fs) in ts {
                let mut t = *c;
                for (i, e) in fs {
                    t *= vals[*i].powi(*e);
                }
                scale += t.norm();
                acc += t;
            }
            (acc, scale)
        };
        let (n, _) = sum(&self.num);
        let (d, ds) = sum(&self.den);
        if d.norm() <= POLE_REL_TOL * ds || d.norm() == 0.0 {
            return Err(Error::PoleAtPoint);
        }
        Ok(n / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_algebra::parse::{parse_expr, parse_expr_in, AtomContext, FnDecl};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polynomial_value() {
        let e = parse_expr("x^2*y").unwrap();
        let v = evaluate(&e, c(2.0, 0.0), c(0.0, 3.0), &NumericBinding::new()).unwrap();
        assert_eq!(v, c(0.0, 12.0));
    }

    #[test]
    fn pole_detected() {
        let e = parse_expr("1/x").unwrap();
        assert_eq!(evaluate(&e, c(0.0, 0.0), c(1.0, 0.0), &NumericBinding::new()), Err(Error::PoleAtPoint));
        let ce = CompiledExpr::new(&e);
        assert_eq!(ce.eval(c(0.0, 0.0), c(1.0, 0.0), &NumericBinding::new()), Err(Error::PoleAtPoint));
    }

    #[test]
    fn bound_function() {
        let ctx = AtomContext::new().with_fn("u", FnDecl::OfY);
        let e = parse_expr_in("u*x", &ctx).unwrap();
        let b = NumericBinding::new().univariate("u", |t| t * t);
        assert_eq!(evaluate(&e, c(2.0, 0.0), c(1.0, 0.0), &b).unwrap(), c(2.0, 0.0));
        // u'' of t^2 is 2, via contour quadrature
        let e2 = parse_expr_in("u''", &ctx).unwrap();
        let v = evaluate(&e2, c(0.0, 0.0), c(0.3, 0.1), &b).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn unbound_atom_reported() {
        let e = parse_expr("a*x").unwrap();
        assert!(matches!(evaluate(&e, c(1.0, 0.0), c(1.0, 0.0), &NumericBinding::new()), Err(Error::UnboundAtom(_))));
    }

    #[test]
    fn exp_atoms_evaluate() {
        let e = parse_expr("exp(x*y)").unwrap();
        let v = evaluate(&e, c(1.0, 0.0), c(0.5, 0.0), &NumericBinding::new()).unwrap();
        assert!((v - c(0.5f64.exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compiled_agrees_with_exact() {
        let e = parse_expr("(x^3 - i*y)/(1 + x*y^2)").unwrap();
        let p = (c(0.7, -0.2), c(1.1, 0.4));
        let a = evaluate(&e, p.0, p.1, &NumericBinding::new()).unwrap();
        let b = CompiledExpr::new(&e).eval(p.0, p.1, &NumericBinding::new()).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
    }
}
