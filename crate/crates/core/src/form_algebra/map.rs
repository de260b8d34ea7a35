//! Coordinate maps `(x, y) ↦ (fx, fy)` and pullback of functions and forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use super::atom::{Atom, AtomKind, Var};
use super::forms::{OneForm, ScalarMatrix};
use super::rational::RationalExpr;
use crate::error::{Error, Result};

/// A rational self-map of the chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordMap {
    pub fx: RationalExpr,
    pub fy: RationalExpr,
}

impl CoordMap {
    pub fn new(fx: RationalExpr, fy: RationalExpr) -> Self {
        CoordMap { fx, fy }
    }

    pub fn identity() -> Self {
        CoordMap::new(RationalExpr::x(), RationalExpr::y())
    }

    pub fn is_identity(&self) -> bool {
        self.fx == RationalExpr::x() && self.fy == RationalExpr::y()
    }

    /// `[[∂x fx, ∂y fx], [∂x fy, ∂y fy]]`.
    pub fn jacobian(&self) -> ScalarMatrix {
        [
            [self.fx.partial_x(), self.fx.partial_y()],
            [self.fy.partial_x(), self.fy.partial_y()],
        ]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CoordMap) -> Result<CoordMap> {
        Ok(CoordMap::new(inner.pullback(&self.fx)?, inner.pullback(&self.fy)?))
    }

    fn substitution(&self, e: &RationalExpr) -> Result<BTreeMap<Var, RationalExpr>> {
        let mut subs = BTreeMap::new();
        subs.insert(Var::X, self.fx.clone());
        subs.insert(Var::Y, self.fy.clone());
        let x_fixed = self.fx == RationalExpr::x();
        let y_fixed = self.fy == RationalExpr::y();
        for a in e.atoms() {
            let ok = match a.kind() {
                AtomKind::Param => true,
                AtomKind::FnX { .. } => x_fixed,
                AtomKind::FnY { .. } => y_fixed,
                AtomKind::FnXY { .. } => x_fixed && y_fixed,
                AtomKind::Exp(p) => {
                    let q = self.pullback(p)?;
                    if q != **p {
                        subs.insert(Var::atom(a.clone()), RationalExpr::atom(Atom::exp(q)));
                    }
                    true
                }
            };
            if !ok {
                return Err(Error::NonRepresentableComposition { atom: a.name().to_string() });
            }
        }
        Ok(subs)
    }

    /// `e ∘ φ`.
    pub fn pullback(&self, e: &RationalExpr) -> Result<RationalExpr> {
        if self.is_identity() {
            return Ok(e.clone());
        }
        let subs = self.substitution(e)?;
        e.substitute(&subs)
    }

    /// `φ*ω`, including the Jacobian chain rule.
    pub fn pullback_oneform(&self, w: &OneForm) -> Result<OneForm> {
        if self.is_identity() {
            return Ok(w.clone());
        }
        let cx = self.pullback(&w.cx)?;
        let cy = self.pullback(&w.cy)?;
        let j = self.jacobian();
        Ok(OneForm::new(
            cx.mul(&j[0][0]).add(&cy.mul(&j[1][0])),
            cx.mul(&j[0][1]).add(&cy.mul(&j[1][1])),
        ))
    }
}

impl fmt::Display for CoordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> ({}, {})", self.fx, self.fy)
    }
}

/// A polynomial self-map whose components involve only `x`, `y` and
/// parameter atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap(CoordMap);

impl PolyMap {
    pub fn new(fx: RationalExpr, fy: RationalExpr) -> Result<Self> {
        for c in [&fx, &fy] {
            if !c.is_polynomial() {
                return Err(Error::InvalidParameters(format!("map component {} is not polynomial", c)));
            }
            if c.atoms().iter().any(|a| !a.is_param()) {
                return Err(Error::InvalidParameters(format!(
                    "map component {} involves a function atom",
                    c
                )));
            }
        }
        Ok(PolyMap(CoordMap::new(fx, fy)))
    }

    pub fn identity() -> Self {
        PolyMap(CoordMap::identity())
    }

    pub fn as_coord_map(&self) -> &CoordMap {
        &self.0
    }

    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        let c = self.0.compose(&inner.0)?;
        PolyMap::new(c.fx, c.fy)
    }
}

impl Deref for PolyMap {
    type Target = CoordMap;
    fn deref(&self) -> &CoordMap {
        &self.0
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
