//! Pencils of foliations, cross-ratios of four foliations and 3-webs.
//!
//! A foliation `[w = 0]` with `w = A dx + B dy` is stored by its slope
//! `e = −A/B` (presentation `e dx − dy`), or in the dual chart by
//! `ẽ = −B/A` (presentation `dx − ẽ dy`) when its leaves are vertical.

use serde::Serialize;

use crate::connections::RiccatiForm;
use crate::error::{Error, Result};
use crate::form_algebra::{d_scalar, wedge, OneForm, RationalExpr, TwoForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pencil {
    pub omega0: OneForm,
    #[serde(rename = "omegaInf")]
    pub omega_inf: OneForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoliationSlope {
    /// `e dx − dy`.
    Finite(RationalExpr),
    /// `dx − ẽ dy`.
    Dual(RationalExpr),
}

impl FoliationSlope {
    pub fn of_form(w: &OneForm) -> Result<Self> {
        if !w.cy.is_zero() {
            Ok(FoliationSlope::Finite(w.cx.div(&w.cy)?.neg()))
        } else if !w.cx.is_zero() {
            Ok(FoliationSlope::Dual(RationalExpr::zero()))
        } else {
            Err(Error::DivisionByZero)
        }
    }

    /// Kernel direction `(a, b)` of the presentation, `X = a∂x + b∂y`.
    pub fn kernel(&self) -> [RationalExpr; 2] {
        match self {
            FoliationSlope::Finite(e) => [RationalExpr::one(), e.clone()],
            FoliationSlope::Dual(e) => [e.clone(), RationalExpr::one()],
        }
    }

    pub fn form(&self) -> OneForm {
        kernel_form(&self.kernel())
    }
}

/// `b dx − a dy`, the form annihilating `a∂x + b∂y`.
fn kernel_form(k: &[RationalExpr; 2]) -> OneForm {
    OneForm::new(k[1].clone(), k[0].neg())
}

fn det(a: &[RationalExpr; 2], b: &[RationalExpr; 2]) -> RationalExpr {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

impl Pencil {
    pub fn new(omega0: OneForm, omega_inf: OneForm) -> Result<Self> {
        if wedge(&omega0, &omega_inf).is_zero() {
            return Err(Error::NotTransverse);
        }
        Ok(Pencil { omega0, omega_inf })
    }

    /// The normal presentation `(dx, u dy)`.
    pub fn normal(u: RationalExpr) -> Result<Self> {
        Pencil::new(OneForm::dx(), OneForm::new(RationalExpr::zero(), u))
    }

    /// `ω₀ + t ω∞`, or `ω∞` for `t = None` (`∞`).
    pub fn member(&self, t: Option<&RationalExpr>) -> OneForm {
        match t {
            Some(t) => self.omega0.add(&self.omega_inf.mul(t)),
            None => self.omega_inf.clone(),
        }
    }

    /// The parameter of `w` when `[w = 0]` is a member: `t = −(w∧ω₀)/(w∧ω∞)`.
    /// `Some(None)` is `t = ∞`; `None` when `t` is not constant.
    pub fn parameter_of(&self, w: &OneForm) -> Result<Option<Option<RationalExpr>>> {
        let a = wedge(w, &self.omega0).cxy;
        let b = wedge(w, &self.omega_inf).cxy;
        if b.is_zero() {
            return Ok(if a.is_zero() { None } else { Some(None) });
        }
        let t = a.div(&b)?.neg();
        Ok(if d_scalar(&t).is_zero() { Some(Some(t)) } else { None })
    }

    pub fn contains(&self, w: &OneForm) -> Result<bool> {
        Ok(self.parameter_of(w)?.is_some())
    }

    /// `u` of the normal presentation, if this is one.
    pub fn normal_u(&self) -> Result<&RationalExpr> {
        let ok = self.omega0 == OneForm::dx() && self.omega_inf.cx.is_zero() && !self.omega_inf.cy.is_zero();
        if ok {
            Ok(&self.omega_inf.cy)
        } else {
            Err(Error::NotNormalized(format!("omega0 = {}, omegaInf = {}", self.omega0, self.omega_inf)))
        }
    }
}

pub fn pencil_member(p: &Pencil, t: Option<&RationalExpr>) -> OneForm {
    p.member(t)
}

/// `dz + (du/u) z`.
pub fn pencil_to_riccati(p: &Pencil) -> Result<RiccatiForm> {
    let u = p.normal_u()?;
    Ok(RiccatiForm::new(OneForm::zero(), d_scalar(u).mul(&u.inv()?), OneForm::zero()))
}

/// `−(u_xy u − u_x u_y)/u² dx∧dy`.
pub fn pencil_curvature(p: &Pencil) -> Result<TwoForm> {
    let u = p.normal_u()?;
    let (ux, uy) = (u.partial_x(), u.partial_y());
    let num = u.partial_x().partial_y().mul(u).sub(&ux.mul(&uy));
    Ok(TwoForm::new(num.div(&u.mul(u))?.neg()))
}

/// `(e₁ − e₃)(e₂ − e₄) / ((e₂ − e₃)(e₁ − e₄))`, in homogeneous slope coordinates.
pub fn cross_ratio(e: [&FoliationSlope; 4]) -> Result<RationalExpr> {
    let k: Vec<[RationalExpr; 2]> = e.iter().map(|s| s.kernel()).collect();
    // slope difference e_i − e_j ↔ −det(k_i, k_j) for finite slopes
    let d = |i: usize, j: usize| det(&k[i], &k[j]);
    for i in 0..4 {
        for j in i + 1..4 {
            if d(i, j).is_zero() {
                return Err(Error::DegenerateWeb(i + 1, j + 1));
            }
        }
    }
    d(0, 2).mul(&d(1, 3)).div(&d(1, 2).mul(&d(0, 3)))
}

/// `(true, c)` when the cross-ratio is a constant `c` (no `x`, `y` dependence).
pub fn is_constant_cross_ratio(e: [&FoliationSlope; 4]) -> Result<(bool, Option<RationalExpr>)> {
    let cr = cross_ratio(e)?;
    if d_scalar(&cr).is_zero() {
        Ok((true, Some(cr)))
    } else {
        Ok((false, None))
    }
}

/// The pencil with `F₀ = [e0]`, `F₁ = [e1]`, `F∞ = [e_inf]`: kernels
/// `k(t) = α k₀ + t β k∞` with `α k₀ + β k∞ = k₁`.
pub fn web_to_pencil(e0: &FoliationSlope, e1: &FoliationSlope, e_inf: &FoliationSlope) -> Result<Pencil> {
    let (k0, k1, ki) = (e0.kernel(), e1.kernel(), e_inf.kernel());
    for (i, j, a, b) in [(0, 1, &k0, &k1), (0, 2, &k0, &ki), (1, 2, &k1, &ki)] {
        if det(a, b).is_zero() {
            return Err(Error::DegenerateWeb(i, j));
        }
    }
    let d = det(&k0, &ki);
    let alpha = det(&k1, &ki).div(&d)?;
    let beta = det(&k0, &k1).div(&d)?;
    Pencil::new(kernel_form(&k0).mul(&alpha), kernel_form(&ki).mul(&beta))
}
