//! Riccati connections and Riccati distributions `ω = dz + γ + δz + ηz²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form_algebra::{d_oneform, mat_wedge, wedge, Coeff, MatrixOneForm, MatrixTwoForm, OneForm, RationalExpr, TwoForm};

/// Local matrix `θ` of a Riccati connection on one chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RiccatiConnection {
    pub theta: MatrixOneForm,
}

impl RiccatiConnection {
    pub fn new(theta: MatrixOneForm) -> Self {
        RiccatiConnection { theta }
    }

    pub fn zero() -> Self {
        RiccatiConnection::new(MatrixOneForm::zero())
    }

    pub fn trace(&self) -> OneForm {
        self.theta.trace()
    }

    pub fn is_reduced(&self) -> bool {
        self.trace().is_zero()
    }

    /// `θ − ½ tr(θ) I`.
    pub fn reduce(&self) -> RiccatiConnection {
        let half = self.trace().scale(&Coeff::from_ratio(1, 2));
        RiccatiConnection::new(self.theta.sub(&MatrixOneForm::scalar(&half)))
    }

    /// `dθ + θ∧θ`.
    pub fn curvature(&self) -> MatrixTwoForm {
        self.theta.d().add(&mat_wedge(&self.theta, &self.theta))
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }
}

pub fn trace(c: &RiccatiConnection) -> OneForm {
    c.trace()
}

pub fn reduce(c: &RiccatiConnection) -> RiccatiConnection {
    c.reduce()
}

pub fn curvature(c: &RiccatiConnection) -> MatrixTwoForm {
    c.curvature()
}

/// The triple `(γ, δ, η)` of `ω = dz + γ + δz + ηz²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct RiccatiForm {
    pub gamma: OneForm,
    pub delta: OneForm,
    pub eta: OneForm,
}

impl RiccatiForm {
    pub fn new(gamma: OneForm, delta: OneForm, eta: OneForm) -> Self {
        RiccatiForm { gamma, delta, eta }
    }

    pub fn zero() -> Self {
        RiccatiForm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero() && self.delta.is_zero() && self.eta.is_zero()
    }

    pub fn is_foliation(&self) -> bool {
        frobenius_residual(self).iter().all(TwoForm::is_zero)
    }
}

impl std::fmt::Display for RiccatiForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "dz")?;
        for (w, z) in [(&self.gamma, ""), (&self.delta, "*z"), (&self.eta, "*z^2")] {
            if !w.is_zero() {
                write!(f, " + ({}){}", w, z)?;
            }
        }
        Ok(())
    }
}

/// Reads `(γ, δ, η)` off `θ = [[−δ/2, −η], [γ, δ/2]]`.
pub fn riccati_form_from_theta(c: &RiccatiConnection) -> Result<RiccatiForm> {
    if !c.is_reduced() {
        return Err(Error::NotReduced);
    }
    let t = &c.theta.e;
    Ok(RiccatiForm::new(t[1][0].clone(), t[1][1].scale(&Coeff::from_int(2)), t[0][1].neg()))
}

pub fn theta_from_riccati_form(r: &RiccatiForm) -> RiccatiConnection {
    let half = Coeff::from_ratio(1, 2);
    RiccatiConnection::new(MatrixOneForm::new([
        [r.delta.scale(&half).neg(), r.eta.neg()],
        [r.gamma.clone(), r.delta.scale(&half)],
    ]))
}

/// Coefficients of `z⁰, z¹, z²` in `dω` restricted to `ω = 0`:
/// `(dγ − γ∧δ, dδ − 2γ∧η, dη − δ∧η)`. All vanish iff `ω∧dω = 0`.
pub fn frobenius_residual(r: &RiccatiForm) -> [TwoForm; 3] {
    let two = Coeff::from_int(2);
    [
        d_oneform(&r.gamma).sub(&wedge(&r.gamma, &r.delta)),
        d_oneform(&r.delta).sub(&wedge(&r.gamma, &r.eta).scale(&two)),
        d_oneform(&r.eta).sub(&wedge(&r.delta, &r.eta)),
    ]
}

/// `κ = (δ₁/2 − γ₂) dx + (η₁ − δ₂/2) dy`.
pub fn connection_form(r: &RiccatiForm) -> OneForm {
    let half = Coeff::from_ratio(1, 2);
    OneForm::new(
        r.delta.cx.scale(&half).sub(&r.gamma.cy),
        r.eta.cx.sub(&r.delta.cy.scale(&half)),
    )
}

/// `K(H) = dκ`.
pub fn distribution_curvature(r: &RiccatiForm) -> TwoForm {
    d_oneform(&connection_form(r))
}

pub fn is_parallelizable(r: &RiccatiForm) -> bool {
    distribution_curvature(r).is_zero()
}

/// `T(∂x, ∂y) = −κ₂ ∂x + κ₁ ∂y` of the distribution.
pub fn riccati_torsion(r: &RiccatiForm) -> (RationalExpr, RationalExpr) {
    let k = connection_form(r);
    (k.cy.neg(), k.cx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_algebra::{d_scalar, parse_expr, parse_expr_in, Atom, AtomContext, FnDecl};

    fn e(s: &str) -> RationalExpr {
        parse_expr(s).unwrap()
    }
    fn f(dx: &str, dy: &str) -> OneForm {
        OneForm::new(e(dx), e(dy))
    }

    #[test]
    fn trace_and_reduce() {
        let c = RiccatiConnection::new(MatrixOneForm::new([
            [OneForm::dx(), OneForm::zero()],
            [OneForm::zero(), OneForm::zero()],
        ]));
        let r = c.reduce();
        assert_eq!(r.theta.e[0][0], f("1/2", "0"));
        assert_eq!(r.theta.e[1][1], f("-1/2", "0"));
        assert!(r.is_reduced());
        assert_eq!(r.reduce(), r);
        let s = RiccatiConnection::new(MatrixOneForm::scalar(&OneForm::dx()));
        assert_eq!(s.trace(), f("2", "0"));
    }

    #[test]
    fn curvature_of_nilpotent_example() {
        // θ = [[0,1],[0,0]]dx + [[0,x],[0,0]]dy: dθ12 = dx∧dy, θ∧θ = 0
        let c = RiccatiConnection::new(MatrixOneForm::new([
            [OneForm::zero(), f("1", "x")],
            [OneForm::zero(), OneForm::zero()],
        ]));
        let k = c.curvature();
        assert_eq!(k.e[0][1].cxy, RationalExpr::one());
        assert!(k.e[0][0].is_zero() && k.e[1][0].is_zero() && k.e[1][1].is_zero());
    }

    #[test]
    fn theta_round_trip() {
        let r = RiccatiForm::new(f("y", "x^2"), f("1", "a"), f("0", "x*y"));
        let c = theta_from_riccati_form(&r);
        assert!(c.is_reduced());
        assert_eq!(riccati_form_from_theta(&c).unwrap(), r);
        let half = RiccatiConnection::new(MatrixOneForm::new([
            [f("-1/2", "0"), OneForm::zero()],
            [OneForm::zero(), f("1/2", "0")],
        ]));
        assert_eq!(riccati_form_from_theta(&half).unwrap(), RiccatiForm::new(OneForm::zero(), OneForm::dx(), OneForm::zero()));
        let bad = RiccatiConnection::new(MatrixOneForm::scalar(&OneForm::dx()));
        assert_eq!(riccati_form_from_theta(&bad), Err(Error::NotReduced));
    }

    #[test]
    fn frobenius_examples() {
        assert!(RiccatiForm::zero().is_foliation());
        let r = RiccatiForm::new(f("y", "0"), OneForm::zero(), OneForm::zero());
        let res = frobenius_residual(&r);
        assert_eq!(res[0].cxy, e("-1"));
        assert!(res[1].is_zero() && res[2].is_zero());
    }

    /// Brute force: treat `z` as a parameter and expand `ω∧dω` in three variables.
    fn omega_wedge_domega(r: &RiccatiForm) -> RationalExpr {
        let z = RationalExpr::param("zfiber");
        let z2 = z.mul(&z);
        let wx = r.gamma.cx.add(&r.delta.cx.mul(&z)).add(&r.eta.cx.mul(&z2));
        let wy = r.gamma.cy.add(&r.delta.cy.mul(&z)).add(&r.eta.cy.mul(&z2));
        let zv = crate::form_algebra::Var::atom(Atom::param("zfiber"));
        let dz = |g: &RationalExpr| g.partial_formal(&zv);
        // ωz = 1
        let curl_x = RationalExpr::zero().sub(&dz(&wy));
        let curl_y = dz(&wx);
        let curl_z = wy.partial_x().sub(&wx.partial_y());
        wx.mul(&curl_x).add(&wy.mul(&curl_y)).add(&curl_z)
    }

    #[test]
    fn residual_triple_matches_brute_force_expansion() {
        let ctx = AtomContext::new().with_fn("u", FnDecl::OfXY);
        let g = |s: &str| parse_expr_in(s, &ctx).unwrap();
        let samples = [
            RiccatiForm::new(f("y", "0"), OneForm::zero(), OneForm::zero()),
            RiccatiForm::new(f("x*y", "1"), f("y^2", "x"), f("1", "x-y")),
            RiccatiForm::new(OneForm::zero(), d_scalar(&g("u")).mul(&g("1/u")), OneForm::zero()),
        ];
        for r in samples {
            let brute = omega_wedge_domega(&r);
            let tri = frobenius_residual(&r);
            assert_eq!(brute.is_zero(), tri.iter().all(TwoForm::is_zero));
        }
    }

    #[test]
    fn connection_form_examples() {
        assert!(connection_form(&RiccatiForm::zero()).is_zero());
        let r = RiccatiForm::new(f("0", "y"), OneForm::zero(), OneForm::zero());
        assert_eq!(connection_form(&r), f("-y", "0"));
        let r = RiccatiForm::new(OneForm::zero(), f("0", "x"), OneForm::zero());
        assert_eq!(connection_form(&r), f("0", "-x/2"));
        assert_eq!(distribution_curvature(&r).cxy, e("-1/2"));
    }

    #[test]
    fn pencil_foliation_connection_form() {
        let ctx = AtomContext::new().with_fn("u", FnDecl::OfXY);
        let u = parse_expr_in("u", &ctx).unwrap();
        let du_u = d_scalar(&u).mul(&u.inv().unwrap());
        let r = RiccatiForm::new(OneForm::zero(), du_u, OneForm::zero());
        assert!(r.is_foliation());
        let k = connection_form(&r);
        assert_eq!(k, OneForm::new(parse_expr_in("u_x/(2*u)", &ctx).unwrap(), parse_expr_in("-u_y/(2*u)", &ctx).unwrap()));
        let curv = distribution_curvature(&r);
        assert_eq!(curv.cxy, parse_expr_in("-(u_xy*u - u_x*u_y)/u^2", &ctx).unwrap());
    }
}
