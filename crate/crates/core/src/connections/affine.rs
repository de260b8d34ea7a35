//! Affine connections `∇Z = dZ + θ̃Z` and their Riccati counterparts.

use serde::Serialize;

use super::riccati::{connection_form, distribution_curvature, theta_from_riccati_form, RiccatiForm};
use crate::error::{Error, Result};
use crate::form_algebra::{d_oneform, mat_wedge, MatrixOneForm, MatrixTwoForm, RationalExpr, TwoForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineConnection {
    pub theta: MatrixOneForm,
}

impl AffineConnection {
    pub fn new(theta: MatrixOneForm) -> Self {
        AffineConnection { theta }
    }

    /// Components of `T(∂x, ∂y) = θ̃(∂x)e₂ − θ̃(∂y)e₁`.
    pub fn torsion(&self) -> (RationalExpr, RationalExpr) {
        let t = &self.theta.e;
        (t[0][1].cx.sub(&t[0][0].cy), t[1][1].cx.sub(&t[1][0].cy))
    }

    pub fn is_torsion_free(&self) -> bool {
        let (a, b) = self.torsion();
        a.is_zero() && b.is_zero()
    }

    /// `dθ̃ + θ̃∧θ̃`.
    pub fn curvature(&self) -> MatrixTwoForm {
        self.theta.d().add(&mat_wedge(&self.theta, &self.theta))
    }
}

pub fn torsion(a: &AffineConnection) -> (RationalExpr, RationalExpr) {
    a.torsion()
}

/// `γ = θ̃₂₁`, `δ = θ̃₂₂ − θ̃₁₁`, `η = −θ̃₁₂`.
pub fn affine_to_riccati(a: &AffineConnection) -> RiccatiForm {
    let t = &a.theta.e;
    RiccatiForm::new(t[1][0].clone(), t[1][1].sub(&t[0][0]), t[0][1].neg())
}

/// `θ̃ = θ(r) − κ I`; always torsion-free.
pub fn riccati_to_affine(r: &RiccatiForm) -> AffineConnection {
    let theta = theta_from_riccati_form(r).theta;
    AffineConnection::new(theta.sub(&MatrixOneForm::scalar(&connection_form(r))))
}

/// Residuals of `K_Tr = −2K(H)` and `K_∇ = W − K(H) I`.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureIdentities {
    pub trace_residual: TwoForm,
    pub curvature_residual: MatrixTwoForm,
}

impl CurvatureIdentities {
    pub fn holds(&self) -> bool {
        self.trace_residual.is_zero() && self.curvature_residual.is_zero()
    }
}

pub fn curvature_identities(a: &AffineConnection) -> Result<CurvatureIdentities> {
    if !a.is_torsion_free() {
        return Err(Error::HasTorsion);
    }
    let r = affine_to_riccati(a);
    let kh = distribution_curvature(&r);
    let k_tr = d_oneform(&a.theta.trace());
    let w = theta_from_riccati_form(&r).curvature();
    let k_nabla = a.curvature();
    Ok(CurvatureIdentities {
        trace_residual: k_tr.add(&kh.add(&kh)),
        curvature_residual: k_nabla.sub(&w.sub(&MatrixTwoForm::scalar(&kh))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_algebra::{parse_expr, OneForm};

    fn f(dx: &str, dy: &str) -> OneForm {
        OneForm::new(parse_expr(dx).unwrap(), parse_expr(dy).unwrap())
    }

    fn upper(w: OneForm) -> AffineConnection {
        AffineConnection::new(MatrixOneForm::new([[OneForm::zero(), w], [OneForm::zero(), OneForm::zero()]]))
    }

    #[test]
    fn torsion_by_definition() {
        assert!(AffineConnection::new(MatrixOneForm::zero()).is_torsion_free());
        // ∇_∂x ∂y = θ̃(∂x) e₂ = (1, 0), ∇_∂y ∂x = θ̃(∂y) e₁ = 0
        let (a, b) = upper(OneForm::dx()).torsion();
        assert_eq!((a, b), (RationalExpr::one(), RationalExpr::zero()));
        // θ̃₁₂ = dy only enters ∇_∂y ∂y, which torsion never sees
        assert!(upper(OneForm::dy()).is_torsion_free());
    }

    #[test]
    fn conversions() {
        assert!(affine_to_riccati(&AffineConnection::new(MatrixOneForm::zero())).is_zero());
        let scalar = AffineConnection::new(MatrixOneForm::scalar(&OneForm::dx()));
        assert!(affine_to_riccati(&scalar).is_zero());
        assert!(riccati_to_affine(&RiccatiForm::zero()).theta.is_zero());
        let r = RiccatiForm::new(f("x*y", "1"), f("y", "x^2"), f("0", "-c"));
        let a = riccati_to_affine(&r);
        assert!(a.is_torsion_free());
        assert_eq!(affine_to_riccati(&a), r);
        assert!(curvature_identities(&a).unwrap().holds());
    }

    #[test]
    fn torsion_precondition() {
        assert!(matches!(curvature_identities(&upper(OneForm::dx())), Err(Error::HasTorsion)));
    }
}
