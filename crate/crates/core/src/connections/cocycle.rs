//! Coordinate changes and the transformation law of Riccati connections.

use super::riccati::RiccatiConnection;
use crate::error::{Error, Result};
use crate::form_algebra::{
    d_scalar, scalar_det, scalar_inverse, Coeff, CoordMap, MatrixOneForm, OneForm, RationalExpr, ScalarMatrix,
};

/// A change of coordinates `φ` together with its Jacobian `g = Dφ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub phi: CoordMap,
    pub jacobian: ScalarMatrix,
    pub jac_det: RationalExpr,
    /// `φ⁻¹`, when known in closed form.
    pub inverse: Option<CoordMap>,
}

impl CoordinateChange {
    pub fn new(phi: CoordMap) -> Result<Self> {
        let jacobian = phi.jacobian();
        let jac_det = scalar_det(&jacobian);
        if jac_det.is_zero() {
            return Err(Error::NotInvertible(format!("Jacobian of {} is singular", phi)));
        }
        Ok(CoordinateChange { phi, jacobian, jac_det, inverse: None })
    }

    /// Attaches `psi` after checking `φ∘ψ = ψ∘φ = id` exactly.
    pub fn with_inverse(phi: CoordMap, psi: CoordMap) -> Result<Self> {
        let mut g = CoordinateChange::new(phi)?;
        if !g.phi.compose(&psi)?.is_identity() || !psi.compose(&g.phi)?.is_identity() {
            return Err(Error::NotInvertible(format!("{} is not inverse to {}", psi, g.phi)));
        }
        g.inverse = Some(psi);
        Ok(g)
    }

    pub fn identity() -> Self {
        CoordinateChange::with_inverse(CoordMap::identity(), CoordMap::identity()).unwrap()
    }

    pub fn invert(&self) -> Result<CoordinateChange> {
        let psi = self
            .inverse
            .clone()
            .ok_or_else(|| Error::NotInvertible(format!("no closed-form inverse for {}", self.phi)))?;
        CoordinateChange::with_inverse(psi, self.phi.clone())
    }

    /// `dg·g⁻¹`.
    pub fn maurer_cartan(&self) -> MatrixOneForm {
        let ginv = scalar_inverse(&self.jacobian).expect("nonsingular Jacobian");
        MatrixOneForm::d_of(&self.jacobian).right_mul(&ginv)
    }
}

pub fn pullback_matrix(m: &MatrixOneForm, phi: &CoordMap) -> Result<MatrixOneForm> {
    let p = |w: &OneForm| phi.pullback_oneform(w);
    Ok(MatrixOneForm::new([
        [p(&m.e[0][0])?, p(&m.e[0][1])?],
        [p(&m.e[1][0])?, p(&m.e[1][1])?],
    ]))
}

/// `gθg⁻¹ − dg·g⁻¹ + ½ Tr(dg·g⁻¹) I`, with `g` and the result expressed in
/// the source coordinates of `φ`.
pub fn cocycle_transform(c: &RiccatiConnection, g: &CoordinateChange) -> Result<RiccatiConnection> {
    if g.phi.is_identity() {
        return Ok(c.clone());
    }
    let ginv = scalar_inverse(&g.jacobian).ok_or_else(|| Error::NotInvertible("singular Jacobian".into()))?;
    let mc = g.maurer_cartan();
    // Tr(dg·g⁻¹) = d(det g)/det g
    let tr = d_scalar(&g.jac_det).mul(&g.jac_det.inv()?).scale(&Coeff::from_ratio(1, 2));
    let theta = c
        .theta
        .left_mul(&g.jacobian)
        .right_mul(&ginv)
        .sub(&mc)
        .add(&MatrixOneForm::scalar(&tr));
    Ok(RiccatiConnection::new(theta))
}

/// Re-expresses a transformed connection in the target coordinates of `φ`.
pub fn to_target(c: &RiccatiConnection, g: &CoordinateChange) -> Result<RiccatiConnection> {
    let psi = g
        .inverse
        .as_ref()
        .ok_or_else(|| Error::NotInvertible(format!("no closed-form inverse for {}", g.phi)))?;
    Ok(RiccatiConnection::new(pullback_matrix(&c.theta, psi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_algebra::parse_expr;

    fn e(s: &str) -> RationalExpr {
        parse_expr(s).unwrap()
    }
    fn map(fx: &str, fy: &str) -> CoordMap {
        CoordMap::new(e(fx), e(fy))
    }

    #[test]
    fn identity_and_affine_changes() {
        let th = RiccatiConnection::new(MatrixOneForm::new([
            [OneForm::new(e("x"), e("0")), OneForm::dy()],
            [OneForm::zero(), OneForm::new(e("-x"), e("0"))],
        ]));
        assert_eq!(cocycle_transform(&th, &CoordinateChange::identity()).unwrap(), th);
        let g = CoordinateChange::new(map("2*x + y", "x - y + 3")).unwrap();
        assert!(cocycle_transform(&RiccatiConnection::zero(), &g).unwrap().theta.is_zero());
    }

    #[test]
    fn shear_by_square() {
        // dg·g⁻¹ = [[0,0],[2,0]] dx for g = D(x, y + x²), trace 0
        let g = CoordinateChange::new(map("x", "y + x^2")).unwrap();
        let t = cocycle_transform(&RiccatiConnection::zero(), &g).unwrap();
        let expect = MatrixOneForm::new([
            [OneForm::zero(), OneForm::zero()],
            [OneForm::new(e("-2"), e("0")), OneForm::zero()],
        ]);
        assert_eq!(t.theta, expect);
    }

    #[test]
    fn transform_then_inverse_is_identity() {
        let g = CoordinateChange::with_inverse(map("x", "y + x^2"), map("x", "y - x^2")).unwrap();
        let th = RiccatiConnection::new(MatrixOneForm::new([
            [OneForm::new(e("y"), e("x")), OneForm::new(e("1"), e("x*y"))],
            [OneForm::new(e("x^2"), e("0")), OneForm::new(e("-y"), e("-x"))],
        ]));
        let h = g.invert().unwrap();
        let forward = to_target(&cocycle_transform(&th, &g).unwrap(), &g).unwrap();
        let back = to_target(&cocycle_transform(&forward, &h).unwrap(), &h).unwrap();
        assert_eq!(back, th);
    }

    #[test]
    fn bad_inverse_rejected() {
        assert!(CoordinateChange::with_inverse(map("x", "y + x^2"), map("x", "y + x^2")).is_err());
        assert!(CoordinateChange::new(map("x", "x")).is_err());
    }
}
