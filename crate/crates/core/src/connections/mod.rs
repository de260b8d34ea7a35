//! Riccati and affine connections: trace, reduction, curvature, the
//! transformation law, Riccati distributions, torsion and the Chern check.

pub mod affine;
pub mod chern;
pub mod cocycle;
pub mod riccati;

pub use affine::{affine_to_riccati, curvature_identities, riccati_to_affine, torsion, AffineConnection, CurvatureIdentities};
pub use chern::{chern_identity_check, ChernRow, FormalChernCheck};
pub use cocycle::{cocycle_transform, pullback_matrix, to_target, CoordinateChange};
pub use riccati::{
    connection_form, curvature, distribution_curvature, frobenius_residual, is_parallelizable, reduce,
    riccati_form_from_theta, riccati_torsion, theta_from_riccati_form, trace, RiccatiConnection, RiccatiForm,
};

use crate::error::Result;
use crate::form_algebra::{d_scalar, Coeff, OneForm};

/// `φ*κ_α − κ_β − ½ d(det g)/det g` for a reduced `θ_β` and a change `g`
/// with known inverse. Zero exactly when the connection form transforms as
/// a cocycle.
pub fn kappa_cocycle_residual(theta_beta: &RiccatiConnection, g: &CoordinateChange) -> Result<OneForm> {
    let kb = connection_form(&riccati_form_from_theta(theta_beta)?);
    let alpha = to_target(&cocycle_transform(theta_beta, g)?, g)?;
    let ka = connection_form(&riccati_form_from_theta(&alpha)?);
    let ka_pulled = g.phi.pullback_oneform(&ka)?;
    let log_term = d_scalar(&g.jac_det).mul(&g.jac_det.inv()?).scale(&Coeff::from_ratio(1, 2));
    Ok(ka_pulled.sub(&kb).sub(&log_term))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_algebra::{parse_expr, CoordMap, RationalExpr};

    fn e(s: &str) -> RationalExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn kappa_transforms_with_half_log_det() {
        let r = RiccatiForm::new(
            OneForm::new(e("x*y"), e("1 + y")),
            OneForm::new(e("x"), e("y^2")),
            OneForm::new(e("2"), e("x - y")),
        );
        let theta = theta_from_riccati_form(&r);
        let maps = [
            (("x", "y + x^2"), ("x", "y - x^2")),
            (("x", "x*y"), ("x", "y/x")),
            (("x*y^2", "y"), ("x/y^2", "y")),
        ];
        for ((fx, fy), (gx, gy)) in maps {
            let g = CoordinateChange::with_inverse(CoordMap::new(e(fx), e(fy)), CoordMap::new(e(gx), e(gy))).unwrap();
            assert!(kappa_cocycle_residual(&theta, &g).unwrap().is_zero(), "{}", g.phi);
        }
    }
}
