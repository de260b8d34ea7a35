use num_complex::Complex64;

use super::*;
use crate::connections::{cocycle_transform, riccati_form_from_theta, CoordinateChange, RiccatiConnection};
use crate::form_algebra::{parse_expr, CoordMap, NumericBinding};
use crate::surfaces::{build_surface, Family, ParamValue, Params, Path, SurfaceModel};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn surface(f: Family, ps: &[(&str, Complex64)]) -> SurfaceModel {
    let params: Params = ps.iter().map(|(k, v)| (k.to_string(), ParamValue::Complex(*v))).collect();
    build_surface(f, &params).unwrap()
}

fn mono(s: &SurfaceModel, label: &str) -> HolonomyResult {
    generator_monodromy(s, s.generator(label).unwrap(), 1e-10).unwrap()
}

#[test]
fn torus_type1_calibration() {
    let s = surface(Family::Torus, &[("a", c(1.0, 0.0)), ("b", c(2.0, 0.0))]);
    let r = mono(&s, "t1");
    assert!(r.monodromy.approx_eq(&Mobius::scaling(c(1f64.exp(), 0.0)), 1e-9), "{}", r.monodromy);
    assert_eq!(r.match_report.kind, MatchKind::Exact);
    // (k, l) = (0, 1): z·e²
    let r = mono(&s, "t3");
    assert!(r.monodromy.approx_eq(&Mobius::scaling(c(2f64.exp(), 0.0)), 1e-9));
    assert!((r.monodromy.det() - 1.0).norm() <= 1e-10);
}

#[test]
fn torus_type3_is_conjugate_to_table() {
    // computed z/(1 + z), table z − 1; w = −1/z carries one to the other
    let s = surface(Family::Torus, &[("type", c(3.0, 0.0))]);
    let r = mono(&s, "t3");
    assert!(r.monodromy.approx_eq(&Mobius::from_coeffs(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)), 1e-9));
    assert_eq!(r.match_report.kind, MatchKind::Conjugacy);
    assert!(r.match_report.documented);
}

#[test]
fn torus_nilpotent_types_match_in_leaf_chart() {
    for kind in [2.0, 3.0] {
        let s = surface(
            Family::Torus,
            &[("type", c(kind, 0.0)), ("e", c(0.7, 0.0)), ("f", c(0.3, 0.0)), ("g", c(1.1, 0.0)), ("h", c(0.9, 0.0))],
        );
        for g in &s.generators {
            let r = mono(&s, &g.label);
            assert!(r.passed(), "type {kind} {}", g.label);
            assert!(
                r.match_report.kind == MatchKind::Exact || r.match_report.documented,
                "type {kind} {}: {:?}",
                g.label,
                r.match_report
            );
        }
    }
}

#[test]
fn torus_monodromies_commute() {
    let s = surface(
        Family::Torus,
        &[("a", c(0.3, 0.2)), ("b", c(-0.4, 0.1)), ("e", c(1.0, 1.0)), ("f", c(0.5, 0.0)), ("g", c(0.2, -0.3))],
    );
    let ms: Vec<Mobius> = ["t1", "t2", "t3", "t4"].iter().map(|l| mono(&s, l).monodromy).collect();
    for a in &ms {
        for b in &ms {
            assert!(a.compose(b).approx_eq(&b.compose(a), 1e-9));
        }
    }
}

#[test]
fn kodaira_translations() {
    let (a, cc, tau2) = (c(0.7, 0.1), c(0.3, -0.2), c(0.1, 1.3));
    let s = surface(Family::Kodaira, &[("a", a), ("c", cc), ("tau2", tau2)]);
    let r3 = mono(&s, "g3");
    assert!(r3.monodromy.approx_eq(&Mobius::translation(a + cc), 1e-9));
    assert_eq!(r3.match_report.kind, MatchKind::Inverse);
    let b = s.value("b");
    let r4 = mono(&s, "g4");
    assert!(r4.monodromy.approx_eq(&Mobius::translation(b + cc * tau2), 1e-9));
    assert!(mono(&s, "g1").monodromy.is_identity(1e-9));
}

#[test]
fn hopf_rows() {
    let (a, b) = (c(0.2, 0.1), c(0.5, -0.3));
    let s = surface(Family::HopfPrimary, &[("a", a), ("b", b)]);
    let r = mono(&s, "g");
    assert!(r.monodromy.approx_eq(&Mobius::scaling(b / a), 1e-9));
    assert_eq!(r.match_report.kind, MatchKind::Exact);

    let lam = c(0.4, 0.4);
    let s = surface(Family::HopfPrimary, &[("a", b), ("b", b), ("lambda", lam)]);
    let r = mono(&s, "g");
    // z/(1 + (λ/b) z)
    assert!(r.monodromy.approx_eq(&Mobius::from_coeffs(c(1.0, 0.0), c(0.0, 0.0), lam / b, c(1.0, 0.0)), 1e-9));
    assert_eq!(r.match_report.kind, MatchKind::Conjugacy);

    let cc = c(0.6, 0.2);
    let s = surface(Family::HopfPrimary, &[("a", b * b), ("b", b), ("c", cc)]);
    let r = mono(&s, "g");
    // z/(b(1 + c(b − 1)z))
    let expect = Mobius::from_coeffs(c(1.0, 0.0), c(0.0, 0.0), b * cc * (b - 1.0), b);
    assert!(r.monodromy.approx_eq(&expect, 1e-9), "{}", r.monodromy);
    assert_eq!(r.match_report.kind, MatchKind::Conjugacy);
    assert!(((r.monodromy.trace_sq() - (1.0 + b) * (1.0 + b) / b)).norm() < 1e-9);
}

#[test]
fn inoue_generators() {
    let s = surface(Family::InoueSM, &[]);
    let r = mono(&s, "gamma0");
    assert!(r.monodromy.approx_eq(&Mobius::scaling(s.value("beta") / s.value("alpha")), 1e-9));
    assert!(mono(&s, "gamma2").monodromy.is_identity(1e-12));

    let s = surface(Family::InoueSPlus, &[]);
    assert!(mono(&s, "gamma0").monodromy.approx_eq(&Mobius::scaling(c(1.0 / s.value("alpha").re, 0.0)), 1e-9));
    let r = mono(&s, "gamma1");
    assert!(r.monodromy.approx_eq(&Mobius::translation(s.value("b1")), 1e-9));
    assert_eq!(r.match_report.kind, MatchKind::Conjugacy);
}

#[test]
fn elliptic_is_unsupported() {
    let s = surface(Family::EllipticGenusGe2, &[]);
    assert!(generator_monodromy(&s, &s.generators[0], 1e-10).is_err());
}

#[test]
fn table_verification_small() {
    let r = verify_tables(7, 2, 1e-10);
    assert!(r.errors.is_empty(), "{:?}", r.errors);
    for row in &r.rows {
        assert!(row.passed, "{:?}", row);
    }
}

fn curved_flat_form() -> crate::connections::RiccatiForm {
    // a constant flat connection moved by a polynomial change stays flat
    let th = RiccatiConnection::new(crate::form_algebra::MatrixOneForm::from_components(
        &[[parse_expr("-1/2").unwrap(), parse_expr("0").unwrap()], [parse_expr("0").unwrap(), parse_expr("1/2").unwrap()]],
        &[[parse_expr("0").unwrap(), parse_expr("0").unwrap()], [parse_expr("0").unwrap(), parse_expr("0").unwrap()]],
    ));
    let g = CoordinateChange::new(CoordMap::new(parse_expr("x").unwrap(), parse_expr("y + x^2").unwrap())).unwrap();
    riccati_form_from_theta(&cocycle_transform(&th, &g).unwrap()).unwrap()
}

fn pt(a: f64, b: f64, cc: f64, d: f64) -> [Complex64; 2] {
    [c(a, b), c(cc, d)]
}

#[test]
fn transport_concatenation_and_homotopy() {
    let r = curved_flat_form();
    assert!(r.is_foliation());
    let b = NumericBinding::new();
    let (p, q, s) = (pt(0.0, 0.0, 0.0, 0.0), pt(0.7, 0.2, -0.3, 0.5), pt(1.1, -0.4, 0.4, 0.1));
    let tol = 1e-10;
    let t = |w: Vec<[Complex64; 2]>| holonomy_transport(&r, &Path { waypoints: w }, &b, tol).unwrap().mobius;
    let whole = t(vec![p, q, s]);
    let parts = t(vec![q, s]).compose(&t(vec![p, q]));
    assert!(whole.distance(&parts) <= 2.0 * tol * whole.norm().max(1.0) * 10.0);
    let direct = t(vec![p, s]);
    assert!(whole.approx_eq(&direct, 1e-9));
}
