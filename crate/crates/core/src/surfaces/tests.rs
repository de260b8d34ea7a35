use super::*;
use crate::form_algebra::parse_expr;

fn cx(re: f64, im: f64) -> ParamValue {
    ParamValue::Complex(Complex64::new(re, im))
}

fn build(f: Family, ps: &[(&str, ParamValue)]) -> Result<SurfaceModel> {
    let params: Params = ps.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    build_surface(f, &params)
}

#[test]
fn defaults_pass_structure_check() {
    for f in Family::ALL {
        let s = build(f, &[]).unwrap();
        assert!(s.cover_domain.contains(&s.basepoint));
        let r = structure_check(&s).unwrap();
        assert!(r.passed(), "{}: {:?}", f, r);
    }
}

#[test]
fn torus_types_and_conjugation_table() {
    for t in 1..=3 {
        let s = build(Family::Torus, &[("type", cx(t as f64, 0.0)), ("f", cx(2.0, 0.0)), ("g", cx(0.0, 1.0))]).unwrap();
        assert_eq!(s.variant, Variant::TorusType(t));
        assert!(structure_check(&s).unwrap().passed());
    }
    let s = build(Family::Torus, &[]).unwrap();
    let w = &s.connection.form;
    let e = |t: &str| parse_expr(t).unwrap();
    let ab = OneFormPair::new(e("a"), e("b"));
    let det = "(e*h - f*g)";
    assert_eq!(w.gamma, ab.times(&e(&format!("-g*h/{}", det))));
    assert_eq!(w.delta, ab.times(&e(&format!("(g*f + e*h)/{}", det))));
    assert_eq!(w.eta, ab.times(&e(&format!("-e*f/{}", det))));
}

struct OneFormPair(crate::form_algebra::OneForm);

impl OneFormPair {
    fn new(a: RationalExpr, b: RationalExpr) -> Self {
        OneFormPair(crate::form_algebra::OneForm::new(a, b))
    }
    fn times(&self, f: &RationalExpr) -> crate::form_algebra::OneForm {
        self.0.mul(f)
    }
}

#[test]
fn torus_validation() {
    assert!(build(Family::Torus, &[("type", cx(4.0, 0.0))]).is_err());
    assert!(build(Family::Torus, &[("e", cx(0.0, 0.0)), ("h", cx(0.0, 0.0))]).is_err());
    assert!(build(Family::Torus, &[("k2", cx(2.0, 0.0))]).is_err());
    assert!(build(Family::Torus, &[("zz", cx(2.0, 0.0))]).is_err());
}

#[test]
fn kodaira_off_diagonal_trace_is_not_flat() {
    let s = build(Family::Kodaira, &[("e", cx(1.0, 0.0))]).unwrap();
    let r = structure_check(&s).unwrap();
    assert!(!r.flat);
    assert!(r.descent.iter().all(|d| d.descends));
    let s = build(Family::Kodaira, &[("e", cx(0.5, 0.0)), ("h", cx(0.5, 0.0))]).unwrap();
    assert!(structure_check(&s).unwrap().passed());
    assert!(build(Family::Kodaira, &[("b", cx(7.0, 0.0))]).is_err());
    assert!(build(Family::Kodaira, &[("tau1", cx(1.0, 0.0))]).is_err());
}

#[test]
fn hopf_rows_and_constraints() {
    let row = |ps: &[(&str, ParamValue)]| build(Family::HopfPrimary, ps).map(|s| s.variant);
    assert_eq!(row(&[("a", cx(0.5, 0.0)), ("lambda", cx(1.0, 0.0))]).unwrap(), Variant::HopfRow(1));
    assert_eq!(row(&[("a", cx(0.3, 0.0)), ("c", cx(0.0, 0.0))]).unwrap(), Variant::HopfRow(2));
    assert_eq!(row(&[]).unwrap(), Variant::HopfRow(3));
    assert!(row(&[("a", cx(0.3, 0.0)), ("lambda", cx(1.0, 0.0))]).is_err());
    assert!(row(&[("a", cx(0.25, 0.0)), ("m", cx(2.0, 0.0)), ("lambda", cx(1.0, 0.0))]).is_err());
    assert!(row(&[("a", cx(0.9, 0.0))]).is_err());
    assert!(row(&[("a", cx(0.3, 0.0)), ("c", cx(1.0, 0.0))]).is_err());
    for ps in [vec![("a", cx(0.5, 0.0)), ("lambda", cx(1.0, 0.0))], vec![("a", cx(0.3, 0.0)), ("c", cx(0.0, 0.0))]] {
        assert!(structure_check(&build(Family::HopfPrimary, &ps).unwrap()).unwrap().passed());
    }
}

#[test]
fn hopf_secondary_roots() {
    let s = build(Family::HopfSecondary, &[("l", cx(3.0, 0.0)), ("k1", cx(2.0, 0.0)), ("k2", cx(1.0, 0.0))]).unwrap();
    assert_eq!(s.variant, Variant::HopfRow(3));
    assert!(structure_check(&s).unwrap().passed());
    assert!(build(Family::HopfSecondary, &[("l", cx(4.0, 0.0)), ("k1", cx(2.0, 0.0))]).is_err());
    let s = build(
        Family::HopfSecondary,
        &[("l", cx(5.0, 0.0)), ("k1", cx(1.0, 0.0)), ("k2", cx(1.0, 0.0)), ("c", cx(0.0, 0.0))],
    )
    .unwrap();
    assert_eq!(s.variant, Variant::HopfRow(2));
    assert!(structure_check(&s).unwrap().passed());
}

#[test]
fn inoue_sm_eigen_relations() {
    let s = build(Family::InoueSM, &[]).unwrap();
    let m = &s.matrices["M"];
    let alpha = s.value("alpha");
    let beta = s.value("beta");
    for i in 0..3 {
        let mut ra = -alpha * s.value(&format!("a{}", i + 1));
        let mut rb = -beta * s.value(&format!("b{}", i + 1));
        for j in 0..3 {
            ra += s.value(&format!("a{}", j + 1)) * m[i][j] as f64;
            rb += s.value(&format!("b{}", j + 1)) * m[i][j] as f64;
        }
        assert!(ra.norm() < 1e-12 && rb.norm() < 1e-12);
    }
    assert!(alpha.re > 1.0 && beta.im > 0.0);
    assert!(((alpha * beta * beta.conj()).re - 1.0).abs() < 1e-12);
    let bad = ParamValue::Matrix(vec![vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    assert!(build(Family::InoueSM, &[("M", bad)]).is_err());
}

#[test]
fn inoue_splus_commutator() {
    let s = build(Family::InoueSPlus, &[("N", ParamValue::Matrix(vec![vec![3, 1], vec![2, 1]])), ("r", cx(2.0, 0.0)), ("p", cx(1.0, 0.0))]).unwrap();
    let b = s.binding();
    let g = |l: &str, p: Point| s.generator(l).unwrap().apply(&p, &b).unwrap();
    let p0 = [Complex64::new(0.3, 1.2), Complex64::new(-0.4, 0.1)];
    let lhs = g("gamma1", g("gamma2", p0));
    let mut rhs = g("gamma2", g("gamma1", p0));
    for _ in 0..2 {
        rhs = g("gamma3", rhs);
    }
    assert!((lhs[0] - rhs[0]).norm() < 1e-12 && (lhs[1] - rhs[1]).norm() < 1e-12);
    assert!(structure_check(&s).unwrap().passed());
}

#[test]
fn elliptic_numeric_descent_detects_bad_connection() {
    let s = build(Family::EllipticGenusGe2, &[]).unwrap();
    let r = structure_check(&s).unwrap();
    assert!(r.descent.iter().all(|d| d.numeric_only && d.descends));
    // a constant shear does not descend along a log shift
    let bad = RiccatiConnection::new(MatrixOneForm::new([
        [crate::form_algebra::OneForm::zero(), crate::form_algebra::OneForm::dy()],
        [crate::form_algebra::OneForm::zero(), crate::form_algebra::OneForm::zero()],
    ]));
    let err = descends_numeric(&bad, &s.generators[0], &s.binding(), &[s.basepoint]).unwrap();
    assert!(err > 1e-3);
}

#[test]
fn hopf_path_avoids_origin() {
    let s = build(Family::HopfPrimary, &[("a", cx(-0.5, 0.0)), ("b", cx(-0.5, 0.0))]).unwrap();
    let p = generator_path(&s, &s.generators[0]).unwrap();
    assert!(p.waypoints.len() > 2);
    assert_eq!(p.end(), [Complex64::new(-0.5, 0.0), Complex64::new(-0.5, 0.0)]);
}
