//! Builders for each family.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3, Vector2};
use num_complex::Complex64;

use super::{ConnectionFamily, CoverDomain, DeckGenerator, Family, LogShift, SurfaceModel, Variant};
use crate::connections::{riccati_form_from_theta, RiccatiConnection};
use crate::error::{Error, Result};
use crate::form_algebra::{
    scalar_inverse, scalar_mat_mul, Atom, AtomContext, FnDecl, MatrixOneForm, OneForm, PolyMap, RationalExpr, ScalarMatrix,
    Var,
};

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Complex(Complex64),
    Matrix(Vec<Vec<i64>>),
}

pub type Params = BTreeMap<String, ParamValue>;

/// Relative tolerance for numeric parameter constraints.
const CONSTRAINT_TOL: f64 = 1e-12;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Reader<'a> {
    params: &'a Params,
    used: Vec<&'static str>,
}

impl<'a> Reader<'a> {
    fn complex(&mut self, name: &'static str, default: Complex64) -> Result<Complex64> {
        self.used.push(name);
        match self.params.get(name) {
            None => Ok(default),
            Some(ParamValue::Complex(z)) if z.re.is_finite() && z.im.is_finite() => Ok(*z),
            Some(_) => Err(invalid(format!("`{}` must be a finite complex number", name))),
        }
    }

    fn int(&mut self, name: &'static str, default: i64) -> Result<i64> {
        let z = self.complex(name, c(default as f64, 0.0))?;
        if z.im != 0.0 || z.re.fract() != 0.0 || z.re.abs() > 1e9 {
            return Err(invalid(format!("`{}` must be an integer", name)));
        }
        Ok(z.re as i64)
    }

    fn matrix(&mut self, name: &'static str, default: Vec<Vec<i64>>, n: usize) -> Result<Vec<Vec<i64>>> {
        self.used.push(name);
        let m = match self.params.get(name) {
            None => default,
            Some(ParamValue::Matrix(m)) => m.clone(),
            Some(_) => return Err(invalid(format!("`{}` must be an integer matrix", name))),
        };
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(invalid(format!("`{}` must be {}x{}", name, n, n)));
        }
        Ok(m)
    }

    fn finish(&self) -> Result<()> {
        for k in self.params.keys() {
            if !self.used.iter().any(|u| u == k) {
                return Err(invalid(format!("unknown parameter `{}`", k)));
            }
        }
        Ok(())
    }
}

fn p(name: &str) -> RationalExpr {
    RationalExpr::param(name)
}

fn x() -> RationalExpr {
    RationalExpr::x()
}

fn y() -> RationalExpr {
    RationalExpr::y()
}

fn zero() -> RationalExpr {
    RationalExpr::zero()
}

fn poly(label: &str, fx: RationalExpr, fy: RationalExpr) -> Result<DeckGenerator> {
    DeckGenerator::poly(label, PolyMap::new(fx, fy)?)
}

fn near(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= CONSTRAINT_TOL * (1.0 + a.norm().max(b.norm()))
}

fn family_from(theta: RiccatiConnection, reduced: RiccatiConnection, free: &[&str]) -> Result<ConnectionFamily> {
    let form = riccati_form_from_theta(&reduced)?;
    Ok(ConnectionFamily { theta, reduced, form, free_params: free.iter().map(|s| s.to_string()).collect() })
}

pub fn build_surface(family: Family, params: &Params) -> Result<SurfaceModel> {
    let mut r = Reader { params, used: Vec::new() };
    let model = match family {
        Family::Torus => torus(&mut r),
        Family::Kodaira => kodaira(&mut r),
        Family::HopfPrimary => hopf(&mut r, false),
        Family::HopfSecondary => hopf(&mut r, true),
        Family::InoueSM => inoue_sm(&mut r),
        Family::InoueSPlus => inoue_splus(&mut r),
        Family::EllipticGenusGe2 => elliptic(&mut r),
    }?;
    r.finish()?;
    debug_assert!(model.cover_domain.contains(&model.basepoint));
    Ok(model)
}

fn conj(cm: &ScalarMatrix, b: &ScalarMatrix) -> Result<ScalarMatrix> {
    let ci = scalar_inverse(cm).ok_or_else(|| invalid("det C = 0"))?;
    Ok(scalar_mat_mul(&scalar_mat_mul(cm, b), &ci))
}

/// Jordan pairs `(B1, B2)` of the three torus types.
pub(crate) fn torus_jordan_pair(kind: u8) -> (ScalarMatrix, ScalarMatrix) {
    let half = RationalExpr::ratio(1, 2);
    match kind {
        1 => (
            [[p("a").mul(&half).neg(), zero()], [zero(), p("a").mul(&half)]],
            [[p("b").mul(&half).neg(), zero()], [zero(), p("b").mul(&half)]],
        ),
        2 => ([[zero(), RationalExpr::one()], [zero(), zero()]], [[zero(), p("c")], [zero(), zero()]]),
        _ => ([[zero(), zero()], [zero(), zero()]], [[zero(), RationalExpr::one()], [zero(), zero()]]),
    }
}

fn torus(r: &mut Reader) -> Result<SurfaceModel> {
    let kind = r.int("type", 1)?;
    if !(1..=3).contains(&kind) {
        return Err(invalid("torus `type` must be 1, 2 or 3"));
    }
    let kind = kind as u8;
    let mut values = BTreeMap::new();
    let one = c(1.0, 0.0);
    let z0 = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    for (name, d) in [("a", one), ("b", c(2.0, 0.0)), ("c", c(5.0, 0.0)), ("e", one), ("f", z0), ("g", z0), ("h", one)] {
        values.insert(name.to_string(), r.complex(name, d)?);
    }
    let e = values["e"];
    let (f, g, h) = (values["f"], values["g"], values["h"]);
    if (e * h - f * g).norm() <= CONSTRAINT_TOL {
        return Err(invalid("conjugator C = [[e, f], [g, h]] must have det C != 0"));
    }
    const KS: [&str; 4] = ["k1", "k2", "k3", "k4"];
    const LS: [&str; 4] = ["l1", "l2", "l3", "l4"];
    let defaults = [(one, z0), (i, z0), (z0, one), (z0, i)];
    let mut lattice = Vec::new();
    for j in 0..4 {
        let k = r.complex(KS[j], defaults[j].0)?;
        let l = r.complex(LS[j], defaults[j].1)?;
        values.insert(KS[j].to_string(), k);
        values.insert(LS[j].to_string(), l);
        lattice.push([k.re, k.im, l.re, l.im]);
    }
    let m = nalgebra::Matrix4::from_fn(|a, b| lattice[a][b]);
    if m.determinant().abs() <= 1e-12 {
        return Err(invalid("lattice vectors (k_i, l_i) must be linearly independent over R"));
    }
    let generators = (0..4)
        .map(|j| poly(&format!("t{}", j + 1), x().add(&p(KS[j])), y().add(&p(LS[j]))))
        .collect::<Result<Vec<_>>>()?;
    let cm: ScalarMatrix = [[p("e"), p("f")], [p("g"), p("h")]];
    let (b1, b2) = torus_jordan_pair(kind);
    let theta = RiccatiConnection::new(MatrixOneForm::from_components(&conj(&cm, &b1)?, &conj(&cm, &b2)?));
    let free: &[&str] = match kind {
        1 => &["a", "b", "e", "f", "g", "h"],
        2 => &["c", "e", "f", "g", "h"],
        _ => &["e", "f", "g", "h"],
    };
    let connection = family_from(theta.clone(), theta, free)?;
    Ok(SurfaceModel {
        family: Family::Torus,
        variant: Variant::TorusType(kind),
        cover_domain: CoverDomain::C2,
        generators,
        values,
        matrices: BTreeMap::new(),
        connection,
        basepoint: [z0, z0],
    })
}

fn substitute_matrix(m: &MatrixOneForm, name: &str, by: &RationalExpr) -> Result<MatrixOneForm> {
    let mut subs = BTreeMap::new();
    subs.insert(Var::atom(Atom::param(name)), by.clone());
    let s = |e: &RationalExpr| e.substitute(&subs);
    let mut out = m.clone();
    for row in out.e.iter_mut() {
        for w in row.iter_mut() {
            *w = OneForm::new(s(&w.cx)?, s(&w.cy)?);
        }
    }
    Ok(out)
}

fn kodaira(r: &mut Reader) -> Result<SurfaceModel> {
    let tau1 = r.complex("tau1", c(0.0, 1.0))?;
    let tau2 = r.complex("tau2", c(0.0, 2.0))?;
    let a = r.complex("a", c(1.0, 0.0))?;
    let m = r.int("m", 1)?;
    if m < 1 {
        return Err(invalid("Kodaira `m` must be a positive integer"));
    }
    if tau1.im.abs() <= CONSTRAINT_TOL || tau2.im.abs() <= CONSTRAINT_TOL {
        return Err(invalid("tau1 and tau2 must have nonzero imaginary part"));
    }
    let b_derived = a * tau2 - tau1 * m as f64;
    let b = r.complex("b", b_derived)?;
    if !near(b, b_derived) {
        return Err(invalid("a*tau2 - b = m*tau1 violated"));
    }
    let e = r.complex("e", c(0.0, 0.0))?;
    let cc = r.complex("c", c(1.0, 0.0))?;
    let h = r.complex("h", c(0.0, 0.0))?;
    let mut values = BTreeMap::new();
    for (k, v) in [("tau1", tau1), ("tau2", tau2), ("a", a), ("b", b), ("e", e), ("c", cc), ("h", h)] {
        values.insert(k.to_string(), v);
    }
    values.insert("m".into(), c(m as f64, 0.0));
    let generators = vec![
        poly("g1", x(), y().add(&RationalExpr::one()))?,
        poly("g2", x(), y().add(&p("tau1")))?,
        poly("g3", x().add(&RationalExpr::one()), p("a").mul(&x()).add(&y()))?,
        poly("g4", x().add(&p("tau2")), p("b").mul(&x()).add(&y()))?,
    ];
    let theta = RiccatiConnection::new(MatrixOneForm::new([
        [OneForm::new(p("e"), zero()), OneForm::zero()],
        [OneForm::new(p("c"), zero()), OneForm::new(p("h"), zero())],
    ]))
    .theta
    .add(&MatrixOneForm::new([
        [OneForm::zero(), OneForm::zero()],
        [OneForm::new(zero(), p("e").sub(&p("h"))), OneForm::zero()],
    ]));
    let theta = RiccatiConnection::new(theta);
    // The displayed family is flat exactly on e = h.
    let reduced = if near(e, h) {
        RiccatiConnection::new(substitute_matrix(&theta.reduce().theta, "h", &p("e"))?)
    } else {
        theta.reduce()
    };
    let connection = family_from(theta, reduced, &["c", "e", "h"])?;
    Ok(SurfaceModel {
        family: Family::Kodaira,
        variant: Variant::Kodaira,
        cover_domain: CoverDomain::C2,
        generators,
        values,
        matrices: BTreeMap::new(),
        connection,
        basepoint: [c(0.0, 0.0), c(0.0, 0.0)],
    })
}

fn primitive_root(k: i64, l: i64) -> Result<Complex64> {
    if l < 1 {
        return Err(invalid("`l` must be a positive integer"));
    }
    if num_integer::gcd(k.rem_euclid(l), l) != 1 && l > 1 {
        return Err(invalid(format!("exp(2 pi i {}/{}) is not a primitive root of unity", k, l)));
    }
    Ok(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / l as f64))
}

fn hopf(r: &mut Reader, secondary: bool) -> Result<SurfaceModel> {
    let a = r.complex("a", c(0.25, 0.0))?;
    let b = r.complex("b", c(0.5, 0.0))?;
    let lambda = r.complex("lambda", c(0.0, 0.0))?;
    let m = r.int("m", 1)?;
    if m < 1 {
        return Err(invalid("`m` must be a positive integer"));
    }
    if !(a.norm() > 0.0 && a.norm() <= b.norm() * (1.0 + CONSTRAINT_TOL) && b.norm() < 1.0) {
        return Err(invalid("0 < |a| <= |b| < 1 violated"));
    }
    let lam0 = lambda.norm() <= CONSTRAINT_TOL;
    if !lam0 && !near(a, b.powi(m as i32)) {
        return Err(invalid("(a - b^m)*lambda = 0 violated"));
    }
    if !lam0 && m != 1 {
        return Err(invalid("lambda != 0 requires m = 1 (no table row for m >= 2)"));
    }
    let mut values = BTreeMap::new();
    for (k, v) in [("a", a), ("b", b), ("lambda", lambda)] {
        values.insert(k.to_string(), v);
    }
    values.insert("m".into(), c(m as f64, 0.0));

    let (mut eps1, mut eps2) = (c(1.0, 0.0), c(1.0, 0.0));
    if secondary {
        let l = r.int("l", 3)?;
        let k1 = r.int("k1", 2)?;
        let k2 = r.int("k2", 1)?;
        eps1 = primitive_root(k1, l)?;
        eps2 = primitive_root(k2, l)?;
        if !lam0 && !near(eps1, eps2.powi(m as i32)) {
            return Err(invalid("(eps1 - eps2^m)*lambda = 0 violated"));
        }
        values.insert("l".into(), c(l as f64, 0.0));
        values.insert("k1".into(), c(k1 as f64, 0.0));
        values.insert("k2".into(), c(k2 as f64, 0.0));
        values.insert("eps1".into(), eps1);
        values.insert("eps2".into(), eps2);
    }

    let a_res = near(a, b * b);
    let e_res = !secondary || near(eps1, eps2 * eps2);
    let row: u8 = if !lam0 {
        1
    } else if (secondary && e_res) || (!secondary && a_res) {
        3
    } else {
        2
    };
    // the quadratic term survives only when every generator is resonant
    let with_c = lam0 && a_res && e_res;
    let cc = r.complex("c", c(if with_c { 1.0 } else { 0.0 }, 0.0))?;
    values.insert("c".into(), cc);
    if !with_c && cc.norm() > 0.0 {
        return Err(invalid("c != 0 requires lambda = 0, a = b^2 (and eps1 = eps2^2)"));
    }
    let ym = y().pow(m as i32)?;
    let gx = if !lam0 {
        p("b").mul(&x()).add(&p("lambda").mul(&y()))
    } else if a_res {
        p("b").pow(2)?.mul(&x())
    } else {
        p("a").mul(&x())
    };
    let _ = ym;
    let mut generators = vec![poly("g", gx, p("b").mul(&y()))?];
    if secondary {
        let ex = if !lam0 {
            p("eps2").mul(&x())
        } else if e_res {
            p("eps2").pow(2)?.mul(&x())
        } else {
            p("eps1").mul(&x())
        };
        generators.push(poly("e", ex, p("eps2").mul(&y()))?);
    }
    let theta = if with_c {
        MatrixOneForm::new([[OneForm::zero(), OneForm::new(zero(), p("c"))], [OneForm::zero(), OneForm::zero()]])
    } else {
        MatrixOneForm::zero()
    };
    let theta = RiccatiConnection::new(theta);
    let free: &[&str] = if with_c { &["c"] } else { &[] };
    let connection = family_from(theta.clone(), theta, free)?;
    Ok(SurfaceModel {
        family: if secondary { Family::HopfSecondary } else { Family::HopfPrimary },
        variant: Variant::HopfRow(row),
        cover_domain: CoverDomain::C2MinusOrigin,
        generators,
        values,
        matrices: BTreeMap::new(),
        connection,
        basepoint: [c(1.0, 0.0), c(1.0, 0.0)],
    })
}

/// Null vector of a complex 3×3 matrix of rank 2, by cross products of rows.
fn null_vector3(m: &[[Complex64; 3]; 3]) -> [Complex64; 3] {
    let cross = |u: &[Complex64; 3], v: &[Complex64; 3]| {
        [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    };
    let norm = |v: &[Complex64; 3]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let cands = [cross(&m[0], &m[1]), cross(&m[0], &m[2]), cross(&m[1], &m[2])];
    *cands.iter().max_by(|u, v| norm(u).total_cmp(&norm(v))).unwrap()
}

fn det_int(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!(),
    }
}

/// Real eigenvalue `α > 1`, complex `β` (`Im β > 0`) and eigenvectors.
pub(crate) fn inoue_sm_eigendata(mm: &[Vec<i64>]) -> Result<(f64, Complex64, [f64; 3], [Complex64; 3])> {
    if det_int(mm) != 1 {
        return Err(invalid("M must lie in SL(3, Z)"));
    }
    let m = Matrix3::from_fn(|i, j| mm[i][j] as f64);
    let ev = m.complex_eigenvalues();
    let mut real = None;
    let mut cplx = None;
    for z in ev.iter() {
        if z.im.abs() < 1e-9 {
            real = Some(z.re);
        } else if z.im > 0.0 {
            cplx = Some(*z);
        }
    }
    let (alpha, beta) = match (real, cplx) {
        (Some(a), Some(b)) if a > 1.0 => (a, b),
        _ => return Err(invalid("M needs a real eigenvalue alpha > 1 and a non-real pair beta, conj(beta)")),
    };
    let shifted = |lam: Complex64| {
        let mut s = [[c(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = c(mm[i][j] as f64, 0.0) - if i == j { lam } else { c(0.0, 0.0) };
            }
        }
        s
    };
    let va = null_vector3(&shifted(c(alpha, 0.0)));
    let na = va.iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
    let sign = if va[0].re < 0.0 { -1.0 } else { 1.0 };
    let a = [sign * va[0].re / na, sign * va[1].re / na, sign * va[2].re / na];
    let vb = null_vector3(&shifted(beta));
    let piv = *vb.iter().max_by(|u, v| u.norm().total_cmp(&v.norm())).unwrap();
    let b = [vb[0] / piv, vb[1] / piv, vb[2] / piv];
    Ok((alpha, beta, a, b))
}

fn inoue_sm(r: &mut Reader) -> Result<SurfaceModel> {
    let mm = r.matrix("M", vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]], 3)?;
    let (alpha, beta, a, b) = inoue_sm_eigendata(&mm)?;
    let mut values = BTreeMap::new();
    values.insert("alpha".into(), c(alpha, 0.0));
    values.insert("beta".into(), beta);
    let mut generators = vec![poly("gamma0", p("alpha").mul(&x()), p("beta").mul(&y()))?];
    for i in 0..3 {
        let (an, bn) = (format!("a{}", i + 1), format!("b{}", i + 1));
        values.insert(an.clone(), c(a[i], 0.0));
        values.insert(bn.clone(), b[i]);
        generators.push(poly(&format!("gamma{}", i + 1), x().add(&p(&an)), y().add(&p(&bn)))?);
    }
    let mut matrices = BTreeMap::new();
    matrices.insert("M".to_string(), mm);
    let theta = RiccatiConnection::zero();
    Ok(SurfaceModel {
        family: Family::InoueSM,
        variant: Variant::InoueSM,
        cover_domain: CoverDomain::HxC,
        generators,
        values,
        matrices,
        connection: family_from(theta.clone(), theta, &[])?,
        basepoint: [c(0.0, 1.0), c(0.0, 0.0)],
    })
}

pub(crate) struct SPlusData {
    pub alpha: f64,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub shift: f64,
}

pub(crate) fn inoue_splus_data(nn: &[Vec<i64>], r: i64, p: i64, q: i64) -> Result<SPlusData> {
    if det_int(nn) != 1 {
        return Err(invalid("N must lie in SL(2, Z)"));
    }
    if r == 0 {
        return Err(invalid("r must be a nonzero integer"));
    }
    let tr = (nn[0][0] + nn[1][1]) as f64;
    if tr.abs() <= 2.0 {
        return Err(invalid("N must have real eigenvalues alpha > 1, 1/alpha"));
    }
    // α > 1 requires positive trace
    if tr < 0.0 {
        return Err(invalid("N must have a positive eigenvalue alpha > 1"));
    }
    let alpha = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
    let n = Matrix2::from_fn(|i, j| nn[i][j] as f64);
    let eig = |lam: f64| -> [f64; 2] {
        // (N − λ) v = 0: v = (n12, λ − n11) or (λ − n22, n21)
        let v1 = [n[(0, 1)], lam - n[(0, 0)]];
        let v2 = [lam - n[(1, 1)], n[(1, 0)]];
        let v = if v1[0].hypot(v1[1]) >= v2[0].hypot(v2[1]) { v1 } else { v2 };
        let s = v[0].hypot(v[1]);
        [v[0] / s, v[1] / s]
    };
    let a = eig(alpha);
    let b = eig(1.0 / alpha);
    let (n11, n12, n21, n22) = (nn[0][0] as f64, nn[0][1] as f64, nn[1][0] as f64, nn[1][1] as f64);
    let e_i = |ni1: f64, ni2: f64| {
        0.5 * ni1 * (ni1 - 1.0) * a[0] * b[0] + 0.5 * ni2 * (ni2 - 1.0) * a[1] * b[1] + ni1 * ni2 * b[0] * a[1]
    };
    let e = [e_i(n11, n12), e_i(n21, n22)];
    let k = (b[0] * a[1] - b[1] * a[0]) / r as f64;
    let rhs = Vector2::new(e[0] + k * p as f64, e[1] + k * q as f64);
    let lhs = Matrix2::identity() - n;
    let sol = lhs.lu().solve(&rhs).ok_or_else(|| invalid("I - N is singular"))?;
    Ok(SPlusData { alpha, a, b, c: [sol[0], sol[1]], shift: k })
}

fn inoue_splus(r: &mut Reader) -> Result<SurfaceModel> {
    let nn = r.matrix("N", vec![vec![2, 1], vec![1, 1]], 2)?;
    let rr = r.int("r", 1)?;
    let pp = r.int("p", 0)?;
    let qq = r.int("q", 0)?;
    let t = r.complex("t", c(1.0, 0.0))?;
    let d = inoue_splus_data(&nn, rr, pp, qq)?;
    let mut values = BTreeMap::new();
    values.insert("alpha".into(), c(d.alpha, 0.0));
    values.insert("t".into(), t);
    values.insert("s".into(), c(d.shift, 0.0));
    for (k, v) in [("r", rr), ("p", pp), ("q", qq)] {
        values.insert(k.into(), c(v as f64, 0.0));
    }
    let mut generators = vec![poly("gamma0", p("alpha").mul(&x()), y().add(&p("t")))?];
    for i in 0..2 {
        let (an, bn, cn) = (format!("a{}", i + 1), format!("b{}", i + 1), format!("c{}", i + 1));
        values.insert(an.clone(), c(d.a[i], 0.0));
        values.insert(bn.clone(), c(d.b[i], 0.0));
        values.insert(cn.clone(), c(d.c[i], 0.0));
        generators.push(poly(
            &format!("gamma{}", i + 1),
            x().add(&p(&an)),
            y().add(&p(&bn).mul(&x())).add(&p(&cn)),
        )?);
    }
    generators.push(poly("gamma3", x(), y().add(&p("s")))?);
    let mut matrices = BTreeMap::new();
    matrices.insert("N".to_string(), nn);
    let theta = RiccatiConnection::zero();
    Ok(SurfaceModel {
        family: Family::InoueSPlus,
        variant: Variant::InoueSPlus,
        cover_domain: CoverDomain::HxC,
        generators,
        values,
        matrices,
        connection: family_from(theta.clone(), theta, &[])?,
        basepoint: [c(0.0, 1.0), c(0.0, 0.0)],
    })
}

/// Atom context for the elliptic family: `f`, `h` are functions of `y`.
pub fn elliptic_context() -> AtomContext {
    AtomContext::new().with_fn("f", FnDecl::OfY).with_fn("h", FnDecl::OfY)
}

fn elliptic(r: &mut Reader) -> Result<SurfaceModel> {
    let g1 = r.matrix("gamma1", vec![vec![2, 1], vec![1, 1]], 2)?;
    let g2 = r.matrix("gamma2", vec![vec![3, 2], vec![1, 1]], 2)?;
    let mut generators = Vec::new();
    let mut matrices = BTreeMap::new();
    for (name, g) in [("gamma1", g1), ("gamma2", g2)] {
        if det_int(&g) != 1 {
            return Err(invalid(format!("{} must lie in SL(2, Z)", name)));
        }
        if g[1][0] == 0 && g[1][1] <= 0 {
            return Err(invalid(format!("{}: c y + d must stay off the branch cut", name)));
        }
        generators.push(DeckGenerator::numeric(
            name,
            LogShift { a: g[0][0] as f64, b: g[0][1] as f64, c: g[1][0] as f64, d: g[1][1] as f64 },
        ));
        matrices.insert(name.to_string(), g);
    }
    let ctx = elliptic_context();
    let fe = crate::form_algebra::parse_expr_in("f", &ctx)?;
    let he = crate::form_algebra::parse_expr_in("h", &ctx)?;
    let theta = RiccatiConnection::new(MatrixOneForm::new([
        [OneForm::dx(), OneForm::new(zero(), fe)],
        [OneForm::dy(), OneForm::new(RationalExpr::one(), he)],
    ]));
    let reduced = theta.reduce();
    Ok(SurfaceModel {
        family: Family::EllipticGenusGe2,
        variant: Variant::Elliptic,
        cover_domain: CoverDomain::CxH,
        generators,
        values: BTreeMap::new(),
        matrices,
        connection: family_from(theta, reduced, &["f", "h"])?,
        basepoint: [c(0.0, 0.0), c(0.0, 1.0)],
    })
}

