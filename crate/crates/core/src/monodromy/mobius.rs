//! Möbius transformations `z ↦ (pz + q)/(rz + s)` as det-normalized matrices.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

pub type CMat = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Tolerance on `τ = tr²` for the parabolic and elliptic tests.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Largest finite order detected for elliptic elements.
pub const MAX_FINITE_ORDER: u32 = 64;

pub fn mat_mul(a: &CMat, b: &CMat) -> CMat {
    let f = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

pub fn mat_det(a: &CMat) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// `exp(A)` for trace-free `A`: `cosh μ I + (sinh μ/μ) A` with `μ² = −det A`.
pub fn expm_tracefree(a: &CMat) -> CMat {
    let mu = (-mat_det(a)).sqrt();
    let (ch, sh) = if mu.norm() < 1e-6 {
        let m2 = mu * mu;
        (ONE + m2 / 2.0 + m2 * m2 / 24.0, ONE + m2 / 6.0 + m2 * m2 / 120.0)
    } else {
        (mu.cosh(), mu.sinh() / mu)
    };
    [[ch + sh * a[0][0], sh * a[0][1]], [sh * a[1][0], ch + sh * a[1][1]]]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Mobius {
    pub m: CMat,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MobiusClass {
    Identity,
    /// `order` is `None` for an irrational (or order > K) rotation.
    Elliptic { order: Option<u32> },
    Parabolic,
    Loxodromic,
}

impl MobiusClass {
    /// Parabolic and loxodromic elements have infinite order.
    pub fn infinite_order(&self) -> bool {
        matches!(self, MobiusClass::Parabolic | MobiusClass::Loxodromic)
    }
}

impl fmt::Display for MobiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobiusClass::Identity => f.write_str("identity"),
            MobiusClass::Elliptic { order: Some(k) } => write!(f, "elliptic(order {})", k),
            MobiusClass::Elliptic { order: None } => f.write_str("elliptic(irrational rotation)"),
            MobiusClass::Parabolic => f.write_str("parabolic"),
            MobiusClass::Loxodromic => f.write_str("loxodromic"),
        }
    }
}

impl Mobius {
    /// Normalizes `m` to determinant 1. Panics on a singular matrix.
    pub fn new(m: CMat) -> Self {
        Mobius::try_new(m).expect("singular Mobius matrix")
    }

    pub fn try_new(m: CMat) -> Option<Self> {
        let d = mat_det(&m);
        let scale = m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
        if !(d.norm() > 1e-300 && d.norm() > 1e-14 * scale) || !d.is_finite() {
            return None;
        }
        let s = d.sqrt();
        Some(Mobius { m: [[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]] })
    }

    pub fn from_coeffs(p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> Self {
        Mobius::new([[p, q], [r, s]])
    }

    pub fn identity() -> Self {
        Mobius { m: [[ONE, ZERO], [ZERO, ONE]] }
    }

    /// `z ↦ λz`.
    pub fn scaling(lambda: Complex64) -> Self {
        Mobius::from_coeffs(lambda, ZERO, ZERO, ONE)
    }

    /// `z ↦ z + t`.
    pub fn translation(t: Complex64) -> Self {
        Mobius::from_coeffs(ONE, t, ZERO, ONE)
    }

    /// Action of a linear map `G` of `(z₁, z₂)` on `z = z₂/z₁`.
    pub fn from_linear(g: &CMat) -> Self {
        Mobius::new([[g[1][1], g[1][0]], [g[0][1], g[0][0]]])
    }

    pub fn det(&self) -> Complex64 {
        mat_det(&self.m)
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// `τ = tr²` of the normalized matrix, a conjugacy invariant.
    pub fn trace_sq(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Mobius) -> Mobius {
        Mobius::new(mat_mul(&self.m, &g.m))
    }

    /// `self ∘ g`, or `None` when the product is numerically singular.
    pub fn try_compose(&self, g: &Mobius) -> Option<Mobius> {
        Mobius::try_new(mat_mul(&self.m, &g.m))
    }

    pub fn inverse(&self) -> Mobius {
        let m = &self.m;
        Mobius { m: [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]] }
    }

    pub fn pow(&self, k: i32) -> Mobius {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = Mobius::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Mobius) -> Mobius {
        h.compose(self).compose(&h.inverse())
    }

    /// Image of `z`; `None` stands for `∞`.
    pub fn apply(&self, z: Option<Complex64>) -> Option<Complex64> {
        let [[p, q], [r, s]] = self.m;
        let (num, den) = match z {
            Some(z) => (p * z + q, r * z + s),
            None => (p, r),
        };
        if den.norm() <= 1e-300 {
            None
        } else {
            Some(num / den)
        }
    }

    fn frob(a: &CMat, b: &CMat, sign: f64) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += (a[i][j] - b[i][j] * sign).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Frobenius distance of normalized matrices, minimized over the sign.
    pub fn distance(&self, other: &Mobius) -> f64 {
        Mobius::frob(&self.m, &other.m, 1.0).min(Mobius::frob(&self.m, &other.m, -1.0))
    }

    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Projective equality with relative tolerance `tol`.
    pub fn approx_eq(&self, other: &Mobius, tol: f64) -> bool {
        self.distance(other) <= tol * self.norm().max(other.norm())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Mobius::identity(), tol)
    }

    /// Eigenvalue ratio `λ₁/λ₂` with `|λ₁| ≥ |λ₂|`; 1 for parabolic and identity.
    pub fn multiplier(&self) -> Complex64 {
        let t = self.trace();
        let disc = (t * t - 4.0).sqrt();
        let (l1, l2) = ((t + disc) / 2.0, (t - disc) / 2.0);
        if l1.norm() >= l2.norm() {
            l1 / l2
        } else {
            l2 / l1
        }
    }

    pub fn classify(&self) -> MobiusClass {
        self.classify_with(MAX_FINITE_ORDER)
    }

    pub fn classify_with(&self, max_order: u32) -> MobiusClass {
        if self.is_identity(1e-10) {
            return MobiusClass::Identity;
        }
        let tau = self.trace_sq();
        if (tau - 4.0).norm() < CLASSIFY_TOL {
            return MobiusClass::Parabolic;
        }
        if tau.im.abs() < CLASSIFY_TOL && tau.re >= -CLASSIFY_TOL && tau.re < 4.0 {
            // multiplier e^{iφ}, tr² = 4cos²(φ/2)
            let phi = self.multiplier().arg();
            let order = (1..=max_order).find(|&k| {
                let turns = phi * k as f64 / (2.0 * PI);
                (turns - turns.round()).abs() < CLASSIFY_TOL
            });
            return MobiusClass::Elliptic { order };
        }
        MobiusClass::Loxodromic
    }

    /// Fixed points; `None` is `∞`.
    pub fn fixed_points(&self) -> Vec<Option<Complex64>> {
        let [[p, q], [r, s]] = self.m;
        if r.norm() < 1e-14 {
            // ∞ is fixed; the other one is q/(s − p) unless parabolic
            let mut out = vec![None];
            if (s - p).norm() > 1e-14 {
                out.push(Some(q / (s - p)));
            }
            return out;
        }
        let disc = ((p - s) * (p - s) + r * q * 4.0).sqrt();
        let z1 = (p - s + disc) / (r * 2.0);
        let z2 = (p - s - disc) / (r * 2.0);
        if (z1 - z2).norm() < 1e-12 * (1.0 + z1.norm()) {
            vec![Some(z1)]
        } else {
            vec![Some(z1), Some(z2)]
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |z: Complex64| {
            if z.im.abs() < 1e-12 {
                format!("{:.6}", z.re)
            } else {
                format!("({:.6}{:+.6}i)", z.re, z.im)
            }
        };
        let [[p, q], [r, s]] = self.m;
        write!(f, "z -> ({}*z + {})/({}*z + {})", c(p), c(q), c(r), c(s))
    }
}

/// Columns `(v₁, v₂)` with `m = P·J·P⁻¹`, `J` diagonal or a Jordan block
/// `[[λ, 1], [0, λ]]`; eigenvalues sorted by modulus, then argument.
fn jordan_basis(m: &CMat, parabolic: bool) -> (CMat, [Complex64; 2], bool) {
    let t = m[0][0] + m[1][1];
    let disc = (t * t - mat_det(m) * 4.0).sqrt();
    let mut l = [(t + disc) / 2.0, (t - disc) / 2.0];
    if (l[0].norm(), l[0].arg()) < (l[1].norm(), l[1].arg()) {
        l.swap(0, 1);
    }
    let eig = |lam: Complex64| -> [Complex64; 2] {
        let a = [m[0][1], lam - m[0][0]];
        let b = [lam - m[1][1], m[1][0]];
        let na = a[0].norm() + a[1].norm();
        let nb = b[0].norm() + b[1].norm();
        let v = if na >= nb { a } else { b };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    if !parabolic {
        let (v1, v2) = (eig(l[0]), eig(l[1]));
        ([[v1[0], v2[0]], [v1[1], v2[1]]], l, false)
    } else {
        // N = m − λI is nilpotent; v₂ with N v₂ ≠ 0, v₁ = N v₂
        let lam = t / 2.0;
        let n = [[m[0][0] - lam, m[0][1]], [m[1][0], m[1][1] - lam]];
        let col0 = n[0][0].norm() + n[1][0].norm();
        let col1 = n[0][1].norm() + n[1][1].norm();
        let (v2, v1) = if col0 >= col1 { ([ONE, ZERO], [n[0][0], n[1][0]]) } else { ([ZERO, ONE], [n[0][1], n[1][1]]) };
        ([[v1[0], v2[0]], [v1[1], v2[1]]], [lam, lam], true)
    }
}

/// `h` with `h ∘ f ∘ h⁻¹ = g`, verified to relative tolerance `tol`.
pub fn conjugator(f: &Mobius, g: &Mobius, tol: f64) -> Option<Mobius> {
    if (f.trace_sq() - g.trace_sq()).norm() > tol * (1.0 + f.trace_sq().norm()) {
        return None;
    }
    if f.is_identity(tol) || g.is_identity(tol) {
        return if f.approx_eq(g, tol) { Some(Mobius::identity()) } else { None };
    }
    // align the sign of the normalized representatives
    let gm = if (f.trace() - g.trace()).norm() <= (f.trace() + g.trace()).norm() {
        g.m
    } else {
        g.m.map(|r| r.map(|z| -z))
    };
    let parabolic = f.classify() == MobiusClass::Parabolic;
    if parabolic != (g.classify() == MobiusClass::Parabolic) {
        return None;
    }
    let (pf, lf, jf) = jordan_basis(&f.m, parabolic);
    let (pg, lg, _) = jordan_basis(&gm, parabolic);
    let mut cands = vec![];
    if let (Some(a), Some(b)) = (Mobius::try_new(pg), Mobius::try_new(pf)) {
        cands.push(a.compose(&b.inverse()));
    }
    if !jf && (lf[0] - lg[1]).norm() < (lf[0] - lg[0]).norm() {
        // eigenvalue order flipped by rounding
        let pg2 = [[pg[0][1], pg[0][0]], [pg[1][1], pg[1][0]]];
        if let (Some(a), Some(b)) = (Mobius::try_new(pg2), Mobius::try_new(pf)) {
            cands.insert(0, a.compose(&b.inverse()));
        }
    }
    cands.into_iter().find(|h| f.conjugate_by(h).approx_eq(g, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn compose_examples() {
        let t = Mobius::translation(ONE);
        let s = Mobius::scaling(c(2.0, 0.0));
        assert!(t.compose(&t).approx_eq(&Mobius::translation(c(2.0, 0.0)), 1e-14));
        assert!(s.compose(&t).approx_eq(&Mobius::from_coeffs(c(2.0, 0.0), c(2.0, 0.0), ZERO, ONE), 1e-14));
        assert!(s.compose(&s.inverse()).is_identity(1e-14));
        assert!((s.det() - ONE).norm() < 1e-12);
        assert_eq!(s.compose(&t).apply(Some(ONE)), Some(c(4.0, 0.0)));
        assert_eq!(s.apply(None), None);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(Mobius::identity().classify(), MobiusClass::Identity);
        assert_eq!(Mobius::translation(ONE).classify(), MobiusClass::Parabolic);
        assert_eq!(Mobius::scaling(c(0.0, 1.0)).classify(), MobiusClass::Elliptic { order: Some(4) });
        assert_eq!(Mobius::scaling(c(-1.0, 0.0)).classify(), MobiusClass::Elliptic { order: Some(2) });
        assert_eq!(Mobius::scaling(c(3.0, 0.0)).classify(), MobiusClass::Loxodromic);
        assert_eq!(Mobius::scaling(Complex64::from_polar(1.0, 1.0)).classify(), MobiusClass::Elliptic { order: None });
        // −I is the identity projectively
        assert_eq!(Mobius::new([[-ONE, ZERO], [ZERO, -ONE]]).classify(), MobiusClass::Identity);
    }

    #[test]
    fn linear_action_on_ratio() {
        // (z₁, z₂) ↦ (z₁, z₂ + 3 z₁) sends z to z + 3
        let g = [[ONE, ZERO], [c(3.0, 0.0), ONE]];
        assert!(Mobius::from_linear(&g).approx_eq(&Mobius::translation(c(3.0, 0.0)), 1e-14));
        let d = [[c(2.0, 0.0), ZERO], [ZERO, c(5.0, 0.0)]];
        assert!(Mobius::from_linear(&d).approx_eq(&Mobius::scaling(c(2.5, 0.0)), 1e-14));
    }

    #[test]
    fn conjugators() {
        let f = Mobius::translation(c(2.0, 1.0));
        let g = Mobius::from_coeffs(ONE, ZERO, c(-2.0, -1.0), ONE);
        let h = conjugator(&f, &g, 1e-10).unwrap();
        assert!(f.conjugate_by(&h).approx_eq(&g, 1e-10));
        let a = Mobius::scaling(c(0.3, 0.4));
        let b = a.conjugate_by(&Mobius::from_coeffs(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(3.0, 0.0)));
        let h = conjugator(&a, &b, 1e-10).unwrap();
        assert!(a.conjugate_by(&h).approx_eq(&b, 1e-10));
        assert!(conjugator(&a, &Mobius::scaling(c(0.3, 0.5)), 1e-10).is_none());
        assert!(conjugator(&f, &Mobius::identity(), 1e-10).is_none());
    }

    #[test]
    fn matrix_exponential() {
        let n = [[ZERO, c(2.0, 0.0)], [ZERO, ZERO]];
        let e = expm_tracefree(&n);
        assert_eq!(e, [[ONE, c(2.0, 0.0)], [ZERO, ONE]]);
        let d = [[c(-0.5, 0.0), ZERO], [ZERO, c(0.5, 0.0)]];
        let e = expm_tracefree(&d);
        assert!((e[0][0] - c((-0.5f64).exp(), 0.0)).norm() < 1e-14);
        assert!((e[1][1] - c(0.5f64.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn fixed_points_and_multiplier() {
        let f = Mobius::scaling(c(4.0, 0.0));
        assert!((f.multiplier() - c(4.0, 0.0)).norm() < 1e-12);
        assert_eq!(f.fixed_points().len(), 2);
        assert_eq!(Mobius::translation(ONE).fixed_points(), vec![None]);
    }
}
