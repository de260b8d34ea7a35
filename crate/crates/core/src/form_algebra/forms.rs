//! One-forms, two-forms and 2×2 matrices of them on a chart with
//! coordinates `(x, y)`.

use std::fmt;

use serde::ser::SerializeStruct;

use super::coeff::Coeff;
use super::rational::RationalExpr;

/// `cx dx + cy dy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OneForm {
    pub cx: RationalExpr,
    pub cy: RationalExpr,
}

/// `cxy dx∧dy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwoForm {
    pub cxy: RationalExpr,
}

impl OneForm {
    pub fn new(cx: RationalExpr, cy: RationalExpr) -> Self {
        OneForm { cx, cy }
    }

    pub fn zero() -> Self {
        OneForm::default()
    }

    pub fn dx() -> Self {
        OneForm::new(RationalExpr::one(), RationalExpr::zero())
    }

    pub fn dy() -> Self {
        OneForm::new(RationalExpr::zero(), RationalExpr::one())
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_zero() && self.cy.is_zero()
    }

    pub fn add(&self, o: &OneForm) -> OneForm {
        OneForm::new(self.cx.add(&o.cx), self.cy.add(&o.cy))
    }

    pub fn sub(&self, o: &OneForm) -> OneForm {
        OneForm::new(self.cx.sub(&o.cx), self.cy.sub(&o.cy))
    }

    pub fn neg(&self) -> OneForm {
        OneForm::new(self.cx.neg(), self.cy.neg())
    }

    pub fn mul(&self, f: &RationalExpr) -> OneForm {
        OneForm::new(self.cx.mul(f), self.cy.mul(f))
    }

    pub fn scale(&self, c: &Coeff) -> OneForm {
        OneForm::new(self.cx.scale(c), self.cy.scale(c))
    }

    /// Contraction with the tangent vector `(vx, vy)`.
    pub fn apply(&self, vx: &RationalExpr, vy: &RationalExpr) -> RationalExpr {
        self.cx.mul(vx).add(&self.cy.mul(vy))
    }
}

impl TwoForm {
    pub fn new(cxy: RationalExpr) -> Self {
        TwoForm { cxy }
    }

    pub fn zero() -> Self {
        TwoForm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.cxy.is_zero()
    }

    pub fn add(&self, o: &TwoForm) -> TwoForm {
        TwoForm::new(self.cxy.add(&o.cxy))
    }

    pub fn sub(&self, o: &TwoForm) -> TwoForm {
        TwoForm::new(self.cxy.sub(&o.cxy))
    }

    pub fn neg(&self) -> TwoForm {
        TwoForm::new(self.cxy.neg())
    }

    pub fn mul(&self, f: &RationalExpr) -> TwoForm {
        TwoForm::new(self.cxy.mul(f))
    }

    pub fn scale(&self, c: &Coeff) -> TwoForm {
        TwoForm::new(self.cxy.scale(c))
    }
}

pub fn d_scalar(f: &RationalExpr) -> OneForm {
    OneForm::new(f.partial_x(), f.partial_y())
}

pub fn d_oneform(w: &OneForm) -> TwoForm {
    TwoForm::new(w.cy.partial_x().sub(&w.cx.partial_y()))
}

pub fn wedge(a: &OneForm, b: &OneForm) -> TwoForm {
    TwoForm::new(a.cx.mul(&b.cy).sub(&a.cy.mul(&b.cx)))
}

/// 2×2 matrix of one-forms, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MatrixOneForm {
    pub e: [[OneForm; 2]; 2],
}

/// 2×2 matrix of two-forms, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MatrixTwoForm {
    pub e: [[TwoForm; 2]; 2],
}

/// 2×2 matrix of scalar expressions, row-major.
pub type ScalarMatrix = [[RationalExpr; 2]; 2];

pub fn scalar_identity() -> ScalarMatrix {
    [
        [RationalExpr::one(), RationalExpr::zero()],
        [RationalExpr::zero(), RationalExpr::one()],
    ]
}

pub fn scalar_mat_mul(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let f = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

pub fn scalar_det(a: &ScalarMatrix) -> RationalExpr {
    a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]))
}

/// `None` when the determinant is identically zero.
pub fn scalar_inverse(a: &ScalarMatrix) -> Option<ScalarMatrix> {
    let det = scalar_det(a);
    let inv = det.inv().ok()?;
    Some([
        [a[1][1].mul(&inv), a[0][1].neg().mul(&inv)],
        [a[1][0].neg().mul(&inv), a[0][0].mul(&inv)],
    ])
}

impl MatrixOneForm {
    pub fn new(e: [[OneForm; 2]; 2]) -> Self {
        MatrixOneForm { e }
    }

    pub fn zero() -> Self {
        MatrixOneForm::default()
    }

    /// `m1 dx + m2 dy`.
    pub fn from_components(m1: &ScalarMatrix, m2: &ScalarMatrix) -> Self {
        let f = |i: usize, j: usize| OneForm::new(m1[i][j].clone(), m2[i][j].clone());
        MatrixOneForm::new([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
    }

    /// `(A1, A2)` with `θ = A1 dx + A2 dy`.
    pub fn components(&self) -> (ScalarMatrix, ScalarMatrix) {
        let g = |i: usize, j: usize, x: bool| {
            if x { self.e[i][j].cx.clone() } else { self.e[i][j].cy.clone() }
        };
        (
            [[g(0, 0, true), g(0, 1, true)], [g(1, 0, true), g(1, 1, true)]],
            [[g(0, 0, false), g(0, 1, false)], [g(1, 0, false), g(1, 1, false)]],
        )
    }

    /// `f · I` for a one-form `f`.
    pub fn scalar(f: &OneForm) -> Self {
        MatrixOneForm::new([[f.clone(), OneForm::zero()], [OneForm::zero(), f.clone()]])
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(OneForm::is_zero)
    }

    pub fn map(&self, f: impl Fn(&OneForm) -> OneForm) -> Self {
        MatrixOneForm::new([
            [f(&self.e[0][0]), f(&self.e[0][1])],
            [f(&self.e[1][0]), f(&self.e[1][1])],
        ])
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&OneForm, &OneForm) -> OneForm) -> Self {
        MatrixOneForm::new([
            [f(&self.e[0][0], &o.e[0][0]), f(&self.e[0][1], &o.e[0][1])],
            [f(&self.e[1][0], &o.e[1][0]), f(&self.e[1][1], &o.e[1][1])],
        ])
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, OneForm::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, OneForm::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(OneForm::neg)
    }

    pub fn trace(&self) -> OneForm {
        self.e[0][0].add(&self.e[1][1])
    }

    /// `S · θ` with a scalar matrix on the left.
    pub fn left_mul(&self, s: &ScalarMatrix) -> Self {
        let f = |i: usize, j: usize| self.e[0][j].mul(&s[i][0]).add(&self.e[1][j].mul(&s[i][1]));
        MatrixOneForm::new([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
    }

    /// `θ · S` with a scalar matrix on the right.
    pub fn right_mul(&self, s: &ScalarMatrix) -> Self {
        let f = |i: usize, j: usize| self.e[i][0].mul(&s[0][j]).add(&self.e[i][1].mul(&s[1][j]));
        MatrixOneForm::new([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
    }

    /// Entry-wise `d` of a scalar matrix.
    pub fn d_of(s: &ScalarMatrix) -> Self {
        MatrixOneForm::new([
            [d_scalar(&s[0][0]), d_scalar(&s[0][1])],
            [d_scalar(&s[1][0]), d_scalar(&s[1][1])],
        ])
    }

    pub fn d(&self) -> MatrixTwoForm {
        MatrixTwoForm::new([
            [d_oneform(&self.e[0][0]), d_oneform(&self.e[0][1])],
            [d_oneform(&self.e[1][0]), d_oneform(&self.e[1][1])],
        ])
    }
}

pub fn mat_wedge(a: &MatrixOneForm, b: &MatrixOneForm) -> MatrixTwoForm {
    let f = |i: usize, j: usize| wedge(&a.e[i][0], &b.e[0][j]).add(&wedge(&a.e[i][1], &b.e[1][j]));
    MatrixTwoForm::new([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
}

impl MatrixTwoForm {
    pub fn new(e: [[TwoForm; 2]; 2]) -> Self {
        MatrixTwoForm { e }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(TwoForm::is_zero)
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&TwoForm, &TwoForm) -> TwoForm) -> Self {
        MatrixTwoForm::new([
            [f(&self.e[0][0], &o.e[0][0]), f(&self.e[0][1], &o.e[0][1])],
            [f(&self.e[1][0], &o.e[1][0]), f(&self.e[1][1], &o.e[1][1])],
        ])
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, TwoForm::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, TwoForm::sub)
    }

    pub fn trace(&self) -> TwoForm {
        self.e[0][0].add(&self.e[1][1])
    }

    pub fn scalar(f: &TwoForm) -> Self {
        MatrixTwoForm::new([[f.clone(), TwoForm::zero()], [TwoForm::zero(), f.clone()]])
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &RationalExpr, basis: &str, first: &mut bool) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    if !*first {
        write!(f, " + ")?;
    }
    *first = false;
    if c.is_one() {
        write!(f, "{}", basis)
    } else if c.numer().len() == 1 && c.is_polynomial() {
        write!(f, "{}*{}", c, basis)
    } else {
        write!(f, "({})*{}", c, basis)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_term(f, &self.cx, "dx", &mut first)?;
        fmt_term(f, &self.cy, "dy", &mut first)?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_term(f, &self.cxy, "dx^dy", &mut first)?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for OneForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OneForm", 2)?;
        st.serialize_field("dx", &self.cx)?;
        st.serialize_field("dy", &self.cy)?;
        st.end()
    }
}

impl serde::Serialize for TwoForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TwoForm", 1)?;
        st.serialize_field("dxdy", &self.cxy)?;
        st.end()
    }
}

impl serde::Serialize for MatrixOneForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.e.serialize(s)
    }
}

impl serde::Serialize for MatrixTwoForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.e.serialize(s)
    }
}
