//! Random generators shared by the property and acceptance suites.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use riccati_core::connections::{AffineConnection, CoordinateChange, RiccatiConnection};
use riccati_core::form_algebra::{Atom, Coeff, CoordMap, MatrixOneForm, OneForm, RationalExpr, ScalarMatrix};

/// Small Gaussian-rational coefficient, mostly real.
pub fn coeff() -> impl Strategy<Value = Coeff> {
    (-4i64..=4, prop_oneof![3 => Just(0i64), 1 => -2i64..=2], 1i64..=3)
        .prop_map(|(re, im, d)| &Coeff::gaussian(re, im) * &Coeff::from_ratio(1, d))
}

fn monomial(c: Coeff, ex: u32, ey: u32, ea: u32) -> RationalExpr {
    let mut m = RationalExpr::constant(c);
    for _ in 0..ex {
        m = m.mul(&RationalExpr::x());
    }
    for _ in 0..ey {
        m = m.mul(&RationalExpr::y());
    }
    for _ in 0..ea {
        m = m.mul(&RationalExpr::param("a"));
    }
    m
}

/// Polynomial in `x`, `y` of total degree `≤ deg`, optionally in the parameter `a`.
pub fn poly(deg: u32, with_param: bool) -> impl Strategy<Value = RationalExpr> {
    let term = (coeff(), 0..=deg, 0..=deg, 0..=u32::from(with_param))
        .prop_filter("degree", move |(_, ex, ey, _)| ex + ey <= deg)
        .prop_map(|(c, ex, ey, ea)| monomial(c, ex, ey, ea));
    proptest::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(RationalExpr::zero(), |acc, t| acc.add(t)))
}

/// `p/q` with `q` a nonzero polynomial (constant term `1` plus higher terms).
pub fn rational(deg: u32) -> impl Strategy<Value = RationalExpr> {
    (poly(deg, true), poly(1, false), any::<bool>()).prop_map(|(p, q, polynomial)| {
        if polynomial {
            p
        } else {
            let q = RationalExpr::one().add(&q.mul(&RationalExpr::x().add(&RationalExpr::y())));
            p.div(&q).expect("nonzero denominator")
        }
    })
}

/// Rational expression possibly involving `exp(poly)` and `f(x)` atoms.
pub fn expr_with_atoms() -> impl Strategy<Value = RationalExpr> {
    (rational(2), poly(1, false), 0..3u8).prop_map(|(r, p, kind)| match kind {
        0 => r,
        1 => r.mul(&RationalExpr::atom(Atom::exp(p))),
        _ => r.add(&RationalExpr::atom(Atom::fn_of_x("f")).mul(&p)),
    })
}

pub fn oneform(deg: u32) -> impl Strategy<Value = OneForm> {
    (rational(deg), rational(deg)).prop_map(|(a, b)| OneForm::new(a, b))
}

pub fn poly_oneform(deg: u32) -> impl Strategy<Value = OneForm> {
    (poly(deg, false), poly(deg, false)).prop_map(|(a, b)| OneForm::new(a, b))
}

/// Reduced (trace-free) `θ` with polynomial coefficients of degree `≤ deg`.
pub fn reduced_theta(deg: u32) -> impl Strategy<Value = RiccatiConnection> {
    (poly_oneform(deg), poly_oneform(deg), poly_oneform(deg)).prop_map(|(a, b, c)| {
        RiccatiConnection::new(MatrixOneForm::new([[a.clone(), b], [c, a.neg()]]))
    })
}

/// Torsion-free affine connection: `Γⁱ₁₂ = Γⁱ₂₁`.
pub fn torsion_free_affine(deg: u32) -> impl Strategy<Value = AffineConnection> {
    proptest::collection::vec(poly(deg, true), 6).prop_map(|g| {
        // θ̃[i][j] = Γⁱ_{j1} dx + Γⁱ_{j2} dy
        let row = |a: &RationalExpr, s: &RationalExpr, b: &RationalExpr| {
            [OneForm::new(a.clone(), s.clone()), OneForm::new(s.clone(), b.clone())]
        };
        AffineConnection::new(MatrixOneForm::new([row(&g[0], &g[1], &g[2]), row(&g[3], &g[4], &g[5])]))
    })
}

/// Polynomial automorphism with polynomial inverse: a linear map composed
/// with two shears.
pub fn coordinate_change() -> impl Strategy<Value = CoordinateChange> {
    (poly(2, false), poly(2, false), 0..4u8).prop_map(|(p, q, lin)| {
        let (x, y) = (RationalExpr::x(), RationalExpr::y());
        let py = p.substitute(&[(riccati_core::form_algebra::Var::X, y.clone())].into_iter().collect()).unwrap();
        let qx = q.substitute(&[(riccati_core::form_algebra::Var::Y, x.clone())].into_iter().collect()).unwrap();
        // s1 = (x + p(y), y), s2 = (x, y + q(x))
        let s1 = CoordMap::new(x.add(&py), y.clone());
        let s1i = CoordMap::new(x.sub(&py), y.clone());
        let s2 = CoordMap::new(x.clone(), y.add(&qx));
        let s2i = CoordMap::new(x.clone(), y.sub(&qx));
        let (l, li) = match lin {
            0 => (CoordMap::identity(), CoordMap::identity()),
            1 => (CoordMap::new(y.clone(), x.clone()), CoordMap::new(y.clone(), x.clone())),
            2 => (
                CoordMap::new(x.scale(&Coeff::from_int(2)), y.scale(&Coeff::from_ratio(-1, 3))),
                CoordMap::new(x.scale(&Coeff::from_ratio(1, 2)), y.scale(&Coeff::from_int(-3))),
            ),
            _ => (CoordMap::new(x.add(&y), y.clone()), CoordMap::new(x.sub(&y), y.clone())),
        };
        // φ = l ∘ s2 ∘ s1, φ⁻¹ = s1⁻¹ ∘ s2⁻¹ ∘ l⁻¹
        let phi = l.compose(&s2.compose(&s1).unwrap()).unwrap();
        let psi = s1i.compose(&s2i.compose(&li).unwrap()).unwrap();
        CoordinateChange::with_inverse(phi, psi).expect("inverse pair")
    })
}

/// Flat reduced connection: the gauge transform `hθ₀h⁻¹ − dh h⁻¹` of a
/// constant commuting `θ₀ = diag(a, −a)dx + diag(b, −b)dy` by a unipotent
/// polynomial `h`.
pub fn flat_theta() -> impl Strategy<Value = RiccatiConnection> {
    (coeff(), coeff(), poly(2, false), poly(2, false)).prop_map(|(a, b, p, q)| {
        let (a, b) = (RationalExpr::constant(a), RationalExpr::constant(b));
        let z = RationalExpr::zero;
        let theta0 = MatrixOneForm::from_components(&[[a.clone(), z()], [z(), a.neg()]], &[[b.clone(), z()], [z(), b.neg()]]);
        // h = [[1, p], [0, 1]]·[[1, 0], [q, 1]]
        let one = RationalExpr::one;
        let h1: ScalarMatrix = [[one(), p.clone()], [z(), one()]];
        let h2: ScalarMatrix = [[one(), z()], [q.clone(), one()]];
        let h = riccati_core::form_algebra::scalar_mat_mul(&h1, &h2);
        let hinv = riccati_core::form_algebra::scalar_inverse(&h).expect("unimodular");
        let theta = theta0.left_mul(&h).right_mul(&hinv).sub(&MatrixOneForm::d_of(&h).right_mul(&hinv));
        RiccatiConnection::new(theta)
    })
}

/// Deterministic sampling of a strategy, for seeded suites.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[..8].copy_from_slice(&seed.to_le_bytes());
        let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &bytes);
        Sampler { runner: TestRunner::new_with_rng(Config::default(), rng) }
    }

    pub fn draw<S: Strategy>(&mut self, s: &S) -> S::Value {
        s.new_tree(&mut self.runner).expect("strategy generates").current()
    }
}
