//! Canonical rational functions: elements of the differential field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::atom::{Atom, AtomKind, Var};
use super::coeff::Coeff;
use super::gcd::gcd;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded lex.
/// Two expressions are equal iff their canonical forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalExpr {
    num: Poly,
    den: Poly,
}

impl Default for RationalExpr {
    fn default() -> Self {
        RationalExpr::zero()
    }
}

impl RationalExpr {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalExpr::zero();
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return RationalExpr { num: num.scale(&inv), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        }
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalExpr { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RationalExpr { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RationalExpr { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalExpr::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalExpr { num: p, den: Poly::one() }
    }

    pub fn constant(c: Coeff) -> Self {
        RationalExpr::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RationalExpr::constant(Coeff::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RationalExpr::constant(Coeff::from_ratio(n, d))
    }

    pub fn i() -> Self {
        RationalExpr::constant(Coeff::i())
    }

    pub fn x() -> Self {
        RationalExpr::from_poly(Poly::var(Var::X))
    }

    pub fn y() -> Self {
        RationalExpr::from_poly(Poly::var(Var::Y))
    }

    pub fn var(v: Var) -> Self {
        RationalExpr::from_poly(Poly::var(v))
    }

    pub fn atom(a: Atom) -> Self {
        RationalExpr::var(Var::atom(a))
    }

    pub fn param(name: &str) -> Self {
        RationalExpr::atom(Atom::param(name))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// A Gaussian-rational number (no variables or atoms at all).
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn atoms(&self) -> Vec<Atom> {
        self.vars()
            .into_iter()
            .filter_map(|v| v.as_atom().cloned())
            .collect()
    }

    pub fn depends_on(&self, v: &Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Only parameters appear (no base variables, no function atoms).
    pub fn is_parametric_constant(&self) -> bool {
        self.vars()
            .iter()
            .all(|v| matches!(v, Var::Atom(a) if a.is_param()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalExpr::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return RationalExpr::normalized(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return RationalExpr::normalized(o.num.add(&self.num.mul(&o.den)), o.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        let den = self.den.mul(&d1);
        if num.is_zero() {
            return RationalExpr::zero();
        }
        if g.is_one() {
            return RationalExpr::normalized(num, den);
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            RationalExpr::normalized(num, den)
        } else {
            RationalExpr::normalized(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    pub fn neg(&self) -> Self {
        RationalExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RationalExpr::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalExpr::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RationalExpr::normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return RationalExpr::zero();
        }
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalExpr::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RationalExpr { num: self.num.pow(e), den: self.den.pow(e) })
    }

    /// Formal partial derivative treating `v` as an independent indeterminate.
    pub fn partial_formal(&self, v: &Var) -> Self {
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return RationalExpr::reduce(dn, self.den.clone());
        }
        quotient_rule(&self.num, &dn, &self.den, &dd)
    }

    /// Total derivative in the base direction `dir` (`Var::X` or `Var::Y`),
    /// applying each atom's derivative rule by the chain rule.
    pub fn partial(&self, dir: &Var) -> Self {
        debug_assert!(dir.is_base());
        let dn = poly_total_partial(&self.num, dir);
        if self.den.is_one() {
            return dn;
        }
        let dd = poly_total_partial(&self.den, dir);
        if dn.den.is_one() && dd.den.is_one() {
            return quotient_rule(&self.num, &dn.num, &self.den, &dd.num);
        }
        let den = RationalExpr::from_poly(self.den.clone());
        let num = RationalExpr::from_poly(self.num.clone());
        // (n' d - n d') / d^2
        let top = dn.mul(&den).sub(&num.mul(&dd));
        top.div(&den.mul(&den)).expect("nonzero denominator")
    }

    pub fn partial_x(&self) -> Self {
        self.partial(&Var::X)
    }

    pub fn partial_y(&self) -> Self {
        self.partial(&Var::Y)
    }

    /// Simultaneous substitution of indeterminates.
    pub fn substitute(&self, subs: &BTreeMap<Var, RationalExpr>) -> Result<Self> {
        let n = substitute_poly(&self.num, subs);
        let d = substitute_poly(&self.den, subs);
        n.div(&d)
    }
}

/// `(n'd − nd')/d²` for coprime `n`, `d`. With `g = gcd(d, d')` the quotient
/// is `(n'd₁ − n e₁)/(d d₁)`, `d₁ = d/g`, `e₁ = d'/g`; the numerator is coprime
/// to `d₁`, so only `g` can share factors with it.
fn quotient_rule(n: &Poly, dn: &Poly, d: &Poly, dd: &Poly) -> RationalExpr {
    if dd.is_zero() {
        return RationalExpr::reduce(dn.clone(), d.clone());
    }
    let g = gcd(d, dd);
    let d1 = d.div_exact(&g).expect("gcd divides");
    let e1 = dd.div_exact(&g).expect("gcd divides");
    let num = dn.mul(&d1).sub(&n.mul(&e1));
    if num.is_zero() {
        return RationalExpr::zero();
    }
    let den = d.mul(&d1);
    if g.is_one() {
        return RationalExpr::normalized(num, den);
    }
    let h = gcd(&num, &g);
    if h.is_one() {
        RationalExpr::normalized(num, den)
    } else {
        RationalExpr::normalized(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
    }
}

/// `∂v/∂dir` for a single indeterminate.
pub(crate) fn var_derivative(v: &Var, dir: &Var) -> RationalExpr {
    match v {
        Var::X => if *dir == Var::X { RationalExpr::one() } else { RationalExpr::zero() },
        Var::Y => if *dir == Var::Y { RationalExpr::one() } else { RationalExpr::zero() },
        Var::Atom(a) => match a.kind() {
            AtomKind::Param => RationalExpr::zero(),
            AtomKind::FnX { order } => {
                if *dir == Var::X {
                    RationalExpr::atom(a.with_kind(AtomKind::FnX { order: order + 1 }))
                } else {
                    RationalExpr::zero()
                }
            }
            AtomKind::FnY { order } => {
                if *dir == Var::Y {
                    RationalExpr::atom(a.with_kind(AtomKind::FnY { order: order + 1 }))
                } else {
                    RationalExpr::zero()
                }
            }
            AtomKind::FnXY { dx, dy } => {
                let k = if *dir == Var::X {
                    AtomKind::FnXY { dx: dx + 1, dy: *dy }
                } else {
                    AtomKind::FnXY { dx: *dx, dy: dy + 1 }
                };
                RationalExpr::atom(a.with_kind(k))
            }
            AtomKind::Exp(p) => {
                let dp = p.partial(dir);
                RationalExpr::var(v.clone()).mul(&dp)
            }
        },
    }
}

fn poly_total_partial(p: &Poly, dir: &Var) -> RationalExpr {
    let mut acc = RationalExpr::zero();
    for v in p.vars() {
        let dv = var_derivative(&v, dir);
        if dv.is_zero() {
            continue;
        }
        let pv = RationalExpr::from_poly(p.partial(&v));
        acc = acc.add(&pv.mul(&dv));
    }
    acc
}

fn substitute_poly(p: &Poly, subs: &BTreeMap<Var, RationalExpr>) -> RationalExpr {
    let used: Vec<(&Var, &RationalExpr, u32)> =
        subs.iter().filter(|(v, _)| p.contains_var(v)).map(|(v, s)| (v, s, p.degree_in(v))).collect();
    if used.is_empty() {
        return RationalExpr::from_poly(p.clone());
    }
    // Common denominator Π d_v^{deg_v p}; each term carries n_v^e d_v^{deg − e}.
    let mut powers: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
    let mut factor = |v: &Var, s: &RationalExpr, e: u32, deg: u32| -> Poly {
        powers
            .entry((v.clone(), e))
            .or_insert_with(|| s.num.pow(e).mul(&s.den.pow(deg - e)))
            .clone()
    };
    let mut num = Poly::zero();
    for (m, c) in p.terms() {
        let mut kept = super::poly::Monomial::one();
        let mut term = Poly::term(c.clone(), super::poly::Monomial::one());
        let mut seen = Vec::with_capacity(used.len());
        for (v, e) in m.factors() {
            match used.iter().find(|u| u.0 == v) {
                Some(&(v, s, deg)) => {
                    term = term.mul(&factor(v, s, *e, deg));
                    seen.push(v);
                }
                None => kept = kept.mul(&super::poly::Monomial::var(v.clone(), *e)),
            }
        }
        for &(v, s, deg) in used.iter().filter(|u| !seen.contains(&u.0)) {
            term = term.mul(&factor(v, s, 0, deg));
        }
        num = num.add(&term.mul(&Poly::term(Coeff::one(), kept)));
    }
    let den = used.iter().fold(Poly::one(), |d, (_, s, deg)| d.mul(&s.den.pow(*deg)));
    RationalExpr::reduce(num, den)
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = self.num.to_string();
            if self.num.len() == 1 && !n.starts_with('-') {
                write!(f, "{}/({})", n, self.den)
            } else {
                write!(f, "({})/({})", n, self.den)
            }
        }
    }
}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::add(self, o)
    }
}

impl Sub for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::sub(self, o)
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::mul(self, o)
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::neg(self)
    }
}

impl From<i64> for RationalExpr {
    fn from(n: i64) -> Self {
        RationalExpr::int(n)
    }
}

impl serde::Serialize for RationalExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
