//! Multivariate polynomial GCD over ℚ(i) by recursive primitive
//! pseudo-remainder sequences.

use std::collections::{BTreeMap, BTreeSet};

use super::atom::Var;
use super::coeff::{mul_mod, pow_mod, Coeff};
use super::poly::{Monomial, Poly};

/// Monic GCD (leading coefficient 1 under graded lex). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    // Pull out common monomial factors first; what remains has no monomial content.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_exact(&Poly::term(Coeff::one(), ma)).unwrap();
    let b = b.div_exact(&Poly::term(Coeff::one(), mb)).unwrap();
    let g = gcd_no_content(&a, &b);
    g.mul(&Poly::term(Coeff::one(), mg)).monic()
}

fn monomial_gcd(m: &Poly, other: &Poly) -> Poly {
    let (mm, _) = m.leading().unwrap();
    let g = other.monomial_content().gcd(mm);
    Poly::term(Coeff::one(), g)
}

fn gcd_no_content(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    // A variable present in only one argument cannot occur in the gcd:
    // replace that argument by its content with respect to the variable.
    if let Some(v) = va.iter().find(|v| !vb.contains(v)) {
        let c = content_in(a, v);
        return gcd(&c, b);
    }
    if let Some(v) = vb.iter().find(|v| !va.contains(v)) {
        let c = content_in(b, v);
        return gcd(a, &c);
    }
    if coprime_by_evaluation(a, b, &va) {
        return Poly::one();
    }
    // Main variable: the one with the smallest joint degree keeps the PRS short.
    let v = va
        .iter()
        .min_by_key(|v| a.degree_in(v) + b.degree_in(v))
        .cloned()
        .unwrap();
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, &v);
    c.mul(&g).monic()
}

/// Prime `≡ 1 (mod 4)` for the modular coprimality test, and a square root of `−1`.
const PRIME: u64 = 1_000_000_009;
const SQRT_M1: u64 = 569_522_298;

/// Dense image in `𝔽_p[v]` with every other variable evaluated at `at`.
fn specialize_mod(p: &Poly, keep: &Var, at: &BTreeMap<Var, u64>) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(keep) as usize + 1];
    for (m, c) in p.terms() {
        let mut c = c.mod_prime(PRIME, SQRT_M1)?;
        let mut e_keep = 0;
        for (v, e) in m.factors() {
            if v == keep {
                e_keep = *e as usize;
            } else {
                c = mul_mod(c, pow_mod(at[v], u64::from(*e), PRIME), PRIME);
            }
        }
        out[e_keep] = (out[e_keep] + c) % PRIME;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the gcd of two dense polynomials over `𝔽_p`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a ← a mod b
        let inv = pow_mod(*b.last().unwrap(), PRIME - 2, PRIME);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, PRIME);
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[shift + k] = (a[shift + k] + PRIME - mul_mod(f, *bk, PRIME)) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for `gcd(a, b) = 1`: for each variable `v`, the images in
/// `𝔽_p[v]` at a point keeping the leading coefficients in `v` nonzero are
/// coprime, so the gcd has degree 0 in `v`.
fn coprime_by_evaluation(a: &Poly, b: &Poly, vars: &BTreeSet<Var>) -> bool {
    let at: BTreeMap<Var, u64> = vars.iter().enumerate().map(|(k, v)| (v.clone(), 7919 * (k as u64 + 1) + 13)).collect();
    vars.iter().all(|v| {
        let (Some(sa), Some(sb)) = (specialize_mod(a, v, &at), specialize_mod(b, v, &at)) else {
            return false;
        };
        if sa.last() == Some(&0) || sb.last() == Some(&0) {
            return false;
        }
        gcd_degree_mod(sa, sb) == 0
    })
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: &Var) -> Poly {
    let cs = p.coefficients_in(v);
    let mut it = cs.values();
    let Some(first) = it.next() else { return Poly::zero() };
    let mut g = first.monic();
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, c);
    }
    g
}

fn primitive_part(p: &Poly, v: &Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

fn lc_in(cs: &BTreeMap<u32, Poly>) -> (u32, Poly) {
    let (d, c) = cs.iter().next_back().unwrap();
    (*d, c.clone())
}

/// Pseudo-remainder of `a` by `b` in `v`.
fn prem(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let bcs = b.coefficients_in(v);
    let (db, lb) = lc_in(&bcs);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let rcs = r.coefficients_in(v);
        let (dr, lr) = lc_in(&rcs);
        if dr < db {
            return r;
        }
        let shift = Poly::term(Coeff::one(), Monomial::var(v.clone(), dr - db));
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
    }
}

/// GCD of two polynomials primitive in `v`; the result is primitive in `v`.
fn primitive_prs(a: Poly, b: Poly, v: &Var) -> Poly {
    let (mut p, mut q) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if q.is_zero() {
            return primitive_part(&p, v);
        }
        if q.degree_in(v) == 0 {
            return Poly::one();
        }
        let r = prem(&p, &q, v);
        let r = primitive_part(&r, v).monic();
        p = q;
        q = r;
    }
}
