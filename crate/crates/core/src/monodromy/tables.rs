//! Literal monodromy table entries and the table verification driver.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::holonomy::{generator_monodromy, HolonomyResult};
use super::mobius::Mobius;
use crate::surfaces::{build_surface, DeckGenerator, Family, ParamValue, Params, SurfaceModel, Variant};

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub mobius: Mobius,
    pub text: String,
    /// Frame changes specific to the row (the torus conjugator `C`).
    #[serde(skip)]
    pub frames: Vec<Mobius>,
}

fn entry(mobius: Mobius, text: &str) -> TableEntry {
    TableEntry { mobius, text: text.to_string(), frames: Vec::new() }
}

fn index_of(label: &str) -> Option<usize> {
    label.trim_start_matches(|c: char| c.is_alphabetic()).parse().ok()
}

/// The table entry for generator `g` of `s`, as printed in the catalog.
pub fn table_entry(s: &SurfaceModel, g: &DeckGenerator) -> Option<TableEntry> {
    let v = |n: &str| s.value(n);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let label = g.label.as_str();
    match (s.family, s.variant) {
        (Family::Torus, Variant::TorusType(kind)) => {
            let i = index_of(label)?;
            let (k, l) = (v(&format!("k{}", i)), v(&format!("l{}", i)));
            let e = v("e");
            let (shift, text) = match kind {
                1 => {
                    let mut t = entry(Mobius::scaling((v("a") * k + v("b") * l).exp()), "z exp(a k_i + b l_i)");
                    t.frames.push(frame(s));
                    return Some(t);
                }
                2 => (k + v("c") * l, "k_i + c l_i"),
                _ => (l, "l_i"),
            };
            let mut t = if e.norm() == 0.0 {
                entry(Mobius::translation(-v("g") / v("f") * shift), &format!("z - (g/f)({})", text))
            } else {
                entry(Mobius::translation(-e * shift), &format!("z - e({})", text))
            };
            t.frames.push(frame(s));
            if e.norm() != 0.0 {
                t.frames.push(leaf_chart(s));
            }
            Some(t)
        }
        (Family::Kodaira, _) => match label {
            "g3" => Some(entry(Mobius::translation(-v("a") - v("c")), "z - a - c")),
            "g4" => Some(entry(Mobius::translation(-v("b") - v("c") * v("tau2")), "z - b - c tau_2")),
            _ => Some(entry(Mobius::identity(), "id (not among the generators f_1, f_2)")),
        },
        (Family::HopfPrimary | Family::HopfSecondary, Variant::HopfRow(row)) => match (label, row) {
            ("g", 1) => Some(entry(Mobius::from_coeffs(v("b"), v("lambda"), zero, v("a")), "(zb + lambda)/a")),
            ("g", 2) => Some(entry(Mobius::scaling(v("b") / v("a")), "zb/a")),
            ("g", _) => Some(entry(Mobius::scaling(one / v("b")), "z/b")),
            ("e", 1 | 2) => Some(entry(Mobius::scaling(v("eps2") / v("eps1")), "z eps_2/eps_1")),
            ("e", _) => Some(entry(Mobius::scaling(one / v("eps2")), "z/eps_2")),
            _ => None,
        },
        (Family::InoueSM, _) => match label {
            "gamma0" => Some(entry(Mobius::scaling(v("beta") / v("alpha")), "(beta/alpha) z")),
            _ => Some(entry(Mobius::identity(), "id (not among the generators)")),
        },
        (Family::InoueSPlus, _) => match label {
            "gamma0" => Some(entry(Mobius::scaling(one / v("alpha")), "z/alpha")),
            "gamma1" | "gamma2" => {
                let b = v(&format!("b{}", index_of(label)?));
                Some(entry(Mobius::from_coeffs(one, zero, b, one), "z/(1 + b_i z)"))
            }
            _ => Some(entry(Mobius::identity(), "id (not among the generators)")),
        },
        _ => None,
    }
}

/// Action of the torus conjugator `C` on the fiber coordinate.
fn frame(s: &SurfaceModel) -> Mobius {
    let c = [[s.value("e"), s.value("f")], [s.value("g"), s.value("h")]];
    Mobius::from_linear(&c)
}

/// The chart `v ↦ z` with `v = det C/(g − e z)`, in which the nilpotent torus
/// foliations translate.
fn leaf_chart(s: &SurfaceModel) -> Mobius {
    let (e, f, g, h) = (s.value("e"), s.value("f"), s.value("g"), s.value("h"));
    let det = e * h - f * g;
    let zero = Complex64::new(0.0, 0.0);
    Mobius::from_coeffs(g, -det, e, zero)
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub family: Family,
    pub variant: Variant,
    pub instance: String,
    /// The induced Riccati foliation of the instance.
    pub foliation: String,
    pub result: HolonomyResult,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub seed: u64,
    pub rows: Vec<TableRow>,
    pub errors: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.rows.iter().all(|r| r.passed)
    }
}

fn cx(z: Complex64) -> ParamValue {
    ParamValue::Complex(z)
}

fn int(k: i64) -> ParamValue {
    cx(Complex64::new(k as f64, 0.0))
}

fn rc(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(-3.0..3.0))
}

fn params(ps: Vec<(&str, ParamValue)>) -> Params {
    ps.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Parameter draws covering every table row.
pub fn table_instances(seed: u64, draws: usize) -> Vec<(Family, Params)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for kind in 1..=3 {
        for d in 0..draws {
            let (mut e, f, g, h) = (rc(&mut rng), rc(&mut rng), rc(&mut rng), rc(&mut rng));
            // one draw per type takes the `e = 0` branch of the table
            if d == 0 && kind > 1 {
                e = Complex64::new(0.0, 0.0);
            }
            if (e * h - f * g).norm() < 0.2 {
                e += Complex64::new(1.0, 0.0);
            }
            let ps = vec![
                ("type", int(kind)),
                ("a", cx(rc(&mut rng))),
                ("b", cx(rc(&mut rng))),
                ("c", cx(rc(&mut rng))),
                ("e", cx(e)),
                ("f", cx(f)),
                ("g", cx(g)),
                ("h", cx(h)),
            ];
            out.push((Family::Torus, params(ps)));
        }
    }
    for _ in 0..draws {
        let eh = rc(&mut rng);
        let ps = vec![
            ("tau1", cx(Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5)))),
            ("tau2", cx(Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5)))),
            ("a", cx(rc(&mut rng))),
            ("m", int(rng.gen_range(1..=3))),
            ("c", cx(rc(&mut rng))),
            ("e", cx(eh)),
            ("h", cx(eh)),
        ];
        out.push((Family::Kodaira, params(ps)));
    }
    for secondary in [false, true] {
        let family = if secondary { Family::HopfSecondary } else { Family::HopfPrimary };
        for _ in 0..draws {
            let b = polar(&mut rng, 0.3, 0.9);
            let roots = |k1: i64, k2: i64| vec![("l", int(5)), ("k1", int(k1)), ("k2", int(k2))];
            // λ ≠ 0, m = 1 forces a = b (and ε₁ = ε₂)
            let mut row1 = vec![("a", cx(b)), ("b", cx(b)), ("lambda", cx(rc(&mut rng)))];
            // λ = 0, a ≠ b²
            let mut a2 = b * polar(&mut rng, 0.3, 0.99);
            if (a2 - b * b).norm() < 1e-3 {
                a2 *= 0.9;
            }
            let mut row2 = vec![("a", cx(a2)), ("b", cx(b))];
            // λ = 0, resonant
            let mut row3 = vec![("a", cx(b * b)), ("b", cx(b)), ("c", cx(rc(&mut rng)))];
            if secondary {
                row1.extend(roots(1, 1));
                row2.extend(roots(1, 1));
                row3.extend(roots(2, 1));
            }
            for r in [row1, row2, row3] {
                out.push((family, params(r)));
            }
        }
    }
    out.push((Family::InoueSM, Params::new()));
    out.push((Family::InoueSPlus, Params::new()));
    out
}

fn describe(ps: &Params) -> String {
    ps.iter()
        .map(|(k, v)| match v {
            ParamValue::Complex(z) if z.im == 0.0 => format!("{}={}", k, z.re),
            ParamValue::Complex(z) => format!("{}={}{:+}i", k, z.re, z.im),
            ParamValue::Matrix(m) => format!("{}={:?}", k, m),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs every generator of every instance and compares with the tables.
pub fn verify_instances(instances: &[(Family, Params)], seed: u64, tol: f64) -> TableReport {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (family, ps) in instances {
        let s = match build_surface(*family, ps) {
            Ok(s) => s,
            Err(e) => {
                errors.push(format!("{} [{}]: {}", family, describe(ps), e));
                continue;
            }
        };
        let foliation = s.connection.form.to_string();
        for g in &s.generators {
            match generator_monodromy(&s, g, tol) {
                Ok(result) => rows.push(TableRow {
                    family: *family,
                    variant: s.variant,
                    instance: describe(ps),
                    foliation: foliation.clone(),
                    passed: result.passed(),
                    result,
                }),
                Err(e) => errors.push(format!("{} [{}] {}: {}", family, describe(ps), g.label, e)),
            }
        }
    }
    TableReport { seed, rows, errors }
}

pub fn verify_tables(seed: u64, draws: usize, tol: f64) -> TableReport {
    verify_instances(&table_instances(seed, draws), seed, tol)
}
