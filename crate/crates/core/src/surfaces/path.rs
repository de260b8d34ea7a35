//! Paths in the cover from the basepoint to its image under a generator.

use num_complex::Complex64;
use serde::Serialize;

use super::{CoverDomain, DeckGenerator, Point, SurfaceModel};
use crate::error::{Error, Result};

/// Piecewise-linear path through `waypoints`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Path {
    pub waypoints: Vec<Point>,
}

impl Path {
    pub fn start(&self) -> Point {
        self.waypoints[0]
    }

    pub fn end(&self) -> Point {
        *self.waypoints.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }
}

const MAX_DETOURS: usize = 20;
/// Segments closer than this fraction of the endpoint norm to `0` get a detour.
const ORIGIN_CLEARANCE: f64 = 1e-6;

fn to_r4(p: &Point) -> [f64; 4] {
    [p[0].re, p[0].im, p[1].re, p[1].im]
}

fn from_r4(v: [f64; 4]) -> Point {
    [Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])]
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64; 4]) -> f64 {
    dot(a, a).sqrt()
}

/// Distance from the segment `[p, q]` to the origin of `ℝ⁴`.
fn origin_distance(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    let v: Vec<f64> = (0..4).map(|i| q[i] - p[i]).collect();
    let v = [v[0], v[1], v[2], v[3]];
    let vv = dot(&v, &v);
    let t = if vv == 0.0 { 0.0 } else { (-dot(p, &v) / vv).clamp(0.0, 1.0) };
    norm(&[p[0] + t * v[0], p[1] + t * v[1], p[2] + t * v[2], p[3] + t * v[3]])
}

/// Unit vector orthogonal to `v` and `w`.
fn orthogonal(v: &[f64; 4], w: &[f64; 4]) -> [f64; 4] {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    for u in [v, w] {
        let mut u = *u;
        for b in &basis {
            let c = dot(&u, b);
            (0..4).for_each(|i| u[i] -= c * b[i]);
        }
        let n = norm(&u);
        if n > 1e-12 {
            basis.push(u.map(|x| x / n));
        }
    }
    for k in 0..4 {
        let mut u = [0.0; 4];
        u[k] = 1.0;
        for b in &basis {
            let c = dot(&u, b);
            (0..4).for_each(|i| u[i] -= c * b[i]);
        }
        let n = norm(&u);
        if n > 1e-6 {
            return u.map(|x| x / n);
        }
    }
    unreachable!("R^4 has room for a third direction")
}

fn avoid_origin(p: Point, q: Point, depth: usize, out: &mut Vec<Point>) -> Result<()> {
    let (a, b) = (to_r4(&p), to_r4(&q));
    let scale = norm(&a).max(norm(&b));
    if origin_distance(&a, &b) >= ORIGIN_CLEARANCE * scale {
        out.push(q);
        return Ok(());
    }
    if depth == MAX_DETOURS {
        return Err(Error::PathNotFound("segment keeps meeting the origin".into()));
    }
    let v = [b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]];
    let u = orthogonal(&v, &a);
    let off = 0.5 * scale;
    let mid = from_r4([
        (a[0] + b[0]) / 2.0 + off * u[0],
        (a[1] + b[1]) / 2.0 + off * u[1],
        (a[2] + b[2]) / 2.0 + off * u[2],
        (a[3] + b[3]) / 2.0 + off * u[3],
    ]);
    avoid_origin(p, mid, depth + 1, out)?;
    avoid_origin(mid, q, depth + 1, out)
}

/// Path from the basepoint to `g(basepoint)` inside the cover domain.
pub fn generator_path(s: &SurfaceModel, g: &DeckGenerator) -> Result<Path> {
    let p = s.basepoint;
    let q = g.apply(&p, &s.binding())?;
    if !s.cover_domain.contains(&q) {
        return Err(Error::PathNotFound(format!("{} moves the basepoint out of the cover", g.label)));
    }
    let mut waypoints = vec![p];
    match s.cover_domain {
        // convex domains
        CoverDomain::C2 | CoverDomain::HxC | CoverDomain::CxH => waypoints.push(q),
        CoverDomain::C2MinusOrigin => avoid_origin(p, q, 0, &mut waypoints)?,
    }
    Ok(Path { waypoints })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn detour_around_origin() {
        let mut out = vec![[c(1.0), c(1.0)]];
        avoid_origin([c(1.0), c(1.0)], [c(-0.5), c(-0.5)], 0, &mut out).unwrap();
        assert!(out.len() > 2);
        for w in out.windows(2) {
            assert!(origin_distance(&to_r4(&w[0]), &to_r4(&w[1])) > 1e-3);
        }
        assert_eq!(*out.last().unwrap(), [c(-0.5), c(-0.5)]);
    }

    #[test]
    fn straight_when_clear() {
        let mut out = vec![[c(1.0), c(1.0)]];
        avoid_origin([c(1.0), c(1.0)], [c(0.5), c(0.5)], 0, &mut out).unwrap();
        assert_eq!(out.len(), 2);
    }
}
