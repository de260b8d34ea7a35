//! JSON surface descriptors and `key=value` parameter parsing.
//!
//! ```json
//! {"family": "hopf_primary", "params": {"a": 0.25, "b": [0.5, 0.0]}, "basepoint": [1, 0, 1, 0]}
//! ```

use num_complex::Complex64;
use serde_json::Value;

use super::catalog::{build_surface, ParamValue, Params};
use super::{Family, Point, SurfaceModel};
use crate::error::{Error, Result};
use crate::form_algebra::parse_expr;

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceDescriptor {
    pub family: Family,
    pub params: Params,
    pub basepoint: Option<Point>,
}

impl SurfaceDescriptor {
    pub fn new(family: Family) -> Self {
        SurfaceDescriptor { family, params: Params::new(), basepoint: None }
    }

    pub fn build(&self) -> Result<SurfaceModel> {
        let mut s = build_surface(self.family, &self.params)?;
        if let Some(p) = self.basepoint {
            if !s.cover_domain.contains(&p) {
                return Err(Error::InvalidParameters("basepoint lies outside the cover domain".into()));
            }
            s.basepoint = p;
        }
        Ok(s)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn int_matrix(v: &[Value]) -> Option<Vec<Vec<i64>>> {
    v.iter()
        .map(|row| row.as_array().and_then(|r| r.iter().map(Value::as_i64).collect::<Option<Vec<_>>>()))
        .collect()
}

fn json_value(name: &str, v: &Value) -> Result<ParamValue> {
    match v {
        Value::Number(n) => Ok(ParamValue::Complex(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0))),
        Value::String(s) => parse_param_value(s),
        Value::Array(a) if a.iter().all(Value::is_array) => {
            int_matrix(a).map(ParamValue::Matrix).ok_or_else(|| bad(format!("`{}`: expected an integer matrix", name)))
        }
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(ParamValue::Complex(Complex64::new(re, im))),
            _ => Err(bad(format!("`{}`: expected [re, im]", name))),
        },
        _ => Err(bad(format!("`{}`: unsupported value", name))),
    }
}

pub fn parse_descriptor(src: &str) -> Result<SurfaceDescriptor> {
    let v: Value = serde_json::from_str(src).map_err(|e| bad(format!("descriptor: {}", e)))?;
    let key = v.get("family").and_then(Value::as_str).ok_or_else(|| bad("descriptor needs a `family` string"))?;
    let family = Family::from_key(key).ok_or_else(|| bad(format!("unknown family `{}`", key)))?;
    let mut d = SurfaceDescriptor::new(family);
    if let Some(ps) = v.get("params") {
        let obj = ps.as_object().ok_or_else(|| bad("`params` must be an object"))?;
        for (k, val) in obj {
            d.params.insert(k.clone(), json_value(k, val)?);
        }
    }
    if let Some(bp) = v.get("basepoint") {
        let xs: Option<Vec<f64>> = bp.as_array().map(|a| a.iter().filter_map(Value::as_f64).collect());
        match xs.as_deref() {
            Some([a, b, c, e]) => d.basepoint = Some([Complex64::new(*a, *b), Complex64::new(*c, *e)]),
            _ => return Err(bad("`basepoint` must be [re x, im x, re y, im y]")),
        }
    }
    Ok(d)
}

/// Parses `1.5`, `0.5 + 0.2*i`, `-i/3` or an integer matrix `[[2,1],[1,1]]`.
pub fn parse_param_value(s: &str) -> Result<ParamValue> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| bad(format!("matrix `{}`: {}", t, e)))?;
        return v
            .as_array()
            .and_then(|a| int_matrix(a))
            .map(ParamValue::Matrix)
            .ok_or_else(|| bad(format!("`{}` is not an integer matrix", t)));
    }
    let e = parse_expr(t)?;
    let c = e.as_constant().ok_or_else(|| bad(format!("`{}` is not a numeric constant", t)))?;
    Ok(ParamValue::Complex(c.to_complex64()))
}

/// Parses `name=value`.
pub fn parse_param_assignment(s: &str) -> Result<(String, ParamValue)> {
    let (k, v) = s.split_once('=').ok_or_else(|| bad(format!("expected name=value, got `{}`", s)))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(bad("empty parameter name"));
    }
    Ok((k.to_string(), parse_param_value(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round() {
        let d = parse_descriptor(
            r#"{"family": "inoue_splus", "params": {"N": [[3,1],[2,1]], "t": [0.5, 1], "r": 2}, "basepoint": [0,2,1,0]}"#,
        )
        .unwrap();
        assert_eq!(d.family, Family::InoueSPlus);
        assert_eq!(d.params["N"], ParamValue::Matrix(vec![vec![3, 1], vec![2, 1]]));
        assert_eq!(d.params["t"], ParamValue::Complex(Complex64::new(0.5, 1.0)));
        let s = d.build().unwrap();
        assert_eq!(s.basepoint[0], Complex64::new(0.0, 2.0));
    }

    #[test]
    fn assignments() {
        let (k, v) = parse_param_assignment("lambda=1/2 + i/4").unwrap();
        assert_eq!(k, "lambda");
        assert_eq!(v, ParamValue::Complex(Complex64::new(0.5, 0.25)));
        assert!(parse_param_assignment("lambda").is_err());
        assert!(parse_param_value("x + 1").is_err());
        assert!(parse_descriptor(r#"{"family": "k3"}"#).is_err());
    }
}
