//! Static description of the catalog: parameters, generators and tables.

use serde::Serialize;

use super::catalog::{build_surface, Params};
use super::{CoverDomain, Family};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    /// `complex`, `integer` or `integer-matrix`.
    pub kind: &'static str,
    pub default: &'static str,
    pub constraint: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSpec {
    pub label: String,
    pub map: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub key: &'static str,
    pub title: &'static str,
    pub cover_domain: CoverDomain,
    pub parameters: Vec<ParamSpec>,
    pub generators: Vec<GeneratorSpec>,
    /// Free parameters of the connection family at default parameters.
    pub connection_params: Vec<String>,
    /// Closed-form monodromy table rows, if any.
    pub tables: Vec<&'static str>,
}

const fn spec(name: &'static str, kind: &'static str, default: &'static str, constraint: &'static str) -> ParamSpec {
    ParamSpec { name, kind, default, constraint }
}

const CX: &str = "complex";
const INT: &str = "integer";
const MAT: &str = "integer-matrix";

fn parameters(f: Family) -> Vec<ParamSpec> {
    match f {
        Family::Torus => vec![
            spec("type", INT, "1", "1, 2 or 3"),
            spec("a", CX, "1", ""),
            spec("b", CX, "2", ""),
            spec("c", CX, "5", ""),
            spec("e", CX, "1", "det C != 0, C = [[e, f], [g, h]]"),
            spec("f", CX, "0", ""),
            spec("g", CX, "0", ""),
            spec("h", CX, "1", ""),
            spec("k1..k4", CX, "1, i, 0, 0", "(k_j, l_j) independent over R"),
            spec("l1..l4", CX, "0, 0, 1, i", ""),
        ],
        Family::Kodaira => vec![
            spec("tau1", CX, "i", "Im tau1 > 0"),
            spec("tau2", CX, "2i", "Im tau2 > 0"),
            spec("a", CX, "1", "a != 0"),
            spec("m", INT, "1", "m >= 1"),
            spec("b", CX, "a tau2 - m tau1", "derived"),
            spec("e", CX, "0", "descends iff e = h"),
            spec("c", CX, "1", ""),
            spec("h", CX, "0", ""),
        ],
        Family::HopfPrimary | Family::HopfSecondary => {
            let mut v = vec![
                spec("a", CX, "0.25", "0 < |a| <= |b| < 1"),
                spec("b", CX, "0.5", ""),
                spec("lambda", CX, "0", "lambda != 0 requires a = b^m, m = 1"),
                spec("m", INT, "1", "m >= 1"),
                spec("c", CX, "1 if a = b^2 else 0", "nonzero only when a = b^2, lambda = 0"),
            ];
            if f == Family::HopfSecondary {
                v.extend([
                    spec("l", INT, "3", "l >= 2"),
                    spec("k1", INT, "2", "eps1 = exp(2 pi i k1/l) primitive"),
                    spec("k2", INT, "1", "eps2 = exp(2 pi i k2/l) primitive"),
                ]);
            }
            v
        }
        Family::InoueSM => vec![spec("M", MAT, "[[0,0,1],[1,0,1],[0,1,0]]", "SL(3,Z), one real eigenvalue > 1, two non-real")],
        Family::InoueSPlus => vec![
            spec("N", MAT, "[[2,1],[1,1]]", "SL(2,Z), real eigenvalues alpha > 1 > 1/alpha"),
            spec("r", INT, "1", "r != 0"),
            spec("p", INT, "0", ""),
            spec("q", INT, "0", ""),
            spec("t", CX, "1", ""),
        ],
        Family::EllipticGenusGe2 => vec![
            spec("gamma1", MAT, "[[2,1],[1,1]]", "SL(2,Z)"),
            spec("gamma2", MAT, "[[3,2],[1,1]]", "SL(2,Z)"),
        ],
    }
}

fn tables(f: Family) -> Vec<&'static str> {
    match f {
        Family::Torus => vec![
            "type 1: z exp(a k_i + b l_i)",
            "type 2: z - (g/f)(k_i + c l_i) if e = 0; z - e(k_i + c l_i) if e != 0",
            "type 3: z - (g/f) l_i if e = 0; z - e l_i if e != 0",
        ],
        Family::Kodaira => vec!["g3: z - a - c", "g4: z - b - c tau_2"],
        Family::HopfPrimary | Family::HopfSecondary => vec![
            "lambda != 0, m = 1: g = (zb + lambda)/a, e = z eps_2/eps_1",
            "lambda = 0, a != b^2: g = zb/a, e = z eps_2/eps_1",
            "lambda = 0, a = b^2: g = z/b, e = z/eps_2",
        ],
        Family::InoueSM => vec!["gamma0: (beta/alpha) z"],
        Family::InoueSPlus => vec!["gamma0: z/alpha", "gamma1, gamma2: z/(1 + b_i z)"],
        Family::EllipticGenusGe2 => vec![],
    }
}

pub fn catalog_entry(f: Family) -> Result<CatalogEntry> {
    let s = build_surface(f, &Params::new())?;
    Ok(CatalogEntry {
        family: f,
        key: f.key(),
        title: f.title(),
        cover_domain: s.cover_domain,
        parameters: parameters(f),
        generators: s.generators.iter().map(|g| GeneratorSpec { label: g.label.clone(), map: g.describe() }).collect(),
        connection_params: s.connection.free_params.clone(),
        tables: tables(f),
    })
}

/// Families whose key or title contains `filter` (case-insensitive).
pub fn catalog_listing(filter: Option<&str>) -> Result<Vec<CatalogEntry>> {
    let needle = filter.map(str::to_lowercase);
    Family::ALL
        .iter()
        .filter(|f| match &needle {
            Some(n) => f.key().contains(n.as_str()) || f.title().to_lowercase().contains(n.as_str()),
            None => true,
        })
        .map(|f| catalog_entry(*f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing() {
        assert_eq!(catalog_listing(None).unwrap().len(), Family::ALL.len());
        let hopf = catalog_listing(Some("HOPF")).unwrap();
        assert_eq!(hopf.iter().map(|e| e.key).collect::<Vec<_>>(), ["hopf_primary", "hopf_secondary"]);
        assert!(catalog_listing(Some("nothing")).unwrap().is_empty());
        let t = catalog_entry(Family::Torus).unwrap();
        assert_eq!(t.generators.len(), 4);
        assert!(t.connection_params.contains(&"a".to_string()));
    }
}
