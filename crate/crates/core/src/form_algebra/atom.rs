//! Variables of the differential field: the base coordinates `x`, `y` and
//! formal atoms with declared derivative rules.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::rational::RationalExpr;

/// How an atom behaves under `d`.
#[derive(Clone, Debug)]
pub enum AtomKind {
    /// Free constant, `d = 0`.
    Param,
    /// `order`-th derivative of an opaque function of `x`.
    FnX { order: u32 },
    /// `order`-th derivative of an opaque function of `y`.
    FnY { order: u32 },
    /// Mixed partial `∂xᵈˣ ∂yᵈʸ` of an opaque function of `(x, y)`.
    FnXY { dx: u32, dy: u32 },
    /// `exp(P)` for a rational `P`; `d exp(P) = exp(P) dP`.
    Exp(Arc<RationalExpr>),
}

#[derive(Clone, Debug)]
pub struct Atom {
    base: Arc<str>,
    kind: AtomKind,
    display: Arc<str>,
}

impl Atom {
    fn make(base: &str, kind: AtomKind) -> Self {
        let display: String = match &kind {
            AtomKind::Param => base.to_string(),
            AtomKind::FnX { order } | AtomKind::FnY { order } => {
                format!("{}{}", base, "'".repeat(*order as usize))
            }
            AtomKind::FnXY { dx, dy } => {
                if dx + dy == 0 {
                    base.to_string()
                } else {
                    format!("{}_{}{}", base, "x".repeat(*dx as usize), "y".repeat(*dy as usize))
                }
            }
            AtomKind::Exp(p) => format!("exp({})", p),
        };
        Atom {
            base: base.into(),
            kind,
            display: display.into(),
        }
    }

    pub fn param(name: &str) -> Self {
        Atom::make(name, AtomKind::Param)
    }

    pub fn fn_of_x(name: &str) -> Self {
        Atom::make(name, AtomKind::FnX { order: 0 })
    }

    pub fn fn_of_y(name: &str) -> Self {
        Atom::make(name, AtomKind::FnY { order: 0 })
    }

    pub fn fn_of_xy(name: &str) -> Self {
        Atom::make(name, AtomKind::FnXY { dx: 0, dy: 0 })
    }

    pub fn exp(exponent: RationalExpr) -> Self {
        Atom::make("exp", AtomKind::Exp(Arc::new(exponent)))
    }

    /// Same base, different derivative order. Used by the parser and `d`.
    pub fn with_kind(&self, kind: AtomKind) -> Self {
        Atom::make(&self.base, kind)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn kind(&self) -> &AtomKind {
        &self.kind
    }

    /// Printed name, e.g. `u''` or `w_xy`. Also the key used by numeric bindings.
    pub fn name(&self) -> &str {
        &self.display
    }

    pub fn is_param(&self) -> bool {
        matches!(self.kind, AtomKind::Param)
    }

    /// The underived function this atom descends from (itself for order 0).
    pub fn parent_chain_root(&self) -> Atom {
        match self.kind {
            AtomKind::FnX { .. } => self.with_kind(AtomKind::FnX { order: 0 }),
            AtomKind::FnY { .. } => self.with_kind(AtomKind::FnY { order: 0 }),
            AtomKind::FnXY { .. } => self.with_kind(AtomKind::FnXY { dx: 0, dy: 0 }),
            _ => self.clone(),
        }
    }

    fn kind_rank(&self) -> (u8, u32, u32) {
        match self.kind {
            AtomKind::Param => (0, 0, 0),
            AtomKind::FnX { order } => (1, order, 0),
            AtomKind::FnY { order } => (2, order, 0),
            AtomKind::FnXY { dx, dy } => (3, dx, dy),
            AtomKind::Exp(_) => (4, 0, 0),
        }
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| self.display.cmp(&other.display))
    }
}

impl std::hash::Hash for Atom {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.display.hash(state);
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

/// A polynomial indeterminate. The order `x < y < atoms` is the global
/// variable order used for graded-lex monomial comparison (earlier = more
/// significant).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Atom(Arc<Atom>),
}

impl Var {
    pub fn atom(a: Atom) -> Self {
        Var::Atom(Arc::new(a))
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Var::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Var::X | Var::Y)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y => f.write_str("y"),
            Var::Atom(a) => write!(f, "{}", a),
        }
    }
}
