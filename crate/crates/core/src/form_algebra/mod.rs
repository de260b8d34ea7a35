//! Exact exterior calculus in two complex variables over a differential
//! field of rational functions with formal atoms, plus numeric evaluation.

pub mod atom;
pub mod coeff;
pub mod forms;
pub mod gcd;
pub mod map;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod rational;

pub use atom::{Atom, AtomKind, Var};
pub use coeff::Coeff;
pub use forms::{
    d_oneform, d_scalar, mat_wedge, scalar_det, scalar_identity, scalar_inverse, scalar_mat_mul, wedge,
    MatrixOneForm, MatrixTwoForm, OneForm, ScalarMatrix, TwoForm,
};
pub use map::{CoordMap, PolyMap};
pub use numeric::{evaluate, evaluate_matrix, evaluate_oneform, evaluate_twoform, CompiledExpr, NumericBinding};
pub use parse::{parse_expr, parse_expr_in, AtomContext, FnDecl};
pub use poly::{Monomial, Poly};
pub use rational::RationalExpr;
