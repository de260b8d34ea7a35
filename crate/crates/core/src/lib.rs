//! Affine and Riccati connections on complex surfaces: exact exterior
//! calculus, the surface catalog, and numerical monodromy.

pub mod error;
pub mod connections;
pub mod form_algebra;
pub mod monodromy;
pub mod pencils_webs;
pub mod surfaces;

pub use error::{Error, Result};
