//! Exact computer algebra for sl_N representation theory and the
//! dynamical difference equations of Knizhnik–Zamolodchikov type.

pub mod closed_form;
pub mod dynamical;
pub mod error;
pub mod hyper;
pub mod linalg;
pub mod numeric;
pub mod rep;
pub mod roots;
pub mod symexpr;
pub mod uea;

pub use error::{Error, Result};
pub use symexpr::{RationalFunctionExpr, Rf, Symbol};
