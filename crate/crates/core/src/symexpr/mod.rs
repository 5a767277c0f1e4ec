//! Exact arithmetic kernel: big integers, sparse polynomials and canonical
//! rational functions over a registry of named symbols.

mod gcd;
mod int;
mod parse;
mod poly;
mod rf;
mod symbol;

pub use gcd::{gcd, gcd_cofactors};
pub use int::{binomial, factorial, Int};
pub use num_rational::BigRational;
pub use parse::parse_rf;
pub use poly::{Exps, Poly};
pub use rf::{permutations, RationalFunctionExpr, Rf};
pub use symbol::{natural_cmp, Symbol};

/// The rational function of a single symbol given by name.
pub fn sym(name: &str) -> Rf {
    Rf::var(name)
}

/// An integer constant.
pub fn int(c: i64) -> Rf {
    Rf::from_i64(c)
}

/// A rational constant.
pub fn q(p: i64, d: i64) -> Rf {
    Rf::ratio(p, d)
}
