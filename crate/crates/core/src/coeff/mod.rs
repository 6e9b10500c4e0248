//! Exact coefficient field: multivariate polynomials and rational functions
//! over an exact scalar type, with named variables.

mod gcd;
mod modular;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod registry;
mod scalar;

pub use gcd::gcd;
pub use monomial::{Monomial, Var};
pub use parse::parse_expr;
pub use poly::Poly;
pub use ratfunc::{RatFunc, Substitution};
pub use registry::VariableRegistry;
pub use scalar::{q, Scalar};
