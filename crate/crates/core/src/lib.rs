//! Exact symbolic calculus of vertical diffeomorphisms on a trivialized
//! principal bundle chart `U × H`.

pub mod coeff;
pub mod error;
pub mod fn_calculus;
pub mod forms;
pub mod group;
pub mod local;
pub mod matrix;
pub mod sample;
pub mod vertical;

pub use error::{Error, Result};

/// Exact rational scalars.
pub type Q = num_rational::BigRational;
pub type Polynomial = coeff::Poly<Q>;
pub type RationalFunction = coeff::RatFunc<Q>;
pub type Subst = coeff::Substitution<Q>;
