//! Differential forms on the chart `U × H`: wedge, exterior derivative,
//! contraction, Lie derivative and pullback by rational maps.

mod chart;
mod field;
mod form;

pub use chart::Chart;
pub use field::{RationalChartMap, VectorField};
pub use form::{mask_indices, merge_sign, DifferentialForm, Mask, ValueSpace};
