//! Matrix Lie groups with rational global charts.

mod model;
mod models;
mod rep;

pub use model::{GroupSpec, GroupText, InvariantCheck, LieAlgValuedMap, LieGroupModel};
pub use models::{by_name, gl1, heisenberg3, sl2};
pub use rep::Representation;

use std::sync::Arc;

pub type Group = Arc<LieGroupModel>;
