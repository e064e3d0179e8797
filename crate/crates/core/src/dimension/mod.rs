//! Dyadic Hausdorff content, dimension brackets, Cantor dimension formulas,
//! the fibre measure over a bit sequence and local dimensions.

mod cantor_dim;
mod content;
mod local;
mod shmerkin;

pub use cantor_dim::{cantor_dim_partial, CantorDimPartial};
pub use content::{bracket, content_table, dim_interval, dim_interval_with, dyadic_content, BracketRule, DimEstimate};
pub use local::{local_dimension, scheme_log2_shrink, LocalMass};
pub use shmerkin::{isqrt, shmerkin_measure, CellMeasure, ShmerkinMeasure};
