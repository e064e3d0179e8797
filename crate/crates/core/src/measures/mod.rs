//! Measures on `[0, 1]` through their values on open dyadic intervals.

mod construct;
mod dyadic_measure;

pub use construct::{
    concentrate, concentrated_support, concentration_threshold, measure_from_overt, point_from_measure, support_overt,
    ConcentratedSupport, SupportOvert,
};
pub use dyadic_measure::{
    flow_to_measure, frostman_check, measure_to_flow, DyadicMeasure, Lebesgue, MeasureName, PointMeasure, ZeroMeasure,
};
