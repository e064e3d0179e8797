//! Capacities and flows on the binary tree truncated at a fixed depth.

mod concentrate;
mod maxflow;
mod tree;

pub use concentrate::{concentrate_flow, concentration_floor, concentration_violation};
pub use maxflow::{
    bottleneck, max_flow_iterate, nonzero_flow_search, route, truncated_max_flow, truncated_max_flow_with, FlowSearch,
    Splitter,
};
pub use tree::{CapacityTree, Labelling, TreeFlow};
