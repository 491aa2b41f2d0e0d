//! Loading planners: positions and order are both chosen.
//!
//! Each planner comes with the certified optimum it attains, so callers can
//! compare `deviation(plan)` against it exactly.

pub mod connected;
pub mod exponential;
pub mod stacked;

pub use connected::{connected_optimum, plan_connected};
pub use exponential::{
    exponential_lower_bound, plan_exponential, tau, verify_disjointness_conditions, ConditionCheck,
    DisjointnessReport, ExpSystem,
};
pub use stacked::{plan_stacked, stacked_optimum, StackPlanParams};
