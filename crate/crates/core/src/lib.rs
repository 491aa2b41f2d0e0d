//! Balanced loading and unloading of one-dimensional unit-density items.
//!
//! Every planner keeps the center of gravity under control during the whole
//! process, not only at the end. Arithmetic is exact throughout
//! ([`Rational`]), so certified optima and lower bounds are compared with
//! `==` and `<=` rather than tolerances.
//!
//! - [`model`]: intervals, states, placements, centers of gravity and
//!   deviations shared by all planners.
//! - [`unload`]: fixed-position sequencing. The alternating-sign greedy
//!   order, its position-ratio lower bound, the magnitude lower bound, and
//!   the reductions between point sets and unit-interval sets.
//! - [`exact`]: exact minimum-span sequencing for small instances, used as
//!   ground truth.
//! - [`load`]: optimal placement planners for stacked unit items,
//!   connected placements, and exponentially growing lengths.
//! - [`instances`]: random families and the 3-Partition hardness construction.

pub mod error;
pub mod exact;
pub mod instances;
pub mod load;
pub mod model;
pub mod rational;
pub mod unload;

pub use error::{Error, ParseRationalError, Result};
pub use model::{
    center_of_gravity, cog_update, deviation, required_midpoint, validate_state, Item,
    PlacedInterval, Placement, State, StateViolation, Trajectory,
};
pub use rational::{parse_rational, Rational};
pub use unload::{DiscreteInstance, OrderReport};
