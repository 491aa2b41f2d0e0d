//! Exact domain model shared by every planner.
//!
//! An item of length `ℓ` placed at midpoint `m` occupies `[m - ℓ/2, m + ℓ/2]`
//! in some layer `h >= 1`. A [`State`] is a set of such intervals where
//! intervals of one layer have disjoint interiors (touching endpoints are
//! fine) and every interval above layer 1 lies inside the union of the layer
//! directly below it. A [`Placement`] is a sequence whose every prefix is a
//! state; its states are `s_0 = ∅, s_1, …, s_n` with `cog(s_0) = 0` by
//! convention.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// An item to be loaded, identified by its input index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub id: usize,
    pub length: Rational,
}

impl Item {
    pub fn new(id: usize, length: Rational) -> Result<Self> {
        if !length.is_positive() {
            return Err(Error::NonPositiveLength(length.to_string()));
        }
        Ok(Self { id, length })
    }
}

/// An interval with its layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedInterval {
    pub midpoint: Rational,
    pub length: Rational,
    pub layer: u32,
}

impl PlacedInterval {
    pub fn new(midpoint: Rational, length: Rational, layer: u32) -> Self {
        Self {
            midpoint,
            length,
            layer,
        }
    }

    /// Interval in the first layer.
    pub fn plane(midpoint: Rational, length: Rational) -> Self {
        Self::new(midpoint, length, 1)
    }

    /// Unit interval in the first layer.
    pub fn unit(midpoint: Rational) -> Self {
        Self::plane(midpoint, int(1))
    }

    pub fn left(&self) -> Rational {
        &self.midpoint - &self.length / int(2)
    }

    pub fn right(&self) -> Rational {
        &self.midpoint + &self.length / int(2)
    }

    /// True when the open interiors intersect. Shared endpoints do not count.
    pub fn overlaps(&self, other: &PlacedInterval) -> bool {
        self.left() < other.right() && other.left() < self.right()
    }

    /// Mirror image through the origin.
    pub fn mirrored(&self) -> Self {
        Self::new(-&self.midpoint, self.length.clone(), self.layer)
    }
}

/// Why a set of intervals is not a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    NonPositiveLength {
        index: usize,
    },
    ZeroLayer {
        index: usize,
    },
    /// Two intervals of the same layer share interior points.
    Overlap {
        layer: u32,
        first: usize,
        second: usize,
    },
    /// An interval above layer 1 is not covered by the layer below.
    Unsupported {
        index: usize,
        layer: u32,
    },
}

impl fmt::Display for StateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveLength { index } => {
                write!(f, "interval {index} has non-positive length")
            }
            Self::ZeroLayer { index } => write!(f, "interval {index} lies in layer 0"),
            Self::Overlap {
                layer,
                first,
                second,
            } => {
                write!(f, "intervals {first} and {second} overlap in layer {layer}")
            }
            Self::Unsupported { index, layer } => {
                write!(
                    f,
                    "interval {index} in layer {layer} is not covered by layer {}",
                    layer - 1
                )
            }
        }
    }
}

impl std::error::Error for StateViolation {}

/// A set of placed intervals. Construction does not validate; see [`validate_state`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct State {
    pub placed: Vec<PlacedInterval>,
}

impl State {
    pub fn new(placed: Vec<PlacedInterval>) -> Self {
        Self { placed }
    }

    pub fn mass(&self) -> Rational {
        self.placed.iter().map(|p| p.length.clone()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }
}

/// Length-weighted mean of the midpoints.
pub fn center_of_gravity(state: &State) -> Result<Rational> {
    let mass = state.mass();
    if mass.is_zero() {
        return Err(Error::EmptyState);
    }
    let moment: Rational = state.placed.iter().map(|p| &p.length * &p.midpoint).sum();
    Ok(moment / mass)
}

/// Center after adding an interval of `new_length` at `new_midpoint` to a
/// state of mass `prev_mass` centered at `prev_cog`.
pub fn cog_update(
    prev_cog: &Rational,
    prev_mass: &Rational,
    new_midpoint: &Rational,
    new_length: &Rational,
) -> Rational {
    (prev_cog * prev_mass + new_midpoint * new_length) / (prev_mass + new_length)
}

/// Midpoint at which an interval of `new_length` moves the center from
/// `prev_cog` to `target_cog`. Inverse of [`cog_update`] in its midpoint.
pub fn required_midpoint(
    prev_cog: &Rational,
    prev_mass: &Rational,
    target_cog: &Rational,
    new_length: &Rational,
) -> Rational {
    (target_cog * (prev_mass + new_length) - prev_cog * prev_mass) / new_length
}

fn check_basic(index: usize, iv: &PlacedInterval) -> std::result::Result<(), StateViolation> {
    if !iv.length.is_positive() {
        return Err(StateViolation::NonPositiveLength { index });
    }
    if iv.layer == 0 {
        return Err(StateViolation::ZeroLayer { index });
    }
    Ok(())
}

/// Whether `target` lies inside the union of `support`.
fn covered_by(target: &PlacedInterval, support: &[&PlacedInterval]) -> bool {
    let mut spans: Vec<(Rational, Rational)> =
        support.iter().map(|s| (s.left(), s.right())).collect();
    spans.sort();
    let (lo, hi) = (target.left(), target.right());
    let mut reach: Option<(Rational, Rational)> = None;
    for (a, b) in spans {
        reach = match reach {
            Some((start, end)) if a <= end => Some((start, end.max(b))),
            Some((start, end)) => {
                if start <= lo && hi <= end {
                    return true;
                }
                Some((a, b))
            }
            None => Some((a, b)),
        };
    }
    matches!(reach, Some((start, end)) if start <= lo && hi <= end)
}

/// Checks interval `j` against the intervals `placed[..j]` only.
fn check_step(placed: &[PlacedInterval], j: usize) -> std::result::Result<(), StateViolation> {
    let iv = &placed[j];
    check_basic(j, iv)?;
    if let Some(i) = (0..j).find(|&i| placed[i].layer == iv.layer && placed[i].overlaps(iv)) {
        return Err(StateViolation::Overlap {
            layer: iv.layer,
            first: i,
            second: j,
        });
    }
    if iv.layer >= 2 {
        let below: Vec<&PlacedInterval> = placed[..j]
            .iter()
            .filter(|p| p.layer == iv.layer - 1)
            .collect();
        if !covered_by(iv, &below) {
            return Err(StateViolation::Unsupported {
                index: j,
                layer: iv.layer,
            });
        }
    }
    Ok(())
}

/// Checks both state rules and reports the first violation found, scanning
/// intervals in index order.
pub fn validate_state(state: &State) -> std::result::Result<(), StateViolation> {
    let placed = &state.placed;
    for (j, iv) in placed.iter().enumerate() {
        check_basic(j, iv)?;
        if let Some(i) = (0..j).find(|&i| placed[i].layer == iv.layer && placed[i].overlaps(iv)) {
            return Err(StateViolation::Overlap {
                layer: iv.layer,
                first: i,
                second: j,
            });
        }
    }
    for (j, iv) in placed.iter().enumerate() {
        if iv.layer >= 2 {
            let below: Vec<&PlacedInterval> =
                placed.iter().filter(|p| p.layer == iv.layer - 1).collect();
            if !covered_by(iv, &below) {
                return Err(StateViolation::Unsupported {
                    index: j,
                    layer: iv.layer,
                });
            }
        }
    }
    Ok(())
}

/// Per-state centers of gravity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trajectory {
    pub centers: Vec<Rational>,
}

impl Trajectory {
    pub fn new(centers: Vec<Rational>) -> Self {
        Self { centers }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.centers.iter().min()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.centers.iter().max()
    }

    /// `max - min`, zero for an empty trajectory.
    pub fn span(&self) -> Rational {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => Rational::zero(),
        }
    }

    /// Largest absolute center, zero for an empty trajectory.
    pub fn max_abs(&self) -> Rational {
        self.centers
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// An ordered placement. `items[k]` is the input index of the item placed at step `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Placement {
    pub steps: Vec<PlacedInterval>,
    pub items: Vec<usize>,
}

impl Placement {
    pub fn new(steps: Vec<PlacedInterval>, items: Vec<usize>) -> Self {
        debug_assert_eq!(steps.len(), items.len());
        Self { steps, items }
    }

    /// Placement whose step `k` carries input index `k`.
    pub fn in_input_order(steps: Vec<PlacedInterval>) -> Self {
        let items = (0..steps.len()).collect();
        Self { steps, items }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The state `s_j` made of the first `j` intervals.
    pub fn state(&self, j: usize) -> State {
        State::new(self.steps[..j].to_vec())
    }

    /// Centers of `s_0, …, s_n`; the first entry is the conventional 0.
    pub fn centers(&self) -> Trajectory {
        let mut centers = Vec::with_capacity(self.steps.len() + 1);
        let mut cog = Rational::zero();
        let mut mass = Rational::zero();
        centers.push(cog.clone());
        for iv in &self.steps {
            cog = cog_update(&cog, &mass, &iv.midpoint, &iv.length);
            mass += &iv.length;
            centers.push(cog.clone());
        }
        Trajectory::new(centers)
    }

    /// Checks that every prefix is a state. Reports the first failing step (1-based).
    pub fn validate(&self) -> std::result::Result<(), (usize, StateViolation)> {
        (0..self.steps.len()).try_for_each(|j| check_step(&self.steps, j).map_err(|v| (j + 1, v)))
    }

    pub fn mirrored(&self) -> Self {
        Self::new(
            self.steps.iter().map(PlacedInterval::mirrored).collect(),
            self.items.clone(),
        )
    }

    /// Inverse of `items`: the 0-based step at which each input item is placed.
    pub fn step_of_item(&self) -> Vec<usize> {
        let mut inv = vec![0; self.items.len()];
        for (step, &item) in self.items.iter().enumerate() {
            inv[item] = step;
        }
        inv
    }
}

/// `max_j |cog(s_j)|` over all `n + 1` states, so never negative.
pub fn deviation(p: &Placement) -> Rational {
    p.centers().max_abs()
}
