//! Fixed-position sequencing.
//!
//! Positions are given; only the order is chosen. Sequences are written in
//! loading direction: `order[0]` goes first and `C_k` is the center of the
//! first `k` points. The unloading order is the reverse sequence, and the
//! span `max C - min C` is the same in both directions.
//!
//! The greedy order implemented by [`h_permutation`] repeatedly takes the
//! smallest remaining point of the partial sum's sign until the smallest
//! opposite point would no longer flip the sum, then switches sides. Its
//! positions have a closed form ([`h_positions`]), and the largest
//! `|point| / position` ratio under it is a certified lower bound on the
//! optimal span ([`h_lower_bound`]); the greedy span is within a factor 2.7
//! of that bound.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::instances::validate_unit_item_set;
use crate::model::{PlacedInterval, Trajectory};
use crate::rational::{int, Rational};

/// Multiset of points with unit masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteInstance {
    pub points: Vec<Rational>,
}

impl DiscreteInstance {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("point set"));
        }
        Ok(Self { points })
    }

    pub fn from_integers(points: &[i64]) -> Result<Self> {
        Self::new(points.iter().map(|&p| int(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn mean(&self) -> Rational {
        self.points.iter().sum::<Rational>() / int(self.points.len() as i64)
    }
}

/// Normalized points split by sign. Positive points increase in value,
/// negative points increase in magnitude; ties keep input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPools {
    /// `(input index, value)`.
    pub positive: Vec<(usize, Rational)>,
    /// `(input index, value)`, values negative.
    pub negative: Vec<(usize, Rational)>,
    pub zeros: Vec<usize>,
}

impl SignedPools {
    /// Splits already-normalized points.
    pub fn from_normalized(points: &[Rational]) -> Self {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut zeros = Vec::new();
        for (i, p) in points.iter().enumerate() {
            match p.cmp(&Rational::zero()) {
                Ordering::Greater => positive.push((i, p.clone())),
                Ordering::Less => negative.push((i, p.clone())),
                Ordering::Equal => zeros.push(i),
            }
        }
        positive.sort_by(|a, b| a.1.cmp(&b.1));
        negative.sort_by(|a, b| b.1.cmp(&a.1));
        Self {
            positive,
            negative,
            zeros,
        }
    }
}

/// Sequence evaluation. `left`/`right` are the extreme prefix centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub order: Vec<usize>,
    pub trajectory: Trajectory,
    pub left: Rational,
    pub right: Rational,
    pub span: Rational,
}

impl OrderReport {
    /// The same sequence read as a removal order.
    pub fn unloading_order(&self) -> Vec<usize> {
        self.order.iter().rev().copied().collect()
    }
}

/// Shifts the points so they sum to zero. Returns the shifted instance and
/// the shift (the original mean).
pub fn normalize(x: &DiscreteInstance) -> (DiscreteInstance, Rational) {
    let mean = x.mean();
    let points = x.points.iter().map(|p| p - &mean).collect();
    (DiscreteInstance { points }, mean)
}

pub(crate) fn check_permutation(len: usize, order: &[usize]) -> Result<()> {
    if order.len() != len {
        return Err(Error::NotAPermutation {
            len,
            reason: format!("expected {len} entries, got {}", order.len()),
        });
    }
    let mut seen = vec![false; len];
    for &i in order {
        if i >= len {
            return Err(Error::NotAPermutation {
                len,
                reason: format!("index {i} out of range"),
            });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotAPermutation {
                len,
                reason: format!("index {i} repeated"),
            });
        }
    }
    Ok(())
}

/// Prefix centers `C_1..C_n` of the loading sequence `order`, with span.
pub fn evaluate_order(x: &DiscreteInstance, order: &[usize]) -> Result<OrderReport> {
    check_permutation(x.len(), order)?;
    let mut sum = Rational::zero();
    let centers = order
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            sum += &x.points[i];
            &sum / int(k as i64 + 1)
        })
        .collect();
    Ok(report(order.to_vec(), Trajectory::new(centers)))
}

fn report(order: Vec<usize>, trajectory: Trajectory) -> OrderReport {
    let left = trajectory.min().cloned().unwrap_or_else(Rational::zero);
    let right = trajectory.max().cloned().unwrap_or_else(Rational::zero);
    let span = &right - &left;
    OrderReport {
        order,
        trajectory,
        left,
        right,
        span,
    }
}

/// Centers while removing points in `removal` order: entry `j` is the center
/// of the points still present before the `j`-th removal.
pub fn evaluate_unloading(x: &DiscreteInstance, removal: &[usize]) -> Result<Trajectory> {
    check_permutation(x.len(), removal)?;
    let n = removal.len();
    let mut centers = Vec::with_capacity(n);
    for j in 0..n {
        let rest = &removal[j..];
        let sum: Rational = rest.iter().map(|&i| &x.points[i]).sum();
        centers.push(sum / int(rest.len() as i64));
    }
    Ok(Trajectory::new(centers))
}

/// `max_i |u_i| / i` over the normalized points sorted by magnitude.
pub fn naive_lower_bound(x: &DiscreteInstance) -> Rational {
    let (normalized, _) = normalize(x);
    let mut magnitudes: Vec<Rational> = normalized.points.iter().map(|p| p.abs()).collect();
    magnitudes.sort();
    magnitudes
        .into_iter()
        .enumerate()
        .map(|(i, u)| u / int(i as i64 + 1))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// 1-based positions assigned by the closed form to each sign pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPositions {
    pub pools: SignedPools,
    /// Position of `pools.positive[j]`.
    pub positive: Vec<usize>,
    /// Position of `pools.negative[j]`.
    pub negative: Vec<usize>,
}

/// Closed-form positions of the greedy order: the `j`-th positive point
/// follows every negative prefix whose magnitude sum is at most the first
/// `j` positives' sum, and the `j`-th negative point follows every positive
/// prefix whose sum is strictly below the first `j` negatives' magnitude sum.
/// Zeros come first and shift every position.
pub fn h_positions(x: &DiscreteInstance) -> HPositions {
    let (normalized, _) = normalize(x);
    let pools = SignedPools::from_normalized(&normalized.points);
    let prefix = |values: &mut dyn Iterator<Item = Rational>| {
        let mut acc = Rational::zero();
        let mut sums = vec![acc.clone()];
        for v in values {
            acc += v;
            sums.push(acc.clone());
        }
        sums
    };
    let pos_sums = prefix(&mut pools.positive.iter().map(|(_, v)| v.clone()));
    let neg_sums = prefix(&mut pools.negative.iter().map(|(_, v)| v.abs()));
    let z = pools.zeros.len();
    // Prefix sums are increasing, so the largest qualifying k is a partition point.
    let positive = (1..pos_sums.len())
        .map(|j| z + j + neg_sums.partition_point(|b| *b <= pos_sums[j]) - 1)
        .collect();
    let negative = (1..neg_sums.len())
        .map(|j| z + j + pos_sums.partition_point(|a| *a < neg_sums[j]) - 1)
        .collect();
    HPositions {
        pools,
        positive,
        negative,
    }
}

/// The greedy sequence.
///
/// Tie-breaks: a zero partial sum (including the start) takes the smallest
/// remaining magnitude, zeros first, preferring the positive point on a
/// magnitude tie; a comparison sum of exactly zero takes the negative point;
/// an exhausted pool hands over to the other pool in magnitude order.
pub fn h_order(x: &DiscreteInstance) -> Vec<usize> {
    let (normalized, _) = normalize(x);
    let pools = SignedPools::from_normalized(&normalized.points);
    let (pos, neg) = (&pools.positive, &pools.negative);
    let mut order: Vec<usize> = pools.zeros.clone();
    let (mut p, mut q) = (0usize, 0usize);
    let mut sum = Rational::zero();
    while p < pos.len() || q < neg.len() {
        let take_positive = match (pos.get(p), neg.get(q)) {
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some((_, a)), Some((_, b))) => {
                if p + q == 0 {
                    *a <= -b
                } else {
                    // Whatever the sign of the sum, a negative probe means
                    // the positive point goes next: either it is the
                    // opposite point that still cannot flip the sum, or it
                    // is the same-sign point and the negative one would
                    // overshoot. A zero probe sends the negative point,
                    // which at a zero sum is the smaller-or-equal magnitude.
                    (&sum + a + b).is_negative()
                }
            }
            (None, None) => unreachable!(),
        };
        let (idx, value) = if take_positive {
            p += 1;
            &pos[p - 1]
        } else {
            q += 1;
            &neg[q - 1]
        };
        sum += value;
        order.push(*idx);
    }
    order
}

/// The greedy sequence evaluated in the instance's own coordinates.
pub fn h_permutation(x: &DiscreteInstance) -> OrderReport {
    evaluate_order(x, &h_order(x)).expect("greedy order is a permutation")
}

/// `max(P_j / π⁺_j, |N_j| / π⁻_j)` over the closed-form positions.
pub fn h_lower_bound(x: &DiscreteInstance) -> Rational {
    let h = h_positions(x);
    let pos = h
        .pools
        .positive
        .iter()
        .zip(&h.positive)
        .map(|((_, v), &at)| v / int(at as i64));
    let neg = h
        .pools
        .negative
        .iter()
        .zip(&h.negative)
        .map(|((_, v), &at)| v.abs() / int(at as i64));
    pos.chain(neg).max().unwrap_or_else(Rational::zero)
}

/// Unit intervals to points: `x_i = m_i`. Spans are preserved exactly.
pub fn reduce_unload_to_discrete(items: &[PlacedInterval]) -> Result<DiscreteInstance> {
    if let Some(bad) = items.iter().position(|iv| iv.length != int(1)) {
        return Err(Error::InvalidParameter(format!(
            "item {bad} is not a unit interval"
        )));
    }
    let midpoints: Vec<Rational> = items.iter().map(|iv| iv.midpoint.clone()).collect();
    validate_unit_item_set(&midpoints).map_err(|v| Error::InvalidParameter(v.to_string()))?;
    DiscreteInstance::new(midpoints)
}

/// Points to unit intervals at `x_i / d`, where `d` is the smallest positive
/// gap between points. Coincident points become coincident midpoints.
/// Returns the intervals and `d`; every span of the image is the original
/// span divided by `d`.
pub fn reduce_discrete_to_unload(x: &DiscreteInstance) -> Result<(Vec<PlacedInterval>, Rational)> {
    let d = min_positive_gap(&x.points).ok_or(Error::CoincidentPoints)?;
    let items = x
        .points
        .iter()
        .map(|p| PlacedInterval::unit(p / &d))
        .collect();
    Ok((items, d))
}

/// Smallest positive distance between two of the points, if any two differ.
pub fn min_positive_gap(points: &[Rational]) -> Option<Rational> {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.windows(2).map(|w| &w[1] - &w[0]).min()
}
