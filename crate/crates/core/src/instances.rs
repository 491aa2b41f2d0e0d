//! Instance generation and validity checks.
//!
//! Besides seeded random families, this module builds the 3-Partition
//! hardness construction: `M` points at the origin, the `3m` integers of
//! `Y`, and `m` points at `-B`. Some order keeps every prefix center inside
//! `[0, B/M]` exactly when `Y` splits into triples summing to `B`. The
//! generator never decides that question; given a known partition it emits
//! the witness order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::unload::{check_permutation, min_positive_gap, DiscreteInstance};

/// Why a set of unit items is not valid: two midpoints closer than 1 but distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSetViolation {
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for UnitSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unit items {} and {} are closer than 1 without coinciding",
            self.first, self.second
        )
    }
}

impl std::error::Error for UnitSetViolation {}

/// Unit items are valid when any two midpoints coincide or are at least 1 apart.
pub fn validate_unit_item_set(midpoints: &[Rational]) -> std::result::Result<(), UnitSetViolation> {
    let one = int(1);
    for j in 0..midpoints.len() {
        for i in 0..j {
            let gap = (&midpoints[i] - &midpoints[j]).abs();
            if gap != Rational::from_integer(0.into()) && gap < one {
                return Err(UnitSetViolation {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

/// A 3-Partition instance with the origin-point count of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionSpec {
    pub y: Vec<u64>,
    pub m: usize,
    /// Defaults to `4mB + 1`, the smallest count the construction allows.
    pub origin_points: Option<u64>,
}

impl ThreePartitionSpec {
    pub fn new(y: Vec<u64>, m: usize) -> Self {
        Self {
            y,
            m,
            origin_points: None,
        }
    }

    /// Checks the construction's preconditions and returns `(B, M)`.
    pub fn validate(&self) -> Result<(u64, u64)> {
        let m = self.m as u64;
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        if self.y.len() != 3 * self.m {
            return Err(Error::InvalidParameter(format!(
                "|Y| = {} but 3m = {}",
                self.y.len(),
                3 * self.m
            )));
        }
        let total: u64 = self.y.iter().sum();
        if !total.is_multiple_of(m) {
            return Err(Error::InvalidParameter(format!(
                "sum(Y) = {total} is not divisible by m = {m}"
            )));
        }
        let b = total / m;
        if let Some(&bad) = self.y.iter().find(|&&v| !(4 * v > b && 2 * v < b)) {
            return Err(Error::InvalidParameter(format!(
                "y = {bad} violates B/4 < y < B/2 for B = {b}"
            )));
        }
        let floor = 4 * m * b;
        let origin = self.origin_points.unwrap_or(floor + 1);
        if origin <= floor {
            return Err(Error::InvalidParameter(format!(
                "M = {origin} must exceed 4mB = {floor}"
            )));
        }
        Ok((b, origin))
    }
}

/// The construction's point multiset. Indices are laid out as origin points
/// `0..M`, then `Y` in input order, then the `m` points at `-B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub instance: DiscreteInstance,
    pub b: u64,
    pub origin_points: u64,
    pub m: usize,
    /// `[0, B/M]`.
    pub window: (Rational, Rational),
}

impl ThreePartitionInstance {
    fn y_index(&self, j: usize) -> usize {
        self.origin_points as usize + j
    }

    fn negative_index(&self, k: usize) -> usize {
        self.origin_points as usize + 3 * self.m + k
    }

    /// Origin points first, then each triple followed by one `-B` point.
    /// `triples` holds indices into `Y`.
    pub fn witness_order(&self, triples: &[[usize; 3]]) -> Result<Vec<usize>> {
        if triples.len() != self.m {
            return Err(Error::InvalidParameter(format!(
                "expected {} triples, got {}",
                self.m,
                triples.len()
            )));
        }
        let mut seen = vec![false; 3 * self.m];
        for t in triples {
            let mut sum = int(0);
            for &j in t {
                if j >= seen.len() || std::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidParameter(format!(
                        "triple index {j} is out of range or reused"
                    )));
                }
                sum += &self.instance.points[self.y_index(j)];
            }
            if sum != int(self.b as i64) {
                return Err(Error::InvalidParameter(format!(
                    "triple {t:?} does not sum to B = {}",
                    self.b
                )));
            }
        }
        let mut order: Vec<usize> = (0..self.origin_points as usize).collect();
        for (k, t) in triples.iter().enumerate() {
            order.extend(t.iter().map(|&j| self.y_index(j)));
            order.push(self.negative_index(k));
        }
        Ok(order)
    }

    /// Distinct-point variant: the `k`-th copy of a repeated value moves by
    /// `k·ε` with `ε = 1/(n²(max|x| + 1))`, then everything (window included)
    /// is divided by the smallest gap so distinct points sit at least 1 apart.
    pub fn perturbed(&self) -> PerturbedInstance {
        let n = self.instance.len() as i64;
        let max_abs = self
            .instance
            .points
            .iter()
            .map(|p| p.abs())
            .max()
            .unwrap_or_else(|| int(0));
        let eps = int(1) / (int(n * n) * (max_abs + int(1)));
        let mut copies: HashMap<Rational, i64> = HashMap::new();
        let shifted: Vec<Rational> = self
            .instance
            .points
            .iter()
            .map(|p| {
                let k = copies.entry(p.clone()).or_insert(0);
                let moved = p + &eps * int(*k);
                *k += 1;
                moved
            })
            .collect();
        let gap =
            min_positive_gap(&shifted).expect("construction has at least two distinct values");
        let points = shifted.iter().map(|p| p / &gap).collect();
        PerturbedInstance {
            instance: DiscreteInstance { points },
            window: (&self.window.0 / &gap, &self.window.1 / &gap),
            scale: gap,
        }
    }
}

/// Perturbed and rescaled construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbedInstance {
    pub instance: DiscreteInstance,
    pub window: (Rational, Rational),
    /// Coordinates were divided by this value.
    pub scale: Rational,
}

/// Builds the construction; see [`ThreePartitionSpec::validate`] for the preconditions.
pub fn gen_3partition_instance(spec: &ThreePartitionSpec) -> Result<ThreePartitionInstance> {
    let (b, origin) = spec.validate()?;
    let mut points = vec![int(0); origin as usize];
    points.extend(spec.y.iter().map(|&v| int(v as i64)));
    points.extend(std::iter::repeat_n(int(-(b as i64)), spec.m));
    Ok(ThreePartitionInstance {
        instance: DiscreteInstance::new(points)?,
        b,
        origin_points: origin,
        m: spec.m,
        window: (
            int(0),
            Rational::new((b as i64).into(), (origin as i64).into()),
        ),
    })
}

/// Outcome of checking prefix centers against a closed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowVerdict {
    pub inside: bool,
    /// First step (1-based) whose center leaves the window.
    pub first_violation: Option<usize>,
    /// Smallest distance from a prefix center to the nearer window edge;
    /// negative once a center is outside.
    pub min_slack: Rational,
}

/// Checks every prefix center of `order` against `[lo, hi]`.
pub fn verify_window(
    x: &DiscreteInstance,
    order: &[usize],
    lo: &Rational,
    hi: &Rational,
) -> Result<WindowVerdict> {
    check_permutation(x.len(), order)?;
    let mut sum = int(0);
    let mut first_violation = None;
    let mut min_slack: Option<Rational> = None;
    for (k, &i) in order.iter().enumerate() {
        sum += &x.points[i];
        let c = &sum / int(k as i64 + 1);
        let slack = (&c - lo).min(hi - &c);
        if first_violation.is_none() && (c < *lo || c > *hi) {
            first_violation = Some(k + 1);
        }
        if min_slack.as_ref().is_none_or(|s| slack < *s) {
            min_slack = Some(slack);
        }
    }
    Ok(WindowVerdict {
        inside: first_violation.is_none(),
        first_violation,
        min_slack: min_slack.unwrap_or_else(|| int(0)),
    })
}

/// Random instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Integer points uniform in `[-range, range]`.
    Uniform,
    /// Many small positive points against a few large negative ones.
    TwoSided,
    /// Lengths `ℓ·x^i` for loading.
    ExponentialLengths,
    /// The fixed 11-point sequence `1..7, -7, -7, -7, -7`.
    WorkedExample,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Uniform,
        Family::TwoSided,
        Family::ExponentialLengths,
        Family::WorkedExample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::TwoSided => "two-sided",
            Family::ExponentialLengths => "exponential-lengths",
            Family::WorkedExample => "worked-example",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters for [`gen_random`]; each family reads the fields it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub n: usize,
    pub range: i64,
    /// Smallest length for exponential systems.
    pub ell: Rational,
    /// Growth factor for exponential systems.
    pub x: Rational,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            n: 10,
            range: 20,
            ell: int(1),
            x: int(2),
        }
    }
}

/// Either fixed positions to sequence or lengths to place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Unload(DiscreteInstance),
    Load(Vec<Rational>),
}

pub fn worked_example() -> DiscreteInstance {
    DiscreteInstance::from_integers(&[1, 2, 3, 4, 5, 6, 7, -7, -7, -7, -7]).expect("non-empty")
}

/// Deterministic for a given `(family, params, seed)`.
pub fn gen_random(family: Family, params: &RandomParams, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let range = params.range;
    match family {
        Family::Uniform => {
            if n == 0 || range < 0 {
                return Err(Error::InvalidParameter(
                    "uniform needs n >= 1 and range >= 0".into(),
                ));
            }
            let pts = (0..n).map(|_| int(rng.gen_range(-range..=range))).collect();
            Ok(Instance::Unload(DiscreteInstance::new(pts)?))
        }
        Family::TwoSided => {
            if n < 2 || range < 1 {
                return Err(Error::InvalidParameter(
                    "two-sided needs n >= 2 and range >= 1".into(),
                ));
            }
            let negatives = (n / 3).max(1);
            let mut pts: Vec<Rational> = (0..n - negatives)
                .map(|_| int(rng.gen_range(1..=range)))
                .collect();
            pts.extend((0..negatives).map(|_| int(-rng.gen_range(range..=3 * range))));
            Ok(Instance::Unload(DiscreteInstance::new(pts)?))
        }
        Family::ExponentialLengths => {
            if n == 0 || !params.ell.is_positive() || !params.x.is_positive() {
                return Err(Error::InvalidParameter(
                    "exponential lengths need n >= 1, ell > 0, x > 0".into(),
                ));
            }
            let mut len = params.ell.clone();
            let mut lengths = Vec::with_capacity(n);
            for _ in 0..n {
                lengths.push(len.clone());
                len *= &params.x;
            }
            Ok(Instance::Load(lengths))
        }
        Family::WorkedExample => Ok(Instance::Unload(worked_example())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn six_threes() -> ThreePartitionInstance {
        gen_3partition_instance(&ThreePartitionSpec::new(vec![3; 6], 2)).unwrap()
    }

    #[test]
    fn unit_item_validity() {
        assert!(validate_unit_item_set(&[int(0), int(1), int(1)]).is_ok());
        assert!(validate_unit_item_set(&[int(0), int(-1)]).is_ok());
        assert_eq!(
            validate_unit_item_set(&[int(0), ratio(1, 2)]),
            Err(UnitSetViolation {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn construction_layout() {
        let t = six_threes();
        assert_eq!((t.b, t.origin_points), (9, 73));
        assert_eq!(t.instance.len(), 81);
        assert_eq!(t.window, (int(0), ratio(9, 73)));
        assert_eq!(
            t.instance.points.iter().filter(|p| **p == int(-9)).count(),
            2
        );
        assert_eq!(t.instance.points.iter().sum::<Rational>(), int(0));
    }

    #[test]
    fn witness_stays_in_window() {
        let t = six_threes();
        let order = t.witness_order(&[[0, 1, 2], [3, 4, 5]]).unwrap();
        let v = verify_window(&t.instance, &order, &t.window.0, &t.window.1).unwrap();
        assert!(v.inside);
        assert_eq!(v.first_violation, None);
        assert_eq!(v.min_slack, int(0));
    }

    #[test]
    fn early_negative_leaves_window() {
        let t = six_threes();
        let mut order: Vec<usize> = (0..73).collect();
        order.push(79);
        order.extend(73..79);
        order.push(80);
        let v = verify_window(&t.instance, &order, &t.window.0, &t.window.1).unwrap();
        assert!(!v.inside);
        assert_eq!(v.first_violation, Some(74));
        assert!(v.min_slack.is_negative());
    }

    #[test]
    fn witness_rejects_bad_partitions() {
        let t = six_threes();
        assert!(t.witness_order(&[[0, 1, 2]]).is_err());
        assert!(t.witness_order(&[[0, 1, 1], [3, 4, 5]]).is_err());
        let u =
            gen_3partition_instance(&ThreePartitionSpec::new(vec![6, 6, 6, 6, 7, 9], 2)).unwrap();
        assert!(u.witness_order(&[[0, 1, 4], [2, 3, 5]]).is_err());
    }

    #[test]
    fn single_zero_point_in_degenerate_window() {
        let x = DiscreteInstance::from_integers(&[0]).unwrap();
        assert!(verify_window(&x, &[0], &int(0), &int(0)).unwrap().inside);
    }

    #[test]
    fn spec_preconditions() {
        assert!(ThreePartitionSpec::new(vec![3; 5], 2).validate().is_err());
        assert!(ThreePartitionSpec::new(vec![1, 1, 7], 1)
            .validate()
            .is_err());
        assert!(ThreePartitionSpec::new(vec![3, 3, 4], 1).validate().is_ok());
        assert!(ThreePartitionSpec::new(vec![3, 3, 3, 3, 3, 4], 2)
            .validate()
            .is_err());
        let small_m = ThreePartitionSpec {
            y: vec![3; 6],
            m: 2,
            origin_points: Some(72),
        };
        assert!(small_m.validate().is_err());
        let big_m = ThreePartitionSpec {
            y: vec![3; 6],
            m: 2,
            origin_points: Some(100),
        };
        assert_eq!(big_m.validate().unwrap(), (9, 100));
    }

    #[test]
    fn perturbation_separates_points() {
        let t = six_threes();
        let p = t.perturbed();
        let mut sorted = p.instance.points.clone();
        sorted.sort();
        assert!(sorted.windows(2).all(|w| &w[1] - &w[0] >= int(1)));
        let order = t.witness_order(&[[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(
            verify_window(&p.instance, &order, &p.window.0, &p.window.1)
                .unwrap()
                .inside
        );
    }

    #[test]
    fn random_families() {
        let params = RandomParams::default();
        assert_eq!(
            gen_random(Family::WorkedExample, &params, 0).unwrap(),
            Instance::Unload(worked_example())
        );
        let exp = RandomParams {
            n: 5,
            ..RandomParams::default()
        };
        assert_eq!(
            gen_random(Family::ExponentialLengths, &exp, 3).unwrap(),
            Instance::Load([1, 2, 4, 8, 16].map(int).to_vec())
        );
        for family in [Family::Uniform, Family::TwoSided] {
            let a = gen_random(family, &params, 42).unwrap();
            assert_eq!(a, gen_random(family, &params, 42).unwrap());
            match a {
                Instance::Unload(x) => assert_eq!(x.len(), 10),
                Instance::Load(_) => panic!("point family produced lengths"),
            }
        }
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("two-sided".parse::<Family>().unwrap(), Family::TwoSided);
    }
}
