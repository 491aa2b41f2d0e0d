//! Exact minimum-span sequencing for desk-scale instances.
//!
//! The center of a prefix depends only on which points it contains, so a
//! sequence is a chain `∅ ⊂ T_1 ⊂ … ⊂ T_n = X` of subsets growing by one
//! point, and the subset lattice (at most `2^n` nodes) can be searched
//! instead of the `n!` orders. For every subset the solver keeps the Pareto
//! front of `(lowest, highest)` center pairs over chains reaching it; the
//! front at `X` yields the optimal span and every optimal window. The
//! returned order is the lexicographically smallest order inside an optimal
//! window.
//!
//! Points are scaled to a common integer denominator so the lattice work
//! runs on machine integers; results are converted back to [`Rational`].

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::Trajectory;
use crate::rational::{int, Rational};
use crate::unload::{check_permutation, evaluate_order, DiscreteInstance, OrderReport};

/// Default cap on instance size.
pub const DEFAULT_EXACT_LIMIT: usize = 20;
/// Instances above this size are refused whatever limit the caller passes.
pub const HARD_EXACT_LIMIT: usize = 24;

/// `sum / count` in scaled integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Center {
    sum: i128,
    count: i128,
}

impl Ord for Center {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sum * other.count).cmp(&(other.sum * self.count))
    }
}

impl PartialOrd for Center {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Difference `hi - lo` as an unreduced fraction, compared by cross-multiplication.
#[derive(Debug, Clone, Copy)]
struct Gap {
    num: i128,
    den: i128,
}

impl Gap {
    fn between(lo: Center, hi: Center) -> Self {
        Gap {
            num: hi.sum * lo.count - lo.sum * hi.count,
            den: hi.count * lo.count,
        }
    }

    fn cmp(&self, other: &Gap) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Integer image of an instance: `points[i] = x_i * scale`.
struct Scaled {
    points: Vec<i64>,
    scale: BigInt,
}

impl Scaled {
    fn new(x: &DiscreteInstance) -> Result<Self> {
        let scale = x
            .points
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let points = x
            .points
            .iter()
            .map(|p| (p.numer() * (&scale / p.denom())).to_i64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::InvalidParameter("coordinates too large for the exact solver".into())
            })?;
        Ok(Self { points, scale })
    }

    fn subset_sums(&self) -> Vec<i128> {
        let n = self.points.len();
        let mut sums = vec![0i128; 1 << n];
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + self.points[low] as i128;
        }
        sums
    }

    fn center(&self, sums: &[i128], mask: usize) -> Center {
        Center {
            sum: sums[mask],
            count: mask.count_ones() as i128,
        }
    }

    fn to_rational(&self, c: Center) -> Rational {
        Rational::new(BigInt::from(c.sum), BigInt::from(c.count) * &self.scale)
    }

    /// `value * scale` as an integer center, if it fits.
    fn center_at(&self, value: &Rational) -> Result<Center> {
        let scaled = value * Rational::from_integer(self.scale.clone());
        match (scaled.numer().to_i128(), scaled.denom().to_i128()) {
            (Some(sum), Some(count)) if count < (1i128 << 60) && sum.abs() < (1i128 << 60) => {
                Ok(Center { sum, count })
            }
            _ => Err(Error::InvalidParameter(
                "window bound too large for the exact solver".into(),
            )),
        }
    }
}

fn check_size(n: usize, n_limit: usize) -> Result<()> {
    let limit = n_limit.min(HARD_EXACT_LIMIT);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    Ok(())
}

/// Lexicographically smallest order whose every prefix center lies in
/// `[lo, hi]`, or `None` when no such order exists.
fn lexicographic_chain(
    scaled: &Scaled,
    sums: &[i128],
    lo: Center,
    hi: Center,
) -> Option<Vec<usize>> {
    let n = scaled.points.len();
    let full = (1usize << n) - 1;
    let inside = |mask: usize| {
        let c = scaled.center(sums, mask);
        lo <= c && c <= hi
    };
    // completes[T]: T is inside and some in-window chain runs from T up to X.
    let mut completes = vec![false; 1 << n];
    completes[full] = inside(full);
    for mask in (1..full).rev() {
        if !inside(mask) {
            continue;
        }
        let mut free = full & !mask;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            if completes[mask | bit] {
                completes[mask] = true;
                break;
            }
            free &= free - 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = 0usize;
    while mask != full {
        let next = (0..n).find(|&i| mask & (1 << i) == 0 && completes[mask | (1 << i)])?;
        mask |= 1 << next;
        order.push(next);
    }
    Some(order)
}

/// Whether some order keeps every prefix center inside `[lo, hi]`; returns
/// the lexicographically smallest such order.
pub fn window_feasible(
    x: &DiscreteInstance,
    lo: &Rational,
    hi: &Rational,
    n_limit: usize,
) -> Result<Option<Vec<usize>>> {
    check_size(x.len(), n_limit)?;
    let scaled = Scaled::new(x)?;
    let sums = scaled.subset_sums();
    let (lo, hi) = (scaled.center_at(lo)?, scaled.center_at(hi)?);
    Ok(lexicographic_chain(&scaled, &sums, lo, hi))
}

fn push_pareto(front: &mut Vec<(Center, Center)>, cand: (Center, Center)) {
    // Larger low and smaller high dominate.
    if front.iter().any(|&(l, h)| l >= cand.0 && h <= cand.1) {
        return;
    }
    front.retain(|&(l, h)| !(cand.0 >= l && cand.1 <= h));
    front.push(cand);
}

/// An order of minimum span.
pub fn optimal_span(x: &DiscreteInstance, n_limit: usize) -> Result<OrderReport> {
    check_size(x.len(), n_limit)?;
    let scaled = Scaled::new(x)?;
    let n = x.len();
    let full = (1usize << n) - 1;
    let sums = scaled.subset_sums();

    let mut fronts: Vec<Vec<(Center, Center)>> = vec![Vec::new(); 1 << n];
    for mask in 1..=full {
        let here = scaled.center(&sums, mask);
        if mask.count_ones() == 1 {
            fronts[mask].push((here, here));
            continue;
        }
        let mut front = Vec::new();
        let mut bits = mask;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            for &(l, h) in &fronts[mask ^ bit] {
                push_pareto(&mut front, (l.min(here), h.max(here)));
            }
            bits &= bits - 1;
        }
        fronts[mask] = front;
    }

    let final_front = std::mem::take(&mut fronts[full]);
    drop(fronts);
    let best = final_front
        .iter()
        .map(|&(l, h)| Gap::between(l, h))
        .min_by(|a, b| a.cmp(b))
        .expect("front of a non-empty set is non-empty");
    let order = final_front
        .iter()
        .filter(|&&(l, h)| Gap::between(l, h).cmp(&best) == Ordering::Equal)
        .filter_map(|&(l, h)| lexicographic_chain(&scaled, &sums, l, h))
        .min()
        .expect("an optimal window admits its own chain");
    let report = evaluate_order(x, &order)?;
    debug_assert_eq!(
        report.span,
        scaled.to_rational(Center {
            sum: best.num,
            count: best.den
        })
    );
    Ok(report)
}

/// Minimum span by depth-first search over orders with span pruning.
/// Equal points are interchangeable, so only the first unused copy of each
/// value is branched on. Returns the lexicographically smallest optimal order.
pub fn exhaustive_span(x: &DiscreteInstance) -> Result<OrderReport> {
    let scaled = Scaled::new(x)?;
    let n = x.len();
    if n > 12 {
        return Err(Error::TooLarge { n, limit: 12 });
    }
    struct Search<'a> {
        points: &'a [i64],
        best: Option<(Gap, Vec<usize>)>,
        order: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn run(&mut self, sum: i128, lo: Option<Center>, hi: Option<Center>) {
            let n = self.points.len();
            if self.order.len() == n {
                let gap = Gap::between(lo.unwrap(), hi.unwrap());
                if self
                    .best
                    .as_ref()
                    .is_none_or(|(b, _)| gap.cmp(b) == Ordering::Less)
                {
                    self.best = Some((gap, self.order.clone()));
                }
                return;
            }
            for i in 0..n {
                if self.used[i] || (0..i).any(|j| !self.used[j] && self.points[j] == self.points[i])
                {
                    continue;
                }
                let s = sum + self.points[i] as i128;
                let c = Center {
                    sum: s,
                    count: self.order.len() as i128 + 1,
                };
                let (l, h) = (lo.map_or(c, |l| l.min(c)), hi.map_or(c, |h| h.max(c)));
                if let Some((b, _)) = &self.best {
                    if Gap::between(l, h).cmp(b) != Ordering::Less {
                        continue;
                    }
                }
                self.used[i] = true;
                self.order.push(i);
                self.run(s, Some(l), Some(h));
                self.order.pop();
                self.used[i] = false;
            }
        }
    }
    let mut search = Search {
        points: &scaled.points,
        best: None,
        order: Vec::new(),
        used: vec![false; n],
    };
    search.run(0, None, None);
    let (_, order) = search.best.expect("at least one order exists");
    evaluate_order(x, &order)
}

/// An order minimizing `max_k |C_k - C_n|`, the largest excursion from the
/// final center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationReport {
    pub report: OrderReport,
    pub deviation: Rational,
}

/// Exact one-sided variant of the span objective: minimize the largest
/// distance of any prefix center from the center of all points, via
/// `f(T) = max(|C(T) - C(X)|, min_{x ∈ T} f(T \ {x}))`.
pub fn optimal_deviation_loading_fixed_positions(
    x: &DiscreteInstance,
    n_limit: usize,
) -> Result<DeviationReport> {
    check_size(x.len(), n_limit)?;
    let scaled = Scaled::new(x)?;
    let n = x.len();
    let full = (1usize << n) - 1;
    let sums = scaled.subset_sums();
    let total = scaled.center(&sums, full);
    // |C(T) - C(X)| as an unreduced fraction.
    let excursion = |mask: usize| {
        let c = scaled.center(&sums, mask);
        let g = Gap::between(total, c);
        Gap {
            num: g.num.abs(),
            den: g.den,
        }
    };
    let max_gap = |a: Gap, b: Gap| if a.cmp(&b) == Ordering::Less { b } else { a };
    let mut best: Vec<Gap> = vec![Gap { num: 0, den: 1 }; 1 << n];
    for mask in 1..=full {
        let mut bits = mask;
        let mut inner: Option<Gap> = None;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            let cand = best[mask ^ bit];
            inner = Some(match inner {
                Some(cur) if cur.cmp(&cand) != Ordering::Greater => cur,
                _ => cand,
            });
            bits &= bits - 1;
        }
        best[mask] = max_gap(excursion(mask), inner.unwrap());
    }
    let value = best[full];
    let deviation = Rational::new(
        BigInt::from(value.num),
        BigInt::from(value.den) * &scaled.scale,
    );
    let lo = scaled.center_at(&(scaled.to_rational(total) - &deviation))?;
    let hi = scaled.center_at(&(scaled.to_rational(total) + &deviation))?;
    let order = lexicographic_chain(&scaled, &sums, lo, hi).expect("optimal window admits a chain");
    Ok(DeviationReport {
        report: evaluate_order(x, &order)?,
        deviation,
    })
}

/// `max_k |C_k - C_n|` of a given order.
pub fn deviation_from_final(x: &DiscreteInstance, order: &[usize]) -> Result<Rational> {
    check_permutation(x.len(), order)?;
    let report = evaluate_order(x, order)?;
    Ok(final_excursion(&report.trajectory))
}

fn final_excursion(t: &Trajectory) -> Rational {
    let last = t.centers.last().cloned().unwrap_or_else(|| int(0));
    t.centers
        .iter()
        .map(|c| (c - &last).abs())
        .max()
        .unwrap_or_else(|| int(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::unload::{h_lower_bound, h_permutation, naive_lower_bound};
    use proptest::prelude::*;
    use rand::{seq::SliceRandom, SeedableRng};

    fn inst(v: &[i64]) -> DiscreteInstance {
        DiscreteInstance::from_integers(v).unwrap()
    }

    /// Brute force over every order, no pruning, no symmetry reduction.
    fn all_orders_min<F: Fn(&[usize]) -> Rational>(n: usize, objective: F) -> Rational {
        fn rec<F: Fn(&[usize]) -> Rational>(
            n: usize,
            order: &mut Vec<usize>,
            best: &mut Option<Rational>,
            f: &F,
        ) {
            if order.len() == n {
                let v = f(order);
                if best.as_ref().is_none_or(|b| v < *b) {
                    *best = Some(v);
                }
                return;
            }
            for i in 0..n {
                if !order.contains(&i) {
                    order.push(i);
                    rec(n, order, best, f);
                    order.pop();
                }
            }
        }
        let mut best = None;
        rec(n, &mut Vec::new(), &mut best, &objective);
        best.unwrap()
    }

    #[test]
    fn small_examples() {
        let x = inst(&[-1, 1]);
        assert_eq!(optimal_span(&x, 20).unwrap().span, int(1));
        assert_eq!(exhaustive_span(&x).unwrap().span, int(1));
        assert_eq!(optimal_span(&inst(&[4, 4, 4, 4]), 20).unwrap().span, int(0));
        let d = optimal_deviation_loading_fixed_positions(&x, 20).unwrap();
        assert_eq!(d.deviation, int(1));
        assert_eq!(
            optimal_deviation_loading_fixed_positions(&inst(&[3, 3, 3]), 20)
                .unwrap()
                .deviation,
            int(0)
        );
    }

    #[test]
    fn worked_example_optimum() {
        let x = inst(&[1, 2, 3, 4, 5, 6, 7, -7, -7, -7, -7]);
        let r = optimal_span(&x, 20).unwrap();
        assert_eq!(r.span, ratio(9, 4));
        let c = &r.trajectory.centers;
        assert!(c.contains(&int(2)) && c.contains(&ratio(-1, 4)));
        assert_eq!((c[2].clone(), c[3].clone()), (int(2), ratio(-1, 4)));
        assert_eq!(exhaustive_span(&x).unwrap(), r);
    }

    #[test]
    fn size_cap() {
        let x = DiscreteInstance::from_integers(&[1; 21]).unwrap();
        assert_eq!(
            optimal_span(&x, 20),
            Err(Error::TooLarge { n: 21, limit: 20 })
        );
        assert!(matches!(
            optimal_deviation_loading_fixed_positions(&x, 20),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn window_feasibility() {
        let x = inst(&[1, 2, 3, 4, 5, 6, 7, -7, -7, -7, -7]);
        assert!(window_feasible(&x, &ratio(-1, 4), &int(2), 20)
            .unwrap()
            .is_some());
        assert!(window_feasible(&x, &ratio(-1, 4), &ratio(19, 10), 20)
            .unwrap()
            .is_none());
    }

    #[test]
    fn rational_points_are_scaled_exactly() {
        let x = DiscreteInstance::new(vec![ratio(1, 3), ratio(-1, 2), ratio(1, 6)]).unwrap();
        let r = optimal_span(&x, 20).unwrap();
        assert_eq!(r, exhaustive_span(&x).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dp_matches_brute_force(v in prop::collection::vec(-12i64..=12, 1..=7)) {
            let x = inst(&v);
            let brute = all_orders_min(x.len(), |o| evaluate_order(&x, o).unwrap().span);
            let dp = optimal_span(&x, 20).unwrap();
            prop_assert_eq!(&dp.span, &brute);
            prop_assert_eq!(dp, exhaustive_span(&x).unwrap());
        }

        #[test]
        fn deviation_dp_matches_brute_force(v in prop::collection::vec(-12i64..=12, 1..=7)) {
            let x = inst(&v);
            let brute = all_orders_min(x.len(), |o| deviation_from_final(&x, o).unwrap());
            let dp = optimal_deviation_loading_fixed_positions(&x, 20).unwrap();
            prop_assert_eq!(&dp.deviation, &brute);
            prop_assert_eq!(deviation_from_final(&x, &dp.report.order).unwrap(), brute);
        }

        #[test]
        fn optimum_beats_random_orders_and_sits_between_bounds(
            v in prop::collection::vec(-25i64..=25, 1..=11), seed in any::<u64>()
        ) {
            let x = inst(&v);
            let opt = optimal_span(&x, 20).unwrap().span;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..x.len()).collect();
            for _ in 0..50 {
                order.shuffle(&mut rng);
                prop_assert!(opt <= evaluate_order(&x, &order).unwrap().span);
            }
            prop_assert!(naive_lower_bound(&x) <= h_lower_bound(&x));
            prop_assert!(h_lower_bound(&x) <= opt);
            prop_assert!(opt <= h_permutation(&x).span);
        }
    }
}
