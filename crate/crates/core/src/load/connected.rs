//! Plane placements whose union stays one interval at every step.
//!
//! The center of a connected plane state is the midpoint of its union, so
//! the whole trajectory follows from the union's endpoints. Sorting by
//! decreasing length, putting the longest item at `-ℓ₂/4` and then
//! attaching items alternately on the right and left keeps every center in
//! `[-ℓ₂/4, ℓ₂/4]`, which matches the lower bound for connected placements.

use crate::error::{Error, Result};
use crate::model::{PlacedInterval, Placement};
use crate::rational::{int, Rational};

fn check_lengths(lengths: &[Rational]) -> Result<()> {
    if lengths.is_empty() {
        return Err(Error::EmptyInput("length list"));
    }
    if let Some(bad) = lengths.iter().find(|l| **l <= int(0)) {
        return Err(Error::NonPositiveLength(bad.to_string()));
    }
    Ok(())
}

/// Input indices sorted by decreasing length, ties by index.
fn descending(lengths: &[Rational]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..lengths.len()).collect();
    idx.sort_by(|&a, &b| lengths[b].cmp(&lengths[a]));
    idx
}

pub fn plan_connected(lengths: &[Rational]) -> Result<Placement> {
    check_lengths(lengths)?;
    let order = descending(lengths);
    if order.len() == 1 {
        return Ok(Placement::new(
            vec![PlacedInterval::plane(int(0), lengths[order[0]].clone())],
            order,
        ));
    }
    let first = &lengths[order[0]];
    let second = &lengths[order[1]];
    let m1 = -(second / int(4));
    let mut left = &m1 - first / int(2);
    let mut right = &m1 + first / int(2);
    let mut steps = vec![PlacedInterval::plane(m1, first.clone())];
    for (k, &i) in order.iter().enumerate().skip(1) {
        let len = &lengths[i];
        let half = len / int(2);
        // Step k + 1: even steps extend right, odd steps extend left.
        let midpoint = if k % 2 == 1 {
            let m = &right + &half;
            right += len;
            m
        } else {
            let m = &left - &half;
            left -= len;
            m
        };
        steps.push(PlacedInterval::plane(midpoint, len.clone()));
    }
    Ok(Placement::new(steps, order))
}

/// `ℓ₂/4` for the second-largest length, or 0 for a single item.
pub fn connected_optimum(lengths: &[Rational]) -> Result<Rational> {
    check_lengths(lengths)?;
    let order = descending(lengths);
    Ok(order
        .get(1)
        .map_or_else(|| int(0), |&i| &lengths[i] / int(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::deviation;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn lens(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&l| int(l)).collect()
    }

    fn ends(p: &Placement) -> Vec<(Rational, Rational)> {
        p.steps.iter().map(|s| (s.left(), s.right())).collect()
    }

    #[test]
    fn two_items() {
        let p = plan_connected(&lens(&[8, 4])).unwrap();
        assert_eq!(ends(&p), vec![(int(-5), int(3)), (int(3), int(7))]);
        assert_eq!(p.centers().centers, vec![int(0), int(-1), int(1)]);
        assert_eq!(connected_optimum(&lens(&[8, 4])).unwrap(), int(1));
    }

    #[test]
    fn four_items() {
        let p = plan_connected(&lens(&[8, 4, 2, 1])).unwrap();
        let e = ends(&p);
        assert_eq!(e[2], (int(-7), int(-5)));
        assert_eq!(e[3], (int(7), int(8)));
        assert_eq!(
            p.centers().centers,
            vec![int(0), int(-1), int(1), int(0), ratio(1, 2)]
        );
        assert_eq!(deviation(&p), int(1));
    }

    #[test]
    fn single_item_and_ties() {
        let p = plan_connected(&[ratio(7, 3)]).unwrap();
        assert_eq!(p.steps[0].midpoint, int(0));
        assert_eq!(deviation(&p), int(0));
        assert_eq!(connected_optimum(&[ratio(7, 3)]).unwrap(), int(0));
        assert_eq!(connected_optimum(&lens(&[5, 5, 5])).unwrap(), ratio(5, 4));
        let p = plan_connected(&lens(&[1, 5, 5, 3])).unwrap();
        assert_eq!(p.items, vec![1, 2, 3, 0]);
        assert_eq!(p.step_of_item(), vec![3, 0, 1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(plan_connected(&[]), Err(Error::EmptyInput("length list")));
        assert!(connected_optimum(&[]).is_err());
        assert!(plan_connected(&lens(&[3, 0])).is_err());
    }

    proptest! {
        #[test]
        fn stays_connected_and_optimal(v in prop::collection::vec((1i64..40, 1i64..5), 1..14)) {
            let lengths: Vec<Rational> = v.iter().map(|&(a, b)| ratio(a, b)).collect();
            let p = plan_connected(&lengths).unwrap();
            prop_assert!(p.validate().is_ok());
            let centers = p.centers().centers;
            let (mut lo, mut hi) = (p.steps[0].left(), p.steps[0].right());
            for (k, s) in p.steps.iter().enumerate() {
                // Each new interval touches the current union.
                if k > 0 {
                    prop_assert!(s.right() == lo || s.left() == hi);
                }
                lo = lo.min(s.left());
                hi = hi.max(s.right());
                prop_assert_eq!(&centers[k + 1], &((&lo + &hi) / int(2)));
            }
            prop_assert_eq!(deviation(&p), connected_optimum(&lengths).unwrap());
            for i in 3..centers.len() {
                let (a, b) = (&centers[i - 2], &centers[i - 1]);
                if i % 2 == 1 {
                    prop_assert!(a <= &centers[i] && &centers[i] <= b);
                } else {
                    prop_assert!(b <= &centers[i] && &centers[i] <= a);
                }
            }
        }
    }
}
