//! Uniform items with stacking up to height `μ`.
//!
//! The first `μ` items form a stack at `ℓ/(1+μ)`. The rest go into stacks
//! at unit offsets `ℓ/(1+μ) ± kℓ`, alternating left then right and filling
//! each pair of stacks layer by layer before opening the next pair. Every
//! prefix center stays in `[0, ℓ/(1+μ)]`, and no strategy does better once
//! `n > μ`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::model::{PlacedInterval, Placement};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackPlanParams {
    pub n: usize,
    /// Maximum stack height.
    pub mu: u32,
    /// Common item length.
    pub ell: Rational,
}

impl StackPlanParams {
    pub fn new(n: usize, mu: u32, ell: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if mu == 0 {
            return Err(Error::InvalidParameter(
                "maximum stack height must be at least 1".into(),
            ));
        }
        if !ell.is_positive() {
            return Err(Error::NonPositiveLength(ell.to_string()));
        }
        Ok(Self { n, mu, ell })
    }

    /// Unit items.
    pub fn unit(n: usize, mu: u32) -> Result<Self> {
        Self::new(n, mu, int(1))
    }
}

pub fn plan_stacked(params: &StackPlanParams) -> Placement {
    let StackPlanParams { n, mu, ell } = params;
    let (n, mu) = (*n, *mu as usize);
    let items: Vec<usize> = (0..n).collect();
    if n <= mu {
        let steps = (0..n)
            .map(|h| PlacedInterval::new(int(0), ell.clone(), h as u32 + 1))
            .collect();
        return Placement::new(steps, items);
    }
    let base = ell / int(mu as i64 + 1);
    let mut steps: Vec<PlacedInterval> = (0..mu)
        .map(|h| PlacedInterval::new(base.clone(), ell.clone(), h as u32 + 1))
        .collect();
    for t in 0..n - mu {
        let pair = (t / (2 * mu) + 1) as i64;
        let within = t % (2 * mu);
        let layer = (within / 2 + 1) as u32;
        let offset = ell * int(pair);
        let midpoint = if within % 2 == 0 {
            &base - offset
        } else {
            &base + offset
        };
        steps.push(PlacedInterval::new(midpoint, ell.clone(), layer));
    }
    Placement::new(steps, items)
}

/// `ℓ/(1+μ)` when more than one stack is needed, else 0.
pub fn stacked_optimum(params: &StackPlanParams) -> Rational {
    if params.n > params.mu as usize {
        &params.ell / int(params.mu as i64 + 1)
    } else {
        int(0)
    }
}
