//! Plane loading of geometrically growing lengths `ℓ, ℓx, …, ℓx^{n-1}`.
//!
//! The largest item goes first, then the rest from smallest up. Midpoints
//! are solved so that the center alternates between `-τ` and `τ`, where
//! `τ = (ℓ' + ℓ'')ℓ'' / (4Σℓ)` and `ℓ' ≥ ℓ''` are the two largest lengths.
//! No placement of the same items keeps every center strictly inside
//! `(-τ, τ)`, so the plan is optimal whenever its intervals are disjoint.
//! For odd `n` the second and third items move together as one block.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{required_midpoint, PlacedInterval, Placement};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpSystem {
    pub ell: Rational,
    pub x: Rational,
    pub n: usize,
    /// `input_index[i]` is the caller's index of the item of length `ℓx^i`.
    pub input_index: Vec<usize>,
}

fn check_shape(x: &Rational, n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "the alternating construction needs at least 4 items, got {n}"
        )));
    }
    if *x < int(2) {
        return Err(Error::Unsupported(format!("growth factor {x} is below 2")));
    }
    Ok(())
}

impl ExpSystem {
    pub fn new(ell: Rational, x: Rational, n: usize) -> Result<Self> {
        if !ell.is_positive() {
            return Err(Error::NonPositiveLength(ell.to_string()));
        }
        check_shape(&x, n)?;
        Ok(Self {
            ell,
            x,
            n,
            input_index: (0..n).collect(),
        })
    }

    /// Recognizes a length list that is a geometric sequence in some order.
    pub fn from_lengths(lengths: &[Rational]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyInput("length list"));
        }
        if let Some(bad) = lengths.iter().find(|l| !l.is_positive()) {
            return Err(Error::NonPositiveLength(bad.to_string()));
        }
        let mut idx: Vec<usize> = (0..lengths.len()).collect();
        idx.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]));
        let n = idx.len();
        if n < 4 {
            check_shape(&int(2), n)?;
        }
        let ell = lengths[idx[0]].clone();
        let x = &lengths[idx[1]] / &ell;
        for w in idx.windows(2) {
            if lengths[w[1]] != &lengths[w[0]] * &x {
                return Err(Error::Unsupported(format!(
                    "lengths do not grow by a constant factor ({} then {})",
                    lengths[w[0]], lengths[w[1]]
                )));
            }
        }
        check_shape(&x, n)?;
        Ok(Self {
            ell,
            x,
            n,
            input_index: idx,
        })
    }

    /// Lengths `ℓx^i` for `i = 0..n`.
    pub fn lengths(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.n);
        let mut cur = self.ell.clone();
        for _ in 0..self.n {
            out.push(cur.clone());
            cur *= &self.x;
        }
        out
    }

    pub fn total(&self) -> Rational {
        self.lengths().into_iter().sum()
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// `τ` from its definition in terms of the two largest lengths.
pub fn tau_from_definition(sys: &ExpSystem) -> Rational {
    let lengths = sys.lengths();
    let first = &lengths[sys.n - 1];
    let second = &lengths[sys.n - 2];
    (first + second) * second / (int(4) * sys.total())
}

/// `ℓx^{2n-4}(x² - 1) / (4(x^n - 1))`.
pub fn tau_closed_form(sys: &ExpSystem) -> Rational {
    let n = sys.n as i64;
    let x = &sys.x;
    &sys.ell * pow(x, 2 * n - 4) * (x * x - int(1)) / (int(4) * (pow(x, n) - int(1)))
}

pub fn tau(sys: &ExpSystem) -> Rational {
    let t = tau_from_definition(sys);
    assert_eq!(
        t,
        tau_closed_form(sys),
        "closed form of tau disagrees with its definition"
    );
    t
}

/// No plan does better than `τ`.
pub fn exponential_lower_bound(sys: &ExpSystem) -> Rational {
    tau(sys)
}

pub fn plan_exponential(sys: &ExpSystem) -> Placement {
    let n = sys.n;
    let lengths = sys.lengths();
    let t = tau(sys);
    // Step k (0-based) places size index sizes[k].
    let sizes: Vec<usize> = std::iter::once(n - 1).chain(0..n - 1).collect();
    let len = |k: usize| &lengths[sizes[k]];
    // Even n alternates -τ, τ, -τ, … from step 1. Odd n does the same up to
    // the block ending at step 3, then continues -τ, τ from step 4.
    let target = |step: usize| {
        let flip = n % 2 == 1 && step >= 4;
        if step.is_multiple_of(2) != flip {
            t.clone()
        } else {
            -t.clone()
        }
    };

    let mut mids: Vec<Rational> = Vec::with_capacity(n);
    let mut cog = Rational::zero();
    let mut mass = Rational::zero();
    let mut k = 0;
    while k < n {
        let step = k + 1;
        if n % 2 == 1 && step == 2 {
            let block = len(1) + len(2);
            let q = required_midpoint(&cog, &mass, &t, &block);
            mids.push(&q - len(2) / int(2));
            mids.push(&q + len(1) / int(2));
            cog = t.clone();
            mass += block;
            k += 2;
            continue;
        }
        let goal = target(step);
        let m = required_midpoint(&cog, &mass, &goal, len(k));
        mass += len(k);
        cog = goal;
        mids.push(m);
        k += 1;
    }
    let steps = mids
        .into_iter()
        .enumerate()
        .map(|(k, m)| PlacedInterval::plane(m, len(k).clone()))
        .collect();
    let items = sizes.iter().map(|&s| sys.input_index[s]).collect();
    Placement::new(steps, items)
}

/// One polynomial inequality `lhs ≥ rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl ConditionCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs >= rhs;
        Self { lhs, rhs, holds }
    }
}

/// Inequalities that together keep the exponential plan's intervals
/// disjoint. `None` marks a condition that the given `n` does not use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessReport {
    pub x: Rational,
    pub n: usize,
    pub conditions: [Option<ConditionCheck>; 4],
}

impl DisjointnessReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().flatten().all(|c| c.holds)
    }
}

pub fn verify_disjointness_conditions(x: &Rational, n: usize) -> Result<DisjointnessReport> {
    if !x.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "growth factor must be positive, got {x}"
        )));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "need at least 4 items, got {n}"
        )));
    }
    let p = |e: i64| pow(x, e);
    let ni = n as i64;
    let c1 = || {
        ConditionCheck::new(
            p(ni + 7) + p(ni + 3) + p(5) + p(4) + p(2) + int(1),
            int(2) * p(ni + 5) + p(ni + 2) + p(ni) + p(7) + p(6),
        )
    };
    let c2 = ConditionCheck::new(
        p(ni + 5) + p(ni + 2) + p(ni + 1) + p(4) + p(2),
        int(2) * p(ni + 4) + p(ni) + p(5) + p(1),
    );
    let c3 = ConditionCheck::new(
        p(ni + 5) + p(ni + 1) + p(3) + int(2) * p(2) + int(1),
        int(2) * p(ni + 3) + p(ni + 2) + p(ni) + p(5) + p(4),
    );
    let c4 = || {
        let lhs = p(2 * ni)
            * (p(-2) - p(-4))
            * (p(ni + 2) - p(ni) - p(ni - 1) - p(3) - int(2) * p(2) - int(2) * p(1) - int(1));
        let rhs = (p(3) + p(1) + int(1)) * (p(ni) - int(1)) * (p(3) + p(4));
        ConditionCheck::new(lhs, rhs)
    };
    let odd = n % 2 == 1;
    let first = if n >= 6 { Some(c1()) } else { None };
    let fourth = if odd { Some(c4()) } else { None };
    Ok(DisjointnessReport {
        x: x.clone(),
        n,
        conditions: [first, Some(c2), Some(c3), fourth],
    })
}
