//! Independent oracles for the integration tests. Everything here uses plain
//! integer arithmetic and direct enumeration, sharing no code with the
//! library beyond the result type.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashSet;

use cogbalance::rational::ratio;
use cogbalance::Rational;

/// Nonnegative-denominator fraction over `i128`.
#[derive(Debug, Clone, Copy)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den > 0);
        Self { num, den }
    }

    pub fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.num.into(), self.den.into())
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

fn distinct_counts(points: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut values: Vec<i64> = points.to_vec();
    values.sort();
    values.dedup();
    let counts = values
        .iter()
        .map(|v| points.iter().filter(|p| *p == v).count())
        .collect();
    (values, counts)
}

/// Minimum over all loading orders of `max C_k - min C_k`, `C_k` the mean of
/// the first `k` points. Plain depth-first enumeration over the multiset.
pub fn brute_min_span(points: &[i64]) -> Rational {
    let (values, mut counts) = distinct_counts(points);
    let mut best: Option<Frac> = None;
    #[allow(clippy::too_many_arguments)]
    fn go(
        values: &[i64],
        counts: &mut [usize],
        k: i128,
        sum: i128,
        lo: Option<Frac>,
        hi: Option<Frac>,
        left: usize,
        best: &mut Option<Frac>,
    ) {
        if left == 0 {
            let span = hi.unwrap().sub(lo.unwrap());
            if best.is_none_or(|b| span < b) {
                *best = Some(span);
            }
            return;
        }
        for v in 0..values.len() {
            if counts[v] == 0 {
                continue;
            }
            counts[v] -= 1;
            let s = sum + values[v] as i128;
            let c = Frac::new(s, k + 1);
            let lo2 = lo.map_or(c, |l| l.min(c));
            let hi2 = hi.map_or(c, |h| h.max(c));
            if best.is_none_or(|b| hi2.sub(lo2) < b) {
                go(
                    values,
                    counts,
                    k + 1,
                    s,
                    Some(lo2),
                    Some(hi2),
                    left - 1,
                    best,
                );
            }
            counts[v] += 1;
        }
    }
    go(
        &values,
        &mut counts,
        0,
        0,
        None,
        None,
        points.len(),
        &mut best,
    );
    best.unwrap().to_rational()
}

/// `min over orders of max_k |x_(k)| / k`, by enumeration.
pub fn brute_minimax_ratio(points: &[i64]) -> Rational {
    let mags: Vec<i64> = points.iter().map(|p| p.abs()).collect();
    let (values, mut counts) = distinct_counts(&mags);
    let mut best: Option<Frac> = None;
    fn go(
        values: &[i64],
        counts: &mut [usize],
        k: i128,
        worst: Frac,
        left: usize,
        best: &mut Option<Frac>,
    ) {
        if left == 0 {
            if best.is_none_or(|b| worst < b) {
                *best = Some(worst);
            }
            return;
        }
        for v in 0..values.len() {
            if counts[v] == 0 {
                continue;
            }
            counts[v] -= 1;
            let w = worst.max(Frac::new(values[v] as i128, k + 1));
            go(values, counts, k + 1, w, left - 1, best);
            counts[v] += 1;
        }
    }
    go(
        &values,
        &mut counts,
        0,
        Frac::new(0, 1),
        points.len(),
        &mut best,
    );
    best.unwrap().to_rational()
}

/// Smallest deviation of any connected plane placement of the given
/// lengths: every order, every left/right attachment, best horizontal shift.
pub fn brute_connected_deviation(lengths: &[i64]) -> Rational {
    let n = lengths.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = i128::MAX;
    loop {
        for sides in 0..(1u64 << n.saturating_sub(1)) {
            // Coordinates doubled; lo + hi is four times the center.
            let first = lengths[perm[0]] as i128;
            let (mut lo, mut hi) = (-first, first);
            let (mut min_c, mut max_c) = (0i128, 0i128);
            for (j, &i) in perm.iter().enumerate().skip(1) {
                let l2 = 2 * lengths[i] as i128;
                if sides >> (j - 1) & 1 == 1 {
                    hi += l2;
                } else {
                    lo -= l2;
                }
                min_c = min_c.min(lo + hi);
                max_c = max_c.max(lo + hi);
            }
            best = best.min(max_c - min_c);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    ratio(best as i64, 8)
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Grid search for a plane placement of integer `lengths` keeping every
/// prefix center strictly inside `(-bound, bound)`. Midpoints range over
/// multiples of `1/mesh` within `[-window, window]`. `bound = bn/bd`.
/// Returns a witness as `(order, midpoints in mesh units)`.
pub fn grid_search_below(
    lengths: &[i64],
    bn: i64,
    bd: i64,
    mesh: i64,
    window: i64,
) -> Option<(Vec<usize>, Vec<i64>)> {
    let n = lengths.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut mids = Vec::with_capacity(n);
        let ls: Vec<i64> = perm.iter().map(|&i| lengths[i]).collect();
        if grid_step(&ls, bn, bd, mesh, window, 0, 0, &mut mids) {
            return Some((perm, mids));
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn grid_step(
    ls: &[i64],
    bn: i64,
    bd: i64,
    mesh: i64,
    window: i64,
    moment: i64,
    mass: i64,
    mids: &mut Vec<i64>,
) -> bool {
    let j = mids.len();
    if j == ls.len() {
        return true;
    }
    let l = ls[j];
    let mass2 = mass + l;
    // Need |moment + l·k| · bd < bn · mesh · mass2 with k in mesh units.
    let lim = bn * mesh * mass2;
    let lo = (-lim - moment * bd).div_euclid(l * bd) - 1;
    let hi = (lim - moment * bd).div_euclid(l * bd) + 1;
    let w = window * mesh;
    for k in lo.max(-w)..=hi.min(w) {
        let m2 = moment + l * k;
        if (m2 * bd).abs() >= lim {
            continue;
        }
        // Open intervals [k - l·mesh/2, k + l·mesh/2] in mesh units, doubled.
        let clash = mids
            .iter()
            .zip(ls)
            .any(|(&k2, &l2)| (2 * (k - k2)).abs() < (l + l2) * mesh);
        if clash {
            continue;
        }
        mids.push(k);
        if grid_step(ls, bn, bd, mesh, window, m2, mass2, mids) {
            return true;
        }
        mids.pop();
    }
    false
}

/// Whether some order of the multiset keeps every prefix mean in
/// `[lo_n/den, hi_n/den]`, by memoized search over remaining counts.
pub fn multiset_window_feasible(points: &[i64], lo_n: i64, hi_n: i64, den: i64) -> bool {
    let (values, counts) = distinct_counts(points);
    let mut dead: HashSet<Vec<usize>> = HashSet::new();
    fn go(
        values: &[i64],
        used: &mut Vec<usize>,
        counts: &[usize],
        sum: i128,
        k: i128,
        w: (i64, i64, i64),
        dead: &mut HashSet<Vec<usize>>,
    ) -> bool {
        if used.iter().zip(counts).all(|(u, c)| u == c) {
            return true;
        }
        if dead.contains(used) {
            return false;
        }
        for v in 0..values.len() {
            if used[v] == counts[v] {
                continue;
            }
            let s = sum + values[v] as i128;
            let k2 = k + 1;
            let (lo, hi, den) = (w.0 as i128, w.1 as i128, w.2 as i128);
            if s * den < lo * k2 || s * den > hi * k2 {
                continue;
            }
            used[v] += 1;
            if go(values, used, counts, s, k2, w, dead) {
                return true;
            }
            used[v] -= 1;
        }
        dead.insert(used.clone());
        false
    }
    let mut used = vec![0; values.len()];
    go(
        &values,
        &mut used,
        &counts,
        0,
        0,
        (lo_n, hi_n, den),
        &mut dead,
    )
}

/// Small deterministic generator so oracle tests do not depend on the
/// library's random families.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}
