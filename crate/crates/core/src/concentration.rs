//! Lévy concentration function `Q(eps)`: the largest mass any closed interval
//! of length `eps` can hold.
//!
//! For a finite support the supremum is always attained by a window whose left
//! end is a support point, so `Q` is a right-continuous step function whose
//! jumps sit at pairwise support distances.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::dist::{common_lattice_step, lattice_info, Distribution, LatticeInfo};
use crate::error::{Error, Result};
use crate::prob::{dist_le, Prob, DIST_RTOL};

pub(crate) fn prob_gt(a: &Prob, b: &Prob) -> bool {
    match a.exact_cmp(b) {
        Some(o) => o == Ordering::Greater,
        None => a.value() > b.value(),
    }
}

/// `Q(eps)` via a two-pointer sweep over the sorted support.
pub fn concentration_at(d: &Distribution, eps: f64) -> Result<Prob> {
    if !(eps >= 0.0) {
        return Err(Error::NegativeEpsilon(eps));
    }
    let x = d.points();
    let n = x.len();
    let mut best = d.mass(0);
    let mut j = 0;
    for i in 0..n {
        j = j.max(i);
        while j + 1 < n && dist_le(x[j + 1] - x[i], eps) {
            j += 1;
        }
        let w = d.window_mass(i, j);
        if prob_gt(&w, &best) {
            best = w;
        }
        if j + 1 == n {
            break;
        }
    }
    Ok(best)
}

/// Right-continuous, nondecreasing step function `eps -> Q(eps)`.
///
/// The value on `[breakpoints[k], breakpoints[k + 1])` is `values[k]`; the last
/// value holds on `[breakpoints[K], inf)` and equals the total represented mass.
#[derive(Debug, Clone, Serialize)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<Prob>,
}

impl StepFunction {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Prob] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Value at `eps`; negative arguments are clamped to `0`.
    pub fn eval(&self, eps: f64) -> Prob {
        let eps = eps.max(0.0);
        let k = self.breakpoints.partition_point(|&b| dist_le(b, eps));
        self.values[k.max(1) - 1]
    }

    /// `(start, end, value)` per segment; the last segment has no end.
    pub fn segments(&self) -> impl Iterator<Item = (f64, Option<f64>, Prob)> + '_ {
        (0..self.len()).map(move |k| (self.breakpoints[k], self.breakpoints.get(k + 1).copied(), self.values[k]))
    }
}

#[derive(PartialEq)]
struct Event(f64, usize);

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Full concentration function of `d`.
///
/// Lattice supports with fewer sites than point pairs are swept on multiples
/// of the step. Other supports use an
/// event queue over pairwise distances: every left end keeps its current right
/// end and the queue yields the next distance at which some window grows.
pub fn concentration_function(d: &Distribution) -> StepFunction {
    let mut breakpoints = vec![0.0];
    let mut values = vec![concentration_at(d, 0.0).expect("eps = 0 is valid")];
    if d.is_degenerate() {
        return StepFunction { breakpoints, values };
    }
    let push = |eps: f64, q: Prob, bps: &mut Vec<f64>, vals: &mut Vec<Prob>| {
        if prob_gt(&q, vals.last().unwrap()) {
            bps.push(eps);
            vals.push(q);
        }
    };
    let n = d.len();
    let dense = |info: &LatticeInfo| ((d.range() / info.step).round() as usize) <= n * (n - 1) / 2;
    if let Some(info) = lattice_info(d).filter(dense) {
        let sites = (d.range() / info.step).round() as usize;
        for k in 1..=sites {
            let eps = k as f64 * info.step;
            let q = concentration_at(d, eps).expect("eps > 0");
            push(eps, q, &mut breakpoints, &mut values);
        }
        return StepFunction { breakpoints, values };
    }

    let x = d.points();
    let n = x.len();
    let mut right: Vec<usize> = (0..n).collect();
    let mut heap = BinaryHeap::new();
    for i in 0..n - 1 {
        heap.push(Reverse(Event(x[i + 1] - x[i], i)));
    }
    let mut best = *values.last().unwrap();
    while let Some(Reverse(Event(delta, _))) = heap.peek() {
        let delta = *delta;
        let group_end = delta + DIST_RTOL * delta;
        while let Some(Reverse(Event(dist, i))) = heap.peek() {
            if *dist > group_end {
                break;
            }
            let i = *i;
            heap.pop();
            let r = &mut right[i];
            while *r + 1 < n && dist_le(x[*r + 1] - x[i], delta) {
                *r += 1;
            }
            if *r + 1 < n {
                heap.push(Reverse(Event(x[*r + 1] - x[i], i)));
            }
            let w = d.window_mass(i, *r);
            if prob_gt(&w, &best) {
                best = w;
            }
        }
        push(delta, best, &mut breakpoints, &mut values);
    }
    StepFunction { breakpoints, values }
}

fn window_sup_on(d: &Distribution, origin: f64, step: f64, m: u64) -> Prob {
    let sites: Vec<u64> = d.points().iter().map(|&x| ((x - origin) / step).round() as u64).collect();
    let n = sites.len();
    let mut best = d.mass(0);
    let mut j = 0;
    for i in 0..n {
        j = j.max(i);
        while j + 1 < n && sites[j + 1] - sites[i] <= m {
            j += 1;
        }
        let w = d.window_mass(i, j);
        if prob_gt(&w, &best) {
            best = w;
        }
    }
    best
}

/// Largest mass of `m + 1` consecutive lattice sites.
pub fn window_sup(d: &Distribution, m: u64) -> Result<Prob> {
    let info = lattice_info(d).ok_or(Error::NotLattice)?;
    Ok(window_sup_on(d, info.origin, info.step, m))
}

/// Differences `d_m = sup window(x, m) - sup window(y, m)` on a shared lattice.
#[derive(Debug, Clone, Serialize)]
pub struct DmSequence {
    /// Lattice step shared by both inputs.
    pub step: f64,
    pub values: Vec<f64>,
}

impl DmSequence {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn all_nonpositive(&self) -> bool {
        self.values.iter().all(|&v| v <= 0.0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }
}

/// Common lattice step of two distributions; degenerate inputs fit any lattice.
pub fn common_step(x: &Distribution, y: &Distribution) -> Result<f64> {
    let sx = lattice_info(x).ok_or(Error::NotLattice)?;
    let sy = lattice_info(y).ok_or(Error::NotLattice)?;
    match (x.is_degenerate(), y.is_degenerate()) {
        (true, true) => Ok(1.0),
        (true, false) => Ok(sy.step),
        (false, true) => Ok(sx.step),
        (false, false) => common_lattice_step(sx.step, sy.step),
    }
}

/// Number of steps needed for a window to cover either support.
pub fn combined_range_steps(x: &Distribution, y: &Distribution) -> Result<u64> {
    let step = common_step(x, y)?;
    Ok((x.range().max(y.range()) / step).round() as u64)
}

pub fn dm_sequence(x: &Distribution, y: &Distribution, m_max: u64) -> Result<DmSequence> {
    let step = common_step(x, y)?;
    let values = (0..=m_max)
        .map(|m| {
            let a = window_sup_on(x, x.min(), step, m);
            let b = window_sup_on(y, y.min(), step, m);
            a.diff(&b)
        })
        .collect();
    Ok(DmSequence { step, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{affine, family, from_counts, make_distribution, TailBudget};

    fn three_point() -> Distribution {
        make_distribution(&[0.0, 1.0, 2.0], &[0.6, 0.2, 0.2]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn concentration_at_examples() {
        let p = three_point();
        assert!(close(concentration_at(&p, 1.0).unwrap().value(), 0.8));
        let b = family("bernoulli", &[0.3], TailBudget::default()).unwrap();
        assert!(close(concentration_at(&b, 0.5).unwrap().value(), 0.7));
        let e = from_counts(&[(0.0, 3), (4.0, 2), (9.0, 5)]).unwrap();
        let q = concentration_at(&e, 9.0).unwrap();
        assert_eq!(q.exact_cmp(&Prob::Exact { num: 1, den: 1 }), Some(Ordering::Equal));
        assert!(matches!(concentration_at(&e, -1.0), Err(Error::NegativeEpsilon(_))));
    }

    #[test]
    fn step_function_examples() {
        let b = family("bernoulli", &[0.3], TailBudget::default()).unwrap();
        let sf = concentration_function(&b);
        assert_eq!(sf.breakpoints(), &[0.0, 1.0]);
        assert!(close(sf.values()[0].value(), 0.7) && close(sf.values()[1].value(), 1.0));

        let deg = Distribution::degenerate(4.0).unwrap();
        let sf = concentration_function(&deg);
        assert_eq!(sf.breakpoints(), &[0.0]);
        assert!(close(sf.values()[0].value(), 1.0));

        let sf = concentration_function(&three_point());
        assert_eq!(sf.breakpoints(), &[0.0, 1.0, 2.0]);
        let v: Vec<f64> = sf.values().iter().map(|p| p.value()).collect();
        assert!(close(v[0], 0.6) && close(v[1], 0.8) && close(v[2], 1.0));
    }

    #[test]
    fn step_function_non_lattice_matches_pointwise() {
        let d = make_distribution(&[0.0, 1.0, 2f64.sqrt(), 3.7], &[0.1, 0.4, 0.2, 0.3]).unwrap();
        let sf = concentration_function(&d);
        for k in 0..400 {
            let eps = k as f64 * 0.01;
            assert!(close(sf.eval(eps).value(), concentration_at(&d, eps).unwrap().value()), "eps={eps}");
        }
        for &b in sf.breakpoints() {
            assert!(close(sf.eval(b).value(), concentration_at(&d, b).unwrap().value()));
        }
    }

    #[test]
    fn window_sup_examples() {
        let u = family("discrete_uniform", &[1.0, 5.0, 1.0], TailBudget::default()).unwrap();
        assert!(close(window_sup(&u, 2).unwrap().value(), 0.6));
        assert!(close(window_sup(&u, 10).unwrap().value(), 1.0));
        let s2 = from_counts(&[(0.0, 134), (1.0, 19), (2.0, 9), (4.0, 1), (5.0, 2), (7.0, 1), (8.0, 1), (12.0, 1)]).unwrap();
        let w = window_sup(&s2, 0).unwrap();
        assert_eq!(w.exact_cmp(&Prob::Exact { num: 134, den: 168 }), Some(Ordering::Equal));
        let irr = make_distribution(&[0.0, 1.0, 2f64.sqrt()], &[0.2, 0.3, 0.5]).unwrap();
        assert!(matches!(window_sup(&irr, 1), Err(Error::NotLattice)));
    }

    #[test]
    fn dm_sequence_self_is_zero() {
        let s = from_counts(&[(0.0, 3), (2.0, 1), (3.0, 4)]).unwrap();
        let dm = dm_sequence(&s, &s, 5).unwrap();
        assert!(dm.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dm_sequence_mixed_steps() {
        let a = from_counts(&[(0.0, 1), (1.0, 1)]).unwrap();
        let b = affine(&a, 2.0, 0.0).unwrap();
        let dm = dm_sequence(&a, &b, 2).unwrap();
        assert_eq!(dm.step, 1.0);
        assert_eq!(dm.values, vec![0.0, 0.5, 0.0]);
        let c = from_counts(&[(0.0, 1), (2f64.sqrt(), 1)]).unwrap();
        assert!(matches!(dm_sequence(&a, &c, 2), Err(Error::IncompatibleLattices(..))));
    }
}
