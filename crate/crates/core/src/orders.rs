//! Decision procedures for stochastic orders between finite distributions.
//!
//! Every procedure tests both directions, `x <= y` ("forward") and `y <= x`
//! ("backward"), and reports the first point where each defining inequality
//! fails. Exact-backend inputs are compared exactly; any float input is
//! compared with [`PROB_TOL`].

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::concentration::concentration_function;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::prob::{dist_le, float_cmp, Prob, PROB_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Less,
    Greater,
    Equivalent,
    Incomparable,
}

impl Relation {
    pub fn reversed(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            other => other,
        }
    }
}

/// Where a defining inequality fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Window length for the weak dispersive order.
    Eps(f64),
    /// Support point for the cdf comparison.
    Point(f64),
    /// Rank of a partial sum of descending masses.
    Rank(usize),
    /// Two support points for the likelihood ratio comparison.
    PointPair(f64, f64),
    /// 1-based identifying-sequence indices.
    IndexPair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub relation: Relation,
    /// A point where the inequality for `x <= y` fails.
    pub witness_forward: Option<Witness>,
    /// A point where the inequality for `y <= x` fails.
    pub witness_backward: Option<Witness>,
    /// Set when either input was truncated.
    pub approximate: bool,
}

impl OrderVerdict {
    pub fn from_violations(forward: Option<Witness>, backward: Option<Witness>, approximate: bool) -> Self {
        let relation = match (forward.is_some(), backward.is_some()) {
            (false, false) => Relation::Equivalent,
            (false, true) => Relation::Less,
            (true, false) => Relation::Greater,
            (true, true) => Relation::Incomparable,
        };
        OrderVerdict { relation, witness_forward: forward, witness_backward: backward, approximate }
    }

    /// Verdict for the swapped pair.
    pub fn reversed(&self) -> Self {
        OrderVerdict {
            relation: self.relation.reversed(),
            witness_forward: self.witness_backward,
            witness_backward: self.witness_forward,
            approximate: self.approximate,
        }
    }

    /// `x <= y` holds (strictly or with equivalence).
    pub fn holds(&self) -> bool {
        matches!(self.relation, Relation::Less | Relation::Equivalent)
    }
}

fn truncated(x: &Distribution, y: &Distribution) -> bool {
    x.tail_deficit() > 0.0 || y.tail_deficit() > 0.0
}

/// One `lhs` vs `rhs` comparison; the forward relation needs `lhs >= rhs`.
struct Check {
    at: Witness,
    cmp: Cmp,
}

enum Cmp {
    Exact(Ordering),
    Float { diff: f64, tol: f64 },
}

impl Check {
    fn abs(at: Witness, lhs: Prob, rhs: Prob) -> Self {
        let cmp = match lhs.exact_cmp(&rhs) {
            Some(o) => Cmp::Exact(o),
            None => Cmp::Float { diff: lhs.diff(&rhs), tol: PROB_TOL },
        };
        Check { at, cmp }
    }
}

fn first_violations(checks: &[Check], shift: f64) -> (Option<Witness>, Option<Witness>) {
    let mut fwd = None;
    let mut bwd = None;
    for c in checks {
        let ord = match c.cmp {
            Cmp::Exact(o) => o,
            Cmp::Float { diff, tol } => float_cmp(diff, (tol + shift).max(0.0)),
        };
        match ord {
            Ordering::Less if fwd.is_none() => fwd = Some(c.at),
            Ordering::Greater if bwd.is_none() => bwd = Some(c.at),
            _ => {}
        }
        if fwd.is_some() && bwd.is_some() {
            break;
        }
    }
    (fwd, bwd)
}

/// Assembles a verdict. With `band > 0` the checks are evaluated with the
/// tolerance shrunk and widened by `band`; if the two disagree the verdict is
/// Incomparable, and a missing witness is filled with the other direction's.
fn decide(checks: &[Check], band: f64, approximate: bool) -> OrderVerdict {
    if band == 0.0 {
        let (f, b) = first_violations(checks, 0.0);
        return OrderVerdict::from_violations(f, b, approximate);
    }
    let (sf, sb) = first_violations(checks, -band);
    let (lf, lb) = first_violations(checks, band);
    let strict = OrderVerdict::from_violations(sf, sb, approximate);
    let loose = OrderVerdict::from_violations(lf, lb, approximate);
    if strict.relation == loose.relation {
        return strict;
    }
    OrderVerdict {
        relation: Relation::Incomparable,
        witness_forward: sf.or(sb),
        witness_backward: sb.or(sf),
        approximate: true,
    }
}

fn deficit_band(x: &Distribution, y: &Distribution) -> f64 {
    2.0 * (x.tail_deficit() + y.tail_deficit())
}

/// Weak dispersive order: `x <= y` iff `Q_x(eps) >= Q_y(eps)` for every `eps > 0`.
///
/// Both concentration functions are constant between consecutive breakpoints
/// of either, so the union of breakpoints (including `0`, which stands for
/// the right limit `0+`) is a complete set of test points.
pub fn weak_dispersive_compare(x: &Distribution, y: &Distribution) -> OrderVerdict {
    let qx = concentration_function(x);
    let qy = concentration_function(y);
    let mut eps: Vec<f64> = qx.breakpoints().iter().chain(qy.breakpoints()).copied().collect();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    let checks: Vec<Check> = eps.iter().map(|&e| Check::abs(Witness::Eps(e), qx.eval(e), qy.eval(e))).collect();
    decide(&checks, deficit_band(x, y), truncated(x, y))
}

fn union_support(x: &Distribution, y: &Distribution) -> Vec<f64> {
    let mut grid: Vec<f64> = x.points().iter().chain(y.points()).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Usual stochastic order: `x <= y` iff `F_x(t) >= F_y(t)` everywhere.
pub fn stochastic_compare(x: &Distribution, y: &Distribution) -> OrderVerdict {
    let checks: Vec<Check> =
        union_support(x, y).into_iter().map(|t| Check::abs(Witness::Point(t), x.cdf(t), y.cdf(t))).collect();
    decide(&checks, deficit_band(x, y), truncated(x, y))
}

fn sorted_desc(d: &Distribution) -> Vec<Prob> {
    let mut m: Vec<Prob> = (0..d.len()).map(|i| d.mass(i)).collect();
    m.sort_by(|a, b| b.exact_cmp(a).unwrap_or_else(|| b.value().total_cmp(&a.value())));
    m
}

fn partial_sums(masses: &[Prob], len: usize) -> Vec<Prob> {
    let mut out = Vec::with_capacity(len);
    match masses.first() {
        Some(Prob::Exact { den, .. }) => {
            let mut acc = 0u64;
            for k in 0..len {
                if let Some(Prob::Exact { num, .. }) = masses.get(k) {
                    acc += num;
                }
                out.push(Prob::Exact { num: acc, den: *den });
            }
        }
        _ => {
            let mut acc = 0.0;
            for k in 0..len {
                acc += masses.get(k).map_or(0.0, |p| p.value());
                out.push(Prob::Approx(acc));
            }
        }
    }
    out
}

/// Randomness order: `x` is less random than `y` when the descending mass
/// vector of `x` majorizes that of `y` (zero-padded to a common length).
pub fn randomness_compare(x: &Distribution, y: &Distribution) -> OrderVerdict {
    let len = x.len().max(y.len());
    let sx = partial_sums(&sorted_desc(x), len);
    let sy = partial_sums(&sorted_desc(y), len);
    let checks: Vec<Check> = (0..len).map(|k| Check::abs(Witness::Rank(k + 1), sx[k], sy[k])).collect();
    decide(&checks, deficit_band(x, y), truncated(x, y))
}

/// Likelihood ratio order: `x <= y` iff `p_i q_j >= p_j q_i` for all union
/// support points `i < j`; a point missing from one support has mass zero.
pub fn lr_compare(x: &Distribution, y: &Distribution) -> OrderVerdict {
    let grid = union_support(x, y);
    let lookup = |d: &Distribution, t: f64| -> Prob {
        match d.points().binary_search_by(|p| p.total_cmp(&t)) {
            Ok(i) => d.mass(i),
            Err(_) => match d.total_count() {
                Some(den) => Prob::Exact { num: 0, den },
                None => Prob::Approx(0.0),
            },
        }
    };
    let p: Vec<Prob> = grid.iter().map(|&t| lookup(x, t)).collect();
    let q: Vec<Prob> = grid.iter().map(|&t| lookup(y, t)).collect();
    let mut checks = Vec::new();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let at = Witness::PointPair(grid[i], grid[j]);
            let cmp = match (p[i], q[j], p[j], q[i]) {
                (
                    Prob::Exact { num: pi, .. },
                    Prob::Exact { num: qj, .. },
                    Prob::Exact { num: pj, .. },
                    Prob::Exact { num: qi, .. },
                ) => Cmp::Exact((pi as u128 * qj as u128).cmp(&(pj as u128 * qi as u128))),
                _ => {
                    let lhs = p[i].value() * q[j].value();
                    let rhs = p[j].value() * q[i].value();
                    Cmp::Float { diff: lhs - rhs, tol: PROB_TOL * lhs.max(rhs) }
                }
            };
            checks.push(Check { at, cmp });
        }
    }
    decide(&checks, 0.0, truncated(x, y))
}

/// Indexed form `((x_1, p_1), ..., (x_n, p_n))` of a finite support with `n >= 2`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentifyingSequence {
    points: Vec<f64>,
    masses: Vec<Prob>,
    /// `cdf[a] = F(x_a)` with `cdf[0] = 0`.
    cdf: Vec<Prob>,
}

impl IdentifyingSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `x_a` for `a` in `1..=n`.
    pub fn point(&self, a: usize) -> f64 {
        self.points[a - 1]
    }

    /// `p_a` for `a` in `1..=n`.
    pub fn mass(&self, a: usize) -> Prob {
        self.masses[a - 1]
    }

    /// `F(x_a)` for `a` in `0..=n`.
    pub fn cdf(&self, a: usize) -> Prob {
        self.cdf[a]
    }

    /// `(a, x_a, p_a)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64, Prob)> + '_ {
        self.points.iter().zip(&self.masses).enumerate().map(|(i, (&x, &p))| (i + 1, x, p))
    }
}

pub fn identifying_sequence(x: &Distribution) -> Result<IdentifyingSequence> {
    if x.len() < 2 {
        return Err(Error::Degenerate);
    }
    let masses = (0..x.len()).map(|i| x.mass(i)).collect();
    let zero = match x.total_count() {
        Some(den) => Prob::Exact { num: 0, den },
        None => Prob::Approx(0.0),
    };
    let cdf = std::iter::once(zero).chain((0..x.len()).map(|i| x.cdf_index(i))).collect();
    Ok(IdentifyingSequence { points: x.points().to_vec(), masses, cdf })
}

fn prob_lt(a: &Prob, b: &Prob) -> bool {
    a.cmp_tol(b, PROB_TOL) == Ordering::Less
}

fn prob_max(a: Prob, b: Prob) -> Prob {
    if prob_lt(&a, &b) {
        b
    } else {
        a
    }
}

fn prob_min(a: Prob, b: Prob) -> Prob {
    if prob_lt(&b, &a) {
        b
    } else {
        a
    }
}

/// Dispersion-relevant index pairs `(a, b)`: the open cdf intervals
/// `(F(x_{a-1}), F(x_a))` and `(G(y_{b-1}), G(y_b))` intersect. The second set
/// keeps the pairs with `a, b >= 2` whose predecessors `(a-1, b-1)` are also relevant.
pub fn ek_relevant_pairs(
    f: &IdentifyingSequence,
    g: &IdentifyingSequence,
) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut relevant = Vec::new();
    for a in 1..=f.len() {
        for b in 1..=g.len() {
            let lo = prob_max(f.cdf(a - 1), g.cdf(b - 1));
            let hi = prob_min(f.cdf(a), g.cdf(b));
            if prob_lt(&lo, &hi) {
                relevant.push((a, b));
            }
        }
    }
    let set: HashSet<(usize, usize)> = relevant.iter().copied().collect();
    let chained = relevant.iter().copied().filter(|&(a, b)| a >= 2 && b >= 2 && set.contains(&(a - 1, b - 1))).collect();
    (relevant, chained)
}

/// First pair violating `f ≼ g`: the mass condition on relevant pairs, then
/// the gap condition on chained pairs.
fn ek_violation(f: &IdentifyingSequence, g: &IdentifyingSequence) -> Option<Witness> {
    let (relevant, chained) = ek_relevant_pairs(f, g);
    for &(a, b) in &relevant {
        if g.mass(b).cmp_tol(&f.mass(a), PROB_TOL) == Ordering::Greater {
            return Some(Witness::IndexPair(a, b));
        }
    }
    for &(a, b) in &chained {
        let gap_x = f.point(a) - f.point(a - 1);
        let gap_y = g.point(b) - g.point(b - 1);
        if !dist_le(gap_x, gap_y) {
            return Some(Witness::IndexPair(a, b));
        }
    }
    None
}

/// Discrete dispersive order built on dispersion-relevant pairs; `Less` means
/// `y` is at least as discretely dispersed as `x` and not conversely.
pub fn ek_discrete_compare(x: &Distribution, y: &Distribution) -> Result<OrderVerdict> {
    let f = identifying_sequence(x)?;
    let g = identifying_sequence(y)?;
    Ok(OrderVerdict::from_violations(ek_violation(&f, &g), ek_violation(&g, &f), truncated(x, y)))
}
