//! Finite-support discrete distributions.
//!
//! A [`Distribution`] stores a strictly increasing support with strictly
//! positive masses. Empirical data keep their integer counts (the exact
//! backend) so that every window sum and cdf value derived from them can be
//! compared without rounding; parametric families use floats and record the
//! probability mass cut off by truncation as `tail_deficit`.

use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::prob::Prob;

/// Default cap on the number of support points any constructor may produce.
pub const DEFAULT_MAX_SUPPORT: usize = 20_000;

/// Tolerance on `sum(masses) - 1` accepted by [`make_distribution`].
pub const MASS_SUM_TOL: f64 = 1e-9;

/// Lattices finer than this many sites across the range are rejected.
const MAX_LATTICE_SITES: f64 = 1e6;

/// Points of a convolution closer than this fraction of the operand magnitudes are merged.
const MERGE_RTOL: f64 = 1e-12;

/// Maximal probability mass that truncation of an infinite support may discard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBudget(f64);

impl TailBudget {
    pub fn new(max_deficit: f64) -> Result<Self> {
        if max_deficit > 0.0 && max_deficit < 1.0 {
            Ok(TailBudget(max_deficit))
        } else {
            Err(Error::InvalidTailBudget(max_deficit))
        }
    }

    pub fn max_deficit(&self) -> f64 {
        self.0
    }
}

impl Default for TailBudget {
    fn default() -> Self {
        TailBudget(1e-12)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    /// Integer counts `h_i` over the common denominator `total`.
    Counts { counts: Vec<u64>, total: u64, cum: Vec<u64> },
    Floating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    points: Vec<f64>,
    masses: Vec<f64>,
    cum: Vec<f64>,
    backend: Backend,
    tail_deficit: f64,
}

/// Every support point equals `origin + k * step` for an integer `k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeInfo {
    pub origin: f64,
    pub step: f64,
}

fn prefix_sums(masses: &[f64]) -> Vec<f64> {
    let mut cum = Vec::with_capacity(masses.len() + 1);
    cum.push(0.0);
    // Neumaier summation keeps the cdf close to the exact partial sums.
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for &m in masses {
        let t = s + m;
        if s.abs() >= m.abs() {
            c += (s - t) + m;
        } else {
            c += (m - t) + s;
        }
        s = t;
        cum.push(s + c);
    }
    cum
}

fn same_point(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SupportTooLarge { size, cap })
    } else {
        Ok(())
    }
}

impl Distribution {
    fn from_float_pairs(mut pairs: Vec<(f64, f64)>, tail_deficit: f64, tol: f64, cap: usize) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut points: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut masses: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, m) in pairs {
            match points.last() {
                Some(&last) if same_point(last, x, tol) => *masses.last_mut().unwrap() += m,
                _ => {
                    points.push(x);
                    masses.push(m);
                }
            }
        }
        check_cap(points.len(), cap)?;
        let cum = prefix_sums(&masses);
        Ok(Distribution { points, masses, cum, backend: Backend::Floating, tail_deficit })
    }

    fn from_count_pairs(mut pairs: Vec<(f64, u64)>, tol: f64, cap: usize) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut points: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut counts: Vec<u64> = Vec::with_capacity(pairs.len());
        for (x, h) in pairs {
            match points.last() {
                Some(&last) if same_point(last, x, tol) => {
                    let c = counts.last_mut().unwrap();
                    *c = c.checked_add(h).ok_or(Error::CountOverflow)?;
                }
                _ => {
                    points.push(x);
                    counts.push(h);
                }
            }
        }
        check_cap(points.len(), cap)?;
        let mut cum = Vec::with_capacity(counts.len() + 1);
        cum.push(0u64);
        for &h in &counts {
            let next = cum.last().unwrap().checked_add(h).ok_or(Error::CountOverflow)?;
            cum.push(next);
        }
        let total = *cum.last().unwrap();
        let masses: Vec<f64> = counts.iter().map(|&h| h as f64 / total as f64).collect();
        let fcum = cum.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(Distribution {
            points,
            masses,
            cum: fcum,
            backend: Backend::Counts { counts, total, cum },
            tail_deficit: 0.0,
        })
    }

    /// Point mass at `c`.
    pub fn degenerate(c: f64) -> Result<Self> {
        from_counts(&[(c, 1)])
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn counts(&self) -> Option<&[u64]> {
        match &self.backend {
            Backend::Counts { counts, .. } => Some(counts),
            Backend::Floating => None,
        }
    }

    /// Common denominator of the exact backend.
    pub fn total_count(&self) -> Option<u64> {
        match &self.backend {
            Backend::Counts { total, .. } => Some(*total),
            Backend::Floating => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.backend, Backend::Counts { .. })
    }

    pub fn tail_deficit(&self) -> f64 {
        self.tail_deficit
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.points.len() == 1
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    /// Mass of the support points with indices `i..=j`.
    pub fn window_mass(&self, i: usize, j: usize) -> Prob {
        match &self.backend {
            Backend::Counts { total, cum, .. } => Prob::Exact { num: cum[j + 1] - cum[i], den: *total },
            Backend::Floating => Prob::Approx(self.cum[j + 1] - self.cum[i]),
        }
    }

    pub fn mass(&self, i: usize) -> Prob {
        match &self.backend {
            Backend::Counts { counts, total, .. } => Prob::Exact { num: counts[i], den: *total },
            Backend::Floating => Prob::Approx(self.masses[i]),
        }
    }

    /// `F(x_i)`, the cdf at the i-th support point.
    pub fn cdf_index(&self, i: usize) -> Prob {
        self.window_mass(0, i)
    }

    /// `F(t) = Pr[X <= t]`.
    pub fn cdf(&self, t: f64) -> Prob {
        let k = self.points.partition_point(|&x| x <= t);
        match &self.backend {
            Backend::Counts { total, cum, .. } => Prob::Exact { num: cum[k], den: *total },
            Backend::Floating => Prob::Approx(self.cum[k]),
        }
    }

    /// Total represented mass: 1 for exact inputs, `1 - tail_deficit` otherwise.
    pub fn total_mass(&self) -> Prob {
        match &self.backend {
            Backend::Counts { total, .. } => Prob::Exact { num: *total, den: *total },
            Backend::Floating => Prob::Approx(*self.cum.last().unwrap()),
        }
    }

    pub fn max_mass(&self) -> Prob {
        match &self.backend {
            Backend::Counts { counts, total, .. } => {
                Prob::Exact { num: *counts.iter().max().unwrap(), den: *total }
            }
            Backend::Floating => Prob::Approx(self.masses.iter().cloned().fold(0.0, f64::max)),
        }
    }

    pub fn mean(&self) -> f64 {
        let s: f64 = self.points.iter().zip(&self.masses).map(|(x, p)| x * p).sum();
        s / self.cum.last().unwrap()
    }

    /// `(value, count)` rows of the exact backend.
    pub fn count_pairs(&self) -> Option<Vec<(f64, u64)>> {
        self.counts().map(|c| self.points.iter().cloned().zip(c.iter().cloned()).collect())
    }

    /// Same distribution with the float backend.
    pub fn to_floating(&self) -> Distribution {
        Distribution {
            points: self.points.clone(),
            masses: self.masses.clone(),
            cum: self.cum.clone(),
            backend: Backend::Floating,
            tail_deficit: self.tail_deficit,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", self.points[i], self.mass(i))?;
        }
        write!(f, "}}")
    }
}

/// Builds a float-backed distribution; duplicate points are merged.
pub fn make_distribution(points: &[f64], masses: &[f64]) -> Result<Distribution> {
    if points.is_empty() || masses.is_empty() {
        return Err(Error::Empty);
    }
    if points.len() != masses.len() {
        return Err(Error::LengthMismatch { points: points.len(), masses: masses.len() });
    }
    for (index, &m) in masses.iter().enumerate() {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::NonPositiveMass { index, value: m });
        }
    }
    if let Some(&x) = points.iter().find(|x| !x.is_finite()) {
        return Err(Error::NonFinitePoint(x));
    }
    let sum: f64 = masses.iter().sum();
    if (sum - 1.0).abs() > MASS_SUM_TOL {
        return Err(Error::MassSum { sum, tolerance: MASS_SUM_TOL });
    }
    let pairs = points.iter().cloned().zip(masses.iter().cloned()).collect();
    Distribution::from_float_pairs(pairs, 0.0, 0.0, DEFAULT_MAX_SUPPORT)
}

/// Builds an exact-backend distribution from `(value, count)` rows.
pub fn from_counts(pairs: &[(f64, u64)]) -> Result<Distribution> {
    if pairs.is_empty() {
        return Err(Error::Empty);
    }
    for &(value, count) in pairs {
        if count == 0 {
            return Err(Error::ZeroCount { value });
        }
        if !value.is_finite() {
            return Err(Error::NonFinitePoint(value));
        }
    }
    Distribution::from_count_pairs(pairs.to_vec(), 0.0, DEFAULT_MAX_SUPPORT)
}

/// Distribution of `a * X + b`.
pub fn affine(d: &Distribution, a: f64, b: f64) -> Result<Distribution> {
    if a == 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::ZeroScale);
    }
    map_points(d, |x| a * x + b)
}

fn map_points(d: &Distribution, f: impl Fn(f64) -> f64) -> Result<Distribution> {
    let cap = DEFAULT_MAX_SUPPORT.max(d.len());
    match &d.backend {
        Backend::Counts { counts, .. } => {
            let pairs = d.points.iter().map(|&x| f(x)).zip(counts.iter().cloned()).collect();
            Distribution::from_count_pairs(pairs, 0.0, cap)
        }
        Backend::Floating => {
            let pairs = d.points.iter().map(|&x| f(x)).zip(d.masses.iter().cloned()).collect();
            Distribution::from_float_pairs(pairs, d.tail_deficit, 0.0, cap)
        }
    }
}

/// Distribution of `phi(X)` for a map that is strictly monotone on the support.
pub fn map_monotone<F: Fn(f64) -> f64>(d: &Distribution, phi: F) -> Result<Distribution> {
    let images: Vec<f64> = d.points.iter().map(|&x| phi(x)).collect();
    if let Some(&y) = images.iter().find(|y| !y.is_finite()) {
        return Err(Error::NonFinitePoint(y));
    }
    if images.len() > 1 {
        let increasing = images[1] > images[0];
        for (k, w) in images.windows(2).enumerate() {
            let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                return Err(Error::NotStrictlyMonotone { left: d.points[k], right: d.points[k + 1] });
            }
        }
    }
    map_points(d, |x| phi(x))
}

/// Distribution of `X + Y` for independent `X` and `Y`.
pub fn convolve(x: &Distribution, y: &Distribution) -> Result<Distribution> {
    convolve_capped(x, y, DEFAULT_MAX_SUPPORT)
}

pub fn convolve_capped(x: &Distribution, y: &Distribution, cap: usize) -> Result<Distribution> {
    let product = x.len().saturating_mul(y.len());
    if product > cap.saturating_mul(cap) {
        return Err(Error::SupportTooLarge { size: product, cap });
    }
    // sums carry rounding proportional to the operand magnitudes, not to the sum
    let magnitude = |d: &Distribution| d.min().abs().max(d.max().abs());
    let tol = MERGE_RTOL * (magnitude(x) + magnitude(y));
    if let (Backend::Counts { counts: cx, total: tx, .. }, Backend::Counts { counts: cy, total: ty, .. }) =
        (&x.backend, &y.backend)
    {
        if tx.checked_mul(*ty).is_some() {
            let mut pairs = Vec::with_capacity(product);
            for (xi, hi) in x.points.iter().zip(cx) {
                for (yj, gj) in y.points.iter().zip(cy) {
                    pairs.push((xi + yj, hi * gj));
                }
            }
            return Distribution::from_count_pairs(pairs, tol, cap);
        }
    }
    let mut pairs = Vec::with_capacity(product);
    for (xi, pi) in x.points.iter().zip(&x.masses) {
        for (yj, qj) in y.points.iter().zip(&y.masses) {
            pairs.push((xi + yj, pi * qj));
        }
    }
    Distribution::from_float_pairs(pairs, x.tail_deficit + y.tail_deficit, tol, cap)
}

fn float_gcd(a: f64, b: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (a.max(b), a.min(b));
    for _ in 0..200 {
        if b <= tol {
            return a;
        }
        let mut r = a % b;
        if b - r <= tol {
            r = 0.0;
        }
        a = b;
        b = r;
    }
    0.0
}

/// Coarsest step `s` with every gap a whole multiple of `s`, up to `1e-9` of the range.
/// Steps coarser than `1e-6` of the range are accepted; finer ones report no lattice.
fn common_step(steps: &[f64], scale: f64) -> Option<f64> {
    let tol = 1e-9 * scale;
    let mut step = steps[0];
    for &s in &steps[1..] {
        step = float_gcd(step, s, tol);
        if step <= 0.0 {
            return None;
        }
    }
    if scale / step > MAX_LATTICE_SITES {
        return None;
    }
    // `scale` is itself a whole multiple of the step; dividing it out avoids
    // the drift the remainder chain accumulates.
    let step = scale / (scale / step).round();
    let ok = steps.iter().all(|&s| {
        let k = (s / step).round();
        (k * step - s).abs() <= tol
    });
    ok.then_some(step)
}

/// Lattice spanned by the support, if any. A single point is reported with step 1.
pub fn lattice_info(d: &Distribution) -> Option<LatticeInfo> {
    let origin = d.min();
    if d.is_degenerate() {
        return Some(LatticeInfo { origin, step: 1.0 });
    }
    let gaps: Vec<f64> = d.points.windows(2).map(|w| w[1] - w[0]).collect();
    let step = common_step(&gaps, d.range())?;
    Some(LatticeInfo { origin, step })
}

/// Coarsest step on which both lattices (of possibly different steps) live.
pub(crate) fn common_lattice_step(a: f64, b: f64) -> Result<f64> {
    common_step(&[a, b], a.max(b)).ok_or(Error::IncompatibleLattices(a, b))
}

/// Masses completed with zeros on every lattice site between min and max.
pub(crate) fn lattice_completed(d: &Distribution, info: &LatticeInfo) -> Vec<Prob> {
    let sites = (d.range() / info.step).round() as usize + 1;
    let zero = match d.total_count() {
        Some(total) => Prob::Exact { num: 0, den: total },
        None => Prob::Approx(0.0),
    };
    let mut out = vec![zero; sites];
    for (i, &x) in d.points.iter().enumerate() {
        let k = ((x - info.origin) / info.step).round() as usize;
        out[k] = d.mass(i);
    }
    out
}

/// Whether the lattice-completed pmf rises to a mode and then falls.
pub fn is_unimodal(d: &Distribution) -> Result<bool> {
    let info = lattice_info(d).ok_or(Error::NotLattice)?;
    let pmf = lattice_completed(d, &info);
    let tol = if d.is_exact() { 0.0 } else { 1e-12 };
    let n = pmf.len();
    let mut i = 0;
    while i + 1 < n && pmf[i + 1].cmp_tol(&pmf[i], tol).is_ge() {
        i += 1;
    }
    while i + 1 < n && pmf[i + 1].cmp_tol(&pmf[i], tol).is_le() {
        i += 1;
    }
    Ok(i + 1 == n)
}

/// Parametric families accepted by [`family`] and the family expression grammar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Bernoulli { p: f64 },
    Binomial { n: u64, p: f64 },
    Poisson { lambda: f64 },
    NegBinomial { r: f64, p: f64 },
    /// Number of trials up to and including the first success, support `1, 2, ...`.
    Geometric { p: f64 },
    Logarithmic { p: f64 },
    /// `U + 2V` with independent `U ~ Poisson(a)`, `V ~ Poisson(b)`.
    Hermite { a: f64, b: f64 },
    DiscreteUniform { a: f64, b: f64, step: f64 },
    Degenerate { c: f64 },
}

fn domain(family: &'static str, ok: bool, reason: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterOutOfDomain { family, reason: reason.into() })
    }
}

fn unit_closed(p: f64) -> bool {
    (0.0..=1.0).contains(&p)
}

fn unit_open(p: f64) -> bool {
    p > 0.0 && p < 1.0
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Bernoulli { .. } => "bernoulli",
            Family::Binomial { .. } => "binomial",
            Family::Poisson { .. } => "poisson",
            Family::NegBinomial { .. } => "neg_binomial",
            Family::Geometric { .. } => "geometric",
            Family::Logarithmic { .. } => "logarithmic",
            Family::Hermite { .. } => "hermite",
            Family::DiscreteUniform { .. } => "discrete_uniform",
            Family::Degenerate { .. } => "degenerate",
        }
    }

    /// Whether the untruncated law has infinite support.
    pub fn is_infinite(&self) -> bool {
        matches!(
            self,
            Family::Poisson { .. }
                | Family::NegBinomial { .. }
                | Family::Geometric { .. }
                | Family::Logarithmic { .. }
                | Family::Hermite { .. }
        )
    }

    pub fn build(&self, budget: TailBudget) -> Result<Distribution> {
        self.build_capped(budget, DEFAULT_MAX_SUPPORT)
    }

    pub fn build_capped(&self, budget: TailBudget, cap: usize) -> Result<Distribution> {
        let name = self.name();
        match *self {
            Family::Bernoulli { p } => {
                domain(name, unit_closed(p), format!("p = {p} outside [0, 1]"))?;
                finite_family(vec![(0.0, 1.0 - p), (1.0, p)], cap)
            }
            Family::Binomial { n, p } => {
                domain(name, unit_closed(p), format!("p = {p} outside [0, 1]"))?;
                let pairs = (0..=n)
                    .map(|k| {
                        let m = if p == 0.0 {
                            (k == 0) as u8 as f64
                        } else if p == 1.0 {
                            (k == n) as u8 as f64
                        } else {
                            (ln_choose(n, k) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p()).exp()
                        };
                        (k as f64, m)
                    })
                    .collect();
                finite_family(pairs, cap)
            }
            Family::Poisson { lambda } => {
                domain(name, lambda > 0.0 && lambda.is_finite(), format!("lambda = {lambda} must be > 0"))?;
                truncated_series(
                    0,
                    |k| (k as f64 * lambda.ln() - lambda - ln_gamma(k as f64 + 1.0)).exp(),
                    |k| lambda / (k as f64 + 1.0),
                    budget,
                    cap,
                )
            }
            Family::NegBinomial { r, p } => {
                domain(name, r > 0.0 && r.is_finite(), format!("r = {r} must be > 0"))?;
                domain(name, p > 0.0 && p <= 1.0, format!("p = {p} outside (0, 1]"))?;
                if p == 1.0 {
                    return Distribution::degenerate(0.0);
                }
                let lg_r = ln_gamma(r);
                truncated_series(
                    0,
                    |k| {
                        let k = k as f64;
                        (ln_gamma(k + r) - lg_r - ln_gamma(k + 1.0) + r * p.ln() + k * (-p).ln_1p()).exp()
                    },
                    |k| ((k as f64 + r) / (k as f64 + 1.0)).max(1.0) * (1.0 - p),
                    budget,
                    cap,
                )
            }
            Family::Geometric { p } => {
                domain(name, p > 0.0 && p <= 1.0, format!("p = {p} outside (0, 1]"))?;
                if p == 1.0 {
                    return Distribution::degenerate(1.0);
                }
                truncated_series(1, |k| p * ((k - 1) as f64 * (-p).ln_1p()).exp(), |_| 1.0 - p, budget, cap)
            }
            Family::Logarithmic { p } => {
                domain(name, unit_open(p), format!("p = {p} outside (0, 1)"))?;
                let norm = -1.0 / (-p).ln_1p();
                truncated_series(1, |k| norm * (k as f64 * p.ln()).exp() / k as f64, |_| p, budget, cap)
            }
            Family::Hermite { a, b } => {
                domain(name, a > 0.0 && b > 0.0, format!("a = {a}, b = {b} must both be > 0"))?;
                let half = TailBudget(budget.0 / 2.0);
                let u = Family::Poisson { lambda: a }.build_capped(half, cap)?;
                let v = Family::Poisson { lambda: b }.build_capped(half, cap)?;
                convolve_capped(&u, &affine(&v, 2.0, 0.0)?, cap)
            }
            Family::DiscreteUniform { a, b, step } => {
                domain(name, a.is_finite() && b.is_finite() && b >= a, format!("need a <= b, got a = {a}, b = {b}"))?;
                domain(name, step > 0.0 && step.is_finite(), format!("step = {step} must be > 0"))?;
                let span = (b - a) / step;
                domain(
                    name,
                    (span - span.round()).abs() <= 1e-9 * span.max(1.0),
                    "b - a must be a whole multiple of step",
                )?;
                let n = span.round() as usize + 1;
                check_cap(n, cap)?;
                let pairs = (0..n).map(|i| (a + i as f64 * step, 1u64)).collect();
                Distribution::from_count_pairs(pairs, 0.0, cap)
            }
            Family::Degenerate { c } => {
                domain(name, c.is_finite(), "point must be finite")?;
                Distribution::degenerate(c)
            }
        }
    }
}

fn ln_choose(n: u64, k: u64) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn finite_family(pairs: Vec<(f64, f64)>, cap: usize) -> Result<Distribution> {
    let pairs: Vec<(f64, f64)> = pairs.into_iter().filter(|&(_, m)| m > 0.0).collect();
    let sum: f64 = pairs.iter().map(|p| p.1).sum();
    let pairs = pairs.into_iter().map(|(x, m)| (x, m / sum)).collect();
    Distribution::from_float_pairs(pairs, 0.0, 0.0, cap)
}

/// Evaluates a pmf on `start, start + 1, ...` until the mass left over is
/// within budget. `ratio_bound(k)` must bound `pmf(j + 1) / pmf(j)` for every
/// `j >= k`; once the geometric tail bound it implies is negligible, rounding
/// in the running sum is absorbed by renormalising to `1 - bound`.
fn truncated_series(
    start: u64,
    pmf: impl Fn(u64) -> f64,
    ratio_bound: impl Fn(u64) -> f64,
    budget: TailBudget,
    cap: usize,
) -> Result<Distribution> {
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    let (mut s, mut c) = (0.0f64, 0.0f64);
    let mut k = start;
    loop {
        let m = pmf(k);
        if m > 0.0 {
            pairs.push((k as f64, m));
            let t = s + m;
            if s.abs() >= m {
                c += (s - t) + m;
            } else {
                c += (m - t) + s;
            }
            s = t;
        }
        let sum = s + c;
        if 1.0 - sum <= budget.0 {
            let deficit = (1.0 - sum).max(0.0);
            return Distribution::from_float_pairs(pairs, deficit, 0.0, cap);
        }
        let rho = ratio_bound(k);
        if rho < 1.0 && !pairs.is_empty() {
            let tail = m * rho / (1.0 - rho);
            if tail <= budget.0 * 1e-3 {
                let scale = (1.0 - tail) / sum;
                let pairs = pairs.into_iter().map(|(x, m)| (x, m * scale)).collect();
                return Distribution::from_float_pairs(pairs, tail, 0.0, cap);
            }
        }
        if pairs.len() > cap {
            return Err(Error::SupportTooLarge { size: pairs.len(), cap });
        }
        k += 1;
    }
}

/// Builds a parametric family by name, e.g. `family("poisson", &[2.0], budget)`.
pub fn family(name: &str, params: &[f64], budget: TailBudget) -> Result<Distribution> {
    Family::from_name(name, params)?.build(budget)
}

impl Family {
    pub fn from_name(name: &str, params: &[f64]) -> Result<Family> {
        let arity = |want: &[usize]| -> Result<()> {
            if want.contains(&params.len()) {
                Ok(())
            } else {
                Err(Error::BadFamilyExpr(format!("{name} takes {want:?} arguments, got {}", params.len())))
            }
        };
        let whole = |v: f64| -> Result<u64> {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as u64)
            } else {
                Err(Error::ParameterOutOfDomain { family: "binomial", reason: format!("n = {v} must be a whole number") })
            }
        };
        Ok(match name.trim().to_ascii_lowercase().as_str() {
            "bernoulli" => {
                arity(&[1])?;
                Family::Bernoulli { p: params[0] }
            }
            "binomial" => {
                arity(&[2])?;
                Family::Binomial { n: whole(params[0])?, p: params[1] }
            }
            "poisson" => {
                arity(&[1])?;
                Family::Poisson { lambda: params[0] }
            }
            "neg_binomial" | "negbinomial" | "nb" => {
                arity(&[2])?;
                Family::NegBinomial { r: params[0], p: params[1] }
            }
            "geometric" => {
                arity(&[1])?;
                Family::Geometric { p: params[0] }
            }
            "logarithmic" => {
                arity(&[1])?;
                Family::Logarithmic { p: params[0] }
            }
            "hermite" => {
                arity(&[2])?;
                Family::Hermite { a: params[0], b: params[1] }
            }
            "discrete_uniform" | "uniform" => {
                arity(&[2, 3])?;
                Family::DiscreteUniform { a: params[0], b: params[1], step: params.get(2).copied().unwrap_or(1.0) }
            }
            "degenerate" => {
                arity(&[1])?;
                Family::Degenerate { c: params[0] }
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for Family {
    /// Renders the `name(args)` form accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<f64> = match *self {
            Family::Bernoulli { p } | Family::Geometric { p } | Family::Logarithmic { p } => vec![p],
            Family::Binomial { n, p } => vec![n as f64, p],
            Family::Poisson { lambda } => vec![lambda],
            Family::NegBinomial { r, p } => vec![r, p],
            Family::Hermite { a, b } => vec![a, b],
            Family::DiscreteUniform { a, b, step } => vec![a, b, step],
            Family::Degenerate { c } => vec![c],
        };
        let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        write!(f, "{}({})", self.name(), args.join(", "))
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name(arg1, arg2, ...)`.
    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        let bad = || Error::BadFamilyExpr(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let name = s[..open].trim();
        if name.is_empty() {
            return Err(bad());
        }
        let params = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|a| a.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        Family::from_name(name, &params)
    }
}
