//! Location and dispersion measures for distributions and raw samples.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::concentration::{concentration_function, StepFunction};
use crate::dist::{from_counts, Distribution};
use crate::error::{Error, Result};
use crate::prob::{Prob, DIST_RTOL, PROB_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantileType {
    /// Linear interpolation between order statistics, `h = (n - 1) p + 1`.
    #[default]
    Interp,
    /// Generalized inverse of the empirical cdf.
    InverseCdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NuRobVariant {
    #[default]
    Raw,
    Sqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeasureOptions {
    pub quantile_type: QuantileType,
    pub nu_rob: NuRobVariant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conventions {
    pub sd_denominator: &'static str,
    pub mad_denominator: &'static str,
    pub gmd_denominator: &'static str,
    pub quantile_type: &'static str,
    pub nu_rob_variant: NuRobVariant,
}

/// Named measures plus the estimator conventions used to compute them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub values: BTreeMap<String, f64>,
    pub conventions: Conventions,
    pub notes: Vec<String>,
}

impl MeasureReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    fn set(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), v);
    }
}

/// Raw observations, stored grouped by distinct value.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    counts: Vec<u64>,
    /// `cum[g]` = number of observations in groups `0..g`.
    cum: Vec<u64>,
}

impl Sample {
    pub fn new(observations: &[f64]) -> Result<Self> {
        let rows: Vec<(f64, u64)> = observations.iter().map(|&x| (x, 1)).collect();
        Sample::from_counts(&rows)
    }

    /// Sample given as a frequency table; repeated values are merged.
    pub fn from_counts(rows: &[(f64, u64)]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty);
        }
        let mut rows = rows.to_vec();
        for &(v, c) in &rows {
            if !v.is_finite() {
                return Err(Error::NonFinitePoint(v));
            }
            if c == 0 {
                return Err(Error::ZeroCount { value: v });
            }
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values: Vec<f64> = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for (v, c) in rows {
            match values.last() {
                Some(&last) if last == v => {
                    let top = counts.last_mut().unwrap();
                    *top = top.checked_add(c).ok_or(Error::CountOverflow)?;
                }
                _ => {
                    values.push(v);
                    counts.push(c);
                }
            }
        }
        let mut cum = vec![0u64];
        for &c in &counts {
            cum.push(cum.last().unwrap().checked_add(c).ok_or(Error::CountOverflow)?);
        }
        Ok(Sample { values, counts, cum })
    }

    pub fn n(&self) -> u64 {
        *self.cum.last().unwrap()
    }

    pub fn groups(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.values.iter().copied().zip(self.counts.iter().copied())
    }

    /// Empirical distribution on the exact backend.
    pub fn distribution(&self) -> Result<Distribution> {
        from_counts(&self.groups().collect::<Vec<_>>())
    }

    /// `k`-th order statistic, 1-based.
    fn order_stat(&self, k: u64) -> f64 {
        let k = k.clamp(1, self.n());
        let g = self.cum.partition_point(|&c| c < k);
        self.values[g - 1]
    }

    pub fn quantile(&self, p: f64, qt: QuantileType) -> f64 {
        let n = self.n();
        match qt {
            QuantileType::Interp => {
                let h = (n - 1) as f64 * p + 1.0;
                let lo = h.floor();
                let a = self.order_stat(lo as u64);
                let b = self.order_stat(lo as u64 + 1);
                a + (h - lo) * (b - a)
            }
            QuantileType::InverseCdf => self.order_stat((n as f64 * p).ceil() as u64),
        }
    }

    pub fn mean(&self) -> f64 {
        let base = self.values[0];
        let s: f64 = self.groups().map(|(v, c)| c as f64 * (v - base)).sum();
        base + s / self.n() as f64
    }
}

/// Something the classical estimators can be applied to.
pub trait Measurable {
    fn classical(&self, qt: QuantileType) -> Result<MeasureReport>;
    fn as_distribution(&self) -> Result<Distribution>;
}

fn empty_report(sd: &'static str, mad: &'static str, gmd: &'static str, qt: &'static str) -> MeasureReport {
    MeasureReport {
        values: BTreeMap::new(),
        conventions: Conventions {
            sd_denominator: sd,
            mad_denominator: mad,
            gmd_denominator: gmd,
            quantile_type: qt,
            nu_rob_variant: NuRobVariant::Raw,
        },
        notes: Vec::new(),
    }
}

impl Measurable for Sample {
    fn classical(&self, qt: QuantileType) -> Result<MeasureReport> {
        let n = self.n();
        let nf = n as f64;
        let qt_name = match qt {
            QuantileType::Interp => "interp",
            QuantileType::InverseCdf => "inverse-cdf",
        };
        let mut r = empty_report("n-1", "n", "n(n-1)", qt_name);
        let mean = self.mean();
        let ss: f64 = self.groups().map(|(v, c)| c as f64 * (v - mean).powi(2)).sum();
        let abs: f64 = self.groups().map(|(v, c)| c as f64 * (v - mean).abs()).sum();
        // sum over ordered pairs i < j of x_(j) - x_(i), grouped
        let base = self.values[0];
        let mut pair_sum = 0.0;
        for (g, (v, c)) in self.groups().enumerate() {
            let below = self.cum[g] as f64;
            let above = (n - self.cum[g + 1]) as f64;
            pair_sum += c as f64 * (v - base) * (below - above);
        }
        let (sd, gmd) = if n > 1 { ((ss / (nf - 1.0)).sqrt(), 2.0 * pair_sum / (nf * (nf - 1.0))) } else { (0.0, 0.0) };
        r.set("n", nf);
        r.set("mean", mean);
        r.set("median", self.quantile(0.5, qt));
        r.set("sd", sd);
        r.set("mad", abs / nf);
        r.set("gmd", gmd.max(0.0));
        r.set("iqr", self.quantile(0.75, qt) - self.quantile(0.25, qt));
        r.set("entropy", entropy(&self.distribution()?));
        Ok(r)
    }

    fn as_distribution(&self) -> Result<Distribution> {
        self.distribution()
    }
}

/// Generalized inverse `min { x : F(x) >= p }`.
pub fn quantile(d: &Distribution, p: f64) -> f64 {
    let target = Prob::Approx(p);
    for i in 0..d.len() {
        if d.cdf_index(i).cmp_tol(&target, PROB_TOL) != std::cmp::Ordering::Less {
            return d.points()[i];
        }
    }
    d.max()
}

impl Measurable for Distribution {
    fn classical(&self, _qt: QuantileType) -> Result<MeasureReport> {
        let mut r = empty_report("population", "population", "plug-in", "generalized-inverse");
        let pts = self.points();
        let m = self.masses();
        let mean = self.mean();
        let var: f64 = pts.iter().zip(m).map(|(x, p)| p * (x - mean).powi(2)).sum();
        let mad: f64 = pts.iter().zip(m).map(|(x, p)| p * (x - mean).abs()).sum();
        let base = self.min();
        let mut gmd = 0.0;
        for i in 0..self.len() {
            let below = if i == 0 { 0.0 } else { self.cdf_index(i - 1).value() };
            let above = 1.0 - self.cdf_index(i).value();
            gmd += m[i] * (pts[i] - base) * (below - above);
        }
        r.set("mean", mean);
        r.set("median", quantile(self, 0.5));
        r.set("sd", var.max(0.0).sqrt());
        r.set("mad", mad);
        r.set("gmd", (2.0 * gmd).max(0.0));
        r.set("iqr", quantile(self, 0.75) - quantile(self, 0.25));
        r.set("entropy", entropy(self));
        Ok(r)
    }

    fn as_distribution(&self) -> Result<Distribution> {
        Ok(self.clone())
    }
}

/// SD, MAD, GMD, IQR, median, mean and entropy.
pub fn classical_measures<M: Measurable>(input: &M, qt: QuantileType) -> Result<MeasureReport> {
    input.classical(qt)
}

/// Classical measures together with `nu_1`, `nu_2` and `nu_rob`.
pub fn measure_report<M: Measurable>(input: &M, opts: MeasureOptions) -> Result<MeasureReport> {
    let mut r = input.classical(opts.quantile_type)?;
    let d = input.as_distribution()?;
    let q = concentration_function(&d);
    r.set("nu_1", nu_r_from(&q, 1.0));
    r.set("nu_2", nu_r_from(&q, 2.0));
    r.set("nu_rob", nu_rob_from(&q, opts.nu_rob));
    r.conventions.nu_rob_variant = opts.nu_rob;
    if d.points().iter().any(|x| x.fract() != 0.0) {
        r.notes.push("nu_rob evaluates Q at integer window lengths on a non-integer support".into());
    }
    if d.tail_deficit() > 0.0 {
        r.notes.push(format!("support truncated, tail deficit {:e}", d.tail_deficit()));
    }
    Ok(r)
}

/// Shannon entropy in bits.
pub fn entropy(d: &Distribution) -> f64 {
    let h: f64 = d.masses().iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    h.max(0.0)
}

/// `1 - v` as a float, exact in the numerator for count-backed values.
fn complement(v: &Prob) -> (f64, f64) {
    match *v {
        Prob::Exact { num, den } => ((den - num.min(den)) as f64, den as f64),
        Prob::Approx(x) => ((1.0 - x).max(0.0), 1.0),
    }
}

fn nu_r_from(q: &StepFunction, r: f64) -> f64 {
    let bps = q.breakpoints();
    let vals = q.values();
    let mut num = 0.0;
    let mut den = 1.0;
    for k in 0..bps.len().saturating_sub(1) {
        let (c, dk) = complement(&vals[k]);
        den = dk;
        num += c * (bps[k + 1].powf(r) - bps[k].powf(r));
    }
    0.5 * (num / den).powf(1.0 / r)
}

/// Concentration-based variability measure of order `r >= 1`:
/// `nu_r = (1/2) (sum_k (1 - Q(d_k)) (d_{k+1}^r - d_k^r))^{1/r}` over the
/// breakpoints `d_k` of `Q`.
pub fn nu_r(d: &Distribution, r: f64) -> Result<f64> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::InvalidOrder(r));
    }
    Ok(nu_r_from(&concentration_function(d), r))
}

/// `sum_{j=a}^{b} 1 / (1 + j^2)`; long runs far from zero use Euler-Maclaurin.
fn inv_square_sum(a: u64, b: u64) -> f64 {
    const DIRECT: u64 = 1000;
    let f = |j: f64| 1.0 / (1.0 + j * j);
    let mut s = 0.0;
    let mut j = a;
    while j <= b && (j < DIRECT || b - j < DIRECT) {
        s += f(j as f64);
        j += 1;
    }
    if j <= b {
        let (x, y) = (j as f64, b as f64);
        let df = |t: f64| -2.0 * t / (1.0 + t * t).powi(2);
        s += (y.atan() - x.atan()) + 0.5 * (f(x) + f(y)) + (df(y) - df(x)) / 12.0;
    }
    s
}

fn nu_rob_from(q: &StepFunction, variant: NuRobVariant) -> f64 {
    let bps = q.breakpoints();
    let vals = q.values();
    let mut raw = 0.0;
    // Q(j) takes the value of segment k for the integers j reaching d_k but
    // not d_{k+1}, with the same distance tolerance as the window sums.
    let first_reaching = |d: f64| (d / (1.0 + DIST_RTOL)).ceil() as u64;
    for k in 0..bps.len().saturating_sub(1) {
        let lo = first_reaching(bps[k]);
        let hi = first_reaching(bps[k + 1]);
        if hi == 0 || lo > hi - 1 {
            continue;
        }
        let (c, den) = complement(&vals[k]);
        raw += c / den * inv_square_sum(lo, hi - 1);
    }
    match variant {
        NuRobVariant::Raw => raw,
        NuRobVariant::Sqrt => raw.sqrt(),
    }
}

/// `sum_{k >= 0} (1 - Q(k)) / (1 + k^2)`, or its square root.
pub fn nu_rob(d: &Distribution, variant: NuRobVariant) -> f64 {
    nu_rob_from(&concentration_function(d), variant)
}

/// `E|X - a|^r`.
pub fn abs_moment(d: &Distribution, a: f64, r: f64) -> f64 {
    d.points().iter().zip(d.masses()).map(|(x, p)| p * (x - a).abs().powf(r)).sum()
}

/// `min_a E|X - a|^r`, by golden-section search on `[min, max]` (the
/// objective is convex), also checking every support point.
pub fn centered_rmoment_min(d: &Distribution, r: f64) -> Result<f64> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::InvalidOrder(r));
    }
    if d.is_degenerate() {
        return Ok(0.0);
    }
    let f = |a: f64| abs_moment(d, a, r);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (d.min(), d.max());
    let tol = 1e-10 * (1.0 + d.range());
    let mut c = hi - inv_phi * (hi - lo);
    let mut e = lo + inv_phi * (hi - lo);
    let (mut fc, mut fe) = (f(c), f(e));
    while hi - lo > tol {
        if fc <= fe {
            hi = e;
            e = c;
            fe = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = e;
            fc = fe;
            e = lo + inv_phi * (hi - lo);
            fe = f(e);
        }
    }
    let best = d.points().iter().map(|&x| f(x)).chain([f(0.5 * (lo + hi)), fc, fe]).fold(f64::INFINITY, f64::min);
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{family, make_distribution, TailBudget};

    fn three(m: &[f64]) -> Distribution {
        make_distribution(&[0.0, 1.0, 2.0], m).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn three_point_classical() {
        let p = classical_measures(&three(&[0.6, 0.2, 0.2]), QuantileType::Interp).unwrap();
        assert!(close(p.get("sd").unwrap(), 0.80, 0.005));
        assert!(close(p.get("mad").unwrap(), 0.72, 0.005));
        assert!(close(p.get("gmd").unwrap(), 0.80, 0.005));
        let q = classical_measures(&three(&[0.3, 0.5, 0.2]), QuantileType::Interp).unwrap();
        // E X = 0.9, E X^2 = 1.3
        assert!(close(q.get("sd").unwrap(), 0.7, 1e-12));
        assert!(close(q.get("mad").unwrap(), 0.54, 0.005));
        assert!(close(q.get("gmd").unwrap(), 0.74, 0.005));
    }

    #[test]
    fn sample_estimators() {
        let s = Sample::new(&[0.0, 5.0, 8.0, 8.0, 14.0, 15.0, 17.0, 19.0, 25.0]).unwrap();
        let r = classical_measures(&s, QuantileType::Interp).unwrap();
        assert!(close(r.get("sd").unwrap(), 7.746, 0.001));
        assert!(close(r.get("mad").unwrap(), 6.2963, 0.0001));
        assert!(close(r.get("gmd").unwrap(), 9.2778, 0.0001));
        assert_eq!(r.get("iqr").unwrap(), 9.0);
        assert_eq!(r.get("median").unwrap(), 14.0);
        assert_eq!(s.quantile(0.25, QuantileType::InverseCdf), 8.0);
        assert_eq!(s.quantile(0.75, QuantileType::InverseCdf), 17.0);
        assert!(matches!(Sample::new(&[]), Err(Error::Empty)));
        let one = classical_measures(&Sample::new(&[3.0]).unwrap(), QuantileType::Interp).unwrap();
        assert_eq!(one.get("sd"), Some(0.0));
        assert_eq!(one.get("gmd"), Some(0.0));
    }

    #[test]
    fn entropy_values() {
        assert!(close(entropy(&three(&[0.6, 0.2, 0.2])), 1.371, 0.001));
        assert!(close(entropy(&three(&[0.3, 0.5, 0.2])), 1.485, 0.001));
        assert_eq!(entropy(&Distribution::degenerate(1.0).unwrap()), 0.0);
    }

    #[test]
    fn nu_closed_forms() {
        let b = TailBudget::default();
        let be = family("bernoulli", &[0.3], b).unwrap();
        assert!(close(nu_r(&be, 1.0).unwrap(), 0.15, 1e-12));
        let g = family("geometric", &[0.5], b).unwrap();
        assert!(close(nu_r(&g, 1.0).unwrap(), 0.5, 1e-6));
        assert!(close(nu_r(&g, 2.0).unwrap(), 0.75f64.sqrt(), 1e-6));
        let u = family("uniform", &[1.0, 5.0], b).unwrap();
        assert_eq!(nu_r(&u, 1.0).unwrap(), 1.0);
        assert_eq!(nu_r(&Distribution::degenerate(2.0).unwrap(), 3.0).unwrap(), 0.0);
        assert!(matches!(nu_r(&u, 0.5), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn nu_rob_values() {
        let be = family("bernoulli", &[0.3], TailBudget::default()).unwrap();
        assert!(close(nu_rob(&be, NuRobVariant::Raw), 0.3, 1e-12));
        assert_eq!(nu_rob(&Distribution::degenerate(0.0).unwrap(), NuRobVariant::Sqrt), 0.0);
        // 134, 19, 9, 1, 2, 1, 1, 1 at 0, 1, 2, 4, 5, 7, 8, 12
        let s = Sample::from_counts(&[
            (0.0, 134),
            (1.0, 19),
            (2.0, 9),
            (4.0, 1),
            (5.0, 2),
            (7.0, 1),
            (8.0, 1),
            (12.0, 1),
        ])
        .unwrap();
        let d = s.distribution().unwrap();
        assert!(close(nu_rob(&d, NuRobVariant::Raw), 0.261168, 1e-6));
    }

    #[test]
    fn inv_square_sum_long_runs() {
        let direct: f64 = (0..200_000u64).map(|j| 1.0 / (1.0 + (j as f64).powi(2))).sum();
        assert!(close(inv_square_sum(0, 199_999), direct, 1e-12));
        let direct: f64 = (1500..90_000u64).map(|j| 1.0 / (1.0 + (j as f64).powi(2))).sum();
        assert!(close(inv_square_sum(1500, 89_999), direct, 1e-13));
    }

    #[test]
    fn rmoment_min() {
        let be = family("bernoulli", &[0.3], TailBudget::default()).unwrap();
        assert!(close(centered_rmoment_min(&be, 2.0).unwrap(), 0.21, 1e-9));
        assert!(close(centered_rmoment_min(&be, 1.0).unwrap(), 0.3, 1e-12));
        let u = family("uniform", &[1.0, 5.0], TailBudget::default()).unwrap();
        assert!(close(centered_rmoment_min(&u, 1.0).unwrap(), 1.2, 1e-12));
    }

    #[test]
    fn distribution_quantiles() {
        let d = three(&[0.25, 0.5, 0.25]);
        assert_eq!(quantile(&d, 0.25), 0.0);
        assert_eq!(quantile(&d, 0.5), 1.0);
        assert_eq!(quantile(&d, 0.75), 1.0);
    }
}
