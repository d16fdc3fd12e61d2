//! Input parsing and report assembly behind the `discdisp` binary.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::concentration::{combined_range_steps, concentration_function, dm_sequence, DmSequence};
use crate::dist::{Distribution, Family, TailBudget, DEFAULT_MAX_SUPPORT};
use crate::error::{Error, Result};
use crate::fixtures::{self, TABLE_COLUMNS};
use crate::measures::{measure_report, MeasureOptions, MeasureReport, NuRobVariant, QuantileType, Sample};
use crate::orders::{
    ek_discrete_compare, lr_compare, randomness_compare, stochastic_compare, weak_dispersive_compare, OrderVerdict,
};

/// How a `>=v` row in a counts file is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CensorPolicy {
    /// Place the censored observations at `v`.
    #[default]
    LowerBound,
    Reject,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Counts(PathBuf),
    Sample(PathBuf),
    /// Bundled example `id`, sample 1 (`a`) or 2 (`b`).
    Fixture { id: u32, sample: u32 },
    Family(Family),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub source: Source,
    pub censor_policy: CensorPolicy,
}

impl FromStr for DatasetSpec {
    type Err = Error;

    /// `counts:FILE`, `sample:FILE`, `fixture:<1-4><a|b>` or a family expression.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let source = if let Some(p) = s.strip_prefix("counts:") {
            Source::Counts(PathBuf::from(p))
        } else if let Some(p) = s.strip_prefix("sample:") {
            Source::Sample(PathBuf::from(p))
        } else if let Some(f) = s.strip_prefix("fixture:") {
            let bad = || Error::BadFamilyExpr(s.to_string());
            let (id, which) = f.split_at(f.len().checked_sub(1).ok_or_else(bad)?);
            let id: u32 = id.parse().map_err(|_| bad())?;
            let sample = match which {
                "a" => 1,
                "b" => 2,
                _ => return Err(bad()),
            };
            fixtures::counts_text(id, sample)?;
            Source::Fixture { id, sample }
        } else {
            Source::Family(s.parse()?)
        };
        Ok(DatasetSpec { source, censor_policy: CensorPolicy::default() })
    }
}

/// A parsed counts file: merged rows sorted by value.
#[derive(Debug, Clone, PartialEq)]
pub struct CountsTable {
    pub rows: Vec<(f64, u64)>,
    /// Value of the `>=v` row, if any.
    pub censored_at: Option<f64>,
}

impl CountsTable {
    pub fn censored(&self) -> bool {
        self.censored_at.is_some()
    }

    pub fn sample(&self) -> Result<Sample> {
        Sample::from_counts(&self.rows)
    }

    pub fn distribution(&self) -> Result<Distribution> {
        self.sample()?.distribution()
    }

    /// Canonical counts-file text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(v, c) in &self.rows {
            let prefix = if self.censored_at == Some(v) { ">=" } else { "" };
            let _ = writeln!(out, "{prefix}{v},{c}");
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses `value,count` lines with `#` comments and an optional `>=value,count` row.
pub fn parse_counts(text: &str, policy: CensorPolicy) -> Result<CountsTable> {
    let mut rows: Vec<(f64, u64)> = Vec::new();
    let mut censored_at = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (value, count) =
            content.split_once(',').ok_or_else(|| parse_err(line, format!("expected `value,count`, got `{content}`")))?;
        let value = value.trim();
        let (censored, value) = match value.strip_prefix(">=") {
            Some(v) => (true, v.trim()),
            None => (false, value),
        };
        let v: f64 = value.parse().map_err(|_| parse_err(line, format!("bad value `{value}`")))?;
        if !v.is_finite() {
            return Err(parse_err(line, format!("non-finite value `{value}`")));
        }
        let c: u64 = count.trim().parse().map_err(|_| parse_err(line, format!("bad count `{}`", count.trim())))?;
        if c == 0 {
            return Err(parse_err(line, format!("zero count for value {v}")));
        }
        if censored {
            if policy == CensorPolicy::Reject {
                return Err(Error::CensoredRejected(v));
            }
            if censored_at.is_some() {
                return Err(parse_err(line, "more than one censored row"));
            }
            censored_at = Some(v);
        }
        rows.push((v, c));
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, u64)> = Vec::with_capacity(rows.len());
    for (v, c) in rows {
        match merged.last_mut() {
            Some(last) if last.0 == v => last.1 = last.1.checked_add(c).ok_or(Error::CountOverflow)?,
            _ => merged.push((v, c)),
        }
    }
    Ok(CountsTable { rows: merged, censored_at })
}

/// Whitespace-separated reals.
pub fn parse_sample(text: &str) -> Result<Sample> {
    let mut obs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let x: f64 = tok.parse().map_err(|_| parse_err(i + 1, format!("bad number `{tok}`")))?;
            if !x.is_finite() {
                return Err(parse_err(i + 1, format!("non-finite number `{tok}`")));
            }
            obs.push(x);
        }
    }
    Sample::new(&obs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadOptions {
    pub tail_budget: TailBudget,
    pub max_support: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { tail_budget: TailBudget::default(), max_support: DEFAULT_MAX_SUPPORT }
    }
}

/// A loaded input: the distribution used for orders, plus the raw sample
/// when the input came from observations.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub label: String,
    pub distribution: Distribution,
    pub sample: Option<Sample>,
    pub censored: bool,
}

impl Dataset {
    pub fn from_table(label: impl Into<String>, table: &CountsTable) -> Result<Self> {
        let sample = table.sample()?;
        Ok(Dataset {
            label: label.into(),
            distribution: sample.distribution()?,
            sample: Some(sample),
            censored: table.censored(),
        })
    }

    pub fn fixture(id: u32, sample: u32) -> Result<Self> {
        let table = parse_counts(fixtures::counts_text(id, sample)?, CensorPolicy::LowerBound)?;
        let tag = if sample == 1 { 'a' } else { 'b' };
        Dataset::from_table(format!("fixture:{id}{tag}"), &table)
    }

    pub fn measures(&self, opts: MeasureOptions) -> Result<MeasureReport> {
        match &self.sample {
            Some(s) => measure_report(s, opts),
            None => measure_report(&self.distribution, opts),
        }
    }
}

pub fn load(spec: &DatasetSpec, opts: &LoadOptions) -> Result<Dataset> {
    match &spec.source {
        Source::Counts(path) => {
            let text = std::fs::read_to_string(path)?;
            let table = parse_counts(&text, spec.censor_policy)?;
            Dataset::from_table(format!("counts:{}", path.display()), &table)
        }
        Source::Sample(path) => {
            let sample = parse_sample(&std::fs::read_to_string(path)?)?;
            Ok(Dataset {
                label: format!("sample:{}", path.display()),
                distribution: sample.distribution()?,
                sample: Some(sample),
                censored: false,
            })
        }
        Source::Fixture { id, sample } => {
            let table = parse_counts(fixtures::counts_text(*id, *sample)?, spec.censor_policy)?;
            let tag = if *sample == 1 { 'a' } else { 'b' };
            Dataset::from_table(format!("fixture:{id}{tag}"), &table)
        }
        Source::Family(f) => Ok(Dataset {
            label: f.to_string(),
            distribution: f.build_capped(opts.tail_budget, opts.max_support)?,
            sample: None,
            censored: false,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompareOptions {
    /// Largest `m` of the `d_m` sequence; defaults to the combined range in steps.
    pub mmax: Option<u64>,
    pub measures: MeasureOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    pub wd: OrderVerdict,
    /// `None` when either input has a single support point.
    pub ek: Option<OrderVerdict>,
    pub st: OrderVerdict,
    pub lr: OrderVerdict,
    pub rand: OrderVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub a: String,
    pub b: String,
    pub verdicts: Verdicts,
    pub measures_a: MeasureReport,
    pub measures_b: MeasureReport,
    /// Present when both supports share a lattice.
    pub d_m: Option<DmSequence>,
    pub approximate: bool,
    pub censored: bool,
    pub notes: Vec<String>,
}

pub fn compare(a: &Dataset, b: &Dataset, opts: &CompareOptions) -> Result<ComparisonReport> {
    let (x, y) = (&a.distribution, &b.distribution);
    let mut notes = Vec::new();
    let ek = match ek_discrete_compare(x, y) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("ek: {e}"));
            None
        }
    };
    let verdicts = Verdicts {
        wd: weak_dispersive_compare(x, y),
        ek,
        st: stochastic_compare(x, y),
        lr: lr_compare(x, y),
        rand: randomness_compare(x, y),
    };
    let d_m = match opts.mmax.map_or_else(|| combined_range_steps(x, y), Ok).and_then(|m| dm_sequence(x, y, m)) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("d_m: {e}"));
            None
        }
    };
    let approximate = x.tail_deficit() > 0.0 || y.tail_deficit() > 0.0;
    let censored = a.censored || b.censored;
    if censored {
        notes.push("censored rows placed at their lower bound".into());
    }
    Ok(ComparisonReport {
        a: a.label.clone(),
        b: b.label.clone(),
        verdicts,
        measures_a: a.measures(opts.measures)?,
        measures_b: b.measures(opts.measures)?,
        d_m,
        approximate,
        censored,
        notes,
    })
}

/// `eps,q` rows, one per constant segment of the concentration function.
pub fn qcurve_csv(d: &Distribution) -> String {
    let mut out = String::from("eps,q\n");
    for (start, _, v) in concentration_function(d).segments() {
        let _ = writeln!(out, "{start},{}", v.value());
    }
    out
}

/// Measures of both samples of a bundled example next to the published values.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub id: u32,
    pub computed: [[f64; 7]; 2],
    pub published: [[f64; 7]; 2],
    pub wd: OrderVerdict,
    pub st: OrderVerdict,
    pub d_m: DmSequence,
    pub censored: bool,
}

pub fn example_report(id: u32, quantile_type: QuantileType) -> Result<ExampleReport> {
    if !(1..=4).contains(&id) {
        return Err(Error::UnknownExample(id));
    }
    let opts = MeasureOptions { quantile_type, nu_rob: NuRobVariant::Sqrt };
    let a = Dataset::fixture(id, 1)?;
    let b = Dataset::fixture(id, 2)?;
    let mut computed = [[0.0; 7]; 2];
    for (row, ds) in computed.iter_mut().zip([&a, &b]) {
        let m = ds.measures(opts)?;
        for (slot, name) in row.iter_mut().zip(TABLE_COLUMNS) {
            *slot = m.get(name).unwrap_or(f64::NAN);
        }
    }
    let (x, y) = (&a.distribution, &b.distribution);
    Ok(ExampleReport {
        id,
        computed,
        published: [fixtures::published(id, 1)?, fixtures::published(id, 2)?],
        wd: weak_dispersive_compare(x, y),
        st: stochastic_compare(x, y),
        d_m: dm_sequence(x, y, combined_range_steps(x, y)?)?,
        censored: a.censored || b.censored,
    })
}

impl ExampleReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", fixtures::TITLES[self.id as usize - 1]);
        let _ = write!(out, "{:<12}", "");
        for c in ["SD", "MAD", "GMD", "IQR", "nu_1", "nu_2", "nu_rob"] {
            let _ = write!(out, "{c:>9}");
        }
        out.push('\n');
        for s in 0..2 {
            let rows = [
                (format!("sample {}", s + 1), self.computed[s]),
                ("  published".to_string(), self.published[s]),
                ("  diff".to_string(), std::array::from_fn(|k| self.computed[s][k] - self.published[s][k])),
            ];
            for (label, vals) in rows {
                let _ = write!(out, "{label:<12}");
                for v in vals {
                    let _ = write!(out, "{v:>9.3}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "\nweak dispersive (sample 1 vs 2): {:?}", self.wd.relation);
        let _ = writeln!(out, "stochastic (sample 1 vs 2):      {:?}", self.st.relation);
        let dm: Vec<String> = self.d_m.values.iter().take(15).map(|v| format!("{v:.4}")).collect();
        let _ = writeln!(
            out,
            "d_m, m = 0..{}: {}{}",
            dm.len() - 1,
            dm.join(" "),
            if self.d_m.values.len() > 15 { " ..." } else { "" }
        );
        let _ = writeln!(out, "max |d_m| = {:.4}", self.d_m.max_abs());
        if self.censored {
            let _ = writeln!(
                out,
                "\nnote: sample 1 has a censored bin (>= 40, 4 observations) placed at 40; \
                 its SD, MAD, GMD and nu values are lower bounds and are not expected to \
                 match the published row"
            );
        }
        out
    }
}
