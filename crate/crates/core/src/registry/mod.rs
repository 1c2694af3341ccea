//! Identity catalogue and grid runner.

mod catalogue;
mod report;
mod scan;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracles::fit::{fit_discrepancy, DiscrepancyFit, FitMode};

pub use catalogue::catalogue;
pub use report::{format_sig, reports_to_csv, reports_to_json, summary_to_text};
pub use scan::{openproblem_scan, Monotonicity, ScanRow, ScanTable};

/// Named parameters of one grid point.
pub type Params = BTreeMap<String, f64>;

/// Grid over which identities are evaluated.
///
/// `x_values` are in units of `k` for identities whose natural variable is
/// `x/k`. `signed_values` cover identities that live on an interval around 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub k_values: Vec<f64>,
    pub x_values: Vec<f64>,
    pub signed_values: Vec<f64>,
    pub integer_params: BTreeMap<String, Vec<u32>>,
    pub exclusion_radius: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            k_values: vec![0.5, 1.0, 2.0, std::f64::consts::PI],
            x_values: vec![0.1, 0.35, 0.7, 1.0, 1.5, 2.5, 5.0],
            signed_values: vec![-0.9, -0.5, -0.25, 0.0, 0.25, 0.5, 0.9],
            integer_params: BTreeMap::from([("m".to_string(), (1..=6).collect()), ("n".to_string(), vec![1, 2, 3])]),
            exclusion_radius: 1e-3,
        }
    }
}

impl GridSpec {
    /// A grid with no k values; every entry then yields no points.
    pub fn empty() -> Self {
        GridSpec {
            k_values: Vec::new(),
            x_values: Vec::new(),
            signed_values: Vec::new(),
            integer_params: BTreeMap::new(),
            exclusion_radius: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(k) = self.k_values.iter().find(|k| !(k.is_finite() && **k > 0.0)) {
            return Err(Error::Parameter(format!(
                "grid: k values must be finite and > 0, got {k}"
            )));
        }
        if self.x_values.iter().chain(&self.signed_values).any(|x| !x.is_finite()) {
            return Err(Error::Parameter("grid: x values must be finite".into()));
        }
        if !(self.exclusion_radius >= 0.0) {
            return Err(Error::Parameter(format!(
                "grid: exclusion radius must be >= 0, got {}",
                self.exclusion_radius
            )));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.k_values.is_empty()
    }

    /// Values of an integer parameter; `fallback` if the grid does not set it.
    pub fn ints(&self, name: &str, fallback: &[u32]) -> Vec<u32> {
        self.integer_params
            .get(name)
            .cloned()
            .unwrap_or_else(|| fallback.to_vec())
    }
}

/// How the two sides of an identity are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|lhs − rhs| ≤ tol`.
    Absolute,
    /// `|lhs − rhs| ≤ tol · max(1, |lhs|, |rhs|)`.
    Relative,
    /// `lhs ≤ rhs + tol`.
    LessEq,
    /// `lhs < rhs`.
    Less,
    /// `lhs > rhs`.
    Greater,
}

impl Comparison {
    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        let diff = (lhs - rhs).abs();
        match self {
            Comparison::Absolute => diff <= tol,
            Comparison::Relative => diff <= tol * 1f64.max(lhs.abs()).max(rhs.abs()),
            Comparison::LessEq => lhs <= rhs + tol,
            Comparison::Less => lhs < rhs,
            Comparison::Greater => lhs > rhs,
        }
    }
}

/// Outcome the registry expects from an entry over a full grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Expectation {
    Pass,
    Fail,
}

/// Scale applied to both sides before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    None,
    /// Divide by `kᵐ`.
    KPowM,
    /// Divide by `m kᵐ/(m+1)`.
    MKPowMOverMPlusOne,
}

impl Normalization {
    fn factor(self, p: &Params) -> f64 {
        let k = p.get("k").copied().unwrap_or(1.0);
        let m = p.get("m").copied().unwrap_or(0.0);
        match self {
            Normalization::None => 1.0,
            Normalization::KPowM => k.powf(m),
            Normalization::MKPowMOverMPlusOne => m * k.powf(m) / (m + 1.0),
        }
    }
}

/// Constant-discrepancy hypothesis attached to an entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitSpec {
    pub mode: FitMode,
    /// Parameters whose values split the points into separately fitted groups.
    pub group_by: &'static [&'static str],
    pub normalization: Normalization,
}

/// Both sides of an identity at one grid point.
pub type Sides = (f64, f64);

/// A registered identity.
#[derive(Clone)]
pub struct IdentityEntry {
    pub id: &'static str,
    /// Short formula the entry checks.
    pub anchor: &'static str,
    pub comparison: Comparison,
    pub default_tol: f64,
    pub expectation: Expectation,
    pub fit: Option<FitSpec>,
    pub(crate) points: fn(&GridSpec) -> Vec<Params>,
    /// Distance (in the entry's natural units) to the nearest registered pole.
    pub(crate) pole_distance: Option<fn(&Params) -> f64>,
    pub(crate) eval: fn(&Params) -> Result<Sides>,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("comparison", &self.comparison)
            .field("default_tol", &self.default_tol)
            .field("expectation", &self.expectation)
            .finish_non_exhaustive()
    }
}

impl IdentityEntry {
    /// Grid points this entry is evaluated at.
    pub fn points(&self, grid: &GridSpec) -> Vec<Params> {
        if grid.is_empty() {
            Vec::new()
        } else {
            (self.points)(grid)
        }
    }

    /// Evaluates and judges one grid point.
    pub fn report_at(&self, params: Params, exclusion_radius: f64, tol: f64) -> IdentityReport {
        if let Some(dist) = self.pole_distance {
            let d = dist(&params);
            if d < exclusion_radius {
                return IdentityReport::skip(
                    self.id,
                    params,
                    format!("within {exclusion_radius} of a pole (distance {d:.3e})"),
                );
            }
        }
        match (self.eval)(&params) {
            Ok((lhs, rhs)) => {
                let verdict = if self.comparison.holds(lhs, rhs, tol) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                IdentityReport::new(self.id, params, lhs, rhs, verdict, String::new())
            }
            Err(e) => IdentityReport::new(self.id, params, f64::NAN, f64::NAN, Verdict::Fail, e.to_string()),
        }
    }
}

/// Verdict at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        })
    }
}

/// Result of checking one identity at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    #[serde(serialize_with = "finite_or_null")]
    pub lhs: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub rhs: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub abs_diff: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub rel_diff: f64,
    pub verdict: Verdict,
    pub note: String,
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

impl IdentityReport {
    pub fn new(id: &str, params: Params, lhs: f64, rhs: f64, verdict: Verdict, note: String) -> Self {
        let abs_diff = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_diff = if scale == 0.0 { 0.0 } else { abs_diff / scale };
        IdentityReport {
            identity_id: id.to_string(),
            params,
            lhs,
            rhs,
            abs_diff,
            rel_diff,
            verdict,
            note,
        }
    }

    fn skip(id: &str, params: Params, note: String) -> Self {
        IdentityReport::new(id, params, f64::NAN, f64::NAN, Verdict::Skip, note)
    }

    /// `k=..;x=..` rendering of the parameters, in name order.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn compare_params(a: &Params, b: &Params) -> Ordering {
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let ord = ka.cmp(kb).then(va.total_cmp(vb));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

fn sort_reports(reports: &mut [IdentityReport]) {
    reports.sort_by(|a, b| {
        a.identity_id
            .cmp(&b.identity_id)
            .then_with(|| compare_params(&a.params, &b.params))
    });
}

/// Looks up an entry by id.
pub fn find_entry(id: &str) -> Result<IdentityEntry> {
    catalogue()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn run_entry(entry: &IdentityEntry, grid: &GridSpec, tol_override: Option<f64>) -> Vec<IdentityReport> {
    let tol = tol_override.unwrap_or(entry.default_tol);
    let mut reports: Vec<IdentityReport> = entry
        .points(grid)
        .into_par_iter()
        .map(|p| entry.report_at(p, grid.exclusion_radius, tol))
        .collect();
    sort_reports(&mut reports);
    reports
}

/// Evaluates one identity over a grid, sorted by parameters.
pub fn run_identity(id: &str, grid: &GridSpec, tol_override: Option<f64>) -> Result<Vec<IdentityReport>> {
    let entry = find_entry(id)?;
    grid.validate()?;
    Ok(run_entry(&entry, grid, tol_override))
}

/// Discrepancy fit for one group of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupFit {
    pub group: Params,
    pub fit: Option<DiscrepancyFit>,
    pub note: String,
}

/// Per-identity tallies over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub id: String,
    pub anchor: String,
    pub expectation: Expectation,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    #[serde(serialize_with = "finite_or_null")]
    pub worst_rel_diff: f64,
    pub fits: Vec<GroupFit>,
}

impl IdentitySummary {
    /// A FAIL at an entry that is expected to pass.
    pub fn unexpected_fail(&self) -> bool {
        self.expectation == Expectation::Pass && self.fail > 0
    }

    /// An expected-to-fail entry that produced no FAIL.
    pub fn missing_fail(&self) -> bool {
        self.expectation == Expectation::Fail && self.fail == 0 && self.pass > 0
    }
}

/// Everything produced by a grid run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub identities: Vec<IdentitySummary>,
    pub reports: Vec<IdentityReport>,
}

impl RunSummary {
    pub fn unexpected_failures(&self) -> usize {
        self.identities.iter().filter(|s| s.unexpected_fail()).count()
    }

    pub fn summary(&self, id: &str) -> Option<&IdentitySummary> {
        self.identities.iter().find(|s| s.id == id)
    }

    pub fn reports_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a IdentityReport> + 'a {
        self.reports.iter().filter(move |r| r.identity_id == id)
    }
}

/// Group key (parameter bits) to the group parameters and its `(lhs, rhs)` pairs.
type Groups = BTreeMap<Vec<(String, u64)>, (Params, Vec<(f64, f64)>)>;

fn fit_groups(spec: &FitSpec, reports: &[IdentityReport]) -> Vec<GroupFit> {
    let mut groups = Groups::new();
    for r in reports.iter().filter(|r| r.verdict != Verdict::Skip) {
        if !(r.lhs.is_finite() && r.rhs.is_finite()) {
            continue;
        }
        let group: Params = spec
            .group_by
            .iter()
            .filter_map(|name| r.params.get(*name).map(|v| (name.to_string(), *v)))
            .collect();
        let key = group.iter().map(|(n, v)| (n.clone(), v.to_bits())).collect();
        let scale = spec.normalization.factor(&r.params);
        groups
            .entry(key)
            .or_insert_with(|| (group, Vec::new()))
            .1
            .push((r.lhs / scale, r.rhs / scale));
    }
    let mut fits: Vec<GroupFit> = groups
        .into_values()
        .map(|(group, pairs)| match fit_discrepancy(&pairs, spec.mode) {
            Ok(fit) => GroupFit {
                group,
                fit: Some(fit),
                note: String::new(),
            },
            Err(e) => GroupFit {
                group,
                fit: None,
                note: e.to_string(),
            },
        })
        .collect();
    fits.sort_by(|a, b| compare_params(&a.group, &b.group));
    fits
}

fn summarize(entry: &IdentityEntry, reports: &[IdentityReport]) -> IdentitySummary {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let worst_rel_diff = reports
        .iter()
        .filter(|r| r.verdict != Verdict::Skip && r.rel_diff.is_finite())
        .map(|r| r.rel_diff)
        .fold(f64::NAN, f64::max);
    IdentitySummary {
        id: entry.id.to_string(),
        anchor: entry.anchor.to_string(),
        expectation: entry.expectation,
        pass: count(Verdict::Pass),
        fail: count(Verdict::Fail),
        skip: count(Verdict::Skip),
        worst_rel_diff,
        fits: entry.fit.as_ref().map(|f| fit_groups(f, reports)).unwrap_or_default(),
    }
}

/// Runs the given entries over a grid.
pub fn run_entries(entries: &[IdentityEntry], grid: &GridSpec, tol_override: Option<f64>) -> Result<RunSummary> {
    grid.validate()?;
    let per_entry: Vec<(IdentitySummary, Vec<IdentityReport>)> = entries
        .par_iter()
        .map(|e| {
            let reports = run_entry(e, grid, tol_override);
            (summarize(e, &reports), reports)
        })
        .collect();
    let mut identities = Vec::with_capacity(per_entry.len());
    let mut reports = Vec::new();
    for (s, r) in per_entry {
        if s.pass + s.fail + s.skip > 0 {
            identities.push(s);
            reports.extend(r);
        }
    }
    identities.sort_by(|a, b| a.id.cmp(&b.id));
    sort_reports(&mut reports);
    Ok(RunSummary { identities, reports })
}

/// Runs every registered identity over a grid.
pub fn run_all(grid: &GridSpec) -> Result<RunSummary> {
    run_entries(&catalogue(), grid, None)
}
