//! Spectra of subuniverse and congruence counts over a census, and the
//! exhaustive checks run against them.
//!
//! Counts are compared on the scale `s = 2^(n-5)`: the three largest
//! subuniverse counts for `n >= 5` are `32s`, `26s` and `23s`, reached by
//! chains, by `C0 ⊕ B4 ⊕ C1` and by `C0 ⊕ N5 ⊕ C1` respectively; a lattice
//! with a three-element antichain has at most `20s` subuniverses. The five
//! largest congruence counts are `16s, 8s, 5s, 4s, 3.5s`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::canon::canonical_form;
use super::{build_census, CensusOptions, CensusRecord};
use crate::error::{check_size, Error, Result};
use crate::lattice::Lattice;
use crate::structure::Class;

/// Largest size the exhaustive reports accept.
pub const REPORT_LIMIT: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            witnesses: Vec::new(),
            counterexample: None,
        }
    }

    fn witnesses(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.witnesses = w.into_iter().collect();
        self
    }

    fn counterexample(mut self, c: Option<String>) -> Self {
        self.counterexample = c;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub assertion: String,
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(assertion: &str, n: usize, checks: Vec<Check>) -> Self {
        Report {
            assertion: assertion.into(),
            n,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    /// `Err(VerdictFailure)` naming the first failed check.
    pub fn into_result(self) -> Result<Report> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(self),
            Some(c) => Err(Error::VerdictFailure {
                check: format!(
                    "{} (n = {}): {}: {}",
                    self.assertion, self.n, c.name, c.detail
                ),
                counterexample: c.counterexample.clone(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Sub,
    Con,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub value: u64,
    /// `value / 2^(n-5)`.
    pub scaled: f64,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub measure: Measure,
    /// Distinct values, largest first.
    pub values: Vec<SpectrumEntry>,
    pub checks: Vec<Check>,
}

impl SpectrumReport {
    pub fn distinct_values(&self) -> Vec<u64> {
        self.values.iter().map(|e| e.value).collect()
    }

    pub fn witnesses_of(&self, value: u64) -> BTreeSet<String> {
        self.values
            .iter()
            .find(|e| e.value == value)
            .map(|e| e.witnesses.iter().cloned().collect())
            .unwrap_or_default()
    }
}

fn scaled(value: u64, n: usize) -> f64 {
    value as f64 / 2f64.powi(n as i32 - 5)
}

/// `q · 2^(n-5)` for `q` given in quarters (so `3.5` is `14`), if integral.
fn scaled_value(quarters: u64, n: usize) -> Option<u64> {
    let num = quarters << n;
    num.is_multiple_of(128).then_some(num / 128)
}

fn census(n: usize, with_congruences: bool) -> Result<Vec<CensusRecord>> {
    check_size(n, REPORT_LIMIT)?;
    build_census(
        n,
        CensusOptions {
            jobs: 1,
            with_congruences,
        },
    )
}

pub fn spectrum_of(records: &[CensusRecord], n: usize, measure: Measure) -> SpectrumReport {
    let mut by_value: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.n == n) {
        let v = match measure {
            Measure::Sub => r.sub_count,
            Measure::Con => r.con_count.expect("census built with congruence counts"),
        };
        by_value.entry(v).or_default().push(r.canon.clone());
    }
    let values: Vec<SpectrumEntry> = by_value
        .into_iter()
        .rev()
        .map(|(value, mut witnesses)| {
            witnesses.sort();
            SpectrumEntry {
                value,
                scaled: scaled(value, n),
                witnesses,
            }
        })
        .collect();
    let mut report = SpectrumReport {
        n,
        measure,
        values,
        checks: Vec::new(),
    };
    if n >= 5 {
        report.checks = match measure {
            Measure::Sub => top_three_checks(&report),
            Measure::Con => top_five_con_checks(&report),
        };
    }
    report
}

/// The multiset of subuniverse counts over all `n`-element lattices.
pub fn spectrum(n: usize) -> Result<SpectrumReport> {
    Ok(spectrum_of(&census(n, false)?, n, Measure::Sub))
}

/// The multiset of congruence counts over all `n`-element lattices.
pub fn con_spectrum(n: usize) -> Result<SpectrumReport> {
    Ok(spectrum_of(&census(n, true)?, n, Measure::Con))
}

/// Canonical forms of `C_{p+1} ⊕ core ⊕ C_{q+1}` over all `p + q = n - |core|`.
pub fn glued_shapes(core: &str, n: usize) -> Result<BTreeSet<String>> {
    let k = Lattice::named(core)?;
    if n < k.size() {
        return Ok(BTreeSet::new());
    }
    let spare = n - k.size();
    (0..=spare)
        .map(|p| {
            let l = Lattice::chain(p + 1)?
                .glued_sum(&k)?
                .glued_sum(&Lattice::chain(spare - p + 1)?)?;
            Ok(canonical_form(&l)?.to_string())
        })
        .collect()
}

pub fn chain_shape(n: usize) -> Result<BTreeSet<String>> {
    Ok([canonical_form(&Lattice::chain(n)?)?.to_string()].into())
}

fn rank_check(report: &SpectrumReport, rank: usize, label: &str, expected: u64) -> Check {
    let got = report.values.get(rank).map(|e| e.value);
    Check::new(
        format!("{label} value is {}·2^(n-5)", scaled(expected, report.n)),
        got == Some(expected),
        match got {
            Some(v) => format!("expected {expected}, observed {v}"),
            None => format!(
                "expected {expected}, observed fewer than {} values",
                rank + 1
            ),
        },
    )
}

fn witness_check(
    report: &SpectrumReport,
    value: u64,
    label: &str,
    expected: &BTreeSet<String>,
) -> Check {
    let got = report.witnesses_of(value);
    let stray = got.symmetric_difference(expected).next().cloned();
    Check::new(
        format!(
            "{label} value witnessed exactly by {} shape(s)",
            expected.len()
        ),
        got == *expected,
        format!("{} witness(es) observed", got.len()),
    )
    .witnesses(got)
    .counterexample(stray)
}

fn top_three_checks(report: &SpectrumReport) -> Vec<Check> {
    let n = report.n;
    vec![
        rank_check(report, 0, "largest", 1 << n),
        rank_check(report, 1, "second largest", 13 << (n - 4)),
        rank_check(report, 2, "third largest", 23 << (n - 5)),
    ]
}

fn expected_shapes(n: usize) -> Result<[BTreeSet<String>; 3]> {
    Ok([
        chain_shape(n)?,
        glued_shapes("B4", n)?,
        glued_shapes("N5", n)?,
    ])
}

pub fn theorem_report_for(records: &[CensusRecord], n: usize) -> Result<Report> {
    if n < 5 {
        return Err(Error::SizeLimit {
            n,
            max: REPORT_LIMIT,
        });
    }
    let report = spectrum_of(records, n, Measure::Sub);
    let targets = [1u64 << n, 13 << (n - 4), 23 << (n - 5)];
    let labels = ["largest", "second largest", "third largest"];
    let shapes = expected_shapes(n)?;
    let mut checks = Vec::new();
    for i in 0..3 {
        checks.push(rank_check(&report, i, labels[i], targets[i]));
        checks.push(witness_check(&report, targets[i], labels[i], &shapes[i]));
    }
    let mismatch = records.iter().filter(|r| r.n == n).find(|r| {
        let expected = match r.sub_count {
            c if c == targets[0] => Class::Chain,
            c if c == targets[1] => Class::GluedB4,
            c if c == targets[2] => Class::GluedN5,
            _ => Class::Other,
        };
        r.class != expected
    });
    checks.push(
        Check::new(
            "classifier agrees with the counts",
            mismatch.is_none(),
            "Chain/GluedB4/GluedN5 exactly when the count is 32s/26s/23s",
        )
        .counterexample(mismatch.map(|r| r.canon.clone())),
    );
    Ok(Report::new("main", n, checks))
}

pub fn theorem_report(n: usize) -> Result<Report> {
    check_size(n, REPORT_LIMIT)?;
    theorem_report_for(&census(n, false)?, n)
}

/// Top three subuniverse counts and their witnesses.
pub fn verify_theorem(n: usize) -> Result<Report> {
    theorem_report(n)?.into_result()
}

pub fn corollary_report_for(records: &[CensusRecord], n: usize) -> Result<Report> {
    if n < 5 {
        return Err(Error::SizeLimit {
            n,
            max: REPORT_LIMIT,
        });
    }
    let (lo, mid, hi) = (23u64 << (n - 5), 13u64 << (n - 4), 1u64 << n);
    let gap = |a: u64, b: u64| {
        let inside = records
            .iter()
            .find(|r| r.n == n && r.sub_count > a && r.sub_count < b);
        Check::new(
            format!("no count strictly between {a} and {b}"),
            inside.is_none(),
            inside.map_or("gap is empty".into(), |r| {
                format!("count {} occurs", r.sub_count)
            }),
        )
        .counterexample(inside.map(|r| r.canon.clone()))
    };
    let above = records.iter().find(|r| r.n == n && r.sub_count > hi);
    let checks = vec![
        gap(lo, mid),
        gap(mid, hi),
        Check::new(
            format!("no count above {hi}"),
            above.is_none(),
            "2^n bounds every count",
        )
        .counterexample(above.map(|r| r.canon.clone())),
    ];
    Ok(Report::new("corollary", n, checks))
}

pub fn corollary_report(n: usize) -> Result<Report> {
    check_size(n, REPORT_LIMIT)?;
    corollary_report_for(&census(n, false)?, n)
}

/// No count falls strictly between `23s` and `26s` or between `26s` and `2^n`.
pub fn verify_corollary(n: usize) -> Result<Report> {
    corollary_report(n)?.into_result()
}

/// Largest `|Sub(L)| / 2^(n-5)` over lattices with a three-element antichain,
/// with the canonical forms attaining it.
pub fn antichain_max_ratio(records: &[CensusRecord], n: usize) -> Option<(f64, Vec<String>)> {
    let best = records
        .iter()
        .filter(|r| r.n == n && r.antichain3)
        .map(|r| r.sub_count)
        .max()?;
    let witnesses = records
        .iter()
        .filter(|r| r.n == n && r.antichain3 && r.sub_count == best)
        .map(|r| r.canon.clone())
        .collect();
    Some((scaled(best, n), witnesses))
}

pub fn lemma4_report_for(records: &[CensusRecord], n: usize) -> Result<Report> {
    if n < 5 {
        return Err(Error::SizeLimit {
            n,
            max: REPORT_LIMIT,
        });
    }
    let bound = 20u64 << n;
    let with_antichain = records.iter().filter(|r| r.n == n && r.antichain3).count();
    let violator = records
        .iter()
        .find(|r| r.n == n && r.antichain3 && r.sub_count * 32 > bound);
    let mut checks = vec![Check::new(
        "three-element antichain implies at most 20·2^(n-5) subuniverses",
        violator.is_none(),
        format!("{with_antichain} lattice(s) with a three-element antichain"),
    )
    .counterexample(violator.map(|r| r.canon.clone()))];
    if let Some((ratio, witnesses)) = antichain_max_ratio(records, n) {
        checks.push(
            Check::new(
                "maximum ratio",
                ratio <= 20.0,
                format!("max |Sub(L)|/2^(n-5) = {ratio}"),
            )
            .witnesses(witnesses),
        );
    }
    Ok(Report::new("lemma4", n, checks))
}

pub fn lemma4_report(n: usize) -> Result<Report> {
    check_size(n, REPORT_LIMIT)?;
    lemma4_report_for(&census(n, false)?, n)
}

pub fn verify_lemma4(n: usize) -> Result<Report> {
    lemma4_report(n)?.into_result()
}

/// Expected top congruence counts, in quarters of `2^(n-5)`.
const CON_TOP_FIVE_QUARTERS: [u64; 5] = [64, 32, 20, 16, 14];

/// Each expected value that occurs must sit exactly below the expected values
/// above it that occur; values with no witness at this size are reported
/// without failing.
fn top_five_con_checks(report: &SpectrumReport) -> Vec<Check> {
    let n = report.n;
    let observed = report.distinct_values();
    let expected: Vec<Option<u64>> = CON_TOP_FIVE_QUARTERS
        .iter()
        .map(|&q| scaled_value(q, n))
        .collect();
    let mut checks = Vec::new();
    for (i, &q) in CON_TOP_FIVE_QUARTERS.iter().enumerate() {
        let label = format!("{}·2^(n-5) congruences", q as f64 / 4.0);
        let Some(v) = expected[i].filter(|v| observed.contains(v)) else {
            checks.push(Check::new(
                label,
                true,
                "no lattice of this size attains it",
            ));
            continue;
        };
        let above_observed: Vec<u64> = observed.iter().copied().filter(|&o| o > v).collect();
        let mut above_expected: Vec<u64> = expected[..i]
            .iter()
            .flatten()
            .copied()
            .filter(|e| observed.contains(e))
            .collect();
        above_expected.sort_unstable_by(|a, b| b.cmp(a));
        checks.push(Check::new(
            label,
            above_observed == above_expected,
            format!(
                "rank {} of {}; larger values {:?}",
                above_observed.len() + 1,
                observed.len(),
                above_observed
            ),
        ));
    }
    checks
}

pub fn remark1_report_for(records: &[CensusRecord], n: usize) -> Result<Report> {
    if n < 5 {
        return Err(Error::SizeLimit {
            n,
            max: REPORT_LIMIT,
        });
    }
    let report = spectrum_of(records, n, Measure::Con);
    let mut checks = report.checks.clone();
    let shapes = expected_shapes(n)?;
    let labels = ["largest", "second largest", "third largest"];
    for i in 0..3 {
        let v = scaled_value(CON_TOP_FIVE_QUARTERS[i], n).expect("integral for n >= 5");
        checks.push(witness_check(
            &report,
            v,
            &format!("{} congruence", labels[i]),
            &shapes[i],
        ));
    }
    Ok(Report::new("remark1", n, checks))
}

pub fn remark1_report(n: usize) -> Result<Report> {
    check_size(n, REPORT_LIMIT)?;
    remark1_report_for(&census(n, true)?, n)
}

/// Top congruence counts, and that the three largest are attained by the
/// same shapes as the three largest subuniverse counts.
pub fn verify_remark1(n: usize) -> Result<Report> {
    remark1_report(n)?.into_result()
}
