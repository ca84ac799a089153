//! Serializable report sections.

use crate::document::TensorDocument;
use echar_core::eigen::{self, EigenStructure};
use echar_core::verify::{FuzzCase, Verdict};
use echar_core::{Complex64, EcharResult, Eigenpair, Tensor};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub echar: Option<EcharSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
}

#[derive(Debug, Serialize)]
pub struct EcharSection {
    pub route: String,
    pub order: usize,
    pub dim: usize,
    /// ascending powers of lambda
    pub coefficients: Vec<String>,
    pub identically_zero: bool,
    pub h_bound: usize,
    pub generic_degree: usize,
    pub within_degree_bound: bool,
    pub a0_predicted: String,
    pub a0_matches: bool,
    pub leading_predicted: Option<String>,
    pub leading_matches: Option<bool>,
}

impl From<&EcharResult> for EcharSection {
    fn from(r: &EcharResult) -> Self {
        Self {
            route: r.route.name().to_string(),
            order: r.order,
            dim: r.dim,
            coefficients: r.psi.coeff_strings(),
            identically_zero: r.is_identically_zero(),
            h_bound: r.h_bound,
            generic_degree: r.generic_degree(),
            within_degree_bound: r.within_degree_bound(),
            a0_predicted: r.a0_predicted.to_string(),
            a0_matches: r.a0_matches(),
            leading_predicted: r.leading_predicted.as_ref().map(ToString::to_string),
            leading_matches: r.leading_matches(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EigenSection {
    pub infinitely_many: bool,
    pub normalized: usize,
    pub deficit: usize,
    pub rows: Vec<EigenRow>,
}

#[derive(Debug, Serialize)]
pub struct EigenRow {
    pub kind: String,
    pub lambda: String,
    pub x: [String; 2],
    pub multiplicity: usize,
    pub z_eigenvalue: bool,
    pub exact_lambda: Option<String>,
    pub residual: String,
}

const DIGITS: usize = 12;

fn decimal(v: f64) -> String {
    let s = format!("{v:.DIGITS$}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        format!("{:.DIGITS$}", 0.0)
    } else {
        s
    }
}

pub fn complex(z: Complex64) -> String {
    let im = decimal(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", decimal(z.re))
}

impl EigenSection {
    pub fn new(a: &Tensor, pairs: &EigenStructure<Eigenpair>) -> Self {
        let Some(pairs) = pairs.finite() else {
            return Self {
                infinitely_many: true,
                normalized: 0,
                deficit: 0,
                rows: Vec::new(),
            };
        };
        let rows: Vec<EigenRow> = pairs
            .iter()
            .map(|p| EigenRow {
                kind: p.kind.name().to_string(),
                lambda: complex(p.lambda),
                x: [complex(p.x[0]), complex(p.x[1])],
                multiplicity: p.multiplicity,
                z_eigenvalue: p.kind == eigen::EigenKind::Normalized && p.is_real(),
                exact_lambda: p.exact_lambda.as_ref().map(|z| format!("{} + {}i", z.re, z.im)),
                residual: format!("{:.1e}", p.residual(a)),
            })
            .collect();
        let count = |kind: eigen::EigenKind| pairs.iter().filter(|p| p.kind == kind).count();
        Self {
            infinitely_many: false,
            normalized: count(eigen::EigenKind::Normalized),
            deficit: count(eigen::EigenKind::Deficit),
            rows,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Verdict> for VerdictRow {
    fn from(v: &Verdict) -> Self {
        Self {
            check: v.check.to_string(),
            passed: v.passed,
            detail: v.detail.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CaseReport {
    pub index: Option<u64>,
    pub passed: bool,
    pub verdicts: Vec<VerdictRow>,
    /// replayable input, present when a check failed
    pub counterexample: Option<TensorDocument>,
}

impl CaseReport {
    pub fn new(index: Option<u64>, a: &Tensor, verdicts: &[Verdict]) -> Self {
        let passed = verdicts.iter().all(|v| v.passed);
        Self {
            index,
            passed,
            verdicts: verdicts.iter().map(VerdictRow::from).collect(),
            counterexample: (!passed).then(|| TensorDocument::from_tensor(a)),
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifySection {
    pub mode: String,
    pub seed: Option<u64>,
    pub count: u64,
    pub order: usize,
    pub dim: usize,
    pub passed: bool,
    pub checks: BTreeMap<String, Tally>,
    /// every case in file mode; failing cases only in fuzz mode
    pub cases: Vec<CaseReport>,
}

impl VerifySection {
    pub fn from_file(a: &Tensor, verdicts: &[Verdict]) -> Self {
        let case = CaseReport::new(None, a, verdicts);
        Self {
            mode: "file".into(),
            seed: None,
            count: 1,
            order: a.order(),
            dim: a.dim(),
            passed: case.passed,
            checks: tally(std::iter::once(verdicts)),
            cases: vec![case],
        }
    }

    pub fn from_fuzz(seed: u64, order: usize, dim: usize, cases: &[FuzzCase]) -> Self {
        let failing: Vec<CaseReport> = cases
            .iter()
            .filter(|c| !c.passed())
            .map(|c| CaseReport::new(Some(c.index), &c.tensor, &c.verdicts))
            .collect();
        Self {
            mode: "fuzz".into(),
            seed: Some(seed),
            count: cases.len() as u64,
            order,
            dim,
            passed: failing.is_empty(),
            checks: tally(cases.iter().map(|c| c.verdicts.as_slice())),
            cases: failing,
        }
    }
}

fn tally<'a>(runs: impl Iterator<Item = &'a [Verdict]>) -> BTreeMap<String, Tally> {
    let mut out: BTreeMap<String, Tally> = BTreeMap::new();
    for v in runs.flatten() {
        let t = out.entry(v.check.to_string()).or_default();
        if v.passed {
            t.passed += 1;
        } else {
            t.failed += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(complex(Complex64::new(1.0, -2.0)), "1.000000000000-2.000000000000i");
        assert_eq!(complex(Complex64::new(-1e-15, 1e-16)), "0.000000000000+0.000000000000i");
        assert_eq!(complex(Complex64::new(0.5, 0.0)), "0.500000000000+0.000000000000i");
    }
}
