use std::fs;
use std::path::Path;

use super::{fmt_pct, round1};
use crate::detect::CandidateSource;
use crate::error::{Error, Result};
use crate::score::{InstanceAssessment, VerificationStatus, ViolationKind};

pub const RESULTS_HEADER: [&str; 12] = [
    "project",
    "pattern",
    "instance_id",
    "source",
    "role",
    "class",
    "member_score_pct",
    "violation_kind",
    "expected",
    "recommendation",
    "verification_status",
    "instance_total_pct",
];

/// One line of `results.csv`. Percentages hold the one-decimal values
/// that are printed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub project: String,
    pub pattern: String,
    pub instance_id: usize,
    pub source: CandidateSource,
    pub role: String,
    pub class: String,
    pub member_score_pct: f64,
    pub violation_kind: Option<ViolationKind>,
    pub expected: String,
    pub recommendation: String,
    pub verification_status: Option<VerificationStatus>,
    pub instance_total_pct: f64,
}

impl ResultRow {
    pub fn from_assessments(assessments: &[InstanceAssessment]) -> Vec<ResultRow> {
        let mut rows = Vec::new();
        for a in assessments {
            for m in &a.members {
                let base = ResultRow {
                    project: a.project.clone(),
                    pattern: a.candidate.pattern_name.clone(),
                    instance_id: a.candidate.instance_id,
                    source: a.candidate.source,
                    role: m.role_name.clone(),
                    class: m.class_name.clone(),
                    member_score_pct: round1(m.score_pct),
                    violation_kind: None,
                    expected: String::new(),
                    recommendation: String::new(),
                    verification_status: None,
                    instance_total_pct: round1(a.total_pct),
                };
                if m.violations.is_empty() {
                    rows.push(base);
                    continue;
                }
                for v in &m.violations {
                    rows.push(ResultRow {
                        violation_kind: Some(v.kind),
                        expected: v.expected.to_string(),
                        recommendation: v.recommendation.clone(),
                        verification_status: Some(v.status),
                        ..base.clone()
                    });
                }
            }
        }
        rows
    }

    fn record(&self) -> [String; 12] {
        [
            self.project.clone(),
            self.pattern.clone(),
            self.instance_id.to_string(),
            self.source.to_string(),
            self.role.clone(),
            self.class.clone(),
            fmt_pct(self.member_score_pct),
            self.violation_kind.map(|k| k.to_string()).unwrap_or_default(),
            self.expected.clone(),
            self.recommendation.clone(),
            self.verification_status.map(|s| s.to_string()).unwrap_or_default(),
            fmt_pct(self.instance_total_pct),
        ]
    }
}

pub fn results_csv(assessments: &[InstanceAssessment]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESULTS_HEADER)?;
    for row in ResultRow::from_assessments(assessments) {
        w.write_record(row.record())?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from strings"))
}

pub fn write_csv(assessments: &[InstanceAssessment], path: &Path) -> Result<()> {
    let text = results_csv(assessments)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Parses a `results.csv` produced by [`write_csv`].
pub fn read_results(text: &str, file: &Path) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(RESULTS_HEADER) {
        return Err(Error::syntax(file, 1, "unexpected results header"));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let bad = |what: &str| Error::syntax(file, line, format!("bad {what}"));
        let field = |n: usize| record.get(n).unwrap_or_default().to_owned();
        let optional = |n: usize| Some(field(n)).filter(|s| !s.is_empty());
        rows.push(ResultRow {
            project: field(0),
            pattern: field(1),
            instance_id: field(2).parse().map_err(|_| bad("instance_id"))?,
            source: field(3).parse().map_err(|_| bad("source"))?,
            role: field(4),
            class: field(5),
            member_score_pct: field(6).parse().map_err(|_| bad("member_score_pct"))?,
            violation_kind: optional(7)
                .map(|s| s.parse())
                .transpose()
                .map_err(|_| bad("violation_kind"))?,
            expected: field(8),
            recommendation: field(9),
            verification_status: optional(10)
                .map(|s| s.parse())
                .transpose()
                .map_err(|_| bad("verification_status"))?,
            instance_total_pct: field(11).parse().map_err(|_| bad("instance_total_pct"))?,
        });
    }
    Ok(rows)
}
