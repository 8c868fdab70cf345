use std::collections::BTreeMap;

use super::{fmt_pct, ResultRow};
use crate::detect::CandidateSource;
use crate::error::{Error, Result};
use crate::rules::PatternRule;
use crate::score::{InstanceAssessment, VerificationStatus};

/// Per (project, source, pattern) aggregate. An instance counts as violated
/// while it has at least one approved or still-pending violation.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub project: String,
    pub source: CandidateSource,
    pub pattern: String,
    pub instance_count: usize,
    /// Mean instance total; `None` without instances.
    pub avg_score_pct: Option<f64>,
    pub satisfied_count: usize,
    pub violated_count: usize,
}

impl SummaryRow {
    pub fn violated_pct(&self) -> f64 {
        if self.instance_count == 0 {
            0.0
        } else {
            100.0 * self.violated_count as f64 / self.instance_count as f64
        }
    }
}

fn counts_as_violation(status: VerificationStatus) -> bool {
    status != VerificationStatus::Discarded
}

/// One row for every project, source and pattern, in that nesting order,
/// including patterns without candidates.
pub fn summarize(
    projects: &[String],
    patterns: &[PatternRule],
    sources: &[CandidateSource],
    assessments: &[InstanceAssessment],
) -> Vec<SummaryRow> {
    let instances = assessments.iter().map(|a| {
        let violated = a.violations().any(|v| counts_as_violation(v.status));
        (
            (
                a.project.as_str(),
                a.candidate.source,
                a.candidate.pattern_name.as_str(),
            ),
            a.total_pct,
            violated,
        )
    });
    build(projects, patterns, sources, instances)
}

/// The same aggregate recomputed from parsed `results.csv` rows.
pub fn summarize_rows(
    projects: &[String],
    patterns: &[PatternRule],
    sources: &[CandidateSource],
    rows: &[ResultRow],
) -> Vec<SummaryRow> {
    let mut per_instance: BTreeMap<(&str, CandidateSource, &str, usize), (f64, bool)> = BTreeMap::new();
    for r in rows {
        let entry = per_instance
            .entry((r.project.as_str(), r.source, r.pattern.as_str(), r.instance_id))
            .or_insert((r.instance_total_pct, false));
        entry.1 |= r.verification_status.is_some_and(counts_as_violation);
    }
    let instances = per_instance
        .into_iter()
        .map(|((p, s, pat, _), (total, violated))| ((p, s, pat), total, violated));
    build(projects, patterns, sources, instances)
}

fn build<'a>(
    projects: &[String],
    patterns: &[PatternRule],
    sources: &[CandidateSource],
    instances: impl Iterator<Item = ((&'a str, CandidateSource, &'a str), f64, bool)>,
) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(&str, CandidateSource, &str), (usize, f64, usize)> = BTreeMap::new();
    for (key, total, violated) in instances {
        let g = groups.entry(key).or_default();
        g.0 += 1;
        g.1 += total;
        g.2 += usize::from(violated);
    }
    let mut out = Vec::new();
    for project in projects {
        for &source in sources {
            for rule in patterns {
                let (n, sum, violated) = groups
                    .get(&(project.as_str(), source, rule.pattern_name.as_str()))
                    .copied()
                    .unwrap_or_default();
                out.push(SummaryRow {
                    project: project.clone(),
                    source,
                    pattern: rule.pattern_name.clone(),
                    instance_count: n,
                    avg_score_pct: (n > 0).then(|| sum / n as f64),
                    satisfied_count: n - violated,
                    violated_count: violated,
                });
            }
        }
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "project",
        "source",
        "pattern",
        "instance_count",
        "avg_score_pct",
        "satisfied_count",
        "violated_count",
        "violated_pct",
    ])?;
    for r in rows {
        w.write_record([
            r.project.clone(),
            r.source.to_string(),
            r.pattern.clone(),
            r.instance_count.to_string(),
            r.avg_score_pct.map(fmt_pct).unwrap_or_else(|| "n/a".into()),
            r.satisfied_count.to_string(),
            r.violated_count.to_string(),
            fmt_pct(r.violated_pct()),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from strings"))
}
