use std::fmt::Write as _;

use super::{ascii_chart, fmt_pct, ReportInput, ResultRow, SummaryRow};
use crate::detect::CandidateSource;
use crate::external::split_camel;
use crate::rules::PatternRule;
use crate::score::{verification_note, Expectation, InstanceAssessment, VerificationStatus, ViolationKind};

/// What an instance block shows. Built either from a live assessment or
/// from the rows of `results.csv`, so both render identically.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceView {
    pub project: String,
    pub pattern: String,
    pub instance_id: usize,
    pub source: CandidateSource,
    pub total_pct: f64,
    pub members: Vec<MemberView>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemberView {
    pub letter: Option<char>,
    pub role_name: String,
    pub class_name: String,
    pub score_pct: f64,
    pub violations: Vec<ViolationView>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationView {
    pub recommendation: String,
    pub status: VerificationStatus,
    pub note: Option<String>,
}

impl InstanceView {
    pub fn from_assessment(a: &InstanceAssessment) -> Self {
        InstanceView {
            project: a.project.clone(),
            pattern: a.candidate.pattern_name.clone(),
            instance_id: a.candidate.instance_id,
            source: a.candidate.source,
            total_pct: a.total_pct,
            members: a
                .members
                .iter()
                .map(|m| MemberView {
                    letter: Some(m.role_letter),
                    role_name: m.role_name.clone(),
                    class_name: m.class_name.clone(),
                    score_pct: m.score_pct,
                    violations: m
                        .violations
                        .iter()
                        .map(|v| ViolationView {
                            recommendation: v.recommendation.clone(),
                            status: v.status,
                            note: v.note(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Regroups result rows into instances. Role letters are looked up in
    /// `rules` since the table only names roles.
    pub fn from_rows(rows: &[ResultRow], rules: &[PatternRule]) -> Vec<InstanceView> {
        let mut out: Vec<InstanceView> = Vec::new();
        for r in rows {
            let same_instance = out.last().is_some_and(|v| {
                v.project == r.project
                    && v.pattern == r.pattern
                    && v.instance_id == r.instance_id
                    && v.source == r.source
            });
            if !same_instance {
                out.push(InstanceView {
                    project: r.project.clone(),
                    pattern: r.pattern.clone(),
                    instance_id: r.instance_id,
                    source: r.source,
                    total_pct: r.instance_total_pct,
                    members: Vec::new(),
                });
            }
            let view = out.last_mut().expect("pushed above");
            let same_member = view
                .members
                .last()
                .is_some_and(|m| m.role_name == r.role && m.class_name == r.class);
            if !same_member {
                let letter = rules
                    .iter()
                    .find(|p| p.pattern_name == r.pattern)
                    .and_then(|p| p.member_by_role(&r.role))
                    .map(|m| m.letter);
                view.members.push(MemberView {
                    letter,
                    role_name: r.role.clone(),
                    class_name: r.class.clone(),
                    score_pct: r.member_score_pct,
                    violations: Vec::new(),
                });
            }
            if let (Some(kind), Some(status)) = (r.violation_kind, r.verification_status) {
                let target = match r.expected.parse::<Expectation>() {
                    Ok(Expectation::Connection { target, .. }) => Some(target),
                    _ => None,
                };
                let to = target
                    .as_deref()
                    .filter(|_| kind == ViolationKind::MissingRequiredConnection);
                view.members
                    .last_mut()
                    .expect("pushed above")
                    .violations
                    .push(ViolationView {
                        recommendation: r.recommendation.clone(),
                        status,
                        note: verification_note(kind, status, &r.class, to),
                    });
            }
        }
        out
    }
}

/// The per-instance block: role bindings, member evaluations with their
/// recommendations, and the instance total.
pub fn render_instance(v: &InstanceView) -> String {
    let mut s = String::new();
    let origin = match v.source {
        CandidateSource::Internal => String::new(),
        CandidateSource::External => " [External]".to_owned(),
    };
    let _ = writeln!(s, "Candidate of Pattern {} ({}){origin}:", v.pattern, v.instance_id);
    for m in &v.members {
        let letter = m.letter.unwrap_or('?');
        let _ = writeln!(s, "{letter}({}): {}", split_camel(&m.role_name), m.class_name);
    }
    s.push_str("\nDesign pattern violation identification:\n");
    for m in &v.members {
        let _ = writeln!(s, "\n{} (Evaluation : {} %)", m.class_name, fmt_pct(m.score_pct));
        for violation in &m.violations {
            let _ = writeln!(s, "Recommendation: {}", violation.recommendation);
            match (&violation.note, violation.status) {
                (_, VerificationStatus::Pending) => {}
                (Some(note), status) => {
                    let _ = writeln!(s, "{status}: {note}");
                }
                (None, status) => {
                    let _ = writeln!(s, "{status}.");
                }
            }
        }
    }
    let _ = writeln!(s, "\nTotal score : {} %", fmt_pct(v.total_pct));
    s
}

/// The complete `report.md`.
pub fn render_report(input: &ReportInput<'_>, summary: &[SummaryRow]) -> String {
    let mut s = String::from("# Design pattern conformance report\n");
    for project in input.projects {
        let _ = writeln!(s, "\n## Project `{project}`\n");
        let rows: Vec<SummaryRow> = summary.iter().filter(|r| &r.project == project).cloned().collect();
        s.push_str("| Pattern | Source | Instances | Avg score % | Satisfied | Violated |\n");
        s.push_str("|---|---|---:|---:|---:|---:|\n");
        for r in &rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                r.pattern,
                r.source,
                r.instance_count,
                r.avg_score_pct.map(fmt_pct).unwrap_or_else(|| "n/a".into()),
                r.satisfied_count,
                r.violated_count
            );
        }
        let _ = writeln!(s, "\nViolated instances (chart: `charts/{project}.svg`):\n");
        s.push_str("```text\n");
        s.push_str(&ascii_chart(&rows));
        s.push_str("```\n");

        let instances: Vec<&InstanceAssessment> = input.assessments.iter().filter(|a| &a.project == project).collect();
        if !instances.is_empty() {
            s.push_str("\n### Instances\n");
        }
        for a in instances {
            s.push_str("\n```text\n");
            s.push_str(&render_instance(&InstanceView::from_assessment(a)));
            s.push_str("```\n");
        }
    }

    let verified: Vec<&InstanceAssessment> = input
        .assessments
        .iter()
        .filter(|a| a.violations().any(|v| v.status != VerificationStatus::Pending))
        .collect();
    if !verified.is_empty() {
        s.push_str("\n## Verification\n\n");
        s.push_str(
            "| Project | Pattern | Instance | Source | Approved | Discarded | Score before % | Score after % |\n",
        );
        s.push_str("|---|---|---:|---|---:|---:|---:|---:|\n");
        for a in verified {
            let count = |st| a.violations().filter(|v| v.status == st).count();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                a.project,
                a.candidate.pattern_name,
                a.candidate.instance_id,
                a.candidate.source,
                count(VerificationStatus::Approved),
                count(VerificationStatus::Discarded),
                fmt_pct(a.initial_total_pct),
                fmt_pct(a.total_pct)
            );
        }
    }
    s
}
