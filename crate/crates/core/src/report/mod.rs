//! Output artifacts: the results table, per-instance text blocks, the
//! per-pattern summary, violation charts and the detector comparison.

mod chart;
mod compare;
mod results;
mod summary;
mod text;

use std::fs;
use std::path::Path;

pub use chart::{ascii_chart, svg_chart};
pub use compare::{compare_sources, compare_table, write_compare_csv, CompareRow};
pub use results::{read_results, results_csv, write_csv, ResultRow, RESULTS_HEADER};
pub use summary::{summarize, summarize_rows, summary_csv, SummaryRow};
pub use text::{render_instance, render_report, InstanceView, MemberView, ViolationView};

use crate::detect::CandidateSource;
use crate::error::{Error, Result};
use crate::rules::PatternRule;
use crate::score::InstanceAssessment;

/// Rounds half-up to one decimal. The small bias keeps values such as
/// 91.65, which are stored a hair below their decimal form, rounding up.
pub fn round1(x: f64) -> f64 {
    ((x * 10.0) + 0.5 + 1e-9).floor() / 10.0
}

pub fn fmt_pct(x: f64) -> String {
    format!("{:.1}", round1(x))
}

/// Everything `analyze` writes, keyed by the sources that were scored.
pub struct ReportInput<'a> {
    pub projects: &'a [String],
    pub patterns: &'a [PatternRule],
    pub sources: &'a [CandidateSource],
    pub assessments: &'a [InstanceAssessment],
}

/// Writes `results.csv`, `summary.csv`, `report.md` and one chart per project into `out`.
pub fn write_outputs(input: &ReportInput<'_>, out: &Path) -> Result<()> {
    let charts = out.join("charts");
    fs::create_dir_all(&charts).map_err(|e| Error::io(&charts, e))?;
    write_csv(input.assessments, &out.join("results.csv"))?;

    let summary = summarize(input.projects, input.patterns, input.sources, input.assessments);
    let path = out.join("summary.csv");
    fs::write(&path, summary_csv(&summary)?).map_err(|e| Error::io(&path, e))?;

    for project in input.projects {
        let rows: Vec<SummaryRow> = summary.iter().filter(|r| &r.project == project).cloned().collect();
        let path = charts.join(format!("{project}.svg"));
        fs::write(&path, svg_chart(project, &rows)).map_err(|e| Error::io(&path, e))?;
    }

    let path = out.join("report.md");
    fs::write(&path, render_report(input, &summary)).map_err(|e| Error::io(&path, e))?;
    Ok(())
}
