mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use common::*;
use dpconform_core::pipeline::{analyze, RunConfig, RunOutput};
use dpconform_core::report::{
    read_results, render_instance, results_csv, summarize, summarize_rows, svg_chart, write_outputs, InstanceView,
    SummaryRow, RESULTS_HEADER,
};
use dpconform_core::{CandidateSource, VerificationStatus};

fn fixture_run() -> RunOutput {
    let f = fixtures();
    let config = RunConfig {
        repository_dir: f.join("headfirst"),
        pattern_dir: pattern_dir(),
        srs_path: Some(f.join("srs/duck-srs.txt")),
        external_instances_path: Some(f.join("PatternsDetectedByOtherTools.txt")),
        ..RunConfig::default()
    };
    analyze(&config).expect("pipeline runs")
}

#[test]
fn results_csv_round_trips() {
    let run = fixture_run();
    let text = results_csv(&run.assessments).unwrap();
    assert!(text.starts_with(&RESULTS_HEADER.join(",")));
    let rows = read_results(&text, Path::new("results.csv")).unwrap();
    assert_eq!(
        rows,
        dpconform_core::report::ResultRow::from_assessments(&run.assessments)
    );

    // one line per violation, or one per member without any
    let expected: usize = run
        .assessments
        .iter()
        .flat_map(|a| &a.members)
        .map(|m| m.violations.len().max(1))
        .sum();
    assert_eq!(rows.len(), expected);
}

#[test]
fn instance_blocks_regenerate_from_csv() {
    let run = fixture_run();
    let text = results_csv(&run.assessments).unwrap();
    let rows = read_results(&text, Path::new("results.csv")).unwrap();
    let from_rows = InstanceView::from_rows(&rows, &run.patterns);
    assert_eq!(from_rows.len(), run.assessments.len());
    for (a, v) in run.assessments.iter().zip(&from_rows) {
        assert_eq!(render_instance(&InstanceView::from_assessment(a)), render_instance(v));
    }
}

#[test]
fn summary_recomputed_from_csv_agrees() {
    let run = fixture_run();
    let rows = read_results(&results_csv(&run.assessments).unwrap(), Path::new("results.csv")).unwrap();
    let live = summarize(&run.projects, &run.patterns, &run.sources, &run.assessments);
    let parsed = summarize_rows(&run.projects, &run.patterns, &run.sources, &rows);
    assert_eq!(live.len(), run.projects.len() * run.sources.len() * run.patterns.len());
    assert_eq!(live.len(), parsed.len());
    for (l, p) in live.iter().zip(&parsed) {
        assert_eq!(
            (
                &l.project,
                l.source,
                &l.pattern,
                l.instance_count,
                l.satisfied_count,
                l.violated_count
            ),
            (
                &p.project,
                p.source,
                &p.pattern,
                p.instance_count,
                p.satisfied_count,
                p.violated_count
            )
        );
        match (l.avg_score_pct, p.avg_score_pct) {
            (Some(x), Some(y)) => assert!((x - y).abs() <= 0.05, "{x} vs {y}"),
            (x, y) => assert_eq!(x, y),
        }
    }
}

/// `(title, height)` of every bar in an SVG chart.
fn bars(svg: &str) -> Vec<(String, f64)> {
    svg.lines()
        .filter(|l| l.starts_with("<rect") && l.contains("<title>"))
        .map(|l| {
            let h = l.split("height=\"").nth(1).and_then(|s| s.split('"').next()).unwrap();
            let title = l
                .split("<title>")
                .nth(1)
                .and_then(|s| s.split("</title>").next())
                .unwrap();
            (title.to_owned(), h.parse().unwrap())
        })
        .collect()
}

#[test]
fn chart_bars_match_independent_counts() {
    let run = fixture_run();
    let summary = summarize(&run.projects, &run.patterns, &run.sources, &run.assessments);

    // violated instances per (project, source, pattern), counted directly
    let mut counts: BTreeMap<(String, CandidateSource, String), (usize, usize)> = BTreeMap::new();
    for a in &run.assessments {
        let e = counts
            .entry((a.project.clone(), a.candidate.source, a.candidate.pattern_name.clone()))
            .or_default();
        e.0 += 1;
        e.1 += usize::from(a.violations().any(|v| v.status != VerificationStatus::Discarded));
    }

    for project in &run.projects {
        let rows: Vec<SummaryRow> = summary.iter().filter(|r| &r.project == project).cloned().collect();
        let drawn = bars(&svg_chart(project, &rows));
        assert_eq!(drawn.len(), rows.len());
        for r in &rows {
            let prefix = format!("{} {}:", r.pattern, r.source);
            let (title, h) = drawn
                .iter()
                .find(|(t, _)| t.starts_with(&prefix))
                .expect("one bar per row");
            let (n, violated) = counts
                .get(&(project.clone(), r.source, r.pattern.clone()))
                .copied()
                .unwrap_or_default();
            let pct = if n == 0 {
                0.0
            } else {
                100.0 * violated as f64 / n as f64
            };
            let expected: f64 = format!("{:.1}", 200.0 * pct / 100.0).parse().unwrap();
            assert_eq!(*h, expected, "{project} {title}");
        }
    }
}

#[test]
fn empty_chart_keeps_its_axes() {
    let svg = svg_chart("empty", &[]);
    assert!(bars(&svg).is_empty());
    for tick in ["0%", "25%", "50%", "75%", "100%"] {
        assert!(svg.contains(&format!(">{tick}</text>")), "{tick}");
    }
    assert!(svg.trim_end().ends_with("</svg>"));
}

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    walkdir::WalkDir::new(dir)
        .into_iter()
        .map(Result::unwrap)
        .filter(|e| e.file_type().is_file())
        .map(|e| {
            let rel = e.path().strip_prefix(dir).unwrap().to_string_lossy().into_owned();
            (rel, fs::read(e.path()).unwrap())
        })
        .collect()
}

#[test]
fn outputs_are_deterministic() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    write_outputs(&fixture_run().report_input(), first.path()).unwrap();
    write_outputs(&fixture_run().report_input(), second.path()).unwrap();
    let a = read_tree(first.path());
    assert_eq!(a.len(), 3 + 8, "results, summary, report and one chart per project");
    assert!(a.contains_key("report.md"));
    assert_eq!(a, read_tree(second.path()));
}
