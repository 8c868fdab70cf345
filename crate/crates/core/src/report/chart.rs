use std::fmt::Write as _;

use super::{fmt_pct, SummaryRow};
use crate::detect::CandidateSource;

const WIDTH_PER_GROUP: f64 = 90.0;
const PLOT_HEIGHT: f64 = 200.0;
const LEFT: f64 = 50.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;

fn colour(source: CandidateSource) -> &'static str {
    match source {
        CandidateSource::Internal => "#4e79a7",
        CandidateSource::External => "#f28e2b",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Groups `rows` by pattern in first-seen order; each group lists one
/// bar per source.
fn groups(rows: &[SummaryRow]) -> Vec<(&str, Vec<&SummaryRow>)> {
    let mut out: Vec<(&str, Vec<&SummaryRow>)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(p, _)| *p == r.pattern) {
            Some((_, bars)) => bars.push(r),
            None => out.push((&r.pattern, vec![r])),
        }
    }
    out
}

/// Grouped bar chart of violated-instance percentages, one group per pattern.
pub fn svg_chart(project: &str, rows: &[SummaryRow]) -> String {
    let groups = groups(rows);
    let mut sources: Vec<CandidateSource> = rows.iter().map(|r| r.source).collect();
    sources.sort();
    sources.dedup();

    let plot_width = WIDTH_PER_GROUP * groups.len().max(1) as f64;
    let width = LEFT + plot_width + 20.0;
    let height = TOP + PLOT_HEIGHT + BOTTOM;
    let base = TOP + PLOT_HEIGHT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{LEFT:.0}" y="20" font-size="13">Violated instances per pattern: {}</text>"#,
        escape(project)
    );
    for tick in [0, 25, 50, 75, 100] {
        let y = base - PLOT_HEIGHT * f64::from(tick) / 100.0;
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.0}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            LEFT + plot_width
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{:.1}" text-anchor="end">{tick}%</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r##"<line x1="{LEFT:.0}" y1="{TOP:.0}" x2="{LEFT:.0}" y2="{base:.0}" stroke="#000000"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{LEFT:.0}" y1="{base:.0}" x2="{:.1}" y2="{base:.0}" stroke="#000000"/>"##,
        LEFT + plot_width
    );

    let bar_width = (WIDTH_PER_GROUP - 20.0) / sources.len().max(1) as f64;
    for (g, (pattern, bars)) in groups.iter().enumerate() {
        let gx = LEFT + WIDTH_PER_GROUP * g as f64 + 10.0;
        for bar in bars {
            let slot = sources.iter().position(|s| *s == bar.source).unwrap_or(0);
            let pct = bar.violated_pct();
            let h = PLOT_HEIGHT * pct / 100.0;
            let x = gx + bar_width * slot as f64;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.1}" y="{:.1}" width="{:.1}" height="{h:.1}" fill="{}"><title>{} {}: {} % of {} instances</title></rect>"#,
                base - h,
                bar_width - 2.0,
                colour(bar.source),
                escape(pattern),
                bar.source,
                fmt_pct(pct),
                bar.instance_count
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            gx + (WIDTH_PER_GROUP - 20.0) / 2.0,
            base + 16.0,
            escape(pattern)
        );
    }
    for (i, source) in sources.iter().enumerate() {
        let x = LEFT + 110.0 * i as f64;
        let y = base + 40.0;
        let _ = writeln!(
            s,
            r#"<rect x="{x:.0}" y="{:.0}" width="10" height="10" fill="{}"/><text x="{:.0}" y="{y:.0}">{source}</text>"#,
            y - 9.0,
            colour(*source),
            x + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Text rendering of the same chart, one bar per line.
pub fn ascii_chart(rows: &[SummaryRow]) -> String {
    const BAR: usize = 40;
    let name_width = rows.iter().map(|r| r.pattern.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in rows {
        let pct = r.violated_pct();
        let filled = ((pct / 100.0) * BAR as f64).round() as usize;
        let _ = writeln!(
            s,
            "{:<name_width$} {:<8} |{}{}| {:>5} % ({}/{})",
            r.pattern,
            r.source.as_str(),
            "#".repeat(filled),
            " ".repeat(BAR - filled),
            fmt_pct(pct),
            r.violated_count,
            r.instance_count
        );
    }
    s
}
