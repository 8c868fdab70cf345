use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::fmt_pct;
use crate::detect::{CandidateInstance, CandidateSource};
use crate::error::{Error, Result};

/// Detection quality of one source against the labelled instances,
/// overall (`pattern == None`) or for one pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub source: CandidateSource,
    pub pattern: Option<String>,
    pub truth_count: usize,
    pub detected_count: usize,
    pub correct_count: usize,
    pub incorrect_count: usize,
    /// `None` when nothing was detected.
    pub precision_pct: Option<f64>,
    /// `None` when there is nothing to find.
    pub recall_pct: Option<f64>,
}

type Key = (String, BTreeMap<char, String>);

fn key(c: &CandidateInstance) -> Key {
    (c.pattern_name.clone(), c.bindings.clone())
}

fn row(
    source: CandidateSource,
    pattern: Option<String>,
    truth: &BTreeSet<Key>,
    detected: &BTreeSet<Key>,
) -> CompareRow {
    let correct = detected.intersection(truth).count();
    let ratio = |num: usize, den: usize| (den > 0).then(|| 100.0 * num as f64 / den as f64);
    // an empty truth set makes precision meaningless as well
    let precision = if truth.is_empty() {
        None
    } else {
        ratio(correct, detected.len())
    };
    CompareRow {
        source,
        pattern,
        truth_count: truth.len(),
        detected_count: detected.len(),
        correct_count: correct,
        incorrect_count: detected.len() - correct,
        precision_pct: precision,
        recall_pct: ratio(correct, truth.len()),
    }
}

/// Matches candidates to truth on pattern name plus exact role bindings.
/// Emits, per source, one overall row followed by one row per pattern.
pub fn compare_sources(
    candidates: &[CandidateInstance],
    truth: &[CandidateInstance],
    sources: &[CandidateSource],
) -> Vec<CompareRow> {
    let truth_set: BTreeSet<Key> = truth.iter().map(key).collect();
    let mut out = Vec::new();
    for &source in sources {
        let detected: BTreeSet<Key> = candidates.iter().filter(|c| c.source == source).map(key).collect();
        out.push(row(source, None, &truth_set, &detected));
        let patterns: BTreeSet<&String> = truth_set.iter().chain(&detected).map(|(p, _)| p).collect();
        for pattern in patterns {
            let t: BTreeSet<Key> = truth_set.iter().filter(|(p, _)| p == pattern).cloned().collect();
            let d: BTreeSet<Key> = detected.iter().filter(|(p, _)| p == pattern).cloned().collect();
            out.push(row(source, Some(pattern.clone()), &t, &d));
        }
    }
    out
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_pct).unwrap_or_else(|| "n/a".into())
}

pub fn write_compare_csv(rows: &[CompareRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "source",
        "pattern",
        "truth",
        "detected",
        "correct",
        "incorrect",
        "precision_pct",
        "recall_pct",
    ])?;
    for r in rows {
        w.write_record([
            r.source.to_string(),
            r.pattern.clone().unwrap_or_else(|| "all".into()),
            r.truth_count.to_string(),
            r.detected_count.to_string(),
            r.correct_count.to_string(),
            r.incorrect_count.to_string(),
            opt(r.precision_pct),
            opt(r.recall_pct),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Fixed-width table for the terminal.
pub fn compare_table(rows: &[CompareRow]) -> String {
    let mut s = format!(
        "{:<9} {:<14} {:>6} {:>9} {:>8} {:>10} {:>10} {:>8}\n",
        "source", "pattern", "truth", "detected", "correct", "incorrect", "precision", "recall"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<9} {:<14} {:>6} {:>9} {:>8} {:>10} {:>10} {:>8}",
            r.source.as_str(),
            r.pattern.as_deref().unwrap_or("all"),
            r.truth_count,
            r.detected_count,
            r.correct_count,
            r.incorrect_count,
            opt(r.precision_pct),
            opt(r.recall_pct)
        );
    }
    s
}
