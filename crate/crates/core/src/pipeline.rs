//! The end-to-end run: load definitions, parse the repository, detect and
//! import candidates, score, verify, compare.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::detect::{dedupe, detect, CandidateInstance, CandidateSource};
use crate::error::Error;
use crate::external::parse_external_candidates;
use crate::facts::{parse_repository, ProjectFacts};
use crate::report::{compare_sources, CompareRow, ReportInput};
use crate::rules::{load_definitions, PatternDefinition, PatternRule};
use crate::score::{assess_instance, InstanceAssessment};
use crate::srs::{extract_triples, verify_violations};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub repository_dir: PathBuf,
    pub pattern_dir: PathBuf,
    pub srs_path: Option<PathBuf>,
    pub external_instances_path: Option<PathBuf>,
    pub truth_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub dedupe: bool,
    /// Run the internal detector; off for `score-external`.
    pub detect: bool,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            repository_dir: PathBuf::from("Repository"),
            pattern_dir: PathBuf::from("pattern"),
            srs_path: None,
            external_instances_path: None,
            truth_path: None,
            out_dir: PathBuf::from("out"),
            dedupe: false,
            detect: true,
            jobs: None,
        }
    }
}

/// Failure of a run, split by where it happened so callers can pick an exit status.
#[derive(Debug)]
pub enum RunError {
    /// Pattern rules or catalogs could not be loaded.
    Definitions(Error),
    /// Repository, interchange, SRS or truth input could not be read.
    Input(Error),
    Config(String),
}

impl RunError {
    /// 2 for input and I/O problems, 3 for invalid pattern definitions.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Definitions(e) if e.is_definition_error() => 3,
            RunError::Config(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Definitions(e) | RunError::Input(e) => e.fmt(f),
            RunError::Config(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for RunError {}

#[derive(Debug)]
pub struct RunOutput {
    pub projects: Vec<String>,
    pub patterns: Vec<PatternRule>,
    pub sources: Vec<CandidateSource>,
    pub assessments: Vec<InstanceAssessment>,
    pub comparison: Option<Vec<CompareRow>>,
    pub warnings: Vec<String>,
    pub timings: Vec<(&'static str, Duration)>,
    pub loc_count: usize,
    pub file_count: usize,
}

impl RunOutput {
    pub fn report_input(&self) -> ReportInput<'_> {
        ReportInput {
            projects: &self.projects,
            patterns: &self.patterns,
            sources: &self.sources,
            assessments: &self.assessments,
        }
    }
}

/// Runs the pipeline, on a dedicated pool of `config.jobs` threads if set.
pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Config(format!("cannot start {n} worker threads: {e}")))?
            .install(|| analyze(config)),
        None => analyze(config),
    }
}

pub fn analyze(config: &RunConfig) -> Result<RunOutput, RunError> {
    let mut timings = Vec::new();
    let mut warnings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((name, clock.elapsed()));
        clock = Instant::now();
    };

    let definitions = load_definitions(&config.pattern_dir).map_err(RunError::Definitions)?;
    if definitions.is_empty() {
        return Err(RunError::Definitions(Error::validation(
            &config.pattern_dir,
            "no patterns loaded",
        )));
    }
    lap("load patterns", &mut timings);

    let facts = parse_repository(&config.repository_dir).map_err(RunError::Input)?;
    for f in &facts {
        warnings.extend(f.warnings.iter().map(|w| format!("{}: {w}", f.project_name)));
    }
    lap("parse", &mut timings);

    let mut sources = Vec::new();
    let mut work: Vec<(usize, CandidateInstance)> = Vec::new();
    if config.detect {
        sources.push(CandidateSource::Internal);
        work.extend(detect_all(&facts, &definitions, config.dedupe));
    }
    lap("detect", &mut timings);

    if let Some(path) = &config.external_instances_path {
        sources.push(CandidateSource::External);
        let rules: Vec<PatternRule> = definitions.iter().map(|d| d.rule.clone()).collect();
        let external = parse_external_candidates(path, &rules).map_err(RunError::Input)?;
        work.extend(attach_external(&facts, external, &mut warnings));
    }

    let by_name: BTreeMap<&str, &PatternDefinition> = definitions.iter().map(|d| (d.name(), d)).collect();
    let mut assessments: Vec<InstanceAssessment> = work
        .par_iter()
        .map(|(p, cand)| assess_instance(cand, by_name[cand.pattern_name.as_str()], &facts[*p]))
        .collect();
    for a in &assessments {
        warnings.extend(a.warnings.iter().cloned());
    }
    lap("score", &mut timings);

    if let Some(path) = &config.srs_path {
        let text = fs::read_to_string(path).map_err(|e| RunError::Input(Error::io(path, e)))?;
        verify_violations(&mut assessments, &extract_triples(&text));
        lap("verify", &mut timings);
    }

    let comparison = match &config.truth_path {
        Some(path) => {
            let rules: Vec<PatternRule> = definitions.iter().map(|d| d.rule.clone()).collect();
            let truth = parse_external_candidates(path, &rules).map_err(RunError::Input)?;
            let candidates: Vec<CandidateInstance> = assessments.iter().map(|a| a.candidate.clone()).collect();
            Some(compare_sources(&candidates, &truth, &sources))
        }
        None => None,
    };

    let mut output = RunOutput {
        projects: facts.iter().map(|f| f.project_name.clone()).collect(),
        patterns: definitions.into_iter().map(|d| d.rule).collect(),
        sources,
        assessments,
        comparison,
        warnings,
        timings,
        loc_count: facts.iter().map(|f| f.loc_count).sum(),
        file_count: facts.iter().map(|f| f.file_count).sum(),
    };
    canonical_order(&mut output);
    Ok(output)
}

/// Candidates of every pattern in every project, in report order:
/// project, then pattern, then instance id.
fn detect_all(
    facts: &[ProjectFacts],
    definitions: &[PatternDefinition],
    dedupe_flag: bool,
) -> Vec<(usize, CandidateInstance)> {
    let pairs: Vec<(usize, &PatternDefinition)> = (0..facts.len())
        .flat_map(|p| definitions.iter().map(move |d| (p, d)))
        .collect();
    pairs
        .par_iter()
        .map(|&(p, d)| {
            let found = detect(&d.rule, &facts[p]);
            let found = if dedupe_flag {
                dedupe(found, &d.rule, &d.catalog)
            } else {
                found
            };
            found.into_iter().map(|c| (p, c)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Interchange blocks carry no project, so each is scored in every project
/// declaring at least one of its classes. Ids restart per project and pattern.
fn attach_external(
    facts: &[ProjectFacts],
    external: Vec<CandidateInstance>,
    warnings: &mut Vec<String>,
) -> Vec<(usize, CandidateInstance)> {
    let mut per_project: Vec<Vec<CandidateInstance>> = vec![Vec::new(); facts.len()];
    for cand in external {
        let homes: Vec<usize> = (0..facts.len())
            .filter(|&p| cand.bindings.values().any(|c| facts[p].get(c).is_some()))
            .collect();
        if homes.is_empty() {
            warnings.push(format!(
                "external {} candidate {} matches no project; skipped",
                cand.pattern_name, cand.instance_id
            ));
        }
        for p in homes {
            per_project[p].push(cand.clone());
        }
    }
    let mut out = Vec::new();
    for (p, cands) in per_project.into_iter().enumerate() {
        let mut next: BTreeMap<String, usize> = BTreeMap::new();
        for mut c in cands {
            let id = next.entry(c.pattern_name.clone()).or_insert(0);
            *id += 1;
            c.instance_id = *id;
            out.push((p, c));
        }
    }
    out
}

/// Reorders assessments into report order: project, source, pattern, id.
fn canonical_order(output: &mut RunOutput) {
    let project_pos: BTreeMap<String, usize> = output
        .projects
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let pattern_pos: BTreeMap<String, usize> = output
        .patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (p.pattern_name.clone(), i))
        .collect();
    output.assessments.sort_by_key(|a| {
        (
            project_pos.get(&a.project).copied(),
            a.candidate.source,
            pattern_pos.get(&a.candidate.pattern_name).copied(),
            a.candidate.instance_id,
        )
    });
}
