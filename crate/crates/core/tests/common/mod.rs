#![allow(dead_code)]

use std::path::PathBuf;

use dpconform_core::external::parse_external_candidates;
use dpconform_core::facts::parse_repository;
use dpconform_core::rules::load_definitions;
use dpconform_core::{CandidateInstance, PatternDefinition, PatternRule, ProjectFacts};

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixtures() -> PathBuf {
    workspace_root().join("fixtures")
}

pub fn pattern_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("patterns")
}

pub fn definitions() -> Vec<PatternDefinition> {
    load_definitions(&pattern_dir()).expect("shipped patterns load")
}

pub fn rules(defs: &[PatternDefinition]) -> Vec<PatternRule> {
    defs.iter().map(|d| d.rule.clone()).collect()
}

pub fn headfirst() -> Vec<ProjectFacts> {
    parse_repository(&fixtures().join("headfirst")).expect("fixture repository parses")
}

pub fn truth(defs: &[PatternDefinition]) -> Vec<CandidateInstance> {
    parse_external_candidates(&fixtures().join("headfirst-truth.txt"), &rules(defs)).expect("truth file parses")
}

pub fn definition<'a>(defs: &'a [PatternDefinition], name: &str) -> &'a PatternDefinition {
    defs.iter().find(|d| d.name() == name).expect("pattern is shipped")
}

/// The project declaring every class bound by `cand`.
pub fn home<'a>(projects: &'a [ProjectFacts], cand: &CandidateInstance) -> &'a ProjectFacts {
    projects
        .iter()
        .find(|p| cand.bindings.values().all(|c| p.get(c).is_some()))
        .unwrap_or_else(|| panic!("no project declares all of {:?}", cand.bindings))
}
