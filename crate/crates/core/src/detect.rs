//! Candidate enumeration by recursive role assignment.
//!
//! Roles are bound in letter order. At depth `k` a class may take role `k`
//! when it is unused, its abstraction matches the role, and every rule
//! connection whose endpoints are now both bound holds in the facts. All
//! satisfying assignments are reported; overlapping candidates are expected.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::facts::{ConnectionKind, ProjectFacts};
use crate::rules::{CharacteristicsCatalog, PatternRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CandidateSource {
    Internal,
    External,
}

impl CandidateSource {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateSource::Internal => "Internal",
            CandidateSource::External => "External",
        }
    }
}

impl fmt::Display for CandidateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CandidateSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Internal" => Ok(CandidateSource::Internal),
            "External" => Ok(CandidateSource::External),
            _ => Err(format!("unknown candidate source `{s}`")),
        }
    }
}

/// One line of an interchange block, kept verbatim for re-serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalEntry {
    pub class_name: String,
    /// Everything after the class name, e.g. `A Concrete Component`.
    pub role_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateInstance {
    pub pattern_name: String,
    /// 1-based, per pattern and project, in assignment order.
    pub instance_id: usize,
    /// role letter -> class name; injective.
    pub bindings: BTreeMap<char, String>,
    pub source: CandidateSource,
    /// Original lines for candidates read from an interchange file.
    pub external_entries: Vec<ExternalEntry>,
}

impl CandidateInstance {
    pub fn class_for(&self, letter: char) -> Option<&str> {
        self.bindings.get(&letter).map(String::as_str)
    }
}

/// Enumerates every injective role assignment satisfying `pattern` in `facts`,
/// ordered by the class bound to role A, then B, and so on.
pub fn detect(pattern: &PatternRule, facts: &ProjectFacts) -> Vec<CandidateInstance> {
    let classes: Vec<_> = facts.classes.values().collect();
    let index: BTreeMap<&str, usize> = classes.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect();
    let edges: Vec<HashSet<(ConnectionKind, usize)>> = classes
        .iter()
        .map(|c| {
            c.connections
                .iter()
                .filter_map(|k| index.get(k.target.as_str()).map(|&t| (k.kind, t)))
                .collect()
        })
        .collect();

    let roles = pattern.members.len();
    let options: Vec<Vec<usize>> = pattern
        .members
        .iter()
        .map(|m| {
            (0..classes.len())
                .filter(|&i| m.abstraction.matches(classes[i].abstraction))
                .collect()
        })
        .collect();

    // constraints checked at the depth where their later endpoint is bound
    let mut checks: Vec<Vec<(usize, ConnectionKind, usize)>> = vec![Vec::new(); roles];
    for c in &pattern.connections {
        let (Some(from), Some(to)) = (pattern.index_of(c.from), pattern.index_of(c.to)) else {
            continue;
        };
        checks[from.max(to)].push((from, c.kind, to));
    }

    let mut search = Search {
        options: &options,
        checks: &checks,
        edges: &edges,
        assigned: vec![usize::MAX; roles],
        used: vec![false; classes.len()],
        found: Vec::new(),
    };
    if roles > 0 {
        search.descend(0);
    }

    search
        .found
        .into_iter()
        .enumerate()
        .map(|(n, assignment)| CandidateInstance {
            pattern_name: pattern.pattern_name.clone(),
            instance_id: n + 1,
            bindings: pattern
                .members
                .iter()
                .zip(assignment)
                .map(|(m, c)| (m.letter, classes[c].name.clone()))
                .collect(),
            source: CandidateSource::Internal,
            external_entries: Vec::new(),
        })
        .collect()
}

struct Search<'a> {
    options: &'a [Vec<usize>],
    checks: &'a [Vec<(usize, ConnectionKind, usize)>],
    edges: &'a [HashSet<(ConnectionKind, usize)>],
    assigned: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) {
        if depth == self.assigned.len() {
            self.found.push(self.assigned.clone());
            return;
        }
        for &class in &self.options[depth] {
            if self.used[class] {
                continue;
            }
            self.assigned[depth] = class;
            let ok = self.checks[depth]
                .iter()
                .all(|&(from, kind, to)| self.edges[self.assigned[from]].contains(&(kind, self.assigned[to])));
            if ok {
                self.used[class] = true;
                self.descend(depth + 1);
                self.used[class] = false;
            }
        }
        self.assigned[depth] = usize::MAX;
    }
}

/// Collapses candidates that agree on every role not marked optional in the
/// catalog, keeping the first of each group and renumbering.
pub fn dedupe(
    candidates: Vec<CandidateInstance>,
    rule: &PatternRule,
    catalog: &CharacteristicsCatalog,
) -> Vec<CandidateInstance> {
    let optional: BTreeSet<char> = rule
        .members
        .iter()
        .filter(|m| catalog.is_optional_role(&m.role_name))
        .map(|m| m.letter)
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut c in candidates {
        let key: Vec<(char, String)> = c
            .bindings
            .iter()
            .filter(|(l, _)| !optional.contains(l))
            .map(|(l, n)| (*l, n.clone()))
            .collect();
        if seen.insert((c.pattern_name.clone(), key)) {
            c.instance_id = out.len() + 1;
            out.push(c);
        }
    }
    out
}
