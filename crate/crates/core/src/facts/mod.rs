//! Class facts extracted from a source repository.
//!
//! A repository root holds one project per immediate subdirectory. Every
//! `.java` file of a project is parsed into [`ClassDecl`]s; once all class
//! names of the project are known, each declaration is reduced to a
//! [`ClassFact`] carrying its abstraction kind and the typed connections
//! towards other classes of the same project.

mod lexer;
pub mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use walkdir::WalkDir;

use crate::error::{Error, Result};
pub use syntax::{parse_source, ClassDecl, MethodSig, ParsedSource, SyntaxError, TypeRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbstractionKind {
    Normal,
    Abstract,
    Interface,
    /// Matcher-only: accepts `Abstract` or `Interface`. Never stored on a fact.
    Abstracted,
}

impl AbstractionKind {
    pub const ALL: [AbstractionKind; 4] = [
        AbstractionKind::Normal,
        AbstractionKind::Abstract,
        AbstractionKind::Interface,
        AbstractionKind::Abstracted,
    ];

    /// Whether a class declared as `actual` satisfies this (required) kind.
    pub fn matches(self, actual: AbstractionKind) -> bool {
        match self {
            AbstractionKind::Abstracted => {
                matches!(actual, AbstractionKind::Abstract | AbstractionKind::Interface)
            }
            kind => kind == actual,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AbstractionKind::Normal => "Normal",
            AbstractionKind::Abstract => "Abstract",
            AbstractionKind::Interface => "Interface",
            AbstractionKind::Abstracted => "Abstracted",
        }
    }
}

impl fmt::Display for AbstractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AbstractionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AbstractionKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown abstraction kind `{s}`"))
    }
}

/// Directed structural relation "A <kind> B".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectionKind {
    Calls,
    Creates,
    Uses,
    Has,
    References,
    Inherits,
}

impl ConnectionKind {
    pub const ALL: [ConnectionKind; 6] = [
        ConnectionKind::Calls,
        ConnectionKind::Creates,
        ConnectionKind::Uses,
        ConnectionKind::Has,
        ConnectionKind::References,
        ConnectionKind::Inherits,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConnectionKind::Calls => "calls",
            ConnectionKind::Creates => "creates",
            ConnectionKind::Uses => "uses",
            ConnectionKind::Has => "has",
            ConnectionKind::References => "references",
            ConnectionKind::Inherits => "inherits",
        }
    }
}

impl fmt::Display for ConnectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConnectionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConnectionKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown connection kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Connection {
    pub kind: ConnectionKind,
    pub target: String,
}

impl Connection {
    pub fn new(kind: ConnectionKind, target: impl Into<String>) -> Self {
        Self {
            kind,
            target: target.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFact {
    pub name: String,
    pub abstraction: AbstractionKind,
    pub connections: BTreeSet<Connection>,
    pub source_file: PathBuf,
    pub line: usize,
}

impl ClassFact {
    pub fn has_connection(&self, kind: ConnectionKind, target: &str) -> bool {
        // BTreeSet<Connection> cannot be probed with borrowed parts; the sets are small.
        self.connections.iter().any(|c| c.kind == kind && c.target == target)
    }
}

/// Something skipped during ingestion. Never fatal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub file: PathBuf,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}: {}", self.file.display(), self.line, self.message)
        } else {
            write!(f, "{}: {}", self.file.display(), self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProjectFacts {
    pub project_name: String,
    pub classes: BTreeMap<String, ClassFact>,
    pub loc_count: usize,
    pub file_count: usize,
    pub warnings: Vec<Warning>,
}

impl ProjectFacts {
    pub fn get(&self, name: &str) -> Option<&ClassFact> {
        self.classes.get(name)
    }

    /// Builds facts from in-memory sources, `(path, text)` pairs.
    pub fn from_sources<P, S>(project_name: &str, sources: impl IntoIterator<Item = (P, S)>) -> Result<Self>
    where
        P: Into<PathBuf>,
        S: AsRef<str>,
    {
        let parsed: Vec<FileOutcome> = sources
            .into_iter()
            .map(|(p, s)| parse_file_text(p.into(), s.as_ref()))
            .collect();
        assemble(project_name, parsed)
    }
}

/// Maps a parsed declaration to its connection set, keeping only targets in
/// `known_classes`. Connections always point from the declaring class outward.
pub fn extract_connections(class_body: &ClassDecl, known_classes: &BTreeSet<String>) -> BTreeSet<Connection> {
    let mut out = BTreeSet::new();
    let mut add = |kind, target: &str| {
        if known_classes.contains(target) {
            out.insert(Connection::new(kind, target));
        }
    };
    for s in &class_body.supertypes {
        add(ConnectionKind::Inherits, s);
    }
    for f in &class_body.fields {
        for n in f.names() {
            add(ConnectionKind::Has, n);
        }
    }
    for m in &class_body.methods {
        for p in &m.params {
            for n in p.names() {
                add(ConnectionKind::References, n);
            }
        }
        if let Some(r) = &m.return_type {
            for n in r.names() {
                add(ConnectionKind::Uses, n);
            }
        }
    }
    for c in &class_body.created {
        add(ConnectionKind::Creates, c);
    }
    for c in &class_body.invoked {
        add(ConnectionKind::Calls, c);
    }
    out
}

struct FileOutcome {
    path: PathBuf,
    lines: usize,
    classes: Vec<ClassDecl>,
    warnings: Vec<Warning>,
    parsed: bool,
}

fn parse_file_text(path: PathBuf, text: &str) -> FileOutcome {
    let lines = text.lines().count();
    match parse_source(text) {
        Ok(p) => FileOutcome {
            warnings: p
                .warnings
                .into_iter()
                .map(|(line, message)| Warning {
                    file: path.clone(),
                    line,
                    message,
                })
                .collect(),
            path,
            lines,
            classes: p.classes,
            parsed: true,
        },
        Err(e) => FileOutcome {
            warnings: vec![Warning {
                file: path.clone(),
                line: e.line,
                message: format!("file skipped: {}", e.message),
            }],
            path,
            lines: 0,
            classes: Vec::new(),
            parsed: false,
        },
    }
}

fn assemble(project_name: &str, mut files: Vec<FileOutcome>) -> Result<ProjectFacts> {
    files.sort_by(|a, b| a.path.cmp(&b.path));

    let mut decls: BTreeMap<String, (ClassDecl, PathBuf)> = BTreeMap::new();
    let mut facts = ProjectFacts {
        project_name: project_name.to_owned(),
        ..Default::default()
    };
    for f in files {
        facts.warnings.extend(f.warnings);
        if !f.parsed {
            continue;
        }
        facts.file_count += 1;
        facts.loc_count += f.lines;
        for d in f.classes {
            if let Some((_, first)) = decls.get(&d.name) {
                return Err(Error::DuplicateClass {
                    project: project_name.to_owned(),
                    name: d.name,
                    first: first.clone(),
                    second: f.path,
                });
            }
            decls.insert(d.name.clone(), (d, f.path.clone()));
        }
    }

    let known: BTreeSet<String> = decls.keys().cloned().collect();
    for (name, (decl, path)) in decls {
        let connections = extract_connections(&decl, &known);
        facts.classes.insert(
            name.clone(),
            ClassFact {
                name,
                abstraction: decl.abstraction,
                connections,
                source_file: path,
                line: decl.line,
            },
        );
    }
    Ok(facts)
}

fn java_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file() && e.path().extension().is_some_and(|x| x == "java"))
        .map(|e| e.into_path())
        .collect();
    files.sort();
    files
}

/// Parses one project directory. Unreadable or unparseable files become warnings.
pub fn parse_project(name: &str, dir: &Path) -> Result<ProjectFacts> {
    let outcomes: Vec<FileOutcome> = java_files(dir)
        .into_par_iter()
        .map(|path| match fs::read(&path) {
            Ok(bytes) => {
                let text = String::from_utf8_lossy(&bytes);
                parse_file_text(path, &text)
            }
            Err(e) => FileOutcome {
                warnings: vec![Warning {
                    file: path.clone(),
                    line: 0,
                    message: format!("file skipped: {e}"),
                }],
                path,
                lines: 0,
                classes: Vec::new(),
                parsed: false,
            },
        })
        .collect();
    assemble(name, outcomes)
}

/// One [`ProjectFacts`] per immediate subdirectory of `root`, ordered by name.
pub fn parse_repository(root: &Path) -> Result<Vec<ProjectFacts>> {
    let entries = fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    let mut dirs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        if entry.file_type().map_err(|e| Error::io(entry.path(), e))?.is_dir() {
            dirs.push((entry.file_name().to_string_lossy().into_owned(), entry.path()));
        }
    }
    dirs.sort();
    dirs.par_iter().map(|(name, path)| parse_project(name, path)).collect()
}
