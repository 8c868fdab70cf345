//! Pattern definitions: detection rules and characteristics catalogs.
//!
//! Both are small line-oriented text formats, one file per pattern, living
//! side by side in a pattern directory:
//!
//! ```text
//! # strategy.rules
//! pattern Strategy
//! member A ConcreteStrategy Normal
//! member B Strategy Abstracted
//! connection A inherits B
//!
//! # strategy.chars
//! pattern Strategy
//! abstraction Strategy Interface required
//! relationship Inheritance ConcreteStrategy Strategy inherits required
//! ```
//!
//! A rule says which class structures are *candidates*; the catalog says
//! what a conforming implementation of each role must (or may) look like.
//! All characteristics weigh the same, so catalogs carry no weights.

mod builtin;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::facts::{AbstractionKind, ConnectionKind};

pub use builtin::{builtin_catalogs, write_builtin_files};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub letter: char,
    pub role_name: String,
    pub abstraction: AbstractionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleConnection {
    pub from: char,
    pub kind: ConnectionKind,
    pub to: char,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRule {
    pub pattern_name: String,
    pub members: Vec<Member>,
    pub connections: Vec<RuleConnection>,
}

impl PatternRule {
    pub fn member(&self, letter: char) -> Option<&Member> {
        self.members.iter().find(|m| m.letter == letter)
    }

    pub fn member_by_role(&self, role_name: &str) -> Option<&Member> {
        self.members.iter().find(|m| m.role_name == role_name)
    }

    pub fn index_of(&self, letter: char) -> Option<usize> {
        self.members.iter().position(|m| m.letter == letter)
    }

    /// Parses one rule file. `file` is only used in error messages.
    pub fn parse(text: &str, file: &Path) -> Result<Self> {
        let mut name: Option<String> = None;
        let mut members = Vec::new();
        let mut member_lines = Vec::new();
        let mut connections = Vec::new();
        let mut connection_lines = Vec::new();

        for (line_no, words) in content_lines(text) {
            let err = |m: String| Error::syntax(file, line_no, m);
            match words.as_slice() {
                ["pattern", n] => {
                    if name.is_some() {
                        return Err(err("a rule file describes exactly one pattern".into()));
                    }
                    name = Some((*n).to_owned());
                }
                _ if name.is_none() => return Err(err("expected `pattern <Name>` first".into())),
                ["member", letter, role, kind] => {
                    let letter = parse_letter(letter).map_err(err)?;
                    let abstraction = kind.parse().map_err(err)?;
                    members.push(Member {
                        letter,
                        role_name: (*role).to_owned(),
                        abstraction,
                    });
                    member_lines.push(line_no);
                }
                ["connection", from, kind, to] => {
                    let from = parse_letter(from).map_err(err)?;
                    let to = parse_letter(to).map_err(err)?;
                    let kind = kind.parse().map_err(err)?;
                    connections.push(RuleConnection { from, kind, to });
                    connection_lines.push(line_no);
                }
                [kw, ..] if matches!(*kw, "pattern" | "member" | "connection") => {
                    return Err(err(format!("wrong number of fields for `{kw}`")))
                }
                [kw, ..] => return Err(err(format!("unknown directive `{kw}`"))),
                [] => unreachable!("content_lines skips blank lines"),
            }
        }

        let pattern_name = name.ok_or_else(|| Error::syntax(file, 1, "missing `pattern <Name>` line"))?;

        let mut seen = BTreeSet::new();
        let mut seen_roles = BTreeSet::new();
        for (m, &line) in members.iter().zip(&member_lines) {
            if !seen.insert(m.letter) {
                return Err(Error::syntax(
                    file,
                    line,
                    format!("role letter {} declared twice", m.letter),
                ));
            }
            if !seen_roles.insert(m.role_name.as_str()) {
                return Err(Error::syntax(
                    file,
                    line,
                    format!("role `{}` declared twice", m.role_name),
                ));
            }
        }
        let expected: BTreeSet<char> = ('A'..).take(members.len()).collect();
        if seen != expected {
            return Err(Error::validation(file, "role letters must be contiguous from A"));
        }
        if members.len() < 2 {
            return Err(Error::validation(file, "a pattern needs at least two members"));
        }
        for (c, &line) in connections.iter().zip(&connection_lines) {
            for l in [c.from, c.to] {
                if !seen.contains(&l) {
                    return Err(Error::syntax(file, line, format!("undeclared role {l}")));
                }
            }
        }
        Ok(PatternRule {
            pattern_name,
            members,
            connections,
        })
    }

    /// Canonical text form; `parse(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut s = format!("pattern {}\n", self.pattern_name);
        for m in &self.members {
            let _ = writeln!(s, "member {} {} {}", m.letter, m.role_name, m.abstraction);
        }
        for c in &self.connections {
            let _ = writeln!(s, "connection {} {} {}", c.from, c.kind, c.to);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conforming {
    Required,
    Optional,
}

impl Conforming {
    pub fn as_str(self) -> &'static str {
        match self {
            Conforming::Required => "required",
            Conforming::Optional => "optional",
        }
    }

    pub fn is_required(self) -> bool {
        self == Conforming::Required
    }
}

impl fmt::Display for Conforming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Conforming {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "required" => Ok(Conforming::Required),
            "optional" => Ok(Conforming::Optional),
            _ => Err(format!("expected `required` or `optional`, found `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractionCharacteristic {
    pub role: String,
    pub kind: AbstractionKind,
    pub conforming: Conforming,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationshipCharacteristic {
    /// Informational relation label, e.g. `Aggregation`.
    pub label: String,
    pub from_role: String,
    pub to_role: String,
    pub kind: ConnectionKind,
    pub conforming: Conforming,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicsCatalog {
    pub pattern_name: String,
    pub abstraction_characteristics: Vec<AbstractionCharacteristic>,
    pub relationship_characteristics: Vec<RelationshipCharacteristic>,
}

impl CharacteristicsCatalog {
    pub fn parse(text: &str, file: &Path) -> Result<Self> {
        let mut name: Option<String> = None;
        let mut abstraction_characteristics = Vec::new();
        let mut relationship_characteristics = Vec::new();

        for (line_no, words) in content_lines(text) {
            let err = |m: String| Error::syntax(file, line_no, m);
            match words.as_slice() {
                ["pattern", n] => {
                    if name.is_some() {
                        return Err(err("a catalog file describes exactly one pattern".into()));
                    }
                    name = Some((*n).to_owned());
                }
                _ if name.is_none() => return Err(err("expected `pattern <Name>` first".into())),
                ["abstraction", role, kind, flag] => {
                    abstraction_characteristics.push(AbstractionCharacteristic {
                        role: (*role).to_owned(),
                        kind: kind.parse().map_err(err)?,
                        conforming: flag.parse().map_err(err)?,
                    });
                }
                ["relationship", label, from, to, kind, flag] => {
                    relationship_characteristics.push(RelationshipCharacteristic {
                        label: (*label).to_owned(),
                        from_role: (*from).to_owned(),
                        to_role: (*to).to_owned(),
                        kind: kind.parse().map_err(err)?,
                        conforming: flag.parse().map_err(err)?,
                    });
                }
                [kw, ..] if matches!(*kw, "pattern" | "abstraction" | "relationship") => {
                    return Err(err(format!("wrong number of fields for `{kw}`")))
                }
                [kw, ..] => return Err(err(format!("unknown directive `{kw}`"))),
                [] => unreachable!("content_lines skips blank lines"),
            }
        }
        let pattern_name = name.ok_or_else(|| Error::syntax(file, 1, "missing `pattern <Name>` line"))?;
        let catalog = CharacteristicsCatalog {
            pattern_name,
            abstraction_characteristics,
            relationship_characteristics,
        };
        let roles: Vec<String> = catalog.roles().into_iter().map(str::to_owned).collect();
        catalog.check_required_per_role(roles.iter().map(String::as_str), file)?;
        Ok(catalog)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("pattern {}\n", self.pattern_name);
        for a in &self.abstraction_characteristics {
            let _ = writeln!(s, "abstraction {} {} {}", a.role, a.kind, a.conforming);
        }
        for r in &self.relationship_characteristics {
            let _ = writeln!(
                s,
                "relationship {} {} {} {} {}",
                r.label, r.from_role, r.to_role, r.kind, r.conforming
            );
        }
        s
    }

    /// Every role mentioned anywhere in the catalog.
    pub fn roles(&self) -> BTreeSet<&str> {
        let mut roles: BTreeSet<&str> = self
            .abstraction_characteristics
            .iter()
            .map(|a| a.role.as_str())
            .collect();
        for r in &self.relationship_characteristics {
            roles.insert(&r.from_role);
            roles.insert(&r.to_role);
        }
        roles
    }

    pub fn abstraction_rows<'a>(&'a self, role: &'a str) -> impl Iterator<Item = &'a AbstractionCharacteristic> {
        self.abstraction_characteristics.iter().filter(move |a| a.role == role)
    }

    /// Relationship rows evaluated for `role`, i.e. those it is the source of.
    pub fn relationship_rows<'a>(&'a self, role: &'a str) -> impl Iterator<Item = &'a RelationshipCharacteristic> {
        self.relationship_characteristics
            .iter()
            .filter(move |r| r.from_role == role)
    }

    /// A role is optional when it has abstraction rows and all are Optional.
    pub fn is_optional_role(&self, role: &str) -> bool {
        let mut rows = self.abstraction_rows(role).peekable();
        rows.peek().is_some() && rows.all(|a| a.conforming == Conforming::Optional)
    }

    fn has_required(&self, role: &str) -> bool {
        self.abstraction_rows(role).any(|a| a.conforming.is_required())
            || self.relationship_rows(role).any(|r| r.conforming.is_required())
    }

    fn check_required_per_role<'r>(&self, roles: impl IntoIterator<Item = &'r str>, file: &Path) -> Result<()> {
        for role in roles {
            // pure relationship targets (never a source, no abstraction row) carry no rows of their own
            let evaluated =
                self.abstraction_rows(role).next().is_some() || self.relationship_rows(role).next().is_some();
            if evaluated && !self.has_required(role) {
                return Err(Error::validation(
                    file,
                    format!(
                        "role `{role}` of `{}` has no required characteristic",
                        self.pattern_name
                    ),
                ));
            }
        }
        Ok(())
    }
}

/// A detection rule together with the catalog its candidates are scored against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDefinition {
    pub rule: PatternRule,
    pub catalog: CharacteristicsCatalog,
}

impl PatternDefinition {
    pub fn name(&self) -> &str {
        &self.rule.pattern_name
    }
}

/// Checks that a rule and catalog describe the same pattern consistently.
///
/// * every catalog role is a rule role;
/// * every rule role has at least one Required characteristic;
/// * every rule connection is a Required relationship of the catalog, so
///   detection never demands more than conformance does.
pub fn check_agreement(rule: &PatternRule, catalog: &CharacteristicsCatalog, file: &Path) -> Result<()> {
    for role in catalog.roles() {
        if rule.member_by_role(role).is_none() {
            return Err(Error::validation(
                file,
                format!("catalog role `{role}` is not a member of rule `{}`", rule.pattern_name),
            ));
        }
    }
    for m in &rule.members {
        if !catalog.has_required(&m.role_name) {
            return Err(Error::validation(
                file,
                format!(
                    "role `{}` of `{}` has no required characteristic",
                    m.role_name, rule.pattern_name
                ),
            ));
        }
    }
    for c in &rule.connections {
        let (from, to) = (
            &rule.member(c.from).expect("validated").role_name,
            &rule.member(c.to).expect("validated").role_name,
        );
        let covered = catalog
            .relationship_characteristics
            .iter()
            .any(|r| r.conforming.is_required() && r.kind == c.kind && &r.from_role == from && &r.to_role == to);
        if !covered {
            return Err(Error::validation(
                file,
                format!("rule connection `{from} {} {to}` has no required catalog row", c.kind),
            ));
        }
    }
    Ok(())
}

fn files_with_extension(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == ext) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Loads and validates every `.rules` file in `dir`.
pub fn load_pattern_rules(dir: &Path) -> Result<Vec<PatternRule>> {
    let mut rules: Vec<PatternRule> = Vec::new();
    let mut origin: BTreeMap<String, PathBuf> = BTreeMap::new();
    for path in files_with_extension(dir, "rules")? {
        let rule = PatternRule::parse(&read(&path)?, &path)?;
        if let Some(first) = origin.get(&rule.pattern_name) {
            let line = pattern_line(&read(&path)?);
            return Err(Error::syntax(
                &path,
                line,
                format!("pattern `{}` already defined in {}", rule.pattern_name, first.display()),
            ));
        }
        origin.insert(rule.pattern_name.clone(), path);
        rules.push(rule);
    }
    Ok(rules)
}

/// Loads every `.chars` file in `dir`, cross-checking each against the rule
/// file of the same pattern in that directory.
pub fn load_characteristics(dir: &Path) -> Result<Vec<CharacteristicsCatalog>> {
    let rules = load_pattern_rules(dir)?;
    let mut catalogs: Vec<CharacteristicsCatalog> = Vec::new();
    for path in files_with_extension(dir, "chars")? {
        let catalog = CharacteristicsCatalog::parse(&read(&path)?, &path)?;
        if catalogs.iter().any(|c| c.pattern_name == catalog.pattern_name) {
            return Err(Error::syntax(
                &path,
                pattern_line(&read(&path)?),
                format!("catalog for `{}` defined twice", catalog.pattern_name),
            ));
        }
        let rule = rules
            .iter()
            .find(|r| r.pattern_name == catalog.pattern_name)
            .ok_or_else(|| Error::validation(&path, format!("no rule file for pattern `{}`", catalog.pattern_name)))?;
        check_agreement(rule, &catalog, &path)?;
        catalogs.push(catalog);
    }
    Ok(catalogs)
}

/// Loads rules and catalogs from `dir` and pairs them by pattern name.
pub fn load_definitions(dir: &Path) -> Result<Vec<PatternDefinition>> {
    let rules = load_pattern_rules(dir)?;
    let mut catalogs = load_characteristics(dir)?;
    let mut out = Vec::with_capacity(rules.len());
    for rule in rules {
        let idx = catalogs
            .iter()
            .position(|c| c.pattern_name == rule.pattern_name)
            .ok_or_else(|| {
                Error::validation(dir, format!("pattern `{}` has no `.chars` catalog", rule.pattern_name))
            })?;
        let catalog = catalogs.swap_remove(idx);
        out.push(PatternDefinition { rule, catalog });
    }
    Ok(out)
}

/// Rewrites a rule or catalog file in canonical form: comments and blank
/// lines dropped, single spaces, keywords in canonical case.
pub fn canonicalize_rule_text(text: &str) -> Result<String> {
    Ok(PatternRule::parse(text, Path::new("<text>"))?.to_text())
}

fn parse_letter(s: &str) -> Result<char, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_uppercase() => Ok(c),
        _ => Err(format!("expected a role letter A..Z, found `{s}`")),
    }
}

fn pattern_line(text: &str) -> usize {
    content_lines(text)
        .find(|(_, w)| w.first() == Some(&"pattern"))
        .map_or(1, |(l, _)| l)
}

/// Non-blank, non-comment lines split on whitespace, with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}
