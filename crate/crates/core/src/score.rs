//! Conformance scoring of candidate members against a characteristics catalog.
//!
//! Every characteristic becomes one row of a binary matrix: the definition
//! bit says the catalog expects it, the implementation bit says the class
//! has it. A member's score is `(1 - hamming / N) * 100` over its N rows.

use std::collections::BTreeMap;
use std::fmt;

use crate::detect::CandidateInstance;
use crate::error::{Error, Result};
use crate::facts::{AbstractionKind, ClassFact, ConnectionKind, ProjectFacts};
use crate::rules::{Conforming, Member, PatternDefinition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreRow {
    pub definition_bit: u8,
    pub implementation_bit: u8,
    pub characteristic_label: String,
    pub conforming: Conforming,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreMatrix {
    pub rows: Vec<ScoreRow>,
}

impl ScoreMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn definition_bits(&self) -> Vec<u8> {
        self.rows.iter().map(|r| r.definition_bit).collect()
    }

    pub fn implementation_bits(&self) -> Vec<u8> {
        self.rows.iter().map(|r| r.implementation_bit).collect()
    }

    pub fn score_pct(&self) -> f64 {
        score_from_bits(&self.definition_bits(), &self.implementation_bits())
    }
}

/// Number of positions where `a` and `b` differ.
pub fn hamming(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

fn score_from_bits(def: &[u8], imp: &[u8]) -> f64 {
    if def.is_empty() {
        return 100.0;
    }
    let distance = hamming(def, imp).expect("bit vectors come from the same rows");
    (1.0 - distance as f64 / def.len() as f64) * 100.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    MissingRequiredConnection,
    AbstractionMismatch,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::MissingRequiredConnection => "MissingRequiredConnection",
            ViolationKind::AbstractionMismatch => "AbstractionMismatch",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ViolationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "MissingRequiredConnection" => Ok(ViolationKind::MissingRequiredConnection),
            "AbstractionMismatch" => Ok(ViolationKind::AbstractionMismatch),
            _ => Err(format!("unknown violation kind `{s}`")),
        }
    }
}

/// What the catalog asked for, printed as `calls->QuackBehavior` or
/// `abstraction->Interface`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Connection { kind: ConnectionKind, target: String },
    Abstraction(AbstractionKind),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Connection { kind, target } => write!(f, "{kind}->{target}"),
            Expectation::Abstraction(kind) => write!(f, "abstraction->{kind}"),
        }
    }
}

impl std::str::FromStr for Expectation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, tail) = s
            .split_once("->")
            .ok_or_else(|| format!("malformed expectation `{s}`"))?;
        if head == "abstraction" {
            Ok(Expectation::Abstraction(tail.parse()?))
        } else {
            Ok(Expectation::Connection {
                kind: head.parse()?,
                target: tail.to_owned(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerificationStatus {
    Pending,
    Approved,
    Discarded,
}

impl VerificationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerificationStatus::Pending => "Pending",
            VerificationStatus::Approved => "Approved",
            VerificationStatus::Discarded => "Discarded",
        }
    }
}

impl fmt::Display for VerificationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for VerificationStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Pending" => Ok(VerificationStatus::Pending),
            "Approved" => Ok(VerificationStatus::Approved),
            "Discarded" => Ok(VerificationStatus::Discarded),
            _ => Err(format!("unknown verification status `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationRecord {
    pub kind: ViolationKind,
    pub from_class: String,
    pub to_class: Option<String>,
    pub expected: Expectation,
    pub recommendation: String,
    pub status: VerificationStatus,
    /// Index of the matrix row this violation came from.
    pub row: usize,
}

impl ViolationRecord {
    /// The verifier's explanation, once the violation has been approved or discarded.
    pub fn note(&self) -> Option<String> {
        verification_note(self.kind, self.status, &self.from_class, self.to_class.as_deref())
    }
}

/// Explanation printed under a verified violation between `from` and `to`.
/// Abstraction violations involve one class and carry no note.
pub fn verification_note(
    kind: ViolationKind,
    status: VerificationStatus,
    from: &str,
    to: Option<&str>,
) -> Option<String> {
    if kind == ViolationKind::AbstractionMismatch {
        return None;
    }
    let (from, to) = (from.to_lowercase(), to.unwrap_or_default().to_lowercase());
    match status {
        VerificationStatus::Pending => None,
        VerificationStatus::Approved => Some(format!(
            "This violation has to be solved according to the relationship between ( {from} ) and ( {to} ) in SRS document."
        )),
        VerificationStatus::Discarded => Some(format!(
            "No relationship between ( {from} ) and ( {to} ) in SRS document."
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemberAssessment {
    pub role_letter: char,
    pub role_name: String,
    pub class_name: String,
    pub matrix: ScoreMatrix,
    /// Current score; discarded violations count as satisfied.
    pub score_pct: f64,
    /// Score straight from the matrix, before any verification.
    pub initial_score_pct: f64,
    pub violations: Vec<ViolationRecord>,
}

impl MemberAssessment {
    /// Recomputes `score_pct` from the matrix and the current violation statuses.
    pub fn rescore(&mut self) {
        let def = self.matrix.definition_bits();
        let mut imp = self.matrix.implementation_bits();
        for v in &self.violations {
            if v.status == VerificationStatus::Discarded {
                imp[v.row] = def[v.row];
            }
        }
        self.score_pct = score_from_bits(&def, &imp);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceAssessment {
    pub project: String,
    pub candidate: CandidateInstance,
    pub members: Vec<MemberAssessment>,
    pub total_pct: f64,
    pub initial_total_pct: f64,
    pub warnings: Vec<String>,
}

impl InstanceAssessment {
    pub fn rescore(&mut self) {
        for m in &mut self.members {
            m.rescore();
        }
        self.total_pct = mean(self.members.iter().map(|m| m.score_pct));
    }

    pub fn violations(&self) -> impl Iterator<Item = &ViolationRecord> {
        self.members.iter().flat_map(|m| &m.violations)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        100.0
    } else {
        sum / n as f64
    }
}

/// Scores one bound member. `member` is `None` when the class is not among
/// the analysed facts; every characteristic then counts as unimplemented.
/// `bound` maps role names to the classes bound to them.
pub fn check_conformance(
    def: &PatternDefinition,
    role: &Member,
    class_name: &str,
    member: Option<&ClassFact>,
    bound: &BTreeMap<&str, &str>,
) -> MemberAssessment {
    let catalog = &def.catalog;
    let mut matrix = ScoreMatrix::default();
    let mut violations = Vec::new();
    let mut push = |row: ScoreRow, violation: Option<(ViolationKind, Option<String>, Expectation)>| {
        if let Some((kind, to_class, expected)) = violation {
            let mut v = ViolationRecord {
                kind,
                from_class: class_name.to_owned(),
                to_class,
                expected,
                recommendation: String::new(),
                status: VerificationStatus::Pending,
                row: matrix.rows.len(),
            };
            v.recommendation = make_recommendation(&v);
            violations.push(v);
        }
        matrix.rows.push(row);
    };

    for a in catalog.abstraction_rows(&role.role_name) {
        let label = format!("abstraction {}", a.kind);
        let actual = member.map(|m| m.abstraction);
        let expected = Expectation::Abstraction(a.kind);
        match actual {
            Some(k) if a.kind.matches(k) => push(row(1, 1, label, a.conforming), None),
            // only a required abstraction is worth a row when it is not met
            _ if !a.conforming.is_required() => {}
            Some(_) => push(
                row(0, 1, label, a.conforming),
                Some((ViolationKind::AbstractionMismatch, None, expected)),
            ),
            None => push(
                row(1, 0, label, a.conforming),
                Some((ViolationKind::AbstractionMismatch, None, expected)),
            ),
        }
    }

    for r in catalog.relationship_rows(&role.role_name) {
        let Some(&target) = bound.get(r.to_role.as_str()) else {
            continue;
        };
        let label = format!("{} {}->{} {}", r.label, r.from_role, r.to_role, r.kind);
        let present = member.is_some_and(|m| m.has_connection(r.kind, target));
        if present {
            push(row(1, 1, label, r.conforming), None);
        } else if r.conforming.is_required() {
            let expected = Expectation::Connection {
                kind: r.kind,
                target: target.to_owned(),
            };
            push(
                row(1, 0, label, r.conforming),
                Some((
                    ViolationKind::MissingRequiredConnection,
                    Some(target.to_owned()),
                    expected,
                )),
            );
        }
    }

    let score = matrix.score_pct();
    MemberAssessment {
        role_letter: role.letter,
        role_name: role.role_name.clone(),
        class_name: class_name.to_owned(),
        matrix,
        score_pct: score,
        initial_score_pct: score,
        violations,
    }
}

fn row(def: u8, imp: u8, label: String, conforming: Conforming) -> ScoreRow {
    ScoreRow {
        definition_bit: def,
        implementation_bit: imp,
        characteristic_label: label,
        conforming,
    }
}

pub fn assess_instance(
    candidate: &CandidateInstance,
    def: &PatternDefinition,
    facts: &ProjectFacts,
) -> InstanceAssessment {
    let bound: BTreeMap<&str, &str> = def
        .rule
        .members
        .iter()
        .filter_map(|m| candidate.class_for(m.letter).map(|c| (m.role_name.as_str(), c)))
        .collect();
    let mut warnings = Vec::new();
    let mut members = Vec::new();
    for role in &def.rule.members {
        let Some(class_name) = candidate.class_for(role.letter) else {
            continue;
        };
        let fact = facts.get(class_name);
        if fact.is_none() {
            warnings.push(format!(
                "{} #{}: class `{class_name}` bound to {} is not in project `{}`",
                candidate.pattern_name, candidate.instance_id, role.role_name, facts.project_name
            ));
        }
        members.push(check_conformance(def, role, class_name, fact, &bound));
    }
    let total = mean(members.iter().map(|m| m.score_pct));
    InstanceAssessment {
        project: facts.project_name.clone(),
        candidate: candidate.clone(),
        members,
        total_pct: total,
        initial_total_pct: total,
        warnings,
    }
}

pub fn make_recommendation(v: &ViolationRecord) -> String {
    let x = &v.from_class;
    match &v.expected {
        Expectation::Abstraction(kind) => {
            let kind = match kind {
                AbstractionKind::Abstracted => "Abstract or Interface",
                other => other.as_str(),
            };
            format!("Class( {x} ) should be declared as {kind}")
        }
        Expectation::Connection { kind, target: y } => match kind {
            ConnectionKind::Calls => format!("Class( {x} ) should calls (invoke function) of class {y}"),
            ConnectionKind::Creates => format!("Class( {x} ) should creates new object of class : {y}"),
            ConnectionKind::Uses => format!("Class( {x} ) should uses (return type) of class : {y}"),
            ConnectionKind::Has => format!("Class( {x} ) should has (attribute) of class : {y}"),
            ConnectionKind::References => format!("Class( {x} ) should references (parameter) of class : {y}"),
            ConnectionKind::Inherits => format!("Class( {x} ) should inherits (extends or implements) class : {y}"),
        },
    }
}

/// All recommendation strings of an instance, in member order.
pub fn recommendations(assessment: &InstanceAssessment) -> Vec<String> {
    assessment.violations().map(|v| v.recommendation.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::CandidateSource;
    use crate::facts::Connection;
    use crate::rules::builtin_catalogs;
    use proptest::prelude::*;
    use std::path::PathBuf;

    fn definition(name: &str) -> PatternDefinition {
        let (rule, catalog) = builtin_catalogs()
            .into_iter()
            .find(|(r, _)| r.pattern_name == name)
            .unwrap();
        PatternDefinition { rule, catalog }
    }

    fn class(name: &str, abstraction: AbstractionKind, conns: &[(ConnectionKind, &str)]) -> ClassFact {
        ClassFact {
            name: name.into(),
            abstraction,
            connections: conns.iter().map(|(k, t)| Connection::new(*k, *t)).collect(),
            source_file: PathBuf::from(format!("{name}.java")),
            line: 1,
        }
    }

    fn facts(classes: Vec<ClassFact>) -> ProjectFacts {
        ProjectFacts {
            project_name: "duck".into(),
            classes: classes.into_iter().map(|c| (c.name.clone(), c)).collect(),
            ..Default::default()
        }
    }

    fn candidate(pattern: &str, pairs: &[(char, &str)]) -> CandidateInstance {
        CandidateInstance {
            pattern_name: pattern.into(),
            instance_id: 1,
            bindings: pairs.iter().map(|(l, c)| (*l, c.to_string())).collect(),
            source: CandidateSource::Internal,
            external_entries: vec![],
        }
    }

    /// Minimal Duck simulator slice: Duck fails to call QuackBehavior,
    /// DecoyDuck never creates FlyRocketPowered.
    fn duck_facts(with_optionals: bool) -> ProjectFacts {
        use AbstractionKind::*;
        use ConnectionKind::*;
        let mut duck = vec![(Has, "FlyBehavior"), (Has, "QuackBehavior"), (Calls, "FlyBehavior")];
        if with_optionals {
            duck.extend([
                (References, "FlyBehavior"),
                (Uses, "FlyBehavior"),
                (References, "QuackBehavior"),
                (Uses, "QuackBehavior"),
            ]);
        }
        facts(vec![
            class("Duck", Normal, &duck),
            class(
                "DecoyDuck",
                Normal,
                &[(Inherits, "Duck"), (Creates, "FlyNoWay"), (Creates, "MuteQuack")],
            ),
            class("FlyBehavior", Interface, &[]),
            class("QuackBehavior", Interface, &[]),
            class("FlyRocketPowered", Normal, &[(Inherits, "FlyBehavior")]),
            class("FlyNoWay", Normal, &[(Inherits, "FlyBehavior")]),
            class("MuteQuack", Normal, &[(Inherits, "QuackBehavior")]),
        ])
    }

    #[test]
    fn hamming_of_worked_vectors() {
        assert_eq!(hamming(&[1, 1, 1, 1, 1], &[1, 0, 1, 1, 1]).unwrap(), 1);
        assert_eq!(hamming(&[], &[]).unwrap(), 0);
        assert!(matches!(
            hamming(&[1], &[1, 0]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn duck_context_with_optionals_scores_eighty() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate(
            "Strategy",
            &[
                ('A', "MuteQuack"),
                ('B', "QuackBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let a = assess_instance(&cand, &def, &f);
        let duck = a.members.iter().find(|m| m.class_name == "Duck").unwrap();
        let pairs: Vec<(u8, u8)> = duck
            .matrix
            .rows
            .iter()
            .map(|r| (r.definition_bit, r.implementation_bit))
            .collect();
        assert_eq!(pairs, [(1, 1), (1, 0), (1, 1), (1, 1), (1, 1)]);
        assert!((duck.score_pct - 80.0).abs() < 1e-9);
        assert_eq!(duck.violations.len(), 1);
        let v = &duck.violations[0];
        assert_eq!(v.kind, ViolationKind::MissingRequiredConnection);
        assert_eq!(v.expected.to_string(), "calls->QuackBehavior");
        assert_eq!(
            v.recommendation,
            "Class( Duck ) should calls (invoke function) of class QuackBehavior"
        );
    }

    #[test]
    fn duck_context_without_optionals_scores_two_thirds() {
        let def = definition("Strategy");
        let f = duck_facts(false);
        let cand = candidate(
            "Strategy",
            &[
                ('A', "MuteQuack"),
                ('B', "QuackBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let a = assess_instance(&cand, &def, &f);
        let duck = a.members.iter().find(|m| m.class_name == "Duck").unwrap();
        assert_eq!(duck.matrix.len(), 3);
        assert!((duck.score_pct - 200.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn rocket_powered_decoy_instance() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate(
            "Strategy",
            &[
                ('A', "FlyRocketPowered"),
                ('B', "FlyBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let a = assess_instance(&cand, &def, &f);
        let scores: Vec<(&str, f64)> = a.members.iter().map(|m| (m.class_name.as_str(), m.score_pct)).collect();
        assert_eq!(scores[0], ("FlyRocketPowered", 100.0));
        assert_eq!(scores[1], ("FlyBehavior", 100.0));
        assert_eq!(scores[2].0, "DecoyDuck");
        assert!((scores[2].1 - 200.0 / 3.0).abs() < 1e-9);
        assert_eq!(scores[3], ("Duck", 100.0));
        assert!((a.total_pct - 91.666_666_666).abs() < 1e-6);
        assert_eq!(
            recommendations(&a),
            ["Class( DecoyDuck ) should creates new object of class : FlyRocketPowered"]
        );
        assert!(a.warnings.is_empty());
    }

    #[test]
    fn perfect_member_scores_hundred_and_recommends_nothing() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate(
            "Strategy",
            &[
                ('A', "FlyNoWay"),
                ('B', "FlyBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let a = assess_instance(&cand, &def, &f);
        assert_eq!(a.total_pct, 100.0);
        assert!(recommendations(&a).is_empty());
        assert!(a
            .members
            .iter()
            .flat_map(|m| &m.matrix.rows)
            .all(|r| (r.definition_bit, r.implementation_bit) == (1, 1)));
    }

    #[test]
    fn abstraction_mismatch_is_a_zero_one_row() {
        let def = definition("Strategy");
        let mut f = duck_facts(true);
        f.classes.get_mut("FlyBehavior").unwrap().abstraction = AbstractionKind::Abstract;
        let cand = candidate(
            "Strategy",
            &[
                ('A', "FlyNoWay"),
                ('B', "FlyBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let a = assess_instance(&cand, &def, &f);
        let fb = &a.members[1];
        assert_eq!(fb.matrix.rows[0].definition_bit, 0);
        assert_eq!(fb.matrix.rows[0].implementation_bit, 1);
        assert_eq!(fb.score_pct, 0.0);
        assert_eq!(fb.violations[0].kind, ViolationKind::AbstractionMismatch);
        assert_eq!(fb.violations[0].expected.to_string(), "abstraction->Interface");
        assert_eq!(
            fb.violations[0].recommendation,
            "Class( FlyBehavior ) should be declared as Interface"
        );
    }

    #[test]
    fn unbound_role_rows_are_skipped() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate("Strategy", &[('A', "FlyNoWay"), ('B', "FlyBehavior"), ('D', "Duck")]);
        let a = assess_instance(&cand, &def, &f);
        assert_eq!(a.members.len(), 3);
        assert_eq!(a.total_pct, 100.0);
    }

    #[test]
    fn missing_class_counts_every_required_row_as_absent() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate(
            "Strategy",
            &[('A', "Ghost"), ('B', "FlyBehavior"), ('C', "DecoyDuck"), ('D', "Duck")],
        );
        let a = assess_instance(&cand, &def, &f);
        assert_eq!(a.warnings.len(), 1);
        let ghost = &a.members[0];
        assert!(ghost
            .matrix
            .rows
            .iter()
            .all(|r| (r.definition_bit, r.implementation_bit) == (1, 0)));
        assert_eq!(ghost.score_pct, 0.0);
        assert_eq!(ghost.violations.len(), ghost.matrix.len());
    }

    #[test]
    fn expectation_text_round_trips() {
        for text in [
            "calls->QuackBehavior",
            "abstraction->Interface",
            "abstraction->Abstracted",
            "inherits->Duck",
        ] {
            assert_eq!(text.parse::<Expectation>().unwrap().to_string(), text);
        }
        assert!("nonsense".parse::<Expectation>().is_err());
    }

    #[test]
    fn discarded_violations_rescore_as_satisfied() {
        let def = definition("Strategy");
        let f = duck_facts(true);
        let cand = candidate(
            "Strategy",
            &[
                ('A', "FlyRocketPowered"),
                ('B', "FlyBehavior"),
                ('C', "DecoyDuck"),
                ('D', "Duck"),
            ],
        );
        let mut a = assess_instance(&cand, &def, &f);
        a.members[2].violations[0].status = VerificationStatus::Discarded;
        a.rescore();
        assert_eq!(a.total_pct, 100.0);
        assert!((a.initial_total_pct - 91.666_666_666).abs() < 1e-6);
        assert!((a.members[2].initial_score_pct - 200.0 / 3.0).abs() < 1e-9);
    }

    fn is_violation_row(r: &ScoreRow) -> bool {
        (r.definition_bit == 1 && r.implementation_bit == 0 && r.conforming.is_required())
            || (r.definition_bit == 0 && r.implementation_bit == 1)
    }

    fn arb_bits(len: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0u8..=1, len..=len)
    }

    fn arb_row() -> impl Strategy<Value = ScoreRow> {
        prop_oneof![Just((1u8, 1u8)), Just((1, 0)), Just((0, 1))].prop_flat_map(|(d, i)| {
            prop_oneof![Just(Conforming::Required), Just(Conforming::Optional)].prop_map(move |c| ScoreRow {
                definition_bit: d,
                implementation_bit: i,
                characteristic_label: String::new(),
                conforming: c,
            })
        })
    }

    fn arb_facts() -> impl Strategy<Value = ProjectFacts> {
        let names = ["P", "Q", "R", "S", "T"];
        proptest::collection::vec(
            (0usize..3, proptest::collection::vec((0usize..6, 0usize..5), 0..12)),
            5..=5,
        )
        .prop_map(move |shape| {
            facts(
                shape
                    .into_iter()
                    .enumerate()
                    .map(|(i, (k, edges))| {
                        let conns: Vec<(ConnectionKind, &str)> = edges
                            .into_iter()
                            .map(|(c, t)| (ConnectionKind::ALL[c], names[t]))
                            .collect();
                        class(names[i], AbstractionKind::ALL[k], &conns)
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn hamming_matches_xor_popcount((a, b) in (0usize..=12).prop_flat_map(|n| (arb_bits(n), arb_bits(n)))) {
            let xor: usize = a.iter().zip(&b).map(|(x, y)| (x ^ y) as usize).sum();
            prop_assert_eq!(hamming(&a, &b).unwrap(), xor);
            prop_assert_eq!(hamming(&a, &a).unwrap(), 0);
        }

        #[test]
        fn score_identity_and_bounds(rows in proptest::collection::vec(arb_row(), 0..12)) {
            let m = ScoreMatrix { rows: rows.clone() };
            let s = m.score_pct();
            prop_assert!((0.0..=100.0).contains(&s));
            if !rows.is_empty() && rows.iter().all(|r| r.definition_bit == 1) {
                let ones = rows.iter().filter(|r| r.implementation_bit == 1).count();
                prop_assert!((s - 100.0 * ones as f64 / rows.len() as f64).abs() < 1e-9);
            }
        }

        #[test]
        fn adding_rows_moves_the_score_the_right_way(rows in proptest::collection::vec(arb_row(), 0..12)) {
            let base = ScoreMatrix { rows: rows.clone() }.score_pct();
            let mut good = rows.clone();
            good.push(row(1, 1, String::new(), Conforming::Optional));
            let better = ScoreMatrix { rows: good }.score_pct();
            prop_assert!(better >= base - 1e-9);
            let mut bad = rows;
            bad.push(row(1, 0, String::new(), Conforming::Required));
            let worse = ScoreMatrix { rows: bad }.score_pct();
            prop_assert!(worse <= base + 1e-9);
        }

        #[test]
        fn assessment_invariants(f in arb_facts(), pattern in 0usize..7, perm in Just(["P", "Q", "R", "S", "T"]).prop_shuffle()) {
            let (rule, catalog) = builtin_catalogs().swap_remove(pattern);
            let def = PatternDefinition { rule, catalog };
            let pairs: Vec<(char, &str)> = def.rule.members.iter().zip(perm.iter()).map(|(m, c)| (m.letter, *c)).collect();
            let cand = candidate(&def.rule.pattern_name, &pairs);
            let a = assess_instance(&cand, &def, &f);
            let mut sum = 0.0;
            for m in &a.members {
                prop_assert!(m.matrix.rows.iter().all(|r| (r.definition_bit, r.implementation_bit) != (0, 0)));
                let expected_violations = m.matrix.rows.iter().filter(|r| is_violation_row(r)).count();
                prop_assert_eq!(m.violations.len(), expected_violations);
                prop_assert_eq!(m.score_pct == 100.0, m.violations.is_empty());
                let required = def.catalog.abstraction_rows(&m.role_name).any(|r| r.conforming.is_required())
                    || def.catalog.relationship_rows(&m.role_name).any(|r| r.conforming.is_required());
                if required {
                    prop_assert!(!m.matrix.is_empty());
                }
                let differing = m.matrix.rows.iter().filter(|r| r.definition_bit != r.implementation_bit).count();
                let recomputed = if m.matrix.is_empty() {
                    100.0
                } else {
                    100.0 - 100.0 * differing as f64 / m.matrix.len() as f64
                };
                prop_assert!((recomputed - m.score_pct).abs() < 1e-9);
                sum += recomputed;
            }
            prop_assert!((a.total_pct - sum / a.members.len() as f64).abs() < 1e-9);
        }
    }
}
