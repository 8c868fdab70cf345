//! Requirement-text verification of violations.
//!
//! A small rule-based extractor turns SRS sentences into
//! subject/relation/object triples. A violation between two classes is
//! approved when the two class names appear together in some triple, and
//! discarded otherwise.
//!
//! The extractor works clause by clause. A sentence is split on commas and
//! coordinating conjunctions; a clause without its own subject inherits the
//! previous one, so "Employee opens the panel and solves problems" yields
//! two triples with subject `employee`.

use crate::score::{InstanceAssessment, VerificationStatus, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTriple {
    /// Subject words lowercased and joined, e.g. `decoyduck`.
    pub subject: String,
    /// Verb, with a trailing preposition attached as `fly_with`.
    pub relation: String,
    /// Object words lowercased and joined, e.g. `controlpanel`.
    pub object: String,
    pub sentence_index: usize,
    pub subject_terms: Vec<String>,
    pub object_terms: Vec<String>,
}

impl RelationTriple {
    fn subject_is(&self, name: &str) -> bool {
        self.subject == name || self.subject_terms.iter().any(|t| t == name)
    }

    fn object_is(&self, name: &str) -> bool {
        self.object == name || self.object_terms.iter().any(|t| t == name)
    }

    /// True when `a` and `b` are this triple's subject and object, in either order.
    pub fn links(&self, a: &str, b: &str) -> bool {
        (self.subject_is(a) && self.object_is(b)) || (self.subject_is(b) && self.object_is(a))
    }
}

const CONJUNCTIONS: &[&str] = &["and", "or", "but", "nor", "then"];
const MODALS: &[&str] = &[
    "should", "shall", "must", "can", "could", "will", "would", "may", "might", "needs", "need",
];
const DETERMINERS: &[&str] = &[
    "a", "an", "the", "all", "any", "each", "every", "some", "this", "that", "these", "those", "its", "their", "his",
    "her", "our", "your", "my",
];
const FILLERS: &[&str] = &["also", "only", "just", "always", "then", "to", "be", "able"];
const PREPOSITIONS: &[&str] = &[
    "with", "to", "from", "in", "on", "by", "for", "of", "into", "using", "via", "at", "through", "about",
];

#[derive(Debug, Clone)]
struct Word {
    lower: String,
    capitalized: bool,
    determiner_before: bool,
}

/// Extracts triples from every sentence of `srs_text`.
pub fn extract_triples(srs_text: &str) -> Vec<RelationTriple> {
    let mut out = Vec::new();
    for (index, sentence) in sentences(srs_text).into_iter().enumerate() {
        extract_sentence(&sentence, index, &mut out);
    }
    out
}

fn sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for paragraph in text.split("\n\n") {
        let mut current = String::new();
        for c in paragraph.chars() {
            if matches!(c, '.' | '!' | '?' | ';') {
                if !current.trim().is_empty() {
                    out.push(std::mem::take(&mut current));
                }
                current.clear();
            } else {
                current.push(c);
            }
        }
        if !current.trim().is_empty() {
            out.push(current);
        }
    }
    out
}

/// Splits a sentence into clauses of content words.
fn clauses(sentence: &str) -> Vec<Vec<Word>> {
    let mut clauses = vec![Vec::new()];
    let mut determiner_pending = false;
    let spaced = sentence.replace(',', " , ");
    for raw in spaced.split_whitespace() {
        if raw == "," {
            clauses.push(Vec::new());
            determiner_pending = false;
            continue;
        }
        let word: String = raw.chars().filter(|c| c.is_alphanumeric() || *c == '_').collect();
        if word.is_empty() {
            continue;
        }
        let lower = word.to_lowercase();
        if CONJUNCTIONS.contains(&lower.as_str()) {
            clauses.push(Vec::new());
            determiner_pending = false;
            continue;
        }
        if DETERMINERS.contains(&lower.as_str()) {
            determiner_pending = true;
            continue;
        }
        let clause = clauses.last_mut().expect("at least one clause");
        // a determiner at the very start marks a noun phrase
        let determiner_before = determiner_pending && clause.is_empty();
        determiner_pending = false;
        clause.push(Word {
            capitalized: word.starts_with(|c: char| c.is_uppercase()),
            lower,
            determiner_before,
        });
    }
    clauses.retain(|c| !c.is_empty());
    clauses
}

fn extract_sentence(sentence: &str, index: usize, out: &mut Vec<RelationTriple>) {
    let mut subject: Option<Vec<String>> = None;
    let mut verb: Option<String> = None;

    for clause in clauses(sentence) {
        let words: Vec<&str> = clause.iter().map(|w| w.lower.as_str()).collect();
        let modal = words.iter().position(|w| MODALS.contains(w));

        let (new_subject, verb_at) = match (modal, &subject) {
            (Some(0), _) => (None, 1),
            (Some(m), _) => (Some(&words[..m]), m + 1),
            (None, None) => {
                let v = (1..words.len()).find(|&i| words[i].ends_with('s')).unwrap_or(1);
                (Some(&words[..v.min(words.len())]), v)
            }
            (None, Some(_)) => {
                let first = &clause[0];
                let noun_phrase = clause.len() == 1 || first.capitalized || first.determiner_before;
                if noun_phrase {
                    // conjoined object of the previous verb
                    if let (Some(s), Some(v)) = (&subject, &verb) {
                        push_triple(out, s, v.clone(), &words, index);
                    }
                    continue;
                }
                (None, 0)
            }
        };
        if let Some(s) = new_subject {
            let s: Vec<String> = s
                .iter()
                .filter(|w| !FILLERS.contains(w))
                .map(|w| w.to_string())
                .collect();
            if !s.is_empty() {
                subject = Some(s);
            }
        }
        let rest: Vec<&str> = words
            .get(verb_at..)
            .unwrap_or_default()
            .iter()
            .copied()
            .filter(|w| !FILLERS.contains(w) || PREPOSITIONS.contains(w))
            .collect();
        let Some((&v, rest)) = rest.split_first() else {
            continue;
        };
        let (relation, object) = match rest.split_first() {
            Some((&p, obj)) if PREPOSITIONS.contains(&p) => (format!("{v}_{p}"), obj),
            _ => (v.to_owned(), rest),
        };
        verb = Some(relation.clone());
        if let Some(s) = &subject {
            push_triple(out, s, relation, object, index);
        }
    }
}

fn push_triple(out: &mut Vec<RelationTriple>, subject: &[String], relation: String, object: &[&str], index: usize) {
    let object: Vec<&str> = object.iter().copied().filter(|w| !FILLERS.contains(w)).collect();
    if object.is_empty() || subject.is_empty() {
        return;
    }
    out.push(RelationTriple {
        subject: subject.concat(),
        relation,
        object: object.concat(),
        sentence_index: index,
        subject_terms: subject.to_vec(),
        object_terms: object.iter().map(|w| w.to_string()).collect(),
    });
}

/// Approves or discards every violation against `triples` and rescores.
/// Statuses are recomputed from scratch, so repeated runs agree.
pub fn verify_violations(assessments: &mut [InstanceAssessment], triples: &[RelationTriple]) {
    for a in assessments.iter_mut() {
        for m in &mut a.members {
            for v in &mut m.violations {
                if v.kind == ViolationKind::AbstractionMismatch {
                    v.status = VerificationStatus::Approved;
                    continue;
                }
                let from = v.from_class.to_lowercase();
                let to = v.to_class.as_deref().unwrap_or_default().to_lowercase();
                v.status = if triples.iter().any(|t| t.links(&from, &to)) {
                    VerificationStatus::Approved
                } else {
                    VerificationStatus::Discarded
                };
            }
        }
        a.rescore();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{CandidateInstance, CandidateSource};
    use crate::facts::{ConnectionKind, ProjectFacts};
    use crate::rules::Conforming;
    use crate::score::{Expectation, MemberAssessment, ScoreMatrix, ScoreRow, ViolationRecord};
    use proptest::prelude::*;

    const DECOY: &str = "The DecoyDuck should have a MuteQuack behavior, and fly with FlyRocketPowered";
    const EMPLOYEE: &str = "Employee opens the control panel, view all complaints and solve client problems";

    fn simple(t: &RelationTriple) -> (&str, &str, &str) {
        (&t.subject, &t.relation, &t.object)
    }

    #[test]
    fn employee_sentence() {
        let triples = extract_triples(EMPLOYEE);
        let got: Vec<_> = triples.iter().map(simple).collect();
        assert_eq!(
            got,
            [
                ("employee", "opens", "controlpanel"),
                ("employee", "view", "complaints"),
                ("employee", "solve", "clientproblems"),
            ]
        );
        assert!(triples[0].object_terms.contains(&"panel".to_string()));
        assert!(triples[2].object_terms.contains(&"problems".to_string()));
    }

    #[test]
    fn decoy_duck_sentence() {
        let triples = extract_triples(DECOY);
        let got: Vec<_> = triples.iter().map(simple).collect();
        assert_eq!(
            got,
            [
                ("decoyduck", "have", "mutequackbehavior"),
                ("decoyduck", "fly_with", "flyrocketpowered"),
            ]
        );
        assert!(triples[0].links("mutequack", "decoyduck"));
        assert!(triples[1].links("decoyduck", "flyrocketpowered"));
        assert!(!triples.iter().any(|t| t.links("decoyduck", "squeak")));
    }

    #[test]
    fn noun_phrase_conjunct_attaches_to_previous_verb() {
        let triples = extract_triples("The Duck should have a FlyBehavior and a QuackBehavior.");
        let got: Vec<_> = triples.iter().map(simple).collect();
        assert_eq!(
            got,
            [("duck", "have", "flybehavior"), ("duck", "have", "quackbehavior")]
        );
    }

    #[test]
    fn sentences_are_indexed() {
        let triples = extract_triples(&format!("{DECOY}.\n\n{EMPLOYEE}."));
        assert_eq!(triples.first().unwrap().sentence_index, 0);
        assert_eq!(triples.last().unwrap().sentence_index, 1);
    }

    #[test]
    fn empty_text_has_no_triples() {
        assert!(extract_triples("").is_empty());
        assert!(extract_triples("  \n\n . ; ").is_empty());
    }

    fn violation(from: &str, to: &str, row: usize) -> ViolationRecord {
        ViolationRecord {
            kind: ViolationKind::MissingRequiredConnection,
            from_class: from.into(),
            to_class: Some(to.into()),
            expected: Expectation::Connection {
                kind: ConnectionKind::Creates,
                target: to.into(),
            },
            recommendation: String::new(),
            status: VerificationStatus::Pending,
            row,
        }
    }

    fn decoy_assessment(target: &str) -> InstanceAssessment {
        let rows = vec![
            ScoreRow {
                definition_bit: 1,
                implementation_bit: 1,
                characteristic_label: "abstraction".into(),
                conforming: Conforming::Optional,
            },
            ScoreRow {
                definition_bit: 1,
                implementation_bit: 1,
                characteristic_label: "inherits".into(),
                conforming: Conforming::Required,
            },
            ScoreRow {
                definition_bit: 1,
                implementation_bit: 0,
                characteristic_label: "creates".into(),
                conforming: Conforming::Required,
            },
        ];
        let member = MemberAssessment {
            role_letter: 'C',
            role_name: "ConcreteContext".into(),
            class_name: "DecoyDuck".into(),
            matrix: ScoreMatrix { rows },
            score_pct: 200.0 / 3.0,
            initial_score_pct: 200.0 / 3.0,
            violations: vec![violation("DecoyDuck", target, 2)],
        };
        InstanceAssessment {
            project: ProjectFacts::default().project_name,
            candidate: CandidateInstance {
                pattern_name: "Strategy".into(),
                instance_id: 1,
                bindings: Default::default(),
                source: CandidateSource::Internal,
                external_entries: vec![],
            },
            members: vec![member],
            total_pct: 200.0 / 3.0,
            initial_total_pct: 200.0 / 3.0,
            warnings: vec![],
        }
    }

    #[test]
    fn decoy_violations_are_approved_or_discarded() {
        let triples = extract_triples(DECOY);
        let mut all: Vec<_> = ["FlyRocketPowered", "Squeak", "FakeQuack", "Quack", "FlyWithWings"]
            .into_iter()
            .map(decoy_assessment)
            .collect();
        verify_violations(&mut all, &triples);
        let approved = &all[0].members[0].violations[0];
        assert_eq!(approved.status, VerificationStatus::Approved);
        assert_eq!(
            approved.note().as_deref(),
            Some("This violation has to be solved according to the relationship between ( decoyduck ) and ( flyrocketpowered ) in SRS document.")
        );
        assert!((all[0].total_pct - 200.0 / 3.0).abs() < 1e-9);
        for a in &all[1..] {
            assert_eq!(a.members[0].violations[0].status, VerificationStatus::Discarded);
            assert_eq!(a.total_pct, 100.0);
            assert!((a.initial_total_pct - 200.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn no_triples_discards_every_pair_violation() {
        let mut all = vec![decoy_assessment("FlyRocketPowered")];
        let mut abstraction = violation("DecoyDuck", "x", 0);
        abstraction.kind = ViolationKind::AbstractionMismatch;
        abstraction.to_class = None;
        all[0].members[0].violations.push(abstraction);
        verify_violations(&mut all, &[]);
        let statuses: Vec<_> = all[0].members[0].violations.iter().map(|v| v.status).collect();
        assert_eq!(statuses, [VerificationStatus::Discarded, VerificationStatus::Approved]);
    }

    fn arb_triple() -> impl Strategy<Value = RelationTriple> {
        let names = prop_oneof![
            Just("decoyduck"),
            Just("flyrocketpowered"),
            Just("squeak"),
            Just("quack"),
            Just("mutequack")
        ];
        (names.clone(), names).prop_map(|(s, o)| RelationTriple {
            subject: s.into(),
            relation: "has".into(),
            object: o.into(),
            sentence_index: 0,
            subject_terms: vec![s.into()],
            object_terms: vec![o.into()],
        })
    }

    proptest! {
        #[test]
        fn verification_is_idempotent_and_monotone(
            base in proptest::collection::vec(arb_triple(), 0..6),
            extra in proptest::collection::vec(arb_triple(), 0..6),
        ) {
            let targets = ["FlyRocketPowered", "Squeak", "Quack", "MuteQuack"];
            let fresh: Vec<_> = targets.into_iter().map(decoy_assessment).collect();

            let mut once = fresh.clone();
            verify_violations(&mut once, &base);
            let mut twice = once.clone();
            verify_violations(&mut twice, &base);
            prop_assert_eq!(&once, &twice);

            let mut more = fresh;
            let all: Vec<_> = base.iter().chain(&extra).cloned().collect();
            verify_violations(&mut more, &all);
            for (a, b) in once.iter().zip(&more) {
                let before = a.members[0].violations[0].status;
                let after = b.members[0].violations[0].status;
                prop_assert!(!(before == VerificationStatus::Approved && after == VerificationStatus::Discarded));
                prop_assert!(b.members[0].score_pct <= a.members[0].score_pct + 1e-9);
            }
        }
    }
}
