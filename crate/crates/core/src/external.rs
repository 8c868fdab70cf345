//! The interchange file through which other detection tools hand over
//! candidate instances (`PatternsDetectedByOtherTools.txt`).
//!
//! ```text
//! Decorator Espresso A Concrete Component
//! Decorator Beverage B Component
//! End
//! ```
//!
//! Each line is `<Pattern> <Class> <role text>`; a block ends with `End`.
//! The role text normally starts with the role letter. When it contains
//! several single-letter tokens naming roles of the pattern, the last one
//! binds, so `C Adapter B Product` binds role B.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::detect::{CandidateInstance, CandidateSource, ExternalEntry};
use crate::error::{Error, Result};
use crate::rules::PatternRule;

pub const DEFAULT_FILE_NAME: &str = "PatternsDetectedByOtherTools.txt";

pub fn parse_external_candidates(file: &Path, rules: &[PatternRule]) -> Result<Vec<CandidateInstance>> {
    let text = fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    parse_external_text(&text, file, rules)
}

pub fn parse_external_text(text: &str, file: &Path, rules: &[PatternRule]) -> Result<Vec<CandidateInstance>> {
    let mut out: Vec<CandidateInstance> = Vec::new();
    let mut block: Option<(usize, CandidateInstance)> = None;
    let mut next_id: BTreeMap<String, usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| Error::syntax(file, line_no, m);

        if line == "End" {
            let Some((_, mut cand)) = block.take() else {
                return Err(err("`End` closes an empty block".into()));
            };
            let id = next_id.entry(cand.pattern_name.clone()).or_insert(0);
            *id += 1;
            cand.instance_id = *id;
            out.push(cand);
            continue;
        }

        let words: Vec<&str> = line.split_whitespace().collect();
        let [pattern, class, role_words @ ..] = words.as_slice() else {
            return Err(err(format!("expected `<Pattern> <Class> <Role>`, found `{line}`")));
        };
        if role_words.is_empty() {
            return Err(err(format!("expected `<Pattern> <Class> <Role>`, found `{line}`")));
        }
        let rule = rules
            .iter()
            .find(|r| r.pattern_name == *pattern)
            .ok_or_else(|| err(format!("unknown pattern `{pattern}`")))?;
        let letter = role_letter(role_words, rule)
            .ok_or_else(|| err(format!("no role letter of `{pattern}` in `{}`", role_words.join(" "))))?;

        let (_, cand) = block.get_or_insert_with(|| {
            (
                line_no,
                CandidateInstance {
                    pattern_name: rule.pattern_name.clone(),
                    instance_id: 0,
                    bindings: BTreeMap::new(),
                    source: CandidateSource::External,
                    external_entries: Vec::new(),
                },
            )
        });
        if cand.pattern_name != *pattern {
            return Err(err(format!(
                "block of `{}` continues with `{pattern}`; missing `End`?",
                cand.pattern_name
            )));
        }
        if cand.bindings.contains_key(&letter) {
            return Err(err(format!("role {letter} bound twice in one block")));
        }
        if cand.bindings.values().any(|c| c == class) {
            return Err(err(format!("class `{class}` plays two roles in one block")));
        }
        cand.bindings.insert(letter, (*class).to_owned());
        cand.external_entries.push(ExternalEntry {
            class_name: (*class).to_owned(),
            role_text: role_words.join(" "),
        });
    }

    if let Some((start, _)) = block {
        return Err(Error::syntax(file, start, "block is not terminated by `End`"));
    }
    Ok(out)
}

fn role_letter(words: &[&str], rule: &PatternRule) -> Option<char> {
    words.iter().rev().find_map(|w| {
        let mut chars = w.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_uppercase() && rule.member(c).is_some() => Some(c),
            _ => None,
        }
    })
}

/// Writes candidates in interchange form. Candidates read from a file keep
/// their original role text; others get `<letter> <Role Name Words>`.
pub fn serialize_candidates(candidates: &[CandidateInstance], rules: &[PatternRule]) -> String {
    let mut s = String::new();
    for cand in candidates {
        if cand.external_entries.is_empty() {
            let rule = rules.iter().find(|r| r.pattern_name == cand.pattern_name);
            for (letter, class) in &cand.bindings {
                let role = rule
                    .and_then(|r| r.member(*letter))
                    .map(|m| split_camel(&m.role_name))
                    .unwrap_or_default();
                let _ = writeln!(s, "{} {class} {letter} {role}", cand.pattern_name);
            }
        } else {
            for e in &cand.external_entries {
                let _ = writeln!(s, "{} {} {}", cand.pattern_name, e.class_name, e.role_text);
            }
        }
        s.push_str("End\n");
    }
    s
}

pub(crate) fn split_camel(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if i > 0 && c.is_ascii_uppercase() {
            out.push(' ');
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::builtin_catalogs;
    use proptest::prelude::*;

    const FIG9: &str = "Decorator Espresso A Concrete Component \n\
Decorator Beverage B Component \n\
Decorator Soy C Concrete Decorator \n\
Decorator CondimentDecorator D Decorator \n\
End \n\
FactoryMethod NYStyleClamPizza A Concrete Product \n\
FactoryMethod Pizza C Adapter B Product \n\
FactoryMethod NYPizzaStore C Concrete Creator \n\
FactoryMethod PizzaStore D Creator \n\
End \n";

    fn rules() -> Vec<PatternRule> {
        builtin_catalogs().into_iter().map(|(r, _)| r).collect()
    }

    fn parse(text: &str) -> Result<Vec<CandidateInstance>> {
        parse_external_text(text, Path::new(DEFAULT_FILE_NAME), &rules())
    }

    fn normalize(text: &str) -> Vec<String> {
        text.lines()
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .filter(|l| !l.is_empty())
            .collect()
    }

    #[test]
    fn interchange_example_yields_two_candidates() {
        let got = parse(FIG9).unwrap();
        assert_eq!(got.len(), 2);
        let deco = &got[0];
        assert_eq!(deco.pattern_name, "Decorator");
        assert_eq!(deco.source, CandidateSource::External);
        let b: Vec<(char, &str)> = deco.bindings.iter().map(|(l, c)| (*l, c.as_str())).collect();
        assert_eq!(
            b,
            [
                ('A', "Espresso"),
                ('B', "Beverage"),
                ('C', "Soy"),
                ('D', "CondimentDecorator")
            ]
        );
        let fm = &got[1];
        assert_eq!(fm.pattern_name, "FactoryMethod");
        assert_eq!(fm.class_for('B'), Some("Pizza"));
        assert_eq!(fm.class_for('C'), Some("NYPizzaStore"));
        assert_eq!(fm.instance_id, 1);
    }

    #[test]
    fn interchange_example_round_trips() {
        let got = parse(FIG9).unwrap();
        let back = serialize_candidates(&got, &rules());
        assert_eq!(normalize(&back), normalize(FIG9));
        assert_eq!(parse(&back).unwrap(), got);
    }

    #[test]
    fn lone_end_is_an_empty_block() {
        let e = parse("End\n").unwrap_err();
        assert!(e.to_string().contains(":1:"), "{e}");
        assert!(e.to_string().contains("empty block"));
    }

    #[test]
    fn rejects_bad_blocks() {
        let cases = [
            ("Singleton Foo A Thing\nEnd\n", 1, "unknown pattern"),
            ("Adapter X A Adapter\nAdapter Y A Adapter\nEnd\n", 2, "bound twice"),
            ("Adapter X A Adapter\nAdapter Y B Target\n", 1, "not terminated"),
            (
                "Adapter X A Adapter\nDecorator Y B Component\nEnd\n",
                2,
                "missing `End`",
            ),
            ("Adapter X\nEnd\n", 1, "expected"),
            ("Adapter\nEnd\n", 1, "expected"),
            ("Adapter X Z Zeta\nEnd\n", 1, "no role letter"),
        ];
        for (text, line, needle) in cases {
            let e = parse(text).unwrap_err().to_string();
            assert!(e.contains(&format!(":{line}:")), "{text:?} -> {e}");
            assert!(e.contains(needle), "{text:?} -> {e}");
        }
    }

    #[test]
    fn internal_candidates_serialize_with_role_names() {
        let rules = rules();
        let cand = CandidateInstance {
            pattern_name: "Adapter".into(),
            instance_id: 1,
            bindings: [('A', "PrinterAdapter"), ('B', "Printer"), ('C', "LegacyPrinter")]
                .into_iter()
                .map(|(l, c)| (l, c.to_string()))
                .collect(),
            source: CandidateSource::Internal,
            external_entries: vec![],
        };
        let text = serialize_candidates(std::slice::from_ref(&cand), &rules);
        assert!(text.starts_with("Adapter PrinterAdapter A Adapter\n"));
        let back = parse_external_text(&text, Path::new("x"), &rules).unwrap();
        assert_eq!(back[0].bindings, cand.bindings);
    }

    fn arb_block() -> impl Strategy<Value = (usize, Vec<(usize, String)>)> {
        (0usize..7).prop_flat_map(|p| {
            let n = builtin_catalogs()[p].0.members.len();
            (
                Just(p),
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n)
                    .prop_shuffle()
                    .prop_flat_map(|idx| {
                        let len = idx.len();
                        (Just(idx), proptest::collection::btree_set("[A-Z][a-z]{1,6}", len..=len))
                    })
                    .prop_map(|(idx, names)| idx.into_iter().zip(names).collect()),
            )
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(blocks in proptest::collection::vec(arb_block(), 1..5)) {
            let rules = rules();
            let mut text = String::new();
            for (p, entries) in &blocks {
                let rule = &rules[*p];
                for (m, class) in entries {
                    let member = &rule.members[*m];
                    text.push_str(&format!("{}  {}\t{} {} \n", rule.pattern_name, class, member.letter, split_camel(&member.role_name)));
                }
                text.push_str("End\n\n");
            }
            let parsed = parse(&text).unwrap();
            prop_assert_eq!(parsed.len(), blocks.len());
            let back = serialize_candidates(&parsed, &rules);
            prop_assert_eq!(normalize(&back), normalize(&text));
            prop_assert_eq!(parse(&back).unwrap(), parsed);
        }
    }
}
