//! The three TTS input annotation formats.
//!
//! * baseline 1: mora tokens and `\` accent marks, trailing `.`
//! * baseline 2: baseline 1 plus `^` initial-lowering marks and `#1`..`#6`
//!   dependency distances after non-final words
//! * proposed: mora tokens and `\` inside `{ }` (PClause) and `[ ]`
//!   (PPhrase) brackets, `.` before the closing `}`
//!
//! `^` is attached to the word's first mora (the %L-bearing mora) and is
//! omitted when the first syllable is accented or heavy.

use std::fmt;

use thiserror::Error;

use crate::lexicon::{parse_moras, PWordLex};
use crate::spmh::{PNode, ProsodicTree};
use crate::tree::{dependency_distances, yield_pwords, SyntacticTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnotateError {
    #[error("unbalanced brackets in proposed annotation")]
    UnbalancedBrackets,
    #[error("stray token `{0}` in proposed annotation")]
    StrayToken(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationFormat {
    Baseline1,
    Baseline2,
    Proposed,
}

impl fmt::Display for AnnotationFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnotationFormat::Baseline1 => write!(f, "baseline1"),
            AnnotationFormat::Baseline2 => write!(f, "baseline2"),
            AnnotationFormat::Proposed => write!(f, "proposed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedString {
    pub format: AnnotationFormat,
    pub text: String,
}

fn word_tokens(word: &PWordLex, initial_lowering_mark: bool) -> Vec<String> {
    let mut tokens = Vec::with_capacity(word.moras.len());
    for (i, mora) in word.moras.iter().enumerate() {
        let mut tok = String::new();
        if initial_lowering_mark && i == 0 {
            tok.push('^');
        }
        if word.accent_nucleus == i + 1 {
            tok.push('\\');
        }
        tok.push_str(&mora.text);
        tokens.push(tok);
    }
    tokens
}

/// Initial lowering applies unless the first syllable is accented or heavy.
fn has_initial_lowering(word: &PWordLex) -> bool {
    word.accent_nucleus != 1 && !word.first_syllable_heavy()
}

/// Phonemes and accents only.
pub fn emit_baseline1(words: &[&PWordLex]) -> AnnotatedString {
    let mut tokens: Vec<String> = Vec::new();
    for w in words {
        tokens.extend(word_tokens(w, false));
    }
    tokens.push(".".into());
    AnnotatedString {
        format: AnnotationFormat::Baseline1,
        text: tokens.join(" "),
    }
}

/// Phonemes, accents, initial lowering, and dependency distance.
pub fn emit_baseline2(tree: &SyntacticTree) -> Result<AnnotatedString, TreeError> {
    let words = yield_pwords(tree);
    let deps = dependency_distances(tree)?;
    let mut tokens: Vec<String> = Vec::new();
    for (w, dep) in words.iter().zip(&deps) {
        tokens.extend(word_tokens(w, has_initial_lowering(w)));
        if let Some(d) = dep {
            tokens.push(format!("#{d}"));
        }
    }
    tokens.push(".".into());
    Ok(AnnotatedString {
        format: AnnotationFormat::Baseline2,
        text: tokens.join(" "),
    })
}

/// Phonemes, accents, and the phonological hierarchy.
pub fn emit_proposed(ptree: &ProsodicTree) -> AnnotatedString {
    let mut text = String::from("{");
    for child in &ptree.children {
        emit_pnode(child, &mut text);
    }
    text.push_str(".}");
    AnnotatedString {
        format: AnnotationFormat::Proposed,
        text,
    }
}

fn emit_pnode(node: &PNode, out: &mut String) {
    match node {
        PNode::Word(w) => {
            if out.ends_with(|c: char| c != '{' && c != '[') {
                out.push(' ');
            }
            out.push_str(&word_tokens(w, false).join(" "));
        }
        PNode::Phrase(children) => {
            out.push('[');
            for c in children {
                emit_pnode(c, out);
            }
            out.push(']');
        }
    }
}

/// Parse a proposed-format annotation back into a prosodic tree. A run of
/// mora tokens inside a bracket is one PWord; the format cannot delimit two
/// adjacent words inside the same phrase, so `emit_proposed` followed by
/// `parse_proposed` is the identity only on trees whose minimal phrases
/// hold a single word each (which is all the pipeline produces).
pub fn parse_proposed(s: &AnnotatedString) -> Result<ProsodicTree, AnnotateError> {
    parse_proposed_text(&s.text)
}

pub fn parse_proposed_text(text: &str) -> Result<ProsodicTree, AnnotateError> {
    let mut chars = text.chars().peekable();
    // stack[0] holds the PClause children; deeper entries are open phrases.
    let mut stack: Vec<Vec<PNode>> = Vec::new();
    let mut clause: Option<Vec<PNode>> = None;
    let mut pending: Vec<(String, bool)> = Vec::new(); // (mora text, accented)
    let mut seen_clause = false;

    let flush_word = |stack: &mut Vec<Vec<PNode>>,
                      pending: &mut Vec<(String, bool)>|
     -> Result<(), AnnotateError> {
        if pending.is_empty() {
            return Ok(());
        }
        let dotted: Vec<&str> = pending.iter().map(|(m, _)| m.as_str()).collect();
        let moras = parse_moras(&dotted.join("."))
            .map_err(|_| AnnotateError::StrayToken(dotted.join(" ")))?;
        let accent = pending
            .iter()
            .position(|(_, acc)| *acc)
            .map(|i| i + 1)
            .unwrap_or(0);
        let surface: String = pending.iter().map(|(m, _)| m.as_str()).collect();
        let word = PWordLex::new(&surface, moras, accent)
            .map_err(|_| AnnotateError::StrayToken(surface))?;
        let target = stack.last_mut().ok_or(AnnotateError::StrayToken(
            pending.iter().map(|(m, _)| m.clone()).collect(),
        ))?;
        target.push(PNode::Word(word));
        pending.clear();
        Ok(())
    };

    while let Some(c) = chars.next() {
        match c {
            '{' => {
                if seen_clause {
                    return Err(AnnotateError::StrayToken("{".into()));
                }
                seen_clause = true;
                stack.push(Vec::new());
            }
            '}' => {
                flush_word(&mut stack, &mut pending)?;
                if stack.len() != 1 {
                    return Err(AnnotateError::UnbalancedBrackets);
                }
                clause = stack.pop();
            }
            '[' => {
                if stack.is_empty() {
                    return Err(AnnotateError::StrayToken("[".into()));
                }
                flush_word(&mut stack, &mut pending)?;
                stack.push(Vec::new());
            }
            ']' => {
                flush_word(&mut stack, &mut pending)?;
                if stack.len() < 2 {
                    return Err(AnnotateError::UnbalancedBrackets);
                }
                let children = stack.pop().unwrap();
                stack.last_mut().unwrap().push(PNode::Phrase(children));
            }
            '.' => {}
            c if c.is_whitespace() => {}
            c => {
                let accented = c == '\\';
                let mut tok = String::new();
                if !accented {
                    tok.push(c);
                }
                while let Some(&next) = chars.peek() {
                    if next.is_whitespace() || "{}[].\\".contains(next) {
                        break;
                    }
                    tok.push(chars.next().unwrap());
                }
                if tok.is_empty() {
                    return Err(AnnotateError::StrayToken(c.to_string()));
                }
                if stack.is_empty() {
                    return Err(AnnotateError::StrayToken(tok));
                }
                pending.push((tok, accented));
            }
        }
    }
    if !stack.is_empty() {
        return Err(AnnotateError::UnbalancedBrackets);
    }
    let children = clause.ok_or(AnnotateError::UnbalancedBrackets)?;
    Ok(ProsodicTree { children })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load_fixture, FixtureId};
    use crate::lexicon::PWordLex;
    use crate::pipeline::normalize_annotation;
    use crate::spmh::project;
    use crate::wellformedness::{apply_all, ConstraintConfig};

    fn word(surface: &str, moras: &str, accent: usize) -> PWordLex {
        PWordLex::new(surface, parse_moras(moras).unwrap(), accent).unwrap()
    }

    #[test]
    fn baseline1_tree1() {
        let f = load_fixture(FixtureId::Tree1).unwrap();
        let words = yield_pwords(&f.tree);
        let s = emit_baseline1(&words);
        assert_eq!(
            normalize_annotation(&s.text),
            "wa ga shi ya sa n no ma me u ri ya ku ga me mo ga ki o mo ra i ma \\shi ta ."
        );
    }

    #[test]
    fn baseline1_accent_marks() {
        let neko0 = word("neko", "ne.ko", 0);
        assert_eq!(emit_baseline1(&[&neko0]).text, "ne ko .");
        let neko1 = word("neko", "ne.ko", 1);
        assert_eq!(emit_baseline1(&[&neko1]).text, "\\ne ko .");
    }

    #[test]
    fn baseline2_distances() {
        let f = load_fixture(FixtureId::Tree1).unwrap();
        let s = emit_baseline2(&f.tree).unwrap();
        assert_eq!(
            s.text,
            "^wa ga shi ya sa N no #1 ^ma me u ri ya ku ga #2 ^me mo ga ki o #1 ^mo ra i ma \\shi ta ."
        );
        let f2 = load_fixture(FixtureId::Tree2).unwrap();
        let s2 = emit_baseline2(&f2.tree).unwrap();
        let dist_tokens: Vec<&str> = s2
            .text
            .split_whitespace()
            .filter(|t| t.starts_with('#'))
            .collect();
        assert_eq!(dist_tokens, vec!["#3", "#1", "#1"]);
    }

    #[test]
    fn baseline2_boost4n_marks() {
        let f = load_fixture(FixtureId::Boost4N).unwrap();
        let s = emit_baseline2(&f.tree).unwrap();
        let dist_tokens: Vec<&str> = s
            .text
            .split_whitespace()
            .filter(|t| t.starts_with('#'))
            .collect();
        assert_eq!(dist_tokens, vec!["#6", "#1", "#1", "#1", "#2", "#1"]);
        // kouende starts with a heavy syllable: no ^ mark.
        assert!(s.text.contains("ko o e N de"));
        assert!(!s.text.contains("^ko"));
        assert!(s.text.starts_with("^ki no o #6"));
    }

    #[test]
    fn proposed_round_trip_on_fixtures() {
        for id in [FixtureId::Tree1, FixtureId::Tree2, FixtureId::Boost4N] {
            let f = load_fixture(id).unwrap();
            let deps = crate::tree::dependency_distances(&f.tree).unwrap();
            let p = apply_all(
                &project(&f.tree).unwrap(),
                &ConstraintConfig::default(),
                &deps,
            );
            let emitted = emit_proposed(&p);
            let parsed = parse_proposed(&emitted).unwrap();
            // Fixture surfaces spell the moraic nasal as `n`, the mora
            // alphabet as `N`; compare everything except surfaces.
            assert_eq!(emit_proposed(&parsed), emitted);
            assert_eq!(parsed.left_edge_counts(), p.left_edge_counts());
        }
    }

    #[test]
    fn parse_proposed_small() {
        let p = parse_proposed_text("{[ne ko]}").unwrap();
        assert_eq!(p.children.len(), 1);
        let words = p.words();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].moras.len(), 2);
        assert_eq!(words[0].accent_nucleus, 0);
    }

    #[test]
    fn parse_proposed_errors() {
        assert_eq!(
            parse_proposed_text("{[a}"),
            Err(AnnotateError::UnbalancedBrackets)
        );
        assert!(matches!(
            parse_proposed_text("a {[b]}"),
            Err(AnnotateError::StrayToken(_))
        ));
        assert!(matches!(
            parse_proposed_text("{[zzq]}"),
            Err(AnnotateError::StrayToken(_))
        ));
    }

    #[test]
    fn baseline1_is_projection_of_proposed() {
        let f = load_fixture(FixtureId::Tree1).unwrap();
        let words = yield_pwords(&f.tree);
        let deps = crate::tree::dependency_distances(&f.tree).unwrap();
        let p = apply_all(
            &project(&f.tree).unwrap(),
            &ConstraintConfig::default(),
            &deps,
        );
        let proposed = emit_proposed(&p).text;
        let stripped: String = proposed
            .chars()
            .map(|c| if "{}[]^".contains(c) { ' ' } else { c })
            .collect();
        let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        // Inserting phrase brackets never changes the segmental string.
        assert_eq!(norm(&stripped), norm(&emit_baseline1(&words).text));
    }

    #[test]
    fn bracket_counts_match_left_edges() {
        let f = load_fixture(FixtureId::Tree2).unwrap();
        let p = project(&f.tree).unwrap();
        let text = emit_proposed(&p).text;
        // Count '[' between consecutive words in the serialized string.
        let mut gap_counts = Vec::new();
        let mut count = 0usize;
        let mut seen_word = false;
        for c in text.chars() {
            match c {
                '[' => count += 1,
                ']' | '{' | '}' | ' ' | '.' | '\\' => {}
                _ => {
                    if seen_word && count > 0 {
                        gap_counts.push(count);
                    }
                    // consume rest of token silently; gaps only reset on '['
                    seen_word = true;
                    count = 0;
                }
            }
        }
        let expected: Vec<usize> = p
            .left_edge_counts()
            .iter()
            .map(|j| j.left_edge_count)
            .collect();
        assert_eq!(gap_counts, expected);
    }
}
