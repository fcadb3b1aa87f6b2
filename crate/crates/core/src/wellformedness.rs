//! Prosodic well-formedness rewriting: culminativity / anti-lapse splitting
//! and rhythmic-boost re-phrasing.
//!
//! Both passes only add PPhrase edges; left edge counts never decrease at
//! any gap.

use serde::Deserialize;

use crate::lexicon::PWordLex;
use crate::spmh::{PNode, ProsodicTree};
use crate::tree::DependencyDistance;

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct ConstraintConfig {
    pub enable_boost_rephrasing: bool,
    /// Minimum length of an accented run that triggers pairwise regrouping.
    pub boost_min_run: usize,
}

impl Default for ConstraintConfig {
    fn default() -> Self {
        ConstraintConfig {
            enable_boost_rephrasing: true,
            boost_min_run: 4,
        }
    }
}

/// Split every minimal PPhrase after each non-final accented word, so the
/// right edge of a PPhrase always comes after an accented word. [AA] becomes
/// [A][A], [AU] becomes [A][U]; [UA] and [UU] stay single phrases.
pub fn enforce_culminativity_and_antilapse(ptree: &ProsodicTree) -> ProsodicTree {
    ProsodicTree {
        children: split_children(&ptree.children),
    }
}

fn split_children(children: &[PNode]) -> Vec<PNode> {
    let mut out = Vec::new();
    for child in children {
        match child {
            PNode::Word(w) => out.push(PNode::Word(w.clone())),
            PNode::Phrase(_) if child.is_minimal_phrase() => {
                out.extend(split_minimal(child));
            }
            PNode::Phrase(inner) => out.push(PNode::Phrase(split_children(inner))),
        }
    }
    out
}

fn split_minimal(phrase: &PNode) -> Vec<PNode> {
    let words: Vec<PWordLex> = phrase.words().into_iter().cloned().collect();
    let mut parts: Vec<Vec<PNode>> = vec![Vec::new()];
    let last = words.len() - 1;
    for (i, w) in words.into_iter().enumerate() {
        let accented = w.is_accented();
        parts.last_mut().unwrap().push(PNode::Word(w));
        if accented && i != last {
            parts.push(Vec::new());
        }
    }
    parts.into_iter().map(PNode::Phrase).collect()
}

/// Regroup runs of >= `boost_min_run` consecutive accented minimal PPhrases
/// pairwise left-to-right into intermediate PPhrases of two, if the run's
/// words form a left-branching dependency chain (distance 1 everywhere
/// except possibly the last member). A trailing singleton of an odd run
/// stays an ungrouped sibling.
pub fn rephrase_boost(
    ptree: &ProsodicTree,
    cfg: &ConstraintConfig,
    deps: &[DependencyDistance],
) -> ProsodicTree {
    if !cfg.enable_boost_rephrasing {
        return ptree.clone();
    }
    let mut next = 0usize;
    ProsodicTree {
        children: boost_children(&ptree.children, cfg, deps, &mut next),
    }
}

fn boost_children(
    children: &[PNode],
    cfg: &ConstraintConfig,
    deps: &[DependencyDistance],
    next: &mut usize,
) -> Vec<PNode> {
    // Compute each child's first word index up front, then scan for runs.
    let mut first_word = Vec::with_capacity(children.len());
    let mut rebuilt = Vec::with_capacity(children.len());
    for child in children {
        first_word.push(*next);
        match child {
            PNode::Word(w) => {
                rebuilt.push(PNode::Word(w.clone()));
                *next += 1;
            }
            PNode::Phrase(inner) if !child.is_minimal_phrase() => {
                rebuilt.push(PNode::Phrase(boost_children(inner, cfg, deps, next)));
            }
            PNode::Phrase(_) => {
                *next += child.words().len();
                rebuilt.push(child.clone());
            }
        }
    }

    let is_run_member = |node: &PNode| -> bool {
        node.is_minimal_phrase() && node.words().iter().any(|w| w.is_accented())
    };
    let left_branching = |idx: &[usize]| -> bool {
        idx.iter()
            .take(idx.len().saturating_sub(1))
            .all(|&i| deps.get(i).copied().flatten() == Some(1))
    };

    let mut out = Vec::with_capacity(rebuilt.len());
    let mut i = 0;
    while i < rebuilt.len() {
        if !is_run_member(&rebuilt[i]) {
            out.push(rebuilt[i].clone());
            i += 1;
            continue;
        }
        let mut j = i;
        while j < rebuilt.len() && is_run_member(&rebuilt[j]) {
            j += 1;
        }
        let run = &rebuilt[i..j];
        // Dependency distance of each member's last word; the chain must be
        // distance 1 except possibly the last member.
        let member_last_words: Vec<usize> = (i..j)
            .map(|k| first_word[k] + rebuilt[k].words().len() - 1)
            .collect();
        if run.len() >= cfg.boost_min_run && left_branching(&member_last_words) {
            let chunks = run.chunks(2).peekable();
            for chunk in chunks {
                if chunk.len() == 2 {
                    out.push(PNode::Phrase(chunk.to_vec()));
                } else {
                    out.push(chunk[0].clone());
                }
            }
        } else {
            out.extend(run.iter().cloned());
        }
        i = j;
    }
    out
}

/// Culminativity/anti-lapse splitting followed by boost re-phrasing.
/// Idempotent.
pub fn apply_all(
    ptree: &ProsodicTree,
    cfg: &ConstraintConfig,
    deps: &[DependencyDistance],
) -> ProsodicTree {
    let split = enforce_culminativity_and_antilapse(ptree);
    rephrase_boost(&split, cfg, deps)
}

/// One culminativity/right-edge check result per minimal PPhrase.
#[derive(Debug, Clone)]
pub struct PhraseStatus {
    pub first_word: usize,
    pub surfaces: Vec<String>,
    pub accented_count: usize,
    /// True iff at most one accented word and any accented word is final.
    pub ok: bool,
}

pub fn check_constraints(ptree: &ProsodicTree) -> Vec<PhraseStatus> {
    ptree
        .minimal_phrases()
        .iter()
        .map(|(start, words)| {
            let accented: Vec<usize> = words
                .iter()
                .enumerate()
                .filter(|(_, w)| w.is_accented())
                .map(|(i, _)| i)
                .collect();
            let ok = accented.len() <= 1 && accented.iter().all(|&i| i == words.len() - 1);
            PhraseStatus {
                first_word: *start,
                surfaces: words.iter().map(|w| w.surface.clone()).collect(),
                accented_count: accented.len(),
                ok,
            }
        })
        .collect()
}
