//! Syntax-prosody mapping: project a syntactic tree onto a recursive
//! prosodic hierarchy (PClause > PPhrase* > PWord).
//!
//! Every VP or PP dominating an NP becomes a PPhrase over its yield, the
//! clause (IP, or a CP governing it) becomes the PClause, and every leaf is
//! wrapped in a minimal PPhrase. Identical word spans collapse to a single
//! PPhrase.

use thiserror::Error;

use crate::lexicon::PWordLex;
use crate::tree::{SynNode, SyntacticCategory, SyntacticTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpmhError {
    #[error("root category `{0}` is neither IP nor CP")]
    NoClause(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PNode {
    Phrase(Vec<PNode>),
    Word(PWordLex),
}

impl PNode {
    pub fn is_phrase(&self) -> bool {
        matches!(self, PNode::Phrase(_))
    }

    /// A minimal PPhrase dominates words only.
    pub fn is_minimal_phrase(&self) -> bool {
        match self {
            PNode::Phrase(children) => children.iter().all(|c| matches!(c, PNode::Word(_))),
            PNode::Word(_) => false,
        }
    }

    pub fn words(&self) -> Vec<&PWordLex> {
        let mut out = Vec::new();
        self.collect_words(&mut out);
        out
    }

    fn collect_words<'a>(&'a self, out: &mut Vec<&'a PWordLex>) {
        match self {
            PNode::Word(w) => out.push(w),
            PNode::Phrase(children) => {
                for c in children {
                    c.collect_words(out);
                }
            }
        }
    }
}

/// A prosodic tree: one PClause at the root, recursive PPhrases below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProsodicTree {
    pub children: Vec<PNode>,
}

/// Gap between PWord `index` and `index + 1`, with the number of PPhrase
/// left brackets opening there (PClause brackets excluded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JuncturePosition {
    pub index: usize,
    pub left_edge_count: usize,
}

impl ProsodicTree {
    pub fn words(&self) -> Vec<&PWordLex> {
        let mut out = Vec::new();
        for c in &self.children {
            c.collect_words(&mut out);
        }
        out
    }

    /// Number of PPhrase left edges opening at each word position
    /// (position i = the left edge of word i). Position 0 counts the
    /// utterance-initial brackets.
    pub fn phrase_starts(&self) -> Vec<usize> {
        let n = self.words().len();
        let mut starts = vec![0usize; n];
        let mut next = 0usize;
        for c in &self.children {
            count_starts(c, &mut next, &mut starts);
        }
        starts
    }

    /// One entry per gap between consecutive words.
    pub fn left_edge_counts(&self) -> Vec<JuncturePosition> {
        self.phrase_starts()
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &count)| JuncturePosition {
                index: i,
                left_edge_count: count,
            })
            .collect()
    }

    /// Minimal PPhrases in yield order: (index of first word, words).
    pub fn minimal_phrases(&self) -> Vec<(usize, Vec<&PWordLex>)> {
        let mut out = Vec::new();
        let mut next = 0usize;
        for c in &self.children {
            collect_minimal(c, &mut next, &mut out);
        }
        out
    }
}

fn count_starts(node: &PNode, next: &mut usize, starts: &mut [usize]) {
    match node {
        PNode::Word(_) => *next += 1,
        PNode::Phrase(children) => {
            starts[*next] += 1;
            for c in children {
                count_starts(c, next, starts);
            }
        }
    }
}

fn collect_minimal<'a>(
    node: &'a PNode,
    next: &mut usize,
    out: &mut Vec<(usize, Vec<&'a PWordLex>)>,
) {
    match node {
        PNode::Word(w) => {
            // A bare word outside any minimal phrase forms its own group.
            out.push((*next, vec![w]));
            *next += 1;
        }
        PNode::Phrase(children) => {
            if node.is_minimal_phrase() {
                let words = node.words();
                let start = *next;
                *next += words.len();
                out.push((start, words));
            } else {
                for c in children {
                    collect_minimal(c, next, out);
                }
            }
        }
    }
}

/// Project the syntactic tree onto the prosodic hierarchy.
pub fn project(tree: &SyntacticTree) -> Result<ProsodicTree, SpmhError> {
    let root_cat = match &tree.root {
        SynNode::Internal { category, .. } => *category,
        SynNode::Leaf(w) => return Err(SpmhError::NoClause(w.surface.clone())),
    };
    if !root_cat.is_clause() {
        return Err(SpmhError::NoClause(root_cat.tag().to_string()));
    }

    let mut leaves: Vec<PWordLex> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    collect_spans(&tree.root, &mut leaves, &mut spans);
    let n = leaves.len();
    for i in 0..n {
        spans.push((i, i));
    }
    spans.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    spans.dedup();

    // Spans are laminar (all come from one constituency tree), so a stack
    // assembles the nesting directly.
    let mut root_children: Vec<PNode> = Vec::new();
    let mut stack: Vec<(usize, usize, Vec<PNode>)> = Vec::new();
    let attach = |stack: &mut Vec<(usize, usize, Vec<PNode>)>,
                  root_children: &mut Vec<PNode>,
                  node: PNode| {
        match stack.last_mut() {
            Some((_, _, children)) => children.push(node),
            None => root_children.push(node),
        }
    };
    for (s, e) in spans {
        while let Some(&(ts, te, _)) = stack.last() {
            if ts <= s && e <= te {
                break;
            }
            let (_, _, children) = stack.pop().unwrap();
            attach(&mut stack, &mut root_children, PNode::Phrase(children));
        }
        let mut children = Vec::new();
        if s == e {
            children.push(PNode::Word(leaves[s].clone()));
        }
        stack.push((s, e, children));
    }
    while let Some((_, _, children)) = stack.pop() {
        attach(&mut stack, &mut root_children, PNode::Phrase(children));
    }
    Ok(ProsodicTree {
        children: root_children,
    })
}

/// Record the word span of every VP/PP node dominating an NP, and collect
/// leaves in yield order. Returns (first, last, dominates_np) for the node.
fn collect_spans(
    node: &SynNode,
    leaves: &mut Vec<PWordLex>,
    spans: &mut Vec<(usize, usize)>,
) -> (usize, usize, bool) {
    match node {
        SynNode::Leaf(w) => {
            let i = leaves.len();
            leaves.push(w.clone());
            (i, i, false)
        }
        SynNode::Internal { category, children } => {
            let mut first = usize::MAX;
            let mut last = 0;
            let mut dominates_np = false;
            for c in children {
                let (s, e, np_below) = collect_spans(c, leaves, spans);
                first = first.min(s);
                last = last.max(e);
                dominates_np |= np_below;
                if let SynNode::Internal {
                    category: SyntacticCategory::NP,
                    ..
                } = c
                {
                    dominates_np = true;
                }
            }
            let maps =
                matches!(category, SyntacticCategory::VP | SyntacticCategory::PP) && dominates_np;
            if maps {
                spans.push((first, last));
            }
            (first, last, dominates_np)
        }
    }
}
