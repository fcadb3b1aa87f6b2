//! Bracketed syntactic-tree input format and dependency distances.
//!
//! Grammar (UTF-8, whitespace-insensitive, `;` comments to end of line):
//!
//! ```text
//! tree := '(' TAG child+ ')'
//! child := tree | leaf
//! leaf := surface '|' mora ('.' mora)* '|' accent
//! ```

use std::fmt;

use thiserror::Error;

use crate::lexicon::{parse_moras, LexiconError, PWordLex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("unbalanced brackets at line {0}")]
    UnbalancedBrackets(usize),
    #[error("unknown category `{tag}` at line {line}")]
    UnknownCategory { tag: String, line: usize },
    #[error("malformed leaf `{token}` at line {line}: {reason}")]
    MalformedLeaf {
        token: String,
        line: usize,
        reason: String,
    },
    #[error("empty tree at line {0}")]
    EmptyTree(usize),
    #[error("no head resolvable for word {0}")]
    HeadResolutionFailure(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntacticCategory {
    IP,
    CP,
    NP,
    PP,
    VP,
    ADVP,
    N,
    P,
    V,
    ADV,
    PU,
}

impl SyntacticCategory {
    pub fn from_tag(tag: &str) -> Option<Self> {
        use SyntacticCategory::*;
        Some(match tag {
            "IP" => IP,
            "CP" => CP,
            "NP" => NP,
            "PP" => PP,
            "VP" => VP,
            "ADVP" => ADVP,
            "N" => N,
            "P" => P,
            "V" => V,
            "ADV" => ADV,
            "PU" => PU,
            _ => return None,
        })
    }

    pub fn tag(&self) -> &'static str {
        use SyntacticCategory::*;
        match self {
            IP => "IP",
            CP => "CP",
            NP => "NP",
            PP => "PP",
            VP => "VP",
            ADVP => "ADVP",
            N => "N",
            P => "P",
            V => "V",
            ADV => "ADV",
            PU => "PU",
        }
    }

    pub fn is_clause(&self) -> bool {
        matches!(self, SyntacticCategory::IP | SyntacticCategory::CP)
    }
}

impl fmt::Display for SyntacticCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynNode {
    Internal {
        category: SyntacticCategory,
        children: Vec<SynNode>,
    },
    Leaf(PWordLex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticTree {
    pub root: SynNode,
}

/// Distance in word units from a dependent to its later head, clamped to 6.
/// `None` marks the sentence-final head.
pub type DependencyDistance = Option<u8>;

const MAX_DEPENDENCY_DISTANCE: usize = 6;

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Symbol(String),
}

fn tokenize(text: &str) -> Vec<(Token, usize)> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut sym = String::new();
    let mut sym_line = 1;
    let mut in_comment = false;
    let flush = |sym: &mut String, tokens: &mut Vec<(Token, usize)>, line: usize| {
        if !sym.is_empty() {
            tokens.push((Token::Symbol(std::mem::take(sym)), line));
        }
    };
    for c in text.chars() {
        if c == '\n' {
            flush(&mut sym, &mut tokens, sym_line);
            line += 1;
            in_comment = false;
            continue;
        }
        if in_comment {
            continue;
        }
        match c {
            ';' => {
                flush(&mut sym, &mut tokens, sym_line);
                in_comment = true;
            }
            '(' => {
                flush(&mut sym, &mut tokens, sym_line);
                tokens.push((Token::Open, line));
            }
            ')' => {
                flush(&mut sym, &mut tokens, sym_line);
                tokens.push((Token::Close, line));
            }
            c if c.is_whitespace() => flush(&mut sym, &mut tokens, sym_line),
            c => {
                if sym.is_empty() {
                    sym_line = line;
                }
                sym.push(c);
            }
        }
    }
    flush(&mut sym, &mut tokens, sym_line);
    tokens
}

fn parse_leaf(token: &str, line: usize) -> Result<PWordLex, TreeError> {
    let malformed = |reason: String| TreeError::MalformedLeaf {
        token: token.to_string(),
        line,
        reason,
    };
    let parts: Vec<&str> = token.split('|').collect();
    if parts.len() != 3 {
        return Err(malformed("expected surface|moras|accent".into()));
    }
    let surface = parts[0];
    if surface.is_empty() {
        return Err(malformed("empty surface".into()));
    }
    let moras = parse_moras(parts[1]).map_err(|e: LexiconError| malformed(e.to_string()))?;
    let accent: usize = parts[2]
        .parse()
        .map_err(|_| malformed(format!("bad accent `{}`", parts[2])))?;
    PWordLex::new(surface, moras, accent).map_err(|e| malformed(e.to_string()))
}

/// Parse a single bracketed tree from `text`.
pub fn parse_tree(text: &str) -> Result<SyntacticTree, TreeError> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(TreeError::EmptyTree(1));
    }
    let mut pos = 0;
    let root = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        let line = tokens[pos].1;
        return Err(TreeError::UnbalancedBrackets(line));
    }
    Ok(SyntacticTree { root })
}

fn parse_node(tokens: &[(Token, usize)], pos: &mut usize) -> Result<SynNode, TreeError> {
    let (tok, line) = tokens
        .get(*pos)
        .ok_or(TreeError::UnbalancedBrackets(last_line(tokens)))?;
    match tok {
        Token::Open => {
            *pos += 1;
            let (tag_tok, tag_line) = tokens
                .get(*pos)
                .ok_or(TreeError::UnbalancedBrackets(*line))?;
            let Token::Symbol(tag) = tag_tok else {
                return Err(TreeError::EmptyTree(*tag_line));
            };
            let category =
                SyntacticCategory::from_tag(tag).ok_or_else(|| TreeError::UnknownCategory {
                    tag: tag.clone(),
                    line: *tag_line,
                })?;
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(TreeError::UnbalancedBrackets(last_line(tokens))),
                    Some((Token::Close, close_line)) => {
                        if children.is_empty() {
                            return Err(TreeError::EmptyTree(*close_line));
                        }
                        *pos += 1;
                        return Ok(SynNode::Internal { category, children });
                    }
                    Some(_) => children.push(parse_node(tokens, pos)?),
                }
            }
        }
        Token::Close => Err(TreeError::UnbalancedBrackets(*line)),
        Token::Symbol(sym) => {
            *pos += 1;
            Ok(SynNode::Leaf(parse_leaf(sym, *line)?))
        }
    }
}

fn last_line(tokens: &[(Token, usize)]) -> usize {
    tokens.last().map(|(_, l)| *l).unwrap_or(1)
}

// ---------------------------------------------------------------------------
// Serialization and traversal

/// Serialize back to the input grammar; inverse of [`parse_tree`].
pub fn serialize(tree: &SyntacticTree) -> String {
    let mut out = String::new();
    serialize_node(&tree.root, &mut out);
    out
}

fn serialize_node(node: &SynNode, out: &mut String) {
    match node {
        SynNode::Internal { category, children } => {
            out.push('(');
            out.push_str(category.tag());
            for child in children {
                out.push(' ');
                serialize_node(child, out);
            }
            out.push(')');
        }
        SynNode::Leaf(w) => {
            out.push_str(&w.surface);
            out.push('|');
            out.push_str(&w.mora_string());
            out.push('|');
            out.push_str(&w.accent_nucleus.to_string());
        }
    }
}

/// Left-to-right leaf sequence.
pub fn yield_pwords(tree: &SyntacticTree) -> Vec<&PWordLex> {
    let mut words = Vec::new();
    collect_leaves(&tree.root, &mut words);
    words
}

fn collect_leaves<'a>(node: &'a SynNode, out: &mut Vec<&'a PWordLex>) {
    match node {
        SynNode::Leaf(w) => out.push(w),
        SynNode::Internal { children, .. } => {
            for c in children {
                collect_leaves(c, out);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dependency distances

/// One distance per leaf, in yield order. Heads are resolved by head
/// percolation with the rightmost child as head child (Japanese is
/// head-final): a leaf's head is the lexical head of its lowest ancestor
/// whose lexical head is a different leaf. The sentence head gets `None`.
pub fn dependency_distances(tree: &SyntacticTree) -> Result<Vec<DependencyDistance>, TreeError> {
    let n = yield_pwords(tree).len();
    let mut distances: Vec<DependencyDistance> = vec![None; n];
    let mut resolved: Vec<bool> = vec![false; n];
    let mut next_index = 0;
    resolve(&tree.root, &mut next_index, &mut distances, &mut resolved);
    let root_head = node_head(&tree.root, &mut 0);
    resolved[root_head] = true; // sentence head keeps None
    for (i, ok) in resolved.iter().enumerate() {
        if !ok {
            return Err(TreeError::HeadResolutionFailure(i));
        }
    }
    Ok(distances)
}

/// Leaf index of the lexical head of `node`; advances `next_index` past the
/// node's yield.
fn node_head(node: &SynNode, next_index: &mut usize) -> usize {
    match node {
        SynNode::Leaf(_) => {
            let i = *next_index;
            *next_index += 1;
            i
        }
        SynNode::Internal { children, .. } => {
            let mut head = 0;
            for c in children {
                head = node_head(c, next_index);
            }
            head
        }
    }
}

fn resolve(
    node: &SynNode,
    next_index: &mut usize,
    distances: &mut Vec<DependencyDistance>,
    resolved: &mut Vec<bool>,
) -> usize {
    match node {
        SynNode::Leaf(_) => {
            let i = *next_index;
            *next_index += 1;
            i
        }
        SynNode::Internal { children, .. } => {
            let mut child_heads = Vec::with_capacity(children.len());
            for c in children {
                child_heads.push(resolve(c, next_index, distances, resolved));
            }
            let head = *child_heads.last().expect("non-empty constituent");
            // Every non-head child's lexical head attaches to this node's head.
            for &ch in &child_heads {
                if ch != head && !resolved[ch] {
                    let dist = (head - ch).min(MAX_DEPENDENCY_DISTANCE);
                    distances[ch] = Some(dist as u8);
                    resolved[ch] = true;
                }
            }
            head
        }
    }
}
