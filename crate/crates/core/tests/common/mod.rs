//! Shared random generators for the integration suites.
//!
//! Generated words keep `surface` equal to the concatenation of their mora
//! texts, and generated prosodic trees put every word in its own minimal
//! phrase — the proposed annotation format delimits words by brackets, so
//! only such trees are expected to round-trip exactly.

use proptest::prelude::*;

use jprosody::lexicon::{parse_moras, PWordLex};
use jprosody::spmh::{PNode, ProsodicTree};
use jprosody::tree::{SynNode, SyntacticCategory, SyntacticTree};

pub const MORA_POOL: &[&str] = &[
    "a", "i", "o", "ka", "ki", "ku", "ga", "gi", "sa", "shi", "ta", "te", "to", "na", "ni", "no",
    "ma", "mi", "mu", "me", "mo", "ra", "ri", "ru", "re", "ro", "wa", "ya", "yo",
];

pub fn word_from_moras(texts: &[&str], accent_nucleus: usize) -> PWordLex {
    let moras = parse_moras(&texts.join(".")).expect("pool moras are valid");
    PWordLex::new(&texts.concat(), moras, accent_nucleus).expect("accent in range")
}

pub fn pword() -> impl Strategy<Value = PWordLex> {
    prop::collection::vec(prop::sample::select(MORA_POOL), 1..=5)
        .prop_flat_map(|texts| {
            let len = texts.len();
            (Just(texts), 0..=len)
        })
        .prop_map(|(texts, accent)| {
            let texts: Vec<&str> = texts.to_vec();
            word_from_moras(&texts, accent)
        })
}

/// A prosodic tree of singleton minimal phrases nested under binary or
/// ternary phrases, as projection produces.
pub fn prosodic_tree() -> impl Strategy<Value = ProsodicTree> {
    let leaf = pword().prop_map(|w| PNode::Phrase(vec![PNode::Word(w)]));
    let node = leaf.prop_recursive(3, 24, 3, |inner| {
        prop::collection::vec(inner, 2..=3).prop_map(PNode::Phrase)
    });
    prop::collection::vec(node, 1..=3).prop_map(|children| ProsodicTree { children })
}

/// An IP over randomly nested NP/PP/VP phrases with N leaves.
pub fn syntactic_tree() -> impl Strategy<Value = SyntacticTree> {
    let leaf = pword().prop_map(|w| SynNode::Internal {
        category: SyntacticCategory::N,
        children: vec![SynNode::Leaf(w)],
    });
    let np = leaf.prop_map(|n| SynNode::Internal {
        category: SyntacticCategory::NP,
        children: vec![n],
    });
    let phrase = np.prop_recursive(3, 16, 3, |inner| {
        (
            prop::sample::select(vec![
                SyntacticCategory::NP,
                SyntacticCategory::PP,
                SyntacticCategory::VP,
            ]),
            prop::collection::vec(inner, 1..=3),
        )
            .prop_map(|(category, children)| SynNode::Internal { category, children })
    });
    prop::collection::vec(phrase, 1..=3).prop_map(|children| SyntacticTree {
        root: SynNode::Internal {
            category: SyntacticCategory::IP,
            children,
        },
    })
}
