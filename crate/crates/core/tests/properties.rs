//! Property tests over random trees: parser round trips, projection laws,
//! and well-formedness constraint laws.

mod common;

use proptest::prelude::*;

use jprosody::annotate::{emit_baseline1, emit_proposed, parse_proposed};
use jprosody::pipeline::normalize_annotation;
use jprosody::spmh::{project, PNode, ProsodicTree};
use jprosody::tree::{dependency_distances, parse_tree, serialize, yield_pwords};
use jprosody::wellformedness::{apply_all, check_constraints, ConstraintConfig};

use common::{prosodic_tree, syntactic_tree};

fn phrase_count(node: &PNode) -> usize {
    match node {
        PNode::Word(_) => 0,
        PNode::Phrase(children) => 1 + children.iter().map(phrase_count).sum::<usize>(),
    }
}

proptest! {
    #[test]
    fn syntactic_round_trip(tree in syntactic_tree()) {
        let text = serialize(&tree);
        let reparsed = parse_tree(&text).expect("serialized tree parses");
        prop_assert_eq!(reparsed, tree);
    }

    #[test]
    fn projection_preserves_yield(tree in syntactic_tree()) {
        let projected = project(&tree).expect("IP root projects");
        let syn: Vec<&str> = yield_pwords(&tree).iter().map(|w| w.surface.as_str()).collect();
        let pro: Vec<&str> = projected.words().iter().map(|w| w.surface.as_str()).collect();
        prop_assert_eq!(syn, pro);
    }

    #[test]
    fn every_word_sits_in_a_minimal_phrase(tree in syntactic_tree()) {
        let projected = project(&tree).expect("IP root projects");
        let grouped: usize = projected.minimal_phrases().iter().map(|(_, ws)| ws.len()).sum();
        prop_assert_eq!(grouped, projected.words().len());
    }

    #[test]
    fn proposed_round_trip(ptree in prosodic_tree()) {
        let emitted = emit_proposed(&ptree);
        let reparsed = parse_proposed(&emitted).expect("emitted annotation parses");
        prop_assert_eq!(reparsed, ptree);
    }

    #[test]
    fn bracket_count_matches_phrase_count(ptree in prosodic_tree()) {
        let emitted = emit_proposed(&ptree);
        let open = emitted.text.chars().filter(|&c| c == '[').count();
        let phrases: usize = ptree.children.iter().map(phrase_count).sum();
        prop_assert_eq!(open, phrases);
    }

    #[test]
    fn baseline1_is_bracket_erasure_of_proposed(tree in syntactic_tree()) {
        let projected = project(&tree).expect("IP root projects");
        let flat = emit_baseline1(&yield_pwords(&tree)).text;
        let erased: String = emit_proposed(&projected)
            .text
            .chars()
            .map(|c| if "{}[]".contains(c) { ' ' } else { c })
            .collect();
        prop_assert_eq!(normalize_annotation(&flat), normalize_annotation(&erased));
    }

    #[test]
    fn rewriting_preserves_yield_and_is_idempotent(tree in syntactic_tree()) {
        let cfg = ConstraintConfig::default();
        let deps = dependency_distances(&tree).expect("heads resolve");
        let projected = project(&tree).expect("IP root projects");
        let once = apply_all(&projected, &cfg, &deps);
        prop_assert_eq!(
            projected.words().iter().map(|w| w.surface.clone()).collect::<Vec<_>>(),
            once.words().iter().map(|w| w.surface.clone()).collect::<Vec<_>>()
        );
        let twice = apply_all(&once, &cfg, &deps);
        prop_assert_eq!(&once, &twice);
        prop_assert!(check_constraints(&once).iter().all(|s| s.ok));
    }

    #[test]
    fn rewriting_only_adds_edges(tree in syntactic_tree()) {
        let cfg = ConstraintConfig::default();
        let deps = dependency_distances(&tree).expect("heads resolve");
        let projected = project(&tree).expect("IP root projects");
        let once = apply_all(&projected, &cfg, &deps);
        let before: usize = projected.children.iter().map(phrase_count).sum();
        let after: usize = once.children.iter().map(phrase_count).sum();
        prop_assert!(after >= before);
    }

    #[test]
    fn edge_counts_match_emitted_brackets(tree in syntactic_tree()) {
        let projected: ProsodicTree = project(&tree).expect("IP root projects");
        let emitted = emit_proposed(&projected).text;
        // Count `[` runs immediately before each word after the first.
        let mut runs: Vec<usize> = Vec::new();
        let mut run = 0usize;
        let mut seen_word = false;
        for c in emitted.chars() {
            match c {
                '[' => run += 1,
                ']' | '{' | '}' | '.' | ' ' => run = 0,
                _ => {
                    if seen_word && run > 0 {
                        runs.push(run);
                    }
                    seen_word = true;
                    run = 0;
                    // skip rest of the word token
                }
            }
        }
        let junctures: Vec<usize> = projected
            .left_edge_counts()
            .iter()
            .filter(|j| j.left_edge_count > 0)
            .map(|j| j.left_edge_count)
            .collect();
        prop_assert_eq!(runs, junctures);
    }
}
