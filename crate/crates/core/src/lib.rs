//! A prosody compiler for Tokyo Japanese.
//!
//! The pipeline turns an annotated constituency tree into a recursive
//! phonological hierarchy (PClause > PPhrase* > PWord) via syntax-prosody
//! mapping and prosodic well-formedness constraints, serializes it into
//! three TTS input annotation formats, renders a deterministic rule-based
//! F0 contour showing initial lowering, downstep, and rhythmic boost, and
//! measures those phenomena in semitones.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `jprosody` binary for the batch CLI.

pub mod annotate;
pub mod f0;
pub mod fixtures;
pub mod lexicon;
pub mod measure;
pub mod pipeline;
pub mod spmh;
pub mod tree;
pub mod wellformedness;

pub use annotate::{
    emit_baseline1, emit_baseline2, emit_proposed, parse_proposed, AnnotatedString,
};
pub use f0::{synthesize, Contour, F0Params};
pub use lexicon::{parse_moras, AccentClass, Mora, MoraKind, PWordLex};
pub use measure::{classify_boost, classify_initial_lowering, peak_descent, rise_size, semitones};
pub use pipeline::{analyze, render, run_experiment, Analysis};
pub use spmh::{project, JuncturePosition, PNode, ProsodicTree};
pub use tree::{dependency_distances, parse_tree, serialize, yield_pwords, SyntacticTree};
pub use wellformedness::{apply_all, ConstraintConfig};
