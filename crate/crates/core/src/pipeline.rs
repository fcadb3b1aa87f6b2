//! End-to-end wiring: parse, project, rewrite, render, measure.

use serde::Deserialize;
use thiserror::Error;

use crate::annotate::AnnotateError;
use crate::f0::{synthesize, Contour, F0Error, F0Params};
use crate::fixtures::{load_fixture, FixtureError, FixtureId};
use crate::measure::{
    classify_boost, classify_initial_lowering, peak_descent, rise_size, BoostRow,
    InitialLoweringRow, MeasureError, MetricsReport, TreeKind,
};
use crate::spmh::{project, ProsodicTree, SpmhError};
use crate::tree::{dependency_distances, parse_tree, DependencyDistance, SyntacticTree, TreeError};
use crate::wellformedness::{apply_all, ConstraintConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Spmh(#[from] SpmhError),
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
    #[error(transparent)]
    F0(#[from] F0Error),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("bad config: {0}")]
    Config(String),
}

/// A sentence analysis: the parsed tree, its dependency distances, the raw
/// SPMH projection, and the constraint-rewritten prosodic tree.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub tree: SyntacticTree,
    pub deps: Vec<DependencyDistance>,
    pub projected: ProsodicTree,
    pub rewritten: ProsodicTree,
}

pub fn analyze(text: &str, constraints: &ConstraintConfig) -> Result<Analysis, PipelineError> {
    let tree = parse_tree(text)?;
    let deps = dependency_distances(&tree)?;
    let projected = project(&tree)?;
    let rewritten = apply_all(&projected, constraints, &deps);
    Ok(Analysis {
        tree,
        deps,
        projected,
        rewritten,
    })
}

pub fn render(analysis: &Analysis, params: &F0Params) -> Result<Contour, PipelineError> {
    Ok(synthesize(&analysis.rewritten, params)?)
}

/// Lowercase and collapse whitespace; annotation comparisons are done on
/// this normalized form (the moraic nasal prints as `N`).
pub fn normalize_annotation(text: &str) -> String {
    text.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Run the bundled experimental items end to end and tabulate rise sizes,
/// peak descents, and naturalness verdicts.
pub fn run_experiment(
    params: &F0Params,
    constraints: &ConstraintConfig,
) -> Result<MetricsReport, PipelineError> {
    let mut report = MetricsReport::default();
    for (id, kind, label) in [
        (FixtureId::Tree1, TreeKind::Tree1, "tree 1"),
        (FixtureId::Tree2, TreeKind::Tree2, "tree 2"),
    ] {
        let fixture = load_fixture(id)?;
        let analysis = analyze(id.source(), constraints)?;
        debug_assert_eq!(fixture.tree, analysis.tree);
        let contour = render(&analysis, params)?;
        let rise_a = rise_size(&contour, 0)?;
        let rise_b = rise_size(&contour, 1)?;
        report.initial_lowering.push(InitialLoweringRow {
            model: "proposed".into(),
            condition: label.into(),
            rise_a_st: rise_a,
            rise_b_st: rise_b,
            natural_pattern: classify_initial_lowering(rise_a, rise_b, kind),
        });
    }
    {
        let analysis = analyze(FixtureId::Boost4N.source(), constraints)?;
        let contour = render(&analysis, params)?;
        // The four accented nouns are words 1..=4 of the fixture.
        let d12 = peak_descent(&contour, 1, 2)?;
        let d23 = peak_descent(&contour, 2, 3)?;
        let d34 = peak_descent(&contour, 3, 4)?;
        report.boost.push(BoostRow {
            model: "proposed".into(),
            sentence: "4N".into(),
            d12_st: d12,
            d23_st: d23,
            d34_st: d34,
            natural_pattern: classify_boost(d12, d23, d34, 0.0),
        });
    }
    Ok(report)
}

/// JSON run configuration: a flat object mirroring the `F0Params` and
/// `ConstraintConfig` field names, all optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    base_hz: Option<f64>,
    h_level_st: Option<f64>,
    l_level_st: Option<f64>,
    dip_per_edge_st: Option<f64>,
    downstep_factor: Option<f64>,
    edge_recovery: Option<f64>,
    mora_duration_s: Option<f64>,
    frame_rate_hz: Option<f64>,
    final_l_st: Option<f64>,
    enable_boost_rephrasing: Option<bool>,
    boost_min_run: Option<usize>,
}

pub fn parse_config(text: &str) -> Result<(F0Params, ConstraintConfig), PipelineError> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
    let mut params = F0Params::default();
    let mut constraints = ConstraintConfig::default();
    macro_rules! take {
        ($target:expr, $field:ident) => {
            if let Some(v) = raw.$field {
                $target.$field = v;
            }
        };
    }
    take!(params, base_hz);
    take!(params, h_level_st);
    take!(params, l_level_st);
    take!(params, dip_per_edge_st);
    take!(params, downstep_factor);
    take!(params, edge_recovery);
    take!(params, mora_duration_s);
    take!(params, frame_rate_hz);
    take!(params, final_l_st);
    take!(constraints, enable_boost_rephrasing);
    take!(constraints, boost_min_run);
    if constraints.boost_min_run < 2 {
        return Err(PipelineError::Config("boost_min_run must be >= 2".into()));
    }
    params.validate().map_err(PipelineError::F0)?;
    Ok((params, constraints))
}
