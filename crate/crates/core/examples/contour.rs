//! Render a deterministic F0 contour and export it as CSV.
//!
//! Run with: `cargo run --example contour`

use jprosody::f0::{assign_tones, compute_registers, F0Params};
use jprosody::fixtures::{load_fixture, FixtureId};
use jprosody::pipeline::{analyze, render};
use jprosody::wellformedness::ConstraintConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = load_fixture(FixtureId::Tree1)?;
    let analysis = analyze(fixture.id.source(), &ConstraintConfig::default())?;
    let params = F0Params::default();

    let registers = compute_registers(&analysis.rewritten, &params);
    println!("registers: {registers:?}");

    for target in assign_tones(&analysis.rewritten, &params) {
        println!(
            "mora {:>2} pword {} {:?} {:+.2} st",
            target.mora_index, target.pword_index, target.tone, target.level_st
        );
    }

    let contour = render(&analysis, &params)?;
    println!(
        "{} frames at {} Hz ({:.2} s)",
        contour.frames.len(),
        contour.frame_rate_hz,
        contour.frames.last().map_or(0.0, |f| f.t)
    );

    let path = std::env::temp_dir().join("tree1_contour.csv");
    std::fs::write(&path, contour.to_csv())?;
    println!("wrote {}", path.display());
    Ok(())
}
