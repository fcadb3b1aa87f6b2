//! Project a syntactic tree and print all three annotation formats.
//!
//! Run with: `cargo run --example annotate`

use jprosody::annotate::{emit_baseline1, emit_baseline2, emit_proposed, parse_proposed};
use jprosody::fixtures::{load_fixture, FixtureId};
use jprosody::pipeline::analyze;
use jprosody::tree::yield_pwords;
use jprosody::wellformedness::ConstraintConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = load_fixture(FixtureId::Tree1)?;
    let analysis = analyze(fixture.id.source(), &ConstraintConfig::default())?;

    println!(
        "baseline1: {}",
        emit_baseline1(&yield_pwords(&analysis.tree)).text
    );
    println!("baseline2: {}", emit_baseline2(&analysis.tree)?.text);

    let proposed = emit_proposed(&analysis.rewritten);
    println!("proposed:  {}", proposed.text);

    // The proposed format is machine-readable: parse it back and check that
    // the prosodic structure survives the round trip.
    let reparsed = parse_proposed(&proposed)?;
    assert_eq!(emit_proposed(&reparsed).text, proposed.text);
    println!("round trip: ok");
    Ok(())
}
