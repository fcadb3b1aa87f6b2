//! Show the well-formedness rewriting on a sentence with four consecutive
//! accented words: culminativity splits would-be lapses, and the rhythmic
//! boost pass regroups the accented run into binary phrases.
//!
//! Run with: `cargo run --example constraints`

use jprosody::annotate::emit_proposed;
use jprosody::fixtures::{load_fixture, FixtureId};
use jprosody::spmh::project;
use jprosody::tree::{dependency_distances, parse_tree};
use jprosody::wellformedness::{apply_all, check_constraints, ConstraintConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = load_fixture(FixtureId::Boost4N)?;
    let tree = parse_tree(fixture.id.source())?;
    let deps = dependency_distances(&tree)?;
    let projected = project(&tree)?;

    println!("projected: {}", emit_proposed(&projected).text);

    let no_boost = ConstraintConfig {
        enable_boost_rephrasing: false,
        ..ConstraintConfig::default()
    };
    println!(
        "no boost:  {}",
        emit_proposed(&apply_all(&projected, &no_boost, &deps)).text
    );

    let rewritten = apply_all(&projected, &ConstraintConfig::default(), &deps);
    println!("boosted:   {}", emit_proposed(&rewritten).text);

    for status in check_constraints(&rewritten) {
        println!(
            "  [{}] accented={} {}",
            status.surfaces.join(" "),
            status.accented_count,
            if status.ok { "ok" } else { "violation" }
        );
    }
    Ok(())
}
