//! Run the bundled sentences end to end and print the metrics report,
//! plus the same report with boost re-phrasing disabled for contrast.
//!
//! Run with: `cargo run --example experiment`

use jprosody::f0::F0Params;
use jprosody::pipeline::run_experiment;
use jprosody::wellformedness::ConstraintConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = F0Params::default();

    let report = run_experiment(&params, &ConstraintConfig::default())?;
    print!("{report}");
    println!("all natural: {}", report.all_natural());

    let no_boost = ConstraintConfig {
        enable_boost_rephrasing: false,
        ..ConstraintConfig::default()
    };
    let flat = run_experiment(&params, &no_boost)?;
    print!("\nwithout boost re-phrasing:\n{flat}");
    println!("all natural: {}", flat.all_natural());
    Ok(())
}
