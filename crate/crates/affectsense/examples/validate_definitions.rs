//! Load the bundled activity definitions, check every model invariant, and
//! show what a validation failure looks like.
//!
//! ```sh
//! cargo run --example validate_definitions
//! ```

use affectsense::activity::{parse_definitions, validate_definition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/definitions/daily_home.json"
    );
    let defs = parse_definitions(&std::fs::read(path)?)?;

    println!("{} definitions loaded from {path}", defs.len());
    for def in &defs {
        let report = validate_definition(def);
        println!(
            "  {:<4} {:<28} threshold {:.2}  steps {}  core {:?}  [{}]",
            def.code,
            def.name,
            def.threshold,
            def.steps.len(),
            def.core_ids,
            if report.is_ok() { "ok" } else { "INVALID" }
        );
    }

    // break one definition on purpose: drain its core set
    let mut broken = defs[4].clone();
    broken.core_ids.clear();
    let report = validate_definition(&broken);
    println!("\nafter clearing {}'s core set:", broken.code);
    for violation in &report.violations {
        println!("  violation: {violation}");
    }
    Ok(())
}
