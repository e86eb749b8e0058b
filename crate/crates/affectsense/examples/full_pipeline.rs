//! The whole pipeline in one call: simulate the bundled morning scenario,
//! recognize its activities, tally affect, roll the mood, and forecast the
//! user experience of whatever comes next.
//!
//! ```sh
//! cargo run --example full_pipeline
//! ```

use affectsense::activity::DefinitionRegistry;
use affectsense::config::RunConfig;
use affectsense::pipeline::run_pipeline;
use affectsense::sim::{read_scenario, simulate_trace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let registry = DefinitionRegistry::from_json(&std::fs::read(format!(
        "{fixtures}/definitions/appliance_usage.json"
    ))?)?;
    let scenario = read_scenario(&std::fs::read(format!(
        "{fixtures}/scenarios/typical_morning.json"
    ))?)?;

    let config = RunConfig::default();
    let events = simulate_trace(&registry, &scenario, config.seed, config.gap_secs)?;
    println!("simulated {} events across {} activities", events.len(), scenario.entries.len());

    let report = run_pipeline(&registry, &events, None, None, &config)?;

    println!("\noccurrences:");
    for (record, mood) in report.occurrences.iter().zip(&report.mood_timeline) {
        println!(
            "  {:<5} score {:.2} {:?} | {} -> {} | mood {}",
            record.code, record.score, record.outcome, record.overall_emotion, record.valence, mood
        );
    }

    println!("\npre-activity forecasts (made before each activity ran):");
    for forecast in &report.forecasts {
        println!(
            "  {:<5} at {:>9}ms, mood {}: success -> {}, failure -> {}",
            forecast.code.as_deref().unwrap_or("next"),
            forecast.at_ms.unwrap_or(0),
            forecast.mood,
            forecast.if_success.predicted,
            forecast.if_failure.predicted
        );
    }

    println!(
        "\nfinal mood {} | a successful next activity would feel {}",
        report.summary.final_mood.map(|m| m.to_string()).unwrap_or_default(),
        report.upcoming.if_success.predicted
    );
    println!("\nfull JSON report is one `report.to_json()` away");
    Ok(())
}
