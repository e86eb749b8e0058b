//! Walk the bundled five-activity morning: per-occurrence emotion tallies,
//! their valences, and the rolling mood after each activity.
//!
//! ```sh
//! cargo run --example mood_chain
//! ```

use affectsense::activity::DefinitionRegistry;
use affectsense::affect::MoodState;
use affectsense::engine::{EngineConfig, RecognitionEngine};
use affectsense::sim::{read_scenario, simulate_trace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let registry = DefinitionRegistry::from_json(&std::fs::read(format!(
        "{fixtures}/definitions/appliance_usage.json"
    ))?)?;
    let scenario = read_scenario(&std::fs::read(format!(
        "{fixtures}/scenarios/typical_morning.json"
    ))?)?;
    let events = simulate_trace(&registry, &scenario, 0, 10)?;

    let mut engine = RecognitionEngine::new(registry, EngineConfig::default());
    let mut mood = MoodState::new(5);

    println!("{:<6} {:<10} {:>9} {:>9} | mood after", "code", "emotion", "valence", "outcome");
    for event in &events {
        for record in engine.ingest(event)?.completed {
            mood.update(record.valence);
            println!(
                "{:<6} {:<10} {:>9} {:>9} | {}",
                record.code,
                record.overall_emotion.to_string(),
                record.valence.to_string(),
                format!("{:?}", record.outcome),
                mood.current()
            );
        }
    }
    for record in engine.finish() {
        mood.update(record.valence);
        println!("{:<6} (flushed) -> mood {}", record.code, mood.current());
    }

    println!("\nwindow: {:?}", mood.window().collect::<Vec<_>>());
    println!("mood heading into the next activity: {}", mood.current());
    Ok(())
}
