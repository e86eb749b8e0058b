//! Feed a hand-written event stream through the recognition engine: one
//! complete shopping trip, then a second attempt that skips the essential
//! steps and fails.
//!
//! ```sh
//! cargo run --example recognize_stream
//! ```

use affectsense::activity::DefinitionRegistry;
use affectsense::emotion::Emotion;
use affectsense::engine::{EmotionEvidence, EngineConfig, Event, RecognitionEngine};

fn event(ts: i64, step: u32, emotion: Option<Emotion>) -> Event {
    Event {
        timestamp_ms: ts,
        step_id: step,
        context_ok: true,
        emotion: emotion.map(EmotionEvidence::Label),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/definitions/shopping.json"
    );
    let registry = DefinitionRegistry::from_json(&std::fs::read(path)?)?;
    let mut engine = RecognitionEngine::new(registry, EngineConfig::default());

    use Emotion::*;
    // a full trip: all five steps, contexts held, one emotion per step
    let full = [
        event(0, 1, Some(Happy)),
        event(10_000, 2, Some(Happy)),
        event(20_000, 3, Some(Neutral)),
        event(30_000, 4, Some(Happy)),
        event(40_000, 5, Some(Sad)),
    ];
    // a second attempt missing the core steps (dressing, bag)
    let partial = [
        event(3_600_000, 1, Some(Sad)),
        event(3_610_000, 4, Some(Sad)),
        event(3_620_000, 5, None),
    ];

    for e in full.iter().chain(&partial) {
        for record in engine.ingest(e)?.completed {
            print_record(&record);
        }
    }
    for record in engine.finish() {
        print_record(&record);
    }
    Ok(())
}

fn print_record(record: &affectsense::engine::OccurrenceRecord) {
    println!(
        "{} [{} .. {}] score {:.2} -> {:?} | emotions {:?} -> {} ({})",
        record.code,
        record.start_ms,
        record.end_ms,
        record.score,
        record.outcome,
        record.counters.counts(),
        record.overall_emotion,
        record.valence
    );
}
