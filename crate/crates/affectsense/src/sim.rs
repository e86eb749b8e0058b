//! Seeded synthetic event traces from scenario scripts.
//!
//! A scenario is an ordered list of activity slots: which definition runs,
//! how completely it runs (full, partial with omitted steps, or abandoned
//! after the start steps), what emotions its steps show, and when it starts.
//! Simulation substitutes for live sensor capture; a trace is a plain event
//! log and feeds the same recognition path as recorded data.

use crate::activity::DefinitionRegistry;
use crate::emotion::Emotion;
use crate::engine::{EmotionEvidence, Event};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const SCENARIO_FORMAT_VERSION: u32 = 1;

const SEED_MIX: u64 = 0x9e37_79b9_7f4a_7c15;

/// How completely a scenario entry performs its activity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompletionMode {
    /// Every step, in id order, context held.
    Full,
    /// Every step except the omitted ids.
    Partial { omit: BTreeSet<u32> },
    /// Only the start steps, then silence.
    Abandoned,
}

/// Per-step emotion evidence for a scenario entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmotionScript {
    /// No emotion evidence on any step.
    None,
    /// The same emotion on every step.
    Constant { emotion: Emotion },
    /// One emotion per step id: `sequence[id - 1]` for local step `id`.
    PerStep { sequence: Vec<Emotion> },
    /// Emotions drawn per step from a weighted distribution.
    Weighted { weights: Vec<EmotionWeight> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmotionWeight {
    pub emotion: Emotion,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub code: String,
    pub mode: CompletionMode,
    pub emotions: EmotionScript,
    pub start_offset_min: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub format_version: u32,
    pub entries: Vec<ScenarioEntry>,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("bad scenario file: {0}")]
    Format(String),
    #[error("unsupported scenario format version {0}")]
    Version(u32),
    #[error("entry {entry}: unknown definition code `{code}`")]
    UnknownCode { entry: usize, code: String },
    #[error("entry {entry} ({code}): omitted id {id} is not a step of the definition")]
    BadOmitId { entry: usize, code: String, id: u32 },
    #[error("entry {entry} ({code}): per-step script has {got} emotions, definition has {expected} steps")]
    ScriptLength {
        entry: usize,
        code: String,
        expected: usize,
        got: usize,
    },
    #[error("entry {entry} ({code}): weighted script needs positive total weight")]
    BadWeights { entry: usize, code: String },
}

pub fn read_scenario(source: &[u8]) -> Result<Scenario, ScenarioError> {
    let scenario: Scenario =
        serde_json::from_slice(source).map_err(|e| ScenarioError::Format(e.to_string()))?;
    if scenario.format_version != SCENARIO_FORMAT_VERSION {
        return Err(ScenarioError::Version(scenario.format_version));
    }
    Ok(scenario)
}

pub fn write_scenario(scenario: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    out.push('\n');
    out
}

/// Checks a scenario against a registry without generating anything.
pub fn validate_scenario(
    registry: &DefinitionRegistry,
    scenario: &Scenario,
) -> Result<(), ScenarioError> {
    for (index, entry) in scenario.entries.iter().enumerate() {
        let def = registry
            .get(&entry.code)
            .ok_or_else(|| ScenarioError::UnknownCode {
                entry: index,
                code: entry.code.clone(),
            })?;
        if let CompletionMode::Partial { omit } = &entry.mode {
            for &id in omit {
                if def.step(id).is_none() {
                    return Err(ScenarioError::BadOmitId {
                        entry: index,
                        code: entry.code.clone(),
                        id,
                    });
                }
            }
        }
        match &entry.emotions {
            EmotionScript::PerStep { sequence } => {
                if sequence.len() != def.steps.len() {
                    return Err(ScenarioError::ScriptLength {
                        entry: index,
                        code: entry.code.clone(),
                        expected: def.steps.len(),
                        got: sequence.len(),
                    });
                }
            }
            EmotionScript::Weighted { weights } => {
                let total: f64 = weights.iter().map(|w| w.weight.max(0.0)).sum();
                if !(total > 0.0) {
                    return Err(ScenarioError::BadWeights {
                        entry: index,
                        code: entry.code.clone(),
                    });
                }
            }
            EmotionScript::None | EmotionScript::Constant { .. } => {}
        }
    }
    Ok(())
}

fn script_emotion(
    script: &EmotionScript,
    step_position: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Emotion> {
    match script {
        EmotionScript::None => None,
        EmotionScript::Constant { emotion } => Some(*emotion),
        EmotionScript::PerStep { sequence } => sequence.get(step_position).copied(),
        EmotionScript::Weighted { weights } => {
            let total: f64 = weights.iter().map(|w| w.weight.max(0.0)).sum();
            let mut draw = rng.random::<f64>() * total;
            for entry in weights {
                draw -= entry.weight.max(0.0);
                if draw <= 0.0 {
                    return Some(entry.emotion);
                }
            }
            weights.last().map(|w| w.emotion)
        }
    }
}

/// Generates the event trace for a scenario: entries start at their offsets,
/// steps are spaced `gap_secs` apart in id order, and the whole trace comes
/// out in timestamp order. Deterministic per seed.
pub fn simulate_trace(
    registry: &DefinitionRegistry,
    scenario: &Scenario,
    seed: u64,
    gap_secs: u64,
) -> Result<Vec<Event>, ScenarioError> {
    validate_scenario(registry, scenario)?;
    let mut events = Vec::new();
    for (index, entry) in scenario.entries.iter().enumerate() {
        let def = registry.get(&entry.code).expect("validated above");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(SEED_MIX));
        let base_ms = entry.start_offset_min as i64 * 60_000;
        let mut emitted = 0i64;
        for (position, step) in def.steps.iter().enumerate() {
            let id = step.id();
            let include = match &entry.mode {
                CompletionMode::Full => true,
                CompletionMode::Partial { omit } => !omit.contains(&id),
                CompletionMode::Abandoned => def.start_ids.contains(&id),
            };
            if !include {
                continue;
            }
            let emotion = script_emotion(&entry.emotions, position, &mut rng)
                .map(EmotionEvidence::Label);
            events.push(Event {
                timestamp_ms: base_ms + emitted * gap_secs as i64 * 1_000,
                step_id: registry
                    .global_step_id(&entry.code, id)
                    .expect("validated step"),
                context_ok: true,
                emotion,
            });
            emitted += 1;
        }
    }
    events.sort_by_key(|e| e.timestamp_ms);
    Ok(events)
}
