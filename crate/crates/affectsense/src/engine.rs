//! Streaming occurrence recognition.
//!
//! The engine consumes a single timestamped event stream and tracks, per
//! registered definition, at most one occurrence at a time. Step observations
//! use set semantics: a repeated step counts once, and a context attribute
//! counts as held if any observation of that step saw it held.
//!
//! Lifecycle of an occurrence:
//!
//! * The first accepted event for a definition opens an accumulation in the
//!   awaiting-start phase.
//! * It becomes active once every start step has been observed with its
//!   context held (any order).
//! * It closes — emitting an [`OccurrenceRecord`] — when all end steps have
//!   been observed while active, when the inactivity timeout elapses, or when
//!   the stream is flushed via [`RecognitionEngine::finish`].
//!
//! The occurrence score is the mean of the observed atomic-weight sum and the
//! observed context-weight sum (a step performed with a failed context earns
//! its atomic half only). Success requires the score to reach the definition
//! threshold and, unless disabled, every core step observed with its context
//! held. Closing by timeout or flush does not by itself force a failure; the
//! outcome is always the score/core test over what was observed.
//!
//! One engine instance owns one stream and is single-threaded; completed
//! records are plain data and safe to hand across threads.

use crate::activity::{ComplexActivityDef, DefinitionRegistry};
use crate::affect::{affect_from_counters, EmotionCounters, ValenceMap};
use crate::emotion::{Emotion, Valence};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Slack for float comparisons against thresholds; scores are snapped to
/// well below this, so two-decimal weights compare exactly.
const SCORE_EPSILON: f64 = 1e-9;

/// Observed local step ids with whether the paired context attribute held.
pub type StepObservations = BTreeMap<u32, bool>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Success,
    Failure,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Success => "Success",
            Outcome::Failure => "Failure",
        })
    }
}

/// Emotion evidence attached to an event: either a pre-classified label or a
/// 0-based row reference into a feature-vector file (resolved upstream by the
/// pipeline before ingestion).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmotionEvidence {
    Label(Emotion),
    FeatureRow(usize),
}

/// One timestamped observation in the stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub timestamp_ms: i64,
    /// Global step id (see [`DefinitionRegistry`] for the id layout).
    pub step_id: u32,
    /// Whether the step's paired context attribute held.
    pub context_ok: bool,
    pub emotion: Option<EmotionEvidence>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    AwaitingStart,
    Active,
}

/// In-flight occurrence bookkeeping for one definition.
#[derive(Clone, Debug)]
struct OccurrenceState {
    phase: Phase,
    first_ms: i64,
    last_ms: i64,
    observed: StepObservations,
    counters: EmotionCounters,
}

/// One detected occurrence, emitted when its accumulation closes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceRecord {
    pub code: String,
    pub start_ms: i64,
    pub end_ms: i64,
    /// Realized occurrence weight in [0, 1].
    pub score: f64,
    pub outcome: Outcome,
    pub counters: EmotionCounters,
    pub overall_emotion: Emotion,
    pub valence: Valence,
    /// True when no event of the occurrence carried emotion evidence.
    pub no_evidence: bool,
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("event timestamp {got} precedes previous event at {previous}")]
    OutOfOrder { previous: i64, got: i64 },
    #[error("step {step_id} is not part of definition `{code}`")]
    DefinitionMismatch { code: String, step_id: u32 },
}

/// Mean of the observed atomic-weight sum and the observed context-held
/// weight sum. Deterministic, in [0, 1]; the empty observation scores 0.
pub fn score_occurrence(
    def: &ComplexActivityDef,
    observed: &StepObservations,
) -> Result<f64, EngineError> {
    let mut atomic = 0.0;
    let mut context = 0.0;
    for (&id, &context_ok) in observed {
        let step = def.step(id).ok_or_else(|| EngineError::DefinitionMismatch {
            code: def.code.clone(),
            step_id: id,
        })?;
        atomic += step.atomic.weight;
        if context_ok {
            context += step.context.weight;
        }
    }
    let score = 0.5 * (atomic + context);
    // snap accumulated float error so two-decimal weights stay exact
    Ok((score * 1e9).round() / 1e9)
}

/// Success iff the score reaches the threshold and (when `require_core`)
/// every core step was observed with its context held.
pub fn classify_outcome(
    def: &ComplexActivityDef,
    score: f64,
    observed: &StepObservations,
    require_core: bool,
) -> Outcome {
    if score + SCORE_EPSILON < def.threshold {
        return Outcome::Failure;
    }
    if require_core {
        let cores_ok = def
            .core_ids
            .iter()
            .all(|id| observed.get(id).copied() == Some(true));
        if !cores_ok {
            return Outcome::Failure;
        }
    }
    Outcome::Success
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Inactivity timeout in minutes; an occurrence with no accepted event
    /// for longer than this closes where it stands.
    pub timeout_min: u64,
    /// Whether success additionally requires all core steps with context held.
    pub core_required: bool,
    pub valence_map: ValenceMap,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            timeout_min: 30,
            core_required: true,
            valence_map: ValenceMap::default(),
        }
    }
}

/// Counters for events the engine accepted but could not use.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineDiagnostics {
    /// Events whose step id resolves to no registered definition.
    pub ignored_events: u64,
    /// Events carrying unresolved feature-row evidence (the pipeline resolves
    /// these to labels before ingestion; raw engine users see them skipped).
    pub unresolved_evidence: u64,
}

/// What one ingested event did: which definitions opened a new accumulation,
/// and which occurrences completed (the triggering event's own definition
/// and/or others closed by the inactivity timeout).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ingested {
    pub started: Vec<String>,
    pub completed: Vec<OccurrenceRecord>,
}

/// Deterministic per-stream recognition state machine.
pub struct RecognitionEngine {
    registry: DefinitionRegistry,
    config: EngineConfig,
    states: Vec<Option<OccurrenceState>>,
    last_ts: Option<i64>,
    diagnostics: EngineDiagnostics,
}

impl RecognitionEngine {
    pub fn new(registry: DefinitionRegistry, config: EngineConfig) -> RecognitionEngine {
        let states = vec![None; registry.len()];
        RecognitionEngine {
            registry,
            config,
            states,
            last_ts: None,
            diagnostics: EngineDiagnostics::default(),
        }
    }

    pub fn registry(&self) -> &DefinitionRegistry {
        &self.registry
    }

    pub fn diagnostics(&self) -> &EngineDiagnostics {
        &self.diagnostics
    }

    fn timeout_ms(&self) -> i64 {
        self.config.timeout_min as i64 * 60_000
    }

    /// Feeds one event. Events must arrive in non-decreasing timestamp order.
    pub fn ingest(&mut self, event: &Event) -> Result<Ingested, EngineError> {
        if let Some(previous) = self.last_ts {
            if event.timestamp_ms < previous {
                return Err(EngineError::OutOfOrder {
                    previous,
                    got: event.timestamp_ms,
                });
            }
        }
        self.last_ts = Some(event.timestamp_ms);

        let mut out = Ingested::default();
        self.expire(event.timestamp_ms, &mut out.completed);

        let Some((def_index, local_id)) = self.registry.resolve_step_indexed(event.step_id) else {
            self.diagnostics.ignored_events += 1;
            return Ok(out);
        };
        let def = &self.registry.defs()[def_index];

        let state = &mut self.states[def_index];
        if state.is_none() {
            *state = Some(OccurrenceState {
                phase: Phase::AwaitingStart,
                first_ms: event.timestamp_ms,
                last_ms: event.timestamp_ms,
                observed: StepObservations::new(),
                counters: EmotionCounters::default(),
            });
            out.started.push(def.code.clone());
        }
        let state = state.as_mut().expect("state just ensured");

        state.last_ms = event.timestamp_ms;
        state
            .observed
            .entry(local_id)
            .and_modify(|held| *held = *held || event.context_ok)
            .or_insert(event.context_ok);
        match event.emotion {
            Some(EmotionEvidence::Label(emotion)) => state.counters.increment(emotion),
            Some(EmotionEvidence::FeatureRow(_)) => self.diagnostics.unresolved_evidence += 1,
            None => {}
        }

        if state.phase == Phase::AwaitingStart {
            let started = def
                .start_ids
                .iter()
                .all(|id| state.observed.get(id).copied() == Some(true));
            if started {
                state.phase = Phase::Active;
            }
        }
        if state.phase == Phase::Active {
            let ended = def.end_ids.iter().all(|id| state.observed.contains_key(id));
            if ended {
                let state = self.states[def_index].take().expect("active state present");
                out.completed.push(close_state(def, state, &self.config));
            }
        }
        Ok(out)
    }

    /// Closes every in-flight accumulation and returns their records; the
    /// engine is then ready for a fresh stream (the timestamp watermark
    /// remains, so a continued stream must not go backwards).
    pub fn finish(&mut self) -> Vec<OccurrenceRecord> {
        let mut records = Vec::new();
        for (index, slot) in self.states.iter_mut().enumerate() {
            if let Some(state) = slot.take() {
                let def = &self.registry.defs()[index];
                records.push(close_state(def, state, &self.config));
            }
        }
        records
    }

    fn expire(&mut self, now: i64, completed: &mut Vec<OccurrenceRecord>) {
        let timeout = self.timeout_ms();
        for (index, slot) in self.states.iter_mut().enumerate() {
            let expired = slot
                .as_ref()
                .map(|s| now - s.last_ms > timeout)
                .unwrap_or(false);
            if expired {
                let state = slot.take().expect("expired state present");
                let def = &self.registry.defs()[index];
                completed.push(close_state(def, state, &self.config));
            }
        }
    }
}

fn close_state(
    def: &ComplexActivityDef,
    state: OccurrenceState,
    config: &EngineConfig,
) -> OccurrenceRecord {
    let score = score_occurrence(def, &state.observed)
        .expect("engine only accumulates steps of the definition");
    let outcome = classify_outcome(def, score, &state.observed, config.core_required);
    let affect = affect_from_counters(state.counters, &config.valence_map);
    OccurrenceRecord {
        code: def.code.clone(),
        start_ms: state.first_ms,
        end_ms: state.last_ms,
        score,
        outcome,
        counters: affect.counters,
        overall_emotion: affect.overall,
        valence: affect.valence,
        no_evidence: affect.no_evidence,
    }
}

// ---------------------------------------------------------------------------
// Event log format
// ---------------------------------------------------------------------------

/// Error while reading an event log, naming the offending 1-based line.
#[derive(Debug, Error)]
#[error("event log line {line}: {message}")]
pub struct EventLogError {
    pub line: usize,
    pub message: String,
}

#[derive(Serialize, Deserialize)]
struct JsonEvent {
    timestamp_ms: i64,
    step_id: u32,
    context_ok: bool,
    emotion: Option<String>,
}

fn emotion_field(evidence: &Option<EmotionEvidence>) -> String {
    match evidence {
        None => "-".to_string(),
        Some(EmotionEvidence::Label(e)) => e.label().to_string(),
        Some(EmotionEvidence::FeatureRow(row)) => format!("@{row}"),
    }
}

fn parse_emotion_field(text: &str) -> Result<Option<EmotionEvidence>, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(None);
    }
    if let Some(row) = text.strip_prefix('@') {
        let row: usize = row
            .parse()
            .map_err(|_| format!("bad feature row reference `{text}`"))?;
        return Ok(Some(EmotionEvidence::FeatureRow(row)));
    }
    Emotion::parse_label(text)
        .map(|e| Some(EmotionEvidence::Label(e)))
        .ok_or_else(|| format!("unknown emotion label `{text}`"))
}

fn parse_csv_event(line: &str) -> Result<Event, String> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 4 {
        return Err(format!("expected 4 fields, got {}", fields.len()));
    }
    let timestamp_ms: i64 = fields[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad timestamp `{}`", fields[0]))?;
    let step_id: u32 = fields[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad step id `{}`", fields[1]))?;
    if step_id == 0 {
        return Err("step ids are 1-based".to_string());
    }
    let context_ok = match fields[2].trim() {
        "true" => true,
        "false" => false,
        other => return Err(format!("bad context flag `{other}` (expected true/false)")),
    };
    Ok(Event {
        timestamp_ms,
        step_id,
        context_ok,
        emotion: parse_emotion_field(fields[3])?,
    })
}

fn parse_json_event(line: &str) -> Result<Event, String> {
    let raw: JsonEvent = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if raw.step_id == 0 {
        return Err("step ids are 1-based".to_string());
    }
    let emotion = match raw.emotion {
        None => None,
        Some(text) => parse_emotion_field(&text)?,
    };
    Ok(Event {
        timestamp_ms: raw.timestamp_ms,
        step_id: raw.step_id,
        context_ok: raw.context_ok,
        emotion,
    })
}

/// Reads an event log: one event per line, either CSV
/// (`timestamp_ms,step_id,context_ok,emotion` with emotion one of the seven
/// labels, `-` for absent, or `@<row>` for a feature-file row) or the JSONL
/// equivalent. Blank lines and a leading CSV header are skipped.
pub fn read_event_log(text: &str) -> Result<Vec<Event>, EventLogError> {
    let mut events = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if index == 0 && trimmed.starts_with("timestamp_ms") {
            continue;
        }
        let parsed = if trimmed.starts_with('{') {
            parse_json_event(trimmed)
        } else {
            parse_csv_event(trimmed)
        };
        events.push(parsed.map_err(|message| EventLogError {
            line: index + 1,
            message,
        })?);
    }
    Ok(events)
}

/// Canonical CSV event log; `read_event_log` of the output reproduces the
/// events exactly.
pub fn write_event_log(events: &[Event]) -> String {
    let mut out = String::new();
    for event in events {
        out.push_str(&format!(
            "{},{},{},{}\n",
            event.timestamp_ms,
            event.step_id,
            event.context_ok,
            emotion_field(&event.emotion)
        ));
    }
    out
}
