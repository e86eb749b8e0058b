//! End-to-end run: recognition → per-occurrence affect → rolling mood →
//! pre-activity user-experience forecasts, gathered into one report.
//!
//! A forecast is emitted the moment an occurrence opens (its first
//! contributing event), using the mood at that instant — strictly before the
//! occurrence's end — and, because the true outcome is unknown at forecast
//! time, it carries predictions for both hypothetical outcomes. One trailing
//! forecast covers whatever activity comes next after the stream ends.
//!
//! A report is a pure function of (definitions, events, config, models):
//! identical inputs serialize byte-identically.

use crate::activity::DefinitionRegistry;
use crate::affect::MoodState;
use crate::classify::EmotionModel;
use crate::config::RunConfig;
use crate::emotion::Valence;
use crate::engine::{
    EmotionEvidence, EngineConfig, EngineError, Event, EventLogError, OccurrenceRecord,
    RecognitionEngine,
};
use crate::ux::{predict_rule, predict_ux, Polarity, UXModel};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Stream(#[from] EngineError),
    #[error(transparent)]
    EventLog(#[from] EventLogError),
    #[error("event references feature row {row} but no emotion model was supplied")]
    MissingModel { row: usize },
    #[error("event references feature row {row} but the feature table has {rows} rows")]
    MissingFeatureRow { row: usize, rows: usize },
    #[error("feature row {row}: {source}")]
    Predict {
        row: usize,
        source: crate::classify::TrainError,
    },
}

/// Unlabeled feature vectors addressed by `@<row>` event evidence (0-based).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FeatureTable {
    pub rows: Vec<Vec<f64>>,
}

impl FeatureTable {
    /// Headerless CSV, one `f1,...,fD` vector per line.
    pub fn from_csv(text: &str) -> Result<FeatureTable, EventLogError> {
        let mut rows = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for field in trimmed.split(',') {
                let value: f64 = field.trim().parse().map_err(|_| EventLogError {
                    line: index + 1,
                    message: format!("bad feature value `{field}`"),
                })?;
                row.push(value);
            }
            rows.push(row);
        }
        Ok(FeatureTable { rows })
    }
}

/// The label predicted for one hypothetical outcome. Confidences are present
/// only for the learned predictor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForecastBranch {
    pub predicted: Polarity,
    pub confidence_positive: Option<f64>,
    pub confidence_negative: Option<f64>,
}

/// Pre-activity user-experience forecast.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UxForecast {
    /// Definition code, or None for the trailing next-activity forecast.
    pub code: Option<String>,
    /// Timestamp of the occurrence's first event; None for the trailing one.
    pub at_ms: Option<i64>,
    pub mood: Polarity,
    pub if_success: ForecastBranch,
    pub if_failure: ForecastBranch,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineSummary {
    pub events: usize,
    pub occurrences: usize,
    pub successes: usize,
    pub failures: usize,
    pub ignored_events: u64,
    pub final_mood: Option<Valence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub format_version: u32,
    pub config: RunConfig,
    pub occurrences: Vec<OccurrenceRecord>,
    /// Mood after each closed occurrence; same length and order as
    /// `occurrences`.
    pub mood_timeline: Vec<Valence>,
    pub forecasts: Vec<UxForecast>,
    /// Forecast for a hypothetical next activity after the stream end.
    pub upcoming: UxForecast,
    pub summary: PipelineSummary,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(source: &[u8]) -> Result<PipelineReport, String> {
        serde_json::from_slice(source).map_err(|e| e.to_string())
    }
}

fn forecast_branch(model: Option<&UXModel>, mood: Polarity, outcome: Polarity) -> ForecastBranch {
    match model {
        Some(model) => {
            let prediction = predict_ux(model, mood, outcome);
            ForecastBranch {
                predicted: prediction.predicted,
                confidence_positive: Some(prediction.confidence_positive),
                confidence_negative: Some(prediction.confidence_negative),
            }
        }
        None => ForecastBranch {
            predicted: predict_rule(mood, outcome),
            confidence_positive: None,
            confidence_negative: None,
        },
    }
}

fn forecast(
    code: Option<String>,
    at_ms: Option<i64>,
    mood_valence: Valence,
    model: Option<&UXModel>,
) -> UxForecast {
    let mood = Polarity::from_mood(mood_valence);
    UxForecast {
        code,
        at_ms,
        mood,
        if_success: forecast_branch(model, mood, Polarity::Positive),
        if_failure: forecast_branch(model, mood, Polarity::Negative),
    }
}

/// Replaces `@<row>` feature references with labels predicted by the
/// supplied emotion model.
pub fn resolve_evidence(
    events: &[Event],
    model: Option<&EmotionModel>,
    features: Option<&FeatureTable>,
) -> Result<Vec<Event>, PipelineError> {
    let mut resolved = Vec::with_capacity(events.len());
    for event in events {
        let mut event = event.clone();
        if let Some(EmotionEvidence::FeatureRow(row)) = event.emotion {
            let model = model.ok_or(PipelineError::MissingModel { row })?;
            let table = features.ok_or(PipelineError::MissingModel { row })?;
            let vector = table
                .rows
                .get(row)
                .ok_or(PipelineError::MissingFeatureRow {
                    row,
                    rows: table.rows.len(),
                })?;
            let label = model
                .predict(vector)
                .map_err(|source| PipelineError::Predict { row, source })?;
            event.emotion = Some(EmotionEvidence::Label(label));
        }
        resolved.push(event);
    }
    Ok(resolved)
}

/// Runs the whole pipeline over an event stream.
///
/// `emotion_model` + `features` are required only when events reference
/// feature rows; `ux_model` switches the forecasts from the rule table to
/// the learned predictor.
pub fn run_pipeline(
    registry: &DefinitionRegistry,
    events: &[Event],
    emotion_model: Option<(&EmotionModel, &FeatureTable)>,
    ux_model: Option<&UXModel>,
    config: &RunConfig,
) -> Result<PipelineReport, PipelineError> {
    let events = resolve_evidence(
        events,
        emotion_model.map(|(m, _)| m),
        emotion_model.map(|(_, t)| t),
    )?;

    let engine_config = EngineConfig {
        timeout_min: config.timeout_min,
        core_required: config.core_required,
        valence_map: config.valence_map.clone(),
    };
    let mut engine = RecognitionEngine::new(registry.clone(), engine_config);
    let mut mood = MoodState::new(config.mood_window);

    let mut occurrences = Vec::new();
    let mut mood_timeline = Vec::new();
    let mut forecasts = Vec::new();

    let absorb =
        |records: Vec<OccurrenceRecord>,
         occurrences: &mut Vec<OccurrenceRecord>,
         mood_timeline: &mut Vec<Valence>,
         mood: &mut MoodState| {
            for record in records {
                // no-evidence occurrences are flagged, not dropped; they do
                // not steer the mood
                if !record.no_evidence {
                    let weight = config.emotion_weights.get(record.overall_emotion);
                    mood.update_weighted(record.valence, weight);
                }
                mood_timeline.push(mood.current());
                occurrences.push(record);
            }
        };

    for event in &events {
        let ingested = engine.ingest(event)?;
        absorb(
            ingested.completed,
            &mut occurrences,
            &mut mood_timeline,
            &mut mood,
        );
        for code in ingested.started {
            forecasts.push(forecast(
                Some(code),
                Some(event.timestamp_ms),
                mood.current(),
                ux_model,
            ));
        }
    }
    absorb(
        engine.finish(),
        &mut occurrences,
        &mut mood_timeline,
        &mut mood,
    );

    let upcoming = forecast(None, None, mood.current(), ux_model);
    let summary = PipelineSummary {
        events: events.len(),
        occurrences: occurrences.len(),
        successes: occurrences
            .iter()
            .filter(|r| r.outcome == crate::engine::Outcome::Success)
            .count(),
        failures: occurrences
            .iter()
            .filter(|r| r.outcome == crate::engine::Outcome::Failure)
            .count(),
        ignored_events: engine.diagnostics().ignored_events,
        final_mood: if occurrences.is_empty() {
            None
        } else {
            Some(mood.current())
        },
    };

    Ok(PipelineReport {
        format_version: REPORT_FORMAT_VERSION,
        config: config.clone(),
        occurrences,
        mood_timeline,
        forecasts,
        upcoming,
        summary,
    })
}
