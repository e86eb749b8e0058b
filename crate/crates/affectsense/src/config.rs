//! Effective run configuration shared by the CLI and the pipeline.
//!
//! Precedence is flags > config file > built-in defaults; the resolved
//! configuration is echoed into every report so a run's provenance is always
//! in its output.

use crate::affect::ValenceMap;
use crate::classify::LearnerSpec;
use crate::emotion::Emotion;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

/// Per-emotion mood-intensity weights; all ones means plain counting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmotionWeights {
    pub angry: f64,
    pub disgust: f64,
    pub fear: f64,
    pub happy: f64,
    pub sad: f64,
    pub surprise: f64,
    pub neutral: f64,
}

impl Default for EmotionWeights {
    fn default() -> EmotionWeights {
        EmotionWeights {
            angry: 1.0,
            disgust: 1.0,
            fear: 1.0,
            happy: 1.0,
            sad: 1.0,
            surprise: 1.0,
            neutral: 1.0,
        }
    }
}

impl EmotionWeights {
    pub fn get(&self, emotion: Emotion) -> f64 {
        match emotion {
            Emotion::Angry => self.angry,
            Emotion::Disgust => self.disgust,
            Emotion::Fear => self.fear,
            Emotion::Happy => self.happy,
            Emotion::Sad => self.sad,
            Emotion::Surprise => self.surprise,
            Emotion::Neutral => self.neutral,
        }
    }
}

/// Resolved configuration for one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub train_fraction: f64,
    pub z_max: f64,
    pub learner: LearnerSpec,
    pub mood_window: usize,
    pub timeout_min: u64,
    pub core_required: bool,
    pub format: OutputFormat,
    /// Seconds between simulated step events.
    pub gap_secs: u64,
    /// Laplace smoothing for the learned UX predictor.
    pub ux_alpha: f64,
    pub valence_map: ValenceMap,
    pub emotion_weights: EmotionWeights,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            seed: 0,
            train_fraction: 0.8,
            z_max: 4.0,
            learner: LearnerSpec::default_for(crate::classify::LearnerKind::RandomForest),
            mood_window: 5,
            timeout_min: 30,
            core_required: true,
            format: OutputFormat::Json,
            gap_secs: 10,
            ux_alpha: 1.0,
            valence_map: ValenceMap::default(),
            emotion_weights: EmotionWeights::default(),
        }
    }
}

/// Config-file form of [`RunConfig`]: every field optional, unset fields keep
/// their defaults (or are overridden by flags afterwards).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub seed: Option<u64>,
    pub train_fraction: Option<f64>,
    pub z_max: Option<f64>,
    pub learner: Option<LearnerSpec>,
    pub mood_window: Option<usize>,
    pub timeout_min: Option<u64>,
    pub core_required: Option<bool>,
    pub format: Option<OutputFormat>,
    pub gap_secs: Option<u64>,
    pub ux_alpha: Option<f64>,
    pub valence_map: Option<ValenceMap>,
    pub emotion_weights: Option<EmotionWeights>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bad config file: {0}")]
    Format(String),
    #[error("config: {0}")]
    Invalid(String),
}

impl PartialConfig {
    pub fn from_json(source: &[u8]) -> Result<PartialConfig, ConfigError> {
        serde_json::from_slice(source).map_err(|e| ConfigError::Format(e.to_string()))
    }
}

impl RunConfig {
    /// Applies the set fields of a partial config over this one.
    pub fn apply(&mut self, partial: PartialConfig) {
        if let Some(v) = partial.seed {
            self.seed = v;
        }
        if let Some(v) = partial.train_fraction {
            self.train_fraction = v;
        }
        if let Some(v) = partial.z_max {
            self.z_max = v;
        }
        if let Some(v) = partial.learner {
            self.learner = v;
        }
        if let Some(v) = partial.mood_window {
            self.mood_window = v;
        }
        if let Some(v) = partial.timeout_min {
            self.timeout_min = v;
        }
        if let Some(v) = partial.core_required {
            self.core_required = v;
        }
        if let Some(v) = partial.format {
            self.format = v;
        }
        if let Some(v) = partial.gap_secs {
            self.gap_secs = v;
        }
        if let Some(v) = partial.ux_alpha {
            self.ux_alpha = v;
        }
        if let Some(v) = partial.valence_map {
            self.valence_map = v;
        }
        if let Some(v) = partial.emotion_weights {
            self.emotion_weights = v;
        }
    }

    /// Range checks across all owning modules.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(ConfigError::Invalid(format!(
                "train_fraction must be in (0,1), got {}",
                self.train_fraction
            )));
        }
        if !(self.z_max > 0.0) {
            return Err(ConfigError::Invalid(format!(
                "z_max must be positive, got {}",
                self.z_max
            )));
        }
        if self.mood_window == 0 {
            return Err(ConfigError::Invalid("mood_window must be at least 1".into()));
        }
        if !(self.ux_alpha > 0.0) {
            return Err(ConfigError::Invalid(format!(
                "ux_alpha must be positive, got {}",
                self.ux_alpha
            )));
        }
        let weights = [
            self.emotion_weights.angry,
            self.emotion_weights.disgust,
            self.emotion_weights.fear,
            self.emotion_weights.happy,
            self.emotion_weights.sad,
            self.emotion_weights.surprise,
            self.emotion_weights.neutral,
        ];
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(ConfigError::Invalid(
                "emotion_weights must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}
