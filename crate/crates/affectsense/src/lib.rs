//! Streaming recognition of weighted multi-step home activities, with
//! per-activity emotion tallies, a rolling mood window, and user-experience
//! forecasting for upcoming activities.
//!
//! The crate is organized around a small pipeline:
//!
//! 1. [`activity`] — activity definitions: weighted atomic steps paired with
//!    context attributes, a detection threshold, and core/start/end step sets.
//! 2. [`engine`] — a deterministic state machine that scores occurrences of
//!    those activities against a timestamped event stream.
//! 3. [`classify`] — tabular emotion classifiers (decision tree, random
//!    forest, naive Bayes, k-NN) plus confusion-matrix arithmetic.
//! 4. [`affect`] — per-occurrence emotion majority, emotion→valence mapping,
//!    and the rolling mood aggregate.
//! 5. [`ux`] — rule-based and learned predictors for the user experience of
//!    an activity given mood and outcome.
//! 6. [`sim`] / [`pipeline`] — seeded scenario simulation and the end-to-end
//!    run that ties everything into one report.
//!
//! Every path is deterministic under a fixed seed: identical inputs produce
//! byte-identical serialized outputs. See the `examples/` directory for one
//! runnable walkthrough per capability.

pub mod activity;
pub mod affect;
pub mod classify;
pub mod config;
pub mod emotion;
pub mod engine;
pub mod pipeline;
pub mod sim;
pub mod ux;

pub use activity::{ComplexActivityDef, DefinitionRegistry};
pub use affect::{EmotionCounters, MoodState, ValenceMap};
pub use classify::{ConfusionMatrix, Dataset, EmotionModel};
pub use config::RunConfig;
pub use emotion::{Emotion, Valence};
pub use engine::{Event, OccurrenceRecord, Outcome, RecognitionEngine};
pub use pipeline::PipelineReport;
pub use ux::{Polarity, UXModel};
