//! Shared emotion vocabulary: the seven facial-expression classes and the
//! positive/negative/neutral polarity assigned to them.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The seven basic emotional states, in canonical order.
///
/// The order is load-bearing: majority votes and argmax scans resolve ties to
/// the lowest canonical index, and numeric dataset label codes map by
/// position (0 = Angry … 6 = Neutral).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Emotion {
    Angry,
    Disgust,
    Fear,
    Happy,
    Sad,
    Surprise,
    Neutral,
}

impl Emotion {
    pub const COUNT: usize = 7;

    pub const ALL: [Emotion; 7] = [
        Emotion::Angry,
        Emotion::Disgust,
        Emotion::Fear,
        Emotion::Happy,
        Emotion::Sad,
        Emotion::Surprise,
        Emotion::Neutral,
    ];

    /// Canonical index, stable across runs.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Emotion> {
        Emotion::ALL.get(index).copied()
    }

    /// Numeric class code used by pixel-grid emotion datasets (0 = Angry,
    /// 1 = Disgust, 2 = Fear, 3 = Happy, 4 = Sad, 5 = Surprise, 6 = Neutral).
    pub fn from_class_code(code: u8) -> Option<Emotion> {
        Emotion::from_index(code as usize)
    }

    pub fn label(self) -> &'static str {
        match self {
            Emotion::Angry => "Angry",
            Emotion::Disgust => "Disgust",
            Emotion::Fear => "Fear",
            Emotion::Happy => "Happy",
            Emotion::Sad => "Sad",
            Emotion::Surprise => "Surprise",
            Emotion::Neutral => "Neutral",
        }
    }

    /// Case-insensitive label lookup.
    pub fn parse_label(text: &str) -> Option<Emotion> {
        Emotion::ALL
            .iter()
            .copied()
            .find(|e| e.label().eq_ignore_ascii_case(text.trim()))
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Polarity of an emotion or of a whole activity occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valence {
    Positive,
    Negative,
    Neutral,
}

impl Valence {
    pub fn label(self) -> &'static str {
        match self {
            Valence::Positive => "Positive",
            Valence::Negative => "Negative",
            Valence::Neutral => "Neutral",
        }
    }

    pub fn parse_label(text: &str) -> Option<Valence> {
        [Valence::Positive, Valence::Negative, Valence::Neutral]
            .iter()
            .copied()
            .find(|v| v.label().eq_ignore_ascii_case(text.trim()))
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
