//! User-experience prediction from (mood, outcome).
//!
//! Two predictors share one evaluation path: a fixed four-row rule table,
//! and a learned conditional-probability table with Laplace-smoothed counts
//! and per-cell confidences. Mood, outcome, and experience are all binary
//! here; occurrence valences and outcomes are mapped down before they reach
//! this module.

use crate::classify::ConfusionMatrix;
use crate::emotion::Valence;
use crate::engine::Outcome;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Binary polarity shared by mood, outcome, and experience labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub const ALL: [Polarity; 2] = [Polarity::Positive, Polarity::Negative];

    pub fn label(self) -> &'static str {
        match self {
            Polarity::Positive => "Positive",
            Polarity::Negative => "Negative",
        }
    }

    pub fn parse_label(text: &str) -> Option<Polarity> {
        Polarity::ALL
            .iter()
            .copied()
            .find(|p| p.label().eq_ignore_ascii_case(text.trim()))
    }

    fn index(self) -> usize {
        match self {
            Polarity::Positive => 0,
            Polarity::Negative => 1,
        }
    }

    /// Mood valence as a polarity. A Neutral mood cannot arise from
    /// [`crate::affect::MoodState`] (its majority skips Neutral entries and
    /// its initial value is Negative); if one is supplied anyway it maps to
    /// Negative, the same conservative default.
    pub fn from_mood(valence: Valence) -> Polarity {
        match valence {
            Valence::Positive => Polarity::Positive,
            Valence::Negative | Valence::Neutral => Polarity::Negative,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl From<Outcome> for Polarity {
    fn from(outcome: Outcome) -> Polarity {
        match outcome {
            Outcome::Success => Polarity::Positive,
            Outcome::Failure => Polarity::Negative,
        }
    }
}

/// One labeled observation: the mood going in, the activity outcome, and the
/// experienced UX.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UXSample {
    pub mood: Polarity,
    pub outcome: Polarity,
    pub ux: Polarity,
}

/// Fixed rule table mapping (mood, outcome) to the expected experience.
/// All four rows are spelled out; as printed, the experience tracks the
/// outcome for every mood.
pub fn predict_rule(mood: Polarity, outcome: Polarity) -> Polarity {
    use Polarity::*;
    match (mood, outcome) {
        (Positive, Positive) => Positive,
        (Positive, Negative) => Negative,
        (Negative, Positive) => Positive,
        (Negative, Negative) => Negative,
    }
}

/// Learned conditional table P(ux | mood, outcome) with Laplace smoothing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UXModel {
    pub alpha: f64,
    /// counts[mood][outcome] = (ux-positive count, ux-negative count)
    counts: [[(u64, u64); 2]; 2],
    /// Label returned when a cell's confidences tie at exactly one half.
    pub tie_break: Polarity,
}

impl UXModel {
    /// Smoothed (positive, negative) confidences for one cell; they sum to 1
    /// and each lies strictly inside (0, 1).
    pub fn confidences(&self, mood: Polarity, outcome: Polarity) -> (f64, f64) {
        let (positive, negative) = self.counts[mood.index()][outcome.index()];
        let denominator = (positive + negative) as f64 + 2.0 * self.alpha;
        (
            (positive as f64 + self.alpha) / denominator,
            (negative as f64 + self.alpha) / denominator,
        )
    }

    pub fn cell_count(&self, mood: Polarity, outcome: Polarity) -> u64 {
        let (positive, negative) = self.counts[mood.index()][outcome.index()];
        positive + negative
    }
}

/// Trains the conditional table. `alpha` must be positive; smoothing keeps
/// unseen cells at an even 0.5/0.5 and every confidence strictly inside
/// (0, 1).
pub fn train_ux(samples: &[UXSample], alpha: f64) -> UXModel {
    assert!(alpha > 0.0, "smoothing must be positive");
    let mut counts = [[(0u64, 0u64); 2]; 2];
    for sample in samples {
        let cell = &mut counts[sample.mood.index()][sample.outcome.index()];
        match sample.ux {
            Polarity::Positive => cell.0 += 1,
            Polarity::Negative => cell.1 += 1,
        }
    }
    UXModel {
        alpha,
        counts,
        tie_break: Polarity::Negative,
    }
}

/// A prediction with its per-label confidences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UXPrediction {
    pub predicted: Polarity,
    pub confidence_positive: f64,
    pub confidence_negative: f64,
}

/// Looks up one cell and takes the argmax of its confidences; an exact tie
/// resolves to the model's `tie_break` label.
pub fn predict_ux(model: &UXModel, mood: Polarity, outcome: Polarity) -> UXPrediction {
    let (confidence_positive, confidence_negative) = model.confidences(mood, outcome);
    let predicted = if confidence_positive > confidence_negative {
        Polarity::Positive
    } else if confidence_negative > confidence_positive {
        Polarity::Negative
    } else {
        model.tie_break
    };
    UXPrediction {
        predicted,
        confidence_positive,
        confidence_negative,
    }
}

/// Two-class confusion matrix of any (mood, outcome) → ux predictor over
/// labeled samples.
pub fn evaluate_ux<F>(predict: F, samples: &[UXSample]) -> ConfusionMatrix
where
    F: Fn(Polarity, Polarity) -> Polarity,
{
    let mut matrix = ConfusionMatrix::new(vec!["Positive".into(), "Negative".into()]);
    for sample in samples {
        let predicted = predict(sample.mood, sample.outcome);
        matrix.record(predicted.index(), sample.ux.index());
    }
    matrix
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
#[error("ux sample file line {line}: {message}")]
pub struct UxFileError {
    pub line: usize,
    pub message: String,
}

/// Reads `mood,outcome,ux` CSV rows (header required, values Positive or
/// Negative).
pub fn read_ux_samples(text: &str) -> Result<Vec<UXSample>, UxFileError> {
    let mut samples = Vec::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "mood,outcome,ux" => {}
        Some((_, header)) => {
            return Err(UxFileError {
                line: 1,
                message: format!("expected header `mood,outcome,ux`, got `{}`", header.trim()),
            })
        }
        None => {
            return Err(UxFileError {
                line: 1,
                message: "empty file".into(),
            })
        }
    }
    for (index, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 3 {
            return Err(UxFileError {
                line: index + 1,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |field: &str, name: &str| {
            Polarity::parse_label(field).ok_or_else(|| UxFileError {
                line: index + 1,
                message: format!("bad {name} value `{field}`"),
            })
        };
        samples.push(UXSample {
            mood: parse(fields[0], "mood")?,
            outcome: parse(fields[1], "outcome")?,
            ux: parse(fields[2], "ux")?,
        });
    }
    Ok(samples)
}

pub fn write_ux_samples(samples: &[UXSample]) -> String {
    let mut out = String::from("mood,outcome,ux\n");
    for sample in samples {
        out.push_str(&format!(
            "{},{},{}\n",
            sample.mood, sample.outcome, sample.ux
        ));
    }
    out
}

/// One row of prediction output; confidences are empty for the rule
/// predictor, which carries no probabilistic meaning.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionRow {
    pub row: usize,
    pub ux: Polarity,
    pub prediction: Polarity,
    pub confidence_positive: Option<f64>,
    pub confidence_negative: Option<f64>,
    pub mood: Polarity,
    pub outcome: Polarity,
}

/// `row,ux,prediction,confidence_positive,confidence_negative,mood,outcome`
/// CSV, 1-based rows.
pub fn write_prediction_rows(rows: &[PredictionRow]) -> String {
    let mut out =
        String::from("row,ux,prediction,confidence_positive,confidence_negative,mood,outcome\n");
    for row in rows {
        let confidence = |value: Option<f64>| match value {
            Some(v) => format!("{v:.6}"),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.row,
            row.ux,
            row.prediction,
            confidence(row.confidence_positive),
            confidence(row.confidence_negative),
            row.mood,
            row.outcome
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Polarity::{Negative, Positive};

    #[test]
    fn rule_table_all_four_rows() {
        assert_eq!(predict_rule(Positive, Positive), Positive);
        assert_eq!(predict_rule(Positive, Negative), Negative);
        assert_eq!(predict_rule(Negative, Positive), Positive);
        assert_eq!(predict_rule(Negative, Negative), Negative);
        // literal property of the printed table: the output is the outcome
        for mood in Polarity::ALL {
            for outcome in Polarity::ALL {
                assert_eq!(predict_rule(mood, outcome), outcome);
            }
        }
    }

    #[test]
    fn smoothing_formula_direct_check() {
        let samples = vec![
            UXSample {
                mood: Positive,
                outcome: Positive,
                ux: Positive
            };
            8
        ];
        let model = train_ux(&samples, 1.0);
        let (positive, negative) = model.confidences(Positive, Positive);
        assert!((positive - 0.9).abs() < 1e-12);
        assert!((negative - 0.1).abs() < 1e-12);
    }

    #[test]
    fn unseen_cell_falls_back_to_even_confidences() {
        let samples = vec![UXSample {
            mood: Positive,
            outcome: Positive,
            ux: Positive,
        }];
        let model = train_ux(&samples, 1.0);
        let (positive, negative) = model.confidences(Negative, Positive);
        assert_eq!(positive, 0.5);
        assert_eq!(negative, 0.5);
        let prediction = predict_ux(&model, Negative, Positive);
        assert_eq!(prediction.predicted, Negative); // tie resolves conservatively
    }

    #[test]
    fn argmax_follows_the_larger_confidence() {
        let mut samples = Vec::new();
        // cell (Positive, Negative): 1 positive, 9 negative → confidences
        // (2/12, 10/12) ≈ (0.167, 0.833)
        samples.push(UXSample {
            mood: Positive,
            outcome: Negative,
            ux: Positive,
        });
        samples.extend(
            std::iter::repeat(UXSample {
                mood: Positive,
                outcome: Negative,
                ux: Negative,
            })
            .take(9),
        );
        let model = train_ux(&samples, 1.0);
        let prediction = predict_ux(&model, Positive, Negative);
        assert_eq!(prediction.predicted, Negative);
        assert!(prediction.confidence_negative > 0.8);
        assert!((prediction.confidence_positive + prediction.confidence_negative - 1.0).abs() < 1e-12);
    }

    /// Reconstructs a 201-sample training set whose per-cell majorities
    /// follow the reference confidence pattern (positive-predicting cells for
    /// positive outcomes, negative-predicting for negative) and whose
    /// pooled prediction/label counts match the reference 2×2 grid
    /// ([[68,26],[28,79]]); the trained argmax must then reproduce the
    /// pattern on all four cells.
    #[test]
    fn reconstructed_training_set_reproduces_the_cell_pattern() {
        let mut samples = Vec::new();
        let mut push = |mood, outcome, ux, count: usize| {
            samples.extend(std::iter::repeat(UXSample { mood, outcome, ux }).take(count));
        };
        // positive-predicting cells: 68 true-positive, 26 true-negative
        push(Positive, Positive, Positive, 40);
        push(Negative, Positive, Positive, 28);
        push(Positive, Positive, Negative, 13);
        push(Negative, Positive, Negative, 13);
        // negative-predicting cells: 28 true-positive, 79 true-negative
        push(Positive, Negative, Positive, 14);
        push(Negative, Negative, Positive, 14);
        push(Positive, Negative, Negative, 40);
        push(Negative, Negative, Negative, 39);
        assert_eq!(samples.len(), 201);
        let true_positive = samples.iter().filter(|s| s.ux == Positive).count();
        assert_eq!(true_positive, 96);

        let mut rng = ChaCha8Rng::seed_from_u64(13);
        samples.shuffle(&mut rng); // counting is order-free

        let model = train_ux(&samples, 1.0);
        assert_eq!(predict_ux(&model, Positive, Positive).predicted, Positive);
        assert_eq!(predict_ux(&model, Negative, Positive).predicted, Positive);
        assert_eq!(predict_ux(&model, Positive, Negative).predicted, Negative);
        assert_eq!(predict_ux(&model, Negative, Negative).predicted, Negative);
    }

    #[test]
    fn evaluate_perfect_labels_scores_one() {
        let samples: Vec<UXSample> = Polarity::ALL
            .iter()
            .flat_map(|&mood| {
                Polarity::ALL.iter().map(move |&outcome| UXSample {
                    mood,
                    outcome,
                    ux: predict_rule(mood, outcome),
                })
            })
            .collect();
        let matrix = evaluate_ux(predict_rule, &samples);
        assert!((matrix.accuracy() - 1.0).abs() < 1e-12);
        assert_eq!(matrix.total(), 4);
    }

    #[test]
    fn sample_file_round_trips_and_reports_bad_lines() {
        let samples = vec![
            UXSample {
                mood: Positive,
                outcome: Negative,
                ux: Negative,
            },
            UXSample {
                mood: Negative,
                outcome: Positive,
                ux: Positive,
            },
        ];
        let text = write_ux_samples(&samples);
        assert_eq!(read_ux_samples(&text).unwrap(), samples);

        let err = read_ux_samples("mood,outcome,ux\nPositive,Sideways,Negative\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("Sideways"));

        let err = read_ux_samples("a,b,c\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    proptest! {
        #[test]
        fn confidences_sum_to_one_and_match_argmax(
            cells in proptest::collection::vec((0u64..200, 0u64..200), 4),
            alpha in 0.25f64..4.0,
        ) {
            let mut samples = Vec::new();
            let mut cell_iter = cells.iter();
            for mood in Polarity::ALL {
                for outcome in Polarity::ALL {
                    let &(positive, negative) = cell_iter.next().unwrap();
                    for _ in 0..positive {
                        samples.push(UXSample { mood, outcome, ux: Polarity::Positive });
                    }
                    for _ in 0..negative {
                        samples.push(UXSample { mood, outcome, ux: Polarity::Negative });
                    }
                }
            }
            let model = train_ux(&samples, alpha);
            for mood in Polarity::ALL {
                for outcome in Polarity::ALL {
                    let (cp, cn) = model.confidences(mood, outcome);
                    prop_assert!((cp + cn - 1.0).abs() < 1e-9);
                    prop_assert!(cp > 0.0 && cp < 1.0);
                    prop_assert!(cn > 0.0 && cn < 1.0);
                    let prediction = predict_ux(&model, mood, outcome);
                    if cp > cn {
                        prop_assert_eq!(prediction.predicted, Polarity::Positive);
                    } else if cn > cp {
                        prop_assert_eq!(prediction.predicted, Polarity::Negative);
                    } else {
                        prop_assert_eq!(prediction.predicted, model.tie_break);
                    }
                }
            }
        }

        #[test]
        fn trained_confidences_converge_to_cell_probabilities(
            probability in 0.05f64..0.95,
            seed in proptest::num::u64::ANY,
        ) {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<UXSample> = (0..10_000)
                .map(|_| UXSample {
                    mood: Polarity::Positive,
                    outcome: Polarity::Positive,
                    ux: if rng.random::<f64>() < probability {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    },
                })
                .collect();
            let model = train_ux(&samples, 1.0);
            let (cp, _) = model.confidences(Polarity::Positive, Polarity::Positive);
            prop_assert!((cp - probability).abs() < 0.05);
        }

        #[test]
        fn evaluation_conserves_sample_count(
            raw in proptest::collection::vec((0usize..2, 0usize..2, 0usize..2), 1..120),
        ) {
            let samples: Vec<UXSample> = raw
                .iter()
                .map(|&(m, o, u)| UXSample {
                    mood: Polarity::ALL[m],
                    outcome: Polarity::ALL[o],
                    ux: Polarity::ALL[u],
                })
                .collect();
            let matrix = evaluate_ux(predict_rule, &samples);
            prop_assert_eq!(matrix.total(), samples.len() as u64);
            let accuracy = matrix.accuracy();
            prop_assert!((0.0..=1.0).contains(&accuracy));
        }
    }
}
