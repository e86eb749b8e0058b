//! Emotion classification over fixed-dimension feature vectors.
//!
//! Four learners are implemented from scratch — decision tree, random
//! forest, Gaussian naive Bayes, and k-NN — behind one [`EmotionModel`]
//! surface, together with dataset ingestion, z-score outlier removal, the
//! stratified train/test split, confusion-matrix arithmetic, and the
//! side-by-side learner comparison.
//!
//! Training is deterministic for a fixed seed; trained models are immutable
//! and safe to share across threads for prediction.

mod bayes;
mod confusion;
mod dataset;
mod forest;
mod knn;
mod tree;

pub mod synth;

pub use bayes::BayesParams;
pub use confusion::{ConfusionMatrix, MetricsError};
pub use dataset::{
    ingest_dataset, remove_outliers, split, write_generic_csv, DataError, Dataset, DatasetFormat,
    LabeledSample,
};
pub use forest::ForestParams;
pub use knn::KnnParams;
pub use tree::TreeParams;

use crate::emotion::Emotion;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnerKind {
    DecisionTree,
    RandomForest,
    NaiveBayes,
    #[serde(rename = "knn")]
    KNearest,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 4] = [
        LearnerKind::DecisionTree,
        LearnerKind::RandomForest,
        LearnerKind::NaiveBayes,
        LearnerKind::KNearest,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LearnerKind::DecisionTree => "decision-tree",
            LearnerKind::RandomForest => "random-forest",
            LearnerKind::NaiveBayes => "naive-bayes",
            LearnerKind::KNearest => "knn",
        }
    }
}

impl std::fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for LearnerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<LearnerKind, String> {
        match s {
            "decision-tree" | "dt" => Ok(LearnerKind::DecisionTree),
            "random-forest" | "rf" => Ok(LearnerKind::RandomForest),
            "naive-bayes" | "nb" => Ok(LearnerKind::NaiveBayes),
            "knn" => Ok(LearnerKind::KNearest),
            other => Err(format!("unknown learner `{other}`")),
        }
    }
}

/// A learner choice with its hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LearnerSpec {
    DecisionTree(TreeParams),
    RandomForest(ForestParams),
    NaiveBayes(BayesParams),
    #[serde(rename = "knn")]
    KNearest(KnnParams),
}

impl LearnerSpec {
    pub fn default_for(kind: LearnerKind) -> LearnerSpec {
        match kind {
            LearnerKind::DecisionTree => LearnerSpec::DecisionTree(TreeParams::default()),
            LearnerKind::RandomForest => LearnerSpec::RandomForest(ForestParams::default()),
            LearnerKind::NaiveBayes => LearnerSpec::NaiveBayes(BayesParams::default()),
            LearnerKind::KNearest => LearnerSpec::KNearest(KnnParams::default()),
        }
    }

    pub fn kind(&self) -> LearnerKind {
        match self {
            LearnerSpec::DecisionTree(_) => LearnerKind::DecisionTree,
            LearnerSpec::RandomForest(_) => LearnerKind::RandomForest,
            LearnerSpec::NaiveBayes(_) => LearnerKind::NaiveBayes,
            LearnerSpec::KNearest(_) => LearnerKind::KNearest,
        }
    }
}

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Data(#[from] DataError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
enum ModelInner {
    Tree(tree::TreeModel),
    Forest(forest::ForestModel),
    Bayes(bayes::BayesModel),
    Knn(knn::KnnModel),
}

/// A trained emotion classifier. Immutable; prediction is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmotionModel {
    pub spec: LearnerSpec,
    pub seed: u64,
    pub dimension: usize,
    inner: ModelInner,
}

impl EmotionModel {
    pub fn kind(&self) -> LearnerKind {
        self.spec.kind()
    }

    pub fn predict(&self, features: &[f64]) -> Result<Emotion, TrainError> {
        if features.len() != self.dimension {
            return Err(TrainError::DimensionMismatch {
                expected: self.dimension,
                got: features.len(),
            });
        }
        Ok(match &self.inner {
            ModelInner::Tree(m) => m.predict(features),
            ModelInner::Forest(m) => m.predict(features),
            ModelInner::Bayes(m) => m.predict(features),
            ModelInner::Knn(m) => m.predict(features),
        })
    }
}

/// Trains one learner on a dataset. A single-class training set is fine (the
/// result is a constant predictor); an empty one is rejected.
pub fn train(spec: &LearnerSpec, data: &Dataset, seed: u64) -> Result<EmotionModel, TrainError> {
    if data.is_empty() {
        return Err(TrainError::EmptyTrainingSet);
    }
    let x: Vec<&[f64]> = data.samples.iter().map(|s| s.features.as_slice()).collect();
    let y: Vec<usize> = data.samples.iter().map(|s| s.label.index()).collect();

    let inner = match spec {
        LearnerSpec::DecisionTree(params) => {
            let grower = tree::Grower {
                x: &x,
                y: &y,
                params: *params,
                features_per_split: data.dimension,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ModelInner::Tree(grower.grow((0..x.len()).collect(), &mut rng))
        }
        LearnerSpec::RandomForest(params) => {
            ModelInner::Forest(forest::grow_forest(&x, &y, params, seed))
        }
        LearnerSpec::NaiveBayes(params) => ModelInner::Bayes(bayes::fit_bayes(&x, &y, params)),
        LearnerSpec::KNearest(params) => ModelInner::Knn(knn::fit_knn(&x, &y, params)),
    };
    Ok(EmotionModel {
        spec: spec.clone(),
        seed,
        dimension: data.dimension,
        inner,
    })
}

/// Runs a model over a test set and tallies the seven-class confusion grid.
pub fn evaluate(model: &EmotionModel, test: &Dataset) -> Result<ConfusionMatrix, TrainError> {
    if test.dimension != model.dimension {
        return Err(TrainError::DimensionMismatch {
            expected: model.dimension,
            got: test.dimension,
        });
    }
    let labels: Vec<String> = Emotion::ALL.iter().map(|e| e.label().to_string()).collect();
    let mut matrix = ConfusionMatrix::new(labels);
    for sample in &test.samples {
        let predicted = model.predict(&sample.features)?;
        matrix.record(predicted.index(), sample.label.index());
    }
    Ok(matrix)
}

/// One learner's row in the side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub learner: LearnerKind,
    pub accuracy: f64,
    pub lowest_precision: f64,
    pub highest_precision: f64,
}

/// Comparison of the four learners over one shared preprocessed split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerComparison {
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
    pub rows: Vec<ComparisonRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub train_fraction: f64,
    pub z_max: f64,
    pub specs: Vec<LearnerSpec>,
}

impl Default for CompareConfig {
    fn default() -> CompareConfig {
        CompareConfig {
            train_fraction: 0.8,
            z_max: 4.0,
            specs: LearnerKind::ALL
                .iter()
                .map(|&k| LearnerSpec::default_for(k))
                .collect(),
        }
    }
}

/// Preprocess → outlier removal → one shared split → train and evaluate each
/// learner. Lowest/highest class precision are taken over the classes that
/// actually occur in the test set.
pub fn compare_learners(
    data: &Dataset,
    config: &CompareConfig,
    seed: u64,
) -> Result<LearnerComparison, TrainError> {
    let filtered = remove_outliers(data, config.z_max);
    let (train_set, test_set) = split(&filtered, config.train_fraction, seed)?;

    let mut rows = Vec::with_capacity(config.specs.len());
    for spec in &config.specs {
        let model = train(spec, &train_set, seed)?;
        let matrix = evaluate(&model, &test_set)?;
        let precisions: Vec<f64> = (0..Emotion::COUNT)
            .filter(|&class| matrix.actual_count(class) > 0)
            .map(|class| matrix.precision(class))
            .collect();
        let lowest = precisions.iter().copied().fold(f64::INFINITY, f64::min);
        let highest = precisions.iter().copied().fold(0.0, f64::max);
        rows.push(ComparisonRow {
            learner: spec.kind(),
            accuracy: matrix.accuracy(),
            lowest_precision: if lowest.is_finite() { lowest } else { 0.0 },
            highest_precision: highest,
        });
    }
    Ok(LearnerComparison {
        seed,
        train_size: train_set.len(),
        test_size: test_set.len(),
        rows,
    })
}

impl LearnerComparison {
    /// `learner,accuracy,lowest_precision,highest_precision` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("learner,accuracy,lowest_precision,highest_precision\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.6},{:.6},{:.6}\n",
                row.learner, row.accuracy, row.lowest_precision, row.highest_precision
            ));
        }
        out
    }

    /// Aligned text table with percentages.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<16} {:>10} {:>18} {:>19}\n",
            "learner", "accuracy", "lowest precision", "highest precision"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<16} {:>9.2}% {:>17.2}% {:>18.2}%\n",
                row.learner.label(),
                row.accuracy * 100.0,
                row.lowest_precision * 100.0,
                row.highest_precision * 100.0
            ));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    model: EmotionModel,
}

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("bad model file: {0}")]
    Format(String),
    #[error("unsupported model format version {0}")]
    Version(u32),
}

/// Self-describing JSON serialization of a trained model.
pub fn save_model(model: &EmotionModel) -> String {
    let file = ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        model: model.clone(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("model serializes");
    out.push('\n');
    out
}

pub fn load_model(source: &[u8]) -> Result<EmotionModel, ModelFileError> {
    let file: ModelFile =
        serde_json::from_slice(source).map_err(|e| ModelFileError::Format(e.to_string()))?;
    if file.format_version != MODEL_FORMAT_VERSION {
        return Err(ModelFileError::Version(file.format_version));
    }
    Ok(file.model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs(per_class: usize, seed: u64) -> Dataset {
        synth::gaussian_blobs(per_class, 8, 1.0, seed)
    }

    #[test]
    fn all_learners_separate_blobs() {
        let data = blobs(30, 3);
        let (train_set, test_set) = split(&data, 0.8, 3).unwrap();
        for kind in LearnerKind::ALL {
            let spec = LearnerSpec::default_for(kind);
            let model = train(&spec, &train_set, 3).unwrap();
            let matrix = evaluate(&model, &test_set).unwrap();
            assert_eq!(matrix.total(), test_set.len() as u64);
            assert!(
                matrix.accuracy() > 0.9,
                "{kind} accuracy {:.3}",
                matrix.accuracy()
            );
        }
    }

    #[test]
    fn forest_of_one_matches_plain_tree_predictions() {
        let data = blobs(20, 11);
        let (train_set, test_set) = split(&data, 0.8, 11).unwrap();
        for seed in [0u64, 1, 2, 42, 1234] {
            let tree = train(
                &LearnerSpec::DecisionTree(TreeParams::default()),
                &train_set,
                seed,
            )
            .unwrap();
            let forest = train(
                &LearnerSpec::RandomForest(ForestParams {
                    trees: 1,
                    bootstrap: false,
                    features_per_split: Some(train_set.dimension),
                    tree: TreeParams::default(),
                }),
                &train_set,
                seed,
            )
            .unwrap();
            for sample in &test_set.samples {
                assert_eq!(
                    tree.predict(&sample.features).unwrap(),
                    forest.predict(&sample.features).unwrap(),
                    "seed {seed}"
                );
            }
        }
    }

    #[test]
    fn knn_with_k_one_recovers_its_training_set() {
        let data = blobs(15, 7);
        let model = train(&LearnerSpec::KNearest(KnnParams { k: 1 }), &data, 7).unwrap();
        let matrix = evaluate(&model, &data).unwrap();
        assert!((matrix.accuracy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bayes_on_two_separated_blobs_is_nearly_perfect() {
        // seeded oracle: two well-separated gaussian blobs, 200 samples
        let data = synth::two_blobs(100, 4, 6.0, 1.0, 99);
        let model = train(&LearnerSpec::NaiveBayes(BayesParams::default()), &data, 0).unwrap();
        let matrix = evaluate(&model, &data).unwrap();
        assert!(
            matrix.accuracy() >= 0.95,
            "accuracy {:.3}",
            matrix.accuracy()
        );
    }

    #[test]
    fn perfect_predictor_scores_full_marks() {
        let data = blobs(10, 5);
        let model = train(&LearnerSpec::KNearest(KnnParams { k: 1 }), &data, 5).unwrap();
        let matrix = evaluate(&model, &data).unwrap();
        assert!((matrix.accuracy() - 1.0).abs() < 1e-12);
        for class in 0..Emotion::COUNT {
            if matrix.actual_count(class) > 0 {
                assert!((matrix.precision(class) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_training_set_is_rejected() {
        let data = blobs(5, 1);
        let empty = Dataset {
            samples: vec![],
            dimension: data.dimension,
            provenance: "empty".into(),
        };
        assert!(matches!(
            train(&LearnerSpec::default_for(LearnerKind::NaiveBayes), &empty, 0),
            Err(TrainError::EmptyTrainingSet)
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let data = blobs(5, 1);
        let model = train(&LearnerSpec::default_for(LearnerKind::NaiveBayes), &data, 0).unwrap();
        assert!(matches!(
            model.predict(&[1.0, 2.0]),
            Err(TrainError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn comparison_has_one_row_per_learner_and_is_deterministic() {
        let data = blobs(12, 21);
        let report_a = compare_learners(&data, &CompareConfig::default(), 21).unwrap();
        let report_b = compare_learners(&data, &CompareConfig::default(), 21).unwrap();
        assert_eq!(report_a, report_b);
        assert_eq!(report_a.rows.len(), 4);
        for row in &report_a.rows {
            assert!((0.0..=1.0).contains(&row.accuracy));
            assert!(row.lowest_precision <= row.highest_precision + 1e-12);
        }
        assert_eq!(report_a.to_csv(), report_b.to_csv());
        assert!(report_a
            .to_csv()
            .starts_with("learner,accuracy,lowest_precision,highest_precision\n"));
    }

    #[test]
    fn models_round_trip_through_the_file_format() {
        let data = blobs(8, 2);
        for kind in LearnerKind::ALL {
            let model = train(&LearnerSpec::default_for(kind), &data, 2).unwrap();
            let text = save_model(&model);
            let back = load_model(text.as_bytes()).unwrap();
            assert_eq!(model, back);
            assert_eq!(text, save_model(&back));
        }
    }

    #[test]
    fn model_file_version_is_checked() {
        let data = blobs(5, 2);
        let model = train(&LearnerSpec::default_for(LearnerKind::NaiveBayes), &data, 2).unwrap();
        let text = save_model(&model).replace("\"format_version\": 1", "\"format_version\": 9");
        assert!(matches!(
            load_model(text.as_bytes()),
            Err(ModelFileError::Version(9))
        ));
    }
}
