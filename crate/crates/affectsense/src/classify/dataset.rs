//! Labeled feature-vector datasets: CSV ingestion, z-score outlier removal,
//! and the stratified train/test split.

use crate::emotion::Emotion;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One fixed-dimension numeric feature vector with its emotion label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub features: Vec<f64>,
    pub label: Emotion,
}

/// A uniform-dimension collection of labeled samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub samples: Vec<LabeledSample>,
    pub dimension: usize,
    pub provenance: String,
}

impl Dataset {
    /// Builds a dataset, enforcing uniform dimension and finite features.
    pub fn new(samples: Vec<LabeledSample>, provenance: impl Into<String>) -> Result<Dataset, DataError> {
        if samples.is_empty() {
            return Err(DataError::Empty);
        }
        let dimension = samples[0].features.len();
        if dimension == 0 {
            return Err(DataError::ZeroDimension);
        }
        for (i, sample) in samples.iter().enumerate() {
            if sample.features.len() != dimension {
                return Err(DataError::Ragged {
                    row: i + 1,
                    expected: dimension,
                    got: sample.features.len(),
                });
            }
            if sample.features.iter().any(|f| !f.is_finite()) {
                return Err(DataError::NonFinite { row: i + 1 });
            }
        }
        Ok(Dataset {
            samples,
            dimension,
            provenance: provenance.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample counts per emotion, in canonical order.
    pub fn class_counts(&self) -> [usize; Emotion::COUNT] {
        let mut counts = [0usize; Emotion::COUNT];
        for sample in &self.samples {
            counts[sample.label.index()] += 1;
        }
        counts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetFormat {
    /// Header `emotion,pixels,Usage`; emotion is a numeric class code and
    /// pixels is one space-separated field of integers.
    FerCsv,
    /// Headerless `label,f1,...,fD` rows with textual emotion labels.
    GenericCsv,
}

impl std::str::FromStr for DatasetFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<DatasetFormat, String> {
        match s {
            "fer-csv" => Ok(DatasetFormat::FerCsv),
            "generic-csv" => Ok(DatasetFormat::GenericCsv),
            other => Err(format!("unknown dataset format `{other}`")),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("dataset is empty")]
    Empty,
    #[error("samples must have at least one feature")]
    ZeroDimension,
    #[error("row {row}: expected {expected} features, got {got}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row}: unknown label `{label}`")]
    UnknownLabel { row: usize, label: String },
    #[error("row {row}: non-finite feature value")]
    NonFinite { row: usize },
    #[error("row {row}: {message}")]
    BadRow { row: usize, message: String },
    #[error("train fraction must be in (0,1), got {0}")]
    BadFraction(f64),
    #[error("need at least two samples to split")]
    TooSmall,
    #[error("csv error: {0}")]
    Csv(String),
}

/// Reads a labeled dataset from CSV bytes. Labels map onto the seven
/// emotions, the dimension is inferred from the first row and enforced on
/// the rest.
pub fn ingest_dataset(source: &[u8], format: DatasetFormat) -> Result<Dataset, DataError> {
    match format {
        DatasetFormat::FerCsv => ingest_fer(source),
        DatasetFormat::GenericCsv => ingest_generic(source),
    }
}

fn ingest_fer(source: &[u8]) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(source);
    let mut samples = Vec::new();
    let mut dimension: Option<usize> = None;
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| DataError::Csv(e.to_string()))?;
        if record.len() < 2 {
            return Err(DataError::BadRow {
                row,
                message: format!("expected emotion,pixels[,usage], got {} fields", record.len()),
            });
        }
        let code: u8 = record[0].trim().parse().map_err(|_| DataError::UnknownLabel {
            row,
            label: record[0].to_string(),
        })?;
        let label = Emotion::from_class_code(code).ok_or_else(|| DataError::UnknownLabel {
            row,
            label: record[0].to_string(),
        })?;
        let mut features = Vec::new();
        for pixel in record[1].split_whitespace() {
            let value: f64 = pixel.parse().map_err(|_| DataError::BadRow {
                row,
                message: format!("bad pixel value `{pixel}`"),
            })?;
            features.push(value);
        }
        if let Some(d) = dimension {
            if features.len() != d {
                return Err(DataError::Ragged {
                    row,
                    expected: d,
                    got: features.len(),
                });
            }
        } else {
            if features.is_empty() {
                return Err(DataError::ZeroDimension);
            }
            dimension = Some(features.len());
        }
        samples.push(LabeledSample { features, label });
    }
    let count = samples.len();
    Dataset::new(samples, format!("fer-csv ({count} rows)"))
}

fn ingest_generic(source: &[u8]) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut samples = Vec::new();
    let mut dimension: Option<usize> = None;
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| DataError::Csv(e.to_string()))?;
        if record.len() < 2 {
            return Err(DataError::BadRow {
                row,
                message: format!("expected label,f1,...,fD, got {} fields", record.len()),
            });
        }
        let label = Emotion::parse_label(&record[0]).ok_or_else(|| DataError::UnknownLabel {
            row,
            label: record[0].to_string(),
        })?;
        let mut features = Vec::with_capacity(record.len() - 1);
        for field in record.iter().skip(1) {
            let value: f64 = field.trim().parse().map_err(|_| DataError::BadRow {
                row,
                message: format!("bad feature value `{field}`"),
            })?;
            features.push(value);
        }
        if let Some(d) = dimension {
            if features.len() != d {
                return Err(DataError::Ragged {
                    row,
                    expected: d,
                    got: features.len(),
                });
            }
        } else {
            dimension = Some(features.len());
        }
        samples.push(LabeledSample { features, label });
    }
    let count = samples.len();
    Dataset::new(samples, format!("generic-csv ({count} rows)"))
}

/// Canonical generic-csv serialization of a dataset.
pub fn write_generic_csv(ds: &Dataset) -> String {
    let mut out = String::new();
    for sample in &ds.samples {
        out.push_str(sample.label.label());
        for value in &sample.features {
            out.push(',');
            out.push_str(&format!("{value}"));
        }
        out.push('\n');
    }
    out
}

/// Single-pass z-score filter: drops every sample with any feature beyond
/// `z_max` standard deviations from that feature's dataset mean. A
/// zero-variance feature contributes z = 0 for every sample and never
/// triggers removal. Surviving samples are unchanged.
pub fn remove_outliers(ds: &Dataset, z_max: f64) -> Dataset {
    debug_assert!(z_max > 0.0, "z_max must be positive");
    let n = ds.len() as f64;
    let d = ds.dimension;

    let mut means = vec![0.0; d];
    for sample in &ds.samples {
        for (m, &x) in means.iter_mut().zip(&sample.features) {
            *m += x;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    let mut stds = vec![0.0; d];
    for sample in &ds.samples {
        for (j, &x) in sample.features.iter().enumerate() {
            let delta = x - means[j];
            stds[j] += delta * delta;
        }
    }
    for s in &mut stds {
        *s = (*s / n).sqrt();
    }

    let survivors: Vec<LabeledSample> = ds
        .samples
        .iter()
        .filter(|sample| {
            sample.features.iter().enumerate().all(|(j, &x)| {
                stds[j] == 0.0 || (x - means[j]).abs() <= z_max * stds[j]
            })
        })
        .cloned()
        .collect();

    Dataset {
        samples: survivors,
        dimension: ds.dimension,
        provenance: ds.provenance.clone(),
    }
}

/// Seeded stratified split. Per-class train counts come from a
/// largest-remainder allocation of `round(train_fraction * n)` seats, so the
/// overall ratio is exact no matter how classes are balanced; the split is
/// then nudged (if necessary) so neither side is empty. Disjoint, union is
/// the input, reproducible for a fixed seed.
pub fn split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset), DataError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DataError::BadFraction(train_fraction));
    }
    if ds.len() < 2 {
        return Err(DataError::TooSmall);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); Emotion::COUNT];
    for (i, sample) in ds.samples.iter().enumerate() {
        per_class[sample.label.index()].push(i);
    }
    for indices in &mut per_class {
        indices.shuffle(&mut rng);
    }

    let total_train = ((train_fraction * ds.len() as f64).round() as usize)
        .clamp(1, ds.len() - 1);

    // largest-remainder seat allocation across classes
    let mut base: Vec<usize> = Vec::with_capacity(Emotion::COUNT);
    let mut remainders: Vec<(usize, f64)> = Vec::new();
    for (class, indices) in per_class.iter().enumerate() {
        let quota = train_fraction * indices.len() as f64;
        let floor = (quota.floor() as usize).min(indices.len());
        base.push(floor);
        remainders.push((class, quota - floor as f64));
    }
    let mut assigned: usize = base.iter().sum();
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut cursor = 0;
    while assigned < total_train && cursor < remainders.len() {
        let class = remainders[cursor].0;
        if base[class] < per_class[class].len() {
            base[class] += 1;
            assigned += 1;
        }
        cursor += 1;
        if cursor == remainders.len() && assigned < total_train {
            cursor = 0; // remainder pass exhausted; keep topping up round-robin
        }
    }
    while assigned > total_train {
        let class = base
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b > 0)
            .max_by_key(|&(_, &b)| b)
            .map(|(c, _)| c)
            .expect("some class has train samples");
        base[class] -= 1;
        assigned -= 1;
    }

    let mut train = Vec::with_capacity(total_train);
    let mut test = Vec::with_capacity(ds.len() - total_train);
    for (class, indices) in per_class.iter().enumerate() {
        for (rank, &index) in indices.iter().enumerate() {
            if rank < base[class] {
                train.push(ds.samples[index].clone());
            } else {
                test.push(ds.samples[index].clone());
            }
        }
    }

    let make = |samples: Vec<LabeledSample>| Dataset {
        samples,
        dimension: ds.dimension,
        provenance: ds.provenance.clone(),
    };
    Ok((make(train), make(test)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(label: Emotion, features: &[f64]) -> LabeledSample {
        LabeledSample {
            features: features.to_vec(),
            label,
        }
    }

    #[test]
    fn fer_rows_map_code_three_to_happy() {
        let pixels: Vec<String> = vec!["0".to_string(); 2304];
        let text = format!("emotion,pixels,Usage\n3,{},Training\n", pixels.join(" "));
        let ds = ingest_dataset(text.as_bytes(), DatasetFormat::FerCsv).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.dimension, 2304);
        assert_eq!(ds.samples[0].label, Emotion::Happy);
    }

    #[test]
    fn fer_rejects_unknown_class_code() {
        let err = ingest_dataset(b"emotion,pixels,Usage\n9,0 0 0,Training\n", DatasetFormat::FerCsv)
            .unwrap_err();
        assert!(matches!(err, DataError::UnknownLabel { row: 1, .. }));
    }

    #[test]
    fn generic_rows_parse_textual_labels() {
        let ds = ingest_dataset(b"Happy,0.1,0.2\nsad,1.5,-2.0\n", DatasetFormat::GenericCsv).unwrap();
        assert_eq!(ds.dimension, 2);
        assert_eq!(ds.samples[0].label, Emotion::Happy);
        assert_eq!(ds.samples[1].label, Emotion::Sad);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = ingest_dataset(b"Happy,0.1,0.2\nSad,1.0\n", DatasetFormat::GenericCsv).unwrap_err();
        assert!(matches!(
            err,
            DataError::Ragged {
                row: 2,
                expected: 2,
                got: 1
            }
        ));
        let fer = format!("emotion,pixels,Usage\n0,1 2 3,x\n1,1 2,x\n");
        let err = ingest_dataset(fer.as_bytes(), DatasetFormat::FerCsv).unwrap_err();
        assert!(matches!(err, DataError::Ragged { row: 2, .. }));
    }

    #[test]
    fn empty_file_is_rejected() {
        assert_eq!(
            ingest_dataset(b"", DatasetFormat::GenericCsv).unwrap_err(),
            DataError::Empty
        );
        assert_eq!(
            ingest_dataset(b"emotion,pixels,Usage\n", DatasetFormat::FerCsv).unwrap_err(),
            DataError::Empty
        );
    }

    #[test]
    fn generic_csv_round_trips() {
        let ds = ingest_dataset(b"Happy,0.1,0.2\nSad,1.5,-2\n", DatasetFormat::GenericCsv).unwrap();
        let text = write_generic_csv(&ds);
        let back = ingest_dataset(text.as_bytes(), DatasetFormat::GenericCsv).unwrap();
        assert_eq!(ds.samples, back.samples);
        assert_eq!(text, write_generic_csv(&back));
    }

    #[test]
    fn identical_samples_survive_outlier_pass() {
        let ds = Dataset::new(
            vec![sample(Emotion::Happy, &[1.0, 2.0]); 10],
            "test",
        )
        .unwrap();
        let filtered = remove_outliers(&ds, 4.0);
        assert_eq!(filtered.len(), 10);
        assert_eq!(filtered.samples, ds.samples);
    }

    #[test]
    fn extreme_sample_is_removed() {
        // hand oracle: 100 samples at 0 plus one at 1e6 on one feature.
        // mean = 1e6/101 ≈ 9900.99, population std ≈ 99010, so the extreme
        // sample sits at z ≈ 10 and everything else at z ≈ 0.1.
        let mut samples = vec![sample(Emotion::Neutral, &[0.0, 5.0]); 100];
        samples.push(sample(Emotion::Neutral, &[1e6, 5.0]));
        let ds = Dataset::new(samples, "test").unwrap();

        let mean: f64 = 1e6 / 101.0;
        let variance: f64 =
            (100.0 * mean * mean + (1e6 - mean) * (1e6 - mean)) / 101.0;
        let z_extreme = (1e6 - mean) / variance.sqrt();
        assert!(z_extreme > 4.0 && z_extreme < 11.0, "oracle z = {z_extreme}");

        let filtered = remove_outliers(&ds, 4.0);
        assert_eq!(filtered.len(), 100);
        assert!(filtered.samples.iter().all(|s| s.features[0] == 0.0));
    }

    #[test]
    fn infinite_z_max_keeps_everything() {
        let mut samples = vec![sample(Emotion::Neutral, &[0.0]); 5];
        samples.push(sample(Emotion::Neutral, &[1e9]));
        let ds = Dataset::new(samples, "test").unwrap();
        assert_eq!(remove_outliers(&ds, f64::INFINITY).len(), 6);
    }

    #[test]
    fn split_ten_samples_eight_two() {
        let samples: Vec<LabeledSample> = (0..10)
            .map(|i| sample(Emotion::from_index(i % 5).unwrap(), &[i as f64]))
            .collect();
        let ds = Dataset::new(samples, "test").unwrap();
        let (train, test) = split(&ds, 0.8, 42).unwrap();
        assert_eq!(train.len(), 8);
        assert_eq!(test.len(), 2);
    }

    #[test]
    fn split_is_stratified_with_balanced_classes() {
        let samples: Vec<LabeledSample> = (0..70)
            .map(|i| sample(Emotion::from_index(i % 7).unwrap(), &[i as f64, 1.0]))
            .collect();
        let ds = Dataset::new(samples, "test").unwrap();
        let (train, test) = split(&ds, 0.8, 7).unwrap();
        assert_eq!(train.len(), 56);
        let train_counts = train.class_counts();
        let test_counts = test.class_counts();
        for class in 0..7 {
            assert_eq!(train_counts[class], 8, "train count for class {class}");
            assert_eq!(test_counts[class], 2, "test count for class {class}");
        }
    }

    #[test]
    fn split_is_deterministic_per_seed() {
        let samples: Vec<LabeledSample> = (0..25)
            .map(|i| sample(Emotion::from_index(i % 3).unwrap(), &[i as f64]))
            .collect();
        let ds = Dataset::new(samples, "test").unwrap();
        let (train_a, test_a) = split(&ds, 0.8, 9).unwrap();
        let (train_b, test_b) = split(&ds, 0.8, 9).unwrap();
        assert_eq!(train_a.samples, train_b.samples);
        assert_eq!(test_a.samples, test_b.samples);
        let (train_c, _) = split(&ds, 0.8, 10).unwrap();
        assert_ne!(train_a.samples, train_c.samples);
    }

    #[test]
    fn split_rejects_bad_inputs() {
        let ds = Dataset::new(vec![sample(Emotion::Happy, &[1.0]); 4], "test").unwrap();
        assert!(matches!(split(&ds, 1.0, 0), Err(DataError::BadFraction(_))));
        assert!(matches!(split(&ds, 0.0, 0), Err(DataError::BadFraction(_))));
        let tiny = Dataset::new(vec![sample(Emotion::Happy, &[1.0])], "test").unwrap();
        assert!(matches!(split(&tiny, 0.8, 0), Err(DataError::TooSmall)));
    }

    proptest! {
        #[test]
        fn split_partitions_the_dataset(
            labels in proptest::collection::vec(0usize..7, 2..80),
            seed in proptest::num::u64::ANY,
            fraction in 0.05f64..0.95,
        ) {
            let samples: Vec<LabeledSample> = labels
                .iter()
                .enumerate()
                .map(|(i, &c)| sample(Emotion::from_index(c).unwrap(), &[i as f64]))
                .collect();
            let ds = Dataset::new(samples, "prop").unwrap();
            let (train, test) = split(&ds, fraction, seed).unwrap();

            prop_assert!(!train.is_empty());
            prop_assert!(!test.is_empty());
            prop_assert_eq!(train.len() + test.len(), ds.len());

            // union equals the input (features are unique by construction)
            let mut seen: Vec<f64> = train
                .samples
                .iter()
                .chain(&test.samples)
                .map(|s| s.features[0])
                .collect();
            seen.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let expected: Vec<f64> = (0..ds.len()).map(|i| i as f64).collect();
            prop_assert_eq!(seen, expected);
        }

        #[test]
        fn outlier_pass_never_grows_or_edits(
            values in proptest::collection::vec(-100.0f64..100.0, 3..40),
            z_max in 0.5f64..6.0,
        ) {
            let samples: Vec<LabeledSample> = values
                .iter()
                .map(|&v| sample(Emotion::Neutral, &[v]))
                .collect();
            let ds = Dataset::new(samples, "prop").unwrap();
            let filtered = remove_outliers(&ds, z_max);
            prop_assert!(filtered.len() <= ds.len());
            for kept in &filtered.samples {
                prop_assert!(ds.samples.contains(kept));
            }
        }
    }
}
