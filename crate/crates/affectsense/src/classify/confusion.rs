//! Confusion-matrix arithmetic shared by the emotion classifiers and the
//! user-experience predictor.
//!
//! Counts are indexed `[predicted][actual]`. Precision of a class with an
//! empty predicted row and recall of a class with an empty actual column are
//! both defined as 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("confusion grid must be square over {labels} labels, row {row} has {got} entries")]
    NotSquare {
        labels: usize,
        row: usize,
        got: usize,
    },
    #[error("class index {0} out of range")]
    BadClass(usize),
    #[error("bad grid file: {0}")]
    Format(String),
}

/// Class-count grid with derived accuracy, precision, and recall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridFile", into = "GridFile")]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    /// counts[predicted][actual]
    counts: Vec<Vec<u64>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct GridFile {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl TryFrom<GridFile> for ConfusionMatrix {
    type Error = MetricsError;

    fn try_from(file: GridFile) -> Result<ConfusionMatrix, MetricsError> {
        ConfusionMatrix::from_counts(file.labels, file.counts)
    }
}

impl From<ConfusionMatrix> for GridFile {
    fn from(matrix: ConfusionMatrix) -> GridFile {
        GridFile {
            labels: matrix.labels,
            counts: matrix.counts,
        }
    }
}

impl ConfusionMatrix {
    /// Zeroed grid over the given class labels.
    pub fn new(labels: Vec<String>) -> ConfusionMatrix {
        let n = labels.len();
        ConfusionMatrix {
            labels,
            counts: vec![vec![0; n]; n],
        }
    }

    pub fn from_counts(
        labels: Vec<String>,
        counts: Vec<Vec<u64>>,
    ) -> Result<ConfusionMatrix, MetricsError> {
        let n = labels.len();
        if counts.len() != n {
            return Err(MetricsError::NotSquare {
                labels: n,
                row: counts.len(),
                got: counts.len(),
            });
        }
        for (row, entries) in counts.iter().enumerate() {
            if entries.len() != n {
                return Err(MetricsError::NotSquare {
                    labels: n,
                    row,
                    got: entries.len(),
                });
            }
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    /// Parses a JSON grid file `{labels, counts}` with counts[predicted][actual].
    pub fn from_json(source: &[u8]) -> Result<ConfusionMatrix, MetricsError> {
        serde_json::from_slice(source).map_err(|e| MetricsError::Format(e.to_string()))
    }

    pub fn record(&mut self, predicted: usize, actual: usize) {
        self.counts[predicted][actual] += 1;
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn count(&self, predicted: usize, actual: usize) -> u64 {
        self.counts[predicted][actual]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Diagonal sum over total; 0 for an empty grid.
    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let diagonal: u64 = (0..self.labels.len()).map(|i| self.counts[i][i]).sum();
        diagonal as f64 / total as f64
    }

    /// Fraction of predictions for `class` that were correct; 0 when the
    /// class was never predicted.
    pub fn precision(&self, class: usize) -> f64 {
        let row: u64 = self.counts[class].iter().sum();
        if row == 0 {
            return 0.0;
        }
        self.counts[class][class] as f64 / row as f64
    }

    /// Fraction of actual `class` samples that were recovered; 0 when the
    /// class never occurred.
    pub fn recall(&self, class: usize) -> f64 {
        let column: u64 = self.counts.iter().map(|row| row[class]).sum();
        if column == 0 {
            return 0.0;
        }
        self.counts[class][class] as f64 / column as f64
    }

    /// Number of actual samples of `class`.
    pub fn actual_count(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }

    /// Aligned text rendering with per-class precision column and recall row.
    pub fn to_table(&self) -> String {
        let n = self.labels.len();
        let mut rows: Vec<Vec<String>> = Vec::new();

        let mut header = vec![format!("accuracy: {:.2}%", self.accuracy() * 100.0)];
        header.extend(self.labels.iter().map(|l| format!("true {l}")));
        header.push("class precision".to_string());
        rows.push(header);

        for p in 0..n {
            let mut row = vec![format!("pred. {}", self.labels[p])];
            row.extend((0..n).map(|t| self.counts[p][t].to_string()));
            row.push(format!("{:.2}%", self.precision(p) * 100.0));
            rows.push(row);
        }
        let mut recall_row = vec!["class recall".to_string()];
        recall_row.extend((0..n).map(|t| format!("{:.2}%", self.recall(t) * 100.0)));
        recall_row.push(String::new());
        rows.push(recall_row);

        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| format!("{:>width$}", cell, width = widths[c]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
