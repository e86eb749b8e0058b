//! k-nearest-neighbour classifier: stores the training set, ranks by
//! Euclidean distance, takes the majority of the k closest. Distance ties
//! and vote ties both resolve by canonical emotion order, which makes
//! prediction fully deterministic.

use crate::emotion::Emotion;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
}

impl Default for KnnParams {
    fn default() -> KnnParams {
        KnnParams { k: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    k: usize,
    features: Vec<Vec<f64>>,
    labels: Vec<Emotion>,
}

impl KnnModel {
    pub fn predict(&self, features: &[f64]) -> Emotion {
        // squared distance preserves the Euclidean ranking
        let mut ranked: Vec<(f64, usize, usize)> = self
            .features
            .iter()
            .zip(&self.labels)
            .enumerate()
            .map(|(i, (row, label))| {
                let d2: f64 = row
                    .iter()
                    .zip(features)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (d2, label.index(), i)
            })
            .collect();
        ranked.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .expect("finite features")
                .then(a.1.cmp(&b.1))
                .then(a.2.cmp(&b.2))
        });

        let mut votes = [0usize; Emotion::COUNT];
        for (_, label_index, _) in ranked.iter().take(self.k.min(ranked.len())) {
            votes[*label_index] += 1;
        }
        let mut best = 0usize;
        for (i, &count) in votes.iter().enumerate().skip(1) {
            if count > votes[best] {
                best = i;
            }
        }
        Emotion::from_index(best).expect("canonical index")
    }
}

pub(crate) fn fit_knn(x: &[&[f64]], y: &[usize], params: &KnnParams) -> KnnModel {
    KnnModel {
        k: params.k.max(1),
        features: x.iter().map(|row| row.to_vec()).collect(),
        labels: y
            .iter()
            .map(|&i| Emotion::from_index(i).expect("canonical index"))
            .collect(),
    }
}
