//! Gaussian naive Bayes: per-class, per-feature normal likelihoods with a
//! variance floor, class priors from training frequencies, argmax of the
//! joint log density. Ties resolve to the lowest canonical emotion index.

use crate::emotion::Emotion;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesParams {
    /// Lower bound on per-feature variance, guarding constant features.
    pub variance_floor: f64,
}

impl Default for BayesParams {
    fn default() -> BayesParams {
        BayesParams {
            variance_floor: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ClassDensity {
    label: Emotion,
    log_prior: f64,
    means: Vec<f64>,
    variances: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesModel {
    classes: Vec<ClassDensity>,
}

impl BayesModel {
    pub fn predict(&self, features: &[f64]) -> Emotion {
        let mut best: Option<(f64, Emotion)> = None;
        for class in &self.classes {
            let mut log_density = class.log_prior;
            for ((&x, &mean), &variance) in features
                .iter()
                .zip(&class.means)
                .zip(&class.variances)
            {
                let delta = x - mean;
                log_density += -0.5 * (TAU * variance).ln() - delta * delta / (2.0 * variance);
            }
            let better = match best {
                Some((current, _)) => log_density > current,
                None => true,
            };
            if better {
                best = Some((log_density, class.label));
            }
        }
        best.expect("model has at least one class").1
    }
}

pub(crate) fn fit_bayes(x: &[&[f64]], y: &[usize], params: &BayesParams) -> BayesModel {
    let n = x.len() as f64;
    let dimension = x[0].len();
    let mut classes = Vec::new();
    // canonical class order keeps argmax ties deterministic
    for emotion in Emotion::ALL {
        let members: Vec<&[f64]> = x
            .iter()
            .zip(y)
            .filter(|(_, &label)| label == emotion.index())
            .map(|(&row, _)| row)
            .collect();
        if members.is_empty() {
            continue;
        }
        let count = members.len() as f64;
        let mut means = vec![0.0; dimension];
        for row in &members {
            for (m, &v) in means.iter_mut().zip(*row) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= count;
        }
        let mut variances = vec![0.0; dimension];
        for row in &members {
            for (j, &v) in row.iter().enumerate() {
                let delta = v - means[j];
                variances[j] += delta * delta;
            }
        }
        for v in &mut variances {
            *v = (*v / count).max(params.variance_floor);
        }
        classes.push(ClassDensity {
            label: emotion,
            log_prior: (count / n).ln(),
            means,
            variances,
        });
    }
    BayesModel { classes }
}
