//! Random forest: trees grown on bootstrap resamples with per-split feature
//! subsampling, combined by majority vote.
//!
//! Each tree derives its RNG from the master seed and its own index, so the
//! forest is bit-identical regardless of growth order, and tree 0 of a
//! single-tree forest without bootstrap and with a full feature budget is
//! exactly the plain decision tree for the same seed.

use super::tree::{Grower, TreeModel, TreeParams};
use crate::emotion::Emotion;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const SEED_MIX: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub trees: usize,
    pub bootstrap: bool,
    /// Feature candidates per split; `None` means `ceil(sqrt(D))`.
    pub features_per_split: Option<usize>,
    pub tree: TreeParams,
}

impl Default for ForestParams {
    fn default() -> ForestParams {
        ForestParams {
            trees: 100,
            bootstrap: true,
            features_per_split: None,
            tree: TreeParams::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub(crate) trees: Vec<TreeModel>,
}

impl ForestModel {
    pub fn predict(&self, features: &[f64]) -> Emotion {
        let mut votes = [0usize; Emotion::COUNT];
        for tree in &self.trees {
            votes[tree.predict(features).index()] += 1;
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

pub(crate) fn grow_forest(
    x: &[&[f64]],
    y: &[usize],
    params: &ForestParams,
    seed: u64,
) -> ForestModel {
    let n = x.len();
    let dimension = x[0].len();
    let budget = params
        .features_per_split
        .unwrap_or_else(|| (dimension as f64).sqrt().ceil() as usize)
        .clamp(1, dimension);
    let grower = Grower {
        x,
        y,
        params: params.tree,
        features_per_split: budget,
    };

    let trees = (0..params.trees)
        .map(|t| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(SEED_MIX));
            let indices: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.random_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            grower.grow(indices, &mut rng)
        })
        .collect();
    ForestModel { trees }
}
