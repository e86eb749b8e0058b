//! CART-style decision tree: binary splits chosen by Gini impurity, grown to
//! purity or a depth cap. Split search is deterministic (first strictly
//! better split wins, features scanned in candidate order), so a tree is a
//! pure function of its training data and feature-candidate sequence.

use crate::emotion::Emotion;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: usize,
    /// Minimum samples on each side of an admissible split.
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> TreeParams {
        TreeParams {
            max_depth: 20,
            min_leaf: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Leaf {
        label: Emotion,
    },
    Split {
        feature: usize,
        threshold: f64,
        /// Child for `x[feature] <= threshold`.
        left: usize,
        right: usize,
    },
}

/// A trained tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    pub(crate) nodes: Vec<TreeNode>,
}

impl TreeModel {
    pub fn predict(&self, features: &[f64]) -> Emotion {
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { label } => return *label,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if features[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

}

fn gini(counts: &[usize; Emotion::COUNT], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / n;
            p * p
        })
        .sum::<f64>()
}

fn majority(counts: &[usize; Emotion::COUNT]) -> Emotion {
    let mut best = 0usize;
    for (i, &count) in counts.iter().enumerate().skip(1) {
        if count > counts[best] {
            best = i;
        }
    }
    Emotion::from_index(best).expect("canonical index")
}

/// Feature candidates for one split: all features in order when the budget
/// covers them, otherwise a seeded sample without replacement. The full-set
/// path consumes no randomness, so a forest configured with a full feature
/// budget grows exactly the trees plain training would.
fn candidate_features(rng: &mut ChaCha8Rng, dimension: usize, budget: usize) -> Vec<usize> {
    if budget >= dimension {
        return (0..dimension).collect();
    }
    let mut pool: Vec<usize> = (0..dimension).collect();
    for i in 0..budget {
        let j = rng.random_range(i..dimension);
        pool.swap(i, j);
    }
    pool.truncate(budget);
    pool
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    impurity: f64,
}

pub(crate) struct Grower<'a> {
    pub x: &'a [&'a [f64]],
    pub y: &'a [usize],
    pub params: TreeParams,
    /// Feature candidates considered at each split.
    pub features_per_split: usize,
}

impl<'a> Grower<'a> {
    pub fn grow(&self, indices: Vec<usize>, rng: &mut ChaCha8Rng) -> TreeModel {
        let mut nodes = Vec::new();
        self.build(indices, 0, rng, &mut nodes);
        TreeModel { nodes }
    }

    fn class_counts(&self, indices: &[usize]) -> [usize; Emotion::COUNT] {
        let mut counts = [0usize; Emotion::COUNT];
        for &i in indices {
            counts[self.y[i]] += 1;
        }
        counts
    }

    fn build(
        &self,
        indices: Vec<usize>,
        depth: usize,
        rng: &mut ChaCha8Rng,
        nodes: &mut Vec<TreeNode>,
    ) -> usize {
        let counts = self.class_counts(&indices);
        let total = indices.len();
        let impurity = gini(&counts, total);
        let label = majority(&counts);

        let stop = impurity == 0.0
            || depth >= self.params.max_depth
            || total < 2 * self.params.min_leaf;
        if !stop {
            if let Some(split) = self.best_split(&indices, &counts, impurity, rng) {
                let node = nodes.len();
                nodes.push(TreeNode::Leaf { label }); // placeholder, patched below
                let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
                    .iter()
                    .partition(|&&i| self.x[i][split.feature] <= split.threshold);
                let left = self.build(left_idx, depth + 1, rng, nodes);
                let right = self.build(right_idx, depth + 1, rng, nodes);
                nodes[node] = TreeNode::Split {
                    feature: split.feature,
                    threshold: split.threshold,
                    left,
                    right,
                };
                return node;
            }
        }
        nodes.push(TreeNode::Leaf { label });
        nodes.len() - 1
    }

    fn best_split(
        &self,
        indices: &[usize],
        parent_counts: &[usize; Emotion::COUNT],
        parent_impurity: f64,
        rng: &mut ChaCha8Rng,
    ) -> Option<BestSplit> {
        let dimension = self.x[0].len();
        let total = indices.len();
        let min_leaf = self.params.min_leaf;
        let mut best: Option<BestSplit> = None;

        for feature in candidate_features(rng, dimension, self.features_per_split) {
            let mut ordered: Vec<(f64, usize)> = indices
                .iter()
                .map(|&i| (self.x[i][feature], self.y[i]))
                .collect();
            ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite features"));

            let mut left_counts = [0usize; Emotion::COUNT];
            for cut in 1..total {
                left_counts[ordered[cut - 1].1] += 1;
                if ordered[cut - 1].0 == ordered[cut].0 {
                    continue; // equal values cannot separate
                }
                if cut < min_leaf || total - cut < min_leaf {
                    continue;
                }
                let mut right_counts = [0usize; Emotion::COUNT];
                for c in 0..Emotion::COUNT {
                    right_counts[c] = parent_counts[c] - left_counts[c];
                }
                let weighted = (cut as f64 * gini(&left_counts, cut)
                    + (total - cut) as f64 * gini(&right_counts, total - cut))
                    / total as f64;
                let improves = match &best {
                    Some(current) => weighted < current.impurity,
                    None => weighted < parent_impurity,
                };
                if improves {
                    best = Some(BestSplit {
                        feature,
                        threshold: 0.5 * (ordered[cut - 1].0 + ordered[cut].0),
                        impurity: weighted,
                    });
                }
            }
        }
        best
    }
}
