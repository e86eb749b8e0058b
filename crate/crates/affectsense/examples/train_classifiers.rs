//! Train one emotion classifier end to end: synthetic dataset, outlier
//! removal, stratified split, training, and the resulting confusion matrix.
//!
//! ```sh
//! cargo run --example train_classifiers
//! ```

use affectsense::classify::{
    evaluate, remove_outliers, split, synth, train, LearnerKind, LearnerSpec,
};
use affectsense::emotion::Emotion;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = synth::gaussian_blobs(100, 16, 1.0, 42);
    println!("dataset: {} samples, {} features", data.len(), data.dimension);

    let filtered = remove_outliers(&data, 4.0);
    println!("outlier pass removed {} samples", data.len() - filtered.len());

    let (train_set, test_set) = split(&filtered, 0.8, 42)?;
    println!("split: {} train / {} test", train_set.len(), test_set.len());

    let spec = LearnerSpec::default_for(LearnerKind::RandomForest);
    let model = train(&spec, &train_set, 42)?;
    let matrix = evaluate(&model, &test_set)?;

    println!("\n{}", matrix.to_table());
    println!("held-out accuracy: {:.2}%", matrix.accuracy() * 100.0);
    for emotion in Emotion::ALL {
        let class = emotion.index();
        println!(
            "  {:<8} precision {:>6.2}%  recall {:>6.2}%",
            emotion,
            matrix.precision(class) * 100.0,
            matrix.recall(class) * 100.0
        );
    }
    Ok(())
}
