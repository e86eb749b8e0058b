//! Side-by-side comparison of the four learners over one shared
//! preprocessed split, in the overall / lowest-precision / highest-precision
//! layout.
//!
//! ```sh
//! cargo run --example compare_learners
//! ```

use affectsense::classify::{compare_learners, synth, CompareConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // spread 3.0 overlaps the class blobs enough that the learners separate
    let data = synth::gaussian_blobs(100, 16, 3.0, 7);
    let report = compare_learners(&data, &CompareConfig::default(), 7)?;

    println!(
        "seed {} | {} train / {} test\n",
        report.seed, report.train_size, report.test_size
    );
    print!("{}", report.to_table());
    println!("\nas csv:\n{}", report.to_csv());
    Ok(())
}
