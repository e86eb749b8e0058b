//! Predict user experience from (mood, outcome): the fixed rule table, then
//! a learned model with per-cell confidences, evaluated on the bundled
//! session outcomes.
//!
//! ```sh
//! cargo run --example ux_forecast
//! ```

use affectsense::ux::{
    evaluate_ux, predict_rule, predict_ux, read_ux_samples, train_ux, Polarity,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rule table:");
    for mood in Polarity::ALL {
        for outcome in Polarity::ALL {
            println!(
                "  mood {:<8} + outcome {:<8} -> {}",
                mood.label(),
                outcome.label(),
                predict_rule(mood, outcome)
            );
        }
    }

    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/ux/session_outcomes.csv"
    );
    let samples = read_ux_samples(&std::fs::read_to_string(path)?)?;
    println!("\n{} labeled sessions loaded", samples.len());

    let rule_matrix = evaluate_ux(predict_rule, &samples);
    println!("rule predictor accuracy: {:.2}%", rule_matrix.accuracy() * 100.0);

    let model = train_ux(&samples, 1.0);
    println!("\nlearned confidences per (mood, outcome) cell:");
    for mood in Polarity::ALL {
        for outcome in Polarity::ALL {
            let prediction = predict_ux(&model, mood, outcome);
            println!(
                "  ({:<8}, {:<8}) -> {:<8} confidence {:.3} / {:.3}  ({} samples)",
                mood.label(),
                outcome.label(),
                prediction.predicted.label(),
                prediction.confidence_positive,
                prediction.confidence_negative,
                model.cell_count(mood, outcome)
            );
        }
    }

    let model_matrix = evaluate_ux(|m, o| predict_ux(&model, m, o).predicted, &samples);
    println!(
        "\nlearned predictor accuracy on the same sessions: {:.2}%",
        model_matrix.accuracy() * 100.0
    );
    Ok(())
}
