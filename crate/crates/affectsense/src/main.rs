//! Command-line front door. Every subcommand is a thin wrapper over the
//! library: load inputs, call one library entry point, print its serialized
//! output. Exit codes are stable across commands: 0 success, 1 domain error
//! in the data, 2 usage or I/O error.

use affectsense::activity::{
    parse_definitions_unchecked, validate_definition, DefinitionRegistry,
};
use affectsense::classify::{
    self, compare_learners, evaluate, ingest_dataset, load_model, remove_outliers, save_model,
    split, train, CompareConfig, ConfusionMatrix, DatasetFormat, LearnerKind, LearnerSpec,
};
use affectsense::config::{OutputFormat, PartialConfig, RunConfig};
use affectsense::engine::{read_event_log, write_event_log, EngineConfig, RecognitionEngine};
use affectsense::pipeline::{run_pipeline, FeatureTable};
use affectsense::sim::{read_scenario, simulate_trace};
use affectsense::ux::{
    evaluate_ux, predict_rule, predict_ux, read_ux_samples, train_ux, write_prediction_rows,
    PredictionRow, UXSample,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "affectsense",
    version,
    about = "Recognize weighted home activities, track emotional response and mood, and forecast user experience"
)]
struct Cli {
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random choice in the run.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: json, csv, or table.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a definition file against the model invariants.
    Validate {
        #[arg(long)]
        definitions: PathBuf,
    },
    /// Replay an event log and emit occurrence records as JSON lines.
    Recognize {
        #[arg(long)]
        definitions: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long)]
        timeout_min: Option<u64>,
        #[arg(long)]
        core_required: Option<bool>,
    },
    /// Preprocess, split, train one emotion classifier, and report held-out metrics.
    TrainEmotion {
        #[arg(long)]
        dataset: PathBuf,
        /// Dataset layout: fer-csv or generic-csv.
        #[arg(long, default_value = "generic-csv")]
        data_format: String,
        /// decision-tree, random-forest, naive-bayes, or knn.
        #[arg(long)]
        learner: Option<String>,
        #[arg(long)]
        model_out: PathBuf,
        #[arg(long)]
        train_fraction: Option<f64>,
        #[arg(long)]
        z_max: Option<f64>,
    },
    /// Evaluate a saved emotion model on a labeled dataset.
    EvalEmotion {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "generic-csv")]
        data_format: String,
    },
    /// Train and evaluate all four learners on one shared split.
    CompareLearners {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "generic-csv")]
        data_format: String,
        #[arg(long)]
        train_fraction: Option<f64>,
        #[arg(long)]
        z_max: Option<f64>,
    },
    /// Generate a synthetic event log from a scenario script.
    Simulate {
        #[arg(long)]
        definitions: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        gap_secs: Option<u64>,
    },
    /// Run recognition, affect, mood, and UX forecasting end to end.
    Pipeline {
        #[arg(long)]
        definitions: PathBuf,
        /// Event log to replay (mutually exclusive with --scenario).
        #[arg(long, conflicts_with = "scenario")]
        events: Option<PathBuf>,
        /// Scenario to simulate first (mutually exclusive with --events).
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Feature-vector CSV for `@row` event evidence.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Saved emotion model for `@row` event evidence.
        #[arg(long)]
        emotion_model: Option<PathBuf>,
        /// UX sample CSV; when present, forecasts use a model trained on it
        /// instead of the rule table.
        #[arg(long)]
        ux_samples: Option<PathBuf>,
        #[arg(long)]
        timeout_min: Option<u64>,
        #[arg(long)]
        core_required: Option<bool>,
        #[arg(long)]
        mood_window: Option<usize>,
        #[arg(long)]
        gap_secs: Option<u64>,
    },
    /// Evaluate a UX predictor against labeled (mood, outcome, ux) samples.
    UxEval {
        #[arg(long)]
        samples: PathBuf,
        /// rule (fixed table) or model (trained on the samples).
        #[arg(long, default_value = "rule")]
        predictor: String,
        #[arg(long)]
        ux_alpha: Option<f64>,
    },
}

enum Failure {
    /// Bad flag values or malformed configuration: exit 2.
    Usage(String),
    /// Unreadable or unwritable files: exit 2.
    Io(String),
    /// Invalid data content: exit 1.
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Domain(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read_file(path)?)
        .map_err(|_| Failure::Domain(format!("{}: not valid UTF-8", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_registry(path: &Path) -> Result<DefinitionRegistry, Failure> {
    let bytes = read_file(path)?;
    DefinitionRegistry::from_json(&bytes).map_err(|e| Failure::Domain(e.to_string()))
}

fn parse_data_format(text: &str) -> Result<DatasetFormat, Failure> {
    text.parse().map_err(Failure::Usage)
}

fn load_dataset(path: &Path, format: &str) -> Result<classify::Dataset, Failure> {
    let format = parse_data_format(format)?;
    let bytes = read_file(path)?;
    ingest_dataset(&bytes, format).map_err(|e| Failure::Domain(e.to_string()))
}

/// defaults ← config file ← global flags, then range-checked.
fn resolve_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let bytes = read_file(path)?;
        let partial = PartialConfig::from_json(&bytes).map_err(|e| Failure::Usage(e.to_string()))?;
        config.apply(partial);
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(format) = &cli.format {
        config.format = format.parse().map_err(Failure::Usage)?;
    }
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(config)
}

fn learner_spec(config: &RunConfig, learner_flag: &Option<String>) -> Result<LearnerSpec, Failure> {
    match learner_flag {
        None => Ok(config.learner.clone()),
        Some(text) => {
            let kind: LearnerKind = text.parse().map_err(Failure::Usage)?;
            // a config-file spec of the same kind keeps its hyperparameters
            if config.learner.kind() == kind {
                Ok(config.learner.clone())
            } else {
                Ok(LearnerSpec::default_for(kind))
            }
        }
    }
}

#[derive(Serialize)]
struct MatrixReport<'a> {
    config: &'a RunConfig,
    labels: &'a [String],
    counts: &'a [Vec<u64>],
    accuracy: f64,
    precision: Vec<f64>,
    recall: Vec<f64>,
}

fn matrix_json(matrix: &ConfusionMatrix, config: &RunConfig) -> String {
    let classes = matrix.labels().len();
    let report = MatrixReport {
        config,
        labels: matrix.labels(),
        counts: matrix.counts(),
        accuracy: matrix.accuracy(),
        precision: (0..classes).map(|c| matrix.precision(c)).collect(),
        recall: (0..classes).map(|c| matrix.recall(c)).collect(),
    };
    let mut out = serde_json::to_string_pretty(&report).expect("matrix serializes");
    out.push('\n');
    out
}

fn matrix_csv(matrix: &ConfusionMatrix) -> String {
    let mut out = String::from("predicted");
    for label in matrix.labels() {
        out.push_str(&format!(",true_{label}"));
    }
    out.push_str(",precision\n");
    for (p, label) in matrix.labels().iter().enumerate() {
        out.push_str(label);
        for t in 0..matrix.labels().len() {
            out.push_str(&format!(",{}", matrix.count(p, t)));
        }
        out.push_str(&format!(",{:.6}\n", matrix.precision(p)));
    }
    out.push_str("recall");
    for t in 0..matrix.labels().len() {
        out.push_str(&format!(",{:.6}", matrix.recall(t)));
    }
    out.push_str(&format!(",accuracy={:.6}\n", matrix.accuracy()));
    out
}

fn print_matrix(matrix: &ConfusionMatrix, config: &RunConfig) {
    match config.format {
        OutputFormat::Json => print!("{}", matrix_json(matrix, config)),
        OutputFormat::Csv => print!("{}", matrix_csv(matrix)),
        OutputFormat::Table => print!("{}", matrix.to_table()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = resolve_config(&cli)?;
    match &cli.command {
        Command::Validate { definitions } => cmd_validate(definitions),
        Command::Recognize {
            definitions,
            events,
            timeout_min,
            core_required,
        } => cmd_recognize(&config, definitions, events, *timeout_min, *core_required),
        Command::TrainEmotion {
            dataset,
            data_format,
            learner,
            model_out,
            train_fraction,
            z_max,
        } => {
            let mut config = config;
            if let Some(f) = train_fraction {
                config.train_fraction = *f;
            }
            if let Some(z) = z_max {
                config.z_max = *z;
            }
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            cmd_train_emotion(&config, dataset, data_format, learner, model_out)
        }
        Command::EvalEmotion {
            model,
            dataset,
            data_format,
        } => cmd_eval_emotion(&config, model, dataset, data_format),
        Command::CompareLearners {
            dataset,
            data_format,
            train_fraction,
            z_max,
        } => {
            let mut config = config;
            if let Some(f) = train_fraction {
                config.train_fraction = *f;
            }
            if let Some(z) = z_max {
                config.z_max = *z;
            }
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            cmd_compare(&config, dataset, data_format)
        }
        Command::Simulate {
            definitions,
            scenario,
            out,
            gap_secs,
        } => cmd_simulate(&config, definitions, scenario, out.as_deref(), *gap_secs),
        Command::Pipeline {
            definitions,
            events,
            scenario,
            features,
            emotion_model,
            ux_samples,
            timeout_min,
            core_required,
            mood_window,
            gap_secs,
        } => {
            let mut config = config;
            if let Some(t) = timeout_min {
                config.timeout_min = *t;
            }
            if let Some(c) = core_required {
                config.core_required = *c;
            }
            if let Some(w) = mood_window {
                config.mood_window = *w;
            }
            if let Some(g) = gap_secs {
                config.gap_secs = *g;
            }
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            cmd_pipeline(
                &config,
                definitions,
                events.as_deref(),
                scenario.as_deref(),
                features.as_deref(),
                emotion_model.as_deref(),
                ux_samples.as_deref(),
            )
        }
        Command::UxEval {
            samples,
            predictor,
            ux_alpha,
        } => {
            let mut config = config;
            if let Some(a) = ux_alpha {
                config.ux_alpha = *a;
            }
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            cmd_ux_eval(&config, samples, predictor)
        }
    }
}

fn cmd_validate(definitions: &Path) -> Result<(), Failure> {
    let bytes = read_file(definitions)?;
    let defs = parse_definitions_unchecked(&bytes).map_err(|e| Failure::Domain(e.to_string()))?;
    let mut ok = true;
    for def in &defs {
        let report = validate_definition(def);
        if report.is_ok() {
            println!("ok {}", def.code);
        } else {
            ok = false;
            for violation in &report.violations {
                println!("violation {} {}", def.code, violation);
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Domain("definition file has violations".into()))
    }
}

fn cmd_recognize(
    config: &RunConfig,
    definitions: &Path,
    events: &Path,
    timeout_min: Option<u64>,
    core_required: Option<bool>,
) -> Result<(), Failure> {
    let registry = load_registry(definitions)?;
    let text = read_text(events)?;
    let events = read_event_log(&text).map_err(|e| Failure::Domain(e.to_string()))?;
    let engine_config = EngineConfig {
        timeout_min: timeout_min.unwrap_or(config.timeout_min),
        core_required: core_required.unwrap_or(config.core_required),
        valence_map: config.valence_map.clone(),
    };
    let mut engine = RecognitionEngine::new(registry, engine_config);
    let emit = |records: Vec<affectsense::engine::OccurrenceRecord>| {
        for record in records {
            println!(
                "{}",
                serde_json::to_string(&record).expect("record serializes")
            );
        }
    };
    for event in &events {
        let ingested = engine.ingest(event).map_err(|e| Failure::Domain(e.to_string()))?;
        emit(ingested.completed);
    }
    emit(engine.finish());
    Ok(())
}

#[derive(Serialize)]
struct TrainReport<'a> {
    config: &'a RunConfig,
    learner: LearnerKind,
    input_size: usize,
    outliers_removed: usize,
    train_size: usize,
    test_size: usize,
    accuracy: f64,
}

fn cmd_train_emotion(
    config: &RunConfig,
    dataset: &Path,
    data_format: &str,
    learner: &Option<String>,
    model_out: &Path,
) -> Result<(), Failure> {
    let spec = learner_spec(config, learner)?;
    let data = load_dataset(dataset, data_format)?;
    let filtered = remove_outliers(&data, config.z_max);
    let (train_set, test_set) =
        split(&filtered, config.train_fraction, config.seed).map_err(|e| Failure::Domain(e.to_string()))?;
    let model = train(&spec, &train_set, config.seed).map_err(|e| Failure::Domain(e.to_string()))?;
    let matrix = evaluate(&model, &test_set).map_err(|e| Failure::Domain(e.to_string()))?;
    write_file(model_out, &save_model(&model))?;

    let report = TrainReport {
        config,
        learner: spec.kind(),
        input_size: data.len(),
        outliers_removed: data.len() - filtered.len(),
        train_size: train_set.len(),
        test_size: test_set.len(),
        accuracy: matrix.accuracy(),
    };
    match config.format {
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
            print!("{out}");
        }
        OutputFormat::Csv => {
            println!("learner,input_size,outliers_removed,train_size,test_size,accuracy");
            println!(
                "{},{},{},{},{},{:.6}",
                report.learner,
                report.input_size,
                report.outliers_removed,
                report.train_size,
                report.test_size,
                report.accuracy
            );
        }
        OutputFormat::Table => {
            println!("learner            {}", report.learner);
            println!("input samples      {}", report.input_size);
            println!("outliers removed   {}", report.outliers_removed);
            println!("train / test       {} / {}", report.train_size, report.test_size);
            println!("held-out accuracy  {:.2}%", report.accuracy * 100.0);
        }
    }
    Ok(())
}

fn cmd_eval_emotion(
    config: &RunConfig,
    model: &Path,
    dataset: &Path,
    data_format: &str,
) -> Result<(), Failure> {
    let model = load_model(&read_file(model)?).map_err(|e| Failure::Domain(e.to_string()))?;
    let data = load_dataset(dataset, data_format)?;
    let matrix = evaluate(&model, &data).map_err(|e| Failure::Domain(e.to_string()))?;
    print_matrix(&matrix, config);
    Ok(())
}

fn cmd_compare(config: &RunConfig, dataset: &Path, data_format: &str) -> Result<(), Failure> {
    let data = load_dataset(dataset, data_format)?;
    let compare_config = CompareConfig {
        train_fraction: config.train_fraction,
        z_max: config.z_max,
        specs: LearnerKind::ALL
            .iter()
            .map(|&kind| {
                if config.learner.kind() == kind {
                    config.learner.clone()
                } else {
                    LearnerSpec::default_for(kind)
                }
            })
            .collect(),
    };
    let report =
        compare_learners(&data, &compare_config, config.seed).map_err(|e| Failure::Domain(e.to_string()))?;
    match config.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct CompareReport<'a> {
                config: &'a RunConfig,
                #[serde(flatten)]
                comparison: &'a affectsense::classify::LearnerComparison,
            }
            let wrapped = CompareReport {
                config,
                comparison: &report,
            };
            let mut out = serde_json::to_string_pretty(&wrapped).expect("report serializes");
            out.push('\n');
            print!("{out}");
        }
        OutputFormat::Csv => print!("{}", report.to_csv()),
        OutputFormat::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

fn cmd_simulate(
    config: &RunConfig,
    definitions: &Path,
    scenario: &Path,
    out: Option<&Path>,
    gap_secs: Option<u64>,
) -> Result<(), Failure> {
    let registry = load_registry(definitions)?;
    let scenario = read_scenario(&read_file(scenario)?).map_err(|e| Failure::Domain(e.to_string()))?;
    let events = simulate_trace(
        &registry,
        &scenario,
        config.seed,
        gap_secs.unwrap_or(config.gap_secs),
    )
    .map_err(|e| Failure::Domain(e.to_string()))?;
    let log = write_event_log(&events);
    match out {
        Some(path) => write_file(path, &log)?,
        None => print!("{log}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_pipeline(
    config: &RunConfig,
    definitions: &Path,
    events: Option<&Path>,
    scenario: Option<&Path>,
    features: Option<&Path>,
    emotion_model: Option<&Path>,
    ux_samples: Option<&Path>,
) -> Result<(), Failure> {
    let registry = load_registry(definitions)?;
    let events = match (events, scenario) {
        (Some(path), None) => {
            let text = read_text(path)?;
            read_event_log(&text).map_err(|e| Failure::Domain(e.to_string()))?
        }
        (None, Some(path)) => {
            let scenario =
                read_scenario(&read_file(path)?).map_err(|e| Failure::Domain(e.to_string()))?;
            simulate_trace(&registry, &scenario, config.seed, config.gap_secs)
                .map_err(|e| Failure::Domain(e.to_string()))?
        }
        _ => {
            return Err(Failure::Usage(
                "pipeline needs exactly one of --events or --scenario".into(),
            ))
        }
    };

    let model = match emotion_model {
        Some(path) => Some(load_model(&read_file(path)?).map_err(|e| Failure::Domain(e.to_string()))?),
        None => None,
    };
    let table = match features {
        Some(path) => {
            let text = read_text(path)?;
            Some(FeatureTable::from_csv(&text).map_err(|e| Failure::Domain(e.to_string()))?)
        }
        None => None,
    };
    let ux_model = match ux_samples {
        Some(path) => {
            let text = read_text(path)?;
            let samples = read_ux_samples(&text).map_err(|e| Failure::Domain(e.to_string()))?;
            Some(train_ux(&samples, config.ux_alpha))
        }
        None => None,
    };

    let resolver = match (&model, &table) {
        (Some(m), Some(t)) => Some((m, t)),
        (Some(_), None) => {
            return Err(Failure::Usage(
                "--emotion-model needs --features for the referenced vectors".into(),
            ))
        }
        _ => None,
    };
    let report = run_pipeline(&registry, &events, resolver, ux_model.as_ref(), config)
        .map_err(|e| Failure::Domain(e.to_string()))?;

    match config.format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Csv => {
            println!("code,start_ms,end_ms,score,outcome,overall_emotion,valence,no_evidence,mood_after");
            for (record, mood) in report.occurrences.iter().zip(&report.mood_timeline) {
                println!(
                    "{},{},{},{:.6},{:?},{},{},{},{}",
                    record.code,
                    record.start_ms,
                    record.end_ms,
                    record.score,
                    record.outcome,
                    record.overall_emotion,
                    record.valence,
                    record.no_evidence,
                    mood
                );
            }
        }
        OutputFormat::Table => {
            println!(
                "{:<6} {:>12} {:>12} {:>7} {:>8} {:>9} {:>9} {:>9}",
                "code", "start_ms", "end_ms", "score", "outcome", "emotion", "valence", "mood"
            );
            for (record, mood) in report.occurrences.iter().zip(&report.mood_timeline) {
                println!(
                    "{:<6} {:>12} {:>12} {:>7.2} {:>8} {:>9} {:>9} {:>9}",
                    record.code,
                    record.start_ms,
                    record.end_ms,
                    record.score,
                    record.outcome.to_string(),
                    record.overall_emotion.to_string(),
                    record.valence.to_string(),
                    mood.to_string()
                );
            }
            println!(
                "final mood {} | next activity: success => {}, failure => {}",
                report
                    .summary
                    .final_mood
                    .map(|m| m.to_string())
                    .unwrap_or_else(|| "n/a".into()),
                report.upcoming.if_success.predicted,
                report.upcoming.if_failure.predicted
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct UxEvalReport<'a> {
    config: &'a RunConfig,
    predictor: &'a str,
    rows: &'a [PredictionRow],
    labels: &'a [String],
    counts: &'a [Vec<u64>],
    accuracy: f64,
}

fn cmd_ux_eval(config: &RunConfig, samples: &Path, predictor: &str) -> Result<(), Failure> {
    let text = read_text(samples)?;
    let samples = read_ux_samples(&text).map_err(|e| Failure::Domain(e.to_string()))?;

    let (rows, matrix): (Vec<PredictionRow>, ConfusionMatrix) = match predictor {
        "rule" => {
            let rows = samples
                .iter()
                .enumerate()
                .map(|(i, s)| PredictionRow {
                    row: i + 1,
                    ux: s.ux,
                    prediction: predict_rule(s.mood, s.outcome),
                    confidence_positive: None,
                    confidence_negative: None,
                    mood: s.mood,
                    outcome: s.outcome,
                })
                .collect();
            (rows, evaluate_ux(predict_rule, &samples))
        }
        "model" => {
            let model = train_ux(&samples, config.ux_alpha);
            let rows = samples
                .iter()
                .enumerate()
                .map(|(i, s): (usize, &UXSample)| {
                    let prediction = predict_ux(&model, s.mood, s.outcome);
                    PredictionRow {
                        row: i + 1,
                        ux: s.ux,
                        prediction: prediction.predicted,
                        confidence_positive: Some(prediction.confidence_positive),
                        confidence_negative: Some(prediction.confidence_negative),
                        mood: s.mood,
                        outcome: s.outcome,
                    }
                })
                .collect();
            let matrix = evaluate_ux(|m, o| predict_ux(&model, m, o).predicted, &samples);
            (rows, matrix)
        }
        other => return Err(Failure::Usage(format!("unknown predictor `{other}`"))),
    };

    match config.format {
        OutputFormat::Json => {
            let report = UxEvalReport {
                config,
                predictor,
                rows: &rows,
                labels: matrix.labels(),
                counts: matrix.counts(),
                accuracy: matrix.accuracy(),
            };
            let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
            print!("{out}");
        }
        OutputFormat::Csv => print!("{}", write_prediction_rows(&rows)),
        OutputFormat::Table => {
            print!("{}", matrix.to_table());
            println!("rows: {}  accuracy: {:.2}%", rows.len(), matrix.accuracy() * 100.0);
        }
    }
    Ok(())
}
