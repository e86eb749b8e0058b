//! Activity definitions and their registry.
//!
//! A complex activity is an ordered list of atomic steps, each paired with
//! exactly one context attribute. Both halves carry weights that sum to 1.0
//! across the activity, and the activity carries a detection threshold plus
//! three step subsets: core steps (essential for a successful occurrence),
//! start steps (their observation opens an occurrence), and end steps (their
//! observation completes it).
//!
//! Definition files are JSON: a top-level array of activity objects. See
//! [`parse_definitions`] for the schema and `fixtures/definitions/` for the
//! bundled files. Definitions are immutable after parsing and safe to share
//! across threads.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Tolerance for weight-sum checks; definition weights are two-decimal
/// fractions, so accumulated float error stays far below this.
pub const WEIGHT_TOLERANCE: f64 = 1e-6;

/// One atomic step of a complex activity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicActivityDef {
    /// 1-based step id, unique within its parent definition.
    pub id: u32,
    pub label: String,
    /// Fraction of the activity's total atomic weight, in [0, 1].
    pub weight: f64,
}

/// The environmental precondition paired with an atomic step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextAttributeDef {
    /// Matches the id of the paired atomic step.
    pub id: u32,
    pub label: String,
    pub weight: f64,
}

/// An atomic step together with its context attribute.
///
/// Serialized flat as `{id, atomic_label, atomic_weight, context_label,
/// context_weight}`; the pairing invariant (`atomic.id == context.id`) is
/// guaranteed by construction from that form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawStep", into = "RawStep")]
pub struct StepDef {
    pub atomic: AtomicActivityDef,
    pub context: ContextAttributeDef,
}

impl StepDef {
    pub fn new(
        id: u32,
        atomic_label: impl Into<String>,
        atomic_weight: f64,
        context_label: impl Into<String>,
        context_weight: f64,
    ) -> StepDef {
        StepDef {
            atomic: AtomicActivityDef {
                id,
                label: atomic_label.into(),
                weight: atomic_weight,
            },
            context: ContextAttributeDef {
                id,
                label: context_label.into(),
                weight: context_weight,
            },
        }
    }

    pub fn id(&self) -> u32 {
        self.atomic.id
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct RawStep {
    id: u32,
    atomic_label: String,
    atomic_weight: f64,
    context_label: String,
    context_weight: f64,
}

impl From<RawStep> for StepDef {
    fn from(raw: RawStep) -> StepDef {
        StepDef::new(
            raw.id,
            raw.atomic_label,
            raw.atomic_weight,
            raw.context_label,
            raw.context_weight,
        )
    }
}

impl From<StepDef> for RawStep {
    fn from(step: StepDef) -> RawStep {
        RawStep {
            id: step.atomic.id,
            atomic_label: step.atomic.label,
            atomic_weight: step.atomic.weight,
            context_label: step.context.label,
            context_weight: step.context.weight,
        }
    }
}

/// A named, weighted, thresholded activity definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexActivityDef {
    /// Short symbol, e.g. `GS`.
    pub code: String,
    pub name: String,
    /// Minimum occurrence score for a successful completion, in (0, 1].
    pub threshold: f64,
    pub steps: Vec<StepDef>,
    pub core_ids: BTreeSet<u32>,
    pub start_ids: BTreeSet<u32>,
    pub end_ids: BTreeSet<u32>,
}

impl ComplexActivityDef {
    pub fn step(&self, id: u32) -> Option<&StepDef> {
        self.steps.iter().find(|s| s.id() == id)
    }

    pub fn step_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.steps.iter().map(|s| s.id())
    }

    pub fn atomic_weight_sum(&self) -> f64 {
        self.steps.iter().map(|s| s.atomic.weight).sum()
    }

    pub fn context_weight_sum(&self) -> f64 {
        self.steps.iter().map(|s| s.context.weight).sum()
    }
}

/// One failed validation rule, naming the offending field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Outcome of validating one definition. Violations are data, not faults.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub code: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(violations: &mut Vec<Violation>, field: &str, message: String) {
    violations.push(Violation {
        field: field.to_string(),
        message,
    });
}

/// Checks every structural invariant of a definition. Pure: the same input
/// always produces the same report.
pub fn validate_definition(def: &ComplexActivityDef) -> ValidationReport {
    let mut violations = Vec::new();

    if def.steps.is_empty() {
        violation(&mut violations, "steps", "definition has no steps".into());
    }

    if !(def.threshold > 0.0 && def.threshold <= 1.0) {
        violation(
            &mut violations,
            "threshold",
            format!("threshold must be in (0,1], got {}", def.threshold),
        );
    }

    let mut seen = BTreeSet::new();
    for step in &def.steps {
        let id = step.id();
        if id == 0 {
            violation(&mut violations, "steps.id", "step ids are 1-based".into());
        }
        if !seen.insert(id) {
            violation(
                &mut violations,
                "steps.id",
                format!("duplicate step id {id}"),
            );
        }
        if !(0.0..=1.0).contains(&step.atomic.weight) {
            violation(
                &mut violations,
                "steps.atomic_weight",
                format!(
                    "step {id} atomic weight {} outside [0,1]",
                    step.atomic.weight
                ),
            );
        }
        if !(0.0..=1.0).contains(&step.context.weight) {
            violation(
                &mut violations,
                "steps.context_weight",
                format!(
                    "step {id} context weight {} outside [0,1]",
                    step.context.weight
                ),
            );
        }
    }

    if !def.steps.is_empty() {
        let atomic_sum = def.atomic_weight_sum();
        if (atomic_sum - 1.0).abs() > WEIGHT_TOLERANCE {
            violation(
                &mut violations,
                "steps.atomic_weight",
                format!("atomic weights must sum to 1.0, got {atomic_sum}"),
            );
        }
        let context_sum = def.context_weight_sum();
        if (context_sum - 1.0).abs() > WEIGHT_TOLERANCE {
            violation(
                &mut violations,
                "steps.context_weight",
                format!("context weights must sum to 1.0, got {context_sum}"),
            );
        }
    }

    for (field, set) in [
        ("core_ids", &def.core_ids),
        ("start_ids", &def.start_ids),
        ("end_ids", &def.end_ids),
    ] {
        if set.is_empty() {
            violation(
                &mut violations,
                field,
                format!("{field} must be a nonempty subset of step ids"),
            );
        }
        for id in set {
            if !seen.contains(id) {
                violation(
                    &mut violations,
                    field,
                    format!("{field} references unknown step id {id}"),
                );
            }
        }
    }

    if def.start_ids.intersection(&def.end_ids).next().is_some() {
        violation(
            &mut violations,
            "start_ids",
            "start_ids and end_ids must be disjoint".into(),
        );
    }

    ValidationReport {
        code: def.code.clone(),
        violations,
    }
}

#[derive(Debug, Error)]
pub enum DefinitionError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid definition `{code}`: {}", format_violations(.violations))]
    Invalid {
        code: String,
        violations: Vec<Violation>,
    },
    #[error("duplicate definition code `{0}`")]
    DuplicateCode(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parses the file syntax and schema only; definitions may still violate
/// model invariants. Used where every definition's violations should be
/// reported rather than failing on the first bad one.
pub fn parse_definitions_unchecked(
    source: &[u8],
) -> Result<Vec<ComplexActivityDef>, DefinitionError> {
    serde_json::from_slice(source).map_err(|err| match err.classify() {
        serde_json::error::Category::Data => DefinitionError::Schema(err.to_string()),
        _ => DefinitionError::Syntax {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        },
    })
}

/// Parses a definition file: a UTF-8 JSON array of activity objects
/// `{code, name, threshold, steps, core_ids, start_ids, end_ids}` where each
/// step is `{id, atomic_label, atomic_weight, context_label, context_weight}`.
///
/// Every returned definition has passed [`validate_definition`], and file
/// order is preserved.
pub fn parse_definitions(source: &[u8]) -> Result<Vec<ComplexActivityDef>, DefinitionError> {
    let defs = parse_definitions_unchecked(source)?;
    for def in &defs {
        let report = validate_definition(def);
        if !report.is_ok() {
            return Err(DefinitionError::Invalid {
                code: report.code,
                violations: report.violations,
            });
        }
    }
    Ok(defs)
}

/// Canonical serialization; `parse_definitions` of the output reproduces the
/// input definitions exactly.
pub fn serialize_definitions(defs: &[ComplexActivityDef]) -> String {
    let mut out = serde_json::to_string_pretty(defs).expect("definitions serialize");
    out.push('\n');
    out
}

/// An ordered, code-indexed set of definitions.
///
/// The registry also assigns every step a global id: definitions keep their
/// own 1-based local ids, and the registry lays them out contiguously in
/// registration order (first definition's steps, then the second's, …).
/// Event streams address steps by global id, which keeps streams for
/// different activities disjoint even though every definition numbers its
/// own steps from 1.
#[derive(Clone, Debug)]
pub struct DefinitionRegistry {
    defs: Vec<ComplexActivityDef>,
    /// Global id of each definition's first step.
    bases: Vec<u32>,
    by_code: BTreeMap<String, usize>,
}

impl DefinitionRegistry {
    pub fn new(defs: Vec<ComplexActivityDef>) -> Result<DefinitionRegistry, DefinitionError> {
        let mut by_code = BTreeMap::new();
        let mut bases = Vec::with_capacity(defs.len());
        let mut next = 1u32;
        for (i, def) in defs.iter().enumerate() {
            if by_code.insert(def.code.clone(), i).is_some() {
                return Err(DefinitionError::DuplicateCode(def.code.clone()));
            }
            bases.push(next);
            next += def.steps.len() as u32;
        }
        Ok(DefinitionRegistry {
            defs,
            bases,
            by_code,
        })
    }

    /// Parses and validates a definition file, then indexes it.
    pub fn from_json(source: &[u8]) -> Result<DefinitionRegistry, DefinitionError> {
        DefinitionRegistry::new(parse_definitions(source)?)
    }

    pub fn defs(&self) -> &[ComplexActivityDef] {
        &self.defs
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&ComplexActivityDef> {
        self.by_code.get(code).map(|&i| &self.defs[i])
    }

    pub(crate) fn index_of(&self, code: &str) -> Option<usize> {
        self.by_code.get(code).copied()
    }

    /// Global id of a definition's local step id.
    pub fn global_step_id(&self, code: &str, local_id: u32) -> Option<u32> {
        let idx = self.index_of(code)?;
        let pos = self.defs[idx].steps.iter().position(|s| s.id() == local_id)?;
        Some(self.bases[idx] + pos as u32)
    }

    /// Resolves a global step id to its definition and local step id.
    pub fn resolve_step(&self, global_id: u32) -> Option<(&ComplexActivityDef, u32)> {
        self.resolve_step_indexed(global_id)
            .map(|(idx, local)| (&self.defs[idx], local))
    }

    pub(crate) fn resolve_step_indexed(&self, global_id: u32) -> Option<(usize, u32)> {
        if global_id == 0 {
            return None;
        }
        let idx = match self.bases.binary_search(&global_id) {
            Ok(i) => i,
            Err(0) => return None,
            Err(i) => i - 1,
        };
        let pos = (global_id - self.bases[idx]) as usize;
        self.defs[idx].steps.get(pos).map(|s| (idx, s.id()))
    }

    /// Total number of steps across all definitions.
    pub fn total_steps(&self) -> u32 {
        self.defs.iter().map(|d| d.steps.len() as u32).sum()
    }
}
