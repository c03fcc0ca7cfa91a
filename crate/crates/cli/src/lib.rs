//! Batch front-end: one JSON job document in, one JSON report out.
//!
//! A report always carries `ok`. Successful reports hold the `result` of the
//! job, the seed and budget actually used and the library versions; failed
//! reports hold an `error` with a class (`input`, `budget` or `internal`)
//! that also determines the process exit code.

pub mod corpus;
pub mod error;
pub mod input;
pub mod jobs;

use std::time::Instant;

use pairstab_algebra::Budget;
use serde_json::{json, Value};

pub use error::{CliError, Result};
pub use input::{JobDocument, JobKind, SCHEMA_VERSION};

/// The JSON schema of job documents.
pub const JOB_SCHEMA: &str = include_str!("../schema/job.schema.json");

/// Overrides applied on top of the document.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    /// Adds `timing_ms`, which makes the report non-reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub exit_code: i32,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.exit_code == 0
    }

    pub fn result(&self) -> Option<&Value> {
        self.value.get("result")
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("reports serialize") + "\n"
    }
}

fn modules() -> Value {
    json!({
        "pairstab-algebra": pairstab_algebra::VERSION,
        "pairstab-core": pairstab::VERSION,
        "pairstab-cli": env!("CARGO_PKG_VERSION"),
    })
}

fn error_report(kind: Option<JobKind>, e: &CliError) -> Report {
    let mut error = json!({ "class": e.class(), "message": e.to_string() });
    if let CliError::Input {
        position: Some(p), ..
    } = e
    {
        error["position"] = json!(p);
    }
    let mut value = json!({ "version": SCHEMA_VERSION, "ok": false, "error": error });
    if let Some(k) = kind {
        value["kind"] = json!(k.name());
    }
    Report {
        value,
        exit_code: e.exit_code(),
    }
}

/// Runs an already parsed job.
pub fn run_document(doc: &JobDocument, opts: &RunOptions) -> Report {
    let seed = opts.seed.or(doc.seed).unwrap_or(0);
    let limit = opts.budget.or(doc.budget).unwrap_or(Budget::DEFAULT_LIMIT);
    let mut budget = Budget::new(limit);
    let start = Instant::now();
    match jobs::dispatch(doc, seed, &mut budget) {
        Ok(result) => {
            let mut value = json!({
                "version": SCHEMA_VERSION,
                "kind": doc.kind.name(),
                "ok": true,
                "result": result,
                "seed": seed,
                "budget": { "limit": limit, "used": budget.used() },
                "modules": modules(),
            });
            if opts.timing {
                value["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            Report {
                value,
                exit_code: 0,
            }
        }
        Err(e) => error_report(Some(doc.kind), &e),
    }
}

/// Parses and runs a job document given as text.
pub fn run_job(text: &str, opts: &RunOptions) -> Report {
    match JobDocument::parse(text) {
        Ok(doc) => run_document(&doc, opts),
        Err(e) => error_report(None, &e),
    }
}

/// Runs every job listed under `result.verifications` and reports whether
/// each one confirmed its certificate.
pub fn verify_certificates(report: &Report, opts: &RunOptions) -> Vec<bool> {
    let Some(list) = report.result().and_then(|r| r.get("verifications")).and_then(Value::as_array) else {
        return Vec::new();
    };
    list.iter()
        .map(|job| {
            let Ok(doc) = serde_json::from_value::<JobDocument>(job.clone()) else {
                return false;
            };
            let r = run_document(&doc, opts);
            r.result().and_then(|v| v.get("certificate_valid")) == Some(&Value::Bool(true))
        })
        .collect()
}
