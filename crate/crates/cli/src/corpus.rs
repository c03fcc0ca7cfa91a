//! Golden corpus: directories of `*.json` entries, each a job together with
//! the subset of its result that must match.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::input::JobDocument;
use crate::{run_document, verify_certificates, RunOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub criterion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub job: JobDocument,
    /// Matched against `result` as a subset: objects by key, arrays
    /// element-wise with equal length, scalars by equality.
    #[serde(default)]
    pub expect: Value,
    /// Expected error class instead of a result.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryOutcome {
    pub id: String,
    pub criterion: String,
    pub passed: bool,
    /// Why the entry failed, if it did.
    pub detail: Option<String>,
    pub certificates: usize,
    pub millis: u128,
}

/// Whether `actual` contains everything in `expected`; on failure returns the
/// JSON path of the first mismatch.
pub fn subset_match(expected: &Value, actual: &Value) -> std::result::Result<(), String> {
    fn go(e: &Value, a: &Value, path: &mut String) -> std::result::Result<(), String> {
        match (e, a) {
            (Value::Object(eo), Value::Object(ao)) => {
                for (k, ev) in eo {
                    let len = path.len();
                    path.push('.');
                    path.push_str(k);
                    let av = ao.get(k).ok_or_else(|| format!("{path}: missing"))?;
                    go(ev, av, path)?;
                    path.truncate(len);
                }
                Ok(())
            }
            (Value::Array(ea), Value::Array(aa)) => {
                if ea.len() != aa.len() {
                    return Err(format!("{path}: length {} != {}", aa.len(), ea.len()));
                }
                for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                    let len = path.len();
                    path.push_str(&format!("[{i}]"));
                    go(ev, av, path)?;
                    path.truncate(len);
                }
                Ok(())
            }
            _ if e == a => Ok(()),
            _ => Err(format!("{path}: expected {e}, got {a}")),
        }
    }
    go(expected, actual, &mut String::from("result"))
}

/// Loads every `*.json` file of `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::input(format!("cannot read corpus {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::input(format!("corpus {} has no entries", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        })
        .collect()
}

pub fn run_entry(entry: &CorpusEntry, opts: &RunOptions) -> EntryOutcome {
    let start = Instant::now();
    let report = run_document(&entry.job, opts);
    let mut certificates = 0;
    let detail = match (&entry.expect_error, report.is_ok()) {
        (Some(class), false) => {
            let got = report.value["error"]["class"].as_str().unwrap_or_default();
            (got != class).then(|| format!("expected {class} error, got {got}"))
        }
        (Some(class), true) => Some(format!("expected {class} error, job succeeded")),
        (None, false) => Some(format!("job failed: {}", report.value["error"]["message"])),
        (None, true) => {
            let result = report.result().cloned().unwrap_or(Value::Null);
            match subset_match(&entry.expect, &result) {
                Err(m) => Some(m),
                Ok(()) => {
                    let checks = verify_certificates(&report, opts);
                    certificates = checks.len();
                    checks
                        .iter()
                        .position(|ok| !ok)
                        .map(|i| format!("verification job {i} rejected its certificate"))
                }
            }
        }
    };
    EntryOutcome {
        id: entry.id.clone(),
        criterion: entry.criterion.clone(),
        passed: detail.is_none(),
        detail,
        certificates,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs all entries concurrently; outcomes keep the corpus order.
pub fn run_corpus(entries: &[CorpusEntry], opts: &RunOptions) -> Vec<EntryOutcome> {
    entries.par_iter().map(|e| run_entry(e, opts)).collect()
}

/// Orders criterion IDs by prefix, then numerically (`A2` before `A10`).
pub fn criterion_key(id: &str) -> (String, u64, String) {
    let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
    let (prefix, rest) = id.split_at(split);
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    (prefix.to_string(), digits.parse().unwrap_or(0), id.to_string())
}

/// `(criterion, passed, total)` in criterion order.
pub fn summarize(outcomes: &[EntryOutcome]) -> Vec<(String, usize, usize)> {
    let mut map: BTreeMap<(String, u64, String), (usize, usize)> = BTreeMap::new();
    for o in outcomes {
        let e = map.entry(criterion_key(&o.criterion)).or_default();
        e.0 += usize::from(o.passed);
        e.1 += 1;
    }
    map.into_iter().map(|((.., id), (p, t))| (id, p, t)).collect()
}
