//! Acceptance criteria A1–A11, one PASS/FAIL line each.
//!
//! Every criterion runs its corpus entries sequentially (including the
//! re-validation of emitted certificates) under a wall-clock limit, and adds
//! checks against oracles computed here independently of the library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pairstab_algebra::{satisfies_buchberger_criterion, Ideal, MonomialOrder, Ring};
use pairstab_cli::corpus::{load_corpus, run_entry, CorpusEntry};
use pairstab_cli::{run_document, Report, RunOptions};
use serde_json::Value;

type Check = Result<(), String>;

struct Criterion {
    id: &'static str,
    limit: Duration,
    /// Limit applies to each entry rather than to the whole criterion.
    per_entry: bool,
    oracle: fn(&[CorpusEntry], &RunOptions) -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn result_of(entry: &CorpusEntry, opts: &RunOptions) -> Result<Value, String> {
    let r: Report = run_document(&entry.job, opts);
    r.result()
        .cloned()
        .ok_or_else(|| format!("{}: {}", entry.id, r.value["error"]))
}

/// Integer coefficient of the quartic `Σ c_i x^i y^(4-i)`.
fn coeffs(entry: &CorpusEntry) -> Option<Vec<i128>> {
    entry.job.payload.get("binary_form")?.as_array()?.iter().map(|c| c.as_i64().map(i128::from)).collect()
}

/// Largest multiplicity of a root of a binary form, over the rationals;
/// for degree 4 a root of multiplicity ≥ 3 is necessarily rational.
fn max_rational_multiplicity(c: &[i128]) -> usize {
    let d = c.len() - 1;
    let at_x = c.iter().position(|&a| a != 0).unwrap_or(d);
    let at_y = d - c.iter().rposition(|&a| a != 0).unwrap_or(0);
    let mut best = at_x.max(at_y);
    // roots x = (p/q) y with p ≠ 0: multiplicity via successive derivatives
    // of g(s) = Σ c_i s^i, each scaled by q^d to stay integral.
    for q in 1..=64i128 {
        for p in -64..=64i128 {
            if p == 0 || gcd(p.abs(), q) != 1 {
                continue;
            }
            let mut mult = 0;
            let mut poly: Vec<i128> = c.to_vec();
            while !poly.is_empty() {
                let deg = poly.len() - 1;
                let value: i128 = poly
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * p.pow(i as u32) * q.pow((deg - i) as u32))
                    .sum();
                if value != 0 || poly.iter().all(|&a| a == 0) {
                    break;
                }
                mult += 1;
                poly = poly.iter().enumerate().skip(1).map(|(i, a)| a * i as i128).collect();
            }
            best = best.max(mult);
        }
    }
    best
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn a1(entries: &[CorpusEntry], opts: &RunOptions) -> Check {
    let forms: Vec<&CorpusEntry> = entries.iter().filter(|e| coeffs(e).is_some()).collect();
    ensure(forms.len() >= 10, || format!("only {} binary forms", forms.len()))?;
    for e in forms {
        let c = coeffs(e).unwrap();
        let unstable = max_rational_multiplicity(&c) > 2;
        let status = result_of(e, opts)?["status"].clone();
        let want = if unstable { "unstable" } else { "semistable" };
        ensure(status == want, || format!("{}: got {status}, multiplicity criterion says {want}", e.id))?;
    }
    Ok(())
}

fn a2(entries: &[CorpusEntry], opts: &RunOptions) -> Check {
    let e = entries
        .iter()
        .find(|e| e.job.kind.name() == "locus.degeneration")
        .ok_or("no degeneration entry")?;
    let r = result_of(e, opts)?;
    let probes = r["probes"].as_array().ok_or("no probes")?;
    ensure(probes.len() == 9, || "expected the 3x3 grid".into())?;
    for p in probes {
        // the orbit (t x, y / t) has the origin in its closure iff x y = 0
        let on_axes = p["point"].as_array().unwrap().iter().any(|c| c == "0");
        ensure(p["degenerates"] == on_axes && p["in_locus"] == on_axes, || {
            format!("probe {} disagrees with the hyperbola oracle", p["point"])
        })?;
    }
    Ok(())
}

fn a3(entries: &[CorpusEntry], opts: &RunOptions) -> Check {
    for e in entries {
        let r = result_of(e, opts)?;
        for p in r["probes"].as_array().into_iter().flatten() {
            ensure(p["degenerates"] != true || p["in_locus"] == true, || {
                format!("{}: degenerating point {} outside the locus", e.id, p["point"])
            })?;
            // [1:0] is fixed by the torus and not in W
            if p["point"] == serde_json::json!(["1", "0"]) {
                ensure(p["degenerates"] == false && p["in_locus"] == true, || {
                    "[1:0] should witness strictness".into()
                })?;
            }
        }
        ensure(r["overapproximation"] == true, || "strictness flag not raised".into())?;
    }
    Ok(())
}

fn corpus_only(_: &[CorpusEntry], _: &RunOptions) -> Check {
    Ok(())
}

fn a9(entries: &[CorpusEntry], opts: &RunOptions) -> Check {
    for e in entries.iter().filter(|e| e.job.kind.name() == "pairs.stable") {
        let r = result_of(e, opts)?;
        for row in r["levels"].as_array().ok_or("no levels")? {
            let dr = row["norm"]["status"] == "stable";
            let assoc = row["associated"]["status"] == "stable";
            ensure(!dr || assoc, || format!("{}: hierarchy fails at level {}", e.id, row["level"]))?;
        }
    }
    Ok(())
}

fn a11(entries: &[CorpusEntry], opts: &RunOptions) -> Check {
    // re-check every basis emitted for a Gröbner job from its strings
    for e in entries {
        let r = result_of(e, opts)?;
        let p = &e.job.payload;
        let names = |v: &Value| -> Vec<String> {
            v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
        };
        let ring = Ring::new(names(&p["vars"])).map_err(|x| x.to_string())?;
        let order = if p["order"] == "lex" { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let mut bases = vec![(ring.clone(), &r["basis"], order)];
        if let Some(el) = r.get("elimination") {
            let sub = Ring::new(names(&el["ring"])).map_err(|x| x.to_string())?;
            bases.push((sub, &el["basis"], MonomialOrder::GrevLex));
        }
        if let Some(s) = r.get("saturation") {
            bases.push((ring.clone(), &s["basis"], MonomialOrder::GrevLex));
        }
        for (ring, basis, order) in bases {
            let gens = names(basis);
            let ideal = Ideal::parse(&ring, &gens).map_err(|x| x.to_string())?;
            ensure(satisfies_buchberger_criterion(ideal.generators(), &order), || {
                format!("{}: basis {gens:?} fails the criterion", e.id)
            })?;
        }
    }
    Ok(())
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: "A1", limit: s(1), per_entry: false, oracle: a1 },
        Criterion { id: "A2", limit: s(5), per_entry: false, oracle: a2 },
        Criterion { id: "A3", limit: s(5), per_entry: false, oracle: a3 },
        Criterion { id: "A4", limit: s(1), per_entry: true, oracle: corpus_only },
        Criterion { id: "A5", limit: s(5), per_entry: false, oracle: corpus_only },
        Criterion { id: "A6", limit: s(5), per_entry: false, oracle: corpus_only },
        Criterion { id: "A7", limit: s(10), per_entry: false, oracle: corpus_only },
        Criterion { id: "A8", limit: s(10), per_entry: false, oracle: corpus_only },
        Criterion { id: "A9", limit: s(5), per_entry: false, oracle: a9 },
        Criterion { id: "A10", limit: s(5), per_entry: false, oracle: corpus_only },
        Criterion { id: "A11", limit: s(10), per_entry: false, oracle: a11 },
    ]
}

fn run(c: &Criterion, entries: &[CorpusEntry], opts: &RunOptions) -> (Check, Duration) {
    let start = Instant::now();
    if entries.is_empty() {
        return (Err("no corpus entries".into()), start.elapsed());
    }
    for e in entries {
        let t = Instant::now();
        let outcome = run_entry(e, opts);
        if !outcome.passed {
            return (Err(format!("{}: {}", e.id, outcome.detail.unwrap_or_default())), start.elapsed());
        }
        if c.per_entry && t.elapsed() > c.limit {
            return (Err(format!("{} took {:?}", e.id, t.elapsed())), start.elapsed());
        }
    }
    let elapsed = start.elapsed();
    if !c.per_entry && elapsed > c.limit {
        return (Err(format!("took {elapsed:?}")), elapsed);
    }
    ((c.oracle)(entries, opts), elapsed)
}

fn main() -> ExitCode {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let corpus = match load_corpus(&dir) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus: {e}");
            return ExitCode::FAILURE;
        }
    };
    let opts = RunOptions::default();
    let mut failed = 0;
    for c in criteria() {
        let entries: Vec<CorpusEntry> = corpus.iter().filter(|e| e.criterion == c.id).cloned().collect();
        let (check, elapsed) = run(&c, &entries, &opts);
        let scope = if c.per_entry { " each" } else { "" };
        match check {
            Ok(()) => println!(
                "PASS {} ({} entries, {} ms, limit {} s{scope})",
                c.id,
                entries.len(),
                elapsed.as_millis(),
                c.limit.as_secs()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {} ({why})", c.id);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
