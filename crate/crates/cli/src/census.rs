//! Census over a manifest of group files, run in parallel and merged in a
//! fixed order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::commands::{load_table, outcome_value, report_passes, verify_report, CliError, VerifyFlags};
use crate::report::{envelope, lookup, to_value};

pub const MANIFEST_SCHEMA: &str = "blockcheck-manifest/1";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: String,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    /// Relative to the manifest's directory.
    pub file: String,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub force_odd_prime: bool,
    #[serde(default)]
    pub expect_violation: bool,
    #[serde(default)]
    pub highlights: Vec<Highlight>,
}

/// Golden counts: each `expect` key is a dotted path into the selected
/// block's report (or the group report when `block` is absent).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Highlight {
    pub prime: u64,
    #[serde(default)]
    pub block: Option<BlockSelector>,
    pub expect: Map<String, Value>,
    #[serde(default)]
    pub source: String,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSelector {
    pub principal: Option<bool>,
    pub real: Option<bool>,
    pub defect_group_order: Option<String>,
    pub abelian_invariants: Option<Vec<String>>,
}

impl BlockSelector {
    fn matches(&self, block: &Value) -> bool {
        let s = &block["summary"];
        self.principal.is_none_or(|p| s["is_principal"] == json!(p))
            && self.real.is_none_or(|r| s["is_real"] == json!(r))
            && self.defect_group_order.as_ref().is_none_or(|o| s["defect_group_order"] == json!(o))
            && self.abelian_invariants.as_ref().is_none_or(|a| s["defect_group"]["abelian_invariants"] == json!(a))
    }
}

pub fn load_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let m: Manifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}:{}:{}: bad manifest: {e}", path.display(), e.line(), e.column())))?;
    if m.schema != MANIFEST_SCHEMA {
        return Err(CliError::Usage(format!("{}: expected schema {MANIFEST_SCHEMA}", path.display())));
    }
    Ok(m)
}

struct Job {
    file: String,
    path: PathBuf,
    prime: u64,
    force_odd_prime: bool,
    expect_violation: bool,
    highlights: Vec<Highlight>,
}

fn check_highlight(h: &Highlight, report: &Value) -> Value {
    let targets: Vec<&Value> = match &h.block {
        None => vec![report],
        Some(sel) => report["blocks"].as_array().map_or(Vec::new(), |bs| bs.iter().filter(|b| sel.matches(b)).collect()),
    };
    let mut checks = Vec::new();
    let mut ok = targets.len() == 1;
    for (path, expected) in &h.expect {
        let actual = targets.first().and_then(|t| lookup(t, path)).cloned().unwrap_or(Value::Null);
        let matches = targets.len() == 1 && &actual == expected;
        ok &= matches;
        checks.push(json!({"path": path, "expected": expected, "actual": actual, "matches": matches}));
    }
    json!({
        "prime": h.prime.to_string(),
        "source": h.source,
        "selected_blocks": targets.len().to_string(),
        "checks": checks,
        "matches": ok,
    })
}

fn run_job(job: &Job, max_order: u64) -> Value {
    let forced = job.force_odd_prime && job.prime != 2;
    let mut entry = json!({
        "file": job.file,
        "prime": job.prime.to_string(),
        "force_odd_prime": job.force_odd_prime,
        "expect_violation": job.expect_violation,
    });
    let flags = VerifyFlags {
        prime: job.prime,
        force_odd_prime: job.force_odd_prime,
        expect_violation: job.expect_violation,
        max_n: None,
        max_order,
    };
    let result = load_table(&job.path, max_order).and_then(|(file, table)| {
        let report = verify_report(&file, table, &flags)?;
        Ok((file, report))
    });
    match result {
        Err(e) => {
            entry["group"] = json!(job.file.trim_end_matches(".grp"));
            entry["status"] = json!("error");
            entry["error"] = json!(e.to_string());
            entry["unexpected"] = json!(true);
        }
        Ok((file, report)) => {
            let pass = report_passes(&report, forced, job.expect_violation);
            let report_value = to_value(&report);
            let highlights: Vec<Value> = job
                .highlights
                .iter()
                .filter(|h| h.prime == job.prime)
                .map(|h| check_highlight(h, &report_value))
                .collect();
            let highlights_ok = highlights.iter().all(|h| h["matches"] == json!(true));
            entry["group"] = json!(file.name);
            entry["status"] = json!("ok");
            entry["outcome"] = outcome_value(&report, pass);
            entry["highlights"] = Value::Array(highlights);
            entry["unexpected"] = json!(!(pass && highlights_ok));
            entry["report"] = report_value;
        }
    }
    entry
}

fn count(entries: &[Value], pred: impl Fn(&Value) -> bool) -> String {
    entries.iter().filter(|e| pred(e)).count().to_string()
}

/// Runs every (file, prime) job; returns the report and whether nothing
/// unexpected happened.
pub fn census_command(manifest_path: &Path, max_order: u64) -> Result<(Value, bool), CliError> {
    let manifest = load_manifest(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let mut jobs = Vec::new();
    for e in &manifest.entries {
        if e.primes.is_empty() {
            return Err(CliError::Usage(format!("manifest entry {} lists no primes", e.file)));
        }
        for &p in &e.primes {
            jobs.push(Job {
                file: e.file.clone(),
                path: base.join(&e.file),
                prime: p,
                force_odd_prime: e.force_odd_prime,
                expect_violation: e.expect_violation,
                highlights: e.highlights.clone(),
            });
        }
    }
    let mut entries: Vec<Value> = jobs.par_iter().map(|j| run_job(j, max_order)).collect();
    let key = |e: &Value| {
        (
            e["group"].as_str().unwrap_or_default().to_string(),
            e["prime"].as_str().and_then(|p| p.parse::<u64>().ok()).unwrap_or(0),
            e["file"].as_str().unwrap_or_default().to_string(),
        )
    };
    entries.sort_by_key(key);

    let violations_in = |e: &Value| {
        e["outcome"]["violation_count"].as_str().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0)
    };
    let unforced_violations: usize = entries
        .iter()
        .filter(|e| !(e["force_odd_prime"] == json!(true) && e["prime"] != json!("2")))
        .map(violations_in)
        .sum();
    let forced_violations: usize = entries.iter().map(violations_in).sum::<usize>() - unforced_violations;
    let failed_checks: usize = entries
        .iter()
        .map(|e| e["outcome"]["failed_check_count"].as_str().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0))
        .sum();
    let highlight_mismatches: usize = entries
        .iter()
        .flat_map(|e| e["highlights"].as_array().cloned().unwrap_or_default())
        .filter(|h| h["matches"] != json!(true))
        .count();
    let c2_scope: Vec<&Value> = entries
        .iter()
        .filter(|e| e["prime"] == json!("2") && e["status"] == json!("ok"))
        .filter(|e| {
            let r = &e["report"];
            r["abelian"] == json!(true) || r["order"].as_str().and_then(|o| o.parse::<u64>().ok()).is_some_and(u64::is_power_of_two)
        })
        .collect();
    let c2_equal = c2_scope
        .iter()
        .filter(|e| {
            e["report"]["blocks"].as_array().into_iter().flatten().any(|b| {
                b["summary"]["is_principal"] == json!(true)
                    && b["conjectures"].as_array().into_iter().flatten().any(|v| v["id"] == json!("C2") && v["lhs"] == v["rhs"])
            })
        })
        .count();
    let unexpected = count(&entries, |e| e["unexpected"] == json!(true));
    let ok = unexpected == "0";
    let summary = json!({
        "jobs": entries.len().to_string(),
        "errors": count(&entries, |e| e["status"] == json!("error")),
        "unexpected": unexpected,
        "conjecture_violations": unforced_violations.to_string(),
        "forced_odd_prime_violations": forced_violations.to_string(),
        "failed_theorem_checks": failed_checks.to_string(),
        "highlight_mismatches": highlight_mismatches.to_string(),
        "two_group_or_abelian_at_2": c2_scope.len().to_string(),
        "c2_equalities": c2_equal.to_string(),
    });
    let value = envelope(
        "census",
        vec![
            ("max_order", json!(max_order.to_string())),
            ("summary", summary),
            ("entries", Value::Array(entries)),
        ],
    );
    Ok((value, ok))
}
