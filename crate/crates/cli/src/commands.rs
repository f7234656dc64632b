//! The `table`, `blocks` and `verify` commands.

use std::fmt;
use std::path::Path;

use blockcheck_core::blocktheory::{block_distribution, block_summary};
use blockcheck_core::chartable::{dixon_schneider_with_limit, CharacterTable};
use blockcheck_core::realconj::{verify_with_table, VerificationReport, VerifyOptions};
use blockcheck_core::{Error, DEFAULT_MAX_ORDER};
use serde_json::{json, Value};

use crate::groupfile::{parse_group_file, GroupFile, ParseError};
use crate::report::{envelope, to_value};

pub const MAX_ORDER_VAR: &str = "BLOCKCHECK_MAX_ORDER";

/// Failure of a command; each kind has its own exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(ParseError),
    Usage(String),
    Io(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::Engine(Error::Input(_)) => 2,
            CliError::Io(_) => 2,
            CliError::Engine(Error::Capacity { .. }) => 3,
            CliError::Engine(Error::Internal { .. }) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Engine(Error::Capacity { stage, detail }) => {
                write!(f, "capacity exceeded in stage {stage}: {detail}")
            }
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

/// The order cap from `BLOCKCHECK_MAX_ORDER`, default 20000.
pub fn max_order_from_env() -> Result<u64, CliError> {
    match std::env::var(MAX_ORDER_VAR) {
        Err(_) => Ok(DEFAULT_MAX_ORDER),
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{MAX_ORDER_VAR} must be a positive integer, got {s:?}"))),
    }
}

/// Parses the file and computes its verified character table.
pub fn load_table(path: &Path, max_order: u64) -> Result<(GroupFile, CharacterTable), CliError> {
    let file = parse_group_file(path)?;
    let table = dixon_schneider_with_limit(&file.group, max_order)?;
    let defects = table.verify()?;
    if !defects.is_empty() {
        return Err(Error::Internal { stage: "character_table", detail: format!("table failed its checks: {defects:?}") }.into());
    }
    Ok((file, table))
}

/// `table <file>`: the stable text dump of the character table.
pub fn table_command(path: &Path, max_order: u64) -> Result<String, CliError> {
    let (_, table) = load_table(path, max_order)?;
    Ok(table.dump())
}

/// `blocks -p <prime> <file>`: one summary record per block.
pub fn blocks_command(path: &Path, p: u64, max_order: u64) -> Result<Value, CliError> {
    let (file, table) = load_table(path, max_order)?;
    let blocks = block_distribution(&table, p)?;
    let summaries: Vec<Value> = blocks
        .iter()
        .map(|b| block_summary(b).map(|s| to_value(&s)))
        .collect::<Result<_, _>>()?;
    Ok(envelope(
        "blocks",
        vec![
            ("group", json!(file.name)),
            ("order", json!(file.declared_order)),
            ("prime", json!(p.to_string())),
            ("blocks", Value::Array(summaries)),
        ],
    ))
}

#[derive(Clone, Debug)]
pub struct VerifyFlags {
    pub prime: u64,
    pub force_odd_prime: bool,
    pub expect_violation: bool,
    pub max_n: Option<usize>,
    pub max_order: u64,
}

/// Whether a report passes under the exit-status rule of `verify`: no
/// non-vacuous verdict fails and no theorem check fails; with
/// `--force-odd-prime` at an odd prime, a violation must occur exactly when
/// `--expect-violation` is given.
pub fn report_passes(report: &VerificationReport, forced: bool, expect_violation: bool) -> bool {
    let violated = report.violations().next().is_some();
    let checks_ok = report.failed_checks().next().is_none();
    if forced {
        checks_ok && violated == expect_violation
    } else {
        checks_ok && !violated
    }
}

pub fn verify_report(file: &GroupFile, table: CharacterTable, flags: &VerifyFlags) -> Result<VerificationReport, CliError> {
    let opts = VerifyOptions {
        force_odd_prime: flags.force_odd_prime,
        max_n: flags.max_n,
        max_order: flags.max_order,
        seed: 0,
    };
    Ok(verify_with_table(&file.name, &std::sync::Arc::new(table), flags.prime, &opts)?)
}

pub fn outcome_value(report: &VerificationReport, pass: bool) -> Value {
    let violations: Vec<Value> = report
        .violations()
        .map(|(b, v)| json!({"block": b.index, "id": v.id, "lhs": v.lhs, "rhs": v.rhs}))
        .collect();
    let failed: Vec<Value> = report.failed_checks().map(|c| json!({"id": c.id, "details": c.details})).collect();
    json!({
        "pass": pass,
        "violations": violations,
        "violation_count": violations.len().to_string(),
        "failed_checks": failed,
        "failed_check_count": failed.len().to_string(),
    })
}

/// `verify`: the report and whether the exit status is 0.
pub fn verify_command(path: &Path, flags: &VerifyFlags) -> Result<(Value, bool), CliError> {
    let (file, table) = load_table(path, flags.max_order)?;
    let report = verify_report(&file, table, flags)?;
    let forced = flags.force_odd_prime && flags.prime != 2;
    let pass = report_passes(&report, forced, flags.expect_violation);
    let value = envelope(
        "verify",
        vec![
            ("provenance", json!(file.provenance)),
            (
                "options",
                json!({
                    "force_odd_prime": flags.force_odd_prime,
                    "expect_violation": flags.expect_violation,
                    "max_n": flags.max_n.map(|n| n.to_string()),
                    "max_order": flags.max_order.to_string(),
                }),
            ),
            ("outcome", outcome_value(&report, pass)),
            ("report", to_value(&report)),
        ],
    );
    Ok((value, pass))
}
