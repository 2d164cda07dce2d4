use serde::Serialize;
use serde_json::Value;

use duplab::report::{Report, Verdict};

use crate::args::Expect;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSOUND: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad descriptor or rejected input.
    Usage(String),
    /// An engine refused or failed on a well-formed input.
    Engine(String),
    /// Verdicts changed when the window was enlarged.
    Unsound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Engine(_) => EXIT_CLAIM,
            CliError::Unsound(_) => EXIT_UNSOUND,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Engine(m) | CliError::Unsound(m) => m,
        }
    }
}

#[derive(Debug)]
pub struct Timed {
    pub report: Report,
    pub ms: u64,
}

/// What a command produced: verification reports and/or plain data.
#[derive(Debug, Default)]
pub struct Run {
    pub reports: Vec<Timed>,
    pub data: Option<Value>,
    pub text: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Met,
    Unmet,
    Error,
}

#[derive(Debug, Serialize)]
pub struct JsonClaim {
    pub id: String,
    pub locus: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall time of the whole report this claim belongs to.
    pub timing_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct BatchEntry {
    pub line: usize,
    pub command: String,
    pub expect: Expect,
    pub exit_code: i32,
    pub met: bool,
    pub report: JsonReport,
}

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub expect: Expect,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub claims: Vec<JsonClaim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<BatchEntry>,
}

fn claims_of(run: &Run) -> Vec<JsonClaim> {
    run.reports
        .iter()
        .flat_map(|t| {
            t.report.stages.iter().map(move |c| JsonClaim {
                id: format!("{}.{}", t.report.claim, c.id),
                locus: c.locus.clone(),
                verdict: c.verdict,
                witness: c.witness.clone(),
                detail: c.detail.clone(),
                instance: t.report.instance.clone(),
                window: t.report.window.map(|w| w.to_string()),
                note: t.report.note.clone(),
                timing_ms: t.ms,
            })
        })
        .collect()
}

/// Exit code from the reports and the expectation: `0` iff every
/// non-skipped stage passed and that was expected, or some stage failed and
/// failure was expected.
pub fn outcome(run: &Run, expect: Expect) -> i32 {
    let failed = run.reports.iter().any(|t| t.report.failed());
    match (failed, expect) {
        (false, Expect::Pass) | (true, Expect::Fail) => EXIT_OK,
        _ => EXIT_CLAIM,
    }
}

/// Errors count as met only for `--expect fail` with a claim-level error.
pub fn error_met(err: &CliError, expect: Expect) -> bool {
    expect == Expect::Fail && matches!(err, CliError::Engine(_))
}

pub fn build_json(command: &str, seed: u64, expect: Expect, result: &Result<Run, CliError>) -> JsonReport {
    match result {
        Ok(run) => {
            let code = outcome(run, expect);
            JsonReport {
                schema_version: SCHEMA_VERSION,
                tool_version: TOOL_VERSION.to_string(),
                command: command.to_string(),
                seed,
                expect,
                status: if code == EXIT_OK { Status::Met } else { Status::Unmet },
                exit_code: code,
                error: None,
                claims: claims_of(run),
                data: run.data.clone(),
                entries: Vec::new(),
            }
        }
        Err(err) => {
            let met = error_met(err, expect);
            JsonReport {
                schema_version: SCHEMA_VERSION,
                tool_version: TOOL_VERSION.to_string(),
                command: command.to_string(),
                seed,
                expect,
                status: if met { Status::Met } else { Status::Error },
                exit_code: if met { EXIT_OK } else { err.exit_code() },
                error: Some(err.message().to_string()),
                claims: Vec::new(),
                data: None,
                entries: Vec::new(),
            }
        }
    }
}

pub fn render_text(result: &Result<Run, CliError>) -> String {
    match result {
        Ok(run) => {
            let mut out = String::new();
            if let Some(t) = &run.text {
                out.push_str(t);
            }
            for t in &run.reports {
                out.push_str(&t.report.to_text());
            }
            out
        }
        Err(err) => format!("error: {}\n", err.message()),
    }
}
