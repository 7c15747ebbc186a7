use std::collections::BTreeSet;
use std::fs;

use stratimed::engine::{explore, SynthesisResult, Termination, Verdict};
use stratimed::lang::{parse_model, parse_property, Mode};
use stratimed::model::Network;
use stratimed::oracle::enumerate_and_check;

use crate::config::{OutputFormat, RunConfig};
use crate::report::Report;

/// Process exit status of a run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExitStatus {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
    InputError = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
    /// Absent on input errors.
    pub report: Option<Report>,
}

impl RunOutput {
    fn input_error(stderr: String) -> Self {
        RunOutput {
            status: ExitStatus::InputError,
            stdout: String::new(),
            stderr,
            report: None,
        }
    }
}

/// Reads both files and runs them; unreadable files are input errors.
pub fn run(config: &RunConfig) -> RunOutput {
    let read = |p: &std::path::Path| fs::read_to_string(p).map_err(|e| format!("error: cannot read {}: {}\n", p.display(), e));
    let model = match read(&config.model_path) {
        Ok(t) => t,
        Err(e) => return RunOutput::input_error(e),
    };
    let property = match read(&config.property_path) {
        Ok(t) => t,
        Err(e) => return RunOutput::input_error(e),
    };
    run_texts(&model, &property, config)
}

fn diagnostics(origin: &str, diags: &[stratimed::diagnostic::Diagnostic]) -> String {
    diags.iter().map(|d| format!("{}:{}\n", origin, d)).collect()
}

/// Parses, explores and reports on in-memory texts.
pub fn run_texts(model: &str, property: &str, config: &RunConfig) -> RunOutput {
    let n = match parse_model(model) {
        Ok(n) => n,
        Err(d) => return RunOutput::input_error(diagnostics("model", &d)),
    };
    let p = match parse_property(property, &n) {
        Ok(p) => p,
        Err(d) => return RunOutput::input_error(diagnostics("property", &d)),
    };
    let result = explore(&n, &p, config.budget());
    let mut status = match result.verdict {
        Verdict::Holds => ExitStatus::Holds,
        Verdict::Fails => ExitStatus::Fails,
        Verdict::Unknown => ExitStatus::Inconclusive,
    };
    let mut stderr = String::new();
    if config.oracle && result.termination == Termination::Complete {
        match cross_check(&n, &p, &result) {
            Ok(None) => {}
            Ok(Some(msg)) => {
                stderr.push_str(&msg);
                status = ExitStatus::Inconclusive;
            }
            Err(e) => stderr.push_str(&format!("oracle: skipped: {}\n", e)),
        }
    }
    let report = Report::new(&n, &result);
    let stdout = match config.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
    };
    RunOutput {
        status,
        stdout,
        stderr,
        report: Some(report),
    }
}

/// `Ok(Some(message))` when the oracle disagrees with the engine.
fn cross_check(
    n: &Network,
    p: &stratimed::lang::StctlProperty,
    result: &SynthesisResult,
) -> Result<Option<String>, stratimed::oracle::OracleError> {
    let oracle: BTreeSet<String> = enumerate_and_check(n, p)?.iter().map(|s| s.render(n)).collect();
    let agrees = match p.mode {
        Mode::SynthAll => {
            let engine: BTreeSet<String> = result.strategies.iter().map(|s| s.render(n)).collect();
            engine == oracle
        }
        Mode::Check => (result.verdict == Verdict::Holds) == !oracle.is_empty(),
    };
    Ok((!agrees).then(|| format!("oracle: disagreement ({} oracle strategies)\n", oracle.len())))
}
