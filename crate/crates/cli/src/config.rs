use std::path::PathBuf;
use std::time::Duration;

use stratimed::engine::Budget;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// One `verify` invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunConfig {
    pub model_path: PathBuf,
    pub property_path: PathBuf,
    /// Seconds; 0 disables the timeout.
    pub timeout_seconds: u64,
    /// 0 disables the state budget.
    pub max_states: usize,
    pub format: OutputFormat,
    pub oracle: bool,
    pub threads: usize,
}

pub const DEFAULT_TIMEOUT_SECONDS: u64 = 120;

impl RunConfig {
    pub fn new(model_path: impl Into<PathBuf>, property_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            model_path: model_path.into(),
            property_path: property_path.into(),
            timeout_seconds: DEFAULT_TIMEOUT_SECONDS,
            max_states: 0,
            format: OutputFormat::Text,
            oracle: false,
            threads: 1,
        }
    }

    pub fn budget(&self) -> Budget {
        Budget {
            timeout: (self.timeout_seconds > 0).then(|| Duration::from_secs(self.timeout_seconds)),
            max_states: self.max_states,
            max_strategies: 0,
            workers: self.threads.max(1),
        }
    }
}
