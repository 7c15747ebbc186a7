//! Command-line front end: verification runs, reports, the voting model
//! generator and the benchmark sweep.

pub mod bench;
pub mod config;
pub mod report;
pub mod run;
pub mod voting;

pub use bench::{bench_sweep, render_table, BenchPoint};
pub use config::{OutputFormat, RunConfig};
pub use report::Report;
pub use run::{run, run_texts, ExitStatus, RunOutput};
pub use voting::{generate_voting, VotingError};
