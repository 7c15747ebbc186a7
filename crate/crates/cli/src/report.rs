use std::fmt::Write;

use serde::Serialize;

use stratimed::engine::SynthesisResult;
use stratimed::lang::Mode;
use stratimed::model::Network;
use stratimed::strategy::Binding;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StrategyReport {
    pub bindings: Vec<Binding>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsReport {
    pub explored: usize,
    pub frontier_peak: usize,
    /// Rounded to hundredths.
    pub wall_seconds: f64,
    pub branches: usize,
}

/// The stable, serializable view of a run.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Report {
    pub mode: String,
    pub verdict: String,
    pub strategies: Vec<StrategyReport>,
    pub stats: StatsReport,
    pub termination: String,
}

impl Report {
    pub fn new(n: &Network, r: &SynthesisResult) -> Self {
        Report {
            mode: match r.mode {
                Mode::Check => "check",
                Mode::SynthAll => "synth",
            }
            .to_string(),
            verdict: r.verdict.to_string(),
            strategies: r
                .strategies
                .iter()
                .map(|s| StrategyReport {
                    bindings: s.named_bindings(n),
                })
                .collect(),
            stats: StatsReport {
                explored: r.stats.explored,
                frontier_peak: r.stats.frontier_peak,
                wall_seconds: (r.stats.wall_seconds * 100.0).round() / 100.0,
                branches: r.stats.branches,
            },
            termination: r.termination.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mode: {}", self.mode).unwrap();
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        writeln!(out, "strategies: {}", self.strategies.len()).unwrap();
        for (k, s) in self.strategies.iter().enumerate() {
            writeln!(out, "strategy {}:", k + 1).unwrap();
            if s.bindings.is_empty() {
                writeln!(out, "  (no commitments)").unwrap();
            }
            for b in &s.bindings {
                writeln!(out, "  {}.{} -> {}", b.agent, b.location, b.action).unwrap();
            }
        }
        writeln!(
            out,
            "stats: explored {}, frontier peak {}, branches {}, wall {:.2}s",
            self.stats.explored, self.stats.frontier_peak, self.stats.branches, self.stats.wall_seconds
        )
        .unwrap();
        writeln!(out, "termination: {}", self.termination).unwrap();
        out
    }
}
