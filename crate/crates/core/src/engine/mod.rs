//! Strategy-branching exploration of interval-split zone graphs.
//!
//! Each branch carries a partial strategy and the outcome graph explored
//! under it. When an open node puts a coalition agent in a location it has
//! no commitment for, the branch forks once per available action.

mod explore;
mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::lang::{Mode, StctlProperty, TemporalObjective};
use crate::model::Network;
use crate::strategy::Strategy;

pub use graph::{classify, evaluate_existential, evaluate_universal, NodeClass, OutcomeGraph, OutcomeNode};

use explore::{Ctx, Shared};

/// Limits for one run; zero means unlimited.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    pub timeout: Option<Duration>,
    pub max_states: usize,
    pub max_strategies: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            timeout: Some(Duration::from_secs(120)),
            max_states: 0,
            max_strategies: 0,
            workers: 1,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            timeout: None,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Termination {
    Complete,
    Timeout,
    StateBudget,
    StrategyBudget,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Termination::Complete => "Complete",
            Termination::Timeout => "Timeout",
            Termination::StateBudget => "StateBudget",
            Termination::StrategyBudget => "StrategyBudget",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize)]
pub struct Stats {
    /// Zone-graph nodes created over all branches.
    pub explored: usize,
    /// Largest node queue of any branch.
    pub frontier_peak: usize,
    pub wall_seconds: f64,
    /// Strategy branches created, including pruned ones.
    pub branches: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SynthesisResult {
    pub mode: Mode,
    pub verdict: Verdict,
    /// Satisfying strategies restricted to the local states they were
    /// consulted in, sorted by their rendering. In check mode at most one
    /// witness.
    pub strategies: Vec<Strategy>,
    pub stats: Stats,
    pub termination: Termination,
}

impl SynthesisResult {
    pub fn is_complete(&self) -> bool {
        self.termination == Termination::Complete
    }
}

fn shared(budget: Budget) -> Shared {
    Shared {
        deadline: budget.timeout.map(|t| Instant::now() + t),
        budget,
        explored: AtomicUsize::new(0),
        frontier_peak: AtomicUsize::new(0),
        branches: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
    }
}

/// Decides or synthesises `p` on `n`.
pub fn explore(n: &Network, p: &StctlProperty, budget: Budget) -> SynthesisResult {
    let start = Instant::now();
    let ctx = Ctx::new(n, p);
    let sh = shared(budget);
    let collected = explore::run(&ctx, &sh, budget.workers.max(1), false);
    let complete = collected.termination == Termination::Complete;
    let mut strategies: Vec<Strategy> = collected
        .satisfying
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    strategies.sort_by_cached_key(|s| s.render(n));
    let verdict = match p.mode {
        Mode::Check => match collected.decided {
            Some(true) => Verdict::Holds,
            _ if !strategies.is_empty() => Verdict::Holds,
            _ if complete => Verdict::Fails,
            _ => Verdict::Unknown,
        },
        Mode::SynthAll => {
            if !strategies.is_empty() {
                Verdict::Holds
            } else if complete {
                Verdict::Fails
            } else {
                Verdict::Unknown
            }
        }
    };
    if p.mode == Mode::Check {
        strategies.truncate(1);
    }
    SynthesisResult {
        mode: p.mode,
        verdict,
        strategies,
        stats: Stats {
            explored: sh.explored.load(Ordering::Relaxed),
            frontier_peak: sh.frontier_peak.load(Ordering::Relaxed),
            wall_seconds: start.elapsed().as_secs_f64(),
            branches: sh.branches.load(Ordering::Relaxed),
        },
        termination: collected.termination,
    }
}

/// One fully explored strategy branch.
#[derive(Clone, Debug)]
pub struct BranchOutcome {
    pub strategy: Strategy,
    pub graph: OutcomeGraph,
    pub satisfied: bool,
}

/// Every strategy branch explored to completion, without early decisions,
/// in a deterministic order.
pub fn all_outcomes(n: &Network, p: &StctlProperty) -> Vec<BranchOutcome> {
    let ctx = Ctx::new(n, p);
    let sh = shared(Budget::unlimited());
    let mut out: Vec<BranchOutcome> = explore::run(&ctx, &sh, 1, true)
        .outcomes
        .into_iter()
        .map(|(strategy, graph, satisfied)| BranchOutcome {
            strategy,
            graph,
            satisfied,
        })
        .collect();
    out.sort_by_cached_key(|b| b.strategy.render(n));
    out
}

/// The outcome graph with no coalition constraints at all.
pub fn unrestricted_graph(n: &Network, objective: &TemporalObjective) -> OutcomeGraph {
    let p = StctlProperty {
        mode: Mode::SynthAll,
        coalition: BTreeSet::new(),
        objective: objective.clone(),
    };
    all_outcomes(n, &p)
        .pop()
        .map(|b| b.graph)
        .unwrap_or_default()
}
