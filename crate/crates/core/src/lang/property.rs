use std::collections::BTreeSet;

use crate::model::{AgentId, LocationId, Network};
use crate::TimeInterval;

/// Boolean formula over the current global location.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum StateFormula {
    True,
    False,
    /// A label carried by some agent's current location.
    Prop(String),
    /// `agent.location`
    At(AgentId, LocationId),
    Not(Box<StateFormula>),
    And(Box<StateFormula>, Box<StateFormula>),
    Or(Box<StateFormula>, Box<StateFormula>),
}

impl StateFormula {
    pub fn negate(f: StateFormula) -> Self {
        StateFormula::Not(Box::new(f))
    }

    pub fn and(l: StateFormula, r: StateFormula) -> Self {
        StateFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: StateFormula, r: StateFormula) -> Self {
        StateFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn prop(name: &str) -> Self {
        StateFormula::Prop(name.to_string())
    }

    pub fn holds(&self, n: &Network, locs: &[LocationId]) -> bool {
        match self {
            StateFormula::True => true,
            StateFormula::False => false,
            StateFormula::Prop(p) => n
                .propositions
                .get(p)
                .is_some_and(|places| places.iter().any(|(a, l)| locs[a.index()] == *l)),
            StateFormula::At(a, l) => locs[a.index()] == *l,
            StateFormula::Not(f) => !f.holds(n, locs),
            StateFormula::And(l, r) => l.holds(n, locs) && r.holds(n, locs),
            StateFormula::Or(l, r) => l.holds(n, locs) || r.holds(n, locs),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TemporalOp {
    Until,
    Release,
}

/// `Q left OP_I right`, always in normalized form: `F_I φ` is held as
/// `true U_I φ` and `G_I φ` as `false R_I φ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TemporalObjective {
    pub quantifier: Quantifier,
    pub op: TemporalOp,
    pub interval: TimeInterval,
    pub left: StateFormula,
    pub right: StateFormula,
}

impl TemporalObjective {
    pub fn eventually(quantifier: Quantifier, interval: TimeInterval, target: StateFormula) -> Self {
        TemporalObjective {
            quantifier,
            op: TemporalOp::Until,
            interval,
            left: StateFormula::True,
            right: target,
        }
    }

    pub fn globally(quantifier: Quantifier, interval: TimeInterval, target: StateFormula) -> Self {
        TemporalObjective {
            quantifier,
            op: TemporalOp::Release,
            interval,
            left: StateFormula::False,
            right: target,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Check,
    SynthAll,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StctlProperty {
    pub mode: Mode,
    pub coalition: BTreeSet<AgentId>,
    pub objective: TemporalObjective,
}
