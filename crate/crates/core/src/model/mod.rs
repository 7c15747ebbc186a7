//! Networks of timed-automaton agents synchronising on shared actions.

mod build;
mod validate;

pub use build::{AgentSpec, ConstraintSpec, EdgeSpec, LocationSpec};
pub use validate::validate_network;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub struct $name(pub u32);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }

            pub fn from_index(i: usize) -> Self {
                $name(i as u32)
            }
        }
    };
}

id_type!(
    /// Network-wide clock identifier.
    ClockId
);
id_type!(
    /// Network-wide action identifier.
    ActionId
);
id_type!(
    /// Location identifier, scoped to its agent.
    LocationId
);
id_type!(AgentId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown action id {0}")]
    UnknownAction(u32),
    #[error("unknown agent id {0}")]
    UnknownAgent(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn holds<T: PartialOrd>(self, lhs: T, rhs: T) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `clock relation bound`, with a non-negative integer bound.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AtomicConstraint {
    pub clock: ClockId,
    pub relation: Relation,
    pub bound: u32,
}

/// Conjunction of atomic constraints; empty means `true`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Guard {
    pub conjuncts: Vec<AtomicConstraint>,
}

impl Guard {
    pub fn is_true(&self) -> bool {
        self.conjuncts.is_empty()
    }

    /// Evaluates the guard with every clock at 0.
    pub fn holds_at_zero(&self) -> bool {
        self.conjuncts.iter().all(|c| c.relation.holds(0, c.bound))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Location {
    pub id: LocationId,
    pub name: String,
    pub invariant: Guard,
    pub labels: BTreeSet<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub source: LocationId,
    pub action: ActionId,
    pub guard: Guard,
    pub resets: BTreeSet<ClockId>,
    pub target: LocationId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Agent {
    pub id: AgentId,
    pub name: String,
    pub clocks: Vec<ClockId>,
    pub locations: Vec<Location>,
    pub edges: Vec<Edge>,
    pub initial: LocationId,
}

impl Agent {
    pub fn location(&self, id: LocationId) -> &Location {
        &self.locations[id.index()]
    }

    pub fn find_location(&self, name: &str) -> Option<LocationId> {
        self.locations.iter().find(|l| l.name == name).map(|l| l.id)
    }

    pub fn outgoing(&self, from: LocationId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.source == from)
    }

    /// Distinct actions labelling edges out of `from`, in id order.
    pub fn available_actions(&self, from: LocationId) -> BTreeSet<ActionId> {
        self.outgoing(from).map(|e| e.action).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClockInfo {
    pub name: String,
    pub owner: AgentId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionInfo {
    pub name: String,
    pub owners: BTreeSet<AgentId>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Network {
    pub agents: Vec<Agent>,
    pub clocks: Vec<ClockInfo>,
    pub actions: Vec<ActionInfo>,
    /// Proposition name to the locations carrying it.
    pub propositions: BTreeMap<String, Vec<(AgentId, LocationId)>>,
}

impl Network {
    pub fn agent(&self, id: AgentId) -> &Agent {
        &self.agents[id.index()]
    }

    pub fn find_agent(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().find(|a| a.name == name).map(|a| a.id)
    }

    pub fn find_action(&self, name: &str) -> Option<ActionId> {
        self.actions
            .iter()
            .position(|a| a.name == name)
            .map(ActionId::from_index)
    }

    pub fn action_name(&self, id: ActionId) -> &str {
        &self.actions[id.index()].name
    }

    pub fn clock_name(&self, id: ClockId) -> &str {
        &self.clocks[id.index()].name
    }

    pub fn num_clocks(&self) -> usize {
        self.clocks.len()
    }

    pub fn location_name(&self, agent: AgentId, loc: LocationId) -> &str {
        &self.agent(agent).location(loc).name
    }

    pub fn initial_locations(&self) -> Vec<LocationId> {
        self.agents.iter().map(|a| a.initial).collect()
    }

    /// Largest constant each clock is compared against in any guard or
    /// invariant (0 for clocks never compared).
    pub fn max_constants(&self) -> Vec<u32> {
        let mut max = vec![0; self.clocks.len()];
        let mut visit = |g: &Guard| {
            for c in &g.conjuncts {
                let m = &mut max[c.clock.index()];
                *m = (*m).max(c.bound);
            }
        };
        for agent in &self.agents {
            for loc in &agent.locations {
                visit(&loc.invariant);
            }
            for e in &agent.edges {
                visit(&e.guard);
            }
        }
        max
    }

    /// Largest constant in the whole network.
    pub fn max_constant(&self) -> u32 {
        self.max_constants().into_iter().max().unwrap_or(0)
    }
}

/// Agents with at least one edge labelled `action`.
pub fn owners_of(n: &Network, action: ActionId) -> Result<BTreeSet<AgentId>, ModelError> {
    if action.index() >= n.actions.len() {
        return Err(ModelError::UnknownAction(action.0));
    }
    Ok(n.agents
        .iter()
        .filter(|a| a.edges.iter().any(|e| e.action == action))
        .map(|a| a.id)
        .collect())
}
