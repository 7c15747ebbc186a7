//! Memoryless imperfect-information strategies: partial maps from a
//! coalition agent's local location to the action it commits to.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::model::{ActionId, AgentId, LocationId, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("agent {0} is not in the coalition")]
    NotInCoalition(u32),
    #[error("agent {agent} location {location} is already bound to a different action")]
    Conflict { agent: u32, location: u32 },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Strategy {
    coalition: BTreeSet<AgentId>,
    choices: BTreeMap<(AgentId, LocationId), ActionId>,
}

/// One rendered binding, as emitted in reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Binding {
    pub agent: String,
    pub location: String,
    pub action: String,
}

impl Strategy {
    pub fn empty(coalition: BTreeSet<AgentId>) -> Self {
        Strategy {
            coalition,
            choices: BTreeMap::new(),
        }
    }

    pub fn coalition(&self) -> &BTreeSet<AgentId> {
        &self.coalition
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn bindings(&self) -> impl Iterator<Item = ((AgentId, LocationId), ActionId)> + '_ {
        self.choices.iter().map(|(&k, &v)| (k, v))
    }

    fn member(&self, agent: AgentId) -> Result<(), StrategyError> {
        if self.coalition.contains(&agent) {
            Ok(())
        } else {
            Err(StrategyError::NotInCoalition(agent.0))
        }
    }

    pub fn choice_of(&self, agent: AgentId, loc: LocationId) -> Result<Option<ActionId>, StrategyError> {
        self.member(agent)?;
        Ok(self.choices.get(&(agent, loc)).copied())
    }

    pub fn is_compatible(
        &self,
        agent: AgentId,
        loc: LocationId,
        action: ActionId,
    ) -> Result<bool, StrategyError> {
        Ok(self.choice_of(agent, loc)?.is_none_or(|a| a == action))
    }

    pub fn extend(&self, agent: AgentId, loc: LocationId, action: ActionId) -> Result<Strategy, StrategyError> {
        if !self.is_compatible(agent, loc, action)? {
            return Err(StrategyError::Conflict {
                agent: agent.0,
                location: loc.0,
            });
        }
        let mut next = self.clone();
        next.choices.insert((agent, loc), action);
        Ok(next)
    }

    /// Restriction to the given local states.
    pub fn canonical_form(&self, reachable: &BTreeSet<(AgentId, LocationId)>) -> Strategy {
        Strategy {
            coalition: self.coalition.clone(),
            choices: self
                .choices
                .iter()
                .filter(|(k, _)| reachable.contains(k))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Every key is a coalition agent and every chosen action labels an
    /// outgoing edge of its location.
    pub fn is_well_formed(&self, n: &Network) -> bool {
        self.choices.iter().all(|(&(a, l), act)| {
            self.coalition.contains(&a)
                && a.index() < n.agents.len()
                && n.agent(a).available_actions(l).contains(act)
        })
    }

    /// Bindings with names, sorted by agent name then location name.
    pub fn named_bindings(&self, n: &Network) -> Vec<Binding> {
        let mut out: Vec<Binding> = self
            .choices
            .iter()
            .map(|(&(a, l), &act)| Binding {
                agent: n.agent(a).name.clone(),
                location: n.location_name(a, l).to_string(),
                action: n.action_name(act).to_string(),
            })
            .collect();
        out.sort();
        out
    }

    /// One `Agent.location -> action` line per binding.
    pub fn render(&self, n: &Network) -> String {
        self.named_bindings(n)
            .iter()
            .map(|b| format!("{}.{} -> {}\n", b.agent, b.location, b.action))
            .collect()
    }
}
