//! Symbolic semantics of the agent product: global locations, joint moves
//! and delay-closed zone successors over the agent clocks plus one extra
//! formula clock that is never reset.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::model::{owners_of, ActionId, AgentId, Edge, Guard, LocationId, Network, Relation};
use crate::zone::Bound;
use crate::{Time, TimeInterval, Zone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("the initial location invariants admit no valuation")]
    EmptyInitialZone,
    #[error("move on `{0}` is not enabled in this state")]
    DisabledMove(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GlobalLocation(pub Vec<LocationId>);

impl GlobalLocation {
    pub fn initial(n: &Network) -> Self {
        GlobalLocation(n.initial_locations())
    }

    pub fn of(&self, agent: AgentId) -> LocationId {
        self.0[agent.index()]
    }

    pub fn render(&self, n: &Network) -> String {
        let parts: Vec<String> = n
            .agents
            .iter()
            .map(|a| format!("{}.{}", a.name, a.location(self.of(a.id)).name))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// One joint transition: the action and, for each owner, the index of the
/// edge it takes within its agent's edge list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Move {
    pub action: ActionId,
    pub participants: BTreeMap<AgentId, usize>,
}

impl Move {
    pub fn edges<'n>(&'n self, n: &'n Network) -> impl Iterator<Item = (AgentId, &'n Edge)> + 'n {
        self.participants
            .iter()
            .map(move |(&a, &e)| (a, &n.agent(a).edges[e]))
    }

    pub fn target(&self, n: &Network, from: &GlobalLocation) -> GlobalLocation {
        let mut locs = from.0.clone();
        for (a, e) in self.edges(n) {
            locs[a.index()] = e.target;
        }
        GlobalLocation(locs)
    }

    /// DBM indices of every clock the move resets.
    pub fn resets(&self, n: &Network) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges(n)
            .flat_map(|(_, e)| e.resets.iter().map(|c| c.index() + 1))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicCore {
    pub loc: GlobalLocation,
    pub zone: Zone,
}

impl fmt::Display for SymbolicCore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.loc.0, self.zone)
    }
}

/// DBM index of the formula clock.
pub fn formula_clock(n: &Network) -> usize {
    n.num_clocks() + 1
}

/// Number of DBM clocks (agent clocks plus the formula clock).
pub fn zone_clocks(n: &Network) -> usize {
    n.num_clocks() + 1
}

/// Extrapolation constants for every DBM clock. The formula clock gets the
/// largest finite endpoint of `interval`, or 0 without one.
pub fn max_constants(n: &Network, interval: Option<&TimeInterval>) -> Vec<Time> {
    let mut out: Vec<Time> = n.max_constants().into_iter().map(Time::from).collect();
    out.push(interval.map_or(0, |i| i.max_constant()));
    out
}

/// Clock names for zone rendering, formula clock last.
pub fn clock_names(n: &Network) -> Vec<&str> {
    let mut names: Vec<&str> = n.clocks.iter().map(|c| c.name.as_str()).collect();
    names.push("_f");
    names
}

/// The atomic constraint `x ~ c` as DBM cells.
fn atom_cells(clock: usize, relation: Relation, c: Time) -> Vec<(usize, usize, Bound<Time>)> {
    match relation {
        Relation::Lt => vec![(clock, 0, Bound::lt(c))],
        Relation::Le => vec![(clock, 0, Bound::le(c))],
        Relation::Eq => vec![(clock, 0, Bound::le(c)), (0, clock, Bound::le(-c))],
        Relation::Ge => vec![(0, clock, Bound::le(-c))],
        Relation::Gt => vec![(0, clock, Bound::lt(-c))],
    }
}

/// `z ∩ g`.
pub fn constrain_guard(z: &Zone, g: &Guard) -> Zone {
    let cells = g
        .conjuncts
        .iter()
        .flat_map(|a| atom_cells(a.clock.index() + 1, a.relation, Time::from(a.bound)));
    z.constrain_all(cells).expect("guard clocks are in range")
}

/// `z` restricted to the invariants of every agent at `loc`.
pub fn constrain_invariants(n: &Network, loc: &GlobalLocation, z: &Zone) -> Zone {
    n.agents.iter().fold(z.clone(), |acc, a| {
        constrain_guard(&acc, &a.location(loc.of(a.id)).invariant)
    })
}

/// Time successors of `z` that stay inside the invariants at `loc`.
pub fn delay_closure(n: &Network, loc: &GlobalLocation, z: &Zone) -> Zone {
    constrain_invariants(n, loc, &z.time_elapse())
}

/// Valuations of `c.zone` from which `m` can fire: the guards hold and the
/// reset valuation satisfies the target invariants.
pub fn enabling_zone(n: &Network, c: &SymbolicCore, m: &Move) -> Zone {
    let mut z = c.zone.clone();
    for (_, e) in m.edges(n) {
        z = constrain_guard(&z, &e.guard);
    }
    let resets = m.resets(n);
    let target = m.target(n, &c.loc);
    for a in &n.agents {
        for atom in &a.location(target.of(a.id)).invariant.conjuncts {
            let idx = atom.clock.index() + 1;
            if resets.contains(&idx) {
                if !atom.relation.holds(0, atom.bound) {
                    return Zone::empty(z.clocks());
                }
            } else {
                z = z
                    .constrain_all(atom_cells(idx, atom.relation, Time::from(atom.bound)))
                    .expect("invariant clocks are in range");
            }
        }
    }
    z
}

/// Valuations of any zone at `from` from which `m` can fire.
pub fn firing_zone(n: &Network, from: &GlobalLocation, m: &Move) -> Zone {
    let core = SymbolicCore {
        loc: from.clone(),
        zone: Zone::universe(zone_clocks(n)),
    };
    enabling_zone(n, &core, m)
}

/// Undelayed post-zone: `reset(z ∩ guards) ∩ Inv(target)`.
pub fn arrival_zone(n: &Network, c: &SymbolicCore, m: &Move) -> (GlobalLocation, Zone) {
    let mut z = c.zone.clone();
    for (_, e) in m.edges(n) {
        z = constrain_guard(&z, &e.guard);
    }
    let target = m.target(n, &c.loc);
    let z = z.reset(&m.resets(n)).expect("reset clocks are in range");
    let z = constrain_invariants(n, &target, &z);
    (target, z)
}

pub fn initial_core(n: &Network) -> Result<SymbolicCore, SemanticsError> {
    let loc = GlobalLocation::initial(n);
    let start = constrain_invariants(n, &loc, &Zone::zero(zone_clocks(n)));
    if start.is_empty() {
        return Err(SemanticsError::EmptyInitialZone);
    }
    let zone = delay_closure(n, &loc, &start);
    Ok(SymbolicCore { loc, zone })
}

/// Every joint move enabled from some valuation of `c.zone`, ordered by
/// action id and then by participant edge indices.
pub fn enabled_moves(n: &Network, c: &SymbolicCore) -> Vec<Move> {
    candidate_moves(n, &c.loc)
        .into_iter()
        .filter(|m| !enabling_zone(n, c, m).is_empty())
        .collect()
}

/// Syntactically possible moves at `loc`, ignoring clocks.
pub fn candidate_moves(n: &Network, loc: &GlobalLocation) -> Vec<Move> {
    let mut out = Vec::new();
    for act in 0..n.actions.len() {
        let action = ActionId::from_index(act);
        let owners = owners_of(n, action).expect("action id in range");
        let mut combos: Vec<BTreeMap<AgentId, usize>> = vec![BTreeMap::new()];
        for &owner in &owners {
            let agent = n.agent(owner);
            let here = loc.of(owner);
            let options: Vec<usize> = agent
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.source == here && e.action == action)
                .map(|(i, _)| i)
                .collect();
            combos = combos
                .into_iter()
                .flat_map(|partial| {
                    options.iter().map(move |&i| {
                        let mut p = partial.clone();
                        p.insert(owner, i);
                        p
                    })
                })
                .collect();
        }
        out.extend(
            combos
                .into_iter()
                .filter(|p| !p.is_empty())
                .map(|participants| Move { action, participants }),
        );
    }
    out
}

pub fn apply_move(
    n: &Network,
    c: &SymbolicCore,
    m: &Move,
    max_const: &[Time],
) -> Result<SymbolicCore, SemanticsError> {
    let (loc, arrived) = arrival_zone(n, c, m);
    if arrived.is_empty() {
        return Err(SemanticsError::DisabledMove(n.action_name(m.action).to_string()));
    }
    let delayed = delay_closure(n, &loc, &arrived).extrapolate(max_const);
    let zone = constrain_invariants(n, &loc, &delayed);
    Ok(SymbolicCore { loc, zone })
}

#[cfg(test)]
mod tests;
