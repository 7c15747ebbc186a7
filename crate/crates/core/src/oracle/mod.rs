//! Brute-force reference: explicit region graphs and exhaustive strategy
//! enumeration for small instances. Shares nothing with the zone engine
//! beyond the input types.

mod region;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::lang::{Quantifier, StctlProperty, TemporalOp};
use crate::model::{ActionId, AgentId, Guard, LocationId, Network};
use crate::strategy::Strategy;
use crate::TimeInterval;

pub use region::{all_regions, Region};

pub const MAX_CLOCKS: usize = 3;
pub const MAX_CONSTANT: u32 = 8;
pub const MAX_STRATEGIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} clocks including the formula clock exceed the oracle limit of {MAX_CLOCKS}")]
    TooManyClocks(usize),
    #[error("constant {0} exceeds the oracle limit of {MAX_CONSTANT}")]
    ConstantTooLarge(u32),
    #[error("{0} strategies exceed the oracle limit of {MAX_STRATEGIES}")]
    TooManyStrategies(u128),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RegionEdge {
    Delay,
    Move {
        action: ActionId,
        participants: BTreeMap<AgentId, usize>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct RegionGraph {
    /// Agent clocks first, the formula clock last.
    pub max: Vec<u32>,
    pub nodes: Vec<(Vec<LocationId>, Region)>,
    pub edges: Vec<Vec<(RegionEdge, usize)>>,
}

impl RegionGraph {
    pub fn locations(&self) -> BTreeSet<Vec<LocationId>> {
        self.nodes.iter().map(|(l, _)| l.clone()).collect()
    }
}

fn guard_max(g: &Guard, max: &mut [u32]) {
    for a in &g.conjuncts {
        let m = &mut max[a.clock.index()];
        *m = (*m).max(a.bound);
    }
}

/// Per-clock constants with `formula_max` appended for the formula clock.
fn constants(n: &Network, formula_max: u32) -> Result<Vec<u32>, OracleError> {
    let mut max = vec![0; n.clocks.len()];
    for a in &n.agents {
        for l in &a.locations {
            guard_max(&l.invariant, &mut max);
        }
        for e in &a.edges {
            guard_max(&e.guard, &mut max);
        }
    }
    max.push(formula_max);
    if max.len() > MAX_CLOCKS {
        return Err(OracleError::TooManyClocks(max.len()));
    }
    if let Some(&big) = max.iter().find(|&&m| m > MAX_CONSTANT) {
        return Err(OracleError::ConstantTooLarge(big));
    }
    Ok(max)
}

fn holds(g: &Guard, r: &Region, max: &[u32]) -> bool {
    g.conjuncts
        .iter()
        .all(|a| r.satisfies(max, a.clock.index(), a.relation, a.bound))
}

fn invariants_hold(n: &Network, locs: &[LocationId], r: &Region, max: &[u32]) -> bool {
    n.agents
        .iter()
        .all(|a| holds(&a.location(locs[a.id.index()]).invariant, r, max))
}

/// Successors of one region node: the delay successor (when it respects
/// the invariants) and every discrete joint move.
fn successors(n: &Network, locs: &[LocationId], r: &Region, max: &[u32]) -> Vec<(RegionEdge, Vec<LocationId>, Region)> {
    let mut out = Vec::new();
    if let Some(d) = r.delay_successor(max) {
        if invariants_hold(n, locs, &d, max) {
            out.push((RegionEdge::Delay, locs.to_vec(), d));
        }
    }
    let mut actions: BTreeSet<ActionId> = BTreeSet::new();
    for a in &n.agents {
        actions.extend(a.edges.iter().map(|e| e.action));
    }
    for action in actions {
        let owners: Vec<AgentId> = n
            .agents
            .iter()
            .filter(|a| a.edges.iter().any(|e| e.action == action))
            .map(|a| a.id)
            .collect();
        let mut combos: Vec<BTreeMap<AgentId, usize>> = vec![BTreeMap::new()];
        for &o in &owners {
            let agent = n.agent(o);
            let mut next = Vec::new();
            for combo in &combos {
                for (i, e) in agent.edges.iter().enumerate() {
                    if e.source == locs[o.index()] && e.action == action {
                        let mut c = combo.clone();
                        c.insert(o, i);
                        next.push(c);
                    }
                }
            }
            combos = next;
        }
        for participants in combos {
            let edges: Vec<_> = participants.iter().map(|(&a, &i)| (a, &n.agent(a).edges[i])).collect();
            if !edges.iter().all(|(_, e)| holds(&e.guard, r, max)) {
                continue;
            }
            let resets: Vec<usize> = edges.iter().flat_map(|(_, e)| e.resets.iter().map(|c| c.index())).collect();
            let target_region = r.reset(&resets, max);
            let mut target = locs.to_vec();
            for (a, e) in &edges {
                target[a.index()] = e.target;
            }
            if invariants_hold(n, &target, &target_region, max) {
                out.push((RegionEdge::Move { action, participants }, target, target_region));
            }
        }
    }
    out
}

/// The reachable region graph of the whole product, with the formula clock
/// compared against constants up to `formula_max`.
pub fn build_region_graph(n: &Network, formula_max: u32) -> Result<RegionGraph, OracleError> {
    let max = constants(n, formula_max)?;
    let mut g = RegionGraph {
        max: max.clone(),
        ..RegionGraph::default()
    };
    let root_locs: Vec<LocationId> = n.agents.iter().map(|a| a.initial).collect();
    let root = Region::zero(max.len());
    if !invariants_hold(n, &root_locs, &root, &max) {
        return Ok(g);
    }
    let mut index: HashMap<(Vec<LocationId>, Region), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    index.insert((root_locs.clone(), root.clone()), 0);
    g.nodes.push((root_locs, root));
    g.edges.push(Vec::new());
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        let (locs, r) = g.nodes[u].clone();
        for (edge, l2, r2) in successors(n, &locs, &r, &max) {
            let key = (l2, r2);
            let v = match index.get(&key) {
                Some(&v) => v,
                None => {
                    let v = g.nodes.len();
                    index.insert(key.clone(), v);
                    g.nodes.push(key);
                    g.edges.push(Vec::new());
                    queue.push_back(v);
                    v
                }
            };
            g.edges[u].push((edge, v));
        }
    }
    Ok(g)
}

/// Global locations reachable in the product.
pub fn reachable_locations(n: &Network) -> Result<BTreeSet<Vec<LocationId>>, OracleError> {
    Ok(build_region_graph(n, 0)?.locations())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Class {
    Open,
    Good,
    Bad,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Pos {
    Before,
    Inside,
    After,
}

fn position(r: &Region, max: &[u32], f: usize, i: &TimeInterval) -> Pos {
    use crate::model::Relation::*;
    let lo = i.lower() as u32;
    let above_lo = if i.lower_strict() {
        r.satisfies(max, f, Gt, lo)
    } else {
        r.satisfies(max, f, Ge, lo)
    };
    if !above_lo {
        return Pos::Before;
    }
    match i.upper() {
        None => Pos::Inside,
        Some(hi) => {
            let rel = if i.upper_strict() { Lt } else { Le };
            if r.satisfies(max, f, rel, hi as u32) {
                Pos::Inside
            } else {
                Pos::After
            }
        }
    }
}

/// Whether `strategy` (total on the coalition's branching locations)
/// satisfies the objective, and the coalition local states met while the
/// objective was still undecided.
fn check_strategy(
    n: &Network,
    p: &StctlProperty,
    g: &RegionGraph,
    strategy: &BTreeMap<(AgentId, LocationId), ActionId>,
) -> (bool, BTreeSet<(AgentId, LocationId)>) {
    let o = &p.objective;
    let f = g.max.len() - 1;
    let class_of = |u: usize| -> Class {
        let (locs, r) = &g.nodes[u];
        let pos = position(r, &g.max, f, &o.interval);
        let left = o.left.holds(n, locs);
        let right = o.right.holds(n, locs);
        match o.op {
            TemporalOp::Until => {
                if pos == Pos::Inside && right {
                    Class::Good
                } else if !left || pos == Pos::After {
                    Class::Bad
                } else {
                    Class::Open
                }
            }
            TemporalOp::Release => {
                if pos == Pos::Inside && !right {
                    Class::Bad
                } else if left || pos == Pos::After {
                    Class::Good
                } else {
                    Class::Open
                }
            }
        }
    };
    let allowed = |u: usize, e: &RegionEdge| match e {
        RegionEdge::Delay => true,
        RegionEdge::Move { action, participants } => participants.keys().all(|a| {
            !p.coalition.contains(a) || strategy.get(&(*a, g.nodes[u].0[a.index()])) == Some(action)
        }),
    };
    let mut seen = vec![false; g.nodes.len()];
    let mut open = Vec::new();
    let mut good = false;
    let mut bad = false;
    let mut terminal = false;
    let mut locals = BTreeSet::new();
    let mut stack = Vec::new();
    if !g.nodes.is_empty() {
        seen[0] = true;
        stack.push(0);
    }
    while let Some(u) = stack.pop() {
        match class_of(u) {
            Class::Good => good = true,
            Class::Bad => bad = true,
            Class::Open => {
                open.push(u);
                for &a in &p.coalition {
                    let l = g.nodes[u].0[a.index()];
                    if !n.agent(a).available_actions(l).is_empty() {
                        locals.insert((a, l));
                    }
                }
                let (_, r) = &g.nodes[u];
                let has_delay = g.edges[u].iter().any(|(e, _)| *e == RegionEdge::Delay);
                let has_move = g.edges[u].iter().any(|(e, _)| *e != RegionEdge::Delay && allowed(u, e));
                let diverges = r.delay_successor(&g.max).is_none();
                if diverges || (!has_delay && !has_move) {
                    terminal = true;
                }
                for (e, v) in &g.edges[u] {
                    if allowed(u, e) && !seen[*v] {
                        seen[*v] = true;
                        stack.push(*v);
                    }
                }
            }
        }
    }
    let is_open = |v: usize| seen[v] && class_of(v) == Class::Open;
    let cycle = || {
        let mut indeg: HashMap<usize, usize> = open.iter().map(|&u| (u, 0)).collect();
        for &u in &open {
            for (e, v) in &g.edges[u] {
                if allowed(u, e) && is_open(*v) {
                    *indeg.get_mut(v).unwrap() += 1;
                }
            }
        }
        let mut ready: Vec<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&u, _)| u).collect();
        let mut removed = 0;
        while let Some(u) = ready.pop() {
            removed += 1;
            for (e, v) in &g.edges[u] {
                if allowed(u, e) && is_open(*v) {
                    let d = indeg.get_mut(v).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(*v);
                    }
                }
            }
        }
        removed < open.len()
    };
    let ok = match (o.quantifier, o.op) {
        (Quantifier::Exists, TemporalOp::Until) => good,
        (Quantifier::Forall, TemporalOp::Until) => !bad && !terminal && !cycle(),
        (Quantifier::Exists, TemporalOp::Release) => good || terminal || cycle(),
        (Quantifier::Forall, TemporalOp::Release) => !bad,
    };
    (ok, locals)
}

/// Every total strategy, restricted to the coalition local states met while
/// the objective was undecided, with whether it satisfies the objective.
/// Sorted by rendering; strategies with equal restrictions appear once.
pub fn enumerate_outcomes(n: &Network, p: &StctlProperty) -> Result<Vec<(Strategy, bool)>, OracleError> {
    let formula_max = p.objective.interval.max_constant() as u32;
    let g = build_region_graph(n, formula_max)?;
    let mut sites: Vec<((AgentId, LocationId), Vec<ActionId>)> = Vec::new();
    for &a in &p.coalition {
        for l in &n.agent(a).locations {
            let acts: Vec<ActionId> = n.agent(a).available_actions(l.id).into_iter().collect();
            if !acts.is_empty() {
                sites.push(((a, l.id), acts));
            }
        }
    }
    let total: u128 = sites.iter().map(|(_, a)| a.len() as u128).product();
    if total > MAX_STRATEGIES as u128 {
        return Err(OracleError::TooManyStrategies(total));
    }
    let mut found: BTreeMap<Strategy, bool> = BTreeMap::new();
    let mut choice = vec![0usize; sites.len()];
    loop {
        let strategy: BTreeMap<_, _> = sites
            .iter()
            .zip(&choice)
            .map(|((site, acts), &k)| (*site, acts[k]))
            .collect();
        let (ok, locals) = check_strategy(n, p, &g, &strategy);
        let mut s = Strategy::empty(p.coalition.clone());
        for (&(a, l), &act) in &strategy {
            if locals.contains(&(a, l)) {
                s = s.extend(a, l, act).expect("fresh binding");
            }
        }
        let previous = found.insert(s, ok);
        assert!(previous.is_none_or(|v| v == ok), "outcome depends only on the restriction");
        let mut k = 0;
        loop {
            if k == sites.len() {
                let mut out: Vec<(Strategy, bool)> = found.into_iter().collect();
                out.sort_by_cached_key(|(s, _)| s.render(n));
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < sites[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// The satisfying strategies of [`enumerate_outcomes`].
pub fn enumerate_and_check(n: &Network, p: &StctlProperty) -> Result<Vec<Strategy>, OracleError> {
    Ok(enumerate_outcomes(n, p)?
        .into_iter()
        .filter_map(|(s, ok)| ok.then_some(s))
        .collect())
}
