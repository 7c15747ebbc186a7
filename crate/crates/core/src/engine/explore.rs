use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Condvar, Mutex};
use std::time::Instant;

use crate::lang::{Quantifier, StctlProperty, TemporalOp};
use crate::model::{ActionId, AgentId, LocationId, Network, Relation};
use crate::semantics::{
    arrival_zone, candidate_moves, constrain_invariants, delay_closure, firing_zone, formula_clock, max_constants,
    zone_clocks, GlobalLocation, Move, SymbolicCore,
};
use crate::strategy::Strategy;
use crate::zone::{Bound, Status};
use crate::{Time, TimeInterval, Zone};

use super::graph::{classify, evaluate_existential, evaluate_universal, NodeClass, OutcomeGraph};
use super::{Budget, Termination};

pub(crate) struct Ctx<'a> {
    pub n: &'a Network,
    pub p: &'a StctlProperty,
    interval: TimeInterval,
    max_const: Vec<Time>,
    fclock: usize,
}

impl<'a> Ctx<'a> {
    pub fn new(n: &'a Network, p: &'a StctlProperty) -> Self {
        let interval = p.objective.interval;
        Ctx {
            n,
            p,
            interval,
            max_const: max_constants(n, Some(&interval)),
            fclock: formula_clock(n),
        }
    }

    fn in_status(&self, z: &Zone, status: Status) -> Zone {
        z.constrain_all(self.interval.status_constraints(self.fclock, status))
            .expect("formula clock in range")
    }

    /// `Extra(z ∩ P) ∩ Inv ∩ P` for an already delay-closed `z`.
    fn normalize(&self, loc: &GlobalLocation, status: Status, delayed: &Zone) -> Zone {
        let z = self.in_status(delayed, status).extrapolate(&self.max_const);
        self.in_status(&constrain_invariants(self.n, loc, &z), status)
    }

    fn class(&self, loc: &GlobalLocation, status: Status) -> NodeClass {
        let o = &self.p.objective;
        classify(o.op, status, o.left.holds(self.n, &loc.0), o.right.holds(self.n, &loc.0))
    }
}

#[derive(Clone)]
pub(crate) struct Branch {
    pub strategy: Strategy,
    pub graph: OutcomeGraph,
    queue: VecDeque<usize>,
    saw_good: bool,
    saw_bad: bool,
    open_terminal: bool,
}

pub(crate) enum Step {
    /// The branch needs a commitment; one child per available action.
    Fork(Vec<Branch>),
    /// Fully explored; whether its strategy satisfies the objective.
    Done(Branch, bool),
    /// Decided before completion: `true` for an early success, `false`
    /// for a violation of a universal objective.
    Early(Branch, bool),
    Stopped(Termination),
}

impl Branch {
    pub fn root(ctx: &Ctx) -> Option<Branch> {
        let mut b = Branch {
            strategy: Strategy::empty(ctx.p.coalition.clone()),
            graph: OutcomeGraph::default(),
            queue: VecDeque::new(),
            saw_good: false,
            saw_bad: false,
            open_terminal: false,
        };
        let loc = GlobalLocation::initial(ctx.n);
        let start = constrain_invariants(ctx.n, &loc, &Zone::zero(zone_clocks(ctx.n)));
        if start.is_empty() {
            return None;
        }
        let status = ctx.interval.status_of(0);
        let zone = ctx.normalize(&loc, status, &delay_closure(ctx.n, &loc, &start));
        b.add(ctx, loc, status, zone);
        Some(b)
    }

    fn add(&mut self, ctx: &Ctx, loc: GlobalLocation, status: Status, zone: Zone) -> usize {
        let class = ctx.class(&loc, status);
        let (i, fresh) = self.graph.insert(loc, status, zone, class);
        if fresh {
            match class {
                NodeClass::Open => self.queue.push_back(i),
                NodeClass::Good => self.saw_good = true,
                NodeClass::Bad => self.saw_bad = true,
            }
        }
        i
    }

    /// Coalition agent at `loc` that still needs a commitment.
    fn unbound(&self, ctx: &Ctx, loc: &GlobalLocation) -> Option<(AgentId, LocationId, BTreeSet<ActionId>)> {
        ctx.p.coalition.iter().find_map(|&a| {
            let l = loc.of(a);
            let actions = ctx.n.agent(a).available_actions(l);
            let free = self.strategy.choice_of(a, l).expect("coalition member").is_none();
            (free && !actions.is_empty()).then_some((a, l, actions))
        })
    }

    fn allowed(&self, ctx: &Ctx, m: &Move, loc: &GlobalLocation) -> bool {
        m.participants.keys().all(|&a| {
            !ctx.p.coalition.contains(&a) || self.strategy.choice_of(a, loc.of(a)).ok().flatten() == Some(m.action)
        })
    }

    /// Expands one queued node, or forks when a coalition agent there has
    /// no commitment yet.
    fn expand(mut self, ctx: &Ctx, u: usize) -> Result<Branch, Vec<Branch>> {
        let loc = self.graph.nodes[u].loc.clone();
        if let Some((a, l, actions)) = self.unbound(ctx, &loc) {
            self.queue.push_front(u);
            let children = actions
                .into_iter()
                .map(|act| {
                    let mut child = self.clone();
                    child.strategy = self.strategy.extend(a, l, act).expect("slot is free");
                    child
                })
                .collect();
            return Err(children);
        }
        let status = self.graph.nodes[u].status;
        let zone = self.graph.nodes[u].zone.clone();
        let moves: Vec<Move> = candidate_moves(ctx.n, &loc)
            .into_iter()
            .filter(|m| self.allowed(ctx, m, &loc))
            .collect();
        if is_terminal(ctx.n, &loc, &zone, &moves) {
            self.graph.nodes[u].terminal = true;
            self.open_terminal = true;
        }
        let core = SymbolicCore { loc, zone };
        let mut succ = Vec::new();
        for m in &moves {
            let (target, arrived) = arrival_zone(ctx.n, &core, m);
            if arrived.is_empty() {
                continue;
            }
            let z = ctx.normalize(&target, status, &delay_closure(ctx.n, &target, &arrived));
            if !z.is_empty() {
                succ.push(self.add(ctx, target, status, z));
            }
        }
        if let Some(next) = status.next() {
            let z = ctx.normalize(&core.loc, next, &delay_closure(ctx.n, &core.loc, &core.zone));
            if !z.is_empty() {
                succ.push(self.add(ctx, core.loc.clone(), next, z));
            }
        }
        self.graph.nodes[u].succ = succ;
        Ok(self)
    }
}

impl Branch {
    /// Explores the rest of an already successful existential branch,
    /// taking the first action wherever a commitment is missing, so the
    /// witness binds every choice its full outcome meets.
    fn settle(mut self, ctx: &Ctx, shared: &Shared) -> Branch {
        while let Some(&u) = self.queue.front() {
            if shared.over_budget().is_some() {
                break;
            }
            self.queue.pop_front();
            let before = self.graph.len();
            self = match self.expand(ctx, u) {
                Ok(next) => next,
                Err(children) => children.into_iter().next().expect("at least one action"),
            };
            shared.explored.fetch_add(self.graph.len().saturating_sub(before), Ordering::Relaxed);
        }
        self
    }
}

/// Some valuation of `zone` can delay forever, or is stuck: it cannot delay
/// without leaving an invariant and no allowed move fires from it. For a
/// strict invariant bound `x < c` the stuck valuations are those just below
/// `x = c`, detected on the left limit of the zone.
pub(crate) fn is_terminal(n: &Network, loc: &GlobalLocation, zone: &Zone, moves: &[Move]) -> bool {
    if zone.is_time_unbounded() {
        return true;
    }
    let firing: Vec<Zone> = moves
        .iter()
        .map(|m| firing_zone(n, loc, m))
        .filter(|z| !z.is_empty())
        .collect();
    let limits: Vec<Zone> = firing.iter().map(Zone::left_limit).collect();
    let approach = zone.left_limit();
    for agent in &n.agents {
        for atom in &agent.location(loc.of(agent.id)).invariant.conjuncts {
            let x = atom.clock.index() + 1;
            let c = Time::from(atom.bound);
            let (base, cover) = match atom.relation {
                Relation::Le | Relation::Eq => (zone, &firing),
                Relation::Lt => (&approach, &limits),
                Relation::Ge | Relation::Gt => continue,
            };
            let face = base.constrain(0, x, Bound::le(-c)).expect("clock in range");
            if !face.is_empty() && !face.is_covered_by(cover).expect("same dimension") {
                return true;
            }
        }
    }
    false
}

pub(crate) struct Shared {
    pub deadline: Option<Instant>,
    pub budget: Budget,
    pub explored: AtomicUsize,
    pub frontier_peak: AtomicUsize,
    pub branches: AtomicUsize,
    pub stop: AtomicBool,
}

impl Shared {
    fn over_budget(&self) -> Option<Termination> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Some(Termination::Timeout);
        }
        if self.budget.max_states > 0 && self.explored.load(Ordering::Relaxed) >= self.budget.max_states {
            return Some(Termination::StateBudget);
        }
        None
    }
}

/// Runs a branch until it forks, completes or is decided early.
pub(crate) fn run_branch(ctx: &Ctx, shared: &Shared, mut b: Branch, exhaustive: bool) -> Step {
    let universal = ctx.p.objective.quantifier == Quantifier::Forall;
    let until = ctx.p.objective.op == TemporalOp::Until;
    loop {
        if !exhaustive {
            if universal && (b.saw_bad || (until && b.open_terminal)) {
                return Step::Early(b, false);
            }
            let early_hit = b.saw_good || (!until && b.open_terminal);
            if !universal && early_hit && ctx.p.mode == crate::lang::Mode::Check {
                return Step::Early(b.settle(ctx, shared), true);
            }
        }
        let Some(u) = b.queue.pop_front() else {
            let ok = match ctx.p.objective.quantifier {
                Quantifier::Exists => evaluate_existential(&b.graph, ctx.p.objective.op),
                Quantifier::Forall => evaluate_universal(&b.graph, ctx.p.objective.op),
            };
            return Step::Done(b, ok);
        };
        if let Some(t) = shared.over_budget() {
            return Step::Stopped(t);
        }
        if shared.stop.load(Ordering::Relaxed) {
            return Step::Stopped(Termination::Complete);
        }
        let before = b.graph.len();
        match b.expand(ctx, u) {
            Ok(next) => {
                shared.explored.fetch_add(next.graph.len() - before, Ordering::Relaxed);
                shared.frontier_peak.fetch_max(next.queue.len(), Ordering::Relaxed);
                b = next;
            }
            Err(children) => return Step::Fork(children),
        }
    }
}

/// Everything a run collected, before sorting and verdicts.
pub(crate) struct Collected {
    pub satisfying: Vec<Strategy>,
    pub outcomes: Vec<(Strategy, OutcomeGraph, bool)>,
    pub termination: Termination,
    pub decided: Option<bool>,
}

struct Pool {
    stack: Vec<Branch>,
    active: usize,
}

/// Explores every strategy branch with `workers` threads. With
/// `exhaustive`, branches are never cut short and every completed
/// outcome graph is kept.
pub(crate) fn run(ctx: &Ctx, shared: &Shared, workers: usize, exhaustive: bool) -> Collected {
    let collected = Collected {
        satisfying: Vec::new(),
        outcomes: Vec::new(),
        termination: Termination::Complete,
        decided: None,
    };
    let Some(root) = Branch::root(ctx) else {
        return collected;
    };
    shared.branches.fetch_add(1, Ordering::Relaxed);
    shared.explored.fetch_add(root.graph.len(), Ordering::Relaxed);
    let pool = Mutex::new(Pool {
        stack: vec![root],
        active: 0,
    });
    let wake = Condvar::new();
    let out = Mutex::new(collected);
    let worker = || loop {
        let branch = {
            let mut p = pool.lock().unwrap();
            loop {
                if shared.stop.load(Ordering::Relaxed) {
                    break None;
                }
                if let Some(b) = p.stack.pop() {
                    p.active += 1;
                    break Some(b);
                }
                if p.active == 0 {
                    break None;
                }
                p = wake.wait(p).unwrap();
            }
        };
        let Some(branch) = branch else {
            wake.notify_all();
            return;
        };
        let step = run_branch(ctx, shared, branch, exhaustive);
        let mut forks = Vec::new();
        {
            let mut o = out.lock().unwrap();
            match step {
                Step::Fork(children) => {
                    shared.branches.fetch_add(children.len() - 1, Ordering::Relaxed);
                    forks = children;
                }
                Step::Done(b, ok) => {
                    if ok {
                        o.satisfying.push(b.strategy.clone());
                        if ctx.p.mode == crate::lang::Mode::Check && !exhaustive {
                            o.decided = Some(true);
                            shared.stop.store(true, Ordering::Relaxed);
                        }
                    }
                    if exhaustive {
                        o.outcomes.push((b.strategy, b.graph, ok));
                    }
                }
                Step::Early(b, ok) => {
                    if ok {
                        o.satisfying.push(b.strategy);
                        o.decided = Some(true);
                        shared.stop.store(true, Ordering::Relaxed);
                    }
                }
                Step::Stopped(t) => {
                    if t != Termination::Complete {
                        o.termination = t;
                        shared.stop.store(true, Ordering::Relaxed);
                    }
                }
            }
            let cap = shared.budget.max_strategies;
            if cap > 0 && o.satisfying.len() >= cap && o.decided.is_none() {
                o.termination = Termination::StrategyBudget;
                shared.stop.store(true, Ordering::Relaxed);
            }
        }
        let mut p = pool.lock().unwrap();
        // Reverse so the first action's child is explored first.
        p.stack.extend(forks.into_iter().rev());
        p.active -= 1;
        drop(p);
        wake.notify_all();
    };
    if workers <= 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(worker);
            }
        });
    }
    out.into_inner().unwrap()
}
