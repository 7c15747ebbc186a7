use std::collections::{BTreeSet, HashSet};

use super::*;
use crate::diagnostic::{Diagnostic, DiagnosticKind};

/// Semantic checks on an id-level network. Error-severity diagnostics are
/// fatal for callers; warnings are lints.
pub fn validate_network(n: &Network) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let dangling = |what: String| Diagnostic::error(DiagnosticKind::DanglingId, what);

    let mut agent_names = HashSet::new();
    for (i, a) in n.agents.iter().enumerate() {
        if a.id.index() != i {
            out.push(dangling(format!("agent `{}` has id {} at position {}", a.name, a.id.0, i)));
        }
        if !agent_names.insert(&a.name) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateName,
                format!("agent `{}` declared twice", a.name),
            ));
        }
    }

    let mut clock_names = HashSet::new();
    for c in &n.clocks {
        if c.owner.index() >= n.agents.len() {
            out.push(dangling(format!("clock `{}` owned by unknown agent {}", c.name, c.owner.0)));
        }
        if !clock_names.insert(&c.name) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateName,
                format!("clock `{}` declared twice", c.name),
            ));
        }
    }

    let mut action_names = HashSet::new();
    for a in &n.actions {
        if !action_names.insert(&a.name) {
            out.push(Diagnostic::error(
                DiagnosticKind::DuplicateName,
                format!("action `{}` declared twice", a.name),
            ));
        }
    }

    let check_guard = |g: &Guard, ctx: &str, out: &mut Vec<Diagnostic>| {
        for c in &g.conjuncts {
            if c.clock.index() >= n.clocks.len() {
                out.push(dangling(format!("{} references unknown clock id {}", ctx, c.clock.0)));
            }
        }
    };

    for a in &n.agents {
        for &c in &a.clocks {
            if c.index() >= n.clocks.len() {
                out.push(dangling(format!("agent `{}` owns unknown clock id {}", a.name, c.0)));
            }
        }
        let nlocs = a.locations.len();
        let mut loc_names = HashSet::new();
        for (i, l) in a.locations.iter().enumerate() {
            if l.id.index() != i {
                out.push(dangling(format!(
                    "location `{}.{}` has id {} at position {}",
                    a.name, l.name, l.id.0, i
                )));
            }
            if !loc_names.insert(&l.name) {
                out.push(Diagnostic::error(
                    DiagnosticKind::DuplicateName,
                    format!("location `{}` declared twice in agent `{}`", l.name, a.name),
                ));
            }
            check_guard(&l.invariant, &format!("invariant of `{}.{}`", a.name, l.name), &mut out);
        }
        if a.initial.index() >= nlocs {
            out.push(dangling(format!(
                "agent `{}` starts in unknown location id {}",
                a.name, a.initial.0
            )));
        }
        for (k, e) in a.edges.iter().enumerate() {
            let ctx = format!("edge #{} of `{}`", k, a.name);
            if e.source.index() >= nlocs || e.target.index() >= nlocs {
                out.push(dangling(format!("{} connects unknown locations", ctx)));
            }
            if e.action.index() >= n.actions.len() {
                out.push(dangling(format!("{} uses unknown action id {}", ctx, e.action.0)));
            }
            check_guard(&e.guard, &ctx, &mut out);
            for r in &e.resets {
                if r.index() >= n.clocks.len() {
                    out.push(dangling(format!("{} resets unknown clock id {}", ctx, r.0)));
                }
            }
        }
    }

    for (name, places) in &n.propositions {
        for &(ag, loc) in places {
            let ok = n
                .agents
                .get(ag.index())
                .is_some_and(|a| loc.index() < a.locations.len());
            if !ok {
                out.push(dangling(format!("proposition `{}` labels an unknown location", name)));
            }
        }
    }

    if out.iter().any(|d| d.kind == DiagnosticKind::DanglingId) {
        return out;
    }

    for (i, info) in n.actions.iter().enumerate() {
        let actual: BTreeSet<AgentId> = n
            .agents
            .iter()
            .filter(|a| a.edges.iter().any(|e| e.action.index() == i))
            .map(|a| a.id)
            .collect();
        if actual != info.owners {
            out.push(Diagnostic::error(
                DiagnosticKind::InconsistentOwners,
                format!(
                    "action `{}` declares {} owner(s) but labels edges of {} agent(s)",
                    info.name,
                    info.owners.len(),
                    actual.len()
                ),
            ));
        }
    }

    for a in &n.agents {
        if let Some(d) = initial_invariant_issue(n, a) {
            out.push(d);
        }
        for l in &a.locations {
            if let Some(d) = invariant_lint(n, a, l) {
                out.push(d);
            }
        }
    }
    out
}

pub(super) fn initial_invariant_issue(_n: &Network, a: &Agent) -> Option<Diagnostic> {
    let init = a.locations.get(a.initial.index())?;
    (!init.invariant.holds_at_zero()).then(|| {
        Diagnostic::error(
            DiagnosticKind::InitialInvariantUnsatisfiable,
            format!(
                "initial invariant unsatisfiable: `{}.{}` excludes the all-zero valuation",
                a.name, init.name
            ),
        )
    })
}

/// Warns when a location invariant admits no valuation at all.
pub(super) fn invariant_lint(n: &Network, a: &Agent, l: &Location) -> Option<Diagnostic> {
    // per clock: (lower, lower_strict), (upper, upper_strict)
    type Side = (u32, bool);
    let mut bounds: Vec<(Side, Option<Side>)> = vec![((0, false), None); n.clocks.len()];
    for c in &l.invariant.conjuncts {
        let (lo, hi) = bounds.get_mut(c.clock.index())?;
        let tighten_lo = |lo: &mut (u32, bool), v: (u32, bool)| {
            if v.0 > lo.0 || (v.0 == lo.0 && v.1) {
                *lo = v;
            }
        };
        let tighten_hi = |hi: &mut Option<(u32, bool)>, v: (u32, bool)| match hi {
            Some(h) if h.0 < v.0 || (h.0 == v.0 && h.1) => {}
            _ => *hi = Some(v),
        };
        match c.relation {
            Relation::Lt => tighten_hi(hi, (c.bound, true)),
            Relation::Le => tighten_hi(hi, (c.bound, false)),
            Relation::Eq => {
                tighten_lo(lo, (c.bound, false));
                tighten_hi(hi, (c.bound, false));
            }
            Relation::Ge => tighten_lo(lo, (c.bound, false)),
            Relation::Gt => tighten_lo(lo, (c.bound, true)),
        }
    }
    let empty = bounds.iter().any(|(lo, hi)| match hi {
        Some(h) => lo.0 > h.0 || (lo.0 == h.0 && (lo.1 || h.1)),
        None => false,
    });
    empty.then(|| {
        Diagnostic::warning(
            DiagnosticKind::InvariantUnsatisfiable,
            format!("invariant of `{}.{}` is unsatisfiable; the location is unreachable", a.name, l.name),
        )
    })
}
