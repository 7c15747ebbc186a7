use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::validate::{initial_invariant_issue, invariant_lint};
use super::*;
use crate::diagnostic::{Diagnostic, DiagnosticKind, Span};

/// Name-based description of one atomic clock constraint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintSpec {
    pub clock: String,
    pub relation: Relation,
    pub bound: u32,
    pub span: Option<Span>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocationSpec {
    pub name: String,
    pub invariant: Vec<ConstraintSpec>,
    pub labels: Vec<String>,
    pub span: Option<Span>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSpec {
    pub source: String,
    pub target: String,
    pub action: String,
    pub guard: Vec<ConstraintSpec>,
    pub resets: Vec<String>,
    pub span: Option<Span>,
}

/// Unresolved agent as written in a model file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgentSpec {
    pub name: String,
    pub clocks: Vec<String>,
    pub initial: String,
    pub locations: Vec<LocationSpec>,
    pub edges: Vec<EdgeSpec>,
    pub span: Option<Span>,
}

fn constraint(clock: &str, relation: Relation, bound: u32) -> ConstraintSpec {
    ConstraintSpec {
        clock: clock.to_string(),
        relation,
        bound,
        span: None,
    }
}

impl LocationSpec {
    pub fn new(name: &str) -> Self {
        LocationSpec {
            name: name.to_string(),
            invariant: Vec::new(),
            labels: Vec::new(),
            span: None,
        }
    }

    pub fn invariant(mut self, clock: &str, relation: Relation, bound: u32) -> Self {
        self.invariant.push(constraint(clock, relation, bound));
        self
    }

    pub fn label(mut self, name: &str) -> Self {
        self.labels.push(name.to_string());
        self
    }
}

impl EdgeSpec {
    pub fn new(source: &str, target: &str, action: &str) -> Self {
        EdgeSpec {
            source: source.to_string(),
            target: target.to_string(),
            action: action.to_string(),
            guard: Vec::new(),
            resets: Vec::new(),
            span: None,
        }
    }

    pub fn guard(mut self, clock: &str, relation: Relation, bound: u32) -> Self {
        self.guard.push(constraint(clock, relation, bound));
        self
    }

    pub fn reset(mut self, clock: &str) -> Self {
        self.resets.push(clock.to_string());
        self
    }
}

impl AgentSpec {
    pub fn new(name: &str, initial: &str) -> Self {
        AgentSpec {
            name: name.to_string(),
            clocks: Vec::new(),
            initial: initial.to_string(),
            locations: Vec::new(),
            edges: Vec::new(),
            span: None,
        }
    }

    pub fn clock(mut self, name: &str) -> Self {
        self.clocks.push(name.to_string());
        self
    }

    pub fn location(mut self, loc: LocationSpec) -> Self {
        self.locations.push(loc);
        self
    }

    pub fn edge(mut self, edge: EdgeSpec) -> Self {
        self.edges.push(edge);
        self
    }
}

impl Network {
    /// Resolves names to dense identifiers. Clocks and actions are numbered
    /// in order of first declaration/use; actions used by several agents
    /// become shared. Returns every error found, with spans when the specs
    /// carry them.
    pub fn from_specs(specs: Vec<AgentSpec>) -> Result<Network, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let mut net = Network::default();

        let mut agent_names = BTreeSet::new();
        let mut clock_ids: HashMap<String, ClockId> = HashMap::new();
        for (ai, spec) in specs.iter().enumerate() {
            if !agent_names.insert(spec.name.as_str()) {
                diags.push(
                    Diagnostic::error(
                        DiagnosticKind::DuplicateName,
                        format!("agent `{}` declared twice", spec.name),
                    )
                    .with_span(spec.span),
                );
            }
            for c in &spec.clocks {
                if clock_ids.contains_key(c) {
                    diags.push(
                        Diagnostic::error(
                            DiagnosticKind::DuplicateName,
                            format!("clock `{}` declared twice", c),
                        )
                        .with_span(spec.span),
                    );
                    continue;
                }
                let id = ClockId::from_index(net.clocks.len());
                clock_ids.insert(c.clone(), id);
                net.clocks.push(ClockInfo {
                    name: c.clone(),
                    owner: AgentId::from_index(ai),
                });
            }
        }

        let resolve_guard = |cs: &[ConstraintSpec], diags: &mut Vec<Diagnostic>, fallback: Option<Span>| {
            let mut g = Guard::default();
            for c in cs {
                match clock_ids.get(&c.clock) {
                    Some(&clock) => g.conjuncts.push(AtomicConstraint {
                        clock,
                        relation: c.relation,
                        bound: c.bound,
                    }),
                    None => diags.push(
                        Diagnostic::error(
                            DiagnosticKind::UnknownClock,
                            format!("undeclared clock `{}`", c.clock),
                        )
                        .with_span(c.span.or(fallback)),
                    ),
                }
            }
            g
        };

        let mut action_ids: HashMap<String, ActionId> = HashMap::new();
        let mut props: BTreeMap<String, Vec<(AgentId, LocationId)>> = BTreeMap::new();

        for (ai, spec) in specs.iter().enumerate() {
            let agent_id = AgentId::from_index(ai);
            let mut loc_ids: HashMap<&str, LocationId> = HashMap::new();
            let mut locations = Vec::new();
            for ls in &spec.locations {
                if loc_ids.contains_key(ls.name.as_str()) {
                    diags.push(
                        Diagnostic::error(
                            DiagnosticKind::DuplicateName,
                            format!("location `{}` declared twice in agent `{}`", ls.name, spec.name),
                        )
                        .with_span(ls.span),
                    );
                    continue;
                }
                let id = LocationId::from_index(locations.len());
                loc_ids.insert(&ls.name, id);
                let labels: BTreeSet<String> = ls.labels.iter().cloned().collect();
                for l in &labels {
                    props.entry(l.clone()).or_default().push((agent_id, id));
                }
                locations.push(Location {
                    id,
                    name: ls.name.clone(),
                    invariant: resolve_guard(&ls.invariant, &mut diags, ls.span),
                    labels,
                });
            }

            let initial = match loc_ids.get(spec.initial.as_str()) {
                Some(&l) => l,
                None => {
                    diags.push(
                        Diagnostic::error(
                            DiagnosticKind::UnknownLocation,
                            format!(
                                "initial location `{}` is not declared in agent `{}`",
                                spec.initial, spec.name
                            ),
                        )
                        .with_span(spec.span),
                    );
                    LocationId(0)
                }
            };

            let mut edges = Vec::new();
            for es in &spec.edges {
                let mut lookup = |name: &str| {
                    let found = loc_ids.get(name).copied();
                    if found.is_none() {
                        diags.push(
                            Diagnostic::error(
                                DiagnosticKind::UnknownLocation,
                                format!("unknown location `{}` in agent `{}`", name, spec.name),
                            )
                            .with_span(es.span),
                        );
                    }
                    found
                };
                let source = lookup(&es.source);
                let target = lookup(&es.target);
                let guard = resolve_guard(&es.guard, &mut diags, es.span);
                let mut resets = BTreeSet::new();
                for r in &es.resets {
                    match clock_ids.get(r) {
                        Some(&c) => {
                            resets.insert(c);
                        }
                        None => diags.push(
                            Diagnostic::error(
                                DiagnosticKind::UnknownClock,
                                format!("undeclared clock `{}` in reset", r),
                            )
                            .with_span(es.span),
                        ),
                    }
                }
                let next = ActionId::from_index(action_ids.len());
                let action = *action_ids.entry(es.action.clone()).or_insert_with(|| {
                    net.actions.push(ActionInfo {
                        name: es.action.clone(),
                        owners: BTreeSet::new(),
                    });
                    next
                });
                net.actions[action.index()].owners.insert(agent_id);
                if let (Some(source), Some(target)) = (source, target) {
                    edges.push(Edge {
                        source,
                        action,
                        guard,
                        resets,
                        target,
                    });
                }
            }

            let agent = Agent {
                id: agent_id,
                name: spec.name.clone(),
                clocks: spec
                    .clocks
                    .iter()
                    .filter_map(|c| clock_ids.get(c).copied())
                    .filter(|c| net.clocks[c.index()].owner == agent_id)
                    .collect(),
                locations,
                edges,
                initial,
            };
            if !agent.locations.is_empty() {
                if let Some(d) = initial_invariant_issue(&net, &agent) {
                    diags.push(d.with_span(spec.span));
                }
            }
            net.agents.push(agent);
        }
        net.propositions = props;

        if diags.is_empty() {
            Ok(net)
        } else {
            Err(diags)
        }
    }

    /// Warnings about a network that resolved cleanly.
    pub fn lints(&self) -> Vec<Diagnostic> {
        self.agents
            .iter()
            .flat_map(|a| a.locations.iter().filter_map(move |l| invariant_lint(self, a, l)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_agent_resolves() {
        let n = Network::from_specs(vec![AgentSpec::new("A", "l0")
            .clock("x")
            .location(LocationSpec::new("l0"))])
        .unwrap();
        assert_eq!(n.agents.len(), 1);
        assert_eq!(n.num_clocks(), 1);
        assert_eq!(n.agents[0].locations.len(), 1);
        assert!(n.agents[0].edges.is_empty());
    }

    #[test]
    fn undeclared_clock_is_named() {
        let err = Network::from_specs(vec![AgentSpec::new("A", "l0")
            .clock("x")
            .location(LocationSpec::new("l0"))
            .edge(EdgeSpec::new("l0", "l0", "a").guard("z", Relation::Le, 1))])
        .unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].kind, DiagnosticKind::UnknownClock);
        assert!(err[0].message.contains("`z`"));
    }

    #[test]
    fn unsatisfiable_initial_invariant_is_fatal() {
        let err = Network::from_specs(vec![AgentSpec::new("A", "l0").clock("x").location(
            LocationSpec::new("l0")
                .invariant("x", Relation::Le, 0)
                .invariant("x", Relation::Ge, 1),
        )])
        .unwrap_err();
        assert_eq!(err[0].kind, DiagnosticKind::InitialInvariantUnsatisfiable);
        assert!(err[0].message.contains("initial invariant unsatisfiable"));
    }

    #[test]
    fn duplicate_names_are_reported() {
        let err = Network::from_specs(vec![
            AgentSpec::new("A", "l0").location(LocationSpec::new("l0")).location(LocationSpec::new("l0")),
            AgentSpec::new("A", "m").location(LocationSpec::new("m")),
        ])
        .unwrap_err();
        assert_eq!(err.len(), 2);
        assert!(err.iter().all(|d| d.kind == DiagnosticKind::DuplicateName));
    }

    #[test]
    fn labels_build_the_proposition_table() {
        let n = Network::from_specs(vec![
            AgentSpec::new("A", "l0")
                .location(LocationSpec::new("l0").label("p"))
                .location(LocationSpec::new("l1").label("p").label("q")),
        ])
        .unwrap();
        assert_eq!(n.propositions["p"].len(), 2);
        assert_eq!(n.propositions["q"], vec![(AgentId(0), LocationId(1))]);
    }
}
