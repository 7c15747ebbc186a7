use std::collections::HashMap;

use crate::lang::TemporalOp;
use crate::semantics::GlobalLocation;
use crate::zone::Status;
use crate::Zone;

/// Where a node stands with respect to the objective on the path leading
/// to it. `Good` is a hit (until) or a release (release); `Bad` is a
/// failure or a violation. Only `Open` nodes are expanded.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeClass {
    Open,
    Good,
    Bad,
}

pub fn classify(op: TemporalOp, status: Status, left: bool, right: bool) -> NodeClass {
    let inside = status == Status::Inside;
    let after = status == Status::After;
    match op {
        TemporalOp::Until if inside && right => NodeClass::Good,
        TemporalOp::Until if !left || after => NodeClass::Bad,
        TemporalOp::Release if inside && !right => NodeClass::Bad,
        TemporalOp::Release if left || after => NodeClass::Good,
        _ => NodeClass::Open,
    }
}

#[derive(Clone, Debug)]
pub struct OutcomeNode {
    pub loc: GlobalLocation,
    pub status: Status,
    pub zone: Zone,
    pub class: NodeClass,
    /// Some valuation of an expanded open node can neither delay further
    /// nor take an allowed move, or can delay forever.
    pub terminal: bool,
    pub succ: Vec<usize>,
}

/// Interval-split zone graph of the outcome of one strategy branch.
#[derive(Clone, Debug, Default)]
pub struct OutcomeGraph {
    pub nodes: Vec<OutcomeNode>,
    index: HashMap<(GlobalLocation, Status, Zone), usize>,
}

impl OutcomeGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Inserts a node unless an identical one exists; returns its index and
    /// whether it is new.
    pub(crate) fn insert(&mut self, loc: GlobalLocation, status: Status, zone: Zone, class: NodeClass) -> (usize, bool) {
        let key = (loc, status, zone);
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.nodes.len();
        self.nodes.push(OutcomeNode {
            loc: key.0.clone(),
            status,
            zone: key.2.clone(),
            class,
            terminal: false,
            succ: Vec::new(),
        });
        self.index.insert(key, i);
        (i, true)
    }

    pub fn contains(&self, loc: &GlobalLocation, status: Status, zone: &Zone) -> bool {
        self.index.contains_key(&(loc.clone(), status, zone.clone()))
    }

    fn any(&self, class: NodeClass) -> bool {
        self.nodes.iter().any(|n| n.class == class)
    }

    fn open_terminal(&self) -> bool {
        self.nodes.iter().any(|n| n.class == NodeClass::Open && n.terminal)
    }

    /// Whether the open nodes contain a cycle.
    pub fn open_cycle(&self) -> bool {
        let open = |i: usize| self.nodes[i].class == NodeClass::Open;
        let mut indegree = vec![0usize; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if open(i) {
                for &j in &n.succ {
                    if open(j) {
                        indegree[j] += 1;
                    }
                }
            }
        }
        let mut ready: Vec<usize> = (0..self.nodes.len()).filter(|&i| open(i) && indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = ready.pop() {
            removed += 1;
            for &j in &self.nodes[i].succ {
                if open(j) {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        removed < (0..self.nodes.len()).filter(|&i| open(i)).count()
    }
}

/// Some outcome path satisfies the objective. Expects every open node to
/// have been expanded.
pub fn evaluate_existential(g: &OutcomeGraph, op: TemporalOp) -> bool {
    match op {
        TemporalOp::Until => g.any(NodeClass::Good),
        TemporalOp::Release => g.any(NodeClass::Good) || g.open_terminal() || g.open_cycle(),
    }
}

/// Every outcome path satisfies the objective. An until fails on a reachable
/// failure, on a path that ends while pending, and on a pending cycle.
pub fn evaluate_universal(g: &OutcomeGraph, op: TemporalOp) -> bool {
    match op {
        TemporalOp::Until => !g.any(NodeClass::Bad) && !g.open_terminal() && !g.open_cycle(),
        TemporalOp::Release => !g.any(NodeClass::Bad),
    }
}
