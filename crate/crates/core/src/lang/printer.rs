use std::fmt::Write;

use crate::model::{Guard, Network};
use crate::TimeInterval;

use super::property::{Mode, Quantifier, StateFormula, StctlProperty, TemporalObjective, TemporalOp};

pub fn pretty_print_model(n: &Network) -> String {
    let mut out = String::new();
    for (i, agent) in n.agents.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "agent {} {{", agent.name);
        if !agent.clocks.is_empty() {
            let names: Vec<&str> = agent.clocks.iter().map(|&c| n.clock_name(c)).collect();
            let _ = writeln!(out, "  clock {};", names.join(", "));
        }
        let _ = writeln!(out, "  init {};", agent.location(agent.initial).name);
        for loc in &agent.locations {
            let _ = write!(out, "  loc {} {{ ", loc.name);
            if !loc.invariant.is_true() {
                let _ = write!(out, "invariant {}; ", guard_text(n, &loc.invariant));
            }
            if !loc.labels.is_empty() {
                let labels: Vec<&str> = loc.labels.iter().map(String::as_str).collect();
                let _ = write!(out, "labels {}; ", labels.join(", "));
            }
            out.push_str("}\n");
        }
        for e in &agent.edges {
            let _ = write!(
                out,
                "  edge {} -> {} on {}",
                agent.location(e.source).name,
                agent.location(e.target).name,
                n.action_name(e.action)
            );
            if !e.guard.is_true() {
                let _ = write!(out, " when {}", guard_text(n, &e.guard));
            }
            if !e.resets.is_empty() {
                let names: Vec<&str> = e.resets.iter().map(|&c| n.clock_name(c)).collect();
                let _ = write!(out, " reset {{{}}}", names.join(", "));
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
    }
    out
}

fn guard_text(n: &Network, g: &Guard) -> String {
    g.conjuncts
        .iter()
        .map(|c| format!("{} {} {}", n.clock_name(c.clock), c.relation.symbol(), c.bound))
        .collect::<Vec<_>>()
        .join(" & ")
}

pub fn pretty_print_property(p: &StctlProperty, n: &Network) -> String {
    let directive = match p.mode {
        Mode::Check => "#check",
        Mode::SynthAll => "#synth",
    };
    let names: Vec<&str> = p.coalition.iter().map(|&a| n.agent(a).name.as_str()).collect();
    format!("{} <<{}>> {}", directive, names.join(", "), objective_text(&p.objective, n))
}

pub fn objective_text(o: &TemporalObjective, n: &Network) -> String {
    let q = match o.quantifier {
        Quantifier::Forall => "A",
        Quantifier::Exists => "E",
    };
    let interval = interval_text(&o.interval);
    let right = formula_text(&o.right, n);
    match (o.op, &o.left) {
        (TemporalOp::Until, StateFormula::True) => format!("{} F{} {}", q, interval, right),
        (TemporalOp::Release, StateFormula::False) => format!("{} G{} {}", q, interval, right),
        (op, left) => {
            let sym = if op == TemporalOp::Until { "U" } else { "R" };
            format!("{} {} {}{} {}", q, formula_text(left, n), sym, interval, right)
        }
    }
}

pub fn interval_text(i: &TimeInterval) -> String {
    let open = if i.lower_strict() { '(' } else { '[' };
    match i.upper() {
        None => format!("{}{};inf)", open, i.lower()),
        Some(u) => {
            let close = if i.upper_strict() { ')' } else { ']' };
            format!("{}{};{}{}", open, i.lower(), u, close)
        }
    }
}

pub fn formula_text(f: &StateFormula, n: &Network) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, n, 0);
    out
}

fn precedence(f: &StateFormula) -> u8 {
    match f {
        StateFormula::Or(..) => 1,
        StateFormula::And(..) => 2,
        StateFormula::Not(_) => 3,
        _ => 4,
    }
}

/// Writes `f`, parenthesised when its precedence is below `min`. Binary
/// operators parse left-associatively, so a right operand of the same
/// operator needs parentheses to keep its shape.
fn write_formula(out: &mut String, f: &StateFormula, n: &Network, min: u8) {
    let paren = precedence(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        StateFormula::True => out.push_str("true"),
        StateFormula::False => out.push_str("false"),
        StateFormula::Prop(p) => out.push_str(p),
        StateFormula::At(a, l) => {
            let _ = write!(out, "{}.{}", n.agent(*a).name, n.location_name(*a, *l));
        }
        StateFormula::Not(g) => {
            out.push('!');
            write_formula(out, g, n, 3);
        }
        StateFormula::And(l, r) => {
            write_formula(out, l, n, 2);
            out.push_str(" & ");
            write_formula(out, r, n, 3);
        }
        StateFormula::Or(l, r) => {
            write_formula(out, l, n, 1);
            out.push_str(" | ");
            write_formula(out, r, n, 2);
        }
    }
    if paren {
        out.push(')');
    }
}
