#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stratimed::engine::{explore, Budget};
use stratimed::lang::{parse_model, parse_property};
use stratimed::model::Network;
use stratimed::oracle::enumerate_and_check;
use stratimed::semantics::{apply_move, enabled_moves, initial_core, SymbolicCore};
use stratimed::Time;

/// Objectives exercised against the oracle: every operator, two left
/// operands each, over a fixed set of intervals.
pub const INTERVALS: [&str; 4] = ["[0;0]", "[0;2]", "[1;2]", "[0;inf)"];

pub fn objectives() -> Vec<String> {
    let mut out = Vec::new();
    for i in INTERVALS {
        for q in ["E", "A"] {
            out.push(format!("{} F{} p", q, i));
            out.push(format!("{} !q U{} p", q, i));
            out.push(format!("{} G{} p", q, i));
            out.push(format!("{} q R{} p", q, i));
        }
    }
    out
}

/// Random model within oracle limits: up to two agents, at most one clock
/// each, constants up to 3, labels `p`/`q`, and a shared action `s`.
pub fn random_model(rng: &mut ChaCha8Rng) -> String {
    let agents = rng.gen_range(1..=2);
    let mut text = String::new();
    for a in 0..agents {
        let clock = rng.gen_bool(0.8);
        let locs = rng.gen_range(2..=3);
        text.push_str(&format!("agent A{} {{\n", a));
        if clock {
            text.push_str(&format!("  clock x{};\n", a));
        }
        text.push_str("  init l0;\n");
        for l in 0..locs {
            let mut body = String::new();
            if clock && rng.gen_bool(0.4) {
                let (rel, lo) = *[("<=", 0), ("<", 1)].choose(rng).unwrap();
                body.push_str(&format!("invariant x{} {} {}; ", a, rel, rng.gen_range(lo..=3)));
            }
            let labels: Vec<&str> = ["p", "q"].into_iter().filter(|_| rng.gen_bool(0.35)).collect();
            if !labels.is_empty() {
                body.push_str(&format!("labels {}; ", labels.join(", ")));
            }
            text.push_str(&format!("  loc l{} {{ {}}}\n", l, body));
        }
        for _ in 0..rng.gen_range(1..=4) {
            let src = rng.gen_range(0..locs);
            let dst = rng.gen_range(0..locs);
            let action = *["a", "b", "s"].choose(rng).unwrap();
            let action = if action == "s" { "s".to_string() } else { format!("{}{}", action, a) };
            text.push_str(&format!("  edge l{} -> l{} on {}", src, dst, action));
            if clock && rng.gen_bool(0.5) {
                let rel = *["<", "<=", "=", ">=", ">"].choose(rng).unwrap();
                text.push_str(&format!(" when x{} {} {}", a, rel, rng.gen_range(0..=3)));
            }
            if clock && rng.gen_bool(0.4) {
                text.push_str(&format!(" reset {{x{}}}", a));
            }
            text.push_str(";\n");
        }
        text.push_str("}\n");
    }
    // Both propositions must exist for every objective to parse; this
    // location is never reachable.
    text.push_str("agent Labels { init idle; loc idle { } loc never { labels p, q; } }\n");
    text
}

/// Coalitions to try on a model: the first agent, and all real agents.
pub fn coalitions(n: &Network) -> Vec<String> {
    let names: Vec<&str> = n
        .agents
        .iter()
        .map(|a| a.name.as_str())
        .filter(|&a| a != "Labels")
        .collect();
    let mut out = vec![names[0].to_string()];
    if names.len() > 1 {
        out.push(names.join(", "));
    }
    out
}

/// Engine and oracle strategy sets for one property, as rendered text.
pub fn both(n: &Network, prop: &str) -> (Vec<String>, Vec<String>) {
    let p = parse_property(prop, n).unwrap_or_else(|e| panic!("{}: {:?}", prop, e));
    let engine = explore(n, &p, Budget::unlimited());
    assert!(engine.is_complete());
    let engine = engine.strategies.iter().map(|s| s.render(n)).collect();
    let oracle = enumerate_and_check(n, &p)
        .unwrap()
        .iter()
        .map(|s| s.render(n))
        .collect();
    (engine, oracle)
}

pub fn load(text: &str) -> Network {
    parse_model(text).unwrap_or_else(|e| panic!("{:?}\n{}", e, text))
}

/// Every `*.model` file of the hand-built corpus, sorted by name.
pub fn corpus() -> Vec<(String, Network)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "model"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, load(&std::fs::read_to_string(&p).unwrap()))
        })
        .collect()
}

/// Symbolic reachability from the initial core, keyed by exact zones.
pub fn reachable_cores(n: &Network, max_const: &[Time]) -> Vec<SymbolicCore> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let root = initial_core(n).unwrap();
    seen.insert((root.loc.clone(), root.zone.clone()));
    queue.push_back(root);
    while let Some(c) = queue.pop_front() {
        for m in enabled_moves(n, &c) {
            let next = apply_move(n, &c, &m, max_const).unwrap();
            if !next.zone.is_empty() && seen.insert((next.loc.clone(), next.zone.clone())) {
                queue.push_back(next.clone());
            }
        }
        out.push(c);
    }
    out
}
