//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stratimed::engine::{all_outcomes, explore, unrestricted_graph, Budget, Termination, Verdict};
use stratimed::lang::{parse_model, parse_property, Mode, StctlProperty};
use stratimed::model::Network;
use stratimed::oracle::{enumerate_and_check, reachable_locations};
use stratimed::semantics::{apply_move, enabled_moves, initial_core, max_constants};
use stratimed::zone::{Bound, Dbm, Interval};
use stratimed_cli::config::DEFAULT_TIMEOUT_SECONDS;
use stratimed_cli::{bench_sweep, generate_voting, render_table, run_texts, ExitStatus, OutputFormat, RunConfig};

/// Per-point limit for the voting reproduction, single-threaded.
const VOTING_POINT_SECONDS: f64 = 5.0;
/// Limit for the whole oracle-equivalence suite.
const ORACLE_SUITE_SECONDS: f64 = 60.0;
const MIN_CORPUS: usize = 20;
const RANDOM_DBMS: usize = 1000;
const DBM_BOUND: i64 = 5;
const DBM_MAX_CLOCKS: usize = 3;

type Outcome = Result<String, String>;

fn corpus() -> Vec<(String, Network)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "model"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let n = parse_model(&std::fs::read_to_string(&p).unwrap()).expect("corpus model parses");
            (name, n)
        })
        .collect()
}

fn objectives() -> Vec<String> {
    let mut out = Vec::new();
    for i in ["[0;0]", "[0;2]", "[1;2]", "[0;inf)"] {
        for q in ["E", "A"] {
            out.push(format!("{} F{} p", q, i));
            out.push(format!("{} !q U{} p", q, i));
            out.push(format!("{} G{} p", q, i));
            out.push(format!("{} q R{} p", q, i));
        }
    }
    out
}

/// Property texts per model: each agent alone and all agents together.
fn property_texts(n: &Network) -> Vec<String> {
    let names: Vec<&str> = n.agents.iter().map(|a| a.name.as_str()).collect();
    let mut coalitions: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    if names.len() > 1 {
        coalitions.push(names.join(", "));
    }
    let mut out = Vec::new();
    for c in &coalitions {
        for o in objectives() {
            out.push(format!("#synth <<{}>> {}", c, o));
        }
    }
    out
}

fn properties(n: &Network) -> Vec<StctlProperty> {
    property_texts(n).iter().map(|t| parse_property(t, n).unwrap()).collect()
}

fn rendered(n: &Network, s: &[stratimed::strategy::Strategy]) -> Vec<String> {
    s.iter().map(|s| s.render(n)).collect()
}

fn criterion_1() -> Outcome {
    if RunConfig::new("", "").timeout_seconds != 120 || DEFAULT_TIMEOUT_SECONDS != 120 {
        return Err("default timeout is not 120 s".into());
    }
    let mut slowest = 0.0f64;
    let mut points = 0;
    for v in 1..=2 {
        for c in 1..=2 {
            for k in 1..=v {
                let coalition: BTreeSet<usize> = (1..=k).collect();
                let (m, p) = generate_voting(v, c, &coalition).map_err(|e| e.to_string())?;
                let start = Instant::now();
                let out = run_texts(&m, &p, &RunConfig::new("", ""));
                let secs = start.elapsed().as_secs_f64();
                slowest = slowest.max(secs);
                let report = out.report.ok_or("no report")?;
                if out.status != ExitStatus::Holds || report.strategies.is_empty() {
                    return Err(format!("v={} c={} |A|={}: no strategy", v, c, k));
                }
                if secs >= VOTING_POINT_SECONDS {
                    return Err(format!("v={} c={} |A|={}: {:.2} s", v, c, k, secs));
                }
                points += 1;
            }
        }
    }
    Ok(format!("{} points, slowest {:.3} s", points, slowest))
}

fn criterion_2(models: &[(String, Network)]) -> Outcome {
    if models.len() < MIN_CORPUS {
        return Err(format!("only {} corpus models", models.len()));
    }
    let start = Instant::now();
    let mut checked = 0;
    for (name, n) in models {
        for p in properties(n) {
            let engine = explore(n, &p, Budget::unlimited());
            if engine.termination != Termination::Complete {
                return Err(format!("{}: incomplete run", name));
            }
            let oracle = enumerate_and_check(n, &p).map_err(|e| format!("{}: {}", name, e))?;
            if rendered(n, &engine.strategies) != rendered(n, &oracle) {
                return Err(format!("{}: sets differ", name));
            }
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= ORACLE_SUITE_SECONDS {
        return Err(format!("suite took {:.1} s", secs));
    }
    Ok(format!("{} models, {} properties, {:.2} s", models.len(), checked, secs))
}

/// Random DBM with integer bounds in `[-DBM_BOUND, DBM_BOUND]`.
fn random_dbm(rng: &mut ChaCha8Rng, clocks: usize) -> Dbm<i64> {
    let count = rng.gen_range(0..7);
    let cs: Vec<(usize, usize, Bound<i64>)> = (0..count)
        .filter_map(|_| {
            let i = rng.gen_range(0..=clocks);
            let j = rng.gen_range(0..=clocks);
            let v = rng.gen_range(-DBM_BOUND..=DBM_BOUND);
            let b = if rng.gen_bool(0.5) { Bound::lt(v) } else { Bound::le(v) };
            (i != j).then_some((i, j, b))
        })
        .collect();
    Dbm::from_constraints(clocks, cs).unwrap()
}

/// Whether the raw constraints of `z` admit a point on the grid with step
/// `1 / (clocks + 1)`, which every non-empty integer-bounded zone has.
fn grid_feasible(z: &Dbm<i64>) -> bool {
    let k = z.clocks();
    let den = k as i64 + 1;
    let top = (DBM_BOUND * k as i64 + 2) * den;
    fn ok(z: &Dbm<i64>, p: &[i64], den: i64) -> bool {
        let val = |i: usize| if i == 0 { 0 } else { p[i - 1] };
        (0..=p.len()).all(|i| {
            (0..=p.len()).all(|j| match z.get(i, j).value() {
                None => true,
                Some(c) => {
                    let d = val(i) - val(j);
                    d < c * den || (d == c * den && !z.get(i, j).is_strict())
                }
            })
        })
    }
    fn search(z: &Dbm<i64>, p: &mut Vec<i64>, k: usize, top: i64, den: i64) -> bool {
        if p.len() == k {
            return true;
        }
        for v in 0..=top {
            p.push(v);
            if ok(z, p, den) && search(z, p, k, top, den) {
                return true;
            }
            p.pop();
        }
        false
    }
    search(z, &mut Vec::new(), k, top, den)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdb3);
    let mut empty = 0;
    for case in 0..RANDOM_DBMS {
        let k = rng.gen_range(1..=DBM_MAX_CLOCKS);
        let raw = random_dbm(&mut rng, k);
        let z = raw.canonicalize();
        let fail = |what: &str| Err(format!("case {}: {}", case, what));
        if z.canonicalize() != z {
            return fail("canonicalize not idempotent");
        }
        if z.is_empty() == grid_feasible(&raw) {
            return fail("emptiness disagrees with the grid");
        }
        empty += usize::from(z.is_empty());
        let b = z.intersect(&random_dbm(&mut rng, k)).unwrap().canonicalize();
        let c = b.intersect(&random_dbm(&mut rng, k)).unwrap().canonicalize();
        let other = random_dbm(&mut rng, k).canonicalize();
        let inc = |x: &Dbm<i64>, y: &Dbm<i64>| x.includes(y).unwrap();
        if !(inc(&z, &z) && inc(&z, &b) && inc(&b, &c) && inc(&z, &c)) {
            return fail("includes not reflexive or transitive");
        }
        for (x, y) in [(&z, &other), (&b, &other), (&z, &b)] {
            if inc(x, y) && inc(y, x) && x != y && !(x.is_empty() && y.is_empty()) {
                return fail("includes not antisymmetric");
            }
        }
        let up = z.time_elapse();
        if up.time_elapse() != up || !inc(&up, &z) {
            return fail("time_elapse not idempotent and extensive");
        }
        let lo = rng.gen_range(0..=4);
        let hi = (!rng.gen_bool(0.25)).then(|| lo + rng.gen_range(0..=3));
        let Ok(i) = Interval::new(lo, rng.gen_bool(0.5), hi, rng.gen_bool(0.5)) else {
            continue;
        };
        let parts: Vec<Dbm<i64>> = z.split_on_interval(k, &i).unwrap().into_parts().map(|(_, p)| p).collect();
        for (a, pa) in parts.iter().enumerate() {
            if !inc(&z, pa) || parts[a + 1..].iter().any(|pb| !pa.intersect(pb).unwrap().is_empty()) {
                return fail("split parts overlap or leave the zone");
            }
        }
        if !z.is_covered_by(&parts).unwrap() {
            return fail("split parts do not cover the zone");
        }
    }
    Ok(format!("{} DBMs ({} empty), 0 failures", RANDOM_DBMS, empty))
}

fn criterion_4(models: &[(String, Network)]) -> Outcome {
    let mut nodes = 0;
    for (name, n) in models {
        for p in properties(n) {
            let all = unrestricted_graph(n, &p.objective);
            for b in all_outcomes(n, &p) {
                for v in &b.graph.nodes {
                    let inside = all
                        .nodes
                        .iter()
                        .any(|u| u.loc == v.loc && u.status == v.status && u.zone.includes(&v.zone).unwrap());
                    if !inside {
                        return Err(format!("{}: {} escapes", name, v.loc.render(n)));
                    }
                    nodes += 1;
                }
            }
        }
    }
    Ok(format!("{} branch nodes, 0 violations", nodes))
}

fn criterion_5(models: &[(String, Network)]) -> Outcome {
    let json = RunConfig {
        format: OutputFormat::Json,
        ..RunConfig::new("", "")
    };
    let mut runs = 0;
    for (name, n) in models {
        let model_text = stratimed::lang::pretty_print_model(n);
        for text in property_texts(n) {
            let mut p = parse_property(&text, n).unwrap();
            let synth = explore(n, &p, Budget::unlimited());
            p.mode = Mode::Check;
            let check = explore(n, &p, Budget::unlimited());
            if (check.verdict == Verdict::Holds) != !synth.strategies.is_empty() {
                return Err(format!("{}: {}: check and synth disagree", name, text));
            }
            let a = run_texts(&model_text, &text, &json).stdout;
            let b = run_texts(&model_text, &text, &json).stdout;
            if a != b {
                return Err(format!("{}: {}: JSON reports differ", name, text));
            }
            p.mode = Mode::SynthAll;
            let par = explore(n, &p, Budget { workers: 4, ..Budget::unlimited() });
            let set = |v: &[stratimed::strategy::Strategy]| v.iter().cloned().collect::<BTreeSet<_>>();
            if set(&par.strategies) != set(&synth.strategies) {
                return Err(format!("{}: {}: 4 workers differ", name, text));
            }
            runs += 1;
        }
    }
    Ok(format!("{} properties consistent and reproducible", runs))
}

fn criterion_6(models: &[(String, Network)]) -> Outcome {
    for (name, n) in models {
        let max = max_constants(n, None);
        let root = initial_core(n).map_err(|e| format!("{}: {}", name, e))?;
        let mut seen = HashSet::from([(root.loc.clone(), root.zone.clone())]);
        let mut locs = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for m in enabled_moves(n, &c) {
                let next = apply_move(n, &c, &m, &max).map_err(|e| e.to_string())?;
                if !next.zone.is_empty() && seen.insert((next.loc.clone(), next.zone.clone())) {
                    queue.push_back(next);
                }
            }
            locs.insert(c.loc.0);
        }
        if locs != reachable_locations(n).map_err(|e| e.to_string())? {
            return Err(format!("{}: reachable locations differ", name));
        }
    }
    Ok(format!("{} models agree", models.len()))
}

fn criterion_7() -> Outcome {
    let points = bench_sweep(&[1, 2], &[1, 2, 3], &[1], DEFAULT_TIMEOUT_SECONDS);
    if points.len() != 6 || points.iter().any(|p| p.termination != Termination::Complete) {
        return Err("sweep incomplete".into());
    }
    let table = render_table(&points);
    let lines: Vec<&str> = table.lines().collect();
    if lines.len() != 4 || !lines[0].contains("c=1") || !lines[0].contains("c=3") {
        return Err(format!("unexpected table:\n{}", table));
    }
    let mut by_row: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for p in &points {
        by_row.entry((p.coalition_size, p.v)).or_default().push((p.c, p.explored_states));
    }
    for ((k, v), mut row) in by_row {
        row.sort();
        if row.windows(2).any(|w| w[1].1 < w[0].1) {
            return Err(format!("|A|={} v={}: explored states decrease: {:?}", k, v, row));
        }
    }
    let counts: Vec<String> = points.iter().map(|p| p.explored_states.to_string()).collect();
    Ok(format!("explored states {}", counts.join(", ")))
}

fn main() {
    let models = corpus();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("voting formula reproduction", Box::new(criterion_1)),
        ("oracle equivalence", Box::new(|| criterion_2(&models))),
        ("zone-algebra properties", Box::new(criterion_3)),
        ("outcome containment", Box::new(|| criterion_4(&models))),
        ("mode consistency and determinism", Box::new(|| criterion_5(&models))),
        ("region/zone agreement", Box::new(|| criterion_6(&models))),
        ("benchmark harness sanity", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {}: {} [{:.2} s]", k + 1, title, detail, took),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {}: {} [{:.2} s]", k + 1, title, detail, took);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
