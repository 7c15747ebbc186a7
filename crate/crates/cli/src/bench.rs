use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use serde::Serialize;

use stratimed::engine::{explore, Budget, Termination};
use stratimed::lang::{parse_model, parse_property};

use crate::voting::generate_voting;

/// One measured point of the voting sweep.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchPoint {
    pub v: usize,
    pub c: usize,
    pub coalition_size: usize,
    pub wall_seconds: f64,
    pub explored_states: usize,
    pub strategy_count: usize,
    pub termination: Termination,
}

/// Runs every `(|A|, v, c)` point with `|A| <= v`, sequentially and on one
/// thread. The coalition of size `k` is voters `1..=k`.
pub fn bench_sweep(voters: &[usize], candidates: &[usize], sizes: &[usize], timeout_seconds: u64) -> Vec<BenchPoint> {
    let budget = Budget {
        timeout: (timeout_seconds > 0).then(|| Duration::from_secs(timeout_seconds)),
        ..Budget::unlimited()
    };
    let mut out = Vec::new();
    for &k in sizes {
        for &v in voters {
            if k == 0 || k > v {
                continue;
            }
            for &c in candidates {
                let coalition: BTreeSet<usize> = (1..=k).collect();
                let (model, property) = generate_voting(v, c, &coalition).expect("valid sweep point");
                let n = parse_model(&model).expect("generated model parses");
                let p = parse_property(&property, &n).expect("generated property parses");
                let r = explore(&n, &p, budget);
                out.push(BenchPoint {
                    v,
                    c,
                    coalition_size: k,
                    wall_seconds: r.stats.wall_seconds,
                    explored_states: r.stats.explored,
                    strategy_count: r.strategies.len(),
                    termination: r.termination,
                });
            }
        }
    }
    out
}

/// Grid of wall times: one row per `(|A|, v)`, one column per `c`.
pub fn render_table(points: &[BenchPoint]) -> String {
    let cs: BTreeSet<usize> = points.iter().map(|p| p.c).collect();
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, String>> = BTreeMap::new();
    for p in points {
        let cell = match p.termination {
            Termination::Complete => format!("{:.2}", p.wall_seconds),
            Termination::Timeout => "timeout".to_string(),
            other => other.to_string(),
        };
        rows.entry((p.coalition_size, p.v)).or_default().insert(p.c, cell);
    }
    let mut header = vec!["|A|".to_string(), "v".to_string()];
    header.extend(cs.iter().map(|c| format!("c={}", c)));
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(&(k, v), cells)| {
            let mut r = vec![k.to_string(), v.to_string()];
            r.extend(cs.iter().map(|c| cells.get(c).cloned().unwrap_or_else(|| "-".to_string())));
            r
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap())
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!(" {:>w$} ", c, w = w)).collect();
        format!("|{}|\n", padded.join("|"))
    };
    let mut out = line(&header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w + 2)).collect();
    out.push_str(&format!("|{}|\n", rule.join("|")));
    for r in &body {
        out.push_str(&line(r));
    }
    out
}
