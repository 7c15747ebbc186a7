//! Randomized DBM properties, checked against a brute-force grid search.

use proptest::prelude::*;

use stratimed::zone::{Bound, Dbm, Interval};

const CASES: u32 = 1000;
const RANGE: i64 = 5;

#[derive(Clone, Debug)]
struct Raw {
    clocks: usize,
    constraints: Vec<(usize, usize, i64, bool)>,
}

impl Raw {
    fn dbm(&self) -> Dbm<i64> {
        Dbm::from_constraints(
            self.clocks,
            self.constraints.iter().map(|&(i, j, v, strict)| {
                (i, j, if strict { Bound::lt(v) } else { Bound::le(v) })
            }),
        )
        .unwrap()
    }
}

fn raw_for(clocks: usize, len: std::ops::Range<usize>) -> impl proptest::strategy::Strategy<Value = Raw> {
    prop::collection::vec((0..=clocks, 0..=clocks, -RANGE..=RANGE, any::<bool>()), len)
        .prop_map(move |cs| Raw {
            clocks,
            constraints: cs.into_iter().filter(|&(i, j, _, _)| i != j).collect(),
        })
}

fn raw() -> impl proptest::strategy::Strategy<Value = Raw> {
    (1usize..=3).prop_flat_map(|k| raw_for(k, 0..7))
}

/// Same dimension, three zones.
fn triple() -> impl proptest::strategy::Strategy<Value = (Raw, Raw, Raw)> {
    (1usize..=3).prop_flat_map(|k| (raw_for(k, 0..4), raw_for(k, 0..4), raw_for(k, 0..4)))
}

/// Grid points with denominator `clocks + 1`. A non-empty zone with integer
/// bounds contains a region, and every region holds such a point with all
/// values below `RANGE * clocks + 2`.
struct Grid {
    clocks: usize,
    den: i64,
    top: i64,
}

impl Grid {
    fn new(clocks: usize) -> Self {
        let den = clocks as i64 + 1;
        Grid {
            clocks,
            den,
            top: (RANGE * clocks as i64 + 2) * den,
        }
    }

    fn holds(&self, z: &Dbm<i64>, p: &[i64], upto: usize) -> bool {
        if z.is_empty() {
            return false;
        }
        let val = |i: usize| if i == 0 { 0 } else { p[i - 1] };
        for i in 0..=upto {
            for j in 0..=upto {
                let b = z.get(i, j);
                if let Some(c) = b.value() {
                    let d = val(i) - val(j);
                    let c = c * self.den;
                    if d > c || (b.is_strict() && d == c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Up to `limit` points of `raw` (checked on the raw, unclosed constraints).
    fn points(&self, raw: &Raw, limit: usize) -> Vec<Vec<i64>> {
        let z = raw.dbm();
        let mut out = Vec::new();
        let mut p = vec![0; self.clocks];
        self.search(&z, &mut p, 0, limit, &mut out);
        out
    }

    fn search(&self, z: &Dbm<i64>, p: &mut Vec<i64>, k: usize, limit: usize, out: &mut Vec<Vec<i64>>) {
        if out.len() >= limit {
            return;
        }
        if k == self.clocks {
            out.push(p.clone());
            return;
        }
        for v in 0..=self.top {
            p[k] = v;
            if self.holds(z, p, k + 1) {
                self.search(z, p, k + 1, limit, out);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

fn interval() -> impl proptest::strategy::Strategy<Value = Interval<i64>> {
    (0i64..=4, 0i64..=3, any::<bool>(), any::<bool>(), any::<bool>()).prop_filter_map(
        "valid interval",
        |(lo, width, ls, us, unbounded)| {
            let upper = (!unbounded).then_some(lo + width);
            Interval::new(lo, ls, upper, us && !unbounded).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn canonicalize_is_idempotent(r in raw()) {
        let c = r.dbm().canonicalize();
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn emptiness_matches_grid(r in raw()) {
        let grid = Grid::new(r.clocks);
        let witnesses = grid.points(&r, 1);
        let z = r.dbm().canonicalize();
        prop_assert_eq!(z.is_empty(), witnesses.is_empty());
        if let Some(p) = witnesses.first() {
            prop_assert!(grid.holds(&z, p, r.clocks));
        }
    }

    #[test]
    fn includes_is_a_partial_order((a, b, c) in triple()) {
        let k = a.clocks;
        let za = a.dbm().canonicalize();
        // nested zones so that inclusions actually occur
        let zb = za.intersect(&b.dbm()).unwrap().canonicalize();
        let zc = zb.intersect(&c.dbm()).unwrap().canonicalize();
        for z in [&za, &zb, &zc] {
            prop_assert!(z.includes(z).unwrap());
        }
        prop_assert!(za.includes(&zb).unwrap());
        prop_assert!(zb.includes(&zc).unwrap());
        prop_assert!(za.includes(&zc).unwrap());

        let free = [a.dbm().canonicalize(), b.dbm().canonicalize(), c.dbm().canonicalize()];
        for x in &free {
            for y in &free {
                if x.includes(y).unwrap() && y.includes(x).unwrap() {
                    prop_assert!(x == y || (x.is_empty() && y.is_empty()));
                }
                for w in &free {
                    if x.includes(y).unwrap() && y.includes(w).unwrap() {
                        prop_assert!(x.includes(w).unwrap());
                    }
                }
            }
        }
        // soundness against sampled points
        let grid = Grid::new(k);
        let [x, y, _] = &free;
        if x.includes(y).unwrap() {
            for p in grid.points(&b, 50) {
                prop_assert!(grid.holds(x, &p, k));
            }
        }
    }

    #[test]
    fn time_elapse_is_idempotent_and_extensive(r in raw()) {
        let z = r.dbm().canonicalize();
        let up = z.time_elapse();
        prop_assert_eq!(up.time_elapse(), up.clone());
        prop_assert!(up.includes(&z).unwrap());
    }

    #[test]
    fn split_parts_partition_the_zone(r in raw(), i in interval()) {
        let z = r.dbm().canonicalize();
        let clock = r.clocks;
        let split = z.split_on_interval(clock, &i).unwrap();
        let parts: Vec<Dbm<i64>> = split.into_parts().map(|(_, p)| p).collect();
        for (a, pa) in parts.iter().enumerate() {
            prop_assert!(z.includes(pa).unwrap());
            for pb in &parts[a + 1..] {
                prop_assert!(pa.intersect(pb).unwrap().is_empty());
            }
        }
        prop_assert!(z.is_covered_by(&parts).unwrap());

        let grid = Grid::new(r.clocks);
        for p in grid.points(&r, 40) {
            let hits = parts.iter().filter(|part| grid.holds(part, &p, r.clocks)).count();
            prop_assert_eq!(hits, 1);
        }
    }
}
