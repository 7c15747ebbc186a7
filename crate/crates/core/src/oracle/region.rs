use crate::model::Relation;

/// Alur–Dill region over clocks with per-clock maximal constants.
///
/// `ints[i] == max[i] + 1` means the clock is above its constant. For other
/// clocks `ranks[i]` orders fractional parts: 0 is a zero fraction, equal
/// ranks are equal fractions. A clock exactly at its constant always has a
/// zero fraction, anything beyond it is "above".
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Region {
    pub ints: Vec<u32>,
    pub ranks: Vec<u32>,
}

impl Region {
    pub fn zero(clocks: usize) -> Self {
        Region {
            ints: vec![0; clocks],
            ranks: vec![0; clocks],
        }
    }

    pub fn is_above(&self, max: &[u32], i: usize) -> bool {
        self.ints[i] > max[i]
    }

    /// Renumbers positive ranks to 1..=k and clears ranks of clocks above
    /// their constant.
    fn normalize(mut self, max: &[u32]) -> Self {
        for ((int, rank), &m) in self.ints.iter_mut().zip(&mut self.ranks).zip(max) {
            if *int > m {
                *int = m + 1;
                *rank = 0;
            }
        }
        let mut used: Vec<u32> = self.ranks.iter().copied().filter(|&r| r > 0).collect();
        used.sort_unstable();
        used.dedup();
        for r in &mut self.ranks {
            if *r > 0 {
                *r = used.binary_search(r).unwrap() as u32 + 1;
            }
        }
        self
    }

    /// The region reached by the smallest positive delay that leaves this
    /// one, or `None` when every clock is above its constant.
    pub fn delay_successor(&self, max: &[u32]) -> Option<Region> {
        let n = self.ints.len();
        let bounded: Vec<usize> = (0..n).filter(|&i| !self.is_above(max, i)).collect();
        if bounded.is_empty() {
            return None;
        }
        let mut next = self.clone();
        if bounded.iter().any(|&i| self.ranks[i] == 0) {
            // Zero fractions become the smallest positive fractions.
            for &i in &bounded {
                if self.ranks[i] == 0 {
                    if self.ints[i] == max[i] {
                        next.ints[i] = max[i] + 1;
                    }
                    next.ranks[i] = 1;
                } else {
                    next.ranks[i] = self.ranks[i] + 1;
                }
            }
        } else {
            // The largest fractions reach the next integer.
            let top = bounded.iter().map(|&i| self.ranks[i]).max().unwrap();
            for &i in &bounded {
                if self.ranks[i] == top {
                    next.ints[i] += 1;
                    next.ranks[i] = 0;
                }
            }
        }
        Some(next.normalize(max))
    }

    pub fn reset(&self, clocks: &[usize], max: &[u32]) -> Region {
        let mut next = self.clone();
        for &c in clocks {
            next.ints[c] = 0;
            next.ranks[c] = 0;
        }
        next.normalize(max)
    }

    /// Whether every valuation in the region satisfies `x_i ~ c`, for
    /// `c <= max[i]`.
    pub fn satisfies(&self, max: &[u32], i: usize, rel: Relation, c: u32) -> bool {
        if self.is_above(max, i) {
            return matches!(rel, Relation::Ge | Relation::Gt);
        }
        let k = self.ints[i];
        if self.ranks[i] == 0 {
            return rel.holds(k, c);
        }
        // value strictly between k and k + 1
        match rel {
            Relation::Lt | Relation::Le => k < c,
            Relation::Eq => false,
            Relation::Ge | Relation::Gt => k >= c,
        }
    }
}

/// Every region over clocks with the given constants.
pub fn all_regions(max: &[u32]) -> Vec<Region> {
    let n = max.len();
    let mut out = Vec::new();
    let mut ints = vec![0u32; n];
    loop {
        // Clocks strictly inside (k, k+1) with k < max take a rank; choose
        // every weak ordering of their fractions (plus zero).
        let free: Vec<usize> = (0..n).filter(|&i| ints[i] <= max[i]).collect();
        for ranks in weak_orders(free.len()) {
            let mut r = Region {
                ints: ints.clone(),
                ranks: vec![0; n],
            };
            let ok = free.iter().zip(&ranks).all(|(&i, &rk)| rk == 0 || ints[i] < max[i]);
            if !ok {
                continue;
            }
            for (&i, &rk) in free.iter().zip(&ranks) {
                r.ranks[i] = rk;
            }
            let normalized = r.clone().normalize(max);
            if normalized == r {
                out.push(r);
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                out.dedup();
                return out;
            }
            ints[k] += 1;
            if ints[k] <= max[k] + 1 {
                break;
            }
            ints[k] = 0;
            k += 1;
        }
    }
}

/// Assignments of ranks `0..=m` to `m` items whose positive ranks are
/// contiguous from 1.
fn weak_orders(m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn go(i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            let mut used: Vec<u32> = cur.iter().copied().filter(|&r| r > 0).collect();
            used.sort_unstable();
            used.dedup();
            if used.iter().enumerate().all(|(k, &r)| r == k as u32 + 1) {
                out.push(cur.clone());
            }
            return;
        }
        for r in 0..=cur.len() as u32 {
            cur[i] = r;
            go(i + 1, cur, out);
        }
    }
    go(0, &mut cur, &mut out);
    out
}
