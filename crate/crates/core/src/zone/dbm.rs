use std::fmt;

use super::{Bound, Interval, Status, ZoneError};
use crate::scalar::BoundScalar;

/// Difference bound matrix over `clocks` clocks plus the reference clock
/// at index 0. Entry `(i, j)` bounds `x_i - x_j`.
///
/// The empty zone carries no matrix at all.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dbm<T> {
    dim: usize,
    cells: Vec<Bound<T>>,
    canonical: bool,
}

/// The three status pieces of a zone relative to an interval on one clock.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Split<T> {
    pub before: Option<Dbm<T>>,
    pub inside: Option<Dbm<T>>,
    pub after: Option<Dbm<T>>,
}

impl<T> Split<T> {
    pub fn get(&self, status: Status) -> Option<&Dbm<T>> {
        match status {
            Status::Before => self.before.as_ref(),
            Status::Inside => self.inside.as_ref(),
            Status::After => self.after.as_ref(),
        }
    }

    pub fn into_parts(self) -> impl Iterator<Item = (Status, Dbm<T>)> {
        [
            (Status::Before, self.before),
            (Status::Inside, self.inside),
            (Status::After, self.after),
        ]
        .into_iter()
        .filter_map(|(s, z)| z.map(|z| (s, z)))
    }
}

impl<T: BoundScalar> Dbm<T> {
    /// All clocks non-negative, otherwise unconstrained.
    pub fn universe(clocks: usize) -> Self {
        let dim = clocks + 1;
        let mut cells = vec![Bound::Infinity; dim * dim];
        for k in 0..dim {
            cells[k] = Bound::zero();
            cells[k * dim + k] = Bound::zero();
        }
        Dbm {
            dim,
            cells,
            canonical: true,
        }
    }

    /// The single valuation where every clock is 0.
    pub fn zero(clocks: usize) -> Self {
        let dim = clocks + 1;
        Dbm {
            dim,
            cells: vec![Bound::zero(); dim * dim],
            canonical: true,
        }
    }

    pub fn empty(clocks: usize) -> Self {
        Dbm {
            dim: clocks + 1,
            cells: Vec::new(),
            canonical: true,
        }
    }

    /// Universe tightened by `(i, j, bound)` entries, not yet closed.
    pub fn from_constraints<I>(clocks: usize, constraints: I) -> Result<Self, ZoneError>
    where
        I: IntoIterator<Item = (usize, usize, Bound<T>)>,
    {
        let mut z = Self::universe(clocks);
        for (i, j, b) in constraints {
            z.check_index(i)?;
            z.check_index(j)?;
            let k = i * z.dim + j;
            if b < z.cells[k] {
                z.cells[k] = b;
                z.canonical = false;
            }
        }
        Ok(z)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clocks(&self) -> usize {
        self.dim - 1
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Entry `(i, j)`. Panics on the empty zone.
    pub fn get(&self, i: usize, j: usize) -> Bound<T> {
        assert!(!self.is_empty(), "entry of the empty zone");
        self.cells[i * self.dim + j]
    }

    /// Upper bound of clock `i`, i.e. entry `(i, 0)`.
    pub fn upper(&self, i: usize) -> Bound<T> {
        self.get(i, 0)
    }

    /// Lower bound of clock `i` as the raw entry `(0, i)` (negated value).
    pub fn lower(&self, i: usize) -> Bound<T> {
        self.get(0, i)
    }

    fn check_index(&self, i: usize) -> Result<(), ZoneError> {
        if i < self.dim {
            Ok(())
        } else {
            Err(ZoneError::UnknownClock {
                index: i,
                dim: self.dim,
            })
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), ZoneError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(ZoneError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    fn closed(&self) -> Self {
        if self.canonical {
            self.clone()
        } else {
            self.canonicalize()
        }
    }

    /// All-pairs shortest-path closure. A negative cycle yields the empty zone.
    pub fn canonicalize(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.dim;
        let mut m = self.cells.clone();
        for k in 0..n {
            for i in 0..n {
                let ik = m[i * n + k];
                if ik.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let via = ik + m[k * n + j];
                    if via < m[i * n + j] {
                        m[i * n + j] = via;
                    }
                }
            }
            if (0..n).any(|i| m[i * n + i] < Bound::zero()) {
                return Self::empty(n - 1);
            }
        }
        Dbm {
            dim: n,
            cells: m,
            canonical: true,
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ZoneError> {
        self.check_dim(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.clocks()));
        }
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| *a.min(b))
            .collect();
        Ok(Dbm {
            dim: self.dim,
            cells,
            canonical: false,
        }
        .canonicalize())
    }

    /// Intersection with the single constraint `x_i - x_j ≺ bound`.
    pub fn constrain(&self, i: usize, j: usize, bound: Bound<T>) -> Result<Self, ZoneError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        let base = self.closed();
        if bound >= base.get(i, j) {
            return Ok(base);
        }
        if bound + base.get(j, i) < Bound::zero() {
            return Ok(Self::empty(self.clocks()));
        }
        // incremental closure through the tightened edge
        let n = self.dim;
        let mut m = base.cells;
        m[i * n + j] = bound;
        for a in 0..n {
            let ai = m[a * n + i];
            if ai.is_infinite() {
                continue;
            }
            for b in 0..n {
                let via = ai + bound + m[j * n + b];
                if via < m[a * n + b] {
                    m[a * n + b] = via;
                }
            }
        }
        Ok(Dbm {
            dim: n,
            cells: m,
            canonical: true,
        })
    }

    pub fn constrain_all<I>(&self, constraints: I) -> Result<Self, ZoneError>
    where
        I: IntoIterator<Item = (usize, usize, Bound<T>)>,
    {
        let mut z = self.closed();
        for (i, j, b) in constraints {
            if z.is_empty() {
                break;
            }
            z = z.constrain(i, j, b)?;
        }
        Ok(z)
    }

    /// Delay closure: drops every upper bound relative to the reference clock.
    pub fn time_elapse(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut z = self.closed();
        if z.is_empty() {
            return z;
        }
        for i in 1..z.dim {
            z.cells[i * z.dim] = Bound::Infinity;
        }
        z
    }

    /// Sets every clock in `clocks` (DBM indices, never 0) to zero.
    pub fn reset(&self, clocks: &[usize]) -> Result<Self, ZoneError> {
        for &c in clocks {
            if c == 0 {
                return Err(ZoneError::UnknownClock {
                    index: 0,
                    dim: self.dim,
                });
            }
            self.check_index(c)?;
        }
        let mut z = self.closed();
        if z.is_empty() {
            return Ok(z);
        }
        let n = z.dim;
        for &x in clocks {
            for j in 0..n {
                z.cells[x * n + j] = z.cells[j];
                z.cells[j * n + x] = z.cells[j * n];
            }
            z.cells[x * n + x] = Bound::zero();
        }
        Ok(z)
    }

    /// Whether every valuation of `other` lies in `self`.
    pub fn includes(&self, other: &Self) -> Result<bool, ZoneError> {
        self.check_dim(other)?;
        if !self.canonical || !other.canonical {
            return Err(ZoneError::NotCanonical);
        }
        if other.is_empty() {
            return Ok(true);
        }
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.cells.iter().zip(&other.cells).all(|(a, b)| a >= b))
    }

    /// Classic per-clock maximal-constant extrapolation. `max_const[c - 1]`
    /// is the constant of DBM clock `c`.
    pub fn extrapolate(&self, max_const: &[T]) -> Self {
        assert_eq!(
            max_const.len(),
            self.clocks(),
            "one maximal constant per clock"
        );
        let mut z = self.closed();
        if z.is_empty() {
            return z;
        }
        let n = z.dim;
        let m = |k: usize| if k == 0 { T::zero() } else { max_const[k - 1] };
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let b = z.cells[i * n + j];
                if i != 0 && b > Bound::le(m(i)) {
                    z.cells[i * n + j] = Bound::Infinity;
                    changed = true;
                } else if j != 0 && b < Bound::lt(-m(j)) {
                    z.cells[i * n + j] = Bound::lt(-m(j));
                    changed = true;
                }
            }
        }
        if changed {
            z.canonical = false;
            z = z.canonicalize();
        }
        z
    }

    /// Partitions the zone by the position of `clock` relative to `interval`.
    pub fn split_on_interval(&self, clock: usize, interval: &Interval<T>) -> Result<Split<T>, ZoneError> {
        self.check_index(clock)?;
        let part = |s: Status| -> Result<Option<Self>, ZoneError> {
            let z = self.constrain_all(interval.status_constraints(clock, s))?;
            Ok((!z.is_empty()).then_some(z))
        };
        Ok(Split {
            before: part(Status::Before)?,
            inside: part(Status::Inside)?,
            after: part(Status::After)?,
        })
    }

    /// `self \ other` as pairwise-disjoint canonical zones.
    pub fn subtract(&self, other: &Self) -> Result<Vec<Self>, ZoneError> {
        self.check_dim(other)?;
        let mut rest = self.closed();
        if rest.is_empty() {
            return Ok(Vec::new());
        }
        let other = other.closed();
        if other.is_empty() {
            return Ok(vec![rest]);
        }
        let n = self.dim;
        let mut pieces = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let cut = other.get(i, j);
                if cut.is_infinite() || cut >= rest.get(i, j) {
                    continue;
                }
                let outside = rest.constrain(j, i, cut.complement())?;
                if !outside.is_empty() {
                    pieces.push(outside);
                }
                rest = rest.constrain(i, j, cut)?;
                if rest.is_empty() {
                    return Ok(pieces);
                }
            }
        }
        Ok(pieces)
    }

    /// Whether some valuation can delay forever inside the zone.
    pub fn is_time_unbounded(&self) -> bool {
        !self.is_empty() && (1..self.dim).all(|i| self.get(i, 0).is_infinite())
    }

    /// Valuations `w` such that `w - t` lies in the zone for every small
    /// enough delay `t > 0`: upper bounds become non-strict, lower bounds
    /// strict, differences stay as they are.
    pub fn left_limit(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut z = self.clone();
        let n = z.dim;
        for i in 1..n {
            if let Some(v) = z.cells[i * n].value() {
                z.cells[i * n] = Bound::le(v);
            }
            if let Some(v) = z.cells[i].value() {
                z.cells[i] = Bound::lt(v);
            }
        }
        z.canonical = false;
        z.canonicalize()
    }

    /// Whether the union of `others` contains every valuation of the zone.
    pub fn is_covered_by(&self, others: &[Self]) -> Result<bool, ZoneError> {
        let mut rest = vec![self.closed()];
        for o in others {
            let mut next = Vec::new();
            for piece in &rest {
                next.extend(piece.subtract(o)?);
            }
            rest = next;
            if rest.is_empty() {
                return Ok(true);
            }
        }
        Ok(rest.iter().all(|z| z.is_empty()))
    }

    /// Conjunction-of-constraints rendering with caller-supplied clock names
    /// (`names[i - 1]` names DBM clock `i`).
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_empty() {
            return "false".to_string();
        }
        let z = self.closed();
        if z.is_empty() {
            return "false".to_string();
        }
        let rel = |strict: bool| if strict { "<" } else { "<=" };
        let mut parts = Vec::new();
        for i in 1..z.dim {
            if let Bound::Finite { value, strict } = z.get(0, i) {
                parts.push(format!("{} {} {}", -value, rel(strict), names[i - 1]));
            }
            if let Bound::Finite { value, strict } = z.get(i, 0) {
                parts.push(format!("{} {} {}", names[i - 1], rel(strict), value));
            }
        }
        for i in 1..z.dim {
            for j in 1..z.dim {
                if i == j {
                    continue;
                }
                if let Bound::Finite { value, strict } = z.get(i, j) {
                    parts.push(format!(
                        "{} - {} {} {}",
                        names[i - 1],
                        names[j - 1],
                        rel(strict),
                        value
                    ));
                }
            }
        }
        if parts.is_empty() {
            "true".to_string()
        } else {
            parts.join(" & ")
        }
    }
}

impl<T: BoundScalar> fmt::Display for Dbm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..self.dim).map(|i| format!("x{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}
