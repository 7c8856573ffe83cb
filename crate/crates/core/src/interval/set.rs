use std::cmp::Ordering;

use super::{Delim, Interval, IntervalError, TimeMode, TimePoint};

/// A finite collection of intervals.
///
/// Sets built through [`coalesce`] or [`complement`] are canonical: sorted,
/// pairwise disjoint and non-adjacent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    items: Vec<Interval>,
}

impl IntervalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vec(items: Vec<Interval>) -> Self {
        IntervalSet { items }
    }

    pub fn push(&mut self, interval: Interval) {
        self.items.push(interval);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn into_vec(self) -> Vec<Interval> {
        self.items
    }

    pub fn contains(&self, t: &TimePoint) -> bool {
        self.items.iter().any(|i| i.contains(t))
    }

    pub fn coalesced(&self, mode: TimeMode) -> IntervalSet {
        coalesce(self.items.iter().cloned(), mode)
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        IntervalSet { items: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// The unique minimal set of maximal intervals with the same union.
///
/// In discrete mode, integer-adjacent intervals merge (`[1,2]` and `[3,4]`
/// become `[1,4]`), and the output is in closed integer form. Sort plus one
/// linear sweep.
pub fn coalesce(intervals: impl IntoIterator<Item = Interval>, mode: TimeMode) -> IntervalSet {
    let mut sorted: Vec<Interval> = match mode {
        TimeMode::Dense => intervals.into_iter().collect(),
        TimeMode::Discrete => intervals
            .into_iter()
            .filter_map(|i| i.integer_bounds())
            .map(|(lo, hi)| Interval::new(Delim::Closed, lo, hi, Delim::Closed).expect("lo <= hi"))
            .collect(),
    };
    sorted.sort();
    let mut out: Vec<Interval> = Vec::with_capacity(sorted.len());
    for next in sorted {
        match out.last_mut() {
            Some(cur) if cur.unites_with(&next, mode) => {
                *cur = cur.hull(&next);
            }
            _ => out.push(next),
        }
    }
    IntervalSet { items: out }
}

/// `α \ ∪S` as maximal intervals. Every member of `S` must lie inside `α`.
pub fn complement(set: &IntervalSet, alpha: &Interval, mode: TimeMode) -> Result<IntervalSet, IntervalError> {
    if let Some(bad) = set.iter().find(|i| !i.is_subset(alpha)) {
        return Err(IntervalError::NotContained { inner: bad.to_string(), outer: alpha.to_string() });
    }
    let covered = set.coalesced(mode);
    let one = TimePoint::from(1);
    let mut out = Vec::new();
    // Start of the current gap: (value, delimiter).
    let mut gap_lo = Some((alpha.lo().clone(), alpha.lo_delim()));
    for piece in covered.iter() {
        if let Some((lo, lo_delim)) = gap_lo.take() {
            let (hi, hi_delim) = match mode {
                TimeMode::Discrete => (piece.lo() - &one, Delim::Closed),
                TimeMode::Dense => (piece.lo().clone(), flip(piece.lo_delim())),
            };
            if let Some(gap) = Interval::try_new(lo_delim, lo, hi, hi_delim) {
                out.push(gap);
            }
        }
        gap_lo = match piece.hi().cmp(alpha.hi()) {
            Ordering::Less => Some(match mode {
                TimeMode::Discrete => (piece.hi() + &one, Delim::Closed),
                TimeMode::Dense => (piece.hi().clone(), flip(piece.hi_delim())),
            }),
            _ if piece.hi_delim() != alpha.hi_delim() && !piece.hi_delim().is_closed() => {
                // α = [..,h] and the piece ends at h): the point h survives
                Some((piece.hi().clone(), Delim::Closed))
            }
            _ => None,
        };
    }
    if let Some((lo, lo_delim)) = gap_lo {
        if let Some(gap) = Interval::try_new(lo_delim, lo, alpha.hi().clone(), alpha.hi_delim()) {
            out.push(gap);
        }
    }
    Ok(IntervalSet { items: out })
}

fn flip(d: Delim) -> Delim {
    match d {
        Delim::Closed => Delim::Open,
        Delim::Open => Delim::Closed,
    }
}
