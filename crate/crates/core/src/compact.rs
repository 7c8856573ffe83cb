//! Compaction of answer sets: coalescing (U^t, U^d), subsumption removal,
//! an exact minimum cover for tiny instances and a greedy reducer.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::NodeId;
use crate::interval::{coalesce, Interval, TimeMode, TimePoint};
use crate::repr::{AnswerSet, AnswerTuple, CTuple, DTuple, PointTuple, TDTuple, TTuple};

/// Largest per-pair region [`minimize_exact`] accepts, in cells.
pub const MAX_EXACT_CELLS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompactError {
    #[error("exact minimization needs discrete time")]
    Dense,
    #[error("region of ({n1}, {n2}) has {cells} cells; exact minimization is limited to {MAX_EXACT_CELLS}")]
    TooLarge { n1: String, n2: String, cells: usize },
    #[error("time value {0} does not fit in 64 bits")]
    Overflow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverMode {
    /// Tuples may overlap.
    Overlapping,
    /// Tuples must be pairwise disjoint.
    Disjoint,
}

/// Coalesces time intervals of tuples sharing `(n1, n2, d)`.
pub fn coalesce_t_tuples(tuples: impl IntoIterator<Item = TTuple>, mode: TimeMode) -> BTreeSet<TTuple> {
    let mut groups: BTreeMap<(NodeId, NodeId, TimePoint), Vec<Interval>> = BTreeMap::new();
    for t in tuples {
        groups.entry((t.n1, t.n2, t.d)).or_default().push(t.tau);
    }
    let mut out = BTreeSet::new();
    for ((n1, n2, d), taus) in groups {
        for tau in coalesce(taus, mode).into_vec() {
            out.insert(TTuple { n1: n1.clone(), n2: n2.clone(), tau, d: d.clone() });
        }
    }
    out
}

/// Coalesces distance intervals of tuples sharing `(n1, n2, t)`.
pub fn coalesce_d_tuples(tuples: impl IntoIterator<Item = DTuple>, mode: TimeMode) -> BTreeSet<DTuple> {
    let mut groups: BTreeMap<(NodeId, NodeId, TimePoint), Vec<Interval>> = BTreeMap::new();
    for t in tuples {
        groups.entry((t.n1, t.n2, t.t)).or_default().push(t.delta);
    }
    let mut out = BTreeSet::new();
    for ((n1, n2, t), deltas) in groups {
        for delta in coalesce(deltas, mode).into_vec() {
            out.insert(DTuple { n1: n1.clone(), n2: n2.clone(), t: t.clone(), delta });
        }
    }
    out
}

/// The unique compact U^t form with the same unfolding.
pub fn coalesce_t(set: &AnswerSet<TTuple>) -> AnswerSet<TTuple> {
    AnswerSet::from_tuples(set.mode(), coalesce_t_tuples(set.iter().cloned(), set.mode()))
}

/// The unique compact U^d form with the same unfolding.
pub fn coalesce_d(set: &AnswerSet<DTuple>) -> AnswerSet<DTuple> {
    AnswerSet::from_tuples(set.mode(), coalesce_d_tuples(set.iter().cloned(), set.mode()))
}

/// Drops every tuple whose region lies inside another single tuple's
/// region. Of several tuples with equal regions the first in canonical
/// order is kept.
pub fn remove_subsumed<R: AnswerTuple>(set: &AnswerSet<R>) -> AnswerSet<R> {
    let items: Vec<(&R, CTuple)> = set.iter().map(|r| (r, r.to_ctuple())).collect();
    let kept = items.iter().enumerate().filter(|(i, (_, ci))| {
        !items.iter().enumerate().any(|(j, (_, cj))| {
            j != *i && ci.is_subsumed_by(cj) && (j < *i || !cj.is_subsumed_by(ci))
        })
    });
    AnswerSet::from_tuples(set.mode(), kept.map(|(_, (r, _))| (*r).clone()))
}

/// Representations usable as cover shapes.
pub trait CoverShape: AnswerTuple {
    /// Whether the shape may span several time points.
    const TIME_RANGE: bool;
    /// Whether the shape may span several distances.
    const DIST_RANGE: bool;
    /// Whether the shape may be cropped by arrival-time bounds.
    const CROPPED: bool;

    /// The shape with times `[t1,t2]`, distances `[d1,d2]` and arrivals
    /// `[s1,s2]`.
    fn from_box(n1: &NodeId, n2: &NodeId, t: (i64, i64), d: (i64, i64), s: (i64, i64)) -> Self;

    /// A single shape with exactly the union of both regions, if the
    /// representation has an obvious candidate for it.
    fn hull(a: &Self, b: &Self) -> Option<Self>;
}

fn closed(a: i64, b: i64) -> Interval {
    Interval::closed(a, b).expect("lo <= hi")
}

impl CoverShape for TTuple {
    const TIME_RANGE: bool = true;
    const DIST_RANGE: bool = false;
    const CROPPED: bool = false;

    fn from_box(n1: &NodeId, n2: &NodeId, t: (i64, i64), d: (i64, i64), _: (i64, i64)) -> Self {
        TTuple { n1: n1.clone(), n2: n2.clone(), tau: closed(t.0, t.1), d: d.0.into() }
    }

    fn hull(a: &Self, b: &Self) -> Option<Self> {
        (a.d == b.d).then(|| TTuple { tau: a.tau.hull(&b.tau), ..a.clone() })
    }
}

impl CoverShape for DTuple {
    const TIME_RANGE: bool = false;
    const DIST_RANGE: bool = true;
    const CROPPED: bool = false;

    fn from_box(n1: &NodeId, n2: &NodeId, t: (i64, i64), d: (i64, i64), _: (i64, i64)) -> Self {
        DTuple { n1: n1.clone(), n2: n2.clone(), t: t.0.into(), delta: closed(d.0, d.1) }
    }

    fn hull(a: &Self, b: &Self) -> Option<Self> {
        (a.t == b.t).then(|| DTuple { delta: a.delta.hull(&b.delta), ..a.clone() })
    }
}

impl CoverShape for TDTuple {
    const TIME_RANGE: bool = true;
    const DIST_RANGE: bool = true;
    const CROPPED: bool = false;

    fn from_box(n1: &NodeId, n2: &NodeId, t: (i64, i64), d: (i64, i64), _: (i64, i64)) -> Self {
        TDTuple { n1: n1.clone(), n2: n2.clone(), tau: closed(t.0, t.1), delta: closed(d.0, d.1) }
    }

    fn hull(a: &Self, b: &Self) -> Option<Self> {
        Some(TDTuple { tau: a.tau.hull(&b.tau), delta: a.delta.hull(&b.delta), ..a.clone() })
    }
}

impl CoverShape for CTuple {
    const TIME_RANGE: bool = true;
    const DIST_RANGE: bool = true;
    const CROPPED: bool = true;

    fn from_box(n1: &NodeId, n2: &NodeId, t: (i64, i64), d: (i64, i64), s: (i64, i64)) -> Self {
        CTuple::from_window(n1.clone(), n2.clone(), closed(t.0, t.1), closed(d.0, d.1), &closed(s.0, s.1))
            .canonical()
            .expect("candidate shapes are nonempty")
    }

    fn hull(a: &Self, b: &Self) -> Option<Self> {
        let (ca, cb) = (a.canonical()?, b.canonical()?);
        let alpha = ca.window()?.hull(&cb.window()?);
        CTuple::from_window(a.n1.clone(), a.n2.clone(), ca.tau.hull(&cb.tau), ca.delta.hull(&cb.delta), &alpha).canonical()
    }
}

type Cell = (i64, i64);

/// The unfolded region of one node pair, with cells numbered for bitmasks.
struct Region {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl Region {
    fn new(cells: Vec<Cell>) -> Self {
        let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        Region { cells, index }
    }

    fn full(&self) -> u64 {
        if self.cells.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.cells.len()) - 1
        }
    }

    /// Every shape of kind `S` inside the region, keyed by cell mask.
    fn candidates<S: CoverShape>(&self, n1: &NodeId, n2: &NodeId) -> Vec<(u64, S)> {
        let ts: BTreeSet<i64> = self.cells.iter().map(|c| c.0).collect();
        let ds: BTreeSet<i64> = self.cells.iter().map(|c| c.1).collect();
        let runs = |vals: &BTreeSet<i64>, ranged: bool| -> Vec<(i64, i64)> {
            let v: Vec<i64> = vals.iter().copied().collect();
            let mut out = Vec::new();
            for i in 0..v.len() {
                out.push((v[i], v[i]));
                if !ranged {
                    continue;
                }
                for j in i + 1..v.len() {
                    if v[j] != v[j - 1] + 1 {
                        break;
                    }
                    out.push((v[i], v[j]));
                }
            }
            out
        };
        let mut seen: HashMap<u64, S> = HashMap::new();
        for &(t1, t2) in &runs(&ts, S::TIME_RANGE) {
            for &(d1, d2) in &runs(&ds, S::DIST_RANGE) {
                let (lo, hi) = (t1 + d1, t2 + d2);
                let width = (hi - lo + 1) as usize;
                let mut masks = vec![0u64; width];
                let mut bad = vec![false; width];
                for t in t1..=t2 {
                    for d in d1..=d2 {
                        let s = (t + d - lo) as usize;
                        match self.index.get(&(t, d)) {
                            Some(&i) => masks[s] |= 1 << i,
                            None => bad[s] = true,
                        }
                    }
                }
                if !S::CROPPED {
                    if !bad.iter().any(|&b| b) {
                        let mask = masks.iter().fold(0, |a, m| a | m);
                        seen.entry(mask).or_insert_with(|| S::from_box(n1, n2, (t1, t2), (d1, d2), (lo, hi)));
                    }
                    continue;
                }
                for s1 in 0..width {
                    let mut mask = 0;
                    for s2 in s1..width {
                        if bad[s2] {
                            break;
                        }
                        mask |= masks[s2];
                        if mask != 0 && masks[s1] != 0 && masks[s2] != 0 {
                            let window = (lo + s1 as i64, lo + s2 as i64);
                            seen.entry(mask).or_insert_with(|| S::from_box(n1, n2, (t1, t2), (d1, d2), window));
                        }
                    }
                }
            }
        }
        let mut out: Vec<(u64, S)> = seen.into_iter().collect();
        out.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then_with(|| a.1.cmp(&b.1)));
        out
    }
}

/// Keeps masks not strictly contained in another.
fn maximal(cands: &[(u64, usize)]) -> Vec<(u64, usize)> {
    cands
        .iter()
        .filter(|(m, _)| !cands.iter().any(|(o, _)| o != m && o & m == *m))
        .copied()
        .collect()
}

struct Search<'a> {
    full: u64,
    cands: &'a [(u64, usize)],
    disjoint: bool,
    largest: u32,
    best: usize,
    chosen: Vec<usize>,
    /// `Some` when every minimum cover is wanted.
    all: Option<Vec<Vec<usize>>>,
    best_single: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, covered: u64) {
        if covered == self.full {
            let k = self.chosen.len();
            if k < self.best {
                self.best = k;
                self.best_single = self.chosen.clone();
                if let Some(all) = &mut self.all {
                    all.clear();
                }
            }
            if let Some(all) = &mut self.all {
                if k == self.best {
                    let mut cover = self.chosen.clone();
                    cover.sort_unstable();
                    all.push(cover);
                }
            }
            return;
        }
        let missing = (self.full & !covered).count_ones();
        let bound = self.chosen.len() + missing.div_ceil(self.largest) as usize;
        let exploring_ties = self.all.is_some();
        if bound > self.best || (!exploring_ties && bound >= self.best) {
            return;
        }
        let cell = (self.full & !covered).trailing_zeros();
        for idx in 0..self.cands.len() {
            let (mask, _) = self.cands[idx];
            if mask & (1 << cell) == 0 || (self.disjoint && mask & covered != 0) {
                continue;
            }
            self.chosen.push(idx);
            self.run(covered | mask);
            self.chosen.pop();
        }
    }
}

fn regions<R: AnswerTuple>(set: &AnswerSet<R>) -> Result<BTreeMap<(NodeId, NodeId), Region>, CompactError> {
    if set.mode() != TimeMode::Discrete {
        return Err(CompactError::Dense);
    }
    let mut points = BTreeSet::new();
    for r in set {
        r.unfold_into(&mut points);
    }
    let mut by_pair: BTreeMap<(NodeId, NodeId), Vec<Cell>> = BTreeMap::new();
    for PointTuple { n1, n2, t, d } in points {
        let int = |x: &TimePoint| x.to_i64().ok_or_else(|| CompactError::Overflow(x.to_string()));
        by_pair.entry((n1, n2)).or_default().push((int(&t)?, int(&d)?));
    }
    let mut out = BTreeMap::new();
    for ((n1, n2), cells) in by_pair {
        if cells.len() > MAX_EXACT_CELLS {
            return Err(CompactError::TooLarge { n1: n1.to_string(), n2: n2.to_string(), cells: cells.len() });
        }
        out.insert((n1, n2), Region::new(cells));
    }
    Ok(out)
}

fn cover_pair<S: CoverShape>(
    n1: &NodeId,
    n2: &NodeId,
    region: &Region,
    mode: CoverMode,
    enumerate: bool,
) -> Vec<Vec<S>> {
    let shapes: Vec<(u64, S)> = region.candidates(n1, n2);
    let indexed: Vec<(u64, usize)> = shapes.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();
    let cands = if mode == CoverMode::Overlapping && !enumerate { maximal(&indexed) } else { indexed };
    let largest = cands.iter().map(|(m, _)| m.count_ones()).max().unwrap_or(1);
    let mut search = Search {
        full: region.full(),
        cands: &cands,
        disjoint: mode == CoverMode::Disjoint,
        largest,
        best: region.cells.len() + 1,
        chosen: Vec::new(),
        all: enumerate.then(Vec::new),
        best_single: Vec::new(),
    };
    search.run(0);
    let to_shapes = |cover: &[usize]| cover.iter().map(|&i| shapes[cands[i].1].1.clone()).collect::<Vec<S>>();
    match search.all {
        Some(all) => {
            let distinct: BTreeSet<Vec<usize>> = all.into_iter().collect();
            distinct.iter().map(|c| to_shapes(c)).collect()
        }
        None => vec![to_shapes(&search.best_single)],
    }
}

/// A minimum-cardinality set of shapes of the input's representation whose
/// unfoldings union to the input's unfolding. Exponential; meant for tiny
/// instances (at most [`MAX_EXACT_CELLS`] cells per node pair).
pub fn minimize_exact<S: CoverShape>(set: &AnswerSet<S>, mode: CoverMode) -> Result<AnswerSet<S>, CompactError> {
    let mut out = AnswerSet::new(set.mode());
    for ((n1, n2), region) in regions(set)? {
        for cover in cover_pair::<S>(&n1, &n2, &region, mode, false) {
            out.extend(cover);
        }
    }
    Ok(out)
}

/// Every distinct minimum cover of the input's unfolding.
pub fn enumerate_min_covers<S: CoverShape>(set: &AnswerSet<S>, mode: CoverMode) -> Result<Vec<AnswerSet<S>>, CompactError> {
    let mut combos: Vec<Vec<S>> = vec![Vec::new()];
    for ((n1, n2), region) in regions(set)? {
        let covers = cover_pair::<S>(&n1, &n2, &region, mode, true);
        combos = combos
            .iter()
            .flat_map(|prefix| {
                covers.iter().map(move |c| prefix.iter().chain(c.iter()).cloned().collect::<Vec<S>>())
            })
            .collect();
    }
    Ok(combos.into_iter().map(|c| AnswerSet::from_tuples(set.mode(), c)).collect())
}

/// Number of integer points in a region.
fn cell_count(c: &CTuple) -> u128 {
    c.tau
        .integer_points()
        .map(|t| match c.delta_at(&t) {
            Ok(Some(slice)) => slice.integer_points().count() as u128,
            _ => 0,
        })
        .sum()
}

fn intersection(a: &CTuple, b: &CTuple) -> Option<CTuple> {
    let tau = a.tau.intersect(&b.tau)?;
    let delta = a.delta.intersect(&b.delta)?;
    let alpha = a.window()?.intersect(&b.window()?)?;
    CTuple::from_window(a.n1.clone(), a.n2.clone(), tau, delta, &alpha).canonical()
}

/// Whether `merged` denotes exactly the union of `a` and `b`.
fn exact_union(a: &CTuple, b: &CTuple, merged: &CTuple, mode: TimeMode) -> bool {
    if !(a.is_subsumed_by(merged) && b.is_subsumed_by(merged)) {
        return false;
    }
    match mode {
        TimeMode::Discrete => {
            let overlap = intersection(a, b).map_or(0, |c| cell_count(&c));
            cell_count(merged) == cell_count(a) + cell_count(b) - overlap
        }
        TimeMode::Dense => {
            // only side-by-side rectangles sharing a full edge
            if !(a.is_rectangle() && b.is_rectangle() && merged.is_rectangle()) {
                return false;
            }
            (a.tau == b.tau && a.delta.unites_with(&b.delta, mode))
                || (a.delta == b.delta && a.tau.unites_with(&b.tau, mode))
        }
    }
}

/// Repeatedly merges pairs of tuples whose hull denotes exactly their union
/// and drops subsumed tuples, until neither applies. Never increases the
/// size and never changes the unfolding; deterministic, not optimal.
pub fn greedy_reduce<S: CoverShape>(set: &AnswerSet<S>) -> AnswerSet<S> {
    let mode = set.mode();
    let mut current = remove_subsumed(set);
    'outer: loop {
        let items: Vec<S> = current.iter().cloned().collect();
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                if items[i].n1() != items[j].n1() || items[i].n2() != items[j].n2() {
                    continue;
                }
                let Some(merged) = S::hull(&items[i], &items[j]) else { continue };
                if exact_union(&items[i].to_ctuple(), &items[j].to_ctuple(), &merged.to_ctuple(), mode) {
                    let rest = items.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| x.clone());
                    current = remove_subsumed(&AnswerSet::from_tuples(mode, rest.chain([merged])));
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::unfold;

    fn n(s: &str) -> NodeId {
        NodeId::new(s)
    }

    fn td(tau: (i64, i64), delta: (i64, i64)) -> TDTuple {
        TDTuple { n1: n("a"), n2: n("b"), tau: closed(tau.0, tau.1), delta: closed(delta.0, delta.1) }
    }

    fn tt(tau: (i64, i64), d: i64) -> TTuple {
        TTuple { n1: n("a"), n2: n("b"), tau: closed(tau.0, tau.1), d: d.into() }
    }

    const D: TimeMode = TimeMode::Discrete;

    #[test]
    fn coalesce_t_merges_adjacent_runs() {
        let set = AnswerSet::from_tuples(D, [tt((0, 1), 2), tt((2, 4), 2)]);
        assert_eq!(coalesce_t(&set), AnswerSet::from_tuples(D, [tt((0, 4), 2)]));
        let single = AnswerSet::from_tuples(D, [tt((0, 1), 2)]);
        assert_eq!(coalesce_t(&single), single);
    }

    #[test]
    fn coalesce_d_merges_overlaps() {
        let d = |lo, hi| DTuple { n1: n("a"), n2: n("b"), t: 0.into(), delta: closed(lo, hi) };
        let set = AnswerSet::from_tuples(D, [d(1, 2), d(2, 5)]);
        assert_eq!(coalesce_d(&set), AnswerSet::from_tuples(D, [d(1, 5)]));
        assert!(coalesce_d(&AnswerSet::new(D)).is_empty());
    }

    #[test]
    fn subsumption_examples() {
        let set = AnswerSet::from_tuples(D, [td((0, 2), (0, 2)), td((0, 1), (0, 1))]);
        assert_eq!(remove_subsumed(&set), AnswerSet::from_tuples(D, [td((0, 2), (0, 2))]));
        let l = AnswerSet::from_tuples(D, [td((0, 1), (0, 2)), td((0, 2), (0, 1))]);
        assert_eq!(remove_subsumed(&l), l);
    }

    #[test]
    fn l_shape_covers() {
        let l = AnswerSet::from_tuples(D, [td((0, 1), (0, 2)), td((0, 2), (0, 1))]);
        assert_eq!(minimize_exact(&l, CoverMode::Overlapping).unwrap().len(), 2);
        assert_eq!(minimize_exact(&l, CoverMode::Disjoint).unwrap().len(), 2);
        let covers = enumerate_min_covers(&l, CoverMode::Overlapping).unwrap();
        // the two arms, each paired with the other arm or with one of its sub-rectangles
        assert_eq!(covers.len(), 5);
        for c in &covers {
            assert_eq!(unfold(c).unwrap(), unfold(&l).unwrap());
        }
    }

    #[test]
    fn size_guard() {
        let big = AnswerSet::from_tuples(D, [td((0, 9), (0, 9))]);
        assert!(matches!(minimize_exact(&big, CoverMode::Overlapping), Err(CompactError::TooLarge { cells: 100, .. })));
    }

    #[test]
    fn greedy_examples() {
        let gap = AnswerSet::from_tuples(D, [td((0, 1), (0, 0)), td((2, 3), (0, 0))]);
        // adjacent over the integers, so they merge
        assert_eq!(greedy_reduce(&gap).len(), 1);
        let apart = AnswerSet::from_tuples(D, [td((0, 1), (0, 0)), td((3, 4), (0, 0))]);
        assert_eq!(greedy_reduce(&apart), apart);
        let dense_gap = AnswerSet::from_tuples(TimeMode::Dense, [td((0, 1), (0, 0)), td((2, 3), (0, 0))]);
        assert_eq!(greedy_reduce(&dense_gap), dense_gap);
        let dense_touch = AnswerSet::from_tuples(TimeMode::Dense, [td((0, 1), (0, 0)), td((1, 3), (0, 0))]);
        assert_eq!(greedy_reduce(&dense_touch), AnswerSet::from_tuples(TimeMode::Dense, [td((0, 3), (0, 0))]));
        let l = AnswerSet::from_tuples(D, [td((0, 1), (0, 2)), td((0, 2), (0, 1))]);
        assert_eq!(greedy_reduce(&l), l);
    }
}
