//! Answer tuples: plain points and the four compact forms, their unfoldings
//! and canonical text rendering.
//!
//! A cropped rectangle [`CTuple`] `⟨n1,n2,τ,δ,b,e⟩` denotes the points
//! `(t,d)` with `t ∈ τ`, `d ∈ δ_t`, where
//! `δ_t = [b_δ + max(0, b − t), e_δ − max(0, t − e)]`. Equivalently, `t ∈ τ`,
//! `d ∈ δ` and the arrival time `t + d` lies in the window
//! `α = [b + b_δ, e + e_δ]`. The window's ends carry their own delimiters so
//! that dense regions with open crops are representable.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::NodeId;
use crate::interval::{Delim, Interval, TimeMode, TimePoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("unfolding requires discrete time: a dense answer set denotes infinitely many points")]
    DenseUnfold,
    #[error("time point {t} is outside {tau}")]
    OutsideTau { t: String, tau: String },
}

/// Which representation an answer set uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReprKind {
    Point,
    T,
    D,
    TD,
    C,
}

impl ReprKind {
    pub const ALL: [ReprKind; 5] = [ReprKind::Point, ReprKind::T, ReprKind::D, ReprKind::TD, ReprKind::C];

    pub fn name(self) -> &'static str {
        match self {
            ReprKind::Point => "point",
            ReprKind::T => "t",
            ReprKind::D => "d",
            ReprKind::TD => "td",
            ReprKind::C => "c",
        }
    }
}

impl fmt::Display for ReprKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReprKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReprKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown representation `{s}` (expected point, t, d, td or c)"))
    }
}

/// `⟨n1, n2, t, d⟩`: from `n1` at time `t` to `n2` at time `t + d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointTuple {
    pub n1: NodeId,
    pub n2: NodeId,
    pub t: TimePoint,
    pub d: TimePoint,
}

/// `⟨n1, n2, τ, d⟩`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TTuple {
    pub n1: NodeId,
    pub n2: NodeId,
    pub tau: Interval,
    pub d: TimePoint,
}

/// `⟨n1, n2, t, δ⟩`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DTuple {
    pub n1: NodeId,
    pub n2: NodeId,
    pub t: TimePoint,
    pub delta: Interval,
}

/// `⟨n1, n2, τ, δ⟩`: the rectangle `τ × δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TDTuple {
    pub n1: NodeId,
    pub n2: NodeId,
    pub tau: Interval,
    pub delta: Interval,
}

/// `⟨n1, n2, τ, δ, b, e⟩`: a rectangle cropped by two slope −1 lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CTuple {
    pub n1: NodeId,
    pub n2: NodeId,
    pub tau: Interval,
    pub delta: Interval,
    pub b: TimePoint,
    pub e: TimePoint,
    /// Delimiter of the arrival window's lower end `b + b_δ`.
    pub b_delim: Delim,
    /// Delimiter of the arrival window's upper end `e + e_δ`.
    pub e_delim: Delim,
}

impl CTuple {
    /// Crops inherit the delimiters of `delta`.
    pub fn new(n1: NodeId, n2: NodeId, tau: Interval, delta: Interval, b: TimePoint, e: TimePoint) -> CTuple {
        let (b_delim, e_delim) = (delta.lo_delim(), delta.hi_delim());
        CTuple { n1, n2, tau, delta, b, e, b_delim, e_delim }
    }

    /// The rectangle `τ × δ` with crops that cut nothing.
    pub fn uncropped(n1: NodeId, n2: NodeId, tau: Interval, delta: Interval) -> CTuple {
        let (b, e) = (tau.lo().clone(), tau.hi().clone());
        let (b_delim, e_delim) = (
            tau.lo_delim().both(delta.lo_delim()),
            tau.hi_delim().both(delta.hi_delim()),
        );
        CTuple { n1, n2, tau, delta, b, e, b_delim, e_delim }
    }

    /// Builds from a time range, distance range and arrival window.
    pub fn from_window(n1: NodeId, n2: NodeId, tau: Interval, delta: Interval, alpha: &Interval) -> CTuple {
        CTuple {
            b: alpha.lo() - delta.lo(),
            e: alpha.hi() - delta.hi(),
            b_delim: alpha.lo_delim(),
            e_delim: alpha.hi_delim(),
            n1,
            n2,
            tau,
            delta,
        }
    }

    /// The arrival window `α`, or `None` if it is empty.
    pub fn window(&self) -> Option<Interval> {
        Interval::new(self.b_delim, &self.b + self.delta.lo(), &self.e + self.delta.hi(), self.e_delim).ok()
    }

    /// Whether every time point of τ has a nonempty slice.
    pub fn is_valid(&self) -> bool {
        match self.window() {
            Some(alpha) => self.tau.is_subset(&alpha.mdiff(&self.delta)),
            None => false,
        }
    }

    /// The slice `δ_t`, or `None` if it is empty.
    pub fn delta_at(&self, t: &TimePoint) -> Result<Option<Interval>, ReprError> {
        if !self.tau.contains(t) {
            return Err(ReprError::OutsideTau { t: t.to_string(), tau: self.tau.to_string() });
        }
        let crop_lo = &(&self.b + self.delta.lo()) - t;
        let crop_hi = &(&self.e + self.delta.hi()) - t;
        let (lo, lo_delim) = tighter_lo((self.delta.lo().clone(), self.delta.lo_delim()), (crop_lo, self.b_delim));
        let (hi, hi_delim) = tighter_hi((self.delta.hi().clone(), self.delta.hi_delim()), (crop_hi, self.e_delim));
        Ok(Interval::new(lo_delim, lo, hi, hi_delim).ok())
    }

    /// Whether `(t, d)` lies in the region.
    pub fn contains(&self, t: &TimePoint, d: &TimePoint) -> bool {
        self.tau.contains(t)
            && self.delta.contains(d)
            && self.window().is_some_and(|alpha| alpha.contains(&(t + d)))
    }

    /// The unique representation of the same region whose τ, δ and window
    /// are the exact projections of the region; `None` if the region is
    /// empty. Two tuples denote the same region iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> Option<CTuple> {
        let alpha = self.window()?;
        let tau = self.tau.intersect(&alpha.mdiff(&self.delta))?;
        let delta = self.delta.intersect(&alpha.mdiff(&self.tau))?;
        let alpha = alpha.intersect(&self.tau.msum(&self.delta))?;
        Some(CTuple::from_window(self.n1.clone(), self.n2.clone(), tau, delta, &alpha))
    }

    /// Whether this tuple's region is contained in `other`'s.
    pub fn is_subsumed_by(&self, other: &CTuple) -> bool {
        if self.n1 != other.n1 || self.n2 != other.n2 {
            return false;
        }
        let (Some(mine), Some(alpha_other)) = (self.canonical(), other.window()) else {
            return self.canonical().is_none();
        };
        let alpha = mine.window().expect("canonical tuples have a window");
        mine.tau.is_subset(&other.tau) && mine.delta.is_subset(&other.delta) && alpha.is_subset(&alpha_other)
    }

    /// Whether the crops cut nothing, i.e. the region is the full rectangle.
    pub fn is_rectangle(&self) -> bool {
        match (self.canonical(), self.window()) {
            (Some(c), Some(alpha)) => c.tau == self.tau && c.delta == self.delta && self.tau.msum(&self.delta).is_subset(&alpha),
            _ => false,
        }
    }
}

fn tighter_lo(a: (TimePoint, Delim), b: (TimePoint, Delim)) -> (TimePoint, Delim) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => (a.0, a.1.both(b.1)),
    }
}

fn tighter_hi(a: (TimePoint, Delim), b: (TimePoint, Delim)) -> (TimePoint, Delim) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => (a.0, a.1.both(b.1)),
    }
}

/// Free-function form of [`CTuple::delta_at`].
pub fn delta_at(c: &CTuple, t: &TimePoint) -> Result<Option<Interval>, ReprError> {
    c.delta_at(t)
}

/// Free-function form of [`CTuple::is_valid`].
pub fn ctuple_valid(c: &CTuple) -> bool {
    c.is_valid()
}

/// Behaviour shared by every tuple representation.
pub trait AnswerTuple: Clone + Ord + fmt::Display + fmt::Debug {
    const KIND: ReprKind;

    fn n1(&self) -> &NodeId;
    fn n2(&self) -> &NodeId;

    /// The same point set as a cropped rectangle.
    fn to_ctuple(&self) -> CTuple;

    /// Adds every integer point of the unfolding to `out`.
    fn unfold_into(&self, out: &mut BTreeSet<PointTuple>) {
        let c = self.to_ctuple();
        for t in c.tau.integer_points() {
            if let Ok(Some(slice)) = c.delta_at(&t) {
                for d in slice.integer_points() {
                    out.insert(PointTuple { n1: c.n1.clone(), n2: c.n2.clone(), t: t.clone(), d });
                }
            }
        }
    }
}

impl AnswerTuple for PointTuple {
    const KIND: ReprKind = ReprKind::Point;

    fn n1(&self) -> &NodeId {
        &self.n1
    }
    fn n2(&self) -> &NodeId {
        &self.n2
    }
    fn to_ctuple(&self) -> CTuple {
        CTuple::uncropped(self.n1.clone(), self.n2.clone(), Interval::point(self.t.clone()), Interval::point(self.d.clone()))
    }
    fn unfold_into(&self, out: &mut BTreeSet<PointTuple>) {
        out.insert(self.clone());
    }
}

impl AnswerTuple for TTuple {
    const KIND: ReprKind = ReprKind::T;

    fn n1(&self) -> &NodeId {
        &self.n1
    }
    fn n2(&self) -> &NodeId {
        &self.n2
    }
    fn to_ctuple(&self) -> CTuple {
        CTuple::uncropped(self.n1.clone(), self.n2.clone(), self.tau.clone(), Interval::point(self.d.clone()))
    }
    fn unfold_into(&self, out: &mut BTreeSet<PointTuple>) {
        for t in self.tau.integer_points() {
            out.insert(PointTuple { n1: self.n1.clone(), n2: self.n2.clone(), t, d: self.d.clone() });
        }
    }
}

impl AnswerTuple for DTuple {
    const KIND: ReprKind = ReprKind::D;

    fn n1(&self) -> &NodeId {
        &self.n1
    }
    fn n2(&self) -> &NodeId {
        &self.n2
    }
    fn to_ctuple(&self) -> CTuple {
        CTuple::uncropped(self.n1.clone(), self.n2.clone(), Interval::point(self.t.clone()), self.delta.clone())
    }
    fn unfold_into(&self, out: &mut BTreeSet<PointTuple>) {
        for d in self.delta.integer_points() {
            out.insert(PointTuple { n1: self.n1.clone(), n2: self.n2.clone(), t: self.t.clone(), d });
        }
    }
}

impl AnswerTuple for TDTuple {
    const KIND: ReprKind = ReprKind::TD;

    fn n1(&self) -> &NodeId {
        &self.n1
    }
    fn n2(&self) -> &NodeId {
        &self.n2
    }
    fn to_ctuple(&self) -> CTuple {
        CTuple::uncropped(self.n1.clone(), self.n2.clone(), self.tau.clone(), self.delta.clone())
    }
}

impl AnswerTuple for CTuple {
    const KIND: ReprKind = ReprKind::C;

    fn n1(&self) -> &NodeId {
        &self.n1
    }
    fn n2(&self) -> &NodeId {
        &self.n2
    }
    fn to_ctuple(&self) -> CTuple {
        self.clone()
    }
}

impl fmt::Display for PointTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p {} {} {} {}", self.n1, self.n2, self.t, self.d)
    }
}

impl fmt::Display for TTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t {} {} {} {}", self.n1, self.n2, self.tau, self.d)
    }
}

impl fmt::Display for DTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d {} {} {} {}", self.n1, self.n2, self.t, self.delta)
    }
}

impl fmt::Display for TDTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "td {} {} {} {}", self.n1, self.n2, self.tau, self.delta)
    }
}

/// `c ICDT ISWC [100,102] [3,5] b=101 e=101`; an open crop is written
/// `b=(101` or `e=101)`.
impl fmt::Display for CTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c {} {} {} {} b=", self.n1, self.n2, self.tau, self.delta)?;
        if !self.b_delim.is_closed() {
            f.write_str("(")?;
        }
        write!(f, "{} e={}", self.b, self.e)?;
        if !self.e_delim.is_closed() {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A deduplicated, canonically ordered set of tuples of one representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerSet<R> {
    mode: TimeMode,
    tuples: BTreeSet<R>,
}

impl<R: AnswerTuple> AnswerSet<R> {
    pub fn new(mode: TimeMode) -> Self {
        AnswerSet { mode, tuples: BTreeSet::new() }
    }

    pub fn from_tuples(mode: TimeMode, tuples: impl IntoIterator<Item = R>) -> Self {
        AnswerSet { mode, tuples: tuples.into_iter().collect() }
    }

    pub fn kind(&self) -> ReprKind {
        R::KIND
    }

    pub fn mode(&self) -> TimeMode {
        self.mode
    }

    /// Returns whether the tuple was new.
    pub fn insert(&mut self, tuple: R) -> bool {
        self.tuples.insert(tuple)
    }

    pub fn contains(&self, tuple: &R) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, R> {
        self.tuples.iter()
    }

    pub fn tuples(&self) -> &BTreeSet<R> {
        &self.tuples
    }

    pub fn into_tuples(self) -> BTreeSet<R> {
        self.tuples
    }

    /// One tuple per line, each followed by `\n`.
    pub fn render(&self) -> String {
        self.tuples.iter().map(|t| format!("{t}\n")).collect()
    }
}

impl<R: AnswerTuple> Extend<R> for AnswerSet<R> {
    fn extend<I: IntoIterator<Item = R>>(&mut self, iter: I) {
        self.tuples.extend(iter);
    }
}

impl<'a, R> IntoIterator for &'a AnswerSet<R> {
    type Item = &'a R;
    type IntoIter = std::collections::btree_set::Iter<'a, R>;

    fn into_iter(self) -> Self::IntoIter {
        self.tuples.iter()
    }
}

/// The union of per-tuple unfoldings. Discrete mode only.
pub fn unfold<R: AnswerTuple>(set: &AnswerSet<R>) -> Result<BTreeSet<PointTuple>, ReprError> {
    if !set.mode().is_discrete() {
        return Err(ReprError::DenseUnfold);
    }
    let mut out = BTreeSet::new();
    for tuple in set {
        tuple.unfold_into(&mut out);
    }
    Ok(out)
}

pub fn unfold_t(set: &AnswerSet<TTuple>) -> Result<BTreeSet<PointTuple>, ReprError> {
    unfold(set)
}

pub fn unfold_d(set: &AnswerSet<DTuple>) -> Result<BTreeSet<PointTuple>, ReprError> {
    unfold(set)
}

pub fn unfold_td(set: &AnswerSet<TDTuple>) -> Result<BTreeSet<PointTuple>, ReprError> {
    unfold(set)
}

pub fn unfold_c(set: &AnswerSet<CTuple>) -> Result<BTreeSet<PointTuple>, ReprError> {
    unfold(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NodeId {
        NodeId::new(s)
    }

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    fn tp(s: &str) -> TimePoint {
        s.parse().unwrap()
    }

    fn ct(tau: &str, delta: &str, b: i64, e: i64) -> CTuple {
        CTuple::new(n("x"), n("y"), iv(tau), iv(delta), b.into(), e.into())
    }

    #[test]
    fn slices_of_the_cropped_square() {
        let c = ct("[0,2]", "[0,2]", 1, 1);
        assert_eq!(c.delta_at(&tp("0")).unwrap(), Some(iv("[1,2]")));
        assert_eq!(c.delta_at(&tp("1")).unwrap(), Some(iv("[0,2]")));
        assert_eq!(c.delta_at(&tp("2")).unwrap(), Some(iv("[0,1]")));
        assert!(c.delta_at(&tp("3")).is_err());
        assert_eq!(c.delta_at(&tp("1/2")).unwrap(), Some(iv("[1/2,2]")));
    }

    #[test]
    fn slices_of_the_q3_tuple() {
        let c = ct("[100,102]", "[3,5]", 101, 101);
        assert_eq!(c.delta_at(&tp("100")).unwrap(), Some(iv("[4,5]")));
        assert_eq!(c.delta_at(&tp("101")).unwrap(), Some(iv("[3,5]")));
        assert_eq!(c.delta_at(&tp("102")).unwrap(), Some(iv("[3,4]")));
        assert!(c.is_valid());
        assert_eq!(c.canonical(), Some(c.clone()));
    }

    #[test]
    fn uncropped_slices_are_the_full_delta() {
        let c = ct("[0,4]", "[1,3]", -2, 9);
        for t in 0..=4 {
            assert_eq!(c.delta_at(&t.into()).unwrap(), Some(iv("[1,3]")));
        }
        assert!(c.is_valid());
        assert!(c.is_rectangle());
    }

    #[test]
    fn validity_examples() {
        assert!(!ct("[0,10]", "[0,1]", 10, 0).is_valid());
        assert!(ct("[0,2]", "[0,2]", 1, 1).is_valid());
        // slice at t=0 is [3,2]
        assert!(!ct("[0,2]", "[0,2]", 3, 3).is_valid());
    }

    #[test]
    fn open_crops_render_and_slice() {
        let mut c = CTuple::new(n("a"), n("b"), iv("[0,2]"), iv("[0,2]"), tp("1"), tp("1"));
        c.b_delim = Delim::Open;
        assert_eq!(c.to_string(), "c a b [0,2] [0,2] b=(1 e=1");
        assert_eq!(c.delta_at(&tp("0")).unwrap(), Some(iv("(1,2]")));
        assert_eq!(c.delta_at(&tp("1")).unwrap(), Some(iv("(0,2]")));
        assert_eq!(c.delta_at(&tp("2")).unwrap(), Some(iv("[0,1]")));
    }

    #[test]
    fn canonical_form_tightens_redundant_bounds() {
        // t + d ≤ 3 cuts δ=[0,10] down to [0,3]
        let c = ct("[0,2]", "[0,10]", -10, -7);
        let canon = c.canonical().unwrap();
        assert_eq!(canon.tau, iv("[0,2]"));
        assert_eq!(canon.delta, iv("[0,3]"));
        assert_eq!(canon.window(), Some(iv("[0,3]")));
        assert!(c.is_subsumed_by(&canon) && canon.is_subsumed_by(&c));
    }

    #[test]
    fn unfold_examples() {
        let mode = TimeMode::Discrete;
        let td = AnswerSet::from_tuples(mode, [TDTuple { n1: n("a"), n2: n("b"), tau: iv("[0,1]"), delta: iv("[0,0]") }]);
        let pts: Vec<String> = unfold_td(&td).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(pts, ["p a b 0 0", "p a b 1 0"]);

        let q3 = [("[100,101]", 5), ("[100,102]", 4), ("[101,102]", 3)]
            .map(|(tau, d)| TTuple { n1: n("ICDT"), n2: n("ISWC"), tau: iv(tau), d: d.into() });
        let from_t = unfold_t(&AnswerSet::from_tuples(mode, q3)).unwrap();
        let c = CTuple::new(n("ICDT"), n("ISWC"), iv("[100,102]"), iv("[3,5]"), 101.into(), 101.into());
        let from_c = unfold_c(&AnswerSet::from_tuples(mode, [c])).unwrap();
        assert_eq!(from_t.len(), 7);
        assert_eq!(from_t, from_c);

        let dense = AnswerSet::<TTuple>::new(TimeMode::Dense);
        assert_eq!(unfold(&dense), Err(ReprError::DenseUnfold));
    }

    #[test]
    fn repr_kind_names_round_trip() {
        for k in ReprKind::ALL {
            assert_eq!(k.name().parse::<ReprKind>(), Ok(k));
        }
        assert!("x".parse::<ReprKind>().is_err());
    }
}
