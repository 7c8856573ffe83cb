//! Exact time points and delimited intervals over ℤ or ℚ.
//!
//! All values are immutable; every operation returns a fresh value. Intervals
//! are always nonempty and bounded. An empty intersection is reported as
//! `None`, never as an `Interval`.

mod point;
mod set;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use point::{TimeMode, TimePoint};
pub use set::{coalesce, complement, IntervalSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("empty interval {0}")]
    Empty(String),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("malformed interval `{0}`")]
    Syntax(String),
    #[error("value {0} is not an integer but the time domain is discrete")]
    ModeMismatch(String),
    #[error("interval {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
}

/// Interval delimiter. `Closed` includes the endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Delim {
    Closed,
    Open,
}

impl Delim {
    pub fn is_closed(self) -> bool {
        self == Delim::Closed
    }

    /// Closed only if both are closed.
    pub fn both(self, other: Delim) -> Delim {
        if self.is_closed() && other.is_closed() {
            Delim::Closed
        } else {
            Delim::Open
        }
    }
}

/// A nonempty bounded interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo_delim: Delim,
    lo: TimePoint,
    hi: TimePoint,
    hi_delim: Delim,
}

impl Interval {
    pub fn new(lo_delim: Delim, lo: TimePoint, hi: TimePoint, hi_delim: Delim) -> Result<Self, IntervalError> {
        Self::try_new(lo_delim, lo.clone(), hi.clone(), hi_delim).ok_or_else(|| {
            IntervalError::Empty(format!(
                "{}{lo},{hi}{}",
                if lo_delim.is_closed() { '[' } else { '(' },
                if hi_delim.is_closed() { ']' } else { ')' }
            ))
        })
    }

    pub(crate) fn try_new(lo_delim: Delim, lo: TimePoint, hi: TimePoint, hi_delim: Delim) -> Option<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Some(Interval { lo_delim, lo, hi, hi_delim }),
            Ordering::Equal if lo_delim.is_closed() && hi_delim.is_closed() => {
                Some(Interval { lo_delim, lo, hi, hi_delim })
            }
            _ => None,
        }
    }

    /// `[lo, hi]`
    pub fn closed(lo: impl Into<TimePoint>, hi: impl Into<TimePoint>) -> Result<Self, IntervalError> {
        Self::new(Delim::Closed, lo.into(), hi.into(), Delim::Closed)
    }

    /// `[t, t]`
    pub fn point(t: impl Into<TimePoint>) -> Self {
        let t = t.into();
        Interval { lo_delim: Delim::Closed, lo: t.clone(), hi: t, hi_delim: Delim::Closed }
    }

    pub fn lo(&self) -> &TimePoint {
        &self.lo
    }

    pub fn hi(&self) -> &TimePoint {
        &self.hi
    }

    pub fn lo_delim(&self) -> Delim {
        self.lo_delim
    }

    pub fn hi_delim(&self) -> Delim {
        self.hi_delim
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_closed(&self) -> bool {
        self.lo_delim.is_closed() && self.hi_delim.is_closed()
    }

    /// Length `hi - lo`, ignoring delimiters.
    pub fn length(&self) -> TimePoint {
        &self.hi - &self.lo
    }

    /// Brings the interval into the canonical form of `mode`.
    ///
    /// Discrete intervals become closed-closed over integers, so `(1,4)` is
    /// `[2,3]`; `(1,2)` has no integer and is rejected.
    pub fn normalize(&self, mode: TimeMode) -> Result<Interval, IntervalError> {
        match mode {
            TimeMode::Dense => Ok(self.clone()),
            TimeMode::Discrete => {
                mode.check_point(&self.lo)?;
                mode.check_point(&self.hi)?;
                let one = TimePoint::from(1);
                let lo = if self.lo_delim.is_closed() { self.lo.clone() } else { &self.lo + &one };
                let hi = if self.hi_delim.is_closed() { self.hi.clone() } else { &self.hi - &one };
                Interval::new(Delim::Closed, lo, hi, Delim::Closed).map_err(|_| IntervalError::Empty(self.to_string()))
            }
        }
    }

    pub fn contains(&self, t: &TimePoint) -> bool {
        let above = match self.lo_delim {
            Delim::Closed => *t >= self.lo,
            Delim::Open => *t > self.lo,
        };
        let below = match self.hi_delim {
            Delim::Closed => *t <= self.hi,
            Delim::Open => *t < self.hi,
        };
        above && below
    }

    /// `self ⊆ other`
    pub fn is_subset(&self, other: &Interval) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Greater => true,
            Ordering::Equal => other.lo_delim.is_closed() || !self.lo_delim.is_closed(),
            Ordering::Less => false,
        };
        let hi_ok = match self.hi.cmp(&other.hi) {
            Ordering::Less => true,
            Ordering::Equal => other.hi_delim.is_closed() || !self.hi_delim.is_closed(),
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    /// `{t + d | t ∈ self}`
    pub fn shift(&self, d: &TimePoint) -> Interval {
        Interval { lo_delim: self.lo_delim, lo: &self.lo + d, hi: &self.hi + d, hi_delim: self.hi_delim }
    }

    /// Minkowski sum `{a + b | a ∈ self, b ∈ other}`.
    pub fn msum(&self, other: &Interval) -> Interval {
        Interval {
            lo_delim: self.lo_delim.both(other.lo_delim),
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            hi_delim: self.hi_delim.both(other.hi_delim),
        }
    }

    /// Minkowski difference `{a - b | a ∈ self, b ∈ other}`.
    ///
    /// Equivalently, `{t | (t + other) ∩ self ≠ ∅}`.
    pub fn mdiff(&self, other: &Interval) -> Interval {
        Interval {
            lo_delim: self.lo_delim.both(other.hi_delim),
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            hi_delim: self.hi_delim.both(other.lo_delim),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_delim) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_delim),
            Ordering::Less => (other.lo.clone(), other.lo_delim),
            Ordering::Equal => (self.lo.clone(), self.lo_delim.both(other.lo_delim)),
        };
        let (hi, hi_delim) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_delim),
            Ordering::Greater => (other.hi.clone(), other.hi_delim),
            Ordering::Equal => (self.hi.clone(), self.hi_delim.both(other.hi_delim)),
        };
        Interval::try_new(lo_delim, lo, hi, hi_delim)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        let (lo, lo_delim) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (self.lo.clone(), self.lo_delim),
            Ordering::Greater => (other.lo.clone(), other.lo_delim),
            Ordering::Equal => (self.lo.clone(), if self.lo_delim.is_closed() { Delim::Closed } else { other.lo_delim }),
        };
        let (hi, hi_delim) = match self.hi.cmp(&other.hi) {
            Ordering::Greater => (self.hi.clone(), self.hi_delim),
            Ordering::Less => (other.hi.clone(), other.hi_delim),
            Ordering::Equal => (self.hi.clone(), if self.hi_delim.is_closed() { Delim::Closed } else { other.hi_delim }),
        };
        Interval { lo_delim, lo, hi, hi_delim }
    }

    /// Whether `self ∪ other` is an interval in `mode`.
    pub fn unites_with(&self, other: &Interval, mode: TimeMode) -> bool {
        let (first, second) = if self.lo_key() <= other.lo_key() { (self, other) } else { (other, self) };
        match mode {
            TimeMode::Discrete => match (first.integer_bounds(), second.integer_bounds()) {
                (Some((_, hi)), Some((lo, _))) => lo <= &hi + &TimePoint::from(1),
                _ => true,
            },
            TimeMode::Dense => match first.hi.cmp(&second.lo) {
                Ordering::Greater => true,
                Ordering::Equal => first.hi_delim.is_closed() || second.lo_delim.is_closed(),
                Ordering::Less => false,
            },
        }
    }

    /// Smallest and largest integer inside, if any.
    pub fn integer_bounds(&self) -> Option<(TimePoint, TimePoint)> {
        let lo = self.lo.ceil();
        let lo = if !self.lo_delim.is_closed() && lo == self.lo { &lo + &TimePoint::from(1) } else { lo };
        let hi = self.hi.floor();
        let hi = if !self.hi_delim.is_closed() && hi == self.hi { &hi - &TimePoint::from(1) } else { hi };
        (lo <= hi).then_some((lo, hi))
    }

    /// Integer points, in order. Only meaningful for discrete intervals.
    pub fn integer_points(&self) -> impl Iterator<Item = TimePoint> {
        let (lo, hi) = self.integer_bounds().unwrap_or((TimePoint::from(1), TimePoint::zero()));
        let mut next = Some(lo);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            if cur > hi {
                return None;
            }
            next = Some(&cur + &TimePoint::from(1));
            Some(cur)
        })
    }

    /// Lexicographic key on the lower end: closed sorts before open.
    fn lo_key(&self) -> (&TimePoint, Delim) {
        (&self.lo, self.lo_delim)
    }

    /// Multiplies both endpoints by `factor > 0`.
    pub fn scale(&self, factor: i64) -> Interval {
        assert!(factor > 0, "scale factor must be positive");
        Interval { lo_delim: self.lo_delim, lo: self.lo.scale(factor), hi: self.hi.scale(factor), hi_delim: self.hi_delim }
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(self.lo_delim.cmp(&other.lo_delim))
            .then(self.hi.cmp(&other.hi))
            .then(other.hi_delim.cmp(&self.hi_delim))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_delim.is_closed() { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_delim.is_closed() { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[lo,hi]`, `(lo,hi]`, `[lo,hi)` or `(lo,hi)`; whitespace is allowed
/// around the endpoints.
impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || IntervalError::Syntax(s.to_string());
        let mut chars = s.chars();
        let lo_delim = match chars.next() {
            Some('[') => Delim::Closed,
            Some('(') => Delim::Open,
            _ => return Err(bad()),
        };
        let hi_delim = match chars.next_back() {
            Some(']') => Delim::Closed,
            Some(')') => Delim::Open,
            _ => return Err(bad()),
        };
        let (lo, hi) = chars.as_str().split_once(',').ok_or_else(bad)?;
        Interval::new(lo_delim, lo.parse()?, hi.parse()?, hi_delim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    fn t(v: i64) -> TimePoint {
        TimePoint::from(v)
    }

    #[test]
    fn shift_translates_and_keeps_delimiters() {
        assert_eq!(iv("[100,102]").shift(&t(3)), iv("[103,105]"));
        assert_eq!(iv("[0,2]").shift(&t(0)), iv("[0,2]"));
        assert_eq!(iv("(1,3]").shift(&t(-1)), iv("(0,2]"));
    }

    #[test]
    fn msum_examples() {
        assert_eq!(iv("[100,101]").msum(&iv("[3,5]")), iv("[103,106]"));
        assert_eq!(iv("(1,4)").msum(&Interval::point(0)), iv("(1,4)"));
        assert_eq!(iv("[1,2)").msum(&iv("[0,1)")), iv("[1,3)"));
    }

    #[test]
    fn mdiff_examples() {
        assert_eq!(iv("[6,8]").mdiff(&iv("[3,5]")), iv("[1,5]"));
        assert_eq!(iv("[6,8)").mdiff(&Interval::point(0)), iv("[6,8)"));
        assert_eq!(iv("[10,12]").mdiff(&iv("[3,5]")), iv("[5,9]"));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(iv("[0,5]").intersect(&iv("[3,8]")), Some(iv("[3,5]")));
        assert_eq!(iv("[0,2]").intersect(&iv("[2,4]")), Some(iv("[2,2]")));
        assert_eq!(iv("[0,2)").intersect(&iv("[2,4]")), None);
        assert_eq!(iv("(0,2]").intersect(&iv("[0,2)")), Some(iv("(0,2)")));
    }

    #[test]
    fn contains_respects_delimiters() {
        assert!(iv("[0,2]").contains(&t(2)));
        assert!(!iv("[0,2)").contains(&t(2)));
        assert!(iv("(1,2)").contains(&TimePoint::ratio(3, 2)));
        assert!(!iv("(1,2)").contains(&t(1)));
    }

    #[test]
    fn empty_intervals_are_rejected() {
        assert!("[3,2]".parse::<Interval>().is_err());
        assert!("[2,2)".parse::<Interval>().is_err());
        assert!("[2,2]".parse::<Interval>().is_ok());
        assert!("2,2".parse::<Interval>().is_err());
    }

    #[test]
    fn discrete_normalization() {
        assert_eq!(iv("(1,4)").normalize(TimeMode::Discrete).unwrap(), iv("[2,3]"));
        assert!(iv("(1,2)").normalize(TimeMode::Discrete).is_err());
        assert!(iv("[1/2,2]").normalize(TimeMode::Discrete).is_err());
        assert_eq!(iv("(1,2)").normalize(TimeMode::Dense).unwrap(), iv("(1,2)"));
    }

    #[test]
    fn subset_and_hull() {
        assert!(iv("(0,1)").is_subset(&iv("[0,1]")));
        assert!(!iv("[0,1]").is_subset(&iv("(0,1]")));
        assert_eq!(iv("[0,1)").hull(&iv("(3,4]")), iv("[0,4]"));
    }

    #[test]
    fn integer_points_skip_open_ends() {
        let pts: Vec<_> = iv("(1,4]").integer_points().collect();
        assert_eq!(pts, vec![t(2), t(3), t(4)]);
        let pts: Vec<_> = iv("[1/2,5/2)").integer_points().collect();
        assert_eq!(pts, vec![t(1), t(2)]);
    }
}
