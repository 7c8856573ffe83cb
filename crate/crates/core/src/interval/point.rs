use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::IntervalError;

/// An exact time point (or distance).
///
/// Integers that fit in an `i64` are stored inline; anything else (overflowing
/// sums, non-integral rationals) is promoted to an arbitrary-precision rational.
/// Arithmetic therefore never overflows. Which values are admissible is decided
/// by the [`TimeMode`] of the graph, not by this type.
#[derive(Clone)]
pub struct TimePoint(Repr);

#[derive(Clone)]
enum Repr {
    Int(i64),
    // never integral-and-fits-i64
    Big(BigRational),
}

/// The temporal domain of a graph: ℤ (discrete) or ℚ (dense).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeMode {
    Discrete,
    Dense,
}

impl TimeMode {
    pub fn is_discrete(self) -> bool {
        matches!(self, TimeMode::Discrete)
    }

    /// Checks that `t` belongs to this domain.
    pub fn check_point(self, t: &TimePoint) -> Result<(), IntervalError> {
        if self.is_discrete() && !t.is_integer() {
            return Err(IntervalError::ModeMismatch(t.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for TimeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeMode::Discrete => f.write_str("discrete"),
            TimeMode::Dense => f.write_str("dense"),
        }
    }
}

impl FromStr for TimeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "discrete" => Ok(TimeMode::Discrete),
            "dense" => Ok(TimeMode::Dense),
            other => Err(format!("unknown time mode `{other}` (expected discrete or dense)")),
        }
    }
}

impl TimePoint {
    pub fn zero() -> Self {
        TimePoint(Repr::Int(0))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(i) = r.numer().to_i64() {
                return TimePoint(Repr::Int(i));
            }
        }
        TimePoint(Repr::Big(r))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn to_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Int(i) => BigRational::from_integer(BigInt::from(*i)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Int(_) => true,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Int(i) => Some(*i),
            Repr::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Int(i) => *i as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Int(0))
    }

    pub fn floor(&self) -> TimePoint {
        match &self.0 {
            Repr::Int(_) => self.clone(),
            Repr::Big(r) => Self::from_rational(r.floor()),
        }
    }

    pub fn ceil(&self) -> TimePoint {
        match &self.0 {
            Repr::Int(_) => self.clone(),
            Repr::Big(r) => Self::from_rational(r.ceil()),
        }
    }

    pub fn scale(&self, factor: i64) -> TimePoint {
        match &self.0 {
            Repr::Int(i) => match i.checked_mul(factor) {
                Some(v) => TimePoint(Repr::Int(v)),
                None => Self::from_rational(self.to_rational() * BigRational::from_integer(factor.into())),
            },
            Repr::Big(r) => Self::from_rational(r * BigRational::from_integer(factor.into())),
        }
    }

    pub fn max(self, other: TimePoint) -> TimePoint {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: TimePoint) -> TimePoint {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl From<i64> for TimePoint {
    fn from(v: i64) -> Self {
        TimePoint(Repr::Int(v))
    }
}

impl From<i32> for TimePoint {
    fn from(v: i32) -> Self {
        TimePoint(Repr::Int(v as i64))
    }
}

impl PartialEq for TimePoint {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for TimePoint {}

impl Hash for TimePoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Int(i) => {
                0u8.hash(state);
                i.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for TimePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl PartialOrd for TimePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&TimePoint> for &TimePoint {
    type Output = TimePoint;

    fn add(self, rhs: &TimePoint) -> TimePoint {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                return TimePoint(Repr::Int(v));
            }
        }
        TimePoint::from_rational(self.to_rational() + rhs.to_rational())
    }
}

impl Sub<&TimePoint> for &TimePoint {
    type Output = TimePoint;

    fn sub(self, rhs: &TimePoint) -> TimePoint {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                return TimePoint(Repr::Int(v));
            }
        }
        TimePoint::from_rational(self.to_rational() - rhs.to_rational())
    }
}

impl Add for TimePoint {
    type Output = TimePoint;
    fn add(self, rhs: TimePoint) -> TimePoint {
        &self + &rhs
    }
}

impl Sub for TimePoint {
    type Output = TimePoint;
    fn sub(self, rhs: TimePoint) -> TimePoint {
        &self - &rhs
    }
}

impl Neg for &TimePoint {
    type Output = TimePoint;

    fn neg(self) -> TimePoint {
        match &self.0 {
            Repr::Int(i) => match i.checked_neg() {
                Some(v) => TimePoint(Repr::Int(v)),
                None => TimePoint::from_rational(-self.to_rational()),
            },
            Repr::Big(r) => TimePoint::from_rational(-r.clone()),
        }
    }
}

impl Neg for TimePoint {
    type Output = TimePoint;
    fn neg(self) -> TimePoint {
        -&self
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(i) => write!(f, "{i}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `-12`, `3/4`, `-1.25`. Decimal literals are converted exactly.
impl FromStr for TimePoint {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntervalError::BadNumber(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = parse_int(n).ok_or_else(bad)?;
            let d: BigInt = parse_int(d).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(TimePoint::from_rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let whole: BigInt = match int_part {
                "" | "-" | "+" => BigInt::zero(),
                other => parse_int(other).ok_or_else(bad)?,
            };
            let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            let mut frac_r = BigRational::new(frac_num, denom);
            if negative {
                frac_r = -frac_r;
            }
            return Ok(TimePoint::from_rational(BigRational::from_integer(whole) + frac_r));
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(TimePoint(Repr::Int(i)));
        }
        let n = parse_int(s).ok_or_else(bad)?;
        Ok(TimePoint::from_rational(BigRational::from_integer(n)))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl TimePoint {
    pub fn abs(&self) -> TimePoint {
        match &self.0 {
            Repr::Int(i) if *i != i64::MIN => TimePoint(Repr::Int(i.abs())),
            _ => TimePoint::from_rational(self.to_rational().abs()),
        }
    }
}
