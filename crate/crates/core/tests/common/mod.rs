//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trpq::interval::Delim;
use trpq::query::{NodePredicate, PredKind};
use trpq::{CTuple, Interval, NodeId, TemporalGraph, TimeMode, TimePoint, Trpq};

pub const NODES: [&str; 4] = ["a", "b", "c", "d"];
pub const LABELS: [&str; 3] = ["e", "f", "g"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn delim(rng: &mut impl Rng) -> Delim {
    if rng.gen_bool(0.7) {
        Delim::Closed
    } else {
        Delim::Open
    }
}

/// A discrete graph over at most four nodes and three labels with
/// `τ_G = [0, L]`, `L ≤ 11`.
pub fn random_graph(rng: &mut impl Rng) -> TemporalGraph {
    let len: i64 = rng.gen_range(1..=11);
    let nodes = &NODES[..rng.gen_range(1..=NODES.len())];
    let labels = &LABELS[..rng.gen_range(1..=LABELS.len())];
    let mut builder = TemporalGraph::builder(TimeMode::Discrete, Interval::closed(0, len).unwrap());
    for _ in 0..rng.gen_range(0..=7) {
        let s = nodes.choose(rng).unwrap();
        let o = nodes.choose(rng).unwrap();
        let p = labels.choose(rng).unwrap();
        let lo = rng.gen_range(0..=len);
        let hi = rng.gen_range(lo..=(lo + 4).min(len));
        builder.add(s, p, o, Interval::closed(lo, hi).unwrap());
    }
    builder.build().unwrap()
}

fn random_edge(rng: &mut impl Rng) -> Trpq {
    let label = Trpq::label(LABELS.choose(rng).unwrap());
    if rng.gen_bool(0.3) {
        Trpq::inverse(label).unwrap()
    } else {
        label
    }
}

fn random_timenav(rng: &mut impl Rng) -> Trpq {
    let lo: i64 = rng.gen_range(-4..=3);
    let hi = rng.gen_range(lo..=lo + 4);
    let (l, h) = if lo == hi { (Delim::Closed, Delim::Closed) } else { (delim(rng), delim(rng)) };
    Trpq::TimeNav(Interval::new(l, lo.into(), hi.into(), h).unwrap())
}

/// A node form: `(=X)`, `(!=X)`, `(<=k)`, `?q` or `!node`.
fn random_node(rng: &mut impl Rng, depth: usize) -> Trpq {
    let choice = if depth <= 1 { rng.gen_range(0..3) } else { rng.gen_range(0..5) };
    match choice {
        0 | 1 => Trpq::Pred(NodePredicate {
            kind: if choice == 0 { PredKind::Equals } else { PredKind::NotEquals },
            target: NodeId::new(NODES.choose(rng).unwrap()),
        }),
        2 => Trpq::LeqTime(TimePoint::from(rng.gen_range(-1..=12i64))),
        3 => Trpq::test(random_query(rng, depth - 1)),
        _ => Trpq::not(random_node(rng, depth - 1)).unwrap(),
    }
}

/// A query of depth at most `depth` over the full grammar.
pub fn random_query(rng: &mut impl Rng, depth: usize) -> Trpq {
    if depth <= 1 {
        return match rng.gen_range(0..3) {
            0 => random_edge(rng),
            1 => random_timenav(rng),
            _ => random_node(rng, 1),
        };
    }
    let sub = depth - 1;
    match rng.gen_range(0..9) {
        0 => random_edge(rng),
        1 => random_timenav(rng),
        2 => random_node(rng, depth),
        3 | 4 => Trpq::join(random_query(rng, sub), random_query(rng, sub)),
        5 => Trpq::union(random_query(rng, sub), random_query(rng, sub)),
        6 => {
            let min = rng.gen_range(0..=2);
            Trpq::repeat(random_query(rng, sub), min, min + rng.gen_range(0..=2)).unwrap()
        }
        7 => Trpq::repeat_unbounded(random_query(rng, sub), rng.gen_range(0..=2)),
        _ => Trpq::not(random_node(rng, sub)).unwrap(),
    }
}

pub fn ratio(n: i64, k: i64) -> TimePoint {
    TimePoint::ratio(n, k)
}

/// Interval with endpoints on the `1/k` grid, numerators in `lo..=hi`.
fn grid_interval(rng: &mut impl Rng, k: i64, lo: i64, hi: i64, random_delims: bool) -> Interval {
    loop {
        let a = rng.gen_range(lo..=hi);
        let b = rng.gen_range(a..=hi.min(a + 3 * k));
        let (l, h) = if random_delims && a != b { (delim(rng), delim(rng)) } else { (Delim::Closed, Delim::Closed) };
        if let Ok(i) = Interval::new(l, ratio(a, k), ratio(b, k), h) {
            return i;
        }
    }
}

/// A valid cropped rectangle with endpoints on the `1/k` grid.
///
/// `tau` and `delta` ranges are given in grid steps; the arrival window
/// is drawn around `τ ⊕ δ` and the tuple is rejected until valid.
pub fn random_ctuple(rng: &mut impl Rng, n1: &str, n2: &str, k: i64, tau: (i64, i64), delta: (i64, i64), random_delims: bool) -> CTuple {
    loop {
        let t = grid_interval(rng, k, tau.0, tau.1, random_delims);
        let d = grid_interval(rng, k, delta.0, delta.1, random_delims);
        let sum = t.msum(&d);
        let lo = sum.lo().to_rational() * num_bigint::BigInt::from(k);
        let hi = sum.hi().to_rational() * num_bigint::BigInt::from(k);
        let (lo, hi) = (lo.to_integer().try_into().unwrap_or(0i64), hi.to_integer().try_into().unwrap_or(0i64));
        let a = rng.gen_range(lo - k..=hi);
        let b = rng.gen_range(a.max(lo)..=hi + k);
        let (l, h) = if random_delims { (delim(rng), delim(rng)) } else { (Delim::Closed, Delim::Closed) };
        let Ok(alpha) = Interval::new(l, ratio(a, k), ratio(b, k), h) else { continue };
        let c = CTuple::from_window(NodeId::new(n1), NodeId::new(n2), t, d, &alpha);
        if c.is_valid() {
            return c;
        }
    }
}

/// An integer tuple with closed delimiters; not necessarily valid.
pub fn random_integer_ctuple(rng: &mut impl Rng) -> CTuple {
    let t0 = rng.gen_range(0..=6i64);
    let t1 = rng.gen_range(t0..=t0 + 4);
    let d0 = rng.gen_range(-3..=3i64);
    let d1 = rng.gen_range(d0..=d0 + 4);
    let b = rng.gen_range(t0 - 2..=t1 + 2);
    let e = rng.gen_range(t0 - 2..=t1 + 2);
    CTuple::new(
        NodeId::new("a"),
        NodeId::new("b"),
        Interval::closed(t0, t1).unwrap(),
        Interval::closed(d0, d1).unwrap(),
        b.into(),
        e.into(),
    )
}
