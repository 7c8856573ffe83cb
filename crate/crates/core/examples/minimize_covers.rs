//! Minimum covers of an L-shaped region, which are not unique.
//!
//! `cargo run --example minimize_covers`

use trpq::compact::{enumerate_min_covers, greedy_reduce, minimize_exact, CoverMode};
use trpq::{AnswerSet, CTuple, Interval, NodeId, TDTuple, TimeMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (NodeId::new("a"), NodeId::new("b"));
    let i = |lo: i64, hi: i64| Interval::closed(lo, hi).unwrap();
    // three unit-wide strips that together form an L
    let strips = [(i(0, 1), i(0, 3)), (i(2, 3), i(0, 1)), (i(0, 3), i(0, 0))];
    let region = AnswerSet::from_tuples(
        TimeMode::Discrete,
        strips.iter().map(|(tau, delta)| TDTuple { n1: a.clone(), n2: b.clone(), tau: tau.clone(), delta: delta.clone() }),
    );
    println!("input:\n{}", region.render());
    println!("greedy:\n{}", greedy_reduce(&region).render());
    println!("disjoint minimum:\n{}", minimize_exact(&region, CoverMode::Disjoint)?.render());

    let covers = enumerate_min_covers(&region, CoverMode::Overlapping)?;
    println!("{} distinct minimum covers:", covers.len());
    for cover in &covers {
        println!("{}", cover.render());
    }

    let cropped = AnswerSet::from_tuples(
        TimeMode::Discrete,
        region.iter().map(|r| CTuple::uncropped(r.n1.clone(), r.n2.clone(), r.tau.clone(), r.delta.clone())),
    );
    let covers = enumerate_min_covers(&cropped, CoverMode::Overlapping)?;
    println!("as cropped rectangles: {} covers of size {}", covers.len(), covers[0].len());
    Ok(())
}
