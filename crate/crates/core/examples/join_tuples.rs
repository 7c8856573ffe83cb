//! Composing answer tuples by hand: rectangles split, cropped rectangles
//! stay single.
//!
//! `cargo run --example join_tuples`

use trpq::eval::{join_c, join_td};
use trpq::{CTuple, Interval, NodeId, TDTuple, TimeMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let i = |lo: i64, hi: i64| Interval::closed(lo, hi).unwrap();
    let (a, b, c) = (NodeId::new("a"), NodeId::new("b"), NodeId::new("c"));

    let u1 = TDTuple { n1: a.clone(), n2: b.clone(), tau: i(0, 2), delta: i(1, 2) };
    let u2 = TDTuple { n1: b.clone(), n2: c.clone(), tau: i(2, 3), delta: i(0, 1) };
    println!("{u1}\n  joined with {u2}");
    for r in join_td(&u1, &u2, TimeMode::Discrete)? {
        println!("  = {r}");
    }

    let v1 = CTuple::uncropped(a, b.clone(), i(0, 2), i(1, 2));
    let v2 = CTuple::uncropped(b, c, i(2, 3), i(0, 1));
    println!("\n{v1}\n  joined with {v2}");
    match join_c(&v1, &v2)? {
        Some(r) => println!("  = {r}"),
        None => println!("  = nothing"),
    }
    Ok(())
}
