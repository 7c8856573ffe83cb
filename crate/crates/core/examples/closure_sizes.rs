//! Unbounded repetition: `e/(T[2,2])[1,_]` from a single edge at time 0.
//!
//! The reachable distances are the even numbers up to the end of the
//! domain. They form no interval, so every representation needs one tuple
//! per distance.
//!
//! `cargo run --example closure_sizes [domain-end]`

use trpq::compact::{coalesce_d, coalesce_t};
use trpq::{eval_c, eval_d, eval_t, load_graph, parse_query, EvalOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let end: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    let graph = load_graph(&format!("domain [0,{end}]\nn1 e n2 [0,0]\n"))?;
    let q = parse_query("e/(T[2,2])[1,_]")?;
    let opts = EvalOptions::default();

    let t = coalesce_t(&eval_t(&graph, &q, &opts)?);
    print!("{}", t.render());
    println!("U^t: {} tuples", t.len());
    println!("U^d: {} tuples", coalesce_d(&eval_d(&graph, &q, &opts)?).len());
    println!("U^c: {} tuples", eval_c(&graph, &q, &opts)?.len());
    Ok(())
}
