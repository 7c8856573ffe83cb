//! The bundled conference graph and q3 in every representation.
//!
//! `cargo run --example running_example`

use trpq::compact::{coalesce_d, coalesce_t, minimize_exact, CoverMode};
use trpq::graph::RUNNING_EXAMPLE;
use trpq::oracle::eval_direct;
use trpq::repr::unfold;
use trpq::{eval_c, eval_d, eval_t, eval_td, load_graph, parse_query, EvalOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = load_graph(RUNNING_EXAMPLE)?;
    let q3 = parse_query("attends^-/(=Alice)/T[3,5]/attends")?;
    let opts = EvalOptions::default();
    println!("query: {q3}\n");

    let points = eval_direct(&graph, &q3)?;
    println!("point answers ({}):", points.len());
    for p in &points {
        println!("  {p}");
    }

    let t = coalesce_t(&eval_t(&graph, &q3, &opts)?);
    println!("\nU^t, coalesced:\n{}", t.render());
    let d = coalesce_d(&eval_d(&graph, &q3, &opts)?);
    println!("U^d, coalesced:\n{}", d.render());

    let td = eval_td(&graph, &q3, &opts)?;
    println!("U^td minimum cover:\n{}", minimize_exact(&td, CoverMode::Overlapping)?.render());
    println!("U^td minimum disjoint cover:\n{}", minimize_exact(&td, CoverMode::Disjoint)?.render());

    let c = eval_c(&graph, &q3, &opts)?;
    println!("U^c:\n{}", c.render());
    assert_eq!(unfold(&c)?, points);
    Ok(())
}
