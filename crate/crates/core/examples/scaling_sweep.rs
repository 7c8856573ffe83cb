//! Tuple counts per representation as query or graph intervals grow.
//!
//! `cargo run --example scaling_sweep`

use trpq::cli::{tuple_counts, GRAPH_FAMILY_GRAPH, GRAPH_FAMILY_QUERY, QUERY_FAMILY_GRAPH, QUERY_FAMILY_QUERY};
use trpq::repr::ReprKind;
use trpq::{load_graph, parse_query, EvalOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = EvalOptions::default();
    let header: Vec<String> = ReprKind::ALL.iter().map(|r| format!("{:>6}", r.name())).collect();

    let (graph, query) = (load_graph(QUERY_FAMILY_GRAPH)?, parse_query(QUERY_FAMILY_QUERY)?);
    println!("query T[0,i] over a self-loop:\n   i {}", header.join(""));
    for i in 1..=8 {
        print_row(i, &tuple_counts(&graph, &query.scaled(i), &opts)?);
    }

    let (graph, query) = (load_graph(GRAPH_FAMILY_GRAPH)?, parse_query(GRAPH_FAMILY_QUERY)?);
    println!("\nedge valid on [0,s]:\n   s {}", header.join(""));
    for s in 1..=8 {
        print_row(s, &tuple_counts(&graph.scaled(s), &query, &opts)?);
    }
    Ok(())
}

fn print_row(factor: i64, counts: &[(ReprKind, Option<usize>)]) {
    let cells: Vec<String> = counts
        .iter()
        .map(|(_, c)| format!("{:>6}", c.map_or_else(|| "NA".to_string(), |c| c.to_string())))
        .collect();
    println!("{factor:>4} {}", cells.join(""));
}
