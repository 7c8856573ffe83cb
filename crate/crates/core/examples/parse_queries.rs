//! Parsing, printing and error reporting for the query syntax.
//!
//! `cargo run --example parse_queries [query...]`

use trpq::parse_query;

fn main() {
    let mut queries: Vec<String> = std::env::args().skip(1).collect();
    if queries.is_empty() {
        queries = [
            "attends^-/(=Alice)/T[3,5]/attends",
            "e/(T[2,2])[1,_]",
            "?(tests/(=positive)) / T[-7,0] / attends",
            "!(=Bob) + (<=105)",
            "T(0.5,2]",
            "attends/(",
            "T[3,1]",
        ]
        .map(String::from)
        .to_vec();
    }
    for text in &queries {
        match parse_query(text) {
            Ok(q) => println!("{text:<40} ok     depth {}  star-free {}  prints as {q}", q.depth(), q.is_star_free()),
            Err(e) => println!("{text:<40} error  {e}"),
        }
    }
}
