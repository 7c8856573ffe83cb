//! Dense time: `e1/T[0,2]/e2` has uncountably many point answers but a
//! single cropped rectangle describes them all. Rectangles cannot.
//!
//! `cargo run --example dense_finiteness`

use trpq::repr::delta_at;
use trpq::{eval_c, eval_td, load_graph, parse_query, EvalError, EvalOptions, TimePoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = load_graph("domain [0,3]\nmode dense\na e1 b [0,2]\nb e2 c [1,3]\n")?;
    let q = parse_query("e1/T[0,2]/e2")?;
    let opts = EvalOptions::default();

    let c = eval_c(&graph, &q, &opts)?;
    print!("{}", c.render());
    for t in [TimePoint::zero(), TimePoint::ratio(1, 3), TimePoint::ratio(3, 2), TimePoint::from(2)] {
        for u in c.iter() {
            if let Some(slice) = delta_at(u, &t)? {
                println!("  t = {t}: d in {slice}");
            }
        }
    }

    match eval_td(&graph, &q, &opts) {
        Err(e @ EvalError::Infeasible { .. }) => println!("U^td: {e}"),
        other => println!("U^td unexpectedly gave {other:?}"),
    }
    Ok(())
}
