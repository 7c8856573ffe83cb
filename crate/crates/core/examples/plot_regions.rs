//! Writes SVG drawings of q3's answer region, one per representation.
//!
//! `cargo run --example plot_regions [out-dir]`

use std::path::PathBuf;

use trpq::compact::{coalesce_d, coalesce_t, minimize_exact, CoverMode};
use trpq::eval::{eval_repr, Answers};
use trpq::graph::RUNNING_EXAMPLE;
use trpq::plot::render_svg;
use trpq::repr::ReprKind;
use trpq::{load_graph, parse_query, EvalOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/plots".into()));
    std::fs::create_dir_all(&dir)?;
    let graph = load_graph(RUNNING_EXAMPLE)?;
    let q3 = parse_query("attends^-/(=Alice)/T[3,5]/attends")?;

    for repr in ReprKind::ALL {
        let answers = match eval_repr(&graph, &q3, repr, &EvalOptions::default())? {
            Answers::T(s) => Answers::T(coalesce_t(&s)),
            Answers::D(s) => Answers::D(coalesce_d(&s)),
            Answers::TD(s) => Answers::TD(minimize_exact(&s, CoverMode::Overlapping)?),
            other => other,
        };
        let svg = render_svg(&answers.to_ctuples(), graph.domain(), graph.mode(), repr, &format!("q3 ({repr})"));
        let path = dir.join(format!("q3_{repr}.svg"));
        std::fs::write(&path, svg)?;
        println!("{} tuples -> {}", answers.len(), path.display());
    }
    Ok(())
}
