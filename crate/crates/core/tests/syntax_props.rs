mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use trpq::graph::graph_nodes;
use trpq::{load_graph, parse_query};

use common::{random_graph, random_query, rng, LABELS, NODES};

/// Query text straight from the grammar, with random spacing and
/// redundant parentheses.
fn grammar_text(rng: &mut impl Rng, depth: usize) -> String {
    let ws = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.3) { " " } else { "" };
    let atom = |rng: &mut dyn rand::RngCore| -> String {
        match rng.gen_range(0..6) {
            0 => LABELS.choose(rng).unwrap().to_string(),
            1 => format!("{}^-", LABELS.choose(rng).unwrap()),
            2 => format!("(={})", NODES.choose(rng).unwrap()),
            3 => format!("(!={})", NODES.choose(rng).unwrap()),
            4 => format!("(<={})", rng.gen_range(-3..20)),
            _ => {
                let lo = rng.gen_range(-5..5);
                let hi = lo + rng.gen_range(0..5);
                let l = if rng.gen_bool(0.7) { "[" } else { "(" };
                let h = if rng.gen_bool(0.7) { "]" } else { ")" };
                let (l, h) = if lo == hi { ("[", "]") } else { (l, h) };
                format!("T{l}{lo},{hi}{h}")
            }
        }
    };
    if depth <= 1 {
        return atom(rng);
    }
    let sub = depth - 1;
    match rng.gen_range(0..8) {
        0 => atom(rng),
        1 => format!("{}{}/{}{}", grammar_text(rng, sub), ws(rng), ws(rng), grammar_text(rng, sub)),
        2 => format!("{}{}+{}{}", grammar_text(rng, sub), ws(rng), ws(rng), grammar_text(rng, sub)),
        3 => format!("?({})", grammar_text(rng, sub)),
        4 => format!("!(={})", NODES.choose(rng).unwrap()),
        5 => {
            let m = rng.gen_range(0..3);
            format!("({})[{m},{}]", grammar_text(rng, sub), m + rng.gen_range(0..3))
        }
        6 => format!("({})[{},_]", grammar_text(rng, sub), rng.gen_range(0..3)),
        _ => format!("({}{}{})", ws(rng), grammar_text(rng, sub), ws(rng)),
    }
}

proptest! {
    #[test]
    fn printed_queries_parse_back(seed in any::<u64>(), depth in 1usize..=5) {
        let q = random_query(&mut rng(seed), depth);
        let text = q.to_string();
        prop_assert_eq!(parse_query(&text).map_err(|e| format!("{text}: {e}")), Ok(q));
    }

    #[test]
    fn grammar_strings_parse(seed in any::<u64>(), depth in 1usize..=5) {
        let text = grammar_text(&mut rng(seed), depth);
        prop_assert!(parse_query(&text).is_ok(), "{} rejected: {:?}", text, parse_query(&text).err());
    }

    #[test]
    fn graphs_round_trip(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed));
        let text = g.to_string();
        let back = load_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn nodes_are_subjects_and_objects(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed));
        let expected: std::collections::BTreeSet<_> =
            g.facts().flat_map(|(t, _)| [t.subject.clone(), t.object.clone()]).collect();
        prop_assert_eq!(graph_nodes(&g), expected);
    }
}
