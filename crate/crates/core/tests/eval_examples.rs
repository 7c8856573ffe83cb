use std::collections::BTreeSet;

use trpq::compact::{coalesce_d, coalesce_t, greedy_reduce, minimize_exact, CoverMode};
use trpq::eval::{eval_c, eval_d, eval_t, eval_td, join_c, join_td, EvalError, EvalOptions};
use trpq::graph::RUNNING_EXAMPLE;
use trpq::oracle::eval_direct;
use trpq::repr::{unfold, AnswerTuple};
use trpq::{load_graph, parse_query, CTuple, Interval, NodeId, TDTuple, TimePoint};

const Q3: &str = "attends^-/(=Alice)/T[3,5]/attends";

fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

fn n(s: &str) -> NodeId {
    NodeId::new(s)
}

fn lines<R: AnswerTuple>(set: &trpq::AnswerSet<R>) -> Vec<String> {
    set.iter().map(|t| t.to_string()).collect()
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

#[test]
fn q3_in_every_representation() {
    let g = load_graph(RUNNING_EXAMPLE).unwrap();
    let q = parse_query(Q3).unwrap();
    let truth = eval_direct(&g, &q).unwrap();
    assert_eq!(truth.len(), 7);

    let t = coalesce_t(&eval_t(&g, &q, &opts()).unwrap());
    let pair: Vec<String> = lines(&t).into_iter().filter(|l| l.starts_with("t ICDT ISWC")).collect();
    assert_eq!(pair, ["t ICDT ISWC [100,101] 5", "t ICDT ISWC [100,102] 4", "t ICDT ISWC [101,102] 3"]);

    let d = coalesce_d(&eval_d(&g, &q, &opts()).unwrap());
    let pair: Vec<String> = lines(&d).into_iter().filter(|l| l.starts_with("d ICDT ISWC")).collect();
    assert_eq!(pair, ["d ICDT ISWC 100 [4,5]", "d ICDT ISWC 101 [3,5]", "d ICDT ISWC 102 [3,4]"]);

    let c = eval_c(&g, &q, &opts()).unwrap();
    assert!(lines(&c).contains(&"c ICDT ISWC [100,102] [3,5] b=101 e=101".to_string()));

    let td = eval_td(&g, &q, &opts()).unwrap();
    assert_eq!(unfold(&t).unwrap(), truth);
    assert_eq!(unfold(&d).unwrap(), truth);
    assert_eq!(unfold(&td).unwrap(), truth);
    assert_eq!(unfold(&c).unwrap(), truth);
}

#[test]
fn q3_covers() {
    let g = load_graph(RUNNING_EXAMPLE).unwrap();
    let q = parse_query(Q3).unwrap();
    let only_pair = |s: &str| s.contains("ICDT ISWC");
    let td = eval_td(&g, &q, &opts()).unwrap();
    let td = trpq::AnswerSet::from_tuples(td.mode(), td.iter().filter(|x| only_pair(&x.to_string())).cloned());
    let overlapping = minimize_exact(&td, CoverMode::Overlapping).unwrap();
    assert_eq!(lines(&overlapping), ["td ICDT ISWC [100,101] [4,5]", "td ICDT ISWC [101,102] [3,4]"]);
    assert_eq!(minimize_exact(&td, CoverMode::Disjoint).unwrap().len(), 3);

    let c = eval_c(&g, &q, &opts()).unwrap();
    let c = trpq::AnswerSet::from_tuples(c.mode(), c.iter().filter(|x| only_pair(&x.to_string())).cloned());
    let min = minimize_exact(&c, CoverMode::Overlapping).unwrap();
    assert_eq!(lines(&min), ["c ICDT ISWC [100,102] [3,5] b=101 e=101"]);
    let greedy = greedy_reduce(&td);
    assert!(greedy.len() <= td.len());
    assert_eq!(unfold(&greedy).unwrap(), unfold(&td).unwrap());
}

#[test]
fn closure_example() {
    let g = load_graph("domain [0,20]\nn1 e n2 [0,0]\n").unwrap();
    let q = parse_query("e/(T[2,2])[1,_]").unwrap();
    let t = coalesce_t(&eval_t(&g, &q, &opts()).unwrap());
    let expected: Vec<String> = (1..=10).map(|k| format!("t n1 n2 [0,0] {}", 2 * k)).collect();
    let mut got = lines(&t);
    got.sort_by_key(|l| l.rsplit(' ').next().unwrap().parse::<i64>().unwrap());
    assert_eq!(got, expected);
}

#[test]
fn base_cases() {
    let g = load_graph(RUNNING_EXAMPLE).unwrap();
    let alice_iswc = |s: &String| s.contains("Alice ISWC");
    let t = eval_t(&g, &parse_query("attends").unwrap(), &opts()).unwrap();
    assert_eq!(lines(&t).into_iter().filter(alice_iswc).collect::<Vec<_>>(), ["t Alice ISWC [104,106] 0"]);
    let td = eval_td(&g, &parse_query("attends").unwrap(), &opts()).unwrap();
    assert_eq!(lines(&td).into_iter().filter(alice_iswc).collect::<Vec<_>>(), ["td Alice ISWC [104,106] [0,0]"]);
    let c = eval_c(&g, &parse_query("attends").unwrap(), &opts()).unwrap();
    assert_eq!(lines(&c).into_iter().filter(alice_iswc).collect::<Vec<_>>(), ["c Alice ISWC [104,106] [0,0] b=104 e=106"]);

    let tiny = load_graph("domain [0,1]\nAlice knows Bob [0,1]\n").unwrap();
    let d = eval_d(&tiny, &parse_query("(=Alice)").unwrap(), &opts()).unwrap();
    assert_eq!(lines(&d), ["d Alice Alice 0 [0,0]", "d Alice Alice 1 [0,0]"]);
}

#[test]
fn dense_fused_navigation() {
    let dense = RUNNING_EXAMPLE.replace("mode discrete", "mode dense");
    let g = load_graph(&dense).unwrap();
    let q = parse_query("(=positive)/tests^-/T[-7,0]").unwrap();
    let d = eval_d(&g, &q, &opts()).unwrap();
    assert_eq!(lines(&d), ["d positive Bob 112 [-7,0]"]);
    // a standalone navigation at the front has a continuum of departures
    let lead = parse_query("T[0,1]/attends").unwrap();
    assert!(matches!(eval_d(&g, &lead, &opts()), Err(EvalError::Infeasible { .. })));
    assert!(matches!(eval_t(&g, &lead, &opts()), Err(EvalError::Infeasible { .. })));
    assert!(eval_t(&g, &parse_query("T[1,1]/attends").unwrap(), &opts()).is_ok());
    let err = eval_td(&g, &parse_query("attends").unwrap(), &opts()).unwrap_err();
    assert!(err.to_string().contains("dense time: U^td may require infinitely many rectangles"));
}

#[test]
fn join_td_examples() {
    let d = trpq::TimeMode::Discrete;
    let r = |a: &str, b: &str, tau: &str, delta: &str| TDTuple { n1: n(a), n2: n(b), tau: iv(tau), delta: iv(delta) };
    let out = join_td(&r("a", "b", "[0,2]", "[0,2]"), &r("b", "c", "[1,3]", "[0,0]"), d).unwrap();
    let got: Vec<String> = out.iter().map(|x| x.to_string()).collect();
    assert_eq!(got, ["td a c [0,0] [1,2]", "td a c [1,1] [0,2]", "td a c [2,2] [0,1]"]);
    assert!(join_td(&r("a", "b", "[0,2]", "[0,2]"), &r("x", "c", "[1,3]", "[0,0]"), d).unwrap().is_empty());
    let out = join_td(&r("a", "b", "[0,0]", "[5,5]"), &r("b", "c", "[5,5]", "[1,1]"), d).unwrap();
    assert_eq!(out, vec![r("a", "c", "[0,0]", "[6,6]")]);
    assert!(join_td(&r("a", "b", "[0,0]", "[5,5]"), &r("b", "c", "[5,5]", "[1,1]"), trpq::TimeMode::Dense).is_err());
}

#[test]
fn join_c_examples() {
    let c = |a: &str, b: &str, tau: &str, delta: &str, bb: i64, e: i64| {
        CTuple::new(n(a), n(b), iv(tau), iv(delta), bb.into(), e.into())
    };
    let seeded = join_c(&c("n", "n", "[100,107]", "[3,5]", 100, 107), &c("n", "n", "[100,107]", "[0,0]", 100, 107)).unwrap();
    assert_eq!(seeded, Some(c("n", "n", "[100,104]", "[3,5]", 100, 102)));
    assert_eq!(join_c(&c("a", "b", "[0,1]", "[0,0]", 0, 1), &c("x", "y", "[0,1]", "[0,0]", 0, 1)).unwrap(), None);
    let chain = join_c(&c("a", "b", "[5,5]", "[1,1]", 5, 5), &c("b", "c", "[6,6]", "[2,2]", 6, 6)).unwrap();
    assert_eq!(chain, Some(c("a", "c", "[5,5]", "[3,3]", 5, 5)));
    let invalid = c("a", "b", "[0,10]", "[0,1]", 10, 0);
    assert!(matches!(join_c(&invalid, &invalid), Err(EvalError::InvalidTuple(_))));
}

#[test]
fn example_two_is_finite_over_dense_time() {
    let g = load_graph("domain [0,5]\nmode dense\nx e1 y [0,2]\ny e2 z [1,3]\n").unwrap();
    let q = parse_query("e1/T[0,2]/e2").unwrap();
    let c = eval_c(&g, &q, &opts()).unwrap();
    assert_eq!(c.len(), 1);
    let only = c.iter().next().unwrap();
    for (num, den) in [(0, 1), (1, 2), (1, 1), (5, 3), (2, 1)] {
        let t = TimePoint::ratio(num, den);
        let slice = only.delta_at(&t).unwrap().unwrap();
        let one = TimePoint::from(1);
        let expected = Interval::closed((&one - &t).max(0.into()), (&TimePoint::from(3) - &t).min(2.into())).unwrap();
        assert_eq!(slice, expected, "t = {t}");
    }
    assert!(eval_td(&g, &q, &opts()).is_err());
}

#[test]
fn negation_and_tests() {
    let g = load_graph(RUNNING_EXAMPLE).unwrap();
    for q in ["!(?(attends))", "?(attends/T[0,2]/attends^-)", "!((<=104))/(=Bob)", "attends/attends^-/!((=Alice))"] {
        let q = parse_query(q).unwrap();
        let truth = eval_direct(&g, &q).unwrap();
        assert_eq!(unfold(&eval_t(&g, &q, &opts()).unwrap()).unwrap(), truth, "t {q}");
        assert_eq!(unfold(&eval_d(&g, &q, &opts()).unwrap()).unwrap(), truth, "d {q}");
        assert_eq!(unfold(&eval_td(&g, &q, &opts()).unwrap()).unwrap(), truth, "td {q}");
        assert_eq!(unfold(&eval_c(&g, &q, &opts()).unwrap()).unwrap(), truth, "c {q}");
    }
}

#[test]
fn intermediate_coalescing_keeps_answers() {
    let g = load_graph(RUNNING_EXAMPLE).unwrap();
    let q = parse_query("(attends/attends^-)[1,3]/T[0,2]").unwrap();
    let coalescing = EvalOptions { coalesce_intermediate: true, ..EvalOptions::default() };
    let truth: BTreeSet<_> = eval_direct(&g, &q).unwrap();
    assert_eq!(unfold(&eval_t(&g, &q, &coalescing).unwrap()).unwrap(), truth);
    assert_eq!(unfold(&eval_d(&g, &q, &coalescing).unwrap()).unwrap(), truth);
}

#[test]
fn iteration_cap_is_reported() {
    let g = load_graph("domain [0,50]\na e a [0,50]\n").unwrap();
    let q = parse_query("T[1,1][0,_]").unwrap();
    let tight = EvalOptions { max_iterations: 3, ..EvalOptions::default() };
    assert_eq!(eval_c(&g, &q, &tight), Err(EvalError::IterationCap(3)));
    assert!(eval_c(&g, &q, &EvalOptions::default()).is_ok());
}
