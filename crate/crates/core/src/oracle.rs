//! Point-wise evaluation of TRPQs over discrete time.
//!
//! Deliberately naive and independent of the compact evaluators: every
//! answer is materialized as an integer tuple `(n1, n2, t, d)`. This is the
//! ground truth the compact evaluators are tested against.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{NodeId, TemporalGraph};
use crate::interval::{Interval, IntervalError, TimeMode, TimePoint};
use crate::query::Trpq;
use crate::repr::PointTuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("direct evaluation requires discrete time")]
    DenseMode,
    #[error("time value {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("time constant {0} is not an integer but the graph is discrete")]
    NonInteger(String),
}

type Point = (usize, usize, i64, i64);

struct Ctx<'g> {
    graph: &'g TemporalGraph,
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    lo: i64,
    hi: i64,
}

fn int(t: &TimePoint) -> Result<i64, OracleError> {
    if !t.is_integer() {
        return Err(OracleError::NonInteger(t.to_string()));
    }
    t.to_i64().ok_or_else(|| OracleError::Overflow(t.to_string()))
}

/// Integer range of `i`; `(1, 0)` when it holds no integer.
fn bounds(i: &Interval) -> Result<(i64, i64), OracleError> {
    match i.normalize(TimeMode::Discrete) {
        Ok(n) => Ok((int(n.lo())?, int(n.hi())?)),
        Err(IntervalError::Empty(_)) => Ok((1, 0)),
        Err(_) => Err(OracleError::NonInteger(i.to_string())),
    }
}

/// Exactly `⟦q⟧_G` as a set of point tuples.
pub fn eval_direct(graph: &TemporalGraph, q: &Trpq) -> Result<BTreeSet<PointTuple>, OracleError> {
    if graph.mode() != TimeMode::Discrete {
        return Err(OracleError::DenseMode);
    }
    let nodes: Vec<NodeId> = graph.nodes().iter().cloned().collect();
    let index = nodes.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let (lo, hi) = bounds(graph.domain())?;
    let ctx = Ctx { graph, nodes, index, lo, hi };
    let points = ctx.eval(q)?;
    Ok(points
        .into_iter()
        .map(|(a, b, t, d)| PointTuple { n1: ctx.nodes[a].clone(), n2: ctx.nodes[b].clone(), t: t.into(), d: d.into() })
        .collect())
}

impl Ctx<'_> {
    fn times(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    fn identity(&self) -> HashSet<Point> {
        let mut out = HashSet::new();
        for n in 0..self.nodes.len() {
            for t in self.times() {
                out.insert((n, n, t, 0));
            }
        }
        out
    }

    fn eval(&self, q: &Trpq) -> Result<HashSet<Point>, OracleError> {
        let mut out = HashSet::new();
        match q {
            Trpq::Label(label) => {
                for (triple, set) in self.graph.facts() {
                    if &triple.predicate != label {
                        continue;
                    }
                    let (s, o) = (self.index[&triple.subject], self.index[&triple.object]);
                    for interval in set {
                        let (a, b) = bounds(interval)?;
                        for t in a..=b {
                            out.insert((s, o, t, 0));
                        }
                    }
                }
            }
            Trpq::Inverse(edge) => {
                out = self.eval(edge)?.into_iter().map(|(a, b, t, d)| (b, a, t, d)).collect();
            }
            Trpq::Pred(p) => {
                for (i, n) in self.nodes.iter().enumerate() {
                    if p.holds(n) {
                        for t in self.times() {
                            out.insert((i, i, t, 0));
                        }
                    }
                }
            }
            Trpq::LeqTime(k) => {
                let k = int(k)?;
                for n in 0..self.nodes.len() {
                    for t in self.lo..=self.hi.min(k) {
                        out.insert((n, n, t, 0));
                    }
                }
            }
            Trpq::TimeNav(delta) => {
                let (a, b) = bounds(delta)?;
                for n in 0..self.nodes.len() {
                    for t in self.times() {
                        for d in a..=b {
                            let arrival = t.checked_add(d).ok_or_else(|| OracleError::Overflow(format!("{t}+{d}")))?;
                            if (self.lo..=self.hi).contains(&arrival) {
                                out.insert((n, n, t, d));
                            }
                        }
                    }
                }
            }
            Trpq::Test(inner) => {
                out = self.eval(inner)?.into_iter().map(|(a, _, t, _)| (a, a, t, 0)).collect();
            }
            Trpq::Not(inner) => {
                let excluded = self.eval(inner)?;
                out = self.identity().into_iter().filter(|p| !excluded.contains(p)).collect();
            }
            Trpq::Join(l, r) => {
                out = self.compose(&self.eval(l)?, &self.eval(r)?)?;
            }
            Trpq::Union(l, r) => {
                out = self.eval(l)?;
                out.extend(self.eval(r)?);
            }
            Trpq::Repeat { inner, min, max } => {
                let base = self.eval(inner)?;
                let mut power = self.identity();
                for k in 0..=*max {
                    if k > 0 {
                        power = self.compose(&power, &base)?;
                    }
                    if k >= *min {
                        out.extend(power.iter().copied());
                    }
                }
            }
            Trpq::RepeatUnbounded { inner, min } => {
                let base = self.eval(inner)?;
                let mut power = self.identity();
                for _ in 0..*min {
                    power = self.compose(&power, &base)?;
                }
                out = power.clone();
                let mut frontier = power;
                while !frontier.is_empty() {
                    let next: HashSet<Point> =
                        self.compose(&frontier, &base)?.into_iter().filter(|p| !out.contains(p)).collect();
                    out.extend(next.iter().copied());
                    frontier = next;
                }
            }
        }
        Ok(out)
    }

    /// `{⟨a,c,t,d1+d2⟩ | ⟨a,b,t,d1⟩ ∈ lhs, ⟨b,c,t+d1,d2⟩ ∈ rhs}`
    fn compose(&self, lhs: &HashSet<Point>, rhs: &HashSet<Point>) -> Result<HashSet<Point>, OracleError> {
        let mut by_start: HashMap<(usize, i64), Vec<(usize, i64)>> = HashMap::new();
        for &(b, c, t, d) in rhs {
            by_start.entry((b, t)).or_default().push((c, d));
        }
        let mut out = HashSet::new();
        for &(a, b, t, d1) in lhs {
            let arrival = t + d1;
            if let Some(nexts) = by_start.get(&(b, arrival)) {
                for &(c, d2) in nexts {
                    out.insert((a, c, t, d1 + d2));
                }
            }
        }
        Ok(out)
    }
}

/// The binary temporal relation `{(t, t + d)}` between `n1` and `n2`.
pub fn induced_relation(
    tuples: &BTreeSet<PointTuple>,
    n1: &NodeId,
    n2: &NodeId,
) -> BTreeSet<(TimePoint, TimePoint)> {
    tuples
        .iter()
        .filter(|p| &p.n1 == n1 && &p.n2 == n2)
        .map(|p| (p.t.clone(), &p.t + &p.d))
        .collect()
}

/// Groups point answers by node pair, as `(t, d)` sets.
pub fn by_pair(tuples: &BTreeSet<PointTuple>) -> BTreeMap<(NodeId, NodeId), BTreeSet<(TimePoint, TimePoint)>> {
    let mut out: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for p in tuples {
        out.entry((p.n1.clone(), p.n2.clone())).or_default().insert((p.t.clone(), p.d.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_graph, RUNNING_EXAMPLE};
    use crate::query::parse_query;

    fn run(q: &str) -> BTreeSet<PointTuple> {
        let g = load_graph(RUNNING_EXAMPLE).unwrap();
        eval_direct(&g, &parse_query(q).unwrap()).unwrap()
    }

    #[test]
    fn q3_has_seven_answers() {
        let answers = run("attends^-/(=Alice)/T[3,5]/attends");
        let got: Vec<(String, String, i64, i64)> = answers
            .iter()
            .map(|p| (p.n1.to_string(), p.n2.to_string(), p.t.to_i64().unwrap(), p.d.to_i64().unwrap()))
            .collect();
        let expected: Vec<_> = [(100, 4), (100, 5), (101, 3), (101, 4), (101, 5), (102, 3), (102, 4)]
            .into_iter()
            .map(|(t, d)| ("ICDT".to_string(), "ISWC".to_string(), t, d))
            .collect();
        assert_eq!(got, expected);
        let rel = induced_relation(&answers, &NodeId::new("ICDT"), &NodeId::new("ISWC"));
        assert_eq!(rel.len(), 7);
        assert!(rel.contains(&(100.into(), 105.into())));
    }

    #[test]
    fn bob_attends() {
        let answers = run("(=Bob)/attends");
        assert_eq!(answers.len(), 6);
        assert!(answers.iter().all(|p| p.n2.as_str() == "ISWC" && p.d.is_zero()));
    }

    #[test]
    fn negating_everything_is_empty() {
        let g = load_graph("domain [0,3]\nAlice e Alice [0,1]\n").unwrap();
        assert!(eval_direct(&g, &parse_query("!((=Alice))").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn induced_relation_edge_cases() {
        assert!(induced_relation(&BTreeSet::new(), &NodeId::new("a"), &NodeId::new("b")).is_empty());
        let single = BTreeSet::from([PointTuple { n1: "a".into(), n2: "b".into(), t: 5.into(), d: 0.into() }]);
        assert_eq!(
            induced_relation(&single, &NodeId::new("a"), &NodeId::new("b")),
            BTreeSet::from([(5.into(), 5.into())])
        );
    }

    #[test]
    fn dense_graphs_are_rejected() {
        let g = load_graph("domain [0,1]\nmode dense\n").unwrap();
        assert_eq!(eval_direct(&g, &Trpq::label("e")), Err(OracleError::DenseMode));
    }

    #[test]
    fn unions_of_powers() {
        let g = load_graph("domain [0,4]\na e a [0,4]\n").unwrap();
        let q = |s: &str| eval_direct(&g, &parse_query(s).unwrap()).unwrap();
        assert_eq!(q("T[1,1][2,3]"), q("T[2,2] + T[3,3]"));
        assert_eq!(q("T[1,1][0,_]"), q("T[0,4]"));
        assert_eq!(q("T[1,1][0,0]"), q("(<=4)"));
        assert!(q("T(1,2)").is_empty());
    }
}
