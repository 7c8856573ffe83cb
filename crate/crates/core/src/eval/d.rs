use std::collections::{BTreeMap, BTreeSet};

use super::{Algebra, Env, EvalError};
use crate::compact::coalesce_d_tuples;
use crate::graph::{EdgeLabel, NodeId};
use crate::interval::{coalesce, Interval, TimePoint};
use crate::repr::{AnswerSet, DTuple, ReprKind};

/// Intermediate U^d answers. Zero-distance answers over a time interval
/// (edges, node filters) stay folded until a join or the final result
/// needs them as individual departure times, which keeps dense edge
/// validity intervals usable as long as they end up joined to a point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum DPart {
    /// `⟨n1, n2, t, 0⟩` for every `t ∈ tau`.
    Lazy { n1: NodeId, n2: NodeId, tau: Interval },
    Tuple(DTuple),
}

pub(crate) struct DAlgebra<'g> {
    pub env: Env<'g>,
}

impl DAlgebra<'_> {
    fn dense_interval_error(&self, tau: &Interval) -> EvalError {
        EvalError::infeasible(
            ReprKind::D,
            format!("dense time: answers at every departure time in {tau} need infinitely many U^d tuples"),
        )
    }

    /// Departure times of a folded part, one by one.
    fn expand(&self, tau: &Interval) -> Result<Vec<TimePoint>, EvalError> {
        if tau.is_point() {
            Ok(vec![tau.lo().clone()])
        } else if self.env.is_dense() {
            Err(self.dense_interval_error(tau))
        } else {
            Ok(tau.integer_points().collect())
        }
    }

    /// `⟨n1, n2, t, ((t + (δ' ⊕ δ)) ∩ τ_G) − t⟩`
    fn fused(&self, n1: &NodeId, n2: &NodeId, t: &TimePoint, reach: &Interval) -> Option<DTuple> {
        let slice = reach.shift(t).intersect(&self.env.domain)?.shift(&-t);
        Some(DTuple { n1: n1.clone(), n2: n2.clone(), t: t.clone(), delta: slice })
    }

    pub fn finish(&self, parts: BTreeSet<DPart>) -> Result<AnswerSet<DTuple>, EvalError> {
        let mut out = AnswerSet::new(self.env.mode);
        let zero = Interval::point(0);
        for part in parts {
            match part {
                DPart::Tuple(t) => {
                    out.insert(t);
                }
                DPart::Lazy { n1, n2, tau } => {
                    for t in self.expand(&tau)? {
                        out.insert(DTuple { n1: n1.clone(), n2: n2.clone(), t, delta: zero.clone() });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Algebra for DAlgebra<'_> {
    type Item = DPart;

    fn env(&self) -> &Env<'_> {
        &self.env
    }

    fn n1<'a>(&self, x: &'a DPart) -> &'a NodeId {
        match x {
            DPart::Lazy { n1, .. } => n1,
            DPart::Tuple(t) => &t.n1,
        }
    }

    fn n2<'a>(&self, x: &'a DPart) -> &'a NodeId {
        match x {
            DPart::Lazy { n2, .. } => n2,
            DPart::Tuple(t) => &t.n2,
        }
    }

    fn label(&self, label: &EdgeLabel) -> Result<Vec<DPart>, EvalError> {
        Ok(self
            .env
            .graph
            .edges_labelled(label)
            .flat_map(|(s, o, set)| {
                set.iter().map(|tau| DPart::Lazy { n1: s.clone(), n2: o.clone(), tau: tau.clone() })
            })
            .collect())
    }

    fn swap(&self, x: &DPart) -> DPart {
        match x {
            DPart::Lazy { n1, n2, tau } => DPart::Lazy { n1: n2.clone(), n2: n1.clone(), tau: tau.clone() },
            DPart::Tuple(t) => DPart::Tuple(DTuple { n1: t.n2.clone(), n2: t.n1.clone(), t: t.t.clone(), delta: t.delta.clone() }),
        }
    }

    fn node_times(&self, n: &NodeId, tau: Interval) -> DPart {
        DPart::Lazy { n1: n.clone(), n2: n.clone(), tau }
    }

    fn departures(&self, x: &DPart) -> Interval {
        match x {
            DPart::Lazy { tau, .. } => tau.clone(),
            DPart::Tuple(t) => Interval::point(t.t.clone()),
        }
    }

    /// `⟨n, n, t, ((t + δ) ∩ τ_G) − t⟩` for every departure time `t`.
    fn timenav(&self, delta: &Interval) -> Result<Vec<DPart>, EvalError> {
        let Some(delta) = self.env.interval(delta)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for t in self.expand(&self.env.domain)? {
            for n in &self.env.nodes {
                if let Some(x) = self.fused(n, n, &t, &delta) {
                    out.push(DPart::Tuple(x));
                }
            }
        }
        Ok(out)
    }

    fn join_pair(&self, a: &DPart, b: &DPart, out: &mut Vec<DPart>) {
        match (a, b) {
            (DPart::Lazy { n1, tau: t1, .. }, DPart::Lazy { n2, tau: t2, .. }) => {
                if let Some(tau) = t1.intersect(t2) {
                    out.push(DPart::Lazy { n1: n1.clone(), n2: n2.clone(), tau });
                }
            }
            (DPart::Lazy { n1, tau, .. }, DPart::Tuple(y)) => {
                if tau.contains(&y.t) {
                    out.push(DPart::Tuple(DTuple { n1: n1.clone(), ..y.clone() }));
                }
            }
            (DPart::Tuple(x), DPart::Lazy { n2, tau, .. }) => {
                if let Some(delta) = x.delta.intersect(&tau.shift(&-&x.t)) {
                    out.push(DPart::Tuple(DTuple { n2: n2.clone(), delta, ..x.clone() }));
                }
            }
            // ⟨n1, n3, t1, δ2 + (t2 − t1)⟩ when t2 − t1 ∈ δ1
            (DPart::Tuple(x), DPart::Tuple(y)) => {
                let gap = &y.t - &x.t;
                if x.delta.contains(&gap) {
                    out.push(DPart::Tuple(DTuple {
                        n1: x.n1.clone(),
                        n2: y.n2.clone(),
                        t: x.t.clone(),
                        delta: y.delta.shift(&gap),
                    }));
                }
            }
        }
    }

    fn fuse_timenav(&self, lhs: &BTreeSet<DPart>, delta: &Interval) -> Result<BTreeSet<DPart>, EvalError> {
        let Some(delta) = self.env.interval(delta)? else {
            return Ok(BTreeSet::new());
        };
        let mut out = BTreeSet::new();
        for part in lhs {
            match part {
                DPart::Lazy { n1, n2, tau } => {
                    for t in self.expand(tau)? {
                        out.extend(self.fused(n1, n2, &t, &delta).map(DPart::Tuple));
                    }
                }
                DPart::Tuple(x) => {
                    out.extend(self.fused(&x.n1, &x.n2, &x.t, &x.delta.msum(&delta)).map(DPart::Tuple));
                }
            }
        }
        Ok(out)
    }

    fn prepare(&self, set: &BTreeSet<DPart>) -> Option<BTreeSet<DPart>> {
        let mut folded: BTreeMap<(NodeId, NodeId), Vec<Interval>> = BTreeMap::new();
        let mut tuples = Vec::new();
        for part in set {
            match part {
                DPart::Lazy { n1, n2, tau } => folded.entry((n1.clone(), n2.clone())).or_default().push(tau.clone()),
                DPart::Tuple(t) => tuples.push(t.clone()),
            }
        }
        let mut out: BTreeSet<DPart> = coalesce_d_tuples(tuples, self.env.mode).into_iter().map(DPart::Tuple).collect();
        for ((n1, n2), taus) in folded {
            for tau in coalesce(taus, self.env.mode).into_vec() {
                out.insert(DPart::Lazy { n1: n1.clone(), n2: n2.clone(), tau });
            }
        }
        Some(out)
    }
}
