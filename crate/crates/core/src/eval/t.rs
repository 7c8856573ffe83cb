use std::collections::BTreeSet;

use super::{Algebra, Env, EvalError};
use crate::compact::coalesce_t_tuples;
use crate::graph::{EdgeLabel, NodeId};
use crate::interval::Interval;
use crate::repr::{ReprKind, TTuple};

pub(crate) struct TAlgebra<'g> {
    pub env: Env<'g>,
}

impl Algebra for TAlgebra<'_> {
    type Item = TTuple;

    fn env(&self) -> &Env<'_> {
        &self.env
    }

    fn n1<'a>(&self, x: &'a TTuple) -> &'a NodeId {
        &x.n1
    }

    fn n2<'a>(&self, x: &'a TTuple) -> &'a NodeId {
        &x.n2
    }

    fn label(&self, label: &EdgeLabel) -> Result<Vec<TTuple>, EvalError> {
        Ok(self
            .env
            .graph
            .edges_labelled(label)
            .flat_map(|(s, o, set)| {
                set.iter().map(|tau| TTuple { n1: s.clone(), n2: o.clone(), tau: tau.clone(), d: 0.into() })
            })
            .collect())
    }

    fn swap(&self, x: &TTuple) -> TTuple {
        TTuple { n1: x.n2.clone(), n2: x.n1.clone(), tau: x.tau.clone(), d: x.d.clone() }
    }

    fn node_times(&self, n: &NodeId, tau: Interval) -> TTuple {
        TTuple { n1: n.clone(), n2: n.clone(), tau, d: 0.into() }
    }

    fn departures(&self, x: &TTuple) -> Interval {
        x.tau.clone()
    }

    /// One tuple `⟨n, n, τ_G ∩ (τ_G − d), d⟩` per node and distance.
    fn timenav(&self, delta: &Interval) -> Result<Vec<TTuple>, EvalError> {
        let Some(delta) = self.env.interval(delta)? else {
            return Ok(Vec::new());
        };
        if self.env.is_dense() && !delta.is_point() {
            return Err(EvalError::infeasible(
                ReprKind::T,
                format!("dense time: T{delta} spans infinitely many distances"),
            ));
        }
        let distances: Vec<_> = if delta.is_point() { vec![delta.lo().clone()] } else { delta.integer_points().collect() };
        let domain = &self.env.domain;
        let mut out = Vec::new();
        for d in distances {
            if let Some(tau) = domain.intersect(&domain.shift(&-&d)) {
                for n in &self.env.nodes {
                    out.push(TTuple { n1: n.clone(), n2: n.clone(), tau: tau.clone(), d: d.clone() });
                }
            }
        }
        Ok(out)
    }

    /// `⟨n1, n3, ((τ1 + d1) ∩ τ2) − d1, d1 + d2⟩`
    fn join_pair(&self, a: &TTuple, b: &TTuple, out: &mut Vec<TTuple>) {
        if let Some(meet) = a.tau.shift(&a.d).intersect(&b.tau) {
            out.push(TTuple { n1: a.n1.clone(), n2: b.n2.clone(), tau: meet.shift(&-&a.d), d: &a.d + &b.d });
        }
    }

    fn prepare(&self, set: &BTreeSet<TTuple>) -> Option<BTreeSet<TTuple>> {
        Some(coalesce_t_tuples(set.iter().cloned(), self.env.mode))
    }
}
