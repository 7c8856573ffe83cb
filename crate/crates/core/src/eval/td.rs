use super::{Algebra, Env, EvalError};
use crate::graph::{EdgeLabel, NodeId};
use crate::interval::{Interval, TimeMode, TimePoint};
use crate::repr::{ReprKind, TDTuple};

/// `u1 ⋈̄ u2` in U^td: one single-time rectangle per departure time.
///
/// With `τ2' = (τ1 ⊕ δ1) ∩ τ2`, the departures are
/// `τ = (τ2' ⊖ δ1) ∩ τ1` and each `t ∈ τ` yields `⟨n1, n4, [t,t], δ(t) ⊕ δ2⟩`
/// where `δ(t)` crops `δ1` by `b = b_{τ2'} − b_{δ1}` and
/// `e = e_{τ2'} − e_{δ1}`. Discrete time only.
pub fn join_td(u1: &TDTuple, u2: &TDTuple, mode: TimeMode) -> Result<Vec<TDTuple>, EvalError> {
    if mode == TimeMode::Dense {
        return Err(EvalError::infeasible(ReprKind::TD, "dense time: U^td may require infinitely many rectangles"));
    }
    let mut out = Vec::new();
    join_into(u1, u2, &mut out);
    Ok(out)
}

fn join_into(u1: &TDTuple, u2: &TDTuple, out: &mut Vec<TDTuple>) {
    if u1.n2 != u2.n1 {
        return;
    }
    let Some(reached) = u1.tau.msum(&u1.delta).intersect(&u2.tau) else {
        return;
    };
    let Some(tau) = reached.mdiff(&u1.delta).intersect(&u1.tau) else {
        return;
    };
    let b = reached.lo() - u1.delta.lo();
    let e = reached.hi() - u1.delta.hi();
    let zero = TimePoint::zero();
    for t in tau.integer_points() {
        let lo = u1.delta.lo() + &(&b - &t).max(zero.clone());
        let hi = u1.delta.hi() - &(&t - &e).max(zero.clone());
        if let Ok(slice) = Interval::closed(lo, hi) {
            out.push(TDTuple {
                n1: u1.n1.clone(),
                n2: u2.n2.clone(),
                tau: Interval::point(t),
                delta: slice.msum(&u2.delta),
            });
        }
    }
}

pub(crate) struct TdAlgebra<'g> {
    pub env: Env<'g>,
}

impl Algebra for TdAlgebra<'_> {
    type Item = TDTuple;

    fn env(&self) -> &Env<'_> {
        &self.env
    }

    fn n1<'a>(&self, x: &'a TDTuple) -> &'a NodeId {
        &x.n1
    }

    fn n2<'a>(&self, x: &'a TDTuple) -> &'a NodeId {
        &x.n2
    }

    fn label(&self, label: &EdgeLabel) -> Result<Vec<TDTuple>, EvalError> {
        Ok(self
            .env
            .graph
            .edges_labelled(label)
            .flat_map(|(s, o, set)| set.iter().map(|tau| rect(s, o, tau.clone(), Interval::point(0))))
            .collect())
    }

    fn swap(&self, x: &TDTuple) -> TDTuple {
        rect(&x.n2, &x.n1, x.tau.clone(), x.delta.clone())
    }

    fn node_times(&self, n: &NodeId, tau: Interval) -> TDTuple {
        rect(n, n, tau, Interval::point(0))
    }

    fn departures(&self, x: &TDTuple) -> Interval {
        x.tau.clone()
    }

    /// `⟨n, n, τ_G, δ⟩ ⋈̄ ⟨n, n, τ_G, [0,0]⟩`
    fn timenav(&self, delta: &Interval) -> Result<Vec<TDTuple>, EvalError> {
        let Some(delta) = self.env.interval(delta)? else {
            return Ok(Vec::new());
        };
        let domain = &self.env.domain;
        let mut out = Vec::new();
        for n in &self.env.nodes {
            let seed = rect(n, n, domain.clone(), delta.clone());
            join_into(&seed, &self.node_times(n, domain.clone()), &mut out);
        }
        Ok(out)
    }

    fn join_pair(&self, a: &TDTuple, b: &TDTuple, out: &mut Vec<TDTuple>) {
        join_into(a, b, out);
    }
}

fn rect(n1: &NodeId, n2: &NodeId, tau: Interval, delta: Interval) -> TDTuple {
    TDTuple { n1: n1.clone(), n2: n2.clone(), tau, delta }
}
