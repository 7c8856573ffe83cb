use super::{Algebra, Env, EvalError};
use crate::graph::{EdgeLabel, NodeId};
use crate::interval::Interval;
use crate::repr::CTuple;

/// `u1 ⋈̄ u2` in U^c: the composition of the two induced relations, which is
/// again a single cropped rectangle (or nothing).
///
/// With arrival windows `α1`, `α2` and `β = α1 ∩ τ2` (the instants where a
/// path can switch from `u1` to `u2`), the result has departures
/// `τ1 ∩ (β ⊖ δ1)`, distances `δ1 ⊕ δ2` and arrival window
/// `(β ⊕ δ2) ∩ α2`. The result is returned in canonical form.
pub fn join_c(u1: &CTuple, u2: &CTuple) -> Result<Option<CTuple>, EvalError> {
    for u in [u1, u2] {
        if !u.is_valid() {
            return Err(EvalError::InvalidTuple(u.to_string()));
        }
    }
    Ok(join(u1, u2))
}

fn join(u1: &CTuple, u2: &CTuple) -> Option<CTuple> {
    if u1.n2 != u2.n1 {
        return None;
    }
    let beta = u1.window()?.intersect(&u2.tau)?;
    let tau = u1.tau.intersect(&beta.mdiff(&u1.delta))?;
    let alpha = beta.msum(&u2.delta).intersect(&u2.window()?)?;
    let delta = u1.delta.msum(&u2.delta);
    CTuple::from_window(u1.n1.clone(), u2.n2.clone(), tau, delta, &alpha).canonical()
}

pub(crate) struct CAlgebra<'g> {
    pub env: Env<'g>,
}

impl CAlgebra<'_> {
    fn rect(&self, n1: &NodeId, n2: &NodeId, tau: Interval, delta: Interval) -> CTuple {
        CTuple::uncropped(n1.clone(), n2.clone(), tau, delta).canonical().expect("rectangles are nonempty")
    }
}

impl Algebra for CAlgebra<'_> {
    type Item = CTuple;

    fn env(&self) -> &Env<'_> {
        &self.env
    }

    fn n1<'a>(&self, x: &'a CTuple) -> &'a NodeId {
        &x.n1
    }

    fn n2<'a>(&self, x: &'a CTuple) -> &'a NodeId {
        &x.n2
    }

    fn label(&self, label: &EdgeLabel) -> Result<Vec<CTuple>, EvalError> {
        Ok(self
            .env
            .graph
            .edges_labelled(label)
            .flat_map(|(s, o, set)| set.iter().map(|tau| self.rect(s, o, tau.clone(), Interval::point(0))))
            .collect())
    }

    fn swap(&self, x: &CTuple) -> CTuple {
        CTuple { n1: x.n2.clone(), n2: x.n1.clone(), ..x.clone() }
    }

    fn node_times(&self, n: &NodeId, tau: Interval) -> CTuple {
        self.rect(n, n, tau, Interval::point(0))
    }

    fn departures(&self, x: &CTuple) -> Interval {
        x.tau.clone()
    }

    /// `⟨n, n, τ_G, δ, b_{τ_G}, e_{τ_G}⟩ ⋈̄ ⟨n, n, τ_G, [0,0], b_{τ_G}, e_{τ_G}⟩`
    fn timenav(&self, delta: &Interval) -> Result<Vec<CTuple>, EvalError> {
        let Some(delta) = self.env.interval(delta)? else {
            return Ok(Vec::new());
        };
        let domain = &self.env.domain;
        let mut out = Vec::new();
        for n in &self.env.nodes {
            let seed = CTuple::new(n.clone(), n.clone(), domain.clone(), delta.clone(), domain.lo().clone(), domain.hi().clone());
            let stay = self.node_times(n, domain.clone());
            out.extend(join(&seed, &stay));
        }
        Ok(out)
    }

    fn join_pair(&self, a: &CTuple, b: &CTuple, out: &mut Vec<CTuple>) {
        out.extend(join(a, b));
    }
}
