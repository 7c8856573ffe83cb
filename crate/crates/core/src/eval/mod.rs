//! Inductive evaluators producing compact answer sets.
//!
//! One generic driver handles the structural cases (union, repetition,
//! closure, test, negation, join chains) and each representation supplies
//! its base relations and pairwise join through [`Algebra`].

mod c;
mod d;
mod t;
mod td;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{EdgeLabel, NodeId, TemporalGraph};
use crate::interval::{complement, Delim, Interval, IntervalError, IntervalSet, TimeMode, TimePoint};
use crate::oracle::{eval_direct, OracleError};
use crate::query::Trpq;
use crate::repr::{AnswerSet, CTuple, DTuple, PointTuple, ReprKind, TDTuple, TTuple};

pub use c::join_c;
pub use td::join_td;

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOptions {
    /// Rounds of closure iteration before giving up.
    pub max_iterations: usize,
    /// Coalesce both operands before every join (U^t and U^d only).
    pub coalesce_intermediate: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_iterations: DEFAULT_MAX_ITERATIONS, coalesce_intermediate: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("representation {repr} is infeasible: {reason}")]
    Infeasible { repr: ReprKind, reason: String },
    #[error("query constant does not match the graph's time mode: {0}")]
    ModeMismatch(#[from] IntervalError),
    #[error("closure did not reach a fixpoint within {0} iterations")]
    IterationCap(usize),
    #[error("not a valid cropped rectangle: {0}")]
    InvalidTuple(String),
    #[error(transparent)]
    Direct(#[from] OracleError),
}

impl EvalError {
    fn infeasible(repr: ReprKind, reason: impl Into<String>) -> EvalError {
        EvalError::Infeasible { repr, reason: reason.into() }
    }
}

/// Shared read-only context.
pub(crate) struct Env<'g> {
    pub graph: &'g TemporalGraph,
    pub mode: TimeMode,
    pub domain: Interval,
    pub nodes: Vec<NodeId>,
    pub opts: EvalOptions,
}

impl<'g> Env<'g> {
    fn new(graph: &'g TemporalGraph, opts: &EvalOptions) -> Self {
        Env {
            graph,
            mode: graph.mode(),
            domain: graph.domain().clone(),
            nodes: graph.nodes().iter().cloned().collect(),
            opts: opts.clone(),
        }
    }

    /// A query interval in the graph's mode; `None` if it has no point there.
    pub fn interval(&self, i: &Interval) -> Result<Option<Interval>, EvalError> {
        self.mode.check_point(i.lo())?;
        self.mode.check_point(i.hi())?;
        Ok(i.normalize(self.mode).ok())
    }

    /// `τ_G ∩ (−∞, k]`
    pub fn up_to(&self, k: &TimePoint) -> Result<Option<Interval>, EvalError> {
        self.mode.check_point(k)?;
        Ok(Interval::new(self.domain.lo_delim(), self.domain.lo().clone(), k.clone(), Delim::Closed)
            .ok()
            .and_then(|i| i.intersect(&self.domain)))
    }

    pub fn is_dense(&self) -> bool {
        self.mode == TimeMode::Dense
    }
}

/// The per-representation operations the generic driver needs.
pub(crate) trait Algebra {
    type Item: Clone + Ord + std::fmt::Debug;

    fn env(&self) -> &Env<'_>;

    fn n1<'a>(&self, x: &'a Self::Item) -> &'a NodeId;
    fn n2<'a>(&self, x: &'a Self::Item) -> &'a NodeId;

    /// Base relation of an edge label.
    fn label(&self, label: &EdgeLabel) -> Result<Vec<Self::Item>, EvalError>;

    /// Converse of a zero-distance tuple.
    fn swap(&self, x: &Self::Item) -> Self::Item;

    /// `⟨n, n, t, 0⟩` for every `t ∈ tau`.
    fn node_times(&self, n: &NodeId, tau: Interval) -> Self::Item;

    /// Departure times of a tuple, as an interval.
    fn departures(&self, x: &Self::Item) -> Interval;

    /// Standalone `T_δ`.
    fn timenav(&self, delta: &Interval) -> Result<Vec<Self::Item>, EvalError>;

    fn join_pair(&self, a: &Self::Item, b: &Self::Item, out: &mut Vec<Self::Item>);

    /// `lhs / T_δ`; representations with a specialised rule override this.
    fn fuse_timenav(&self, lhs: &BTreeSet<Self::Item>, delta: &Interval) -> Result<BTreeSet<Self::Item>, EvalError> {
        let nav: BTreeSet<_> = self.timenav(delta)?.into_iter().collect();
        Ok(self.join_sets(lhs, &nav))
    }

    /// Hook applied to join operands when intermediate coalescing is on.
    fn prepare(&self, set: &BTreeSet<Self::Item>) -> Option<BTreeSet<Self::Item>> {
        let _ = set;
        None
    }

    /// Hash join on the shared node.
    fn join_sets(&self, lhs: &BTreeSet<Self::Item>, rhs: &BTreeSet<Self::Item>) -> BTreeSet<Self::Item> {
        let prepared = if self.env().opts.coalesce_intermediate {
            (self.prepare(lhs), self.prepare(rhs))
        } else {
            (None, None)
        };
        let lhs = prepared.0.as_ref().unwrap_or(lhs);
        let rhs = prepared.1.as_ref().unwrap_or(rhs);
        let mut index: HashMap<&NodeId, Vec<&Self::Item>> = HashMap::new();
        for b in rhs {
            index.entry(self.n1(b)).or_default().push(b);
        }
        let mut buf = Vec::new();
        for a in lhs {
            if let Some(bs) = index.get(self.n2(a)) {
                for b in bs {
                    self.join_pair(a, b, &mut buf);
                }
            }
        }
        buf.into_iter().collect()
    }
}

fn identity<A: Algebra>(alg: &A) -> BTreeSet<A::Item> {
    let env = alg.env();
    env.nodes.iter().map(|n| alg.node_times(n, env.domain.clone())).collect()
}

fn flatten_join<'q>(q: &'q Trpq, out: &mut Vec<&'q Trpq>) {
    match q {
        Trpq::Join(l, r) => {
            flatten_join(l, out);
            flatten_join(r, out);
        }
        other => out.push(other),
    }
}

pub(crate) fn evaluate<A: Algebra>(alg: &A, q: &Trpq) -> Result<BTreeSet<A::Item>, EvalError> {
    let env = alg.env();
    Ok(match q {
        Trpq::Label(l) => alg.label(l)?.into_iter().collect(),
        Trpq::Inverse(e) => evaluate(alg, e)?.iter().map(|x| alg.swap(x)).collect(),
        Trpq::Pred(p) => env
            .nodes
            .iter()
            .filter(|n| p.holds(n))
            .map(|n| alg.node_times(n, env.domain.clone()))
            .collect(),
        Trpq::LeqTime(k) => match env.up_to(k)? {
            Some(tau) => env.nodes.iter().map(|n| alg.node_times(n, tau.clone())).collect(),
            None => BTreeSet::new(),
        },
        Trpq::TimeNav(delta) => alg.timenav(delta)?.into_iter().collect(),
        Trpq::Test(inner) => evaluate(alg, inner)?
            .iter()
            .map(|x| alg.node_times(alg.n1(x), alg.departures(x)))
            .collect(),
        Trpq::Not(inner) => {
            let inner = evaluate(alg, inner)?;
            let mut covered: HashMap<&NodeId, Vec<Interval>> = HashMap::new();
            for x in &inner {
                covered.entry(alg.n1(x)).or_default().push(alg.departures(x));
            }
            let mut out = BTreeSet::new();
            for n in &env.nodes {
                let set: IntervalSet = covered.remove(n).unwrap_or_default().into_iter().collect();
                for gap in complement(&set, &env.domain, env.mode)?.iter() {
                    out.insert(alg.node_times(n, gap.clone()));
                }
            }
            out
        }
        Trpq::Join(..) => {
            let mut parts = Vec::new();
            flatten_join(q, &mut parts);
            let mut acc = evaluate(alg, parts[0])?;
            for part in &parts[1..] {
                acc = match part {
                    Trpq::TimeNav(delta) => alg.fuse_timenav(&acc, delta)?,
                    other => alg.join_sets(&acc, &evaluate(alg, other)?),
                };
            }
            acc
        }
        Trpq::Union(l, r) => {
            let mut out = evaluate(alg, l)?;
            out.extend(evaluate(alg, r)?);
            out
        }
        Trpq::Repeat { inner, min, max } => {
            let base = evaluate(alg, inner)?;
            let mut out = BTreeSet::new();
            let mut power = identity(alg);
            for k in 0..=*max {
                if k > 0 {
                    power = alg.join_sets(&power, &base);
                }
                if k >= *min {
                    out.extend(power.iter().cloned());
                }
            }
            out
        }
        Trpq::RepeatUnbounded { inner, min } => {
            let base = evaluate(alg, inner)?;
            let mut power = identity(alg);
            for _ in 0..*min {
                power = alg.join_sets(&power, &base);
            }
            let mut out = power.clone();
            let mut frontier = power;
            let mut rounds = 0;
            while !frontier.is_empty() {
                rounds += 1;
                if rounds > env.opts.max_iterations {
                    return Err(EvalError::IterationCap(env.opts.max_iterations));
                }
                let next: BTreeSet<_> =
                    alg.join_sets(&frontier, &base).into_iter().filter(|x| !out.contains(x)).collect();
                out.extend(next.iter().cloned());
                frontier = next;
            }
            out
        }
    })
}

/// `eval^t⟦q⟧`. Dense graphs are supported only when every `T_δ` has a
/// singleton `δ`.
pub fn eval_t(graph: &TemporalGraph, q: &Trpq, opts: &EvalOptions) -> Result<AnswerSet<TTuple>, EvalError> {
    let env = Env::new(graph, opts);
    let alg = t::TAlgebra { env };
    Ok(AnswerSet::from_tuples(graph.mode(), evaluate(&alg, q)?))
}

/// `eval^d⟦q⟧`. `q/T_δ` is evaluated with the fused rule. Over dense time
/// the result must not contain a time interval of departures with
/// distance zero, nor a standalone non-trailing `T_δ`.
pub fn eval_d(graph: &TemporalGraph, q: &Trpq, opts: &EvalOptions) -> Result<AnswerSet<DTuple>, EvalError> {
    let env = Env::new(graph, opts);
    let alg = d::DAlgebra { env };
    let parts = evaluate(&alg, q)?;
    alg.finish(parts)
}

/// `eval^td⟦q⟧`. Discrete time only.
pub fn eval_td(graph: &TemporalGraph, q: &Trpq, opts: &EvalOptions) -> Result<AnswerSet<TDTuple>, EvalError> {
    if graph.mode() == TimeMode::Dense {
        return Err(EvalError::infeasible(
            ReprKind::TD,
            "dense time: U^td may require infinitely many rectangles",
        ));
    }
    let env = Env::new(graph, opts);
    let alg = td::TdAlgebra { env };
    Ok(AnswerSet::from_tuples(graph.mode(), evaluate(&alg, q)?))
}

/// `eval^c⟦q⟧`. Works over discrete and dense time. Every returned tuple
/// is in canonical form, so structurally distinct tuples denote distinct
/// regions.
pub fn eval_c(graph: &TemporalGraph, q: &Trpq, opts: &EvalOptions) -> Result<AnswerSet<CTuple>, EvalError> {
    let env = Env::new(graph, opts);
    let alg = c::CAlgebra { env };
    Ok(AnswerSet::from_tuples(graph.mode(), evaluate(&alg, q)?))
}

/// Answers in any representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answers {
    Point(AnswerSet<PointTuple>),
    T(AnswerSet<TTuple>),
    D(AnswerSet<DTuple>),
    TD(AnswerSet<TDTuple>),
    C(AnswerSet<CTuple>),
}

impl Answers {
    pub fn kind(&self) -> ReprKind {
        match self {
            Answers::Point(_) => ReprKind::Point,
            Answers::T(_) => ReprKind::T,
            Answers::D(_) => ReprKind::D,
            Answers::TD(_) => ReprKind::TD,
            Answers::C(_) => ReprKind::C,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Answers::Point(s) => s.len(),
            Answers::T(s) => s.len(),
            Answers::D(s) => s.len(),
            Answers::TD(s) => s.len(),
            Answers::C(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn render(&self) -> String {
        match self {
            Answers::Point(s) => s.render(),
            Answers::T(s) => s.render(),
            Answers::D(s) => s.render(),
            Answers::TD(s) => s.render(),
            Answers::C(s) => s.render(),
        }
    }

    /// Every answer as a cropped rectangle.
    pub fn to_ctuples(&self) -> Vec<CTuple> {
        use crate::repr::AnswerTuple;
        match self {
            Answers::Point(s) => s.iter().map(AnswerTuple::to_ctuple).collect(),
            Answers::T(s) => s.iter().map(AnswerTuple::to_ctuple).collect(),
            Answers::D(s) => s.iter().map(AnswerTuple::to_ctuple).collect(),
            Answers::TD(s) => s.iter().map(AnswerTuple::to_ctuple).collect(),
            Answers::C(s) => s.iter().cloned().collect(),
        }
    }
}

/// Dispatches on `repr`; `Point` uses direct evaluation.
pub fn eval_repr(graph: &TemporalGraph, q: &Trpq, repr: ReprKind, opts: &EvalOptions) -> Result<Answers, EvalError> {
    Ok(match repr {
        ReprKind::Point => {
            if graph.mode() == TimeMode::Dense {
                return Err(EvalError::infeasible(
                    ReprKind::Point,
                    "dense time: point answers are uncountable",
                ));
            }
            Answers::Point(AnswerSet::from_tuples(graph.mode(), eval_direct(graph, q)?))
        }
        ReprKind::T => Answers::T(eval_t(graph, q, opts)?),
        ReprKind::D => Answers::D(eval_d(graph, q, opts)?),
        ReprKind::TD => Answers::TD(eval_td(graph, q, opts)?),
        ReprKind::C => Answers::C(eval_c(graph, q, opts)?),
    })
}
