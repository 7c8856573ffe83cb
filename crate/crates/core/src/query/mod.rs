//! TRPQ abstract syntax, pretty printing and the concrete-syntax parser.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! q1 + q2          union
//! q1 / q2          join
//! q^-  q[m,n]  q[m,_]   postfix inverse and repetition
//! label  T[a,b]  (=X)  (!=X)  (<=k)  ?(q)  !(node)  (q)
//! ```

mod parser;

use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeLabel, NodeId};
use crate::interval::{Interval, TimePoint};

pub use parser::parse_query;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: negation applies only to node expressions")]
    NotANode { column: usize },
    #[error("column {column}: inverse applies only to edge expressions")]
    NotAnEdge { column: usize },
    #[error("column {column}: repetition [{min},{max}] has min > max")]
    BadRepetition { column: usize, min: u32, max: u32 },
    #[error("power is defined for k >= 1, got 0")]
    ZeroPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredKind {
    Equals,
    NotEquals,
}

/// Node-local predicate: `(=X)` or `(!=X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodePredicate {
    pub kind: PredKind,
    pub target: NodeId,
}

impl NodePredicate {
    pub fn holds(&self, n: &NodeId) -> bool {
        match self.kind {
            PredKind::Equals => n == &self.target,
            PredKind::NotEquals => n != &self.target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Trpq {
    Label(EdgeLabel),
    /// Only wraps edge forms (`Label` or `Inverse`).
    Inverse(Box<Trpq>),
    Pred(NodePredicate),
    LeqTime(TimePoint),
    TimeNav(Interval),
    Test(Box<Trpq>),
    /// Only wraps node forms.
    Not(Box<Trpq>),
    Join(Box<Trpq>, Box<Trpq>),
    Union(Box<Trpq>, Box<Trpq>),
    Repeat { inner: Box<Trpq>, min: u32, max: u32 },
    RepeatUnbounded { inner: Box<Trpq>, min: u32 },
}

impl Trpq {
    pub fn label(name: &str) -> Trpq {
        Trpq::Label(EdgeLabel::new(name))
    }

    pub fn inverse(edge: Trpq) -> Result<Trpq, QueryError> {
        if !edge.is_edge() {
            return Err(QueryError::NotAnEdge { column: 0 });
        }
        Ok(Trpq::Inverse(Box::new(edge)))
    }

    pub fn eq(name: &str) -> Trpq {
        Trpq::Pred(NodePredicate { kind: PredKind::Equals, target: NodeId::new(name) })
    }

    pub fn ne(name: &str) -> Trpq {
        Trpq::Pred(NodePredicate { kind: PredKind::NotEquals, target: NodeId::new(name) })
    }

    pub fn test(inner: Trpq) -> Trpq {
        Trpq::Test(Box::new(inner))
    }

    #[allow(clippy::should_implement_trait)] // fallible, so not `ops::Not`
    pub fn not(node: Trpq) -> Result<Trpq, QueryError> {
        if !node.is_node() {
            return Err(QueryError::NotANode { column: 0 });
        }
        Ok(Trpq::Not(Box::new(node)))
    }

    pub fn join(lhs: Trpq, rhs: Trpq) -> Trpq {
        Trpq::Join(Box::new(lhs), Box::new(rhs))
    }

    pub fn union(lhs: Trpq, rhs: Trpq) -> Trpq {
        Trpq::Union(Box::new(lhs), Box::new(rhs))
    }

    pub fn repeat(inner: Trpq, min: u32, max: u32) -> Result<Trpq, QueryError> {
        if min > max {
            return Err(QueryError::BadRepetition { column: 0, min, max });
        }
        Ok(Trpq::Repeat { inner: Box::new(inner), min, max })
    }

    pub fn repeat_unbounded(inner: Trpq, min: u32) -> Trpq {
        Trpq::RepeatUnbounded { inner: Box::new(inner), min }
    }

    /// `label` or `edge^-`.
    pub fn is_edge(&self) -> bool {
        match self {
            Trpq::Label(_) => true,
            Trpq::Inverse(inner) => inner.is_edge(),
            _ => false,
        }
    }

    /// `pred`, `<=k`, `?q` or `!node`.
    pub fn is_node(&self) -> bool {
        matches!(self, Trpq::Pred(_) | Trpq::LeqTime(_) | Trpq::Test(_) | Trpq::Not(_))
    }

    /// Height of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().map(Trpq::depth).max().unwrap_or(0)
    }

    pub fn children(&self) -> impl Iterator<Item = &Trpq> {
        let (a, b): (Option<&Trpq>, Option<&Trpq>) = match self {
            Trpq::Label(_) | Trpq::Pred(_) | Trpq::LeqTime(_) | Trpq::TimeNav(_) => (None, None),
            Trpq::Inverse(q) | Trpq::Test(q) | Trpq::Not(q) => (Some(q), None),
            Trpq::Repeat { inner, .. } | Trpq::RepeatUnbounded { inner, .. } => (Some(inner), None),
            Trpq::Join(l, r) | Trpq::Union(l, r) => (Some(l), Some(r)),
        };
        a.into_iter().chain(b)
    }

    /// Whether the query contains `[m,_]`.
    pub fn is_star_free(&self) -> bool {
        !matches!(self, Trpq::RepeatUnbounded { .. }) && self.children().all(Trpq::is_star_free)
    }

    /// Every time point mentioned by `T_δ` or `<=k`.
    pub fn time_constants(&self) -> Vec<TimePoint> {
        let mut out = Vec::new();
        self.visit(&mut |q| match q {
            Trpq::LeqTime(k) => out.push(k.clone()),
            Trpq::TimeNav(d) => {
                out.push(d.lo().clone());
                out.push(d.hi().clone());
            }
            _ => {}
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Trpq)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Rebuilds the query with every time constant multiplied by `factor`.
    pub fn scaled(&self, factor: i64) -> Trpq {
        let s = |q: &Trpq| Box::new(q.scaled(factor));
        match self {
            Trpq::LeqTime(k) => Trpq::LeqTime(k.scale(factor)),
            Trpq::TimeNav(d) => Trpq::TimeNav(d.scale(factor)),
            Trpq::Label(_) | Trpq::Pred(_) => self.clone(),
            Trpq::Inverse(q) => Trpq::Inverse(s(q)),
            Trpq::Test(q) => Trpq::Test(s(q)),
            Trpq::Not(q) => Trpq::Not(s(q)),
            Trpq::Join(l, r) => Trpq::Join(s(l), s(r)),
            Trpq::Union(l, r) => Trpq::Union(s(l), s(r)),
            Trpq::Repeat { inner, min, max } => Trpq::Repeat { inner: s(inner), min: *min, max: *max },
            Trpq::RepeatUnbounded { inner, min } => Trpq::RepeatUnbounded { inner: s(inner), min: *min },
        }
    }
}

/// `q^1 = q`, `q^{j+1} = q^j / q`.
pub fn power(q: &Trpq, k: u32) -> Result<Trpq, QueryError> {
    if k == 0 {
        return Err(QueryError::ZeroPower);
    }
    let mut acc = q.clone();
    for _ in 1..k {
        acc = Trpq::join(acc, q.clone());
    }
    Ok(acc)
}

const PREC_UNION: u8 = 0;
const PREC_JOIN: u8 = 1;
const PREC_POSTFIX: u8 = 2;

fn write_prec(q: &Trpq, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match q {
        Trpq::Union(l, r) => {
            if ctx > PREC_UNION {
                f.write_str("(")?;
            }
            write_prec(l, PREC_UNION, f)?;
            f.write_str(" + ")?;
            write_prec(r, PREC_JOIN, f)?;
            if ctx > PREC_UNION {
                f.write_str(")")?;
            }
            Ok(())
        }
        Trpq::Join(l, r) => {
            if ctx > PREC_JOIN {
                f.write_str("(")?;
            }
            write_prec(l, PREC_JOIN, f)?;
            f.write_str("/")?;
            write_prec(r, PREC_POSTFIX, f)?;
            if ctx > PREC_JOIN {
                f.write_str(")")?;
            }
            Ok(())
        }
        // `T` alone is a label, but `T[..]` would read as navigation.
        Trpq::Label(l) if l.as_str() == "T" => f.write_str("(T)"),
        Trpq::Label(l) => write!(f, "{l}"),
        Trpq::Inverse(e) => {
            write_prec(e, PREC_POSTFIX, f)?;
            f.write_str("^-")
        }
        Trpq::Pred(p) => match p.kind {
            PredKind::Equals => write!(f, "(={})", p.target),
            PredKind::NotEquals => write!(f, "(!={})", p.target),
        },
        Trpq::LeqTime(k) => write!(f, "(<={k})"),
        Trpq::TimeNav(d) => write!(f, "T{d}"),
        Trpq::Test(q) => {
            f.write_str("?(")?;
            write_prec(q, PREC_UNION, f)?;
            f.write_str(")")
        }
        Trpq::Not(q) => {
            f.write_str("!(")?;
            write_prec(q, PREC_UNION, f)?;
            f.write_str(")")
        }
        Trpq::Repeat { inner, min, max } => {
            write_prec(inner, PREC_POSTFIX, f)?;
            write!(f, "[{min},{max}]")
        }
        Trpq::RepeatUnbounded { inner, min } => {
            write_prec(inner, PREC_POSTFIX, f)?;
            write!(f, "[{min},_]")
        }
    }
}

/// Minimal-parenthesis rendering; `parse_query` of the output gives back an
/// equal tree.
impl fmt::Display for Trpq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, PREC_UNION, f)
    }
}
