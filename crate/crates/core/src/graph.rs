//! Temporal graphs: a bounded effective domain plus triples annotated with
//! validity intervals, and the flat-file loader.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::interval::{coalesce, Interval, IntervalError, IntervalSet, TimeMode};

/// A node identifier. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(Arc<str>);

/// An edge label. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel(Arc<str>);

macro_rules! name_type {
    ($ty:ident) => {
        impl $ty {
            pub fn new(name: &str) -> Self {
                assert!(!name.is_empty(), concat!(stringify!($ty), " must be nonempty"));
                $ty(Arc::from(name))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty::new(s)
            }
        }
    };
}

name_type!(NodeId);
name_type!(EdgeLabel);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: NodeId,
    pub predicate: EdgeLabel,
    pub object: NodeId,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validity interval {interval} of {triple} is outside the domain {domain}")]
    OutsideDomain { triple: String, interval: String, domain: String },
    #[error("missing `domain` header")]
    MissingDomain,
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// `G = ⟨τ_G, F_G, val⟩`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    mode: TimeMode,
    domain: Interval,
    facts: BTreeMap<Triple, IntervalSet>,
    nodes: BTreeSet<NodeId>,
}

/// Incremental construction with validation at [`GraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    mode: TimeMode,
    domain: Interval,
    facts: Vec<(Triple, Interval)>,
}

impl GraphBuilder {
    pub fn new(mode: TimeMode, domain: Interval) -> Self {
        GraphBuilder { mode, domain, facts: Vec::new() }
    }

    pub fn fact(mut self, subject: &str, predicate: &str, object: &str, validity: Interval) -> Self {
        self.add(subject, predicate, object, validity);
        self
    }

    pub fn add(&mut self, subject: &str, predicate: &str, object: &str, validity: Interval) {
        let triple = Triple { subject: NodeId::new(subject), predicate: EdgeLabel::new(predicate), object: NodeId::new(object) };
        self.facts.push((triple, validity));
    }

    pub fn build(self) -> Result<TemporalGraph, GraphError> {
        let mode = self.mode;
        let domain = self.domain.normalize(mode)?;
        let mut grouped: BTreeMap<Triple, Vec<Interval>> = BTreeMap::new();
        for (triple, validity) in self.facts {
            let validity = validity.normalize(mode)?;
            if !validity.is_subset(&domain) {
                return Err(GraphError::OutsideDomain {
                    triple: triple.to_string(),
                    interval: validity.to_string(),
                    domain: domain.to_string(),
                });
            }
            grouped.entry(triple).or_default().push(validity);
        }
        let mut nodes = BTreeSet::new();
        let facts = grouped
            .into_iter()
            .map(|(triple, intervals)| {
                nodes.insert(triple.subject.clone());
                nodes.insert(triple.object.clone());
                (triple, coalesce(intervals, mode))
            })
            .collect();
        Ok(TemporalGraph { mode, domain, facts, nodes })
    }
}

impl TemporalGraph {
    pub fn builder(mode: TimeMode, domain: Interval) -> GraphBuilder {
        GraphBuilder::new(mode, domain)
    }

    pub fn mode(&self) -> TimeMode {
        self.mode
    }

    /// τ_G
    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// `val`, as coalesced validity sets.
    pub fn facts(&self) -> impl Iterator<Item = (&Triple, &IntervalSet)> {
        self.facts.iter()
    }

    pub fn validity(&self, triple: &Triple) -> Option<&IntervalSet> {
        self.facts.get(triple)
    }

    pub fn triple_count(&self) -> usize {
        self.facts.len()
    }

    /// N_G: every node occurring as subject or object.
    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    /// Facts whose predicate is `label`, as `(subject, object, validity)`.
    pub fn edges_labelled<'a>(&'a self, label: &'a EdgeLabel) -> impl Iterator<Item = (&'a NodeId, &'a NodeId, &'a IntervalSet)> + 'a {
        self.facts
            .iter()
            .filter(move |(t, _)| &t.predicate == label)
            .map(|(t, s)| (&t.subject, &t.object, s))
    }

    /// Multiplies every interval endpoint, including the domain, by `factor`.
    pub fn scaled(&self, factor: i64) -> TemporalGraph {
        TemporalGraph {
            mode: self.mode,
            domain: self.domain.scale(factor),
            facts: self
                .facts
                .iter()
                .map(|(t, s)| (t.clone(), s.iter().map(|i| i.scale(factor)).collect()))
                .collect(),
            nodes: self.nodes.clone(),
        }
    }
}

/// Free function form of [`TemporalGraph::nodes`].
pub fn graph_nodes(graph: &TemporalGraph) -> BTreeSet<NodeId> {
    graph.nodes.clone()
}

/// Parses the graph file format:
///
/// ```text
/// # comment
/// domain [100,112]
/// mode discrete
/// Alice attends ICDT [100,102]
/// Bob attends ISWC [102,103], [105,107]
/// ```
///
/// `mode` is optional and defaults to `discrete`. Headers must precede facts.
pub fn load_graph(document: &str) -> Result<TemporalGraph, GraphError> {
    let mut domain: Option<Interval> = None;
    let mut mode: Option<TimeMode> = None;
    let mut builder: Option<GraphBuilder> = None;

    for (idx, raw) in document.lines().enumerate() {
        let line_no = idx + 1;
        let err = |column: usize, message: String| GraphError::Parse { line: line_no, column: column + 1, message };
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest_col = indent + keyword.len() + (rest.len() - rest.trim_start().len()) + 1;
        match keyword {
            "domain" | "mode" if builder.is_some() => {
                return Err(err(indent, format!("`{keyword}` header after the first fact")));
            }
            "domain" => {
                if domain.is_some() {
                    return Err(err(indent, "duplicate `domain` header".into()));
                }
                domain = Some(rest.trim().parse().map_err(|e: IntervalError| err(rest_col, e.to_string()))?);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(err(indent, "duplicate `mode` header".into()));
                }
                mode = Some(rest.trim().parse().map_err(|e: String| err(rest_col, e))?);
            }
            _ => {
                if builder.is_none() {
                    let dom = domain.clone().ok_or(GraphError::MissingDomain)?;
                    builder = Some(GraphBuilder::new(mode.unwrap_or(TimeMode::Discrete), dom));
                }
                let (triple, intervals) = parse_fact(content).map_err(|(col, msg)| err(indent + col, msg))?;
                let b = builder.as_mut().expect("initialised above");
                for interval in intervals {
                    b.add(&triple.0, &triple.1, &triple.2, interval);
                }
            }
        }
    }
    match builder {
        Some(b) => b.build(),
        None => {
            let dom = domain.ok_or(GraphError::MissingDomain)?;
            GraphBuilder::new(mode.unwrap_or(TimeMode::Discrete), dom).build()
        }
    }
}

type FactLine = ((String, String, String), Vec<Interval>);

fn parse_fact(line: &str) -> Result<FactLine, (usize, String)> {
    let mut names = Vec::with_capacity(3);
    let mut pos = 0;
    for _ in 0..3 {
        let rest = &line[pos..];
        let start = pos + (rest.len() - rest.trim_start().len());
        let rest = &line[start..];
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let name = &rest[..len];
        if name.is_empty() {
            return Err((start, "expected `<subject> <predicate> <object> <interval>`".into()));
        }
        if !valid_name(name) {
            return Err((start, format!("invalid name `{name}`")));
        }
        names.push(name.to_string());
        pos = start + len;
    }
    let tail = &line[pos..];
    let mut intervals = Vec::new();
    let mut offset = pos;
    for piece in tail.split_inclusive([']', ')']) {
        let trimmed = piece.trim().trim_start_matches(',').trim();
        if trimmed.is_empty() {
            offset += piece.len();
            continue;
        }
        let col = offset + (piece.len() - piece.trim_start().len());
        let interval: Interval = trimmed.parse().map_err(|e: IntervalError| (col, e.to_string()))?;
        intervals.push(interval);
        offset += piece.len();
    }
    if intervals.is_empty() {
        return Err((pos, "expected at least one validity interval".into()));
    }
    let object = names.pop().unwrap();
    let predicate = names.pop().unwrap();
    let subject = names.pop().unwrap();
    Ok(((subject, predicate, object), intervals))
}

/// Names are ASCII letters, digits and `_`, and may not start with a digit
/// only so that queries can reference them unambiguously.
pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Serializes back into the file format; `load_graph` of the output yields
/// an equal graph.
impl fmt::Display for TemporalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.domain)?;
        writeln!(f, "mode {}", self.mode)?;
        for (t, set) in &self.facts {
            let intervals: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            writeln!(f, "{} {} {} {}", t.subject, t.predicate, t.object, intervals.join(", "))?;
        }
        Ok(())
    }
}

/// The running example: conference attendance and a test result.
///
/// τ_G = [100,112] is the smallest hull of the mentioned facts.
pub const RUNNING_EXAMPLE: &str = "\
# Alice attends ICDT then ISWC; Bob attends ISWC and later tests positive.
domain [100,112]
mode discrete
Alice attends ICDT [100,102]
Alice attends ISWC [104,106]
Bob attends ISWC [102,107]
Bob tests positive [112,112]
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_loads() {
        let g = load_graph(RUNNING_EXAMPLE).unwrap();
        assert_eq!(g.triple_count(), 4);
        assert_eq!(g.mode(), TimeMode::Discrete);
        let names: Vec<_> = g.nodes().iter().map(|n| n.as_str().to_string()).collect();
        assert_eq!(names, ["Alice", "Bob", "ICDT", "ISWC", "positive"]);
    }

    #[test]
    fn interval_outside_domain_is_rejected() {
        let doc = "domain [100,112]\na e b [90,95]\n";
        assert!(matches!(load_graph(doc), Err(GraphError::OutsideDomain { .. })));
    }

    #[test]
    fn empty_graph() {
        let g = load_graph("domain [0,0]\n").unwrap();
        assert_eq!(g.triple_count(), 0);
        assert!(graph_nodes(&g).is_empty());
    }

    #[test]
    fn self_loop_has_one_node() {
        let g = load_graph("domain [0,3]\na e a [1,2]\n").unwrap();
        assert_eq!(graph_nodes(&g).len(), 1);
    }

    #[test]
    fn validity_sets_are_coalesced() {
        let g = load_graph("domain [0,10]\na e b [1,2], [3,4]\na e b [6,7]\n").unwrap();
        let (_, set) = g.facts().next().unwrap();
        assert_eq!(set.len(), 2);
        let dense = load_graph("domain [0,10]\nmode dense\na e b [1,2], [3,4]\n").unwrap();
        assert_eq!(dense.facts().next().unwrap().1.len(), 2);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match load_graph("domain [0,10]\na e b [1,x]\n") {
            Err(GraphError::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(load_graph("a e b [1,2]\n"), Err(GraphError::MissingDomain));
        assert!(matches!(load_graph("domain [0,1]\nmode fuzzy\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(load_graph("domain [0,1]\na e [0,1]\n"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn discrete_graph_rejects_fractions() {
        assert!(load_graph("domain [0,10]\na e b [1/2,2]\n").is_err());
        assert!(load_graph("domain [0,10]\nmode dense\na e b [1/2,2)\n").is_ok());
    }

    #[test]
    fn serialization_round_trips() {
        let g = load_graph(RUNNING_EXAMPLE).unwrap();
        let again = load_graph(&g.to_string()).unwrap();
        assert_eq!(g, again);
        assert_eq!(again.to_string(), g.to_string());
    }
}
