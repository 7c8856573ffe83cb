//! Temporal regular path queries (TRPQs) over interval-annotated graphs.
//!
//! Answers can be produced in several representations of increasing
//! compactness: plain point tuples, time-interval tuples (`U^t`),
//! distance-interval tuples (`U^d`), rectangle tuples (`U^td`) and cropped
//! rectangle tuples (`U^c`).

pub mod cli;
pub mod compact;
pub mod eval;
pub mod graph;
pub mod interval;
pub mod oracle;
pub mod plot;
pub mod query;
pub mod repr;

pub use eval::{eval_c, eval_d, eval_t, eval_td, EvalError, EvalOptions};
pub use graph::{load_graph, EdgeLabel, NodeId, TemporalGraph};
pub use interval::{Delim, Interval, IntervalSet, TimeMode, TimePoint};
pub use query::{parse_query, Trpq};
pub use repr::{AnswerSet, AnswerTuple, CTuple, DTuple, PointTuple, ReprKind, TDTuple, TTuple};
