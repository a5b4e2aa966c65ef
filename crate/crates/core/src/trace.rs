//! Observer events emitted by the engines.
//!
//! Every event renders as exactly one line of text; the CLI's trace mode
//! writes those lines verbatim, so the `Display` impls below are the wire
//! format:
//!
//! ```text
//! recolor <op> e<edge> <before> <after>
//! classify e<tagged> e<next> <case>
//! deflect e<tagged> e<next>
//! budget c<color> k=<k> n=<n_i> r=<allowance>
//! eliminated c<color> remaining=<count>
//! ```
//!
//! Complex colors print as `(a,b)` with 1-based colors, lower endpoint first.

use std::fmt;

use crate::color::{Color, ComplexColor};
use crate::directional::DwCase;
use crate::graph::EdgeId;

/// The operation responsible for a recoloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Exchange,
    DontCare,
    Invert,
    Walk,
    Chain,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Exchange => "exchange",
            Op::DontCare => "dontcare",
            Op::Invert => "invert",
            Op::Walk => "walk",
            Op::Chain => "chain",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// An edge's complex color changed; one event per edge per operation.
    Recolor {
        op: Op,
        edge: EdgeId,
        before: ComplexColor,
        after: ComplexColor,
    },
    Classified { tagged: EdgeId, next: EdgeId, case: DwCase },
    Deflected { tagged: EdgeId, next: EdgeId },
    Budget { color: Color, k: usize, n_i: usize, allowance: u64 },
    Eliminated { color: Color, remaining: usize },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Recolor { op, edge, before, after } => {
                write!(f, "recolor {} e{} {} {}", op.name(), edge, before, after)
            }
            TraceEvent::Classified { tagged, next, case } => {
                write!(f, "classify e{} e{} {}", tagged, next, case.name())
            }
            TraceEvent::Deflected { tagged, next } => write!(f, "deflect e{} e{}", tagged, next),
            TraceEvent::Budget { color, k, n_i, allowance } => {
                write!(f, "budget c{} k={} n={} r={}", color, k, n_i, allowance)
            }
            TraceEvent::Eliminated { color, remaining } => {
                write!(f, "eliminated c{} remaining={}", color, remaining)
            }
        }
    }
}

pub type Tracer = Box<dyn FnMut(&TraceEvent) + Send>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let ev = TraceEvent::Recolor {
            op: Op::Exchange,
            edge: 4,
            before: ComplexColor::new(Color(0), Color(1)),
            after: ComplexColor::constant(Color(0)),
        };
        assert_eq!(ev.to_string(), "recolor exchange e4 (1,2) (1,1)");
        let ev = TraceEvent::Budget { color: Color(2), k: 1, n_i: 2, allowance: 99 };
        assert_eq!(ev.to_string(), "budget c3 k=1 n=2 r=99");
    }
}
