//! DIMACS `.col` graph files.

use std::collections::HashSet;
use std::io::{self, BufRead, Write};

use crate::error::ParseError;
use crate::graph::{SimpleGraph, VertexId};

#[derive(Clone, Debug)]
pub struct DimacsGraph {
    pub graph: SimpleGraph,
    /// Repeated `e` lines (in either orientation) that were dropped.
    pub duplicate_edges: usize,
    /// Lines of unknown type that were skipped.
    pub ignored_lines: usize,
}

/// Reads `c` comments, one `p edge N M` (or `p col N M`) header and
/// 1-based `e u v` lines. Vertices are renumbered from 0.
pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<DimacsGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut duplicate_edges = 0;
    let mut ignored_lines = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let syntax = |message: &str| ParseError::Syntax {
            line: lineno,
            message: message.to_string(),
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(syntax("second `p` header"));
                }
                let format = fields.next().ok_or_else(|| syntax("missing format in header"))?;
                if format != "edge" && format != "col" {
                    return Err(syntax(&format!("unsupported format `{format}`")));
                }
                let count = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax("bad vertex count in header"))?;
                fields
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| syntax("bad edge count in header"))?;
                n = Some(count);
            }
            Some("e") => {
                let count = n.ok_or(ParseError::MissingHeader)?;
                let mut vertex = || -> Result<VertexId, ParseError> {
                    let raw: usize = fields
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| syntax("expected `e u v` with positive integers"))?;
                    if raw == 0 || raw > count {
                        return Err(syntax(&format!("vertex {raw} outside 1..={count}")));
                    }
                    Ok(raw - 1)
                };
                let (u, v) = (vertex()?, vertex()?);
                if u == v {
                    return Err(syntax(&format!("self-loop at vertex {}", u + 1)));
                }
                if seen.insert((u.min(v), u.max(v))) {
                    edges.push((u, v));
                } else {
                    duplicate_edges += 1;
                }
            }
            Some(_) => ignored_lines += 1,
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    let graph = SimpleGraph::new(n, edges).expect("edges were checked line by line");
    Ok(DimacsGraph {
        graph,
        duplicate_edges,
        ignored_lines,
    })
}

pub fn parse_dimacs_str(text: &str) -> Result<DimacsGraph, ParseError> {
    parse_dimacs(text.as_bytes())
}

/// Writes `p edge N M` followed by one `e u v` line per edge in edge-id
/// order.
pub fn write_dimacs<W: Write>(graph: &SimpleGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "p edge {} {}", graph.vertex_count(), graph.edge_count())?;
    for &(u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn dimacs_string(graph: &SimpleGraph) -> String {
    let mut buf = Vec::new();
    write_dimacs(graph, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
