//! Ground-truth graph representation and the line-oriented graph file format.
//!
//! Vertices are dense integers `0..n`. Edges are stored in normal form
//! `(min, max)` and iterate in sorted order, so everything downstream is
//! deterministic for a fixed input.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

/// Vertex id, always `< n` for the graph it belongs to.
pub type Vertex = u32;

/// An undirected edge in normal form: `a() < b()`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    a: Vertex,
    b: Vertex,
}

impl Edge {
    /// Builds an edge, normalizing endpoint order.
    ///
    /// # Panics
    /// Panics if `u == v` (self-loops are never representable).
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert!(u != v, "self-loop {u}-{v}");
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn a(&self) -> Vertex {
        self.a
    }

    pub fn b(&self) -> Vertex {
        self.b
    }

    /// Both endpoints, smaller first.
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.a, self.b)
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

/// Errors from graph construction, generation, and the file format parser.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(
        "bounded-degree sampler exhausted: placed {placed} of {target} edges after {attempts} attempts"
    )]
    SamplerExhausted {
        placed: usize,
        target: usize,
        attempts: u64,
    },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("bad graph file header: {0}")]
    BadHeader(String),
    #[error("bad edge line {line}: {reason}")]
    BadEdgeLine { line: usize, reason: String },
    #[error("header says m={header} but file has {actual} edges")]
    EdgeCountMismatch { header: usize, actual: usize },
    #[error("header promises max degree {header} but graph has degree {actual}")]
    DegreeExceedsHeader { header: u32, actual: u32 },
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

/// A simple graph on vertices `0..n` with cached maximum degree.
#[derive(Clone, Debug)]
pub struct Graph {
    n: u32,
    edges: BTreeSet<Edge>,
    adj: Vec<Vec<Vertex>>,
    d_max: u32,
}

impl Graph {
    /// Builds a graph, validating endpoints and rejecting duplicates.
    pub fn new(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        let mut adj = vec![Vec::new(); n as usize];
        for e in edges {
            let (u, v) = e.endpoints();
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let d_max = adj.iter().map(|l| l.len() as u32).max().unwrap_or(0);
        Ok(Graph {
            n,
            edges: set,
            adj,
            d_max,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Cached maximum degree.
    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    /// Writes the line-oriented text format: header `n m d`, then one
    /// `u v` pair per line in sorted order.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {} {}", self.n, self.edges.len(), self.d_max)?;
        for e in &self.edges {
            writeln!(w, "{e}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("graph text is ascii")
    }

    /// Parses the text format. Rejects duplicates, self-loops, out-of-range
    /// ids, wrong edge counts, and a header degree below the actual maximum.
    ///
    /// The header degree is a promise, so it may exceed the actual maximum;
    /// `promised_d_max` preserves it.
    pub fn parse(text: &str) -> Result<ParsedGraph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| GraphError::BadHeader("empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GraphError::BadHeader(format!(
                "expected `n m d`, got {header:?}"
            )));
        }
        let n: u32 = fields[0]
            .parse()
            .map_err(|_| GraphError::BadHeader(format!("bad n {:?}", fields[0])))?;
        let m: usize = fields[1]
            .parse()
            .map_err(|_| GraphError::BadHeader(format!("bad m {:?}", fields[1])))?;
        let d: u32 = fields[2]
            .parse()
            .map_err(|_| GraphError::BadHeader(format!("bad d {:?}", fields[2])))?;

        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::BadEdgeLine {
                        line: line_no,
                        reason: format!("expected `u v`, got {line:?}"),
                    })
                }
            };
            let u: Vertex = u.parse().map_err(|_| GraphError::BadEdgeLine {
                line: line_no,
                reason: format!("bad vertex id {u:?}"),
            })?;
            let v: Vertex = v.parse().map_err(|_| GraphError::BadEdgeLine {
                line: line_no,
                reason: format!("bad vertex id {v:?}"),
            })?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            edges.push(Edge::new(u, v));
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                header: m,
                actual: edges.len(),
            });
        }
        let graph = Graph::new(n, edges)?;
        if graph.d_max() > d {
            return Err(GraphError::DegreeExceedsHeader {
                header: d,
                actual: graph.d_max(),
            });
        }
        Ok(ParsedGraph {
            graph,
            promised_d_max: d,
        })
    }

    pub fn read_from_path(path: &Path) -> Result<ParsedGraph, GraphError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn write_to_path(&self, path: &Path) -> Result<(), GraphError> {
        let mut file = fs::File::create(path)?;
        self.write_to(&mut file)?;
        Ok(())
    }
}

/// A parsed graph file: the graph plus the degree promise from the header.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub promised_d_max: u32,
}
