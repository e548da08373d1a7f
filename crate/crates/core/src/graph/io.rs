//! Line-based text serialization.
//!
//! Header `bipartite n1 n2 m` or `simple n m`, then one edge per line
//! `u w`, single-space separated with a trailing newline. Writing a graph
//! emits edges in stored order, so read-then-write reproduces a canonical
//! file byte-exactly. Multiplicity maps are not serialized.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, SimpleGraph};

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Bipartite(BipartiteGraph),
    Simple(SimpleGraph),
}

impl GraphFile {
    /// Flattens to a simple graph on the combined vertex set: a bipartite
    /// N2 vertex w becomes n1 + w.
    pub fn flatten(&self) -> SimpleGraph {
        match self {
            GraphFile::Simple(g) => g.clone(),
            GraphFile::Bipartite(g) => flatten_bipartite(g),
        }
    }
}

/// Bipartite graph as a simple graph on n1 + n2 vertices.
pub fn flatten_bipartite(g: &BipartiteGraph) -> SimpleGraph {
    let n1 = g.n1() as u32;
    let edges = g.edges().iter().map(|&(u, w)| (u, n1 + w)).collect();
    SimpleGraph::from_unique_edges(g.vertex_count(), edges)
}

pub fn encode_bipartite(g: &BipartiteGraph) -> String {
    let mut s = String::with_capacity(16 + 8 * g.edge_count());
    let _ = writeln!(s, "bipartite {} {} {}", g.n1(), g.n2(), g.edge_count());
    for &(u, w) in g.edges() {
        let _ = writeln!(s, "{} {}", u, w);
    }
    s
}

pub fn encode_simple(g: &SimpleGraph) -> String {
    let mut s = String::with_capacity(16 + 8 * g.edge_count());
    let _ = writeln!(s, "simple {} {}", g.vertex_count(), g.edge_count());
    for &(a, b) in g.edges() {
        let _ = writeln!(s, "{} {}", a, b);
    }
    s
}

pub fn decode(text: &str) -> Result<GraphFile> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput("graph file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_num = |line: usize, s: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse {
            line: line + 1,
            msg: format!("expected integer, got {s:?}"),
        })
    };
    let parse_edge = |line: usize, s: &str| -> Result<(u32, u32)> {
        let mut it = s.split_whitespace();
        let err = || Error::Parse {
            line: line + 1,
            msg: format!("expected `u w`, got {s:?}"),
        };
        let a = it.next().ok_or_else(err)?;
        let b = it.next().ok_or_else(err)?;
        if it.next().is_some() {
            return Err(err());
        }
        Ok((a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?))
    };
    match fields.as_slice() {
        ["bipartite", n1, n2, m] => {
            let n1 = parse_num(0, n1)?;
            let n2 = parse_num(0, n2)?;
            let m = parse_num(0, m)?;
            let mut edges = Vec::with_capacity(m);
            for (i, line) in lines.take(m) {
                edges.push(parse_edge(i, line)?);
            }
            if edges.len() != m {
                return Err(Error::Parse {
                    line: edges.len() + 1,
                    msg: format!("expected {m} edges, found {}", edges.len()),
                });
            }
            Ok(GraphFile::Bipartite(BipartiteGraph::new(n1, n2, edges)?))
        }
        ["simple", n, m] => {
            let n = parse_num(0, n)?;
            let m = parse_num(0, m)?;
            let mut edges = Vec::with_capacity(m);
            for (i, line) in lines.take(m) {
                edges.push(parse_edge(i, line)?);
            }
            if edges.len() != m {
                return Err(Error::Parse {
                    line: edges.len() + 1,
                    msg: format!("expected {m} edges, found {}", edges.len()),
                });
            }
            Ok(GraphFile::Simple(SimpleGraph::new(n, edges)?))
        }
        _ => Err(Error::Parse {
            line: 1,
            msg: format!("bad header {header:?}"),
        }),
    }
}

pub fn write_graph(path: &Path, g: &GraphFile) -> Result<()> {
    let text = match g {
        GraphFile::Bipartite(g) => encode_bipartite(g),
        GraphFile::Simple(g) => encode_simple(g),
    };
    fs::write(path, text)?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<GraphFile> {
    let text = fs::read_to_string(path)?;
    decode(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_bipartite;

    #[test]
    fn bipartite_round_trip_is_byte_exact() {
        let g = build_bipartite(3, 2, vec![(0, 1), (2, 0), (1, 1)]).unwrap();
        let text = encode_bipartite(&g);
        assert_eq!(text, "bipartite 3 2 3\n0 1\n2 0\n1 1\n");
        let back = decode(&text).unwrap();
        assert_eq!(back, GraphFile::Bipartite(g.clone()));
        let GraphFile::Bipartite(b) = back else {
            unreachable!()
        };
        assert_eq!(encode_bipartite(&b), text);
    }

    #[test]
    fn simple_round_trip_is_byte_exact() {
        let g = SimpleGraph::new(4, vec![(3, 1), (0, 2)]).unwrap();
        let text = encode_simple(&g);
        // Edges are stored normalized (min, max).
        assert_eq!(text, "simple 4 2\n1 3\n0 2\n");
        let back = decode(&text).unwrap();
        assert_eq!(back.flatten().edges(), g.edges());
        assert_eq!(encode_simple(&back.flatten()), text);
    }

    #[test]
    fn flatten_offsets_n2() {
        let g = build_bipartite(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let s = flatten_bipartite(&g);
        assert_eq!(s.edges(), &[(0, 2), (1, 3)]);
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("widget 1 2\n").is_err());
        assert!(decode("bipartite 2 2 1\n").is_err());
        assert!(decode("bipartite 2 2 1\n0 0 0\n").is_err());
        assert!(decode("simple 2 1\n0 0\n").is_err());
    }
}
