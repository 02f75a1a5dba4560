//! Simple undirected graphs and the `p ds` text format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub type Vertex = usize;

/// An immutable simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    /// Sorted neighbor lists.
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects self-loops, parallel edges,
    /// out-of-range endpoints and `n = 0`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("graph must have at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {}", u + 1)));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Precondition(format!(
                    "parallel edge at vertex {}",
                    u + 1
                )));
            }
        }
        Ok(Self { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// `N[v]`, the closed neighborhood.
    pub fn closed_neighborhood(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(v).chain(self.adj[v].iter().copied())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// No cycles: every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.m + self.component_count() == self.n()
    }

    /// Closed-neighborhood bit masks; requires `n <= 64`.
    pub(crate) fn closed_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bit masks need n <= 64");
        self.vertices()
            .map(|v| self.closed_neighborhood(v).fold(0u64, |m, w| m | (1 << w)))
            .collect()
    }

    /// Parses the `p ds <n> <m>` format.
    ///
    /// ```text
    /// c optional comments
    /// p ds 3 2
    /// e 1 2
    /// e 2 3
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut adj: Vec<Vec<Vertex>> = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    if toks.len() != 4 || toks[1] != "ds" {
                        return Err(Error::parse(line_no, "expected `p ds <n> <m>`"));
                    }
                    let n = parse_count(toks[2], line_no)?;
                    let m = parse_count(toks[3], line_no)?;
                    if n == 0 {
                        return Err(Error::parse(line_no, "graph must have at least one vertex"));
                    }
                    header = Some((n, m));
                    adj = vec![Vec::new(); n];
                }
                "e" => {
                    let (n, _) =
                        header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
                    if toks.len() != 3 {
                        return Err(Error::parse(line_no, "expected `e <u> <v>`"));
                    }
                    let u = parse_vertex(toks[1], n, line_no)?;
                    let v = parse_vertex(toks[2], n, line_no)?;
                    if u == v {
                        return Err(Error::parse(line_no, format!("self-loop at vertex {}", u + 1)));
                    }
                    if adj[u].contains(&v) {
                        return Err(Error::parse(
                            line_no,
                            format!("duplicate edge {} {}", u + 1, v + 1),
                        ));
                    }
                    adj[u].push(v);
                    adj[v].push(u);
                    edges.push((u, v));
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown line type `{other}`")));
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p ds` header"))?;
        if edges.len() != m {
            return Err(Error::parse(
                text.lines().count(),
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Self::from_edges(n, edges)
    }

    /// Writes the `p ds` format with edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = format!("p ds {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad number `{tok}`")))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<Vertex> {
    let id = parse_count(tok, line)?;
    if id == 0 || id > n {
        return Err(Error::parse(line, format!("vertex {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}
