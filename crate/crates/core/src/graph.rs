//! Finite simple directed graphs and the structural queries used by the
//! classification results: components, stars, complete graphs, paths of
//! length three and perfect matchings.
//!
//! Vertices are 0-based in the API. The text format is 1-based.
//! Structural queries ignore edge direction; direction only fixes bracket
//! signs downstream. Edge order is the order of the center basis.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, GraphDefect, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: String,
}

impl Edge {
    /// Endpoints as an unordered pair `(min, max)`.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }

    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The other endpoint, if `v` is one of them.
    pub fn opposite(&self, v: usize) -> Option<usize> {
        if self.tail == v {
            Some(self.head)
        } else if self.head == v {
            Some(self.tail)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    /// Builds a graph from `(tail, head)` pairs with default labels `Z1, Z2, ...`.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labelled = edges
            .iter()
            .enumerate()
            .map(|(k, &(t, h))| (t, h, format!("Z{}", k + 1)))
            .collect::<Vec<_>>();
        Self::with_labels(vertex_count, labelled)
    }

    pub fn with_labels(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, String)>,
    ) -> Result<Self> {
        let mut graph = DirectedGraph {
            vertex_count,
            edges: Vec::new(),
        };
        for (tail, head, label) in edges {
            graph
                .push_edge(tail, head, label)
                .map_err(Error::InvalidGraph)?;
        }
        Ok(graph)
    }

    fn push_edge(&mut self, tail: usize, head: usize, label: String) -> std::result::Result<(), GraphDefect> {
        for &v in &[tail, head] {
            if v >= self.vertex_count {
                return Err(GraphDefect::VertexOutOfRange {
                    index: v + 1,
                    count: self.vertex_count,
                });
            }
        }
        if tail == head {
            return Err(GraphDefect::SelfLoop { vertex: tail + 1 });
        }
        let pair = (tail.min(head), tail.max(head));
        if self.edges.iter().any(|e| e.endpoints() == pair) {
            return Err(GraphDefect::DuplicateEdge {
                a: pair.0 + 1,
                b: pair.1 + 1,
            });
        }
        if self.edges.iter().any(|e| e.label == label) {
            return Err(GraphDefect::DuplicateLabel(label));
        }
        self.edges.push(Edge { tail, head, label });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges.iter().filter_map(|e| e.opposite(v)).collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let pair = (a.min(b), a.max(b));
        self.edges.iter().any(|e| e.endpoints() == pair)
    }

    /// Index of the edge joining `a` and `b`, in either direction.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let pair = (a.min(b), a.max(b));
        self.edges.iter().position(|e| e.endpoints() == pair)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Same graph with the direction of edge `k` reversed.
    pub fn with_reversed_edge(&self, k: usize) -> DirectedGraph {
        let mut out = self.clone();
        let e = &mut out.edges[k];
        std::mem::swap(&mut e.tail, &mut e.head);
        out
    }

    /// Induced subgraph on `vertices` (in the given order); edges keep their
    /// global order and labels.
    pub fn induced(&self, vertices: &[usize]) -> DirectedGraph {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| local[e.tail] != usize::MAX && local[e.head] != usize::MAX)
            .map(|e| Edge {
                tail: local[e.tail],
                head: local[e.head],
                label: e.label.clone(),
            })
            .collect();
        DirectedGraph {
            vertex_count: vertices.len(),
            edges,
        }
    }

    /// Connected components, ordered by their smallest vertex. Each comes with
    /// the map from local vertex index to global index.
    pub fn connected_components(&self) -> Vec<(DirectedGraph, Vec<usize>)> {
        let n = self.vertex_count;
        let adjacency: Vec<Vec<usize>> = (0..n).map(|v| self.neighbors(v)).collect();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let mut cursor = 0;
            while cursor < members.len() {
                let v = members[cursor];
                cursor += 1;
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push((self.induced(&members), members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Hub vertex when the graph is a star `K_{1,n}`, `n >= 1`. For `K2` the
    /// lower endpoint is returned.
    pub fn is_star(&self) -> Option<usize> {
        let q = self.edges.len();
        if q == 0 || q + 1 != self.vertex_count {
            return None;
        }
        if q == 1 {
            return Some(self.edges[0].tail.min(self.edges[0].head));
        }
        (0..self.vertex_count).find(|&v| self.edges.iter().all(|e| e.touches(v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        self.edges.len() == n * (n.saturating_sub(1)) / 2
    }

    /// A path `v1 - v2 - v3 - v4` on four distinct vertices, if present.
    pub fn contains_path3(&self) -> Option<[usize; 4]> {
        for middle in &self.edges {
            for (v2, v3) in [(middle.tail, middle.head), (middle.head, middle.tail)] {
                for v1 in self.neighbors(v2) {
                    if v1 == v3 {
                        continue;
                    }
                    if let Some(v4) = self
                        .neighbors(v3)
                        .into_iter()
                        .find(|&v4| v4 != v1 && v4 != v2)
                    {
                        return Some([v1, v2, v3, v4]);
                    }
                }
            }
        }
        None
    }

    /// A perfect matching, found by backtracking with degree-1 forcing.
    pub fn perfect_matching(&self) -> Option<Matching> {
        let n = self.vertex_count;
        if n % 2 == 1 || n == 0 || n > 64 {
            return None;
        }
        let adjacency: Vec<u64> = (0..n)
            .map(|v| self.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        if adjacency.contains(&0) {
            return None;
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut pairs = Vec::with_capacity(n / 2);
        if match_rec(&adjacency, full, &mut pairs) {
            Some(Matching::new(pairs))
        } else {
            None
        }
    }
}

fn match_rec(adjacency: &[u64], free: u64, pairs: &mut Vec<(usize, usize)>) -> bool {
    if free == 0 {
        return true;
    }
    // Pick the free vertex with the fewest free neighbours.
    let mut best: Option<(usize, u32)> = None;
    let mut bits = free;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let options = (adjacency[v] & free).count_ones();
        if options == 0 {
            return false;
        }
        if best.is_none_or(|(_, c)| options < c) {
            best = Some((v, options));
            if options == 1 {
                break;
            }
        }
    }
    let (v, _) = best.expect("free set is nonempty");
    let mut candidates = adjacency[v] & free;
    while candidates != 0 {
        let w = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        pairs.push((v.min(w), v.max(w)));
        if match_rec(adjacency, free & !(1 << v) & !(1 << w), pairs) {
            return true;
        }
        pairs.pop();
    }
    false
}

/// A set of vertex-disjoint edges, stored as sorted `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> =
            pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether the pairs are edges of `graph`, pairwise disjoint, and cover
    /// every vertex.
    pub fn is_perfect_for(&self, graph: &DirectedGraph) -> bool {
        let mut covered = HashSet::new();
        for &(a, b) in &self.pairs {
            if !graph.has_edge(a, b) || !covered.insert(a) || !covered.insert(b) {
                return false;
            }
        }
        covered.len() == graph.vertex_count()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(a, b)| format!("X{}X{}", a + 1, b + 1))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Parses the graph text format:
///
/// ```text
/// # comment
/// vertices 4
/// edge 1 2
/// edge 1 3 Z2
/// ```
pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    let mut graph: Option<DirectedGraph> = None;
    let mut pending_default = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |defect| Error::Parse { line, defect };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match (&mut graph, tokens[0]) {
            (None, "vertices") => {
                if tokens.len() != 2 {
                    return Err(parse_err(GraphDefect::Malformed(
                        "expected `vertices <n>`".into(),
                    )));
                }
                let n: usize = tokens[1].parse().map_err(|_| {
                    parse_err(GraphDefect::Malformed(format!(
                        "invalid vertex count {:?}",
                        tokens[1]
                    )))
                })?;
                if n == 0 {
                    return Err(parse_err(GraphDefect::Malformed(
                        "vertex count must be positive".into(),
                    )));
                }
                graph = Some(DirectedGraph {
                    vertex_count: n,
                    edges: Vec::new(),
                });
            }
            (None, _) => {
                return Err(parse_err(GraphDefect::Malformed(
                    "first line must be `vertices <n>`".into(),
                )))
            }
            (Some(_), "vertices") => {
                return Err(parse_err(GraphDefect::Malformed(
                    "repeated `vertices` line".into(),
                )))
            }
            (Some(g), "edge") => {
                if tokens.len() != 3 && tokens.len() != 4 {
                    return Err(parse_err(GraphDefect::Malformed(
                        "expected `edge <i> <j> [<label>]`".into(),
                    )));
                }
                let index = |tok: &str| -> Result<usize> {
                    let v: usize = tok.parse().map_err(|_| {
                        parse_err(GraphDefect::Malformed(format!("invalid vertex {tok:?}")))
                    })?;
                    if v == 0 || v > g.vertex_count {
                        return Err(parse_err(GraphDefect::VertexOutOfRange {
                            index: v,
                            count: g.vertex_count,
                        }));
                    }
                    Ok(v - 1)
                };
                let tail = index(tokens[1])?;
                let head = index(tokens[2])?;
                pending_default += 1;
                let label = tokens
                    .get(3)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("Z{pending_default}"));
                g.push_edge(tail, head, label).map_err(parse_err)?;
            }
            (Some(_), other) => {
                return Err(parse_err(GraphDefect::Malformed(format!(
                    "unknown directive {other:?}"
                ))))
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        defect: GraphDefect::Malformed("missing `vertices <n>` line".into()),
    })
}

/// The labelled graphs that appear throughout the construction's worked
/// examples. Labels follow the figures, so `k4_c4()` has edges Z1, Z3, Z4, Z6.
pub mod named {
    use super::DirectedGraph;

    fn build(n: usize, edges: &[(usize, usize, &str)]) -> DirectedGraph {
        DirectedGraph::with_labels(
            n,
            edges
                .iter()
                .map(|&(t, h, l)| (t - 1, h - 1, l.to_string())),
        )
        .expect("fixture graphs are valid")
    }

    fn numbered(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
        let e: Vec<(usize, usize)> = edges.iter().map(|&(t, h)| (t - 1, h - 1)).collect();
        DirectedGraph::new(n, &e).expect("fixture graphs are valid")
    }

    pub fn k2() -> DirectedGraph {
        numbered(2, &[(1, 2)])
    }

    /// Star with hub X1 and edges `Z_i : X1 -> X_{i+1}`.
    pub fn star(n: usize) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (2..=n + 1).map(|i| (1, i)).collect();
        numbered(n + 1, &edges)
    }

    /// The path on three vertices, `X2 <- X1 -> X3` (the star `K_{1,2}`).
    pub fn p3() -> DirectedGraph {
        star(2)
    }

    /// `[X1,X2]=Z1, [X2,X3]=Z2, [X1,X3]=Z3`.
    pub fn k3() -> DirectedGraph {
        numbered(3, &[(1, 2), (2, 3), (1, 3)])
    }

    /// Cycle with `Z_i : X_i -> X_{i+1}` and `Z_n : X_n -> X_1`.
    pub fn cycle(n: usize) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        numbered(n, &edges)
    }

    /// Path `X1 - X2 - X3 - X4` with `Z_i : X_i -> X_{i+1}`.
    pub fn path4() -> DirectedGraph {
        numbered(4, &[(1, 2), (2, 3), (3, 4)])
    }

    pub fn k4() -> DirectedGraph {
        build(
            4,
            &[
                (1, 2, "Z1"),
                (1, 3, "Z2"),
                (1, 4, "Z3"),
                (2, 3, "Z4"),
                (2, 4, "Z5"),
                (3, 4, "Z6"),
            ],
        )
    }

    /// `K4` minus `Z6`.
    pub fn k4_g1() -> DirectedGraph {
        build(
            4,
            &[(1, 2, "Z1"), (1, 3, "Z2"), (1, 4, "Z3"), (2, 3, "Z4"), (2, 4, "Z5")],
        )
    }

    /// `K4` minus `Z5, Z6`.
    pub fn k4_g2() -> DirectedGraph {
        build(4, &[(1, 2, "Z1"), (1, 3, "Z2"), (1, 4, "Z3"), (2, 3, "Z4")])
    }

    pub fn k4_c4() -> DirectedGraph {
        build(4, &[(1, 2, "Z1"), (1, 4, "Z3"), (2, 3, "Z4"), (3, 4, "Z6")])
    }

    /// The path `X4 - X1 - X2 - X3` inside `K4`.
    pub fn k4_p4() -> DirectedGraph {
        build(4, &[(1, 2, "Z1"), (1, 4, "Z3"), (2, 3, "Z4")])
    }
}
