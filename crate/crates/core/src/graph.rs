//! Simple labeled graphs on the vertex set `0..n`.
//!
//! Edges are stored once as ordered pairs. For undirected graphs the pair is
//! normalized to `(min, max)`; for directed graphs `(u, v)` is the arc `u -> v`.
//! Adjacency lists are materialized at construction and the value is immutable
//! afterwards.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: BTreeSet<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Common degree of a regular graph; `degree` is `None` for irregular graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub degree: Option<usize>,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.degree.is_some()
    }
}

impl Graph {
    /// Builds an undirected graph. Duplicate pairs (in either order) collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, false, edges)
    }

    /// Builds a directed graph whose pairs are arcs `u -> v`.
    pub fn new_directed(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::build(n, true, arcs)
    }

    fn build(
        n: usize,
        directed: bool,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("a graph needs at least one vertex".into()));
        }
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            edges.insert(if directed { (u, v) } else { (u.min(v), u.max(v)) });
        }
        Ok(Self::from_normalized(n, directed, edges))
    }

    fn from_normalized(n: usize, directed: bool, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
            if !directed {
                out_adj[v].push(u);
                in_adj[u].push(v);
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Graph {
            n,
            directed,
            edges,
            out_adj,
            in_adj,
        }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edges (or arcs) in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.contains(&(u, v))
        } else {
            self.edges.contains(&(u.min(v), u.max(v)))
        }
    }

    /// Neighbors of `v` (out-neighbors for directed graphs).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Vertices with an arc pointing at `v`; equals `neighbors` when undirected.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub(crate) fn require_undirected(&self, what: &str) -> Result<()> {
        if self.directed {
            Err(Error::Unsupported(format!("{what} requires an undirected graph")))
        } else {
            Ok(())
        }
    }

    pub fn complement(&self) -> Result<Graph> {
        self.require_undirected("complement")?;
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Ok(Self::from_normalized(n, false, edges))
    }

    /// Certificate of regularity. Directed graphs are regular when every
    /// in-degree and out-degree agree.
    pub fn regular_degree(&self) -> RegularityCertificate {
        let d = self.out_adj[0].len();
        let regular = self.out_adj.iter().all(|a| a.len() == d)
            && (!self.directed || self.in_adj.iter().all(|a| a.len() == d));
        RegularityCertificate {
            degree: regular.then_some(d),
        }
    }

    /// Proper two-coloring by breadth-first search, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = std::collections::VecDeque::from([root]);
            dist[root] = 0;
            while let Some(u) = queue.pop_front() {
                for &v in &self.out_adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Serializes to the edge-list text format read by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.n).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Short-form graph6 encoding (n ≤ 62).
    pub fn to_graph6(&self) -> Result<String> {
        self.require_undirected("graph6 encoding")?;
        if self.n > 62 {
            return Err(Error::Unsupported("graph6 short form is limited to n <= 62".into()));
        }
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut chunk = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                chunk = (chunk << 1) | u8::from(self.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push((chunk + 63) as char);
                    chunk = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((chunk << (6 - filled)) + 63) as char);
        }
        Ok(out)
    }
}

/// Parses the edge-list format: the first token is `n`, then one `u v` pair
/// per line. `#` starts a comment that runs to the end of the line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_pairs(text, false)
}

/// Like [`parse_edge_list`], reading each `u v` line as the arc `u -> v`.
pub fn parse_arc_list(text: &str) -> Result<Graph> {
    parse_pairs(text, true)
}

fn parse_pairs(text: &str, directed: bool) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let parse = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("malformed token {tok:?}"),
            })
        };
        let Some(order) = n else {
            if tokens.len() != 1 {
                return Err(Error::Parse {
                    line,
                    message: "expected the vertex count alone on its line".into(),
                });
            }
            let order = parse(tokens[0])?;
            if order == 0 {
                return Err(Error::Parse {
                    line,
                    message: "vertex count must be at least 1".into(),
                });
            }
            n = Some(order);
            continue;
        };
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected \"u v\", found {} tokens", tokens.len()),
            });
        }
        let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
        if u >= order || v >= order {
            return Err(Error::Parse {
                line,
                message: format!("endpoint out of range 0..{order}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        edges.insert(if directed { (u, v) } else { (u.min(v), u.max(v)) });
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing vertex count".into(),
    })?;
    Ok(Graph::from_normalized(n, directed, edges))
}

/// Decodes a short-form graph6 string (n ≤ 62).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let err = |message: String| Error::Parse { line: 1, message };
    let (&first, rest) = bytes.split_first().ok_or_else(|| err("empty graph6 string".into()))?;
    if !(63..=125).contains(&first) {
        return Err(err("graph6 long form (n > 62) is not supported".into()));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(err("graph6 string encodes zero vertices".into()));
    }
    let bits_needed = n * (n - 1) / 2;
    if rest.len() != bits_needed.div_ceil(6) {
        return Err(err(format!(
            "expected {} data bytes for n = {n}, found {}",
            bits_needed.div_ceil(6),
            rest.len()
        )));
    }
    let mut bits = Vec::with_capacity(rest.len() * 6);
    for &b in rest {
        if !(63..=126).contains(&b) {
            return Err(err(format!("invalid graph6 byte {b}")));
        }
        let value = b - 63;
        bits.extend((0..6).rev().map(|s| (value >> s) & 1 == 1));
    }
    let mut edges = BTreeSet::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.insert((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_normalized(n, false, edges))
}
