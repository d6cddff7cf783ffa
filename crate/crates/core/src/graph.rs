//! Colored graphs, labelings and the canonical byte encoding.
//!
//! Vertices are stored zero-based (`0..n`). The text formats and the CLI
//! present them one-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph whose vertices carry finite sets of
/// non-negative integer colors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    colors: Vec<Vec<u64>>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            colors: vec![Vec::new(); n],
        }
    }

    /// Builds an uncolored graph from an edge list. Duplicate edges and loops
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = ColoredGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(())
    }

    /// Adds `color` to the color set of `v`. Adding a color twice is a no-op.
    pub fn add_color(&mut self, v: usize, color: u64) {
        let set = &mut self.colors[v];
        if let Err(pos) = set.binary_search(&color) {
            set.insert(pos, color);
        }
    }

    /// Returns a copy with `color` added to `v`.
    pub fn with_color(&self, v: usize, color: u64) -> Self {
        let mut g = self.clone();
        g.add_color(v, color);
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted, duplicate-free color set of `v`.
    #[inline]
    pub fn colors(&self, v: usize) -> &[u64] {
        &self.colors[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_color(&self) -> Option<u64> {
        self.colors.iter().filter_map(|c| c.last().copied()).max()
    }

    pub fn is_colored(&self) -> bool {
        self.colors.iter().any(|c| !c.is_empty())
    }

    /// The same graph with every color removed.
    pub fn uncolored(&self) -> Self {
        ColoredGraph {
            colors: vec![Vec::new(); self.n],
            ..self.clone()
        }
    }

    /// First color value that is free for colors introduced by the
    /// canonizers: `0` for uncolored graphs, `max + 1` otherwise.
    pub fn color_base(&self) -> u64 {
        self.max_color().map_or(0, |m| m + 1)
    }

    /// Induced subgraph on `vertices` (kept in the given order). Vertex `i`
    /// of the result is `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = ColoredGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.colors[i] = self.colors[v].clone();
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced edge is fresh");
                }
            }
        }
        g
    }

    /// Connected components of the graph with `removed` deleted, each sorted,
    /// ordered by smallest vertex.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        for &x in removed {
            seen[x] = true;
        }
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        let colored: Vec<_> = (0..self.n)
            .filter(|&v| !self.colors[v].is_empty())
            .map(|v| (v, &self.colors[v]))
            .collect();
        f.debug_struct("ColoredGraph")
            .field("n", &self.n)
            .field("edges", &edges)
            .field("colors", &colored)
            .finish()
    }
}

/// A bijection `V(G) -> {0..n-1}`; `mapping[v]` is the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn identity(n: usize) -> Self {
        Labeling((0..n).collect())
    }

    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || seen[x] {
                return Err(Error::InvalidLabeling(format!(
                    "{mapping:?} is not a bijection onto 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Labeling(mapping))
    }

    /// Labeling that sends `order[p]` to position `p`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut mapping = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || mapping[v] != usize::MAX {
                return Err(Error::InvalidLabeling(format!(
                    "order {order:?} is not a permutation of 0..{n}"
                )));
            }
            mapping[v] = p;
        }
        Ok(Labeling(mapping))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (v, &x) in self.0.iter().enumerate() {
            inv[x] = v;
        }
        Labeling(inv)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Labeling) -> Self {
        Labeling(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Vertices listed by their image, i.e. the inverse as an order.
    pub fn order(&self) -> Vec<usize> {
        self.inverse().0
    }
}

/// Output of an invariant: an opaque byte string, ordered by length first
/// and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn new(bytes: Vec<u8>) -> Self {
        CanonicalCode(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `G^σ`: vertex `σ(v)` of the result carries the colors of `v`, and
/// `{σ(u), σ(v)}` is an edge iff `{u, v}` is.
pub fn apply_permutation(g: &ColoredGraph, sigma: &Labeling) -> Result<ColoredGraph> {
    if sigma.len() != g.n() {
        return Err(Error::InvalidLabeling(format!(
            "labeling has length {} but the graph has {} vertices",
            sigma.len(),
            g.n()
        )));
    }
    let mut out = ColoredGraph::new(g.n());
    for (u, v) in g.edges() {
        out.add_edge(sigma.image(u), sigma.image(v))?;
    }
    for v in 0..g.n() {
        out.colors[sigma.image(v)] = g.colors[v].clone();
    }
    Ok(out)
}

/// Encodes the labeled graph. Layout: `n` as u64 big-endian, then one chunk
/// per vertex `j` in order, holding its color count (u32 BE), its colors
/// (u64 BE each) and the adjacency bits to vertices `0..j` packed MSB-first
/// into `ceil(j / 8)` bytes.
///
/// Each chunk depends only on the vertex at `j` and the vertices before it,
/// which lets the brute-force invariant minimize over labelings with a
/// prefix-pruned search.
pub fn encode(g: &ColoredGraph) -> CanonicalCode {
    let order: Vec<usize> = (0..g.n()).collect();
    CanonicalCode(encode_order(g, &order))
}

pub(crate) fn encode_header(n: usize, out: &mut Vec<u8>) {
    out.extend_from_slice(&(n as u64).to_be_bytes());
}

/// Chunk for the vertex placed right after `prefix`.
pub(crate) fn encode_chunk(g: &ColoredGraph, prefix: &[usize], v: usize, out: &mut Vec<u8>) {
    let colors = g.colors(v);
    out.extend_from_slice(&(colors.len() as u32).to_be_bytes());
    for c in colors {
        out.extend_from_slice(&c.to_be_bytes());
    }
    for block in prefix.chunks(8) {
        let mut byte = 0u8;
        for (i, &u) in block.iter().enumerate() {
            if g.has_edge(u, v) {
                byte |= 0x80 >> i;
            }
        }
        out.push(byte);
    }
}

/// Encoding of `G^σ` where `order[p]` is the vertex sent to position `p`.
pub(crate) fn encode_order(g: &ColoredGraph, order: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + order.len() * (8 + order.len() / 8));
    encode_header(order.len(), &mut out);
    for p in 0..order.len() {
        encode_chunk(g, &order[..p], order[p], &mut out);
    }
    out
}
