//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is stored as one `u64` neighbour mask per vertex, which caps the
//! order at 62 (the single-byte graph6 size range). Graphs are immutable once
//! built; every perturbation in [`crate::perturb`] returns a new value.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    degrees: Vec<usize>,
}

/// Position of the pair `{i, j}` in the column-major upper-triangle order
/// used by graph6 and by the bitmask enumeration: (0,1); (0,2),(1,2); ...
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Number of vertex pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(n))
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            adj: vec![0; n],
            degrees: vec![0; n],
        })
    }

    /// Builds a graph from a list of vertex pairs. Duplicates (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Graph whose edge `{i, j}` is present iff bit [`pair_index`]`(i, j)` of
    /// `mask` is set. Requires `pair_count(n) <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_order(n)?;
        if pair_count(n) > 64 {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut adj = vec![0u64; n];
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Caller guarantees a symmetric, loop-free mask table of length 1..=62.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        debug_assert!(!adj.is_empty() && adj.len() <= MAX_ORDER);
        let degrees = adj.iter().map(|m| m.count_ones() as usize).collect();
        Graph { adj, degrees }
    }

    /// Inverse of [`Graph::from_mask`]; `None` when the order is too large for
    /// a 64-bit edge mask.
    pub fn edge_mask(&self) -> Option<u64> {
        if pair_count(self.order()) > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (u, v) in self.edges() {
            mask |= 1 << pair_index(u, v);
        }
        Some(mask)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    /// Edges as `(u, v)` with `u < v`, sorted by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Sum of all degrees.
    pub fn volume(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.degrees[v] == 0
    }

    /// Vertex set reachable from `start`, as a bitmask.
    pub fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0).count_ones() as usize == self.order()
    }

    /// Connected components as vertex bitmasks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let full = all_vertices(self.order());
        let mut seen = 0u64;
        let mut out = Vec::new();
        while seen != full {
            let start = (!seen & full).trailing_zeros() as usize;
            let comp = self.component_mask(start);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.degrees.iter().all(|&d| d + 1 == n)
    }

    pub fn is_tree(&self) -> bool {
        self.size() + 1 == self.order() && self.is_connected()
    }

    /// True when the component containing `start` admits a proper 2-colouring.
    pub fn component_is_bipartite(&self, start: usize) -> bool {
        let comp = self.component_mask(start);
        let mut side = 1u64 << start;
        let mut other = 0u64;
        let mut frontier = side;
        let mut on_first = true;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            let (this, that) = if on_first { (&side, &mut other) } else { (&other, &mut side) };
            if next & this != 0 {
                return false;
            }
            let fresh = next & !*that;
            *that |= next;
            frontier = fresh;
            on_first = !on_first;
        }
        debug_assert_eq!(side | other, comp);
        true
    }

    /// Some connected component that contains an edge is bipartite.
    pub fn has_bipartite_nontrivial_component(&self) -> bool {
        self.components().into_iter().any(|c| {
            let v = c.trailing_zeros() as usize;
            c.count_ones() > 1 && self.component_is_bipartite(v)
        })
    }

    /// Subgraph induced by `vertices`, relabelled in increasing order of the
    /// original index. The second value maps new indices to old ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            if v >= self.order() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.order() });
            }
        }
        check_order(keep.len())?;
        let mut adj = vec![0u64; keep.len()];
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.has_edge(x, y) {
                    adj[a] |= 1 << b;
                }
            }
        }
        Ok((Graph::from_adjacency(adj), keep))
    }

    /// Removes vertex `x`, shifting higher indices down by one.
    pub fn delete_vertex(&self, x: usize) -> Result<Graph> {
        let keep: Vec<usize> = (0..self.order()).filter(|&v| v != x).collect();
        self.induced_subgraph(&keep).map(|(g, _)| g)
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// Iterates the set bit positions of `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub(crate) fn all_vertices(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Path,
    Cycle,
    Star,
    Complete,
}

/// One of the named graph families, written `kind:n` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NamedFamily {
    pub kind: FamilyKind,
    pub n: usize,
}

impl NamedFamily {
    pub fn new(kind: FamilyKind, n: usize) -> Result<Self> {
        let fam = NamedFamily { kind, n };
        fam.validate()?;
        Ok(fam)
    }

    fn validate(&self) -> Result<()> {
        check_order(self.n)?;
        if self.kind == FamilyKind::Cycle && self.n < 3 {
            return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {}", self.n)));
        }
        Ok(())
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::Complete => "complete",
        };
        write!(f, "{kind}:{}", self.n)
    }
}

impl FromStr for NamedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(s.to_string());
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let kind = match kind.trim().to_ascii_lowercase().as_str() {
            "path" | "p" => FamilyKind::Path,
            "cycle" | "c" => FamilyKind::Cycle,
            "star" | "s" => FamilyKind::Star,
            "complete" | "k" => FamilyKind::Complete,
            _ => return Err(bad()),
        };
        let n = n.trim().parse().map_err(|_| bad())?;
        NamedFamily::new(kind, n)
    }
}

/// Canonical labelled representative: the path runs 0-1-..-(n-1), the cycle
/// closes it with (n-1, 0), the star is centred at 0.
pub fn make_named(family: NamedFamily) -> Result<Graph> {
    family.validate()?;
    let n = family.n;
    let edges: Vec<(usize, usize)> = match family.kind {
        FamilyKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        FamilyKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        FamilyKind::Star => (1..n).map(|i| (0, i)).collect(),
        FamilyKind::Complete => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    };
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    make_named(NamedFamily::new(FamilyKind::Path, n)?)
}

pub fn cycle(n: usize) -> Result<Graph> {
    make_named(NamedFamily::new(FamilyKind::Cycle, n)?)
}

pub fn star(n: usize) -> Result<Graph> {
    make_named(NamedFamily::new(FamilyKind::Star, n)?)
}

pub fn complete(n: usize) -> Result<Graph> {
    make_named(NamedFamily::new(FamilyKind::Complete, n)?)
}

/// Parses the edge-list text format: a header line `n m`, then `m` lines
/// `u v` with 0-based endpoints. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let err = |line: usize, message: &str| Error::EdgeList { line, message: message.to_string() };
    let two = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace();
        let a = it.next().and_then(|t| t.parse().ok());
        let b = it.next().and_then(|t| t.parse().ok());
        match (a, b, it.next()) {
            (Some(a), Some(b), None) => Ok((a, b)),
            _ => Err(err(line, "expected two non-negative integers")),
        }
    };

    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header"))?;
    let (n, m) = two(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines.by_ref().take(m) {
        let (u, v) = two(line, l)?;
        if u >= n || v >= n {
            return Err(err(line, "endpoint out of range"));
        }
        if u == v {
            return Err(err(line, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(hline, &format!("header promises {m} edges, found {}", edges.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "trailing data after the last edge"));
    }
    Graph::from_edges(n, &edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
