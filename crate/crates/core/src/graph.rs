//! Undirected simple graphs over dense vertex ids, vertex orderings, prefix
//! cuts, and bipartite matching / König vertex covers on those cuts.
//!
//! Every cut `G_i` of an ordering is bipartite by construction: its left side
//! is the first `i` vertices and its edges are exactly the edges of `G` with
//! one end on each side. Matching and cover routines are deterministic: left
//! vertices are processed in ascending id order and neighbours are explored in
//! ascending id order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Normalised `(min, max)` pairs, sorted.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let e = (u.min(v), u.max(v));
        match self.edges.binary_search(&e) {
            Ok(_) => Err(Error::DuplicateEdge(e.0, e.1)),
            Err(pos) => {
                self.edges.insert(pos, e);
                let a = &mut self.adj[u];
                let p = a.partition_point(|&x| x < v);
                a.insert(p, v);
                let b = &mut self.adj[v];
                let p = b.partition_point(|&x| x < u);
                b.insert(p, u);
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Index of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Adjacency bitmasks, available while `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

fn check_permutation(seq: &[usize], n: usize) -> Result<()> {
    if seq.len() != n {
        return Err(Error::NotAPermutation(format!(
            "length {} but expected {}",
            seq.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(Error::NotAPermutation(format!("entry {v} out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation(format!("entry {v} repeated")));
        }
    }
    Ok(())
}

/// A permutation of the vertex ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexOrdering(Vec<usize>);

impl VertexOrdering {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        check_permutation(&seq, n)?;
        Ok(VertexOrdering(seq))
    }

    /// The natural order `0, 1, .., n-1`.
    pub fn identity(n: usize) -> Self {
        VertexOrdering((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// `position[v]` is the index of `v` in the ordering.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The first `i` vertices.
    pub fn prefix(&self, i: usize) -> &[usize] {
        &self.0[..i]
    }
}

/// Bipartite graph on all vertices of a host graph whose edges all cross
/// between `left` and its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutGraph {
    in_left: Vec<bool>,
    /// `(left end, right end)` pairs, sorted.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl CutGraph {
    /// Builds a cut on vertices `0..n` with the given left side. Every edge
    /// must have exactly one end in `left`; edges may be given in either
    /// orientation.
    pub fn new<I>(n: usize, left: &[usize], edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut in_left = vec![false; n];
        for &v in left {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            in_left[v] = true;
        }
        let mut es = Vec::new();
        for (a, b) in edges {
            for w in [a, b] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            let e = match (in_left[a], in_left[b]) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => {
                    return Err(Error::Malformed(format!(
                        "edge {{{a}, {b}}} does not cross the cut"
                    )))
                }
            };
            es.push(e);
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(l, r) in &es {
            adj[l].push(r);
            adj[r].push(l);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(CutGraph {
            in_left,
            edges: es,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.in_left.len()
    }

    pub fn is_left(&self, v: usize) -> bool {
        self.in_left[v]
    }

    pub fn left(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.in_left[v])
    }

    pub fn right(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| !self.in_left[v])
    }

    /// Crossing edges as `(left, right)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// The cut with the vertices of `x` and their incident edges removed.
    /// Removed vertices stay in the vertex range but become isolated.
    pub fn without(&self, x: &BTreeSet<usize>) -> CutGraph {
        let left: Vec<usize> = self.left().collect();
        let edges = self
            .edges
            .iter()
            .filter(|(l, r)| !x.contains(l) && !x.contains(r))
            .copied();
        CutGraph::new(self.n(), &left, edges).expect("sub-cut of a valid cut")
    }
}

/// Cut `G_i` of `g` under `sv`: left side is the first `i` vertices of `sv`.
pub fn cut_graph(g: &Graph, sv: &VertexOrdering, i: usize) -> Result<CutGraph> {
    let n = g.n();
    if sv.len() != n {
        return Err(Error::NotAPermutation(format!(
            "ordering has length {} but graph has {} vertices",
            sv.len(),
            n
        )));
    }
    if i < 1 || i + 1 > n {
        return Err(Error::PrefixOutOfRange {
            i,
            max: n.saturating_sub(1),
        });
    }
    Ok(cut_of_prefix_set(g, sv.prefix(i)))
}

pub(crate) fn cut_of_prefix_set(g: &Graph, prefix: &[usize]) -> CutGraph {
    let mut in_left = vec![false; g.n()];
    for &v in prefix {
        in_left[v] = true;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| in_left[u] != in_left[v])
        .copied();
    CutGraph::new(g.n(), prefix, edges).expect("prefix cut is bipartite")
}

/// A set of vertex-disjoint edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// `(left, right)` pairs sorted by left end.
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A set of vertices touching every edge of some graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    pub verts: BTreeSet<usize>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    pub fn covers(&self, c: &CutGraph) -> bool {
        c.edges()
            .iter()
            .all(|(l, r)| self.verts.contains(l) || self.verts.contains(r))
    }
}

/// Maximum matching of a cut by augmenting paths (Kuhn's algorithm).
pub fn max_bipartite_matching(c: &CutGraph) -> Matching {
    let n = c.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for l in c.left() {
        let mut seen = vec![false; n];
        augment(c, l, &mut mate, &mut seen);
    }
    let pairs = c
        .left()
        .filter_map(|l| mate[l].map(|r| (l, r)))
        .collect();
    Matching { pairs }
}

fn augment(c: &CutGraph, l: usize, mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &r in c.neighbors(l) {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match mate[r] {
            None => true,
            Some(l2) => augment(c, l2, mate, seen),
        };
        if free {
            mate[r] = Some(l);
            mate[l] = Some(r);
            return true;
        }
    }
    false
}

/// König cover from a maximum matching: with `Z` the vertices reachable from
/// unmatched left vertices along alternating paths, the cover is
/// `(L \ Z) ∪ (R ∩ Z)`.
pub fn min_vertex_cover_bipartite(c: &CutGraph, m: &Matching) -> Result<VertexCover> {
    let n = c.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for &(l, r) in &m.pairs {
        if l >= n || r >= n || !c.is_left(l) || c.is_left(r) || c.neighbors(l).binary_search(&r).is_err() {
            return Err(Error::Inconsistent(format!("({l}, {r}) is not an edge of the cut")));
        }
        if mate[l].is_some() || mate[r].is_some() {
            return Err(Error::Inconsistent(format!("pair ({l}, {r}) shares a vertex")));
        }
        mate[l] = Some(r);
        mate[r] = Some(l);
    }

    let mut reached = vec![false; n];
    let mut queue = VecDeque::new();
    for l in c.left().filter(|&l| mate[l].is_none()) {
        reached[l] = true;
        queue.push_back(l);
    }
    while let Some(l) = queue.pop_front() {
        for &r in c.neighbors(l) {
            if reached[r] || mate[l] == Some(r) {
                continue;
            }
            reached[r] = true;
            if let Some(l2) = mate[r] {
                if !reached[l2] {
                    reached[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }

    let verts: BTreeSet<usize> = (0..n)
        .filter(|&v| {
            if c.is_left(v) {
                !reached[v] && !c.neighbors(v).is_empty()
            } else {
                reached[v]
            }
        })
        .collect();
    let cover = VertexCover { verts };
    if cover.len() != m.len() || !cover.covers(c) {
        return Err(Error::Inconsistent(format!(
            "cover of size {} from matching of size {}; matching is not maximum",
            cover.len(),
            m.len()
        )));
    }
    Ok(cover)
}

/// Minimum vertex cover of a cut, via its maximum matching.
pub fn min_vertex_cover(c: &CutGraph) -> VertexCover {
    let m = max_bipartite_matching(c);
    min_vertex_cover_bipartite(c, &m).expect("Kuhn matching is maximum")
}

/// `ν` of the cut between `s` and the rest of the vertices in `full`, on
/// adjacency bitmasks. Used by the subset dynamic programs.
pub(crate) fn cut_matching_size_mask(adj: &[u64], s: u64, full: u64) -> usize {
    let right = full & !s;
    let mut mate_of_right = [u8::MAX; 64];
    let mut size = 0;
    let mut rest = s;
    while rest != 0 {
        let l = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[l] & right == 0 {
            continue;
        }
        let mut seen = 0u64;
        if augment_mask(adj, right, l, &mut mate_of_right, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment_mask(adj: &[u64], right: u64, l: usize, mate: &mut [u8; 64], seen: &mut u64) -> bool {
    let mut cand = adj[l] & right & !*seen;
    while cand != 0 {
        let r = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if *seen & (1 << r) != 0 {
            continue;
        }
        *seen |= 1 << r;
        let free = mate[r] == u8::MAX || augment_mask(adj, right, mate[r] as usize, mate, seen);
        if free {
            mate[r] = l as u8;
            return true;
        }
    }
    false
}
