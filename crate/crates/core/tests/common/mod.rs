//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use matchwidth::graph::{Graph, VertexOrdering};
use matchwidth::instances::Cnf;
use matchwidth::width::mw_of_ordering;

pub const CORPUS_SEED: u64 = 0x5eed_2024;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).tuple_combinations()).unwrap()
}

pub fn two_k2() -> Graph {
    Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
}

/// Graph on `n` vertices taking the pairs `(u, v)`, `u < v`, whose bit is
/// set in `mask` (pairs in lexicographic order).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = (0..n)
        .tuple_combinations()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).unwrap()
}

/// Largest set of pairwise disjoint edges, by enumerating edge subsets.
pub fn brute_matching(edges: &[(usize, usize)]) -> usize {
    let m = edges.len();
    assert!(m <= 20, "too many edges for brute force");
    let mut best = 0;
    for mask in 0u32..1 << m {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let mut used = 0u64;
        let ok = (0..m).filter(|&i| mask >> i & 1 == 1).all(|i| {
            let (u, v) = edges[i];
            let bits = 1u64 << u | 1u64 << v;
            let free = used & bits == 0;
            used |= bits;
            free
        });
        if ok {
            best = k;
        }
    }
    best
}

/// Smallest vertex set touching every edge, by enumerating vertex subsets.
pub fn brute_vertex_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Edges with exactly one end in `prefix`, by direct scan.
pub fn crossing_edges(g: &Graph, prefix: &[usize]) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| prefix.contains(&u) != prefix.contains(&v))
        .collect()
}

pub fn all_orderings(n: usize) -> impl Iterator<Item = VertexOrdering> {
    (0..n).permutations(n).map(move |p| VertexOrdering::new(p, n).unwrap())
}

/// Matching width as the minimum over all `n!` orderings.
pub fn brute_mw(g: &Graph) -> usize {
    all_orderings(g.n())
        .map(|sv| mw_of_ordering(g, &sv).unwrap().value)
        .min()
        .unwrap()
}

/// Vertex separation of one ordering, straight from the definition.
pub fn brute_vs_of(g: &Graph, sv: &[usize]) -> usize {
    (1..sv.len())
        .map(|i| {
            let prefix = &sv[..i];
            prefix
                .iter()
                .filter(|&&u| g.neighbors(u).iter().any(|w| !prefix.contains(w)))
                .count()
        })
        .max()
        .unwrap_or(0)
}

pub fn brute_pw(g: &Graph) -> usize {
    (0..g.n())
        .permutations(g.n())
        .map(|p| brute_vs_of(g, &p))
        .min()
        .unwrap()
}

/// Clause-by-clause satisfaction check.
pub fn satisfies(f: &Cnf, s: &[bool]) -> bool {
    f.clauses()
        .iter()
        .all(|c| c.iter().any(|l| s[l.var] == l.positive))
}

/// Fewest runs of strictly increasing positions covering `vars`, by trying
/// every set of cut points.
pub fn brute_min_segments(vars: &[usize], pos: &[usize]) -> usize {
    let len = vars.len();
    if len == 0 {
        return 1;
    }
    let mut best = len;
    for cuts in 0u32..1 << (len - 1) {
        let ok = (1..len).all(|i| cuts >> (i - 1) & 1 == 1 || pos[vars[i - 1]] < pos[vars[i]]);
        if ok {
            best = best.min(cuts.count_ones() as usize + 1);
        }
    }
    best
}
