//! Matching width and pathwidth.
//!
//! For an ordering `sv` the matching width is the largest maximum-matching
//! size over the prefix cuts `G_1 .. G_{n-1}`; the matching width of a graph
//! is the minimum of that over all orderings. Pathwidth is computed through
//! vertex separation, whose prefix cost is the number of prefix vertices with
//! a neighbour outside the prefix.
//!
//! Both exact minimisations are the same subset dynamic program, which is
//! valid because the cost of a prefix depends only on its vertex set.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    cut_graph, cut_matching_size_mask, max_bipartite_matching, min_vertex_cover, CutGraph, Graph,
    VertexCover, VertexOrdering,
};

/// Default vertex cap for the exact subset dynamic programs.
pub const DEFAULT_DP_CAP: usize = 20;

/// Upper limit on the cap: tables have `2^n` entries.
pub const MAX_DP_CAP: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub value: usize,
    /// Ordering attaining `value`.
    pub witness_ordering: Option<VertexOrdering>,
    /// Smallest prefix length attaining the maximum under `witness_ordering`.
    pub witness_prefix: Option<usize>,
}

/// Matching width of one ordering: `max_{1 <= i < n} ν(G_i)`.
pub fn mw_of_ordering(g: &Graph, sv: &VertexOrdering) -> Result<WidthReport> {
    let n = g.n();
    if sv.len() != n {
        return Err(Error::NotAPermutation(format!(
            "ordering has length {} but graph has {n} vertices",
            sv.len()
        )));
    }
    let mut value = 0;
    let mut witness_prefix = None;
    for i in 1..n {
        let nu = max_bipartite_matching(&cut_graph(g, sv, i)?).len();
        if witness_prefix.is_none() || nu > value {
            value = nu;
            witness_prefix = Some(i);
        }
    }
    Ok(WidthReport {
        value,
        witness_ordering: Some(sv.clone()),
        witness_prefix,
    })
}

/// Vertex-separation cost of an ordering; equal to the width of the path
/// decomposition it induces.
pub fn vertex_separation_of_ordering(g: &Graph, sv: &VertexOrdering) -> Result<WidthReport> {
    let n = g.n();
    if sv.len() != n {
        return Err(Error::NotAPermutation(format!(
            "ordering has length {} but graph has {n} vertices",
            sv.len()
        )));
    }
    let pos = sv.positions();
    // last[v]: position of the latest neighbour of v (or v itself)
    let last: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| pos[w]).fold(pos[v], usize::max))
        .collect();
    let mut value = 0;
    let mut witness_prefix = None;
    for i in 1..n {
        let boundary = sv.prefix(i).iter().filter(|&&v| last[v] >= i).count();
        if witness_prefix.is_none() || boundary > value {
            value = boundary;
            witness_prefix = Some(i);
        }
    }
    Ok(WidthReport {
        value,
        witness_ordering: Some(sv.clone()),
        witness_prefix,
    })
}

/// Exact matching width by subset dynamic programming. The witness is the
/// lexicographically smallest optimal ordering.
pub fn matching_width_exact(g: &Graph, cap: usize) -> Result<WidthReport> {
    let (adj, full) = dp_setup(g, cap, "matching width")?;
    let order = minimise_layout(g.n(), |s| cut_matching_size_mask(&adj, s, full))?;
    mw_of_ordering(g, &order)
}

/// Exact pathwidth via vertex separation. The witness ordering realises a
/// layout of that cost; see
/// [`crate::decomposition::path_decomposition_from_layout`].
pub fn pathwidth_exact(g: &Graph, cap: usize) -> Result<WidthReport> {
    let (adj, full) = dp_setup(g, cap, "pathwidth")?;
    let order = minimise_layout(g.n(), |s| boundary_size(&adj, s, full))?;
    vertex_separation_of_ordering(g, &order)
}

fn boundary_size(adj: &[u64], s: u64, full: u64) -> usize {
    let outside = full & !s;
    let mut rest = s;
    let mut count = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & outside != 0 {
            count += 1;
        }
    }
    count
}

fn dp_setup(g: &Graph, cap: usize, what: &'static str) -> Result<(Vec<u64>, u64)> {
    let cap = cap.min(MAX_DP_CAP);
    if g.n() > cap {
        return Err(Error::Capacity {
            what,
            size: g.n(),
            cap,
        });
    }
    let adj = g.adjacency_masks().expect("n within cap");
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Ok((adj, full))
}

/// Minimises `max_{prefix} cost(prefix set)` over orderings of `0..n`.
///
/// `rest[S]` is the best achievable maximum over the prefixes strictly
/// extending `S`; the ordering is then read off greedily, always taking the
/// smallest vertex that keeps the optimum reachable.
fn minimise_layout<F>(n: usize, cost: F) -> Result<VertexOrdering>
where
    F: Fn(u64) -> usize + Sync,
{
    if n == 0 {
        return Ok(VertexOrdering::identity(0));
    }
    let size = 1usize << n;
    let full = (size - 1) as u64;
    let costs: Vec<u8> = (0..size)
        .into_par_iter()
        .map(|s| {
            let s = s as u64;
            if s == 0 || s == full {
                0
            } else {
                cost(s) as u8
            }
        })
        .collect();

    let mut rest = vec![0u8; size];
    for s in (0..size - 1).rev() {
        let mut best = u8::MAX;
        let mut free = full & !(s as u64);
        while free != 0 {
            let v = free.trailing_zeros();
            free &= free - 1;
            let t = s | (1usize << v);
            best = best.min(costs[t].max(rest[t]));
        }
        rest[s] = best;
    }

    let optimum = rest[0];
    let mut seq = Vec::with_capacity(n);
    let mut s = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| s & (1 << v) == 0 && costs[s | 1 << v].max(rest[s | 1 << v]) <= optimum)
            .expect("optimum is reachable");
        seq.push(v);
        s |= 1 << v;
    }
    VertexOrdering::new(seq, n)
}

/// Result of extending a vertex set to a vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedCover {
    pub cover: VertexCover,
    /// Whether `cover` has size `τ(c)`, i.e. is a minimum cover containing `x`.
    pub is_minimum: bool,
}

/// `X ∪ minVC(c \ X)`. When some minimum cover of `c` contains `X` this is a
/// minimum cover as well; `is_minimum` reports whether that happened.
pub fn min_vc_containing(c: &CutGraph, x: &BTreeSet<usize>) -> Result<ExtendedCover> {
    if let Some(&v) = x.iter().find(|&&v| v >= c.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: c.n() });
    }
    let tau = max_bipartite_matching(c).len();
    let mut verts = min_vertex_cover(&c.without(x)).verts;
    verts.extend(x.iter().copied());
    let cover = VertexCover { verts };
    Ok(ExtendedCover {
        is_minimum: cover.len() == tau,
        cover,
    })
}

/// Minimum covers `VC_1 .. VC_{n-1}` of the cuts of an ordering with
/// `VC_i ∩ ¬V_{i+1} ⊆ VC_{i+1}` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SettledChain {
    /// `covers[i - 1]` is `VC_i`.
    pub covers: Vec<VertexCover>,
}

impl SettledChain {
    /// Re-checks minimality of every cover and the carry-over condition.
    pub fn check(&self, g: &Graph, sv: &VertexOrdering) -> Result<()> {
        let n = g.n();
        if self.covers.len() != n.saturating_sub(1) {
            return Err(Error::InvariantViolation(format!(
                "chain has {} covers, expected {}",
                self.covers.len(),
                n.saturating_sub(1)
            )));
        }
        let pos = sv.positions();
        for (idx, vc) in self.covers.iter().enumerate() {
            let i = idx + 1;
            let c = cut_graph(g, sv, i)?;
            if !vc.covers(&c) {
                return Err(Error::InvariantViolation(format!("VC_{i} is not a cover of G_{i}")));
            }
            if vc.len() != max_bipartite_matching(&c).len() {
                return Err(Error::InvariantViolation(format!("VC_{i} is not minimum")));
            }
            if let Some(next) = self.covers.get(idx + 1) {
                // ¬V_{i+1}: positions >= i + 1
                if let Some(&v) = vc
                    .verts
                    .iter()
                    .find(|&&v| pos[v] > i && !next.contains(v))
                {
                    return Err(Error::InvariantViolation(format!(
                        "vertex {v} of VC_{i} on the right of V_{} is missing from VC_{}",
                        i + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds a settled chain: `VC_1` is the König cover of `G_1` and each
/// `VC_{i+1}` is the minimum cover of `G_{i+1}` extending `VC_i ∩ ¬V_{i+1}`.
pub fn settled_vertex_covers(g: &Graph, sv: &VertexOrdering) -> Result<SettledChain> {
    let n = g.n();
    if sv.len() != n {
        return Err(Error::NotAPermutation(format!(
            "ordering has length {} but graph has {n} vertices",
            sv.len()
        )));
    }
    let mut covers: Vec<VertexCover> = Vec::with_capacity(n.saturating_sub(1));
    let pos = sv.positions();
    for i in 1..n {
        let c = cut_graph(g, sv, i)?;
        let vc = match covers.last() {
            None => min_vertex_cover(&c),
            Some(prev) => {
                let carry: BTreeSet<usize> =
                    prev.verts.iter().copied().filter(|&v| pos[v] >= i).collect();
                let ext = min_vc_containing(&c, &carry)?;
                if !ext.is_minimum {
                    return Err(Error::InvariantViolation(format!(
                        "no minimum cover of G_{i} extends VC_{} ∩ ¬V_{i}",
                        i - 1
                    )));
                }
                ext.cover
            }
        };
        covers.push(vc);
    }
    Ok(SettledChain { covers })
}
