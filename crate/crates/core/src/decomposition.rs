//! Tree and path decompositions: validation, the clique-tree decomposition of
//! `CT_{r,k}` and its extension to the primal graph of `F_{r,k}`, and the two
//! conversions between vertex orderings and path decompositions.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrdering};
use crate::instances;
use crate::width::settled_vertex_covers;

pub type Bag = BTreeSet<usize>;

/// The first property a decomposition fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Violation {
    /// The nodes and tree edges do not form a tree.
    Tree { reason: String },
    /// The vertex is in no bag.
    Union { vertex: usize },
    /// No bag contains both ends of the edge.
    Containment { u: usize, v: usize },
    /// The bags containing the vertex do not induce a subtree.
    Connectedness { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Tree { reason } => write!(f, "not a tree: {reason}"),
            Violation::Union { vertex } => write!(f, "union: vertex {vertex} is in no bag"),
            Violation::Containment { u, v } => {
                write!(f, "containment: no bag contains edge {{{u}, {v}}}")
            }
            Violation::Connectedness { vertex } => {
                write!(f, "connectedness: bags containing {vertex} are not connected")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid { width: usize },
    Invalid { violation: Violation },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

fn width_of(bags: &[Bag]) -> usize {
    bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Bag>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Decomposition with nodes `0..bags.len()` joined by `tree_edges`. Tree
    /// shape is checked by [`validate_decomposition`], not here.
    pub fn new(bags: Vec<Bag>, tree_edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, tree_edges }
    }

    /// Decomposition given by parent links; `None` marks the root.
    pub fn from_parents(bags: Vec<Bag>, parents: &[Option<usize>]) -> Self {
        let tree_edges = parents
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.map(|p| (p, t)))
            .collect();
        TreeDecomposition { bags, tree_edges }
    }

    pub fn bags(&self) -> &[Bag] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn width(&self) -> usize {
        width_of(&self.bags)
    }
}

/// A path decomposition stored as its bag sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Bag>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Bag>) -> Self {
        PathDecomposition { bags }
    }

    pub fn width(&self) -> usize {
        width_of(&self.bags)
    }

    /// Drops every bag equal to its predecessor.
    pub fn dedup_consecutive(&self) -> PathDecomposition {
        let mut bags = self.bags.clone();
        bags.dedup();
        PathDecomposition { bags }
    }
}

/// Anything that can be viewed as a tree decomposition.
pub trait Decomposition {
    fn to_tree(&self) -> TreeDecomposition;
}

impl Decomposition for TreeDecomposition {
    fn to_tree(&self) -> TreeDecomposition {
        self.clone()
    }
}

impl Decomposition for PathDecomposition {
    fn to_tree(&self) -> TreeDecomposition {
        let edges = (1..self.bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition::new(self.bags.clone(), edges)
    }
}

/// Checks union, containment and connectedness (after checking that the
/// underlying structure is a tree) and reports the first failure.
pub fn validate_decomposition<D: Decomposition + ?Sized>(g: &Graph, d: &D) -> Result<Verdict> {
    let td = d.to_tree();
    for (t, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(Error::Malformed(format!(
                "bag {t} holds vertex {v}, graph has {} vertices",
                g.n()
            )));
        }
    }
    let invalid = |violation| Ok(Verdict::Invalid { violation });

    let nodes = td.bags.len();
    let mut tadj = vec![Vec::new(); nodes];
    for &(a, b) in &td.tree_edges {
        if a >= nodes || b >= nodes || a == b {
            return invalid(Violation::Tree {
                reason: format!("bad tree edge ({a}, {b})"),
            });
        }
        tadj[a].push(b);
        tadj[b].push(a);
    }
    if nodes > 0 {
        if td.tree_edges.len() != nodes - 1 {
            return invalid(Violation::Tree {
                reason: format!("{} edges on {nodes} nodes", td.tree_edges.len()),
            });
        }
        if reachable(&tadj, 0, |_| true).iter().filter(|&&r| r).count() != nodes {
            return invalid(Violation::Tree {
                reason: "disconnected".into(),
            });
        }
    } else if !td.tree_edges.is_empty() {
        return invalid(Violation::Tree {
            reason: "edges without nodes".into(),
        });
    }

    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(t);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return invalid(Violation::Union { vertex: v });
    }
    for &(u, v) in g.edges() {
        if !holders[u].iter().any(|&t| td.bags[t].contains(&v)) {
            return invalid(Violation::Containment { u, v });
        }
    }
    for (v, held) in holders.iter().enumerate() {
        let seen = reachable(&tadj, held[0], |t| td.bags[t].contains(&v));
        if held.iter().any(|&t| !seen[t]) {
            return invalid(Violation::Connectedness { vertex: v });
        }
    }
    Ok(Verdict::Valid { width: td.width() })
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(t) = queue.pop_front() {
        for &s in &adj[t] {
            if !seen[s] && allowed(s) {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    seen
}

/// Decompositions of `CT_{r,k}` and of the primal graph of `F_{r,k}`.
#[derive(Clone, Debug)]
pub struct CtreeDecomposition {
    /// Tree `T_r`; node `a` holds the clique of `a` and, below the root, the
    /// clique of its parent.
    pub base: TreeDecomposition,
    /// `base` plus one node per edge `e = {u, v}` of `CT_{r,k}` holding
    /// `{u, v, x_e}`, attached to the base node whose bag holds `u` and `v`.
    pub extended: TreeDecomposition,
}

/// Vertex ids follow [`instances::ct_graph`]; in the extension the variable
/// ids follow [`instances::cnf_of_graph`].
pub fn ctree_decomposition(r: u32, k: usize) -> Result<CtreeDecomposition> {
    if k == 0 {
        return Err(Error::Param("k must be at least 1".into()));
    }
    let ct = instances::ct_graph(r, k)?;
    let nodes = instances::tree_node_count(r)?;
    let clique = |a: usize| (a * k..(a + 1) * k).collect::<Bag>();
    let parents: Vec<Option<usize>> = (0..nodes)
        .map(|a| if a == 0 { None } else { Some((a - 1) / 2) })
        .collect();
    let bags: Vec<Bag> = (0..nodes)
        .map(|a| {
            let mut b = clique(a);
            if let Some(p) = parents[a] {
                b.extend(clique(p));
            }
            b
        })
        .collect();
    let base = TreeDecomposition::from_parents(bags.clone(), &parents);

    let mut ext_bags = bags;
    let mut ext_edges = base.tree_edges.clone();
    let offset = ct.n();
    for (idx, &(u, v)) in ct.edges().iter().enumerate() {
        // heap numbering: the child node has the larger id
        let host = (u / k).max(v / k);
        let t = ext_bags.len();
        ext_bags.push(Bag::from([u, v, offset + idx]));
        ext_edges.push((host, t));
    }
    Ok(CtreeDecomposition {
        base,
        extended: TreeDecomposition::new(ext_bags, ext_edges),
    })
}

/// Orders vertices by the index of the first bag containing them, ties by
/// id. The result has matching width at most `width(pd) + 1`.
pub fn ordering_from_path_decomposition(g: &Graph, pd: &PathDecomposition) -> Result<VertexOrdering> {
    if let Verdict::Invalid { violation } = validate_decomposition(g, pd)? {
        return Err(Error::InvalidDecomposition(violation));
    }
    let mut first = vec![usize::MAX; g.n()];
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            first[v] = first[v].min(i);
        }
    }
    let mut seq: Vec<usize> = (0..g.n()).collect();
    seq.sort_by_key(|&v| (first[v], v));
    VertexOrdering::new(seq, g.n())
}

/// Path decomposition with bags `VC_{i-1} ∪ VC_i ∪ {v_i}` from a settled
/// chain of `sv`; its width is at most twice the matching width of `sv`.
/// Bag `i` corresponds to position `i` of `sv`.
pub fn path_decomposition_from_ordering(g: &Graph, sv: &VertexOrdering) -> Result<PathDecomposition> {
    let chain = settled_vertex_covers(g, sv)?;
    let n = g.n();
    let bags = (0..n)
        .map(|i| {
            let mut bag = Bag::from([sv.as_slice()[i]]);
            if i > 0 {
                bag.extend(chain.covers[i - 1].verts.iter().copied());
            }
            if let Some(vc) = chain.covers.get(i) {
                bag.extend(vc.verts.iter().copied());
            }
            bag
        })
        .collect();
    Ok(PathDecomposition { bags })
}

/// The path decomposition induced by a layout: bag `i` is `v_i` plus every
/// earlier vertex with a neighbour at position `>= i`. Its width is the
/// vertex separation of the layout.
pub fn path_decomposition_from_layout(g: &Graph, sv: &VertexOrdering) -> Result<PathDecomposition> {
    let n = g.n();
    if sv.len() != n {
        return Err(Error::NotAPermutation(format!(
            "ordering has length {} but graph has {n} vertices",
            sv.len()
        )));
    }
    let pos = sv.positions();
    let last: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| pos[w]).fold(pos[v], usize::max))
        .collect();
    let seq = sv.as_slice();
    let bags = (0..n)
        .map(|i| {
            let mut bag: Bag = seq[..i].iter().copied().filter(|&u| last[u] >= i).collect();
            bag.insert(seq[i]);
            bag
        })
        .collect();
    Ok(PathDecomposition { bags })
}
