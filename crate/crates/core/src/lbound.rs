//! Lower-bound harness: witness cuts, the assignment family, separation
//! vectors and the size bound `|Z| ≥ 2^{t/(2c-1)}`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{greedy_segments, BranchingProgram, ComputationalPath, VarOrder};
use crate::error::{Error, Result};
use crate::graph::{cut_graph, max_bipartite_matching, Graph, VertexOrdering};
use crate::instances::{Cnf, VarRole};

/// Largest family parameter `t` (the family has `2^t` members).
pub const FAMILY_CAP: usize = 20;

/// A prefix of an ordering together with `t` prefix-to-suffix matching edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCut {
    pub prefix_len: usize,
    pub prefix: BTreeSet<usize>,
    /// `(u_i, v_i)` with `u_i` in the prefix and `v_i` outside it.
    pub matching: Vec<(usize, usize)>,
}

impl WitnessCut {
    pub fn t(&self) -> usize {
        self.matching.len()
    }
}

/// First prefix of `sv` whose cut has a matching of size at least `t`; the
/// matching is cut down to exactly `t` edges.
pub fn witness_cut(g: &Graph, sv: &VertexOrdering, t: usize) -> Result<WitnessCut> {
    if sv.len() != g.n() {
        return Err(Error::NotAPermutation(format!(
            "ordering has {} entries, graph has {} vertices",
            sv.len(),
            g.n()
        )));
    }
    if t == 0 {
        return Ok(WitnessCut {
            prefix_len: 0,
            prefix: BTreeSet::new(),
            matching: Vec::new(),
        });
    }
    for i in 1..g.n() {
        let m = max_bipartite_matching(&cut_graph(g, sv, i)?);
        if m.len() >= t {
            return Ok(WitnessCut {
                prefix_len: i,
                prefix: sv.prefix(i).iter().copied().collect(),
                matching: m.pairs[..t].to_vec(),
            });
        }
    }
    Err(Error::NotFound(format!("no prefix cut has a matching of size {t}")))
}

/// The `2^t` assignments of the witness family. Member `b` sets
/// `X_{u_i} = bit i of b`, `X_{v_i}` to the opposite value, `X_{u_i v_i}` to
/// false and every other variable to true.
pub fn assignment_family(f: &Cnf, w: &WitnessCut) -> Result<Vec<Vec<bool>>> {
    let t = w.t();
    if t > FAMILY_CAP {
        return Err(Error::Capacity {
            what: "assignment family parameter t",
            size: t,
            cap: FAMILY_CAP,
        });
    }
    let missing = |what: String| Error::Precondition(format!("formula has no variable for {what}"));
    let mut triples = Vec::with_capacity(t);
    for &(u, v) in &w.matching {
        let xu = f.vertex_var(u).ok_or_else(|| missing(format!("vertex {u}")))?;
        let xv = f.vertex_var(v).ok_or_else(|| missing(format!("vertex {v}")))?;
        let xe = f.edge_var(u, v).ok_or_else(|| missing(format!("edge {u}-{v}")))?;
        triples.push((xu, xv, xe));
    }
    Ok((0u64..1 << t)
        .map(|b| {
            let mut s = vec![true; f.num_vars()];
            for (i, &(xu, xv, xe)) in triples.iter().enumerate() {
                let bit = (b >> i) & 1 == 1;
                s[xu] = bit;
                s[xv] = !bit;
                s[xe] = false;
            }
            s
        })
        .collect())
}

/// Vertex variables on either side of a witness cut; other variables are
/// neutral.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSplit {
    pub x1: BTreeSet<usize>,
    pub x2: BTreeSet<usize>,
}

impl VarSplit {
    /// `x1` = vertex variables of the prefix, `x2` = the remaining vertex
    /// variables.
    pub fn of_cut(f: &Cnf, w: &WitnessCut) -> Self {
        let mut split = VarSplit::default();
        for (x, role) in f.var_names().iter().enumerate() {
            if let VarRole::Vertex(u) = *role {
                if w.prefix.contains(&u) {
                    split.x1.insert(x);
                } else {
                    split.x2.insert(x);
                }
            }
        }
        split
    }
}

/// The vertex order induced by a variable order: `u` before `v` iff `X_u`
/// precedes `X_v`.
pub fn vertex_order_of(f: &Cnf, g: &Graph, sv_star: &VarOrder) -> Result<VertexOrdering> {
    let pos = sv_star.positions();
    let mut keyed = Vec::with_capacity(g.n());
    for u in 0..g.n() {
        let x = f
            .vertex_var(u)
            .ok_or_else(|| Error::Precondition(format!("formula has no variable for vertex {u}")))?;
        keyed.push((pos[x], u));
    }
    keyed.sort_unstable();
    VertexOrdering::new(keyed.into_iter().map(|(_, u)| u).collect(), g.n())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeparationVector(pub Vec<usize>);

/// Separation vector of a computational path: the path is cut greedily into
/// `sv_star`-ordered segments (padded with one-node segments at the leaf up
/// to `c`), each segment is split after its last `x1` edge (at its first
/// node if only `x2` variables occur, at its end if neither does), and the
/// vector lists the ends of the first `2c - 1` parts.
pub fn separation_vector(
    z: &BranchingProgram,
    p: &ComputationalPath,
    sv_star: &VarOrder,
    split: &VarSplit,
    c: usize,
) -> Result<SeparationVector> {
    if c == 0 {
        return Err(Error::Param("c must be at least 1".into()));
    }
    let nodes = z.path_nodes(p);
    let labelled: Vec<(usize, usize)> = p
        .edges
        .iter()
        .enumerate()
        .filter_map(|(j, &e)| z.edges()[e].label.map(|l| (j, l.var)))
        .collect();
    let vars: Vec<usize> = labelled.iter().map(|&(_, x)| x).collect();
    let starts = greedy_segments(&vars, &sv_star.positions());
    if starts.len() > c {
        return Err(Error::Precondition(format!(
            "path needs {} ordered segments, more than c = {c}",
            starts.len()
        )));
    }
    // segment i spans path node indices bounds[i]..=bounds[i + 1]
    let mut bounds = vec![0];
    bounds.extend(starts[1..].iter().map(|&s| labelled[s].0));
    bounds.resize(c, p.edges.len());
    bounds.push(p.edges.len());

    let side = |x: usize| {
        if split.x1.contains(&x) {
            1
        } else if split.x2.contains(&x) {
            2
        } else {
            0
        }
    };
    let mut vector = Vec::with_capacity(2 * c - 1);
    for i in 0..c {
        let (a, b) = (bounds[i], bounds[i + 1]);
        let inside = labelled.iter().filter(|&&(j, _)| a <= j && j < b);
        let last_x1 = inside.clone().filter(|&&(_, x)| side(x) == 1).map(|&(j, _)| j).next_back();
        let any_x2 = inside.clone().any(|&(_, x)| side(x) == 2);
        let cut = match (last_x1, any_x2) {
            (Some(j), _) => j + 1,
            (None, true) => a,
            (None, false) => b,
        };
        for &(j, x) in inside {
            let ok = if j < cut { side(x) != 2 } else { side(x) != 1 };
            if !ok {
                return Err(Error::Precondition(format!(
                    "segment {} mixes prefix and suffix variables out of order",
                    i + 1
                )));
            }
        }
        vector.push(nodes[cut]);
        if i + 1 < c {
            vector.push(nodes[b]);
        }
    }
    Ok(SeparationVector(vector))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessReport {
    /// One vector per family member, by member index.
    pub vectors: Vec<SeparationVector>,
    /// Member pairs `(i, j)`, `i < j`, with equal vectors; `i` is the first
    /// member carrying that vector.
    pub collisions: Vec<(usize, usize)>,
}

impl DistinctnessReport {
    pub fn distinct(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Separation vectors of the lexicographically smallest accepting path of
/// each family member, and any collisions among them.
pub fn check_distinctness(
    z: &BranchingProgram,
    family: &[Vec<bool>],
    sv_star: &VarOrder,
    split: &VarSplit,
    c: usize,
) -> Result<DistinctnessReport> {
    let vectors = family
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let p = z.accepting_path(s)?.ok_or_else(|| {
                Error::Equivalence(format!("family member {i} satisfies the formula but has no accepting path"))
            })?;
            separation_vector(z, &p, sv_star, split, c)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut first: BTreeMap<&SeparationVector, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(&j) = first.get(v) {
            collisions.push((j, i));
        } else {
            first.insert(v, i);
        }
    }
    Ok(DistinctnessReport { vectors, collisions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub pass: bool,
    /// Smallest integer `b` with `b^e ≥ 2^t`.
    pub bound: BigUint,
}

/// `size ≥ 2^{num/den}` decided as `size^den ≥ 2^num`.
fn power_bound(size: usize, num: usize, den: u32) -> BoundVerdict {
    let target = BigUint::from(1u8) << num;
    let pass = BigUint::from(size).pow(den) >= target;
    let mut bound = target.nth_root(den);
    if bound.pow(den) < target {
        bound += 1u8;
    }
    BoundVerdict { pass, bound }
}

/// `size ≥ 2^{t/(2c-1)}`.
pub fn verify_size_bound(size: usize, t: usize, c: usize) -> Result<BoundVerdict> {
    if c == 0 {
        return Err(Error::Param("c must be at least 1".into()));
    }
    Ok(power_bound(size, t, (2 * c - 1) as u32))
}

/// `size ≥ 2^{rk/(4c-2)}`, the bound for programs representing `F_{r,k}`.
pub fn verify_ct_bound(size: usize, r: u32, k: usize, c: usize) -> Result<BoundVerdict> {
    if c == 0 {
        return Err(Error::Param("c must be at least 1".into()));
    }
    Ok(power_bound(size, r as usize * k, (4 * c - 2) as u32))
}
