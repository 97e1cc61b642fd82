//! Instance generators: complete binary trees `T_r`, clique trees
//! `CT_{r,k}`, the graph CNF `CNF(G)` with one clause `(X_u ∨ X_uv ∨ X_v)`
//! per edge, `F_{r,k} = CNF(CT_{r,k})`, primal graphs, and seeded graph
//! families for property tests.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A variable with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Truth value under a full assignment.
    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// DIMACS form: 1-based, negative for negated literals.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let var = (x.unsigned_abs() - 1) as usize;
        Some(Literal {
            var,
            positive: x > 0,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// What a CNF variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarRole {
    /// `X_u`
    Vertex(usize),
    /// `X_{u,v}` with `u < v`
    Edge(usize, usize),
    /// A variable without graph meaning (e.g. read from a plain DIMACS file).
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
    var_names: Vec<VarRole>,
}

impl Cnf {
    /// Clause literals are sorted and deduplicated. A clause holding a
    /// variable together with its negation is rejected.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        Cnf::with_roles(num_vars, clauses, vec![VarRole::Free; num_vars])
    }

    pub fn with_roles(num_vars: usize, clauses: Vec<Vec<Literal>>, var_names: Vec<VarRole>) -> Result<Self> {
        if var_names.len() != num_vars {
            return Err(Error::Input(format!(
                "{} variable roles for {num_vars} variables",
                var_names.len()
            )));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (i, mut clause) in clauses.into_iter().enumerate() {
            clause.sort_unstable();
            clause.dedup();
            if let Some(l) = clause.iter().find(|l| l.var >= num_vars) {
                return Err(Error::Input(format!(
                    "clause {i} mentions variable {} of {num_vars}",
                    l.var
                )));
            }
            if clause.windows(2).any(|w| w[0].var == w[1].var) {
                return Err(Error::Input(format!("clause {i} holds a variable and its negation")));
            }
            out.push(clause);
        }
        Ok(Cnf {
            num_vars,
            clauses: out,
            var_names,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn var_names(&self) -> &[VarRole] {
        &self.var_names
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    pub fn vertex_var(&self, u: usize) -> Option<usize> {
        self.var_names.iter().position(|&r| r == VarRole::Vertex(u))
    }

    pub fn edge_var(&self, u: usize, v: usize) -> Option<usize> {
        let key = VarRole::Edge(u.min(v), u.max(v));
        self.var_names.iter().position(|&r| r == key)
    }

    /// The same formula with one clause removed.
    pub fn without_clause(&self, idx: usize) -> Cnf {
        let mut c = self.clone();
        c.clauses.remove(idx);
        c
    }
}

/// Node count of `T_r`: `2^{r+1} - 1`.
pub fn tree_node_count(r: u32) -> Result<usize> {
    if r > 40 {
        return Err(Error::Param(format!("height {r} is too large")));
    }
    Ok((1usize << (r + 1)) - 1)
}

/// Complete binary tree of height `r` in heap numbering: the root is 0 and
/// node `a` has children `2a + 1` and `2a + 2`.
pub fn complete_binary_tree(r: u32) -> Result<Graph> {
    let nodes = tree_node_count(r)?;
    Graph::from_edges(nodes, (1..nodes).map(|a| ((a - 1) / 2, a)))
}

/// `CT_{r,k}`: node `a` of `T_r` becomes the clique `a*k .. a*k + k`, and the
/// cliques of adjacent tree nodes are fully joined.
pub fn ct_graph(r: u32, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Param("k must be at least 1".into()));
    }
    let nodes = tree_node_count(r)?;
    let mut edges = Vec::new();
    for a in 0..nodes {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((a * k + i, a * k + j));
            }
        }
        if a > 0 {
            let p = (a - 1) / 2;
            for i in 0..k {
                for j in 0..k {
                    edges.push((p * k + i, a * k + j));
                }
            }
        }
    }
    Graph::from_edges(nodes * k, edges)
}

/// `|V(CT_{r,k})| = (2^{r+1} - 1) k`.
pub fn ct_vertex_count(r: u32, k: u64) -> u128 {
    ((1u128 << (r + 1)) - 1) * k as u128
}

/// `|E(CT_{r,k})| = (2^{r+1} - 1) k(k-1)/2 + (2^{r+1} - 2) k^2`.
pub fn ct_edge_count(r: u32, k: u64) -> u128 {
    let k = k as u128;
    let nodes = (1u128 << (r + 1)) - 1;
    nodes * k * (k - 1) / 2 + (nodes - 1) * k * k
}

/// Number of variables of `F_{r,k}`:
/// `(2^{r+1} - 1)(k + k(k-1)/2) + (2^{r+1} - 2) k^2`.
pub fn f_rk_var_count(r: u32, k: u64) -> u128 {
    let k = k as u128;
    let nodes = (1u128 << (r + 1)) - 1;
    nodes * (k + k * (k - 1) / 2) + (nodes - 1) * k * k
}

/// Upper bound `2^r * 6k^2` on the variable count of `F_{r,k}`.
pub fn f_rk_var_bound(r: u32, k: u64) -> u128 {
    (1u128 << r) * 6 * (k as u128) * (k as u128)
}

/// Variable count of `F_{r,r}` in closed form: `2^r (3r^2 + r) - (5r^2 + r)/2`.
pub fn f_rr_var_count(r: u32) -> u128 {
    let rr = r as u128;
    (1u128 << r) * (3 * rr * rr + rr) - (5 * rr * rr + rr) / 2
}

/// `CNF(G)`: variables `X_u` for vertices (ids `0..n`) followed by `X_{u,v}`
/// for edges in lexicographic order; one clause `(X_u ∨ X_uv ∨ X_v)` per edge.
pub fn cnf_of_graph(g: &Graph) -> Cnf {
    let n = g.n();
    let mut roles: Vec<VarRole> = (0..n).map(VarRole::Vertex).collect();
    roles.extend(g.edges().iter().map(|&(u, v)| VarRole::Edge(u, v)));
    let clauses = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| vec![Literal::pos(u), Literal::pos(n + i), Literal::pos(v)])
        .collect();
    Cnf::with_roles(n + g.num_edges(), clauses, roles).expect("graph CNF is well formed")
}

/// `F_{r,k} = CNF(CT_{r,k})`.
pub fn f_rk(r: u32, k: usize) -> Result<Cnf> {
    Ok(cnf_of_graph(&ct_graph(r, k)?))
}

/// Graph on the variables of `f`, joining variables that share a clause.
pub fn primal_graph(f: &Cnf) -> Graph {
    let mut pairs = Vec::new();
    for c in f.clauses() {
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                pairs.push((a.var.min(b.var), a.var.max(b.var)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Graph::from_edges(f.num_vars(), pairs).expect("literals within a clause have distinct variables")
}

/// Families for the property-test corpus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFamily {
    Path { n: usize },
    Cycle { n: usize },
    Grid { width: usize, height: usize },
    /// Erdős–Rényi `G(n, p)`.
    Random { n: usize, p: f64 },
}

/// Generates a graph; only `Random` consumes the seed.
pub fn generate(family: GraphFamily, seed: u64) -> Result<Graph> {
    match family {
        GraphFamily::Path { n } => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(Error::Param(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphFamily::Grid { width, height } => {
            let id = |x: usize, y: usize| y * width + x;
            let mut edges = Vec::new();
            for y in 0..height {
                for x in 0..width {
                    if x + 1 < width {
                        edges.push((id(x, y), id(x + 1, y)));
                    }
                    if y + 1 < height {
                        edges.push((id(x, y), id(x, y + 1)));
                    }
                }
            }
            Graph::from_edges(width * height, edges)
        }
        GraphFamily::Random { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Param(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
    }
}

/// A reproducible corpus of `count` random graphs with `1..=max_n` vertices
/// and edge probabilities spread over `[0.15, 0.85]`.
pub fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            let p = rng.gen_range(0.15..=0.85);
            let s = rng.gen();
            generate(GraphFamily::Random { n, p }, s).expect("valid parameters")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_tree_sizes() {
        let t0 = complete_binary_tree(0).unwrap();
        assert_eq!((t0.n(), t0.num_edges()), (1, 0));
        let t2 = complete_binary_tree(2).unwrap();
        assert_eq!((t2.n(), t2.num_edges()), (7, 6));
        assert_eq!(complete_binary_tree(3).unwrap().n(), 15);
    }

    #[test]
    fn ct_graph_examples() {
        let g = ct_graph(1, 1).unwrap();
        assert_eq!((g.n(), g.num_edges()), (3, 2));
        assert_eq!(g, complete_binary_tree(1).unwrap());
        let g = ct_graph(1, 2).unwrap();
        assert_eq!((g.n(), g.num_edges()), (6, 11));
        // T_2 with 3-cliques: 7 cliques of 3 edges and 6 joins of 9 edges
        let g = ct_graph(2, 3).unwrap();
        assert_eq!((g.n(), g.num_edges()), (21, 7 * 3 + 6 * 9));
        assert!(ct_graph(1, 0).is_err());
    }

    #[test]
    fn ct_counts_match_closed_forms() {
        for r in 0..=4 {
            for k in 1..=4 {
                let g = ct_graph(r, k).unwrap();
                assert_eq!(g.n() as u128, ct_vertex_count(r, k as u64));
                assert_eq!(g.num_edges() as u128, ct_edge_count(r, k as u64));
            }
        }
    }

    #[test]
    fn graph_cnf_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let f = cnf_of_graph(&k2);
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)]]);
        assert_eq!(f.var_names()[2], VarRole::Edge(0, 1));
        assert_eq!(f.edge_var(1, 0), Some(2));

        let f = cnf_of_graph(&ct_graph(1, 1).unwrap());
        assert_eq!((f.num_vars(), f.clauses().len()), (5, 2));

        let f = cnf_of_graph(&Graph::new(4));
        assert_eq!((f.num_vars(), f.clauses().len()), (4, 0));
        assert!(f.evaluate(&[false; 4]));
    }

    #[test]
    fn f_rk_examples() {
        let f = f_rk(1, 1).unwrap();
        assert_eq!(f.num_vars(), 5);
        assert_eq!(f_rr_var_count(1), 5);
        let f = f_rk(1, 2).unwrap();
        assert_eq!(f.num_vars(), 17);
        assert!(17 <= f_rk_var_bound(1, 2));
        assert_eq!(f_rk_var_bound(1, 2), 48);
        let f = f_rk(0, 1).unwrap();
        assert_eq!((f.num_vars(), f.clauses().len()), (1, 0));
    }

    #[test]
    fn primal_graph_examples() {
        let f = Cnf::new(3, vec![vec![Literal::pos(0), Literal::neg(1), Literal::pos(2)]]).unwrap();
        let g = primal_graph(&f);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let g = primal_graph(&Cnf::new(3, vec![]).unwrap());
        assert_eq!((g.n(), g.num_edges()), (3, 0));
    }

    #[test]
    fn cnf_rejects_complementary_literals() {
        assert!(Cnf::new(2, vec![vec![Literal::pos(0), Literal::neg(0)]]).is_err());
        assert!(Cnf::new(2, vec![vec![Literal::pos(2)]]).is_err());
    }

    #[test]
    fn generators() {
        let p = generate(GraphFamily::Path { n: 10 }, 0).unwrap();
        assert_eq!(p.num_edges(), 9);
        let c = generate(GraphFamily::Cycle { n: 3 }, 0).unwrap();
        assert_eq!(c.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(generate(GraphFamily::Cycle { n: 2 }, 0).is_err());
        let gr = generate(GraphFamily::Grid { width: 3, height: 2 }, 0).unwrap();
        assert_eq!(gr.num_edges(), 7);
        let a = generate(GraphFamily::Random { n: 8, p: 0.4 }, 7).unwrap();
        let b = generate(GraphFamily::Random { n: 8, p: 0.4 }, 7).unwrap();
        assert_eq!(a, b);
        assert!(generate(GraphFamily::Random { n: 8, p: 1.5 }, 7).is_err());
    }

    #[test]
    fn literal_dimacs_round_trip() {
        for x in [-5i64, -1, 1, 7] {
            assert_eq!(Literal::from_dimacs(x).unwrap().to_dimacs(), x);
        }
        assert_eq!(Literal::from_dimacs(0), None);
    }
}
