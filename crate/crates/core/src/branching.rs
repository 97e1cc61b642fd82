//! Nondeterministic branching programs.
//!
//! A program is a DAG with one root and one leaf whose edges may carry a
//! literal. A root-leaf path is *computational* when it never carries both
//! `x` and `¬x`; an assignment is accepted when the literals of some
//! computational path all hold under it. The `c`-OBDD restriction checked
//! here is semantic: only computational paths have to split into at most
//! `c` segments that each read variables in strictly increasing order.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{Cnf, Literal};

/// Default cap on the number of computational paths enumerated.
pub const DEFAULT_PATH_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BpEdge {
    pub tail: usize,
    pub head: usize,
    pub label: Option<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingProgram {
    num_nodes: usize,
    num_vars: usize,
    root: usize,
    leaf: usize,
    /// Sorted by `(tail, head, label)`; edge ids index this vector.
    edges: Vec<BpEdge>,
    out: Vec<Vec<usize>>,
}

impl BranchingProgram {
    /// Validates: endpoints and variables in range, no self-loops, acyclic,
    /// the root is the only node without in-edges, the leaf the only node
    /// without out-edges, and every node lies on a root-leaf path.
    pub fn new(num_nodes: usize, num_vars: usize, root: usize, leaf: usize, mut edges: Vec<BpEdge>) -> Result<Self> {
        if root >= num_nodes || leaf >= num_nodes || root == leaf {
            return Err(Error::Malformed(format!(
                "root {root} and leaf {leaf} must be distinct nodes of 0..{num_nodes}"
            )));
        }
        for e in &edges {
            if e.tail >= num_nodes || e.head >= num_nodes || e.tail == e.head {
                return Err(Error::Malformed(format!("bad edge {} -> {}", e.tail, e.head)));
            }
            if let Some(l) = e.label {
                if l.var >= num_vars {
                    return Err(Error::Malformed(format!(
                        "edge {} -> {} reads variable {} of {num_vars}",
                        e.tail, e.head, l.var
                    )));
                }
            }
        }
        edges.sort_unstable();
        let mut out = vec![Vec::new(); num_nodes];
        let mut inc = vec![Vec::new(); num_nodes];
        for (i, e) in edges.iter().enumerate() {
            out[e.tail].push(i);
            inc[e.head].push(i);
        }
        for v in 0..num_nodes {
            if (v == root) != inc[v].is_empty() {
                return Err(Error::Malformed(format!("node {v}: only the root may lack in-edges")));
            }
            if (v == leaf) != out[v].is_empty() {
                return Err(Error::Malformed(format!("node {v}: only the leaf may lack out-edges")));
            }
        }
        // Kahn: every node is popped iff the graph is acyclic
        let mut indeg: Vec<usize> = inc.iter().map(Vec::len).collect();
        let mut stack = vec![root];
        let mut popped = 0;
        while let Some(v) = stack.pop() {
            popped += 1;
            for &e in &out[v] {
                let h = edges[e].head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    stack.push(h);
                }
            }
        }
        if popped != num_nodes {
            return Err(Error::Malformed("program has a cycle".into()));
        }
        // with a unique source and sink in a DAG every node is on a root-leaf path
        Ok(BranchingProgram {
            num_nodes,
            num_vars,
            root,
            leaf,
            edges,
            out,
        })
    }

    /// Size metric: the number of nodes.
    pub fn size(&self) -> usize {
        self.num_nodes
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leaf(&self) -> usize {
        self.leaf
    }

    pub fn edges(&self) -> &[BpEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    fn check_assignment(&self, s: &[bool]) -> Result<()> {
        if s.len() != self.num_vars {
            return Err(Error::Input(format!(
                "assignment has {} values, program has {} variables",
                s.len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    /// Whether some computational path has all its literals true under `s`.
    /// Under a full assignment such a path is exactly a root-leaf path using
    /// only edges whose labels hold.
    pub fn evaluate(&self, s: &[bool]) -> Result<bool> {
        Ok(self.accepting_path(s)?.is_some())
    }

    /// Lexicographically smallest (by edge id) root-leaf path whose literals
    /// all hold under `s`.
    pub fn accepting_path(&self, s: &[bool]) -> Result<Option<ComputationalPath>> {
        self.check_assignment(s)?;
        let usable = |e: &BpEdge| e.label.is_none_or(|l| l.holds(s));
        let mut dead = vec![false; self.num_nodes];
        let mut path = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if v == self.leaf {
                let literals = path.iter().filter_map(|&e: &usize| self.edges[e].label).collect();
                return Ok(Some(ComputationalPath { edges: path, literals }));
            }
            if i < self.out[v].len() {
                top.1 += 1;
                let e = self.out[v][i];
                let edge = &self.edges[e];
                if usable(edge) && !dead[edge.head] {
                    path.push(e);
                    stack.push((edge.head, 0));
                }
            } else {
                dead[v] = true;
                stack.pop();
                path.pop();
            }
        }
        Ok(None)
    }

    /// Nodes along a path, starting at the root.
    pub fn path_nodes(&self, p: &ComputationalPath) -> Vec<usize> {
        let mut nodes = vec![self.root];
        nodes.extend(p.edges.iter().map(|&e| self.edges[e].head));
        nodes
    }

    /// All computational paths in lexicographic order of edge ids.
    pub fn computational_paths(&self) -> ComputationalPaths<'_> {
        ComputationalPaths {
            z: self,
            stack: vec![(self.root, 0)],
            path: Vec::new(),
            pos: vec![0; self.num_vars],
            neg: vec![0; self.num_vars],
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("c matchwidth branching-program v1\n");
        let _ = writeln!(
            s,
            "bp {} {} {} {}",
            self.num_nodes, self.num_vars, self.root, self.leaf
        );
        for e in &self.edges {
            match e.label {
                Some(l) => {
                    let _ = writeln!(s, "{} {} {}", e.tail, e.head, l.to_dimacs());
                }
                None => {
                    let _ = writeln!(s, "{} {}", e.tail, e.head);
                }
            }
        }
        s
    }

    /// Parses the text form: `c` comment lines, a header
    /// `bp <nodes> <vars> <root> <leaf>`, then one `tail head [±var]` line per
    /// edge (0-based nodes, 1-based signed variables).
    pub fn from_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, usize, usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            if toks[0] == "bp" {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate header"));
                }
                if toks.len() != 5 {
                    return Err(Error::parse(lineno, "expected `bp <nodes> <vars> <root> <leaf>`"));
                }
                let nums = parse_nums(&toks[1..], lineno)?;
                header = Some((nums[0], nums[1], nums[2], nums[3]));
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(lineno, "edge before header"));
            }
            if !(2..=3).contains(&toks.len()) {
                return Err(Error::parse(lineno, "expected `tail head [literal]`"));
            }
            let ends = parse_nums(&toks[..2], lineno)?;
            let label = match toks.get(2) {
                None => None,
                Some(x) => {
                    let v: i64 = x.parse().map_err(|_| Error::parse(lineno, format!("bad literal `{x}`")))?;
                    Some(Literal::from_dimacs(v).ok_or_else(|| Error::parse(lineno, "literal 0"))?)
                }
            };
            edges.push(BpEdge {
                tail: ends[0],
                head: ends[1],
                label,
            });
        }
        let (nodes, vars, root, leaf) = header.ok_or_else(|| Error::parse(0, "missing `bp` header"))?;
        BranchingProgram::new(nodes, vars, root, leaf, edges)
    }
}

fn parse_nums(toks: &[&str], line: usize) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad number `{t}`"))))
        .collect()
}

/// A consistent root-leaf path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputationalPath {
    /// Edge ids from root to leaf.
    pub edges: Vec<usize>,
    /// `A(P)`: the literals on the path.
    pub literals: BTreeSet<Literal>,
}

impl ComputationalPath {
    /// Labelled edges in path order.
    pub fn labels<'a>(&'a self, z: &'a BranchingProgram) -> impl Iterator<Item = Literal> + 'a {
        self.edges.iter().filter_map(move |&e| z.edges[e].label)
    }
}

/// Depth-first enumeration of computational paths; inconsistent prefixes are
/// cut off as soon as they appear.
pub struct ComputationalPaths<'a> {
    z: &'a BranchingProgram,
    stack: Vec<(usize, usize)>,
    path: Vec<usize>,
    pos: Vec<u32>,
    neg: Vec<u32>,
}

impl ComputationalPaths<'_> {
    fn retreat(&mut self) {
        self.stack.pop();
        if let Some(e) = self.path.pop() {
            if let Some(l) = self.z.edges[e].label {
                let counts = if l.positive { &mut self.pos } else { &mut self.neg };
                counts[l.var] -= 1;
            }
        }
    }
}

impl Iterator for ComputationalPaths<'_> {
    type Item = ComputationalPath;

    fn next(&mut self) -> Option<ComputationalPath> {
        loop {
            let top = self.stack.last_mut()?;
            let v = top.0;
            if top.1 >= self.z.out[v].len() {
                self.retreat();
                continue;
            }
            let e = self.z.out[v][top.1];
            top.1 += 1;
            let edge = self.z.edges[e];
            if let Some(l) = edge.label {
                let (same, opposite) = if l.positive {
                    (&mut self.pos, &self.neg)
                } else {
                    (&mut self.neg, &self.pos)
                };
                if opposite[l.var] > 0 {
                    continue;
                }
                same[l.var] += 1;
            }
            self.path.push(e);
            self.stack.push((edge.head, 0));
            if edge.head == self.z.leaf {
                let edges = self.path.clone();
                let literals = edges.iter().filter_map(|&e| self.z.edges[e].label).collect();
                self.retreat();
                return Some(ComputationalPath { edges, literals });
            }
        }
    }
}

/// Collects all computational paths, failing once more than `cap` exist.
pub fn enumerate_computational_paths(z: &BranchingProgram, cap: usize) -> Result<Vec<ComputationalPath>> {
    let mut out = Vec::new();
    for p in z.computational_paths() {
        if out.len() == cap {
            return Err(Error::Capacity {
                what: "computational paths",
                size: cap + 1,
                cap,
            });
        }
        out.push(p);
    }
    Ok(out)
}

/// A permutation of the variable ids `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarOrder(Vec<usize>);

impl VarOrder {
    pub fn new(seq: Vec<usize>, num_vars: usize) -> Result<Self> {
        let mut seen = vec![false; num_vars];
        if seq.len() != num_vars {
            return Err(Error::NotAPermutation(format!(
                "variable order has length {} but there are {num_vars} variables",
                seq.len()
            )));
        }
        for &v in &seq {
            if v >= num_vars || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation(format!("variable {v} out of range or repeated")));
            }
        }
        Ok(VarOrder(seq))
    }

    pub fn identity(num_vars: usize) -> Self {
        VarOrder((0..num_vars).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Greedy split of a variable sequence into runs of strictly increasing
/// order position: a new run starts exactly when the next position is not
/// larger than the last one. Returns the start index of each run; an empty
/// sequence forms one empty run.
pub fn greedy_segments(vars: &[usize], pos: &[usize]) -> Vec<usize> {
    let mut starts = vec![0];
    for i in 1..vars.len() {
        if pos[vars[i]] <= pos[vars[i - 1]] {
            starts.push(i);
        }
    }
    starts
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnsobddVerdict {
    pub pass: bool,
    pub c: usize,
    /// Largest greedy segment count over all computational paths.
    pub max_segments: usize,
    pub paths_checked: usize,
    /// First computational path needing more than `c` segments.
    pub violating_path: Option<ComputationalPath>,
}

/// Checks the semantic `c`-OBDD restriction of `z` under `sv`.
pub fn check_c_nsobdd(z: &BranchingProgram, sv: &VarOrder, c: usize, cap: usize) -> Result<CnsobddVerdict> {
    if c == 0 {
        return Err(Error::Param("c must be at least 1".into()));
    }
    if sv.len() != z.num_vars() {
        return Err(Error::NotAPermutation(format!(
            "order covers {} variables, program has {}",
            sv.len(),
            z.num_vars()
        )));
    }
    let pos = sv.positions();
    let mut max_segments = 0;
    let mut checked = 0;
    let mut violating = None;
    for p in z.computational_paths() {
        if checked == cap {
            return Err(Error::Capacity {
                what: "computational paths",
                size: cap + 1,
                cap,
            });
        }
        checked += 1;
        let vars: Vec<usize> = p.labels(z).map(|l| l.var).collect();
        let segs = greedy_segments(&vars, &pos).len();
        max_segments = max_segments.max(segs);
        if segs > c && violating.is_none() {
            violating = Some(p);
        }
    }
    Ok(CnsobddVerdict {
        pass: violating.is_none(),
        c,
        max_segments,
        paths_checked: checked,
        violating_path: violating,
    })
}

/// Maximum number of variables for truth-table equivalence checks.
pub const EQUIVALENCE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    /// First differing assignment in binary counting order (variable `i` is bit `i`).
    Counterexample { assignment: Vec<bool> },
}

/// Compares `z` with `f` on all `2^m` assignments.
pub fn equivalence_vs_cnf(z: &BranchingProgram, f: &Cnf) -> Result<Equivalence> {
    let m = f.num_vars();
    if m > EQUIVALENCE_CAP {
        return Err(Error::Capacity {
            what: "equivalence check variables",
            size: m,
            cap: EQUIVALENCE_CAP,
        });
    }
    if z.num_vars() != m {
        return Err(Error::Input(format!(
            "program has {} variables, formula has {m}",
            z.num_vars()
        )));
    }
    let mut s = vec![false; m];
    for bits in 0u64..1 << m {
        for (i, x) in s.iter_mut().enumerate() {
            *x = bits >> i & 1 == 1;
        }
        if z.evaluate(&s)? != f.evaluate(&s) {
            return Ok(Equivalence::Counterexample { assignment: s });
        }
    }
    Ok(Equivalence::Equivalent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(tail: usize, head: usize, label: Option<i64>) -> BpEdge {
        BpEdge {
            tail,
            head,
            label: label.and_then(Literal::from_dimacs),
        }
    }

    /// Chain root -> .. -> leaf carrying the given DIMACS literals.
    fn chain(num_vars: usize, labels: &[i64]) -> BranchingProgram {
        let edges = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| edge(i, i + 1, Some(l)))
            .collect();
        BranchingProgram::new(labels.len() + 1, num_vars, 0, labels.len(), edges).unwrap()
    }

    #[test]
    fn parallel_opposite_edges_accept_everything() {
        let z = BranchingProgram::new(2, 1, 0, 1, vec![edge(0, 1, Some(1)), edge(0, 1, Some(-1))]).unwrap();
        assert!(z.evaluate(&[true]).unwrap());
        assert!(z.evaluate(&[false]).unwrap());
    }

    #[test]
    fn chain_evaluation() {
        let z = chain(2, &[1, 2]);
        assert!(!z.evaluate(&[true, false]).unwrap());
        assert!(z.evaluate(&[true, true]).unwrap());
        assert!(matches!(z.evaluate(&[true]), Err(Error::Input(_))));
    }

    #[test]
    fn structure_is_validated() {
        // two sources
        assert!(BranchingProgram::new(3, 0, 0, 2, vec![edge(0, 2, None), edge(1, 2, None)]).is_err());
        // cycle between 1 and 2
        assert!(BranchingProgram::new(
            4,
            0,
            0,
            3,
            vec![edge(0, 1, None), edge(1, 2, None), edge(2, 1, None), edge(2, 3, None)]
        )
        .is_err());
        assert!(BranchingProgram::new(2, 1, 0, 1, vec![edge(0, 1, Some(2))]).is_err());
        assert!(BranchingProgram::new(1, 0, 0, 0, vec![]).is_err());
    }

    #[test]
    fn diamond_has_two_paths() {
        let z = BranchingProgram::new(
            4,
            2,
            0,
            3,
            vec![edge(0, 1, Some(1)), edge(0, 2, Some(-1)), edge(1, 3, Some(2)), edge(2, 3, Some(2))],
        )
        .unwrap();
        assert_eq!(enumerate_computational_paths(&z, 10).unwrap().len(), 2);
        assert!(matches!(
            enumerate_computational_paths(&z, 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn inconsistent_paths_are_excluded() {
        let z = chain(1, &[1, -1]);
        assert!(enumerate_computational_paths(&z, 10).unwrap().is_empty());
        assert!(!z.evaluate(&[true]).unwrap());
        assert!(!z.evaluate(&[false]).unwrap());
    }

    #[test]
    fn segment_checks() {
        let sv = VarOrder::identity(3);
        // (x1, x3) in order
        let z = chain(3, &[1, 3]);
        assert!(check_c_nsobdd(&z, &sv, 1, 100).unwrap().pass);
        // (x3, x1) needs a cut
        let z = chain(3, &[3, 1]);
        let v1 = check_c_nsobdd(&z, &sv, 1, 100).unwrap();
        assert!(!v1.pass);
        assert_eq!(v1.max_segments, 2);
        assert!(v1.violating_path.is_some());
        assert!(check_c_nsobdd(&z, &sv, 2, 100).unwrap().pass);
        assert!(check_c_nsobdd(&z, &sv, 0, 100).is_err());
    }

    #[test]
    fn semantic_exemption() {
        // the only out-of-order path reads x1 and ¬x1, so it is not computational
        let z = BranchingProgram::new(
            4,
            2,
            0,
            3,
            vec![
                edge(0, 1, Some(1)),
                edge(1, 2, Some(2)),
                edge(2, 3, Some(-1)),
                edge(0, 3, Some(2)),
            ],
        )
        .unwrap();
        let v = check_c_nsobdd(&z, &VarOrder::identity(2), 1, 100).unwrap();
        assert!(v.pass);
        assert_eq!(v.paths_checked, 1);
    }

    #[test]
    fn repeated_variable_needs_new_segment() {
        let pos = [0, 1, 2];
        assert_eq!(greedy_segments(&[0, 0], &pos), vec![0, 1]);
        assert_eq!(greedy_segments(&[], &pos), vec![0]);
        assert_eq!(greedy_segments(&[0, 2, 1, 2, 0], &pos), vec![0, 2, 4]);
    }

    #[test]
    fn text_round_trip() {
        let z = BranchingProgram::new(
            4,
            2,
            0,
            3,
            vec![edge(0, 1, Some(1)), edge(0, 2, None), edge(1, 3, Some(-2)), edge(2, 3, Some(2))],
        )
        .unwrap();
        let text = z.to_text();
        let back = BranchingProgram::from_text(text.as_bytes()).unwrap();
        assert_eq!(back, z);
        assert!(BranchingProgram::from_text("0 1\n".as_bytes()).is_err());
        assert!(BranchingProgram::from_text("bp 2 1 0 1\n0 1 x\n".as_bytes()).is_err());
    }

    #[test]
    fn var_order_validation() {
        assert!(VarOrder::new(vec![1, 0], 2).is_ok());
        assert!(VarOrder::new(vec![1, 1], 2).is_err());
        assert!(VarOrder::new(vec![0], 2).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let f = Cnf::new(1, vec![]).unwrap();
        let taut = BranchingProgram::new(2, 1, 0, 1, vec![edge(0, 1, None)]).unwrap();
        assert_eq!(equivalence_vs_cnf(&taut, &f).unwrap(), Equivalence::Equivalent);
        let g = Cnf::new(1, vec![vec![Literal::pos(0)]]).unwrap();
        assert_eq!(
            equivalence_vs_cnf(&taut, &g).unwrap(),
            Equivalence::Counterexample { assignment: vec![false] }
        );
    }
}
