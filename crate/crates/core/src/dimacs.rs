//! DIMACS-style text formats for graphs and CNFs (1-based ids).
//!
//! Graphs: `p edge <n> <m>` followed by `e <u> <v>` lines. CNFs: the usual
//! `p cnf <vars> <clauses>` with zero-terminated clauses; comment lines of
//! the form `c var <i> vertex <u>` / `c var <i> edge <u> <v>` carry the
//! variable roles of graph CNFs.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instances::{Cnf, Literal, VarRole};

pub fn write_graph(g: &Graph) -> String {
    let mut s = String::from("c matchwidth graph v1\n");
    s.push_str(&format!("p edge {} {}\n", g.n(), g.num_edges()));
    for &(u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
}

fn one_based(x: usize, line: usize) -> Result<usize> {
    x.checked_sub(1)
        .ok_or_else(|| Error::parse(line, "ids are 1-based"))
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let ln = i + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    return Err(Error::parse(ln, "second problem line"));
                }
                if toks.next() != Some("edge") {
                    return Err(Error::parse(ln, "expected `p edge <n> <m>`"));
                }
                let n: usize = num(toks.next(), ln, "vertex count")?;
                declared = num(toks.next(), ln, "edge count")?;
                g = Some(Graph::new(n));
            }
            Some("e") => {
                let g = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(ln, "edge before problem line"))?;
                let u = one_based(num(toks.next(), ln, "vertex")?, ln)?;
                let v = one_based(num(toks.next(), ln, "vertex")?, ln)?;
                g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
            }
            Some(t) => return Err(Error::parse(ln, format!("unknown line type `{t}`"))),
        }
    }
    let g = g.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    if g.num_edges() != declared {
        return Err(Error::parse(
            0,
            format!("header declares {declared} edges, found {}", g.num_edges()),
        ));
    }
    Ok(g)
}

pub fn write_cnf(f: &Cnf) -> String {
    let mut s = String::from("c matchwidth cnf v1\n");
    for (i, role) in f.var_names().iter().enumerate() {
        match *role {
            VarRole::Vertex(u) => s.push_str(&format!("c var {} vertex {}\n", i + 1, u + 1)),
            VarRole::Edge(u, v) => s.push_str(&format!("c var {} edge {} {}\n", i + 1, u + 1, v + 1)),
            VarRole::Free => {}
        }
    }
    s.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.clauses().len()));
    for c in f.clauses() {
        for l in c {
            s.push_str(&format!("{} ", l.to_dimacs()));
        }
        s.push_str("0\n");
    }
    s
}

pub fn read_cnf<R: BufRead>(reader: R) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut roles: Vec<(usize, VarRole)> = Vec::new();
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let ln = i + 1;
        let mut toks = line.split_whitespace().peekable();
        match toks.peek().copied() {
            None => {}
            Some("c") => {
                toks.next();
                if toks.next() != Some("var") {
                    continue;
                }
                let x = one_based(num(toks.next(), ln, "variable")?, ln)?;
                let role = match toks.next() {
                    Some("vertex") => VarRole::Vertex(one_based(num(toks.next(), ln, "vertex")?, ln)?),
                    Some("edge") => {
                        let u = one_based(num(toks.next(), ln, "vertex")?, ln)?;
                        let v = one_based(num(toks.next(), ln, "vertex")?, ln)?;
                        VarRole::Edge(u.min(v), u.max(v))
                    }
                    _ => return Err(Error::parse(ln, "expected `vertex` or `edge` role")),
                };
                roles.push((x, role));
            }
            Some("p") => {
                toks.next();
                if header.is_some() {
                    return Err(Error::parse(ln, "second problem line"));
                }
                if toks.next() != Some("cnf") {
                    return Err(Error::parse(ln, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = num(toks.next(), ln, "variable count")?;
                let count = num(toks.next(), ln, "clause count")?;
                header = Some((vars, count));
            }
            Some(_) => {
                let (vars, _) = header.ok_or_else(|| Error::parse(ln, "clause before problem line"))?;
                for tok in toks {
                    let x: i64 = num(Some(tok), ln, "literal")?;
                    if x == 0 {
                        clauses.push(std::mem::take(&mut current));
                        continue;
                    }
                    let l = Literal::from_dimacs(x).ok_or_else(|| Error::parse(ln, "bad literal"))?;
                    if l.var >= vars {
                        return Err(Error::parse(ln, format!("variable {} out of range", l.var + 1)));
                    }
                    current.push(l);
                }
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    if !current.is_empty() {
        return Err(Error::parse(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(
            0,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    let mut names = vec![VarRole::Free; vars];
    for (x, role) in roles {
        let slot = names
            .get_mut(x)
            .ok_or_else(|| Error::parse(0, format!("role for variable {} out of range", x + 1)))?;
        *slot = role;
    }
    Cnf::with_roles(vars, clauses, names)
}
