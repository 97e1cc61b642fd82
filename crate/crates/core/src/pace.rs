//! PACE tree decomposition format (`.td`), 1-based:
//!
//! ```text
//! s td <bags> <max bag size> <vertices>
//! b <bag id> <vertex>...
//! <bag id> <bag id>
//! ```

use std::collections::BTreeSet;
use std::io::BufRead;

use crate::decomposition::{Bag, Decomposition, PathDecomposition, TreeDecomposition};
use crate::error::{Error, Result};

pub fn write_td<D: Decomposition + ?Sized>(d: &D, n: usize) -> String {
    let td = d.to_tree();
    let max_bag = td.bags().iter().map(|b| b.len()).max().unwrap_or(0);
    let mut s = String::from("c matchwidth td v1\n");
    s.push_str(&format!("s td {} {} {}\n", td.bags().len(), max_bag, n));
    for (i, bag) in td.bags().iter().enumerate() {
        s.push_str(&format!("b {}", i + 1));
        for v in bag {
            s.push_str(&format!(" {}", v + 1));
        }
        s.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        s.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    s
}

/// Path decompositions are written without repeating equal consecutive bags.
pub fn write_path_td(pd: &PathDecomposition, n: usize) -> String {
    write_td(&pd.dedup_consecutive(), n)
}

fn id(tok: Option<&str>, line: usize, bound: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    let x: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))?;
    if x == 0 || x > bound {
        return Err(Error::parse(line, format!("{what} {x} out of range 1..={bound}")));
    }
    Ok(x - 1)
}

/// Reads a `.td` file; returns the decomposition and the vertex count.
pub fn read_td<R: BufRead>(reader: R) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Bag>> = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let ln = i + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("s") => {
                if header.is_some() {
                    return Err(Error::parse(ln, "second solution line"));
                }
                if toks.next() != Some("td") {
                    return Err(Error::parse(ln, "expected `s td <bags> <max bag> <n>`"));
                }
                let mut nums = [0usize; 3];
                for (slot, what) in nums.iter_mut().zip(["bag count", "bag size", "vertex count"]) {
                    let tok = toks.next().ok_or_else(|| Error::parse(ln, format!("missing {what}")))?;
                    *slot = tok
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("bad {what} `{tok}`")))?;
                }
                header = Some((nums[0], nums[1], nums[2]));
                bags = vec![None; nums[0]];
            }
            Some("b") => {
                let (count, max_bag, n) = header.ok_or_else(|| Error::parse(ln, "bag before solution line"))?;
                let b = id(toks.next(), ln, count, "bag id")?;
                let mut bag = BTreeSet::new();
                for tok in toks {
                    bag.insert(id(Some(tok), ln, n, "vertex")?);
                }
                if bag.len() > max_bag {
                    return Err(Error::parse(ln, format!("bag larger than declared maximum {max_bag}")));
                }
                if bags[b].replace(bag).is_some() {
                    return Err(Error::parse(ln, format!("bag {} given twice", b + 1)));
                }
            }
            Some(first) => {
                let (count, _, _) = header.ok_or_else(|| Error::parse(ln, "edge before solution line"))?;
                let a = id(Some(first), ln, count, "bag id")?;
                let b = id(toks.next(), ln, count, "bag id")?;
                if toks.next().is_some() {
                    return Err(Error::parse(ln, "trailing tokens after tree edge"));
                }
                edges.push((a, b));
            }
        }
    }
    let (_, _, n) = header.ok_or_else(|| Error::parse(0, "missing solution line"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((TreeDecomposition::new(bags, edges), n))
}

/// The bags of a path-shaped tree decomposition in path order, starting from
/// the end node with the smaller id; `None` if the tree is not a path.
pub fn as_path(td: &TreeDecomposition) -> Option<PathDecomposition> {
    let k = td.bags().len();
    if k == 0 {
        return Some(PathDecomposition::default());
    }
    if td.tree_edges().len() != k - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in td.tree_edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    let start = (0..k).find(|&v| adj[v].len() <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        if order.len() == k {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == k).then(|| PathDecomposition::new(order.into_iter().map(|i| td.bags()[i].clone()).collect()))
}
