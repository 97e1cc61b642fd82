//! Reduced ordered BDDs built from CNFs through truth tables, and the exact
//! minimum OBDD size over all variable orders.
//!
//! Size convention: decision nodes plus both terminals, so the constant
//! functions have size 2.
//!
//! The minimum over orders is a dynamic program over the set `S` of
//! variables tested first: the number of nodes testing `x` right after `S`
//! is the number of distinct subfunctions `f|_{S=a}` that depend on `x`, so
//! the size of an order is a sum of per-prefix costs. Plain enumeration of
//! orders is available as well, for small formulas or explicit order lists.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::branching::{BpEdge, BranchingProgram, VarOrder};
use crate::error::{Error, Result};
use crate::instances::{Cnf, Literal};

/// Largest variable count accepted by [`build_obdd`].
pub const BUILD_CAP: usize = 24;
/// Default variable cap of [`min_obdd_size_over_orders`].
pub const DEFAULT_MIN_CAP: usize = 16;
/// Hard limit for [`min_obdd_size_over_orders`].
pub const MAX_MIN_CAP: usize = 20;
/// Default variable cap for enumerating all orders.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

pub const FALSE: usize = 0;
pub const TRUE: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObddNode {
    /// Position in the order of the tested variable; `usize::MAX` for terminals.
    pub level: usize,
    pub lo: usize,
    pub hi: usize,
}

/// A reduced OBDD. Node 0 is the false terminal, node 1 the true terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obdd {
    order: VarOrder,
    nodes: Vec<ObddNode>,
    root: usize,
}

impl Obdd {
    /// Decision nodes plus two terminals.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[ObddNode] {
        &self.nodes
    }

    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    pub fn evaluate(&self, s: &[bool]) -> bool {
        let mut v = self.root;
        while v > TRUE {
            let node = self.nodes[v];
            let var = self.order.as_slice()[node.level];
            v = if s[var] { node.hi } else { node.lo };
        }
        v == TRUE
    }

    /// The OBDD as a branching program: the false terminal and the edges
    /// into it disappear, `x = 1` edges are labelled `x`, `x = 0` edges `¬x`.
    /// Decision nodes are numbered by `(level, node id)`, the leaf last. A
    /// constant-true OBDD becomes one unlabelled root-leaf edge.
    pub fn to_branching_program(&self) -> Result<BranchingProgram> {
        let m = self.num_vars();
        match self.root {
            FALSE => Err(Error::Input(
                "the constant-false function has no computational path".into(),
            )),
            TRUE => BranchingProgram::new(
                2,
                m,
                0,
                1,
                vec![BpEdge {
                    tail: 0,
                    head: 1,
                    label: None,
                }],
            ),
            _ => {
                let mut decision: Vec<usize> = (2..self.nodes.len()).collect();
                decision.sort_by_key(|&v| (self.nodes[v].level, v));
                let leaf = decision.len();
                let mut id = vec![usize::MAX; self.nodes.len()];
                id[TRUE] = leaf;
                for (i, &v) in decision.iter().enumerate() {
                    id[v] = i;
                }
                let mut edges = Vec::new();
                for &v in &decision {
                    let node = self.nodes[v];
                    let var = self.order.as_slice()[node.level];
                    for (child, positive) in [(node.lo, false), (node.hi, true)] {
                        if child != FALSE {
                            edges.push(BpEdge {
                                tail: id[v],
                                head: id[child],
                                label: Some(Literal { var, positive }),
                            });
                        }
                    }
                }
                BranchingProgram::new(leaf + 1, m, 0, leaf, edges)
            }
        }
    }
}

const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Bit-packed truth table on `vars` variables; index bit `b` is variable `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Table {
    vars: usize,
    words: Vec<u64>,
}

impl Table {
    fn valid_mask(vars: usize) -> u64 {
        if vars >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << vars)) - 1
        }
    }

    fn word_count(vars: usize) -> usize {
        if vars >= 6 {
            1 << (vars - 6)
        } else {
            1
        }
    }

    /// Word `w` of the table of the literal on index bit `bit`.
    fn literal_word(bit: usize, positive: bool, w: usize) -> u64 {
        let pattern = if bit < 6 {
            LOW_PATTERNS[bit]
        } else if (w >> (bit - 6)) & 1 == 1 {
            u64::MAX
        } else {
            0
        };
        if positive {
            pattern
        } else {
            !pattern
        }
    }

    /// Truth table of `f` where index bit `b` is variable `var_of_bit[b]`.
    fn of_cnf(f: &Cnf, var_of_bit: &[usize]) -> Table {
        let vars = var_of_bit.len();
        let mut bit_of_var = vec![0; vars];
        for (b, &v) in var_of_bit.iter().enumerate() {
            bit_of_var[v] = b;
        }
        let mask = Table::valid_mask(vars);
        let words = (0..Table::word_count(vars))
            .map(|w| {
                let mut acc = mask;
                for clause in f.clauses() {
                    let c = clause
                        .iter()
                        .fold(0u64, |c, l| c | Table::literal_word(bit_of_var[l.var], l.positive, w));
                    acc &= c;
                }
                acc
            })
            .collect();
        Table { vars, words }
    }

    /// Restriction of index bit `p` to `val`, on `vars - 1` variables.
    fn cofactor(&self, p: usize, val: bool) -> Table {
        let vars = self.vars - 1;
        let words = if p >= 6 {
            let block = 1usize << (p - 6);
            self.words
                .chunks(2 * block)
                .flat_map(|ch| if val { &ch[block..] } else { &ch[..block] })
                .copied()
                .collect()
        } else {
            let half: Vec<u64> = self
                .words
                .iter()
                .map(|&w| compress(w, p, val))
                .collect();
            if self.vars <= 6 {
                vec![half[0] & Table::valid_mask(vars)]
            } else {
                half.chunks(2).map(|c| c[0] | c[1] << 32).collect()
            }
        };
        Table { vars, words }
    }

    fn depends_on(&self, p: usize) -> bool {
        if p >= 6 {
            let block = 1usize << (p - 6);
            self.words
                .chunks(2 * block)
                .any(|ch| ch[..block] != ch[block..])
        } else {
            let low = !LOW_PATTERNS[p] & Table::valid_mask(self.vars);
            self.words.iter().any(|&w| (w ^ (w >> (1 << p))) & low != 0)
        }
    }
}

/// Bits at positions `i` with `i mod 4s < s`.
const fn spread_mask(s: usize) -> u64 {
    let mut m = 0u64;
    let mut i = 0;
    while i < 64 {
        if i % (4 * s) < s {
            m |= 1 << i;
        }
        i += 1;
    }
    m
}

const SPREAD: [u64; 5] = [spread_mask(1), spread_mask(2), spread_mask(4), spread_mask(8), spread_mask(16)];

/// Gathers the 32 bits of `w` whose index has bit `p` equal to `val`.
fn compress(w: u64, p: usize, val: bool) -> u64 {
    let shift = if val { 1 << p } else { 0 };
    let mut x = (w >> shift) & !LOW_PATTERNS[p];
    // blocks of size s sit at even block positions; merge neighbours
    for (q, &mask) in SPREAD.iter().enumerate().skip(p) {
        let s = 1 << q;
        x = (x & mask) | ((x >> s) & (mask << s));
    }
    x & 0xFFFF_FFFF
}

/// Reduced OBDD of `f` under `order` (first entry tested first).
pub fn build_obdd(f: &Cnf, order: &VarOrder) -> Result<Obdd> {
    let m = f.num_vars();
    if m > BUILD_CAP {
        return Err(Error::Capacity {
            what: "OBDD variables",
            size: m,
            cap: BUILD_CAP,
        });
    }
    if order.len() != m {
        return Err(Error::NotAPermutation(format!(
            "order covers {} variables, formula has {m}",
            order.len()
        )));
    }
    // level 0 on the most significant index bit: a level-l subfunction is
    // a contiguous block of 2^(m-l) bits
    let var_of_bit: Vec<usize> = order.as_slice().iter().rev().copied().collect();
    let table = Table::of_cnf(f, &var_of_bit);
    let mut b = Builder {
        m,
        table: &table,
        nodes: vec![
            ObddNode {
                level: usize::MAX,
                lo: FALSE,
                hi: FALSE,
            },
            ObddNode {
                level: usize::MAX,
                lo: TRUE,
                hi: TRUE,
            },
        ],
        unique: HashMap::new(),
        memo: HashMap::new(),
    };
    let root = b.node(0, 0);
    Ok(Obdd {
        order: order.clone(),
        nodes: b.nodes,
        root,
    })
}

struct Builder<'a> {
    m: usize,
    table: &'a Table,
    nodes: Vec<ObddNode>,
    unique: HashMap<(usize, usize, usize), usize>,
    memo: HashMap<(usize, Vec<u64>), usize>,
}

impl Builder<'_> {
    fn block(&self, level: usize, offset: usize) -> Vec<u64> {
        let len = 1usize << (self.m - level);
        if len >= 64 {
            self.table.words[offset / 64..(offset + len) / 64].to_vec()
        } else {
            let w = self.table.words[offset / 64] >> (offset % 64);
            vec![w & ((1u64 << len) - 1)]
        }
    }

    fn node(&mut self, level: usize, offset: usize) -> usize {
        let key = self.block(level, offset);
        let len = 1usize << (self.m - level);
        if key.iter().all(|&w| w == 0) {
            return FALSE;
        }
        let full = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
        if key.iter().all(|&w| w == full) {
            return TRUE;
        }
        if let Some(&v) = self.memo.get(&(level, key.clone())) {
            return v;
        }
        let lo = self.node(level + 1, offset);
        let hi = self.node(level + 1, offset + len / 2);
        let v = if lo == hi {
            lo
        } else {
            let next = self.nodes.len();
            let v = *self.unique.entry((level, lo, hi)).or_insert(next);
            if v == next {
                self.nodes.push(ObddNode { level, lo, hi });
            }
            v
        };
        self.memo.insert((level, key), v);
        v
    }
}

/// Smallest OBDD size and the lexicographically smallest order attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinObdd {
    pub size: usize,
    pub order: VarOrder,
}

/// Exact minimum OBDD size over all variable orders by dynamic programming
/// over variable subsets.
pub fn min_obdd_size_over_orders(f: &Cnf, cap: usize) -> Result<MinObdd> {
    let m = f.num_vars();
    let cap = cap.min(MAX_MIN_CAP);
    if m > cap {
        return Err(Error::Capacity {
            what: "variables for minimum OBDD search",
            size: m,
            cap,
        });
    }
    if m == 0 {
        return Ok(MinObdd {
            size: 2,
            order: VarOrder::identity(0),
        });
    }
    let full = (1usize << m) - 1;
    let identity: Vec<usize> = (0..m).collect();
    // cost[s * m + x]: nodes testing x directly below the variables in s
    let mut cost = vec![0u32; (full + 1) * m];

    // subfunctions per subset, one cardinality layer at a time; a table for
    // subset s ranges over the variables outside s in increasing order
    let mut layer: Vec<(usize, Vec<Table>)> = vec![(0, vec![Table::of_cnf(f, &identity)])];
    for k in 0..=m {
        let counts: Vec<Vec<u32>> = layer
            .par_iter()
            .map(|(_, subs)| {
                (0..m - k)
                    .map(|p| subs.iter().filter(|g| g.depends_on(p)).count() as u32)
                    .collect()
            })
            .collect();
        for ((s, _), row) in layer.iter().zip(&counts) {
            let free = (0..m).filter(|&x| s & (1 << x) == 0);
            for (x, &c) in free.zip(row) {
                cost[s * m + x] = c;
            }
        }
        if k == m {
            break;
        }
        let index: HashMap<usize, usize> = layer.iter().enumerate().map(|(i, (s, _))| (*s, i)).collect();
        let subsets: Vec<usize> = subsets_of_size(m, k + 1).collect();
        layer = subsets
            .into_par_iter()
            .map(|s| {
                let y = usize::BITS as usize - 1 - s.leading_zeros() as usize;
                let parent = &layer[index[&(s & !(1 << y))]].1;
                // y's bit position among the variables outside the parent set
                let p = (0..y).filter(|&x| s & (1 << x) == 0).count();
                let mut subs: Vec<Table> = Vec::new();
                let mut seen = HashSet::new();
                for g in parent {
                    for val in [false, true] {
                        let h = g.cofactor(p, val);
                        if seen.insert(h.clone()) {
                            subs.push(h);
                        }
                    }
                }
                (s, subs)
            })
            .collect();
    }

    let mut rest = vec![0u32; full + 1];
    for s in (0..full).rev() {
        rest[s] = (0..m)
            .filter(|&x| s & (1 << x) == 0)
            .map(|x| cost[s * m + x] + rest[s | 1 << x])
            .min()
            .expect("s is not full");
    }
    let mut seq = Vec::with_capacity(m);
    let mut s = 0usize;
    for _ in 0..m {
        let x = (0..m)
            .find(|&x| s & (1 << x) == 0 && cost[s * m + x] + rest[s | 1 << x] == rest[s])
            .expect("optimum is reachable");
        seq.push(x);
        s |= 1 << x;
    }
    Ok(MinObdd {
        size: rest[0] as usize + 2,
        order: VarOrder::new(seq, m)?,
    })
}

fn subsets_of_size(m: usize, k: usize) -> impl Iterator<Item = usize> {
    (0usize..1 << m).filter(move |s| s.count_ones() as usize == k)
}

/// Minimum over an explicit list of orders; ties keep the first.
pub fn min_obdd_size_over_order_list<I>(f: &Cnf, orders: I) -> Result<Option<MinObdd>>
where
    I: IntoIterator<Item = VarOrder>,
{
    let mut best: Option<MinObdd> = None;
    for order in orders {
        let size = build_obdd(f, &order)?.size();
        if best.as_ref().is_none_or(|b| size < b.size) {
            best = Some(MinObdd { size, order });
        }
    }
    Ok(best)
}

/// Minimum over all `m!` orders enumerated in lexicographic order.
pub fn min_obdd_size_by_enumeration(f: &Cnf, cap: usize) -> Result<MinObdd> {
    let m = f.num_vars();
    if m > cap {
        return Err(Error::Capacity {
            what: "variables for order enumeration",
            size: m,
            cap,
        });
    }
    let orders = Permutations::new(m).map(|p| VarOrder::new(p, m).expect("permutation"));
    Ok(min_obdd_size_over_order_list(f, orders)?.expect("at least one order"))
}

/// Permutations of `0..n` in lexicographic order.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            next: Some((0..n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut p = cur.clone();
        if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
            p.swap(i - 1, j);
            p[i..].reverse();
            self.next = Some(p);
        }
        Some(cur)
    }
}
