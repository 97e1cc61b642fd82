//! Acceptance suite: one line per criterion, each with its own time limit.
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use matchwidth::branching::{check_c_nsobdd, BpEdge, BranchingProgram, VarOrder};
use matchwidth::decomposition::{
    ctree_decomposition, ordering_from_path_decomposition, path_decomposition_from_layout,
    path_decomposition_from_ordering, validate_decomposition,
};
use matchwidth::graph::{cut_graph, max_bipartite_matching, min_vertex_cover_bipartite, Graph, VertexOrdering};
use matchwidth::instances::{
    cnf_of_graph, ct_graph, f_rk, f_rk_var_bound, f_rk_var_count, f_rr_var_count, primal_graph, random_corpus, Literal,
};
use matchwidth::lbound::{assignment_family, check_distinctness, vertex_order_of, witness_cut, VarSplit};
use matchwidth::obdd::{build_obdd, min_obdd_size_over_orders, MinObdd};
use matchwidth::width::{matching_width_exact, mw_of_ordering, pathwidth_exact, DEFAULT_DP_CAP};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Suite {
    failures: usize,
}

impl Suite {
    fn criterion(&mut self, id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Check) {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        if !pass {
            self.failures += 1;
        }
        println!(
            "criterion {id:>2} {} | {title} | {detail} | {:.2}s of {}s",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
}

fn corpus() -> Vec<Graph> {
    random_corpus(200, 8, CORPUS_SEED)
}

/// Ordering with `prefix` (in increasing order) first, then the rest.
fn ordering_with_prefix(n: usize, set: u32) -> VertexOrdering {
    let (mut a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| set >> v & 1 == 1);
    a.extend(b);
    VertexOrdering::new(a, n).unwrap()
}

fn c1_path_example() -> Check {
    let g = path(10);
    let natural = mw_of_ordering(&g, &VertexOrdering::identity(10)).unwrap().value;
    let interleaved = VertexOrdering::new(vec![0, 2, 4, 6, 8, 1, 3, 5, 7, 9], 10).unwrap();
    let inter = mw_of_ordering(&g, &interleaved).unwrap().value;
    let exact = matching_width_exact(&g, DEFAULT_DP_CAP).unwrap().value;
    ensure(natural == 1 && inter == 5 && exact == 1, || {
        format!("natural {natural}, interleaved {inter}, exact {exact}")
    })?;
    Ok("natural 1, interleaved 5, exact 1".into())
}

fn c2_konig(corpus: &[Graph]) -> Check {
    let mut cuts = 0;
    for g in corpus {
        let n = g.n();
        for set in 1u32..(1 << n) - 1 {
            let sv = ordering_with_prefix(n, set);
            let i = set.count_ones() as usize;
            let c = cut_graph(g, &sv, i).unwrap();
            let m = max_bipartite_matching(&c);
            let vc = min_vertex_cover_bipartite(&c, &m).map_err(|e| format!("{g}: {e}"))?;
            let crossing = crossing_edges(g, sv.prefix(i));
            ensure(vc.covers(&c), || format!("{g}: cover misses an edge"))?;
            ensure(vc.len() == m.len(), || format!("{g}: ν {} ≠ τ {}", m.len(), vc.len()))?;
            let tau = brute_vertex_cover(n, &crossing);
            ensure(tau == vc.len(), || format!("{g}: brute τ {tau} ≠ {}", vc.len()))?;
            cuts += 1;
        }
    }
    Ok(format!("{} graphs, {cuts} prefix cuts", corpus.len()))
}

fn c3_dp_vs_enumeration(corpus: &[Graph]) -> Check {
    let mut count = 0;
    for g in corpus.iter().filter(|g| g.n() <= 7) {
        let dp = matching_width_exact(g, DEFAULT_DP_CAP).unwrap().value;
        let brute = brute_mw(g);
        ensure(dp == brute, || format!("{g}: dp {dp} ≠ enumeration {brute}"))?;
        count += 1;
    }
    Ok(format!("{count} graphs with n ≤ 7"))
}

fn c4_sandwich(corpus: &[Graph]) -> Check {
    for g in corpus {
        let mw = matching_width_exact(g, DEFAULT_DP_CAP).unwrap().value;
        let pw = pathwidth_exact(g, DEFAULT_DP_CAP).unwrap().value;
        ensure(pw <= 2 * mw && mw <= pw + 1, || format!("{g}: pw {pw}, mw {mw}"))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c5_constructions(corpus: &[Graph]) -> Check {
    for g in corpus {
        let mw = matching_width_exact(g, DEFAULT_DP_CAP).unwrap();
        let pd = path_decomposition_from_ordering(g, mw.witness_ordering.as_ref().unwrap()).unwrap();
        let v = validate_decomposition(g, &pd).unwrap();
        ensure(v.is_valid(), || format!("{g}: {v:?}"))?;
        ensure(pd.width() <= 2 * mw.value, || format!("{g}: width {} > 2·{}", pd.width(), mw.value))?;

        let pw = pathwidth_exact(g, DEFAULT_DP_CAP).unwrap();
        let layout = path_decomposition_from_layout(g, pw.witness_ordering.as_ref().unwrap()).unwrap();
        ensure(layout.width() == pw.value, || format!("{g}: layout width {} ≠ pw {}", layout.width(), pw.value))?;
        let sv = ordering_from_path_decomposition(g, &layout).unwrap();
        let back = mw_of_ordering(g, &sv).unwrap().value;
        ensure(back <= pw.value + 1, || format!("{g}: mw {back} > pw {} + 1", pw.value))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c6_ctree() -> Check {
    let mut cases = 0;
    for r in 0..=3u32 {
        for k in [2usize, 3, 4] {
            let d = ctree_decomposition(r, k).unwrap();
            let primal = primal_graph(&f_rk(r, k).unwrap());
            let v = validate_decomposition(&primal, &d.extended).unwrap();
            ensure(v.is_valid(), || format!("r={r} k={k}: {v:?}"))?;
            ensure(d.extended.width() < 2 * k, || format!("r={r} k={k}: width {}", d.extended.width()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (r, k) pairs"))
}

fn c7_counts() -> Check {
    for r in 0..=5u32 {
        for k in 1..=5usize {
            let ct = ct_graph(r, k).unwrap();
            let m = f_rk(r, k).unwrap().num_vars() as u128;
            ensure(m == (ct.n() + ct.num_edges()) as u128, || format!("r={r} k={k}: {m} variables"))?;
            ensure(m == f_rk_var_count(r, k as u64), || format!("r={r} k={k}: closed form mismatch"))?;
            ensure(m <= f_rk_var_bound(r, k as u64), || format!("r={r} k={k}: {m} > 2^r·6k²"))?;
            ensure(m <= (1u128 << r) * 6 * (k * k) as u128, || format!("r={r} k={k}: bound"))?;
        }
    }
    for r in 1..=4u32 {
        let m = f_rk(r, r as usize).unwrap().num_vars() as u128;
        let rr = r as u128;
        let formula = (1u128 << r) * (3 * rr * rr + rr) - (5 * rr * rr + rr) / 2;
        ensure(m == formula && m == f_rr_var_count(r), || format!("r=k={r}: {m} vs {formula}"))?;
    }
    Ok("r ≤ 5, k ≤ 5 and r = k ≤ 4".into())
}

fn c8_families(corpus: &[Graph]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 8);
    let mut families = 0;
    let mut members = 0;
    let mut max_t = 0;
    for g in corpus {
        let n = g.n();
        let f = cnf_of_graph(g);
        let mut orders = vec![VertexOrdering::identity(n)];
        orders.push(matching_width_exact(g, DEFAULT_DP_CAP).unwrap().witness_ordering.unwrap());
        for _ in 0..3 {
            let mut seq: Vec<usize> = (0..n).collect();
            seq.shuffle(&mut rng);
            orders.push(VertexOrdering::new(seq, n).unwrap());
        }
        for sv in &orders {
            let reach = mw_of_ordering(g, sv).unwrap().value;
            for t in 0..=reach.min(5) {
                let w = witness_cut(g, sv, t).map_err(|e| format!("{g}: {e}"))?;
                let fam = assignment_family(&f, &w).unwrap();
                ensure(fam.len() == 1 << t, || format!("{g}: t={t} family of {}", fam.len()))?;
                ensure(fam.iter().all(|s| satisfies(&f, s)), || format!("{g}: t={t} unsatisfying member"))?;
                families += 1;
                members += fam.len();
                max_t = max_t.max(t);
            }
        }
    }
    Ok(format!("{families} families, {members} members, t up to {max_t}"))
}

struct Instance {
    g: Graph,
    mw: usize,
    best: MinObdd,
}

fn criterion9_graphs(corpus: &[Graph]) -> Vec<Graph> {
    let mut gs: Vec<Graph> = corpus.iter().filter(|g| g.n() <= 5).cloned().collect();
    gs.extend([path(3), path(4), complete(3), complete(4), two_k2()]);
    gs
}

fn c9_obdd_bound(graphs: &[Graph], out: &mut Vec<Instance>) -> Check {
    let mut max_vars = 0;
    for g in graphs {
        let f = cnf_of_graph(g);
        max_vars = max_vars.max(f.num_vars());
        let mw = matching_width_exact(g, DEFAULT_DP_CAP).unwrap().value;
        let best = min_obdd_size_over_orders(&f, 16).map_err(|e| format!("{g}: {e}"))?;
        ensure(BigUint::from(best.size) >= BigUint::from(1u8) << mw, || {
            format!("{g}: min size {} < 2^{mw}", best.size)
        })?;
        out.push(Instance { g: g.clone(), mw, best });
    }
    Ok(format!("{} graphs, up to {max_vars} variables", graphs.len()))
}

fn c10_distinctness(instances: &[Instance]) -> Check {
    let mut families = 0;
    let mut vectors = 0;
    for inst in instances {
        let g = &inst.g;
        let f = cnf_of_graph(g);
        for sv_star in [inst.best.order.clone(), VarOrder::identity(f.num_vars())] {
            let z = build_obdd(&f, &sv_star).unwrap().to_branching_program().unwrap();
            let sv = vertex_order_of(&f, g, &sv_star).unwrap();
            let reach = mw_of_ordering(g, &sv).unwrap().value;
            ensure(reach >= inst.mw, || format!("{g}: order reaches {reach} < mw {}", inst.mw))?;
            for t in 0..=reach.min(3) {
                let w = witness_cut(g, &sv, t).unwrap();
                let fam = assignment_family(&f, &w).unwrap();
                let split = VarSplit::of_cut(&f, &w);
                for c in 1..=2 {
                    let r = check_distinctness(&z, &fam, &sv_star, &split, c).map_err(|e| format!("{g}: {e}"))?;
                    ensure(r.distinct(), || format!("{g}: t={t} c={c} collisions {:?}", r.collisions))?;
                    families += 1;
                    vectors += r.vectors.len();
                }
            }
        }
    }
    Ok(format!("{families} families, {vectors} vectors, 0 collisions"))
}

fn c11_semantic(instances: &[Instance]) -> Check {
    let mut built = 0;
    for inst in instances {
        let f = cnf_of_graph(&inst.g);
        let m = f.num_vars();
        let mut rev: Vec<usize> = (0..m).collect();
        rev.reverse();
        for order in [inst.best.order.clone(), VarOrder::identity(m), VarOrder::new(rev, m).unwrap()] {
            let z = build_obdd(&f, &order).unwrap().to_branching_program().unwrap();
            let v = check_c_nsobdd(&z, &order, 1, 1 << 20).unwrap();
            ensure(v.pass, || format!("{}: OBDD fails c=1", inst.g))?;
            built += 1;
        }
    }
    let edge = |tail, head, label| BpEdge { tail, head, label: Some(label) };
    let id3 = VarOrder::identity(3);
    let x3x1 = BranchingProgram::new(3, 3, 0, 2, vec![edge(0, 1, Literal::pos(2)), edge(1, 2, Literal::pos(0))]).unwrap();
    ensure(!check_c_nsobdd(&x3x1, &id3, 1, 100).unwrap().pass, || "(x3,x1) passes c=1".into())?;
    ensure(check_c_nsobdd(&x3x1, &id3, 2, 100).unwrap().pass, || "(x3,x1) fails c=2".into())?;
    let exempt = BranchingProgram::new(
        4,
        2,
        0,
        3,
        vec![
            edge(0, 1, Literal::pos(0)),
            edge(1, 3, Literal::pos(1)),
            edge(1, 2, Literal::neg(0)),
            edge(2, 3, Literal::pos(1)),
        ],
    )
    .unwrap();
    ensure(check_c_nsobdd(&exempt, &VarOrder::identity(2), 1, 100).unwrap().pass, || {
        "inconsistent-only violation rejected".into()
    })?;
    Ok(format!("{built} OBDDs pass c=1; hand-built programs behave"))
}

fn c12_ctree_mw() -> Check {
    let mut seen = Vec::new();
    for (r, k) in [(1u32, 1usize), (1, 2), (2, 1), (2, 2)] {
        let g = ct_graph(r, k).unwrap();
        let mw = matching_width_exact(&g, DEFAULT_DP_CAP).unwrap().value;
        let need = (r as usize * k).div_ceil(2);
        ensure(mw >= need, || format!("CT_({r},{k}): mw {mw} < {need}"))?;
        seen.push(format!("CT_({r},{k})={mw}"));
    }
    Ok(seen.join(", "))
}

fn c13_determinism() -> Check {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let bin = env!("CARGO_BIN_EXE_matchwidth");
    let (gr, cnf, td, bp) = (p("g.gr"), p("g.cnf"), p("g.td"), p("g.bp"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen-graph", "--family", "random", "--n", "5", "--p", "0.5", "--seed", "11", "--out", &gr],
        vec!["gen-cnf", "--graph", &gr, "--out", &cnf],
        vec!["mw", "--graph", &gr, "--exact"],
        vec!["pw", "--graph", &gr, "--exact"],
        vec!["td-ctree", "--r", "2", "--k", "2", "--extended"],
        vec!["pd-from-order", "--graph", &gr, "--out", &td],
        vec!["order-from-pd", "--graph", &gr, "--td", &td],
        vec!["obdd-build", "--cnf", &cnf, "--out", &bp],
        vec!["obdd-min", "--cnf", &cnf],
        vec!["check-cnsobdd", "--bp", &bp, "--c", "1", "--cnf", &cnf],
        vec!["lb-experiment", "--graph", &gr, "--c", "2", "--seed", "5"],
        vec!["lb-experiment", "--r", "1", "--k", "1"],
    ];
    let mut files = vec![gr.clone(), cnf.clone(), td.clone(), bp.clone()];
    files.dedup();
    let mut runs = Vec::new();
    for _ in 0..2 {
        let mut outputs = Vec::new();
        for args in &commands {
            let out = Command::new(bin).arg("--json").args(args).output().unwrap();
            ensure(out.status.code() == Some(0), || {
                format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim())
            })?;
            serde_json::from_slice::<serde_json::Value>(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
            outputs.push(out.stdout);
        }
        for f in &files {
            outputs.push(fs::read(f).unwrap());
        }
        runs.push(outputs);
    }
    for (i, (a, b)) in runs[0].iter().zip(&runs[1]).enumerate() {
        ensure(a == b, || match commands.get(i) {
            Some(args) => format!("{args:?} output differs"),
            None => format!("file {} differs", files[i - commands.len()]),
        })?;
    }
    Ok(format!("{} commands and {} files byte-identical over 2 runs", commands.len(), files.len()))
}

fn main() {
    let secs = Duration::from_secs;
    let mut suite = Suite { failures: 0 };
    let corpus = corpus();

    suite.criterion(1, "path example", secs(1), c1_path_example);
    suite.criterion(2, "matching equals cover on every prefix cut", secs(30), || c2_konig(&corpus));
    suite.criterion(3, "subset DP equals n! enumeration", secs(60), || c3_dp_vs_enumeration(&corpus));
    suite.criterion(4, "pw/2 ≤ mw ≤ pw + 1", secs(120), || c4_sandwich(&corpus));
    suite.criterion(5, "ordering/decomposition conversions", secs(120), || c5_constructions(&corpus));
    suite.criterion(6, "clique-tree decomposition width ≤ 2k - 1", secs(10), c6_ctree);
    suite.criterion(7, "variable counts and bounds", secs(1), c7_counts);
    suite.criterion(8, "assignment families", secs(10), || c8_families(&corpus));
    let graphs = criterion9_graphs(&corpus);
    let mut instances = Vec::new();
    suite.criterion(9, "min OBDD size ≥ 2^mw", secs(300), || c9_obdd_bound(&graphs, &mut instances));
    suite.criterion(10, "separation vectors are distinct", secs(120), || c10_distinctness(&instances));
    suite.criterion(11, "semantic c-OBDD checker", secs(1), || c11_semantic(&instances));
    suite.criterion(12, "mw(CT_(r,k)) ≥ ceil(rk/2)", secs(300), c12_ctree_mw);
    suite.criterion(13, "CLI determinism", secs(60), c13_determinism);

    println!("acceptance: {} of 13 criteria failed", suite.failures);
    if suite.failures > 0 {
        std::process::exit(1);
    }
}
