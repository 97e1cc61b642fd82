//! Command line front end. [`run`] parses arguments, executes one command and
//! returns the process exit code: 0 on success, 1 when a checked property or
//! inequality fails, 2 on usage or input errors.
//!
//! Vertex and variable ids on the command line and in all files are 1-based.
//! Orderings are comma separated lists such as `1,3,2`.

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::branching::{check_c_nsobdd, equivalence_vs_cnf, BranchingProgram, Equivalence, VarOrder, DEFAULT_PATH_CAP, EQUIVALENCE_CAP};
use crate::decomposition::{
    ctree_decomposition, ordering_from_path_decomposition, path_decomposition_from_ordering, validate_decomposition,
};
use crate::dimacs::{read_cnf, read_graph, write_cnf, write_graph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrdering};
use crate::instances::{self, cnf_of_graph, f_rk, GraphFamily};
use crate::lbound::{
    assignment_family, check_distinctness, verify_ct_bound, verify_size_bound, vertex_order_of, witness_cut, BoundVerdict,
    VarSplit,
};
use crate::obdd::{build_obdd, min_obdd_size_by_enumeration, min_obdd_size_over_orders, DEFAULT_ENUMERATION_CAP, DEFAULT_MIN_CAP};
use crate::pace::{as_path, read_td, write_path_td, write_td};
use crate::width::{
    matching_width_exact, mw_of_ordering, pathwidth_exact, vertex_separation_of_ordering, WidthReport, DEFAULT_DP_CAP,
};

const REPORT_FORMAT: &str = "matchwidth-report v1";

#[derive(Parser, Debug)]
#[command(name = "matchwidth", version, about = "Matching width, decompositions and OBDD lower-bound experiments")]
struct Cli {
    /// Print a JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Grid,
    Random,
    Complete,
    Ctree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph in DIMACS format.
    GenGraph {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        /// Edge probability of random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write CNF(G) for a graph file, or F_{r,k}.
    GenCnf {
        #[arg(long, conflicts_with_all = ["r", "k"])]
        graph: Option<PathBuf>,
        #[arg(long, requires = "k")]
        r: Option<u32>,
        #[arg(long, requires = "r")]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matching width of an ordering, or the exact value.
    Mw(WidthArgs),
    /// Pathwidth (vertex separation) of an ordering, or the exact value.
    Pw(WidthArgs),
    /// Tree decomposition of CT_{r,k}, or of the primal graph of F_{r,k}.
    TdCtree {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        /// Decompose the primal graph of F_{r,k} instead.
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex ordering from a path decomposition (PACE .td).
    OrderFromPd {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
    /// Path decomposition from a vertex ordering.
    PdFromOrder {
        #[arg(long)]
        graph: PathBuf,
        /// Ordering; defaults to a matching-width optimal one.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DP_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced OBDD of a CNF under a variable order.
    ObddBuild {
        #[arg(long)]
        cnf: PathBuf,
        /// Variable order; defaults to 1,2,...,m.
        #[arg(long)]
        order: Option<String>,
        /// Write the OBDD as a branching program file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum OBDD size of a CNF over all variable orders.
    ObddMin {
        #[arg(long)]
        cnf: PathBuf,
        /// Enumerate all orders instead of the subset dynamic program.
        #[arg(long)]
        enumerate: bool,
        /// Variable cap; defaults to 16 (10 with --enumerate).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Semantic c-OBDD check of a branching program.
    CheckCnsobdd {
        #[arg(long)]
        bp: PathBuf,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        c: usize,
        /// Also check equivalence with this CNF.
        #[arg(long)]
        cnf: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        path_cap: usize,
    },
    /// Lower-bound experiment on CNF(G) or F_{r,k}.
    LbExperiment {
        #[arg(long, conflicts_with_all = ["r", "k"])]
        graph: Option<PathBuf>,
        #[arg(long, requires = "k")]
        r: Option<u32>,
        #[arg(long, requires = "r")]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// Family parameter; defaults to the exact matching width.
        #[arg(long)]
        t: Option<usize>,
        /// Branching program to test; defaults to a minimum-size OBDD.
        #[arg(long, requires = "order")]
        bp: Option<PathBuf>,
        /// Variable order of the program (or of the OBDD to build).
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MIN_CAP)]
        obdd_cap: usize,
        #[arg(long, default_value_t = DEFAULT_DP_CAP)]
        cap: usize,
        /// Recorded in the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
struct WidthArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Minimise over all orderings.
    #[arg(long, conflicts_with = "order")]
    exact: bool,
    /// Ordering to evaluate; defaults to 1,2,...,n.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DP_CAP)]
    cap: usize,
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Outcome {
    json: Value,
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, pass: true }
    }
}

fn open(path: &Path) -> Result<BufReader<fs::File>> {
    fs::File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_graph(open(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path) -> Result<instances::Cnf> {
    read_cnf(open(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

/// Parses a 1-based comma separated permutation of `1..=n`.
fn parse_sequence(s: &str, n: usize) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let x: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad id `{t}` in ordering")))?;
            if x == 0 || x > n {
                return Err(Error::Input(format!("id {x} outside 1..={n}")));
            }
            Ok(x - 1)
        })
        .collect()
}

fn vertex_ordering(s: Option<&str>, n: usize) -> Result<VertexOrdering> {
    match s {
        None => Ok(VertexOrdering::identity(n)),
        Some(s) => VertexOrdering::new(parse_sequence(s, n)?, n),
    }
}

fn var_order(s: Option<&str>, m: usize) -> Result<VarOrder> {
    match s {
        None => Ok(VarOrder::identity(m)),
        Some(s) => VarOrder::new(parse_sequence(s, m)?, m),
    }
}

fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|x| x + 1).collect()
}

fn join(seq: &[usize]) -> String {
    one_based(seq)
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn bound_json(b: &BoundVerdict) -> Value {
    match u64::try_from(&b.bound) {
        Ok(x) => json!(x),
        Err(_) => json!(b.bound.to_string()),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::GenGraph {
            family,
            n,
            width,
            height,
            p,
            r,
            k,
            seed,
            out,
        } => {
            let need = |x: Option<usize>, name: &str| x.ok_or_else(|| Error::Param(format!("--{name} is required")));
            let g = match family {
                Family::Path => instances::generate(GraphFamily::Path { n: need(*n, "n")? }, *seed)?,
                Family::Cycle => instances::generate(GraphFamily::Cycle { n: need(*n, "n")? }, *seed)?,
                Family::Grid => instances::generate(
                    GraphFamily::Grid {
                        width: need(*width, "width")?,
                        height: need(*height, "height")?,
                    },
                    *seed,
                )?,
                Family::Random => instances::generate(GraphFamily::Random { n: need(*n, "n")?, p: *p }, *seed)?,
                Family::Complete => {
                    let n = need(*n, "n")?;
                    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
                }
                Family::Ctree => instances::ct_graph(
                    r.ok_or_else(|| Error::Param("--r is required".into()))?,
                    need(*k, "k")?,
                )?,
            };
            let text = write_graph(&g);
            if let Some(path) = out {
                save(path, &text)?;
            }
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "gen-graph",
                "family": format!("{family:?}").to_lowercase(),
                "seed": seed,
                "n": g.n(),
                "m": g.num_edges(),
                "edges": g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
            });
            let text = if out.is_some() {
                format!("wrote graph with {} vertices and {} edges\n", g.n(), g.num_edges())
            } else {
                text
            };
            Ok(Outcome::ok(json, text))
        }
        Command::GenCnf { graph, r, k, out } => {
            let (f, source) = match (graph, r, k) {
                (Some(path), _, _) => (cnf_of_graph(&load_graph(path)?), json!({"graph": path.display().to_string()})),
                (None, Some(r), Some(k)) => (f_rk(*r, *k)?, json!({"r": r, "k": k})),
                _ => return Err(Error::Param("give --graph or both --r and --k".into())),
            };
            let text = write_cnf(&f);
            if let Some(path) = out {
                save(path, &text)?;
            }
            let mut json = json!({
                "format": REPORT_FORMAT,
                "command": "gen-cnf",
                "source": source,
                "num_vars": f.num_vars(),
                "num_clauses": f.clauses().len(),
            });
            if let (Some(r), Some(k)) = (r, k) {
                json["var_bound"] = json!(instances::f_rk_var_bound(*r, *k as u64).to_string());
            }
            let text = if out.is_some() {
                format!("wrote CNF with {} variables and {} clauses\n", f.num_vars(), f.clauses().len())
            } else {
                text
            };
            Ok(Outcome::ok(json, text))
        }
        Command::Mw(args) => width_command("mw", args, matching_width_exact, mw_of_ordering),
        Command::Pw(args) => width_command("pw", args, pathwidth_exact, vertex_separation_of_ordering),
        Command::TdCtree { r, k, extended, out } => {
            let d = ctree_decomposition(*r, *k)?;
            let (td, host) = if *extended {
                (d.extended, instances::primal_graph(&f_rk(*r, *k)?))
            } else {
                (d.base, instances::ct_graph(*r, *k)?)
            };
            let verdict = validate_decomposition(&host, &td)?;
            let text = write_td(&td, host.n());
            if let Some(path) = out {
                save(path, &text)?;
            }
            let pass = verdict.is_valid() && td.width() < 2 * k;
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "td-ctree",
                "r": r,
                "k": k,
                "extended": extended,
                "bags": td.bags().len(),
                "width": td.width(),
                "width_bound": 2 * k - 1,
                "verdict": verdict,
                "pass": pass,
            });
            let text = if out.is_some() {
                format!("width {}\n", td.width())
            } else {
                text
            };
            Ok(Outcome { json, text, pass })
        }
        Command::OrderFromPd { graph, td } => {
            let g = load_graph(graph)?;
            let (tree, n) = read_td(open(td)?).map_err(|e| Error::Input(format!("{}: {e}", td.display())))?;
            if n != g.n() {
                return Err(Error::Input(format!("decomposition is for {n} vertices, graph has {}", g.n())));
            }
            let pd = as_path(&tree).ok_or_else(|| Error::Input("decomposition is not a path".into()))?;
            let sv = ordering_from_path_decomposition(&g, &pd)?;
            let mw = mw_of_ordering(&g, &sv)?.value;
            let pass = mw <= pd.width() + 1;
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "order-from-pd",
                "ordering": one_based(sv.as_slice()),
                "pd_width": pd.width(),
                "mw_of_ordering": mw,
                "pass": pass,
            });
            Ok(Outcome {
                json,
                text: format!("{}\n", join(sv.as_slice())),
                pass,
            })
        }
        Command::PdFromOrder { graph, order, cap, out } => {
            let g = load_graph(graph)?;
            let sv = match order {
                Some(s) => vertex_ordering(Some(s), g.n())?,
                None => matching_width_exact(&g, *cap)?
                    .witness_ordering
                    .unwrap_or_else(|| VertexOrdering::identity(g.n())),
            };
            let mw = mw_of_ordering(&g, &sv)?.value;
            let pd = path_decomposition_from_ordering(&g, &sv)?;
            let text = write_path_td(&pd, g.n());
            // what a reader of the file sees
            let (written, _) = read_td(text.as_bytes())?;
            let verdict = validate_decomposition(&g, &written)?;
            if let Some(path) = out {
                save(path, &text)?;
            }
            let pass = verdict.is_valid() && pd.width() <= 2 * mw;
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "pd-from-order",
                "ordering": one_based(sv.as_slice()),
                "mw_of_ordering": mw,
                "width": pd.width(),
                "verdict": verdict,
                "pass": pass,
            });
            let text = if out.is_some() {
                format!("width {}\n", pd.width())
            } else {
                text
            };
            Ok(Outcome { json, text, pass })
        }
        Command::ObddBuild { cnf, order, out } => {
            let f = load_cnf(cnf)?;
            let sv = var_order(order.as_deref(), f.num_vars())?;
            let z = build_obdd(&f, &sv)?;
            let bp = z.to_branching_program().ok();
            if let Some(path) = out {
                let bp = bp
                    .as_ref()
                    .ok_or_else(|| Error::Input("unsatisfiable formula has no branching program".into()))?;
                save(path, &bp.to_text())?;
            }
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "obdd-build",
                "order": one_based(sv.as_slice()),
                "size": z.size(),
                "program_nodes": bp.as_ref().map(|b| b.size()),
            });
            Ok(Outcome::ok(json, format!("{}\n", z.size())))
        }
        Command::ObddMin { cnf, enumerate, cap } => {
            let f = load_cnf(cnf)?;
            let best = if *enumerate {
                min_obdd_size_by_enumeration(&f, cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?
            } else {
                min_obdd_size_over_orders(&f, cap.unwrap_or(DEFAULT_MIN_CAP))?
            };
            let json = json!({
                "format": REPORT_FORMAT,
                "command": "obdd-min",
                "method": if *enumerate { "enumeration" } else { "subset-dp" },
                "size": best.size,
                "order": one_based(best.order.as_slice()),
            });
            Ok(Outcome::ok(json, format!("{}\n{}\n", best.size, join(best.order.as_slice()))))
        }
        Command::CheckCnsobdd {
            bp,
            order,
            c,
            cnf,
            path_cap,
        } => {
            let z = BranchingProgram::from_text(open(bp)?).map_err(|e| Error::Input(format!("{}: {e}", bp.display())))?;
            let sv = var_order(order.as_deref(), z.num_vars())?;
            let verdict = check_c_nsobdd(&z, &sv, *c, *path_cap)?;
            let mut pass = verdict.pass;
            let mut json = json!({
                "format": REPORT_FORMAT,
                "command": "check-cnsobdd",
                "c": c,
                "order": one_based(sv.as_slice()),
                "program_nodes": z.size(),
                "max_segments": verdict.max_segments,
                "paths_checked": verdict.paths_checked,
                "violating_path": verdict.violating_path.as_ref().map(|p| one_based(&z.path_nodes(p))),
            });
            let mut text = format!(
                "{} (max segments {})\n",
                if verdict.pass { "pass" } else { "fail" },
                verdict.max_segments
            );
            if let Some(path) = cnf {
                let f = load_cnf(path)?;
                let eq = equivalence_vs_cnf(&z, &f)?;
                if let Equivalence::Counterexample { assignment } = &eq {
                    pass = false;
                    text.push_str(&format!(
                        "not equivalent: {}\n",
                        assignment.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()
                    ));
                } else {
                    text.push_str("equivalent\n");
                }
                json["equivalence"] = serde_json::to_value(&eq).expect("serializable");
            }
            json["pass"] = json!(pass);
            Ok(Outcome { json, text, pass })
        }
        Command::LbExperiment {
            graph,
            r,
            k,
            c,
            t,
            bp,
            order,
            obdd_cap,
            cap,
            seed,
        } => {
            let (g, instance) = match (graph, r, k) {
                (Some(path), _, _) => (load_graph(path)?, json!({"graph": path.display().to_string()})),
                (None, Some(r), Some(k)) => (instances::ct_graph(*r, *k)?, json!({"r": r, "k": k})),
                _ => return Err(Error::Param("give --graph or both --r and --k".into())),
            };
            lb_experiment(&g, instance, (*r).zip(*k), *c, *t, bp.as_deref(), order.as_deref(), *obdd_cap, *cap, *seed)
        }
    }
}

fn width_command(
    name: &str,
    args: &WidthArgs,
    exact: fn(&Graph, usize) -> Result<WidthReport>,
    of_ordering: fn(&Graph, &VertexOrdering) -> Result<WidthReport>,
) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    let report = if args.exact {
        exact(&g, args.cap)?
    } else {
        of_ordering(&g, &vertex_ordering(args.order.as_deref(), g.n())?)?
    };
    let json = json!({
        "format": REPORT_FORMAT,
        "command": name,
        "exact": args.exact,
        "value": report.value,
        "ordering": report.witness_ordering.as_ref().map(|o| one_based(o.as_slice())),
        "witness_prefix": report.witness_prefix,
    });
    Ok(Outcome::ok(json, format!("{}\n", report.value)))
}

#[allow(clippy::too_many_arguments)]
fn lb_experiment(
    g: &Graph,
    instance: Value,
    ct: Option<(u32, usize)>,
    c: usize,
    t: Option<usize>,
    bp: Option<&Path>,
    order: Option<&str>,
    obdd_cap: usize,
    cap: usize,
    seed: u64,
) -> Result<Outcome> {
    if c == 0 {
        return Err(Error::Param("c must be at least 1".into()));
    }
    let f = cnf_of_graph(g);
    let (z, sv_star, obdd_size) = match bp {
        Some(path) => {
            let z = BranchingProgram::from_text(open(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            if z.num_vars() != f.num_vars() {
                return Err(Error::Input(format!(
                    "program has {} variables, formula has {}",
                    z.num_vars(),
                    f.num_vars()
                )));
            }
            let sv = var_order(order, f.num_vars())?;
            if !check_c_nsobdd(&z, &sv, c, DEFAULT_PATH_CAP)?.pass {
                return Err(Error::Precondition(format!("program is not a semantic {c}-OBDD under the order")));
            }
            if f.num_vars() <= EQUIVALENCE_CAP {
                if let Equivalence::Counterexample { .. } = equivalence_vs_cnf(&z, &f)? {
                    return Err(Error::Equivalence("program does not represent the formula".into()));
                }
            }
            (z, sv, None)
        }
        None => {
            let sv = match order {
                Some(s) => var_order(Some(s), f.num_vars())?,
                None => min_obdd_size_over_orders(&f, obdd_cap)?.order,
            };
            let obdd = build_obdd(&f, &sv)?;
            (obdd.to_branching_program()?, sv, Some(obdd.size()))
        }
    };
    let t = match t {
        Some(t) => t,
        None => matching_width_exact(g, cap)?.value,
    };
    let sv = vertex_order_of(&f, g, &sv_star)?;
    let w = witness_cut(g, &sv, t)?;
    let family = assignment_family(&f, &w)?;
    let report = check_distinctness(&z, &family, &sv_star, &VarSplit::of_cut(&f, &w), c)?;
    let measured = obdd_size.unwrap_or(z.size());
    let size_bound = verify_size_bound(measured, t, c)?;
    let node_bound = verify_size_bound(z.size(), t, c)?;
    let mut pass = size_bound.pass && node_bound.pass && report.distinct();
    let mut json = json!({
        "format": REPORT_FORMAT,
        "command": "lb-experiment",
        "instance": instance,
        "seed": seed,
        "c": c,
        "t": t,
        "order": one_based(sv_star.as_slice()),
        "bound": bound_json(&size_bound),
        "measured_size": measured,
        "program_nodes": z.size(),
        "witness": {
            "prefix": one_based(&w.prefix.iter().copied().collect::<Vec<_>>()),
            "matching": w.matching.iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
        },
        "members": report.vectors.iter().enumerate().map(|(i, v)| json!({"index": i, "vector": v.0})).collect::<Vec<_>>(),
        "collisions": report.collisions,
    });
    let mut text = format!(
        "t = {t}, c = {c}: size {measured} vs bound {}; {} members, {} collisions\n",
        size_bound.bound,
        family.len(),
        report.collisions.len()
    );
    if let Some((r, k)) = ct {
        let ct_bound = verify_ct_bound(measured, r, k, c)?;
        pass &= ct_bound.pass;
        json["ct_bound"] = bound_json(&ct_bound);
        json["ct_pass"] = json!(ct_bound.pass);
        text.push_str(&format!("F_(r,k) bound {}: {}\n", ct_bound.bound, if ct_bound.pass { "pass" } else { "fail" }));
    }
    json["pass"] = json!(pass);
    text.push_str(if pass { "pass\n" } else { "fail\n" });
    Ok(Outcome { json, text, pass })
}
