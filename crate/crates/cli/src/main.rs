//! `legalsys` command line.
//!
//! Exit status: 0 when a verdict was computed (legal, illegal, none), 1 on
//! usage or input errors, 2 when a size threshold or search budget refused
//! the work.

mod repro;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use legalsys::graph::{curvature, HamiltonSearch, Order};
use legalsys::io::{self, Certificate};
use legalsys::legal::{
    exists_legal_state, exists_legal_system, exists_strongly_legal_state, GeneralSearch, restrict_cone_system, search_partition_system, validate_system,
    verify_with, PartitionSearch, SearchMode, SearchOptions, VerifyOptions,
};
use legalsys::planar::{
    cusped_check, hamilton_to_state, pogorelov_check, relhyp_quads_check, state_to_hamilton, tbws_check, vf_graph,
    vf_system, EmbeddedGraph, ReflectionVerdict,
};
use legalsys::random::{monte_carlo, write_csv, Model, MonteCarlo, Thresholds};
use legalsys::{families, Graph, VertexSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "legalsys", version, about = "Legal states and move systems on finite graphs")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores). Verdicts do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named family and write its graph, embedding and system files.
    Family {
        name: String,
        /// Family parameters such as d=4 or n=7.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Walk the orbit of a start state under a move system.
    Verify {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        system: PathBuf,
        /// Start state file; defaults to the system file's state line.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Keep walking after the first illegal state and count them all.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = legalsys::legal::DEFAULT_MAX_RANK)]
        max_rank: u32,
        /// Write the certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Replay a certificate against a graph.
    Replay {
        #[arg(short, long)]
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Find a legal state or certify that none exists.
    SearchState {
        #[arg(short, long)]
        graph: PathBuf,
        /// Require every vertex to have a neighbour on the other side.
        #[arg(long)]
        strong: bool,
    },
    /// Look for a legal system, colored or (with --any) of any shape.
    SearchSystem {
        #[arg(short, long)]
        graph: PathBuf,
        /// Every partition into independent sets; certifies absence.
        #[arg(long, conflicts_with = "colorings")]
        exhaustive: bool,
        /// Proper colourings with a growing number of colours.
        #[arg(long, conflicts_with = "any")]
        colorings: bool,
        /// Every move system, colored or not; certifies absence.
        #[arg(long, conflicts_with = "exhaustive")]
        any: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_colorings: u64,
        #[arg(long)]
        max_colors: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact curvature κ_N.
    Curvature {
        #[arg(short, long)]
        graph: PathBuf,
        /// Truncation order, or `inf`.
        #[arg(short = 'n', long = "order", default_value = "2")]
        order: String,
    },
    /// Vertex-face graph of an embedded graph.
    Vf {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hamiltonian cycle or certified absence.
    Hamilton {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value_t = legalsys::graph::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Convert between Hamiltonian cycles and strongly legal states of the vertex-face graph.
    VfBridge {
        #[arg(short, long)]
        graph: PathBuf,
        #[command(flatten)]
        dir: BridgeDir,
    },
    /// Run one of the reflection-group or splitting criteria.
    Check {
        #[arg(short, long)]
        graph: PathBuf,
        #[command(flatten)]
        which: CheckKind,
    },
    /// Remove a cone vertex over a 4-cycle and restrict a legal system.
    ReduceCone {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        system: PathBuf,
        #[arg(short, long)]
        vertex: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo runs of the random-graph constructions; prints CSV.
    Montecarlo {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated edge probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-run a bundled example and compare with its stored certificate.
    Repro {
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        #[arg(long)]
        list: bool,
        /// Print the fresh result instead of comparing.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BridgeDir {
    /// Cycle file to turn into a state.
    #[arg(long)]
    to_state: Option<PathBuf>,
    /// State file to turn into a cycle.
    #[arg(long)]
    to_cycle: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CheckKind {
    #[arg(long)]
    pogorelov: bool,
    #[arg(long)]
    cusped: bool,
    #[arg(long)]
    relhyp: bool,
    /// A₁ A₂ B₁ B₂ as comma-separated vertex lists.
    #[arg(long, num_args = 4, value_names = ["A1", "A2", "B1", "B2"])]
    tbws: Option<Vec<String>>,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: legalsys::Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: legalsys::Error },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] legalsys::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::File { source: e, .. } if e.is_resource() => 2,
            _ => 1,
        }
    }
}

type Out = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Out {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn in_file<T>(path: &Path, r: legalsys::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    in_file(path, io::parse_graph(&read(path)?))
}

fn load_embedded(path: &Path) -> Result<EmbeddedGraph, CliError> {
    in_file(path, io::parse_embedded(&read(path)?))
}

fn load_system(path: &Path, g: &Graph) -> Result<io::SystemFile, CliError> {
    let f = in_file(path, io::parse_system(&read(path)?))?;
    if f.system.n() != g.n() {
        return Err(CliError::Usage(format!(
            "{}: system on {} vertices, graph has {}",
            path.display(),
            f.system.n(),
            g.n()
        )));
    }
    Ok(f)
}

fn vertex_list(s: &str, n: usize) -> Result<VertexSet, CliError> {
    let vs = s
        .split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(v) = vs.iter().find(|&&v| v >= n) {
        return Err(CliError::Usage(format!("vertex {v} out of range for n = {n}")));
    }
    Ok(VertexSet::from_iter(n, vs))
}

/// Prints JSON or text to stdout.
fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    let mut out = std::io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json value")).ok();
    } else {
        write!(out, "{}", text()).ok();
    }
}

fn verdict_json(v: &ReflectionVerdict) -> Value {
    json!({ "pass": v.pass(), "conditions": v.conditions })
}

fn verdict_text(v: &ReflectionVerdict) -> String {
    let mut s = format!("{}\n", if v.pass() { "pass" } else { "fail" });
    for c in &v.conditions {
        s.push_str(&format!("  {} {}", if c.pass { "ok  " } else { "FAIL" }, c.name));
        if let Some(w) = &c.witness {
            s.push_str(&format!(" {w:?}"));
        }
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Out {
    let json = cli.json;
    match cli.cmd {
        Cmd::Family { name, params, out } => {
            let mut kv = Vec::new();
            for p in &params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("parameter {p:?} is not K=V")))?;
                let v: usize = v.parse().map_err(|_| CliError::Usage(format!("parameter {k} needs an integer")))?;
                kv.push((k.to_string(), v));
            }
            let b = families::by_name(&name, &|k| kv.iter().find(|(key, _)| key == k).map(|p| p.1))?;
            let mut files = vec![(format!("{}.graph", b.name), io::write_graph(&b.graph))];
            if let Some(e) = &b.embedding {
                files.push((format!("{}.emb", b.name), io::write_embedded(e)));
            }
            if let Some((m, s)) = &b.witness {
                files.push((format!("{}.system", b.name), io::write_system(m, Some(s))));
            }
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                for (f, text) in &files {
                    write(&dir.join(f), text)?;
                }
            }
            let names: Vec<&String> = files.iter().map(|f| &f.0).collect();
            emit(
                json,
                json!({
                    "name": b.name, "vertices": b.graph.n(), "edges": b.graph.edge_count(),
                    "note": b.note, "files": names, "graph": io::graph_digest(&b.graph),
                }),
                || match &out {
                    Some(dir) => names.iter().map(|f| format!("{}\n", dir.join(f).display())).collect(),
                    None => files.iter().map(|f| f.1.clone()).collect(),
                },
            );
        }
        Cmd::Verify {
            graph,
            system,
            state,
            exhaustive,
            max_rank,
            certificate,
        } => {
            let g = load_graph(&graph)?;
            let f = load_system(&system, &g)?;
            let s = match state {
                Some(p) => in_file(&p, io::parse_state(&read(&p)?, g.n()))?,
                None => f
                    .state
                    .ok_or_else(|| CliError::Usage(format!("{} has no state line; pass --state", system.display())))?,
            };
            if let Err(v) = validate_system(&g, &f.system) {
                return Err(CliError::Usage(format!("{}: not a move system: {v:?}", system.display())));
            }
            let opts = VerifyOptions {
                exhaustive,
                max_rank,
                parallel: true,
            };
            let report = verify_with(&g, &f.system, &s, &opts)?;
            let cert = Certificate::new(&g, &f.system, &s, &report);
            if let Some(p) = certificate {
                write(&p, &cert.to_json())?;
            }
            let mut value = serde_json::to_value(&cert).expect("plain data");
            if let Some(k) = report.illegal_states {
                value["illegal_states"] = k.into();
            }
            emit(json, value, || {
                let mut t = format!(
                    "{} rank {} orbit {}\n",
                    if report.is_legal() { "legal" } else { "illegal" },
                    report.rank,
                    report.orbit_size
                );
                if let Some(w) = &report.witness {
                    t.push_str(&format!("witness {} via moves at {}\n", w.state, w.moves));
                }
                t
            });
        }
        Cmd::Replay { graph, certificate } => {
            let g = load_graph(&graph)?;
            let cert = in_file(&certificate, Certificate::from_json(&read(&certificate)?))?;
            let ok = cert.replay(&g)?;
            emit(json, json!({ "valid": ok }), || format!("{}\n", if ok { "valid" } else { "invalid" }));
        }
        Cmd::SearchState { graph, strong } => {
            let g = load_graph(&graph)?;
            let found = if strong {
                exists_strongly_legal_state(&g)?
            } else {
                exists_legal_state(&g)?
            };
            emit(
                json,
                json!({ "found": found.is_some(), "strong": strong, "exhaustive": true, "state": found }),
                || match &found {
                    Some(s) => io::write_state(s),
                    None => format!("none ({} vertices, exhaustive)\n", g.n()),
                },
            );
        }
        Cmd::SearchSystem {
            graph,
            exhaustive,
            colorings,
            any,
            max_colorings,
            max_colors,
            seed,
        } => {
            let g = load_graph(&graph)?;
            if any {
                let r = exists_legal_system(&g, max_colorings.saturating_mul(1000))?;
                let mut value = json!({ "outcome": "none" });
                if let GeneralSearch::Found { system, state } = &r {
                    let report = verify_with(&g, system, state, &VerifyOptions::default())?;
                    value = json!({
                        "outcome": "found",
                        "certificate": Certificate::new(&g, system, state, &report),
                    });
                }
                emit(json, value, || match &r {
                    GeneralSearch::Found { system, state } => io::write_system(system, Some(state)),
                    GeneralSearch::None { nodes } => format!("none after {nodes} search nodes (all move systems)\n"),
                });
                return Ok(());
            }
            let mode = if exhaustive || !colorings {
                SearchMode::Exhaustive
            } else {
                SearchMode::Colorings
            };
            let opts = SearchOptions {
                max_colorings,
                max_colors,
                seed,
                ..SearchOptions::default()
            };
            let r = search_partition_system(&g, mode, &opts)?;
            let (outcome, examined) = match &r {
                PartitionSearch::Found { examined, .. } => ("found", *examined),
                PartitionSearch::None { examined } => ("none", *examined),
                PartitionSearch::Inconclusive { examined } => ("inconclusive", *examined),
            };
            let mut value = json!({ "outcome": outcome, "examined": examined });
            if let PartitionSearch::Found { system, state, classes, .. } = &r {
                let report = verify_with(&g, system, state, &VerifyOptions::default())?;
                value["classes"] = serde_json::to_value(classes).expect("plain data");
                value["certificate"] = serde_json::to_value(Certificate::new(&g, system, state, &report)).expect("plain data");
            }
            emit(json, value, || match r.found() {
                Some((m, s)) => io::write_system(m, Some(s)),
                None => format!("{outcome} after {examined}\n"),
            });
        }
        Cmd::Curvature { graph, order } => {
            let g = load_graph(&graph)?;
            let ord = match order.as_str() {
                "inf" => Order::Infinite,
                k => Order::Finite(k.parse().map_err(|_| CliError::Usage(format!("order {k:?} is not a number or inf")))?),
            };
            let k = curvature(&g, ord);
            emit(json, json!({ "order": order, "value": k.to_string() }), || format!("{k}\n"));
        }
        Cmd::Vf { graph, out } => {
            let e = load_embedded(&graph)?;
            let vf = vf_graph(&e)?;
            let system = vf_system(&vf);
            let emb = io::write_embedded(&vf.embedding);
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                write(&dir.join("vf.emb"), &emb)?;
                write(&dir.join("vf.system"), &io::write_system(&system, None))?;
            }
            let vg = vf.embedding.graph();
            emit(
                json,
                json!({
                    "vertices": vg.n(), "edges": vg.edge_count(), "theta_order": vf.theta_order,
                    "faces": vf.faces.len(), "graph": io::graph_digest(vg),
                }),
                || if out.is_some() { String::new() } else { emb.clone() },
            );
        }
        Cmd::Hamilton { graph, budget } => {
            let g = load_graph(&graph)?;
            let o = HamiltonSearch { budget }.run(&g)?;
            emit(
                json,
                json!({ "found": o.cycle.is_some(), "cycle": o.cycle, "nodes": o.nodes }),
                || match &o.cycle {
                    Some(c) => io::write_cycle(c),
                    None => format!("none ({} nodes, exhaustive)\n", o.nodes),
                },
            );
        }
        Cmd::VfBridge { graph, dir } => {
            let e = load_embedded(&graph)?;
            let vf = vf_graph(&e)?;
            let total = vf.embedding.graph().n();
            if let Some(p) = dir.to_state {
                let c = in_file(&p, io::parse_cycle(&read(&p)?, e.n()))?;
                let s = hamilton_to_state(&e, &c)?;
                emit(json, json!({ "state": s }), || io::write_state(&s));
            } else if let Some(p) = dir.to_cycle {
                let s = in_file(&p, io::parse_state(&read(&p)?, total))?;
                let c = state_to_hamilton(&e, &s)?;
                emit(json, json!({ "cycle": c }), || io::write_cycle(&c));
            }
        }
        Cmd::Check { graph, which } => {
            let verdict = if which.pogorelov {
                pogorelov_check(&load_embedded(&graph)?)?
            } else if which.cusped {
                cusped_check(&load_embedded(&graph)?)?
            } else if which.relhyp {
                relhyp_quads_check(&load_graph(&graph)?)
            } else {
                let g = load_graph(&graph)?;
                let parts = which.tbws.unwrap_or_default();
                let sets = parts.iter().map(|p| vertex_list(p, g.n())).collect::<Result<Vec<_>, _>>()?;
                let t = tbws_check(&g, &sets[0], &sets[1], &sets[2], &sets[3])?;
                let v = t.verdict.clone();
                let mut value = verdict_json(&v);
                if t.pass() {
                    value["system"] = io::write_system(&t.system, Some(&t.state)).into();
                }
                emit(json, value, || verdict_text(&v));
                return Ok(());
            };
            emit(json, verdict_json(&verdict), || verdict_text(&verdict));
        }
        Cmd::ReduceCone {
            graph,
            system,
            vertex,
            out,
        } => {
            let g = load_graph(&graph)?;
            let f = load_system(&system, &g)?;
            let s = f
                .state
                .ok_or_else(|| CliError::Usage(format!("{} has no state line", system.display())))?;
            if vertex >= g.n() {
                return Err(CliError::Usage(format!("vertex {vertex} out of range")));
            }
            let r = restrict_cone_system(&g, vertex, &f.system, &s)?;
            let gt = io::write_graph(&r.graph);
            let st = io::write_system(&r.system, Some(&r.state));
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                write(&dir.join("reduced.graph"), &gt)?;
                write(&dir.join("reduced.system"), &st)?;
            }
            let cert = Certificate::new(&r.graph, &r.system, &r.state, &r.report);
            emit(
                json,
                json!({ "vertices": r.graph.n(), "certificate": cert, "graph_text": gt, "system_text": st }),
                || format!("{gt}{st}"),
            );
        }
        Cmd::Montecarlo {
            model,
            n,
            p,
            trials,
            seed,
            out,
        } => {
            let rows = monte_carlo(&MonteCarlo {
                model,
                ns: n.clone(),
                ps: p.clone(),
                trials,
                seed,
            })?;
            for &size in &n {
                let t = Thresholds::for_n(size);
                for &q in &p {
                    eprintln!("n = {size}, p = {q}: {} the window [{:.4}, {:.4}]", t.annotate(q), t.lower, t.upper);
                }
            }
            let mut csv = Vec::new();
            write_csv(&rows, &mut csv).map_err(|source| CliError::Io {
                path: PathBuf::from("<csv>"),
                source,
            })?;
            let csv = String::from_utf8(csv).expect("csv is utf-8");
            if let Some(path) = &out {
                write(path, &csv)?;
            }
            emit(json, serde_json::to_value(&rows).expect("plain data"), || {
                if out.is_some() { String::new() } else { csv.clone() }
            });
        }
        Cmd::Repro { id, list, emit: fresh } => {
            if list {
                emit(json, json!(repro::IDS), || repro::IDS.iter().map(|i| format!("{i}\n")).collect());
                return Ok(());
            }
            let id = id.expect("clap requires an id");
            let got = repro::run(&id)?;
            if fresh {
                print!("{}", got.to_json());
                return Ok(());
            }
            let golden = repro::golden(&id).expect("every id has a golden file");
            let same = got.same_verdict(&golden);
            emit(
                json,
                json!({ "id": id, "matches": same, "result": got }),
                || format!("{id}: {} ({})\n", got.summary(), if same { "matches golden" } else { "DIFFERS from golden" }),
            );
            if !same {
                return Err(CliError::Usage(format!("{id}: result differs from the stored certificate")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
