use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use vminor::chi::{nine_control_driver, ChiPolicy, ControlCertificate, DriverParams};
use vminor::families::{self, Interference};
use vminor::multicover::{self, Pattern};
use vminor::oracle::{self, Mode};
use vminor::{graph6, random, solve, suite, universal, Error, Graph, Trace};

/// Environment variable naming the directory certificates are written to.
const OUT_DIR_VAR: &str = "VMINOR_OUT_DIR";

#[derive(Parser)]
#[command(name = "vminor", version, about = "Vertex-minor constructions with replayable certificates")]
struct Cli {
    /// Vertex limit for the exact solvers (colouring, containment oracle, ball χ).
    #[arg(long, global = true)]
    limit_exact: Option<usize>,
    /// Directory for certificate files; defaults to beside the input.
    #[arg(long, global = true, env = OUT_DIR_VAR)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate graphs as graph6 lines.
    Gen(GenArgs),
    /// Replay a JSON-lines trace on a graph.
    Apply {
        graph: PathBuf,
        trace: PathBuf,
        /// Print labels alongside the graph6 string.
        #[arg(long)]
        labels: bool,
    },
    /// Decide whether each input graph contains a target.
    Oracle {
        graphs: PathBuf,
        /// Target graph as a graph6 string.
        #[arg(long)]
        target: String,
        /// Search pivot-minors instead of vertex-minors.
        #[arg(long)]
        pivot: bool,
    },
    /// Exact chromatic number and clique number of each input graph.
    Chromatic { graphs: PathBuf },
    /// Run a lemma test suite.
    Check {
        lemma: Option<String>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        /// List the known lemma ids.
        #[arg(long)]
        list: bool,
    },
    /// Run one of the end-to-end drivers.
    #[command(subcommand)]
    Drive(Drive),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, default_value_t = 1, global = true)]
    count: usize,
    /// Write graph6 lines here instead of stdout; certificates go beside it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        k: usize,
    },
    Wheel {
        n: usize,
    },
    Bipartite {
        n: usize,
        m: usize,
    },
    /// The complete bipartite graph with every edge subdivided once.
    Subdivided {
        n: usize,
        m: usize,
    },
    /// Each edge of `K_n` replaced by a path of length 3.
    OddSubdivision {
        n: usize,
    },
    /// Interfered subdivided complete bipartite graph.
    Interfered {
        n: usize,
        m: usize,
        #[arg(long)]
        complete: bool,
    },
    /// Engineered multicover of length `ell` with families of size `width`
    /// covering a core on `core` vertices.
    Multicover {
        ell: usize,
        width: usize,
        core: usize,
        #[arg(long, value_enum, default_value_t = PatternArg::Pure)]
        pattern: PatternArg,
        #[arg(long, value_enum, default_value_t = CoreShape::Clique)]
        core_shape: CoreShape,
    },
    /// `G(n, p)`.
    Random {
        n: usize,
        p: f64,
    },
    /// Random bloated tree with the given number of blocks.
    Bloated {
        blocks: usize,
        #[arg(long, default_value_t = 0.3)]
        clique_p: f64,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    Pure,
    Impure,
    Chained,
    Fanned,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreShape {
    Clique,
    Cycle,
    Path,
}

impl From<PatternArg> for Pattern {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::Pure => Pattern::Pure,
            PatternArg::Impure => Pattern::Impure,
            PatternArg::Chained => Pattern::Chained,
            PatternArg::Fanned => Pattern::Fanned,
        }
    }
}

#[derive(Subcommand)]
enum Drive {
    /// χ bound in terms of the radius-9 ball χ, or a vertex-minor witness.
    NineControl {
        graphs: PathBuf,
        /// Forbidden vertex-minor as a graph6 string.
        #[arg(long)]
        forbidden: String,
        #[arg(long, requires = "h")]
        q: Option<usize>,
        #[arg(long, requires = "q")]
        h: Option<usize>,
        /// Trusted value of the radius-9 ball χ.
        #[arg(long)]
        kappa: Option<usize>,
    },
    /// Stable multicover, pure/impure refinement, then purification.
    ChiBounded {
        graphs: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        omega: usize,
        /// Target length of the refined multicover.
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        omega_star: usize,
        /// Record chromatic preconditions beyond solver scale as assumptions.
        #[arg(long)]
        assume: bool,
    },
}

/// Outcome of a verb: whether everything checked passed.
type Outcome = anyhow::Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Apply { graph, trace, labels } => apply(graph, trace, *labels),
        Command::Oracle { graphs, target, pivot } => run_oracle(cli, graphs, target, *pivot),
        Command::Chromatic { graphs } => chromatic(cli, graphs),
        Command::Check { lemma, size, seed, count, list } => check(cli, lemma.as_deref(), *size, *seed, *count, *list),
        Command::Drive(Drive::NineControl { graphs, forbidden, q, h, kappa }) => {
            let params = q.zip(*h).map(|(q, h)| DriverParams { q, h });
            nine_control(cli, graphs, forbidden, params, *kappa)
        }
        Command::Drive(Drive::ChiBounded { graphs, ell, c, tau, omega, m, omega_star, assume }) => {
            let policy = if *assume { ChiPolicy::Assume } else { ChiPolicy::Verify };
            chi_bounded(cli, graphs, [*ell, *c, *tau, *omega, *m, *omega_star], policy)
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graphs(path: &Path) -> anyhow::Result<Vec<Graph>> {
    let text = read_input(path)?;
    let gs = graph6::decode_lines(&text).with_context(|| format!("decoding {}", path.display()))?;
    if gs.is_empty() {
        bail!("no graphs in {}", path.display());
    }
    Ok(gs)
}

fn encode(g: &Graph) -> String {
    graph6::encode_with_order(g, &g.vertex_vec())
}

/// `<stem>[.<verb>].cert.jsonl` beside `input`, or inside the output
/// directory. Standard input only gets a certificate file when a directory
/// is set.
fn cert_path(cli: &Cli, input: &Path, verb: Option<&str>) -> Option<PathBuf> {
    let stdin = input.as_os_str() == "-";
    let stem = if stdin { "stdin".to_string() } else { input.file_stem()?.to_string_lossy().into_owned() };
    let file = match verb {
        Some(v) => format!("{stem}.{v}.cert.jsonl"),
        None => format!("{stem}.cert.jsonl"),
    };
    match &cli.out_dir {
        Some(dir) => Some(dir.join(file)),
        None if stdin => None,
        None => Some(input.with_file_name(file)),
    }
}

/// Prints one line to stdout, treating a closed pipe as a clean exit.
fn emit(line: impl std::fmt::Display) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{line}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

fn write_cert(path: Option<PathBuf>, lines: &[Value]) -> anyhow::Result<()> {
    let Some(path) = path else { return Ok(()) };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let body: String = lines.iter().map(|l| format!("{l}\n")).collect();
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("certificate: {}", path.display());
    Ok(())
}

fn gen(cli: &Cli, args: &GenArgs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut graphs = Vec::new();
    let mut certs = Vec::new();
    for i in 0..args.count {
        let (g, cert) = match &args.family {
            Family::Complete { n } => (families::complete(*n), None),
            Family::Path { n } => (families::path(*n), None),
            Family::Cycle { n } => (families::cycle(*n), None),
            Family::Star { k } => (families::star(*k), None),
            Family::Wheel { n } => (families::wheel(*n), None),
            Family::Bipartite { n, m } => (families::complete_bipartite(*n, *m), None),
            Family::Subdivided { n, m } => (universal::subdivided_complete_bipartite(*n, *m), None),
            Family::OddSubdivision { n } => (families::subdivide(&families::complete(*n), 2), None),
            Family::Interfered { n, m, complete } => {
                let how = if *complete {
                    Interference::Complete
                } else {
                    Interference::Random(args.seed.wrapping_add(i as u64))
                };
                let ic = families::interfered(*n, *m, &how)?;
                let cert = json!({ "x": ic.x, "y": ic.y, "z": ic.z, "completely_interfered": ic.completely_interfered, "seed": ic.seed });
                (ic.graph, Some(cert))
            }
            Family::Multicover { ell, width, core, pattern, core_shape } => {
                let core = match core_shape {
                    CoreShape::Clique => families::complete(*core),
                    CoreShape::Cycle => families::cycle(*core),
                    CoreShape::Path => families::path(*core),
                };
                let (g, cert) = multicover::engineered_multicover(*ell, *width, &core, (*pattern).into());
                (g, Some(serde_json::to_value(cert)?))
            }
            Family::Random { n, p } => {
                if !(0.0..=1.0).contains(p) {
                    bail!("p must lie in [0, 1]");
                }
                (random::gnp(&mut rng, *n, *p), None)
            }
            Family::Bloated { blocks, clique_p, max_clique } => {
                (random::bloated_tree(&mut rng, *blocks, *clique_p, *max_clique), None)
            }
        };
        let line = encode(&g);
        if let Some(c) = cert {
            certs.push(json!({ "index": i, "graph6": line, "certificate": c }));
        }
        graphs.push(line);
    }
    let body: String = graphs.iter().map(|l| format!("{l}\n")).collect();
    match &args.out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            if !certs.is_empty() {
                write_cert(cert_path(cli, path, None), &certs)?;
            }
        }
        None => {
            emit(body.trim_end())?;
            if !certs.is_empty() {
                write_cert(cli.out_dir.as_ref().map(|d| d.join("gen.cert.jsonl")), &certs)?;
            }
        }
    }
    Ok(true)
}

fn apply(graph: &Path, trace: &Path, labels: bool) -> Outcome {
    let g = read_graphs(graph)?.remove(0);
    let t = Trace::from_jsonl(&read_input(trace)?)?;
    let out = t.apply(&g)?;
    if labels {
        emit(json!({ "graph6": encode(&out), "labels": out.vertex_vec() }))?;
    } else {
        emit(encode(&out))?;
    }
    Ok(true)
}

fn run_oracle(cli: &Cli, path: &Path, target: &str, pivot: bool) -> Outcome {
    let h = graph6::decode(target.trim()).context("decoding --target")?;
    let mode = if pivot { Mode::PivotMinor } else { Mode::VertexMinor };
    let limit = cli.limit_exact.unwrap_or(oracle::ORACLE_LIMIT);
    let mut lines = Vec::new();
    let mut all = true;
    for (i, g) in read_graphs(path)?.iter().enumerate() {
        let found = oracle::contains_minor_with_limit(g, &h, mode, limit)?;
        if let Some(t) = &found {
            if !oracle::verify_witness(g, &h, t)? {
                bail!("witness for graph {i} does not replay to the target");
            }
        }
        all &= found.is_some();
        let line = json!({ "index": i, "graph6": encode(g), "contained": found.is_some(), "trace": found });
        emit(&line)?;
        lines.push(line);
    }
    write_cert(cert_path(cli, path, Some("oracle")), &lines)?;
    Ok(all)
}

fn chromatic(cli: &Cli, path: &Path) -> Outcome {
    let limit = cli.limit_exact.unwrap_or(solve::CHI_LIMIT);
    let mut lines = Vec::new();
    for (i, g) in read_graphs(path)?.iter().enumerate() {
        let c = solve::chromatic_number_with_limit(g, limit)?;
        let omega = solve::clique_number(g)?;
        if !c.is_proper(g) {
            bail!("colouring of graph {i} is not proper");
        }
        let line = json!({
            "index": i,
            "graph6": encode(g),
            "chi": c.chi,
            "omega": omega.omega,
            "clique": omega.members,
            "colors": c.colors,
        });
        emit(&line)?;
        lines.push(line);
    }
    write_cert(cert_path(cli, path, Some("chromatic")), &lines)?;
    Ok(true)
}

fn check(cli: &Cli, lemma: Option<&str>, size: Option<usize>, seed: u64, count: Option<usize>, list: bool) -> Outcome {
    if list {
        for l in suite::LEMMAS {
            let scope = if l.exhaustive { "exhaustive".to_string() } else { format!("{} instances", l.default_count) };
            emit(format_args!("{:<22} size {:<3} {:<14} {}", l.id, l.default_size, scope, l.summary))?;
        }
        return Ok(true);
    }
    let id = lemma.ok_or_else(|| anyhow!("missing lemma id (use --list to see them)"))?;
    let r = suite::run_lemma_suite(id, size, seed, count)?;
    emit(serde_json::to_string(&r)?)?;
    eprintln!("{}: {} passed, {} failed, {} checks, {} ms", r.lemma, r.passed, r.failed, r.checks, r.wall_ms);
    if let Some(cx) = &r.counterexample {
        let dir = cli.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
        write_cert(Some(dir.join(format!("{id}.cert.jsonl"))), &[serde_json::to_value(cx)?])?;
    }
    Ok(r.all_passed())
}

fn nine_control(
    cli: &Cli,
    path: &Path,
    forbidden: &str,
    params: Option<DriverParams>,
    kappa: Option<usize>,
) -> Outcome {
    let h = graph6::decode(forbidden.trim()).context("decoding --forbidden")?;
    let mut lines = Vec::new();
    let mut all = true;
    for (i, g) in read_graphs(path)?.iter().enumerate() {
        let kappa = match (kappa, cli.limit_exact) {
            (Some(k), _) => Some(k),
            (None, Some(limit)) => Some(solve::chi_ball_with_limit(g, 9, limit)?),
            (None, None) => None,
        };
        let cert = nine_control_driver(g, &h, params, kappa)?;
        let ok = match &cert {
            ControlCertificate::MinorWitness { target, trace, .. } => oracle::verify_witness(g, target, trace)?,
            ControlCertificate::ChiBound { bound, within_bound, .. } => bound.is_none() || *within_bound,
        };
        all &= ok;
        let line = json!({ "index": i, "graph6": encode(g), "verified": ok, "certificate": cert });
        emit(&line)?;
        lines.push(line);
    }
    write_cert(cert_path(cli, path, Some("nine-control")), &lines)?;
    Ok(all)
}

fn chi_bounded(cli: &Cli, path: &Path, p: [usize; 6], policy: ChiPolicy) -> Outcome {
    let [ell, c, tau, omega, m, omega_star] = p;
    let mut lines = Vec::new();
    let mut all = true;
    for (i, g) in read_graphs(path)?.iter().enumerate() {
        let line = match chi_bounded_one(g, ell, c, tau, omega, m, omega_star, policy) {
            Ok(v) => v,
            Err(
                e @ (Error::Precondition(_) | Error::ChromaticRefuted(_) | Error::Threshold(_) | Error::Consistency(_)),
            ) => {
                all = false;
                json!({ "error": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        };
        let line = json!({ "index": i, "graph6": encode(g), "result": line });
        emit(&line)?;
        lines.push(line);
    }
    write_cert(cert_path(cli, path, Some("chi-bounded")), &lines)?;
    Ok(all)
}

#[allow(clippy::too_many_arguments)]
fn chi_bounded_one(
    g: &Graph,
    ell: usize,
    c: usize,
    tau: usize,
    omega: usize,
    m: usize,
    omega_star: usize,
    policy: ChiPolicy,
) -> vminor::Result<Value> {
    let (stable, covered) = multicover::find_stable_multicover(g, ell, c, tau, omega, policy)?;
    let refined = multicover::refine_multicover(g, &stable, m, c, policy)?;
    let purified = if refined.impure && !refined.pure {
        // Longest output length whose purification threshold fits in `m`.
        let target = (1..=m).rev().find(|&l| multicover::impure_length(l, omega_star) <= m as u128).unwrap_or(1);
        let out = multicover::impure_to_pure(g, &refined, c, target, tau, omega, omega_star, policy)?;
        json!({ "graph6": encode(&out.graph), "cert": out.cert, "trace": out.trace })
    } else {
        Value::Null
    };
    Ok(json!({ "stable": stable, "covered": covered, "refined": refined, "purified": purified }))
}
