//! Seeded, parallel lemma suites: generator, construction and validators,
//! with the first failing instance kept as a replayable counterexample.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bloated::{
    analyze_bloated_tree, branching_subtree, ceil_root, has_adjacent_branching, prune_bloated_tree, validate_decomp,
};
use crate::chi::generators::{engineered_clique_size, engineered_cover};
use crate::chi::{
    attach_dangling_paths, contract_dangling_path, extract_frame, fix_parity, frame_to_interfered, nine_control_driver,
    purify_frame, trim_frame, validate_frame, validate_q_cover, validate_spacious, ChiPolicy, ControlCertificate,
    DriverParams, FrameFlavor,
};
use crate::error::{Error, Result};
use crate::families::{self, Interference};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::graph6;
use crate::multicover::{self, Pattern, StructureKind};
use crate::oracle::{self, Mode, ORACLE_LIMIT};
use crate::ramsey;
use crate::random;
use crate::shrink::{contract_to_star, eliminate_big_clique, eliminate_fanning, FanVariant};
use crate::solve;
use crate::trace;
use crate::universal::{embed_universal, extract_knn, knn_thresholds, subdivided_complete_bipartite};

/// A registered lemma suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub default_size: usize,
    pub default_count: usize,
    /// Exhaustive suites ignore the seed and count.
    pub exhaustive: bool,
}

const fn lemma(
    id: &'static str,
    summary: &'static str,
    default_size: usize,
    default_count: usize,
    exhaustive: bool,
) -> LemmaInfo {
    LemmaInfo { id, summary, default_size, default_count, exhaustive }
}

pub const LEMMAS: &[LemmaInfo] = &[
    lemma("pivot-identity", "pivot formula equals G*u*v*u and G*v*u*v on all graphs up to `size` vertices", 5, 0, true),
    lemma("involutions", "(G*v)*v = G and (G∧uv)∧uv = G on all graphs up to `size` vertices", 5, 0, true),
    lemma("universal-embedding", "every graph on `size` vertices replays exactly from K^1_{n,C(n,2)}", 4, 0, true),
    lemma("ramsey-knn", "K^1_{n,n} extracted from random interfered K^1_{N1,N2}, n = `size`", 2, 100, false),
    lemma("branching-dp", "branching subtree of random trees with at most `size` leaves", 64, 200, false),
    lemma("bloated-branching", "pruned random bloated trees with up to `size` blocks", 40, 100, false),
    lemma("elminate-big-clique", "big-clique elimination against its formula, clique size up to `size`", 6, 200, false),
    lemma("elminate-fanning", "fan elimination against its formula, k up to `size`", 6, 200, false),
    lemma(
        "contract-bloated-tree",
        "shrinkable bloated trees contracted to stars, skeletons up to `size`",
        5,
        200,
        false,
    ),
    lemma("hanging-oddly", "parity repair of dangling paths up to `size` vertices", 6, 200, false),
    lemma("ramsey-hanging", "dangling-path contraction keeping q <= `size` vertices of X", 3, 200, false),
    lemma(
        "contract-hanging-path",
        "contraction of one dangling path after parity repair, paths up to `size`",
        6,
        200,
        false,
    ),
    lemma("engineered-frames", "cover, frame, trim, purify and contract on engineered covers", 0, 0, true),
    lemma("nine-control", "control driver on engineered covers yields replayable witnesses", 0, 0, true),
    lemma("odd-path-step", "odd-path pivot contraction on random hosts up to `size` vertices", 7, 200, false),
    lemma("odd-subdivision", "odd subdivisions of K_n reduce to K_n for n <= `size`", 5, 0, true),
    lemma("impure-to-pure", "pivot cascade against edge surgery on engineered impure multicovers", 3, 50, false),
    lemma(
        "oracle-naive",
        "containment oracle against a naive orbit search, hosts up to `size` vertices",
        6,
        500,
        false,
    ),
];

pub fn lemma_info(id: &str) -> Result<&'static LemmaInfo> {
    LEMMAS.iter().find(|l| l.id == id).ok_or_else(|| Error::UnknownLemma {
        id: id.to_string(),
        known: LEMMAS.iter().map(|l| l.id).collect::<Vec<_>>().join(", "),
    })
}

/// A failing instance: the host graph and the certificate it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    /// Host labels in graph6 order.
    pub labels: Vec<Vertex>,
    pub certificate: Value,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub lemma: String,
    pub size: usize,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    /// Individual identities or comparisons checked.
    pub checks: u64,
    /// Per-instance seeds, in instance order.
    pub seeds: Vec<u64>,
    /// Named sub-counts, e.g. oracle confirmations.
    pub tags: BTreeMap<String, usize>,
    pub counterexample: Option<Counterexample>,
    pub wall_ms: u64,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn tag(&self, name: &str) -> usize {
        self.tags.get(name).copied().unwrap_or(0)
    }

    /// JSON with the wall time zeroed, for byte comparison across runs.
    pub fn timeless_json(&self) -> String {
        let mut r = self.clone();
        r.wall_ms = 0;
        serde_json::to_string(&r).expect("serialisable")
    }
}

/// One instance: host, certificate and verdict.
struct Check {
    graph: Graph,
    certificate: Value,
    verdict: std::result::Result<(), String>,
    checks: u64,
    tags: Vec<&'static str>,
}

impl Check {
    fn new(graph: &Graph) -> Check {
        Check { graph: graph.clone(), certificate: Value::Null, verdict: Ok(()), checks: 0, tags: Vec::new() }
    }

    fn cert(mut self, c: impl Serialize) -> Check {
        self.certificate = serde_json::to_value(c).unwrap_or(Value::Null);
        self
    }

    /// Records a comparison; the first failure wins.
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.verdict.is_ok() {
            self.verdict = Err(what());
        }
    }

    fn fail(mut self, e: impl std::fmt::Display) -> Check {
        self.verdict = Err(e.to_string());
        self
    }
}

type RandomFn = fn(&mut ChaCha8Rng, usize) -> Check;
type ExhaustiveFn = fn(usize) -> Vec<Check>;

enum Runner {
    Random(RandomFn),
    Exhaustive(ExhaustiveFn),
}

fn runner(id: &str) -> Runner {
    match id {
        "pivot-identity" => Runner::Exhaustive(pivot_identity),
        "involutions" => Runner::Exhaustive(involutions),
        "universal-embedding" => Runner::Exhaustive(universal_embedding),
        "ramsey-knn" => Runner::Random(ramsey_knn),
        "branching-dp" => Runner::Random(branching_dp),
        "bloated-branching" => Runner::Random(bloated_branching),
        "elminate-big-clique" => Runner::Random(big_clique),
        "elminate-fanning" => Runner::Random(fanning),
        "contract-bloated-tree" => Runner::Random(bloated_star),
        "hanging-oddly" => Runner::Random(hanging_oddly),
        "ramsey-hanging" => Runner::Random(ramsey_hanging),
        "contract-hanging-path" => Runner::Random(contract_hanging),
        "engineered-frames" => Runner::Exhaustive(engineered_frames),
        "nine-control" => Runner::Exhaustive(nine_control),
        "odd-path-step" => Runner::Random(odd_path_step),
        "odd-subdivision" => Runner::Exhaustive(odd_subdivision),
        "impure-to-pure" => Runner::Random(impure_to_pure),
        "oracle-naive" => Runner::Random(oracle_naive),
        _ => unreachable!("registered lemma without a runner"),
    }
}

/// Runs a lemma suite. Random suites draw one seed per instance from a
/// ChaCha8 stream seeded with `seed`, run in parallel and merge in seed
/// order, so identical arguments give identical results.
pub fn run_lemma_suite(id: &str, size: Option<usize>, seed: u64, count: Option<usize>) -> Result<SuiteResult> {
    let info = lemma_info(id)?;
    let size = size.unwrap_or(info.default_size);
    let start = Instant::now();
    let (seeds, checks) = match runner(id) {
        Runner::Exhaustive(f) => (Vec::new(), f(size)),
        Runner::Random(f) => {
            let count = count.unwrap_or(info.default_count);
            let mut master = ChaCha8Rng::seed_from_u64(seed);
            let seeds: Vec<u64> = (0..count).map(|_| master.gen()).collect();
            let checks = seeds.par_iter().map(|&s| f(&mut ChaCha8Rng::seed_from_u64(s), size)).collect();
            (seeds, checks)
        }
    };
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    let mut counterexample = None;
    let (mut passed, mut failed, mut total) = (0, 0, 0);
    for c in &checks {
        total += c.checks;
        for t in &c.tags {
            *tags.entry(t.to_string()).or_default() += 1;
        }
        match &c.verdict {
            Ok(()) => passed += 1,
            Err(message) => {
                failed += 1;
                if counterexample.is_none() {
                    let labels = c.graph.vertex_vec();
                    counterexample = Some(Counterexample {
                        graph6: graph6::encode_with_order(&c.graph, &labels),
                        labels,
                        certificate: c.certificate.clone(),
                        message: message.clone(),
                    });
                }
            }
        }
    }
    Ok(SuiteResult {
        lemma: id.to_string(),
        size,
        seed: if info.exhaustive { 0 } else { seed },
        count: checks.len(),
        passed,
        failed,
        checks: total,
        seeds,
        tags,
        counterexample,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// All labelled graphs on `0..n`.
pub fn all_graphs(n: usize) -> impl ParallelIterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    (0..total).into_par_iter().map(move |mask| {
        let es: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &es)
    })
}

fn graphs_up_to(size: usize) -> Vec<Graph> {
    (0..=size).flat_map(|n| all_graphs(n).collect::<Vec<_>>()).collect()
}

fn lc3(g: &Graph, a: Vertex, b: Vertex) -> Result<Graph> {
    let x = trace::local_complement(g, a)?;
    let x = trace::local_complement(&x, b)?;
    trace::local_complement(&x, a)
}

fn pivot_identity(size: usize) -> Vec<Check> {
    graphs_up_to(size)
        .into_par_iter()
        .map(|g| {
            let mut c = Check::new(&g);
            for (u, v) in g.edges() {
                for (a, b) in [(u, v), (v, u)] {
                    let p = trace::pivot(&g, a, b).expect("edge");
                    let uvu = lc3(&g, a, b).expect("vertices");
                    let vuv = lc3(&g, b, a).expect("vertices");
                    c.expect(p == uvu, || format!("pivot({a},{b}) differs from G*{a}*{b}*{a}"));
                    c.expect(p == vuv, || format!("pivot({a},{b}) differs from G*{b}*{a}*{b}"));
                }
            }
            c
        })
        .collect()
}

fn involutions(size: usize) -> Vec<Check> {
    graphs_up_to(size)
        .into_par_iter()
        .map(|g| {
            let mut c = Check::new(&g);
            for v in g.vertices() {
                let twice = trace::local_complement(&trace::local_complement(&g, v).expect("v"), v).expect("v");
                c.expect(twice == g, || format!("(G*{v})*{v} != G"));
            }
            for (u, v) in g.edges() {
                let twice = trace::pivot(&trace::pivot(&g, u, v).expect("uv"), u, v).expect("uv");
                c.expect(twice == g, || format!("(G∧{u}{v})∧{u}{v} != G"));
            }
            c
        })
        .collect()
}

fn universal_embedding(size: usize) -> Vec<Check> {
    let m = size * size.saturating_sub(1) / 2;
    let host = subdivided_complete_bipartite(size, m);
    all_graphs(size)
        .map(|h| {
            let e = embed_universal(&h);
            let mut c = Check::new(&h).cert(e.trace());
            c.expect(e.host == host, || "host is not K^1_{n,C(n,2)}".into());
            match e.replay() {
                Ok(r) => c.expect(r == h, || format!("replay gives {r:?}")),
                Err(err) => c = c.fail(err),
            }
            c
        })
        .collect()
}

fn ramsey_knn(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let (n1, n2) = knn_thresholds(n);
    let Some(n2) = n2 else {
        return Check::new(&Graph::new()).fail(format!("N2 overflows for n = {n}"));
    };
    let ic = match families::interfered(n1 as usize, n2 as usize, &Interference::Random(rng.gen())) {
        Ok(ic) => ic,
        Err(e) => return Check::new(&Graph::new()).fail(e),
    };
    let c = Check::new(&ic.graph);
    let ex = match extract_knn(&ic, n) {
        Ok(ex) => ex,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&ex);
    let replay = ex.trace.apply(&ic.graph);
    c.expect(replay.as_ref().ok() == Some(&ex.result), || "replay differs from the result".into());
    let iso = solve::are_isomorphic(&ex.result, &subdivided_complete_bipartite(n, n));
    c.expect(matches!(iso, Ok(Some(_))), || "result is not K^1_{n,n}".into());
    c
}

fn branching_dp(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let ell = rng.gen_range(2..=size.max(2));
    let t = random::tree_with_leaves(rng, ell);
    let c = Check::new(&t);
    let r = match branching_subtree(&t) {
        Ok(r) => r,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&r);
    let sub = t.induced(&r.subtree);
    c.expect(sub.is_tree(), || "subtree is not a tree".into());
    c.expect(!has_adjacent_branching(&sub), || "adjacent branching vertices".into());
    let kept = r.subtree.iter().filter(|&&v| t.degree(v) <= 1).count();
    c.expect(kept >= ceil_root(ell, 2), || format!("{kept} leaves < ⌈√{ell}⌉"));
    c.expect(r.total_leaves == ell, || "leaf count mismatch".into());
    for node in &r.certificate {
        c.expect(node.f0 * node.f1 >= node.leaves, || format!("f0·f1 < ℓ at {}", node.vertex));
    }
    c
}

/// Distances between features of `T`, recomputed vertex by vertex.
fn feature_spacing(g: &Graph, tree: &VertexSet) -> Option<usize> {
    let bt = analyze_bloated_tree(g, tree).ok()?;
    let h = g.induced(tree);
    let features = bt.features();
    let mut best = None::<usize>;
    for (i, a) in features.iter().enumerate() {
        for b in &features[i + 1..] {
            for &x in a {
                let dist = h.distances_from(x);
                for y in b {
                    let d = dist.get(y).copied().unwrap_or(usize::MAX);
                    best = Some(best.map_or(d, |m| m.min(d)));
                }
            }
        }
    }
    best
}

fn bloated_branching(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let blocks = rng.gen_range(2..=size.max(2));
    let g = random::bloated_tree(rng, blocks, 0.3, 5);
    let c = Check::new(&g);
    let bt = match analyze_bloated_tree(&g, &g.vertex_set()) {
        Ok(bt) => bt,
        Err(v) => return c.fail(format!("{v:?}")),
    };
    let p = match prune_bloated_tree(&g, &bt) {
        Ok(p) => p,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&p);
    c.expect(validate_decomp(&g, &p).is_ok(), || "output is not a bloated tree".into());
    c.expect(p.leaves.is_subset(&bt.leaves), || "output leaves are not input leaves".into());
    let ell = bt.leaves.len();
    c.expect(p.leaves.len() >= ceil_root(ell, 4), || format!("{} leaves < ⌈{ell}^(1/4)⌉", p.leaves.len()));
    let spacing = feature_spacing(&g, &p.tree);
    c.expect(spacing.is_none_or(|d| d >= 4), || format!("features at distance {spacing:?}"));
    c
}

/// Merges `set` into `keep`, which inherits every outside neighbour.
fn merge(g: &Graph, set: &VertexSet, keep: Vertex) -> Graph {
    let nbrs: VertexSet = g.neighborhood_of_set(set);
    let mut h = g.without(set);
    h.add_vertex(keep);
    for v in nbrs {
        h.add_edge(keep, v);
    }
    h
}

fn oracle_tag(c: &mut Check, g: &Graph, h: &Graph) {
    if g.order() <= ORACLE_LIMIT {
        let ok = oracle::confirm(g, h, Mode::VertexMinor).unwrap_or(false);
        c.expect(ok, || "oracle does not confirm the vertex-minor".into());
        if ok {
            c.tags.push("oracle-confirmed");
        }
    }
}

fn big_clique(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let k = rng.gen_range(3..=size.max(3));
    let extra = rng.gen_range(0..=4);
    let (g, cv, d) = random::big_clique_instance(rng, k, extra);
    let c = Check::new(&g);
    let s = match eliminate_big_clique(&g, cv, d) {
        Ok(s) => s,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&s);
    let rest: VertexSet = g.neighbors(cv).iter().copied().filter(|&v| v != d).collect();
    let mut expect = g.clone();
    for &a in &rest {
        for &b in rest.range(a + 1..) {
            expect.remove_edge(a, b);
        }
    }
    let expect = merge(&expect, &VertexSet::from([cv, d]), d);
    c.expect(s.graph == expect, || "result differs from (G − E(C−c))/cd".into());
    c.expect(s.trace.apply(&g).ok() == Some(s.graph.clone()), || "replay differs".into());
    oracle_tag(&mut c, &g, &s.graph);
    c
}

fn fanning(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let k = rng.gen_range(0..=size);
    let extra = rng.gen_range(0..=3);
    let (g, path, cv) = random::fan_instance(rng, k, extra);
    let c = Check::new(&g);
    let f = match eliminate_fanning(&g, &path, cv) {
        Ok(f) => f,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&f);
    let vs: VertexSet = path[1..path.len() - 1].iter().copied().collect();
    let fans = path[2..path.len() - 1].iter().filter(|&&v| g.has_edge(cv, v)).count();
    let drop_c = fans > 0 && fans % 3 == 0;
    c.expect(drop_c == (f.variant == FanVariant::ContractedWithoutC), || "wrong variant".into());
    let mut base = g.clone();
    if drop_c {
        for &v in &path[2..path.len() - 1] {
            base.remove_edge(cv, v);
        }
    }
    let expect = merge(&base, &vs, f.survivor);
    c.expect(f.surgery.graph == expect, || "result differs from the contracted path".into());
    c.expect(f.surgery.trace.apply(&g).ok() == Some(f.surgery.graph.clone()), || "replay differs".into());
    oracle_tag(&mut c, &g, &f.surgery.graph);
    c
}

fn bloated_star(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let skeleton = rng.gen_range(2..=size.max(2));
    let spacing = rng.gen_range(0..=3);
    let hubs = rng.gen_range(0..=2);
    let (g, bt) = random::shrinkable_instance(rng, skeleton, spacing, hubs);
    let c = Check::new(&g);
    let s = match contract_to_star(&g, &bt) {
        Ok(s) => s,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&s);
    let inner: VertexSet = bt.tree.difference(&bt.leaves).copied().collect();
    let mut base = g.clone();
    for &(a, b) in &s.e_star {
        c.expect(inner.contains(&a) != inner.contains(&b), || format!("E* edge {a}{b} is not interior-to-outside"));
        base.remove_edge(a, b);
    }
    let expect = merge(&base, &inner, s.center);
    c.expect(s.graph == expect, || "result differs from (G − E*)/E(T−L)".into());
    c.expect(s.leaves.iter().all(|&l| s.graph.has_edge(s.center, l)), || "centre misses a leaf".into());
    c.expect(s.graph.is_stable(&s.leaves), || "leaves are not stable".into());
    c.expect(s.trace.apply(&g).ok() == Some(s.graph.clone()), || "replay differs".into());
    oracle_tag(&mut c, &g, &s.graph);
    c
}

/// `P` dangles oddly from `X`, recomputed from adjacency.
fn odd_dangling(g: &Graph, p: &[Vertex], x: &VertexSet) -> bool {
    let pset: VertexSet = p.iter().copied().collect();
    let path_ok = p.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.edges_within(&pset).len() + 1 == p.len();
    let outside: BTreeSet<Vertex> =
        p.iter().flat_map(|&v| g.neighbors(v).iter().copied()).filter(|v| !pset.contains(v)).collect();
    let odd = x.iter().all(|&a| p.iter().filter(|&&v| g.has_edge(a, v)).count() % 2 == 1);
    path_ok && outside.into_iter().collect::<VertexSet>() == *x && odd
}

fn hanging_oddly(rng: &mut ChaCha8Rng, size: usize) -> Check {
    loop {
        let len = rng.gen_range(1..=size.max(1));
        let xs = rng.gen_range(1..=3);
        let extra = rng.gen_range(0..=3);
        let (g, p, x) = random::dangling_instance(rng, len, xs, extra, true, false);
        let f = match fix_parity(&g, &p, &x) {
            Ok(f) => f,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Check::new(&g).fail(e),
        };
        let mut c = Check::new(&g).cert(&f);
        let pset: VertexSet = p.iter().copied().collect();
        c.expect(f.graph.without(&pset) == g.without(&pset), || "graph changed off the path".into());
        c.expect(odd_dangling(&f.graph, &f.path, &x), || "path does not dangle oddly".into());
        c.expect(f.trace.apply(&g).ok() == Some(f.graph.clone()), || "replay differs".into());
        let order: Vec<usize> = f.path.iter().filter_map(|v| p.iter().position(|w| w == v)).collect();
        c.expect(order.len() == f.path.len() && order.windows(2).all(|w| w[0] < w[1]), || {
            "path is not a subpath".into()
        });
        return c;
    }
}

fn hanging_contraction(rng: &mut ChaCha8Rng, q: usize, len: usize, stable: bool, odd: bool) -> Check {
    loop {
        let need = ramsey::ramsey(q, q).value as usize;
        let xs = need + rng.gen_range(0..=2);
        let extra = rng.gen_range(0..=2);
        let (g, p, x) = random::dangling_instance(rng, len, xs, extra, stable, odd);
        let r = match contract_dangling_path(&g, &p, &x, q) {
            Ok(r) => r,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Check::new(&g).fail(e),
        };
        let mut c = Check::new(&g).cert(&r);
        c.expect(r.y.is_subset(&x) && r.y.len() >= q, || "Y is not a q-subset of X".into());
        c.expect(r.graph.is_stable(&r.y), || "Y is not stable afterwards".into());
        c.expect(odd_dangling(&r.graph, &[r.survivor], &r.y), || "survivor does not dangle oddly from Y".into());
        let gone: VertexSet = x.difference(&r.y).copied().collect();
        let mut base = g.without(&gone);
        for (a, b) in base.edges_within(&r.y) {
            base.remove_edge(a, b);
        }
        let expect = merge(&base, &p.iter().copied().collect(), r.survivor);
        c.expect(r.graph == expect, || "result differs from (G − (X−Y) − E(Y))/E(P)".into());
        let pset: VertexSet = p.iter().copied().collect();
        let off = |h: &Graph| h.without(&pset).without(&r.y).without_vertex(r.survivor);
        c.expect(off(&r.graph) == off(&g.without(&gone)), || "graph changed away from P and Y".into());
        c.expect(r.trace.apply(&g).ok() == Some(r.graph.clone()), || "replay differs".into());
        return c;
    }
}

fn ramsey_hanging(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let q = rng.gen_range(2..=size.clamp(2, 3));
    let len = rng.gen_range(1..=5);
    hanging_contraction(rng, q, len, false, true)
}

fn contract_hanging(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let q = rng.gen_range(1..=2);
    let len = rng.gen_range(1..=size.max(1));
    hanging_contraction(rng, q, len, true, false)
}

const FRAME_DIMENSIONS: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 2)];

fn engineered_frames(_: usize) -> Vec<Check> {
    FRAME_DIMENSIONS.par_iter().map(|&(q, h)| frame_pipeline(q, h)).collect()
}

fn frame_pipeline(q: usize, h: usize) -> Check {
    let e = match engineered_cover(q, h, engineered_clique_size(q, h)) {
        Ok(e) => e,
        Err(err) => return Check::new(&Graph::new()).fail(err),
    };
    let g = e.graph;
    let mut c = Check::new(&g);
    let run = |c: &mut Check| -> Result<Value> {
        let cert = attach_dangling_paths(&g, q, h, 1, ChiPolicy::Assume)?;
        c.expect(validate_q_cover(&g, &cert.covers, &cert.covered).is_ok(), || "q-cover fails validation".into());
        c.expect(validate_spacious(&g, &cert).is_ok(), || "dangling paths fail validation".into());
        let ex = extract_frame(&g, &cert, q, h)?;
        c.expect(ex.trace.apply(&g).ok() == Some(ex.graph.clone()), || "frame replay differs".into());
        c.expect(validate_frame(&ex.graph, &ex.frame).is_ok(), || "frame fails validation".into());
        let (fg, frame) = if h >= 2 {
            let (tg, tf) = trim_frame(&ex.graph, &ex.frame)?;
            c.expect(validate_frame(&tg, &tf).is_ok(), || "trimmed frame fails validation".into());
            let (pg, pf) = purify_frame(&tg, &tf, q, h)?;
            c.expect(pf.flavor == FrameFlavor::Pure && validate_frame(&pg, &pf).is_ok(), || {
                "pure frame fails validation".into()
            });
            (pg, pf)
        } else {
            (ex.graph.clone(), ex.frame.clone())
        };
        let inter = frame_to_interfered(&fg, &frame)?;
        c.expect(inter.cert.validate().is_ok(), || "interfered K^1 fails validation".into());
        c.expect((inter.cert.n(), inter.cert.m()) == (q, h), || "wrong interfered dimensions".into());
        c.expect(inter.trace.apply(&fg).ok() == Some(inter.cert.graph.clone()), || "contraction replay differs".into());
        if fg.order() <= ORACLE_LIMIT {
            let ok = oracle::confirm(&fg, &inter.cert.graph, Mode::VertexMinor)?;
            c.expect(ok, || "oracle rejects the interfered graph".into());
            if ok {
                c.tags.push("oracle-confirmed");
            }
        }
        Ok(json!({ "cover": cert, "frame": frame, "interfered": inter.cert }))
    };
    match run(&mut c) {
        Ok(v) => {
            c.certificate = v;
            c
        }
        Err(err) => c.fail(err),
    }
}

fn nine_control(_: usize) -> Vec<Check> {
    // Cliques large enough that χ beats the bound 2^q q h κ with κ = 1.
    let cases = [(1, 1, 3, families::complete(2)), (1, 2, 5, families::path(3)), (2, 2, 17, families::complete(3))];
    cases
        .par_iter()
        .map(|(q, h, clique, target)| {
            let (q, h) = (*q, *h);
            let e = match engineered_cover(q, h, *clique) {
                Ok(e) => e,
                Err(err) => return Check::new(&Graph::new()).fail(err),
            };
            let c = Check::new(&e.graph);
            match nine_control_driver(&e.graph, target, Some(DriverParams { q, h }), Some(1)) {
                Ok(cert) => {
                    let mut c = c.cert(&cert);
                    match &cert {
                        ControlCertificate::MinorWitness { trace, .. } => {
                            let ok = oracle::verify_witness(&e.graph, target, trace).unwrap_or(false);
                            c.expect(ok, || "witness does not replay".into());
                        }
                        ControlCertificate::ChiBound { .. } => c.expect(false, || "no witness produced".into()),
                    }
                    c
                }
                Err(err) => c.fail(err),
            }
        })
        .collect()
}

fn odd_path_step(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let n = rng.gen_range(2..=size.max(2));
    let (g, [u, v, w, x]) = random::odd_path_instance(rng, n);
    let c = Check::new(&g);
    let s = match multicover::contract_odd_path_step(&g, u, v, w, x) {
        Ok(s) => s,
        Err(e) => return c.fail(e),
    };
    let mut c = c.cert(&s);
    let mut expect = g.without(&VertexSet::from([v, w]));
    expect.add_edge(u, x);
    c.expect(s.graph == expect, || "result differs from G − v − w + ux".into());
    let merged = merge(&g, &VertexSet::from([v, w, x]), v.min(w).min(x));
    let map: BTreeMap<Vertex, Vertex> =
        merged.vertices().map(|a| (a, if a == s.relabel.0 { s.relabel.1 } else { a })).collect();
    c.expect(merged.relabel(&map) == s.graph, || "result differs from G/{vw,wx} under the recorded map".into());
    c.expect(s.trace.apply(&g).ok() == Some(s.graph.clone()), || "replay differs".into());
    c.expect(s.trace.is_pivot_only() || s.trace.steps.iter().all(|st| !matches!(st, trace::Step::Lc { .. })), || {
        "trace uses a local complementation".into()
    });
    c
}

fn odd_subdivision(size: usize) -> Vec<Check> {
    let cases: Vec<(usize, usize)> = (2..=size).flat_map(|n| [(n, 2), (n, 4)]).collect();
    cases
        .par_iter()
        .map(|&(n, k)| {
            let kn = families::complete(n);
            let sub = families::subdivide(&kn, k);
            let c = Check::new(&sub);
            match multicover::reduce_odd_subdivision(&sub, &kn.vertex_set()) {
                Ok((out, t)) => {
                    let mut c = c.cert(&t);
                    c.expect(out == kn, || format!("reduces to {out:?}"));
                    c.expect(t.apply(&sub).ok() == Some(kn.clone()), || "replay differs".into());
                    c.expect(t.steps.iter().all(|s| !matches!(s, trace::Step::Lc { .. })), || {
                        "trace uses a local complementation".into()
                    });
                    if sub.order() <= ORACLE_LIMIT {
                        let ok = oracle::confirm(&sub, &kn, Mode::PivotMinor).unwrap_or(false);
                        c.expect(ok, || "oracle rejects K_n as a pivot-minor".into());
                        if ok {
                            c.tags.push("oracle-confirmed");
                        }
                    }
                    c
                }
                Err(e) => c.fail(e),
            }
        })
        .collect()
}

fn impure_to_pure(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let ell = rng.gen_range(2..=size.max(2));
    let width = rng.gen_range(2..=4);
    let k = rng.gen_range(ell + 1..=ell + 3);
    let (g, cert) = multicover::engineered_multicover(ell, width, &families::complete(k), Pattern::Impure);
    let c = Check::new(&g);
    let omega = solve::clique_number(&g).map(|c| c.omega).unwrap_or(usize::MAX);
    match multicover::impure_to_pure(&g, &cert, 1, ell, 1, omega, 1, ChiPolicy::Verify) {
        Ok(out) => {
            let mut c = c.cert(&out);
            c.expect(out.surgery == out.graph, || "pivot cascade differs from edge surgery".into());
            c.expect(out.trace.apply(&g).ok() == Some(out.graph.clone()), || "replay differs".into());
            c.expect(
                out.trace.is_pivot_only() || out.trace.steps.iter().all(|s| !matches!(s, trace::Step::Lc { .. })),
                || "not a pivot-minor trace".into(),
            );
            let valid = multicover::validate_structure(&out.graph, &out.cert, &StructureKind::Multicover);
            c.expect(valid.is_ok() && out.cert.pure && out.cert.len() == ell, || format!("output: {valid:?}"));
            let after = solve::clique_number(&out.graph).map(|c| c.omega).unwrap_or(usize::MAX);
            c.expect(after <= omega, || format!("ω grew from {omega} to {after}"));
            c
        }
        Err(e) => c.fail(e),
    }
}

/// Brute-force isomorphism by permutations, for tiny graphs.
fn naive_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let gv = g.vertex_vec();
    let hv = h.vertex_vec();
    let mut perm: Vec<usize> = (0..hv.len()).collect();
    loop {
        let ok = g.edges().iter().all(|&(a, b)| {
            let ia = gv.iter().position(|&x| x == a).expect("vertex");
            let ib = gv.iter().position(|&x| x == b).expect("vertex");
            h.has_edge(hv[perm[ia]], hv[perm[ib]])
        });
        if ok {
            return true;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else { return false };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Whether `h` is a vertex-minor (or pivot-minor) of `g`: some graph in the
/// labelled orbit of `g` has an induced subgraph isomorphic to `h`.
fn naive_contains(g: &Graph, h: &Graph, mode: Mode) -> bool {
    let k = h.order();
    if k > g.order() {
        return false;
    }
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut stack = vec![g.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        let vs = cur.vertex_vec();
        let found = (0u32..1 << vs.len()).filter(|m| m.count_ones() as usize == k).any(|m| {
            let keep: VertexSet = (0..vs.len()).filter(|i| m >> i & 1 == 1).map(|i| vs[i]).collect();
            naive_isomorphic(&cur.induced(&keep), h)
        });
        if found {
            return true;
        }
        let next: Vec<Graph> = match mode {
            Mode::VertexMinor => vs.iter().map(|&v| trace::local_complement(&cur, v).expect("v")).collect(),
            Mode::PivotMinor => cur.edges().iter().map(|&(u, v)| trace::pivot(&cur, u, v).expect("uv")).collect(),
        };
        stack.extend(next.into_iter().filter(|n| !seen.contains(n)));
    }
    false
}

fn oracle_naive(rng: &mut ChaCha8Rng, size: usize) -> Check {
    let n = rng.gen_range(1..=size.max(1));
    let g = random::gnp(rng, n, 0.5);
    let mode = if rng.gen_bool(0.5) { Mode::VertexMinor } else { Mode::PivotMinor };
    let k = rng.gen_range(1..=n.min(4));
    let h = if rng.gen_bool(0.5) {
        random::gnp(rng, k, 0.5)
    } else {
        // A random minor of g: a few local moves, then deletions.
        let mut cur = g.clone();
        for _ in 0..rng.gen_range(0..4) {
            let vs = cur.vertex_vec();
            let es = cur.edges();
            cur = match mode {
                Mode::VertexMinor => trace::local_complement(&cur, vs[rng.gen_range(0..vs.len())]).expect("v"),
                Mode::PivotMinor if !es.is_empty() => {
                    let (u, v) = es[rng.gen_range(0..es.len())];
                    trace::pivot(&cur, u, v).expect("uv")
                }
                Mode::PivotMinor => cur,
            };
        }
        while cur.order() > k {
            let vs = cur.vertex_vec();
            cur = cur.without_vertex(vs[rng.gen_range(0..vs.len())]);
        }
        let map: BTreeMap<Vertex, Vertex> = cur.vertices().enumerate().map(|(i, v)| (v, i as Vertex)).collect();
        cur.relabel(&map)
    };
    let c = Check::new(&g);
    let verdict = match oracle::contains_minor(&g, &h, mode) {
        Ok(v) => v,
        Err(e) => return c.fail(e),
    };
    let naive = naive_contains(&g, &h, mode);
    let h6 = graph6::encode_with_order(&h, &h.vertex_vec());
    let mut c = c.cert(json!({ "target": h6, "mode": mode, "trace": verdict }));
    c.expect(verdict.is_some() == naive, || format!("oracle says {}, naive search says {naive}", verdict.is_some()));
    if let Some(t) = &verdict {
        c.expect(oracle::verify_witness(&g, &h, t).unwrap_or(false), || "oracle witness does not replay".into());
        if mode == Mode::PivotMinor {
            c.expect(t.steps.iter().all(|s| !matches!(s, trace::Step::Lc { .. })), || "pivot witness uses lc".into());
        }
    }
    c.tags.push(if naive { "contained" } else { "not-contained" });
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_ids_list_the_known_ones() {
        match run_lemma_suite("no-such-lemma", None, 0, None) {
            Err(Error::UnknownLemma { known, .. }) => assert!(known.contains("pivot-identity")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_lemma_has_a_runner() {
        for l in LEMMAS {
            let _ = runner(l.id);
        }
    }

    #[test]
    fn naive_search_examples() {
        assert!(naive_contains(&families::path(3), &families::complete(3), Mode::VertexMinor));
        assert!(!naive_contains(&families::path(3), &families::complete(3), Mode::PivotMinor));
        assert!(!naive_contains(&Graph::empty_on(0..3), &families::complete(2), Mode::VertexMinor));
        assert!(naive_isomorphic(&families::cycle(4), &families::complete_bipartite(2, 2)));
        assert!(!naive_isomorphic(&families::path(4), &families::star(3)));
    }

    #[test]
    fn small_suites_pass_and_repeat() {
        for id in ["branching-dp", "elminate-fanning", "odd-path-step", "oracle-naive"] {
            let a = run_lemma_suite(id, None, 7, Some(20)).unwrap();
            assert!(a.all_passed(), "{id}: {:?}", a.counterexample);
            let b = run_lemma_suite(id, None, 7, Some(20)).unwrap();
            assert_eq!(a.timeless_json(), b.timeless_json());
        }
    }

    #[test]
    fn failures_embed_a_counterexample() {
        let checks = [Check::new(&families::path(3)).fail("broken")];
        assert!(checks[0].verdict.is_err());
        let r = run_lemma_suite("pivot-identity", Some(3), 0, None).unwrap();
        assert!(r.all_passed() && r.counterexample.is_none());
        assert_eq!(r.count, 1 + 1 + 2 + 8);
    }
}
