//! Frames: extraction from covers with dangling paths, purification, and
//! contraction to an interfered `K^1_{q,h}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cover::validate_spacious;
use super::dangling::contract_dangling_path;
use super::{pairwise_far, LongCoverCert};
use crate::bloated::{analyze_bloated_tree, min_feature_spacing, BloatedTreeDecomp};
use crate::error::{consistency, precondition, Error, Result};
use crate::families::InterferedCert;
use crate::graph::{Edge, Graph, Vertex, VertexSet};
use crate::ramsey;
use crate::shrink::{classify_interface, contract_to_star};
use crate::trace::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameFlavor {
    Frame,
    Trimmed,
    Pure,
}

/// A `(q,h)`-frame: parts `A_1..A_q`, `M = {m_{i,j}}` and `S = {s_1..s_h}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameCert {
    #[serde(rename = "A")]
    pub parts: Vec<VertexSet>,
    /// `m[i][j] = m_{i+1,j+1}`.
    #[serde(rename = "M")]
    pub m: Vec<Vec<Vertex>>,
    #[serde(rename = "S")]
    pub s: Vec<Vertex>,
    pub flavor: FrameFlavor,
}

impl FrameCert {
    pub fn q(&self) -> usize {
        self.parts.len()
    }

    pub fn h(&self) -> usize {
        self.s.len()
    }

    /// `V(T_i) = A_i ∪ {m_{i,1}, ..., m_{i,h}}`.
    pub fn tree_vertices(&self, i: usize) -> VertexSet {
        let mut t = self.parts[i].clone();
        t.extend(self.m[i].iter().copied());
        t
    }

    fn without_rows(&self, keep: &[usize]) -> FrameCert {
        FrameCert {
            parts: keep.iter().map(|&i| self.parts[i].clone()).collect(),
            m: keep.iter().map(|&i| self.m[i].clone()).collect(),
            s: self.s.clone(),
            flavor: self.flavor,
        }
    }
}

fn tree_decomp(g: &Graph, f: &FrameCert, i: usize) -> Result<BloatedTreeDecomp> {
    analyze_bloated_tree(g, &f.tree_vertices(i))
        .map_err(|v| precondition(format!("T_{} is not a bloated tree: {v}", i + 1)))
}

/// Checks the frame clauses, plus the trimmed and pure conditions when the
/// certificate claims them.
pub fn validate_frame(g: &Graph, f: &FrameCert) -> Result<()> {
    let (q, h) = (f.q(), f.h());
    if f.m.len() != q || f.m.iter().any(|r| r.len() != h) {
        return Err(precondition("M must be a q by h table"));
    }
    let mut seen = VertexSet::new();
    let mut total = 0;
    let members = f.parts.iter().flatten().chain(f.m.iter().flatten()).chain(f.s.iter());
    for &v in members {
        total += 1;
        seen.insert(v);
    }
    if seen.len() != total || seen != g.vertex_set() {
        return Err(precondition("A_i, M and S do not partition the vertex set"));
    }
    for (i, a) in f.parts.iter().enumerate() {
        if a.is_empty() || !g.induced(a).is_connected() {
            return Err(precondition(format!("F[A_{}] is not connected", i + 1)));
        }
        for (k, b) in f.parts.iter().enumerate().skip(i + 1) {
            if !g.is_anticomplete_to(a, b) {
                return Err(precondition(format!("A_{} touches A_{}", i + 1, k + 1)));
            }
        }
    }
    for i in 0..q {
        let earlier: VertexSet = f.parts[..i].iter().flatten().copied().collect();
        for j in 0..h {
            let m = f.m[i][j];
            let inside: Vec<Vertex> = g.neighbors(m).intersection(&f.parts[i]).copied().collect();
            if inside.len() != 1 || g.degree(inside[0]) != 2 {
                return Err(precondition(format!(
                    "m_({},{}) needs a single neighbour of degree 2 in A_{}",
                    i + 1,
                    j + 1,
                    i + 1
                )));
            }
            let rest = g.neighbors(m).iter().filter(|&&u| u != inside[0]);
            for &u in rest {
                if !(earlier.contains(&u) || u == f.s[j]) {
                    return Err(precondition(format!(
                        "m_({},{}) has a neighbour {u} outside A_<{} and s_{}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }
    for j in 0..h {
        let want: VertexSet = f.m.iter().map(|r| r[j]).collect();
        if *g.neighbors(f.s[j]) != want {
            return Err(precondition(format!("N(s_{}) is not the column of M", j + 1)));
        }
    }
    let without_s = g.without(&f.s.iter().copied().collect());
    let all_m: Vec<Vertex> = f.m.iter().flatten().copied().collect();
    if let Some((a, b, d)) = pairwise_far(&without_s, &all_m, 6) {
        return Err(precondition(format!("M vertices {a}, {b} at distance {d} < 6 in F − S")));
    }
    if f.flavor >= FrameFlavor::Trimmed {
        for i in 0..q {
            let bt = tree_decomp(g, f, i)?;
            let leaves: VertexSet = f.m[i].iter().copied().collect();
            if bt.leaves != leaves {
                return Err(precondition(format!("leaves of T_{} are not its M row", i + 1)));
            }
            if let Some(d) = min_feature_spacing(g, &bt) {
                if d < 4 {
                    return Err(precondition(format!("features of T_{} at distance {d} < 4", i + 1)));
                }
            }
            if f.flavor == FrameFlavor::Pure && !classify_interface(g, &bt)?.shrinkable {
                return Err(precondition(format!("T_{} is not shrinkable", i + 1)));
            }
        }
    }
    Ok(())
}

/// `q_0 = q`, `q_j = R(q_{j-1}, q_{j-1})` for `j = 1..h` (saturating; the
/// binomial bound stands in for unknown Ramsey numbers).
pub fn q_chain(q: usize, h: usize) -> Vec<u128> {
    let mut out = vec![q as u128];
    for _ in 0..h {
        let prev = *out.last().expect("non-empty");
        let next = if prev > 64 {
            u128::MAX
        } else {
            let p = prev as usize;
            ramsey::ramsey(p, p).value
        };
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameExtraction {
    pub graph: Graph,
    pub frame: FrameCert,
    pub trace: Trace,
    /// Cover indices (zero-based) that became the frame's rows.
    pub rows: Vec<usize>,
}

/// Extracts a `(q,h)`-frame as a vertex-minor of a graph carrying a long
/// `q'`-cover with `h` paths dangling spaciously.
pub fn extract_frame(g: &Graph, cert: &LongCoverCert, q: usize, h: usize) -> Result<FrameExtraction> {
    validate_spacious(g, cert)?;
    let chain = q_chain(q, h);
    let q_prime = chain[h];
    if (cert.q() as u128) < q_prime || cert.h() < h {
        let shown: Vec<String> = chain.iter().map(|v| v.to_string()).collect();
        return Err(Error::Threshold(format!(
            "cover has {} rows and {} paths; a ({q},{h})-frame needs q' = {q_prime} rows \
             (chain q_0 = {q}, q_j = R(q_(j-1), q_(j-1)): {})",
            cert.q(),
            cert.h(),
            shown.join(", ")
        )));
    }
    let qp = q_prime as usize;
    let mut parts = Vec::with_capacity(qp);
    let mut keep = VertexSet::new();
    for i in 0..qp {
        let layers = &cert.covers[i].layers;
        let mut a = layers[0].clone();
        for j in 0..h {
            let m = cert.markers[i][j];
            let y = *g
                .neighbors(m)
                .iter()
                .find(|u| layers[2].contains(u))
                .ok_or_else(|| consistency(format!("marker {m} has no neighbour in L^2")))?;
            let z = *g
                .neighbors(y)
                .iter()
                .find(|u| layers[1].contains(u))
                .ok_or_else(|| consistency(format!("{y} has no neighbour in L^1")))?;
            a.insert(y);
            a.insert(z);
            keep.insert(m);
        }
        keep.extend(a.iter().copied());
        parts.push(a);
    }
    for p in &cert.paths[..h] {
        keep.extend(p.iter().copied());
    }
    let mut trace = Trace::new();
    for v in g.vertices().filter(|v| !keep.contains(v)) {
        trace.del(v);
    }
    let mut cur = g.induced(&keep);
    let mut alive: Vec<usize> = (0..qp).collect();
    let mut s = Vec::with_capacity(h);
    for j in 0..h {
        let target = chain[h - 1 - j] as usize;
        let x: VertexSet = alive.iter().map(|&i| cert.markers[i][j]).collect();
        let dc = contract_dangling_path(&cur, &cert.paths[j], &x, target)?;
        trace.extend(&dc.trace);
        cur = dc.graph;
        let kept: Vec<usize> =
            alive.iter().copied().filter(|&i| dc.y.contains(&cert.markers[i][j])).take(target).collect();
        for &i in alive.iter().filter(|i| !kept.contains(i)) {
            let mut drop: Vec<Vertex> = parts[i].iter().copied().collect();
            drop.extend(cert.markers[i].iter().copied());
            for v in drop {
                if cur.has_vertex(v) {
                    trace.del(v);
                    cur.remove_vertex_mut(v);
                }
            }
        }
        alive = kept;
        s.push(dc.survivor);
    }
    let frame = FrameCert {
        parts: alive.iter().map(|&i| parts[i].clone()).collect(),
        m: alive.iter().map(|&i| cert.markers[i][..h].to_vec()).collect(),
        s,
        flavor: FrameFlavor::Frame,
    };
    if trace.apply(g)? != cur {
        return Err(consistency("frame trace replay differs from the tracked graph"));
    }
    validate_frame(&cur, &frame)?;
    Ok(FrameExtraction { graph: cur, frame, trace, rows: alive })
}

/// Selects a pure `(q,h)`-frame as an induced subgraph of a trimmed frame
/// with at least `q(3h−5)` rows. Returns the subgraph and its certificate.
pub fn purify_frame(g: &Graph, f: &FrameCert, q: usize, h: usize) -> Result<(Graph, FrameCert)> {
    if h < 2 || f.h() != h {
        return Err(precondition("purification needs h >= 2 matching the frame"));
    }
    if f.flavor < FrameFlavor::Trimmed {
        return Err(precondition("frame is not certified as trimmed"));
    }
    validate_frame(g, f)?;
    let pure = FrameCert { flavor: FrameFlavor::Pure, ..f.clone() };
    if f.q() == q && validate_frame(g, &pure).is_ok() {
        return Ok((g.clone(), pure));
    }
    let need = q * (3 * h - 5);
    if f.q() < need {
        return Err(Error::Threshold(format!(
            "trimmed frame has {} rows; purification to q = {q} needs q(3h−5) = {need}",
            f.q()
        )));
    }
    let mut cur = g.clone();
    let mut fr = f.clone();
    // Drop clique vertices with no tree neighbour outside their clique, and
    // any non-M leaves this creates.
    for i in 0..fr.q() {
        while let Some(v) = purification_victim(&cur, &fr, i)? {
            cur.remove_vertex_mut(v);
            fr.parts[i].remove(&v);
        }
    }
    // Auxiliary graph on rows: i < j adjacent when a leaf of T_j sees a
    // vertex of T_i within distance 3 of a big clique or branching vertex.
    let n = fr.q();
    let mut adj: Vec<VertexSet> = vec![VertexSet::new(); n];
    for i in 0..n {
        let bt = tree_decomp(&cur, &fr, i)?;
        let feats: VertexSet = bt.features().into_iter().flatten().collect();
        if feats.is_empty() {
            continue;
        }
        let near: VertexSet =
            bt.subgraph(&cur).distances_from_set(&feats).into_iter().filter(|&(_, d)| d <= 3).map(|(v, _)| v).collect();
        for j in i + 1..n {
            if fr.m[j].iter().any(|&l| !cur.neighbors(l).is_disjoint(&near)) {
                adj[i].insert(j as u32);
                adj[j].insert(i as u32);
            }
        }
    }
    let keep = stable_rows(&adj, q)
        .ok_or_else(|| Error::Threshold(format!("auxiliary row graph has no stable set of size {q}")))?;
    let drop_rows: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    for &i in &drop_rows {
        for v in fr.tree_vertices(i) {
            cur.remove_vertex_mut(v);
        }
    }
    let out = FrameCert { flavor: FrameFlavor::Pure, ..fr.without_rows(&keep) };
    validate_frame(&cur, &out)?;
    Ok((cur, out))
}

fn purification_victim(g: &Graph, f: &FrameCert, i: usize) -> Result<Option<Vertex>> {
    let bt = tree_decomp(g, f, i)?;
    let t = bt.subgraph(g);
    for c in &bt.cliques {
        if let Some(&v) = c.iter().find(|&&v| t.neighbors(v).is_subset(c)) {
            return Ok(Some(v));
        }
    }
    let row: VertexSet = f.m[i].iter().copied().collect();
    let leaf = t.vertices().find(|&v| t.degree(v) <= 1 && !row.contains(&v));
    Ok(leaf)
}

/// Deletes leaves of each `T_i` outside `M` until every leaf is a marker,
/// then checks the trimmed clauses. Suited to frames whose trees are already
/// bloated trees; returns the induced subgraph and its certificate.
pub fn trim_frame(g: &Graph, f: &FrameCert) -> Result<(Graph, FrameCert)> {
    if f.h() < 2 {
        return Err(precondition("trimming needs h >= 2"));
    }
    validate_frame(g, f)?;
    let mut cur = g.clone();
    let mut fr = f.clone();
    for i in 0..fr.q() {
        let row: VertexSet = fr.m[i].iter().copied().collect();
        loop {
            let t = cur.induced(&fr.tree_vertices(i));
            let Some(v) = t.vertices().find(|&v| t.degree(v) <= 1 && !row.contains(&v)) else { break };
            cur.remove_vertex_mut(v);
            fr.parts[i].remove(&v);
        }
    }
    fr.flavor = FrameFlavor::Trimmed;
    validate_frame(&cur, &fr)?;
    Ok((cur, fr))
}

/// Greedy colouring along a smallest-last (degeneracy) order; returns the
/// first `q` rows of a largest colour class.
fn stable_rows(adj: &[VertexSet], q: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (adj[v].iter().filter(|&&u| !removed[u as usize]).count(), v))
            .expect("vertices left");
        removed[v] = true;
        order.push(v);
    }
    let mut color: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in order.iter().rev() {
        let used: std::collections::BTreeSet<usize> =
            adj[v].iter().filter_map(|u| color.get(&(*u as usize)).copied()).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded");
        color.insert(v, c);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, c) in color {
        classes.entry(c).or_default().push(v);
    }
    let best = classes.values().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))?;
    (best.len() >= q).then(|| best[..q].to_vec())
}

/// An interfered `K^1_{q,h}` obtained from a frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interfered {
    pub cert: InterferedCert,
    pub trace: Trace,
    /// Removed edges from `A_i` to later rows of `M`.
    pub e_star: Vec<Edge>,
    /// `(F − E*)/⋃E(A_i)`; absent for `h = 1`, where all of `A_i` but
    /// `y_{i,1}` is deleted instead.
    pub formula: Option<Graph>,
}

/// Contracts every tree of a pure frame to a star, yielding an interfered
/// `K^1_{q,h}` with `x_i` the centre of `T_i`, `z_{i,j} = m_{i,j}` and
/// `y_j = s_j`. Frames with `h = 1` are reduced by deletion.
pub fn frame_to_interfered(g: &Graph, f: &FrameCert) -> Result<Interfered> {
    validate_frame(g, f)?;
    let mut trace = Trace::new();
    let mut cur = g.clone();
    let mut x = Vec::with_capacity(f.q());
    let mut e_star = Vec::new();
    if f.h() == 1 {
        for (i, a) in f.parts.iter().enumerate() {
            let y = *cur.neighbors(f.m[i][0]).intersection(a).next().expect("validated frame");
            for &v in a.iter().filter(|&&v| v != y) {
                trace.del(v);
                cur.remove_vertex_mut(v);
            }
            x.push(y);
        }
    } else {
        if f.flavor != FrameFlavor::Pure {
            return Err(precondition("frame is not certified as pure"));
        }
        for i in 0..f.q() {
            let bt = analyze_bloated_tree(&cur, &f.tree_vertices(i))
                .map_err(|v| consistency(format!("T_{} stopped being a bloated tree: {v}", i + 1)))?;
            let star =
                contract_to_star(&cur, &bt).map_err(|e| consistency(format!("T_{} of a pure frame: {e}", i + 1)))?;
            trace.extend(&star.trace);
            e_star.extend(star.e_star.iter().copied());
            x.push(star.center);
            cur = star.graph;
        }
    }
    if trace.apply(g)? != cur {
        return Err(consistency("frame contraction replay differs"));
    }
    let formula = if f.h() == 1 {
        None
    } else {
        let later_m = |i: usize| -> VertexSet { f.m[i + 1..].iter().flatten().copied().collect() };
        for &(a, b) in &e_star {
            let ok = (0..f.q()).any(|i| {
                let (pa, pb) = (f.parts[i].contains(&a), f.parts[i].contains(&b));
                (pa && later_m(i).contains(&b)) || (pb && later_m(i).contains(&a))
            });
            if !ok {
                return Err(consistency(format!("E* edge {a}{b} is not between A_i and later rows of M")));
            }
        }
        let within: Vec<Edge> = f.parts.iter().flat_map(|a| g.edges_within(a)).collect();
        let fg = g.without_edges(&e_star).contract_edges_keeping(&within, &x.iter().copied().collect())?;
        if fg != cur {
            return Err(consistency("contracted frame differs from (F − E*)/⋃E(A_i)"));
        }
        Some(fg)
    };
    let cert = InterferedCert::from_roles(cur, x, f.s.clone(), f.m.clone())?;
    Ok(Interfered { cert, trace, e_star, formula })
}
