//! Simulating contraction of shrinkable bloated trees with vertex-minors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bloated::{analyze_bloated_tree, validate_decomp, BloatedTreeDecomp};
use crate::error::{consistency, precondition, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::trace::{self, Trace};

/// The shrinkability clause that fails, with the witnesses found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShrinkClause {
    /// Clause 1: `z` has `count != 1` neighbours outside `T`.
    OutsideNeighbours { z: Vertex, count: usize },
    /// Clause 2: attachments with different outside neighbours closer than 4.
    AttachmentSpacing { z: Vertex, other: Vertex, distance: usize },
    /// Clause 3: a branching or attachment vertex within 3 of a big clique.
    NearClique { vertex: Vertex, distance: usize },
    /// Clause 4: an attachment within 3 of a branching vertex.
    NearBranching { z: Vertex, b: Vertex, distance: usize },
    /// Clause 5: a leaf within 1 of a big clique or within 2 of an attachment.
    LeafTooClose { leaf: Vertex, distance: usize },
}

impl ShrinkClause {
    pub fn number(&self) -> usize {
        match self {
            ShrinkClause::OutsideNeighbours { .. } => 1,
            ShrinkClause::AttachmentSpacing { .. } => 2,
            ShrinkClause::NearClique { .. } => 3,
            ShrinkClause::NearBranching { .. } => 4,
            ShrinkClause::LeafTooClose { .. } => 5,
        }
    }
}

impl fmt::Display for ShrinkClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {}: {self:?}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Shrinkable,
    Shrinking,
    Neither(ShrinkClause),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkReport {
    pub classification: Classification,
    pub shrinkable: bool,
    /// `T` is an induced tree and `B ∪ Z` is stable.
    pub shrinking: bool,
    #[serde(rename = "L")]
    pub leaves: VertexSet,
    #[serde(rename = "B")]
    pub branching: VertexSet,
    #[serde(rename = "Z")]
    pub attachments: VertexSet,
}

fn outside(g: &Graph, t: &VertexSet, v: Vertex) -> VertexSet {
    g.neighbors(v).difference(t).copied().collect()
}

fn shrinkable_violation(g: &Graph, bt: &BloatedTreeDecomp) -> Option<ShrinkClause> {
    let h = bt.subgraph(g);
    let t = &bt.tree;
    for &z in &bt.attachments {
        let count = outside(g, t, z).len();
        if count != 1 {
            return Some(ShrinkClause::OutsideNeighbours { z, count });
        }
    }
    let dist: BTreeMap<Vertex, BTreeMap<Vertex, usize>> = t.iter().map(|&v| (v, h.distances_from(v))).collect();
    let d = |a: Vertex, b: Vertex| dist[&a].get(&b).copied().unwrap_or(usize::MAX);
    for &z in &bt.attachments {
        for &z2 in bt.attachments.range(z + 1..) {
            if outside(g, t, z) != outside(g, t, z2) && d(z, z2) < 4 {
                return Some(ShrinkClause::AttachmentSpacing { z, other: z2, distance: d(z, z2) });
            }
        }
    }
    let to_clique =
        |v: Vertex| bt.cliques.iter().flat_map(|c| c.iter().map(move |&u| d(v, u))).min().unwrap_or(usize::MAX);
    for &v in bt.branching.union(&bt.attachments) {
        let dc = to_clique(v);
        if dc <= 3 {
            return Some(ShrinkClause::NearClique { vertex: v, distance: dc });
        }
    }
    for &z in &bt.attachments {
        for &b in &bt.branching {
            if d(z, b) <= 3 {
                return Some(ShrinkClause::NearBranching { z, b, distance: d(z, b) });
            }
        }
    }
    for &l in &bt.leaves {
        let dc = to_clique(l);
        if dc < 2 {
            return Some(ShrinkClause::LeafTooClose { leaf: l, distance: dc });
        }
        if let Some(dz) = bt.attachments.iter().map(|&z| d(l, z)).min() {
            if dz < 3 {
                return Some(ShrinkClause::LeafTooClose { leaf: l, distance: dz });
            }
        }
    }
    None
}

fn is_shrinking(g: &Graph, bt: &BloatedTreeDecomp) -> bool {
    let bz: VertexSet = bt.branching.union(&bt.attachments).copied().collect();
    bt.cliques.is_empty() && bt.subgraph(g).is_tree() && g.is_stable(&bz)
}

/// Classifies how an induced bloated tree meets the rest of the graph.
pub fn classify_interface(g: &Graph, bt: &BloatedTreeDecomp) -> Result<ShrinkReport> {
    validate_decomp(g, bt)?;
    let violation = shrinkable_violation(g, bt);
    let shrinking = is_shrinking(g, bt);
    let classification = match (&violation, shrinking) {
        (None, _) => Classification::Shrinkable,
        (Some(_), true) => Classification::Shrinking,
        (Some(c), false) => Classification::Neither(c.clone()),
    };
    Ok(ShrinkReport {
        classification,
        shrinkable: violation.is_none(),
        shrinking,
        leaves: bt.leaves.clone(),
        branching: bt.branching.clone(),
        attachments: bt.attachments.clone(),
    })
}

/// Result graph, the trace producing it, and the independently computed
/// formula graph (equal to the replay).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surgery {
    pub graph: Graph,
    pub trace: Trace,
    pub formula: Graph,
}

fn checked(g: &Graph, trace: Trace, formula: Graph) -> Result<Surgery> {
    let graph = trace.apply(g)?;
    if graph != formula {
        return Err(consistency(format!("replay {graph:?} differs from formula {formula:?}")));
    }
    Ok(Surgery { graph, trace, formula })
}

/// `G*c − c` for a vertex `c` of a big clique `C = N[c] − d` whose only
/// other neighbour `d` misses `C − c`; equals `(G − E(C−c))/cd` with `d`
/// surviving.
pub fn eliminate_big_clique(g: &Graph, c: Vertex, d: Vertex) -> Result<Surgery> {
    g.require_edge(c, d)?;
    let mut clique: VertexSet = g.neighbors(c).clone();
    clique.remove(&d);
    clique.insert(c);
    if clique.len() < 3 {
        return Err(precondition(format!("{c} lies in no big clique apart from its neighbour {d}")));
    }
    if !g.is_clique(&clique) {
        return Err(precondition(format!("N[{c}] minus {d} is not a clique, so deg({c}) exceeds the clique size")));
    }
    let rest: VertexSet = clique.iter().filter(|&&v| v != c).copied().collect();
    if let Some(v) = rest.iter().find(|&&v| g.has_edge(d, v)) {
        return Err(precondition(format!("{d} is adjacent to clique vertex {v}")));
    }
    let mut t = Trace::new();
    t.smooth(c);
    let formula =
        g.without_edges(&g.edges_within(&rest)).contract_edges_keeping(&[edge(c, d)], &VertexSet::from([d]))?;
    checked(g, t, formula)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanVariant {
    /// `G/{v0v1, ..., v(k-1)vk}`.
    Contracted,
    /// `(G − E(c, {v1..vk}))/{v0v1, ..., v(k-1)vk}`.
    ContractedWithoutC,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanElimination {
    pub surgery: Surgery,
    pub variant: FanVariant,
    /// The path vertex that carries the merged class.
    pub survivor: Vertex,
}

/// Contracts the path `v0..vk` inside `a v0 .. vk b` while `c` may see any
/// of `v1..vk`.
pub fn eliminate_fanning(g: &Graph, path: &[Vertex], c: Vertex) -> Result<FanElimination> {
    if path.len() < 3 {
        return Err(precondition("fan path needs a, v0 and b"));
    }
    for &v in path.iter().chain([&c]) {
        g.require_vertex(v)?;
    }
    if path.contains(&c) {
        return Err(precondition(format!("{c} lies on the path")));
    }
    if !g.is_induced_path(path) {
        return Err(precondition("a v0 .. vk b is not an induced path"));
    }
    let (a, b) = (path[0], path[path.len() - 1]);
    let vs: Vec<Vertex> = path[1..path.len() - 1].to_vec();
    for x in [a, vs[0], b] {
        if g.has_edge(c, x) {
            return Err(precondition(format!("{c} is adjacent to {x}")));
        }
    }
    let vset: VertexSet = vs.iter().copied().collect();
    let allowed = VertexSet::from([a, b, c]);
    let nbrs = g.neighborhood_of_set(&vset);
    if !nbrs.is_subset(&allowed) {
        return Err(precondition("N(v0..vk) is not contained in {a, b, c}"));
    }
    let mut t = Trace::new();
    // Smooth the vertices of v1..vk that miss c.
    let mut rest = vec![vs[0]];
    for &v in &vs[1..] {
        if g.has_edge(c, v) {
            rest.push(v);
        } else {
            t.smooth(v);
        }
    }
    let k = rest.len() - 1;
    let variant = if k > 0 && k % 3 == 0 { FanVariant::ContractedWithoutC } else { FanVariant::Contracted };
    let mut k_left = k;
    while k_left > 3 {
        let (p, q, r) = (rest[k_left - 2], rest[k_left - 1], rest[k_left]);
        t.lc(q).lc(p).lc(r).del(p).del(q).del(r);
        k_left -= 3;
    }
    match k_left {
        0 => {}
        1 => {
            t.smooth(rest[0]);
        }
        2 => {
            t.lc(rest[1]).lc(rest[2]).del(rest[1]).del(rest[2]);
        }
        _ => {
            t.lc(rest[2]).lc(rest[1]).lc(rest[3]).del(rest[1]).del(rest[2]).del(rest[3]);
        }
    }
    let survivor = *vset
        .difference(&t.deleted())
        .next()
        .ok_or_else(|| consistency("fan elimination deleted every path vertex"))?;
    let base = match variant {
        FanVariant::Contracted => g.clone(),
        FanVariant::ContractedWithoutC => {
            let ec: Vec<Edge> = vs[1..].iter().filter(|&&v| g.has_edge(c, v)).map(|&v| edge(c, v)).collect();
            g.without_edges(&ec)
        }
    };
    let es: Vec<Edge> = vs.windows(2).map(|w| edge(w[0], w[1])).collect();
    let formula = base.contract_edges_keeping(&es, &VertexSet::from([survivor]))?;
    Ok(FanElimination { surgery: checked(g, t, formula)?, variant, survivor })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkingOutput {
    pub graph: Graph,
    pub tree: VertexSet,
    pub leaves: VertexSet,
    pub trace: Trace,
}

fn require_shrinkable(g: &Graph, bt: &BloatedTreeDecomp) -> Result<()> {
    validate_decomp(g, bt)?;
    if let Some(c) = shrinkable_violation(g, bt) {
        return Err(precondition(format!("tree is not shrinkable: {c}")));
    }
    Ok(())
}

/// Turns a shrinkable bloated tree into a shrinking tree with the same
/// leaves: trims clique vertices, eliminates each big clique, then
/// eliminates every fan of attachments sharing an outside neighbour.
pub fn shrinkable_to_shrinking(g: &Graph, bt: &BloatedTreeDecomp) -> Result<ShrinkingOutput> {
    require_shrinkable(g, bt)?;
    let leaves = bt.leaves.clone();
    let mut cur = g.clone();
    let mut tree = bt.tree.clone();
    let mut trace = Trace::new();
    let h = bt.subgraph(g);
    for c in &bt.cliques {
        for &v in c {
            if h.neighbors(v).is_subset(c) {
                trace.del(v);
                cur.remove_vertex_mut(v);
                tree.remove(&v);
            }
        }
    }
    // One elimination per remaining big clique.
    loop {
        let d =
            analyze_bloated_tree(&cur, &tree).map_err(|v| consistency(format!("trimmed tree is not bloated: {v}")))?;
        let Some(clique) = d.cliques.first() else { break };
        let h = cur.induced(&tree);
        let c = *clique
            .iter()
            .find(|&&v| h.neighbors(v).iter().any(|u| !clique.contains(u)))
            .ok_or_else(|| consistency("big clique with no attachment"))?;
        let dv = *h.neighbors(c).iter().find(|u| !clique.contains(u)).expect("found above");
        let s = eliminate_big_clique(&cur, c, dv)?;
        trace.extend(&s.trace);
        cur = s.graph;
        tree.remove(&c);
    }
    // Fans: consecutive attachments with the same outside neighbour along a
    // path of T* − B* − L.
    for run in fan_runs(&cur, &tree, &leaves)? {
        let fan = eliminate_fanning(&cur, &run.path, run.c)?;
        trace.extend(&fan.surgery.trace);
        cur = fan.surgery.graph;
        for v in fan.surgery.trace.deleted() {
            tree.remove(&v);
        }
    }
    let out = ShrinkingOutput { graph: cur, tree, leaves, trace };
    check_interface(g, &bt.tree, &out.graph, &out.tree, &out.leaves)?;
    let d = analyze_bloated_tree(&out.graph, &out.tree)
        .map_err(|v| consistency(format!("output tree is not bloated: {v}")))?;
    if d.leaves != out.leaves {
        return Err(consistency("leaf set changed"));
    }
    if !is_shrinking(&out.graph, &d) {
        return Err(consistency("output tree is not shrinking"));
    }
    Ok(out)
}

struct FanRun {
    path: Vec<Vertex>,
    c: Vertex,
}

fn fan_runs(g: &Graph, tree: &VertexSet, leaves: &VertexSet) -> Result<Vec<FanRun>> {
    let h = g.induced(tree);
    if !h.is_tree() {
        return Err(consistency("tree after clique elimination is not a tree"));
    }
    let branching: VertexSet = h.vertices().filter(|&v| h.degree(v) >= 3).collect();
    let inner: VertexSet = tree.iter().filter(|v| !branching.contains(v) && !leaves.contains(v)).copied().collect();
    let out_nbr = |v: Vertex| -> Option<Vertex> {
        let o = outside(g, tree, v);
        (!o.is_empty()).then(|| *o.iter().next().expect("non-empty"))
    };
    let mut runs = Vec::new();
    for comp in h.induced(&inner).components() {
        // Order the component path from one end and extend by its tree
        // neighbours on both sides.
        let sub = h.induced(&comp);
        let start = *comp
            .iter()
            .find(|&&v| sub.degree(v) <= 1)
            .ok_or_else(|| consistency("component of T − B − L is not a path"))?;
        let mut seq = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = sub.neighbors(cur).iter().find(|&&w| Some(w) != prev).copied();
            match next {
                Some(n) => {
                    prev = Some(cur);
                    cur = n;
                    seq.push(n);
                }
                None => break,
            }
        }
        let ends =
            |v: Vertex, inside: Vertex| h.neighbors(v).iter().find(|w| !comp.contains(w) && **w != inside).copied();
        let mut ext = Vec::new();
        if let Some(x) = ends(seq[0], seq.get(1).copied().unwrap_or(Vertex::MAX)) {
            ext.push(x);
        }
        ext.extend(seq.iter().copied());
        let last = *seq.last().expect("non-empty");
        let before_last = if seq.len() >= 2 { seq[seq.len() - 2] } else { Vertex::MAX };
        if let Some(x) = h
            .neighbors(last)
            .iter()
            .find(|w| !comp.contains(w) && **w != before_last && Some(**w) != ext.first().copied())
            .copied()
        {
            ext.push(x);
        }
        // Group consecutive attachments by outside neighbour.
        let zs: Vec<(usize, Vertex)> = ext
            .iter()
            .enumerate()
            .filter(|(_, &v)| comp.contains(&v))
            .filter_map(|(i, &v)| out_nbr(v).map(|c| (i, c)))
            .collect();
        let mut i = 0;
        while i < zs.len() {
            let mut j = i;
            while j + 1 < zs.len() && zs[j + 1].1 == zs[i].1 {
                j += 1;
            }
            if j > i {
                let (first, last) = (zs[i].0, zs[j].0);
                if first < 2 || last + 1 >= ext.len() {
                    return Err(consistency("fan run too close to the end of its path"));
                }
                runs.push(FanRun { path: ext[first - 2..=last + 1].to_vec(), c: zs[i].1 });
            }
            i = j + 1;
        }
    }
    Ok(runs)
}

/// `G' − (V(T')−L) = G − (V(T)−L)` and `N_{G'}(V(T')−L) ⊆ N_G(V(T)−L)`.
fn check_interface(g: &Graph, t: &VertexSet, g2: &Graph, t2: &VertexSet, leaves: &VertexSet) -> Result<()> {
    let inner: VertexSet = t.difference(leaves).copied().collect();
    let inner2: VertexSet = t2.difference(leaves).copied().collect();
    if g2.without(&inner2) != g.without(&inner) {
        return Err(consistency("graph outside the tree interior changed"));
    }
    if !g2.neighborhood_of_set(&inner2).is_subset(&g.neighborhood_of_set(&inner)) {
        return Err(consistency("tree interior gained a neighbour"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCert {
    pub graph: Graph,
    pub center: Vertex,
    pub leaves: VertexSet,
    /// Edges of `E(V(T)−L, V(G)−V(T))` removed before contracting.
    pub e_star: Vec<Edge>,
    pub trace: Trace,
    /// `(G − E*)/E(T−L)` computed directly, with the centre surviving.
    pub formula: Graph,
}

/// Contracts the interior of a shrinkable bloated tree to a single vertex:
/// the output is `(G − E*)/E(T−L)` for some `E*` of edges from the interior
/// to the outside.
pub fn contract_to_star(g: &Graph, bt: &BloatedTreeDecomp) -> Result<StarCert> {
    require_shrinkable(g, bt)?;
    let leaves = bt.leaves.clone();
    let inner0: VertexSet = bt.tree.difference(&leaves).copied().collect();
    if inner0.is_empty() {
        return Err(precondition("tree has no interior vertex"));
    }
    let s = shrinkable_to_shrinking(g, bt)?;
    let mut cur = s.graph;
    let mut tree = s.tree;
    let mut trace = s.trace;
    loop {
        let inner: VertexSet = tree.difference(&leaves).copied().collect();
        if inner.len() <= 1 {
            break;
        }
        let h = cur.induced(&tree);
        let bz: VertexSet =
            inner.iter().filter(|&&v| h.degree(v) >= 3 || !outside(&cur, &tree, v).is_empty()).copied().collect();
        let plain: Vec<Vertex> = inner.difference(&bz).copied().collect();
        let pick = plain
            .iter()
            .find(|&&v| h.neighbors(v).iter().any(|u| plain.contains(u)))
            .or_else(|| plain.iter().find(|&&v| !h.neighbors(v).is_disjoint(&leaves)))
            .copied();
        if let Some(v) = pick {
            trace::check_smoothable(&cur, v)?;
            trace.smooth(v);
            cur = trace::smooth(&cur, v)?;
            tree.remove(&v);
            continue;
        }
        let v = *plain
            .iter()
            .find(|&&v| h.neighbors(v).len() == 2 && h.neighbors(v).iter().all(|u| bz.contains(u)))
            .ok_or_else(|| consistency("no reducible interior vertex in a shrinking tree"))?;
        let nb: Vec<Vertex> = h.neighbors(v).iter().copied().collect();
        let (u, _w) = (nb[0], nb[1]);
        trace.pivot(u, v).del(u).del(v);
        cur = trace::pivot(&cur, u, v)?.without(&VertexSet::from([u, v]));
        tree.remove(&u);
        tree.remove(&v);
    }
    let center = *tree.difference(&leaves).next().ok_or_else(|| consistency("interior vanished"))?;
    let replay = trace.apply(g)?;
    if replay != cur {
        return Err(consistency("trace replay differs from the tracked graph"));
    }
    // E*: interior-to-outside edges whose outside end is not adjacent to the
    // centre afterwards.
    let e_star: Vec<Edge> = g
        .edges_between(&inner0, &g.vertex_set().difference(&bt.tree).copied().collect())
        .into_iter()
        .filter(|&(a, b)| {
            let x = if inner0.contains(&a) { b } else { a };
            !cur.has_edge(center, x)
        })
        .collect();
    let within = g.edges_within(&inner0);
    let formula = g.without_edges(&e_star).contract_edges_keeping(&within, &VertexSet::from([center]))?;
    if formula != cur {
        return Err(consistency(format!("contracted tree {cur:?} differs from (G − E*)/E(T−L) = {formula:?}")));
    }
    if !leaves.iter().all(|&l| cur.has_edge(center, l)) || !cur.is_stable(&leaves) {
        return Err(consistency("output is not a star on the leaves"));
    }
    let mut star_tree = leaves.clone();
    star_tree.insert(center);
    check_interface(g, &bt.tree, &cur, &star_tree, &leaves)?;
    Ok(StarCert { graph: cur, center, leaves, e_star, trace, formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::vset;
    use crate::oracle::{self, Mode};

    fn decomp(g: &Graph, t: &[Vertex]) -> BloatedTreeDecomp {
        analyze_bloated_tree(g, &vset(t)).unwrap()
    }

    #[test]
    fn classify_examples() {
        // Spider with no attachments.
        let g = families::subdivide(&families::star(3), 2);
        let r = classify_interface(&g, &decomp(&g, &g.vertex_vec())).unwrap();
        assert_eq!(r.classification, Classification::Shrinkable);
        // Path 0..4 whose middle vertex sees two outside vertices.
        let mut g = families::path(5);
        g.add_vertex(5);
        g.add_vertex(6);
        g.add_edge(2, 5);
        g.add_edge(2, 6);
        let bt = decomp(&g, &[0, 1, 2, 3, 4]);
        let r = classify_interface(&g, &bt).unwrap();
        assert!(!r.shrinkable);
        assert!(matches!(shrinkable_violation(&g, &bt), Some(ShrinkClause::OutsideNeighbours { z: 2, count: 2 })));
        // B ∪ Z = {2} is stable, so the path is shrinking.
        assert_eq!(r.classification, Classification::Shrinking);
    }

    #[test]
    fn neither_names_the_clause() {
        // Adjacent attachments with distinct outside neighbours on a triangle.
        let mut g = families::complete(3);
        for (v, x) in [(0, 3), (1, 4)] {
            g.add_vertex(x);
            g.add_edge(v, x);
        }
        g.add_vertex(5);
        g.add_edge(2, 5);
        let bt = decomp(&g, &[0, 1, 2, 5]);
        match classify_interface(&g, &bt).unwrap().classification {
            Classification::Neither(c) => assert_eq!(c.number(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn big_clique_with_pendant() {
        // Triangle {c=0, p=1, q=2} and d=3 on c.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let s = eliminate_big_clique(&g, 0, 3).unwrap();
        assert_eq!(s.graph, Graph::from_parts([1, 2, 3], [(1, 3), (2, 3)]));
        assert!(oracle::verify_witness(&g, &s.graph, &s.trace).unwrap());
    }

    #[test]
    fn k4_block_with_pendant() {
        let mut g = families::complete(4);
        g.add_vertex(4);
        g.add_edge(0, 4);
        let s = eliminate_big_clique(&g, 0, 4).unwrap();
        let expect =
            g.without_edges(&g.edges_within(&vset(&[1, 2, 3]))).contract_edges_keeping(&[(0, 4)], &vset(&[4])).unwrap();
        assert_eq!(s.graph, expect);
        let mut bad = g.clone();
        bad.add_edge(4, 1);
        assert!(eliminate_big_clique(&bad, 0, 4).is_err());
    }

    /// a=0, v0=1, v1..vk = 2..=k+1, b=k+2, c=k+3 adjacent to the listed v's.
    fn fan(k: usize, c_adj: &[usize]) -> (Graph, Vec<Vertex>, Vertex) {
        let n = k + 4;
        let mut g = families::path(k + 3);
        let c = (k + 3) as Vertex;
        g.add_vertex(c);
        for &i in c_adj {
            g.add_edge(c, (i + 1) as Vertex);
        }
        assert_eq!(g.order(), n);
        ((g), (0..(k + 3) as Vertex).collect(), c)
    }

    #[test]
    fn fanning_k2_first_variant() {
        let (g, path, c) = fan(2, &[1, 2]);
        let f = eliminate_fanning(&g, &path, c).unwrap();
        assert_eq!(f.variant, FanVariant::Contracted);
        assert!(f.surgery.graph.has_edge(f.survivor, c));
        assert!(oracle::verify_witness(&g, &f.surgery.graph, &f.surgery.trace).unwrap());
    }

    #[test]
    fn fanning_k3_second_variant() {
        let (g, path, c) = fan(3, &[1, 2, 3]);
        let f = eliminate_fanning(&g, &path, c).unwrap();
        assert_eq!(f.variant, FanVariant::ContractedWithoutC);
        assert!(!f.surgery.graph.has_edge(f.survivor, c));
    }

    #[test]
    fn fanning_k0_identity() {
        let (g, path, c) = fan(0, &[]);
        let f = eliminate_fanning(&g, &path, c).unwrap();
        assert!(f.surgery.trace.is_empty());
        assert_eq!(f.surgery.graph, g);
    }

    #[test]
    fn fanning_all_patterns_up_to_k6() {
        for k in 0..=6usize {
            for mask in 0u32..1 << k {
                let adj: Vec<usize> = (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let (g, path, c) = fan(k, &adj);
                let f = eliminate_fanning(&g, &path, c).unwrap();
                assert_eq!(f.surgery.graph, f.surgery.formula);
            }
        }
    }

    #[test]
    fn fanning_preconditions() {
        let (mut g, path, c) = fan(2, &[1]);
        g.add_edge(c, 1);
        assert!(eliminate_fanning(&g, &path, c).is_err());
    }

    #[test]
    fn star_trivial_cases() {
        // One interior vertex.
        let g = families::star(3);
        let bt = decomp(&g, &[0, 1, 2, 3]);
        let s = contract_to_star(&g, &bt).unwrap();
        assert!(s.trace.is_empty());
        assert_eq!(s.center, 0);
        // Two interior vertices: one smoothing.
        let g = families::path(4);
        let bt = decomp(&g, &[0, 1, 2, 3]);
        let s = contract_to_star(&g, &bt).unwrap();
        assert_eq!(s.trace.len(), 2);
        assert!(oracle::confirm(&g, &s.graph, Mode::VertexMinor).unwrap());
    }

    #[test]
    fn spider_with_attachments_and_fans() {
        // Spider with three legs of length 8 from centre 0; on each leg the
        // vertices at depth 4 and 5 share a private outside vertex.
        let mut g = Graph::empty_on([0]);
        let mut next = 1;
        let mut tree = vec![0];
        for leg in 0..3 {
            let x = 100 + leg;
            g.add_vertex(x);
            let mut prev = 0;
            for depth in 1..=8 {
                g.add_vertex(next);
                g.add_edge(prev, next);
                tree.push(next);
                if depth == 4 || depth == 5 {
                    g.add_edge(next, x);
                }
                prev = next;
                next += 1;
            }
        }
        let bt = decomp(&g, &tree);
        assert!(classify_interface(&g, &bt).unwrap().shrinkable);
        let s = contract_to_star(&g, &bt).unwrap();
        assert_eq!(s.graph, s.formula);
        assert_eq!(s.leaves.len(), 3);
        assert!(s.graph.has_edge(s.center, 100));
    }

    #[test]
    fn triangle_with_legs() {
        let g = Graph::from_edges(9, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 5), (5, 6), (2, 7), (7, 8)]);
        let bt = decomp(&g, &g.vertex_vec());
        assert_eq!(bt.cliques.len(), 1);
        let sh = shrinkable_to_shrinking(&g, &bt).unwrap();
        assert!(sh.graph.induced(&sh.tree).is_tree());
        let s = contract_to_star(&g, &bt).unwrap();
        assert_eq!(s.leaves, vset(&[4, 6, 8]));
        assert!(oracle::verify_witness(&g, &families::star(3), &s.trace).unwrap());
    }
}
