//! Bloated trees: recognition, greedy growth, the distinguished-vertex
//! reduction, the branching DP and leaf-preserving pruning.
//!
//! A bloated tree is a connected graph in which every edge lies in at most
//! one big clique (maximal clique of size at least 3), every vertex of a big
//! `k`-clique has degree at most `k`, and contracting the big cliques leaves
//! a tree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{consistency, precondition, Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::solve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BloatedTreeDecomp {
    #[serde(rename = "T")]
    pub tree: VertexSet,
    /// Vertices of degree at most 1 in `G[T]`.
    #[serde(rename = "L")]
    pub leaves: VertexSet,
    /// Vertices of degree at least 3 in `G[T]` that lie in no triangle.
    #[serde(rename = "B")]
    pub branching: VertexSet,
    pub cliques: Vec<VertexSet>,
    /// Non-leaf vertices with a neighbour outside `T`.
    #[serde(rename = "Z")]
    pub attachments: VertexSet,
}

impl BloatedTreeDecomp {
    pub fn subgraph(&self, g: &Graph) -> Graph {
        g.induced(&self.tree)
    }

    /// Big cliques and branching vertices, each as a vertex set.
    pub fn features(&self) -> Vec<VertexSet> {
        let mut f: Vec<VertexSet> = self.branching.iter().map(|&b| VertexSet::from([b])).collect();
        f.extend(self.cliques.iter().cloned());
        f
    }
}

/// The first clause of the definition that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NotInGraph(Vertex),
    Empty,
    /// An edge lies in two big cliques.
    SharedEdge(Edge),
    /// A vertex of a big `k`-clique has degree above `k`.
    CliqueDegree {
        vertex: Vertex,
        clique_size: usize,
        degree: usize,
    },
    /// Contracting the big cliques does not give a tree.
    ContractionNotTree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInGraph(v) => write!(f, "vertex {v} is not in the graph"),
            Violation::Empty => write!(f, "empty vertex set"),
            Violation::SharedEdge((u, v)) => write!(f, "edge {u}{v} lies in two big cliques"),
            Violation::CliqueDegree { vertex, clique_size, degree } => {
                write!(f, "vertex {vertex} of a big {clique_size}-clique has degree {degree}")
            }
            Violation::ContractionNotTree => write!(f, "contracting the big cliques is not a tree"),
        }
    }
}

/// Decomposes `G[t]` when it is a bloated tree.
pub fn analyze_bloated_tree(g: &Graph, t: &VertexSet) -> std::result::Result<BloatedTreeDecomp, Violation> {
    if let Some(&v) = t.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(Violation::NotInGraph(v));
    }
    if t.is_empty() {
        return Err(Violation::Empty);
    }
    let h = g.induced(t);
    let cliques: Vec<VertexSet> = solve::maximal_cliques(&h).into_iter().filter(|c| c.len() >= 3).collect();
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, c) in cliques.iter().enumerate() {
        for e in h.edges_within(c) {
            if owner.insert(e, i).is_some() {
                return Err(Violation::SharedEdge(e));
            }
        }
    }
    for c in &cliques {
        for &v in c {
            if h.degree(v) > c.len() {
                return Err(Violation::CliqueDegree { vertex: v, clique_size: c.len(), degree: h.degree(v) });
            }
        }
    }
    let es: Vec<Edge> = owner.keys().copied().collect();
    let contracted = h.contract_edges(&es).expect("clique edges are edges");
    if !contracted.is_tree() {
        return Err(Violation::ContractionNotTree);
    }
    Ok(decompose(g, &h, t, cliques))
}

fn decompose(g: &Graph, h: &Graph, t: &VertexSet, cliques: Vec<VertexSet>) -> BloatedTreeDecomp {
    let in_clique: VertexSet = cliques.iter().flatten().copied().collect();
    let leaves: VertexSet = h.vertices().filter(|&v| h.degree(v) <= 1).collect();
    let branching = h.vertices().filter(|&v| h.degree(v) >= 3 && !in_clique.contains(&v)).collect();
    let attachments = t.iter().filter(|v| !leaves.contains(v) && !g.neighbors(**v).is_subset(t)).copied().collect();
    BloatedTreeDecomp { tree: t.clone(), leaves, branching, cliques, attachments }
}

/// Checks a claimed decomposition against a fresh analysis.
pub fn validate_decomp(g: &Graph, bt: &BloatedTreeDecomp) -> Result<()> {
    let fresh = analyze_bloated_tree(g, &bt.tree).map_err(|v| precondition(format!("not a bloated tree: {v}")))?;
    if &fresh != bt {
        return Err(precondition("decomposition sets do not match the host graph"));
    }
    Ok(())
}

/// Greedily grows an inclusion-maximal induced bloated tree from `seed`,
/// trying candidates in ascending label order until none can be added.
pub fn grow_maximal_bloated_tree(g: &Graph, seed: Vertex) -> Result<BloatedTreeDecomp> {
    g.require_vertex(seed)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    grow_from(g, VertexSet::from([seed]))
}

fn grow_from(g: &Graph, start: VertexSet) -> Result<BloatedTreeDecomp> {
    let mut t = start;
    loop {
        let mut changed = false;
        for v in g.vertices() {
            if t.contains(&v) || g.neighbors(v).is_disjoint(&t) {
                continue;
            }
            t.insert(v);
            if analyze_bloated_tree(g, &t).is_ok() {
                changed = true;
            } else {
                t.remove(&v);
            }
        }
        if !changed {
            break;
        }
    }
    // Maximality: no outside vertex can be added.
    for v in g.vertices().filter(|v| !t.contains(v)) {
        let mut t2 = t.clone();
        t2.insert(v);
        if analyze_bloated_tree(g, &t2).is_ok() {
            return Err(consistency(format!("grown tree is not maximal: {v} fits")));
        }
    }
    analyze_bloated_tree(g, &t).map_err(|v| consistency(v.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionStep {
    Delete(Vertex),
    /// `v` removed and its neighbours `a`, `b` joined.
    Smooth {
        v: Vertex,
        a: Vertex,
        b: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub graph: Graph,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Maps an induced bloated tree of the reduced graph back to the
    /// original graph by re-inserting smoothed vertices.
    pub fn lift(&self, t: &VertexSet) -> VertexSet {
        let mut out = t.clone();
        for step in self.steps.iter().rev() {
            if let ReductionStep::Smooth { v, a, b } = *step {
                if out.contains(&a) && out.contains(&b) {
                    out.insert(v);
                }
            }
        }
        out
    }
}

/// Which reduction operation is preferred at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOrder {
    /// Deletions before contractions, smallest label first.
    Canonical,
    /// Contractions before deletions, largest label first.
    Reversed,
}

/// Repeats the two reductions until neither applies: delete a vertex that
/// is outside `s` and not a cut vertex; contract at a vertex outside `s` of
/// degree 2 whose two edges are bridges.
pub fn distinguished_reduction(g: &Graph, s: &VertexSet) -> Result<Reduction> {
    distinguished_reduction_ordered(g, s, ReductionOrder::Canonical)
}

pub fn distinguished_reduction_ordered(g: &Graph, s: &VertexSet, order: ReductionOrder) -> Result<Reduction> {
    if s.is_empty() {
        return Err(precondition("distinguished set is empty"));
    }
    for &v in s {
        g.require_vertex(v)?;
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        let (cuts, bridges) = solve::cut_structure(&cur)?;
        let deletable: Vec<Vertex> = cur.vertices().filter(|v| !s.contains(v) && !cuts.contains(v)).collect();
        let contractible: Vec<(Vertex, Vertex, Vertex)> = cur
            .vertices()
            .filter(|v| !s.contains(v) && cur.degree(*v) == 2)
            .filter_map(|v| {
                let n: Vec<Vertex> = cur.neighbors(v).iter().copied().collect();
                let both =
                    bridges.binary_search(&edge(v, n[0])).is_ok() && bridges.binary_search(&edge(v, n[1])).is_ok();
                both.then_some((v, n[0], n[1]))
            })
            .collect();
        let step = match order {
            ReductionOrder::Canonical => deletable
                .first()
                .map(|&v| ReductionStep::Delete(v))
                .or_else(|| contractible.first().map(|&(v, a, b)| ReductionStep::Smooth { v, a, b })),
            ReductionOrder::Reversed => contractible
                .last()
                .map(|&(v, a, b)| ReductionStep::Smooth { v, a, b })
                .or_else(|| deletable.last().map(|&v| ReductionStep::Delete(v))),
        };
        let Some(step) = step else { break };
        match step {
            ReductionStep::Delete(v) => cur.remove_vertex_mut(v),
            ReductionStep::Smooth { v, a, b } => {
                cur.remove_vertex_mut(v);
                cur.add_edge(a, b);
            }
        }
        steps.push(step);
    }
    Ok(Reduction { graph: cur, steps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedTree {
    pub decomp: BloatedTreeDecomp,
    /// `|V(T')|` for the maximal tree found in the reduced graph.
    pub reduced_size: usize,
    /// `|V(T') ∩ S|`.
    pub distinguished: usize,
    /// Whether `16 |V(T') ∩ S| >= |V(T')|`.
    pub ratio_holds: bool,
}

/// Induced bloated tree of `g` containing many vertices of `s`: reduce,
/// grow a maximal tree from each vertex of `s`, keep the best, lift back.
pub fn find_distinguished_bloated_tree(g: &Graph, s: &VertexSet) -> Result<DistinguishedTree> {
    let red = distinguished_reduction(g, s)?;
    let mut best: Option<BloatedTreeDecomp> = None;
    for &seed in s {
        let t = grow_from(&red.graph, VertexSet::from([seed]))?;
        let count = t.tree.intersection(s).count();
        if best.as_ref().is_none_or(|b| count > b.tree.intersection(s).count()) {
            best = Some(t);
        }
    }
    let reduced = best.expect("s is non-empty");
    let distinguished = reduced.tree.intersection(s).count();
    let lifted = red.lift(&reduced.tree);
    let decomp =
        analyze_bloated_tree(g, &lifted).map_err(|v| consistency(format!("lifted tree is not bloated: {v}")))?;
    Ok(DistinguishedTree {
        decomp,
        reduced_size: reduced.tree.len(),
        distinguished,
        ratio_holds: 16 * distinguished >= reduced.tree.len(),
    })
}

/// Per-node record of the branching DP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpNode {
    pub vertex: Vertex,
    pub f0: usize,
    pub f1: usize,
    /// Weighted leaves among the vertex and its descendants.
    pub leaves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingResult {
    pub subtree: VertexSet,
    pub root: Option<Vertex>,
    /// Counted leaves of the input inside the subtree.
    pub leaves: usize,
    pub total_leaves: usize,
    pub certificate: Vec<DpNode>,
}

/// Subtree of a tree with no two adjacent branching vertices containing at
/// least `⌈√ℓ⌉` of its `ℓ` leaves.
pub fn branching_subtree(t: &Graph) -> Result<BranchingResult> {
    let leaves: VertexSet = t.vertices().filter(|&v| t.degree(v) <= 1).collect();
    branching_subtree_weighted(t, &leaves)
}

/// As [`branching_subtree`], counting only the leaves in `weighted`.
pub fn branching_subtree_weighted(t: &Graph, weighted: &VertexSet) -> Result<BranchingResult> {
    if !t.is_tree() {
        return Err(precondition("branching DP needs a tree"));
    }
    let is_counted = |v: Vertex| t.degree(v) <= 1 && weighted.contains(&v);
    let total = t.vertices().filter(|&v| is_counted(v)).count();
    let Some(root) = t.vertices().find(|&v| t.degree(v) >= 2) else {
        return Ok(BranchingResult {
            subtree: t.vertex_set(),
            root: None,
            leaves: total,
            total_leaves: total,
            certificate: t
                .vertices()
                .map(|v| {
                    let w = usize::from(is_counted(v));
                    DpNode { vertex: v, f0: w, f1: w, leaves: w }
                })
                .collect(),
        });
    };
    // Children lists from a BFS rooted at `root`; post-order via reversed BFS.
    let mut children: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    let mut order = vec![root];
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let kids: Vec<Vertex> = t.neighbors(v).iter().filter(|&&u| parent.get(&v) != Some(&u)).copied().collect();
        for &u in &kids {
            parent.insert(u, v);
            order.push(u);
        }
        children.insert(v, kids);
        i += 1;
    }
    let mut f0: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut f1: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut best_child: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut ell: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in order.iter().rev() {
        let kids = &children[&v];
        if kids.is_empty() {
            let w = usize::from(is_counted(v));
            f0.insert(v, w);
            f1.insert(v, w);
            ell.insert(v, w);
            continue;
        }
        f0.insert(v, kids.iter().map(|c| f1[c]).sum());
        let bc = *kids.iter().max_by_key(|&&c| (f0[&c], std::cmp::Reverse(c))).expect("non-empty");
        best_child.insert(v, bc);
        f1.insert(v, f0[&bc]);
        ell.insert(v, kids.iter().map(|c| ell[c]).sum());
    }
    // Rebuild: A0(v) = v + A1(children); A1(v) = v + A0(best child).
    let mut subtree = VertexSet::new();
    let use_f0 = f0[&root] >= f1[&root];
    let mut stack = vec![(root, use_f0)];
    while let Some((v, zero)) = stack.pop() {
        subtree.insert(v);
        if zero {
            for &c in &children[&v] {
                stack.push((c, false));
            }
        } else if let Some(&c) = best_child.get(&v) {
            stack.push((c, true));
        }
    }
    let leaves = subtree.iter().filter(|&&v| is_counted(v)).count();
    let certificate = order.iter().map(|&v| DpNode { vertex: v, f0: f0[&v], f1: f1[&v], leaves: ell[&v] }).collect();
    Ok(BranchingResult { subtree, root: Some(root), leaves, total_leaves: total, certificate })
}

/// True when no two adjacent vertices both have degree at least 3.
pub fn has_adjacent_branching(t: &Graph) -> bool {
    t.edges().iter().any(|&(u, v)| t.degree(u) >= 3 && t.degree(v) >= 3)
}

/// Smallest `k` with `k^p >= n`, i.e. `⌈n^{1/p}⌉` computed exactly.
pub fn ceil_root(n: usize, p: u32) -> usize {
    let mut k = 0usize;
    while (k as u128).pow(p) < n as u128 {
        k += 1;
    }
    k
}

/// Shortest distance between distinct features (branching vertices and big
/// cliques) inside `G[T]`, or `None` when there are fewer than two.
pub fn min_feature_spacing(g: &Graph, bt: &BloatedTreeDecomp) -> Option<usize> {
    let h = bt.subgraph(g);
    let features = bt.features();
    let mut best: Option<usize> = None;
    for (i, a) in features.iter().enumerate() {
        let dist = h.distances_from_set(a);
        for b in &features[i + 1..] {
            let d = b.iter().filter_map(|v| dist.get(v)).min().copied().unwrap_or(usize::MAX);
            best = Some(best.map_or(d, |x| x.min(d)));
        }
    }
    best
}

fn trim_unweighted_leaves(t: &Graph, keep: &VertexSet, weighted: &VertexSet) -> VertexSet {
    let mut cur = keep.clone();
    loop {
        let h = t.induced(&cur);
        if h.order() <= 1 {
            return cur;
        }
        let drop: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) <= 1 && !weighted.contains(&v)).collect();
        if drop.is_empty() {
            return cur;
        }
        for v in drop {
            cur.remove(&v);
        }
        if cur.is_empty() {
            return cur;
        }
    }
}

/// Induced sub-bloated-tree whose branching vertices and big cliques are
/// pairwise at distance at least 4 and which keeps at least `⌈ℓ^{1/4}⌉` of
/// the `ℓ` leaves. Output leaves are leaves of the input.
pub fn prune_bloated_tree(g: &Graph, bt: &BloatedTreeDecomp) -> Result<BloatedTreeDecomp> {
    validate_decomp(g, bt)?;
    let h = bt.subgraph(g);
    let weighted = bt.leaves.clone();
    // Drop clique vertices without neighbours outside their clique.
    let mut keep = bt.tree.clone();
    let mut cliques: Vec<VertexSet> = Vec::new();
    for c in &bt.cliques {
        let attached: VertexSet =
            c.iter().filter(|&&v| h.neighbors(v).iter().any(|u| !c.contains(u))).copied().collect();
        if attached.is_empty() {
            // The whole tree is this clique.
            return Ok(bt.clone());
        }
        for v in c.difference(&attached) {
            keep.remove(v);
        }
        cliques.push(attached);
    }
    let h = h.induced(&keep);
    // Contract every clique to its minimum label to obtain a tree.
    let mut rep: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for c in &cliques {
        let r = *c.iter().next().expect("non-empty");
        for &v in c {
            rep.insert(v, r);
        }
    }
    let r = |v: Vertex| rep.get(&v).copied().unwrap_or(v);
    let mut star = Graph::empty_on(h.vertices().map(r));
    for (u, v) in h.edges() {
        if r(u) != r(v) {
            star.add_edge(r(u), r(v));
        }
    }
    if !star.is_tree() {
        return Err(consistency("clique contraction is not a tree"));
    }
    // First round.
    let s1 = branching_subtree_weighted(&star, &weighted)?.subtree;
    let s1 = trim_unweighted_leaves(&star, &s1, &weighted);
    let t1 = star.induced(&s1);
    // Suppress degree-2 vertices, remembering the paths.
    let (t2, paths) = suppress_degree_two(&t1);
    let s2 = branching_subtree_weighted(&t2, &weighted)?.subtree;
    let s2 = trim_unweighted_leaves(&t2, &s2, &weighted);
    let mut kept_star = s2.clone();
    for (&(a, b), inner) in &paths {
        if s2.contains(&a) && s2.contains(&b) {
            kept_star.extend(inner.iter().copied());
        }
    }
    // Un-contract: keep clique vertices attached to kept neighbours.
    let mut out = VertexSet::new();
    for &v in &kept_star {
        if let Some(c) = cliques.iter().find(|c| c.contains(&v)) {
            for &u in c {
                let attached_kept = h.neighbors(u).iter().any(|w| !c.contains(w) && kept_star.contains(&r(*w)));
                if attached_kept {
                    out.insert(u);
                }
            }
            if kept_star.len() == 1 {
                out.extend(c.iter().copied());
            }
        } else {
            out.insert(v);
        }
    }
    let result = analyze_bloated_tree(g, &out).map_err(|v| consistency(format!("pruned tree is not bloated: {v}")))?;
    if let Some(d) = min_feature_spacing(g, &result) {
        if d < 4 {
            return Err(consistency(format!("pruned tree has features at distance {d}")));
        }
    }
    Ok(result)
}

/// Replaces maximal paths through degree-2 vertices by single edges.
fn suppress_degree_two(t: &Graph) -> (Graph, BTreeMap<Edge, Vec<Vertex>>) {
    let keep: VertexSet = t.vertices().filter(|&v| t.degree(v) != 2).collect();
    let mut paths = BTreeMap::new();
    if keep.is_empty() {
        // A cycle cannot occur in a tree; an empty tree has nothing to do.
        return (t.clone(), paths);
    }
    let mut out = Graph::empty_on(keep.iter().copied());
    for &a in &keep {
        for &first in t.neighbors(a) {
            let mut prev = a;
            let mut cur = first;
            let mut inner = Vec::new();
            while !keep.contains(&cur) {
                inner.push(cur);
                let next = *t.neighbors(cur).iter().find(|&&w| w != prev).expect("degree-2 vertex");
                prev = cur;
                cur = next;
            }
            if a < cur {
                out.add_edge(a, cur);
                paths.insert((a, cur), inner);
            }
        }
    }
    (out, paths)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpreadOutcome {
    Found(BloatedTreeDecomp),
    /// The pipeline produced fewer than the requested leaves.
    Insufficient {
        found: usize,
        requested: usize,
    },
}

/// Induced bloated tree with at least `ell` leaves, all in `s`, and
/// features pairwise at distance at least 4.
pub fn find_spread_bloated_tree(g: &Graph, s: &VertexSet, ell: usize) -> Result<SpreadOutcome> {
    for &v in s {
        g.require_vertex(v)?;
        if g.degree(v) != 1 {
            return Err(precondition(format!("distinguished vertex {v} has degree {}, not 1", g.degree(v))));
        }
    }
    let dt = find_distinguished_bloated_tree(g, s)?;
    let h = dt.decomp.subgraph(g);
    let t = trim_unweighted_leaves(&h, &dt.decomp.tree, s);
    let bt = analyze_bloated_tree(g, &t).map_err(|v| consistency(format!("trimmed tree is not bloated: {v}")))?;
    let pruned = prune_bloated_tree(g, &bt)?;
    let found = pruned.leaves.iter().filter(|v| s.contains(v)).count();
    if found < ell || !pruned.leaves.is_subset(s) {
        return Ok(SpreadOutcome::Insufficient { found, requested: ell });
    }
    Ok(SpreadOutcome::Found(pruned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::vset;

    #[test]
    fn analyze_examples() {
        let k3 = families::complete(3);
        let d = analyze_bloated_tree(&k3, &k3.vertex_set()).unwrap();
        assert_eq!(d.cliques.len(), 1);
        assert!(d.leaves.is_empty());
        let p5 = families::path(5);
        let d = analyze_bloated_tree(&p5, &p5.vertex_set()).unwrap();
        assert_eq!(d.leaves, vset(&[0, 4]));
        assert!(d.branching.is_empty());
        let c4 = families::cycle(4);
        assert_eq!(analyze_bloated_tree(&c4, &c4.vertex_set()), Err(Violation::ContractionNotTree));
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert!(matches!(
            analyze_bloated_tree(&bowtie, &bowtie.vertex_set()),
            Err(Violation::CliqueDegree { vertex: 2, .. })
        ));
    }

    #[test]
    fn attachments_are_non_leaves_with_outside_neighbours() {
        let g = families::path(5);
        let d = analyze_bloated_tree(&g, &vset(&[0, 1, 2])).unwrap();
        assert_eq!(d.leaves, vset(&[0, 2]));
        assert!(d.attachments.is_empty());
        let d = analyze_bloated_tree(&g, &vset(&[0, 1, 2, 3])).unwrap();
        assert!(d.attachments.is_empty());
        let g = families::star(3);
        let d = analyze_bloated_tree(&g, &vset(&[0, 1, 2])).unwrap();
        assert_eq!(d.attachments, vset(&[0]));
    }

    #[test]
    fn grow_examples() {
        let t = families::subdivide(&families::star(4), 1);
        assert_eq!(grow_maximal_bloated_tree(&t, 3).unwrap().tree, t.vertex_set());
        let k4 = families::complete(4);
        assert_eq!(grow_maximal_bloated_tree(&k4, 2).unwrap().tree, k4.vertex_set());
        let c5 = families::cycle(5);
        assert_eq!(grow_maximal_bloated_tree(&c5, 0).unwrap().tree, vset(&[0, 1, 2, 3]));
        assert_eq!(grow_maximal_bloated_tree(&Graph::empty_on(0..2), 0), Err(Error::Disconnected));
    }

    #[test]
    fn reduction_examples() {
        let p5 = families::path(5);
        let r = distinguished_reduction(&p5, &vset(&[0, 4])).unwrap();
        assert_eq!(r.graph, Graph::from_parts([0, 4], [(0, 4)]));
        let c4 = families::cycle(4);
        let r = distinguished_reduction(&c4, &vset(&[2])).unwrap();
        assert_eq!(r.graph, Graph::empty_on([2]));
        let star = families::star(4);
        let r = distinguished_reduction(&star, &vset(&[1, 2, 3, 4])).unwrap();
        assert_eq!(r.graph, star);
        assert!(r.steps.is_empty());
    }

    #[test]
    fn distinguished_examples() {
        let p = families::path(6);
        let d = find_distinguished_bloated_tree(&p, &vset(&[0, 5])).unwrap();
        assert_eq!(d.decomp.tree, p.vertex_set());
        let spider = families::subdivide(&families::star(5), 2);
        let tips = vset(&[1, 2, 3, 4, 5]);
        let d = find_distinguished_bloated_tree(&spider, &tips).unwrap();
        assert!(d.decomp.tree.intersection(&tips).count() >= 1);
        assert!(d.ratio_holds);
        let k4 = families::complete(4);
        let d = find_distinguished_bloated_tree(&k4, &k4.vertex_set()).unwrap();
        assert_eq!(d.decomp.tree, k4.vertex_set());
        assert_eq!(d.distinguished, 4);
    }

    fn complete_binary_tree(depth: u32) -> Graph {
        let n = (1usize << (depth + 1)) - 1;
        let es: Vec<Edge> = (1..n as Vertex).map(|v| ((v - 1) / 2, v)).collect();
        Graph::from_edges(n, &es)
    }

    #[test]
    fn branching_examples() {
        let s = families::star(9);
        let r = branching_subtree(&s).unwrap();
        assert_eq!(r.subtree, s.vertex_set());
        assert_eq!(r.leaves, 9);
        let b = complete_binary_tree(3);
        let r = branching_subtree(&b).unwrap();
        assert_eq!(r.total_leaves, 8);
        assert!(r.leaves >= 3);
        assert!(!has_adjacent_branching(&b.induced(&r.subtree)));
        for node in &r.certificate {
            assert!(node.f0 * node.f1 >= node.leaves);
        }
        let p = families::path(6);
        let r = branching_subtree(&p).unwrap();
        assert_eq!(r.subtree, p.vertex_set());
        assert_eq!(r.leaves, 2);
        assert!(branching_subtree(&families::cycle(4)).is_err());
    }

    #[test]
    fn ceil_roots() {
        assert_eq!(ceil_root(8, 2), 3);
        assert_eq!(ceil_root(9, 2), 3);
        assert_eq!(ceil_root(16, 4), 2);
        assert_eq!(ceil_root(17, 4), 3);
        assert_eq!(ceil_root(1, 4), 1);
        assert_eq!(ceil_root(0, 4), 0);
    }

    #[test]
    fn prune_star_is_identity() {
        let s = families::star(5);
        let bt = analyze_bloated_tree(&s, &s.vertex_set()).unwrap();
        assert_eq!(prune_bloated_tree(&s, &bt).unwrap(), bt);
    }

    #[test]
    fn prune_tree_with_adjacent_branching() {
        // Two adjacent centres, each with 8 leaves.
        let mut g = Graph::from_edges(2, &[(0, 1)]);
        for i in 0..16 {
            let v = 2 + i;
            g.add_vertex(v);
            g.add_edge(if i < 8 { 0 } else { 1 }, v);
        }
        let bt = analyze_bloated_tree(&g, &g.vertex_set()).unwrap();
        let p = prune_bloated_tree(&g, &bt).unwrap();
        assert!(p.leaves.len() >= 2);
        assert!(p.leaves.is_subset(&bt.leaves));
        assert!(min_feature_spacing(&g, &p).is_none_or(|d| d >= 4));
    }

    #[test]
    fn prune_triangle_with_pendant_paths() {
        let mut g = families::complete(3);
        let mut next = 3;
        for c in 0..3 {
            let mut prev = c;
            for _ in 0..5 {
                g.add_vertex(next);
                g.add_edge(prev, next);
                prev = next;
                next += 1;
            }
        }
        let bt = analyze_bloated_tree(&g, &g.vertex_set()).unwrap();
        assert_eq!(bt.leaves.len(), 3);
        let p = prune_bloated_tree(&g, &bt).unwrap();
        assert!(p.leaves.is_subset(&bt.leaves));
        assert!(p.leaves.len() >= ceil_root(3, 4));
        assert!(min_feature_spacing(&g, &p).is_none_or(|d| d >= 4));
    }

    #[test]
    fn spread_examples() {
        let g = families::subdivide(&families::star(16), 2);
        let tips: VertexSet = (1..=16).collect();
        match find_spread_bloated_tree(&g, &tips, 2).unwrap() {
            SpreadOutcome::Found(bt) => {
                assert!(bt.leaves.len() >= 2 && bt.leaves.is_subset(&tips));
            }
            other => panic!("{other:?}"),
        }
        let k2 = families::complete(2);
        assert!(matches!(
            find_spread_bloated_tree(&k2, &vset(&[0, 1]), 3).unwrap(),
            SpreadOutcome::Insufficient { .. }
        ));
        assert!(find_spread_bloated_tree(&families::path(3), &vset(&[1]), 1).is_err());
    }
}
