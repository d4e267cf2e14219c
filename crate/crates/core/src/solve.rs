//! Exact solvers: chromatic number, clique number, isomorphism, canonical
//! forms, cut vertices and bridges.
//!
//! All searches run on 64-bit adjacency masks, so every solver here is capped
//! at 64 vertices at most; the public limits are tighter.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::graph6;

/// Default vertex limit for a general exact chromatic number.
pub const CHI_LIMIT: usize = 14;
/// Vertex limit when only deciding `χ <= BOUNDED_TARGET`.
pub const CHI_BOUNDED_LIMIT: usize = 40;
pub const BOUNDED_TARGET: usize = 3;
pub const CLIQUE_LIMIT: usize = 64;
pub const ISO_LIMIT: usize = 12;
pub const CANON_LIMIT: usize = 64;

/// Index-based view of a graph with bitmask adjacency.
pub(crate) struct Dense {
    pub labels: Vec<Vertex>,
    pub adj: Vec<u64>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        assert!(g.order() <= 64, "dense view needs at most 64 vertices");
        let labels = g.vertex_vec();
        let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = labels.iter().map(|&v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << index[u])).collect();
        Dense { labels, adj }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub chi: usize,
    pub colors: BTreeMap<Vertex, usize>,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| matches!((self.colors.get(&u), self.colors.get(&v)), (Some(a), Some(b)) if a != b))
            && g.vertices().all(|v| self.colors.get(&v).is_some_and(|&c| c < self.chi.max(1)))
    }
}

fn try_color(d: &Dense, k: usize) -> Option<Vec<usize>> {
    let n = d.n();
    let mut colors = vec![usize::MAX; n];
    // DSATUR backtracking: always branch on the most saturated vertex.
    fn rec(d: &Dense, k: usize, colors: &mut Vec<usize>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let n = d.n();
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let mut used = 0u64;
            let mut deg = 0;
            for u in 0..n {
                if d.adj[v] >> u & 1 == 1 {
                    if colors[u] != usize::MAX {
                        used |= 1 << colors[u];
                    } else {
                        deg += 1;
                    }
                }
            }
            let key = (used.count_ones() as usize, deg);
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        let v = best;
        let mut used = 0u64;
        let mut max_used = 0;
        for u in 0..n {
            if d.adj[v] >> u & 1 == 1 && colors[u] != usize::MAX {
                used |= 1 << colors[u];
            }
            if colors[u] != usize::MAX {
                max_used = max_used.max(colors[u] + 1);
            }
        }
        // Colours beyond the first unused one are symmetric.
        for c in 0..k.min(max_used + 1) {
            if used >> c & 1 == 0 {
                colors[v] = c;
                if rec(d, k, colors, left - 1) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    if rec(d, k, &mut colors, n) {
        Some(colors)
    } else {
        None
    }
}

fn coloring_from(d: &Dense, k: usize, colors: Vec<usize>) -> Coloring {
    Coloring { chi: k, colors: d.labels.iter().copied().zip(colors).collect() }
}

/// Exact chromatic number with the default limit.
pub fn chromatic_number(g: &Graph) -> Result<Coloring> {
    chromatic_number_with_limit(g, CHI_LIMIT)
}

pub fn chromatic_number_with_limit(g: &Graph, limit: usize) -> Result<Coloring> {
    if g.order() > limit.min(64) {
        return Err(Error::SolverLimit { what: "chromatic number", size: g.order(), limit });
    }
    let d = Dense::new(g);
    if d.n() == 0 {
        return Ok(Coloring { chi: 0, colors: BTreeMap::new() });
    }
    let mut k = if g.size() == 0 { 1 } else { 2 };
    loop {
        if let Some(c) = try_color(&d, k) {
            return Ok(coloring_from(&d, k, c));
        }
        k += 1;
    }
}

/// Decides `χ(g) <= k` for `k <= BOUNDED_TARGET` on up to
/// `CHI_BOUNDED_LIMIT` vertices. Returns the optimal colouring when it exists.
pub fn chromatic_at_most(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    if k > BOUNDED_TARGET {
        return chromatic_number(g).map(|c| (c.chi <= k).then_some(c));
    }
    if g.order() > CHI_BOUNDED_LIMIT {
        return Err(Error::SolverLimit { what: "bounded chromatic test", size: g.order(), limit: CHI_BOUNDED_LIMIT });
    }
    let d = Dense::new(g);
    for j in 0..=k {
        if j == 0 && d.n() > 0 {
            continue;
        }
        if let Some(c) = try_color(&d, j) {
            return Ok(Some(coloring_from(&d, j, c)));
        }
    }
    Ok(None)
}

/// Two-colouring by BFS, `None` when an odd cycle exists.
pub fn bipartition(g: &Graph) -> Option<BTreeMap<Vertex, usize>> {
    let mut side = BTreeMap::new();
    for comp in g.components() {
        let root = *comp.iter().next().expect("non-empty component");
        for (v, d) in g.distances_from(root) {
            side.insert(v, d % 2);
        }
    }
    g.edges().iter().all(|(u, v)| side[u] != side[v]).then_some(side)
}

/// Greedy DSATUR colour count (an upper bound on χ).
pub fn greedy_colors(g: &Graph) -> usize {
    let mut colors: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut left: VertexSet = g.vertex_set();
    while !left.is_empty() {
        let v = *left
            .iter()
            .max_by_key(|&&v| {
                let sat: BTreeSet<usize> = g.neighbors(v).iter().filter_map(|u| colors.get(u).copied()).collect();
                (sat.len(), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("non-empty");
        let used: BTreeSet<usize> = g.neighbors(v).iter().filter_map(|u| colors.get(u).copied()).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
        colors.insert(v, c);
        left.remove(&v);
    }
    colors.values().map(|c| c + 1).max().unwrap_or(0)
}

/// Bounds on χ usable at any size; `lower == upper` means exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChiEstimate {
    pub lower: usize,
    pub upper: usize,
}

impl ChiEstimate {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// χ bounds: exact within the solver limits, otherwise structural bounds
/// (edgeless, bipartite, odd cycle, a greedy clique) against a greedy upper
/// bound.
pub fn chi_estimate(g: &Graph) -> ChiEstimate {
    if g.order() <= CHI_LIMIT {
        let c = chromatic_number(g).expect("within limit").chi;
        return ChiEstimate { lower: c, upper: c };
    }
    let upper = greedy_colors(g);
    let omega = greedy_clique(g).len();
    if g.order() <= CHI_BOUNDED_LIMIT {
        if let Ok(Some(c)) = chromatic_at_most(g, BOUNDED_TARGET) {
            return ChiEstimate { lower: c.chi, upper: c.chi };
        }
        return ChiEstimate { lower: (BOUNDED_TARGET + 1).max(omega).min(upper), upper };
    }
    if g.size() == 0 {
        return ChiEstimate { lower: 1, upper: 1 };
    }
    if bipartition(g).is_some() {
        return ChiEstimate { lower: 2, upper: 2 };
    }
    ChiEstimate { lower: 3.max(omega).min(upper), upper }
}

/// A maximal clique grown greedily from each vertex; the largest found.
pub fn greedy_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::new();
    for v in g.vertices() {
        if g.degree(v) < best.len() {
            continue;
        }
        let mut clique = VertexSet::from([v]);
        let mut cand: VertexSet = g.neighbors(v).clone();
        while !cand.is_empty() {
            let u = *cand
                .iter()
                .max_by_key(|&&u| (g.neighbors(u).intersection(&cand).count(), std::cmp::Reverse(u)))
                .expect("non-empty");
            clique.insert(u);
            cand = cand.intersection(g.neighbors(u)).copied().collect();
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clique {
    pub omega: usize,
    pub members: VertexSet,
}

pub fn clique_number(g: &Graph) -> Result<Clique> {
    if g.order() > CLIQUE_LIMIT {
        return Err(Error::SolverLimit { what: "clique number", size: g.order(), limit: CLIQUE_LIMIT });
    }
    let d = Dense::new(g);
    let mut best = 0u64;
    fn expand(d: &Dense, r: u64, mut p: u64, best: &mut u64) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        while p != 0 {
            if r.count_ones() + p.count_ones() <= best.count_ones() {
                return;
            }
            let v = p.trailing_zeros() as usize;
            p &= !(1 << v);
            expand(d, r | 1 << v, p & d.adj[v], best);
        }
    }
    let all = if d.n() == 64 { u64::MAX } else { (1u64 << d.n()) - 1 };
    expand(&d, 0, all, &mut best);
    let members: VertexSet = (0..d.n()).filter(|&i| best >> i & 1 == 1).map(|i| d.labels[i]).collect();
    Ok(Clique { omega: members.len(), members })
}

/// All maximal cliques (Bron–Kerbosch with pivoting), any size.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn bk(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = *p.union(&x).max_by_key(|&&u| g.neighbors(u).intersection(&p).count()).expect("p or x non-empty");
        let cands: Vec<Vertex> = p.iter().filter(|v| !g.neighbors(pivot).contains(v)).copied().collect();
        for v in cands {
            let nv = g.neighbors(v);
            let mut r2 = r.clone();
            r2.insert(v);
            bk(g, r2, p.intersection(nv).copied().collect(), x.intersection(nv).copied().collect(), out);
            p.remove(&v);
            x.insert(v);
        }
    }
    if g.order() > 0 {
        bk(g, VertexSet::new(), g.vertex_set(), VertexSet::new(), &mut out);
    }
    out.sort();
    out
}

/// Isomorphism test by backtracking with degree pruning; returns a map from
/// `g`'s labels to `h`'s labels.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<BTreeMap<Vertex, Vertex>>> {
    for x in [g, h] {
        if x.order() > ISO_LIMIT {
            return Err(Error::SolverLimit { what: "isomorphism", size: x.order(), limit: ISO_LIMIT });
        }
    }
    Ok(isomorphism_unchecked(g, h))
}

pub(crate) fn isomorphism_unchecked(g: &Graph, h: &Graph) -> Option<BTreeMap<Vertex, Vertex>> {
    if g.order() != h.order() || g.size() != h.size() {
        return None;
    }
    let dg = Dense::new(g);
    let dh = Dense::new(h);
    let n = dg.n();
    let degs = |d: &Dense| {
        let mut v: Vec<u32> = d.adj.iter().map(|a| a.count_ones()).collect();
        v.sort_unstable();
        v
    };
    if degs(&dg) != degs(&dh) {
        return None;
    }
    // Order g's vertices so that each is adjacent to earlier ones where possible.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((dg.adj[v] & placed).count_ones(), dg.adj[v].count_ones(), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        order.push(next);
        placed |= 1 << next;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn rec(k: usize, order: &[usize], dg: &Dense, dh: &Dense, map: &mut Vec<usize>, used: &mut u64) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..dh.n() {
            if *used >> w & 1 == 1 || dg.adj[v].count_ones() != dh.adj[w].count_ones() {
                continue;
            }
            let ok = order[..k].iter().all(|&u| (dg.adj[v] >> u & 1) == (dh.adj[w] >> map[u] & 1));
            if ok {
                map[v] = w;
                *used |= 1 << w;
                if rec(k + 1, order, dg, dh, map, used) {
                    return true;
                }
                *used &= !(1 << w);
                map[v] = usize::MAX;
            }
        }
        false
    }
    if !rec(0, &order, &dg, &dh, &mut map, &mut used) {
        return None;
    }
    Some((0..n).map(|i| (dg.labels[i], dh.labels[map[i]])).collect())
}

/// Equitable refinement of an ordered partition of vertex indices.
fn refine(d: &Dense, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> =
                cell.iter().map(|&v| (masks.iter().map(|m| (d.adj[v] & m).count_ones()).collect(), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            if !next.is_empty() && !keyed.is_empty() && next.last().map(|c| c.len()) != Some(cell.len()) {
                changed = true;
            }
        }
        if !changed {
            return next;
        }
        cells = next;
    }
}

/// Canonical vertex order: the refinement-individualisation leaf whose
/// graph6 string is smallest. Twin vertices are explored once.
pub fn canonical_order(g: &Graph) -> Result<Vec<Vertex>> {
    if g.order() > CANON_LIMIT {
        return Err(Error::SolverLimit { what: "canonical form", size: g.order(), limit: CANON_LIMIT });
    }
    let d = Dense::new(g);
    let n = d.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut best: Option<(String, Vec<Vertex>)> = None;
    fn search(d: &Dense, g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(String, Vec<Vertex>)>) {
        let cells = refine(d, cells);
        let target =
            cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(ti) = target else {
            let order: Vec<Vertex> = cells.iter().map(|c| d.labels[c[0]]).collect();
            let s = graph6::encode_with_order(g, &order);
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                *best = Some((s, order));
            }
            return;
        };
        let cell = cells[ti].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            let twin = tried.iter().any(|&u| {
                let mu = !(1u64 << u | 1u64 << v);
                d.adj[u] & mu == d.adj[v] & mu
            });
            if twin {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..ti]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[ti + 1..]);
            search(d, g, next, best);
        }
    }
    search(&d, g, vec![(0..n).collect()], &mut best);
    Ok(best.expect("at least one leaf").1)
}

/// Canonical graph6 string: equal exactly for isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Result<String> {
    let order = canonical_order(g)?;
    Ok(graph6::encode_with_order(g, &order))
}

/// Cut vertices and bridges of a connected graph (Tarjan low-link).
pub fn cut_structure(g: &Graph) -> Result<(VertexSet, Vec<Edge>)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut disc: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut low: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut cuts = VertexSet::new();
    let mut bridges = Vec::new();
    let Some(root) = g.vertices().next() else {
        return Ok((cuts, bridges));
    };
    // Iterative DFS: (vertex, parent, neighbour iterator position)
    let mut stack: Vec<(Vertex, Option<Vertex>, Vec<Vertex>, usize)> = Vec::new();
    let mut time = 0;
    disc.insert(root, time);
    low.insert(root, time);
    time += 1;
    stack.push((root, None, g.neighbors(root).iter().copied().collect(), 0));
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        if top.3 < top.2.len() {
            let u = top.2[top.3];
            top.3 += 1;
            if Some(u) == parent {
                continue;
            }
            if let Some(&du) = disc.get(&u) {
                let lv = low[&v].min(du);
                low.insert(v, lv);
            } else {
                disc.insert(u, time);
                low.insert(u, time);
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, Some(v), g.neighbors(u).iter().copied().collect(), 0));
            }
        } else {
            stack.pop();
            if let Some(p) = parent {
                let lv = low[&v];
                let lp = low[&p].min(lv);
                low.insert(p, lp);
                if lv > disc[&p] {
                    bridges.push(edge(p, v));
                }
                if p != root && lv >= disc[&p] {
                    cuts.insert(p);
                }
            }
        }
    }
    if root_children > 1 {
        cuts.insert(root);
    }
    bridges.sort();
    Ok((cuts, bridges))
}

/// `χ^(ρ)(G)`: the largest chromatic number of a ρ-ball.
pub fn chi_ball(g: &Graph, rho: usize) -> Result<usize> {
    chi_ball_with_limit(g, rho, CHI_LIMIT)
}

pub fn chi_ball_with_limit(g: &Graph, rho: usize, limit: usize) -> Result<usize> {
    let mut best = 0;
    for v in g.vertices() {
        let ball = g.ball(&VertexSet::from([v]), rho);
        let sub = g.induced(&ball);
        let c = match chromatic_number_with_limit(&sub, limit) {
            Ok(c) => c.chi,
            Err(Error::SolverLimit { size, limit, .. }) => return Err(Error::BallLimit { center: v, size, limit }),
            Err(e) => return Err(e),
        };
        best = best.max(c);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::vset;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u32..(1 << pairs.len())).map(move |mask| {
            let es: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &es)
        })
    }

    /// Independent oracle: smallest k such that some assignment in k^n is proper.
    fn brute_chi(g: &Graph) -> usize {
        let vs = g.vertex_vec();
        let n = vs.len();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let mut col = BTreeMap::new();
                for &v in &vs {
                    col.insert(v, c % k);
                    c /= k;
                }
                if g.edges().iter().all(|(u, v)| col[u] != col[v]) {
                    return k;
                }
            }
        }
        n
    }

    fn brute_iso(g: &Graph, h: &Graph) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let gv = g.vertex_vec();
        let hv = h.vertex_vec();
        let mut perm: Vec<usize> = (0..gv.len()).collect();
        loop {
            let map: BTreeMap<Vertex, Vertex> = gv.iter().enumerate().map(|(i, &v)| (v, hv[perm[i]])).collect();
            if g.relabel(&map) == *h {
                return true;
            }
            // next permutation
            let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
                return false;
            };
            let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&families::complete(4)).unwrap().chi, 4);
        assert_eq!(chromatic_number(&families::cycle(5)).unwrap().chi, 3);
        let k33 = families::subdivide(&families::complete_bipartite(3, 3), 1);
        assert_eq!(k33.order(), 15);
        assert_eq!(chromatic_at_most(&k33, 3).unwrap().unwrap().chi, 2);
    }

    #[test]
    fn chromatic_matches_brute_force_up_to_five_vertices() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                let c = chromatic_number(&g).unwrap();
                assert!(c.is_proper(&g));
                assert_eq!(c.chi, brute_chi(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn chromatic_limit_is_explicit() {
        let g = families::path(15);
        assert!(matches!(chromatic_number(&g), Err(Error::SolverLimit { size: 15, limit: 14, .. })));
        let c = chromatic_at_most(&families::cycle(39), 3).unwrap().unwrap();
        assert_eq!(c.chi, 3);
        assert!(chromatic_at_most(&families::complete(5), 3).unwrap().is_none());
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&families::complete(4)).unwrap().omega, 4);
        assert_eq!(clique_number(&families::cycle(5)).unwrap().omega, 2);
        let ic = families::interfered(3, 4, &families::Interference::Complete).unwrap();
        assert_eq!(clique_number(&ic.graph).unwrap().omega, 2);
    }

    #[test]
    fn chi_ball_examples() {
        let c5 = families::cycle(5);
        assert_eq!(chi_ball(&c5, 1).unwrap(), 2);
        assert_eq!(chi_ball(&c5, 2).unwrap(), 3);
        let star = families::star(5);
        for rho in 1..4 {
            assert_eq!(chi_ball(&star, rho).unwrap(), 2);
        }
        match chi_ball(&families::complete(16), 1) {
            Err(Error::BallLimit { center: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isomorphism_examples() {
        let p4 = families::path(4);
        let k13 = families::star(3);
        assert_eq!(are_isomorphic(&p4, &k13).unwrap(), None);
        let id = are_isomorphic(&p4, &p4).unwrap().unwrap();
        assert_eq!(p4.relabel(&id), p4);
        let c5 = families::cycle(5);
        let m = are_isomorphic(&c5, &c5.complement()).unwrap().unwrap();
        assert_eq!(c5.relabel(&m), c5.complement());
    }

    #[test]
    fn canonical_form_is_complete_invariant_on_small_graphs() {
        for n in 0..=5 {
            let graphs: Vec<Graph> = all_graphs(n).collect();
            let forms: Vec<String> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
            for (i, g) in graphs.iter().enumerate().step_by(7) {
                for (j, h) in graphs.iter().enumerate().step_by(3) {
                    assert_eq!(forms[i] == forms[j], brute_iso(g, h), "{g:?} {h:?}");
                    assert_eq!(forms[i] == forms[j], isomorphism_unchecked(g, h).is_some());
                }
            }
        }
    }

    #[test]
    fn canonical_form_handles_symmetric_graphs() {
        let e = Graph::empty_on(0..30);
        assert_eq!(canonical_form(&e).unwrap(), graph6::encode(&e).unwrap());
        let k = families::complete(20);
        assert_eq!(canonical_form(&k).unwrap(), graph6::encode(&k).unwrap());
        let c = families::cycle(9);
        let shifted = c.relabel(&(0..9).map(|v| (v, (v + 4) % 9)).collect());
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&shifted).unwrap());
    }

    #[test]
    fn cut_structure_examples() {
        let (cuts, bridges) = cut_structure(&families::path(4)).unwrap();
        assert_eq!(cuts, vset(&[1, 2]));
        assert_eq!(bridges, vec![(0, 1), (1, 2), (2, 3)]);
        let (cuts, bridges) = cut_structure(&families::cycle(5)).unwrap();
        assert!(cuts.is_empty() && bridges.is_empty());
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let (cuts, bridges) = cut_structure(&bowtie).unwrap();
        assert_eq!(cuts, vset(&[2]));
        assert!(bridges.is_empty());
        assert_eq!(cut_structure(&Graph::empty_on(0..2)), Err(Error::Disconnected));
    }

    #[test]
    fn cut_structure_matches_definition() {
        for g in all_graphs(5).filter(|g| g.is_connected()) {
            let (cuts, bridges) = cut_structure(&g).unwrap();
            for v in g.vertices() {
                assert_eq!(cuts.contains(&v), !g.without_vertex(v).is_connected());
            }
            for e in g.edges() {
                assert_eq!(bridges.contains(&e), !g.without_edges([&e]).is_connected());
            }
        }
    }

    #[test]
    fn maximal_cliques_of_bowtie() {
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(maximal_cliques(&bowtie), vec![vset(&[0, 1, 2]), vset(&[2, 3, 4])]);
    }
}
