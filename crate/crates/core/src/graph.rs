//! Simple undirected graphs with stable vertex labels.
//!
//! A [`Graph`] is a value: every operation that changes it returns a new
//! graph, and equality is label-sensitive (same vertex set, same edge set).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type VertexSet = BTreeSet<Vertex>;

/// Unordered edge stored with the smaller label first.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={:?}, E={:?})", self.vertex_vec(), self.edges())
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on the given labels.
    pub fn empty_on(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Graph { adj: vertices.into_iter().map(|v| (v, VertexSet::new())).collect() }
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::empty_on(0..n as Vertex);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from an explicit vertex list and edge list.
    pub fn from_parts(vertices: impl IntoIterator<Item = Vertex>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::empty_on(vertices);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Adds an edge, creating endpoints as needed. Loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if u == v {
            return;
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if let Some(n) = self.adj.get_mut(&u) {
            n.remove(&v);
        }
        if let Some(n) = self.adj.get_mut(&v) {
            n.remove(&u);
        }
    }

    pub fn toggle_edge(&mut self, u: Vertex, v: Vertex) {
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
        } else {
            self.add_edge(u, v);
        }
    }

    pub fn remove_vertex_mut(&mut self, v: Vertex) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns {
                if let Some(n) = self.adj.get_mut(&u) {
                    n.remove(&v);
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_vec(&self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Neighbourhood of `v`; empty for a missing vertex.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        static EMPTY: VertexSet = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for (&u, ns) in &self.adj {
            for &v in ns.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    pub fn next_free_label(&self) -> Vertex {
        self.max_label().map_or(0, |m| m + 1)
    }

    pub fn require_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::MissingVertex(v))
        }
    }

    pub fn require_edge(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(u, v))
        }
    }

    /// `N(A)`: vertices outside `a` adjacent to some vertex of `a`.
    pub fn neighborhood_of_set(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for &v in a {
            for &u in self.neighbors(v) {
                if !a.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// `G[C]`, ignoring labels of `c` that are not vertices.
    pub fn induced(&self, c: &VertexSet) -> Graph {
        let adj = c
            .iter()
            .filter_map(|v| self.adj.get(v).map(|ns| (*v, ns.iter().filter(|u| c.contains(u)).copied().collect())))
            .collect();
        Graph { adj }
    }

    /// `G − A`.
    pub fn without(&self, a: &VertexSet) -> Graph {
        let keep: VertexSet = self.vertices().filter(|v| !a.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn without_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.remove_vertex_mut(v);
        g
    }

    /// `G − E` for an edge set (vertices are kept).
    pub fn without_edges<'a>(&self, es: impl IntoIterator<Item = &'a Edge>) -> Graph {
        let mut g = self.clone();
        for &(u, v) in es {
            g.remove_edge(u, v);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let vs = self.vertex_vec();
        let mut g = Self::empty_on(vs.iter().copied());
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Renames vertices through `map`; unmapped vertices keep their label.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Graph {
        let f = |v: Vertex| *map.get(&v).unwrap_or(&v);
        let mut g = Self::empty_on(self.vertices().map(f));
        for (u, v) in self.edges() {
            g.add_edge(f(u), f(v));
        }
        g
    }

    /// Exchanges the labels `u` and `v`.
    pub fn swap_labels(&self, u: Vertex, v: Vertex) -> Graph {
        let map = BTreeMap::from([(u, v), (v, u)]);
        self.relabel(&map)
    }

    /// `E(A, B)` for disjoint sets.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Vec<Edge> {
        let mut out = BTreeSet::new();
        for &u in a {
            for &v in self.neighbors(u) {
                if b.contains(&v) && !a.contains(&v) {
                    out.insert(edge(u, v));
                }
            }
        }
        out.into_iter().collect()
    }

    /// `E(A)`.
    pub fn edges_within(&self, a: &VertexSet) -> Vec<Edge> {
        self.induced(a).edges()
    }

    pub fn is_stable(&self, a: &VertexSet) -> bool {
        a.iter().all(|&v| self.neighbors(v).iter().all(|u| !a.contains(u)))
    }

    pub fn is_clique(&self, a: &VertexSet) -> bool {
        a.iter().all(|&v| a.iter().all(|&u| u == v || self.neighbors(v).contains(&u)))
    }

    pub fn is_complete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| self.has_edge(x, y)))
    }

    pub fn is_anticomplete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| !self.has_edge(x, y)))
    }

    /// Whether every vertex of `b` has a neighbour in `a`.
    pub fn covers(&self, a: &VertexSet, b: &VertexSet) -> bool {
        b.iter().all(|&y| self.neighbors(y).iter().any(|x| a.contains(x)))
    }

    /// BFS distances from a set of sources.
    pub fn distances_from_set(&self, sources: &VertexSet) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.has_vertex(s) && dist.insert(s, 0).is_none() {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &u in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn distances_from(&self, v: Vertex) -> BTreeMap<Vertex, usize> {
        self.distances_from_set(&VertexSet::from([v]))
    }

    /// Distance between two vertices, `None` when disconnected.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.distances_from(u).get(&v).copied()
    }

    /// Distance between two vertex sets (nearest pair).
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> Option<usize> {
        let d = self.distances_from_set(a);
        b.iter().filter_map(|v| d.get(v).copied()).min()
    }

    /// `N_t(A)`: vertices at distance exactly `t` from `a`.
    pub fn sphere(&self, a: &VertexSet, t: usize) -> VertexSet {
        self.distances_from_set(a).into_iter().filter(|&(_, d)| d == t).map(|(v, _)| v).collect()
    }

    /// `N_t[A]`: vertices at distance at most `t` from `a`.
    pub fn ball(&self, a: &VertexSet, t: usize) -> VertexSet {
        self.distances_from_set(a).into_iter().filter(|&(_, d)| d <= t).map(|(v, _)| v).collect()
    }

    /// Connected components, each as a vertex set, ordered by minimum label.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp: VertexSet = self.distances_from(v).into_keys().collect();
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.distances_from(v).len() == self.order(),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.order() > 0 && self.is_connected() && self.size() + 1 == self.order()
    }

    /// Whether `path` (in order) is an induced path of the graph.
    pub fn is_induced_path(&self, path: &[Vertex]) -> bool {
        let set: VertexSet = path.iter().copied().collect();
        if set.len() != path.len() || !path.iter().all(|&v| self.has_vertex(v)) {
            return false;
        }
        for (i, &u) in path.iter().enumerate() {
            for (j, &v) in path.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Shortest path from `u` to any vertex of `targets`, staying inside `allowed`.
    pub fn shortest_path_within(&self, u: Vertex, targets: &VertexSet, allowed: &VertexSet) -> Option<Vec<Vertex>> {
        if !allowed.contains(&u) {
            return None;
        }
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::from([u]);
        let mut seen = VertexSet::from([u]);
        while let Some(v) = queue.pop_front() {
            if targets.contains(&v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(&p) = parent.get(&cur) {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &w in self.neighbors(v) {
                if allowed.contains(&w) && seen.insert(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// `G/E`: each contracted class collapses to its minimum label.
    pub fn contract_edges(&self, es: &[Edge]) -> Result<Graph> {
        self.contract_edges_keeping(es, &VertexSet::new())
    }

    /// `G/E` where a class containing exactly one vertex of `survivors`
    /// keeps that label; other classes keep their minimum label.
    pub fn contract_edges_keeping(&self, es: &[Edge], survivors: &VertexSet) -> Result<Graph> {
        for &(u, v) in es {
            self.require_edge(u, v)?;
        }
        let mut uf = UnionFind::new(self.vertices());
        for &(u, v) in es {
            uf.union(u, v);
        }
        let mut classes: BTreeMap<Vertex, VertexSet> = BTreeMap::new();
        for v in self.vertices() {
            classes.entry(uf.find(v)).or_default().insert(v);
        }
        let mut rep: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for class in classes.values() {
            let kept: Vec<Vertex> = class.iter().filter(|v| survivors.contains(v)).copied().collect();
            let r = if kept.len() == 1 { kept[0] } else { *class.iter().next().expect("class is non-empty") };
            for &v in class {
                rep.insert(v, r);
            }
        }
        let mut g = Self::empty_on(rep.values().copied());
        for (u, v) in self.edges() {
            g.add_edge(rep[&u], rep[&v]);
        }
        Ok(g)
    }
}

struct UnionFind {
    parent: BTreeMap<Vertex, Vertex>,
}

impl UnionFind {
    fn new(vs: impl Iterator<Item = Vertex>) -> Self {
        UnionFind { parent: vs.map(|v| (v, v)).collect() }
    }

    fn find(&mut self, v: Vertex) -> Vertex {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let r = self.find(p);
        self.parent.insert(v, r);
        r
    }

    fn union(&mut self, a: Vertex, b: Vertex) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// Builds a vertex set from a slice.
pub fn vset(vs: &[Vertex]) -> VertexSet {
    vs.iter().copied().collect()
}
