//! Named graph families and interfered subdivided complete bipartite graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty_on(0..n as Vertex);
    for j in 0..n as Vertex {
        for i in 0..j {
            g.add_edge(i, j);
        }
    }
    g
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let es: Vec<Edge> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &es)
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(0, n as Vertex - 1);
    }
    g
}

/// `K_{1,k}` with centre 0 and leaves `1..=k`.
pub fn star(k: usize) -> Graph {
    let es: Vec<Edge> = (1..=k as Vertex).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &es)
}

/// `K_{n,m}` with sides `0..n` and `n..n+m`.
pub fn complete_bipartite(n: usize, m: usize) -> Graph {
    let mut g = Graph::empty_on(0..(n + m) as Vertex);
    for i in 0..n as Vertex {
        for j in 0..m as Vertex {
            g.add_edge(i, n as Vertex + j);
        }
    }
    g
}

/// Wheel `W_n`: an `n`-cycle on `0..n` plus a hub `n` joined to all of it.
pub fn wheel(n: usize) -> Graph {
    let mut g = cycle(n);
    let hub = n as Vertex;
    g.add_vertex(hub);
    for v in 0..hub {
        g.add_edge(v, hub);
    }
    g
}

/// `G^k`: every edge replaced by a path with `k` internal vertices. New
/// labels are allocated above the existing ones, edge by edge in sorted order.
pub fn subdivide(g: &Graph, k: usize) -> Graph {
    let mut out = Graph::empty_on(g.vertices());
    let mut next = g.next_free_label();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..k {
            out.add_vertex(next);
            out.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v);
    }
    out
}

/// How to choose the interference edges `x_k z_{i,j}` with `k < i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interference {
    None,
    Complete,
    /// Each allowed edge independently with probability 1/2.
    Random(u64),
    /// Explicit edges, given as `(k, i, j)` zero-based role indices.
    Edges(Vec<(usize, usize, usize)>),
}

/// An interfered `K^1_{n,m}` together with its role labels.
///
/// Labels: `x_i = i`, `y_j = n + j`, `z_{i,j} = n + m + i*m + j` (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterferedCert {
    pub graph: Graph,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    /// `z[i][j]` subdivides the edge `x_i y_j`.
    pub z: Vec<Vec<Vertex>>,
    pub completely_interfered: bool,
    pub seed: Option<u64>,
}

impl InterferedCert {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    /// Wraps an arbitrary labelled graph with the given roles and validates it.
    pub fn from_roles(graph: Graph, x: Vec<Vertex>, y: Vec<Vertex>, z: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut cert = InterferedCert { graph, x, y, z, completely_interfered: false, seed: None };
        cert.completely_interfered = cert.interference_count()? == cert.allowed().len();
        cert.validate()?;
        Ok(cert)
    }

    fn allowed(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (i, row) in self.z.iter().enumerate() {
            for &zij in row {
                for &xk in &self.x[..i] {
                    out.push(edge(xk, zij));
                }
            }
        }
        out
    }

    fn interference_count(&self) -> Result<usize> {
        Ok(self.allowed().iter().filter(|&&(a, b)| self.graph.has_edge(a, b)).count())
    }

    /// Checks the definition: roles partition the vertex set, every
    /// `x_i z_{i,j}` and `z_{i,j} y_j` is an edge, every other edge is an
    /// allowed interference edge, and the completeness flag is accurate.
    pub fn validate(&self) -> Result<()> {
        let n = self.x.len();
        if self.z.len() != n || self.z.iter().any(|r| r.len() != self.y.len()) {
            return Err(precondition("role table has the wrong shape"));
        }
        let mut roles = VertexSet::new();
        let total = n + self.y.len() + n * self.y.len();
        for &v in self.x.iter().chain(&self.y).chain(self.z.iter().flatten()) {
            roles.insert(v);
        }
        if roles.len() != total || roles != self.graph.vertex_set() {
            return Err(precondition("role labels must be distinct and cover the vertex set"));
        }
        let mut required = Vec::new();
        for (i, row) in self.z.iter().enumerate() {
            for (j, &zij) in row.iter().enumerate() {
                required.push(edge(self.x[i], zij));
                required.push(edge(zij, self.y[j]));
            }
        }
        for &(a, b) in &required {
            if !self.graph.has_edge(a, b) {
                return Err(precondition(format!("missing subdivision edge {a}{b}")));
            }
        }
        let allowed: std::collections::BTreeSet<Edge> = self.allowed().into_iter().collect();
        let required: std::collections::BTreeSet<Edge> = required.into_iter().collect();
        for e in self.graph.edges() {
            if !required.contains(&e) && !allowed.contains(&e) {
                return Err(precondition(format!("edge {}{} is outside the allowed interference set", e.0, e.1)));
            }
        }
        let count = self.interference_count()?;
        if self.completely_interfered != (count == allowed.len()) {
            return Err(precondition("completely-interfered flag is inaccurate"));
        }
        Ok(())
    }
}

/// Generates an interfered `K^1_{n,m}`.
pub fn interfered(n: usize, m: usize, interference: &Interference) -> Result<InterferedCert> {
    if n == 0 || m == 0 {
        return Err(precondition("interfered K^1_{n,m} needs n, m >= 1"));
    }
    let x: Vec<Vertex> = (0..n as Vertex).collect();
    let y: Vec<Vertex> = (n as Vertex..(n + m) as Vertex).collect();
    let z: Vec<Vec<Vertex>> = (0..n).map(|i| (0..m).map(|j| (n + m + i * m + j) as Vertex).collect()).collect();
    let mut g = Graph::empty_on(0..(n + m + n * m) as Vertex);
    for i in 0..n {
        for j in 0..m {
            g.add_edge(x[i], z[i][j]);
            g.add_edge(z[i][j], y[j]);
        }
    }
    let mut rng = match interference {
        Interference::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    for i in 0..n {
        for j in 0..m {
            for k in 0..i {
                let add = match interference {
                    Interference::None | Interference::Edges(_) => false,
                    Interference::Complete => true,
                    Interference::Random(_) => rng.as_mut().expect("seeded").gen_bool(0.5),
                };
                if add {
                    g.add_edge(x[k], z[i][j]);
                }
            }
        }
    }
    if let Interference::Edges(es) = interference {
        for &(k, i, j) in es {
            if !(k < i && i < n && j < m) {
                return Err(precondition(format!(
                    "interference edge x_{k} z_({i},{j}) is outside {{x_k z_(i,j) : k < i}}"
                )));
            }
            g.add_edge(x[k], z[i][j]);
        }
    }
    let mut cert = InterferedCert {
        graph: g,
        x,
        y,
        z,
        completely_interfered: false,
        seed: match interference {
            Interference::Random(s) => Some(*s),
            _ => None,
        },
    };
    cert.completely_interfered = cert.interference_count()? == cert.allowed().len();
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_and_subdivision() {
        let w4 = wheel(4);
        assert_eq!((w4.order(), w4.size()), (5, 8));
        let k3s = subdivide(&complete(3), 1);
        assert!(crate::solve::are_isomorphic(&k3s, &cycle(6)).unwrap().is_some());
    }

    #[test]
    fn completely_interfered_counts() {
        let c = interfered(3, 4, &Interference::Complete).unwrap();
        assert_eq!(c.graph.order(), 3 + 4 + 12);
        // Oracle: star edges 2nm, interference sum_i i*m.
        let interference: usize = (0..3).map(|i| i * 4).sum();
        assert_eq!(interference, 12);
        assert_eq!(c.graph.size(), 24 + interference);
        assert!(c.completely_interfered);
        c.validate().unwrap();
    }

    #[test]
    fn validator_rejects_foreign_edges() {
        let c = interfered(2, 3, &Interference::Random(5)).unwrap();
        c.validate().unwrap();
        let mut bad = c.clone();
        bad.graph.add_edge(c.y[0], c.y[1]);
        assert!(bad.validate().is_err());
        let mut bad = c.clone();
        bad.graph.add_edge(c.z[0][0], c.z[1][0]);
        assert!(bad.validate().is_err());
        let mut bad = c.clone();
        bad.graph.add_edge(c.x[1], c.z[0][2]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn explicit_interference_checked() {
        assert!(interfered(2, 2, &Interference::Edges(vec![(1, 0, 0)])).is_err());
        let c = interfered(2, 2, &Interference::Edges(vec![(0, 1, 1)])).unwrap();
        assert!(c.graph.has_edge(0, c.z[1][1]));
        assert!(!c.completely_interfered);
    }

    #[test]
    fn random_interference_is_seeded() {
        let a = interfered(3, 5, &Interference::Random(11)).unwrap();
        let b = interfered(3, 5, &Interference::Random(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(11));
    }
}
