//! Generators that plant long covers with room for dangling paths.
//!
//! The core is a cycle of 48 vertices split into two halves of 24 (half 0
//! is indices 42..=47 and 0..=17), with a clique glued at cycle index 12. Around it sit `q` nested shells. A shell
//! has a root, one hub per half, and a private three-vertex leg from the hub
//! of the right half to every vertex inside it, so everything inside lies at
//! distance exactly 5 from the root. Roots take the smallest labels, the
//! outermost first, so the levelling construction starts from them.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub const CORE_CYCLE: usize = 48;
const HALF: usize = CORE_CYCLE / 2;
const CLIQUE_AT: usize = 12;
const HALF_OFFSET: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineeredCover {
    pub graph: Graph,
    /// `roots[s]` is the root of shell `s + 1`, counted from the core out.
    pub roots: Vec<Vertex>,
    /// Core cycle in cycle order.
    pub cycle: Vec<Vertex>,
    /// The planted clique (it contains `cycle[12]`).
    pub clique: VertexSet,
}

/// Smallest clique that lifts every core level over the levelling
/// thresholds when `κ = 1`: `2^{q−1}·max(qh,1) + 1`.
pub fn engineered_clique_size(q: usize, h: usize) -> usize {
    (1usize << q.saturating_sub(1)) * (q * h).max(1) + 1
}

/// Plants a core with a clique of `clique_size` inside `q` shells, sized for
/// `h` dangling paths. Supports `1 <= q <= 2` and `1 <= h <= 2`.
pub fn engineered_cover(q: usize, h: usize, clique_size: usize) -> Result<EngineeredCover> {
    if !(1..=2).contains(&q) || !(1..=2).contains(&h) {
        return Err(precondition("engineered covers support q and h in 1..=2"));
    }
    if !(2..=HALF).contains(&clique_size) {
        return Err(precondition("clique size must lie in 2..=24"));
    }
    let mut g = Graph::new();
    let roots: Vec<Vertex> = (0..q as Vertex).rev().collect();
    let mut next = q as Vertex;
    let mut fresh = |g: &mut Graph| {
        let v = next;
        next += 1;
        g.add_vertex(v);
        v
    };
    let cycle: Vec<Vertex> = (0..CORE_CYCLE).map(|_| fresh(&mut g)).collect();
    for i in 0..CORE_CYCLE {
        g.add_edge(cycle[i], cycle[(i + 1) % CORE_CYCLE]);
    }
    let mut clique = VertexSet::from([cycle[CLIQUE_AT]]);
    for _ in 1..clique_size {
        let v = fresh(&mut g);
        for &u in &clique {
            g.add_edge(u, v);
        }
        clique.insert(v);
    }
    // (vertex, half) for everything inside the current shell.
    let mut inside: Vec<(Vertex, usize)> = cycle
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, (i + HALF_OFFSET) % CORE_CYCLE / HALF))
        .chain(clique.iter().filter(|&&v| v != cycle[CLIQUE_AT]).map(|&v| (v, 0)))
        .collect();
    for &root in &roots {
        g.add_vertex(root);
        let hubs = [fresh(&mut g), fresh(&mut g)];
        for &w in &hubs {
            g.add_edge(root, w);
        }
        let mut grown = inside.clone();
        for &(u, half) in &inside {
            let mut prev = hubs[half];
            for _ in 0..3 {
                let l = fresh(&mut g);
                g.add_edge(prev, l);
                grown.push((l, half));
                prev = l;
            }
            g.add_edge(prev, u);
        }
        grown.push((root, 0));
        grown.push((hubs[0], 0));
        grown.push((hubs[1], 1));
        inside = grown;
    }
    Ok(EngineeredCover { graph: g, roots, cycle, clique })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_put_the_core_at_distance_five() {
        let e = engineered_cover(2, 2, engineered_clique_size(2, 2)).unwrap();
        assert_eq!(engineered_clique_size(2, 2), 9);
        assert_eq!(e.roots, vec![1, 0]);
        assert!(e.graph.is_clique(&e.clique));
        let outer = e.graph.distances_from(0);
        assert!(e.cycle.iter().all(|v| outer[v] == 5));
        assert_eq!(outer[&1], 5);
        assert_eq!(e.graph.distance(e.cycle[0], e.cycle[8]), Some(8));
        assert_eq!(e.graph.distance(e.cycle[0], e.cycle[24]), Some(10));
        assert_eq!(e.graph.distance(e.cycle[8], e.cycle[18]), Some(9));
        assert!(engineered_cover(3, 1, 2).is_err());
    }
}
