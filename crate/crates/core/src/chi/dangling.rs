//! Paths dangling from a vertex set: parity repair and contraction.

use serde::{Deserialize, Serialize};

use super::pairwise_far;
use crate::error::{consistency, precondition, Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::ramsey::{self, Split};
use crate::trace::{self, Trace};

/// `P` is an induced path with `N(V(P)) = X`.
pub fn dangles(g: &Graph, p: &[Vertex], x: &VertexSet) -> bool {
    !p.is_empty() && g.is_induced_path(p) && g.neighborhood_of_set(&p.iter().copied().collect()) == *x
}

/// Dangles, and every `x` has an odd number of neighbours on `P`.
pub fn dangles_oddly(g: &Graph, p: &[Vertex], x: &VertexSet) -> bool {
    dangles(g, p, x) && x.iter().all(|&v| attachment(g, p, v) % 2 == 1)
}

fn attachment(g: &Graph, p: &[Vertex], x: Vertex) -> usize {
    p.iter().filter(|&&v| g.has_edge(x, v)).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFix {
    pub graph: Graph,
    pub trace: Trace,
    /// The surviving path, in order.
    pub path: Vec<Vertex>,
}

/// Shortens `P` until it dangles oddly from `X`, leaving `G − V(P)` intact.
///
/// Each step removes a path vertex `y` adjacent to an even-attachment `x`:
/// deletion when `y` is an end, `G*y − y` otherwise. `y` is chosen among the
/// path vertices whose only neighbour in `X` is `x`, so that no other
/// attachment changes; an error is raised when there is none.
pub fn fix_parity(g: &Graph, p: &[Vertex], x: &VertexSet) -> Result<ParityFix> {
    if !dangles(g, p, x) {
        return Err(precondition("P does not dangle from X"));
    }
    if !g.is_stable(x) {
        return Err(precondition("X is not stable"));
    }
    let even: Vec<Vertex> = x.iter().copied().filter(|&v| attachment(g, p, v).is_multiple_of(2)).collect();
    if let Some((a, b, d)) = pairwise_far(g, &even, 3) {
        return Err(precondition(format!("even-attachment vertices {a}, {b} at distance {d} < 3")));
    }
    let mut cur = g.clone();
    let mut path = p.to_vec();
    let mut t = Trace::new();
    while let Some(xv) = x.iter().copied().find(|&v| attachment(&cur, &path, v).is_multiple_of(2)) {
        let own: Vec<usize> = (0..path.len())
            .filter(|&i| {
                let y = path[i];
                cur.has_edge(xv, y) && cur.neighbors(y).intersection(x).count() == 1
            })
            .collect();
        let is_end = |i: usize| i == 0 || i + 1 == path.len();
        let i = own
            .iter()
            .copied()
            .find(|&i| is_end(i))
            .or_else(|| own.iter().copied().min_by_key(|&i| path[i]))
            .ok_or_else(|| precondition(format!("every neighbour of {xv} on P also sees another vertex of X")))?;
        let y = path[i];
        if is_end(i) {
            t.del(y);
            cur = cur.without_vertex(y);
        } else {
            t.smooth(y);
            cur = trace::local_complement(&cur, y)?.without_vertex(y);
        }
        path.remove(i);
    }
    let pset: VertexSet = p.iter().copied().collect();
    if cur.without(&pset) != g.without(&pset) {
        return Err(consistency("parity repair changed the graph off the path"));
    }
    if !dangles_oddly(&cur, &path, x) {
        return Err(consistency("repaired path does not dangle oddly"));
    }
    Ok(ParityFix { graph: cur, trace: t, path })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DanglingContraction {
    #[serde(rename = "Y")]
    pub y: VertexSet,
    pub graph: Graph,
    pub trace: Trace,
    /// `(G − (X−Y) − E(Y))/E(P)` computed directly, with `survivor` kept.
    pub formula: Graph,
    /// The path vertex that stands for the contracted path.
    pub survivor: Vertex,
    /// `X` pairwise at distance at least 6.
    pub spacious: bool,
}

/// Contracts a dangling path while keeping at least `q` vertices of `X`.
///
/// Paths that do not dangle oddly are first repaired with [`fix_parity`]
/// (so `X` must then be stable with even-attachment vertices spread apart).
pub fn contract_dangling_path(g: &Graph, p: &[Vertex], x: &VertexSet, q: usize) -> Result<DanglingContraction> {
    if !dangles(g, p, x) {
        return Err(precondition("P does not dangle from X"));
    }
    let r = ramsey::ramsey(q, q);
    if (x.len() as u128) < r.value {
        return Err(Error::Threshold(format!(
            "|X| = {} is below R({q},{q}) = {}{}",
            x.len(),
            r.value,
            if r.exact { "" } else { " (upper bound)" }
        )));
    }
    let mut t = Trace::new();
    let (mut cur, mut path) = if dangles_oddly(g, p, x) {
        (g.clone(), p.to_vec())
    } else {
        let fix = fix_parity(g, p, x)?;
        t.extend(&fix.trace);
        (fix.graph, fix.path)
    };
    while path.len() > 1 {
        let pm = path.pop().expect("len > 1");
        t.lc(pm).del(pm);
        cur = trace::local_complement(&cur, pm)?.without_vertex(pm);
    }
    let pv = path[0];
    let (y, clique) = match ramsey::split(&cur, x, q, q) {
        Some(Split::Stable(s)) => (s, false),
        Some(Split::Clique(c)) => (c, true),
        None => return Err(consistency("Ramsey split failed at R(q,q)")),
    };
    for &v in x.difference(&y) {
        t.del(v);
    }
    cur = cur.without(&x.difference(&y).copied().collect());
    if clique {
        t.lc(pv);
        cur = trace::local_complement(&cur, pv)?;
    }
    let replay = t.apply(g)?;
    if replay != cur {
        return Err(consistency("tracked graph differs from replay"));
    }
    let es: Vec<Edge> = p.windows(2).map(|w| edge(w[0], w[1])).collect();
    let gone: VertexSet = x.difference(&y).copied().collect();
    let base = g.without(&gone);
    let formula = base.without_edges(&base.edges_within(&y)).contract_edges_keeping(&es, &VertexSet::from([pv]))?;
    if formula != cur {
        return Err(consistency(format!("contracted path {cur:?} differs from the formula graph {formula:?}")));
    }
    let xs: Vec<Vertex> = x.iter().copied().collect();
    Ok(DanglingContraction {
        y,
        graph: cur,
        trace: t,
        formula,
        survivor: pv,
        spacious: pairwise_far(g, &xs, 6).is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;
    use crate::oracle;

    #[test]
    fn parity_examples() {
        // P = 0-1-2, x = 3 sees 1 and 2 (end): one deletion.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (3, 1), (3, 2)]);
        let f = fix_parity(&g, &[0, 1, 2], &vset(&[3])).unwrap();
        assert_eq!(f.trace.len(), 1);
        assert_eq!(f.path, vec![0, 1]);
        // P = 0-1-2-3, x = 4 sees 1 and 2 (internal): one smoothing.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]);
        let f = fix_parity(&g, &[0, 1, 2, 3], &vset(&[4])).unwrap();
        assert_eq!(f.trace.len(), 2);
        assert!(dangles_oddly(&f.graph, &f.path, &vset(&[4])));
        // Already odd: unchanged.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let f = fix_parity(&g, &[0, 1], &vset(&[2])).unwrap();
        assert!(f.trace.is_empty());
    }

    #[test]
    fn parity_rejects_close_or_adjacent_x() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 0), (3, 1), (4, 1), (4, 2)]);
        assert!(fix_parity(&g, &[0, 1, 2], &vset(&[3, 4])).is_err());
        let mut g2 = g.clone();
        g2.add_edge(3, 4);
        assert!(fix_parity(&g2, &[0, 1, 2], &vset(&[3, 4])).is_err());
    }

    #[test]
    fn single_vertex_stable_and_clique() {
        // p = 0 with X = {1, 2} stable.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        let c = contract_dangling_path(&g, &[0], &vset(&[1, 2]), 2).unwrap();
        assert_eq!(c.y, vset(&[1, 2]));
        assert!(c.trace.is_empty());
        // X = {1, 2} a clique: Y = X by complementing at p.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let c = contract_dangling_path(&g, &[0], &vset(&[1, 2]), 2).unwrap();
        assert_eq!(c.y, vset(&[1, 2]));
        assert_eq!(c.graph, Graph::from_edges(3, &[(0, 1), (0, 2)]));
        assert!(oracle::verify_witness(&g, &c.graph, &c.trace).unwrap());
    }

    #[test]
    fn three_vertex_path_spaced() {
        // P = 0-1-2; x = 3 on 0, x' = 4 on 2, with a long detour between.
        let mut g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 0), (4, 2)]);
        let c = contract_dangling_path(&g, &[0, 1, 2], &vset(&[3, 4]), 2).unwrap();
        assert_eq!(c.graph, c.formula);
        assert_eq!(c.graph, Graph::from_parts([0, 3, 4], [(0, 3), (0, 4)]));
        g.add_vertex(9);
        assert!(contract_dangling_path(&g, &[0, 1, 2], &vset(&[3, 4]), 3).is_err());
    }
}
