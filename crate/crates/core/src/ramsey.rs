//! Small Ramsey numbers and constructive clique/stable-set splits.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyValue {
    /// Saturates at `u128::MAX`.
    pub value: u128,
    /// False when `value` is only the binomial upper bound.
    pub exact: bool,
}

/// `R(n, m)`: every graph on `R(n,m)` vertices has a clique of size `n` or a
/// stable set of size `m`.
pub fn ramsey(n: usize, m: usize) -> RamseyValue {
    let (a, b) = if n <= m { (n, m) } else { (m, n) };
    let known = match (a, b) {
        (0, _) => Some(0),
        (1, _) => Some(1),
        (2, b) => Some(b as u128),
        (3, 3) => Some(6),
        (3, 4) => Some(9),
        (4, 4) => Some(18),
        _ => None,
    };
    match known {
        Some(value) => RamseyValue { value, exact: true },
        None => RamseyValue { value: binomial(n + m - 2, n - 1), exact: false },
    }
}

/// Binomial coefficient, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Split {
    Stable(VertexSet),
    Clique(VertexSet),
}

/// Finds a stable set of size `stable` (preferred) or a clique of size
/// `clique` inside `g[within]`. Exact on up to 64 vertices; larger inputs use
/// the constructive neighbourhood recursion.
pub fn split(g: &Graph, within: &VertexSet, clique: usize, stable: usize) -> Option<Split> {
    let sub = g.induced(within);
    if sub.order() <= solve::CLIQUE_LIMIT {
        let s = solve::clique_number(&sub.complement()).expect("within limit");
        if s.omega >= stable {
            return Some(Split::Stable(s.members.into_iter().take(stable).collect()));
        }
        let c = solve::clique_number(&sub).expect("within limit");
        if c.omega >= clique {
            return Some(Split::Clique(c.members.into_iter().take(clique).collect()));
        }
        return None;
    }
    recursive_split(&sub, sub.vertex_set(), clique, stable)
}

fn recursive_split(g: &Graph, within: VertexSet, clique: usize, stable: usize) -> Option<Split> {
    if stable == 0 {
        return Some(Split::Stable(VertexSet::new()));
    }
    if clique == 0 {
        return Some(Split::Clique(VertexSet::new()));
    }
    let v = *within.iter().next()?;
    let nbrs: VertexSet = g.neighbors(v).intersection(&within).copied().collect();
    let rest: VertexSet = within.iter().filter(|&&u| u != v && !nbrs.contains(&u)).copied().collect();
    let grow = |s: Split, on_clique: bool| match s {
        Split::Clique(mut c) if on_clique => {
            c.insert(v);
            Split::Clique(c)
        }
        Split::Stable(mut s) if !on_clique => {
            s.insert(v);
            Split::Stable(s)
        }
        other => other,
    };
    if let Some(s) = recursive_split(g, rest.clone(), clique, stable - 1) {
        return Some(grow(s, false));
    }
    recursive_split(g, nbrs, clique - 1, stable).map(|s| grow(s, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Vertex;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u32..(1 << pairs.len())).map(move |mask| {
            let es: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &es)
        })
    }

    fn has_clique_or_stable(g: &Graph, n: usize, m: usize) -> bool {
        let vs = g.vertex_vec();
        let k = vs.len();
        (0u32..1 << k).any(|mask| {
            let s: VertexSet = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            (s.len() == n && g.is_clique(&s)) || (s.len() == m && g.is_stable(&s))
        })
    }

    #[test]
    fn small_entries_verified_exhaustively() {
        for n in 1..=4 {
            for m in 1..=4 {
                let r = ramsey(n, m);
                assert!(r.exact);
                if r.value > 6 {
                    continue;
                }
                let v = r.value as usize;
                assert!(all_graphs(v).all(|g| has_clique_or_stable(&g, n, m)), "R({n},{m})");
                if v >= 1 {
                    assert!(all_graphs(v - 1).any(|g| !has_clique_or_stable(&g, n, m)), "R({n},{m}) not tight");
                }
            }
        }
        // C5 is the extremal graph for R(3,3).
        assert!(!has_clique_or_stable(&families::cycle(5), 3, 3));
    }

    #[test]
    fn fallback_is_flagged_binomial() {
        let r = ramsey(5, 5);
        assert_eq!(r, RamseyValue { value: 70, exact: false });
        assert_eq!(ramsey(3, 5).value, 15);
        assert_eq!(binomial(200, 100), u128::MAX);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(1, 2), 0);
    }

    #[test]
    fn splits_exist_at_ramsey_size() {
        for g in all_graphs(6) {
            let s = split(&g, &g.vertex_set(), 3, 3).expect("R(3,3)=6");
            match s {
                Split::Stable(s) => assert!(s.len() == 3 && g.is_stable(&s)),
                Split::Clique(c) => assert!(c.len() == 3 && g.is_clique(&c)),
            }
        }
        assert_eq!(split(&families::cycle(5), &(0..5).collect(), 3, 3), None);
    }

    #[test]
    fn recursive_split_on_large_inputs() {
        let g = families::cycle(70);
        match split(&g, &g.vertex_set(), 3, 5) {
            Some(Split::Stable(s)) => assert!(s.len() == 5 && g.is_stable(&s)),
            other => panic!("{other:?}"),
        }
        let k = families::complete(70);
        match split(&k, &k.vertex_set(), 4, 2) {
            Some(Split::Clique(c)) => assert!(c.len() == 4 && k.is_clique(&c)),
            other => panic!("{other:?}"),
        }
    }
}
