//! Brute-force containment oracle for vertex-minors and pivot-minors.
//!
//! Breadth-first search over labelled graphs, where each state is expanded by
//! deletions first and then local complementations (or pivots), vertices in
//! ascending order. States are memoised by canonical form, so isomorphic
//! states are expanded once.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solve;
use crate::trace::{Step, Trace};

pub const ORACLE_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    VertexMinor,
    PivotMinor,
}

/// Returns a trace turning `g` into a graph isomorphic to `h`, or `None`
/// when no such vertex-minor (resp. pivot-minor) exists.
pub fn contains_minor(g: &Graph, h: &Graph, mode: Mode) -> Result<Option<Trace>> {
    contains_minor_with_limit(g, h, mode, ORACLE_LIMIT)
}

pub fn contains_minor_with_limit(g: &Graph, h: &Graph, mode: Mode, limit: usize) -> Result<Option<Trace>> {
    if g.order() > limit {
        return Err(Error::SolverLimit { what: "containment oracle", size: g.order(), limit });
    }
    let k = h.order();
    if k > g.order() {
        return Ok(None);
    }
    let target = solve::canonical_form(h)?;
    // Arena of (state, parent index, step from parent).
    let mut arena: Vec<(Graph, usize, Option<Step>)> = vec![(g.clone(), usize::MAX, None)];
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(solve::canonical_form(g)?);
    if g.order() == k && solve::canonical_form(g)? == target {
        return Ok(Some(Trace::new()));
    }
    let mut queue = VecDeque::from([0usize]);
    let h_has_edges = h.size() > 0;
    while let Some(idx) = queue.pop_front() {
        let state = arena[idx].0.clone();
        let mut moves: Vec<Step> = Vec::new();
        if state.order() > k {
            moves.extend(state.vertices().map(|v| Step::Del { v }));
        }
        match mode {
            Mode::VertexMinor => moves.extend(state.vertices().map(|v| Step::Lc { v })),
            Mode::PivotMinor => moves.extend(state.edges().into_iter().map(|(u, v)| Step::Pivot { u, v })),
        }
        for step in moves {
            let next = step.apply(&state)?;
            // Deletions and local moves never create edges in an edgeless graph.
            if h_has_edges && next.size() == 0 {
                continue;
            }
            let key = solve::canonical_form(&next)?;
            if !seen.insert(key.clone()) {
                continue;
            }
            let order = next.order();
            arena.push((next, idx, Some(step)));
            let id = arena.len() - 1;
            if order == k && key == target {
                return Ok(Some(rebuild(&arena, id)));
            }
            queue.push_back(id);
        }
    }
    Ok(None)
}

fn rebuild(arena: &[(Graph, usize, Option<Step>)], mut id: usize) -> Trace {
    let mut steps = Vec::new();
    while let Some(step) = arena[id].2 {
        steps.push(step);
        id = arena[id].1;
    }
    steps.reverse();
    steps.into_iter().collect()
}

/// Replays `trace` on `g` and checks the result is isomorphic to `h`.
pub fn verify_witness(g: &Graph, h: &Graph, trace: &Trace) -> Result<bool> {
    let out = trace.apply(g)?;
    Ok(out.order() == h.order() && solve::canonical_form(&out)? == solve::canonical_form(h)?)
}

/// Oracle confirmation that `h` is a vertex-minor of `g`.
pub fn confirm(g: &Graph, h: &Graph, mode: Mode) -> Result<bool> {
    Ok(contains_minor(g, h, mode)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn oracle_examples() {
        let t = contains_minor(&families::path(3), &families::complete(3), Mode::VertexMinor).unwrap().unwrap();
        assert!(verify_witness(&families::path(3), &families::complete(3), &t).unwrap());
        let c5 = families::cycle(5);
        let c4 = families::cycle(4);
        let t = contains_minor(&c5, &c4, Mode::VertexMinor).unwrap().unwrap();
        assert!(verify_witness(&c5, &c4, &t).unwrap());
        let e3 = Graph::empty_on(0..3);
        assert_eq!(contains_minor(&e3, &families::complete(2), Mode::VertexMinor).unwrap(), None);
    }

    #[test]
    fn pivot_mode_cannot_create_triangles_from_paths() {
        // Pivots preserve bipartiteness up to the label swap, so P3 has no K3
        // pivot-minor.
        assert_eq!(contains_minor(&families::path(3), &families::complete(3), Mode::PivotMinor).unwrap(), None);
        let t = contains_minor(&families::cycle(5), &families::path(3), Mode::PivotMinor).unwrap().unwrap();
        assert!(t.is_pivot_only());
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            contains_minor(&families::path(10), &families::path(2), Mode::VertexMinor),
            Err(Error::SolverLimit { .. })
        ));
    }

    #[test]
    fn trivial_targets() {
        let g = families::cycle(4);
        assert_eq!(contains_minor(&g, &g, Mode::VertexMinor).unwrap(), Some(Trace::new()));
        let t = contains_minor(&g, &Graph::new(), Mode::VertexMinor).unwrap().unwrap();
        assert_eq!(t.len(), 4);
    }
}
