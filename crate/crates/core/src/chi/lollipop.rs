//! Lollipops with stripes, and distant marked paths.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{max_chi_component, pairwise_far, require_chi_at_least, require_chi_ball_at_most};
use super::{Assumption, ChiPolicy};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A lollipop `(P, C')` with a stripe of path vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LollipopCert {
    /// `P`, ordered so that `end` is last.
    pub path: Vec<Vertex>,
    /// `C'`; may be empty only for the degenerate and tail-free cases.
    pub set: VertexSet,
    /// `t`: the only vertex of `P` with a neighbour in `C'`.
    pub end: Option<Vertex>,
    pub stripe: Vec<Vertex>,
    pub assumptions: Vec<Assumption>,
}

/// Finds a lollipop contained in `c_set` with `χ(C') >= c` and a `k`-stripe.
pub fn find_lollipop(
    g: &Graph,
    c_set: &VertexSet,
    c: usize,
    k: usize,
    kappa: usize,
    policy: ChiPolicy,
) -> Result<LollipopCert> {
    let mut flags = Vec::new();
    require_chi_ball_at_most(g, 8, kappa, policy, &mut flags)?;
    let need = c as u128 + k as u128 * kappa as u128;
    require_chi_at_least(g, c_set, need, "lollipop host set", policy, &mut flags)?;
    let mut cert = build(g, c_set, k, false)?;
    if k > 0 {
        require_chi_at_least(g, &cert.set, c as u128, "lollipop head", policy, &mut flags)?;
    }
    cert.assumptions = flags;
    validate_lollipop(g, c_set, &cert)?;
    Ok(cert)
}

fn exhausted(msg: impl Into<String>) -> Error {
    Error::Threshold(msg.into())
}

/// The inductive construction. With `allow_empty_tail` the last step may end
/// with an empty `C'` when nothing is left far enough away.
fn build(g: &Graph, c_set: &VertexSet, k: usize, allow_empty_tail: bool) -> Result<LollipopCert> {
    let base = max_chi_component(g, c_set).ok_or_else(|| precondition("lollipop host set is empty"))?;
    if k == 0 {
        return Ok(LollipopCert {
            path: Vec::new(),
            set: base,
            end: None,
            stripe: Vec::new(),
            assumptions: Vec::new(),
        });
    }
    if k == 1 {
        for &s1 in &base {
            let near = g.ball(&VertexSet::from([s1]), 7);
            let rest: VertexSet = base.difference(&near).copied().collect();
            let Some(head) = max_chi_component(g, &rest) else { continue };
            let targets: VertexSet = g.neighborhood_of_set(&head).intersection(&base).copied().collect();
            let path = g
                .shortest_path_within(s1, &targets, &base)
                .ok_or_else(|| exhausted("lollipop stick is unreachable"))?;
            return Ok(LollipopCert {
                end: path.last().copied(),
                path,
                set: head,
                stripe: vec![s1],
                assumptions: Vec::new(),
            });
        }
        if allow_empty_tail {
            let s1 = *base.iter().next().expect("non-empty");
            return Ok(LollipopCert {
                path: vec![s1],
                set: VertexSet::new(),
                end: Some(s1),
                stripe: vec![s1],
                assumptions: Vec::new(),
            });
        }
        return Err(exhausted("no vertex has anything at distance 8 or more"));
    }
    let prev = build(g, c_set, k - 1, false)?;
    let t_star = prev.end.expect("k >= 1 lollipops have an end");
    let near = g.ball(&VertexSet::from([t_star]), 8);
    let rest: VertexSet = prev.set.difference(&near).copied().collect();
    let mut out = prev.clone();
    match max_chi_component(g, &rest) {
        Some(head) => {
            let targets: VertexSet = g.neighborhood_of_set(&head).intersection(&prev.set).copied().collect();
            let mut allowed = prev.set.clone();
            allowed.insert(t_star);
            let tail = g
                .shortest_path_within(t_star, &targets, &allowed)
                .ok_or_else(|| exhausted("lollipop extension is unreachable"))?;
            out.stripe.push(tail[1]);
            out.path.extend_from_slice(&tail[1..]);
            out.set = head;
        }
        None if allow_empty_tail => {
            let s =
                *g.neighbors(t_star).iter().find(|v| prev.set.contains(v)).ok_or_else(|| consistency_end(t_star))?;
            out.stripe.push(s);
            out.path.push(s);
            out.set = VertexSet::new();
        }
        None => return Err(exhausted(format!("stripe {k}: nothing beyond distance 8 of {t_star}"))),
    }
    out.end = out.path.last().copied();
    Ok(out)
}

fn consistency_end(t: Vertex) -> Error {
    crate::error::consistency(format!("lollipop end {t} has no neighbour in its head"))
}

/// Standalone lollipop validator; distances recomputed by BFS.
pub fn validate_lollipop(g: &Graph, c_set: &VertexSet, cert: &LollipopCert) -> Result<()> {
    let pset: VertexSet = cert.path.iter().copied().collect();
    if !pset.is_subset(c_set) || !cert.set.is_subset(c_set) {
        return Err(precondition("lollipop is not contained in the host set"));
    }
    if !pset.is_disjoint(&cert.set) {
        return Err(precondition("lollipop stick meets its head"));
    }
    if !cert.set.is_empty() && !g.induced(&cert.set).is_connected() {
        return Err(precondition("lollipop head is not connected"));
    }
    if !cert.path.is_empty() {
        if !g.is_induced_path(&cert.path) {
            return Err(precondition("lollipop stick is not an induced path"));
        }
        let t = cert.path[cert.path.len() - 1];
        if cert.end != Some(t) {
            return Err(precondition("recorded end is not the last path vertex"));
        }
        if !cert.set.is_empty() {
            for &p in &cert.path {
                let touches = !g.neighbors(p).is_disjoint(&cert.set);
                if touches != (p == t) {
                    return Err(precondition(format!("{p} breaks the single-attachment rule of the lollipop")));
                }
            }
        }
    }
    if !cert.stripe.iter().all(|s| pset.contains(s)) {
        return Err(precondition("stripe vertex off the path"));
    }
    if let Some((a, b, d)) = pairwise_far(g, &cert.stripe, 8) {
        return Err(precondition(format!("stripe vertices {a}, {b} at distance {d} < 8")));
    }
    if !cert.set.is_empty() {
        let dist = g.distances_from_set(&cert.set);
        for s in &cert.stripe {
            let d = dist.get(s).copied().unwrap_or(usize::MAX);
            if d < 8 {
                return Err(precondition(format!("stripe vertex {s} at distance {d} < 8 from C'")));
            }
        }
    }
    Ok(())
}

/// Induced paths `P_1..P_h` with `q` marks each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistantPaths {
    pub paths: Vec<Vec<Vertex>>,
    /// `marks[j]` lists `s_{1,j}..s_{q,j}` in path order.
    pub marks: Vec<Vec<Vertex>>,
    pub assumptions: Vec<Assumption>,
}

/// Finds `h` induced paths in `c_set`, pairwise at distance at least 3, each
/// carrying `q` marks, all marks pairwise at distance at least 8.
///
/// For `q = 0` each path is a single vertex and carries no marks.
pub fn find_distant_paths(
    g: &Graph,
    c_set: &VertexSet,
    q: usize,
    h: usize,
    kappa: usize,
    policy: ChiPolicy,
) -> Result<DistantPaths> {
    let mut flags = Vec::new();
    if h == 0 {
        return Ok(DistantPaths { paths: Vec::new(), marks: Vec::new(), assumptions: flags });
    }
    require_chi_ball_at_most(g, 9, kappa, policy, &mut flags)?;
    let need = q as u128 * h as u128 * kappa as u128;
    require_chi_at_least(g, c_set, need, "distant-path host set", policy, &mut flags)?;
    let qq = q.max(1);
    let mut paths = Vec::new();
    let mut marks = Vec::new();
    let mut cur = c_set.clone();
    for round in 0..h {
        let lol = build(g, &cur, qq, true)?;
        let (a, b, chosen) = tightest_marks(g, &lol.path, qq)
            .ok_or_else(|| crate::error::consistency("stripe path has no admissible mark set"))?;
        let path = lol.path[a..=b].to_vec();
        let far = g.ball(&chosen.iter().copied().collect(), 9);
        paths.push(path);
        marks.push(chosen.into_iter().take(q).collect::<Vec<_>>());
        if round + 1 < h {
            let rest: VertexSet = cur.difference(&far).copied().collect();
            cur = max_chi_component(g, &rest)
                .ok_or_else(|| exhausted(format!("nothing left beyond distance 9 after {} paths", round + 1)))?;
        }
    }
    paths.reverse();
    marks.reverse();
    let out = DistantPaths { paths, marks, assumptions: flags };
    validate_distant_paths(g, c_set, q, &out)?;
    Ok(out)
}

/// Among sets of `k` path vertices pairwise at distance at least 8 in `g`,
/// one minimising the span along the path (earliest window first).
fn tightest_marks(g: &Graph, path: &[Vertex], k: usize) -> Option<(usize, usize, Vec<Vertex>)> {
    let n = path.len();
    let dist: Vec<BTreeMap<Vertex, usize>> = path.iter().map(|&v| g.distances_from(v)).collect();
    let far = |i: usize, j: usize| dist[i].get(&path[j]).copied().unwrap_or(usize::MAX) >= 8;
    for span in 0..n {
        for a in 0..n - span {
            let b = a + span;
            if k == 1 {
                if a == b {
                    return Some((a, a, vec![path[a]]));
                }
                continue;
            }
            if a == b || !far(a, b) {
                continue;
            }
            let mut pick = vec![a, b];
            if extend(&far, a + 1, b, k, &mut pick) {
                let mut idx = pick.clone();
                idx.sort_unstable();
                return Some((a, b, idx.into_iter().map(|i| path[i]).collect()));
            }
        }
    }
    None
}

fn extend(far: &dyn Fn(usize, usize) -> bool, from: usize, end: usize, k: usize, pick: &mut Vec<usize>) -> bool {
    if pick.len() == k {
        return true;
    }
    for i in from..end {
        if pick.iter().all(|&p| far(p, i)) {
            pick.push(i);
            if extend(far, i + 1, end, k, pick) {
                return true;
            }
            pick.pop();
        }
    }
    false
}

/// Standalone validator for [`DistantPaths`].
pub fn validate_distant_paths(g: &Graph, c_set: &VertexSet, q: usize, dp: &DistantPaths) -> Result<()> {
    if dp.paths.len() != dp.marks.len() {
        return Err(precondition("one mark list per path"));
    }
    let sets: Vec<VertexSet> = dp.paths.iter().map(|p| p.iter().copied().collect()).collect();
    for (j, p) in dp.paths.iter().enumerate() {
        if p.is_empty() || !sets[j].is_subset(c_set) || !g.is_induced_path(p) {
            return Err(precondition(format!("path {j} is not an induced path in the host set")));
        }
        if dp.marks[j].len() != q || !dp.marks[j].iter().all(|m| sets[j].contains(m)) {
            return Err(precondition(format!("path {j} does not carry {q} of its own vertices as marks")));
        }
        if q >= 1 {
            let ends = [p[0], p[p.len() - 1]];
            if !ends.iter().all(|e| dp.marks[j].contains(e)) {
                return Err(precondition(format!("path {j} extends beyond its outer marks")));
            }
            let ball = g.ball(&dp.marks[j].iter().copied().collect(), 7);
            if !sets[j].is_subset(&ball) {
                return Err(precondition(format!("path {j} leaves N_7 of its marks")));
            }
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let d = g.set_distance(&sets[i], &sets[j]).unwrap_or(usize::MAX);
            if d < 3 {
                return Err(precondition(format!("paths {i} and {j} at distance {d} < 3")));
            }
        }
    }
    let all: Vec<Vertex> = dp.marks.iter().flatten().copied().collect();
    if let Some((a, b, d)) = pairwise_far(g, &all, 8) {
        return Err(precondition(format!("marks {a}, {b} at distance {d} < 8")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn long_path_one_stripe() {
        let g = families::path(30);
        let c = g.vertex_set();
        let l = find_lollipop(&g, &c, 1, 1, 2, ChiPolicy::Assume).unwrap();
        assert_eq!(l.stripe, vec![0]);
        assert_eq!(l.path, (0..=7).collect::<Vec<_>>());
        assert_eq!(l.set, (8..30).collect());
        assert!(!l.assumptions.is_empty());
    }

    #[test]
    fn degenerate_and_refuted() {
        let g = families::path(30);
        let l = find_lollipop(&g, &g.vertex_set(), 1, 0, 2, ChiPolicy::Assume).unwrap();
        assert!(l.stripe.is_empty() && l.path.is_empty());
        assert!(matches!(
            find_lollipop(&g, &g.vertex_set(), 1, 1, 2, ChiPolicy::Verify),
            Err(Error::ChromaticRefuted(_))
        ));
    }

    #[test]
    fn two_stripes_on_a_long_path() {
        let g = families::path(40);
        let l = find_lollipop(&g, &g.vertex_set(), 1, 2, 1, ChiPolicy::Assume).unwrap();
        assert_eq!(l.stripe, vec![0, 8]);
        validate_lollipop(&g, &g.vertex_set(), &l).unwrap();
    }

    #[test]
    fn distant_paths_examples() {
        let g = families::path(40);
        let c = g.vertex_set();
        let none = find_distant_paths(&g, &c, 1, 0, 2, ChiPolicy::Verify).unwrap();
        assert!(none.paths.is_empty());
        let one = find_distant_paths(&g, &c, 1, 1, 2, ChiPolicy::Assume).unwrap();
        assert_eq!(one.paths, vec![vec![0]]);
        assert_eq!(one.marks, vec![vec![0]]);
        let two = find_distant_paths(&g, &c, 2, 2, 1, ChiPolicy::Assume).unwrap();
        assert_eq!(two.marks[1], vec![0, 8]);
        assert_eq!(two.paths[1], (0..=8).collect::<Vec<_>>());
        assert_eq!(two.marks[0], vec![18, 26]);
    }

    #[test]
    fn comb_for_two_by_two() {
        // A long spine with a pendant tooth on every vertex.
        let n = 60;
        let mut g = families::path(n);
        for v in 0..n as Vertex {
            g.add_vertex(100 + v);
            g.add_edge(v, 100 + v);
        }
        let dp = find_distant_paths(&g, &g.vertex_set(), 2, 2, 2, ChiPolicy::Assume).unwrap();
        validate_distant_paths(&g, &g.vertex_set(), 2, &dp).unwrap();
        let mut bad = dp.clone();
        bad.marks[0][0] = bad.paths[1][1];
        assert!(validate_distant_paths(&g, &g.vertex_set(), 2, &bad).is_err());
    }
}
