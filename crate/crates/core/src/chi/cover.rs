//! Long covers, long q-covers, and paths dangling spaciously from them.

use serde::{Deserialize, Serialize};

use super::lollipop::find_distant_paths;
use super::{max_chi_component, pairwise_far, require_chi_at_least, require_chi_ball_at_most};
use super::{Assumption, ChiPolicy};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::solve;

/// `(L^0, L^1, L^2, L^3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongCover {
    pub layers: [VertexSet; 4],
}

impl LongCover {
    pub fn vertices(&self) -> VertexSet {
        self.layers.iter().flatten().copied().collect()
    }
}

/// A long q-cover of `covered`, optionally with dangling paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongCoverCert {
    /// `covers[i]` is the cover with index `i + 1`.
    pub covers: Vec<LongCover>,
    pub covered: VertexSet,
    pub paths: Vec<Vec<Vertex>>,
    /// `markers[i][j] = m_{i+1,j+1}`.
    pub markers: Vec<Vec<Vertex>>,
    pub assumptions: Vec<Assumption>,
}

impl LongCoverCert {
    pub fn q(&self) -> usize {
        self.covers.len()
    }

    pub fn h(&self) -> usize {
        self.paths.len()
    }

    fn cover_vertices(&self) -> VertexSet {
        self.covers.iter().flat_map(|c| c.vertices()).collect()
    }
}

pub fn validate_long_cover(g: &Graph, cover: &LongCover, covered: &VertexSet) -> Result<()> {
    let mut all: Vec<&VertexSet> = cover.layers.iter().collect();
    all.push(covered);
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if !all[i].is_disjoint(all[j]) {
                return Err(precondition("long cover sets are not pairwise disjoint"));
            }
        }
    }
    let l = &cover.layers;
    if l[0].is_empty() || !g.induced(&l[0]).is_connected() {
        return Err(precondition("G[L^0] is not connected"));
    }
    for i in 0..3 {
        if !g.covers(&l[i], &l[i + 1]) {
            return Err(precondition(format!("L^{i} does not cover L^{}", i + 1)));
        }
        if !g.is_anticomplete_to(covered, &l[i]) {
            return Err(precondition(format!("covered set touches L^{i}")));
        }
    }
    if !g.covers(&l[3], covered) {
        return Err(precondition("L^3 does not cover the covered set"));
    }
    for i in 0..4 {
        for j in i + 2..4 {
            if !g.is_anticomplete_to(&l[i], &l[j]) {
                return Err(precondition(format!("L^{i} touches L^{j}")));
            }
        }
    }
    Ok(())
}

pub fn validate_q_cover(g: &Graph, covers: &[LongCover], covered: &VertexSet) -> Result<()> {
    for (i, c) in covers.iter().enumerate() {
        validate_long_cover(g, c, covered).map_err(|e| precondition(format!("cover {}: {e}", i + 1)))?;
    }
    for i in 0..covers.len() {
        let li = covers[i].vertices();
        for (j, cj) in covers.iter().enumerate().skip(i + 1) {
            if !li.is_disjoint(&cj.vertices()) {
                return Err(precondition(format!("covers {} and {} intersect", i + 1, j + 1)));
            }
            let low: VertexSet = cj.layers[..3].iter().flatten().copied().collect();
            if !g.is_anticomplete_to(&low, &li) {
                return Err(precondition(format!("L^0..L^2 of cover {} touch cover {}", j + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Validates the q-cover and, when paths are present, spacious dangling.
pub fn validate_spacious(g: &Graph, cert: &LongCoverCert) -> Result<()> {
    validate_q_cover(g, &cert.covers, &cert.covered)?;
    let (q, h) = (cert.q(), cert.h());
    if cert.markers.len() != q || cert.markers.iter().any(|r| r.len() != h) {
        return Err(precondition("marker table must be q by h"));
    }
    let cover = cert.cover_vertices();
    let sets: Vec<VertexSet> = cert.paths.iter().map(|p| p.iter().copied().collect()).collect();
    for (j, p) in cert.paths.iter().enumerate() {
        if p.is_empty() || !g.is_induced_path(p) {
            return Err(precondition(format!("P_{} is not an induced path", j + 1)));
        }
        if !sets[j].is_disjoint(&cover) {
            return Err(precondition(format!("P_{} meets the cover", j + 1)));
        }
        for k in j + 1..sets.len() {
            if !sets[j].is_disjoint(&sets[k]) || !g.is_anticomplete_to(&sets[j], &sets[k]) {
                return Err(precondition(format!("P_{} and P_{} are not apart", j + 1, k + 1)));
            }
        }
    }
    let all_m: Vec<Vertex> = cert.markers.iter().flatten().copied().collect();
    if let Some((a, b, d)) = pairwise_far(g, &all_m, 6) {
        return Err(precondition(format!("markers {a}, {b} at distance {d} < 6")));
    }
    for (i, row) in cert.markers.iter().enumerate() {
        if !row.iter().all(|m| cert.covers[i].layers[3].contains(m)) {
            return Err(precondition(format!("a marker of row {} is not in L^3", i + 1)));
        }
    }
    let mut keep = cover;
    keep.extend(sets.iter().flatten().copied());
    let sub = g.induced(&keep);
    for (j, s) in sets.iter().enumerate() {
        let want: VertexSet = cert.markers.iter().map(|r| r[j]).collect();
        if sub.neighborhood_of_set(s) != want {
            return Err(precondition(format!("P_{} does not dangle from its markers", j + 1)));
        }
    }
    Ok(())
}

fn dedup(mut flags: Vec<Assumption>) -> Vec<Assumption> {
    flags.sort();
    flags.dedup();
    flags
}

fn pow2_times(q: usize, x: u128) -> u128 {
    if q >= 128 {
        return u128::MAX;
    }
    x.saturating_mul(1u128 << q)
}

/// A long q-cover of a set `C` with `χ(C) > c`, by the levelling argument.
/// The level `t` is found by scanning upward from 1.
pub fn find_long_q_cover(
    g: &Graph,
    q: usize,
    c: usize,
    kappa: usize,
    policy: ChiPolicy,
) -> Result<(LongCoverCert, VertexSet)> {
    let mut flags = Vec::new();
    let m = c.max(kappa) as u128;
    require_chi_at_least(g, &g.vertex_set(), pow2_times(q, m).saturating_add(1), "host graph", policy, &mut flags)?;
    require_chi_ball_at_most(g, 3, kappa, policy, &mut flags)?;
    let (covers, covered) = level(g, q, m)?;
    if q > 0 {
        require_chi_at_least(g, &covered, c as u128 + 1, "covered set", policy, &mut flags)?;
    }
    let cert = LongCoverCert {
        covers,
        covered: covered.clone(),
        paths: Vec::new(),
        markers: Vec::new(),
        assumptions: dedup(flags),
    };
    validate_q_cover(g, &cert.covers, &cert.covered)?;
    Ok((cert, covered))
}

fn level(g: &Graph, q: usize, m: u128) -> Result<(Vec<LongCover>, VertexSet)> {
    let top = max_chi_component(g, &g.vertex_set()).unwrap_or_default();
    if q == 0 {
        return Ok((Vec::new(), top));
    }
    let v = *top.iter().next().ok_or_else(|| Error::Threshold("no vertices left for a cover".into()))?;
    let threshold = pow2_times(q - 1, m);
    let dist = g.distances_from(v);
    let depth = dist.values().copied().max().unwrap_or(0);
    let sphere = |t: usize| -> VertexSet { dist.iter().filter(|&(_, &d)| d == t).map(|(&u, _)| u).collect() };
    let t = (1..=depth)
        .find(|&t| solve::chi_estimate(&g.induced(&sphere(t))).lower as u128 > threshold)
        .ok_or_else(|| Error::Threshold(format!("no BFS level around {v} has χ certified above {threshold}")))?;
    if t < 4 {
        return Err(Error::ChromaticRefuted(format!(
            "level {t} around {v} already has χ > {threshold}, so χ^(3) exceeds κ"
        )));
    }
    let inner = g.induced(&sphere(t));
    let (mut covers, covered) = level(&inner, q - 1, m)?;
    let ball: VertexSet = dist.iter().filter(|&(_, &d)| d <= t - 4).map(|(&u, _)| u).collect();
    covers.push(LongCover { layers: [ball, sphere(t - 3), sphere(t - 2), sphere(t - 1)] });
    Ok((covers, covered))
}

/// A long q-cover with `h` paths dangling spaciously.
pub fn attach_dangling_paths(g: &Graph, q: usize, h: usize, kappa: usize, policy: ChiPolicy) -> Result<LongCoverCert> {
    let mut flags = Vec::new();
    require_chi_ball_at_most(g, 9, kappa, policy, &mut flags)?;
    let qhk = (q as u128).saturating_mul(h as u128).saturating_mul(kappa as u128);
    require_chi_at_least(g, &g.vertex_set(), pow2_times(q, qhk).saturating_add(1), "host graph", policy, &mut flags)?;
    let c = q.saturating_mul(h).saturating_mul(kappa);
    let (mut cert, c_star) = find_long_q_cover(g, q, c, kappa, policy)?;
    flags.append(&mut cert.assumptions);
    let dp = find_distant_paths(g, &c_star, q, h, kappa, policy)?;
    flags.extend(dp.assumptions.iter().cloned());
    let mut markers = vec![Vec::with_capacity(h); q];
    for (j, marks) in dp.marks.iter().enumerate() {
        for (i, &s) in marks.iter().enumerate() {
            let m = *g
                .neighbors(s)
                .iter()
                .find(|u| cert.covers[i].layers[3].contains(u))
                .ok_or_else(|| crate::error::consistency(format!("L^3 of cover {} misses {s}", i + 1)))?;
            debug_assert_eq!(markers[i].len(), j);
            markers[i].push(m);
        }
    }
    let path_set: VertexSet = dp.paths.iter().flatten().copied().collect();
    let marker_set: VertexSet = markers.iter().flatten().copied().collect();
    let prune: VertexSet = g.neighborhood_of_set(&path_set).difference(&marker_set).copied().collect();
    for cover in &mut cert.covers {
        for layer in &mut cover.layers {
            layer.retain(|v| !prune.contains(v));
        }
    }
    cert.covered = VertexSet::new();
    cert.paths = dp.paths;
    cert.markers = markers;
    cert.assumptions = dedup(flags);
    validate_spacious(g, &cert)?;
    Ok(cert)
}
