//! The control driver: either a chromatic bound in terms of `χ^(9)`, or a
//! replayable vertex-minor witness for the forbidden graph.

use serde::{Deserialize, Serialize};

use super::{
    attach_dangling_paths, extract_frame, frame_to_interfered, purify_frame, q_chain, trim_frame, Assumption, ChiPolicy,
};
use crate::error::{consistency, Error, Result};
use crate::graph::Graph;
use crate::oracle::{self, Mode, ORACLE_LIMIT};
use crate::solve::{self, ChiEstimate};
use crate::trace::Trace;
use crate::universal::universal_parameters;

pub const RHO: usize = 9;

/// Cover dimensions `(q', h')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriverParams {
    pub q: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ControlCertificate {
    ChiBound {
        rho: usize,
        kappa: usize,
        /// False when `κ` was supplied rather than computed.
        kappa_verified: bool,
        params: Option<DriverParams>,
        /// `2^{q'} q' h' κ`; absent when it does not fit in 128 bits.
        bound: Option<u128>,
        chi: ChiEstimate,
        /// `χ(G) <= bound` is certified by the colouring bound.
        within_bound: bool,
        note: String,
    },
    MinorWitness {
        target: Graph,
        trace: Trace,
        params: DriverParams,
        kappa: usize,
        assumptions: Vec<Assumption>,
    },
}

fn bound_for(q: u128, h: u128, kappa: usize) -> Option<u128> {
    if q >= 128 {
        return None;
    }
    (1u128 << q).checked_mul(q)?.checked_mul(h)?.checked_mul(kappa as u128)
}

/// Default cover dimensions for `forbidden`: the universal sizes `(q*, h*)`,
/// inflated by purification to `q*(3h*−5)` rows and by the Ramsey chain of
/// the frame extraction. Saturates at `u128::MAX`.
fn default_dimensions(forbidden: &Graph) -> (u128, u128) {
    let u = universal_parameters(forbidden);
    let h = u.h().unwrap_or(u128::MAX);
    let rows = if h >= 2 { u.q.saturating_mul(h.saturating_mul(3).saturating_sub(5)) } else { u.q };
    let q = if h > 64 || rows > 64 { u128::MAX } else { q_chain(rows as usize, h as usize)[h as usize] };
    (q, h)
}

/// Runs the control argument on `g`. With `params` the cover dimensions are
/// injected; otherwise they come from the universal sizes of `forbidden`,
/// which are astronomically large for any non-trivial graph. `kappa`, when
/// supplied, is trusted as `χ^(9)(g)`.
pub fn nine_control_driver(
    g: &Graph,
    forbidden: &Graph,
    params: Option<DriverParams>,
    kappa: Option<usize>,
) -> Result<ControlCertificate> {
    let (kappa, kappa_verified) = match kappa {
        Some(k) => (k, false),
        None => (solve::chi_ball(g, RHO)?, true),
    };
    let chi = solve::chi_estimate(g);
    let (bound, mut note) = match params {
        Some(p) => (bound_for(p.q as u128, p.h as u128, kappa), String::new()),
        None => {
            let (q, h) = default_dimensions(forbidden);
            let b = if q == u128::MAX || h == u128::MAX { None } else { bound_for(q, h, kappa) };
            (b, format!("default dimensions q' = {q}, h' = {h}"))
        }
    };
    let exceeds = bound.is_some_and(|b| chi.upper as u128 > b);
    if let (true, Some(p)) = (exceeds, params) {
        match pipeline(g, forbidden, p, kappa) {
            Ok((trace, assumptions)) => {
                return Ok(ControlCertificate::MinorWitness {
                    target: forbidden.clone(),
                    trace,
                    params: p,
                    kappa,
                    assumptions,
                })
            }
            Err(e) => note = format!("extraction pipeline stopped: {e}"),
        }
    }
    let within_bound = bound.is_some_and(|b| chi.upper as u128 <= b);
    Ok(ControlCertificate::ChiBound { rho: RHO, kappa, kappa_verified, params, bound, chi, within_bound, note })
}

/// Cover, frame, purification and contraction to an interfered `K^1`,
/// finished by the oracle on the interfered graph.
fn pipeline(g: &Graph, forbidden: &Graph, p: DriverParams, kappa: usize) -> Result<(Trace, Vec<Assumption>)> {
    let cert = attach_dangling_paths(g, p.q, p.h, kappa, ChiPolicy::Assume)?;
    let q_frame = (1..=p.q)
        .rev()
        .find(|&q| q_chain(q, p.h)[p.h] <= p.q as u128)
        .ok_or_else(|| Error::Threshold(format!("q' = {} fits no frame chain", p.q)))?;
    let ex = extract_frame(g, &cert, q_frame, p.h)?;
    let mut trace = ex.trace.clone();
    let (mut graph, mut frame) = (ex.graph, ex.frame);
    if p.h >= 2 {
        let (tg, tf) = trim_frame(&graph, &frame)?;
        let q_pure = (tf.q() / (3 * p.h - 5)).max(1);
        let (pg, pf) = purify_frame(&tg, &tf, q_pure, p.h)?;
        for v in graph.vertices().filter(|&v| !pg.has_vertex(v)) {
            trace.del(v);
        }
        graph = pg;
        frame = pf;
    }
    let inter = frame_to_interfered(&graph, &frame)?;
    trace.extend(&inter.trace);
    let host = &inter.cert.graph;
    if host.order() > ORACLE_LIMIT {
        return Err(Error::Threshold(format!(
            "interfered K^1_({},{}) has {} vertices, beyond the oracle",
            inter.cert.n(),
            inter.cert.m(),
            host.order()
        )));
    }
    let tail = oracle::contains_minor(host, forbidden, Mode::VertexMinor)?
        .ok_or_else(|| Error::Threshold("interfered graph does not contain the forbidden graph".into()))?;
    trace.extend(&tail);
    if !oracle::verify_witness(g, forbidden, &trace)? {
        return Err(consistency("driver witness does not replay to the forbidden graph"));
    }
    Ok((trace, cert.assumptions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chi::generators::engineered_cover;
    use crate::families;

    #[test]
    fn small_chi_gives_a_bound() {
        let c5 = families::cycle(5);
        let p = DriverParams { q: 1, h: 1 };
        match nine_control_driver(&c5, &families::complete(2), Some(p), None).unwrap() {
            ControlCertificate::ChiBound { kappa, kappa_verified, bound, within_bound, .. } => {
                assert_eq!((kappa, kappa_verified), (3, true));
                assert_eq!(bound, Some(6));
                assert!(within_bound);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn engineered_instances_yield_witnesses() {
        // Cliques sized to beat 2^q q h κ with κ = 1.
        for (q, h, clique, target) in
            [(1, 1, 3, families::complete(2)), (1, 2, 5, families::path(3)), (2, 2, 17, families::complete(3))]
        {
            let e = engineered_cover(q, h, clique).unwrap();
            let cert = nine_control_driver(&e.graph, &target, Some(DriverParams { q, h }), Some(1)).unwrap();
            match cert {
                ControlCertificate::MinorWitness { trace, assumptions, .. } => {
                    assert!(oracle::verify_witness(&e.graph, &target, &trace).unwrap());
                    assert!(!assumptions.is_empty());
                }
                other => panic!("({q},{h}): {other:?}"),
            }
        }
    }

    #[test]
    fn supplied_kappa_passes_through() {
        let g = families::subdivide(&families::complete(12), 1);
        match nine_control_driver(&g, &families::complete(3), None, Some(2)).unwrap() {
            ControlCertificate::ChiBound { kappa, kappa_verified, bound, within_bound, note, .. } => {
                assert_eq!((kappa, kappa_verified, bound, within_bound), (2, false, None, false));
                assert!(note.contains("default dimensions"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            nine_control_driver(&families::complete(40), &families::complete(2), None, None),
            Err(Error::BallLimit { .. })
        ));
    }

    #[test]
    fn failed_pipeline_reports_the_bound() {
        // χ(K5) = 5 exceeds the (1,1) bound with κ = 1, but K5 has no cover.
        let cert = nine_control_driver(
            &families::complete(5),
            &families::complete(2),
            Some(DriverParams { q: 1, h: 1 }),
            Some(1),
        )
        .unwrap();
        match cert {
            ControlCertificate::ChiBound { within_bound, note, .. } => {
                assert!(!within_bound);
                assert!(note.starts_with("extraction pipeline stopped"), "{note}");
            }
            other => panic!("{other:?}"),
        }
    }
}
