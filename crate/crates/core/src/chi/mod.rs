//! High-chromatic structures: lollipops, distant paths, long covers with
//! dangling paths, frames, and the control driver built from them.
//!
//! Chromatic hypotheses are far beyond exact solving at realistic sizes, so
//! every construction takes a [`ChiPolicy`]. Under `Verify` the hypotheses
//! are checked whenever the solvers can decide them and refuted hypotheses
//! are errors; under `Assume` they are taken on trust. Either way the
//! certificate records which hypotheses were not verified.

mod cover;
mod dangling;
mod driver;
mod frame;
pub mod generators;
mod lollipop;

pub use cover::{
    attach_dangling_paths, find_long_q_cover, validate_long_cover, validate_q_cover, validate_spacious, LongCover,
    LongCoverCert,
};
pub use dangling::{contract_dangling_path, dangles, dangles_oddly, fix_parity, DanglingContraction, ParityFix};
pub use driver::{nine_control_driver, ControlCertificate, DriverParams};
pub use frame::{
    extract_frame, frame_to_interfered, purify_frame, q_chain, trim_frame, validate_frame, FrameCert, FrameExtraction,
    FrameFlavor, Interfered,
};
pub use lollipop::{
    find_distant_paths, find_lollipop, validate_distant_paths, validate_lollipop, DistantPaths, LollipopCert,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::solve::{self, ChiEstimate};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChiPolicy {
    #[default]
    Verify,
    Assume,
}

/// A chromatic hypothesis that was taken on trust rather than verified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Assumption(pub String);

fn estimate(g: &Graph, set: &VertexSet) -> ChiEstimate {
    solve::chi_estimate(&g.induced(set))
}

/// `χ(set) >= threshold`.
pub(crate) fn require_chi_at_least(
    g: &Graph,
    set: &VertexSet,
    threshold: u128,
    what: &str,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<()> {
    if policy == ChiPolicy::Verify {
        let e = estimate(g, set);
        if (e.upper as u128) < threshold {
            return Err(Error::ChromaticRefuted(format!("{what}: χ <= {} < {threshold}", e.upper)));
        }
        if e.lower as u128 >= threshold {
            return Ok(());
        }
    }
    flags.push(Assumption(format!("{what}: χ >= {threshold}")));
    Ok(())
}

/// `χ^(ρ)(g) <= kappa`.
pub(crate) fn require_chi_ball_at_most(
    g: &Graph,
    rho: usize,
    kappa: usize,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<()> {
    if policy == ChiPolicy::Verify {
        match solve::chi_ball(g, rho) {
            Ok(c) if c <= kappa => return Ok(()),
            Ok(c) => return Err(Error::ChromaticRefuted(format!("χ^({rho}) = {c} exceeds κ = {kappa}"))),
            Err(Error::BallLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    flags.push(Assumption(format!("χ^({rho}) <= {kappa}")));
    Ok(())
}

/// Component of `g[set]` with the largest χ (by the lower estimate, then the
/// upper one); ties go to the smallest minimum label.
pub(crate) fn max_chi_component(g: &Graph, set: &VertexSet) -> Option<VertexSet> {
    let sub = g.induced(set);
    let mut best: Option<(ChiEstimate, VertexSet)> = None;
    for comp in sub.components() {
        let e = solve::chi_estimate(&sub.induced(&comp));
        let better = match &best {
            None => true,
            Some((b, _)) => (e.lower, e.upper) > (b.lower, b.upper),
        };
        if better {
            best = Some((e, comp));
        }
    }
    best.map(|(_, c)| c)
}

/// Checks that every pair in `vs` is at distance at least `d` in `g`.
pub(crate) fn pairwise_far(g: &Graph, vs: &[Vertex], d: usize) -> Option<(Vertex, Vertex, usize)> {
    for (i, &a) in vs.iter().enumerate() {
        let dist = g.distances_from(a);
        for &b in &vs[i + 1..] {
            let got = dist.get(&b).copied().unwrap_or(usize::MAX);
            if got < d {
                return Some((a, b, got));
            }
        }
    }
    None
}
