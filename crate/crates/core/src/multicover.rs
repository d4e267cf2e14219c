//! Multicovers: validation, construction from high-χ graphs, refinement to
//! pure or impure, the pivot cascade that purifies impure multicovers, and
//! the odd-path pivot contraction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chi::{Assumption, ChiPolicy};
use crate::error::{consistency, precondition, Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::ramsey::{self, Split};
use crate::solve;
use crate::trace::{self, Trace};

/// Crest data: centres `a_i` and arms `a_{i,x}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crest {
    pub centres: Vec<Vertex>,
    /// `arms[i][k] = a_{i+1, order[k]}`.
    pub arms: Vec<Vec<Vertex>>,
}

/// `(N_x : x ∈ X)` covering `C`, with `X` listed in its total order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticoverCert {
    #[serde(rename = "X")]
    pub order: Vec<Vertex>,
    /// `families[k] = N_{order[k]}`.
    #[serde(rename = "N")]
    pub families: Vec<VertexSet>,
    #[serde(rename = "C")]
    pub covered: VertexSet,
    pub stable: bool,
    pub pure: bool,
    pub impure: bool,
    pub crest: Option<Crest>,
    #[serde(default)]
    pub assumptions: Vec<Assumption>,
}

impl MulticoverCert {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn union(&self) -> VertexSet {
        self.families.iter().flatten().copied().collect()
    }

    /// `C ∪ X ∪ ⋃N_x`.
    pub fn support(&self) -> VertexSet {
        let mut s = self.union();
        s.extend(self.order.iter().copied());
        s.extend(self.covered.iter().copied());
        s
    }

    fn prefix(&self, k: usize) -> MulticoverCert {
        MulticoverCert {
            order: self.order[..k].to_vec(),
            families: self.families[..k].to_vec(),
            crest: None,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureKind {
    Multicover,
    Crested,
    /// An induced path claimed to be an oddity.
    Oddity(Vec<Vertex>),
}

/// The first clause that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Shape,
    MissingVertex(Vertex),
    NotDisjoint,
    XNotStable,
    XTouchesC,
    NotNeighbours { x: Vertex },
    NotCovering { x: Vertex, v: Vertex },
    LaterSeesEarlier { earlier: Vertex, later: Vertex },
    NotPure { x: Vertex, y: Vertex },
    NotImpure { x: Vertex, y: Vertex },
    FamilyNotStable { x: Vertex },
    NoCrest,
    CrestShape,
    CentreArms { centre: Vertex },
    ArmAttachment { arm: Vertex },
    CentreTouches { centre: Vertex },
    CrestNotStable,
    OddityLength(usize),
    OddityNotInduced,
    OddityEnds,
    OddityForeignX { x: Vertex },
    OddityOutside { v: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape => write!(f, "one family per element of X is required"),
            Violation::MissingVertex(v) => write!(f, "vertex {v} is not in the graph"),
            Violation::NotDisjoint => write!(f, "X, C and the families are not disjoint"),
            Violation::XNotStable => write!(f, "X is not stable"),
            Violation::XTouchesC => write!(f, "X is not anti-complete to C"),
            Violation::NotNeighbours { x } => write!(f, "N_{x} is not contained in N({x})"),
            Violation::NotCovering { x, v } => write!(f, "N_{x} does not cover {v} of C"),
            Violation::LaterSeesEarlier { earlier, later } => {
                write!(f, "{later} follows {earlier} but is not anti-complete to N_{earlier}")
            }
            Violation::NotPure { x, y } => write!(f, "pure: {y} is not anti-complete to N_{x}"),
            Violation::NotImpure { x, y } => write!(f, "impure: {x} is not complete to N_{y}"),
            Violation::FamilyNotStable { x } => write!(f, "stable: N_{x} is not stable"),
            Violation::NoCrest => write!(f, "no crest data"),
            Violation::CrestShape => write!(f, "crest vertices are not distinct, or lie inside the multicover"),
            Violation::CentreArms { centre } => write!(f, "centre {centre} does not see exactly its own arms"),
            Violation::ArmAttachment { arm } => write!(f, "arm {arm} does not see exactly its own element of X"),
            Violation::CentreTouches { centre } => write!(f, "centre {centre} touches the multicover"),
            Violation::CrestNotStable => write!(f, "centres or arms are not stable"),
            Violation::OddityLength(l) => write!(f, "oddity must have length 3 or 5, found {l}"),
            Violation::OddityNotInduced => write!(f, "oddity is not an induced path"),
            Violation::OddityEnds => write!(f, "oddity ends are not in X"),
            Violation::OddityForeignX { x } => write!(f, "{x} of X meets the oddity without being an end"),
            Violation::OddityOutside { v } => write!(f, "oddity vertex {v} lies outside C, X and the families"),
        }
    }
}

/// Checks the multicover clauses, the flagged pure, impure and stable
/// clauses, and the crest or oddity clauses when asked.
pub fn validate_structure(
    g: &Graph,
    cert: &MulticoverCert,
    kind: &StructureKind,
) -> std::result::Result<(), Violation> {
    validate_multicover(g, cert)?;
    match kind {
        StructureKind::Multicover => Ok(()),
        StructureKind::Crested => validate_crest(g, cert),
        StructureKind::Oddity(p) => validate_oddity(g, cert, p),
    }
}

fn validate_multicover(g: &Graph, cert: &MulticoverCert) -> std::result::Result<(), Violation> {
    if cert.order.len() != cert.families.len() {
        return Err(Violation::Shape);
    }
    let mut total = cert.order.len() + cert.covered.len();
    let mut seen: VertexSet = cert.order.iter().chain(cert.covered.iter()).copied().collect();
    for n in &cert.families {
        total += n.len();
        seen.extend(n.iter().copied());
    }
    if let Some(&v) = seen.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(Violation::MissingVertex(v));
    }
    if seen.len() != total {
        return Err(Violation::NotDisjoint);
    }
    let x: VertexSet = cert.order.iter().copied().collect();
    if !g.is_stable(&x) {
        return Err(Violation::XNotStable);
    }
    if !g.is_anticomplete_to(&x, &cert.covered) {
        return Err(Violation::XTouchesC);
    }
    for (k, (&xv, n)) in cert.order.iter().zip(&cert.families).enumerate() {
        if !n.is_subset(g.neighbors(xv)) {
            return Err(Violation::NotNeighbours { x: xv });
        }
        if let Some(&v) = cert.covered.iter().find(|v| g.neighbors(**v).is_disjoint(n)) {
            return Err(Violation::NotCovering { x: xv, v });
        }
        for &later in &cert.order[k + 1..] {
            if !g.neighbors(later).is_disjoint(n) {
                return Err(Violation::LaterSeesEarlier { earlier: xv, later });
            }
        }
    }
    for (k, &xv) in cert.order.iter().enumerate() {
        for (l, &yv) in cert.order.iter().enumerate().skip(k + 1) {
            if cert.pure && !g.neighbors(xv).is_disjoint(&cert.families[l]) {
                return Err(Violation::NotPure { x: yv, y: xv });
            }
            if cert.impure && !cert.families[l].is_subset(g.neighbors(xv)) {
                return Err(Violation::NotImpure { x: xv, y: yv });
            }
        }
        if cert.stable && !g.is_stable(&cert.families[k]) {
            return Err(Violation::FamilyNotStable { x: xv });
        }
    }
    Ok(())
}

fn validate_crest(g: &Graph, cert: &MulticoverCert) -> std::result::Result<(), Violation> {
    if !cert.pure {
        validate_multicover(g, &MulticoverCert { pure: true, ..cert.clone() })?;
    }
    let crest = cert.crest.as_ref().ok_or(Violation::NoCrest)?;
    let k = crest.centres.len();
    if crest.arms.len() != k || crest.arms.iter().any(|r| r.len() != cert.len()) {
        return Err(Violation::CrestShape);
    }
    let centres: VertexSet = crest.centres.iter().copied().collect();
    let arms: VertexSet = crest.arms.iter().flatten().copied().collect();
    let support = cert.support();
    if centres.len() != k
        || arms.len() != k * cert.len()
        || !centres.is_disjoint(&arms)
        || !support.is_disjoint(&centres)
        || !support.is_disjoint(&arms)
        || centres.iter().chain(arms.iter()).any(|&v| !g.has_vertex(v))
    {
        return Err(Violation::CrestShape);
    }
    for (i, &a) in crest.centres.iter().enumerate() {
        let own: VertexSet = crest.arms[i].iter().copied().collect();
        let seen: VertexSet = g.neighbors(a).intersection(&arms).copied().collect();
        if seen != own {
            return Err(Violation::CentreArms { centre: a });
        }
    }
    for row in &crest.arms {
        for (k, &arm) in row.iter().enumerate() {
            let seen: VertexSet = g.neighbors(arm).intersection(&support).copied().collect();
            if seen != VertexSet::from([cert.order[k]]) {
                return Err(Violation::ArmAttachment { arm });
            }
        }
    }
    if let Some(&a) = crest.centres.iter().find(|&&a| !g.neighbors(a).is_disjoint(&support)) {
        return Err(Violation::CentreTouches { centre: a });
    }
    if !g.is_stable(&centres) || !g.is_stable(&arms) {
        return Err(Violation::CrestNotStable);
    }
    Ok(())
}

fn validate_oddity(g: &Graph, cert: &MulticoverCert, p: &[Vertex]) -> std::result::Result<(), Violation> {
    let len = p.len().saturating_sub(1);
    if len != 3 && len != 5 {
        return Err(Violation::OddityLength(len));
    }
    if let Some(&v) = p.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(Violation::MissingVertex(v));
    }
    if !g.is_induced_path(p) {
        return Err(Violation::OddityNotInduced);
    }
    let x: VertexSet = cert.order.iter().copied().collect();
    let ends = [p[0], p[len]];
    if !ends.iter().all(|e| x.contains(e)) {
        return Err(Violation::OddityEnds);
    }
    let pset: VertexSet = p.iter().copied().collect();
    for &xv in x.iter().filter(|v| !ends.contains(v)) {
        if pset.contains(&xv) || !g.neighbors(xv).is_disjoint(&pset) {
            return Err(Violation::OddityForeignX { x: xv });
        }
    }
    let support = cert.support();
    if let Some(&v) = p.iter().find(|v| !support.contains(v)) {
        return Err(Violation::OddityOutside { v });
    }
    Ok(())
}

fn checked(g: &Graph, cert: &MulticoverCert, what: &str) -> Result<()> {
    validate_structure(g, cert, &StructureKind::Multicover).map_err(|v| consistency(format!("{what}: {v}")))
}

fn by_chi(g: &Graph, set: &VertexSet) -> solve::ChiEstimate {
    solve::chi_estimate(&g.induced(set))
}

fn require_chi(
    g: &Graph,
    set: &VertexSet,
    threshold: u128,
    what: &str,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<()> {
    if policy == ChiPolicy::Verify {
        let e = by_chi(g, set);
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

/// `ω(g[set]) <= bound`, exactly when the clique solver applies.
fn require_omega(
    g: &Graph,
    set: &VertexSet,
    bound: usize,
    what: &str,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<()> {
    let sub = g.induced(set);
    let (omega, exact) = match solve::clique_number(&sub) {
        Ok(c) => (c.omega, true),
        Err(_) => (solve::greedy_clique(&sub).len(), false),
    };
    if omega > bound {
        return Err(Error::ChromaticRefuted(format!("{what}: ω >= {omega} > {bound}")));
    }
    if !exact || policy == ChiPolicy::Assume {
        flags.push(Assumption(format!("{what}: ω <= {bound}")));
    }
    Ok(())
}

/// Largest-χ component of `g[set]`, ties to the smallest minimum label.
fn best_component(g: &Graph, set: &VertexSet) -> VertexSet {
    let sub = g.induced(set);
    let mut best: Option<(solve::ChiEstimate, VertexSet)> = None;
    for comp in sub.components() {
        let e = solve::chi_estimate(&sub.induced(&comp));
        if best.as_ref().is_none_or(|(b, _)| (e.lower, e.upper) > (b.lower, b.upper)) {
            best = Some((e, comp));
        }
    }
    best.map(|(_, c)| c).unwrap_or_default()
}

/// A length-`ell` stable multicover of a set `C` with `χ(C) >= c`.
///
/// Each round picks the vertex `y` whose closed 2-ball has the largest χ
/// (smallest label on ties), splits `N(y)` into colour classes, keeps the
/// class `N_y` whose second-neighbourhood trace `N(N_y) ∩ N_2(y)` has the
/// largest χ, and recurses inside that trace with `y` appended last.
pub fn find_stable_multicover(
    g: &Graph,
    ell: usize,
    c: usize,
    tau: usize,
    omega: usize,
    policy: ChiPolicy,
) -> Result<(MulticoverCert, VertexSet)> {
    let mut flags = Vec::new();
    require_omega(g, &g.vertex_set(), omega, "host graph", policy, &mut flags)?;
    let (mut cert, covered) = build_multicover(g, &g.vertex_set(), ell, tau, policy, &mut flags)?;
    require_chi(g, &covered, c as u128, "covered set", policy, &mut flags)?;
    flags.sort();
    flags.dedup();
    cert.assumptions = flags;
    checked(g, &cert, "constructed multicover")?;
    Ok((cert, covered))
}

fn build_multicover(
    g: &Graph,
    within: &VertexSet,
    ell: usize,
    tau: usize,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<(MulticoverCert, VertexSet)> {
    if ell == 0 {
        let c = best_component(g, within);
        let cert = MulticoverCert {
            order: Vec::new(),
            families: Vec::new(),
            covered: c.clone(),
            stable: true,
            pure: true,
            impure: true,
            crest: None,
            assumptions: Vec::new(),
        };
        return Ok((cert, c));
    }
    let h = g.induced(within);
    let mut best: Option<(solve::ChiEstimate, Vertex)> = None;
    for y in h.vertices() {
        let ball = h.ball(&VertexSet::from([y]), 2);
        let e = by_chi(&h, &ball);
        if best.is_none_or(|(b, _)| (e.lower, e.upper) > (b.lower, b.upper)) {
            best = Some((e, y));
        }
    }
    let (_, y) = best.ok_or_else(|| Error::Threshold(format!("nothing left for element {ell} of X")))?;
    let ny = h.neighbors(y).clone();
    let classes = colour_classes(&h, &ny);
    if policy == ChiPolicy::Verify {
        if let Ok(col) = solve::chromatic_number(&h.induced(&ny)) {
            if col.chi > tau {
                return Err(Error::ChromaticRefuted(format!("χ(N({y})) = {} exceeds τ = {tau}", col.chi)));
            }
        } else {
            flags.push(Assumption(format!("χ(N({y})) <= {tau}")));
        }
    } else {
        flags.push(Assumption(format!("χ(N({y})) <= {tau}")));
    }
    let second = h.sphere(&VertexSet::from([y]), 2);
    let mut pick: Option<(solve::ChiEstimate, VertexSet, VertexSet)> = None;
    for class in classes {
        let reach: VertexSet = h.neighborhood_of_set(&class).intersection(&second).copied().collect();
        let e = by_chi(&h, &reach);
        if pick.as_ref().is_none_or(|(b, _, _)| (e.lower, e.upper) > (b.lower, b.upper)) {
            pick = Some((e, class, reach));
        }
    }
    let (_, n_y, reach) = pick.ok_or_else(|| Error::Threshold(format!("{y} has no neighbours")))?;
    let (mut inner, covered) = build_multicover(&h, &reach, ell - 1, tau, policy, flags)?;
    if covered.is_empty() {
        return Err(Error::Threshold(format!("no covered set left below {y}")));
    }
    // Shrink N_y to the vertices that still see the covered set.
    let n_y: VertexSet = n_y.into_iter().filter(|&n| !h.neighbors(n).is_disjoint(&covered)).collect();
    inner.order.push(y);
    inner.families.push(n_y);
    inner.pure = false;
    inner.impure = false;
    Ok((inner, covered))
}

/// Exact colour classes when the solver applies, greedy ones otherwise.
fn colour_classes(g: &Graph, set: &VertexSet) -> Vec<VertexSet> {
    let sub = g.induced(set);
    let colours: BTreeMap<Vertex, usize> = match solve::chromatic_number(&sub) {
        Ok(c) => c.colors,
        Err(_) => {
            let mut out = BTreeMap::new();
            for v in sub.vertices() {
                let used: VertexSet =
                    sub.neighbors(v).iter().filter_map(|u| out.get(u).map(|&c: &usize| c as Vertex)).collect();
                let c = (0..).find(|c| !used.contains(c)).expect("unbounded");
                out.insert(v, c as usize);
            }
            out
        }
    };
    let mut classes: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (v, c) in colours {
        classes.entry(c).or_default().insert(v);
    }
    classes.into_values().collect()
}

/// Minimum-label neighbour of `v` in `family`.
fn representative(g: &Graph, v: Vertex, family: &VertexSet) -> Option<Vertex> {
    g.neighbors(v).intersection(family).next().copied()
}

/// Refines a stable multicover of length at least `R(m,m)` to a length-`m`
/// stable multicover of some `C' ⊆ C` that is pure or impure, with
/// `χ(C') >= c`.
pub fn refine_multicover(
    g: &Graph,
    cert: &MulticoverCert,
    m: usize,
    c: usize,
    policy: ChiPolicy,
) -> Result<MulticoverCert> {
    let stable = MulticoverCert { stable: true, pure: false, impure: false, ..cert.clone() };
    validate_structure(g, &stable, &StructureKind::Multicover)
        .map_err(|v| precondition(format!("input is not a stable multicover: {v}")))?;
    let r = ramsey::ramsey(m, m);
    if (cert.len() as u128) < r.value {
        return Err(Error::Threshold(format!("length {} is below R({m},{m}) = {}", cert.len(), r.value)));
    }
    let len = r.value as usize;
    let order = &cert.order[..len];
    let families = &cert.families[..len];
    let mut flags = cert.assumptions.clone();
    let pairs = ramsey::binomial(len, 2);
    let need = if pairs >= 128 { u128::MAX } else { (c as u128).saturating_mul(1u128 << pairs) };
    require_chi(g, &cert.covered, need, "covered set", policy, &mut flags)?;
    // f(v): the pairs (k, l), k < l, with p_v^{x_l} adjacent to x_k.
    let mut groups: BTreeMap<Vec<(usize, usize)>, VertexSet> = BTreeMap::new();
    for &v in &cert.covered {
        let reps: Vec<Vertex> = families.iter().map(|n| representative(g, v, n).expect("validated covering")).collect();
        let key: Vec<(usize, usize)> = (0..len)
            .flat_map(|k| (k + 1..len).map(move |l| (k, l)))
            .filter(|&(k, l)| g.has_edge(order[k], reps[l]))
            .collect();
        groups.entry(key).or_default().insert(v);
    }
    let (key, c_prime) = groups
        .into_iter()
        .max_by(|(ka, a), (kb, b)| {
            let (ea, eb) = (by_chi(g, a), by_chi(g, b));
            (ea.lower, ea.upper).cmp(&(eb.lower, eb.upper)).then(kb.cmp(ka))
        })
        .ok_or_else(|| precondition("covered set is empty"))?;
    require_chi(g, &c_prime, c as u128, "refined covered set", policy, &mut flags)?;
    let aux_edges: Vec<(Vertex, Vertex)> = key.iter().map(|&(k, l)| (k as Vertex, l as Vertex)).collect();
    let aux = Graph::from_edges(len, &aux_edges);
    let (chosen, pure) = match ramsey::split(&aux, &aux.vertex_set(), m, m) {
        Some(Split::Stable(s)) => (s, true),
        Some(Split::Clique(s)) => (s, false),
        None => return Err(consistency("Ramsey split failed at R(m,m)")),
    };
    let chosen: Vec<usize> = chosen.into_iter().map(|k| k as usize).collect();
    let families: Vec<VertexSet> = chosen
        .iter()
        .map(|&k| {
            c_prime.iter().map(|&v| representative(g, v, &cert.families[k]).expect("validated covering")).collect()
        })
        .collect();
    flags.sort();
    flags.dedup();
    let out = MulticoverCert {
        order: chosen.iter().map(|&k| order[k]).collect(),
        families,
        covered: c_prime,
        stable: true,
        pure: pure || m <= 1,
        impure: !pure || m <= 1,
        crest: None,
        assumptions: flags,
    };
    checked(g, &out, "refined multicover")?;
    Ok(out)
}

/// Output of [`impure_to_pure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Purified {
    pub graph: Graph,
    pub cert: MulticoverCert,
    pub trace: Trace,
    /// The same graph described by edge surgery, restricted to the
    /// multicover's support.
    pub surgery: Graph,
}

/// `ℓ'` for the impure-to-pure lemma: `ℓ` when `ω* = 1`, else
/// `ℓ'_0² R(ω*+1, ℓ)` with `ℓ'_0` the value for `ω* − 1`. Saturates.
pub fn impure_length(ell: usize, omega_star: usize) -> u128 {
    if omega_star <= 1 {
        return ell as u128;
    }
    let l0 = impure_length(ell, omega_star - 1);
    l0.saturating_mul(l0).saturating_mul(ramsey::ramsey(omega_star + 1, ell).value)
}

/// Turns a stable impure multicover into a stable pure multicover of a
/// pivot-minor, following the induction on `ω* = ω(⋃N_x)`.
pub fn impure_to_pure(
    g: &Graph,
    cert: &MulticoverCert,
    c: usize,
    ell: usize,
    tau: usize,
    omega: usize,
    omega_star: usize,
    policy: ChiPolicy,
) -> Result<Purified> {
    let claimed = MulticoverCert { stable: true, impure: true, pure: false, ..cert.clone() };
    validate_structure(g, &claimed, &StructureKind::Multicover)
        .map_err(|v| precondition(format!("input is not a stable impure multicover: {v}")))?;
    let mut flags = cert.assumptions.clone();
    require_omega(g, &g.vertex_set(), omega, "host graph", policy, &mut flags)?;
    require_omega(g, &cert.union(), omega_star, "union of the families", policy, &mut flags)?;
    if ell == 0 {
        return Err(precondition("ℓ must be positive"));
    }
    let need = impure_length(ell, omega_star);
    if (cert.len() as u128) < need {
        return Err(Error::Threshold(format!(
            "length {} is below ℓ' = {need} for ℓ = {ell}, ω* = {omega_star}",
            cert.len()
        )));
    }
    let mut out = if ell == 1 {
        let mut one = cert.prefix(1);
        one.pure = true;
        Purified { graph: g.clone(), surgery: g.induced(&one.support()), cert: one, trace: Trace::new() }
    } else {
        purify(g, &cert.prefix(need as usize), c, ell, tau, omega_star, policy, &mut flags)?
    };
    let before = solve::clique_number(g).map(|c| c.omega);
    let after = solve::clique_number(&out.graph).map(|c| c.omega);
    if let (Ok(b), Ok(a)) = (before, after) {
        if a > b {
            return Err(consistency(format!("pivot-minor has ω = {a} > {b}")));
        }
    }
    flags.append(&mut out.cert.assumptions);
    flags.sort();
    flags.dedup();
    out.cert.assumptions = flags;
    let pure = MulticoverCert { stable: true, pure: true, impure: false, ..out.cert.clone() };
    checked(&out.graph, &pure, "purified multicover")?;
    out.cert = pure;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn purify(
    g: &Graph,
    cert: &MulticoverCert,
    c: usize,
    ell: usize,
    tau: usize,
    omega_star: usize,
    policy: ChiPolicy,
    flags: &mut Vec<Assumption>,
) -> Result<Purified> {
    let len = cert.len();
    let n: Vec<Vertex> = cert
        .families
        .iter()
        .map(|f| f.iter().next().copied().ok_or_else(|| precondition("empty family")))
        .collect::<Result<_>>()?;
    let cx: VertexSet = n.iter().flat_map(|&nx| g.neighbors(nx).intersection(&cert.covered).copied()).collect();
    let c0: VertexSet = cert.covered.difference(&cx).copied().collect();
    let shrink = (ell as u128).saturating_mul(tau as u128);
    if omega_star <= 1 {
        require_chi(g, &cert.covered, (c as u128).saturating_add(shrink), "covered set", policy, flags)?;
        let order: Vec<usize> = (0..ell).collect();
        return cascade(g, cert, &order, &n, &c0, true);
    }
    let pairs = ramsey::binomial(len, 2);
    let spread = if pairs >= 64 { u128::MAX } else { 1u128 << (2 * pairs) };
    let l0 = impure_length(ell, omega_star - 1) as usize;
    require_chi(g, &c0, spread.saturating_mul(c as u128), "trimmed covered set", policy, flags)?;
    // f1 and f2 together: pairs (k, l) with p_v^{x_l} adjacent to n_{x_k}.
    let mut groups: BTreeMap<Vec<(usize, usize)>, VertexSet> = BTreeMap::new();
    for &v in &c0 {
        let reps: Vec<Vertex> = cert.families.iter().map(|f| representative(g, v, f).expect("covering")).collect();
        let key: Vec<(usize, usize)> = (0..len)
            .flat_map(|k| (0..len).map(move |l| (k, l)))
            .filter(|&(k, l)| k != l && g.has_edge(n[k], reps[l]))
            .collect();
        groups.entry(key).or_default().insert(v);
    }
    let (key, c1) = groups
        .into_iter()
        .max_by(|(ka, a), (kb, b)| {
            let (ea, eb) = (by_chi(g, a), by_chi(g, b));
            (ea.lower, ea.upper).cmp(&(eb.lower, eb.upper)).then(kb.cmp(ka))
        })
        .ok_or_else(|| Error::Threshold("nothing of C survives the removal of N(n_x)".into()))?;
    let p: Vec<VertexSet> = cert
        .families
        .iter()
        .map(|f| c1.iter().map(|&v| representative(g, v, f).expect("covering")).collect())
        .collect();
    let sub_cert = |idx: &[usize]| MulticoverCert {
        order: idx.iter().map(|&k| cert.order[k]).collect(),
        families: idx.iter().map(|&k| p[k].clone()).collect(),
        covered: c1.clone(),
        stable: true,
        pure: false,
        impure: true,
        crest: None,
        assumptions: Vec::new(),
    };
    // A vertex with l0 forward (H1) or backward (H2) neighbours: n_x is
    // complete to their P_y, so ω drops there.
    for k in 0..len {
        let fwd: Vec<usize> = (k + 1..len).filter(|&l| key.contains(&(k, l))).collect();
        let back: Vec<usize> = (0..k).filter(|&l| key.contains(&(k, l))).collect();
        for ys in [fwd, back] {
            if ys.len() >= l0 {
                let sc = sub_cert(&ys[..l0]);
                return purify(g, &sc, c, ell, tau, omega_star - 1, policy, flags);
            }
        }
    }
    let mut adj = vec![VertexSet::new(); len];
    for &(k, l) in &key {
        adj[k].insert(l as Vertex);
        adj[l].insert(k as Vertex);
    }
    let y0 = largest_colour_class(&adj);
    let ns: VertexSet = y0.iter().map(|&k| n[k]).collect();
    let stable_n = match ramsey::split(g, &ns, omega_star + 1, ell) {
        Some(Split::Stable(s)) => s,
        _ => return Err(Error::Threshold(format!("no {ell} stable representatives among {} classes", y0.len()))),
    };
    let chosen: Vec<usize> = y0.into_iter().filter(|&k| stable_n.contains(&n[k])).collect();
    let sc = sub_cert(&(0..len).collect::<Vec<_>>());
    cascade(g, &sc, &chosen, &n, &c1, false)
}

/// Smallest-last greedy colouring; the largest class, ties to the class
/// with the smallest member.
fn largest_colour_class(adj: &[VertexSet]) -> Vec<usize> {
    let n = adj.len();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (adj[v].iter().filter(|&&u| !removed[u as usize]).count(), v))
            .expect("left");
        removed[v] = true;
        order.push(v);
    }
    let mut colour = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let used: Vec<usize> = adj[v].iter().map(|&u| colour[u as usize]).collect();
        colour[v] = (0..).find(|c| !used.contains(c)).expect("unbounded");
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(colour[v]).or_default().push(v);
    }
    classes.into_values().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))).unwrap_or_default()
}

/// Restricts to the chosen part of the multicover, pivots `x n_x` from the
/// last element down, and (in the base case) deletes `X` and the
/// neighbourhoods `C_x`. Cross-checks the result against edge surgery.
fn cascade(
    g: &Graph,
    cert: &MulticoverCert,
    chosen: &[usize],
    n: &[Vertex],
    covered: &VertexSet,
    base: bool,
) -> Result<Purified> {
    let xs: Vec<Vertex> = chosen.iter().map(|&k| cert.order[k]).collect();
    let ns: Vec<Vertex> = chosen.iter().map(|&k| n[k]).collect();
    let mut keep: VertexSet = covered.clone();
    if base {
        keep = cert.covered.clone();
    }
    for &k in chosen {
        keep.insert(cert.order[k]);
        keep.insert(n[k]);
        keep.extend(cert.families[k].iter().copied());
    }
    let mut t = Trace::new();
    for v in g.vertices().filter(|v| !keep.contains(v)) {
        t.del(v);
    }
    let g0 = g.induced(&keep);
    let mut cur = g0.clone();
    for (&x, &nx) in xs.iter().zip(&ns).rev() {
        t.pivot(x, nx);
        cur = trace::pivot(&cur, x, nx)?;
    }
    let cx: VertexSet = ns.iter().flat_map(|&nx| g0.neighbors(nx).intersection(&cert.covered).copied()).collect();
    if base {
        for &v in xs.iter().chain(cx.iter()) {
            t.del(v);
            cur.remove_vertex_mut(v);
        }
    }
    if t.apply(g)? != cur {
        return Err(consistency("pivot cascade replay differs"));
    }
    // Edge surgery: drop x–(N_y − n_y) for distinct x, y; relabel x as n_x.
    let mut surgery = g0.clone();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &k) in chosen.iter().enumerate() {
            if i != j {
                for &v in cert.families[k].iter().filter(|&&v| v != ns[j]) {
                    surgery.remove_edge(x, v);
                }
            }
        }
    }
    let families: Vec<VertexSet> =
        chosen.iter().zip(&ns).map(|(&k, nx)| cert.families[k].iter().copied().filter(|v| v != nx).collect()).collect();
    let out_cover: VertexSet = if base { cert.covered.difference(&cx).copied().collect() } else { covered.clone() };
    let out = MulticoverCert {
        order: ns.clone(),
        families,
        covered: out_cover,
        stable: true,
        pure: true,
        impure: false,
        crest: None,
        assumptions: Vec::new(),
    };
    let support = out.support();
    let surgery = if base {
        let mut s = surgery;
        for &v in ns.iter().chain(cx.iter()) {
            s.remove_vertex_mut(v);
        }
        let map: BTreeMap<Vertex, Vertex> =
            s.vertices().map(|v| (v, xs.iter().position(|&x| x == v).map_or(v, |i| ns[i]))).collect();
        s.relabel(&map)
    } else {
        let mut s = surgery;
        for (&x, &nx) in xs.iter().zip(&ns) {
            s = s.swap_labels(x, nx);
        }
        s.induced(&support)
    };
    let compare = if base { cur.clone() } else { cur.induced(&support) };
    if surgery != compare {
        return Err(consistency("pivot cascade differs from the edge-surgery graph"));
    }
    checked(&cur, &out, "pivot cascade output")?;
    Ok(Purified { graph: cur, cert: out, trace: t, surgery })
}

/// Output of [`contract_odd_path_step`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddPathStep {
    pub graph: Graph,
    pub trace: Trace,
    /// `G/{vw, wx}` with the merged vertex labelled by the minimum of
    /// `{v, w, x}`.
    pub contracted: Graph,
    /// The isomorphism from `contracted` to `graph`: the merged label goes
    /// to `x`, everything else is fixed.
    pub relabel: (Vertex, Vertex),
}

/// `(G∧vw) − v − w`, which is `G/{vw, wx}` up to relabelling, for
/// `N(v) = {u, w}`, `N(w) = {v, x}` and `u`, `x` distinct and non-adjacent.
pub fn contract_odd_path_step(g: &Graph, u: Vertex, v: Vertex, w: Vertex, x: Vertex) -> Result<OddPathStep> {
    for a in [u, v, w, x] {
        g.require_vertex(a)?;
    }
    if *g.neighbors(v) != VertexSet::from([u, w]) {
        return Err(precondition(format!("N({v}) is not {{{u}, {w}}}")));
    }
    if *g.neighbors(w) != VertexSet::from([v, x]) {
        return Err(precondition(format!("N({w}) is not {{{v}, {x}}}")));
    }
    if u == x || g.has_edge(u, x) {
        return Err(precondition(format!("{u} and {x} must be distinct and non-adjacent")));
    }
    let mut t = Trace::new();
    t.pivot(v, w).del(v).del(w);
    let out = t.apply(g)?;
    let es: [Edge; 2] = [edge(v, w), edge(w, x)];
    let contracted = g.contract_edges(&es)?;
    let merged = v.min(w).min(x);
    let map: BTreeMap<Vertex, Vertex> = contracted.vertices().map(|a| (a, if a == merged { x } else { a })).collect();
    if contracted.relabel(&map) != out {
        return Err(consistency("pivot contraction differs from G/{vw, wx}"));
    }
    Ok(OddPathStep { graph: out, trace: t, contracted, relabel: (merged, x) })
}

/// Reduces a proper odd subdivision with branch vertices `branch` to the
/// subdivided graph by repeated odd-path steps.
pub fn reduce_odd_subdivision(g: &Graph, branch: &VertexSet) -> Result<(Graph, Trace)> {
    let mut cur = g.clone();
    let mut t = Trace::new();
    loop {
        let next = cur.vertices().filter(|v| !branch.contains(v) && cur.degree(*v) == 2).find_map(|v| {
            cur.neighbors(v).iter().find_map(|&w| {
                if branch.contains(&w) || cur.degree(w) != 2 {
                    return None;
                }
                let u = *cur.neighbors(v).iter().find(|&&a| a != w)?;
                let x = *cur.neighbors(w).iter().find(|&&a| a != v)?;
                (u != x && !cur.has_edge(u, x)).then_some((u, v, w, x))
            })
        });
        let Some((u, v, w, x)) = next else { break };
        let step = contract_odd_path_step(&cur, u, v, w, x)?;
        t.extend(&step.trace);
        cur = step.graph;
    }
    if cur.vertices().any(|v| !branch.contains(&v)) {
        return Err(precondition("not a proper odd subdivision of a graph on the branch vertices"));
    }
    Ok((cur, t))
}

/// How the families of [`engineered_multicover`] attach to `X` and to each
/// other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// Each `x` sees only its own family.
    Pure,
    /// Each `x` is complete to its own and all later families.
    Impure,
    /// Impure, with `N_k[j]` adjacent to `N_{k+1}[j]`.
    Chained,
    /// Impure, with the first representative of the first family complete to
    /// the non-representatives of every later family.
    Fanned,
}

/// A stable multicover of `core` of the given length, with families of size
/// `width`. Labels: `X = 0..ell`, then the families in order, then `core`
/// shifted above them. Core vertex `c_j` sees `N_k[j mod width]` in every
/// family, so each family's minimum label covers the core vertices
/// `≡ 0 mod width`.
pub fn engineered_multicover(ell: usize, width: usize, core: &Graph, pattern: Pattern) -> (Graph, MulticoverCert) {
    let x: Vec<Vertex> = (0..ell as Vertex).collect();
    let fam = |k: usize, j: usize| (ell + k * width + j) as Vertex;
    let shift = (ell + ell * width) as Vertex;
    let mut g = Graph::empty_on(x.iter().copied());
    let mut covered = VertexSet::new();
    for c in core.vertices() {
        g.add_vertex(c + shift);
        covered.insert(c + shift);
    }
    for (a, b) in core.edges() {
        g.add_edge(a + shift, b + shift);
    }
    let mut families = Vec::with_capacity(ell);
    for k in 0..ell {
        let nk: VertexSet = (0..width).map(|j| fam(k, j)).collect();
        for &v in &nk {
            g.add_vertex(v);
        }
        families.push(nk);
    }
    for (i, c) in core.vertices().enumerate() {
        for k in 0..ell {
            g.add_edge(c + shift, fam(k, i % width));
        }
    }
    for k in 0..ell {
        let later = if pattern == Pattern::Pure { k..k + 1 } else { k..ell };
        for l in later {
            for j in 0..width {
                g.add_edge(x[k], fam(l, j));
            }
        }
    }
    match pattern {
        Pattern::Chained => {
            for k in 1..ell {
                for j in 0..width {
                    g.add_edge(fam(k - 1, j), fam(k, j));
                }
            }
        }
        Pattern::Fanned => {
            for l in 1..ell {
                for j in 1..width {
                    g.add_edge(fam(0, 0), fam(l, j));
                }
            }
        }
        Pattern::Pure | Pattern::Impure => {}
    }
    let cert = MulticoverCert {
        order: x,
        families,
        covered,
        stable: true,
        pure: pattern == Pattern::Pure || ell <= 1,
        impure: pattern != Pattern::Pure || ell <= 1,
        crest: None,
        assumptions: Vec::new(),
    };
    (g, cert)
}

/// Adds a stable `k`-crest to a pure multicover on fresh labels.
pub fn plant_crest(g: &Graph, cert: &MulticoverCert, k: usize) -> (Graph, MulticoverCert) {
    let mut out = g.clone();
    let mut next = g.next_free_label();
    let mut centres = Vec::with_capacity(k);
    let mut arms = Vec::with_capacity(k);
    for _ in 0..k {
        let a = next;
        next += 1;
        out.add_vertex(a);
        let mut row = Vec::with_capacity(cert.len());
        for &x in &cert.order {
            out.add_vertex(next);
            out.add_edge(a, next);
            out.add_edge(next, x);
            row.push(next);
            next += 1;
        }
        centres.push(a);
        arms.push(row);
    }
    let crest = MulticoverCert { crest: Some(Crest { centres, arms }), ..cert.clone() };
    (out, crest)
}

/// Adds the edge between the largest members of `N_x` and `N_y`, giving the
/// length-3 oddity `x, a, b, y`.
pub fn plant_oddity(g: &Graph, cert: &MulticoverCert, x: usize, y: usize) -> Result<(Graph, Vec<Vertex>)> {
    let last = |k: usize| cert.families.get(k).and_then(|f| f.iter().next_back().copied());
    let (Some(a), Some(b)) = (last(x), last(y)) else {
        return Err(precondition("no such elements of X"));
    };
    let mut out = g.clone();
    out.add_edge(a, b);
    Ok((out, vec![cert.order[x], a, b, cert.order[y]]))
}
