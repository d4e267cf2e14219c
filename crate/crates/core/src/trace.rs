//! Local complementation, pivoting, smoothing and replayable traces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// `G*v`: complements the subgraph induced on `N(v)`.
pub fn local_complement(g: &Graph, v: Vertex) -> Result<Graph> {
    g.require_vertex(v)?;
    let nbrs: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
    let mut out = g.clone();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            out.toggle_edge(a, b);
        }
    }
    Ok(out)
}

/// `G∧uv`, computed by complementing the edges between each pair of
/// `V1 = N(u)−N[v]`, `V2 = N(v)−N[u]`, `V3 = N(u)∩N(v)` and swapping the
/// labels of `u` and `v`.
pub fn pivot(g: &Graph, u: Vertex, v: Vertex) -> Result<Graph> {
    g.require_edge(u, v)?;
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    let v1: Vec<Vertex> = nu.iter().filter(|&&w| w != v && !nv.contains(&w)).copied().collect();
    let v2: Vec<Vertex> = nv.iter().filter(|&&w| w != u && !nu.contains(&w)).copied().collect();
    let v3: Vec<Vertex> = nu.intersection(nv).copied().collect();
    let mut out = g.clone();
    for (a, b) in [(&v1, &v2), (&v1, &v3), (&v2, &v3)] {
        for &p in a {
            for &q in b {
                out.toggle_edge(p, q);
            }
        }
    }
    Ok(out.swap_labels(u, v))
}

/// `(G*v)−v` for a degree-2 vertex with non-adjacent neighbours.
pub fn smooth(g: &Graph, v: Vertex) -> Result<Graph> {
    check_smoothable(g, v)?;
    Ok(local_complement(g, v)?.without_vertex(v))
}

pub(crate) fn check_smoothable(g: &Graph, v: Vertex) -> Result<()> {
    g.require_vertex(v)?;
    let n: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
    if n.len() != 2 {
        return Err(precondition(format!("cannot smooth {v}: degree {} is not 2", n.len())));
    }
    if g.has_edge(n[0], n[1]) {
        return Err(precondition(format!("cannot smooth {v}: neighbours {} and {} are adjacent", n[0], n[1])));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    Lc { v: Vertex },
    Pivot { u: Vertex, v: Vertex },
    Del { v: Vertex },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Lc { v } => write!(f, "lc({v})"),
            Step::Pivot { u, v } => write!(f, "pivot({u},{v})"),
            Step::Del { v } => write!(f, "del({v})"),
        }
    }
}

impl Step {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            Step::Lc { v } => local_complement(g, v),
            Step::Pivot { u, v } => pivot(g, u, v),
            Step::Del { v } => {
                g.require_vertex(v)?;
                Ok(g.without_vertex(v))
            }
        }
    }
}

/// Label exchange performed by a pivot step during replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relabel {
    pub step: usize,
    pub swapped: (Vertex, Vertex),
}

/// A replayable vertex-minor (or pivot-minor) certificate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn lc(&mut self, v: Vertex) -> &mut Self {
        self.steps.push(Step::Lc { v });
        self
    }

    pub fn pivot(&mut self, u: Vertex, v: Vertex) -> &mut Self {
        self.steps.push(Step::Pivot { u, v });
        self
    }

    pub fn del(&mut self, v: Vertex) -> &mut Self {
        self.steps.push(Step::Del { v });
        self
    }

    /// Smoothing macro, expanded to `[lc(v), del(v)]`.
    pub fn smooth(&mut self, v: Vertex) -> &mut Self {
        self.lc(v).del(v)
    }

    pub fn extend(&mut self, other: &Trace) -> &mut Self {
        self.steps.extend_from_slice(&other.steps);
        self
    }

    /// True when the trace uses only pivots and deletions.
    pub fn is_pivot_only(&self) -> bool {
        self.steps.iter().all(|s| !matches!(s, Step::Lc { .. }))
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.replay(g).map(|(g, _)| g)
    }

    /// Replays the trace, also returning the relabel record of every pivot.
    pub fn replay(&self, g: &Graph) -> Result<(Graph, Vec<Relabel>)> {
        let mut cur = g.clone();
        let mut relabels = Vec::new();
        for (index, step) in self.steps.iter().enumerate() {
            cur = step.apply(&cur).map_err(|e| Error::InvalidStep { index, reason: format!("{step}: {e}") })?;
            if let Step::Pivot { u, v } = *step {
                relabels.push(Relabel { step: index, swapped: (u, v) });
            }
        }
        Ok((cur, relabels))
    }

    /// Vertices deleted by the trace.
    pub fn deleted(&self) -> VertexSet {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Del { v } => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Trace> {
        let steps = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
            .collect::<Result<_>>()?;
        Ok(Trace { steps })
    }
}

impl FromIterator<Step> for Trace {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        Trace { steps: iter.into_iter().collect() }
    }
}
