//! Universal graphs for vertex-minors: embedding any `n`-vertex graph in
//! `K^1_{n,C(n,2)}`, and extracting `K^1_{n,n}` from interfered hosts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{consistency, Error, Result};
use crate::families::{self, InterferedCert};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ramsey::{self, Split};
use crate::solve;
use crate::trace::Trace;

/// `K^1_{n,m}` with labels `x_i = i`, `y_j = n + j`, `z_{i,j} = n + m + i*m + j`.
pub fn subdivided_complete_bipartite(n: usize, m: usize) -> Graph {
    let mut g = Graph::empty_on(0..(n + m + n * m) as Vertex);
    for i in 0..n {
        for j in 0..m {
            let z = (n + m + i * m + j) as Vertex;
            g.add_edge(i as Vertex, z);
            g.add_edge(z, (n + j) as Vertex);
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub host: Graph,
    /// Reduces the host to `K_n^1`.
    pub phase1: Trace,
    /// Smooths or deletes one subdivision vertex per pair.
    pub phase2: Trace,
    /// Host label of `x_i` to the corresponding vertex of `h`.
    pub correspondence: BTreeMap<Vertex, Vertex>,
}

impl Embedding {
    pub fn trace(&self) -> Trace {
        let mut t = self.phase1.clone();
        t.extend(&self.phase2);
        t
    }

    /// Replays the trace and maps the result onto `h`'s labels.
    pub fn replay(&self) -> Result<Graph> {
        Ok(self.trace().apply(&self.host)?.relabel(&self.correspondence))
    }
}

/// Trace realising `h` as a vertex-minor of `K^1_{n,C(n,2)}`: first reduce
/// to `K_n^1`, then smooth the subdivision vertex of each edge of `h` and
/// delete the one of each non-edge.
pub fn embed_universal(h: &Graph) -> Embedding {
    let hv = h.vertex_vec();
    let n = hv.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = pairs.len();
    let host = subdivided_complete_bipartite(n, m);
    let z = |i: usize, j: usize| (n + m + i * m + j) as Vertex;
    let y = |j: usize| (n + j) as Vertex;
    let mut phase1 = Trace::new();
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for k in (0..n).filter(|&k| k != a && k != b) {
            phase1.del(z(k, p));
        }
        phase1.smooth(z(a, p)).smooth(z(b, p));
    }
    let mut phase2 = Trace::new();
    for (p, &(a, b)) in pairs.iter().enumerate() {
        if h.has_edge(hv[a], hv[b]) {
            phase2.smooth(y(p));
        } else {
            phase2.del(y(p));
        }
    }
    Embedding { host, phase1, phase2, correspondence: hv.iter().enumerate().map(|(i, &v)| (i as Vertex, v)).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnnCase {
    /// Stable set in the auxiliary graph: an induced `K^1_{n,n}`.
    Induced,
    /// Clique: a completely interfered `K^1_{n,n+1}` resolved by pivots.
    CompletelyInterfered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnExtraction {
    pub trace: Trace,
    pub case: KnnCase,
    /// Row indices `i` chosen from the auxiliary graph.
    pub rows: Vec<usize>,
    /// Column indices `Y` from the pigeonhole step.
    pub columns: Vec<usize>,
    pub result: Graph,
}

/// Thresholds `(N1, N2)` with `N1 = R(n,n)` and `N2 = 2^{C(N1,2)}(n+1)`,
/// `None` when `N2` overflows.
pub fn knn_thresholds(n: usize) -> (u128, Option<u128>) {
    let n1 = ramsey::ramsey(n, n).value;
    let e = ramsey::binomial(n1 as usize, 2);
    let n2 = (e < 120).then(|| (1u128 << e).checked_mul(n as u128 + 1)).flatten();
    (n1, n2)
}

/// Extracts `K^1_{n,n}` as a pivot-minor of an interfered `K^1_{N1,N2}` at
/// the lemma's thresholds.
pub fn extract_knn(ic: &InterferedCert, n: usize) -> Result<KnnExtraction> {
    let (n1, n2) = knn_thresholds(n);
    let (have1, have2) = (ic.n() as u128, ic.m() as u128);
    if have1 < n1 || n2.is_none_or(|n2| have2 < n2) {
        return Err(Error::Threshold(format!(
            "extract K^1_{{{n},{n}}} needs N1 >= R({n},{n}) = {n1} and N2 >= 2^C(N1,2)*(n+1) = {}; host has ({have1}, {have2})",
            n2.map_or("overflow".to_string(), |v| v.to_string())
        )));
    }
    extract_knn_unchecked(ic, n)
}

/// Runs the extraction without the size thresholds; fails only if the
/// pigeonhole or Ramsey step does on this particular host.
pub fn extract_knn_unchecked(ic: &InterferedCert, n: usize) -> Result<KnnExtraction> {
    ic.validate()?;
    let (big_n, big_m) = (ic.n(), ic.m());
    let g = &ic.graph;
    // Signature of G_j: which pairs k < i have x_k z_{i,j}.
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    let mut y_cols = None;
    for j in 0..big_m {
        let sig: Vec<bool> = (0..big_n)
            .flat_map(|i| (0..i).map(move |k| (k, i)))
            .map(|(k, i)| g.has_edge(ic.x[k], ic.z[i][j]))
            .collect();
        let class = classes.entry(sig).or_default();
        class.push(j);
        if class.len() > n {
            y_cols = Some(class.clone());
            break;
        }
    }
    let cols = y_cols.ok_or_else(|| Error::Threshold(format!("no {} columns share an interference pattern", n + 1)))?;
    let j0 = cols[0];
    let mut aux = Graph::empty_on(0..big_n as Vertex);
    for i in 0..big_n {
        for k in 0..i {
            if g.has_edge(ic.x[k], ic.z[i][j0]) {
                aux.add_edge(k as Vertex, i as Vertex);
            }
        }
    }
    let split = ramsey::split(&aux, &aux.vertex_set(), n, n)
        .ok_or_else(|| Error::Threshold(format!("auxiliary graph has no clique or stable set of size {n}")))?;
    let (case, rows, cols) = match split {
        Split::Stable(s) => (KnnCase::Induced, s.iter().map(|&v| v as usize).collect::<Vec<_>>(), cols[..n].to_vec()),
        Split::Clique(c) => (KnnCase::CompletelyInterfered, c.iter().map(|&v| v as usize).collect::<Vec<_>>(), cols),
    };
    let mut keep = VertexSet::new();
    for &i in &rows {
        keep.insert(ic.x[i]);
        for &j in &cols {
            keep.insert(ic.z[i][j]);
        }
    }
    for &j in &cols {
        keep.insert(ic.y[j]);
    }
    let mut trace = Trace::new();
    for v in g.vertices().filter(|v| !keep.contains(v)) {
        trace.del(v);
    }
    if case == KnnCase::CompletelyInterfered {
        let last = *cols.last().expect("n + 1 columns");
        for &i in rows.iter().rev() {
            trace.pivot(ic.x[i], ic.z[i][last]);
        }
        trace.del(ic.y[last]);
        for &i in rows.iter().rev() {
            trace.del(ic.x[i]);
        }
    }
    let result = trace.apply(g)?;
    let target = families::subdivide(&families::complete_bipartite(n, n), 1);
    if solve::canonical_form(&result)? != solve::canonical_form(&target)? {
        return Err(consistency("extracted graph is not K^1_{n,n}"));
    }
    Ok(KnnExtraction { trace, case, rows, columns: cols, result })
}

/// Sizes `(q, h)` such that every interfered `K^1_{q,h}` contains a given
/// graph as a vertex-minor. `h = 2^{h_exp2} * h_factor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalParams {
    /// Target size `N = max(n, C(n,2))`.
    pub target: usize,
    pub q: u128,
    pub h_exp2: u128,
    pub h_factor: u128,
    /// False when `q` came from the binomial Ramsey bound.
    pub exact_ramsey: bool,
}

impl UniversalParams {
    /// `h` when it fits in 128 bits.
    pub fn h(&self) -> Option<u128> {
        (self.h_exp2 < 128).then(|| (1u128 << self.h_exp2).checked_mul(self.h_factor)).flatten()
    }
}

pub fn universal_parameters(h: &Graph) -> UniversalParams {
    let n = h.order();
    if n <= 1 {
        return UniversalParams { target: n, q: 1, h_exp2: 0, h_factor: 1, exact_ramsey: true };
    }
    let target = n.max(n * (n - 1) / 2);
    let r = ramsey::ramsey(target, target);
    UniversalParams {
        target,
        q: r.value,
        h_exp2: ramsey::binomial(r.value.min(usize::MAX as u128) as usize, 2),
        h_factor: target as u128 + 1,
        exact_ramsey: r.exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Interference;
    use crate::oracle::{self, Mode};

    #[test]
    fn embed_k3_uses_three_smoothings() {
        let e = embed_universal(&families::complete(3));
        assert_eq!(e.phase2.len(), 6);
        assert_eq!(e.phase2.deleted().len(), 3);
        assert!(e.phase2.steps.chunks(2).all(|c| matches!(
            c,
            [crate::trace::Step::Lc { v: a }, crate::trace::Step::Del { v: b }] if a == b
        )));
        assert_eq!(e.replay().unwrap(), families::complete(3));
    }

    #[test]
    fn embed_c4_and_empty() {
        let c4 = families::cycle(4);
        let e = embed_universal(&c4);
        assert_eq!(e.host.order(), 4 + 6 + 24);
        let out = e.trace().apply(&e.host).unwrap();
        assert!(solve::are_isomorphic(&out, &c4).unwrap().is_some());
        let empty = Graph::empty_on(0..4);
        let e = embed_universal(&empty);
        assert_eq!(e.phase2.len(), 6);
        assert_eq!(e.phase2.deleted().len(), 6);
        assert_eq!(e.replay().unwrap(), empty);
    }

    #[test]
    fn small_cases_confirmed_by_oracle() {
        // After phase one the host is K_n^1; the oracle checks that every
        // graph on at most three vertices is a vertex-minor of it.
        for n in 1..=3usize {
            let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0u32..1 << pairs.len() {
                let es: Vec<_> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let h = Graph::from_edges(n, &es);
                let e = embed_universal(&h);
                let kn1 = e.phase1.apply(&e.host).unwrap();
                assert!(oracle::confirm(&kn1, &h, Mode::VertexMinor).unwrap());
                assert_eq!(e.replay().unwrap(), h);
            }
        }
    }

    #[test]
    fn embed_relabels_arbitrary_labels() {
        let h = Graph::from_parts([3, 7, 9], [(3, 9)]);
        assert_eq!(embed_universal(&h).replay().unwrap(), h);
    }

    #[test]
    fn extract_from_completely_interfered() {
        let ic = families::interfered(2, 6, &Interference::Complete).unwrap();
        let x = extract_knn(&ic, 2).unwrap();
        assert_eq!(x.case, KnnCase::CompletelyInterfered);
        assert!(x.trace.is_pivot_only());
        let target = families::subdivide(&families::complete_bipartite(2, 2), 1);
        assert!(solve::are_isomorphic(&x.result, &target).unwrap().is_some());
    }

    #[test]
    fn extract_from_plain_is_deletion_only() {
        let ic = families::interfered(2, 6, &Interference::None).unwrap();
        let x = extract_knn(&ic, 2).unwrap();
        assert_eq!(x.case, KnnCase::Induced);
        assert_eq!(x.trace.deleted().len(), x.trace.len());
    }

    #[test]
    fn extract_from_random_interference() {
        for seed in 0..100 {
            let ic = families::interfered(2, 6, &Interference::Random(seed)).unwrap();
            let x = extract_knn(&ic, 2).unwrap();
            let target = families::subdivide(&families::complete_bipartite(2, 2), 1);
            assert!(solve::are_isomorphic(&x.result, &target).unwrap().is_some());
        }
    }

    #[test]
    fn extract_thresholds() {
        let ic = families::interfered(2, 5, &Interference::Complete).unwrap();
        match extract_knn(&ic, 2) {
            Err(Error::Threshold(msg)) => assert!(msg.contains("6")),
            other => panic!("{other:?}"),
        }
        // n = 3 needs astronomically many columns; the uniform case still works
        // without the thresholds.
        let ic = families::interfered(3, 4, &Interference::Complete).unwrap();
        assert!(matches!(extract_knn(&ic, 3), Err(Error::Threshold(_))));
        let x = extract_knn_unchecked(&ic, 3).unwrap();
        assert_eq!(x.case, KnnCase::CompletelyInterfered);
    }

    #[test]
    fn extraction_confirmed_by_oracle_on_tiny_hosts() {
        // K^1_{1,2} has five vertices; K^1_{1,1} = P3 is its pivot-minor.
        let ic = families::interfered(1, 2, &Interference::None).unwrap();
        let x = extract_knn(&ic, 1).unwrap();
        let target = families::path(3);
        assert!(oracle::verify_witness(&ic.graph, &target, &x.trace).unwrap());
        assert!(oracle::confirm(&ic.graph, &target, Mode::PivotMinor).unwrap());
    }

    #[test]
    fn parameters() {
        let p = universal_parameters(&families::complete(2));
        assert_eq!((p.q, p.h()), (2, Some(6)));
        let p = universal_parameters(&families::path(3));
        assert_eq!((p.target, p.q, p.h_exp2, p.h_factor), (3, 6, 15, 4));
        assert!(p.exact_ramsey);
        let p = universal_parameters(&Graph::empty_on([5]));
        assert_eq!((p.q, p.h()), (1, Some(1)));
        let p = universal_parameters(&families::complete(5));
        assert!(!p.exact_ramsey);
    }
}
