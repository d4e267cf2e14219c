//! Seeded generators for random lemma instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bloated::{analyze_bloated_tree, BloatedTreeDecomp};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::shrink::classify_interface;

/// `G(n, p)` on labels `0..n`.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty_on(0..n as Vertex);
    for j in 0..n as Vertex {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Random tree with exactly `leaves` leaves (at least 2), grown by
/// attaching new vertices to random existing ones.
pub fn tree_with_leaves<R: Rng>(rng: &mut R, leaves: usize) -> Graph {
    let leaves = leaves.max(2);
    let mut g = Graph::from_edges(2, &[(0, 1)]);
    let extra = rng.gen_range(0..=leaves);
    let mut stretch = 0;
    loop {
        let count = g.vertices().filter(|&v| g.degree(v) <= 1).count();
        if count == leaves && stretch >= extra {
            return g;
        }
        let vs = g.vertex_vec();
        let p = *vs.choose(rng).expect("non-empty");
        let is_leaf = g.degree(p) <= 1;
        if !is_leaf && count == leaves {
            continue;
        }
        if is_leaf {
            stretch += 1;
        }
        let v = g.next_free_label();
        g.add_vertex(v);
        g.add_edge(p, v);
    }
}

/// Random bloated tree: `blocks` single vertices or big cliques, each
/// attached by one edge to a vertex that may still take a neighbour.
pub fn bloated_tree<R: Rng>(rng: &mut R, blocks: usize, clique_p: f64, max_clique: usize) -> Graph {
    let mut g = Graph::empty_on([0]);
    let mut open: Vec<Vertex> = vec![0];
    for _ in 1..blocks.max(1) {
        let i = rng.gen_range(0..open.len());
        let p = open[i];
        let in_clique = g.neighbors(p).iter().any(|&u| g.neighbors(u).iter().any(|w| g.has_edge(*w, p)));
        if in_clique {
            open.swap_remove(i);
        }
        let base = g.next_free_label();
        if max_clique >= 3 && rng.gen_bool(clique_p) {
            let k = rng.gen_range(3..=max_clique);
            let members: Vec<Vertex> = (base..base + k as Vertex).collect();
            for &a in &members {
                g.add_vertex(a);
            }
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    g.add_edge(a, b);
                }
            }
            g.add_edge(p, members[0]);
            open.extend(&members[1..]);
        } else {
            g.add_vertex(base);
            g.add_edge(p, base);
            open.push(base);
        }
        if open.is_empty() {
            break;
        }
    }
    g
}

/// A clique `0..k` with `c = 0`, `d = k` pendant on `c`, and `extra` random
/// vertices that may see `d`, each other and the clique minus `c`.
pub fn big_clique_instance<R: Rng>(rng: &mut R, k: usize, extra: usize) -> (Graph, Vertex, Vertex) {
    let k = k.max(3);
    let mut g = Graph::empty_on(0..=k as Vertex);
    for b in 0..k as Vertex {
        for a in 0..b {
            g.add_edge(a, b);
        }
    }
    let d = k as Vertex;
    g.add_edge(0, d);
    let first = d + 1;
    for e in first..first + extra as Vertex {
        g.add_vertex(e);
        if rng.gen_bool(0.5) {
            g.add_edge(e, d);
        }
        for v in (1..k as Vertex).chain(first..e) {
            if rng.gen_bool(0.3) {
                g.add_edge(e, v);
            }
        }
    }
    (g, 0, d)
}

/// The path `a v0 v1 .. vk b` on labels `0..k+3`, `c = k+3` seeing a random
/// subset of `v1..vk`, and `extra` random vertices that may see `a`, `b`,
/// `c` and each other.
pub fn fan_instance<R: Rng>(rng: &mut R, k: usize, extra: usize) -> (Graph, Vec<Vertex>, Vertex) {
    let len = k as Vertex + 3;
    let mut g = Graph::empty_on(0..len);
    for v in 1..len {
        g.add_edge(v - 1, v);
    }
    let c = len;
    g.add_vertex(c);
    for v in 2..len - 1 {
        if rng.gen_bool(0.5) {
            g.add_edge(c, v);
        }
    }
    let outer = [0, len - 1, c];
    for e in c + 1..c + 1 + extra as Vertex {
        g.add_vertex(e);
        for v in outer.iter().copied().chain(c + 1..e) {
            if rng.gen_bool(0.4) {
                g.add_edge(e, v);
            }
        }
    }
    (g, (0..len).collect(), c)
}

/// A random shrinkable bloated tree with outside attachments: a random
/// tree on `skeleton` vertices with every edge subdivided `spacing` times,
/// some degree-2 vertices blown up into triangles, and up to `hubs` outside
/// vertices attached to degree-2 vertices. Draws are repeated until the
/// result is shrinkable and has an interior vertex.
pub fn shrinkable_instance<R: Rng>(
    rng: &mut R,
    skeleton: usize,
    spacing: usize,
    hubs: usize,
) -> (Graph, BloatedTreeDecomp) {
    // A bare edge has no interior vertex.
    let spacing = if skeleton <= 2 { spacing.max(1) } else { spacing };
    loop {
        let base = crate::families::subdivide(&tree_on(rng, skeleton.max(2)), spacing);
        let mut t = base.clone();
        for v in base.vertices().filter(|&v| base.degree(v) == 2) {
            if rng.gen_bool(0.15) {
                let nb: Vec<Vertex> = base.neighbors(v).iter().copied().collect();
                let (v1, v2) = (t.next_free_label(), t.next_free_label() + 1);
                t.remove_edge(v, nb[1]);
                t.add_vertex(v1);
                t.add_vertex(v2);
                for (a, b) in [(v, v1), (v, v2), (v1, v2), (v1, nb[1])] {
                    t.add_edge(a, b);
                }
            }
        }
        let tree = t.vertex_set();
        let mids: Vec<Vertex> = t.vertices().filter(|&v| t.degree(v) == 2).collect();
        let mut want = rng.gen_range(0..=hubs);
        for _ in 0..8 {
            let mut g = t.clone();
            let first = g.next_free_label();
            let outside: Vec<Vertex> = (first..first + want as Vertex).collect();
            for &x in &outside {
                g.add_vertex(x);
                for _ in 0..rng.gen_range(1..=2) {
                    if let Some(&v) = mids.choose(rng) {
                        if g.neighbors(v).is_subset(&tree) {
                            g.add_edge(v, x);
                        }
                    }
                }
            }
            for (i, &x) in outside.iter().enumerate() {
                for &y in &outside[i + 1..] {
                    if rng.gen_bool(0.5) {
                        g.add_edge(x, y);
                    }
                }
            }
            if let Ok(bt) = analyze_bloated_tree(&g, &tree) {
                let interior = bt.tree.len() > bt.leaves.len();
                if interior && classify_interface(&g, &bt).is_ok_and(|r| r.shrinkable) {
                    return (g, bt);
                }
            }
            want = want.saturating_sub(1);
        }
    }
}

/// Uniform-attachment random tree on labels `0..n`.
pub fn tree_on<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::empty_on([0]);
    for v in 1..n as Vertex {
        let p = rng.gen_range(0..v);
        g.add_vertex(v);
        g.add_edge(p, v);
    }
    g
}

/// A path `0..len` with a stable or arbitrary set `X` hanging from it: each
/// `x` sees a random non-empty set of path vertices (odd-sized when `odd`),
/// plus `extra` random vertices that see `X` and each other but not the
/// path.
pub fn dangling_instance<R: Rng>(
    rng: &mut R,
    len: usize,
    xs: usize,
    extra: usize,
    stable: bool,
    odd: bool,
) -> (Graph, Vec<Vertex>, VertexSet) {
    let len = len.max(1) as Vertex;
    let mut g = Graph::empty_on(0..len);
    for v in 1..len {
        g.add_edge(v - 1, v);
    }
    let x: VertexSet = (len..len + xs as Vertex).collect();
    for &a in &x {
        g.add_vertex(a);
        loop {
            let seen: Vec<Vertex> = (0..len).filter(|_| rng.gen_bool(0.4)).collect();
            if !seen.is_empty() && (!odd || seen.len() % 2 == 1) {
                for v in seen {
                    g.add_edge(a, v);
                }
                break;
            }
        }
    }
    if !stable {
        for &a in &x {
            for &b in x.range(a + 1..) {
                if rng.gen_bool(0.5) {
                    g.add_edge(a, b);
                }
            }
        }
    }
    let first = len + xs as Vertex;
    for e in first..first + extra as Vertex {
        g.add_vertex(e);
        for v in x.iter().copied().chain(first..e) {
            if rng.gen_bool(0.3) {
                g.add_edge(e, v);
            }
        }
    }
    (g, (0..len).collect(), x)
}

/// A random graph with an induced path `u v w x` glued on, where `v`, `w`
/// are fresh and `u`, `x` are distinct and non-adjacent.
pub fn odd_path_instance<R: Rng>(rng: &mut R, n: usize) -> (Graph, [Vertex; 4]) {
    loop {
        let mut g = gnp(rng, n.max(2), 0.4);
        let vs = g.vertex_vec();
        let u = *vs.choose(rng).expect("non-empty");
        let x = *vs.choose(rng).expect("non-empty");
        if u == x || g.has_edge(u, x) {
            continue;
        }
        let v = g.next_free_label();
        let w = v + 1;
        g.add_vertex(v);
        g.add_vertex(w);
        g.add_edge(u, v);
        g.add_edge(v, w);
        g.add_edge(w, x);
        return (g, [u, v, w, x]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chi::dangles;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for ell in 2..40 {
            let t = tree_with_leaves(&mut rng, ell);
            assert!(t.is_tree());
            assert_eq!(t.vertices().filter(|&v| t.degree(v) <= 1).count(), ell);
        }
        for blocks in 1..15 {
            let t = bloated_tree(&mut rng, blocks, 0.4, 5);
            assert!(analyze_bloated_tree(&t, &t.vertex_set()).is_ok());
        }
        for _ in 0..20 {
            let (g, p, x) = dangling_instance(&mut rng, 5, 3, 3, true, true);
            assert!(dangles(&g, &p, &x));
            assert!(g.is_stable(&x));
            let (g, [u, v, w, x]) = odd_path_instance(&mut rng, 5);
            assert_eq!(g.neighbors(v), &VertexSet::from([u, w]));
            assert_eq!(g.neighbors(w), &VertexSet::from([v, x]));
        }
        for _ in 0..20 {
            let (g, bt) = shrinkable_instance(&mut rng, 5, 3, 2);
            assert!(classify_interface(&g, &bt).unwrap().shrinkable);
        }
        let (g, bt) = shrinkable_instance(&mut rng, 6, 3, 3);
        assert!(classify_interface(&g, &bt).unwrap().shrinkable);
    }
}
