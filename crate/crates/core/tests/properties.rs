use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vminor::bloated::{branching_subtree, ceil_root, grow_maximal_bloated_tree, has_adjacent_branching};
use vminor::chi::fix_parity;
use vminor::families::{self, interfered, InterferedCert, Interference};
use vminor::multicover::{contract_odd_path_step, engineered_multicover, validate_structure, Pattern, StructureKind};
use vminor::trace::{local_complement, pivot, smooth};
use vminor::{edge, graph6, random, solve, Error, Trace, VertexSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pivot_is_symmetric_and_three_local_complements(seed: u64, n in 2usize..9) {
        let g = random::gnp(&mut rng(seed), n, 0.5);
        for (u, v) in g.edges() {
            let p = pivot(&g, u, v).unwrap();
            prop_assert_eq!(&p, &pivot(&g, v, u).unwrap());
            let mut uvu = Trace::new();
            uvu.lc(u).lc(v).lc(u);
            let mut vuv = Trace::new();
            vuv.lc(v).lc(u).lc(v);
            prop_assert_eq!(&p, &uvu.apply(&g).unwrap());
            prop_assert_eq!(&p, &vuv.apply(&g).unwrap());
        }
    }

    #[test]
    fn local_moves_keep_vertices_and_deletion_drops_one(seed: u64, n in 1usize..10) {
        let g = random::gnp(&mut rng(seed), n, 0.4);
        for v in g.vertices() {
            let h = local_complement(&g, v).unwrap();
            prop_assert_eq!(h.vertex_set(), g.vertex_set());
            prop_assert_eq!(&local_complement(&h, v).unwrap(), &g);
            prop_assert_eq!(g.without_vertex(v).order() + 1, g.order());
        }
        for (u, v) in g.edges() {
            prop_assert_eq!(pivot(&g, u, v).unwrap().vertex_set(), g.vertex_set());
        }
    }

    #[test]
    fn graph6_roundtrip(seed: u64, n in 0usize..70) {
        let g = random::gnp(&mut rng(seed), n, 0.3);
        prop_assert_eq!(graph6::decode(&graph6::encode(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn smoothing_inverts_subdivision(seed: u64, n in 2usize..8) {
        let g = random::gnp(&mut rng(seed), n, 0.5);
        let s = families::subdivide(&g, 1);
        let mut h = s.clone();
        for v in s.vertices().filter(|&v| !g.has_vertex(v)) {
            h = smooth(&h, v).unwrap();
        }
        prop_assert_eq!(h, g);
    }

    #[test]
    fn spheres_cover_the_next_sphere(seed: u64, n in 1usize..30, t in 1usize..6) {
        let g = random::gnp(&mut rng(seed), n, 0.15);
        for v in g.vertices() {
            let a = VertexSet::from([v]);
            prop_assert!(g.covers(&g.sphere(&a, t - 1), &g.sphere(&a, t)));
        }
    }

    #[test]
    fn contracting_a_spanning_tree_leaves_one_vertex(seed: u64, n in 1usize..25) {
        let g = random::gnp(&mut rng(seed), n, 0.3);
        prop_assert_eq!(&g.contract_edges(&[]).unwrap(), &g);
        let t = random::tree_on(&mut rng(seed ^ 1), n);
        let mut h = t.clone();
        let extra = rng(seed ^ 2).gen_range(0..=n);
        for _ in 0..extra {
            let vs = t.vertex_vec();
            let (a, b) = (vs[seed as usize % n], vs[(seed as usize / 7) % n]);
            if a != b {
                h.add_edge(a, b);
            }
        }
        prop_assert_eq!(h.contract_edges(&t.edges()).unwrap().order(), 1);
    }

    #[test]
    fn chromatic_number_is_bracketed(seed: u64, n in 1usize..14) {
        let g = random::gnp(&mut rng(seed), n, 0.5);
        let c = solve::chromatic_number(&g).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert!(c.chi >= solve::clique_number(&g).unwrap().omega);
        prop_assert!(c.chi <= solve::greedy_colors(&g));
    }

    #[test]
    fn branching_subtrees_keep_enough_leaves(seed: u64, leaves in 2usize..=64) {
        let t = random::tree_with_leaves(&mut rng(seed), leaves);
        let r = branching_subtree(&t).unwrap();
        let sub = t.induced(&r.subtree);
        prop_assert!(sub.is_tree());
        prop_assert!(!has_adjacent_branching(&sub));
        prop_assert!(r.leaves >= ceil_root(r.total_leaves, 2));
    }

    #[test]
    fn adjacent_cut_vertices_of_a_bloated_tree_span_a_bridge(seed: u64, n in 2usize..40) {
        let mut r = rng(seed);
        let g = loop {
            let g = random::gnp(&mut r, n, (2.5 / n as f64).min(1.0));
            if g.is_connected() {
                break g;
            }
        };
        let seed_vertex = g.vertex_vec()[seed as usize % n];
        let bt = grow_maximal_bloated_tree(&g, seed_vertex).unwrap();
        let t = bt.subgraph(&g);
        let (cuts, bridges) = solve::cut_structure(&g).unwrap();
        for (u, v) in t.edges() {
            if t.degree(u) == 2 && t.degree(v) == 2 && cuts.contains(&u) && cuts.contains(&v) {
                prop_assert!(bridges.contains(&edge(u, v)), "{}{} is not a bridge", u, v);
            }
        }
    }

    #[test]
    fn interference_validator_rejects_added_edges(seed: u64, n in 2usize..5, m in 2usize..5) {
        let ic = interfered(n, m, &Interference::Random(seed)).unwrap();
        let (y0, y1) = (ic.y[0], ic.y[1]);
        let mut g = ic.graph.clone();
        g.add_edge(y0, y1);
        let yy = InterferedCert::from_roles(g, ic.x.clone(), ic.y.clone(), ic.z.clone());
        prop_assert!(yy.is_err());
        let (z0, z1) = (ic.z[0][0], ic.z[1][1]);
        let mut g = ic.graph.clone();
        g.add_edge(z0, z1);
        let zz = InterferedCert::from_roles(g, ic.x.clone(), ic.y.clone(), ic.z.clone());
        prop_assert!(zz.is_err());
    }

    #[test]
    fn parity_fix_leaves_the_rest_untouched(seed: u64, len in 1usize..12, xs in 1usize..4, extra in 0usize..4) {
        let (g, p, x) = random::dangling_instance(&mut rng(seed), len, xs, extra, true, false);
        match fix_parity(&g, &p, &x) {
            Ok(f) => {
                let pset: VertexSet = p.iter().copied().collect();
                prop_assert_eq!(f.graph.without(&pset), g.without(&pset));
                prop_assert_eq!(f.trace.apply(&g).unwrap(), f.graph);
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn odd_path_step_matches_the_formula(seed: u64, n in 2usize..12) {
        let (g, [u, v, w, x]) = random::odd_path_instance(&mut rng(seed), n);
        let s = contract_odd_path_step(&g, u, v, w, x).unwrap();
        let mut expected = g.without_vertex(v).without_vertex(w);
        expected.add_edge(u, x);
        prop_assert_eq!(&s.graph, &expected);
        prop_assert_eq!(s.trace.apply(&g).unwrap(), expected);
    }

    #[test]
    fn engineered_multicovers_validate_and_mutations_fail(
        ell in 0usize..5,
        width in 1usize..4,
        core in 1usize..4,
        pick in 0usize..1000,
    ) {
        let (g, cert) = engineered_multicover(ell, width, &families::complete(core), Pattern::Pure);
        prop_assert_eq!(validate_structure(&g, &cert, &StructureKind::Multicover), Ok(()));
        if ell == 0 {
            return Ok(());
        }
        let a = cert.order[pick % ell];
        let outside: Vec<_> = g.vertices().filter(|&b| b != a && !g.has_edge(a, b)).collect();
        if !outside.is_empty() {
            let mut more = g.clone();
            more.add_edge(a, outside[pick % outside.len()]);
            prop_assert!(validate_structure(&more, &cert, &StructureKind::Multicover).is_err());
        }
        let own: Vec<_> = g.neighbors(a).iter().copied().collect();
        let mut less = g.clone();
        less.remove_edge(a, own[pick % own.len()]);
        prop_assert!(validate_structure(&less, &cert, &StructureKind::Multicover).is_err());
    }
}
