use feynops::graphkit::*;
use proptest::prelude::*;
use std::collections::HashSet;

fn count(f: Flavor, s: Sig, d: usize) -> usize {
    enumerate_classes(f, s, d, false).unwrap().len()
}

#[test]
fn class_counts() {
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(4), 0), 1);
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(4), 1), 3);
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(5), 1), 10);
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(5), 2), 15);
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(6), 3), 105);
    assert_eq!(count(Flavor::Cyclic, Sig::cyc(3), 1), 0);
    assert_eq!(count(Flavor::Modular, Sig::modular(1, 1), 1), 1);
    assert_eq!(count(Flavor::Operad, Sig::operad(3), 1), 3);
    assert_eq!(count(Flavor::PlanarOperad, Sig::operad(3), 1), 2);
    assert_eq!(count(Flavor::PlanarCyclic, Sig::cyc(4), 1), 2);
    assert_eq!(count(Flavor::PlanarCyclic, Sig::cyc(5), 1), 5);
    assert_eq!(count(Flavor::PlanarCyclic, Sig::cyc(6), 3), 14);
    // operad trees with 4 labelled inputs and 2 edges
    assert_eq!(count(Flavor::Operad, Sig::operad(4), 2), 15);
    assert_eq!(count(Flavor::PlanarOperad, Sig::operad(4), 2), 5);
}

#[test]
fn dioperad_counts_are_direction_sums() {
    let mut total = 0;
    for outs in 0..=4 {
        let s = Sig::di(4 - outs, outs);
        total += count(Flavor::Dioperad, s, 1) * binom(4, outs);
    }
    // each of the 3 trees, each of the 2^4 leg direction choices, and 2 edge directions
    assert_eq!(total, 3 * 16 * 2);
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn corolla_is_canonical_with_trivial_aut() {
    let c = canonical_form(&Graph::corolla(Flavor::Cyclic, Sig::cyc(3))).unwrap();
    assert_eq!(c.graph, Graph::corolla(Flavor::Cyclic, Sig::cyc(3)));
    assert_eq!(c.auts.len(), 1);
}

fn theta() -> Graph {
    Graph {
        flavor: Flavor::Modular,
        vflags: vec![vec![0, 1, 2], vec![3, 4, 5]],
        inv: vec![3, 4, 5, 0, 1, 2],
        leg: vec![NO_LEG; 6],
        genus: vec![0, 0],
        out: vec![false; 6],
    }
}

#[test]
fn theta_graph_automorphisms() {
    let c = canonical_form(&theta()).unwrap();
    assert_eq!(c.graph.sig(), Sig::modular(2, 0));
    assert_eq!(c.auts.len(), 12);
    assert!(c.odd_aut);
    let swap = c
        .auts
        .iter()
        .find(|a| {
            // fixes both vertices and exactly one edge
            let vo = c.graph.vertex_of();
            vo[a[0]] == vo[0] && c.edges.iter().filter(|&&(x, _)| a[x] == x).count() == 1
        })
        .unwrap();
    assert_eq!(orientation_sign(&c, swap), -1);
    assert_eq!(orientation_sign(&c, &perm::identity(6)), 1);
}

#[test]
fn theta_aut_count_matches_brute_force() {
    let g = theta();
    let vo = g.vertex_of();
    let mut n = 0;
    for p in perm::all_perms(6) {
        let inv_ok = (0..6).all(|f| p[g.inv[f]] == g.inv[p[f]]);
        let vert_ok = (0..6).all(|f| (0..6).all(|h| (vo[f] == vo[h]) == (vo[p[f]] == vo[p[h]])));
        if inv_ok && vert_ok {
            n += 1;
        }
    }
    assert_eq!(n, 12);
}

#[test]
fn relabelled_two_vertex_trees_agree() {
    let a = Graph {
        flavor: Flavor::Cyclic,
        vflags: vec![vec![0, 1, 4], vec![5, 2, 3]],
        inv: vec![0, 1, 2, 3, 5, 4],
        leg: vec![0, 1, 2, 3, NO_LEG, NO_LEG],
        genus: vec![0, 0],
        out: vec![false; 6],
    };
    let b = Graph {
        flavor: Flavor::Cyclic,
        vflags: vec![vec![3, 0, 1], vec![2, 5, 4]],
        inv: vec![0, 5, 2, 3, 4, 1],
        leg: vec![2, NO_LEG, 1, 3, 0, NO_LEG],
        genus: vec![0, 0],
        out: vec![false; 6],
    };
    assert_eq!(canonical_form(&a).unwrap().key, canonical_form(&b).unwrap().key);
}

#[test]
fn contraction_examples() {
    let trees = enumerate_classes(Flavor::Cyclic, Sig::cyc(4), 1, false).unwrap();
    let t = &trees[0].graph;
    let (f, _) = t.edges()[0];
    let c = t.contract_edge(f).unwrap();
    assert_eq!(canonical_form(&c).unwrap().key, canonical_form(&Graph::corolla(Flavor::Cyclic, Sig::cyc(4))).unwrap().key);

    let lp = &enumerate_classes(Flavor::Modular, Sig::modular(1, 1), 1, false).unwrap()[0].graph;
    assert_eq!(lp.genus, vec![0]);
    let c = lp.contract_edge(lp.edges()[0].0).unwrap();
    assert_eq!(c.genus, vec![1]);
    assert_eq!(c.nedges(), 0);

    let dt = &enumerate_classes(Flavor::Dioperad, Sig::di(2, 2), 1, false).unwrap()[0].graph;
    let c = dt.contract_edge(dt.edges()[0].0).unwrap();
    c.validate().unwrap();
    assert_eq!(c.vertex_sig(0), Sig::di(2, 2));
    let k = c.vflags[0].iter().take_while(|&&f| c.out[f]).count();
    assert_eq!(k, 2);
    assert!(t.contract_edge(t.vflags[0].iter().copied().find(|&f| t.is_leg(f)).unwrap()).is_err());
}

#[test]
fn expansions_examples() {
    let rule = VertexRule::plain(Flavor::Cyclic);
    let cor = canonical_form(&Graph::corolla(Flavor::Cyclic, Sig::cyc(4))).unwrap();
    let ex = one_edge_expansions(rule, &cor);
    assert_eq!(ex.len(), 3);
    let keys: HashSet<_> = ex.iter().map(|x| x.canon.key.clone()).collect();
    let deg1: HashSet<_> = enumerate_classes(Flavor::Cyclic, Sig::cyc(4), 1, false).unwrap().iter().map(|c| c.key.clone()).collect();
    assert_eq!(keys, deg1);
    let c3 = canonical_form(&Graph::corolla(Flavor::Cyclic, Sig::cyc(3))).unwrap();
    assert!(one_edge_expansions(rule, &c3).is_empty());
    let m11 = canonical_form(&Graph::corolla(Flavor::Modular, Sig::modular(1, 1))).unwrap();
    let ex = one_edge_expansions(VertexRule::plain(Flavor::Modular), &m11);
    assert_eq!(ex.len(), 1);
    assert_eq!(ex[0].canon.graph.genus, vec![0]);
}

#[test]
fn unstable_signature_rejected() {
    assert!(enumerate_classes(Flavor::Cyclic, Sig::cyc(2), 0, false).is_err());
    assert!(enumerate_classes(Flavor::Modular, Sig::modular(0, 2), 0, false).is_err());
}

fn windows() -> Vec<Window> {
    vec![
        Window::new(Flavor::Cyclic, 6),
        Window::modular(1, 4),
        Window::modular(2, 1),
        Window::new(Flavor::Operad, 5),
        Window::new(Flavor::Dioperad, 5),
        Window::new(Flavor::PlanarOperad, 5),
        Window::new(Flavor::PlanarCyclic, 6),
    ]
}

#[test]
fn closure_validity_and_idempotence() {
    for w in windows() {
        let rule = VertexRule::of(&w);
        for s in w.sigs() {
            for d in 0..=w.top_degree(s) {
                let cls = classes(rule, s, d);
                let keys: HashSet<_> = cls.iter().map(|c| c.key.clone()).collect();
                assert_eq!(keys.len(), cls.len(), "duplicates at {s:?} degree {d}");
                let lower: HashSet<_> = if d > 0 { classes(rule, s, d - 1).iter().map(|c| c.key.clone()).collect() } else { HashSet::new() };
                for c in cls.iter() {
                    c.graph.validate().unwrap();
                    assert_eq!(c.graph.sig(), s);
                    assert_eq!(canonicalize(&c.graph).key, c.key);
                    assert_eq!(canonicalize(&c.graph).graph, c.graph);
                    for &(f, _) in &c.edges {
                        let k = canonicalize(&c.graph.contract_edge(f).unwrap()).key;
                        assert!(lower.contains(&k), "contraction leaves the enumeration");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_two_factorizations_come_in_pairs() {
    for w in windows() {
        let rule = VertexRule::of(&w);
        for s in w.sigs() {
            if w.top_degree(s) < 2 {
                continue;
            }
            let mid: HashSet<_> = classes(rule, s, 1).iter().map(|c| c.key.clone()).collect();
            let base = classes(rule, s, 0)[0].key.clone();
            for c in classes(rule, s, 2).iter() {
                let mut chains = 0;
                for &(e1, _) in &c.edges {
                    let g1 = c.graph.contract_edge(e1).unwrap();
                    assert!(mid.contains(&canonicalize(&g1).key));
                    for &(e2, _) in &g1.edges() {
                        let g0 = g1.contract_edge(e2).unwrap();
                        if canonicalize(&g0).key == base {
                            chains += 1;
                        }
                    }
                }
                assert_eq!(chains, 2);
            }
        }
    }
}

#[test]
fn aut_groups_match_brute_force_on_small_graphs() {
    for w in windows() {
        let rule = VertexRule::of(&w);
        for s in w.sigs() {
            for d in 0..=w.top_degree(s).min(2) {
                for c in classes(rule, s, d).iter() {
                    if c.graph.nflags() > 8 {
                        continue;
                    }
                    let g = &c.graph;
                    let brute = perm::all_perms(g.nflags())
                        .into_iter()
                        .filter(|p| {
                            is_same(&permuted(g, p), g)
                        })
                        .count();
                    assert_eq!(brute, c.auts.len(), "{s:?} degree {d}");
                }
            }
        }
    }
}

/// The graph with flag `f` renamed `p[f]`.
fn permuted(g: &Graph, p: &[usize]) -> Graph {
    let nf = g.nflags();
    let mut inv = vec![0; nf];
    let mut leg = vec![NO_LEG; nf];
    let mut out = vec![false; nf];
    for f in 0..nf {
        inv[p[f]] = p[g.inv[f]];
        leg[p[f]] = g.leg[f];
        out[p[f]] = g.out[f];
    }
    let vflags = g.vflags.iter().map(|l| l.iter().map(|&f| p[f]).collect()).collect();
    Graph { flavor: g.flavor, vflags, inv, leg, genus: g.genus.clone(), out }
}

/// Equality as structures: same flags/involution/legs/directions and same vertices with
/// the same genus and (for planar flavors) the same cyclic or linear order.
fn is_same(a: &Graph, b: &Graph) -> bool {
    if a.inv != b.inv || a.leg != b.leg || a.out != b.out {
        return false;
    }
    let norm = |g: &Graph| {
        let mut vs: Vec<(Vec<usize>, u32)> = g
            .vflags
            .iter()
            .zip(&g.genus)
            .map(|(l, &gen)| {
                let l = match g.flavor {
                    Flavor::PlanarOperad => l.clone(),
                    Flavor::PlanarCyclic => {
                        let m = l.iter().enumerate().min_by_key(|(_, &f)| f).map(|(k, _)| k).unwrap();
                        l[m..].iter().chain(&l[..m]).copied().collect()
                    }
                    _ => {
                        let mut s = l.clone();
                        s.sort();
                        s
                    }
                };
                (l, gen)
            })
            .collect();
        vs.sort();
        vs
    };
    norm(a) == norm(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn canonical_key_is_labelling_invariant(wi in 0usize..7, pick in 0usize..1000, seed in any::<u64>()) {
        let w = windows()[wi];
        let rule = VertexRule::of(&w);
        let mut all = Vec::new();
        for s in w.sigs() {
            for d in 0..=w.top_degree(s) {
                all.extend(classes(rule, s, d).iter().cloned());
            }
        }
        let c = &all[pick % all.len()];
        let nf = c.graph.nflags();
        // pseudo-random flag permutation
        let mut p: Vec<usize> = (0..nf).collect();
        let mut x = seed | 1;
        for i in (1..nf).rev() {
            x ^= x << 13; x ^= x >> 7; x ^= x << 17;
            p.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let mut g = permuted(&c.graph, &p);
        // shuffle vertex order and rotate cyclic listings where allowed
        g.vflags.reverse();
        g.genus.reverse();
        if c.graph.flavor == Flavor::PlanarCyclic {
            for l in g.vflags.iter_mut() { l.rotate_left(1); }
        } else if matches!(c.graph.flavor, Flavor::Cyclic | Flavor::Modular) {
            for l in g.vflags.iter_mut() { l.reverse(); }
        }
        g.validate().unwrap();
        let k = canonicalize(&g);
        prop_assert_eq!(&k.key, &c.key);
        prop_assert_eq!(k.auts.len(), c.auts.len());
    }
}
