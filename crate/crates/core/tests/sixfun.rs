use feynops::catalog::{self, EndSpec};
use feynops::graphkit::{canonicalize, classes, Flavor, Sig, VertexRule, Window};
use feynops::sixfun::{pushforward_l, CATALOG, restrict, shriek_pullback, shriek_pushforward, MorphismId};

fn cyc(n: usize) -> Window {
    Window::new(Flavor::Cyclic, n)
}

#[test]
fn shriek_of_com_is_extension_by_zero() {
    let (com, _) = catalog::com(cyc(4)).presented().unwrap();
    let l = shriek_pushforward(MorphismId::CyclicToModular, &com).unwrap();
    for s in l.window.sigs() {
        let want = if s.g == 0 { com.dim(Sig::cyc(s.n)) } else { 0 };
        assert_eq!(l.dim(s), want, "{}", Flavor::Modular.fmt_sig(s));
    }
    assert!(l.compose.keys().all(|k| !matches!(k, feynops::opcore::ComposeKey::Loop { .. })));
    l.check().unwrap();
}

#[test]
fn binomial_dims() {
    for d in 1..=2 {
        let e = catalog::end_dioperad(EndSpec::new(d).unwrap(), Window::new(Flavor::Dioperad, 4)).unwrap();
        let l = shriek_pushforward(MorphismId::DioperadToCyclic, &e).unwrap();
        for n in 3..=4 {
            assert_eq!(l.dim(Sig::cyc(n)), (2 * d).pow(n as u32));
        }
        l.check().unwrap();
    }
}

#[test]
fn operad_com_to_cyclic() {
    let (com, _) = catalog::com_operad(Window::new(Flavor::Operad, 5)).presented().unwrap();
    for a in 2..=4 {
        assert_eq!(com.dim(Sig::operad(a)), 1);
    }
    let l = shriek_pushforward(MorphismId::OperadToCyclic, &com).unwrap();
    for n in 3..=5 {
        assert_eq!(l.dim(Sig::cyc(n)), n);
    }
    l.check().unwrap();
}

#[test]
fn restriction_of_lie_to_operads() {
    let (lie, _) = catalog::lie(cyc(5)).presented().unwrap();
    let r = restrict(MorphismId::OperadToCyclic, &lie, &Window::new(Flavor::Operad, 5)).unwrap();
    assert_eq!(r.dim(Sig::operad(2)), 1);
    assert_eq!(r.dim(Sig::operad(3)), 2);
    assert_eq!(r.dim(Sig::operad(4)), 6);
    r.check().unwrap();
}

#[test]
fn envelope_of_com() {
    let (com, _) = catalog::com(cyc(4)).presented().unwrap();
    let k = pushforward_l(MorphismId::CyclicToModular, &com, &Window::modular(1, 2)).unwrap();
    for s in k.table.window.sigs() {
        assert_eq!(k.table.dim(s), 1, "{}", Flavor::Modular.fmt_sig(s));
    }
}

#[test]
fn bilie_and_nil() {
    let w = Window::new(Flavor::Dioperad, 4).with_nonempty_io();
    let b = catalog::builtin_datum("BiLie", w).unwrap();
    assert_eq!(b.gens.dim(Sig::di(2, 1)), 1);
    assert_eq!(b.gens.dim(Sig::di(1, 2)), 1);
    for s in [Sig::di(3, 1), Sig::di(2, 2), Sig::di(1, 3)] {
        assert_eq!(b.relation_rank(s), 1, "{s:?}");
    }
    let nil = shriek_pullback(
        MorphismId::PlanarOperadToOperad,
        &catalog::com_operad(Window::new(Flavor::Operad, 5)),
        &Window::new(Flavor::PlanarOperad, 5),
    );
    let (t, _) = nil.presented().unwrap();
    assert_eq!((t.dim(Sig::operad(2)), t.dim(Sig::operad(3)), t.dim(Sig::operad(4))), (1, 0, 0));
}

mod verify {
    use super::*;
    use feynops::sixfun::*;

    #[test]
    fn intertwining_com_modular() {
        let (com, _) = catalog::com(cyc(4)).presented().unwrap();
        let r = verify_intertwining(MorphismId::CyclicToModular, &com, &Window::modular(1, 4)).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn intertwining_end_dioperad() {
        let e = catalog::end_dioperad(EndSpec::new(1).unwrap(), Window::new(Flavor::Dioperad, 4)).unwrap();
        let r = verify_intertwining(MorphismId::DioperadToCyclic, &e, &cyc(4)).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn restriction_intertwining() {
        let (com, _) = catalog::com(cyc(4)).presented().unwrap();
        let k = pushforward_l(MorphismId::CyclicToModular, &com, &Window::modular(1, 4)).unwrap();
        let r = verify_restriction_intertwining(MorphismId::CyclicToModular, &k.table, &cyc(4)).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn projection() {
        let (com, _) = catalog::com(cyc(4)).presented().unwrap();
        let (lie, _) = catalog::lie(cyc(4)).presented().unwrap();
        let o = shriek_pushforward_in(MorphismId::CyclicToModular, &com, &Window::modular(1, 4)).unwrap();
        let r = projection_iso(MorphismId::CyclicToModular, &o, &lie).unwrap();
        assert!(r.ok(), "{}", r.to_text());
        let e = catalog::end_dioperad(EndSpec::new(1).unwrap(), Window::new(Flavor::Dioperad, 4)).unwrap();
        let c = catalog::doubled_end_cyclic(EndSpec::new(1).unwrap(), cyc(4)).unwrap();
        let r = projection_iso(MorphismId::DioperadToCyclic, &c, &e).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn composite() {
        let nil = catalog::nil(Window::new(Flavor::PlanarOperad, 5));
        let (t, _) = nil.presented().unwrap();
        let r = compose_shriek(MorphismId::PlanarOperadToOperad, MorphismId::OperadToCyclic, &t).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn binomial() {
        for d in 1..=2 {
            let r = binomial_check(EndSpec::new(d).unwrap(), 4).unwrap();
            assert!(r.ok(), "{}", r.to_text());
        }
    }

    #[test]
    fn coproper_and_free() {
        let q = pushforward_datum(MorphismId::CyclicToModular, &catalog::com(cyc(4)), &Window::modular(1, 4));
        let r = coproper_check(MorphismId::CyclicToModular, &q, &cyc(4)).unwrap();
        assert!(r.ok(), "{}", r.to_text());
        let r = free_preservation(MorphismId::CyclicToModular, &q.gens, &Window::modular(1, 4), &cyc(4), false).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn triangles() {
        let (com, _) = catalog::com(cyc(4)).presented().unwrap();
        let o = shriek_pushforward_in(MorphismId::CyclicToModular, &com, &Window::modular(1, 3)).unwrap();
        let r = lr_triangles(MorphismId::CyclicToModular, &com, &o).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }
}

#[test]
fn ambidex_random_round_trips() {
    let pairs = feynops::sixfun::small_pairs(6);
    assert!(pairs.len() >= 5);
    let r = feynops::sixfun::ambidex_check(50, 6, 7).unwrap();
    assert!(r.ok(), "{}", r.to_text());
    let live = r.rows.iter().filter(|row| row[5] == "true").count();
    assert!(live >= 25, "only {live} nonzero instances");
}

#[test]
fn graph_map_preserves_degree() {
    for m in CATALOG {
        let source = Window::new(m.source(), 5);
        let target = m.image_window(&source);
        let (rs, rt) = (VertexRule::of(&source), VertexRule::plain(m.target()));
        for w in source.sigs() {
            let v = m.sig_map(w);
            for d in 0..=source.top_degree(w) {
                let image: std::collections::HashSet<_> = classes(rt, v, d).iter().map(|c| c.key.clone()).collect();
                for c in classes(rs, w, d).iter() {
                    let h = m.graph_map(&c.graph);
                    h.validate().unwrap();
                    assert_eq!((h.sig(), h.nedges(), h.nverts()), (v, d, c.graph.nverts()), "{}", m.name());
                    assert!(target.contains(v) && image.contains(&canonicalize(&h).key), "{} at {w:?}", m.name());
                }
            }
        }
    }
}
