use feynops::catalog;
use feynops::graphkit::{Flavor, Sig, Window};
use feynops::opcore::{feynman_transform, koszul_map, quadratic_dual, saturate, weight_one_range, FreeOp, Rep, VModule};
use proptest::prelude::*;

fn cyc(n: usize) -> Window {
    Window::new(Flavor::Cyclic, n)
}

fn trivial3() -> VModule {
    let mut m = VModule::new();
    m.insert(Rep::trivial(Flavor::Cyclic, Sig::cyc(3), 1));
    m
}

#[test]
fn free_weight_dims() {
    let f = FreeOp::new(trivial3(), cyc(5), false);
    assert_eq!(f.space(Sig::cyc(4)).dims_by_degree(), vec![0, 3]);
    assert_eq!(f.space(Sig::cyc(3)).dims_by_degree(), vec![1]);
    let odd = FreeOp::new(trivial3(), cyc(5), true);
    assert_eq!(odd.space(Sig::cyc(5)).dims_by_degree(), f.space(Sig::cyc(5)).dims_by_degree());
    assert_eq!(f.space(Sig::cyc(5)).dims_by_degree(), vec![0, 0, 15]);
}

#[test]
fn com_and_lie_quotients() {
    let (com, _) = catalog::com(cyc(6)).presented().unwrap();
    for n in 3..=6 {
        assert_eq!(com.dim(Sig::cyc(n)), 1, "Com(({n}))");
    }
    com.check().unwrap();
    let (lie, _) = catalog::lie(cyc(6)).presented().unwrap();
    let fact = [1, 1, 2, 6, 24];
    for n in 3..=6 {
        assert_eq!(lie.dim(Sig::cyc(n)), fact[n - 2], "Lie(({n}))");
    }
    lie.check().unwrap();
}

#[test]
fn feynman_transform_of_com() {
    let (com, _) = catalog::com(cyc(5)).presented().unwrap();
    let d = feynman_transform(&com).unwrap();
    assert_eq!(d.dims(Sig::cyc(4)), vec![1, 3]);
    assert_eq!(d.homology(Sig::cyc(4)).unwrap(), vec![0, 2]);
    assert_eq!(d.dims(Sig::cyc(5)), vec![1, 10, 15]);
}

#[test]
fn com_dual_and_koszul() {
    let q = catalog::com(cyc(5));
    let dual = quadratic_dual(&q);
    assert_eq!(dual.relation_rank(Sig::cyc(4)), 1);
    let back = quadratic_dual(&dual);
    assert_eq!(back.relation_rank(Sig::cyc(4)), 2);
    let km = koszul_map(&q).unwrap();
    let rep = km.report();
    assert!(rep.chain_map);
    assert!(rep.koszul);
}

#[test]
fn as_nil_dims() {
    let (a, _) = catalog::ass(cyc(6)).presented().unwrap();
    for (n, d) in [(3, 2), (4, 6), (5, 24), (6, 120)] {
        assert_eq!(a.dim(Sig::cyc(n)), d, "As(({n}))");
    }
    a.check().unwrap();
    let (nil, _) = catalog::nil(Window::new(Flavor::PlanarOperad, 5)).presented().unwrap();
    assert_eq!(nil.dim(Sig::operad(2)), 1);
    assert_eq!(nil.dim(Sig::operad(3)), 0);
    assert_eq!(nil.dim(Sig::operad(4)), 0);
}

#[test]
fn kc_and_end_tables() {
    let kc = catalog::kc_as_fop(Window::new(Flavor::PlanarCyclic, 5)).unwrap();
    assert_eq!(kc.dim(catalog::kc_sig(2)), 3);
    kc.check().unwrap();
    let e = catalog::end_dioperad(catalog::EndSpec::new(2).unwrap(), Window::new(Flavor::Dioperad, 4)).unwrap();
    assert_eq!(e.dim(Sig::di(2, 1)), 8);
    e.check().unwrap();
    let dd = catalog::doubled_end_cyclic(catalog::EndSpec::new(1).unwrap(), cyc(5)).unwrap();
    assert_eq!(dd.dim(Sig::cyc(4)), 16);
    dd.check().unwrap();
}

#[test]
fn lie_transform_euler() {
    let (lie, _) = catalog::lie(cyc(6)).presented().unwrap();
    let d = feynman_transform(&lie).unwrap();
    d.check_d_squared().unwrap();
    for n in 3..=6 {
        let s = Sig::cyc(n);
        let alt = |v: Vec<usize>| v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        assert_eq!(alt(d.homology(s).unwrap()), d.euler(s), "(({n}))");
    }
}

#[test]
fn spec_json_round_trip() {
    use feynops::opcore::DatumSpec;
    for q in [catalog::lie(cyc(5)), catalog::ass(cyc(5)), catalog::bilie(Window::new(Flavor::Dioperad, 4).with_nonempty_io())] {
        let spec = DatumSpec::from_datum(&q).unwrap();
        let text = spec.to_json();
        let back = DatumSpec::from_json(&text).unwrap().to_datum().unwrap();
        assert_eq!(back.gens, q.gens, "{}", q.name);
        assert_eq!(back.rels, q.rels, "{}", q.name);
        assert_eq!(DatumSpec::from_datum(&back).unwrap().to_json(), text);
    }
}

#[test]
fn spec_rejects_bad_input() {
    use feynops::opcore::DatumSpec;
    let unstable = r#"{"name":"x","flavor":"cyclic","window":{"max_flags":4},"generators":[{"sig":"((2))","dim":1}]}"#;
    assert!(DatumSpec::from_json(unstable).unwrap().to_datum().is_err());
    let bad_sign = r#"{"name":"x","flavor":"cyclic","window":{"max_flags":4},
        "generators":[{"sig":"((3))","dim":1,"action":[{"perm":[1,0,2],"image":[0],"signs":[2]}]}]}"#;
    assert!(DatumSpec::from_json(bad_sign).unwrap().to_datum().is_err());
    assert!(DatumSpec::from_json("{}").is_err());
}

#[test]
fn kc_laws() {
    let r = catalog::kc_check(4).unwrap();
    assert!(r.ok(), "{}", r.to_text());
}

#[test]
fn unit_and_end_tables() {
    let i = catalog::builtin_table("I", cyc(5), 1).unwrap();
    i.check().unwrap();
    assert!(i.compose.is_empty());
    let dq = feynman_transform(&i).unwrap();
    dq.check_d_squared().unwrap();
    assert_eq!(dq.dims(Sig::cyc(3)), vec![1]);
    let e = catalog::builtin_table("End", Window::modular(1, 3), 2).unwrap();
    e.check().unwrap();
    assert_eq!(e.dim(Sig::modular(1, 2)), 4);
}

fn trivial_up_to(flavor: Flavor, sigs: &[Sig]) -> VModule {
    let mut m = VModule::new();
    for &s in sigs {
        m.insert(Rep::trivial(flavor, s, 1));
    }
    m
}

#[test]
fn free_weight_one_counts_two_vertex_trees() {
    // a tree with two vertices splits the n legs into two blocks of size >= 2
    let gens = trivial_up_to(Flavor::Cyclic, &(3..=6).map(Sig::cyc).collect::<Vec<_>>());
    for odd in [false, true] {
        let f = FreeOp::new(gens.clone(), cyc(6).with_max_degree(1), odd);
        for n in 4..=6 {
            let want = (1usize << (n - 1)) - 1 - n;
            assert_eq!(weight_one_range(&f, Sig::cyc(n)).len(), want, "(({n})) odd={odd}");
        }
    }
    // a single loop on a trivial vertex survives the edge flip
    let gens = trivial_up_to(Flavor::Modular, &[Sig::modular(0, 3), Sig::modular(0, 4)]);
    let f = FreeOp::new(gens, Window::modular(1, 2).with_max_degree(1), false);
    assert_eq!(weight_one_range(&f, Sig::modular(1, 1)).len(), 1);
    assert_eq!(weight_one_range(&f, Sig::modular(1, 2)).len(), 1);
}

#[test]
fn relations_and_orthogonals_fill_weight_one() {
    let w = cyc(5);
    let mut data = vec![catalog::com(w), catalog::lie(w), catalog::ass(w)];
    data.push(catalog::builtin_datum("BiLie", Window::new(Flavor::Dioperad, 4).with_nonempty_io()).unwrap());
    for q in data {
        let dual = quadratic_dual(&q);
        let fe = q.weight_one();
        for s in q.window.sigs() {
            let total = weight_one_range(&fe, s).len();
            assert_eq!(q.relation_rank(s) + dual.relation_rank(s), total, "{} at {s:?}", q.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn saturation_ignores_key_order(which in 0usize..3, seed in any::<u64>()) {
        let q = [catalog::com, catalog::lie, catalog::ass][which](cyc(5));
        let free = FreeOp::new(q.gens.clone(), q.window, q.odd);
        let plain = saturate(&free, &q.rels, None);
        let shuffled = saturate(&free, &q.rels, Some(seed));
        for (s, e) in &plain {
            let other = &shuffled[s];
            prop_assert_eq!(e.rank(), other.rank());
            for v in e.basis() {
                prop_assert!(other.contains(&v));
            }
        }
    }
}
