use feynops::exactlin::*;
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SMat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| SMat::from_i64(&rows))
    })
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n))
        .prop_map(|(image, neg)| SignedPerm { image, sign: neg.iter().map(|&b| if b { -1 } else { 1 }).collect() })
}

fn action(n: usize) -> impl Strategy<Value = GroupAction> {
    prop::collection::vec(signed_perm(n), 1..=2).prop_map(move |gens| GroupAction::generated_by(n, &gens).unwrap())
}

/// Unit lower times unit upper triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = SMat> {
    (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(l, u)| {
        let tri = |v: &[i64], lower: bool| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (i == j, if lower { j < i } else { j > i }) {
                            (true, _) => 1,
                            (false, true) => v[i * n + j],
                            _ => 0,
                        })
                        .collect()
                })
                .collect();
            SMat::from_i64(&rows)
        };
        tri(&l, true).mul(&tri(&u, false))
    })
}

fn partial_identity(rows: usize, cols: usize, offset_row: usize, rank: usize) -> SMat {
    SMat::from_cols(rows, (0..cols).map(|c| if c < rank { vec![(offset_row + c, rat_one())] } else { vec![] }).collect())
}

fn complex(dims: [usize; 3], maps: [SMat; 2]) -> ChainComplex {
    let mut c = ChainComplex::new(1);
    for (n, &d) in dims.iter().enumerate() {
        c.spaces.insert(n as i64, BasedSpace::uniform(&format!("c{n}_"), d, n as i64));
    }
    for (n, m) in maps.into_iter().enumerate() {
        let (s, t) = (c.spaces[&(n as i64)].clone(), c.spaces[&(n as i64 + 1)].clone());
        c.differentials.insert(n as i64, SparseMap::new(s, t, m).unwrap());
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_and_echelon_ranks_agree(m in small_matrix(6, 6)) {
        prop_assert_eq!(m.rank(), rank_by_echelon(&m));
        let ker = kernel(&m);
        prop_assert_eq!(ker.len() + m.rank(), m.ncols);
        for v in &ker {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn inverse_round_trips((n, a) in (1usize..5).prop_flat_map(|n| (Just(n), invertible(n)))) {
        let inv = inverse(&a).unwrap();
        prop_assert_eq!(a.mul(&inv), SMat::identity(n));
        prop_assert_eq!(inv.mul(&a), SMat::identity(n));
    }

    #[test]
    fn reynolds_projector_is_idempotent((n, g) in (1usize..5).prop_flat_map(|n| (Just(n), action(n)))) {
        let space = BasedSpace::uniform("e", n, 0);
        let p = reynolds_projector(&space, &g).unwrap();
        prop_assert_eq!(p.matrix.mul(&p.matrix), p.matrix.clone());
        for h in &g.elements {
            prop_assert_eq!(p.matrix.mul(&h.to_matrix()), p.matrix.clone());
        }
        let (q, map) = coinvariants(&space, &g).unwrap();
        prop_assert_eq!(q.dim(), p.matrix.rank());
        prop_assert_eq!(map.matrix.rank(), q.dim());
    }

    #[test]
    fn homology_is_basis_independent(
        ((n0, n1, n2), (g0, g1, g2)) in (0usize..4, 0usize..5, 0usize..4)
            .prop_flat_map(|(a, b, c)| (Just((a, b, c)), (invertible(a.max(1)), invertible(b.max(1)), invertible(c.max(1))))),
        r1 in 0usize..4,
        r2 in 0usize..4,
    ) {
        let r1 = r1.min(n0).min(n1);
        let r2 = r2.min(n1 - r1).min(n2);
        // standard form: d0 hits the first r1 basis vectors of C1, d1 reads the next r2
        let d0 = partial_identity(n1, n0, 0, r1);
        let d1 = SMat::from_cols(n2, (0..n1).map(|c| if c >= r1 && c < r1 + r2 { vec![(c - r1, rat_one())] } else { vec![] }).collect());
        let conj = |m: &SMat, src: &SMat, dst: &SMat, ns: usize, nd: usize| {
            if ns == 0 || nd == 0 { m.clone() } else { dst.mul(m).mul(&inverse(src).unwrap()) }
        };
        let e0 = conj(&d0, &g0, &g1, n0, n1);
        let e1 = conj(&d1, &g1, &g2, n1, n2);
        let standard = complex([n0, n1, n2], [d0, d1]);
        let moved = complex([n0, n1, n2], [e0, e1]);
        let h = homology_dims(&standard).unwrap();
        prop_assert_eq!(&h, &homology_dims(&moved).unwrap());
        prop_assert_eq!(h[&0], n0 - r1);
        prop_assert_eq!(h[&1], n1 - r1 - r2);
        prop_assert_eq!(h[&2], n2 - r2);
        let alternating: i64 = h.iter().map(|(n, d)| if n % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
        prop_assert_eq!(euler_char(&moved), rat(alternating));
    }
}

#[test]
fn non_complex_is_rejected() {
    let c = complex([1, 1, 1], [SMat::identity(1), SMat::identity(1)]);
    assert!(homology_dims(&c).is_err());
}

#[test]
fn rationals_print_and_parse() {
    for (r, s) in [(rat_frac(-6, 4), "-3/2"), (rat(7), "7"), (rat_zero(), "0")] {
        assert_eq!(fmt_rat(&r), s);
        assert_eq!(parse_rat(s), Some(r));
    }
    assert_eq!(parse_rat("1/0"), None);
}
