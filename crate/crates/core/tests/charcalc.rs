use feynops::charcalc::*;
use feynops::exactlin::{rat, rat_frac};
use feynops::graphkit::{Flavor, Sig, Window};
use proptest::prelude::*;

#[test]
fn low_p_polynomials() {
    let p3 = p_polynomial(3).unwrap();
    assert_eq!(p3, ValencePoly::monomial(vec![3], rat(-1)));
    let p4 = p_polynomial(4).unwrap();
    assert_eq!(p4.coeff(&[3, 3]), rat(3));
    assert_eq!(p4.coeff(&[4]), rat(-1));
    assert_eq!(p4.to_string(), "-v4 + 3*v3^2");
}

#[test]
fn table() {
    let rows = chi_delta_table(8).unwrap();
    for r in &rows {
        assert_eq!(r.chi_delta, chi_delta_closed_form(r.n));
    }
}

#[test]
fn brute() {
    for n in 3..=5 {
        let w = Window::modular(1, n);
        let dims = envelope_com_dims(&w);
        let chi = brute_force_chi(Flavor::Modular, &dims, Sig::modular(1, n)).unwrap();
        assert_eq!(chi, chi_delta_table(n).unwrap()[n - 3].a, "n={n}");
    }
    for name in ["Com", "Lie"] {
        let dims = cyclic_dims(name, 6).unwrap();
        for n in 3..=6 {
            let chi = brute_force_chi(Flavor::Cyclic, &dims, Sig::cyc(n)).unwrap();
            assert_eq!(chi, -p_at_dims(n, &dims).unwrap(), "{name} {n}");
        }
    }
}

fn numeric_series(coeffs: &[(i64, i64)]) -> CharSeries {
    let mut f = CharSeries::identity(coeffs.len() + 1);
    for (k, &(p, q)) in coeffs.iter().enumerate() {
        f.coeffs[k + 2] = ValencePoly::constant(rat_frac(p, q));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_round_trips(coeffs in prop::collection::vec((-4i64..=4, 1i64..=3), 1..6)) {
        let f = numeric_series(&coeffs);
        let g = compositional_inverse(&f).unwrap();
        prop_assert!(f.compose(&g).unwrap().is_identity());
        prop_assert_eq!(compositional_inverse(&g).unwrap(), f);
    }

    /// Inverting then substituting `v_k` agrees with substituting then inverting.
    #[test]
    fn p_polynomials_specialize(coeffs in prop::collection::vec((-4i64..=4, 1i64..=3), 3..5)) {
        let f = numeric_series(&coeffs);
        let g = compositional_inverse(&f).unwrap();
        let value = |k: u32| {
            let (p, q) = coeffs[k as usize - 3];
            rat_frac(p, q)
        };
        for n in 3..=coeffs.len() + 2 {
            let p = p_polynomial(n).unwrap();
            prop_assert_eq!(ValencePoly::constant(p.eval(value)), g.coeffs[n - 1].clone(), "n={}", n);
        }
    }
}

#[test]
fn composition_is_associative() {
    let f = numeric_series(&[(1, 1), (-2, 3), (3, 1)]);
    let g = numeric_series(&[(0, 1), (1, 2), (-1, 1)]);
    let h = numeric_series(&[(2, 1), (2, 1), (1, 3)]);
    let left = f.compose(&g).unwrap().compose(&h).unwrap();
    let right = f.compose(&g.compose(&h).unwrap()).unwrap();
    assert_eq!(left, right);
    assert_eq!(left.coeffs[0], ValencePoly::zero());
}
