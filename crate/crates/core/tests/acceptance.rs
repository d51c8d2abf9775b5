//! Acceptance criteria 1 to 12, one test each. Every test prints a single
//! `criterion NN PASS|FAIL ...` line; run with `--nocapture` to see them.

use feynops::catalog::{self, EndSpec};
use feynops::charcalc::{
    brute_force_chi, chi_delta_closed_form, chi_delta_table, cyclic_dims, p_at_dims, p_polynomial, substitute,
    SubstitutionRule,
};
use feynops::exactlin::{factorial, fmt_rat, rat, Rat};
use feynops::graphkit::{Flavor, Sig, Window};
use feynops::opcore::{feynman_transform, quadratic_dual, FOpTable, QuadraticDatum};
use feynops::sixfun::{
    ambidex_check, binomial_check, coproper_check, free_preservation, projection_iso, pushforward_datum,
    pushforward_l, restrict, shriek_pushforward, shriek_pushforward_in, verify_intertwining, FunctorReport,
    MorphismId,
};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

fn cyc(n: usize) -> Window {
    Window::new(Flavor::Cyclic, n)
}

fn report_line(n: u32, title: &str, ok: bool, detail: &str) {
    println!("criterion {n:02} {} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
}

/// Prints the criterion line and fails the test on the first failed check.
fn conclude(n: u32, title: &str, failures: &[String], detail: &str) {
    let ok = failures.is_empty();
    report_line(n, title, ok, if ok { detail } else { &failures[0] });
    assert!(ok, "criterion {n}: {failures:?}");
}

fn require_report(failures: &mut Vec<String>, r: &FunctorReport, verdicts: &[&str]) {
    if r.verdicts.is_empty() {
        failures.push(format!("{}: no verdicts", r.title));
    }
    for v in verdicts {
        if r.verdicts.get(*v) != Some(&true) {
            failures.push(format!("{}: verdict {v:?} is {:?}", r.title, r.verdicts.get(*v)));
        }
    }
    if !r.ok() {
        failures.push(format!("{}: failed {:?}", r.title, r.failures()));
    }
}

fn presented(q: QuadraticDatum) -> FOpTable {
    q.presented().unwrap().0
}

fn fact(n: usize) -> Rat {
    Rat::from_integer(factorial(n as u64))
}

#[test]
fn criterion_01_chi_table() {
    let start = Instant::now();
    let rows = chi_delta_table(8).unwrap();
    let elapsed = start.elapsed();
    let frozen = [2, -2, 13, -59, 361, -2519];
    let mut failures = Vec::new();
    for (row, want) in rows.iter().zip(frozen) {
        if row.chi_delta != rat(want) || row.chi_delta != chi_delta_closed_form(row.n) {
            failures.push(format!("n = {}: chi_Delta = {}, expected {want}", row.n, fmt_rat(&row.chi_delta)));
        }
    }
    if rows.len() != 6 {
        failures.push(format!("{} rows", rows.len()));
    }
    if elapsed >= Duration::from_secs(5) {
        failures.push(format!("took {elapsed:?}"));
    }
    let values: Vec<String> = rows.iter().map(|r| fmt_rat(&r.chi_delta)).collect();
    conclude(1, "chi(Delta_1,n), n = 3..8", &failures, &format!("{} in {elapsed:.2?}", values.join(", ")));
}

#[test]
fn criterion_02_p_at_ones() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 3..=10 {
        let got = p_polynomial(n).unwrap().eval_ones();
        let want = if n % 2 == 0 { fact(n - 2) } else { -fact(n - 2) };
        if got != want {
            failures.push(format!("p_{n}(1,...,1) = {}, expected {}", fmt_rat(&got), fmt_rat(&want)));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        failures.push(format!("took {elapsed:?}"));
    }
    conclude(2, "p_n(1,...,1) = (-1)^n (n-2)!, n = 3..10", &failures, &format!("exact, {elapsed:.2?}"));
}

#[test]
fn criterion_03_substitution_identities() {
    let mut failures = Vec::new();
    for n in 3..=8 {
        let p = p_polynomial(n).unwrap();
        let ones = p.eval_ones();
        let a = substitute(&p, &SubstitutionRule::A);
        let b = substitute(&p, &SubstitutionRule::B);
        let c = substitute(&p, &SubstitutionRule::C);
        if b != ones {
            failures.push(format!("n = {n}: B = {} but p_n(1) = {}", fmt_rat(&b), fmt_rat(&ones)));
        }
        if c != rat(n as i64 - 2) * &ones {
            failures.push(format!("n = {n}: C = {}", fmt_rat(&c)));
        }
        if &a + &a != &b + &c {
            failures.push(format!("n = {n}: 2A = {} but B + C = {}", fmt_rat(&(&a + &a)), fmt_rat(&(&b + &c))));
        }
    }
    conclude(3, "B = p_n(1), C = (n-2) p_n(1), 2A = B + C, n = 3..8", &failures, "exact");
}

#[test]
fn criterion_04_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let table = chi_delta_table(5).unwrap();
    for row in &table {
        let n = row.n;
        // dimensions of the modular envelope L(Com), computed rather than assumed
        let l = pushforward_l(MorphismId::CyclicToModular, &presented(catalog::com(cyc(n + 2))), &Window::modular(1, n))
            .unwrap();
        if l.table.dims().values().any(|&d| d != 1) {
            failures.push(format!("L(Com) is not one-dimensional in genus <= 1, n <= {n}"));
        }
        let brute = brute_force_chi(Flavor::Modular, &l.table.dims(), Sig::modular(1, n)).unwrap();
        if brute != row.a {
            failures.push(format!("(1,{n}): graph sum {} but A = {}", fmt_rat(&brute), fmt_rat(&row.a)));
        }
    }
    for name in ["Com", "Lie"] {
        let dims = cyclic_dims(name, 6).unwrap();
        let computed: BTreeMap<Sig, usize> = presented(catalog::builtin_datum(name, cyc(6)).unwrap()).dims();
        if computed != dims {
            failures.push(format!("{name}: presented dims {computed:?} differ from {dims:?}"));
        }
        for n in 3..=6 {
            let brute = brute_force_chi(Flavor::Cyclic, &dims, Sig::cyc(n)).unwrap();
            let series = -p_at_dims(n, &dims).unwrap();
            if brute != series {
                failures.push(format!("{name} (({n})): graph sum {} but -p_n = {}", fmt_rat(&brute), fmt_rat(&series)));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        failures.push(format!("took {elapsed:?}"));
    }
    conclude(4, "graph sums = A (n = 3..5) and = -p_n(dims) for Com, Lie (n <= 6)", &failures, &format!("exact, {elapsed:.2?}"));
}

#[test]
fn criterion_05_d_squared() {
    let one = EndSpec::new(1).unwrap();
    let modular = Window::modular(1, 4);
    let di = Window::new(Flavor::Dioperad, 4);
    let c2m = MorphismId::CyclicToModular;
    let d2c = MorphismId::DioperadToCyclic;
    let com = presented(catalog::com(cyc(6)));
    let lie = presented(catalog::lie(cyc(6)));
    let objects: Vec<FOpTable> = vec![
        presented(catalog::com(cyc(5))),
        presented(catalog::lie(cyc(5))),
        catalog::unit_fop(cyc(5)),
        catalog::end_with_form(one, cyc(5)).unwrap(),
        pushforward_l(c2m, &com, &modular).unwrap().table,
        pushforward_l(c2m, &lie, &modular).unwrap().table,
        catalog::unit_fop(modular),
        catalog::end_with_form(one, modular).unwrap(),
        restrict(d2c, &presented(catalog::com(cyc(4))), &di).unwrap(),
        restrict(d2c, &presented(catalog::lie(cyc(4))), &di).unwrap(),
        presented(catalog::bilie(di.with_nonempty_io())),
        catalog::unit_fop(di),
        catalog::end_dioperad(one, di).unwrap(),
    ];
    let mut failures = Vec::new();
    let mut cells = 0;
    for p in &objects {
        let dp = feynman_transform(p).unwrap();
        if let Err(e) = dp.check_d_squared() {
            failures.push(format!("{} ({}): {e}", p.name, p.flavor.name()));
        }
        cells += p.window.sigs().len();
    }
    conclude(5, "d^2 = 0 over Com, Lie, I, End_1", &failures, &format!("{} objects, {cells} signatures", objects.len()));
}

#[test]
fn criterion_06_intertwining() {
    let mut failures = Vec::new();
    let com = presented(catalog::com(cyc(6)));
    let r = verify_intertwining(MorphismId::CyclicToModular, &com, &Window::modular(1, 4)).unwrap();
    require_report(&mut failures, &r, &["dimensions", "homology", "chain map"]);
    let e = catalog::end_dioperad(EndSpec::new(1).unwrap(), Window::new(Flavor::Dioperad, 4)).unwrap();
    let r = verify_intertwining(MorphismId::DioperadToCyclic, &e, &cyc(4)).unwrap();
    require_report(&mut failures, &r, &["dimensions", "homology", "chain map"]);
    conclude(6, "DL^!(P) = LD(P) for Com (cyclic -> modular) and End_1 (dioperad -> cyclic)", &failures, "dimensions, homology and chain map agree");
}

#[test]
fn criterion_07_projection_formula() {
    let mut failures = Vec::new();
    let c2m = MorphismId::CyclicToModular;
    let com = presented(catalog::com(cyc(4)));
    let o = shriek_pushforward_in(c2m, &com, &Window::modular(1, 4)).unwrap();
    for p in [presented(catalog::lie(cyc(4))), com.clone(), presented(catalog::ass(cyc(4)))] {
        let r = projection_iso(c2m, &o, &p).unwrap();
        require_report(&mut failures, &r, &["bijective", "equivariant", "structure maps"]);
    }
    let one = EndSpec::new(1).unwrap();
    let e = catalog::end_dioperad(one, Window::new(Flavor::Dioperad, 4)).unwrap();
    let c = catalog::doubled_end_cyclic(one, cyc(4)).unwrap();
    let r = projection_iso(MorphismId::DioperadToCyclic, &c, &e).unwrap();
    require_report(&mut failures, &r, &["bijective", "equivariant", "structure maps"]);
    conclude(7, "projection formula", &failures, "4 instances bijective, equivariant, compatible");
}

#[test]
fn criterion_08_ambidexterity() {
    let mut failures = Vec::new();
    let r = ambidex_check(50, 6, 2024).unwrap();
    require_report(&mut failures, &r, &["lambda -> psi -> lambda", "psi -> lambda -> psi"]);
    if r.rows.len() != 50 || r.rows.iter().any(|row| row[2].parse::<usize>().unwrap() > 6) {
        failures.push("instances out of range".into());
    }
    let live = r.rows.iter().filter(|row| row[5] == "true").count();
    if live < 25 {
        failures.push(format!("only {live} instances carry nonzero maps"));
    }
    conclude(8, "psi/lambda mutually inverse", &failures, &format!("50 instances, {live} nonzero, |Aut v| <= 6"));
}

#[test]
fn criterion_09_kc() {
    let mut failures = Vec::new();
    let r = catalog::kc_check(4).unwrap();
    require_report(&mut failures, &r, &["case table", "sequential associativity", "parallel associativity", "unit"]);
    let counts: Vec<String> = r.rows.iter().map(|row| format!("{} {}", row[0], row[1])).collect();
    conclude(9, "k[C_{*+1}] case table, associativity, unit", &failures, &counts.join(", "));
}

#[test]
fn criterion_10_binomial() {
    let mut failures = Vec::new();
    for d in 1..=2 {
        let spec = EndSpec::new(d).unwrap();
        let e = catalog::end_dioperad(spec, Window::new(Flavor::Dioperad, 4)).unwrap();
        let l = shriek_pushforward(MorphismId::DioperadToCyclic, &e).unwrap();
        for n in 3..=4 {
            let got = l.dim(Sig::cyc(n));
            if got != (2 * d).pow(n as u32) {
                failures.push(format!("dim A = {d}: L^!(End)(({n})) has dim {got}"));
            }
        }
    }
    let r = binomial_check(EndSpec::new(1).unwrap(), 4).unwrap();
    require_report(&mut failures, &r, &["binomial dims", "bijective", "equivariant", "structure maps"]);
    conclude(10, "dim L^!(End_A)((n)) = (2 dim A)^n, structure maps at dim A = 1", &failures, "dim A in {1,2}, n <= 4");
}

fn relation_ranks(q: &QuadraticDatum) -> BTreeMap<Sig, usize> {
    q.window.sigs().into_iter().map(|s| (s, q.relation_rank(s))).collect()
}

#[test]
fn criterion_11_quadratic_duality() {
    let mut failures = Vec::new();
    let data = [
        catalog::com(cyc(5)),
        catalog::lie(cyc(5)),
        catalog::ass(cyc(5)),
        catalog::nil(Window::new(Flavor::PlanarOperad, 5)),
        catalog::bilie(Window::new(Flavor::Dioperad, 4).with_nonempty_io()),
    ];
    for q in &data {
        let dd = quadratic_dual(&quadratic_dual(q));
        if dd.gens.reps.iter().map(|(s, r)| (*s, r.dim)).collect::<Vec<_>>()
            != q.gens.reps.iter().map(|(s, r)| (*s, r.dim)).collect::<Vec<_>>()
        {
            failures.push(format!("{}: generators change under double dual", q.name));
        }
        if relation_ranks(&dd) != relation_ranks(q) || presented(dd).dims() != presented(q.clone()).dims() {
            failures.push(format!("{}: ranks or dimensions change under double dual", q.name));
        }
    }

    let dual_com = presented(quadratic_dual(&catalog::com(cyc(6))));
    for n in 3..=6 {
        let want = (1..=n - 2).product::<usize>();
        if dual_com.dim(Sig::cyc(n)) != want {
            failures.push(format!("Com^!(({n})) has dim {}, expected {want}", dual_com.dim(Sig::cyc(n))));
        }
    }

    let q = catalog::bilie(Window::new(Flavor::Dioperad, 4).with_nonempty_io());
    let gens: Vec<(Sig, usize)> = q.gens.reps.iter().map(|(s, r)| (*s, r.dim)).collect();
    if gens != vec![(Sig::di(2, 1), 1), (Sig::di(1, 2), 1)] && gens != vec![(Sig::di(1, 2), 1), (Sig::di(2, 1), 1)] {
        failures.push(format!("BiLie generators {gens:?}"));
    }
    // golden from the first verified run: one Drinfeld relation among the five weight-1
    // graphs at (2,2), every coefficient +-1
    let rel = q.rels.get(&Sig::di(2, 2)).cloned().unwrap_or_default();
    let free = q.weight_one();
    let w1 = feynops::opcore::weight_one_range(&free, Sig::di(2, 2)).len();
    let signs_ok = rel.iter().all(|v| v.len() == 5 && v.iter().all(|(_, c)| *c == rat(1) || *c == rat(-1)));
    if q.relation_rank(Sig::di(2, 2)) != 1 || w1 != 5 || !signs_ok {
        failures.push(format!("BiLie at (2,2): rank {}, weight-1 dim {w1}, {rel:?}", q.relation_rank(Sig::di(2, 2))));
    }
    for s in [Sig::di(3, 1), Sig::di(1, 3)] {
        if q.relation_rank(s) != 1 {
            failures.push(format!("BiLie relation rank at {s:?} is {}", q.relation_rank(s)));
        }
    }
    conclude(11, "duality is an involution; Com^! dims (n-2)!; BiLie from Lie", &failures, "5 data; BiLie (2,2) rank 1 of 5");
}

#[test]
fn criterion_12_free_preservation_and_coproperness() {
    let mut failures = Vec::new();
    let c2m = MorphismId::CyclicToModular;
    let target = Window::modular(1, 4);
    for q in [catalog::com(cyc(6)), catalog::lie(cyc(6))] {
        let pushed = pushforward_datum(c2m, &q, &target);
        for odd in [false, true] {
            let r = free_preservation(c2m, &pushed.gens, &target, &cyc(6), odd).unwrap();
            require_report(&mut failures, &r, &[]);
        }
        let r = coproper_check(c2m, &pushed, &cyc(6)).unwrap();
        require_report(&mut failures, &r, &[]);
    }
    conclude(12, "R^!F(E) = F(rE); R^! = R for cyclic -> modular", &failures, "Com and Lie, genus <= 1, flags <= 4");
}
