use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xiform::cooperadic::{Letter, LieCalc};
use xiform::exactlin::rat;
use xiform::formality::cobar::{cobar_build, corestriction, eta_e2, omega_iota, Cobar, XiGen};
use xiform::formality::gerst::{self, Expr};
use xiform::formality::harrison::harrison_window;
use xiform::formality::obstruction::{generic_instances, obstruction_solve, residual, Ansatz, Instance};
use xiform::formality::sigma::{cochain_eq, letter_cochain, sigma_m_value, verify_sigma_chain_map};
use xiform::formality::xi::{
    canonical, coef_degree, factor_odd, filtration, fmt_xi, in_xi, xi_basis, Xi, XiBudget, XiMono,
};
use xiform::hochschild::{hkr, Cochain};
use xiform::lincomb::LinComb;
use xiform::polyalg::{parse_poly, parse_polyvector, Poly, Polyvector};

fn f(e: &[u32]) -> Letter {
    Letter::func(e.to_vec())
}

fn v(i: usize, e: &[u32]) -> Letter {
    Letter::der(i, e.to_vec())
}

fn budget(max_factors: usize, max_word_len: usize, max_coef_deg: u32) -> XiBudget {
    XiBudget { max_factors, max_word_len, max_coef_deg }
}

fn mono(words: Vec<Vec<Letter>>) -> XiMono {
    canonical(words).expect("nonzero monomial").1
}

#[test]
fn basis_examples() {
    assert_eq!(xi_basis(1, budget(1, 1, 0)), vec![vec![vec![v(0, &[0])]]]);
    let names: Vec<String> = xi_basis(1, budget(1, 2, 1)).iter().map(|m| fmt_xi(m)).collect();
    assert_eq!(names, ["<x1>", "<x1,d1>", "<d1>", "<x1*d1>"]);
}

/// Graded-symmetric products of single-factor basis elements, counted
/// directly: odd factors may not repeat.
fn product_count(singles: &[XiMono], factors: usize, max_deg: u32) -> usize {
    fn rec(singles: &[XiMono], start: usize, left: usize, deg: u32, max_deg: u32, last: Option<usize>) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in start..singles.len() {
            let w = &singles[i][0];
            if last == Some(i) && factor_odd(w) {
                continue;
            }
            let d = deg + coef_degree(&singles[i]);
            if d <= max_deg {
                total += rec(singles, i, left - 1, d, max_deg, Some(i));
            }
        }
        total
    }
    rec(singles, 0, factors, 0, max_deg, None)
}

#[test]
fn basis_counts_are_symmetric_products_of_words() {
    for n in 1..=2 {
        let b = budget(3, 2, 2);
        let basis = xi_basis(n, b);
        let singles: Vec<XiMono> = xi_basis(n, budget(1, 2, 2));
        for k in 1..=3 {
            let got = basis.iter().filter(|m| m.len() == k).count();
            assert_eq!(got, product_count(&singles, k, 2), "n={n} factors={k}");
        }
        for m in &basis {
            assert!(in_xi(m));
        }
    }
    let lie = LieCalc::<Letter>::new();
    let n = 2;
    let singles = xi_basis(n, budget(1, 3, 2));
    let per_word = |ms: &[Letter]| lie.quotient_dim(ms);
    let mut want = 0;
    let ls = xiform::formality::xi::letters(n, 2);
    for (i, a) in ls.iter().enumerate() {
        want += 1;
        for (j, b) in ls.iter().enumerate().skip(i) {
            if a.coef_degree() + b.coef_degree() <= 2 && !(a.is_der() && b.is_der()) {
                want += per_word(&[a.clone(), b.clone()]);
            }
            for c in ls.iter().skip(j) {
                let deg = a.coef_degree() + b.coef_degree() + c.coef_degree();
                let ders = [a, b, c].iter().filter(|l| l.is_der()).count();
                if deg <= 2 && ders <= 1 {
                    want += per_word(&[a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    assert_eq!(singles.len(), want);
}

#[test]
fn differential_examples() {
    let xi = Xi::new(1);
    assert!(xi.d_mono(&mono(vec![vec![f(&[2])]])).unwrap().is_zero());
    let fv = mono(vec![vec![f(&[2])], vec![v(0, &[0])]]);
    let got = xi.d_mono(&fv).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(got.iter().next().unwrap().0, &vec![vec![f(&[1])]]);
    let c = got.iter().next().unwrap().1;
    assert!(*c == rat(2) || *c == rat(-2));
    let fg = mono(vec![vec![f(&[1]), f(&[2])]]);
    let got = xi.d_mono(&fg).unwrap();
    assert_eq!(got, LinComb::basis(vec![vec![f(&[3])]]));
}

#[test]
fn differential_squares_to_zero_and_lowers_filtration() {
    for (n, b) in [(1, budget(3, 3, 2)), (2, budget(2, 2, 2))] {
        let xi = Xi::new(n);
        for m in xi_basis(n, b) {
            let dm = xi.d_mono(&m).unwrap();
            for (k, _) in dm.iter() {
                assert!(in_xi(k));
                assert_eq!(filtration(k), filtration(&m) - 1, "{}", fmt_xi(&m));
            }
            for ((l, r), _) in xi.cobracket(&m).iter() {
                assert_eq!(filtration(l) + filtration(r), filtration(&m) - 1);
            }
            assert!(xi.d(&dm).unwrap().is_zero(), "{}", fmt_xi(&m));
        }
    }
}

fn p(s: &str, n: usize) -> Poly {
    parse_poly(s, n).unwrap()
}

fn pv(s: &str, n: usize) -> Polyvector {
    parse_polyvector(s, n).unwrap()
}

#[test]
fn sigma_examples() {
    let n = 2;
    let vf = mono(vec![vec![v(0, &[0, 1])], vec![f(&[2, 0])]]);
    let want = Cochain::from_poly(p("2*x1*x2", n));
    let got = sigma_m_value(&vf, n);
    assert!(cochain_eq(&got, &want) || cochain_eq(&got.scale(&rat(-1)), &want));

    let word = vec![vec![v(0, &[0, 1]), f(&[1, 0])]];
    let want = hkr(&pv("x1*x2 d1", n));
    let got = sigma_m_value(&word, n);
    assert!(cochain_eq(&got, &want) || cochain_eq(&got.scale(&rat(-1)), &want));

    let long = vec![vec![v(0, &[0, 0]), f(&[1, 0]), f(&[0, 1])]];
    assert!(sigma_m_value(&long, n).is_zero());
    assert!(sigma_m_value(&vec![vec![f(&[1, 1])]], n).is_zero());

    let d1 = letter_cochain(&v(0, &[0, 0]));
    let x1 = letter_cochain(&f(&[1, 0]));
    assert_eq!(d1.gerst_bracket(&x1), Cochain::from_poly(p("1", n)));
    assert!(d1.gerst_bracket(&letter_cochain(&v(1, &[0, 0]))).is_zero());
}

#[test]
fn sigma_is_compatible_with_codifferentials() {
    let rep = verify_sigma_chain_map(1, budget(2, 2, 2)).unwrap();
    assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
    assert!(rep.monomials > 0 && rep.letter_pairs > 0);
    let rep = verify_sigma_chain_map(2, budget(2, 2, 1)).unwrap();
    assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
}

fn commutator_apply(a: &Polyvector, b: &Polyvector, g: &Poly) -> Poly {
    let ab = a.apply_derivation(&b.apply_derivation(g).unwrap()).unwrap();
    let ba = b.apply_derivation(&a.apply_derivation(g).unwrap()).unwrap();
    &ab - &ba
}

#[test]
fn obstruction_residuals_match_closed_forms() {
    for inst in generic_instances(Ansatz::Vff, 3, 5, 4) {
        let (vv, f1, f2, f3) = (&inst.ders[0], &inst.funcs[0], &inst.funcs[1], &inst.funcs[2]);
        let act = |g: &Poly| vv.apply_derivation(g).unwrap();
        let [ra, rb] = residual(Ansatz::Vff, &inst);
        assert_eq!(ra, -&(&(f1 * f2) * &act(f3)));
        assert_eq!(rb, &(f2 * f3) * &act(f1));
    }
    for inst in generic_instances(Ansatz::Vfv, 3, 5, 4) {
        let (g, v1, v2, v3) = (&inst.funcs[0], &inst.ders[0], &inst.ders[1], &inst.ders[2]);
        let v1g = v1.apply_derivation(g).unwrap();
        let [rm, rn] = residual(Ansatz::Vfv, &inst);
        // both orderings of v2, v3 contribute one copy
        assert_eq!(rm, commutator_apply(v2, v3, &v1g).scale(&rat(2)));
        assert_eq!(rn, v1.apply_derivation(&commutator_apply(v2, v3, g)).unwrap().scale(&rat(2)));
    }
}

#[test]
fn obstruction_coefficients_vanish() {
    for which in [Ansatz::Vff, Ansatz::Vfv] {
        let rep = obstruction_solve(which, &generic_instances(which, 3, 7, 6)).unwrap();
        assert_eq!((rep.rank, rep.unique), (2, true));
        assert!(rep.solutions.is_empty());
    }
    let x = pv("d1", 1);
    let degenerate = Instance { funcs: vec![p("x1", 1)], ders: vec![x.clone(), x.clone(), x] };
    let rep = obstruction_solve(Ansatz::Vfv, &[degenerate]).unwrap();
    assert!(!rep.unique);
    assert_eq!(rep.solutions.len(), 2 - rep.rank);
    let short = Instance { funcs: vec![], ders: vec![] };
    assert!(obstruction_solve(Ansatz::Vff, &[short]).is_err());
}

fn h(m: XiMono) -> Expr<XiGen> {
    gerst::leaf(XiGen(m))
}

#[test]
fn cobar_build_examples() {
    let even = vec![vec![f(&[1])]];
    let odd = vec![vec![v(0, &[0])]];
    assert_eq!(cobar_build(&[even.clone()], 1).len(), 1);
    assert_eq!(cobar_build(&[even.clone()], 2).len(), 3);
    assert_eq!(cobar_build(&[odd.clone()], 2).len(), 1);
    assert_eq!(cobar_build(&[even.clone(), odd.clone()], 2).len(), 6);
    assert!(!gerst::is_zero(&gerst::bracket(&h(even.clone()), &h(even))));
    assert!(gerst::is_zero(&gerst::bracket(&h(odd.clone()), &h(odd))));
}

#[test]
fn cobar_differential_examples() {
    let cb = Cobar::new(1);
    assert!(cb.d_gen(&vec![vec![f(&[1])]]).unwrap().is_zero());
    let fg = vec![vec![f(&[1]), f(&[2])]];
    let d = cb.d_gen(&fg).unwrap();
    let want = h(vec![vec![f(&[3])]]).minus(&gerst::mul(&h(vec![vec![f(&[1])]]), &h(vec![vec![f(&[2])]])));
    assert_eq!(gerst::normal_form(&d), gerst::normal_form(&want));
    assert!(cb.nu(&d).is_zero());
    assert!(gerst::is_zero(&cb.d(&d).unwrap()));
    let two = mono(vec![vec![f(&[1])], vec![f(&[2])]]);
    let d = cb.d_gen(&two).unwrap();
    let br = gerst::bracket(&h(vec![vec![f(&[1])]]), &h(vec![vec![f(&[2])]]));
    assert!(gerst::is_zero(&d.plus(&br)) || gerst::is_zero(&d.minus(&br)));
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[XiMono], leaves: usize) -> Expr<XiGen> {
    let pick = |rng: &mut ChaCha8Rng| h(gens[rng.gen_range(0..gens.len())].clone());
    let mut e = pick(rng);
    for _ in 1..leaves {
        let g = pick(rng);
        e = if rng.gen_bool(0.5) { gerst::mul(&e, &g) } else { gerst::bracket(&e, &g) };
    }
    e.scale(&rat(rng.gen_range(1..=3)))
}

#[test]
fn cobar_squares_to_zero_and_nu_is_a_chain_map() {
    let n = 1;
    let cb = Cobar::new(n);
    let gens = xi_basis(n, budget(2, 2, 2));
    for c in &gens {
        let d = cb.d_gen(c).unwrap();
        assert!(gerst::is_zero(&cb.d(&d).unwrap()), "{}", fmt_xi(c));
        assert!(cb.nu(&d).is_zero(), "{}", fmt_xi(c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let e = random_element(&mut rng, &gens, 3);
        let d = cb.d(&e).unwrap();
        assert!(gerst::is_zero(&cb.d(&d).unwrap()));
        assert!(cb.nu(&d).is_zero());
    }
}

#[test]
fn nu_is_a_gerstenhaber_map_and_factors() {
    let n = 2;
    let cb = Cobar::new(n);
    let gens = xi_basis(n, budget(2, 2, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let a = random_element(&mut rng, &gens, 1);
        let b = random_element(&mut rng, &gens, 1);
        let (na, nb) = (cb.nu(&a), cb.nu(&b));
        assert_eq!(cb.nu(&gerst::mul(&a, &b)), na.wedge(&nb));
        assert_eq!(cb.nu(&gerst::bracket(&a, &b)), na.schouten(&nb));
    }
    let singles: Vec<XiMono> = gens.iter().filter(|m| m.len() == 1).cloned().collect();
    for e in cobar_build(&singles, 2) {
        let nu = cb.nu(&e);
        assert_eq!(eta_e2(&omega_iota(&e), n), nu);
        assert_eq!(cb.nu2(&cb.nu1(&e).unwrap()), nu);
    }
    let u = vec![vec![v(1, &[1, 0])]];
    assert_eq!(cb.nu(&h(u.clone())), corestriction(&u, n));
    assert_eq!(cb.nu(&h(u)), pv("x1 d2", n));
}

#[test]
fn harrison_window_examples() {
    let rows = harrison_window(1, 3, 3).unwrap();
    for r in &rows {
        assert!(r.complete);
        let want = usize::from(r.degree == 0);
        assert_eq!(r.dim, want, "{r:?}");
    }
    assert!(rows.iter().all(|r| r.weight >= 1));
    let rows = harrison_window(2, 3, 3).unwrap();
    for w in 1..=3u32 {
        let h0: usize = rows.iter().filter(|r| r.weight == w && r.degree == 0).map(|r| r.dim).sum();
        let higher: usize = rows.iter().filter(|r| r.weight == w && r.degree != 0).map(|r| r.dim).sum();
        assert_eq!((h0, higher), (w as usize + 1, 0));
    }
    let partial = harrison_window(1, 3, 2).unwrap();
    assert!(partial.iter().any(|r| !r.complete));
}

