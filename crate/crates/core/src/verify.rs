//! Verification suites behind `xiform verify`, with their JSON reports.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cooperadic::{witt_dim, LieCalc, Symbol, Word};
use crate::error::{Error, Result};
use crate::exactlin::{rat, Rat};
use crate::formality::cobar::{cobar_build, eta_e2, omega_iota, Cobar, XiGen};
use crate::formality::gerst::{self, Expr, Tree};
use crate::formality::harrison::harrison_window;
use crate::formality::obstruction::{generic_instances, obstruction_solve, Ansatz};
use crate::formality::sigma::verify_sigma_chain_map;
use crate::formality::xi::{filtration, fmt_xi, in_xi, xi_basis, Xi, XiBudget};
use crate::hochschild::{binom, hh_dims, Cochain, MultiIndex};
use crate::lincomb::{sign, LinComb};
use crate::polyalg::{Mono, Poly, Polyvector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hkr,
    Schouten,
    Braces,
    Xi,
    Sigma,
    Obstruction,
    Cobar,
    Harrison,
    Witt,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hkr,
        Suite::Schouten,
        Suite::Braces,
        Suite::Xi,
        Suite::Sigma,
        Suite::Obstruction,
        Suite::Cobar,
        Suite::Harrison,
        Suite::Witt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hkr => "hkr",
            Suite::Schouten => "schouten",
            Suite::Braces => "braces",
            Suite::Xi => "xi",
            Suite::Sigma => "sigma",
            Suite::Obstruction => "obstruction",
            Suite::Cobar => "cobar",
            Suite::Harrison => "harrison",
            Suite::Witt => "witt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub vars: usize,
    pub max_weight: i64,
    pub max_arity: usize,
    pub max_factors: usize,
    pub max_word_len: usize,
    pub max_coef_deg: u32,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            vars: 2,
            max_weight: 2,
            max_arity: 3,
            max_factors: 3,
            max_word_len: 3,
            max_coef_deg: 2,
            seed: 0,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [self.vars, self.max_arity, self.max_factors, self.max_word_len, self.max_coef_deg as usize];
        if counts.contains(&0) || self.max_weight < 1 {
            return Err(Error::Config("all budgets must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    fn xi_budget(&self) -> XiBudget {
        XiBudget { max_factors: self.max_factors, max_word_len: self.max_word_len, max_coef_deg: self.max_coef_deg }
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(31).wrapping_add(suite as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub budget: Value,
    pub checked: usize,
    pub failures: Vec<String>,
    pub dims: Value,
}

impl SuiteReport {
    fn new(suite: Suite, budget: Value) -> Self {
        SuiteReport { suite, budget, checked: 0, failures: Vec::new(), dims: Value::Null }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the selected suites, in parallel, and returns reports in the
/// requested order.
pub fn run(cfg: &RunConfig) -> Result<Vec<SuiteReport>> {
    cfg.validate()?;
    std::thread::scope(|s| {
        let handles: Vec<_> = cfg.suites.iter().map(|&suite| s.spawn(move || run_suite(suite, cfg))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Inconsistent("suite panicked".into()))))
            .collect()
    })
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Hkr => hkr_suite(cfg),
        Suite::Schouten => schouten_suite(cfg),
        Suite::Braces => braces_suite(cfg),
        Suite::Xi => xi_suite(cfg),
        Suite::Sigma => sigma_suite(cfg),
        Suite::Obstruction => obstruction_suite(cfg),
        Suite::Cobar => cobar_suite(cfg),
        Suite::Harrison => harrison_suite(cfg),
        Suite::Witt => witt_suite(),
    }
}

pub fn report_json(reports: &[SuiteReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn summary(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "ok" } else { "FAIL" };
        out.push_str(&format!("{:<12} {:>4}  checked {:>7}  failures {}\n", r.suite.name(), status, r.checked, r.failures.len()));
        for f in r.failures.iter().take(5) {
            out.push_str(&format!("    {f}\n"));
        }
    }
    out
}

fn hkr_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::Hkr,
        json!({"vars": cfg.vars, "max_arity": cfg.max_arity, "max_weight": cfg.max_weight}),
    );
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        for k in 0..=cfg.max_arity.min(n + 1) {
            for w in -(k as i64)..=cfg.max_weight {
                let budget = (w + k as i64).max(0) as u32;
                let d = hh_dims(n, k, w, budget);
                rep.check(d.complete && d.hh == d.polyvectors && d.hkr_rank == d.hh, || {
                    format!("n={n} k={k} w={w}: hh {} polyvectors {} hkr rank {}", d.hh, d.polyvectors, d.hkr_rank)
                });
                dims.push(json!({"n": n, "k": k, "w": w, "hh": d.hh, "polyvectors": d.polyvectors,
                    "hkr_rank": d.hkr_rank, "cocycles": d.cocycles, "coboundaries": d.coboundaries}));
            }
        }
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

/// Monomial cochains with every slot of order 1 or 2.
fn grid_basis(n: usize, k: usize, coef_deg: u32) -> Vec<Cochain> {
    let slots: Vec<MultiIndex> = (1..=2).flat_map(|o| Mono::all_of_degree(n, o)).map(|m| m.0).collect();
    let mut tuples: Vec<Vec<MultiIndex>> = vec![Vec::new()];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                slots.iter().map(move |s| {
                    let mut t2 = t.clone();
                    t2.push(s.clone());
                    t2
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for t in tuples {
        for m in Mono::all_up_to_degree(n, coef_deg) {
            out.push(Cochain::term(Poly::monomial(m, Rat::one()), t.clone()).expect("nonzero slots"));
        }
    }
    out
}

/// Sum of cochains that may include zeros of a different nominal arity.
fn combine(parts: &[(Rat, &Cochain)]) -> std::result::Result<Cochain, String> {
    let live: Vec<&(Rat, &Cochain)> = parts.iter().filter(|(c, x)| !c.is_zero() && !x.is_zero()).collect();
    let Some(first) = live.first() else {
        return Ok(Cochain::zero(parts[0].1.nvars(), 0));
    };
    let arity = first.1.arity();
    let mut out = Cochain::zero(first.1.nvars(), arity);
    for (c, x) in live {
        if x.arity() != arity {
            return Err(format!("arity mismatch {} vs {}", x.arity(), arity));
        }
        out.add_scaled(x, c);
    }
    Ok(out)
}

fn vanishes(parts: &[(Rat, &Cochain)]) -> bool {
    matches!(combine(parts), Ok(c) if c.is_zero())
}

fn delta(p: &Cochain) -> Cochain {
    p.hochschild_d().scale(&sign(p.arity() % 2 == 1))
}

fn odd(k: usize) -> bool {
    k % 2 == 1
}

fn schouten_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::Schouten,
        json!({"vars": cfg.vars, "max_arity": cfg.max_arity, "max_coef_deg": cfg.max_coef_deg, "max_slot_order": 2}),
    );
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        let mut pv = Vec::new();
        for k in 0..=n {
            for c in 0..=cfg.max_coef_deg {
                pv.extend(crate::hochschild::polyvector_basis(n, k, c));
            }
        }
        let deg = |p: &Polyvector| p.degree().unwrap_or(0);
        for a in &pv {
            for b in &pv {
                let (da, db) = (deg(a), deg(b));
                let ab = a.schouten(b);
                let ba = b.schouten(a);
                let mut anti = ab.clone();
                anti.add_scaled(&ba, &sign(odd((da + 1) * (db + 1))));
                rep.check(anti.is_zero(), || format!("schouten antisymmetry n={n}"));
                for c in &pv {
                    let dc = deg(c);
                    let lhs = a.schouten(&b.schouten(c));
                    let mut rhs = ab.schouten(c);
                    rhs.add_scaled(&b.schouten(&a.schouten(c)), &sign(odd((da + 1) * (db + 1))));
                    rep.check(lhs == rhs, || format!("schouten Jacobi n={n}"));
                    let lhs = a.schouten(&b.wedge(c));
                    let mut rhs = ab.wedge(c);
                    rhs.add_scaled(&b.wedge(&a.schouten(c)), &sign(odd((da + 1) * db)));
                    rep.check(lhs == rhs, || format!("schouten Leibniz n={n} degrees {da},{db},{dc}"));
                }
            }
        }
        let by_arity: Vec<Vec<Cochain>> = (0..=cfg.max_arity).map(|k| grid_basis(n, k, cfg.max_coef_deg)).collect();
        let all: Vec<&Cochain> = by_arity.iter().flatten().collect();
        for p in &all {
            rep.check(p.hochschild_d().hochschild_d().is_zero(), || format!("d^2 on {p}"));
        }
        let mut pairs = 0;
        let mut triples = 0;
        for (i, p) in all.iter().enumerate() {
            for q in &all {
                let (k1, k2) = (p.arity(), q.arity());
                if k1 + k2 > cfg.max_arity {
                    continue;
                }
                pairs += 1;
                let pq = p.gerst_bracket(q);
                let s = sign(odd(k1 + 1));
                let ok = vanishes(&[
                    (rat(1), &delta(&pq)),
                    (rat(-1), &delta(p).gerst_bracket(q)),
                    (-s, &p.gerst_bracket(&delta(q))),
                ]);
                rep.check(ok, || format!("derivation on {p} , {q}"));
                for r in &all[i..] {
                    let k3 = r.arity();
                    if k1 + k2 + k3 > cfg.max_arity {
                        continue;
                    }
                    triples += 1;
                    let lhs = p.gerst_bracket(&q.gerst_bracket(r));
                    let t1 = pq.gerst_bracket(r);
                    let t2 = q.gerst_bracket(&p.gerst_bracket(r));
                    let e = sign(odd((k1 + 1) * (k2 + 1)));
                    rep.check(vanishes(&[(rat(1), &lhs), (rat(-1), &t1), (-e, &t2)]), || {
                        format!("Jacobi on {p} , {q} , {r}")
                    });
                }
            }
        }
        dims.push(json!({"n": n, "polyvectors": pv.len(), "cochains": all.len(), "pairs": pairs, "triples": triples}));
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

fn random_cochain(rng: &mut ChaCha8Rng, n: usize, k: usize, coef_deg: u32) -> Cochain {
    let slots: Vec<MultiIndex> = (1..=2).flat_map(|o| Mono::all_of_degree(n, o)).map(|m| m.0).collect();
    let monos = Mono::all_up_to_degree(n, coef_deg);
    let mut out = Cochain::zero(n, k);
    while out.is_zero() {
        for _ in 0..3 {
            let t: Vec<MultiIndex> = (0..k).map(|_| slots.choose(rng).expect("slots").clone()).collect();
            let m = monos.choose(rng).expect("monomials").clone();
            let c = rat(rng.gen_range(-3..=3));
            out.add_scaled(&Cochain::term(Poly::monomial(m, Rat::one()), t).expect("slots"), &c);
        }
    }
    out
}

fn homotopy_sides(p: &Cochain, q: &Cochain) -> (Cochain, Option<Cochain>) {
    let (k1, k2) = (p.arity(), q.arity());
    let lhs = combine(&[(rat(1), &p.cup(q)), (-sign(odd(k1 * k2)), &q.cup(p))]).expect("same arity");
    let pq = p.brace(std::slice::from_ref(q));
    let rhs = combine(&[
        (rat(1), &delta(&pq)),
        (rat(-1), &delta(p).brace(std::slice::from_ref(q))),
        (sign(odd(k1)), &p.brace(&[delta(q)])),
    ])
    .ok();
    (lhs, rhs)
}

fn braces_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    const TRIALS: usize = 20;
    let mut rep = SuiteReport::new(
        Suite::Braces,
        json!({"vars": cfg.vars, "max_arity": cfg.max_arity, "max_coef_deg": cfg.max_coef_deg, "trials": TRIALS, "seed": cfg.seed}),
    );
    let mut rng = cfg.rng(Suite::Braces);
    let n = cfg.vars;
    let mut samples = Vec::new();
    for _ in 0..TRIALS {
        let mut pick = || {
            let k = rng.gen_range(0..=cfg.max_arity);
            random_cochain(&mut rng, n, k, cfg.max_coef_deg)
        };
        samples.push((pick(), pick(), pick()));
    }
    let mut survivors_h = vec![true; 16];
    let mut survivors_d = vec![true; 4];
    for (p, q1, q2) in &samples {
        let kq = |q: &Cochain| q.arity() as i64 - 1;
        let lhs1 = p.brace(std::slice::from_ref(q1)).brace(std::slice::from_ref(q2));
        let lhs2 = p.brace(&[q1.brace(std::slice::from_ref(q2))]);
        let r1 = p.brace(&[q1.clone(), q2.clone()]);
        let r2 = p.brace(&[q2.clone(), q1.clone()]);
        let e = sign((kq(q1) * kq(q2)).rem_euclid(2) == 1);
        rep.check(vanishes(&[(rat(1), &lhs1), (rat(-1), &lhs2), (rat(-1), &r1), (-e, &r2)]), || {
            format!("pre-Jacobi on {p} ; {q1} ; {q2}")
        });

        let (lhs, rhs) = homotopy_sides(p, q1);
        let frozen = sign(odd(p.arity() * (q1.arity() + 1)));
        let ok = rhs.as_ref().is_some_and(|r| vanishes(&[(rat(1), &lhs), (-frozen, r)]));
        rep.check(ok, || format!("homotopy commutativity on {p} ; {q1}"));
    }
    let mut audit: Vec<(Cochain, Cochain)> = samples.iter().map(|(p, q, _)| (p.clone(), q.clone())).collect();
    for k1 in 0..=cfg.max_arity {
        for k2 in 0..=cfg.max_arity {
            for _ in 0..2 {
                let p = random_cochain(&mut rng, n, k1, cfg.max_coef_deg);
                let q = random_cochain(&mut rng, n, k2, cfg.max_coef_deg);
                audit.push((p, q));
            }
        }
    }
    for (p, q1) in &audit {
        let (k1, k2) = (p.arity(), q1.arity());
        let (lhs, rhs) = homotopy_sides(p, q1);
        for (bits, alive) in survivors_h.iter_mut().enumerate() {
            let e = |b: usize| bits >> b & 1 == 1;
            let s = sign(e(0) ^ (e(1) && odd(k1)) ^ (e(2) && odd(k2)) ^ (e(3) && odd(k1 * k2)));
            *alive &= rhs.as_ref().is_some_and(|r| vanishes(&[(rat(1), &lhs), (-s, r)]));
        }

        let pq = p.gerst_bracket(q1);
        let a = delta(&pq);
        let b = delta(p).gerst_bracket(q1);
        let c = p.gerst_bracket(&delta(q1));
        for (bits, alive) in survivors_d.iter_mut().enumerate() {
            let s = sign((bits & 1 == 1) ^ (bits & 2 == 2 && odd(k1)));
            *alive &= vanishes(&[(rat(1), &a), (rat(-1), &b), (-s, &c)]);
        }
    }
    let count = |v: &[bool]| v.iter().filter(|x| **x).count();
    rep.check(count(&survivors_h) == 1 && survivors_h[0b1010], || {
        format!("homotopy sign table: {} survivors", count(&survivors_h))
    });
    rep.check(count(&survivors_d) == 1 && survivors_d[0b11], || {
        format!("derivation sign table: {} survivors", count(&survivors_d))
    });
    rep.dims = json!({"audit_pairs": audit.len(), "homotopy_sign_candidates": 16, "homotopy_sign_survivors": count(&survivors_h),
        "derivation_sign_candidates": 4, "derivation_sign_survivors": count(&survivors_d)});
    Ok(rep)
}

fn xi_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let budget = cfg.xi_budget();
    let mut rep = SuiteReport::new(Suite::Xi, json!({"vars": cfg.vars, "xi": budget}));
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        let xi = Xi::new(n);
        let basis = xi_basis(n, budget);
        for m in &basis {
            let d = match xi.d_mono(m) {
                Ok(d) => d,
                Err(e) => {
                    rep.check(false, || format!("{}: {e}", fmt_xi(m)));
                    continue;
                }
            };
            rep.check(d.keys().all(|k| in_xi(k)), || format!("d {} leaves Xi", fmt_xi(m)));
            rep.check(d.keys().all(|k| filtration(k) == filtration(m) - 1), || {
                format!("d {} does not lower the filtration by one", fmt_xi(m))
            });
            rep.check(xi.d(&d)?.is_zero(), || format!("d^2 {}", fmt_xi(m)));
        }
        dims.push(json!({"n": n, "basis": basis.len()}));
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

fn sigma_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let budget = cfg.xi_budget();
    let mut rep = SuiteReport::new(Suite::Sigma, json!({"vars": cfg.vars, "xi": budget}));
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        let r = verify_sigma_chain_map(n, budget)?;
        rep.checked += r.letter_pairs + r.monomials;
        rep.failures.extend(r.mismatches.iter().map(|m| format!("n={n}: {m}")));
        dims.push(json!({"n": n, "letter_pairs": r.letter_pairs, "monomials": r.monomials}));
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

const OBSTRUCTION_VARS: usize = 3;
const OBSTRUCTION_INSTANCES: usize = 6;

fn obstruction_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::Obstruction,
        json!({"vars": OBSTRUCTION_VARS, "instances": OBSTRUCTION_INSTANCES, "seed": cfg.seed}),
    );
    let mut dims = Vec::new();
    for which in [Ansatz::Vff, Ansatz::Vfv] {
        let inst = generic_instances(which, OBSTRUCTION_VARS, cfg.seed, OBSTRUCTION_INSTANCES);
        let r = obstruction_solve(which, &inst)?;
        rep.check(r.unique, || format!("{which:?}: rank {} of 2, solutions {:?}", r.rank, r.solutions));
        let zero: Vec<&str> = if r.unique { vec!["0", "0"] } else { Vec::new() };
        dims.push(json!({"ansatz": which, "unknowns": r.unknowns, "equations": r.equations, "rank": r.rank,
            "solution": zero, "free_directions": r.solutions}));
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[Expr<XiGen>], leaves: usize) -> Expr<XiGen> {
    let mut pick = || gens.choose(rng).expect("generators").clone();
    match leaves {
        1 => pick(),
        2 => {
            let (a, b) = (pick(), pick());
            if rng.gen_bool(0.5) {
                gerst::mul(&a, &b)
            } else {
                gerst::bracket(&a, &b)
            }
        }
        _ => {
            let (a, b, c) = (pick(), pick(), pick());
            match rng.gen_range(0..4) {
                0 => gerst::mul(&gerst::mul(&a, &b), &c),
                1 => gerst::mul(&gerst::bracket(&a, &b), &c),
                2 => gerst::bracket(&gerst::mul(&a, &b), &c),
                _ => gerst::bracket(&gerst::bracket(&a, &b), &c),
            }
        }
    }
}

fn generators_of(e: &Expr<XiGen>) -> Vec<&XiGen> {
    fn walk<'a>(t: &'a Tree<XiGen>, out: &mut Vec<&'a XiGen>) {
        match t {
            Tree::Leaf(g) => out.push(g),
            Tree::Br(a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    let mut out = Vec::new();
    for (x, _) in e.iter() {
        for t in x {
            walk(t, &mut out);
        }
    }
    out
}

fn cobar_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    const RANDOM: usize = 20;
    let budget = cfg.xi_budget();
    let mut rep = SuiteReport::new(
        Suite::Cobar,
        json!({"vars": cfg.vars, "xi": budget, "max_leaves": 3, "random_elements": RANDOM, "seed": cfg.seed}),
    );
    let mut rng = cfg.rng(Suite::Cobar);
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        let cb = Cobar::new(n);
        let basis = xi_basis(n, budget);
        let known: std::collections::BTreeSet<_> = basis.iter().collect();
        let gens: Vec<Expr<XiGen>> = basis.iter().map(|m| gerst::leaf(XiGen(m.clone()))).collect();
        let mut elements = gens.clone();
        let mut overflow = 0;
        for leaves in 2..=3 {
            for _ in 0..RANDOM {
                elements.push(random_element(&mut rng, &gens, leaves));
            }
        }
        for e in &elements {
            let d = cb.d(e)?;
            if !generators_of(&d).iter().all(|g| known.contains(&g.0)) {
                overflow += 1;
            }
            rep.check(gerst::is_zero(&cb.d(&d)?), || format!("d^2 on {:?}", e.keys().next()));
            rep.check(cb.nu(&d).is_zero(), || format!("nu(d) on {:?}", e.keys().next()));
        }
        let mut pairs = 0;
        for a in &gens {
            for b in &gens {
                pairs += 1;
                let (na, nb) = (cb.nu(a), cb.nu(b));
                rep.check(cb.nu(&gerst::mul(a, b)) == na.wedge(&nb), || "nu is not multiplicative".into());
                rep.check(cb.nu(&gerst::bracket(a, b)) == na.schouten(&nb), || "nu does not preserve brackets".into());
            }
        }
        let small: Vec<_> = basis.iter().filter(|m| m.len() == 1 && m[0].len() <= 2).cloned().collect();
        let truncated = cobar_build(&small, 2);
        for e in truncated.iter().chain(&elements) {
            let nu = cb.nu(e);
            rep.check(eta_e2(&omega_iota(e), n) == nu, || "eta after Omega(iota) differs from nu".into());
            rep.check(cb.nu2(&cb.nu1(e)?) == nu, || "nu2 after nu1 differs from nu".into());
        }
        dims.push(json!({"n": n, "generators": gens.len(), "elements": elements.len(),
            "differential_leaves_budget": overflow, "pairs": pairs,
            "truncated_basis": truncated.len()}));
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

const HARRISON_WEIGHTS: u32 = 3;

fn harrison_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::Harrison,
        json!({"vars": cfg.vars, "weight_cap": HARRISON_WEIGHTS, "length_cap": cfg.max_word_len}),
    );
    let mut dims = Vec::new();
    for n in 1..=cfg.vars {
        for e in harrison_window(n, HARRISON_WEIGHTS, cfg.max_word_len)? {
            let dim_a: usize = binom(e.weight + n as u32 - 1, n as u32 - 1).to_string().parse().expect("small");
            let want = if e.degree == 0 { dim_a } else { 0 };
            if e.complete {
                rep.check(e.dim == want, || format!("n={n} weight {} degree {}: dim {} expected {want}", e.weight, e.degree, e.dim));
            }
            dims.push(json!({"n": n, "weight": e.weight, "degree": e.degree, "dim": e.dim, "chains": e.chains,
                "complete": e.complete}));
        }
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}

fn multisets(q: u32, len: usize) -> Vec<Vec<Symbol>> {
    let mut out: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|m| {
                let start = m.last().map_or(0, |s: &Symbol| s.id);
                (start..q).map(move |i| {
                    let mut m2 = m.clone();
                    m2.push(Symbol::even(i));
                    m2
                })
            })
            .collect();
    }
    out
}

fn witt_suite() -> Result<SuiteReport> {
    const ALPHABET: u32 = 3;
    const LENGTH: usize = 4;
    let mut rep = SuiteReport::new(Suite::Witt, json!({"alphabet": ALPHABET, "length": LENGTH}));
    let lie = LieCalc::<Symbol>::new();
    let mut dims = Vec::new();
    for q in 1..=ALPHABET {
        for len in 1..=LENGTH {
            let ms = multisets(q, len);
            let rank: usize = ms.iter().map(|m| lie.quotient_dim(m)).sum();
            let witt = witt_dim(q as u64, len as u32) as usize;
            rep.check(rank == witt, || format!("q={q} len={len}: rank {rank} vs Witt {witt}"));
            for m in &ms {
                for w in lie.normal_words(m) {
                    let x = LinComb::basis(w.clone());
                    let head: LinComb<Symbol> =
                        if w.len() == 1 { LinComb::basis(w[0].clone()) } else { LinComb::new() };
                    let back = lie.reconstruct(&head, &lie.cobracket(&x))?;
                    rep.check(back == lie.normalize(&x), || format!("reconstruct {:?}", w.iter().map(|s| s.id).collect::<Word<u32>>()));
                }
            }
            dims.push(json!({"alphabet": q, "length": len, "rank": rank, "witt": witt}));
        }
    }
    rep.dims = Value::Array(dims);
    Ok(rep)
}
