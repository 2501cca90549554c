//! Normalized Hochschild cochains of `A = Q[x1..xn]` realized as
//! polydifferential operators.
//!
//! A cochain of arity `k` is a finite sum of terms `q * (d^b1 a1) ... (d^bk ak)`
//! with every multi-index `bi` nonzero. Terms with equal slot lists share one
//! coefficient polynomial, so structural equality is equality of operators.
//!
//! Shifted degrees `|P| = arity - 1` govern all signs. The brace
//! `P{Q1..Qm}` inserts `Qj` after `ij` arguments of the result with sign
//! `(-1)^{sum_j |Qj| ij}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{self, Rat, SparseMat, SparseVec, Subspace};
use crate::polyalg::{parse_poly, Mono, Poly, Polyvector};

pub type MultiIndex = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    nvars: usize,
    arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, Poly>,
}

fn sign(odd: bool) -> Rat {
    if odd {
        -Rat::one()
    } else {
        Rat::one()
    }
}

fn order(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn add_idx(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All ways to write `beta = d0 + d1 + ... + d_{parts-1}` with multinomial weights.
fn split_multi(beta: &[u32], parts: usize) -> Vec<(BigInt, Vec<MultiIndex>)> {
    let mut acc: Vec<(BigInt, Vec<MultiIndex>)> = vec![(BigInt::one(), vec![Vec::new(); parts])];
    for &b in beta {
        let mut next = Vec::new();
        for (c, parts_so_far) in &acc {
            for (cc, comp) in compositions(b, parts) {
                let mut p = parts_so_far.clone();
                for (slot, e) in p.iter_mut().zip(&comp) {
                    slot.push(*e);
                }
                next.push((c * &cc, p));
            }
        }
        acc = next;
    }
    acc
}

/// Weak compositions of `b` into `parts` pieces, weighted by multinomials.
fn compositions(b: u32, parts: usize) -> Vec<(BigInt, Vec<u32>)> {
    if parts == 1 {
        return vec![(BigInt::one(), vec![b])];
    }
    let mut out = Vec::new();
    for first in 0..=b {
        for (c, mut rest) in compositions(b - first, parts - 1) {
            rest.insert(0, first);
            out.push((c * binom(b, first), rest));
        }
    }
    out
}

pub fn binom(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

impl Cochain {
    pub fn zero(nvars: usize, arity: usize) -> Self {
        Cochain { nvars, arity, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut c = Cochain::zero(p.nvars(), 0);
        c.add_term(Vec::new(), p);
        c
    }

    /// `coef * prod_i d^{slots[i]}`; rejects zero multi-indices.
    pub fn term(coef: Poly, slots: Vec<MultiIndex>) -> Result<Self> {
        let n = coef.nvars();
        if let Some(s) = slots.iter().find(|s| s.len() != n) {
            return Err(Error::Nvars(n, s.len()));
        }
        if slots.iter().any(|s| order(s) == 0) {
            return Err(Error::Dimension("zero multi-index in a normalized cochain".into()));
        }
        let mut c = Cochain::zero(n, slots.len());
        c.add_term(slots, coef);
        Ok(c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Poly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, slots: Vec<MultiIndex>, p: Poly) {
        debug_assert_eq!(slots.len(), self.arity);
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(slots.clone()).or_insert_with(|| Poly::zero(p.nvars()));
        e.add_scaled(&p, &Rat::one());
        if e.is_zero() {
            self.terms.remove(&slots);
        }
    }

    fn check_compatible(&self, other: &Cochain) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.arity, other.arity, "arity mismatch");
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Rat) {
        self.check_compatible(other);
        for (s, p) in &other.terms {
            self.add_term(s.clone(), p.scale(c));
        }
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.nvars, self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        out
    }

    /// Internal weights `deg(coefficient) - sum |slot|` of the monomial terms.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self
            .terms
            .iter()
            .flat_map(|(s, p)| {
                let so: i64 = s.iter().map(|m| order(m) as i64).sum();
                p.terms().map(move |(m, _)| m.degree() as i64 - so)
            })
            .collect();
        w.sort();
        w.dedup();
        w
    }

    pub fn evaluate(&self, args: &[Poly]) -> Result<Poly> {
        if args.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, got: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.nvars() != self.nvars) {
            return Err(Error::Nvars(self.nvars, a.nvars()));
        }
        let mut out = Poly::zero(self.nvars);
        for (slots, q) in &self.terms {
            let mut t = q.clone();
            for (s, a) in slots.iter().zip(args) {
                t = &t * &a.diff(s);
                if t.is_zero() {
                    break;
                }
            }
            out.add_scaled(&t, &Rat::one());
        }
        Ok(out)
    }

    pub fn cup(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Cochain::zero(self.nvars, self.arity + other.arity);
        for (s, p) in &self.terms {
            for (t, q) in &other.terms {
                let mut slots = s.clone();
                slots.extend(t.iter().cloned());
                out.add_term(slots, p * q);
            }
        }
        out
    }

    /// Hochschild coboundary via the closed formula, expanded by Leibniz.
    pub fn hochschild_d(&self) -> Cochain {
        let n = self.nvars;
        let k = self.arity;
        let zero_idx = vec![0u32; n];
        let mut raw: BTreeMap<Vec<MultiIndex>, Poly> = BTreeMap::new();
        let mut push = |slots: Vec<MultiIndex>, p: Poly| {
            let e = raw.entry(slots).or_insert_with(|| Poly::zero(n));
            e.add_scaled(&p, &Rat::one());
        };
        for (slots, q) in &self.terms {
            let mut first = vec![zero_idx.clone()];
            first.extend(slots.iter().cloned());
            push(first, q.clone());
            for i in 0..k {
                let s = sign(i % 2 == 0);
                for (c, parts) in split_multi(&slots[i], 2) {
                    let mut new = slots[..i].to_vec();
                    new.extend(parts);
                    new.extend(slots[i + 1..].iter().cloned());
                    push(new, q.scale(&(&s * Rat::from_integer(c))));
                }
            }
            let mut last = slots.clone();
            last.push(zero_idx.clone());
            push(last, q.scale(&sign(k % 2 == 0)));
        }
        let mut out = Cochain::zero(n, k + 1);
        for (slots, p) in raw {
            if slots.iter().any(|s| order(s) == 0) {
                assert!(p.is_zero(), "unnormalized terms failed to cancel in the coboundary");
            } else {
                out.add_term(slots, p);
            }
        }
        out
    }

    /// Brace operation `P{Q1, ..., Qm}`.
    pub fn brace(&self, qs: &[Cochain]) -> Cochain {
        for q in qs {
            assert_eq!(self.nvars, q.nvars, "variable count mismatch");
        }
        let shift: i64 = qs.iter().map(|q| q.arity as i64 - 1).sum();
        let arity = self.arity as i64 + shift;
        if qs.len() > self.arity {
            return Cochain::zero(self.nvars, arity.max(0) as usize);
        }
        let mut out = Cochain::zero(self.nvars, arity as usize);
        let k = self.arity;
        for positions in increasing_tuples(k, qs.len()) {
            let mut eps = 0i64;
            let mut before = 0i64;
            for (j, &pos) in positions.iter().enumerate() {
                let args_before = pos as i64 + before;
                eps += (qs[j].arity as i64 - 1) * args_before;
                before += qs[j].arity as i64 - 1;
            }
            let s = sign(eps.rem_euclid(2) == 1);
            for (slots, p) in &self.terms {
                // partial results: (coefficient, slot list built so far)
                let mut partial: Vec<(Poly, Vec<MultiIndex>)> = vec![(p.scale(&s), Vec::new())];
                let mut next_q = 0;
                for (i, beta) in slots.iter().enumerate() {
                    if next_q < positions.len() && positions[next_q] == i {
                        let q = &qs[next_q];
                        next_q += 1;
                        let mut grown = Vec::new();
                        for (coef, acc) in &partial {
                            for (qslots, qc) in &q.terms {
                                for (c, parts) in split_multi(beta, qslots.len() + 1) {
                                    let dq = qc.diff(&parts[0]);
                                    if dq.is_zero() {
                                        continue;
                                    }
                                    let mut acc2 = acc.clone();
                                    for (g, d) in qslots.iter().zip(&parts[1..]) {
                                        acc2.push(add_idx(g, d));
                                    }
                                    grown.push(((coef * &dq).scale(&Rat::from_integer(c)), acc2));
                                }
                            }
                        }
                        partial = grown;
                    } else {
                        for (_, acc) in partial.iter_mut() {
                            acc.push(beta.clone());
                        }
                    }
                }
                for (coef, acc) in partial {
                    out.add_term(acc, coef);
                }
            }
        }
        out
    }

    pub fn gerst_bracket(&self, other: &Cochain) -> Cochain {
        let a = self.brace(std::slice::from_ref(other));
        let b = other.brace(std::slice::from_ref(self));
        let odd = (self.arity + 1) * (other.arity + 1) % 2 == 1;
        let mut out = a;
        out.add_scaled(&b, &-sign(odd));
        out
    }
}

/// Strictly increasing `m`-tuples from `0..k`.
fn increasing_tuples(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, m, &mut Vec::new(), &mut out);
    out
}

/// Heap's-algorithm-free permutation list with signs, in lexicographic order.
pub fn permutations(k: usize) -> Vec<(bool, Vec<usize>)> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(bool, Vec<usize>)>) {
        if rest.is_empty() {
            let mut inv = 0;
            for i in 0..cur.len() {
                for j in i + 1..cur.len() {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((inv % 2 == 1, cur.clone()));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

/// HKR map with the `1/k!` antisymmetrization.
pub fn hkr(u: &Polyvector) -> Cochain {
    let n = u.nvars();
    let comps = u.components();
    let arity = comps.keys().next_back().copied().unwrap_or(0);
    if comps.len() > 1 {
        panic!("hkr expects a homogeneous polyvector");
    }
    let mut out = Cochain::zero(n, arity);
    let mut fact = BigInt::one();
    for i in 2..=arity {
        fact *= i;
    }
    let norm = Rat::new(BigInt::one(), fact);
    let perms = permutations(arity);
    for (idx, p) in u.terms() {
        for (odd, perm) in &perms {
            let slots: Vec<MultiIndex> = perm
                .iter()
                .map(|&j| {
                    let mut e = vec![0; n];
                    e[idx[j]] = 1;
                    e
                })
                .collect();
            out.add_term(slots, p.scale(&(&norm * sign(*odd))));
        }
    }
    out
}

/// Inverse of [`hkr`] on its image: reads off the polyvector whose HKR image
/// has the same fully-first-order part. Fails on cochains outside the image.
pub fn hkr_inverse(c: &Cochain) -> Result<Polyvector> {
    let n = c.nvars;
    let mut u = Polyvector::zero(n);
    for (slots, p) in &c.terms {
        let mut idx = Vec::with_capacity(slots.len());
        for s in slots {
            if order(s) != 1 {
                return Err(Error::Inconsistent(format!("{c} is not in the image of hkr")));
            }
            idx.push(s.iter().position(|&e| e == 1).expect("order-one slot"));
        }
        if idx.windows(2).all(|w| w[0] < w[1]) {
            u.add_scaled(&Polyvector::basis(p.clone(), &idx), &Rat::one());
        }
    }
    let mut fact = BigInt::one();
    for i in 2..=c.arity {
        fact *= i;
    }
    let u = u.scale(&Rat::from_integer(fact));
    let u = if u.is_zero() { Polyvector::zero(n) } else { u };
    if hkr_or_zero(&u, n, c.arity) != *c {
        return Err(Error::Inconsistent(format!("{c} is not in the image of hkr")));
    }
    Ok(u)
}

fn hkr_or_zero(u: &Polyvector, n: usize, arity: usize) -> Cochain {
    if u.is_zero() {
        Cochain::zero(n, arity)
    } else {
        hkr(u)
    }
}

fn fmt_slot(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Cochain {
    /// `[coef ; s1 | s2] + [coef ; ...]`, multi-indices as comma lists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (slots, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let s: Vec<String> = slots.iter().map(|s| fmt_slot(s)).collect();
            if s.is_empty() {
                write!(f, "[{p} ;]")?;
            } else {
                write!(f, "[{p} ; {}]", s.join(" | "))?;
            }
        }
        Ok(())
    }
}

/// Parses the text produced by `Display`; `arity` is needed for the zero cochain.
pub fn parse_cochain(s: &str, nvars: usize, arity: usize) -> Result<Cochain> {
    let mut out = Cochain::zero(nvars, arity);
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.find('[').ok_or_else(|| Error::Parse(format!("expected `[` in `{rest}`")))?;
        if !rest[..open].trim().is_empty() && rest[..open].trim() != "+" {
            return Err(Error::Parse(format!("unexpected `{}`", &rest[..open])));
        }
        let close = rest.find(']').ok_or_else(|| Error::Parse("unterminated `[`".into()))?;
        let body = &rest[open + 1..close];
        let (coef, slots) =
            body.split_once(';').ok_or_else(|| Error::Parse(format!("missing `;` in `{body}`")))?;
        let coef = parse_poly(coef, nvars)?;
        let slots: Vec<MultiIndex> = if slots.trim().is_empty() {
            Vec::new()
        } else {
            slots
                .split('|')
                .map(|m| {
                    m.split(',')
                        .map(|e| e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad slot `{m}`"))))
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<_>>()?
        };
        if slots.len() != arity {
            return Err(Error::Arity { expected: arity, got: slots.len() });
        }
        out.add_scaled(&Cochain::term(coef, slots)?, &Rat::one());
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}

/// Every tuple of `k` nonzero multi-indices in `n` variables with total order `s`.
pub fn slot_tuples(n: usize, k: usize, s: u32) -> Vec<Vec<MultiIndex>> {
    if k == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=s {
        for m in Mono::all_of_degree(n, first) {
            for mut rest in slot_tuples(n, k - 1, s - first) {
                rest.insert(0, m.0.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// Monomial basis of the arity-`k` cochains with coefficient degree `c` and
/// total slot order `s`; the coboundary preserves both numbers.
pub fn piece_basis(n: usize, k: usize, c: u32, s: u32) -> Vec<Cochain> {
    let monos = Mono::all_of_degree(n, c);
    let mut out = Vec::new();
    for slots in slot_tuples(n, k, s) {
        for m in &monos {
            let mut ch = Cochain::zero(n, k);
            ch.add_term(slots.clone(), Poly::monomial(m.clone(), Rat::one()));
            out.push(ch);
        }
    }
    out
}

/// Coordinates of a cochain in a monomial basis given by its index.
pub struct PieceIndex {
    index: BTreeMap<(Vec<MultiIndex>, Mono), usize>,
}

impl PieceIndex {
    pub fn new(basis: &[Cochain]) -> Self {
        let mut index = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            let (slots, p) = b.terms.iter().next().expect("basis element is nonzero");
            let (m, _) = p.terms().next().expect("monomial coefficient");
            index.insert((slots.clone(), m.clone()), i);
        }
        PieceIndex { index }
    }

    pub fn coords(&self, c: &Cochain) -> SparseVec {
        let mut v = SparseVec::new();
        for (slots, p) in &c.terms {
            for (m, x) in p.terms() {
                let i = self.index[&(slots.clone(), m.clone())];
                v.insert(i, x.clone());
            }
        }
        v
    }
}

fn d_matrix(n: usize, k: usize, c: u32, s: u32) -> SparseMat {
    let src = piece_basis(n, k, c, s);
    let tgt = piece_basis(n, k + 1, c, s);
    let idx = PieceIndex::new(&tgt);
    let cols: Vec<SparseVec> = src.iter().map(|b| idx.coords(&b.hochschild_d())).collect();
    SparseMat::from_columns(tgt.len(), &cols)
}

/// Exact dimensions of one weight-graded Hochschild cohomology group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct HhDims {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub hh: usize,
    /// Dimension of the weight-`w` part of the degree-`k` polyvectors.
    pub polyvectors: usize,
    /// Rank of HKR images modulo coboundaries.
    pub hkr_rank: usize,
    /// Whether the budget reaches the coefficient degree where classes live.
    pub complete: bool,
}

/// Weight-graded `HH^k` of `Q[x1..xn]`, over coefficient degrees `<= budget`.
pub fn hh_dims(n: usize, k: usize, w: i64, budget: u32) -> HhDims {
    let mut cocycles = 0;
    let mut coboundaries = 0;
    let mut hkr_rank = 0;
    for c in 0..=budget {
        let s = c as i64 - w;
        if s < 0 {
            continue;
        }
        let s = s as u32;
        let dim_k = piece_basis(n, k, c, s).len();
        let d_out = d_matrix(n, k, c, s);
        let rank_out = exactlin::rank(&d_out);
        cocycles += dim_k - rank_out;
        let d_in = if k > 0 { Some(d_matrix(n, k - 1, c, s)) } else { None };
        let b_rank = d_in.as_ref().map_or(0, exactlin::rank);
        coboundaries += b_rank;
        if s == k as u32 {
            let basis = piece_basis(n, k, c, s);
            let idx = PieceIndex::new(&basis);
            let mut vecs: Vec<SparseVec> = d_in.map(|m| m.transpose().row_vectors()).unwrap_or_default();
            let before = Subspace::span(dim_k, vecs.iter().cloned()).dim();
            for u in polyvector_basis(n, k, c) {
                vecs.push(idx.coords(&hkr(&u)));
            }
            hkr_rank += Subspace::span(dim_k, vecs.iter().cloned()).dim() - before;
        }
    }
    let polyvectors = if w + k as i64 >= 0 {
        binom(n as u32, k as u32).to_string().parse::<usize>().expect("small binomial")
            * Mono::all_of_degree(n, (w + k as i64) as u32).len()
    } else {
        0
    };
    HhDims {
        cocycles,
        coboundaries,
        hh: cocycles - coboundaries,
        polyvectors,
        hkr_rank,
        complete: (budget as i64) >= w + k as i64,
    }
}

/// Monomial basis of degree-`k` polyvectors with coefficient degree `c`.
pub fn polyvector_basis(n: usize, k: usize, c: u32) -> Vec<Polyvector> {
    let mut out = Vec::new();
    for idx in increasing_tuples(n, k) {
        for m in Mono::all_of_degree(n, c) {
            out.push(Polyvector::basis(Poly::monomial(m, Rat::one()), &idx));
        }
    }
    out
}
