//! Free Gerstenhaber algebras: expressions are sums of graded-symmetric
//! products of bracket trees over generators.
//!
//! For comparisons, expressions are mapped injectively into `Sym(T(G))`: a
//! tree becomes its iterated commutator in the tensor algebra, with generator
//! parity shifted by one, and products become multisets of words.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::cooperadic::sym::sort_factors;
use crate::exactlin::{axpy, Rat, SparseVec};
use crate::lincomb::{sign, LinComb};
use crate::polyalg::Polyvector;

pub trait Generator: Clone + Ord + Debug {
    /// Parity of the generator in the Gerstenhaber algebra.
    fn odd(&self) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree<G> {
    Leaf(G),
    Br(Box<Tree<G>>, Box<Tree<G>>),
}

impl<G: Generator> Tree<G> {
    pub fn odd(&self) -> bool {
        match self {
            Tree::Leaf(g) => g.odd(),
            Tree::Br(a, b) => !(a.odd() ^ b.odd()),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Br(a, b) => a.leaves() + b.leaves(),
        }
    }
}

pub type Expr<G> = LinComb<Vec<Tree<G>>>;

fn tree_odd<G: Generator>(t: &Tree<G>) -> bool {
    t.odd()
}

fn odd_sum<G: Generator>(ts: &[Tree<G>]) -> bool {
    ts.iter().filter(|t| t.odd()).count() % 2 == 1
}

pub fn leaf<G: Generator>(g: G) -> Expr<G> {
    LinComb::basis(vec![Tree::Leaf(g)])
}

fn push_sorted<G: Generator>(out: &mut Expr<G>, factors: Vec<Tree<G>>, c: Rat) {
    if let Some((s, sorted)) = sort_factors(factors, tree_odd) {
        out.add(sorted, c * s);
    }
}

pub fn mul<G: Generator>(a: &Expr<G>, b: &Expr<G>) -> Expr<G> {
    let mut out = LinComb::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let mut f = x.clone();
            f.extend(y.iter().cloned());
            push_sorted(&mut out, f, cx * cy);
        }
    }
    out
}

/// Bracket of degree one extended by the Leibniz rule in both arguments.
pub fn bracket<G: Generator>(a: &Expr<G>, b: &Expr<G>) -> Expr<G> {
    let mut out = LinComb::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let y_shift = !odd_sum(y);
            for i in 0..x.len() {
                let s_outer = y_shift && odd_sum(&x[i + 1..]);
                for j in 0..y.len() {
                    let s_inner = !x[i].odd() && odd_sum(&y[..j]);
                    let mut f: Vec<Tree<G>> = x[..i].to_vec();
                    f.extend(y[..j].iter().cloned());
                    f.push(Tree::Br(Box::new(x[i].clone()), Box::new(y[j].clone())));
                    f.extend(y[j + 1..].iter().cloned());
                    f.extend(x[i + 1..].iter().cloned());
                    push_sorted(&mut out, f, cx * cy * sign(s_outer ^ s_inner));
                }
            }
        }
    }
    out
}

/// Extends an odd map on generators to a derivation of products and brackets.
pub fn derivation<G: Generator>(e: &Expr<G>, dgen: &mut impl FnMut(&G) -> Expr<G>) -> Expr<G> {
    let mut out = LinComb::new();
    for (x, c) in e.iter() {
        for i in 0..x.len() {
            let dt = derive_tree(&x[i], dgen);
            let left: Expr<G> = LinComb::basis(x[..i].to_vec());
            let right: Expr<G> = LinComb::basis(x[i + 1..].to_vec());
            let term = mul(&mul(&left, &dt), &right);
            out.add_scaled(&term, &(c * sign(odd_sum(&x[..i]))));
        }
    }
    out
}

fn derive_tree<G: Generator>(t: &Tree<G>, dgen: &mut impl FnMut(&G) -> Expr<G>) -> Expr<G> {
    match t {
        Tree::Leaf(g) => dgen(g),
        Tree::Br(a, b) => {
            let ea = LinComb::basis(vec![(**a).clone()]);
            let eb = LinComb::basis(vec![(**b).clone()]);
            let mut out = bracket(&derive_tree(a, dgen), &eb);
            out.add_scaled(&bracket(&ea, &derive_tree(b, dgen)), &sign(!a.odd()));
            out
        }
    }
}

fn tree_words<G: Generator>(t: &Tree<G>) -> LinComb<Vec<G>> {
    match t {
        Tree::Leaf(g) => LinComb::basis(vec![g.clone()]),
        Tree::Br(a, b) => {
            let (wa, wb) = (tree_words(a), tree_words(b));
            let s = sign(!a.odd() && !b.odd());
            let mut out = LinComb::new();
            for (u, cu) in wa.iter() {
                for (v, cv) in wb.iter() {
                    let mut uv = u.clone();
                    uv.extend(v.iter().cloned());
                    out.add(uv, cu * cv);
                    let mut vu = v.clone();
                    vu.extend(u.iter().cloned());
                    out.add(vu, -(cu * cv) * &s);
                }
            }
            out
        }
    }
}

/// Canonical form in `Sym(T(G))`; equal expressions have equal forms.
pub fn normal_form<G: Generator>(e: &Expr<G>) -> LinComb<Vec<Vec<G>>> {
    let word_odd = |w: &Vec<G>| w.iter().filter(|g| !g.odd()).count() % 2 == 0;
    let mut out = LinComb::new();
    for (x, c) in e.iter() {
        let mut acc: Vec<(Rat, Vec<Vec<G>>)> = vec![(c.clone(), Vec::new())];
        for t in x {
            let ws = tree_words(t);
            let mut next = Vec::new();
            for (cc, m) in &acc {
                for (w, cw) in ws.iter() {
                    let mut m2 = m.clone();
                    m2.push(w.clone());
                    next.push((cc * cw, m2));
                }
            }
            acc = next;
        }
        for (cc, m) in acc {
            if let Some((s, sorted)) = sort_factors(m, word_odd) {
                out.add(sorted, cc * s);
            }
        }
    }
    out
}

pub fn is_zero<G: Generator>(e: &Expr<G>) -> bool {
    normal_form(e).is_zero()
}

/// Gerstenhaber morphism to polyvectors determined by generator images.
pub fn to_polyvector<G: Generator>(e: &Expr<G>, nvars: usize, img: &impl Fn(&G) -> Polyvector) -> Polyvector {
    fn tree<G: Generator>(t: &Tree<G>, img: &impl Fn(&G) -> Polyvector) -> Polyvector {
        match t {
            Tree::Leaf(g) => img(g),
            Tree::Br(a, b) => tree(a, img).schouten(&tree(b, img)),
        }
    }
    let mut out = Polyvector::zero(nvars);
    for (x, c) in e.iter() {
        let mut p = Polyvector::from_poly(crate::polyalg::Poly::one(nvars));
        for t in x {
            p = p.wedge(&tree(t, img));
        }
        out.add_scaled(&p, c);
    }
    out
}

fn trees_up_to<G: Generator>(gens: &[G], max_leaves: usize) -> Vec<Vec<Tree<G>>> {
    let mut by_size: Vec<Vec<Tree<G>>> = vec![Vec::new(), gens.iter().cloned().map(Tree::Leaf).collect()];
    for size in 2..=max_leaves {
        let mut level = Vec::new();
        for left in 1..=size / 2 {
            for a in &by_size[left] {
                for b in &by_size[size - left] {
                    if left == size - left && a > b {
                        continue;
                    }
                    level.push(Tree::Br(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
        by_size.push(level);
    }
    by_size
}

/// Basis of the free Gerstenhaber algebra on `gens` in elements with at most
/// `max_leaves` leaves: products of bracket trees, kept when independent of
/// the earlier ones.
pub fn build_basis<G: Generator>(gens: &[G], max_leaves: usize) -> Vec<Expr<G>> {
    let by_size = trees_up_to(gens, max_leaves);
    let trees: Vec<&Tree<G>> = by_size.iter().flatten().collect();
    let mut candidates: Vec<Vec<Tree<G>>> = Vec::new();
    fn rec<G: Generator>(
        trees: &[&Tree<G>],
        start: usize,
        cur: &mut Vec<Tree<G>>,
        leaves: usize,
        max: usize,
        out: &mut Vec<Vec<Tree<G>>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..trees.len() {
            let l = trees[i].leaves();
            if leaves + l > max {
                continue;
            }
            cur.push(trees[i].clone());
            rec(trees, i, cur, leaves + l, max, out);
            cur.pop();
        }
    }
    rec(&trees, 0, &mut Vec::new(), 0, max_leaves, &mut candidates);
    candidates.sort_by_key(|c| c.iter().map(Tree::leaves).sum::<usize>());
    let mut index: BTreeMap<Vec<Vec<G>>, usize> = BTreeMap::new();
    let mut echelon: Vec<SparseVec> = Vec::new();
    let mut out = Vec::new();
    for c in candidates {
        let e: Expr<G> = LinComb::basis(c);
        let nf = normal_form(&e);
        let mut v = SparseVec::new();
        for (k, x) in nf.iter() {
            let n = index.len();
            let col = *index.entry(k.clone()).or_insert(n);
            v.insert(col, x.clone());
        }
        if reduce_into(&mut echelon, v) {
            out.push(e);
        }
    }
    out
}

/// Reduces `v` against an echelon list keyed by leading column; pushes it and
/// returns true when it is independent.
fn reduce_into(echelon: &mut Vec<SparseVec>, mut v: SparseVec) -> bool {
    loop {
        let Some((&lead, _)) = v.iter().next() else {
            return false;
        };
        match echelon.iter().find(|r| r.keys().next() == Some(&lead)) {
            Some(r) => {
                let c = -v[&lead].clone() / r[&lead].clone();
                axpy(&mut v, &c, r);
            }
            None => {
                echelon.push(v);
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    struct Sym(u32, bool);

    impl Generator for Sym {
        fn odd(&self) -> bool {
            self.1
        }
    }

    #[test]
    fn odd_generator_self_bracket_vanishes() {
        let g = leaf(Sym(0, false));
        assert!(!is_zero(&bracket(&g, &g)));
        assert!(!is_zero(&mul(&g, &g)));
        let h = leaf(Sym(1, true));
        assert!(is_zero(&bracket(&h, &h)));
        assert!(is_zero(&mul(&h, &h)));
    }

    #[test]
    fn basis_enumeration() {
        let even = Sym(0, false);
        let odd = Sym(1, true);
        assert_eq!(build_basis(&[even.clone()], 1).len(), 1);
        assert_eq!(build_basis(&[even.clone()], 2).len(), 3);
        assert_eq!(build_basis(&[odd.clone()], 2).len(), 1);
        assert_eq!(build_basis(&[even.clone(), odd.clone()], 2).len(), 2 + 2 + 2);
        let three = build_basis(&[even, odd], 3);
        for (i, a) in three.iter().enumerate() {
            for b in &three[..i] {
                assert_ne!(normal_form(a), normal_form(b));
            }
        }
    }

    #[test]
    fn antisymmetry_and_leibniz() {
        let gens: Vec<Expr<Sym>> = (0..4).map(|i| leaf(Sym(i, i % 2 == 1))).collect();
        for a in &gens {
            for b in &gens {
                let ab = bracket(a, b);
                let ba = bracket(b, a);
                let (pa, pb) = (a.keys().next().unwrap()[0].odd(), b.keys().next().unwrap()[0].odd());
                let s = sign(!pa && !pb);
                assert!(is_zero(&ab.plus(&ba.scale(&s))));
                for c in &gens {
                    let lhs = bracket(a, &mul(b, c));
                    let mut rhs = mul(&bracket(a, b), c);
                    rhs.add_scaled(&mul(b, &bracket(a, c)), &sign(!pa && pb));
                    assert!(is_zero(&lhs.minus(&rhs)));
                    let jac = bracket(a, &bracket(b, c));
                    let mut r = bracket(&bracket(a, b), c);
                    r.add_scaled(&bracket(b, &bracket(a, c)), &sign(!pa && !pb));
                    assert!(is_zero(&jac.minus(&r)));
                }
            }
        }
    }
}
