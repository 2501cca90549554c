//! The cobar construction `Omega(Xi(A))` as a free Gerstenhaber algebra on
//! generators `h_c`, and the maps from it to polyvector fields.
//!
//! On a generator the differential is
//! `h_{d c} - 1/2 sum (-1)^{|c'|}{h_c', h_c''} + 1/2 sum h_y h_z`, where `c' (x) c''`
//! runs over the cocommutative coproduct of `c` and `y (x) z` over its
//! cobracket.

use std::cell::RefCell;

use num_traits::One;

use crate::cooperadic::bialgebra::LieElem;
use crate::cooperadic::{Letter, VAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{ratio, Rat};
use crate::lincomb::{sign, LinComb};
use crate::polyalg::{Mono, Poly, Polyvector};

use super::gerst::{self, Expr, Generator, Tree};
use super::xi::{product, xi_odd, Xi, XiElem, XiMono};

/// Generator `h_c` of the cobar construction; its parity is that of `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiGen(pub XiMono);

impl Generator for XiGen {
    fn odd(&self) -> bool {
        xi_odd(&self.0)
    }
}

pub struct Cobar {
    xi: Xi<VAlgebra>,
    nvars: usize,
}

impl Cobar {
    pub fn new(nvars: usize) -> Self {
        Cobar { xi: Xi::new(nvars), nvars }
    }

    pub fn xi(&self) -> &Xi<VAlgebra> {
        &self.xi
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn d_gen(&self, c: &XiMono) -> Result<Expr<XiGen>> {
        let mut out = LinComb::new();
        for (c2, k) in self.xi.d_mono(c)?.iter() {
            out.add(vec![Tree::Leaf(XiGen(c2.clone()))], k.clone());
        }
        let half = ratio(1, 2);
        for ((a, b), k) in self.xi.coproduct(c).iter() {
            let br = gerst::bracket(&gerst::leaf(XiGen(a.clone())), &gerst::leaf(XiGen(b.clone())));
            out.add_scaled(&br, &(k * &half * sign(!xi_odd(a))));
        }
        for ((a, b), k) in self.xi.cobracket(c).iter() {
            let pr = gerst::mul(&gerst::leaf(XiGen(a.clone())), &gerst::leaf(XiGen(b.clone())));
            out.add_scaled(&pr, &(k * &half));
        }
        Ok(out)
    }

    pub fn d(&self, e: &Expr<XiGen>) -> Result<Expr<XiGen>> {
        let err: RefCell<Option<Error>> = RefCell::new(None);
        let out = gerst::derivation(e, &mut |g: &XiGen| match self.d_gen(&g.0) {
            Ok(x) => x,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                LinComb::new()
            }
        });
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// `nu1`: a generator with one factor `w` goes to `k_w`, others to zero;
    /// brackets of the `k_w` are the bialgebra brackets of the words.
    /// Values are graded-symmetric monomials in the `k_w`, with the parity of
    /// Xi factors.
    pub fn nu1(&self, e: &Expr<XiGen>) -> Result<XiElem> {
        fn tree(cb: &Cobar, t: &Tree<XiGen>) -> Result<LieElem> {
            Ok(match t {
                Tree::Leaf(g) => match g.0.as_slice() {
                    [w] => LinComb::basis(w.clone()),
                    _ => LinComb::new(),
                },
                Tree::Br(a, b) => cb.xi.bialgebra().bracket(&tree(cb, a)?, &tree(cb, b)?)?,
            })
        }
        let mut out = LinComb::new();
        for (x, c) in e.iter() {
            let parts = x.iter().map(|t| tree(self, t)).collect::<Result<Vec<_>>>()?;
            out.add_scaled(&product(&parts), c);
        }
        Ok(out)
    }

    /// `nu2`: `k_<a>` goes to the polyvector `a`, longer words to zero,
    /// extended by the wedge product.
    pub fn nu2(&self, x: &XiElem) -> Polyvector {
        let n = self.nvars;
        let mut out = Polyvector::zero(n);
        for (m, c) in x.iter() {
            let mut p = Polyvector::from_poly(Poly::one(n));
            for w in m {
                match w.as_slice() {
                    [a] => p = p.wedge(&a.to_polyvector()),
                    _ => {
                        p = Polyvector::zero(n);
                        break;
                    }
                }
            }
            out.add_scaled(&p, c);
        }
        out
    }

    /// `nu`: generators go to their corestriction, extended as a
    /// Gerstenhaber morphism (wedge and Schouten).
    pub fn nu(&self, e: &Expr<XiGen>) -> Polyvector {
        let n = self.nvars;
        gerst::to_polyvector(e, n, &|g: &XiGen| corestriction(&g.0, n))
    }
}

/// Basis of the free Gerstenhaber algebra on `h_c`, `c` in `gens`, up to
/// `max_leaves` generators per element.
pub fn cobar_build(gens: &[XiMono], max_leaves: usize) -> Vec<Expr<XiGen>> {
    let gens: Vec<XiGen> = gens.iter().cloned().map(XiGen).collect();
    gerst::build_basis(&gens, max_leaves)
}

/// A letter of `V(A)`: a single polyvector monomial `x^mono d_idx`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VLetter {
    pub idx: Vec<usize>,
    pub mono: Mono,
}

impl VLetter {
    pub fn from_letter(l: &Letter) -> Self {
        match l {
            Letter::Func(m) => VLetter { idx: Vec::new(), mono: m.clone() },
            Letter::Der(i, m) => VLetter { idx: vec![*i], mono: m.clone() },
        }
    }

    /// Polyvector degree plus one.
    pub fn odd(&self) -> bool {
        self.idx.len() % 2 == 0
    }

    pub fn to_polyvector(&self) -> Polyvector {
        Polyvector::basis(Poly::monomial(self.mono.clone(), Rat::one()), &self.idx)
    }
}

/// Generator of the cobar construction on the bar construction of `V(A)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VGen(pub Vec<Vec<VLetter>>);

impl Generator for VGen {
    fn odd(&self) -> bool {
        self.0.iter().filter(|w| w.iter().filter(|l| l.odd()).count() % 2 == 0).count() % 2 == 1
    }
}

/// `Omega(iota)`: letters of `A + Der(A)` regarded as polyvectors.
pub fn omega_iota(e: &Expr<XiGen>) -> Expr<VGen> {
    fn tree(t: &Tree<XiGen>) -> Tree<VGen> {
        match t {
            Tree::Leaf(g) => {
                Tree::Leaf(VGen(g.0.iter().map(|w| w.iter().map(VLetter::from_letter).collect()).collect()))
            }
            Tree::Br(a, b) => Tree::Br(Box::new(tree(a)), Box::new(tree(b))),
        }
    }
    e.iter().map(|(x, c)| (x.iter().map(tree).collect(), c.clone())).collect()
}

/// `eta`: each generator goes to its corestriction, extended by wedge and
/// Schouten.
pub fn eta_e2(e: &Expr<VGen>, nvars: usize) -> Polyvector {
    gerst::to_polyvector(e, nvars, &|g: &VGen| match g.0.as_slice() {
        [w] if w.len() == 1 => w[0].to_polyvector(),
        _ => Polyvector::zero(nvars),
    })
}

/// Single-letter part of a monomial; zero for anything longer.
pub fn corestriction(m: &XiMono, nvars: usize) -> Polyvector {
    match m.as_slice() {
        [w] if w.len() == 1 => w[0].to_polyvector(),
        _ => Polyvector::zero(nvars),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn h(m: XiMono) -> Expr<XiGen> {
        gerst::leaf(XiGen(m))
    }

    fn x(e: u32) -> Vec<Letter> {
        vec![Letter::func(vec![e])]
    }

    #[test]
    fn differential_on_generators() {
        let cb = Cobar::new(1);
        assert!(cb.d_gen(&vec![x(1)]).unwrap().is_zero());

        let word = vec![vec![Letter::func(vec![1]), Letter::func(vec![2])]];
        let want = h(vec![x(3)]).minus(&gerst::mul(&h(vec![x(1)]), &h(vec![x(2)])));
        let got = cb.d_gen(&word).unwrap();
        assert_eq!(gerst::normal_form(&got), gerst::normal_form(&want));

        let pair = vec![x(1), x(2)];
        let want = gerst::bracket(&h(vec![x(1)]), &h(vec![x(2)])).scale(&rat(-1));
        assert_eq!(gerst::normal_form(&cb.d_gen(&pair).unwrap()), gerst::normal_form(&want));

        let fv = vec![x(1), vec![Letter::der(0, vec![0])]];
        let d = cb.d_gen(&fv).unwrap();
        assert!(cb.nu(&d).is_zero());
        assert!(gerst::is_zero(&cb.d(&d).unwrap()));
    }

    #[test]
    fn nu_paths_agree() {
        let cb = Cobar::new(2);
        let v = vec![vec![Letter::der(1, vec![1, 0])]];
        let f = vec![vec![Letter::func(vec![0, 2])]];
        let long = vec![vec![Letter::func(vec![1, 0]), Letter::func(vec![0, 1])]];
        assert_eq!(cb.nu(&h(v.clone())), Letter::der(1, vec![1, 0]).to_polyvector());
        assert!(cb.nu(&h(long.clone())).is_zero());
        for e in [
            gerst::bracket(&h(v.clone()), &h(f.clone())),
            gerst::mul(&h(v.clone()), &h(f.clone())),
            gerst::bracket(&h(long.clone()), &h(v.clone())),
        ] {
            let nu = cb.nu(&e);
            assert_eq!(cb.nu2(&cb.nu1(&e).unwrap()), nu);
            assert_eq!(eta_e2(&omega_iota(&e), 2), nu);
        }
        let br = gerst::bracket(&h(v), &h(f));
        assert_eq!(
            cb.nu(&br),
            Letter::der(1, vec![1, 0]).to_polyvector().schouten(&Letter::func(vec![0, 2]).to_polyvector())
        );
    }
}
