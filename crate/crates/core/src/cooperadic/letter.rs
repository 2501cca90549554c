//! Letters drawn from `A` and `Der(A)`, and the operations on them that the
//! bar differentials need.
//!
//! In words a function letter is odd and a derivation letter is even: word
//! parity is the polyvector degree shifted by one.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::lincomb::LinComb;
use crate::polyalg::{parse_polyvector, Mono, Poly, Polyvector};

use super::WordLetter;

/// A basis element of `A + Der(A)`: a monomial function or `x^m d_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Func(Mono),
    Der(usize, Mono),
}

impl Letter {
    pub fn func(exps: Vec<u32>) -> Self {
        Letter::Func(Mono(exps))
    }

    pub fn der(i: usize, exps: Vec<u32>) -> Self {
        Letter::Der(i, Mono(exps))
    }

    pub fn nvars(&self) -> usize {
        match self {
            Letter::Func(m) | Letter::Der(_, m) => m.nvars(),
        }
    }

    pub fn mono(&self) -> &Mono {
        match self {
            Letter::Func(m) | Letter::Der(_, m) => m,
        }
    }

    pub fn is_der(&self) -> bool {
        matches!(self, Letter::Der(..))
    }

    /// Polyvector degree: 0 for functions, 1 for derivations.
    pub fn internal_degree(&self) -> usize {
        usize::from(self.is_der())
    }

    pub fn coef_degree(&self) -> u32 {
        self.mono().degree()
    }

    pub fn to_polyvector(&self) -> Polyvector {
        match self {
            Letter::Func(m) => Polyvector::from_poly(Poly::monomial(m.clone(), Rat::one())),
            Letter::Der(i, m) => Polyvector::basis(Poly::monomial(m.clone(), Rat::one()), &[*i]),
        }
    }

    /// Expands a polyvector of degree at most one in letters.
    pub fn from_polyvector(u: &Polyvector) -> Result<LinComb<Letter>> {
        let mut out = LinComb::new();
        for (idx, p) in u.terms() {
            for (m, c) in p.terms() {
                let l = match idx.as_slice() {
                    [] => Letter::Func(m.clone()),
                    [i] => Letter::Der(*i, m.clone()),
                    _ => return Err(Error::OutsideXi(format!("{u} has degree above one"))),
                };
                out.add(l, c.clone());
            }
        }
        Ok(out)
    }

    /// Parses one letter such as `x1^2`, `1` or `x2*d1`.
    pub fn parse(s: &str, nvars: usize) -> Result<Letter> {
        let u = parse_polyvector(s, nvars)?;
        let comb = Letter::from_polyvector(&u)?;
        match comb.iter().collect::<Vec<_>>().as_slice() {
            [(l, c)] if c.is_one() => Ok((*l).clone()),
            _ => Err(Error::Parse(format!("`{s}` is not a single letter"))),
        }
    }
}

impl WordLetter for Letter {
    fn odd(&self) -> bool {
        !self.is_der()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Func(m) => write!(f, "{m}"),
            Letter::Der(i, m) if m.is_one() => write!(f, "d{}", i + 1),
            Letter::Der(i, m) => write!(f, "{m}*d{}", i + 1),
        }
    }
}

pub fn fmt_word(w: &[Letter]) -> String {
    let parts: Vec<String> = w.iter().map(Letter::to_string).collect();
    format!("<{}>", parts.join(","))
}

/// Commutative product (module action on derivations) and bracket of letters.
pub trait LetterAlgebra: Send + Sync {
    fn nvars(&self) -> usize;
    /// Fails on two derivations, whose product leaves `A + Der(A)`.
    fn product(&self, a: &Letter, b: &Letter) -> Result<LinComb<Letter>>;
    fn bracket(&self, a: &Letter, b: &Letter) -> LinComb<Letter>;
}

/// Letters as polyvector fields: wedge product and Schouten bracket.
#[derive(Debug, Clone, Copy)]
pub struct VAlgebra {
    pub nvars: usize,
}

impl LetterAlgebra for VAlgebra {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn product(&self, a: &Letter, b: &Letter) -> Result<LinComb<Letter>> {
        if a.is_der() && b.is_der() {
            return Err(Error::OutsideXi(format!("product of derivation letters {a} and {b}")));
        }
        Letter::from_polyvector(&a.to_polyvector().wedge(&b.to_polyvector()))
    }

    fn bracket(&self, a: &Letter, b: &Letter) -> LinComb<Letter> {
        Letter::from_polyvector(&a.to_polyvector().schouten(&b.to_polyvector()))
            .expect("Schouten bracket of letters has degree at most one")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn letter_text_and_order() {
        let f = Letter::parse("x1^2", 2).unwrap();
        let v = Letter::parse("x2*d1", 2).unwrap();
        assert_eq!(f.to_string(), "x1^2");
        assert_eq!(v.to_string(), "x2*d1");
        assert!(f < v);
        assert!(Letter::parse("2*x1", 2).is_err());
        assert!(f.odd() && !v.odd());
    }

    #[test]
    fn v_algebra_operations() {
        let alg = VAlgebra { nvars: 1 };
        let x = Letter::func(vec![1]);
        let d = Letter::der(0, vec![0]);
        assert_eq!(alg.bracket(&d, &x), LinComb::basis(Letter::func(vec![0])));
        assert_eq!(alg.bracket(&x, &d), LinComb::single(Letter::func(vec![0]), rat(-1)));
        assert_eq!(alg.product(&x, &d).unwrap(), LinComb::basis(Letter::der(0, vec![1])));
        assert!(alg.product(&d, &d).is_err());
    }
}
