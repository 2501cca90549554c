//! The Lie bialgebra structure on the cofree Lie coalgebra over letters, and
//! the Harrison-type bar differential.
//!
//! The bracket is fixed on single letters by the letter bracket and extended
//! to longer words by the cocycle condition
//! `delta[X,Y] = X.delta(Y) - (-1)^{|X||Y|} Y.delta(X)`, solved degree by degree
//! with [`LieCalc::reconstruct`].

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::lincomb::{sign, LinComb};

use super::{word_odd, Letter, LetterAlgebra, LieCalc, Pair, Word};

pub type LieElem = LinComb<Word<Letter>>;

pub struct Bialgebra<A> {
    alg: A,
    lie: LieCalc<Letter>,
    memo: Mutex<HashMap<(Word<Letter>, Word<Letter>), LieElem>>,
}

impl<A: LetterAlgebra> Bialgebra<A> {
    pub fn new(alg: A) -> Self {
        Bialgebra { alg, lie: LieCalc::new(), memo: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &A {
        &self.alg
    }

    pub fn lie(&self) -> &LieCalc<Letter> {
        &self.lie
    }

    pub fn normalize(&self, x: &LieElem) -> LieElem {
        self.lie.normalize(x)
    }

    pub fn cobracket(&self, x: &LieElem) -> LinComb<Pair<Letter>> {
        self.lie.cobracket(x)
    }

    pub fn bracket(&self, x: &LieElem, y: &LieElem) -> Result<LieElem> {
        let x = self.lie.normalize(x);
        let y = self.lie.normalize(y);
        let mut out = LinComb::new();
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                out.add_scaled(&self.bracket_normal(u, v)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Bracket of two normal words.
    pub fn bracket_normal(&self, x: &Word<Letter>, y: &Word<Letter>) -> Result<LieElem> {
        let key = (x.clone(), y.clone());
        if let Some(r) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(r.clone());
        }
        let r = if x.len() == 1 && y.len() == 1 {
            self.alg.bracket(&x[0], &y[0]).iter().map(|(l, c)| (vec![l.clone()], c.clone())).collect()
        } else {
            let xe = LinComb::basis(x.clone());
            let ye = LinComb::basis(y.clone());
            let mut target = self.act(x, &self.lie.cobracket(&ye))?;
            let s = sign(word_odd(x) && word_odd(y));
            target.add_scaled(&self.act(y, &self.lie.cobracket(&xe))?, &-s);
            self.lie.reconstruct(&LinComb::new(), &target)?
        };
        self.memo.lock().expect("memo lock").insert(key, r.clone());
        Ok(r)
    }

    /// Adjoint action of a word on a tensor square.
    fn act(&self, x: &Word<Letter>, t: &LinComb<Pair<Letter>>) -> Result<LinComb<Pair<Letter>>> {
        let mut out = LinComb::new();
        let xo = word_odd(x);
        for ((a, b), c) in t.iter() {
            for (xa, ca) in self.bracket_normal(x, a)?.iter() {
                out.add((xa.clone(), b.clone()), c * ca);
            }
            let s = sign(xo && word_odd(a));
            for (xb, cb) in self.bracket_normal(x, b)?.iter() {
                out.add((a.clone(), xb.clone()), c * cb * &s);
            }
        }
        Ok(out)
    }

    /// Bar differential merging adjacent letters; words may contain at most
    /// one derivation letter. Merging `a_i a_{i+1}` carries the sign
    /// `(-1)^{p(a_1)+...+p(a_{i-1}) + |a_i|}`.
    pub fn harrison_d(&self, x: &LieElem) -> Result<LieElem> {
        let mut raw = LinComb::new();
        for (w, c) in self.lie.normalize(x).iter() {
            if w.iter().filter(|a| a.is_der()).count() > 1 {
                return Err(Error::OutsideXi(format!("{} has two derivation letters", super::letter::fmt_word(w))));
            }
            for i in 0..w.len().saturating_sub(1) {
                let s = sign(word_odd(&w[..i]) ^ w[i].is_der());
                for (m, cm) in self.alg.product(&w[i], &w[i + 1])?.iter() {
                    let mut nw = w[..i].to_vec();
                    nw.push(m.clone());
                    nw.extend_from_slice(&w[i + 2..]);
                    raw.add(nw, c * cm * &s);
                }
            }
        }
        Ok(self.lie.normalize(&raw))
    }
}
