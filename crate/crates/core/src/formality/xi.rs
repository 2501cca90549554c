//! The sub-coalgebra `Xi(A)`: graded-symmetric monomials in normal Lie words
//! over `A + Der(A)`, each word containing at most one derivation letter.
//!
//! A factor `w` has parity `p(w) + 1`. The codifferential is the Harrison
//! differential inside each factor plus the Chevalley-Eilenberg term that
//! replaces a pair of factors `wi wj` by `(-1)^{p(wi)+1} [wi, wj]`.

use num_traits::One;

use crate::cooperadic::bialgebra::{Bialgebra, LieElem};
use crate::cooperadic::sym::{sort_factors, sym_coproduct};
use crate::cooperadic::{letter::fmt_word, word_odd, Letter, LetterAlgebra, VAlgebra, Word};
use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::lincomb::{sign, LinComb};
use crate::polyalg::Mono;

pub type XiMono = Vec<Word<Letter>>;
pub type XiElem = LinComb<XiMono>;
pub type XiPair = LinComb<(XiMono, XiMono)>;

/// Truncation of the monomial basis; `max_coef_deg` bounds the total
/// polynomial degree of all letters of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct XiBudget {
    pub max_factors: usize,
    pub max_word_len: usize,
    pub max_coef_deg: u32,
}

pub fn factor_odd(w: &[Letter]) -> bool {
    !word_odd(w)
}

pub fn xi_odd(m: &[Word<Letter>]) -> bool {
    m.iter().filter(|w| factor_odd(w)).count() % 2 == 1
}

pub fn in_xi(m: &[Word<Letter>]) -> bool {
    m.iter().all(|w| w.iter().filter(|a| a.is_der()).count() <= 1)
}

pub fn letter_count(m: &[Word<Letter>]) -> usize {
    m.iter().map(Vec::len).sum()
}

/// Filtration degree: number of letters minus one.
pub fn filtration(m: &[Word<Letter>]) -> i64 {
    letter_count(m) as i64 - 1
}

pub fn coef_degree(m: &[Word<Letter>]) -> u32 {
    m.iter().flatten().map(Letter::coef_degree).sum()
}

pub fn fmt_xi(m: &[Word<Letter>]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|w| fmt_word(w)).collect::<Vec<_>>().join(".")
}

/// Letters of coefficient degree at most `d`, unit function excluded.
pub fn letters(n: usize, d: u32) -> Vec<Letter> {
    let mut out = Vec::new();
    for m in Mono::all_up_to_degree(n, d) {
        if !m.is_one() {
            out.push(Letter::Func(m.clone()));
        }
    }
    for i in 0..n {
        for m in Mono::all_up_to_degree(n, d) {
            out.push(Letter::Der(i, m));
        }
    }
    out.sort();
    out
}

/// Sorts factors with the Koszul sign; `None` if an odd factor repeats.
pub fn canonical(m: XiMono) -> Option<(Rat, XiMono)> {
    sort_factors(m, |w| factor_odd(w))
}

/// Expands the graded-symmetric product of Lie elements.
pub fn product(parts: &[LieElem]) -> XiElem {
    let mut acc: Vec<(Rat, XiMono)> = vec![(Rat::one(), Vec::new())];
    for p in parts {
        let mut next = Vec::new();
        for (c, m) in &acc {
            for (w, cw) in p.iter() {
                let mut m2 = m.clone();
                m2.push(w.clone());
                next.push((c * cw, m2));
            }
        }
        acc = next;
    }
    let mut out = LinComb::new();
    for (c, m) in acc {
        if let Some((s, sorted)) = canonical(m) {
            out.add(sorted, c * s);
        }
    }
    out
}

/// Truncated monomial basis of `Xi(A)`, sorted.
pub fn xi_basis(n: usize, budget: XiBudget) -> Vec<XiMono> {
    let lie = crate::cooperadic::LieCalc::<Letter>::new();
    let ls = letters(n, budget.max_coef_deg);
    let mut words: Vec<Word<Letter>> = Vec::new();
    let mut multisets: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..budget.max_word_len {
        let mut next = Vec::new();
        for ms in &multisets {
            let start = ms.last().map_or(0, |l| ls.iter().position(|x| x == l).expect("letter"));
            for l in &ls[start..] {
                let mut m2 = ms.clone();
                m2.push(l.clone());
                let deg: u32 = m2.iter().map(Letter::coef_degree).sum();
                if deg <= budget.max_coef_deg && m2.iter().filter(|a| a.is_der()).count() <= 1 {
                    words.extend(lie.normal_words(&m2));
                    next.push(m2);
                }
            }
        }
        multisets = next;
    }
    words.sort();
    let mut out = Vec::new();
    fn rec(
        words: &[Word<Letter>],
        start: usize,
        cur: &mut XiMono,
        deg: u32,
        budget: &XiBudget,
        out: &mut Vec<XiMono>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == budget.max_factors {
            return;
        }
        for i in start..words.len() {
            let w = &words[i];
            let d = deg + w.iter().map(Letter::coef_degree).sum::<u32>();
            if d > budget.max_coef_deg {
                continue;
            }
            if cur.last() == Some(w) && factor_odd(w) {
                continue;
            }
            cur.push(w.clone());
            rec(words, i, cur, d, budget, out);
            cur.pop();
        }
    }
    rec(&words, 0, &mut Vec::new(), 0, &budget, &mut out);
    out.sort();
    out
}

/// `Xi(A)` with its codifferential, coproduct and cobracket, built over a
/// letter algebra (polyvector side by default).
pub struct Xi<A> {
    bi: Bialgebra<A>,
}

impl Xi<VAlgebra> {
    pub fn new(nvars: usize) -> Self {
        Xi::with_algebra(VAlgebra { nvars })
    }
}

impl<A: LetterAlgebra> Xi<A> {
    pub fn with_algebra(alg: A) -> Self {
        Xi { bi: Bialgebra::new(alg) }
    }

    pub fn bialgebra(&self) -> &Bialgebra<A> {
        &self.bi
    }

    pub fn d(&self, x: &XiElem) -> Result<XiElem> {
        let mut out = LinComb::new();
        for (m, c) in x.iter() {
            out.add_scaled(&self.d_mono(m)?, c);
        }
        Ok(out)
    }

    pub fn d_mono(&self, m: &XiMono) -> Result<XiElem> {
        if !in_xi(m) {
            return Err(Error::OutsideXi(fmt_xi(m)));
        }
        let mut out = LinComb::new();
        let single = |w: &Word<Letter>| LinComb::basis(w.clone());
        let mut before_odd = false;
        for (i, w) in m.iter().enumerate() {
            let dw = self.bi.harrison_d(&single(w))?;
            if !dw.is_zero() {
                let parts: Vec<LieElem> =
                    m.iter().enumerate().map(|(j, u)| if j == i { dw.clone() } else { single(u) }).collect();
                out.add_scaled(&product(&parts), &sign(before_odd));
            }
            before_odd ^= factor_odd(w);
        }
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let qi = factor_odd(&m[i]);
                let qj = factor_odd(&m[j]);
                let before_i = m[..i].iter().filter(|w| factor_odd(w)).count() % 2 == 1;
                let between = m[i + 1..j].iter().filter(|w| factor_odd(w)).count() % 2 == 1;
                let koszul = (qi && before_i) ^ (qj && (before_i ^ between));
                let kappa = !word_odd(&m[i]);
                let br = self.bi.bracket_normal(&m[i], &m[j])?;
                if br.is_zero() {
                    continue;
                }
                let mut parts = vec![br];
                parts.extend(m.iter().enumerate().filter(|(l, _)| *l != i && *l != j).map(|(_, u)| single(u)));
                out.add_scaled(&product(&parts), &sign(koszul ^ kappa));
            }
        }
        if let Some(bad) = out.keys().find(|k| !in_xi(k)) {
            return Err(Error::OutsideXi(format!("differential left Xi(A): {}", fmt_xi(bad))));
        }
        Ok(out)
    }

    /// Reduced cocommutative coproduct (factor splits).
    pub fn coproduct(&self, m: &XiMono) -> XiPair {
        sym_coproduct(m, |w| factor_odd(w))
    }

    /// Cobracket: the word cobracket `y (x) z` of one factor, shifted by
    /// `(-1)^{p(y)}`, with the other factors distributed over both sides.
    pub fn cobracket(&self, m: &XiMono) -> XiPair {
        let mut out = LinComb::new();
        let mut before_odd = false;
        for (i, w) in m.iter().enumerate() {
            let move_sign = factor_odd(w) && before_odd;
            before_odd ^= factor_odd(w);
            let rest: XiMono = m.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, u)| u.clone()).collect();
            let mut splits: Vec<((XiMono, XiMono), Rat)> = vec![((Vec::new(), rest.clone()), Rat::one())];
            splits.extend(sym_coproduct(&rest, |u| factor_odd(u)));
            if !rest.is_empty() {
                splits.push(((rest.clone(), Vec::new()), Rat::one()));
            }
            for ((y, z), c) in self.bi.cobracket(&LinComb::basis(w.clone())).iter() {
                let shift = word_odd(y);
                for ((r1, r2), cr) in &splits {
                    let cross = factor_odd(z) && xi_odd(r1);
                    let mut left = vec![y.clone()];
                    left.extend(r1.iter().cloned());
                    let mut right = vec![z.clone()];
                    right.extend(r2.iter().cloned());
                    let (Some((sl, l)), Some((sr, r))) = (canonical(left), canonical(right)) else {
                        continue;
                    };
                    let s = sign(move_sign ^ shift ^ cross);
                    out.add((l, r), c * cr * sl * sr * s);
                }
            }
        }
        out
    }
}
