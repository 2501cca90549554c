//! Word calculus for cofree coalgebras.
//!
//! Tensor words carry a Koszul parity per letter. The cofree Lie coalgebra is
//! the quotient of the tensor coalgebra by the span of signed shuffles of
//! nonempty words; each letter multiset is handled separately. Normal words of
//! a multiset are the columns left free by an echelon basis of the shuffle
//! span whose columns list non-Lyndon words first, so for even letters they
//! are exactly the Lyndon words. With odd letters some non-Lyndon words
//! survive (for instance `<x,x>`).

pub mod bialgebra;
pub mod letter;
pub mod sym;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, Rat, SparseMat, SparseVec, Subspace};
use crate::lincomb::{sign, LinComb};

pub use letter::{Letter, LetterAlgebra, VAlgebra};

pub trait WordLetter: Clone + Ord + Hash + Debug + Send + Sync {
    /// Koszul parity used by shuffles, cobrackets and normal forms.
    fn odd(&self) -> bool;
}

pub type Word<L> = Vec<L>;
pub type Pair<L> = (Word<L>, Word<L>);

/// Abstract letter with an explicit parity, ordered by `id`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub id: u32,
    pub odd: bool,
}

impl Symbol {
    pub fn even(id: u32) -> Self {
        Symbol { id, odd: false }
    }

    pub fn odd(id: u32) -> Self {
        Symbol { id, odd: true }
    }
}

impl WordLetter for Symbol {
    fn odd(&self) -> bool {
        self.odd
    }
}

pub fn word_odd<L: WordLetter>(w: &[L]) -> bool {
    w.iter().filter(|a| a.odd()).count() % 2 == 1
}

fn multiset<L: WordLetter>(w: &[L]) -> Vec<L> {
    let mut m = w.to_vec();
    m.sort();
    m
}

/// Signed shuffle product of two words.
pub fn shuffle<L: WordLetter>(u: &[L], v: &[L]) -> LinComb<Word<L>> {
    let mut out = LinComb::new();
    shuffle_into(u, v, &mut Vec::new(), Rat::one(), &mut out);
    out
}

fn shuffle_into<L: WordLetter>(u: &[L], v: &[L], prefix: &mut Vec<L>, c: Rat, out: &mut LinComb<Word<L>>) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        out.add(w, c);
        return;
    }
    prefix.push(u[0].clone());
    shuffle_into(&u[1..], v, prefix, c.clone(), out);
    prefix.pop();
    prefix.push(v[0].clone());
    let s = sign(v[0].odd() && word_odd(u));
    shuffle_into(u, &v[1..], prefix, c * s, out);
    prefix.pop();
}

pub fn is_lyndon<L: Ord>(w: &[L]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Distinct rearrangements of a sorted multiset, in lexicographic order.
pub fn arrangements<L: Clone + Ord>(sorted: &[L]) -> Vec<Vec<L>> {
    fn rec<L: Clone + Ord>(rest: &mut Vec<L>, cur: &mut Vec<L>, out: &mut Vec<Vec<L>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut i = 0;
        while i < rest.len() {
            if i > 0 && rest[i] == rest[i - 1] {
                i += 1;
                continue;
            }
            let x = rest.remove(i);
            cur.push(x.clone());
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
            i += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut sorted.to_vec(), &mut Vec::new(), &mut out);
    out
}

struct Block<L> {
    words: Vec<Word<L>>,
    index: HashMap<Word<L>, usize>,
    span: Subspace,
    normal: Vec<Word<L>>,
    cobrackets: OnceLock<Vec<LinComb<Pair<L>>>>,
}

/// Shuffle-quotient calculator with a per-multiset cache of echelon data.
pub struct LieCalc<L> {
    cache: Mutex<HashMap<Vec<L>, Arc<Block<L>>>>,
}

impl<L: WordLetter> Default for LieCalc<L> {
    fn default() -> Self {
        LieCalc { cache: Mutex::new(HashMap::new()) }
    }
}

impl<L: WordLetter> LieCalc<L> {
    pub fn new() -> Self {
        Self::default()
    }

    fn block(&self, sorted: &[L]) -> Arc<Block<L>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(sorted) {
            return b.clone();
        }
        let b = Arc::new(Self::build(sorted));
        self.cache.lock().expect("cache lock").entry(sorted.to_vec()).or_insert(b).clone()
    }

    fn build(sorted: &[L]) -> Block<L> {
        let mut words = arrangements(sorted);
        words.sort_by_key(|w| is_lyndon(w));
        let index: HashMap<Word<L>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut seen = BTreeSet::new();
        let mut gens: Vec<SparseVec> = Vec::new();
        for w in &words {
            for k in 1..w.len() {
                let (u, v) = w.split_at(k);
                let key = if u <= v { (u.to_vec(), v.to_vec()) } else { (v.to_vec(), u.to_vec()) };
                if !seen.insert(key) {
                    continue;
                }
                let sh = shuffle(u, v);
                gens.push(sh.iter().map(|(x, c)| (index[x], c.clone())).collect());
            }
        }
        let span = Subspace::span(words.len(), gens);
        let normal = (0..words.len()).filter(|&i| !span.is_pivot(i)).map(|i| words[i].clone()).collect();
        Block { words, index, span, normal, cobrackets: OnceLock::new() }
    }

    /// Normal words spanning the quotient for one letter multiset.
    pub fn normal_words(&self, letters: &[L]) -> Vec<Word<L>> {
        self.block(&multiset(letters)).normal.clone()
    }

    pub fn quotient_dim(&self, letters: &[L]) -> usize {
        self.block(&multiset(letters)).normal.len()
    }

    /// Class of a combination of tensor words, written in normal words.
    pub fn normalize(&self, x: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        let mut groups: HashMap<Vec<L>, SparseVec> = HashMap::new();
        let mut blocks: HashMap<Vec<L>, Arc<Block<L>>> = HashMap::new();
        for (w, c) in x.iter() {
            let m = multiset(w);
            let b = blocks.entry(m.clone()).or_insert_with(|| self.block(&m));
            let i = b.index[w];
            crate::exactlin::add_entry(groups.entry(m).or_default(), i, c.clone());
        }
        let mut out = LinComb::new();
        for (m, v) in groups {
            let b = &blocks[&m];
            for (i, c) in b.span.reduce(&v) {
                out.add(b.words[i].clone(), c);
            }
        }
        out
    }

    pub fn normalize_word(&self, w: &[L]) -> LinComb<Word<L>> {
        self.normalize(&LinComb::basis(w.to_vec()))
    }

    /// Normalizes both tensor legs of a combination of word pairs.
    pub fn normalize_pairs(&self, x: &LinComb<Pair<L>>) -> LinComb<Pair<L>> {
        let mut out = LinComb::new();
        for ((a, b), c) in x.iter() {
            let na = self.normalize_word(a);
            if na.is_zero() {
                continue;
            }
            let nb = self.normalize_word(b);
            for (u, cu) in na.iter() {
                for (v, cv) in nb.iter() {
                    out.add((u.clone(), v.clone()), c * cu * cv);
                }
            }
        }
        out
    }

    /// Antisymmetrized reduced deconcatenation on normal forms.
    pub fn cobracket(&self, x: &LinComb<Word<L>>) -> LinComb<Pair<L>> {
        let mut out = LinComb::new();
        for (w, c) in self.normalize(x).iter() {
            let m = multiset(w);
            let b = self.block(&m);
            let col = &self.block_cobrackets(&b)[b.index[w]];
            out.add_scaled(col, c);
        }
        out
    }

    fn raw_cobracket(&self, w: &[L]) -> LinComb<Pair<L>> {
        let mut raw = LinComb::new();
        for k in 1..w.len() {
            let (l, r) = w.split_at(k);
            raw.add((l.to_vec(), r.to_vec()), Rat::one());
            raw.add((r.to_vec(), l.to_vec()), -sign(word_odd(l) && word_odd(r)));
        }
        self.normalize_pairs(&raw)
    }

    fn block_cobrackets<'a>(&self, b: &'a Block<L>) -> &'a Vec<LinComb<Pair<L>>> {
        b.cobrackets.get_or_init(|| b.words.iter().map(|w| self.raw_cobracket(w)).collect())
    }

    /// The unique class with the given single-letter part and cobracket.
    pub fn reconstruct(&self, head: &LinComb<L>, cob: &LinComb<Pair<L>>) -> Result<LinComb<Word<L>>> {
        let mut out: LinComb<Word<L>> = head.iter().map(|(a, c)| (vec![a.clone()], c.clone())).collect();
        let mut groups: HashMap<Vec<L>, Vec<(Pair<L>, Rat)>> = HashMap::new();
        for ((a, b), c) in cob.iter() {
            let mut m = a.clone();
            m.extend(b.iter().cloned());
            m.sort();
            groups.entry(m).or_default().push(((a.clone(), b.clone()), c.clone()));
        }
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        for m in keys {
            let target = &groups[&m];
            let b = self.block(&m);
            let cols_all = self.block_cobrackets(&b);
            let cols: Vec<&LinComb<Pair<L>>> = b.normal.iter().map(|w| &cols_all[b.index[w]]).collect();
            let mut rows: HashMap<Pair<L>, usize> = HashMap::new();
            let mut row_list = Vec::new();
            for col in &cols {
                for (p, _) in col.iter() {
                    if !rows.contains_key(p) {
                        rows.insert(p.clone(), row_list.len());
                        row_list.push(p.clone());
                    }
                }
            }
            let mut rhs = vec![Rat::from_integer(0.into()); row_list.len()];
            for (p, c) in target {
                match rows.get(p) {
                    Some(&i) => rhs[i] = c.clone(),
                    None => return Err(Error::Inconsistent("cobracket data has no preimage".into())),
                }
            }
            let columns: Vec<SparseVec> =
                cols.iter().map(|col| col.iter().map(|(p, c)| (rows[p], c.clone())).collect()).collect();
            let mat = SparseMat::from_columns(row_list.len(), &columns);
            let sol = solve_linear(&mat, &rhs)
                .ok_or_else(|| Error::Inconsistent("cobracket data has no preimage".into()))?;
            for (w, c) in b.normal.iter().zip(sol) {
                out.add(w.clone(), c);
            }
        }
        Ok(out)
    }
}

/// Number of Lyndon words of length `len` over `q` letters.
pub fn witt_dim(q: u64, len: u32) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=len {
        if len % d == 0 {
            total += mobius(d) as i128 * (q as i128).pow(len / d);
        }
    }
    (total / len as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn w(ids: &[u32]) -> Word<Symbol> {
        ids.iter().map(|&i| Symbol::even(i)).collect()
    }

    #[test]
    fn shuffle_examples() {
        let sh = shuffle(&w(&[0]), &w(&[1]));
        assert_eq!(sh, [(w(&[0, 1]), rat(1)), (w(&[1, 0]), rat(1))].into_iter().collect());
        let (v, u) = (Symbol::odd(0), Symbol::odd(1));
        let sh = shuffle(&[v.clone()], &[u.clone()]);
        assert_eq!(sh, [(vec![v.clone(), u.clone()], rat(1)), (vec![u, v], rat(-1))].into_iter().collect());
        let sh = shuffle(&w(&[0]), &w(&[1, 2]));
        let expected: LinComb<_> =
            [(w(&[0, 1, 2]), rat(1)), (w(&[1, 0, 2]), rat(1)), (w(&[1, 2, 0]), rat(1))].into_iter().collect();
        assert_eq!(sh, expected);
    }

    #[test]
    fn normalize_examples() {
        let lie = LieCalc::new();
        let mut x = LinComb::basis(w(&[0, 1]));
        x.add(w(&[1, 0]), rat(1));
        assert!(lie.normalize(&x).is_zero());
        assert_eq!(lie.normalize_word(&w(&[1, 0])), LinComb::single(w(&[0, 1]), rat(-1)));
        assert_eq!(lie.quotient_dim(&w(&[0, 0, 1])) + lie.quotient_dim(&w(&[0, 1, 1])), 2);
        let x = Symbol::odd(0);
        assert_eq!(lie.normal_words(&[x.clone(), x.clone()]), vec![vec![x.clone(), x]]);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dim(2, 1), 2);
        assert_eq!(witt_dim(2, 3), 2);
        assert_eq!(witt_dim(3, 2), 3);
        assert_eq!(witt_dim(2, 6), 9);
    }

    #[test]
    fn cobracket_examples() {
        let lie = LieCalc::new();
        assert!(lie.cobracket(&LinComb::basis(w(&[0]))).is_zero());
        let d = lie.cobracket(&LinComb::basis(w(&[0, 1])));
        let expected: LinComb<_> =
            [((w(&[0]), w(&[1])), rat(1)), ((w(&[1]), w(&[0])), rat(-1))].into_iter().collect();
        assert_eq!(d, expected);
        let back = lie.reconstruct(&LinComb::new(), &expected).unwrap();
        assert_eq!(back, LinComb::basis(w(&[0, 1])));
        let head = LinComb::basis(Symbol::even(3));
        assert_eq!(lie.reconstruct(&head, &LinComb::new()).unwrap(), LinComb::basis(w(&[3])));
        let bad: LinComb<_> = [((w(&[0]), w(&[1])), rat(1))].into_iter().collect();
        assert!(lie.reconstruct(&LinComb::new(), &bad).is_err());
    }
}
