//! Finite formal linear combinations over an ordered basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactlin::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K>(BTreeMap<K, Rat>);

impl<K> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Rat) -> Self {
        let mut out = Self::new();
        out.add(k, c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rat)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn coeff(&self, k: &K) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&mut self, k: K, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.0.remove(&k);
                }
            }
            None => {
                self.0.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.0 {
            self.add(k.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        out
    }

    pub fn minus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<J>) -> LinComb<J> {
        let mut out = LinComb::new();
        for (k, c) in &self.0 {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.0.retain(|k, _| keep(k));
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rat)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rat)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add(k, c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Rat);
    type IntoIter = std::collections::btree_map::IntoIter<K, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

pub fn sign(odd: bool) -> Rat {
    if odd {
        -Rat::one()
    } else {
        Rat::one()
    }
}

/// Writes `c1*k1 + c2*k2 ...` with a caller-supplied basis printer.
pub fn fmt_comb<K: Ord>(
    f: &mut fmt::Formatter<'_>,
    comb: &LinComb<K>,
    mut basis: impl FnMut(&mut fmt::Formatter<'_>, &K) -> fmt::Result,
) -> fmt::Result {
    if comb.0.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in comb.0.iter().enumerate() {
        let neg = c < &Rat::zero();
        let a = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        basis(f, k)?;
    }
    Ok(())
}
