//! The polynomial algebra `A = Q[x1..xn]`, its derivations, and the
//! Gerstenhaber algebra of polyvector fields.
//!
//! A polyvector is stored in the free-module basis `d_{i1}^...^d_{ik}` with
//! strictly increasing indices. Internally it is convenient to think of
//! `d_i` as an odd variable `xi_i`; the wedge product is then the supercommutative
//! product and the Schouten bracket is
//!
//! ```text
//! [P, Q] = sum_i (P dr/dxi_i)(dQ/dx_i) - (-1)^{(|P|-1)(|Q|-1)} (Q dr/dxi_i)(dP/dx_i)
//! ```
//!
//! with right derivatives in the odd variables. With this choice the bracket
//! has degree -1, is graded antisymmetric in the shifted degree `|P|-1`, and
//! `[P, -]` is a derivation of degree `|P|-1` acting from the left.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Rat;

/// Exponent vector ordered graded-lexicographically (total degree first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `d^alpha x^self = coeff * x^(self - alpha)`, or `None` if it vanishes.
    pub fn differentiate(&self, alpha: &[u32]) -> Option<(BigInt, Mono)> {
        let mut c = BigInt::one();
        let mut e = self.0.clone();
        for (ei, &ai) in e.iter_mut().zip(alpha) {
            if ai > *ei {
                return None;
            }
            for t in 0..ai {
                c *= *ei - t;
            }
            *ei -= ai;
        }
        Some((c, Mono(e)))
    }

    /// All exponent vectors in `nvars` variables of total degree exactly `d`.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if n == 1 {
                prefix.push(d);
                out.push(Mono(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=d {
                prefix.push(k);
                rec(n - 1, d - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Mono(vec![]));
            }
            return out;
        }
        rec(nvars, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All exponent vectors of total degree at most `d`, in graded-lex order.
    pub fn all_up_to_degree(nvars: usize, d: u32) -> Vec<Mono> {
        (0..=d).flat_map(|k| Mono::all_of_degree(nvars, k)).collect()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Poly::monomial(Mono::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(Mono::var(nvars, i), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rat) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += x * c;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// Partial derivative along a multi-index.
    pub fn diff(&self, alpha: &[u32]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((k, rest)) = m.differentiate(alpha) {
                out.add_term(rest, c * Rat::from_integer(k));
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut alpha = vec![0; self.nvars];
        alpha[i] = 1;
        self.diff(&alpha)
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::one());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *terms.entry(a.mul(b)).or_insert_with(Rat::zero) += x * y;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms }
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes `c * body` as a signed term; `first` controls the leading separator.
fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rat, body: &str) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    if body.is_empty() {
        write!(f, "{}", fmt_rat(&a))
    } else if a.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{}*{body}", fmt_rat(&a))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.is_one() { String::new() } else { m.to_string() };
            write_term(f, k == 0, c, &body)?;
        }
        Ok(())
    }
}

/// Polyvector field: coefficient polynomials indexed by strictly increasing
/// tuples of (0-based) derivation indices. Degree-0 terms are functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyvector {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of sorting `idx` ascending, or `None` if an index repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

impl Polyvector {
    pub fn zero(nvars: usize) -> Self {
        Polyvector { nvars, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        let mut out = Polyvector::zero(nvars);
        out.add_term(vec![], p);
        out
    }

    /// Coordinate vector field `d_i` (0-based index).
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        Polyvector::basis(Poly::one(nvars), &[i])
    }

    /// `p * d_{idx[0]} ^ ... ^ d_{idx[k-1]}`, with the reordering sign applied.
    pub fn basis(p: Poly, idx: &[usize]) -> Self {
        let nvars = p.nvars();
        let mut out = Polyvector::zero(nvars);
        if let Some((s, sorted)) = sort_sign(idx) {
            out.add_term(sorted, p.scale(&Rat::from_integer(s.into())));
        }
        out
    }

    /// Vector field `sum_i coeffs[i] d_i`.
    pub fn vector_field(coeffs: &[Poly]) -> Self {
        let nvars = coeffs.first().map_or(0, Poly::nvars);
        let mut out = Polyvector::zero(nvars);
        for (i, p) in coeffs.iter().enumerate() {
            out.add_term(vec![i], p.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Polyvector degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Vec::len);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Degree-0 part viewed as a polynomial.
    pub fn function_part(&self) -> Poly {
        self.coeff(&[])
    }

    fn add_term(&mut self, idx: Vec<usize>, p: Poly) {
        assert_eq!(p.nvars(), self.nvars, "variable count mismatch");
        if p.is_zero() {
            return;
        }
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        let e = self.terms.entry(idx.clone()).or_insert_with(|| Poly::zero(p.nvars()));
        e.add_scaled(&p, &Rat::one());
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &Polyvector, c: &Rat) {
        for (idx, p) in &other.terms {
            self.add_term(idx.clone(), p.scale(c));
        }
    }

    pub fn scale(&self, c: &Rat) -> Polyvector {
        let mut out = Polyvector::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, Polyvector> {
        let mut out: BTreeMap<usize, Polyvector> = BTreeMap::new();
        for (idx, p) in &self.terms {
            out.entry(idx.len())
                .or_insert_with(|| Polyvector::zero(self.nvars))
                .add_term(idx.clone(), p.clone());
        }
        out
    }

    /// Coefficientwise partial derivative in `x_i`.
    fn partial_x(&self, i: usize) -> Polyvector {
        let mut out = Polyvector::zero(self.nvars);
        for (idx, p) in &self.terms {
            out.add_term(idx.clone(), p.partial(i));
        }
        out
    }

    /// Right derivative in the odd variable attached to `d_i`.
    fn right_odd_derivative(&self, i: usize) -> Polyvector {
        let mut out = Polyvector::zero(self.nvars);
        for (idx, p) in &self.terms {
            if let Some(pos) = idx.iter().position(|&j| j == i) {
                let moves = idx.len() - 1 - pos;
                let mut rest = idx.clone();
                rest.remove(pos);
                let s = if moves % 2 == 0 { Rat::one() } else { -Rat::one() };
                out.add_term(rest, p.scale(&s));
            }
        }
        out
    }

    /// Action of a vector field on a function.
    pub fn apply_derivation(&self, f: &Poly) -> Result<Poly> {
        if self.nvars != f.nvars() {
            return Err(Error::Nvars(self.nvars, f.nvars()));
        }
        if !self.is_zero() && self.degree() != Some(1) {
            return Err(Error::NotDerivation(self.to_string()));
        }
        let mut out = Poly::zero(self.nvars);
        for (idx, p) in &self.terms {
            out = &out + &(p * &f.partial(idx[0]));
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Polyvector) -> Polyvector {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polyvector::zero(self.nvars);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                if let Some((s, sorted)) = sort_sign(&idx) {
                    out.add_term(sorted, (p * q).scale(&Rat::from_integer(s.into())));
                }
            }
        }
        out
    }

    /// Schouten-Nijenhuis bracket, degree `|u| + |v| - 1`.
    pub fn schouten(&self, other: &Polyvector) -> Polyvector {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polyvector::zero(self.nvars);
        for (du, u) in self.components() {
            for (dv, v) in other.components() {
                let shifted = (du + 1) * (dv + 1);
                let sign = if shifted % 2 == 0 { -Rat::one() } else { Rat::one() };
                for i in 0..self.nvars {
                    out.add_scaled(&u.right_odd_derivative(i).wedge(&v.partial_x(i)), &Rat::one());
                    out.add_scaled(&v.right_odd_derivative(i).wedge(&u.partial_x(i)), &sign);
                }
            }
        }
        out
    }
}

impl fmt::Display for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            let dpart = idx.iter().map(|i| format!("d{}", i + 1)).collect::<Vec<_>>().join("^");
            for (m, c) in p.terms() {
                let body = match (m.is_one(), dpart.is_empty()) {
                    (true, _) => dpart.clone(),
                    (false, true) => m.to_string(),
                    (false, false) => format!("{m} {dpart}"),
                };
                write_term(f, first, c, &body)?;
                first = false;
            }
        }
        Ok(())
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_index(s: &str, prefix: char, nvars: usize) -> Result<usize> {
    let i: usize = s
        .strip_prefix(prefix)
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad token `{s}`")))?;
    if i == 0 || i > nvars {
        return Err(Error::Parse(format!("index in `{s}` out of range 1..={nvars}")));
    }
    Ok(i - 1)
}

/// Splits `a - b + c` into signed terms; a leading sign is allowed.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            out.push((neg, cur.trim().to_string()));
            cur.clear();
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

/// Parses `3/2*x1^2*x2 d1^d3 - d2` style text in `nvars` variables.
pub fn parse_polyvector(s: &str, nvars: usize) -> Result<Polyvector> {
    let mut out = Polyvector::zero(nvars);
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    if s.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    for (neg, term) in split_terms(s) {
        let mut c = if neg { -Rat::one() } else { Rat::one() };
        let mut m = vec![0u32; nvars];
        let mut idx: Vec<usize> = Vec::new();
        for tok in term.split(|ch: char| ch == '*' || ch.is_whitespace()).filter(|t| !t.is_empty()) {
            if tok.starts_with('d') {
                for d in tok.split('^') {
                    idx.push(parse_index(d, 'd', nvars)?);
                }
            } else if tok.starts_with('x') {
                let (var, exp) = match tok.split_once('^') {
                    Some((v, e)) => {
                        (v, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?)
                    }
                    None => (tok, 1),
                };
                m[parse_index(var, 'x', nvars)?] += exp;
            } else {
                c *= parse_rat(tok)?;
            }
        }
        out.add_scaled(&Polyvector::basis(Poly::monomial(Mono(m), Rat::one()), &idx), &c);
    }
    Ok(out)
}

/// Parses a polynomial; rejects input containing derivation symbols.
pub fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let pv = parse_polyvector(s, nvars)?;
    if pv.terms().any(|(idx, _)| !idx.is_empty()) {
        return Err(Error::Parse(format!("`{s}` is not a polynomial")));
    }
    Ok(pv.function_part())
}

impl FromStr for Poly {
    type Err = Error;
    /// Infers the variable count from the largest `x` index present (at least 1).
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s, infer_nvars(s))
    }
}

fn infer_nvars(s: &str) -> usize {
    let mut n = 1;
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' || b[i] == b'd' {
            let j = (i + 1..b.len()).find(|&j| !b[j].is_ascii_digit()).unwrap_or(b.len());
            if let Ok(k) = s[i + 1..j].parse::<usize>() {
                n = n.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    n
}

impl FromStr for Polyvector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Polyvector> {
        parse_polyvector(s, infer_nvars(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn pv(s: &str, n: usize) -> Polyvector {
        parse_polyvector(s, n).unwrap()
    }

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(pv("d1", 1).apply_derivation(&p("x1^2", 1)).unwrap(), p("2*x1", 1));
        assert!(pv("x2 d1", 2).apply_derivation(&p("x2", 2)).unwrap().is_zero());
        let v = pv("x1 d1 + d2", 2);
        assert_eq!(v.apply_derivation(&p("x1*x2", 2)).unwrap(), p("x1*x2 + x1", 2));
    }

    #[test]
    fn apply_derivation_rejects_bivectors() {
        let e = pv("d1^d2", 2).apply_derivation(&p("x1", 2));
        assert!(matches!(e, Err(Error::NotDerivation(_))));
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(pv("d1", 2).wedge(&pv("d2", 2)), pv("d1^d2", 2));
        assert!(pv("d1", 1).wedge(&pv("d1", 1)).is_zero());
        assert_eq!(pv("x2 d1", 2).wedge(&pv("x1 d2", 2)), pv("x1*x2 d1^d2", 2));
        assert_eq!(pv("d2^d1", 2), pv("-d1^d2", 2));
    }

    #[test]
    fn schouten_examples() {
        let v = pv("x1^2 d1 + x2 d2", 2);
        assert!(v.schouten(&v).is_zero());
        assert_eq!(pv("d1", 1).schouten(&pv("x1^2", 1)), pv("2*x1", 1));
        assert_eq!(pv("d1", 1).schouten(&pv("x1 d1", 1)), pv("d1", 1));
        assert!(pv("x1", 2).schouten(&pv("x2^2", 2)).is_zero());
    }

    #[test]
    fn schouten_on_vector_fields_is_commutator() {
        // oracle: evaluate [v,w] on monomials as v(w(f)) - w(v(f))
        let v = pv("x1^2 d1 + x2 d2", 2);
        let w = pv("x2 d1 - x1*x2 d2", 2);
        let b = v.schouten(&w);
        for m in Mono::all_up_to_degree(2, 3) {
            let f = Poly::monomial(m, rat(1));
            let lhs = b.apply_derivation(&f).unwrap();
            let vw = v.apply_derivation(&w.apply_derivation(&f).unwrap()).unwrap();
            let wv = w.apply_derivation(&v.apply_derivation(&f).unwrap()).unwrap();
            assert_eq!(lhs, &vw - &wv);
        }
    }

    #[test]
    fn text_round_trip() {
        let s = "3/2*x1^2*x2 d1^d3";
        let u = pv(s, 3);
        assert_eq!(u.to_string(), s);
        assert_eq!(pv(&u.to_string(), 3), u);
        assert_eq!(p("x1 - 1/2 + x2^3", 2).to_string(), "-1/2 + x1 + x2^3");
        assert_eq!(pv("-d2 + x1 d1", 2).to_string(), "x1 d1 - d2");
        assert_eq!("x1*x3".parse::<Poly>().unwrap().nvars(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly("x4", 3).is_err());
        assert!(parse_poly("d1", 2).is_err());
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("", 1).is_err());
    }
}
