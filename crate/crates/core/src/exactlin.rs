//! Exact sparse linear algebra over the rationals.
//!
//! Every rank, kernel, homology and linear-solve computation in the crate goes
//! through this module. Elimination is fraction-free: rows are kept as
//! primitive integer vectors while reducing and only converted back to
//! rationals (pivot normalized to one) when a [`Subspace`] is handed out.
//! Input rows are inserted sparsest-first, which is the only pivoting freedom
//! incremental echelon insertion has.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field.
pub type Rat = BigRational;

/// Sparse coordinate vector: column index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Adds `c * v` into `acc`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &Rat, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        add_entry(acc, k, c * x);
    }
}

pub fn add_entry(acc: &mut SparseVec, k: usize, x: Rat) {
    if x.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from dense integer rows. All rows must have equal length.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &x) in row.iter().enumerate() {
                m.add(i, j, rat(x));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                m.add(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Adds `x` to entry `(i, j)`. Panics on out-of-range indices.
    pub fn add(&mut self, i: usize, j: usize, x: Rat) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if x.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert_with(Rat::zero);
        *e += x;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::zeros(self.cols, self.rows);
        for (&(i, j), x) in &self.entries {
            t.entries.insert((j, i), x.clone());
        }
        t
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(i, j), x) in &self.entries {
            out[i].insert(j, x.clone());
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (&(i, j), x) in &self.entries {
            out[i] += x * &v[j];
        }
        Ok(out)
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), x) in &self.entries {
            if let Some(y) = v.get(&j) {
                add_entry(&mut out, i, x * y);
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_vectors();
        let mut out = SparseMat::zeros(self.rows, other.cols);
        for (&(i, k), x) in &self.entries {
            for (&j, y) in &other_rows[k] {
                out.add(i, j, x * y);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Primitive integer row used during fraction-free elimination.
type IntRow = BTreeMap<usize, BigInt>;

fn to_primitive_int(v: &SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for x in v.values() {
        lcm = lcm.lcm(x.denom());
    }
    let row: IntRow = v
        .iter()
        .map(|(&k, x)| (k, (x * Rat::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(row)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for x in row.values() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return row;
    }
    let lead_negative = row.values().next().is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in row.values_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// `a*row - b*pivot_row`, where the multipliers cancel the entry at `col`.
fn eliminate(row: &IntRow, pivot_row: &IntRow, col: usize) -> IntRow {
    let a = &pivot_row[&col];
    let b = &row[&col];
    let g = a.gcd(b);
    let (ra, rb) = (a / &g, b / &g);
    let mut out = IntRow::new();
    for (&k, x) in row {
        let v = x * &ra;
        if !v.is_zero() {
            out.insert(k, v);
        }
    }
    for (&k, y) in pivot_row {
        let delta = y * &rb;
        let e = out.entry(k).or_insert_with(BigInt::zero);
        *e -= delta;
        if e.is_zero() {
            out.remove(&k);
        }
    }
    make_primitive(out)
}

/// Incremental fraction-free echelon basis keyed by pivot column.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: BTreeMap<usize, IntRow>,
}

impl Echelon {
    /// Reduces `row` against the stored rows; inserts it if independent.
    /// Returns whether the row was independent.
    fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => {
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Clears the entries above each pivot, producing a reduced echelon form
    /// (still integral; pivots are not yet scaled to one).
    fn reduce_fully(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            let keys: Vec<usize> = self.rows.range(..p).map(|(&k, _)| k).collect();
            for k in keys {
                if self.rows[&k].contains_key(&p) {
                    let r = eliminate(&self.rows[&k], &prow, p);
                    self.rows.insert(k, r);
                }
            }
        }
    }

    fn into_rational(self) -> BTreeMap<usize, SparseVec> {
        self.rows
            .into_iter()
            .map(|(p, row)| {
                let lead = row[&p].clone();
                let v = row
                    .into_iter()
                    .map(|(k, x)| (k, Rat::new(x, lead.clone())))
                    .collect();
                (p, v)
            })
            .collect()
    }
}

/// A linear subspace stored as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    /// pivot column -> basis row with a one at the pivot and zeros at every other pivot.
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: BTreeMap::new() }
    }

    /// Span of the given vectors. Vectors are inserted sparsest-first.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut rows: Vec<IntRow> = vectors
            .into_iter()
            .filter(|v| !v.is_empty())
            .map(|v| {
                debug_assert!(v.keys().all(|&k| k < ambient_dim));
                to_primitive_int(&v)
            })
            .collect();
        rows.sort_by_key(|r| r.len());
        let mut ech = Echelon::default();
        for r in rows {
            ech.insert(r);
        }
        ech.reduce_fully();
        Subspace { ambient_dim, rows: ech.into_rational() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// The row with a one at pivot `col`, if `col` is a pivot.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.rows.get(&col)
    }

    /// Canonical representative of `v` modulo the subspace: all pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (&p, row) in &self.rows {
            if let Some(c) = out.get(&p).cloned() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank and kernel of `m` (as a map from `cols`-space to `rows`-space).
pub fn rank_kernel(m: &SparseMat) -> (usize, Subspace) {
    let row_space = Subspace::span(m.cols(), m.row_vectors());
    let rank = row_space.dim();
    let mut kernel = Vec::new();
    for free in 0..m.cols() {
        if row_space.is_pivot(free) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(free, Rat::one());
        for (&p, row) in &row_space.rows {
            if let Some(x) = row.get(&free) {
                v.insert(p, -x.clone());
            }
        }
        kernel.push(v);
    }
    (rank, Subspace::span(m.cols(), kernel))
}

pub fn rank(m: &SparseMat) -> usize {
    Subspace::span(m.cols(), m.row_vectors()).dim()
}

/// Dimension of `ker(d_out) / im(d_in)` at the middle term.
pub fn homology_dim(d_in: &SparseMat, d_out: &SparseMat) -> Result<usize> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Dimension(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(Error::NotAComplex(comp.nnz()));
    }
    let (_, ker) = rank_kernel(d_out);
    Ok(ker.dim() - rank(d_in))
}

/// Some solution of `m x = rhs`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(m: &SparseMat, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rhs.len(), m.rows(), "rhs length must equal row count");
    let n = m.cols();
    let mut rows = m.row_vectors();
    for (row, b) in rows.iter_mut().zip(rhs) {
        if !b.is_zero() {
            row.insert(n, b.clone());
        }
    }
    let aug = Subspace::span(n + 1, rows);
    if aug.is_pivot(n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (&p, row) in &aug.rows {
        if let Some(b) = row.get(&n) {
            x[p] = b.clone();
        }
    }
    Some(x)
}
