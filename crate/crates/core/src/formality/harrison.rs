//! Homology of the commutative cobar construction on the Harrison coalgebra
//! of `A = Q[x1..xn]`, one weight at a time.
//!
//! Generators are `k_w` for normal words `w` in non-constant monomials, of
//! degree `1 - len(w)`; `d k_w = k_{d_H w} + 1/2 sum k_y k_z` over the
//! cobracket. The complex is the bracket-free part of the cobar construction
//! on single-factor generators.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactlin::{homology_dim, SparseMat};

use super::cobar::{Cobar, XiGen};
use super::gerst::{Expr, Tree};
use super::xi::{coef_degree, letter_count, xi_basis, XiBudget};

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WindowEntry {
    pub weight: u32,
    pub degree: i64,
    pub dim: usize,
    pub chains: usize,
    pub complete: bool,
}

type Monomial = Vec<Tree<XiGen>>;

fn degree(m: &Monomial) -> i64 {
    m.iter()
        .map(|t| match t {
            Tree::Leaf(g) => 1 - letter_count(&g.0) as i64,
            Tree::Br(..) => unreachable!("bracket-free complex"),
        })
        .sum()
}

/// Chain monomials of one weight: products of single-word generators in
/// function letters, with words of length at most `length_cap`.
fn chains(n: usize, weight: u32, length_cap: usize) -> Vec<Monomial> {
    let budget = XiBudget { max_factors: weight as usize, max_word_len: length_cap, max_coef_deg: weight };
    let mut out = Vec::new();
    for m in xi_basis(n, budget) {
        if coef_degree(&m) != weight || m.iter().flatten().any(|l| l.is_der()) {
            continue;
        }
        out.push(m.iter().map(|w| Tree::Leaf(XiGen(vec![w.clone()]))).collect());
    }
    out
}

/// Homology dimensions per degree for each weight `1..=weight_cap`. A weight
/// is complete when every word of that weight fits under `length_cap`.
pub fn harrison_window(n: usize, weight_cap: u32, length_cap: usize) -> Result<Vec<WindowEntry>> {
    let cobar = Cobar::new(n);
    let mut out = Vec::new();
    for weight in 1..=weight_cap {
        let complete = length_cap >= weight as usize;
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in chains(n, weight, length_cap) {
            by_degree.entry(degree(&m)).or_default().push(m);
        }
        let index: BTreeMap<i64, BTreeMap<&Monomial, usize>> = by_degree
            .iter()
            .map(|(&d, ms)| (d, ms.iter().enumerate().map(|(i, m)| (m, i)).collect()))
            .collect();
        let mut matrices: BTreeMap<i64, SparseMat> = BTreeMap::new();
        for (&d, ms) in &by_degree {
            let empty = BTreeMap::new();
            let target = index.get(&(d + 1)).unwrap_or(&empty);
            let mut mat = SparseMat::zeros(target.len(), ms.len());
            for (j, m) in ms.iter().enumerate() {
                let e: Expr<XiGen> = Expr::basis(m.clone());
                for (k, c) in cobar.d(&e)?.iter() {
                    if let Some(&i) = target.get(k) {
                        mat.add(i, j, c.clone());
                    }
                }
            }
            matrices.insert(d, mat);
        }
        for (&d, ms) in &by_degree {
            let d_out = &matrices[&d];
            let d_in = match matrices.get(&(d - 1)) {
                Some(m) => m.clone(),
                None => SparseMat::zeros(ms.len(), 0),
            };
            out.push(WindowEntry {
                weight,
                degree: d,
                dim: homology_dim(&d_in, d_out)?,
                chains: ms.len(),
                complete,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_is_concentrated_in_degree_zero() {
        let table = harrison_window(1, 3, 3).unwrap();
        for e in &table {
            assert!(e.complete);
            assert_eq!(e.dim, usize::from(e.degree == 0), "{e:?}");
        }
        assert_eq!(table.iter().filter(|e| e.degree == 0).count(), 3);
    }
}
