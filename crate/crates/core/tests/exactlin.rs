use num_traits::Zero;
use proptest::prelude::*;
use xiform::exactlin::{homology_dim, rank, rank_kernel, rat, solve_linear, Rat, SparseMat, Subspace};

/// Plain dense Gauss-Jordan rank, independent of the sparse code.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #[test]
    fn rank_matches_dense_elimination(rows in matrix()) {
        let m = SparseMat::from_dense(&rows);
        prop_assert_eq!(rank(&m), dense_rank(&rows));
    }

    #[test]
    fn kernel_is_annihilated_and_complementary(rows in matrix()) {
        let m = SparseMat::from_dense(&rows);
        let (r, ker) = rank_kernel(&m);
        prop_assert_eq!(r + ker.dim(), m.cols());
        for v in ker.basis() {
            prop_assert!(m.mul_sparse(v).is_empty());
        }
    }

    #[test]
    fn solve_returns_a_solution_when_consistent(rows in matrix(), x in prop::collection::vec(-2i64..=2, 6)) {
        let m = SparseMat::from_dense(&rows);
        let x: Vec<Rat> = x[..m.cols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve_linear(&m, &b).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn transpose_preserves_rank(rows in matrix()) {
        let m = SparseMat::from_dense(&rows);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }
}

#[test]
fn inconsistent_system_has_no_solution() {
    let m = SparseMat::from_dense(&[vec![1, 1], vec![2, 2]]);
    assert!(solve_linear(&m, &[rat(1), rat(3)]).is_none());
}

#[test]
fn subspace_membership() {
    let m = SparseMat::from_dense(&[vec![1, 2, 0], vec![0, 1, 1]]);
    let s = Subspace::span(3, m.row_vectors());
    assert_eq!(s.dim(), 2);
    let sum = SparseMat::from_dense(&[vec![1, 3, 1]]).row_vectors().remove(0);
    assert!(s.contains(&sum));
    let e3 = SparseMat::from_dense(&[vec![0, 0, 1]]).row_vectors().remove(0);
    assert!(!s.contains(&e3));
}

#[test]
fn homology_of_a_short_complex() {
    // 0 -> Q -> Q^2 -> Q -> 0 with d1 = (1,1)^T and d2 = (1,-1): exact in the middle.
    let d1 = SparseMat::from_dense(&[vec![1], vec![1]]);
    let d2 = SparseMat::from_dense(&[vec![1, -1]]);
    assert_eq!(homology_dim(&d1, &d2).unwrap(), 0);
    let d2 = SparseMat::from_dense(&[vec![0, 0]]);
    assert_eq!(homology_dim(&d1, &d2).unwrap(), 1);
    let bad = SparseMat::from_dense(&[vec![1, 0]]);
    assert!(homology_dim(&d1, &bad).is_err());
}
