//! Graded-symmetric monomials: sorted factor lists with Koszul signs.

use num_traits::One;

use crate::exactlin::Rat;
use crate::lincomb::{sign, LinComb};

/// Sorts factors, returning the Koszul sign, or `None` when an odd factor repeats.
pub fn sort_factors<F: Ord + Clone>(mut factors: Vec<F>, odd: impl Fn(&F) -> bool) -> Option<(Rat, Vec<F>)> {
    let mut neg = false;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            if odd(&factors[j - 1]) && odd(&factors[j]) {
                neg = !neg;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    if factors.windows(2).any(|w| w[0] == w[1] && odd(&w[0])) {
        return None;
    }
    Some((sign(neg), factors))
}

/// Product of two sorted monomials.
pub fn sym_product<F: Ord + Clone>(a: &[F], b: &[F], odd: impl Fn(&F) -> bool) -> Option<(Rat, Vec<F>)> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    sort_factors(v, odd)
}

/// Reduced unshuffle coproduct: every split of the factor positions into two
/// nonempty complementary subsets, with the sign of moving the left part first.
pub fn sym_coproduct<F: Ord + Clone>(factors: &[F], odd: impl Fn(&F) -> bool) -> LinComb<(Vec<F>, Vec<F>)> {
    let k = factors.len();
    let mut out = LinComb::new();
    if k < 2 {
        return out;
    }
    for mask in 1..(1u64 << k) - 1 {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut neg = false;
        let mut right_odd = false;
        for (i, f) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if right_odd && odd(f) {
                    neg = !neg;
                }
                left.push(f.clone());
            } else {
                right_odd ^= odd(f);
                right.push(f.clone());
            }
        }
        out.add((left, right), sign(neg) * Rat::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn coproduct_examples() {
        let odd = |_: &u32| false;
        assert!(sym_coproduct(&[7u32], odd).is_zero());
        let d = sym_coproduct(&[1u32, 2], |_| true);
        let expected: LinComb<_> = [((vec![1], vec![2]), rat(1)), ((vec![2], vec![1]), rat(-1))].into_iter().collect();
        assert_eq!(d, expected);
        let d = sym_coproduct(&[5u32, 5, 5], odd);
        let expected: LinComb<_> =
            [((vec![5], vec![5, 5]), rat(3)), ((vec![5, 5], vec![5]), rat(3))].into_iter().collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_factors(vec![2u32, 1], |_| true), Some((rat(-1), vec![1, 2])));
        assert_eq!(sort_factors(vec![2u32, 1], |_| false), Some((rat(1), vec![1, 2])));
        assert_eq!(sort_factors(vec![1u32, 1], |_| true), None);
    }
}
