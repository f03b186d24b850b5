//! The explicit linear equations cutting `Ker mu_2k` out of `I_2` in the
//! coordinates `a_ij`.
//!
//! Level 1: `sum_{i+j=l} a_ij (j-i) = 0` for `3 <= l <= 2g-3`.
//! Level `m >= 2`: `sum_{i+j=l} a_ij (j-i) prod_{r=0}^{m-2} (i-r)(j-r) = 0` for
//! `2m-1 <= l <= 2g-3`. The product vanishes on its own when `i <= m-2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::quadric::{a_pairs, dim_i2};
use super::KernelLevel;
use crate::exact::matrix::{restrict_kernel, RatMatrix};
use crate::exact::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSystem {
    pub genus: usize,
    pub level: usize,
    /// rows of every level `1..=level`, stacked
    #[serde(skip)]
    pub rows: RatMatrix,
    /// `n_l = #{(i,j) : i + j = l}`
    pub n_l: BTreeMap<usize, usize>,
    /// `s_m`: rank gained at level `m`, for `m = 1..=level`
    pub rank_increments: Vec<usize>,
}

/// Rows contributed by level `m` (each a vector over the a-coordinates).
pub fn level_rows(g: usize, m: usize) -> Vec<Vec<Rational>> {
    assert!(m >= 1, "levels start at 1");
    let pairs = a_pairs(g);
    let lo = (2 * m).saturating_sub(1).max(3);
    let hi = 2 * g - 3;
    (lo..=hi)
        .filter_map(|l| {
            let row: Vec<Rational> = pairs
                .iter()
                .map(|&(i, j)| {
                    if i + j != l {
                        return Rational::zero();
                    }
                    let mut v = BigInt::from(j - i);
                    for r in 0..m.saturating_sub(1) {
                        v *= BigInt::from(i as i64 - r as i64) * BigInt::from(j as i64 - r as i64);
                    }
                    Rational::from_integer(v)
                })
                .collect();
            row.iter().any(|x| !x.is_zero()).then_some(row)
        })
        .collect()
}

pub fn n_l(g: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (i, j) in a_pairs(g) {
        *out.entry(i + j).or_insert(0) += 1;
    }
    out
}

/// Kernels of levels `0..=k`, each restricted to the previous one.
pub fn kernels_up_to(g: usize, k: usize) -> Vec<Vec<Vec<Rational>>> {
    let dim = dim_i2(g);
    let mut out = vec![RatMatrix::identity(dim).row_vecs()];
    for m in 1..=k {
        let next = restrict_kernel(&out[m - 1], &level_rows(g, m), dim);
        out.push(next);
    }
    out
}

pub fn build_paper_equations(g: usize, k: usize) -> EquationSystem {
    let dim = dim_i2(g);
    let all: Vec<Vec<Rational>> = (1..=k).flat_map(|m| level_rows(g, m)).collect();
    let kernels = kernels_up_to(g, k);
    let rank_increments = kernels
        .windows(2)
        .map(|w| w[0].len() - w[1].len())
        .collect();
    EquationSystem {
        genus: g,
        level: k,
        rows: RatMatrix::from_rows(&all, dim),
        n_l: n_l(g),
        rank_increments,
    }
}

pub fn kernel_via_equations(g: usize, k: usize) -> KernelLevel {
    let basis = kernels_up_to(g, k).pop().expect("level 0 always present");
    KernelLevel::new(g, k, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::gaussian::quadric::a_position;

    #[test]
    fn genus_four_level_one_is_injective() {
        assert!(kernel_via_equations(4, 1).basis.is_empty());
        assert_eq!(build_paper_equations(4, 1).rows.rows(), 3);
    }

    #[test]
    fn genus_five_level_one() {
        let k = kernel_via_equations(5, 1);
        let mut v = vec![rat(0); 6];
        v[a_position(5, 1, 4).unwrap()] = rat(1);
        v[a_position(5, 2, 3).unwrap()] = rat(-3);
        assert_eq!(k.basis, vec![v]);
    }

    #[test]
    fn dimensions_from_chain_endpoints() {
        assert_eq!(kernel_via_equations(6, 1).dim, 3);
        assert_eq!(kernel_via_equations(7, 2).dim, 1);
        assert_eq!(kernel_via_equations(5, 2).dim, 0);
        assert_eq!(kernel_via_equations(7, 3).dim, 0);
    }

    #[test]
    fn increments_and_counts() {
        let e = build_paper_equations(9, 4);
        assert_eq!(e.rank_increments, vec![13, 9, 5, 1]);
        assert_eq!(e.n_l[&9], 4);
        assert_eq!(e.n_l[&3], 1);
        assert_eq!(e.n_l.values().sum::<usize>(), dim_i2(9));
    }
}
