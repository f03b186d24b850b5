//! `I_2`, the chain of even Gaussian maps of the canonical bundle and its
//! kernels, odd maps, and the factorization through the pencil.

pub mod equations;
pub mod factorization;
pub mod maps;
pub mod oracle;
pub mod quadric;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::rational::{self, Rational};
use quadric::{a_pairs, dim_i2, QuadricI2};

pub use equations::{build_paper_equations, kernel_via_equations, EquationSystem};
pub use factorization::{b_support_check, factorization_check, factorization_check_z};
pub use maps::{mu_eval_polynomial, odd_kernel_and_rank};
pub use oracle::kernel_via_polynomial_oracle;
pub use quadric::BCoords;

/// Highest level with a nonzero domain: `floor((g-1)/2)`.
pub fn max_level(g: usize) -> usize {
    (g - 1) / 2
}

/// `(g-1)(g-2)/2 - k(2g-2k-3)`, valid for `k <= max_level(g)`.
pub fn dim_ker_formula(g: usize, k: usize) -> i64 {
    let (g, k) = (g as i64, k as i64);
    (g - 1) * (g - 2) / 2 - k * (2 * g - 2 * k - 3)
}

/// `2g - (4k+1)`, valid for `k <= max_level(g)`.
pub fn rank_formula(g: usize, k: usize) -> i64 {
    2 * g as i64 - (4 * k as i64 + 1)
}

/// One level of the chain: a canonical basis of `Ker mu_2k` in a-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLevel {
    pub genus: usize,
    pub k: usize,
    pub dim: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl KernelLevel {
    pub fn new(genus: usize, k: usize, basis: Vec<Vec<Rational>>) -> Self {
        KernelLevel {
            genus,
            k,
            dim: basis.len(),
            basis,
        }
    }

    pub fn quadrics(&self) -> Vec<QuadricI2> {
        self.basis
            .iter()
            .map(|v| QuadricI2::from_a(self.genus, v.clone()).expect("valid a-vector"))
            .collect()
    }

    /// Basis vectors as `{"i,j": "p/q"}` maps (zero entries omitted).
    pub fn basis_maps(&self) -> Vec<BTreeMap<String, String>> {
        self.quadrics().iter().map(QuadricI2::a_map).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Equations,
    Oracle,
}

/// `Ker mu_0 ⊇ Ker mu_2 ⊇ ...` down to the last nonzero-domain level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelChain {
    pub genus: usize,
    pub levels: Vec<KernelLevel>,
    /// `rank mu_2k` for each level; level 0 is measured on `S^2 H^0(K)`
    pub ranks: Vec<usize>,
}

impl KernelChain {
    pub fn compute(g: usize, method: Method) -> Self {
        let top = max_level(g);
        let bases = match method {
            Method::Equations => equations::kernels_up_to(g, top),
            Method::Oracle => oracle::kernels_up_to(g, top),
        };
        let levels: Vec<KernelLevel> = bases
            .into_iter()
            .enumerate()
            .map(|(k, b)| KernelLevel::new(g, k, b))
            .collect();
        let mut ranks = vec![oracle::rank_mu0(g)];
        ranks.extend(levels.windows(2).map(|w| w[0].dim - w[1].dim));
        KernelChain {
            genus: g,
            levels,
            ranks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub g: usize,
    pub k: usize,
    pub rank: usize,
    pub dim_ker: usize,
    pub dim_domain: usize,
    pub rank_formula_ok: bool,
}

/// Ranks and kernel dimensions for `g_min <= g <= g_max`,
/// `0 <= k <= floor((g-1)/2)`; beyond that level the domain is zero.
pub fn rank_table(g_min: usize, g_max: usize) -> Vec<RankRow> {
    assert!(3 <= g_min && g_min <= g_max, "need 3 <= g_min <= g_max");
    (g_min..=g_max).flat_map(rank_rows).collect()
}

pub fn rank_rows(g: usize) -> Vec<RankRow> {
    let chain = KernelChain::compute(g, Method::Equations);
    chain
        .levels
        .iter()
        .zip(&chain.ranks)
        .map(|(lvl, &rank)| {
            let dim_domain = if lvl.k == 0 {
                g * (g + 1) / 2
            } else {
                chain.levels[lvl.k - 1].dim
            };
            RankRow {
                g,
                k: lvl.k,
                rank,
                dim_ker: lvl.dim,
                dim_domain,
                rank_formula_ok: rank as i64 == rank_formula(g, lvl.k)
                    && lvl.dim as i64 == dim_ker_formula(g, lvl.k),
            }
        })
        .collect()
}

pub fn basis_quadric(g: usize, i: usize, j: usize) -> crate::Result<QuadricI2> {
    QuadricI2::basis(g, i, j)
}

/// Nonzero a-coordinates keyed `"i,j"`, for reports.
pub fn a_vector_map(g: usize, v: &[Rational]) -> BTreeMap<String, String> {
    a_pairs(g)
        .iter()
        .zip(v)
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(&(i, j), x)| (format!("{i},{j}"), rational::to_string(x)))
        .collect()
}

pub fn i2_dimension(g: usize) -> usize {
    dim_i2(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rank_rows() {
        let rows = rank_table(3, 5);
        assert!(rows.iter().all(|r| r.rank_formula_ok));
        let r30 = rows.iter().find(|r| r.g == 3 && r.k == 0).unwrap();
        assert_eq!(r30.rank, 5);
        let r52 = rows.iter().find(|r| r.g == 5 && r.k == 2).unwrap();
        assert_eq!((r52.rank, r52.dim_ker), (1, 0));
    }

    #[test]
    fn genus_ten_tail() {
        let rows = rank_rows(10);
        let r3 = rows.iter().find(|r| r.k == 3).unwrap();
        let r4 = rows.iter().find(|r| r.k == 4).unwrap();
        assert_eq!((r3.rank, r3.dim_ker), (7, 3));
        assert_eq!((r4.rank, r4.dim_ker), (3, 0));
    }
}
