//! Kernels of the even Gaussian maps computed straight from the local
//! definition, with no use of the closed-form equations.
//!
//! Work on `S^2 H^0(K)` in the monomial basis `alpha_a . alpha_b`, take
//! `f_a = x^a` in the x-chart, and impose at level `j` the identities
//! `sum c_ab f_a^(h) f_b^(n) == 0` (coefficient-wise) for all `h + n <= 2j+1`.
//! Level 0 is `I_2` itself. The resulting subspaces are then pulled back to
//! a-coordinates.

use num_traits::Zero;

use super::quadric::{a_to_s2_matrix, dim_i2, s2_pairs};
use super::KernelLevel;
use crate::exact::matrix::{canonical_basis, restrict_kernel, solve_injective, RatMatrix};
use crate::exact::rational::{self, Rational};
use crate::exact::Poly;

/// `table[a][h] = (x^a)^(h)`.
pub fn monomial_derivatives(g: usize, max_h: usize) -> Vec<Vec<Poly>> {
    (0..g)
        .map(|a| (0..=max_h).map(|h| Poly::x_pow(a).derivative(h)).collect())
        .collect()
}

/// Constraint rows over `S^2` coordinates expressing
/// `sum c_ab f_a^(h) f_b^(n) == 0` for all `h + n <= bound`.
fn s2_rows(g: usize, bound: usize) -> Vec<Vec<Rational>> {
    let pairs = s2_pairs(g);
    let d = monomial_derivatives(g, bound);
    let half = rational::frac(1, 2);
    let mut rows = Vec::new();
    for h in 0..=bound {
        for n in 0..=bound - h {
            // coefficient polynomial of each S2 coordinate
            let polys: Vec<Poly> = pairs
                .iter()
                .map(|&(a, b)| {
                    if a == b {
                        &d[a][h] * &d[a][n]
                    } else {
                        (&(&d[a][h] * &d[b][n]) + &(&d[b][h] * &d[a][n])).scale(&half)
                    }
                })
                .collect();
            for deg in 0..2 * g {
                let row: Vec<Rational> = polys.iter().map(|p| p.coeff(deg)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Oracle kernels of levels `0..=k` in `S^2` coordinates.
pub fn s2_kernels_up_to(g: usize, k: usize) -> Vec<Vec<Vec<Rational>>> {
    let dim = s2_pairs(g).len();
    let full = RatMatrix::identity(dim).row_vecs();
    let mut out = vec![restrict_kernel(&full, &s2_rows(g, 1), dim)];
    for j in 1..=k {
        let next = restrict_kernel(&out[j - 1], &s2_rows(g, 2 * j + 1), dim);
        out.push(next);
    }
    out
}

/// `rank mu_0` on `S^2 H^0(K)`, computed directly.
pub fn rank_mu0(g: usize) -> usize {
    RatMatrix::from_rows(&s2_rows(g, 0), s2_pairs(g).len()).rank()
}

/// Oracle kernels of levels `0..=k`, pulled back to a-coordinates.
pub fn kernels_up_to(g: usize, k: usize) -> Vec<Vec<Vec<Rational>>> {
    let a2s = a_to_s2_matrix(g);
    s2_kernels_up_to(g, k)
        .iter()
        .map(|level| {
            let a_vecs: Vec<Vec<Rational>> = level
                .iter()
                .map(|c| solve_injective(&a2s, c).expect("oracle kernel lies in I_2"))
                .collect();
            canonical_basis(&a_vecs, dim_i2(g))
        })
        .collect()
}

pub fn kernel_via_polynomial_oracle(g: usize, k: usize) -> KernelLevel {
    let basis = kernels_up_to(g, k).pop().expect("level 0 always present");
    KernelLevel::new(g, k, basis)
}
