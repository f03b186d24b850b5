//! Values of the Gaussian maps in the x-chart, where `alpha_a` is represented
//! by `f_a = x^a` and every map output is a polynomial in `x`.

use num_traits::Zero;

use super::oracle::monomial_derivatives;
use super::quadric::QuadricI2;
use crate::error::{Error, Result};
use crate::exact::matrix::{restrict_kernel, RatMatrix};
use crate::exact::rational::Rational;
use crate::exact::Poly;

/// `sum c_ab f_a^(h) f_b^(n)` for the symmetric tensor of `q`.
pub fn pairing_poly(q: &QuadricI2, h: usize, n: usize) -> Poly {
    let g = q.genus();
    let d = monomial_derivatives(g, h.max(n));
    let mut acc = Poly::zero();
    for (a, row) in q.sym_tensor().iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&d[a][h] * &d[b][n]).scale(c);
        }
    }
    acc
}

/// Whether `q` lies in `Ker mu_2k`, tested on the defining identities
/// (`h + n <= 2k+1`). Every element of `I_2` passes for `k = 0`.
pub fn in_even_kernel(q: &QuadricI2, k: usize) -> bool {
    let bound = 2 * k + 1;
    (0..=bound).all(|h| (0..=bound - h).all(|n| pairing_poly(q, h, n).is_zero()))
}

/// The x-chart polynomial of `mu_2k(q)`, `(-1)^n sum c f^(2k-n) f^(n)`.
/// The value is computed for `n = 0, k, 2k` and the three must agree.
pub fn mu_eval_polynomial(q: &QuadricI2, k: usize) -> Result<Poly> {
    if k >= 1 && !in_even_kernel(q, k - 1) {
        return Err(Error::NotInPreviousKernel(2 * k - 2));
    }
    let signed = |n: usize| {
        let p = pairing_poly(q, 2 * k - n, n);
        if n % 2 == 1 {
            -&p
        } else {
            p
        }
    };
    let v = signed(0);
    assert_eq!(v, signed(k), "mu_{} differs between n = 0 and n = {k}", 2 * k);
    assert_eq!(v, signed(2 * k), "mu_{} differs between n = 0 and n = {}", 2 * k, 2 * k);
    Ok(v)
}

/// Index pairs `(i, j)`, `0 <= i < j <= g-1`: coordinates on the exterior
/// square of `H^0(K)`.
pub fn wedge_pairs(g: usize) -> Vec<(usize, usize)> {
    (0..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).collect()
}

fn wedge_rows(g: usize, bound: usize) -> Vec<Vec<Rational>> {
    let pairs = wedge_pairs(g);
    let d = monomial_derivatives(g, bound);
    let mut rows = Vec::new();
    for h in 0..=bound {
        for n in 0..=bound - h {
            let polys: Vec<Poly> = pairs
                .iter()
                .map(|&(i, j)| &(&d[i][h] * &d[j][n]) - &(&d[i][n] * &d[j][h]))
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

/// `(dim Ker mu_{2k+1}, rank mu_{2k+1})` on its domain (the exterior square
/// for `k = 0`, `Ker mu_{2k-1}` otherwise).
pub fn odd_kernel_and_rank(g: usize, k: usize) -> (usize, usize) {
    let dim = wedge_pairs(g).len();
    let mut domain = RatMatrix::identity(dim).row_vecs();
    let mut kernel = restrict_kernel(&domain, &wedge_rows(g, 2), dim);
    for j in 1..=k {
        domain = kernel;
        kernel = restrict_kernel(&domain, &wedge_rows(g, 2 * j + 2), dim);
    }
    (kernel.len(), domain.len() - kernel.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::equations::kernel_via_equations;

    #[test]
    fn mu2_of_genus_three_quadric() {
        let q = QuadricI2::basis(3, 1, 2).unwrap();
        let p = mu_eval_polynomial(&q, 1).unwrap();
        assert!(!p.is_zero());
        assert!(mu_eval_polynomial(&q, 0).unwrap().is_zero());
        assert_eq!(
            mu_eval_polynomial(&q, 2).unwrap_err(),
            Error::NotInPreviousKernel(2)
        );
    }

    #[test]
    fn kernel_elements_map_to_zero() {
        let g = 7;
        for v in kernel_via_equations(g, 1).basis {
            let q = QuadricI2::from_a(g, v).unwrap();
            assert!(in_even_kernel(&q, 1));
            assert!(mu_eval_polynomial(&q, 1).unwrap().is_zero());
            assert!(!mu_eval_polynomial(&q, 2).is_err());
        }
    }

    #[test]
    fn odd_ranks() {
        assert_eq!(odd_kernel_and_rank(5, 0).1, 7);
        assert_eq!(odd_kernel_and_rank(8, 0).1, 13);
        let (ker, rank) = odd_kernel_and_rank(6, 0);
        assert_eq!(ker + rank, 15);
    }
}
