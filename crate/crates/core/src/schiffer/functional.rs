//! The witness functional `Q -> rho(Q)(xi^{2k+1} . xi^{2k+3})` on `Ker mu_2k`,
//! its kernel `A_{k,0}`, and the diagonal functional
//! `Q -> rho(Q)(xi^{2k+3} . xi^{2k+3})` on `A_{k,0}` with kernel `A_{k,0,0}`.
//!
//! A functional on a subspace has no unique coordinate expression, so each is
//! written on a coordinate subspace containing its domain: the witness on
//! `W_k = {a_ij = 0 : i + j <= 2k+2}`, the diagonal functional on
//! `W'_k = {a_ij = 0 : i + j <= 2k+3}`. Coefficients are read off by
//! evaluating on the basis quadrics of those subspaces; every such
//! evaluation must itself be licensed.

use num_traits::Zero;
use serde::Serialize;

use super::pairing::DerivativePairing;
use super::rho::{rho_from_pairing, rho_pair};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::matrix::{dot, restrict_kernel};
use crate::exact::rational::{self, Rational};
use crate::gaussian::quadric::{a_pairs, dim_i2, QuadricI2};
use crate::gaussian::{kernel_via_equations, KernelLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    /// pair `(2k+1, 2k+3)` on `Ker mu_2k`
    Witness,
    /// pair `(2k+3, 2k+3)` on `A_{k,0}`
    Diagonal,
}

/// One b-coordinate coefficient `phi_{r,m}` in `F = sum phi_{r,m} b_{r,m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BCoefficient {
    pub r: usize,
    pub m: usize,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Functional {
    pub kind: FunctionalKind,
    pub genus: usize,
    pub k: usize,
    pub n: usize,
    pub r: usize,
    /// nonzero b-coefficients, sorted by `(r, m)`
    pub coefficients: Vec<BCoefficient>,
    /// b-indices where the coefficients are expected to live
    pub expected_support: Vec<(usize, usize)>,
    /// the same functional as a row over all a-coordinates
    #[serde(with = "rational::vec_as_string")]
    pub a_row: Vec<Rational>,
    /// values on the domain basis, computed directly from each quadric
    #[serde(with = "rational::vec_as_string")]
    pub values_on_basis: Vec<Rational>,
}

impl Functional {
    pub fn coefficient(&self, r: usize, m: usize) -> Rational {
        self.coefficients
            .iter()
            .find(|c| c.r == r && c.m == m)
            .map(|c| c.value.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_nonzero_on_domain(&self) -> bool {
        self.values_on_basis.iter().any(|v| !v.is_zero())
    }

    pub fn support_contained(&self) -> bool {
        self.coefficients
            .iter()
            .all(|c| self.expected_support.contains(&(c.r, c.m)))
    }

    /// Every expected index carries a nonzero coefficient.
    pub fn support_full(&self) -> bool {
        self.expected_support
            .iter()
            .all(|&(r, m)| !self.coefficient(r, m).is_zero())
    }

    /// Coefficients on the expected support, in order.
    pub fn support_vector(&self) -> Vec<Rational> {
        self.expected_support
            .iter()
            .map(|&(r, m)| self.coefficient(r, m))
            .collect()
    }
}

pub(crate) fn check_level(g: usize, k: usize) -> Result<()> {
    if g < 3 || 2 * k + 3 > g {
        return Err(Error::InvalidLevel { g, k });
    }
    Ok(())
}

/// `{b_{g-2k-3+u, g-u} : u = 1..k+1}`.
pub fn witness_support(g: usize, k: usize) -> Vec<(usize, usize)> {
    (1..=k + 1).map(|u| (g - 2 * k - 3 + u, g - u)).collect()
}

/// `{b_{g-4-2k+u, g-u} : u = 1..k+1}` restricted to indices `1 <= r < m`.
pub fn diagonal_support(g: usize, k: usize) -> Vec<(usize, usize)> {
    (1..=k + 1)
        .filter(|&u| g + u >= 2 * k + 5)
        .map(|u| (g + u - 2 * k - 4, g - u))
        .filter(|&(r, m)| r < m)
        .collect()
}

/// Evaluates the pair `(n, r)` on each basis quadric `Q_ij` with
/// `i + j > min_sum`, giving the functional's row over a-coordinates.
fn row_on_coordinate_subspace(
    g: usize,
    curve: &Curve,
    min_sum: usize,
    n: usize,
    r: usize,
    k: usize,
) -> Result<Vec<Rational>> {
    a_pairs(g)
        .iter()
        .enumerate()
        .map(|(pos, &(i, j))| {
            if i + j <= min_sum {
                return Ok(Rational::zero());
            }
            let q = QuadricI2::basis(g, i, j)?;
            match rho_pair(&q, curve, n, r) {
                Ok(v) => Ok(v.value),
                Err(Error::BeyondThreshold { threshold, .. }) => Err(Error::ThresholdNotExtended {
                    k,
                    index: pos,
                    threshold,
                    expected: n + r - 1,
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Converts an a-row into b-coefficients: `a_ij = -b_{g-j, g-i}`.
fn b_coefficients(g: usize, row: &[Rational]) -> Vec<BCoefficient> {
    let mut out: Vec<BCoefficient> = a_pairs(g)
        .iter()
        .zip(row)
        .filter(|(_, v)| !v.is_zero())
        .map(|(&(i, j), v)| BCoefficient {
            r: g - j,
            m: g - i,
            value: -v.clone(),
        })
        .collect();
    out.sort_by_key(|c| (c.r, c.m));
    out
}

fn direct_values(
    basis: &[Vec<Rational>],
    g: usize,
    curve: &Curve,
    n: usize,
    r: usize,
) -> Result<Vec<Rational>> {
    basis
        .iter()
        .map(|v| {
            let q = QuadricI2::from_a(g, v.clone())?;
            Ok(rho_pair(&q, curve, n, r)?.value)
        })
        .collect()
}

pub fn witness_functional_on(kernel: &KernelLevel, curve: &Curve) -> Result<Functional> {
    let (g, k) = (kernel.genus, kernel.k);
    check_level(g, k)?;
    if curve.genus() != g {
        return Err(Error::GenusMismatch {
            expected: g,
            got: curve.genus(),
        });
    }
    let (n, r) = (2 * k + 1, 2 * k + 3);
    let a_row = row_on_coordinate_subspace(g, curve, 2 * k + 2, n, r, k)?;
    let values_on_basis = direct_values(&kernel.basis, g, curve, n, r)?;
    Ok(Functional {
        kind: FunctionalKind::Witness,
        genus: g,
        k,
        n,
        r,
        coefficients: b_coefficients(g, &a_row),
        expected_support: witness_support(g, k),
        a_row,
        values_on_basis,
    })
}

pub fn witness_functional(g: usize, k: usize, curve: &Curve) -> Result<Functional> {
    check_level(g, k)?;
    witness_functional_on(&kernel_via_equations(g, k), curve)
}

/// The functional's row applied to each basis vector agrees with the direct
/// evaluation; holds whenever the basis lies in the coordinate subspace.
pub fn row_matches_direct(f: &Functional, basis: &[Vec<Rational>]) -> bool {
    basis
        .iter()
        .zip(&f.values_on_basis)
        .all(|(v, x)| &dot(&f.a_row, v) == x)
}

/// `A_{k,0}` inside `Ker mu_2k`, canonical basis.
pub fn hyperplane_ak0_from(kernel: &KernelLevel, witness: &Functional) -> KernelLevel {
    let dim = dim_i2(kernel.genus);
    let basis = restrict_kernel(&kernel.basis, std::slice::from_ref(&witness.a_row), dim);
    KernelLevel::new(kernel.genus, kernel.k, basis)
}

pub fn hyperplane_ak0(g: usize, k: usize, curve: &Curve) -> Result<KernelLevel> {
    check_level(g, k)?;
    let kernel = kernel_via_equations(g, k);
    let w = witness_functional_on(&kernel, curve)?;
    Ok(hyperplane_ak0_from(&kernel, &w))
}

/// Every vector vanishes on the a-coordinates with `i + j <= bound`.
pub fn inside_coordinate_subspace(g: usize, basis: &[Vec<Rational>], bound: usize) -> bool {
    let pairs = a_pairs(g);
    basis.iter().all(|v| {
        pairs
            .iter()
            .zip(v)
            .all(|(&(i, j), x)| i + j > bound || x.is_zero())
    })
}

/// Diagonal functional on a given `A_{k,0}`. Each basis member must vanish to
/// total order `4k+5` before anything is evaluated.
pub fn diag_functional_on(ak0: &KernelLevel, curve: &Curve) -> Result<Functional> {
    let (g, k) = (ak0.genus, ak0.k);
    check_level(g, k)?;
    let n = 2 * k + 3;
    let expected = 4 * k + 5;
    for (index, v) in ak0.basis.iter().enumerate() {
        let q = QuadricI2::from_a(g, v.clone())?;
        let t = DerivativePairing::compute(&q, curve, expected)?.threshold();
        if t.value < expected as i64 {
            return Err(Error::ThresholdNotExtended {
                k,
                index,
                threshold: t.value.max(0) as usize,
                expected,
            });
        }
    }
    let a_row = row_on_coordinate_subspace(g, curve, 2 * k + 3, n, n, k)?;
    let values_on_basis = ak0
        .basis
        .iter()
        .map(|v| {
            let q = QuadricI2::from_a(g, v.clone())?;
            let d = DerivativePairing::compute(&q, curve, 2 * n)?;
            Ok(rho_from_pairing(&d, n, n)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functional {
        kind: FunctionalKind::Diagonal,
        genus: g,
        k,
        n,
        r: n,
        coefficients: b_coefficients(g, &a_row),
        expected_support: diagonal_support(g, k),
        a_row,
        values_on_basis,
    })
}

pub fn diag_functional_on_ak0(g: usize, k: usize, curve: &Curve) -> Result<Functional> {
    let ak0 = hyperplane_ak0(g, k, curve)?;
    diag_functional_on(&ak0, curve)
}

/// `A_{k,0,0}`: kernel of the diagonal functional inside `A_{k,0}`.
pub fn hyperplane_ak00_from(ak0: &KernelLevel, diag: &Functional) -> KernelLevel {
    let dim = dim_i2(ak0.genus);
    let basis = restrict_kernel(&ak0.basis, std::slice::from_ref(&diag.a_row), dim);
    KernelLevel::new(ak0.genus, ak0.k, basis)
}

/// `-8u^3 + 8u^2(k+1) - 4ku - 2k - 3`.
pub fn odd_factor(k: usize, u: usize) -> i64 {
    let (k, u) = (k as i64, u as i64);
    -8 * u * u * u + 8 * u * u * (k + 1) - 4 * k * u - 2 * k - 3
}

/// `omega_i^{(h)}(p)` in the M-frame.
fn omega_derivative(curve: &Curve, i: usize, h: usize) -> Result<Rational> {
    curve.expand_omega(i, h + 1)?.derivative_at_p(h)
}

/// Closed forms for the witness coefficients on `b_{g-2k-3+u, g-u}`:
/// `u <= k`: `w_{g-3-2k+u}^{(4k+4-2u)} w_{g-u}^{(2u-2)} P(k,u) / (2 (4k+4-2u)!)`,
/// `u = k+1`: `-w_{g-2-k}^{(2k+2)} w_{g-k-1}^{(2k)} / (2 (2k+2)!)`.
pub fn lambda_closed_form(curve: &Curve, k: usize) -> Result<Vec<Rational>> {
    let g = curve.genus();
    check_level(g, k)?;
    let mut out = Vec::with_capacity(k + 1);
    for u in 1..=k {
        let h = 4 * k + 4 - 2 * u;
        let w = omega_derivative(curve, g - 3 - 2 * k + u, h)?
            * omega_derivative(curve, g - u, 2 * u - 2)?;
        out.push(w * rational::rat(odd_factor(k, u)) / (rational::rat(2) * rational::factorial_q(h)));
    }
    let w = omega_derivative(curve, g - 2 - k, 2 * k + 2)? * omega_derivative(curve, g - k - 1, 2 * k)?;
    out.push(-w / (rational::rat(2) * rational::factorial_q(2 * k + 2)));
    Ok(out)
}

/// The same coefficients with every derivative pairing weighted by the full
/// `1 / (l! (4k+4-l)!)` of the evaluation formula:
/// `u <= k`: `-w^{(4k+4-2u)} w^{(2u-2)} / ((2u-2)! (4k+4-2u)!)`,
/// `u = k+1`: `-w^{(2k+2)} w^{(2k)} / (2 (2k)! (2k+2)!)`.
pub fn lambda_full_weights(curve: &Curve, k: usize) -> Result<Vec<Rational>> {
    let g = curve.genus();
    check_level(g, k)?;
    let mut out = Vec::with_capacity(k + 1);
    for u in 1..=k {
        let h = 4 * k + 4 - 2 * u;
        let w = omega_derivative(curve, g - 3 - 2 * k + u, h)?
            * omega_derivative(curve, g - u, 2 * u - 2)?;
        out.push(-w / (rational::factorial_q(2 * u - 2) * rational::factorial_q(h)));
    }
    let w = omega_derivative(curve, g - 2 - k, 2 * k + 2)? * omega_derivative(curve, g - k - 1, 2 * k)?;
    out.push(
        -w / (rational::rat(2) * rational::factorial_q(2 * k) * rational::factorial_q(2 * k + 2)),
    );
    Ok(out)
}

/// `Some(c)` with `a = c * b` componentwise, `b` all nonzero.
pub fn proportionality_constant(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    if a.len() != b.len() || a.is_empty() || b.iter().any(|x| x.is_zero()) {
        return None;
    }
    let c = &a[0] / &b[0];
    a.iter().zip(b).all(|(x, y)| x == &(&c * y)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_three_witness() {
        let curve = Curve::default_for_genus(3).unwrap();
        let f = witness_functional(3, 0, &curve).unwrap();
        assert_eq!(f.expected_support, vec![(1, 2)]);
        assert!(f.support_contained() && f.support_full());
        assert!(f.is_nonzero_on_domain());
        assert_eq!(hyperplane_ak0(3, 0, &curve).unwrap().dim, 0);
    }

    #[test]
    fn genus_six_level_one() {
        let curve = Curve::default_for_genus(6).unwrap();
        let f = witness_functional(6, 1, &curve).unwrap();
        assert_eq!(f.expected_support, vec![(2, 5), (3, 4)]);
        assert!(f.support_contained() && f.support_full());
        let kernel = kernel_via_equations(6, 1);
        assert!(row_matches_direct(&f, &kernel.basis));
        assert_eq!(hyperplane_ak0_from(&kernel, &f).dim, 2);
    }

    #[test]
    fn genus_five_diagonal() {
        let curve = Curve::default_for_genus(5).unwrap();
        let d = diag_functional_on_ak0(5, 0, &curve).unwrap();
        assert_eq!(d.expected_support, vec![(2, 4)]);
        assert!(d.support_contained() && d.support_full());
        assert_eq!(d.values_on_basis.len(), 5);
    }

    #[test]
    fn odd_factor_is_odd() {
        for k in 0..10 {
            for u in 1..=k {
                assert_eq!(odd_factor(k, u).rem_euclid(2), 1);
            }
        }
        assert_eq!(odd_factor(1, 1), -1);
    }

    #[test]
    fn level_zero_closed_form_matches() {
        let curve = Curve::default_for_genus(4).unwrap();
        let f = witness_functional(4, 0, &curve).unwrap();
        let lam = lambda_closed_form(&curve, 0).unwrap();
        assert!(proportionality_constant(&f.support_vector(), &lam).is_some());
    }
}
