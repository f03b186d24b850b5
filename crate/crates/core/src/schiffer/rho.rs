//! Threshold-licensed values of the second fundamental form on pairs of odd
//! higher Schiffer variations at `p`.
//!
//! If `D(h,l) = 0` for all `h + l <= m`, then `rho(Q)(xi^n . xi^r)` vanishes for
//! `n + r <= m` and, for `n + r = m + 1`, equals `2 pi i` times
//! `sum_{k<n} D(m+1-k, k) (n-k) / (k! (m+1-k)!)`. Beyond that nothing is known
//! here, and asking is an error. Values are stored as the rational multiplier
//! of `2 pi i`.

use num_traits::Zero;
use serde::Serialize;

use super::pairing::{DerivativePairing, Threshold};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::gaussian::maps::mu_eval_polynomial;
use crate::gaussian::quadric::QuadricI2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoValue {
    /// `rho = value * 2 pi i`
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    pub n: usize,
    pub r: usize,
    /// vanishing of `D` was verified through this total order
    pub licensed_through: usize,
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidIndex(format!(
            "Schiffer index must be odd and positive, got {n}"
        )));
    }
    Ok(())
}

/// The formula at `m = n + r - 1`, reading `D` from a table that reaches
/// total order `n + r`. Licensing must be established by the caller.
pub fn rho_formula(d: &DerivativePairing, n: usize, r: usize) -> Rational {
    let m = n + r - 1;
    (0..n)
        .map(|k| {
            let dv = d.get(m + 1 - k, k);
            if dv.is_zero() {
                return Rational::zero();
            }
            dv * rational::rat((n - k) as i64)
                / (rational::factorial_q(k) * rational::factorial_q(m + 1 - k))
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Evaluation from a precomputed pairing table (bound at least `n + r`).
pub fn rho_from_pairing(d: &DerivativePairing, n: usize, r: usize) -> Result<RhoValue> {
    check_index(n)?;
    check_index(r)?;
    let m = n + r - 1;
    assert!(d.bound() >= n + r, "pairing table too short");
    for t in 0..=m {
        if (0..=t).any(|h| !d.get(h, t - h).is_zero()) {
            return Err(Error::BeyondThreshold {
                n,
                r,
                threshold: t - 1,
            });
        }
    }
    Ok(RhoValue {
        value: rho_formula(d, n, r),
        n,
        r,
        licensed_through: m,
    })
}

pub fn rho_pair(q: &QuadricI2, curve: &Curve, n: usize, r: usize) -> Result<RhoValue> {
    check_index(n)?;
    check_index(r)?;
    let d = DerivativePairing::compute(q, curve, n + r)?;
    rho_from_pairing(&d, n, r)
}

/// Odd pairs `(l, m)`, `l <= m`, with `l + m <= bound`.
pub fn odd_pairs(bound: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut l = 1;
    while 2 * l <= bound {
        let mut m = l;
        while l + m <= bound {
            out.push((l, m));
            m += 2;
        }
        l += 2;
    }
    out
}

/// One isotropy item: `rho(Q)(xi^l . xi^m)` for a licensed pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyItem {
    pub quadric: usize,
    pub l: usize,
    pub m: usize,
    pub value: Option<String>,
    pub error: Option<String>,
    pub ok: bool,
}

/// Every odd pair with `l + m <= 4k+3` on every given quadric must give a
/// licensed zero.
pub fn isotropy_items(quadrics: &[QuadricI2], curve: &Curve, k: usize) -> Result<Vec<IsotropyItem>> {
    let bound = 4 * k + 3;
    let pairs = odd_pairs(bound);
    let mut out = Vec::new();
    for (qi, q) in quadrics.iter().enumerate() {
        let d = DerivativePairing::compute(q, curve, bound + 1)?;
        for &(l, m) in &pairs {
            let item = match rho_from_pairing(&d, l, m) {
                Ok(v) => IsotropyItem {
                    quadric: qi,
                    l,
                    m,
                    ok: v.value.is_zero(),
                    value: Some(rational::to_string(&v.value)),
                    error: None,
                },
                Err(e) => IsotropyItem {
                    quadric: qi,
                    l,
                    m,
                    value: None,
                    error: Some(e.to_string()),
                    ok: false,
                },
            };
            out.push(item);
        }
    }
    Ok(out)
}

/// Threshold reported alongside evaluations in the CLI.
pub fn threshold_for_pair(q: &QuadricI2, curve: &Curve, n: usize, r: usize) -> Result<Threshold> {
    Ok(DerivativePairing::compute(q, curve, n + r)?.threshold())
}

/// `mu_2(Q)(p)` from the x-chart polynomial `P` alone. `mu_2(Q)` is
/// `P(x) (dx/y)^2 dx^2` there; with `y = z` this reads
/// `P(x(z)) x'(z)^4 / z^2 dz^4`, whose value at `z = 0` is returned.
pub fn mu2_at_p_from_x_chart(q: &QuadricI2, curve: &Curve) -> Result<Rational> {
    if q.genus() != curve.genus() {
        return Err(Error::GenusMismatch {
            expected: curve.genus(),
            got: q.genus(),
        });
    }
    let p = mu_eval_polynomial(q, 1)?;
    let x = curve.x_of_z(8);
    let frame = x.derivative().pow(4).shift_down(2)?;
    Ok(x.compose_poly(&p).mul(&frame).coeff(0)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::kernel_via_equations;

    #[test]
    fn genus_three_example() {
        let curve = Curve::default_for_genus(3).unwrap();
        let q = QuadricI2::basis(3, 1, 2).unwrap();
        assert!(rho_pair(&q, &curve, 1, 1).unwrap().value.is_zero());
        assert!(!rho_pair(&q, &curve, 1, 3).unwrap().value.is_zero());
        assert!(matches!(
            rho_pair(&q, &curve, 3, 3),
            Err(Error::BeyondThreshold { threshold: 3, .. })
        ));
        assert!(rho_pair(&q, &curve, 2, 1).is_err());
    }

    #[test]
    fn genus_five_level_one_witness() {
        let curve = Curve::default_for_genus(5).unwrap();
        let q = kernel_via_equations(5, 1).quadrics().remove(0);
        let v = rho_pair(&q, &curve, 3, 5).unwrap();
        assert!(!v.value.is_zero());
        assert_eq!(v, RhoValue { n: 3, r: 5, ..rho_pair(&q, &curve, 5, 3).unwrap() });
    }

    #[test]
    fn first_pair_matches_x_chart() {
        let curve = Curve::random(6, 11).unwrap();
        for q in QuadricI2::all_basis(6) {
            assert!(rho_pair(&q, &curve, 1, 1).unwrap().value.is_zero());
            assert!(mu2_at_p_from_x_chart(&q, &curve).unwrap().is_zero());
        }
    }

    #[test]
    fn pair_listing() {
        assert_eq!(odd_pairs(3), vec![(1, 1)]);
        assert_eq!(odd_pairs(7), vec![(1, 1), (1, 3), (1, 5), (3, 3)]);
    }
}
