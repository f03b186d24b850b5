//! Derivative pairings `D(h,l) = sum c_ab alpha_a^(h)(p) alpha_b^(l)(p)` of a
//! quadric at the Weierstrass point, in the K-frame of the coordinate `z = y`.

use num_traits::Zero;
use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::gaussian::quadric::QuadricI2;

/// `D(h, l)` for all `h + l <= bound`, for one quadric on one curve.
#[derive(Clone, Debug)]
pub struct DerivativePairing {
    bound: usize,
    /// `table[h][l]`, present for `h + l <= bound`
    table: Vec<Vec<Rational>>,
}

impl DerivativePairing {
    pub fn compute(q: &QuadricI2, curve: &Curve, bound: usize) -> Result<Self> {
        check_genus(q, curve)?;
        let jets = curve.k_frame_jets(bound + 1);
        let c = q.sym_tensor();
        let g = q.genus();
        // e[a][l] = sum_b c_ab d_b(l)
        let e: Vec<Vec<Rational>> = (0..g)
            .map(|a| {
                (0..=bound)
                    .map(|l| {
                        (0..g)
                            .filter(|&b| !c[a][b].is_zero() && !jets[b][l].is_zero())
                            .fold(Rational::zero(), |acc, b| acc + &c[a][b] * &jets[b][l])
                    })
                    .collect()
            })
            .collect();
        let table = (0..=bound)
            .map(|h| {
                (0..=bound - h)
                    .map(|l| {
                        (0..g)
                            .filter(|&a| !jets[a][h].is_zero() && !e[a][l].is_zero())
                            .fold(Rational::zero(), |acc, a| acc + &jets[a][h] * &e[a][l])
                    })
                    .collect()
            })
            .collect();
        Ok(DerivativePairing { bound, table })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, h: usize, l: usize) -> &Rational {
        assert!(h + l <= self.bound, "D({h},{l}) beyond computed bound {}", self.bound);
        &self.table[h][l]
    }

    /// Largest `m <= bound` with `D(h,l) = 0` for all `h + l <= m`.
    pub fn threshold(&self) -> Threshold {
        for m in 0..=self.bound {
            if (0..=m).any(|h| !self.table[h][m - h].is_zero()) {
                return Threshold {
                    value: m as i64 - 1,
                    at_cap: false,
                };
            }
        }
        Threshold {
            value: self.bound as i64,
            at_cap: true,
        }
    }
}

/// Vanishing threshold; `at_cap` means vanishing persisted up to the cap, so
/// the true threshold may be larger. `-1` means `D(0,0) != 0`, which no
/// element of `I_2` can produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub value: i64,
    pub at_cap: bool,
}

fn check_genus(q: &QuadricI2, curve: &Curve) -> Result<()> {
    if q.genus() != curve.genus() {
        return Err(Error::GenusMismatch {
            expected: curve.genus(),
            got: q.genus(),
        });
    }
    Ok(())
}

pub fn derivative_sum(q: &QuadricI2, curve: &Curve, h: usize, l: usize) -> Result<Rational> {
    Ok(DerivativePairing::compute(q, curve, h + l)?.get(h, l).clone())
}

pub fn vanishing_threshold(q: &QuadricI2, curve: &Curve, cap: usize) -> Result<Threshold> {
    Ok(DerivativePairing::compute(q, curve, cap)?.threshold())
}

/// Threshold with the default cap `4k+8`, doubled once if vanishing persists.
pub fn vanishing_threshold_auto(q: &QuadricI2, curve: &Curve, k: usize) -> Result<Threshold> {
    let cap = 4 * k + 8;
    let t = vanishing_threshold(q, curve, cap)?;
    if t.at_cap {
        vanishing_threshold(q, curve, 2 * cap)
    } else {
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::kernel_via_equations;

    #[test]
    fn basic_vanishing() {
        let curve = Curve::default_for_genus(5).unwrap();
        for q in QuadricI2::all_basis(5) {
            let d = DerivativePairing::compute(&q, &curve, 6).unwrap();
            assert!(d.get(0, 0).is_zero());
            for h in 0..=6 {
                for l in 0..=6 - h {
                    assert_eq!(d.get(h, l), d.get(l, h));
                }
            }
        }
        let z = vanishing_threshold(&QuadricI2::zero(5), &curve, 9).unwrap();
        assert_eq!(z, Threshold { value: 9, at_cap: true });
    }

    #[test]
    fn genus_five_kernel_threshold() {
        let curve = Curve::default_for_genus(5).unwrap();
        let q = kernel_via_equations(5, 1).quadrics().remove(0);
        let t = vanishing_threshold_auto(&q, &curve, 1).unwrap();
        assert_eq!(t, Threshold { value: 7, at_cap: false });
    }

    #[test]
    fn generic_quadric_threshold() {
        let curve = Curve::default_for_genus(5).unwrap();
        let q = QuadricI2::all_basis(5)
            .into_iter()
            .fold(QuadricI2::zero(5), |acc, b| acc.add(&b));
        assert_eq!(vanishing_threshold_auto(&q, &curve, 0).unwrap().value, 3);
    }
}
