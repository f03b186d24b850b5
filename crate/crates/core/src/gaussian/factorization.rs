//! The factorization `mu_{2k+2}(Q) = (k+1) mu_{1,L}(s ^ t) mu_{2k+1,M}(psi^-1 Q)`
//! for `Q` in `Ker mu_2k`, and the b-coordinate support property of kernels.
//!
//! With `alpha_a = s m_a`, `alpha_{a-1} = t m_a` the local frames are
//! * x-chart: `f_s = x`, `f_t = 1`, `m_i = x^{i-1}`, so `mu_{1,L}(s ^ t) = 1`;
//! * z-chart: `f_s = x(z)`, `f_t = 1`, `m_i = g_{alpha_i} / x`, so
//!   `mu_{1,L}(s ^ t) = x'(z)`.
//!
//! In both charts the identity then holds with constant exactly `+1`
//! ([`FRAME_CONSTANT`]).

use num_traits::{One, Zero};
use serde::Serialize;

use super::maps::{in_even_kernel, mu_eval_polynomial};
use super::quadric::{a_pairs, QuadricI2};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{Poly, TruncatedSeries};

/// Constant relating the two sides under this crate's frame conventions.
pub const FRAME_CONSTANT: i64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorOutcome {
    /// both sides vanish
    BothZero,
    /// `lhs = c * rhs`, `c` written as a rational string
    Proportional { constant: String },
    /// not proportional
    Mismatch,
}

/// `(-1)^k sum_{i<j} a_ij (m_i^(k+1) m_j^(k) - m_j^(k+1) m_i^(k))` with
/// `m_i = x^{i-1}`.
pub fn mu_odd_m_poly(q: &QuadricI2, k: usize) -> Poly {
    let g = q.genus();
    let m = |i: usize, h: usize| Poly::x_pow(i - 1).derivative(h);
    let mut acc = Poly::zero();
    for (&(i, j), a) in a_pairs(g).iter().zip(q.a()) {
        if a.is_zero() {
            continue;
        }
        let t = &(&m(i, k + 1) * &m(j, k)) - &(&m(j, k + 1) * &m(i, k));
        acc = &acc + &t.scale(a);
    }
    if k % 2 == 1 {
        -&acc
    } else {
        acc
    }
}

/// Compares both sides in the x-chart.
pub fn factorization_outcome(q: &QuadricI2, k: usize) -> Result<FactorOutcome> {
    if !in_even_kernel(q, k) {
        return Err(Error::NotInKernel(2 * k));
    }
    let lhs = mu_eval_polynomial(q, k + 1)?;
    // mu_{1,L}(s ^ t) = 1 in this chart
    let rhs = mu_odd_m_poly(q, k).scale(&rational::rat(k as i64 + 1));
    Ok(match (lhs.is_zero(), rhs.is_zero()) {
        (true, true) => FactorOutcome::BothZero,
        (false, false) => match rhs.ratio_to(&lhs) {
            Some(c) => FactorOutcome::Proportional {
                constant: rational::to_string(&c),
            },
            None => FactorOutcome::Mismatch,
        },
        _ => FactorOutcome::Mismatch,
    })
}

/// True iff the identity holds with the pinned frame constant.
pub fn factorization_check(q: &QuadricI2, k: usize) -> Result<bool> {
    Ok(match factorization_outcome(q, k)? {
        FactorOutcome::BothZero => true,
        FactorOutcome::Proportional { constant } => {
            constant == rational::to_string(&rational::rat(FRAME_CONSTANT))
        }
        FactorOutcome::Mismatch => false,
    })
}

/// Series on one curve shared by every quadric of a level in the z-chart
/// comparison: derivatives of `g_alpha`, of `m_i = g_alpha_i / x`, and `x'`.
pub struct ZChartSeries {
    genus: usize,
    k: usize,
    order: usize,
    alpha_d: Vec<TruncatedSeries>,
    /// `(m_i^(k+1), m_i^(k))`, absent for `i = 0`
    m_d: Vec<Option<(TruncatedSeries, TruncatedSeries)>>,
    xp: TruncatedSeries,
}

impl ZChartSeries {
    pub fn new(curve: &Curve, k: usize) -> Result<Self> {
        let g = curve.genus();
        let order = curve.default_order(2 * k + 2) + 2;
        let alpha: Vec<TruncatedSeries> = (0..g)
            .map(|i| curve.expand_canonical(i, order).map(|e| e.series))
            .collect::<Result<_>>()?;
        let x = curve.x_of_z(order + 2);
        let m_d = alpha
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (i >= 1).then(|| {
                    let m = a.div(&x).expect("alpha_i vanishes to order 2i");
                    (m.nth_derivative(k + 1), m.nth_derivative(k))
                })
            })
            .collect();
        Ok(ZChartSeries {
            genus: g,
            k,
            order,
            alpha_d: alpha.iter().map(|s| s.nth_derivative(k + 1)).collect(),
            m_d,
            xp: x.derivative(),
        })
    }

    /// Compares both sides on every coefficient they determine; returns the
    /// verdict and the number of compared coefficients.
    pub fn check(&self, q: &QuadricI2) -> Result<(bool, usize)> {
        if q.genus() != self.genus {
            return Err(Error::GenusMismatch {
                expected: self.genus,
                got: q.genus(),
            });
        }
        let k = self.k;
        if !in_even_kernel(q, k) {
            return Err(Error::NotInKernel(2 * k));
        }
        let g = self.genus;
        // contract one index first: g products instead of g^2
        let c = q.sym_tensor();
        let mut lhs = TruncatedSeries::big_o(self.order);
        for a in 0..g {
            let mut row = TruncatedSeries::big_o(self.order);
            for b in 0..g {
                if !c[a][b].is_zero() {
                    row = row.add(&self.alpha_d[b].scale(&c[a][b]));
                }
            }
            if c[a].iter().any(|x| !x.is_zero()) {
                lhs = lhs.add(&self.alpha_d[a].mul(&row));
            }
        }
        if (k + 1) % 2 == 1 {
            lhs = lhs.neg();
        }

        // sum_{i<j} a_ij (m_i' m_j - m_j' m_i) = sum_{i,j} A_ij m_i' m_j, A antisymmetric
        let mut anti = vec![vec![Rational::zero(); g]; g];
        for (&(i, j), a) in a_pairs(g).iter().zip(q.a()) {
            anti[i][j] = a.clone();
            anti[j][i] = -a.clone();
        }
        let mut inner = TruncatedSeries::big_o(self.order);
        for i in 1..g {
            let mut row = TruncatedSeries::big_o(self.order);
            for j in 1..g {
                if !anti[i][j].is_zero() {
                    row = row.add(&self.m_d[j].as_ref().unwrap().1.scale(&anti[i][j]));
                }
            }
            if anti[i].iter().any(|x| !x.is_zero()) {
                inner = inner.add(&self.m_d[i].as_ref().unwrap().0.mul(&row));
            }
        }
        if k % 2 == 1 {
            inner = inner.neg();
        }
        let rhs = self
            .xp
            .mul(&inner)
            .scale(&(rational::rat(k as i64 + 1) * rational::rat(FRAME_CONSTANT)));

        let n = lhs.order().min(rhs.order());
        Ok((lhs.truncate(n) == rhs.truncate(n), n))
    }
}

/// The same identity as power series in `z = y` on a specific curve, compared
/// on every coefficient both sides determine. Returns the number of compared
/// coefficients alongside the verdict.
pub fn factorization_check_z(q: &QuadricI2, k: usize, curve: &Curve) -> Result<(bool, usize)> {
    if curve.genus() != q.genus() {
        return Err(Error::GenusMismatch {
            expected: curve.genus(),
            got: q.genus(),
        });
    }
    if !in_even_kernel(q, k) {
        return Err(Error::NotInKernel(2 * k));
    }
    ZChartSeries::new(curve, k)?.check(q)
}

/// True iff every `b_{r,m}` with `r + m >= 2g - (2k+2)` vanishes.
pub fn b_support_check(q: &QuadricI2, k: usize) -> Result<bool> {
    if !in_even_kernel(q, k) {
        return Err(Error::NotInKernel(2 * k));
    }
    let g = q.genus();
    let bound = (2 * g).saturating_sub(2 * k + 2);
    Ok(q.b_coords()
        .values
        .iter()
        .all(|(&(r, m), v)| r + m < bound || v.is_zero()))
}

/// `mu_{1,L}(s ^ t)` in the x-chart (identically one).
pub fn mu1_pencil_x_chart() -> Rational {
    Rational::one()
}
