//! Truncated power series in one variable `z`.
//!
//! A [`TruncatedSeries`] knows its coefficients for `z^0 .. z^(N-1)` exactly,
//! where `N` is the truncation order; nothing is known at or beyond `N`. Every
//! operation propagates the largest truncation order that is actually
//! determined by its inputs, and reading at or past it is an error.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Always exactly `order` entries.
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series known below `z^order`; missing entries of `coeffs` are zero,
    /// surplus entries are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        TruncatedSeries { coeffs }
    }

    /// `O(z^order)`.
    pub fn big_o(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `z^k + O(z^order)`
    pub fn z_pow(k: usize, order: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = Rational::one();
        Self::new(v, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, index: usize) -> Result<&Rational> {
        self.coeffs.get(index).ok_or(Error::BeyondTruncation {
            index,
            order: self.order(),
        })
    }

    /// All known coefficients.
    pub fn known(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of leading known zero coefficients. This is a lower bound for
    /// the true valuation and equals it whenever it is below the order.
    pub fn leading_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order())
    }

    pub fn valuation(&self) -> Result<usize> {
        let v = self.leading_zeros();
        if v == self.order() {
            Err(Error::UndeterminedValuation { order: self.order() })
        } else {
            Ok(v)
        }
    }

    /// True when every known odd-index coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..order].to_vec(), order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new(
            (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
            n,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new(
            (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
            n,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), self.order())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order())
    }

    pub fn add_scalar(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if let Some(c0) = out.coeffs.first_mut() {
            *c0 += c;
        }
        out
    }

    /// Cauchy product. The result is known below
    /// `min(ord(a) + val(b), ord(b) + val(a))`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.leading_zeros();
        let vb = rhs.leading_zeros();
        let n = (self.order() + vb).min(rhs.order() + va);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().skip(va) {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().skip(vb) {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out, n)
    }

    pub fn pow(&self, e: usize) -> Self {
        // an exact 1 only needs to be known as far as any product can reach
        let cap = self.order() + self.leading_zeros() * e;
        (0..e).fold(Self::constant(Rational::one(), cap), |acc, _| acc.mul(self))
    }

    /// d/dz
    pub fn derivative(&self) -> Self {
        let n = self.order().saturating_sub(1);
        Self::new(
            (1..self.order())
                .map(|i| &self.coeffs[i] * rational::rat(i as i64))
                .collect(),
            n,
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |s, _| s.derivative())
    }

    /// `h!·[z^h]`, the value at `z = 0` of the `h`-th derivative.
    pub fn derivative_at_zero(&self, h: usize) -> Result<Rational> {
        Ok(self.coeff(h)? * rational::factorial_q(h))
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        let n = self.order() + k;
        Self::new(v, n)
    }

    /// Divide by `z^k`; the first `k` known coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(k));
        }
        Ok(Self::new(self.coeffs[k..].to_vec(), self.order() - k))
    }

    /// Multiplicative inverse; the constant term must be known and nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = match self.coeffs.first() {
            Some(a) if !a.is_zero() => a.clone(),
            _ => return Err(Error::NotInvertible),
        };
        let n = self.order();
        let inv0 = Rational::one() / &a0;
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-s * &inv0);
        }
        Ok(Self::new(out, n))
    }

    /// `self / rhs` where `rhs = z^v·u` with `u(0) != 0`; `self` must be
    /// divisible by `z^v`.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let v = rhs.valuation()?;
        let unit = rhs.shift_down(v)?;
        Ok(self.shift_down(v)?.mul(&unit.inverse()?))
    }

    /// `p(self)` by Horner's rule.
    pub fn compose_poly(&self, p: &Poly) -> Self {
        let cs = p.coeffs();
        let cap = self.order() + self.leading_zeros() * cs.len();
        let Some((top, rest)) = cs.split_last() else {
            return Self::big_o(self.order());
        };
        let mut acc = Self::constant(top.clone(), cap);
        for c in rest.iter().rev() {
            acc = acc.mul(self).add_scalar(c);
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            write!(f, "({})*z^{}", rational::to_string(c), i)?;
        }
        if wrote {
            write!(f, " + ")?;
        }
        write!(f, "O(z^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    fn s(c: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&v| rat(v)).collect(), n)
    }

    #[test]
    fn reading_past_order_is_an_error() {
        let a = s(&[1, 2], 3);
        assert_eq!(a.coeff(2).unwrap(), &rat(0));
        assert_eq!(
            a.coeff(3),
            Err(Error::BeyondTruncation { index: 3, order: 3 })
        );
    }

    #[test]
    fn product_order_tracks_valuations() {
        // (z^2 + O(z^5)) * (1 + z + O(z^4)) is known below min(5+0, 4+2) = 5
        let a = s(&[0, 0, 1], 5);
        let b = s(&[1, 1], 4);
        let c = a.mul(&b);
        assert_eq!(c.order(), 5);
        assert_eq!(c.known(), &[rat(0), rat(0), rat(1), rat(1), rat(0)]);
        // O(z^2) * O(z^3): known below 2 + 3
        let z = TruncatedSeries::big_o(2).mul(&TruncatedSeries::big_o(3));
        assert_eq!(z.order(), 5);
        assert_eq!(z.leading_zeros(), 5);
    }

    #[test]
    fn valuation_fails_when_undetermined() {
        assert_eq!(s(&[0, 0, 3], 4).valuation(), Ok(2));
        assert!(matches!(
            s(&[0, 0], 2).valuation(),
            Err(Error::UndeterminedValuation { order: 2 })
        ));
    }

    #[test]
    fn inverse_of_geometric() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let inv = s(&[1, -1], 6).inverse().unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1, 1, 1], 6));
        assert!(s(&[0, 1], 4).inverse().is_err());
    }

    #[test]
    fn division_and_shifts() {
        // (z^3 + z^4) / (z^2 + 2 z^3) = z (1 + z)/(1 + 2z)
        let a = s(&[0, 0, 0, 1, 1], 8);
        let b = s(&[0, 0, 1, 2], 8);
        let q = a.div(&b).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.known()[..4], [rat(0), rat(1), rat(-1), rat(2)]);
        assert!(s(&[1], 3).shift_down(1).is_err());
        assert_eq!(s(&[1], 3).shift_up(2).known(), &[rat(0), rat(0), rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn derivative_values() {
        let a = s(&[5, 0, 3, 1], 4);
        assert_eq!(a.derivative(), s(&[0, 6, 3], 3));
        assert_eq!(a.derivative_at_zero(3).unwrap(), rat(6));
        assert_eq!(a.derivative_at_zero(2).unwrap(), rat(6));
    }

    #[test]
    fn compose_polynomial() {
        // p(t) = 1 + t^2 at t = z/2: 1 + z^2/4
        let p = Poly::new(vec![rat(1), rat(0), rat(1)]);
        let t = TruncatedSeries::new(vec![rat(0), frac(1, 2)], 6);
        let r = t.compose_poly(&p);
        assert_eq!(r.order(), 7);
        assert_eq!(r.known()[..3], [rat(1), rat(0), frac(1, 4)]);
        assert!(r.known()[3..].iter().all(|c| c.is_zero()));
    }
}
