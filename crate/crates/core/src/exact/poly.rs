use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{self, Rational};

/// Dense univariate polynomial over the rationals; `coeffs[d]` is the
/// coefficient of `x^d`. Canonical: no trailing zeros, the zero polynomial is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^d`
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut v = vec![Rational::zero(); d + 1];
        v[d] = c;
        Poly::new(v)
    }

    pub fn x_pow(d: usize) -> Self {
        Poly::monomial(Rational::one(), d)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Poly::constant(Rational::one()), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `n`-th formal derivative.
    pub fn derivative(&self, n: usize) -> Poly {
        if n == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= n {
            return Poly::zero();
        }
        let out = (n..self.coeffs.len())
            .map(|d| {
                // d (d-1) ... (d-n+1)
                let falling: BigInt = (d + 1 - n..=d).map(BigInt::from).product();
                &self.coeffs[d] * Rational::from_integer(falling)
            })
            .collect();
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// If `other == c * self` for a rational constant `c`, returns `c`.
    /// Zero is only proportional to zero (with `c = 0`).
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        if self.is_zero() {
            return other.is_zero().then(Rational::zero);
        }
        let lead = self.coeffs.len() - 1;
        let c = other.coeff(lead) / &self.coeffs[lead];
        (self.scale(&c) == *other).then_some(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{}", rational::to_string(c))?,
                1 => write!(f, "({})*x", rational::to_string(c))?,
                _ => write!(f, "({})*x^{}", rational::to_string(c), d)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn derivative_examples() {
        // x^3 -> 3x^2
        assert_eq!(Poly::x_pow(3).derivative(1), p(&[0, 0, 3]));
        // order above degree
        assert_eq!(Poly::x_pow(3).derivative(4), Poly::zero());
        // x^5 - 2x, twice -> 20 x^3
        assert_eq!(p(&[0, -2, 0, 0, 0, 1]).derivative(2), p(&[0, 0, 0, 20]));
        assert_eq!(p(&[4, 1]).derivative(0), p(&[4, 1]));
    }

    #[test]
    fn canonical_zero() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn roots_and_eval() {
        let f = Poly::from_roots(&[rat(1), rat(2), rat(3)]);
        assert_eq!(f, p(&[-6, 11, -6, 1]));
        assert_eq!(f.eval(&rat(2)), rat(0));
        assert_eq!(f.eval(&rat(0)), rat(-6));
    }

    #[test]
    fn ratio() {
        let a = p(&[1, 2]);
        assert_eq!(a.ratio_to(&p(&[-3, -6])), Some(rat(-3)));
        assert_eq!(a.ratio_to(&p(&[1, 3])), None);
        assert_eq!(Poly::zero().ratio_to(&Poly::zero()), Some(rat(0)));
        assert_eq!(Poly::zero().ratio_to(&a), None);
        assert_eq!(a.ratio_to(&Poly::zero()), Some(rat(0)));
    }
}
