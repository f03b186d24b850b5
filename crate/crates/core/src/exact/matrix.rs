//! Dense rational matrices with exact, deterministic elimination.
//!
//! Forward elimination runs fraction-free (Bareiss) on a denominator-cleared
//! integer copy; only the final back-substitution to reduced row-echelon form
//! works over the rationals. Pivots are always the first nonzero entry in
//! column order, so results never depend on anything but the input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Stacks row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::new(rows, cols, data.iter().map(|&v| rational::rat(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Integer echelon form by Bareiss elimination. Returns the nonzero
    /// echelon rows and their pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = rational::common_denominator(row);
                row.iter()
                    .map(|q| q.numer() * (&d / q.denom()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pv = &pivot_row[col];
            for row in tail.iter_mut() {
                let f = std::mem::take(&mut row[col]);
                for j in col + 1..self.cols {
                    let num = &row[j] * pv - &f * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    row[j] = num / &prev;
                }
            }
            prev = a[r][col].clone();
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Reduced row-echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let (ech, pivots) = self.bareiss_echelon();
        let mut rows: Vec<Vec<Rational>> = ech
            .into_iter()
            .zip(&pivots)
            .map(|(row, &pc)| {
                let inv = Rational::from_integer(row[pc].clone()).recip();
                row.into_iter()
                    .map(|v| Rational::from_integer(v) * &inv)
                    .collect()
            })
            .collect();
        for r in (0..rows.len()).rev() {
            let pc = pivots[r];
            let (above, rest) = rows.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = std::mem::take(&mut row[pc]);
                if f.is_zero() {
                    continue;
                }
                for j in pc + 1..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
        }
        (rows, pivots)
    }

    /// Right null space in canonical form: the reduced row-echelon basis of
    /// the kernel, read as row vectors. Empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<Rational>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in r.iter().zip(&pivots) {
                    v[pc] = -row[f].clone();
                }
                v
            })
            .collect();
        canonical_basis(&raw, self.cols)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(rational::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn matrix_rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

/// Reduced row-echelon basis of the span of `vectors` (each of length `dim`).
/// Two families span the same subspace iff their canonical bases are equal.
pub fn canonical_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    RatMatrix::from_rows(vectors, dim).rref().0
}

/// Vectors `sum y_i basis_i` for `y` in the kernel of `constraints * basis^T`,
/// in canonical form: the part of span(basis) annihilated by `constraints`.
pub fn restrict_kernel(
    basis: &[Vec<Rational>],
    constraints: &[Vec<Rational>],
    dim: usize,
) -> Vec<Vec<Rational>> {
    if basis.is_empty() {
        return Vec::new();
    }
    if constraints.is_empty() {
        return canonical_basis(basis, dim);
    }
    let reduced: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|c| basis.iter().map(|b| dot(c, b)).collect())
        .collect();
    let ys = RatMatrix::from_rows(&reduced, basis.len()).kernel_basis();
    let vecs: Vec<Vec<Rational>> = ys
        .iter()
        .map(|y| {
            let mut v = vec![Rational::zero(); dim];
            for (yi, b) in y.iter().zip(basis) {
                if yi.is_zero() {
                    continue;
                }
                for (vj, bj) in v.iter_mut().zip(b) {
                    *vj += yi * bj;
                }
            }
            v
        })
        .collect();
    canonical_basis(&vecs, dim)
}

/// The unique `y` with `m y = v`, for `m` injective; `None` if `v` is not in
/// the column space.
pub fn solve_injective(m: &RatMatrix, v: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(v.len(), m.rows(), "dimension mismatch");
    let n = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, -v[i].clone());
    }
    let ker = aug.kernel_basis();
    // canonical basis: a solution row is the one whose last entry is nonzero,
    // and it is the last row if present
    let sol = ker.iter().find(|k| !k[n].is_zero())?;
    assert!(ker.len() == 1, "matrix is not injective");
    let scale = sol[n].recip();
    Some(sol[..n].iter().map(|x| x * &scale).collect())
}

/// Coordinates of `v` in the canonical (RREF) basis `basis`, or `None` if `v`
/// is outside the span.
pub fn coordinates_in(
    basis: &[Vec<Rational>],
    v: &[Rational],
) -> Option<Vec<Rational>> {
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|c| !c.is_zero()).expect("zero basis row"))
        .collect();
    let coeffs: Vec<Rational> = pivots.iter().map(|&p| v[p].clone()).collect();
    let mut recon = vec![Rational::zero(); v.len()];
    for (c, b) in coeffs.iter().zip(basis) {
        for (r, bj) in recon.iter_mut().zip(b) {
            *r += c * bj;
        }
    }
    (recon == v).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let z = RatMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(z, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let k = RatMatrix::from_i64(1, 2, &[3, 1]).kernel_basis();
        assert_eq!(k, vec![v(&[1, -3])]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(4).rank(), 4);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn rref_with_fractions() {
        let m = RatMatrix::new(
            2,
            3,
            vec![frac(1, 2), rat(1), rat(0), rat(0), frac(2, 3), rat(4)],
        );
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[0], v(&[1, 0, -12]));
        assert_eq!(r[1], v(&[0, 1, 6]));
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![rat(1), frac(-1, 2), frac(1, 12)]]);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn restriction_and_coordinates() {
        // span{e0, e1} cut by x0 + x1 + x2 = 0
        let basis = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let r = restrict_kernel(&basis, &[v(&[1, 1, 1])], 3);
        assert_eq!(r, vec![v(&[1, -1, 0])]);
        assert_eq!(coordinates_in(&r, &v(&[2, -2, 0])), Some(v(&[2])));
        assert_eq!(coordinates_in(&r, &v(&[1, 0, 0])), None);
    }
}
