//! Quadrics through the canonical image: the space `I_2` with its basis
//! `Q_ij = alpha_i . alpha_{j-1} - alpha_j . alpha_{i-1}` (`1 <= i < j <= g-1`,
//! `.` the symmetric product, `a . b = (a (x) b + b (x) a)/2`).
//!
//! A quadric is stored both by its coordinates `a_ij` on that basis and by the
//! symmetric tensor `c` over `alpha_0 .. alpha_{g-1}`. The latter is what every
//! local computation consumes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{Poly, RatMatrix};

/// Index pairs `(i, j)`, `1 <= i < j <= g-1`, in lexicographic order. This is
/// the coordinate order of every a-vector.
pub fn a_pairs(g: usize) -> Vec<(usize, usize)> {
    (1..g)
        .flat_map(|i| (i + 1..g).map(move |j| (i, j)))
        .collect()
}

pub fn dim_i2(g: usize) -> usize {
    (g - 1) * (g - 2) / 2
}

pub fn a_position(g: usize, i: usize, j: usize) -> Option<usize> {
    if !(1 <= i && i < j && j < g) {
        return None;
    }
    // pairs with first index i' < i come first
    let before: usize = (1..i).map(|r| g - 1 - r).sum();
    Some(before + (j - i - 1))
}

/// Pairs `(a, b)` with `0 <= a <= b <= g-1`: coordinates on `S^2 H^0(K)` in
/// the monomial basis `alpha_a . alpha_b`.
pub fn s2_pairs(g: usize) -> Vec<(usize, usize)> {
    (0..g).flat_map(|a| (a..g).map(move |b| (a, b))).collect()
}

/// Matrix (columns = a-coordinates) sending an a-vector to its `S^2`
/// coordinates.
pub fn a_to_s2_matrix(g: usize) -> RatMatrix {
    let s2 = s2_pairs(g);
    let pos = |a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        s2.iter().position(|&p| p == (a, b)).expect("valid S2 pair")
    };
    let pairs = a_pairs(g);
    let mut m = RatMatrix::zeros(s2.len(), pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        let p = pos(i, j - 1);
        m.set(p, col, m.get(p, col) + Rational::one());
        let q = pos(j, i - 1);
        m.set(q, col, m.get(q, col) - Rational::one());
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadricI2 {
    genus: usize,
    /// coordinates on `Q_ij`, ordered as [`a_pairs`]
    a: Vec<Rational>,
    /// symmetric `g x g` tensor over the canonical basis
    c: Vec<Vec<Rational>>,
}

impl QuadricI2 {
    pub fn from_a(g: usize, a: Vec<Rational>) -> Result<Self> {
        if g < 3 {
            return Err(Error::TooFewBranchPoints(2 * g + 2));
        }
        if a.len() != dim_i2(g) {
            return Err(Error::IndexOutOfRange(format!(
                "genus {g} needs {} a-coordinates, got {}",
                dim_i2(g),
                a.len()
            )));
        }
        let half = rational::frac(1, 2);
        let mut c = vec![vec![Rational::zero(); g]; g];
        for (&(i, j), v) in a_pairs(g).iter().zip(&a) {
            if v.is_zero() {
                continue;
            }
            let w = v * &half;
            for (p, q, sign) in [(i, j - 1, 1), (j, i - 1, -1)] {
                let w = if sign > 0 { w.clone() } else { -w.clone() };
                c[p][q] += &w;
                c[q][p] += &w;
            }
        }
        Ok(QuadricI2 { genus: g, a, c })
    }

    pub fn zero(g: usize) -> Self {
        Self::from_a(g, vec![Rational::zero(); dim_i2(g)]).expect("valid genus")
    }

    /// The basis quadric `Q_ij`.
    pub fn basis(g: usize, i: usize, j: usize) -> Result<Self> {
        let p = a_position(g, i, j).ok_or_else(|| {
            Error::IndexOutOfRange(format!("Q_{{{i},{j}}} needs 1 <= i < j <= {}", g - 1))
        })?;
        let mut a = vec![Rational::zero(); dim_i2(g)];
        a[p] = Rational::one();
        Self::from_a(g, a)
    }

    /// All basis quadrics in coordinate order.
    pub fn all_basis(g: usize) -> Vec<Self> {
        a_pairs(g)
            .into_iter()
            .map(|(i, j)| Self::basis(g, i, j).expect("valid pair"))
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn a_coord(&self, i: usize, j: usize) -> Rational {
        a_position(self.genus, i, j)
            .map(|p| self.a[p].clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn sym_tensor(&self) -> &[Vec<Rational>] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// `b_{k,h} = -a_{g-h,g-k}`: coordinates on the omega-labelled basis.
    pub fn b_coords(&self) -> BCoords {
        BCoords::from_a(self.genus, &self.a)
    }

    pub fn b_coord(&self, k: usize, h: usize) -> Rational {
        if !(1 <= k && k < h && h < self.genus) {
            return Rational::zero();
        }
        -self.a_coord(self.genus - h, self.genus - k)
    }

    /// `mu_0(Q) = sum c_ab x^(a+b)`; zero for every element of `I_2`.
    pub fn mu0_poly(&self) -> Poly {
        let mut out = vec![Rational::zero(); 2 * self.genus];
        for (a, row) in self.c.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                out[a + b] += v;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let a = self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect();
        Self::from_a(self.genus, a).expect("same genus")
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_a(self.genus, self.a.iter().map(|x| x * s).collect()).expect("same genus")
    }

    /// Nonzero coordinates keyed `"i,j"`.
    pub fn a_map(&self) -> BTreeMap<String, String> {
        a_pairs(self.genus)
            .iter()
            .zip(&self.a)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(i, j), v)| (format!("{i},{j}"), rational::to_string(v)))
            .collect()
    }

    /// Parses `{"i,j": "p/q", ...}`; missing pairs are zero.
    pub fn from_a_map(g: usize, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut a = vec![Rational::zero(); dim_i2(g)];
        for (key, val) in map {
            let (i, j) = parse_pair(key)?;
            let p = a_position(g, i, j)
                .ok_or_else(|| Error::IndexOutOfRange(format!("a_{{{key}}} for genus {g}")))?;
            a[p] = rational::parse(val)?;
        }
        Self::from_a(g, a)
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidIndex(format!("expected \"i,j\", got {key:?}"));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

impl Serialize for QuadricI2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            genus: usize,
            a: BTreeMap<String, String>,
        }
        Repr {
            genus: self.genus,
            a: self.a_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadricI2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            genus: usize,
            a: BTreeMap<String, String>,
        }
        let r = Repr::deserialize(d)?;
        QuadricI2::from_a_map(r.genus, &r.a).map_err(serde::de::Error::custom)
    }
}

/// Coordinates `b_{k,h}`, `1 <= k < h <= g-1`, on the basis
/// `omega_k . omega_h`-style quadrics, related to a-coordinates by
/// `b_{k,h} = -a_{g-h,g-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BCoords {
    pub genus: usize,
    pub values: BTreeMap<(usize, usize), Rational>,
}

impl BCoords {
    pub fn from_a(g: usize, a: &[Rational]) -> Self {
        let values = a_pairs(g)
            .into_iter()
            .zip(a)
            .map(|((i, j), v)| ((g - j, g - i), -v.clone()))
            .collect();
        BCoords { genus: g, values }
    }

    pub fn to_a(&self) -> Vec<Rational> {
        let g = self.genus;
        a_pairs(g)
            .into_iter()
            .map(|(i, j)| {
                -self
                    .values
                    .get(&(g - j, g - i))
                    .cloned()
                    .unwrap_or_else(Rational::zero)
            })
            .collect()
    }

    pub fn get(&self, k: usize, h: usize) -> Rational {
        self.values.get(&(k, h)).cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn genus_three_quadric() {
        let q = QuadricI2::basis(3, 1, 2).unwrap();
        let c = q.sym_tensor();
        // alpha_1^2 - alpha_0 . alpha_2
        assert_eq!(c[1][1], rat(1));
        assert_eq!(c[0][2], rational::frac(-1, 2));
        assert_eq!(c[2][0], rational::frac(-1, 2));
        assert_eq!(c[0][0], rat(0));
        assert!(q.mu0_poly().is_zero());
        assert!(QuadricI2::basis(3, 2, 2).is_err());
        assert!(QuadricI2::basis(3, 1, 3).is_err());
    }

    #[test]
    fn positions_follow_pair_order() {
        for g in 3..10 {
            for (p, &(i, j)) in a_pairs(g).iter().enumerate() {
                assert_eq!(a_position(g, i, j), Some(p));
            }
            assert_eq!(a_pairs(g).len(), dim_i2(g));
        }
    }

    #[test]
    fn basis_spans_i2() {
        for g in 3..9 {
            let m = a_to_s2_matrix(g);
            assert_eq!(m.rank(), dim_i2(g));
            for q in QuadricI2::all_basis(g) {
                assert!(q.mu0_poly().is_zero());
            }
        }
    }

    #[test]
    fn b_coordinates_round_trip() {
        // a_14 = 1, a_23 = -3 at g = 5 gives b_14 = -1, b_23 = 3
        let mut a = vec![rat(0); dim_i2(5)];
        a[a_position(5, 1, 4).unwrap()] = rat(1);
        a[a_position(5, 2, 3).unwrap()] = rat(-3);
        let q = QuadricI2::from_a(5, a.clone()).unwrap();
        let b = q.b_coords();
        assert_eq!(b.get(1, 4), rat(-1));
        assert_eq!(b.get(2, 3), rat(3));
        assert_eq!(q.b_coord(2, 3), rat(3));
        assert_eq!(b.to_a(), a);
    }

    #[test]
    fn json_round_trip() {
        let q = QuadricI2::basis(5, 2, 4).unwrap().scale(&rational::frac(-3, 7));
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"genus":5,"a":{"2,4":"-3/7"}}"#);
        let back: QuadricI2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
