//! Hyperelliptic curves `y^2 = prod (x - t_i)` with `t_1 = 0`, and exact local
//! expansions at the Weierstrass point `p = (0, 0)`.
//!
//! The local coordinate is `z = y`, which has a simple zero at `p`. Then
//! `x(z)` is the even series solving `z^2 = x G(x)` with
//! `G(x) = prod_{i >= 2} (x - t_i)`. Schiffer variations, and therefore every
//! reported pairing value, depend on this choice; vanishing statements do not.
//!
//! Frames near `p`:
//! * K-frame (`dz`): `alpha_i = x^i dx / y` becomes `x^i x' / z`.
//! * M-frame (`z^2 dz`): `omega_k = alpha_{g-k}` becomes `x^{g-k} x' / z^3`.
//! * L-frame: the pencil basis is `s = x`, `t = 1`.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{Poly, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    K,
    M,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionId {
    /// `alpha_i = x^i dx/y`
    Alpha(usize),
    /// `omega_k = x^{g-k} dx/y`, a section of `M = K(-2p)`
    Omega(usize),
    /// pencil section vanishing doubly at `p`
    S,
    /// pencil section not vanishing at `p`
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFrameExpansion {
    pub section: SectionId,
    pub frame: Frame,
    pub series: TruncatedSeries,
}

impl LocalFrameExpansion {
    /// `h`-th derivative at `p` in this frame: `h! [z^h]`.
    pub fn derivative_at_p(&self, h: usize) -> Result<Rational> {
        self.series.derivative_at_zero(h)
    }
}

/// Cached expansions, all known below `order`.
#[derive(Debug)]
struct JetTable {
    /// `x(z)`, possibly known beyond `order`
    x: TruncatedSeries,
    order: usize,
    /// K-frame series of `alpha_0 .. alpha_{g-1}`
    k_frame: Vec<TruncatedSeries>,
}

pub struct Curve {
    genus: usize,
    branch_points: Vec<Rational>,
    /// `G(x) = prod_{i >= 2} (x - t_i)`
    g_poly: Poly,
    jets: RwLock<Arc<JetTable>>,
}

impl Clone for Curve {
    fn clone(&self) -> Self {
        Curve {
            genus: self.genus,
            branch_points: self.branch_points.clone(),
            g_poly: self.g_poly.clone(),
            jets: RwLock::new(self.jets.read().expect("jet cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("genus", &self.genus)
            .field("branch_points", &self.branch_points_str())
            .finish()
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.branch_points == other.branch_points
    }
}

impl Eq for Curve {}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    branch_points: Vec<String>,
}

impl Serialize for Curve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveJson {
            branch_points: self.branch_points_str(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CurveJson::deserialize(d)?;
        let pts = raw
            .branch_points
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Curve::new(pts).map_err(serde::de::Error::custom)
    }
}

/// Validates the branch points and builds the curve.
pub fn new_curve(branch_points: Vec<Rational>) -> Result<Curve> {
    Curve::new(branch_points)
}

impl Curve {
    pub fn new(branch_points: Vec<Rational>) -> Result<Curve> {
        let n = branch_points.len();
        if n % 2 == 1 {
            return Err(Error::OddBranchPointCount(n));
        }
        if n < 8 {
            return Err(Error::TooFewBranchPoints(n));
        }
        if !branch_points[0].is_zero() {
            return Err(Error::FirstBranchPointNotZero(rational::to_string(
                &branch_points[0],
            )));
        }
        let mut sorted = branch_points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateBranchPoint(rational::to_string(&w[0])));
        }
        let g_poly = Poly::from_roots(&branch_points[1..]);
        let genus = n / 2 - 1;
        let empty = JetTable {
            x: TruncatedSeries::big_o(2),
            order: 0,
            k_frame: vec![TruncatedSeries::big_o(0); genus],
        };
        Ok(Curve {
            genus,
            branch_points,
            g_poly,
            jets: RwLock::new(Arc::new(empty)),
        })
    }

    /// The curve with branch points `0, 1, ..., 2g+1`.
    pub fn default_for_genus(g: usize) -> Result<Curve> {
        Curve::new((0..2 * g as i64 + 2).map(rational::rat).collect())
    }

    /// A curve with `t_1 = 0` and `2g+1` further distinct nonzero rationals
    /// `a/b`, `|a| <= 50`, `1 <= b <= 50`, drawn from a generator seeded by
    /// `seed`.
    pub fn random(g: usize, seed: u64) -> Result<Curve> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = vec![Rational::zero()];
        while pts.len() < 2 * g + 2 {
            let q = rational::frac(rng.gen_range(-50..=50), rng.gen_range(1..=50));
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
        Curve::new(pts)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn branch_points(&self) -> &[Rational] {
        &self.branch_points
    }

    pub fn branch_points_str(&self) -> Vec<String> {
        self.branch_points.iter().map(rational::to_string).collect()
    }

    /// `G(x) = prod_{i >= 2}(x - t_i)`
    pub fn g_poly(&self) -> &Poly {
        &self.g_poly
    }

    /// Full defining polynomial `x G(x)`.
    pub fn defining_poly(&self) -> Poly {
        &Poly::x_pow(1) * &self.g_poly
    }

    /// Returns a table whose K-frame series are all known below `order`.
    fn jets(&self, order: usize) -> Arc<JetTable> {
        {
            let t = self.jets.read().expect("jet cache poisoned");
            if t.order >= order {
                return Arc::clone(&t);
            }
        }
        let mut w = self.jets.write().expect("jet cache poisoned");
        if w.order >= order {
            return Arc::clone(&w);
        }
        // alpha_0 = x'/z is known two orders below x
        let x = self.iterate_x(&w.x, order + 2);
        let xp_over_z = x
            .derivative()
            .shift_down(1)
            .expect("x is even with x(0) = 0");
        let mut k_frame = Vec::with_capacity(self.genus);
        let mut xi = TruncatedSeries::constant(Rational::one(), x.order());
        for _ in 0..self.genus {
            k_frame.push(xi.mul(&xp_over_z).truncate(order));
            xi = xi.mul(&x);
        }
        let table = Arc::new(JetTable { x, order, k_frame });
        *w = Arc::clone(&table);
        table
    }

    /// Newton iteration for `x G(x) = w` in `w = z^2`, started from the even
    /// coefficients of `seed`; each step doubles the known coefficients.
    fn iterate_x(&self, seed: &TruncatedSeries, order: usize) -> TruncatedSeries {
        if seed.order() >= order {
            return seed.clone();
        }
        let f = self.defining_poly();
        let fp = f.derivative(1);
        let target = order.div_ceil(2);
        let mut known = seed.order().div_ceil(2).max(1);
        let mut xw: Vec<Rational> = (0..known)
            .map(|j| seed.coeff(2 * j).cloned().unwrap_or_else(|_| Rational::zero()))
            .collect();
        while known < target {
            let m = (2 * known).min(target);
            let x = TruncatedSeries::new(xw, m);
            let residual = x.compose_poly(&f).sub(&TruncatedSeries::z_pow(1, m));
            let step = residual
                .div(&x.compose_poly(&fp))
                .expect("F'(0) = G(0) != 0 for distinct branch points");
            let next = x.sub(&step);
            xw = (0..m)
                .map(|j| next.coeff(j).expect("known below m").clone())
                .collect();
            known = m;
        }
        let mut coeffs = vec![Rational::zero(); 2 * known];
        for (j, c) in xw.into_iter().enumerate() {
            coeffs[2 * j] = c;
        }
        TruncatedSeries::new(coeffs, 2 * known)
    }

    /// `x(z)` known below `order`.
    pub fn x_of_z(&self, order: usize) -> TruncatedSeries {
        assert!(order >= 2, "x_of_z needs order >= 2");
        let t = self.jets(order.saturating_sub(2));
        if t.x.order() >= order {
            return t.x.truncate(order);
        }
        self.iterate_x(&t.x, order).truncate(order)
    }

    /// K-frame expansion of `alpha_i`, known below `order`.
    pub fn expand_canonical(&self, i: usize, order: usize) -> Result<LocalFrameExpansion> {
        if i >= self.genus {
            return Err(Error::IndexOutOfRange(format!(
                "alpha_{i} needs 0 <= i <= {}",
                self.genus - 1
            )));
        }
        Ok(LocalFrameExpansion {
            section: SectionId::Alpha(i),
            frame: Frame::K,
            series: self.jets(order).k_frame[i].truncate(order),
        })
    }

    /// M-frame expansion of `omega_k`, known below `order`.
    pub fn expand_omega(&self, k: usize, order: usize) -> Result<LocalFrameExpansion> {
        if k == 0 || k >= self.genus {
            return Err(Error::IndexOutOfRange(format!(
                "omega_{k} needs 1 <= k <= {}",
                self.genus - 1
            )));
        }
        let series = self.jets(order + 2).k_frame[self.genus - k]
            .shift_down(2)
            .expect("alpha_i vanishes to order 2i >= 2")
            .truncate(order);
        Ok(LocalFrameExpansion {
            section: SectionId::Omega(k),
            frame: Frame::M,
            series,
        })
    }

    /// L-frame expansion of the pencil sections: `s = x`, `t = 1`.
    pub fn expand_pencil(&self, section: SectionId, order: usize) -> Result<LocalFrameExpansion> {
        let series = match section {
            SectionId::S => self.x_of_z(order.max(2)).truncate(order),
            SectionId::T => TruncatedSeries::constant(Rational::one(), order),
            other => {
                return Err(Error::InvalidIndex(format!("{other:?} is not a pencil section")))
            }
        };
        Ok(LocalFrameExpansion {
            section,
            frame: Frame::L,
            series,
        })
    }

    /// `d[i][h] = alpha_i^{(h)}(p)` in the K-frame for `h < order`.
    pub fn k_frame_jets(&self, order: usize) -> Vec<Vec<Rational>> {
        let t = self.jets(order);
        t.k_frame
            .iter()
            .map(|s| {
                (0..order)
                    .map(|h| s.derivative_at_zero(h).expect("within cached order"))
                    .collect()
            })
            .collect()
    }

    /// Default truncation for derivative sums up to total order `t`.
    pub fn default_order(&self, t: usize) -> usize {
        t + 2 * self.genus + 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    fn pts(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Curve::new(pts(&[0, 1, 2, 3, 4, 5, 6, 7])).unwrap().genus(), 3);
        assert_eq!(
            Curve::new(pts(&[0, 1, 1, 3, 4, 5, 6, 7])).unwrap_err().code(),
            "DuplicateBranchPoint"
        );
        assert_eq!(
            Curve::new(pts(&[1, 2, 3, 4, 5, 6, 7, 8])).unwrap_err().code(),
            "FirstBranchPointNotZero"
        );
        assert_eq!(
            Curve::new(pts(&[0, 1, 2, 3, 4, 5])).unwrap_err().code(),
            "TooFewBranchPoints"
        );
    }

    #[test]
    fn x_leading_coefficient() {
        let c = Curve::default_for_genus(3).unwrap();
        let x = c.x_of_z(8);
        assert_eq!(x.order(), 8);
        assert_eq!(x.coeff(0).unwrap(), &rat(0));
        assert_eq!(x.coeff(1).unwrap(), &rat(0));
        assert_eq!(x.coeff(2).unwrap(), &frac(-1, 5040));
        assert!(x.is_even());
    }

    #[test]
    fn alpha_zero_constant_term() {
        let c = Curve::default_for_genus(3).unwrap();
        let e = c.expand_canonical(0, 6).unwrap();
        assert_eq!(e.series.coeff(0).unwrap(), &frac(-2, 5040));
        assert!(c.expand_canonical(3, 6).is_err());
        assert!(c.expand_omega(0, 6).is_err());
        assert!(c.expand_omega(3, 6).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Curve::random(4, 9).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with("{\"branch_points\":[\"0\","));
        let back: Curve = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::from_str::<Curve>("{\"branch_points\":[\"1\",\"2\"]}");
        assert!(bad.is_err());
    }
}
