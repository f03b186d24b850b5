//! Rank of cup product with `xi^n` on `H^0(K)`, via the symmetric pairing
//! `P_ij = [z^{n-1}] (g_i g_j)` of K-frame expansions.

use num_traits::Zero;
use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupRank {
    pub n: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_basis")]
    pub kernel: Vec<Vec<Rational>>,
    /// `rank <= n`
    pub rank_bound_ok: bool,
    /// every `alpha_i` with `2i >= n` lies in the kernel
    pub kernel_contains_ok: bool,
}

fn serialize_basis<S: serde::Serializer>(b: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(b.len()))?;
    for v in b {
        seq.serialize_element(&v.iter().map(rational::to_string).collect::<Vec<_>>())?;
    }
    seq.end()
}

pub fn pairing_matrix(curve: &Curve, n: usize) -> Result<RatMatrix> {
    let g = curve.genus();
    if n == 0 || n > g {
        return Err(Error::InvalidIndex(format!("cup rank needs 1 <= n <= {g}, got {n}")));
    }
    let coeffs: Vec<Vec<Rational>> = (0..g)
        .map(|i| {
            let s = curve.expand_canonical(i, n)?.series;
            (0..n).map(|h| s.coeff(h).cloned()).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut m = RatMatrix::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            let v = (0..n)
                .map(|a| &coeffs[i][a] * &coeffs[j][n - 1 - a])
                .fold(Rational::zero(), |acc, x| acc + x);
            m.set(i, j, v);
        }
    }
    Ok(m)
}

pub fn cup_rank(curve: &Curve, n: usize) -> Result<CupRank> {
    let m = pairing_matrix(curve, n)?;
    let g = curve.genus();
    let kernel_contains_ok = (0..g)
        .filter(|i| 2 * i >= n)
        .all(|i| (0..g).all(|r| m.get(r, i).is_zero()));
    let rank = m.rank();
    Ok(CupRank {
        n,
        rank,
        kernel: m.kernel_basis(),
        rank_bound_ok: rank <= n,
        kernel_contains_ok,
    })
}
