//! Certificates classifying directions `v = sum lambda_i xi^i` in
//! `V = <xi^1, xi^3, ..>` as asymptotic or not.
//!
//! A direction with top index `2k+1 >= 3` is refuted by one quadric `Q'` in
//! `A_{k-1,0} \ A_{k-1,0,0}`: its threshold is exactly `4k+1`, so every pair
//! below the top diagonal is a licensed zero and `rho(Q')(v.v)` reduces to
//! `lambda_{2k+1}^2 rho(Q')(xi^{2k+1}.xi^{2k+1}) != 0`. Only licensed values
//! are ever used.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::functional::{
    diag_functional_on, hyperplane_ak0_from, witness_functional_on,
};
use super::pairing::DerivativePairing;
use super::rho::{rho_from_pairing, rho_pair};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::gaussian::quadric::QuadricI2;
use crate::gaussian::kernel_via_equations;

/// Number of odd indices spanning `V`: `floor((g-2)/2) + 1`.
pub fn direction_len(g: usize) -> usize {
    (g - 2) / 2 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Asymptotic,
    NotAsymptotic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTerm {
    pub i: usize,
    pub j: usize,
    #[serde(with = "rational::as_string")]
    pub rho: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// the quadric lies in `A_{level,0} \ A_{level,0,0}`
    pub level: usize,
    pub quadric: BTreeMap<String, String>,
    pub threshold: i64,
    /// licensed evaluations on pairs `i <= j` of indices up to the top
    pub terms: Vec<PairTerm>,
    pub cross_terms_zero: bool,
    /// `rho(Q')(v.v) / 2 pi i`
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticCertificate {
    pub genus: usize,
    /// odd indices `1, 3, ..`
    pub indices: Vec<usize>,
    #[serde(with = "rational::vec_as_string")]
    pub lambdas: Vec<Rational>,
    pub verdict: Verdict,
    /// for the asymptotic verdict: basis quadrics of `I_2` checked on `(1,1)`
    pub quadrics_checked: usize,
    pub witness: Option<Witness>,
}

impl AsymptoticCertificate {
    /// A refutation must carry a nonzero, fully licensed witness value.
    pub fn is_valid(&self) -> bool {
        match self.verdict {
            Verdict::Asymptotic => self.witness.is_none() && self.quadrics_checked > 0,
            Verdict::NotAsymptotic => self
                .witness
                .as_ref()
                .is_some_and(|w| w.cross_terms_zero && !w.value.is_zero()),
        }
    }
}

/// Classifies directions on one curve, reusing the witness of each level.
pub struct Classifier<'a> {
    curve: &'a Curve,
    witnesses: BTreeMap<usize, (QuadricI2, usize)>,
}

impl<'a> Classifier<'a> {
    pub fn new(curve: &'a Curve) -> Self {
        Classifier {
            curve,
            witnesses: BTreeMap::new(),
        }
    }

    /// First canonical basis vector of `A_{level,0}` off `A_{level,0,0}`.
    fn witness_at(&mut self, level: usize) -> Result<(QuadricI2, usize)> {
        if let Some(w) = self.witnesses.get(&level) {
            return Ok(w.clone());
        }
        let g = self.curve.genus();
        let kernel = kernel_via_equations(g, level);
        let wf = witness_functional_on(&kernel, self.curve)?;
        let ak0 = hyperplane_ak0_from(&kernel, &wf);
        let diag = diag_functional_on(&ak0, self.curve)?;
        let pos = diag
            .values_on_basis
            .iter()
            .position(|v| !v.is_zero())
            .ok_or(Error::NoWitnessFound { k: level })?;
        let q = QuadricI2::from_a(g, ak0.basis[pos].clone())?;
        self.witnesses.insert(level, (q.clone(), pos));
        Ok((q, pos))
    }

    pub fn classify(&mut self, lambdas: &[Rational]) -> Result<AsymptoticCertificate> {
        let g = self.curve.genus();
        let len = direction_len(g);
        if lambdas.len() != len {
            return Err(Error::InvalidIndex(format!(
                "genus {g} needs {len} coefficients for xi^1 .. xi^{}, got {}",
                2 * len - 1,
                lambdas.len()
            )));
        }
        let top = lambdas
            .iter()
            .rposition(|l| !l.is_zero())
            .ok_or_else(|| Error::InvalidIndex("direction is zero".into()))?;
        let indices: Vec<usize> = (0..len).map(|t| 2 * t + 1).collect();
        if top == 0 {
            return self.pure_first(indices, lambdas);
        }
        let (q, _) = self.witness_at(top - 1)?;
        let top_index = 2 * top + 1;
        let d = DerivativePairing::compute(&q, self.curve, 2 * top_index)?;
        let mut terms = Vec::new();
        let mut value = Rational::zero();
        let mut cross_terms_zero = true;
        for a in 0..=top {
            for b in a..=top {
                let (i, j) = (2 * a + 1, 2 * b + 1);
                let rho = rho_from_pairing(&d, i, j)?.value;
                if (i, j) != (top_index, top_index) && !rho.is_zero() {
                    cross_terms_zero = false;
                }
                let weight = if a == b {
                    &lambdas[a] * &lambdas[b]
                } else {
                    rational::rat(2) * &lambdas[a] * &lambdas[b]
                };
                value += weight * &rho;
                terms.push(PairTerm { i, j, rho });
            }
        }
        Ok(AsymptoticCertificate {
            genus: g,
            indices,
            lambdas: lambdas.to_vec(),
            verdict: Verdict::NotAsymptotic,
            quadrics_checked: 0,
            witness: Some(Witness {
                level: top - 1,
                quadric: q.a_map(),
                threshold: d.threshold().value,
                terms,
                cross_terms_zero,
                value,
            }),
        })
    }

    fn pure_first(
        &self,
        indices: Vec<usize>,
        lambdas: &[Rational],
    ) -> Result<AsymptoticCertificate> {
        let g = self.curve.genus();
        let basis = QuadricI2::all_basis(g);
        for q in &basis {
            let rho = rho_pair(q, self.curve, 1, 1)?.value;
            if !rho.is_zero() {
                let d = DerivativePairing::compute(q, self.curve, 2)?;
                let value = &lambdas[0] * &lambdas[0] * &rho;
                return Ok(AsymptoticCertificate {
                    genus: g,
                    indices,
                    lambdas: lambdas.to_vec(),
                    verdict: Verdict::NotAsymptotic,
                    quadrics_checked: 0,
                    witness: Some(Witness {
                        level: 0,
                        quadric: q.a_map(),
                        threshold: d.threshold().value,
                        terms: vec![PairTerm { i: 1, j: 1, rho }],
                        cross_terms_zero: true,
                        value,
                    }),
                });
            }
        }
        Ok(AsymptoticCertificate {
            genus: g,
            indices,
            lambdas: lambdas.to_vec(),
            verdict: Verdict::Asymptotic,
            quadrics_checked: basis.len(),
            witness: None,
        })
    }
}

pub fn asymptotic_classify(curve: &Curve, lambdas: &[Rational]) -> Result<AsymptoticCertificate> {
    Classifier::new(curve).classify(lambdas)
}

/// Seeded directions with top index at least 3; coefficients `a/b` with
/// `|a| <= 20`, `1 <= b <= 10`.
pub fn random_directions(g: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let len = direction_len(g);
    assert!(len >= 2, "V has no index above 1 for genus {g}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<Rational> = (0..len)
            .map(|_| rational::frac(rng.gen_range(-20..=20), rng.gen_range(1..=10)))
            .collect();
        if v[1..].iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    #[test]
    fn genus_six_examples() {
        let curve = Curve::default_for_genus(6).unwrap();
        let mut c = Classifier::new(&curve);
        let pure = c.classify(&[rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(pure.verdict, Verdict::Asymptotic);
        assert_eq!(pure.quadrics_checked, 10);
        let two = c.classify(&[rat(1), rat(1), rat(0)]).unwrap();
        assert_eq!(two.verdict, Verdict::NotAsymptotic);
        assert_eq!(two.witness.as_ref().unwrap().level, 0);
        assert!(two.is_valid());
        let three = c.classify(&[rat(5), rat(-2), frac(7, 3)]).unwrap();
        assert_eq!(three.witness.as_ref().unwrap().level, 1);
        assert!(three.is_valid());
    }

    #[test]
    fn bad_input() {
        let curve = Curve::default_for_genus(6).unwrap();
        assert!(asymptotic_classify(&curve, &[rat(0), rat(0), rat(0)]).is_err());
        assert!(asymptotic_classify(&curve, &[rat(1)]).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(random_directions(7, 5, 3), random_directions(7, 5, 3));
        assert!(random_directions(7, 50, 3).iter().all(|v| v.len() == 3));
    }
}
