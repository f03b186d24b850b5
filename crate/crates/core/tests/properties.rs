use num_traits::Zero;
use proptest::prelude::*;

use gaussmap_core::exact::matrix::{canonical_basis, dot};
use gaussmap_core::exact::rational::{frac, rat, Rational};
use gaussmap_core::exact::{Poly, RatMatrix, TruncatedSeries};
use gaussmap_core::gaussian::quadric::{dim_i2, BCoords, QuadricI2};
use gaussmap_core::gaussian::kernel_via_equations;
use gaussmap_core::schiffer::rho_pair;
use gaussmap_core::Curve;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..7, seed in prop::collection::vec(-3i64..=3, 42)) {
        let m = RatMatrix::from_i64(rows, cols, &seed[..rows * cols]);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(canonical_basis(&ker, cols), ker);
    }

    #[test]
    fn series_product_order(
        a in prop::collection::vec(small_rational(), 1..6),
        b in prop::collection::vec(small_rational(), 1..6),
        va in 0usize..3,
        vb in 0usize..3,
    ) {
        let mut ca = vec![Rational::zero(); va];
        ca.push(rat(1));
        ca.extend(a);
        let mut cb = vec![Rational::zero(); vb];
        cb.push(rat(2));
        cb.extend(b);
        let (na, nb) = (ca.len(), cb.len());
        let sa = TruncatedSeries::new(ca, na);
        let sb = TruncatedSeries::new(cb, nb);
        let prod = sa.mul(&sb);
        prop_assert_eq!(prod.order(), (na + vb).min(nb + va));
        prop_assert!(prod.coeff(prod.order()).is_err());
    }

    #[test]
    fn b_coordinates_round_trip(g in 3usize..8, coeffs in prop::collection::vec(small_rational(), 28)) {
        let a: Vec<Rational> = coeffs[..dim_i2(g)].to_vec();
        prop_assert_eq!(BCoords::from_a(g, &a).to_a(), a);
    }

    #[test]
    fn rho_symmetric_on_kernels(g in 4usize..8, k in 0usize..2, c in prop::collection::vec(small_rational(), 10)) {
        prop_assume!(2 * k + 3 <= g);
        let level = kernel_via_equations(g, k);
        let q = level.quadrics().iter().zip(&c).fold(QuadricI2::zero(g), |acc, (b, x)| acc.add(&b.scale(x)));
        let curve = Curve::default_for_genus(g).unwrap();
        for (n, r) in [(1, 3), (1, 5), (3, 5), (2 * k + 1, 2 * k + 3)] {
            let x = rho_pair(&q, &curve, n, r).map(|v| v.value);
            let y = rho_pair(&q, &curve, r, n).map(|v| v.value);
            prop_assert_eq!(x.is_ok(), y.is_ok());
            if let (Ok(x), Ok(y)) = (x, y) {
                prop_assert_eq!(x, y);
            }
        }
    }
}

#[test]
fn jets_stable_under_doubling() {
    for g in 3..=7 {
        for seed in [0u64, 5] {
            let a = Curve::random(g, seed).unwrap();
            let b = Curve::random(g, seed).unwrap();
            let short = a.k_frame_jets(12);
            let long = b.k_frame_jets(24);
            for (s, l) in short.iter().zip(&long) {
                assert_eq!(s[..], l[..12]);
            }
        }
    }
}

#[test]
fn parametrization_residual_vanishes() {
    for g in 3..=8 {
        for seed in 0..5u64 {
            let c = Curve::random(g, 100 + seed).unwrap();
            let x = c.x_of_z(20);
            let lhs = x.compose_poly(&c.defining_poly());
            let z2 = TruncatedSeries::z_pow(2, lhs.order());
            let res = lhs.sub(&z2);
            for i in 0..res.order().min(20) {
                assert!(res.coeff(i).unwrap().is_zero(), "g={g} seed={seed} z^{i}");
            }
        }
    }
}

#[test]
fn canonical_basis_ignores_spanning_set() {
    let v = |c: &[i64]| c.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    let a = canonical_basis(&[v(&[1, 2, 3]), v(&[0, 1, 1])], 3);
    let b = canonical_basis(&[v(&[1, 3, 4]), v(&[2, 4, 6]), v(&[0, 2, 2])], 3);
    assert_eq!(a, b);
    assert_eq!(dot(&a[0], &v(&[0, 0, 0])), Rational::zero());
}

#[test]
fn curve_json_round_trip() {
    let c = Curve::random(5, 3).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    let back: Curve = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.defining_poly(), &Poly::x_pow(1) * c.g_poly());
}
