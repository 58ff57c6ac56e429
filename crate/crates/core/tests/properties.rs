use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use cone_anomaly::exact::{
    multiplicity_shifted, multiplicity_sphere, multiplicity_sphere_factored, s_poly_value,
    s_poly_value_coefficients, SphereSpec,
};
use cone_anomaly::special::{bessel_k, bessel_k_upper, gamma_fn};
use cone_anomaly::{Enclosure, Precision};

fn low() -> Precision {
    Precision::from_bits(64)
}

fn high() -> Precision {
    Precision::from_bits(256)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn spec() -> impl Strategy<Value = SphereSpec> {
    (1u32..=7).prop_flat_map(|p| (Just(p), 0..2 * p)).prop_map(|(p, q)| SphereSpec::new(p, q).unwrap())
}

proptest! {
    #[test]
    fn rational_arithmetic_is_enclosed(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let (x, y) = (ratio(a, b), ratio(c, d));
        let ex = Enclosure::from_rational(&x, low());
        let ey = Enclosure::from_rational(&y, low());
        let sum = Enclosure::from_rational(&(&x + &y), high());
        let prod = Enclosure::from_rational(&(&x * &y), high());
        prop_assert!((&ex + &ey).overlaps(&sum));
        prop_assert!((&ex * &ey).overlaps(&prod));
        if c != 0 {
            let quot = Enclosure::from_rational(&(&x / &y), high());
            prop_assert!(ex.div(&ey).unwrap().overlaps(&quot));
        }
    }

    #[test]
    fn elementary_functions_nest(a in 1i64..100_000, b in 1i64..1_000) {
        let lo = Enclosure::from_ratio(a, b, low());
        let hi = Enclosure::from_ratio(a, b, high());
        prop_assert!(lo.ln().unwrap().overlaps(&hi.ln().unwrap()));
        prop_assert!(lo.sqrt().unwrap().overlaps(&hi.sqrt().unwrap()));
        let small_lo = Enclosure::from_ratio(a % 4000, 100, low());
        let small_hi = Enclosure::from_ratio(a % 4000, 100, high());
        prop_assert!(small_lo.exp().overlaps(&small_hi.exp()));
        let back = small_hi.exp().ln().unwrap();
        prop_assert!(back.overlaps(&small_hi));
    }

    #[test]
    fn gamma_recurrence(a in 1i64..2_000, b in 1i64..200) {
        let x = Enclosure::from_ratio(a, b, high());
        let next = &x + &Enclosure::one(high());
        let lhs = gamma_fn(&next).unwrap();
        let rhs = &x * &gamma_fn(&x).unwrap();
        prop_assert!(lhs.overlaps(&rhs), "x = {a}/{b}: {lhs} vs {rhs}");
    }

    #[test]
    fn bessel_upper_bound_dominates(nu in 0i64..48, y in 8i64..480) {
        let nu = Enclosure::from_ratio(nu, 16, high());
        let y = Enclosure::from_ratio(y, 16, high());
        let k = bessel_k(&nu, &y).unwrap();
        prop_assert!(k.is_positive());
        prop_assert!(k.abs_upper() <= bessel_k_upper(&nu, &y).unwrap());
    }

    #[test]
    fn mu_squared_is_a_perfect_square(s in spec(), n in 1u64..500) {
        let mu = s.mu(n);
        prop_assert_eq!(s.mu_squared(n), &mu * &mu);
        prop_assert!(mu.is_positive());
    }

    #[test]
    fn hodge_dual_symmetry(s in spec(), n in 1u64..500) {
        let d = s.dual();
        prop_assert_eq!(d.dual(), s.clone());
        prop_assert_eq!(s.eigenvalue(n), d.eigenvalue(n));
        prop_assert_eq!(&s.alpha_q, &-d.alpha_q.clone());
        prop_assert_eq!(s.mu_squared(n), d.mu_squared(n));
        let mut neg: Vec<i64> = d.sequence.iter().map(|j| -j).collect();
        let mut seq = s.sequence.clone();
        neg.sort_unstable();
        seq.sort_unstable();
        prop_assert_eq!(neg, seq);
    }

    #[test]
    fn multiplicities_are_positive_integers(s in spec(), n in 1i64..300) {
        prop_assume!(s.is_spectral());
        let m = multiplicity_sphere(&s, n).unwrap();
        prop_assert!(m.is_integer() && m.is_positive());
        prop_assert_eq!(&m, &multiplicity_sphere_factored(&s, n).unwrap());
        let q = s.q as i64;
        prop_assert_eq!(m, multiplicity_shifted(&s, n + q).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn s_poly_forms_agree(s in spec(), num in -5_000i64..5_000, den in 1i64..64) {
        let x = ratio(num, den);
        prop_assert_eq!(s_poly_value(&s, &x), s_poly_value_coefficients(&s, &x));
    }
}

#[test]
fn s_poly_leading_coefficient_is_one() {
    for p in 1..=8 {
        for q in 0..2 * p {
            let s = SphereSpec::new(p, q).unwrap();
            let big = BigRational::from_integer(BigInt::from(10).pow(40));
            let ratio = s_poly_value(&s, &big) / big.pow(s.sequence.len() as i32);
            assert!((ratio - BigRational::one()).abs() < BigRational::new(1.into(), BigInt::from(10).pow(30)));
        }
    }
}
