use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use seifert_wrt::cyclotomic::{CyclotomicNumber, Level};
use seifert_wrt::numtheory::{
    dedekind_sum, good_expansion, jacobi, mod_inverse, s_surd_residue, s_surd_residue_dedekind, sign,
};
use seifert_wrt::seifert::SeifertData;
use seifert_wrt::statesum::xi_statesum;
use seifert_wrt::wrt::{quarter, xi_theorem1_at};

fn odd_level() -> impl Strategy<Value = usize> {
    (1usize..=10).prop_map(|k| 2 * k + 1)
}

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (-300i64..=300, 1i64..=300).prop_filter("coprime, p != 0", |(p, q)| *p != 0 && p.gcd(q) == 1)
}

fn element(level: &Level, coeffs: &[i64], den: i64) -> CyclotomicNumber {
    let mut x = CyclotomicNumber::zero(level);
    for (k, &a) in coeffs.iter().enumerate() {
        x = x + CyclotomicNumber::root_power(level, k as i64).scale_int(&BigInt::from(a));
    }
    x.scale(&BigRational::new(BigInt::one(), BigInt::from(den)))
}

fn field_element() -> impl Strategy<Value = (usize, Vec<i64>, i64)> {
    odd_level().prop_flat_map(|r| (Just(r), prop::collection::vec(-9i64..=9, r), 1i64..=6))
}

fn leg() -> impl Strategy<Value = (i64, i64)> {
    (-7i64..=7, 1i64..=5).prop_filter("coprime, p != 0", |(p, q)| *p != 0 && p.gcd(q) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dedekind_reciprocity((a, b) in (2i64..400, 2i64..400).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = dedekind_sum(&a, &b).unwrap() + dedekind_sum(&b, &a).unwrap();
        let ab = &a * &b;
        let rhs = BigRational::new(&a * &a + &b * &b + 1 - 3 * &ab, 12 * ab);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn framing_identity((p, q) in coprime_pair()) {
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        let e = good_expansion(&p, &q).unwrap();
        prop_assert_eq!(e.value(), BigRational::new(p.clone(), q.clone()));
        let star = e.qstar_pstar();
        prop_assert!(star.verifies(&q, &p));
        let lhs = dedekind_sum(&q, &p).unwrap() * BigRational::from_integer((-12).into())
            + BigRational::new(&q + &star.a_star, p.clone());
        let rhs = BigInt::from(3 * (e.len() as i64 - 1 + sign(&p) as i64)) - e.sum_m();
        prop_assert_eq!(lhs, BigRational::from_integer(rhs));
    }

    #[test]
    fn modular_inverse(a in -1000i64..1000, m in 2i64..500) {
        let (ab, mb) = (BigInt::from(a), BigInt::from(m));
        match mod_inverse(&ab, &mb) {
            Ok(inv) => {
                prop_assert!(inv >= BigInt::one());
                prop_assert!(inv < mb);
                prop_assert!((ab * inv - 1_i32).mod_floor(&mb).is_zero());
            }
            Err(_) => prop_assert!(a.gcd(&m) != 1),
        }
    }

    #[test]
    fn jacobi_is_multiplicative(a in -200i64..200, b in -200i64..200, n in (0i64..100).prop_map(|k| 2 * k + 1)) {
        let j = |x: i64| jacobi(&BigInt::from(x), &BigInt::from(n)).unwrap();
        prop_assert_eq!(j(a * b), j(a) * j(b));
        prop_assert_eq!(j(a), j(a + n));
    }

    #[test]
    fn surd_routes_agree((p, q) in coprime_pair(), r in odd_level()) {
        let (pb, qb) = (BigInt::from(p), BigInt::from(q));
        prop_assume!(p.gcd(&(r as i64)) == 1);
        prop_assert_eq!(s_surd_residue(&pb, &qb, r).unwrap(), s_surd_residue_dedekind(&pb, &qb, r).unwrap());
    }

    #[test]
    fn galois_action_is_a_group_action((r, xs, den) in field_element(), s in 1i64..60, t in 1i64..60) {
        let ri = r as i64;
        prop_assume!(s.gcd(&ri) == 1 && t.gcd(&ri) == 1);
        let level = Level::new(r).unwrap();
        let x = element(&level, &xs, den);
        prop_assert_eq!(x.galois(s).unwrap().galois(t).unwrap(), x.galois(s * t).unwrap());
        prop_assert_eq!(x.galois(1).unwrap(), x.clone());
        let y = CyclotomicNumber::root_power(&level, 3) + x.clone();
        prop_assert_eq!((&x * &y).galois(t).unwrap(), x.galois(t).unwrap() * y.galois(t).unwrap());
    }

    #[test]
    fn field_axioms((r, xs, den) in field_element(), ys in prop::collection::vec(-9i64..=9, 21)) {
        let level = Level::new(r).unwrap();
        let x = element(&level, &xs, den);
        let y = element(&level, &ys[..r], 1);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
            prop_assert_eq!(y.checked_div(&x).unwrap() * x.clone(), y.clone());
        }
    }

    #[test]
    fn integrality_after_clearing_denominators((r, xs, den) in field_element()) {
        let level = Level::new(r).unwrap();
        let x = element(&level, &xs, den);
        prop_assert!(x.scale_int(&BigInt::from(den)).is_algebraic_integer());
        let d = x.denominator().clone();
        prop_assert_eq!(x.is_algebraic_integer(), d.is_one());
        prop_assert!(x.scale_int(&d).is_algebraic_integer());
    }

    #[test]
    fn formula_matches_state_sum(legs in prop::collection::vec(leg(), 1..=3), r in (1usize..=5).prop_map(|k| 2 * k + 1)) {
        let m = SeifertData::parse_normalize(legs).unwrap();
        let t = quarter(r);
        prop_assert_eq!(xi_theorem1_at(&m, r, t).unwrap(), xi_statesum(&m, r, t).unwrap());
    }
}
