use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use c2_theta::qscalar::{qint, LaurentPoly, QScalar, RootContext};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| QScalar::new(n, d).unwrap())
}

/// Nonzero at every root of order 16, 24 and 32: products of `[k]` with
/// small `k` and a constant.
fn root_safe_scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), prop::collection::vec(1i64..=7, 0..3), 1i64..5).prop_map(|(n, ks, c)| {
        let d: QScalar = ks.iter().map(|k| QScalar::qint(*k)).product();
        QScalar::from_poly(n) / (d * QScalar::from_int(c))
    })
}

#[test]
fn quantum_integer_recurrence() {
    for n in 1..=50 {
        assert_eq!(
            qint(2).mul(&qint(n)),
            qint(n + 1).add(&qint(n - 1)),
            "n = {n}"
        );
    }
}

#[test]
fn limits_of_quantum_integers() {
    for n in 0..=50 {
        assert_eq!(
            QScalar::qint(n).limit_q1().unwrap(),
            BigRational::from_integer(BigInt::from(n))
        );
    }
}

proptest! {
    #[test]
    fn normalize_is_idempotent(x in scalar()) {
        prop_assert_eq!(x.normalize().normalize(), x.normalize());
    }

    #[test]
    fn equality_matches_cross_multiplication(
        a in laurent(), b in nonzero_laurent(), c in laurent(), d in nonzero_laurent(),
    ) {
        let x = QScalar::new(a.clone(), b.clone()).unwrap();
        let y = QScalar::new(c.clone(), d.clone()).unwrap();
        prop_assert_eq!(x == y, a.mul(&d) == c.mul(&b));
    }

    #[test]
    fn scaled_fraction_is_equal(x in scalar(), k in nonzero_laurent()) {
        let y = QScalar::new(x.numerator().mul(&k), x.denominator().mul(&k)).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) * &z, &x * &z + &y * &z);
        prop_assert_eq!(&x - &x, QScalar::zero());
        if !x.is_zero() {
            prop_assert!((&x / &x).is_one());
        }
    }

    #[test]
    fn json_round_trip(x in scalar()) {
        let s = serde_json::to_string(&x).unwrap();
        let y: QScalar = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn evaluation_is_multiplicative(x in root_safe_scalar(), y in root_safe_scalar(), ni in 0usize..3) {
        let n = [16u64, 24, 32][ni];
        let ctx = RootContext::new(n, 128).unwrap();
        let lhs = ctx.eval(&(&x * &y)).unwrap();
        let rhs = ctx.eval(&x).unwrap().mul(&ctx.eval(&y).unwrap());
        prop_assert!(lhs.sub(&rhs).contains_zero());
    }

    #[test]
    fn limit_is_multiplicative(x in root_safe_scalar(), y in root_safe_scalar()) {
        let l = (&x * &y).limit_q1().unwrap();
        prop_assert_eq!(l, x.limit_q1().unwrap() * y.limit_q1().unwrap());
    }
}
