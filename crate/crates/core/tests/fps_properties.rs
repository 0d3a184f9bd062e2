use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use qpsi_core::fps::{bilateral_sum_fs, theta_fs, FormalSeries, Monomial};
use qpsi_core::qcore::{theta_jtp, QContext};

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Sparse series in q^{1/d} with small rational coefficients, exact or truncated.
fn series() -> impl Strategy<Value = FormalSeries> {
    (
        prop::sample::select(vec![1i64, 2, 3]),
        prop::collection::vec((-3i64..12, -5i64..=5, 1i64..=3), 0..6),
        prop::option::of(6i64..14),
    )
        .prop_map(|(d, terms, order)| {
            FormalSeries::from_terms(
                terms
                    .into_iter()
                    .map(|(e, n, den)| (Rational64::new(e, d), BigRational::new(BigInt::from(n), BigInt::from(den)))),
                order.map(r),
            )
        })
}

/// Series with a nonzero exact leading term, so it is invertible.
fn unit() -> impl Strategy<Value = FormalSeries> {
    (series(), -2i64..3, prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5])).prop_map(|(s, v, c)| {
        let lead = FormalSeries::monomial(&Monomial::int(c, v));
        let tail = s.shift(r(v + 1) - s.valuation().unwrap_or(r(0)).min(r(0)));
        &lead + &tail
    })
}

/// Equality below the smaller of the two known orders.
fn agree(x: &FormalSeries, y: &FormalSeries) -> bool {
    let o = match (x.order(), y.order()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    match o {
        Some(o) => x.truncate(o) == y.truncate(o),
        None => x == y,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        let d = &a - &a;
        prop_assert!(d.is_zero());
        prop_assert_eq!(d.order(), a.order());
    }

    #[test]
    fn multiplication_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!(agree(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert_eq!(&a * &FormalSeries::one(), a.clone());
    }

    #[test]
    fn inverse_is_two_sided(u in unit(), n in 4i64..16) {
        let order = u.order().unwrap_or(r(n));
        let v = u.invert_to(order).unwrap();
        let target = FormalSeries::one().truncate(r(0) + (&u * &v).order().unwrap());
        prop_assert_eq!(&u * &v, target.clone());
        prop_assert_eq!(&v * &u, target);
    }

    #[test]
    fn substitution_matches_numeric_arithmetic(a in series(), b in series()) {
        let q = 0.1;
        // the sum is only known below the smaller order
        let (a, b) = match (&a + &b).order() {
            Some(o) => (a.truncate(o), b.truncate(o)),
            None => (a, b),
        };
        let (fa, fb) = (a.eval_f64(q), b.eval_f64(q));
        let scale = 1.0 + fa.abs() + fb.abs();
        prop_assert!(((&a + &b).eval_f64(q) - (fa + fb)).abs() < 1e-9 * scale);
        // products of exact series are exact, so substitution commutes with them
        if a.is_exact() && b.is_exact() {
            prop_assert!(((&a * &b).eval_f64(q) - fa * fb).abs() < 1e-9 * scale * scale);
        }
    }
}

/// `sum_n x^n q^{n(n-1)/2}` built from monomials only.
fn jtp_sum(x: &Monomial, order: Rational64) -> FormalSeries {
    let val = |n: i64| Ok(Some(x.e * r(n) + r(n * (n - 1) / 2)));
    bilateral_sum_fs(
        |n| val(n),
        |n, _| Ok(FormalSeries::monomial(&x.pow(n).mul(&Monomial::q(n * (n - 1) / 2)))),
        order,
    )
    .unwrap()
}

#[test]
fn triple_product_exact_to_order_200() {
    let q = Monomial::q(1);
    for x in [Monomial::q(1), Monomial::frac(1, 1, 2), Monomial::int(-1, 2), Monomial::int(2, 1), Monomial::int(-1, 1)] {
        let prod = theta_fs(&x, &q, r(200)).unwrap();
        let sum = jtp_sum(&x, r(200));
        assert_eq!(prod.first_difference(&sum), None, "x = {x:?}");
        assert_eq!(prod.order(), Some(r(200)));
    }
    // theta_q(-q) vanishes identically on both sides
    assert!(theta_fs(&Monomial::int(-1, 1), &q, r(200)).unwrap().is_zero());
}

#[test]
fn triple_product_numeric() {
    let q = 0.3;
    let ctx = QContext::from_q(Complex64::new(q, 0.0)).unwrap();
    for (x, xv) in [(Monomial::q(1), q), (Monomial::frac(1, 1, 2), q.sqrt()), (Monomial::int(2, 1), 2.0 * q)] {
        let formal = theta_fs(&x, &Monomial::q(1), r(200)).unwrap().eval_f64(q);
        let numeric = theta_jtp(&ctx, Complex64::new(xv, 0.0)).unwrap();
        assert!((formal - numeric.re).abs() < 1e-12 * numeric.norm().max(1.0), "{formal} vs {numeric}");
        assert!(numeric.im.abs() < 1e-14);
    }
}
