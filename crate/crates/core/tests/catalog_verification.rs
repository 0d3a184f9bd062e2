use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use qpsi_core::catalog::*;
use qpsi_core::fps::Monomial;
use qpsi_core::identities::Status;
use qpsi_core::mu::w_func;
use qpsi_core::qcore::QContext;

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Entries whose printed displays disagree, with the first bad exponent and
/// the coefficients on either side.
const EXPECTED_FINDINGS: [(&str, Form, Form, i64, i64, i64); 4] = [
    ("order5.f1", Form::W, Form::Bilateral, 3, -1, 1),
    ("order5.chi0", Form::W, Form::Bilateral, 28, 28, 31),
    ("order7.F2", Form::W, Form::Bilateral, 35, 27, 29),
    ("order10.psi", Form::Eulerian, Form::W, 0, 0, -1),
];

#[test]
fn all_entries_to_order_40() {
    let reports: Vec<_> = verify_all(40).into_iter().map(|r| r.unwrap()).collect();
    assert_eq!(reports.len(), 46);
    for rep in &reports {
        let expected = EXPECTED_FINDINGS.iter().find(|f| f.0 == rep.name);
        match expected {
            None => assert_eq!(rep.status, Status::Pass, "{}: {:?}", rep.name, rep.findings),
            Some(&(_, left, right, e, lc, rc)) => {
                assert_eq!(rep.status, Status::Fail);
                let f = rep.findings.iter().find(|f| f.left == left && f.right == right).unwrap();
                assert_eq!(f.exponent, r(e));
                assert_eq!(f.left_coeff, BigRational::from_integer(lc.into()));
                assert_eq!(f.right_coeff, BigRational::from_integer(rc.into()));
            }
        }
    }
    let phi_minus = reports.iter().find(|r| r.name == "order6.phi_minus").unwrap();
    assert_eq!(phi_minus.order, r(20));
}

#[test]
fn single_edit_amendments() {
    let f1 = verify_entry("order5.f1", r(40)).unwrap();
    assert!(f1
        .amendments
        .iter()
        .any(|a| a.form == Form::Bilateral && a.term == 1 && a.edit == Edit::DropShift && a.matches == Form::Eulerian));
    let psi = verify_entry("order10.psi", r(40)).unwrap();
    assert!(psi
        .amendments
        .iter()
        .any(|a| a.form == Form::W && a.term == 1 && a.edit == Edit::ShiftUp && a.matches == Form::Eulerian));
    // the modulus slips are not a one-coefficient edit
    assert!(verify_entry("order5.chi0", r(40)).unwrap().amendments.is_empty());
    assert!(verify_entry("order7.F2", r(40)).unwrap().amendments.is_empty());
}

#[test]
fn proposed_fixes_close_every_finding() {
    let fixes = proposed_fixes();
    assert_eq!(fixes.len(), EXPECTED_FINDINGS.len());
    for fix in &fixes {
        let rep = verify_fix(fix, r(60)).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}: {:?}", fix.name, rep.findings);
    }
}

#[test]
fn third_order_f_passes_to_40() {
    let rep = verify_entry("order3.f", r(40)).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert!(rep.findings.is_empty() && rep.amendments.is_empty());
}

#[test]
fn direct_numeric_values_agree() {
    let broken = ["order5.f1", "order10.psi"];
    for e in list_entries() {
        let c = numeric_check(&e, r(60), 0.15).unwrap();
        if broken.contains(&e.name) {
            assert!(c.max_gap() > 1e-3, "{}", e.name);
        } else {
            assert!(c.max_gap() < 1e-10, "{}: {c:?}", e.name);
        }
    }
}

#[test]
fn corrections_have_integer_coefficients() {
    for e in list_entries() {
        assert!(corrections_integral(&e, r(40)).unwrap(), "{}", e.name);
    }
}

#[test]
fn w_expansion_matches_numeric_w() {
    let q: f64 = 0.1;
    let m = |c: i64, e: i64| (Monomial::int(c, e), c as f64 * q.powi(e as i32));
    // (a, b, c, p) as used by A, f, psi_minus and nu
    let cases = [
        (m(1, 5), m(1, 3), m(1, 2), m(1, 4)),
        (m(-1, 3), m(-1, 2), m(1, 1), m(1, 3)),
        (m(1, 2), m(1, 1), m(1, 1), m(1, 3)),
        (m(1, 8), m(-1, 5), m(-1, 3), m(1, 12)),
        (m(1, 5), m(1, 3), m(1, 2), m(-1, 3)),
    ];
    for ((a, av), (b, bv), (c, cv), (p, pv)) in cases {
        let formal = w_fs(&a, &b, &c, &p, r(40)).unwrap();
        let ctx = QContext::from_q(Complex64::new(pv, 0.0)).unwrap();
        let re = |x: f64| Complex64::new(x, 0.0);
        let numeric = w_func(&ctx, re(av), re(bv), re(cv)).unwrap();
        let got = formal.eval_f64(q);
        assert!((got - numeric.re).abs() < 1e-10, "W({a:?}; {b:?}, {c:?}; {p:?}): {got} vs {numeric}");
    }
}

#[test]
fn half_integer_entry() {
    let e = find_entry("order6.phi_minus").unwrap();
    let w = e.eval(Form::W, r(6)).unwrap();
    let lhs = expand("order6.phi_minus", r(6)).unwrap();
    assert_eq!(w.first_difference(&lhs), None);
    // half powers appear in the individual terms before they cancel
    let t = e.rhs_w[0].eval(r(6)).unwrap();
    assert_eq!(t.denom(), 2);
}

#[test]
fn verify_all_is_deterministic() {
    let a: Vec<_> = verify_all(12).into_iter().map(|r| r.unwrap().findings).collect();
    let b: Vec<_> = verify_all(12).into_iter().map(|r| r.unwrap().findings).collect();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncation_is_coherent(idx in 0usize..46, n in 2i64..30, k in 1i64..20) {
        let e = &list_entries()[idx];
        let big = e.eval(Form::Eulerian, r(n + k)).unwrap();
        let small = e.eval(Form::Eulerian, r(n)).unwrap();
        prop_assert_eq!(big.truncate(r(n)), small);
    }
}
