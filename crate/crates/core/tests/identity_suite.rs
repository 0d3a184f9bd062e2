use num_complex::Complex64;
use qpsi_core::identities::{registry, run_suite, run_suite_with, Nome, Status};
use qpsi_core::qcore::QContext;

fn show(reps: &[qpsi_core::identities::IdentityReport]) -> String {
    reps.iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} {:?} err {:e} rejected {}", r.id, r.status, r.max_rel_err, r.rejected_samples))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn every_identity_at_fixed_nome() {
    for q in [Complex64::new(0.2, 0.0), Complex64::from_polar(0.3, 1.1)] {
        let ctx = QContext::from_q(q).unwrap();
        let reps = run_suite(&ctx, None, 42, 20).unwrap();
        assert_eq!(reps.len(), registry().len());
        assert!(reps.iter().all(|r| r.status == Status::Pass), "q = {q}\n{}", show(&reps));
    }
}

#[test]
fn every_identity_at_sampled_nomes() {
    let ctx = QContext::from_q(Complex64::new(0.2, 0.0)).unwrap();
    let reps = run_suite_with(&ctx, None, 7, 20, Nome::Sampled { min: 0.05, max: 0.4 }).unwrap();
    assert!(reps.iter().all(|r| r.status == Status::Pass), "{}", show(&reps));
}

#[test]
fn suite_is_deterministic() {
    let ctx = QContext::from_q(Complex64::new(0.25, 0.0)).unwrap();
    let ids = ["RAMANUJAN_1PSI1", "THM11_1", "ELLIPTIC_WP"];
    let a = run_suite(&ctx, Some(&ids), 5, 8).unwrap();
    let b = run_suite(&ctx, Some(&ids), 5, 8).unwrap();
    assert_eq!(a, b);
}
