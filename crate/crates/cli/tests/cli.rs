use std::process::{Command, Output};

fn qpsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpsi")).args(args).output().expect("qpsi runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn expand_third_order_f_csv() {
    let o = qpsi(&["expand", "order3.f", "--order", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("0,1,1,1\n1,1,1,1\n2,1,-2,1\n3,1,3,1\n"), "{s}");
    assert_eq!(s.lines().count(), 10);
}

#[test]
fn expand_json_has_rational_strings() {
    let o = qpsi(&["expand", "order2.A", "--order", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    let coeffs: Vec<&str> = terms.iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "2", "3"]);
    assert_eq!(v["order"], "4");
}

#[test]
fn expand_w_form_of_half_integer_entry() {
    let o = qpsi(&["expand", "order6.phi_minus", "--order", "6", "--form", "rhs_w", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let lhs = qpsi(&["expand", "order6.phi_minus", "--order", "6", "--format", "csv"]);
    assert_eq!(stdout(&o), stdout(&lhs));
}

#[test]
fn mu_at_alpha_zero() {
    let o = qpsi(&["eval", "mu", "--u", "0.2+0.1i", "--v", "0.4+0.05i", "--alpha", "0", "--q", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let want = -0.3f64.powf(-0.125);
    assert!(v["value"]["re"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["value"]["im"].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn divergent_psi_is_a_domain_error() {
    let o = qpsi(&["eval", "psi", "--upper", "0.5", "--lower", "0.7", "--x", "1.5", "--q", "0.3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("divergent: |x| >= 1"), "{}", stderr(&o));
}

#[test]
fn pole_is_a_domain_error() {
    let o = qpsi(&["eval", "theta", "--x", "0.09", "--q", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qpsi(&["eval", "pochhammer", "--a", "0.3", "--n", "-2", "--q", "0.3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn eval_needs_a_nome() {
    let o = qpsi(&["eval", "theta", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qpsi(&["eval", "theta", "--x", "0.5", "--q", "1.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_ids_exit_two() {
    assert_eq!(qpsi(&["verify", "NO_SUCH_ID"]).status.code(), Some(2));
    assert_eq!(qpsi(&["suite", "--ids", "RAMANUJAN_1PSI1,NOPE"]).status.code(), Some(2));
    assert_eq!(qpsi(&["expand", "order3.nope"]).status.code(), Some(2));
    assert_eq!(qpsi(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_identity_passes() {
    let o = qpsi(&["verify", "RAMANUJAN_1PSI1", "--seed", "3", "--draws", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["completed"], 10);
}

#[test]
fn verify_catalog_entry_reports_finding() {
    let o = qpsi(&["verify", "order3.f"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qpsi(&["verify", "order5.f1", "--order", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["findings"][0]["exponent"], "3");
    assert_eq!(v["findings"][0]["left_coeff"], "-1");
    assert_eq!(v["findings"][0]["right_coeff"], "1");
}

#[test]
fn suite_is_byte_identical_per_seed() {
    let args = ["suite", "--seed", "11", "--draws", "4", "--q", "0.25+0.1i"];
    let a = qpsi(&args);
    let b = qpsi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = qpsi(&["suite", "--seed", "12", "--draws", "4", "--q", "0.25+0.1i"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn suite_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("qpsi-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = qpsi(&["suite", "--ids", "BAILEY_6PSI6,order3.f", "--draws", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["passed"], 2);
    assert_eq!(v["nome"]["sampled"]["max"], 0.4);
    assert_eq!(v["catalog"][0]["name"], "order3.f");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_suite_fails_on_findings() {
    let o = qpsi(&["catalog", "verify", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("passed 42 failed 4"), "{s}");
    assert!(s.contains("first difference at q^28: 28 vs 31"), "{s}");
}

#[test]
fn catalog_export_lists_every_entry() {
    let o = qpsi(&["catalog", "export"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 46);
}

#[test]
fn term_budget_from_environment() {
    let args = ["eval", "pochhammer", "--a", "0.5", "--n", "inf", "--q", "0.9"];
    let ok = qpsi(&args);
    assert_eq!(ok.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_qpsi")).args(args).env("QPSI_MAX_TERMS", "8").output().unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stdout));
    let o = Command::new(env!("CARGO_BIN_EXE_qpsi")).args(args).env("QPSI_MAX_TERMS", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_has_identities_and_entries() {
    let s = stdout(&qpsi(&["list"]));
    assert!(s.contains("BAILEY_6PSI6"));
    assert!(s.contains("order10.psi"));
}
