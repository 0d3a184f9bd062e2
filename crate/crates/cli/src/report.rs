//! JSON shapes written by the CLI. Floats are JSON numbers, exact rationals
//! are strings.

use qpsi_core::catalog::{EntryReport, MockThetaEntry};
use qpsi_core::identities::{IdentityReport, Status};
use qpsi_core::qcore::C64;
use serde::Serialize;

#[derive(Serialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexJson {
    fn from(z: C64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Serialize, Debug)]
pub struct ParamJson {
    pub name: String,
    pub value: ComplexJson,
}

#[derive(Serialize, Debug)]
pub struct FailureJson {
    pub params: Vec<ParamJson>,
    pub label: String,
    pub lhs: ComplexJson,
    pub rhs: ComplexJson,
    pub err: f64,
}

#[derive(Serialize, Debug)]
pub struct IdentityJson {
    pub id: String,
    pub paper_ref: String,
    pub seed: u64,
    pub draws: usize,
    pub completed: usize,
    pub tol: f64,
    pub max_rel_err: f64,
    pub status: &'static str,
    pub failures: Vec<FailureJson>,
    pub rejected_samples: usize,
}

impl From<&IdentityReport> for IdentityJson {
    fn from(r: &IdentityReport) -> Self {
        IdentityJson {
            id: r.id.clone(),
            paper_ref: r.paper_ref.clone(),
            seed: r.seed,
            draws: r.draws,
            completed: r.completed,
            tol: r.tol,
            max_rel_err: r.max_rel_err,
            status: r.status.as_str(),
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    params: f.params.iter().map(|(n, z)| ParamJson { name: n.clone(), value: (*z).into() }).collect(),
                    label: f.label.clone(),
                    lhs: f.lhs.into(),
                    rhs: f.rhs.into(),
                    err: f.err,
                })
                .collect(),
            rejected_samples: r.rejected_samples,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct FindingJson {
    pub left: &'static str,
    pub right: &'static str,
    pub exponent: String,
    pub left_coeff: String,
    pub right_coeff: String,
}

#[derive(Serialize, Debug)]
pub struct AmendmentJson {
    pub form: &'static str,
    pub term: usize,
    pub edit: &'static str,
    pub matches: &'static str,
}

#[derive(Serialize, Debug)]
pub struct CatalogJson {
    pub name: String,
    pub order: String,
    pub status: &'static str,
    pub findings: Vec<FindingJson>,
    pub amendments: Vec<AmendmentJson>,
}

impl From<&EntryReport> for CatalogJson {
    fn from(r: &EntryReport) -> Self {
        CatalogJson {
            name: r.name.to_string(),
            order: r.order.to_string(),
            status: r.status.as_str(),
            findings: r
                .findings
                .iter()
                .map(|f| FindingJson {
                    left: f.left.as_str(),
                    right: f.right.as_str(),
                    exponent: f.exponent.to_string(),
                    left_coeff: f.left_coeff.to_string(),
                    right_coeff: f.right_coeff.to_string(),
                })
                .collect(),
            amendments: r
                .amendments
                .iter()
                .map(|a| AmendmentJson {
                    form: a.form.as_str(),
                    term: a.term + 1,
                    edit: a.edit.as_str(),
                    matches: a.matches.as_str(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct EntryJson {
    pub name: &'static str,
    pub order: u32,
    pub denom: i64,
    pub definition: &'static str,
    pub paper_ref: String,
    pub rhs_w_terms: usize,
    pub rhs_bilateral_terms: usize,
    pub corrections: usize,
}

impl From<&MockThetaEntry> for EntryJson {
    fn from(e: &MockThetaEntry) -> Self {
        EntryJson {
            name: e.name,
            order: e.order,
            denom: e.denom,
            definition: e.definition,
            paper_ref: e.paper_ref(),
            rhs_w_terms: e.rhs_w.len(),
            rhs_bilateral_terms: e.rhs_bilateral.len(),
            corrections: e.corrections().len(),
        }
    }
}

#[derive(Serialize, Debug, Default)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

#[derive(Serialize, Debug)]
#[serde(rename_all = "snake_case")]
pub enum NomeJson {
    Fixed { q: ComplexJson, tau: ComplexJson },
    Sampled { min: f64, max: f64 },
}

#[derive(Serialize, Debug)]
pub struct SuiteJson {
    pub seed: u64,
    pub draws: usize,
    pub nome: NomeJson,
    pub identities: Vec<IdentityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Vec<CatalogJson>>,
    pub summary: Summary,
}
