//! The mock theta catalog: for each function of orders 2, 3, 5, 6, 7, 8 and
//! 10 its Eulerian definition, its W-form and its explicit bilateral form,
//! all expanded exactly as formal q-series and compared coefficient by
//! coefficient.
//!
//! Every printed form is a list of [`Term`]s `c q^s body`, so that a mismatch
//! can be localized to a single term and simple transcription slips (a sign,
//! a power of q, a factor of two) can be tested by editing `c` or `s` alone.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{QError, Result};
use crate::fps::{bilateral_sum_factored, MAX_INDEX, eulerian_sum_factored, Factored, FormalSeries, Monomial};
use crate::identities::Status;
use crate::mu::w_func;
use crate::qcore::QContext;
use num_complex::Complex64;
use crate::qcore::PochIndex;

/// Index of a summand as a function of the summation variable.
pub type TermFn = fn(i64) -> Factored;

/// Body of one printed term.
#[derive(Clone, Debug)]
pub enum Expr {
    /// A finite product of monomials, binomials, q-Pochhammer symbols and thetas.
    Product(Factored),
    /// `pre * W(a; b, c; p)`.
    W { pre: Factored, a: Monomial, b: Monomial, c: Monomial, p: Monomial },
    /// `pre * sum_{n in Z} term(n)`.
    Bilateral { pre: Factored, term: TermFn },
    /// `sum_{n >= start} term(n)`.
    Eulerian { start: i64, term: TermFn },
}

/// `W(a; b, c; p)` summand at index `n`.
pub fn w_term(a: &Monomial, b: &Monomial, c: &Monomial, p: &Monomial, n: i64) -> Factored {
    let ab = a.div(b);
    let ac = a.div(c);
    let z = a.pow(3).div(&b.mul(c));
    Factored::one()
        .one_minus(&a.mul(&p.pow(2 * n)), 1)
        .poch(b, p, PochIndex::Finite(n), 1)
        .poch(c, p, PochIndex::Finite(n), 1)
        .poch(&ab, p, PochIndex::Finite(n + 1), -1)
        .poch(&ac, p, PochIndex::Finite(n + 1), -1)
        .times(&p.pow(2 * n * n))
        .times(&z.pow(n))
}

/// `W(a; b, c; p)` to `order`.
pub fn w_fs(a: &Monomial, b: &Monomial, c: &Monomial, p: &Monomial, order: Rational64) -> Result<FormalSeries> {
    bilateral_sum_factored(|n| w_term(a, b, c, p, n), order)
}

impl Expr {
    pub fn eval(&self, order: Rational64) -> Result<FormalSeries> {
        match self {
            Expr::Product(f) => f.expand(order),
            Expr::W { pre, a, b, c, p } => {
                bilateral_sum_factored(|n| pre.clone().product(&w_term(a, b, c, p, n)), order)
            }
            Expr::Bilateral { pre, term } => bilateral_sum_factored(|n| pre.clone().product(&term(n)), order),
            Expr::Eulerian { start, term } => eulerian_sum_factored(*start, term, order),
        }
    }
}

/// One printed term `coef * q^shift * body`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coef: BigRational,
    pub shift: Rational64,
    pub body: Expr,
    /// A theta or eta-product correction rather than a W or sum term.
    pub correction: bool,
}

impl Term {
    pub fn eval(&self, order: Rational64) -> Result<FormalSeries> {
        Ok(self.body.eval(order - self.shift)?.shift(self.shift).scale(&self.coef))
    }
}

fn eval_form(terms: &[Term], order: Rational64) -> Result<FormalSeries> {
    let mut acc = FormalSeries::zero_to(order);
    for t in terms {
        acc = &acc + &t.eval(order)?;
    }
    Ok(acc.truncate(order))
}

/// The three printed forms of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Form {
    Eulerian,
    W,
    Bilateral,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Eulerian, Form::W, Form::Bilateral];

    pub fn as_str(self) -> &'static str {
        match self {
            Form::Eulerian => "lhs",
            Form::W => "rhs_w",
            Form::Bilateral => "rhs_bilateral",
        }
    }
}

/// One catalog function with its three printed forms.
#[derive(Clone, Debug)]
pub struct MockThetaEntry {
    /// Namespaced as `orderK.name`.
    pub name: &'static str,
    pub order: u32,
    /// Exponent denominator of the expansion.
    pub denom: i64,
    /// The Eulerian definition in plain text.
    pub definition: &'static str,
    pub lhs: Vec<Term>,
    pub rhs_w: Vec<Term>,
    pub rhs_bilateral: Vec<Term>,
}

impl MockThetaEntry {
    pub fn form(&self, f: Form) -> &[Term] {
        match f {
            Form::Eulerian => &self.lhs,
            Form::W => &self.rhs_w,
            Form::Bilateral => &self.rhs_bilateral,
        }
    }

    pub fn eval(&self, f: Form, order: Rational64) -> Result<FormalSeries> {
        eval_form(self.form(f), order)
    }

    /// Correction terms of the W form.
    pub fn corrections(&self) -> Vec<&Term> {
        self.rhs_w.iter().filter(|t| t.correction).collect()
    }

    pub fn paper_ref(&self) -> String {
        let fname = self.name.split('.').nth(1).unwrap_or(self.name);
        format!("mock theta function {fname}(q) of order {}: {}", self.order, self.definition)
    }
}

/// First coefficient where two forms disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub left: Form,
    pub right: Form,
    pub exponent: Rational64,
    pub left_coeff: BigRational,
    pub right_coeff: BigRational,
}

/// Single-term edits tried when a form disagrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edit {
    FlipSign,
    ShiftUp,
    ShiftDown,
    DropShift,
    Double,
    Halve,
}

impl Edit {
    pub const ALL: [Edit; 6] = [Edit::FlipSign, Edit::ShiftUp, Edit::ShiftDown, Edit::DropShift, Edit::Double, Edit::Halve];

    pub fn as_str(self) -> &'static str {
        match self {
            Edit::FlipSign => "flip sign",
            Edit::ShiftUp => "multiply by q^(1/D)",
            Edit::ShiftDown => "divide by q^(1/D)",
            Edit::DropShift => "drop the q-power prefactor",
            Edit::Double => "double the coefficient",
            Edit::Halve => "halve the coefficient",
        }
    }
}

/// A one-edit variant of a form that agrees with another form.
#[derive(Clone, Debug, PartialEq)]
pub struct Amendment {
    pub form: Form,
    /// Zero-based position of the edited term in the form.
    pub term: usize,
    pub edit: Edit,
    /// The form the edited variant agrees with.
    pub matches: Form,
}

impl Amendment {
    pub fn describe(&self) -> String {
        format!(
            "{} term {}: {} -> agrees with {}",
            self.form.as_str(),
            self.term + 1,
            self.edit.as_str(),
            self.matches.as_str()
        )
    }
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: &'static str,
    /// Order (in powers of q) to which the forms were compared.
    pub order: Rational64,
    pub status: Status,
    pub findings: Vec<Finding>,
    pub amendments: Vec<Amendment>,
}

/// All catalog entries, grouped by order.
pub fn list_entries() -> Vec<MockThetaEntry> {
    vec![
        o2_a(), o2_b(), o2_mu(),
        o3_f(), o3_phi(), o3_psi(), o3_chi(), o3_omega(), o3_nu(), o3_rho(),
        o5_f0(), o5_f1(), o5_cf0(), o5_cf1(), o5_phi0(), o5_phi1(), o5_psi0(), o5_psi1(), o5_chi0(), o5_chi1(),
        o5_cpsi0(), o5_cpsi1(),
        o6_phi(), o6_psi(), o6_rho(), o6_sigma(), o6_lambda(), o6_mu(), o6_gamma(), o6_phi_minus(), o6_psi_minus(),
        o7_f0(), o7_f1(), o7_f2(),
        o8_s0(), o8_s1(), o8_t0(), o8_t1(), o8_u0(), o8_u1(), o8_v0(), o8_v1(),
        o10_phi(), o10_psi(), o10_x(), o10_chi(),
    ]
}

pub fn find_entry(name: &str) -> Result<MockThetaEntry> {
    list_entries().into_iter().find(|e| e.name == name).ok_or_else(|| QError::UnknownEntry(String::from(name)))
}

/// Eulerian expansion of an entry to `order`.
pub fn expand(name: &str, order: Rational64) -> Result<FormalSeries> {
    find_entry(name)?.eval(Form::Eulerian, order)
}

fn compare(entry: &MockThetaEntry, values: &[FormalSeries; 3]) -> Vec<Finding> {
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if let Some((e, a, b)) = values[i].first_difference(&values[j]) {
            out.push(Finding {
                left: Form::ALL[i],
                right: Form::ALL[j],
                exponent: e,
                left_coeff: a,
                right_coeff: b,
            });
        }
    }
    let _ = entry;
    out
}

fn apply_edit(t: &Term, edit: Edit, step: Rational64) -> (BigRational, Rational64) {
    let two = BigRational::from_integer(BigInt::from(2));
    match edit {
        Edit::FlipSign => (-t.coef.clone(), t.shift),
        Edit::ShiftUp => (t.coef.clone(), t.shift + step),
        Edit::ShiftDown => (t.coef.clone(), t.shift - step),
        Edit::DropShift => (t.coef.clone(), Rational64::zero()),
        Edit::Double => (&t.coef * &two, t.shift),
        Edit::Halve => (&t.coef / &two, t.shift),
    }
}

fn amendments_for(
    entry: &MockThetaEntry,
    form: Form,
    targets: &[(Form, &FormalSeries)],
    order: Rational64,
) -> Result<Vec<Amendment>> {
    let terms = entry.form(form);
    let step = Rational64::new(1, entry.denom);
    // bodies known far enough for every shift edit
    let mut bodies = Vec::with_capacity(terms.len());
    for t in terms {
        let need = order - t.shift.min(Rational64::zero()) + t.shift.abs() + step;
        bodies.push(t.body.eval(need)?);
    }
    let base: Vec<FormalSeries> = terms
        .iter()
        .zip(&bodies)
        .map(|(t, b)| b.shift(t.shift).scale(&t.coef).truncate(order))
        .collect();
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        for edit in Edit::ALL {
            let (c, s) = apply_edit(t, edit, step);
            if c == t.coef && s == t.shift {
                continue;
            }
            let edited = bodies[i].shift(s).scale(&c);
            if edited.order().is_some_and(|o| o < order) {
                continue;
            }
            let mut acc = edited.truncate(order);
            for (j, b) in base.iter().enumerate() {
                if j != i {
                    acc = &acc + b;
                }
            }
            for (g, v) in targets {
                if acc.first_difference(v).is_none() {
                    out.push(Amendment { form, term: i, edit, matches: *g });
                }
            }
        }
    }
    Ok(out)
}

/// Compares the three printed forms of `entry` exactly to `order`.
pub fn verify(entry: &MockThetaEntry, order: Rational64) -> Result<EntryReport> {
    let values = [
        entry.eval(Form::Eulerian, order)?,
        entry.eval(Form::W, order)?,
        entry.eval(Form::Bilateral, order)?,
    ];
    let findings = compare(entry, &values);
    let mut amendments = Vec::new();
    if !findings.is_empty() {
        let agrees = |i: usize, j: usize| values[i].first_difference(&values[j]).is_none();
        for (k, form) in Form::ALL.iter().enumerate() {
            let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
            let (a, b) = (others[0], others[1]);
            let odd_one_out = agrees(a, b) && !agrees(k, a);
            let all_differ = !agrees(0, 1) && !agrees(0, 2) && !agrees(1, 2);
            if odd_one_out || all_differ {
                let targets: Vec<(Form, &FormalSeries)> = others.iter().map(|&j| (Form::ALL[j], &values[j])).collect();
                amendments.extend(amendments_for(entry, *form, &targets, order)?);
            }
        }
    }
    let status = if findings.is_empty() { Status::Pass } else { Status::Fail };
    Ok(EntryReport { name: entry.name, order, status, findings, amendments })
}

pub fn verify_entry(name: &str, order: Rational64) -> Result<EntryReport> {
    verify(&find_entry(name)?, order)
}

/// Order used for an entry when the catalog is checked at `order` powers of q:
/// entries in half-integer powers are checked to `order / 2`.
pub fn entry_order(entry: &MockThetaEntry, order: i64) -> Rational64 {
    if entry.denom == 1 {
        Rational64::from_integer(order)
    } else {
        Rational64::new(order, entry.denom)
    }
}

/// Verifies every entry; one report per entry in registry order.
pub fn verify_all(order: i64) -> Vec<Result<EntryReport>> {
    list_entries().iter().map(|e| verify(e, entry_order(e, order))).collect()
}

fn mono_f64(m: &Monomial, q: f64) -> f64 {
    Factored::one().times(m).eval_f64(q).unwrap_or(f64::NAN)
}

/// Sum of `f(n)` over `n = start, start + step, ...` until the terms die out.
fn sum_direction(start: i64, step: i64, mut f: impl FnMut(i64) -> Result<f64>) -> Result<f64> {
    let mut s = 0.0;
    let mut small = 0;
    let mut n = start;
    while small < 3 {
        if (n - start).abs() > MAX_INDEX {
            return Err(QError::RangeOverflow);
        }
        let t = f(n)?;
        s += t;
        let scale = num_traits::Float::max(num_traits::Float::abs(s), 1.0);
        small = if num_traits::Float::abs(t) <= 1e-17 * scale { small + 1 } else { 0 };
        n += step;
    }
    Ok(s)
}

impl Expr {
    /// Floating-point value at real `0 < q < 1`, computed without formal
    /// expansion: sums are summed term by term and W goes through the
    /// numeric `w_func` in its own nome.
    pub fn eval_f64(&self, q: f64) -> Result<f64> {
        match self {
            Expr::Product(f) => f.eval_f64(q),
            Expr::W { pre, a, b, c, p } => {
                let ctx = QContext::from_q(Complex64::new(mono_f64(p, q), 0.0))?;
                let r = |m: &Monomial| Complex64::new(mono_f64(m, q), 0.0);
                let v = w_func(&ctx, r(a), r(b), r(c))?;
                Ok(pre.eval_f64(q)? * v.re)
            }
            Expr::Bilateral { pre, term } => {
                let p = pre.eval_f64(q)?;
                let up = sum_direction(0, 1, |n| term(n).eval_f64(q))?;
                let down = sum_direction(-1, -1, |n| term(n).eval_f64(q))?;
                Ok(p * (up + down))
            }
            Expr::Eulerian { start, term } => sum_direction(*start, 1, |n| term(n).eval_f64(q)),
        }
    }
}

impl Term {
    pub fn eval_f64(&self, q: f64) -> Result<f64> {
        let c = num_traits::ToPrimitive::to_f64(&self.coef).unwrap_or(f64::NAN);
        let s = *self.shift.numer() as f64 / *self.shift.denom() as f64;
        Ok(c * num_traits::Float::powf(q, s) * self.body.eval_f64(q)?)
    }
}

/// Floating-point values of the three forms and of the exact Eulerian
/// expansion, at one real nome.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCheck {
    pub q: f64,
    pub lhs: f64,
    pub rhs_w: f64,
    pub rhs_bilateral: f64,
    /// Exact expansion to `order`, then substituted.
    pub formal: f64,
}

impl NumericCheck {
    /// Largest pairwise difference among the four values.
    pub fn max_gap(&self) -> f64 {
        let v = [self.lhs, self.rhs_w, self.rhs_bilateral, self.formal];
        let mut g: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                g = num_traits::Float::max(g, num_traits::Float::abs(v[i] - v[j]));
            }
        }
        g
    }
}

pub fn numeric_check(entry: &MockThetaEntry, order: Rational64, q: f64) -> Result<NumericCheck> {
    let form = |f: Form| -> Result<f64> { entry.form(f).iter().map(|t| t.eval_f64(q)).sum() };
    Ok(NumericCheck {
        q,
        lhs: form(Form::Eulerian)?,
        rhs_w: form(Form::W)?,
        rhs_bilateral: form(Form::Bilateral)?,
        formal: entry.eval(Form::Eulerian, order)?.eval_f64(q),
    })
}

/// Every correction term of the W form expands with integer coefficients
/// (the term's own scalar aside).
pub fn corrections_integral(entry: &MockThetaEntry, order: Rational64) -> Result<bool> {
    for t in entry.corrections() {
        if !t.body.eval(order)?.is_integral() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A corrected printed form for an entry whose displays disagree.
#[derive(Clone, Debug)]
pub struct ProposedFix {
    pub name: &'static str,
    pub form: Form,
    pub note: &'static str,
    pub terms: Vec<Term>,
}

/// Corrections for the displays that fail exact comparison as printed.
pub fn proposed_fixes() -> Vec<ProposedFix> {
    let mut out = Vec::new();

    let mut f1 = o5_f1().rhs_bilateral;
    f1[1].shift = Rational64::zero();
    out.push(ProposedFix {
        name: "order5.f1",
        form: Form::Bilateral,
        note: "second sum carries q^3 both outside and inside the summand; keep only the inner one",
        terms: f1,
    });

    let mut chi0 = o5_chi0().rhs_bilateral;
    chi0[1] = t(
        3,
        0,
        bil(ith(mq(-5), q(15)), |n| {
            one().om(q(30 * n - 5), 1).x(q(30 * n * n - 10 * n - 6)).om(q(15 * n + 1), -1).om(q(15 * n - 6), -1)
        }),
    );
    out.push(ProposedFix {
        name: "order5.chi0",
        form: Form::Bilateral,
        note: "first sum: denominators (1 - q^{15n+1})(1 - q^{15n-6}) in place of 30n",
        terms: chi0,
    });

    let mut f2 = o7_f2().rhs_bilateral;
    f2[1] = t(
        2,
        0,
        bil(ith(mq(10), q(21)), |n| {
            one().om(q(42 * n + 10), 1).x(q(42 * n * n + 20 * n + 2)).om(q(21 * n + 6), -1).om(q(21 * n + 4), -1)
        }),
    );
    out.push(ProposedFix {
        name: "order7.F2",
        form: Form::Bilateral,
        note: "second sum: (1 - q^{42n+10}) q^{42n^2+20n+2} in place of 21n and 21n^2",
        terms: f2,
    });

    let mut psi10 = o10_psi().rhs_w;
    psi10[1].shift = Rational64::one();
    out.push(ProposedFix {
        name: "order10.psi",
        form: Form::W,
        note: "product correction needs the factor q, as in the bilateral display",
        terms: psi10,
    });

    out
}

/// Re-verifies an entry with one form replaced by a proposed fix.
pub fn verify_fix(fix: &ProposedFix, order: Rational64) -> Result<EntryReport> {
    let mut e = find_entry(fix.name)?;
    match fix.form {
        Form::Eulerian => e.lhs = fix.terms.clone(),
        Form::W => e.rhs_w = fix.terms.clone(),
        Form::Bilateral => e.rhs_bilateral = fix.terms.clone(),
    }
    verify(&e, order)
}

// ---------------------------------------------------------------------------
// Transcription helpers.

fn q(e: i64) -> Monomial {
    Monomial::q(e)
}

fn mq(e: i64) -> Monomial {
    Monomial::int(-1, e)
}

fn qh(num: i64) -> Monomial {
    Monomial::frac(1, num, 2)
}

fn mqh(num: i64) -> Monomial {
    Monomial::frac(-1, num, 2)
}

fn cst(c: i64) -> Monomial {
    Monomial::constant(c)
}

/// `(-1)^n`.
fn sg(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn one() -> Factored {
    Factored::one()
}

trait Build: Sized {
    /// `(a; p)_n^k`.
    fn p(self, a: Monomial, p: Monomial, n: i64, k: i64) -> Self;
    /// `(a; p)_inf^k`.
    fn pi(self, a: Monomial, p: Monomial, k: i64) -> Self;
    /// `(q^m; q^m)_inf^k`.
    fn eta(self, m: i64, k: i64) -> Self;
    /// `theta_p(x)^k`.
    fn th(self, x: Monomial, p: Monomial, k: i64) -> Self;
    /// `(1 - m)^k`.
    fn om(self, m: Monomial, k: i64) -> Self;
    /// `(1 + m)^k`.
    fn op(self, m: Monomial, k: i64) -> Self;
    fn x(self, m: Monomial) -> Self;
}

impl Build for Factored {
    fn p(self, a: Monomial, p: Monomial, n: i64, k: i64) -> Self {
        self.poch(&a, &p, PochIndex::Finite(n), k)
    }
    fn pi(self, a: Monomial, p: Monomial, k: i64) -> Self {
        self.poch(&a, &p, PochIndex::Infinite, k)
    }
    fn eta(self, m: i64, k: i64) -> Self {
        self.poch(&q(m), &q(m), PochIndex::Infinite, k)
    }
    fn th(self, x: Monomial, p: Monomial, k: i64) -> Self {
        self.theta(&x, &p, k)
    }
    fn om(self, m: Monomial, k: i64) -> Self {
        self.one_minus(&m, k)
    }
    fn op(self, m: Monomial, k: i64) -> Self {
        self.one_plus(&m, k)
    }
    fn x(self, m: Monomial) -> Self {
        self.times(&m)
    }
}

/// `1 / theta_p(x)`.
fn ith(x: Monomial, p: Monomial) -> Factored {
    one().th(x, p, -1)
}

fn w(pre: Factored, a: Monomial, b: Monomial, c: Monomial, p: Monomial) -> Expr {
    Expr::W { pre, a, b, c, p }
}

fn bil(pre: Factored, term: TermFn) -> Expr {
    Expr::Bilateral { pre, term }
}

fn eul(start: i64, term: TermFn) -> Expr {
    Expr::Eulerian { start, term }
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// Main term `c q^s body`.
fn t(c: i64, s: i64, body: Expr) -> Term {
    Term { coef: ri(c), shift: Rational64::from_integer(s), body, correction: false }
}

fn tr(c: BigRational, s: Rational64, body: Expr) -> Term {
    Term { coef: c, shift: s, body, correction: false }
}

/// Correction term `c q^s product`.
fn tc(c: i64, s: i64, f: Factored) -> Term {
    Term { coef: ri(c), shift: Rational64::from_integer(s), body: Expr::Product(f), correction: true }
}

fn tcr(c: BigRational, s: Rational64, f: Factored) -> Term {
    Term { coef: c, shift: s, body: Expr::Product(f), correction: true }
}

fn entry(
    name: &'static str,
    order: u32,
    denom: i64,
    definition: &'static str,
    lhs: Vec<Term>,
    rhs_w: Vec<Term>,
    rhs_bilateral: Vec<Term>,
) -> MockThetaEntry {
    MockThetaEntry { name, order, denom, definition, lhs, rhs_w, rhs_bilateral }
}

// ---------------------------------------------------------------------------
// Order 2.

fn o2_a() -> MockThetaEntry {
    entry(
        "order2.A",
        2,
        1,
        "sum_{n>=0} q^{n+1} (-q^2;q^2)_n / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n + 1)).p(mq(2), q(2), n, 1).p(q(1), q(2), n + 1, -1)))],
        vec![t(1, 2, w(ith(mq(5), q(4)), q(5), q(3), q(2), q(4)))],
        vec![t(
            1,
            0,
            bil(ith(mq(5), q(4)), |n| {
                one().om(q(8 * n + 5), 1).x(q(8 * n * n + 10 * n + 2)).om(q(4 * n + 3), -1).om(q(4 * n + 2), -1)
            }),
        )],
    )
}

fn o2_b() -> MockThetaEntry {
    entry(
        "order2.B",
        2,
        1,
        "sum_{n>=0} q^n (-q;q^2)_n / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n)).p(mq(1), q(2), n, 1).p(q(1), q(2), n + 1, -1)))],
        vec![t(1, 2, w(ith(mq(6), q(4)), q(6), q(3), q(3), q(4)))],
        vec![t(
            1,
            0,
            bil(ith(mq(6), q(4)), |n| one().op(q(4 * n + 3), 1).om(q(4 * n + 3), -1).x(q(8 * n * n + 12 * n + 2))),
        )],
    )
}

fn o2_mu() -> MockThetaEntry {
    let corr = || one().eta(2, 8).eta(1, -3).eta(4, -4);
    entry(
        "order2.mu",
        2,
        1,
        "sum_{n>=0} (-1)^n q^{n^2} (q;q^2)_n / (-q^2;q^2)_n^2",
        vec![t(1, 0, eul(0, |n| one().x(Monomial::int(sg(n), n * n)).p(q(1), q(2), n, 1).p(mq(2), q(2), n, -2)))],
        vec![t(4, 0, w(ith(q(1), q(4)), mq(1), q(1), cst(-1), q(4))), tc(-1, 0, corr())],
        vec![
            t(
                4,
                0,
                bil(ith(q(1), q(4)), |n| {
                    one().op(q(8 * n + 1), 1).x(q(8 * n * n + 2 * n)).om(q(4 * n + 1), -1).op(q(4 * n), -1)
                }),
            ),
            tc(-1, 0, corr()),
        ],
    )
}

// ---------------------------------------------------------------------------
// Order 3.

fn o3_fchi_corr() -> Factored {
    one().eta(3, 4).eta(1, -1).eta(6, -2)
}

fn o3_fchi_bil(n: i64) -> Factored {
    one().op(q(6 * n + 3), 1).x(q(6 * n * n + 6 * n + 1)).om(q(3 * n + 1), -1).op(q(3 * n + 2), -1)
}

fn o3_f() -> MockThetaEntry {
    entry(
        "order3.f",
        3,
        1,
        "sum_{n>=0} q^{n^2} / (-q;q)_n^2",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(1), n, -2)))],
        vec![t(-4, 1, w(ith(q(3), q(3)), mq(3), mq(2), q(1), q(3))), tc(1, 0, o3_fchi_corr())],
        vec![t(-4, 0, bil(ith(q(3), q(3)), o3_fchi_bil)), tc(1, 0, o3_fchi_corr())],
    )
}

fn o3_phipsi_corr() -> Factored {
    one().eta(6, 1).eta(12, 2).eta(3, -1).eta(4, -1)
}

fn o3_phi() -> MockThetaEntry {
    entry(
        "order3.phi",
        3,
        1,
        "sum_{n>=0} q^{n^2} / (-q^2;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(2), q(2), n, -1)))],
        vec![t(-2, 2, w(ith(mq(5), mq(3)), q(5), q(3), q(2), mq(3))), tc(2, 1, o3_phipsi_corr())],
        vec![
            t(
                -2,
                0,
                bil(ith(mq(5), mq(3)), |n| {
                    one()
                        .om(q(6 * n + 5), 1)
                        .x(q(6 * n * n + 10 * n + 2))
                        .om(Monomial::int(sg(n), 3 * n + 2), -1)
                        .om(Monomial::int(sg(n), 3 * n + 3), -1)
                }),
            ),
            tc(2, 1, o3_phipsi_corr()),
        ],
    )
}

fn o3_psi() -> MockThetaEntry {
    entry(
        "order3.psi",
        3,
        1,
        "sum_{n>=1} q^{n^2} / (q;q^2)_n",
        vec![t(1, 0, eul(1, |n| one().x(q(n * n)).p(q(1), q(2), n, -1)))],
        vec![t(1, 1, w(ith(mq(3), mq(3)), q(3), q(2), q(1), mq(3))), tc(1, 1, o3_phipsi_corr())],
        vec![
            t(
                1,
                0,
                bil(ith(mq(3), mq(3)), |n| {
                    one()
                        .om(q(6 * n + 3), 1)
                        .x(q(6 * n * n + 6 * n + 1))
                        .om(Monomial::int(sg(n), 3 * n + 1), -1)
                        .om(Monomial::int(sg(n), 3 * n + 2), -1)
                }),
            ),
            tc(1, 1, o3_phipsi_corr()),
        ],
    )
}

fn o3_chi() -> MockThetaEntry {
    entry(
        "order3.chi",
        3,
        1,
        "sum_{n>=0} q^{n^2} (-q;q)_n / (-q^3;q^3)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(1), n, 1).p(mq(3), q(3), n, -1)))],
        vec![t(-1, 1, w(ith(q(3), q(3)), mq(3), mq(2), q(1), q(3))), tc(1, 0, o3_fchi_corr())],
        vec![t(-1, 0, bil(ith(q(3), q(3)), o3_fchi_bil)), tc(1, 0, o3_fchi_corr())],
    )
}

fn o3_omega() -> MockThetaEntry {
    let corr = || one().eta(6, 4).eta(2, -1).eta(3, -2);
    entry(
        "order3.omega",
        3,
        1,
        "sum_{n>=0} q^{2n(n+1)} / (q;q^2)_{n+1}^2",
        vec![t(1, 0, eul(0, |n| one().x(q(2 * n * (n + 1))).p(q(1), q(2), n + 1, -2)))],
        vec![t(2, 1, w(ith(mq(5), q(6)), q(5), q(3), q(2), q(6))), tc(1, 0, corr())],
        vec![
            t(
                2,
                0,
                bil(ith(mq(5), q(6)), |n| {
                    one().om(q(12 * n + 5), 1).x(q(12 * n * n + 10 * n + 1)).om(q(6 * n + 2), -1).om(q(6 * n + 3), -1)
                }),
            ),
            tc(1, 0, corr()),
        ],
    )
}

fn o3_nu() -> MockThetaEntry {
    let corr = || one().eta(1, 1).eta(3, 1).eta(12, 1).eta(2, -1).eta(6, -1);
    entry(
        "order3.nu",
        3,
        1,
        "sum_{n>=0} q^{n(n+1)} / (-q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1))).p(mq(1), q(2), n + 1, -1)))],
        vec![t(2, 2, w(ith(mq(8), q(12)), q(8), mq(5), mq(3), q(12))), tc(1, 0, corr())],
        vec![
            t(
                2,
                0,
                bil(ith(mq(8), q(12)), |n| {
                    one().om(q(24 * n + 8), 1).x(q(24 * n * n + 16 * n + 2)).op(q(12 * n + 5), -1).op(q(12 * n + 3), -1)
                }),
            ),
            tc(1, 0, corr()),
        ],
    )
}

fn o3_rho() -> MockThetaEntry {
    entry(
        "order3.rho",
        3,
        1,
        "sum_{n>=1} q^{2n(n-1)} (q;q^2)_n / (q^3;q^6)_n",
        vec![t(1, 0, eul(1, |n| one().x(q(2 * n * (n - 1))).p(q(1), q(2), n, 1).p(q(3), q(6), n, -1)))],
        vec![t(1, 0, w(ith(mq(3), q(6)), q(3), mq(2), mq(1), q(6)))],
        vec![t(
            1,
            0,
            bil(ith(mq(3), q(6)), |n| {
                one().om(q(12 * n + 3), 1).x(q(12 * n * n + 6 * n)).op(q(6 * n + 1), -1).op(q(6 * n + 2), -1)
            }),
        )],
    )
}

// ---------------------------------------------------------------------------
// Order 5.

/// `(q^5;q^5)^3 / (theta_{q^5}(-q^k) (q^10;q^10))`.
fn o5_f_corr(k: i64) -> Factored {
    one().eta(5, 3).th(mq(k), q(5), -1).eta(10, -1)
}

fn o5_f0() -> MockThetaEntry {
    entry(
        "order5.f0",
        5,
        1,
        "sum_{n>=0} q^{n^2} / (-q;q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(1), n, -1)))],
        vec![
            t(-2, 4, w(ith(mq(22), q(30)), q(22), q(18), q(4), q(30))),
            t(-2, 2, w(ith(mq(12), q(30)), q(12), q(8), q(4), q(30))),
            tc(1, 0, o5_f_corr(1)),
        ],
        vec![
            t(
                -2,
                0,
                bil(ith(mq(22), q(30)), |n| {
                    one().om(q(60 * n + 22), 1).x(q(60 * n * n + 44 * n + 4)).om(q(30 * n + 18), -1).om(q(30 * n + 4), -1)
                }),
            ),
            t(
                -2,
                0,
                bil(ith(mq(12), q(30)), |n| {
                    one().om(q(60 * n + 12), 1).x(q(60 * n * n + 24 * n + 2)).om(q(30 * n + 8), -1).om(q(30 * n + 4), -1)
                }),
            ),
            tc(1, 0, o5_f_corr(1)),
        ],
    )
}

fn o5_f1() -> MockThetaEntry {
    entry(
        "order5.f1",
        5,
        1,
        "sum_{n>=0} q^{n(n+1)} / (-q;q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1))).p(mq(1), q(1), n, -1)))],
        vec![
            t(-2, 7, w(ith(mq(24), q(30)), q(24), q(16), q(8), q(30))),
            t(-2, 3, w(ith(mq(14), q(30)), q(14), q(8), q(6), q(30))),
            tc(1, 0, o5_f_corr(2)),
        ],
        vec![
            t(
                -2,
                0,
                bil(ith(mq(24), q(30)), |n| {
                    one().om(q(60 * n + 24), 1).x(q(60 * n * n + 48 * n + 7)).om(q(30 * n + 16), -1).om(q(30 * n + 8), -1)
                }),
            ),
            t(
                -2,
                3,
                bil(ith(mq(14), q(30)), |n| {
                    one().om(q(60 * n + 14), 1).x(q(60 * n * n + 28 * n + 3)).om(q(30 * n + 8), -1).om(q(30 * n + 6), -1)
                }),
            ),
            tc(1, 0, o5_f_corr(2)),
        ],
    )
}

/// `(q^10;q^10)^3 / ((q^5;q^5) theta_{q^10}(-q^k))`.
fn o5_cf_corr(k: i64) -> Factored {
    one().eta(10, 3).eta(5, -1).th(mq(k), q(10), -1)
}

fn o5_cf0() -> MockThetaEntry {
    entry(
        "order5.F0",
        5,
        1,
        "sum_{n>=0} q^{2n^2} / (q;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(2 * n * n)).p(q(1), q(2), n, -1)))],
        vec![
            t(1, 0, w(ith(mq(4), q(15)), q(4), q(3), q(1), q(15))),
            t(-1, 4, w(ith(mq(16), q(15)), q(16), q(12), q(4), q(15))),
            tc(-1, 1, o5_cf_corr(4)),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(4), q(15)), |n| {
                    one().om(q(30 * n + 4), 1).x(q(30 * n * n + 8 * n)).om(q(15 * n + 3), -1).om(q(15 * n + 1), -1)
                }),
            ),
            t(
                -1,
                0,
                bil(ith(mq(16), q(15)), |n| {
                    one().om(q(30 * n + 16), 1).x(q(30 * n * n + 32 * n + 4)).om(q(15 * n + 12), -1).om(q(15 * n + 4), -1)
                }),
            ),
            tc(-1, 1, o5_cf_corr(4)),
        ],
    )
}

fn o5_cf1() -> MockThetaEntry {
    entry(
        "order5.F1",
        5,
        1,
        "sum_{n>=0} q^{2n(n+1)} / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(2 * n * (n + 1))).p(q(1), q(2), n + 1, -1)))],
        vec![
            t(1, 1, w(ith(mq(7), q(15)), q(7), q(4), q(3), q(15))),
            t(1, 3, w(ith(mq(12), q(15)), q(12), q(8), q(4), q(15))),
            tc(1, 0, o5_cf_corr(2)),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(7), q(15)), |n| {
                    one().om(q(30 * n + 7), 1).x(q(30 * n * n + 14 * n + 1)).om(q(15 * n + 4), -1).om(q(15 * n + 3), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(mq(12), q(15)), |n| {
                    one().om(q(30 * n + 12), 1).x(q(30 * n * n + 24 * n + 3)).om(q(15 * n + 8), -1).om(q(15 * n + 4), -1)
                }),
            ),
            tc(1, 0, o5_cf_corr(2)),
        ],
    )
}

fn o5_phi0() -> MockThetaEntry {
    entry(
        "order5.phi0",
        5,
        1,
        "sum_{n>=0} q^{n^2} (-q;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(2), n, 1)))],
        vec![
            t(1, 8, w(ith(mq(20), mq(15)), q(20), q(11), q(9), mq(15))),
            t(-1, 9, w(ith(q(25), mq(15)), mq(25), mq(16), q(9), mq(15))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(20), mq(15)), |n| {
                    one()
                        .om(q(30 * n + 20), 1)
                        .x(q(30 * n * n + 40 * n + 8))
                        .om(Monomial::int(sg(n), 15 * n + 11), -1)
                        .om(Monomial::int(sg(n), 15 * n + 9), -1)
                }),
            ),
            t(
                -1,
                0,
                bil(ith(q(25), mq(15)), |n| {
                    one()
                        .op(q(30 * n + 25), 1)
                        .x(q(30 * n * n + 50 * n + 9))
                        .op(Monomial::int(sg(n), 15 * n + 16), -1)
                        .om(Monomial::int(sg(n), 15 * n + 9), -1)
                }),
            ),
        ],
    )
}

fn o5_phi1() -> MockThetaEntry {
    entry(
        "order5.phi1",
        5,
        1,
        "sum_{n>=0} q^{(n+1)^2} (-q;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 1))).p(mq(1), q(2), n, 1)))],
        vec![
            t(1, 3, w(ith(mq(10), mq(15)), q(10), q(7), q(3), mq(15))),
            t(1, 1, w(ith(q(5), mq(15)), mq(5), q(3), mq(2), mq(15))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(10), mq(15)), |n| {
                    one()
                        .om(q(30 * n + 10), 1)
                        .x(q(30 * n * n + 20 * n + 3))
                        .om(Monomial::int(sg(n), 15 * n + 7), -1)
                        .om(Monomial::int(sg(n), 15 * n + 3), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(q(5), mq(15)), |n| {
                    one()
                        .op(q(30 * n + 5), 1)
                        .x(q(30 * n * n + 10 * n + 1))
                        .om(Monomial::int(sg(n), 15 * n + 3), -1)
                        .op(Monomial::int(sg(n), 15 * n + 2), -1)
                }),
            ),
        ],
    )
}

fn o5_psi0() -> MockThetaEntry {
    entry(
        "order5.psi0",
        5,
        1,
        "sum_{n>=0} q^{(n+1)(n+2)/2} (-q;q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 2) / 2)).p(mq(1), q(1), n, 1)))],
        vec![
            t(1, 3, w(ith(mq(20), q(30)), q(20), q(17), q(3), q(30))),
            t(1, 1, w(ith(mq(10), q(30)), q(10), q(7), q(3), q(30))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(20), q(30)), |n| {
                    one().om(q(60 * n + 20), 1).x(q(60 * n * n + 40 * n + 3)).om(q(30 * n + 17), -1).om(q(30 * n + 3), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(mq(10), q(30)), |n| {
                    one().om(q(60 * n + 10), 1).x(q(60 * n * n + 20 * n + 1)).om(q(30 * n + 7), -1).om(q(30 * n + 3), -1)
                }),
            ),
        ],
    )
}

fn o5_psi1() -> MockThetaEntry {
    entry(
        "order5.psi1",
        5,
        1,
        "sum_{n>=0} q^{n(n+1)/2} (-q;q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1) / 2)).p(mq(1), q(1), n, 1)))],
        vec![
            t(1, 0, w(ith(mq(10), q(30)), q(10), q(9), q(1), q(30))),
            t(1, 6, w(ith(mq(20), q(30)), q(20), q(11), q(9), q(30))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(10), q(30)), |n| {
                    one().om(q(60 * n + 10), 1).x(q(60 * n * n + 20 * n)).om(q(30 * n + 9), -1).om(q(30 * n + 1), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(mq(20), q(30)), |n| {
                    one().om(q(60 * n + 20), 1).x(q(60 * n * n + 40 * n + 6)).om(q(30 * n + 11), -1).om(q(30 * n + 9), -1)
                }),
            ),
        ],
    )
}

fn o5_chi0() -> MockThetaEntry {
    let corr = || one().th(mq(2), q(5), 3).eta(1, -2);
    entry(
        "order5.chi0",
        5,
        1,
        "sum_{n>=0} q^n / (q^{n+1};q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n)).p(q(n + 1), q(1), n, -1)))],
        vec![
            tc(2, 0, one()),
            t(3, -6, w(ith(mq(-5), q(15)), q(-5), q(1), q(-6), q(15))),
            t(3, 3, w(ith(mq(10), q(15)), q(10), q(6), q(4), q(15))),
            tc(2, 0, corr()),
        ],
        vec![
            tc(2, 0, one()),
            t(
                3,
                0,
                bil(ith(mq(-5), q(15)), |n| {
                    one().om(q(30 * n - 5), 1).x(q(30 * n * n - 10 * n - 6)).om(q(30 * n + 1), -1).om(q(30 * n - 6), -1)
                }),
            ),
            t(
                3,
                0,
                bil(ith(mq(10), q(15)), |n| {
                    one().om(q(30 * n + 10), 1).x(q(30 * n * n + 20 * n + 3)).om(q(15 * n + 6), -1).om(q(15 * n + 4), -1)
                }),
            ),
            tc(2, 0, corr()),
        ],
    )
}

fn o5_chi1() -> MockThetaEntry {
    let corr = || one().th(mq(1), q(5), 3).eta(1, -2);
    entry(
        "order5.chi1",
        5,
        1,
        "sum_{n>=0} q^n / (q^{n+1};q)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n)).p(q(n + 1), q(1), n + 1, -1)))],
        vec![
            t(3, 2, w(ith(mq(10), q(15)), q(10), q(7), q(3), q(15))),
            t(3, 0, w(ith(mq(5), q(15)), q(5), q(3), q(2), q(15))),
            tc(-2, 0, corr()),
        ],
        vec![
            t(
                3,
                0,
                bil(ith(mq(10), q(15)), |n| {
                    one().om(q(30 * n + 10), 1).x(q(30 * n * n + 20 * n + 2)).om(q(15 * n + 7), -1).om(q(15 * n + 3), -1)
                }),
            ),
            t(
                3,
                0,
                bil(ith(mq(5), q(15)), |n| {
                    one().om(q(30 * n + 5), 1).x(q(30 * n * n + 10 * n)).om(q(15 * n + 3), -1).om(q(15 * n + 2), -1)
                }),
            ),
            tc(-2, 0, corr()),
        ],
    )
}

fn o5_cpsi0() -> MockThetaEntry {
    entry(
        "order5.Psi0",
        5,
        1,
        "-1 + sum_{n>=0} q^{5n^2} / ((q;q^5)_{n+1} (q^4;q^5)_n)",
        vec![
            tc(-1, 0, one()),
            t(1, 0, eul(0, |n| one().x(q(5 * n * n)).p(q(1), q(5), n + 1, -1).p(q(4), q(5), n, -1))),
        ],
        vec![
            t(1, 1, w(ith(mq(6), q(15)), q(6), q(4), q(2), q(15))),
            t(1, 2, w(ith(mq(11), q(15)), q(11), q(9), q(2), q(15))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(6), q(15)), |n| {
                    one().om(q(30 * n + 6), 1).x(q(30 * n * n + 12 * n + 1)).om(q(15 * n + 4), -1).om(q(15 * n + 2), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(mq(11), q(15)), |n| {
                    one().om(q(30 * n + 11), 1).x(q(30 * n * n + 22 * n + 2)).om(q(15 * n + 9), -1).om(q(15 * n + 2), -1)
                }),
            ),
        ],
    )
}

fn o5_cpsi1() -> MockThetaEntry {
    entry(
        "order5.Psi1",
        5,
        1,
        "-1 + sum_{n>=0} q^{5n^2} / ((q^2;q^5)_{n+1} (q^3;q^5)_n)",
        vec![
            tc(-1, 0, one()),
            t(1, 0, eul(0, |n| one().x(q(5 * n * n)).p(q(2), q(5), n + 1, -1).p(q(3), q(5), n, -1))),
        ],
        vec![
            t(1, 2, w(ith(mq(7), q(15)), q(7), q(4), q(3), q(15))),
            t(1, 4, w(ith(mq(12), q(15)), q(12), q(8), q(4), q(15))),
        ],
        vec![
            t(
                1,
                0,
                bil(ith(mq(7), q(15)), |n| {
                    one().om(q(30 * n + 7), 1).x(q(30 * n * n + 14 * n + 2)).om(q(15 * n + 4), -1).om(q(15 * n + 3), -1)
                }),
            ),
            t(
                1,
                0,
                bil(ith(mq(12), q(15)), |n| {
                    one().om(q(30 * n + 12), 1).x(q(30 * n * n + 24 * n + 4)).om(q(15 * n + 8), -1).om(q(15 * n + 4), -1)
                }),
            ),
        ],
    )
}

// ---------------------------------------------------------------------------
// Order 6.

fn o6_phigamma_bil(n: i64) -> Factored {
    one().om(q(6 * n + 1), 1).x(q(6 * n * n + 2 * n)).op(q(3 * n + 1), -1).op(q(3 * n), -1)
}

fn o6_phi() -> MockThetaEntry {
    entry(
        "order6.phi",
        6,
        1,
        "sum_{n>=0} (-1)^n q^{n^2} (q;q^2)_n / (-q;q)_{2n}",
        vec![t(1, 0, eul(0, |n| one().x(Monomial::int(sg(n), n * n)).p(q(1), q(2), n, 1).p(mq(1), q(1), 2 * n, -1)))],
        vec![t(2, 0, w(ith(mq(1), q(3)), q(1), mq(1), cst(-1), q(3)))],
        vec![t(2, 0, bil(ith(mq(1), q(3)), o6_phigamma_bil))],
    )
}

fn o6_psi() -> MockThetaEntry {
    entry(
        "order6.psi",
        6,
        1,
        "sum_{n>=0} (-1)^n q^{(n+1)^2} (q;q^2)_n / (-q;q)_{2n+1}",
        vec![t(
            1,
            0,
            eul(0, |n| one().x(Monomial::int(sg(n), (n + 1) * (n + 1))).p(q(1), q(2), n, 1).p(mq(1), q(1), 2 * n + 1, -1)),
        )],
        vec![t(1, 1, w(ith(mq(2), q(3)), q(2), mq(1), mq(1), q(3)))],
        vec![t(
            1,
            0,
            bil(ith(mq(2), q(3)), |n| one().om(q(3 * n + 1), 1).op(q(3 * n + 1), -1).x(q(6 * n * n + 4 * n + 1))),
        )],
    )
}

fn o6_rho() -> MockThetaEntry {
    entry(
        "order6.rho",
        6,
        1,
        "sum_{n>=0} q^{n(n+1)/2} (-q;q)_n / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1) / 2)).p(mq(1), q(1), n, 1).p(q(1), q(2), n + 1, -1)))],
        vec![t(1, 0, w(ith(mq(2), q(6)), q(2), q(1), q(1), q(6)))],
        vec![t(
            1,
            0,
            bil(ith(mq(2), q(6)), |n| one().op(q(6 * n + 1), 1).om(q(6 * n + 1), -1).x(q(12 * n * n + 4 * n))),
        )],
    )
}

fn o6_sigma() -> MockThetaEntry {
    entry(
        "order6.sigma",
        6,
        1,
        "sum_{n>=0} q^{(n+1)(n+2)/2} (-q;q)_n / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 2) / 2)).p(mq(1), q(1), n, 1).p(q(1), q(2), n + 1, -1)))],
        vec![t(1, 1, w(ith(mq(4), q(6)), q(4), q(3), q(1), q(6)))],
        vec![t(
            1,
            0,
            bil(ith(mq(4), q(6)), |n| {
                one().om(q(12 * n + 4), 1).x(q(12 * n * n + 8 * n + 1)).om(q(6 * n + 3), -1).om(q(6 * n + 1), -1)
            }),
        )],
    )
}

fn o6_lambda() -> MockThetaEntry {
    let corr = || one().eta(1, 3).eta(6, 2).eta(2, -3).eta(3, -1);
    entry(
        "order6.lambda",
        6,
        1,
        "sum_{n>=0} (-1)^n q^n (q;q^2)_n / (-q;q)_n",
        vec![t(1, 0, eul(0, |n| one().x(Monomial::int(sg(n), n)).p(q(1), q(2), n, 1).p(mq(1), q(1), n, -1)))],
        vec![t(2, 1, w(ith(mq(4), q(6)), q(4), mq(2), mq(2), q(6))), tc(1, 0, corr())],
        vec![
            t(
                2,
                0,
                bil(ith(mq(4), q(6)), |n| one().om(q(6 * n + 2), 1).op(q(6 * n + 2), -1).x(q(12 * n * n + 8 * n + 1))),
            ),
            tc(1, 0, corr()),
        ],
    )
}

fn o6_mu() -> MockThetaEntry {
    let corr = || one().eta(1, 2).eta(3, 2).eta(2, -2).eta(6, -1);
    let zero = Rational64::zero();
    entry(
        "order6.mu",
        6,
        1,
        "1/2 + 1/2 sum_{n>=0} (-1)^n q^{n+1} (1+q^n) (q;q^2)_n / (-q;q)_{n+1}",
        vec![
            tcr(half(1), zero, one()),
            tr(
                half(1),
                zero,
                eul(0, |n| {
                    one().x(Monomial::int(sg(n), n + 1)).op(q(n), 1).p(q(1), q(2), n, 1).p(mq(1), q(1), n + 1, -1)
                }),
            ),
        ],
        vec![t(2, 0, w(ith(mq(2), q(6)), q(2), mq(2), cst(-1), q(6))), tcr(half(-1), zero, corr())],
        vec![
            t(
                2,
                0,
                bil(ith(mq(2), q(6)), |n| {
                    one().om(q(12 * n + 2), 1).x(q(12 * n * n + 4 * n)).op(q(6 * n + 2), -1).op(q(6 * n), -1)
                }),
            ),
            tcr(half(-1), zero, corr()),
        ],
    )
}

fn o6_gamma() -> MockThetaEntry {
    let corr = || one().th(mq(1), q(2), 2).th(q(1), q(3), -1);
    let zero = Rational64::zero();
    entry(
        "order6.gamma",
        6,
        1,
        "sum_{n>=0} q^{n^2} (q;q)_n / (q^3;q^3)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(q(1), q(1), n, 1).p(q(3), q(3), n, -1)))],
        vec![t(3, 0, w(ith(mq(1), q(3)), q(1), mq(1), cst(-1), q(3))), tcr(half(-1), zero, corr())],
        vec![t(3, 0, bil(ith(mq(1), q(3)), o6_phigamma_bil)), tcr(half(-1), zero, corr())],
    )
}

fn o6_phi_minus() -> MockThetaEntry {
    let corr = || one().eta(2, 2).eta(6, 2).eta(1, -2).eta(3, -1);
    let sh = Rational64::new(1, 2);
    entry(
        "order6.phi_minus",
        6,
        2,
        "sum_{n>=1} q^n (-q;q)_{2n-1} / (q;q^2)_n",
        vec![t(1, 0, eul(1, |n| one().x(q(n)).p(mq(1), q(1), 2 * n - 1, 1).p(q(1), q(2), n, -1)))],
        vec![
            tr(ri(-1), sh, w(ith(mq(2), q(3)), q(2), mqh(3), mqh(1), q(3))),
            tcr(ri(1), sh, corr()),
        ],
        vec![
            t(
                -1,
                0,
                bil(ith(mq(2), q(3)), |n| {
                    one()
                        .om(q(6 * n + 2), 1)
                        .x(qh(12 * n * n + 8 * n + 1))
                        .op(qh(6 * n + 3), -1)
                        .op(qh(6 * n + 1), -1)
                }),
            ),
            tcr(ri(1), sh, corr()),
        ],
    )
}

fn o6_psi_minus() -> MockThetaEntry {
    let corr = || one().eta(6, 3).eta(1, -1).eta(2, -1);
    let one_r = Rational64::one();
    entry(
        "order6.psi_minus",
        6,
        1,
        "sum_{n>=1} q^n (-q;q)_{2n-2} / (q;q^2)_n",
        vec![t(1, 0, eul(1, |n| one().x(q(n)).p(mq(1), q(1), 2 * n - 2, 1).p(q(1), q(2), n, -1)))],
        vec![tr(half(1), one_r, w(ith(mq(2), q(3)), q(2), q(1), q(1), q(3))), tcr(half(1), one_r, corr())],
        vec![
            tr(
                half(1),
                Rational64::zero(),
                bil(ith(mq(2), q(3)), |n| one().op(q(3 * n + 1), 1).om(q(3 * n + 1), -1).x(q(6 * n * n + 4 * n + 1))),
            ),
            tcr(half(1), one_r, corr()),
        ],
    )
}

// ---------------------------------------------------------------------------
// Order 7.

/// `(q^a, q^b, q^7; q^7) / (q^c, q^d, q^e, q^f; q^7)`.
fn o7_corr(num: [i64; 2], den: [i64; 4]) -> Factored {
    let mut f = one().pi(q(num[0]), q(7), 1).pi(q(num[1]), q(7), 1).eta(7, 1);
    for d in den {
        f = f.pi(q(d), q(7), -1);
    }
    f
}

fn o7_f0() -> MockThetaEntry {
    let corr = || o7_corr([3, 4], [1, 2, 5, 6]);
    entry(
        "order7.F0",
        7,
        1,
        "sum_{n>=0} q^{n^2} / (q^{n+1};q)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(q(n + 1), q(1), n, -1)))],
        vec![
            t(2, 4, w(ith(mq(14), q(21)), q(14), q(9), q(5), q(21))),
            t(-2, 9, w(ith(mq(28), q(21)), q(28), q(19), q(9), q(21))),
            tc(1, 0, corr()),
        ],
        vec![
            t(
                2,
                0,
                bil(ith(mq(14), q(21)), |n| {
                    one().om(q(42 * n + 14), 1).x(q(42 * n * n + 28 * n + 4)).om(q(21 * n + 9), -1).om(q(21 * n + 5), -1)
                }),
            ),
            t(
                -2,
                0,
                bil(ith(mq(28), q(21)), |n| {
                    one().om(q(42 * n + 28), 1).x(q(42 * n * n + 56 * n + 9)).om(q(21 * n + 19), -1).om(q(21 * n + 9), -1)
                }),
            ),
            tc(1, 0, corr()),
        ],
    )
}

fn o7_f1() -> MockThetaEntry {
    let corr = || o7_corr([1, 6], [2, 3, 4, 5]);
    entry(
        "order7.F1",
        7,
        1,
        "sum_{n>=1} q^{n^2} / (q^n;q)_n",
        vec![t(1, 0, eul(1, |n| one().x(q(n * n)).p(q(n), q(1), n, -1)))],
        vec![
            t(2, 3, w(ith(mq(14), q(21)), q(14), q(11), q(3), q(21))),
            t(2, 1, w(ith(mq(7), q(21)), q(7), q(4), q(3), q(21))),
            tc(-1, 1, corr()),
        ],
        vec![
            t(
                2,
                0,
                bil(ith(mq(14), q(21)), |n| {
                    one().om(q(42 * n + 14), 1).x(q(42 * n * n + 28 * n + 3)).om(q(21 * n + 11), -1).om(q(21 * n + 3), -1)
                }),
            ),
            t(
                2,
                0,
                bil(ith(mq(7), q(21)), |n| {
                    one().om(q(42 * n + 7), 1).x(q(42 * n * n + 14 * n + 1)).om(q(21 * n + 4), -1).om(q(21 * n + 3), -1)
                }),
            ),
            tc(-1, 1, corr()),
        ],
    )
}

fn o7_f2() -> MockThetaEntry {
    let corr = || o7_corr([2, 5], [1, 3, 4, 6]);
    entry(
        "order7.F2",
        7,
        1,
        "sum_{n>=0} q^{n(n+1)} / (q^{n+1};q)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1))).p(q(n + 1), q(1), n + 1, -1)))],
        vec![
            t(2, 5, w(ith(mq(17), q(21)), q(17), q(11), q(6), q(21))),
            t(2, 2, w(ith(mq(10), q(21)), q(10), q(6), q(4), q(21))),
            tc(1, 0, corr()),
        ],
        vec![
            t(
                2,
                0,
                bil(ith(mq(17), q(21)), |n| {
                    one().om(q(42 * n + 17), 1).x(q(42 * n * n + 34 * n + 5)).om(q(21 * n + 11), -1).om(q(21 * n + 6), -1)
                }),
            ),
            t(
                2,
                0,
                bil(ith(mq(10), q(21)), |n| {
                    one().om(q(21 * n + 10), 1).x(q(21 * n * n + 20 * n + 2)).om(q(21 * n + 6), -1).om(q(21 * n + 4), -1)
                }),
            ),
            tc(1, 0, corr()),
        ],
    )
}

// ---------------------------------------------------------------------------
// Order 8.

/// `(q^2;q^2)^2 (q^8;q^8)^2 theta_{q^8}(q^a) / ((q^4;q^4)^2 theta_{q^8}(-q^b)^2)`.
fn o8_s_corr(a: i64, b: i64) -> Factored {
    one().eta(2, 2).eta(8, 2).th(q(a), q(8), 1).eta(4, -2).th(mq(b), q(8), -2)
}

fn o8_s0() -> MockThetaEntry {
    entry(
        "order8.S0",
        8,
        1,
        "sum_{n>=0} q^{n^2} (-q;q^2)_n / (-q^2;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(2), n, 1).p(mq(2), q(2), n, -1)))],
        vec![t(2, 0, w(ith(q(3), q(8)), mq(3), q(3), cst(-1), q(8))), tc(1, 1, o8_s_corr(1, 3))],
        vec![
            t(
                2,
                0,
                bil(ith(q(3), q(8)), |n| {
                    one().op(q(16 * n + 3), 1).x(q(16 * n * n + 6 * n)).om(q(8 * n + 3), -1).op(q(8 * n), -1)
                }),
            ),
            tc(1, 1, o8_s_corr(1, 3)),
        ],
    )
}

fn o8_s1() -> MockThetaEntry {
    entry(
        "order8.S1",
        8,
        1,
        "sum_{n>=0} q^{n(n+2)} (-q;q^2)_n / (-q^2;q^2)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 2))).p(mq(1), q(2), n, 1).p(mq(2), q(2), n, -1)))],
        vec![t(-2, -1, w(ith(q(1), q(8)), mq(1), q(1), cst(-1), q(8))), tc(1, -1, o8_s_corr(3, 1))],
        vec![
            t(
                -2,
                0,
                bil(ith(q(1), q(8)), |n| {
                    one().op(q(16 * n + 1), 1).x(q(16 * n * n + 2 * n - 1)).op(q(8 * n), -1).om(q(8 * n + 1), -1)
                }),
            ),
            tc(1, -1, o8_s_corr(3, 1)),
        ],
    )
}

fn o8_t0() -> MockThetaEntry {
    entry(
        "order8.T0",
        8,
        1,
        "sum_{n>=0} q^{(n+1)(n+2)} (-q^2;q^2)_n / (-q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 2))).p(mq(2), q(2), n, 1).p(mq(1), q(2), n + 1, -1)))],
        vec![t(1, 2, w(ith(q(7), q(8)), mq(7), mq(5), q(2), q(8)))],
        vec![t(
            1,
            0,
            bil(ith(q(7), q(8)), |n| {
                one().op(q(16 * n + 7), 1).x(q(16 * n * n + 14 * n + 2)).om(q(8 * n + 2), -1).op(q(8 * n + 5), -1)
            }),
        )],
    )
}

fn o8_t1() -> MockThetaEntry {
    entry(
        "order8.T1",
        8,
        1,
        "sum_{n>=0} q^{n(n+1)} (-q^2;q^2)_n / (-q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1))).p(mq(2), q(2), n, 1).p(mq(1), q(2), n + 1, -1)))],
        vec![t(-1, 5, w(ith(q(13), q(8)), mq(13), mq(7), q(6), q(8)))],
        vec![t(
            -1,
            0,
            bil(ith(q(13), q(8)), |n| {
                one().op(q(16 * n + 13), 1).x(q(16 * n * n + 26 * n + 5)).om(q(8 * n + 6), -1).op(q(8 * n + 7), -1)
            }),
        )],
    )
}

fn o8_u0() -> MockThetaEntry {
    entry(
        "order8.U0",
        8,
        1,
        "sum_{n>=0} q^{n^2} (-q;q^2)_n / (-q^4;q^4)_n",
        vec![t(1, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(2), n, 1).p(mq(4), q(4), n, -1)))],
        vec![t(2, 0, w(ith(q(1), q(4)), mq(1), q(1), cst(-1), q(4)))],
        vec![t(
            2,
            0,
            bil(ith(q(1), q(4)), |n| {
                one().op(q(8 * n + 1), 1).x(q(8 * n * n + 2 * n)).op(q(4 * n), -1).om(q(4 * n + 1), -1)
            }),
        )],
    )
}

fn o8_u1() -> MockThetaEntry {
    entry(
        "order8.U1",
        8,
        1,
        "sum_{n>=0} q^{(n+1)^2} (-q;q^2)_n / (-q^2;q^4)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 1))).p(mq(1), q(2), n, 1).p(mq(2), q(4), n + 1, -1)))],
        vec![t(-1, 2, w(ith(q(5), q(4)), mq(5), q(3), mq(2), q(4)))],
        vec![t(
            -1,
            0,
            bil(ith(q(5), q(4)), |n| {
                one().op(q(8 * n + 5), 1).x(q(8 * n * n + 10 * n + 2)).op(q(4 * n + 2), -1).om(q(4 * n + 3), -1)
            }),
        )],
    )
}

fn o8_v0() -> MockThetaEntry {
    let corr = || one().eta(2, 3).eta(4, 1).eta(1, -2).eta(8, -1);
    entry(
        "order8.V0",
        8,
        1,
        "-1 + 2 sum_{n>=0} q^{n^2} (-q;q^2)_n / (q;q^2)_n",
        vec![tc(-1, 0, one()), t(2, 0, eul(0, |n| one().x(q(n * n)).p(mq(1), q(2), n, 1).p(q(1), q(2), n, -1)))],
        vec![t(2, 0, w(ith(mq(2), q(8)), q(2), q(1), q(1), q(8))), tc(-1, 0, corr())],
        vec![
            t(2, 0, bil(ith(mq(2), q(8)), |n| one().op(q(8 * n + 1), 1).om(q(8 * n + 1), -1).x(q(16 * n * n + 4 * n)))),
            tc(-1, 0, corr()),
        ],
    )
}

fn o8_v1() -> MockThetaEntry {
    entry(
        "order8.V1",
        8,
        1,
        "sum_{n>=0} q^{(n+1)^2} (-q;q^2)_n / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 1))).p(mq(1), q(2), n, 1).p(q(1), q(2), n + 1, -1)))],
        vec![t(1, 1, w(ith(mq(4), q(8)), q(4), q(3), q(1), q(8)))],
        vec![t(
            1,
            0,
            bil(ith(mq(4), q(8)), |n| {
                one().om(q(16 * n + 4), 1).x(q(16 * n * n + 8 * n + 1)).om(q(8 * n + 1), -1).om(q(8 * n + 3), -1)
            }),
        )],
    )
}

// ---------------------------------------------------------------------------
// Order 10.

/// `(q^2;q^2)(q^5;q^5)(q^10;q^10)^2 / (theta_{q^5}(-q^a) theta_{q^10}(-q^b)^2)`.
fn o10_corr(a: i64, b: i64) -> Factored {
    one().eta(2, 1).eta(5, 1).eta(10, 2).th(mq(a), q(5), -1).th(mq(b), q(10), -2)
}

/// `(q^5;q^5)^2 theta_{q^10}(-q^a) / ((q^10;q^10) theta_{q^5}(-q^b))`.
fn o10_xchi_corr(a: i64, b: i64) -> Factored {
    one().eta(5, 2).th(mq(a), q(10), 1).eta(10, -1).th(mq(b), q(5), -1)
}

fn o10_phi() -> MockThetaEntry {
    entry(
        "order10.phi",
        10,
        1,
        "sum_{n>=0} q^{n(n+1)/2} / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q(n * (n + 1) / 2)).p(q(1), q(2), n + 1, -1)))],
        vec![t(2, 1, w(ith(mq(5), q(10)), q(5), q(3), q(2), q(10))), tc(1, 0, o10_corr(2, 2))],
        vec![
            t(
                2,
                0,
                bil(ith(mq(5), q(10)), |n| {
                    one().om(q(20 * n + 5), 1).x(q(20 * n * n + 10 * n + 1)).om(q(10 * n + 2), -1).om(q(10 * n + 3), -1)
                }),
            ),
            tc(1, 0, o10_corr(2, 2)),
        ],
    )
}

fn o10_psi() -> MockThetaEntry {
    entry(
        "order10.psi",
        10,
        1,
        "sum_{n>=0} q^{(n+1)(n+2)/2} / (q;q^2)_{n+1}",
        vec![t(1, 0, eul(0, |n| one().x(q((n + 1) * (n + 2) / 2)).p(q(1), q(2), n + 1, -1)))],
        vec![t(2, 1, w(ith(mq(5), q(10)), q(5), q(4), q(1), q(10))), tc(-1, 0, o10_corr(1, 4))],
        vec![
            t(
                2,
                0,
                bil(ith(mq(5), q(10)), |n| {
                    one().om(q(20 * n + 5), 1).x(q(20 * n * n + 10 * n + 1)).om(q(10 * n + 1), -1).om(q(10 * n + 4), -1)
                }),
            ),
            tc(-1, 1, o10_corr(1, 4)),
        ],
    )
}

fn o10_x() -> MockThetaEntry {
    entry(
        "order10.X",
        10,
        1,
        "sum_{n>=0} (-1)^n q^{n^2} / (-q;q)_{2n}",
        vec![t(1, 0, eul(0, |n| one().x(Monomial::int(sg(n), n * n)).p(mq(1), q(1), 2 * n, -1)))],
        vec![t(-2, -1, w(ith(cst(1), q(5)), cst(-1), mq(1), q(-1), q(5))), tc(-1, 0, o10_xchi_corr(3, 1))],
        vec![
            t(
                -2,
                0,
                bil(ith(cst(1), q(5)), |n| {
                    one().op(q(10 * n), 1).x(q(10 * n * n - 1)).om(q(5 * n - 1), -1).op(q(5 * n + 1), -1)
                }),
            ),
            tc(-1, 0, o10_xchi_corr(3, 1)),
        ],
    )
}

fn o10_chi() -> MockThetaEntry {
    entry(
        "order10.chi",
        10,
        1,
        "sum_{n>=0} (-1)^n q^{(n+1)^2} / (-q;q)_{2n+1}",
        vec![t(1, 0, eul(0, |n| one().x(Monomial::int(sg(n), (n + 1) * (n + 1))).p(mq(1), q(1), 2 * n + 1, -1)))],
        vec![t(-2, 2, w(ith(q(5), q(5)), mq(5), mq(3), q(2), q(5))), tc(1, 1, o10_xchi_corr(1, 2))],
        vec![
            t(
                -2,
                0,
                bil(ith(q(5), q(5)), |n| {
                    one().op(q(10 * n + 5), 1).x(q(10 * n * n + 10 * n + 2)).om(q(5 * n + 2), -1).op(q(5 * n + 3), -1)
                }),
            ),
            tc(1, 1, o10_xchi_corr(1, 2)),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn counts_per_order() {
        let all = list_entries();
        assert_eq!(all.len(), 46);
        let count = |k: u32| all.iter().filter(|e| e.order == k).count();
        assert_eq!(
            [count(2), count(3), count(5), count(6), count(7), count(8), count(10)],
            [3, 7, 12, 9, 3, 8, 4]
        );
        let mut names: Vec<_> = all.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 46);
    }

    #[test]
    fn third_order_f_initial_segment() {
        let f = expand("order3.f", r(4)).unwrap();
        assert_eq!(f, FormalSeries::from_ints(&[(0, 1), (1, 1), (2, -2), (3, 3)], Some(4)));
    }

    #[test]
    fn second_order_a_initial_segment() {
        // n = 0, 1, 2 each contribute 1 to the q^3 coefficient
        let f = expand("order2.A", r(4)).unwrap();
        assert_eq!(f, FormalSeries::from_ints(&[(1, 1), (2, 2), (3, 3)], Some(4)));
        let e = find_entry("order2.A").unwrap();
        assert_eq!(e.eval(Form::W, r(4)).unwrap(), f);
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(expand("nope", r(10)), Err(QError::UnknownEntry(_))));
        assert!(matches!(verify_entry("nope", r(10)), Err(QError::UnknownEntry(_))));
    }

    #[test]
    fn phi_minus_uses_half_powers() {
        let f = expand("order6.phi_minus", r(5)).unwrap();
        assert_eq!(f.denom(), 1);
        let e = find_entry("order6.phi_minus").unwrap();
        assert_eq!(e.denom, 2);
        let w = e.eval(Form::W, r(5)).unwrap();
        // the W form is a sum of half-integer powers that must cancel
        assert!(w.order().is_some());
    }
}
