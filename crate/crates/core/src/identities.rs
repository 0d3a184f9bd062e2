//! Registry of numerically checkable identities.
//!
//! Each entry owns a sampler-driven check that draws admissible parameters,
//! evaluates both sides and returns the comparisons. [`verify`] repeats the
//! check over seeded draws, turning evaluation errors into rejected samples.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elliptic::{
    curious_relation, jacobi_combo_forms, jacobi_combo_oracle, m_func, wp_diff_bailey,
    wp_diff_bailey_sum, wp_diff_bilateral, wp_diff_lambert, wp_diff_oracle, wp_diff_psi26,
    wp_diff_split, EllipticContext, JacobiCalibration, Psi26Arg,
};
use crate::error::{QError, Result};
use crate::mu::{
    at_q, mu, mu_def, mu_def_psi12, mu_hermite, mu_psi02, mu_psi12, mu_psi22, mu_psi48,
    mu_vwp_psi48, mu_w, translation_rhs, variation_rhs, symmetry_transform, MuPoint, WPrefactor,
};
use crate::qcore::{e2pi, epi, prod_inf, theta_div, QContext, C64, I, ONE, ZERO};
use crate::series::{phi, psi};

/// Log-modulus distance kept from every annulus edge.
pub const ANNULUS_MARGIN: f64 = 0.1;
/// Additive distance kept from `Z + Z tau` for every theta and Pochhammer argument.
pub const LATTICE_MARGIN: f64 = 0.02;
/// Attempts allowed per requested draw before a report is declared inconclusive.
pub const REJECTION_FACTOR: usize = 100;

/// Relative error `|l - r| / max(|l|, |r|, 1e-30)`.
pub fn rel_err(l: C64, r: C64) -> f64 {
    (l - r).norm() / l.norm().max(r.norm()).max(1e-30)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub label: String,
    pub lhs: C64,
    pub rhs: C64,
}

impl Comparison {
    pub fn new(label: impl Into<String>, lhs: C64, rhs: C64) -> Self {
        Comparison { label: label.into(), lhs, rhs }
    }

    pub fn err(&self) -> f64 {
        if self.lhs.is_finite() && self.rhs.is_finite() {
            rel_err(self.lhs, self.rhs)
        } else {
            f64::INFINITY
        }
    }
}

/// One accepted draw: the sampled parameters and every side-by-side comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub params: Vec<(String, C64)>,
    pub comparisons: Vec<Comparison>,
}

/// Seeded parameter source with the admissibility guards used by every check.
pub struct Sampler {
    rng: ChaCha8Rng,
    ctx: QContext,
    params: Vec<(String, C64)>,
}

impl Sampler {
    pub fn new(seed: u64, ctx: QContext) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), ctx, params: Vec::new() }
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    fn set_ctx(&mut self, ctx: QContext) {
        self.ctx = ctx;
    }

    pub fn record(&mut self, name: &str, z: C64) {
        self.params.push((name.to_string(), z));
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    fn polar(&mut self, m: f64) -> C64 {
        let t = self.uniform(0.0, 2.0 * PI);
        C64::from_polar(m, t)
    }

    /// Modulus log-uniform in `[lo, hi]`, phase uniform.
    pub fn modulus(&mut self, name: &str, lo: f64, hi: f64) -> C64 {
        let m = Float::exp(self.uniform(Float::ln(lo), Float::ln(hi)));
        let z = self.polar(m);
        self.record(name, z);
        z
    }

    /// Point of the annulus `inner < |z| < outer` shrunk by [`ANNULUS_MARGIN`].
    pub fn annulus(&mut self, name: &str, inner: f64, outer: f64) -> Result<C64> {
        let lo = Float::ln(inner) + ANNULUS_MARGIN;
        let hi = Float::ln(outer) - ANNULUS_MARGIN;
        if !(lo < hi) {
            return Err(QError::Divergent(format!("annulus for {name} is empty after margins")));
        }
        let m = Float::exp(self.uniform(lo, hi));
        let z = self.polar(m);
        self.record(name, z);
        Ok(z)
    }

    /// `s + t tau` with `s` uniform in `[0, 1)` and `t` uniform in `[t_lo, t_hi]`.
    pub fn additive_in(&mut self, name: &str, t_lo: f64, t_hi: f64) -> C64 {
        let s = self.uniform(0.0, 1.0);
        let t = self.uniform(t_lo, t_hi);
        let z = C64::new(s, 0.0) + self.ctx.tau() * t;
        self.record(name, z);
        z
    }

    /// Additive coordinate of a mu-variable, `Im` in `(0.05, 0.95) Im tau`.
    pub fn additive(&mut self, name: &str) -> C64 {
        self.additive_in(name, 0.05, 0.95)
    }

    /// Free shift parameter, `Im` in `(-0.5, 0.5) Im tau`.
    pub fn shift(&mut self, name: &str) -> C64 {
        self.additive_in(name, -0.5, 0.5)
    }

    pub fn alpha(&mut self, name: &str, re_lo: f64, re_hi: f64, im: f64) -> C64 {
        let z = C64::new(self.uniform(re_lo, re_hi), self.uniform(-im, im));
        self.record(name, z);
        z
    }

    /// Reject multiplicative points near `q^Z`.
    pub fn guard(&self, ys: &[C64]) -> Result<()> {
        for &y in ys {
            if !y.is_finite() || y == ZERO || self.ctx.mult_lattice_distance(y) < LATTICE_MARGIN {
                return Err(QError::Pole(format!("{y} within the lattice margin")));
            }
        }
        Ok(())
    }

    /// Reject additive points near `Z + Z tau`.
    pub fn guard_add(&self, ws: &[C64]) -> Result<()> {
        for &w in ws {
            if !w.is_finite() || self.ctx.lattice_distance(w) < LATTICE_MARGIN {
                return Err(QError::Pole(format!("{w} within the lattice margin")));
            }
        }
        Ok(())
    }

    /// Reject a bilateral series whose argument is not inside its annulus with margin.
    pub fn require_annulus(&self, upper: &[C64], lower: &[C64], x: C64) -> Result<()> {
        let a: f64 = upper.iter().map(|z| z.norm()).product();
        let b: f64 = lower.iter().map(|z| z.norm()).product();
        let lx = Float::ln(x.norm());
        if b > 0.0 && lx < Float::ln(b / a) + ANNULUS_MARGIN {
            return Err(QError::Divergent(format!("|x| = {} too close to the inner radius", x.norm())));
        }
        if upper.len() == lower.len() && lx > -ANNULUS_MARGIN {
            return Err(QError::Divergent(format!("|x| = {} too close to 1", x.norm())));
        }
        Ok(())
    }

    fn finish(&mut self, comparisons: Vec<Comparison>) -> Outcome {
        Outcome { params: core::mem::take(&mut self.params), comparisons }
    }
}

pub type CheckFn = fn(&QContext, &mut Sampler) -> Result<Outcome>;

/// A registered identity.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub paper_ref: &'static str,
    /// Number of free complex parameters drawn per sample.
    pub arity: usize,
    pub domain: &'static str,
    pub default_tol: f64,
    /// Largest `|q|` used when the nome itself is sampled.
    pub q_max: f64,
    pub check: CheckFn,
}

impl core::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("paper_ref", &self.paper_ref)
            .field("arity", &self.arity)
            .field("default_tol", &self.default_tol)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub params: Vec<(String, C64)>,
    pub label: String,
    pub lhs: C64,
    pub rhs: C64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: String,
    pub paper_ref: String,
    pub seed: u64,
    /// Requested draws.
    pub draws: usize,
    /// Draws actually evaluated.
    pub completed: usize,
    pub tol: f64,
    pub max_rel_err: f64,
    pub failures: Vec<Failure>,
    pub rejected_samples: usize,
    pub status: Status,
}

/// Where the nome of each draw comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nome {
    /// Use the context's nome for every draw.
    Fixed,
    /// Draw `|q|` log-uniform in `[min, min(max, q_max)]` with uniform phase.
    Sampled { min: f64, max: f64 },
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn find(id: &str) -> Result<IdentityDescriptor> {
    registry()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Check `id` over `draws` samples at the context's nome.
pub fn verify(ctx: &QContext, id: &str, seed: u64, draws: usize) -> Result<IdentityReport> {
    verify_with(ctx, id, seed, draws, Nome::Fixed)
}

pub fn verify_with(
    ctx: &QContext,
    id: &str,
    seed: u64,
    draws: usize,
    nome: Nome,
) -> Result<IdentityReport> {
    let d = find(id)?;
    Ok(run_descriptor(ctx, &d, seed, draws, nome, d.default_tol))
}

/// Run one descriptor with an explicit tolerance.
pub fn run_descriptor(
    ctx: &QContext,
    d: &IdentityDescriptor,
    seed: u64,
    draws: usize,
    nome: Nome,
    tol: f64,
) -> IdentityReport {
    let mut s = Sampler::new(seed ^ fnv1a(d.id), *ctx);
    let mut completed = 0;
    let mut rejected = 0;
    let mut max_err = 0.0f64;
    let mut failures = Vec::new();
    let budget = REJECTION_FACTOR * draws.max(1);
    while completed < draws && completed + rejected < budget {
        s.params.clear();
        let c = match nome {
            Nome::Fixed => *ctx,
            Nome::Sampled { min, max } => {
                let hi = max.min(d.q_max).max(min);
                let m = Float::exp(s.uniform(Float::ln(min), Float::ln(hi)));
                let qv = s.polar(m);
                s.record("q", qv);
                match QContext::from_q(qv)
                    .and_then(|c| c.with_tol(ctx.tol))
                    .and_then(|c| c.with_max_terms(ctx.max_terms))
                    .and_then(|c| c.with_pole_eps(ctx.pole_eps))
                {
                    Ok(c) => c,
                    Err(_) => {
                        rejected += 1;
                        continue;
                    }
                }
            }
        };
        s.set_ctx(c);
        let out = match (d.check)(&c, &mut s) {
            Ok(o) => o,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        if out.comparisons.iter().any(|cmp| !(cmp.lhs.is_finite() && cmp.rhs.is_finite())) {
            rejected += 1;
            continue;
        }
        completed += 1;
        let worst = out
            .comparisons
            .iter()
            .map(|cmp| (cmp.err(), cmp))
            .fold(None::<(f64, &Comparison)>, |acc, (e, cmp)| match acc {
                Some((be, _)) if be >= e => acc,
                _ => Some((e, cmp)),
            });
        if let Some((e, cmp)) = worst {
            max_err = max_err.max(e);
            if e > tol {
                failures.push(Failure {
                    params: out.params.clone(),
                    label: cmp.label.clone(),
                    lhs: cmp.lhs,
                    rhs: cmp.rhs,
                    err: e,
                });
            }
        }
    }
    let status = if !failures.is_empty() {
        Status::Fail
    } else if completed < draws {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    IdentityReport {
        id: d.id.to_string(),
        paper_ref: d.paper_ref.to_string(),
        seed,
        draws,
        completed,
        tol,
        max_rel_err: max_err,
        failures,
        rejected_samples: rejected,
        status,
    }
}

/// Run every registered identity, or the listed ones, in registry order.
pub fn run_suite(
    ctx: &QContext,
    ids: Option<&[&str]>,
    seed: u64,
    draws: usize,
) -> Result<Vec<IdentityReport>> {
    run_suite_with(ctx, ids, seed, draws, Nome::Fixed)
}

pub fn run_suite_with(
    ctx: &QContext,
    ids: Option<&[&str]>,
    seed: u64,
    draws: usize,
    nome: Nome,
) -> Result<Vec<IdentityReport>> {
    let reg = registry();
    let selected: Vec<IdentityDescriptor> = match ids {
        None => reg,
        Some(list) => {
            for id in list {
                if !reg.iter().any(|d| d.id == *id) {
                    return Err(QError::UnknownIdentity(id.to_string()));
                }
            }
            reg.into_iter().filter(|d| list.contains(&d.id)).collect()
        }
    };
    Ok(selected
        .iter()
        .map(|d| run_descriptor(ctx, d, seed, draws, nome, d.default_tol))
        .collect())
}

// ---------------------------------------------------------------------------
// Shared evaluation helpers.

fn th(ctx: &QContext, y: C64) -> Result<C64> {
    theta_div(ctx, y)
}

fn pr(ctx: &QContext, xs: &[C64]) -> Result<C64> {
    prod_inf(ctx, xs)
}

fn prod(xs: &[C64]) -> C64 {
    xs.iter().fold(ONE, |a, &b| a * b)
}

fn moduli(s: &mut Sampler, prefix: &str, n: usize, lo: f64, hi: f64) -> Vec<C64> {
    (1..=n).map(|i| s.modulus(&format!("{prefix}{i}"), lo, hi)).collect()
}

/// Parameters `a`, `b` of an `r psi r` and an admissible argument.
fn rpsir_params(s: &mut Sampler, r: usize) -> Result<(Vec<C64>, Vec<C64>, C64)> {
    let a = moduli(s, "a", r, 0.5, 2.0);
    let b = moduli(s, "b", r, 0.5, 2.0);
    let inner = prod(&b).norm() / prod(&a).norm();
    let x = s.annulus("x", inner, 1.0)?;
    s.guard(&a)?;
    s.guard(&b)?;
    s.guard(&[x])?;
    Ok((a, b, x))
}

// ---------------------------------------------------------------------------
// Bilateral series layer.

fn inv_r(ctx: &QContext, s: &mut Sampler, r: usize) -> Result<Outcome> {
    let q = ctx.q();
    let (a, b, x) = rpsir_params(s, r)?;
    let y = prod(&b) / (prod(&a) * x);
    let up: Vec<C64> = b.iter().map(|&z| q / z).collect();
    let lo: Vec<C64> = a.iter().map(|&z| q / z).collect();
    s.require_annulus(&up, &lo, y)?;
    let lhs = psi(ctx, &a, &b, x)?;
    let rhs = psi(ctx, &up, &lo, y)?;
    Ok(s.finish(vec![Comparison::new("inverted", lhs, rhs)]))
}

fn inv_r1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    inv_r(ctx, s, 1)
}
fn inv_r2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    inv_r(ctx, s, 2)
}
fn inv_r3(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    inv_r(ctx, s, 3)
}

fn slater_a(ctx: &QContext, s: &mut Sampler, r: usize) -> Result<Outcome> {
    let q = ctx.q();
    let (a, b, x) = rpsir_params(s, r)?;
    let c = moduli(s, "c", r, 0.5, 2.0);
    s.guard(&c)?;
    let d = prod(&a) / prod(&c);
    s.guard(&[d * x])?;
    for m in 0..r {
        s.guard(&[c[m] * d * x])?;
        for j in 0..r {
            s.guard(&[c[m] / a[j], b[j] / c[m], a[j] / c[m]])?;
            if j != m {
                s.guard(&[c[m] / c[j]])?;
            }
        }
    }
    let mut lhs = th(ctx, d * x * q)? * psi(ctx, &a, &b, x)?;
    for j in 0..r {
        lhs *= pr(ctx, &[b[j], q / a[j]])? / th(ctx, c[j])?;
    }
    let mut rhs = ZERO;
    for m in 0..r {
        let cm = c[m];
        let mut t = th(ctx, cm * d * x)? / th(ctx, cm)? * pr(ctx, &[cm / a[m], b[m] * q / cm])?;
        for j in 0..r {
            if j != m {
                t *= pr(ctx, &[cm / a[j], b[j] * q / cm])? / th(ctx, cm / c[j])?;
            }
        }
        let up: Vec<C64> = a.iter().map(|&z| z * q / cm).collect();
        let lo: Vec<C64> = b.iter().map(|&z| z * q / cm).collect();
        rhs += t * psi(ctx, &up, &lo, x)?;
    }
    Ok(s.finish(vec![Comparison::new("connection sum", lhs, rhs)]))
}

fn slater_a1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    slater_a(ctx, s, 1)
}
fn slater_a2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    slater_a(ctx, s, 2)
}
fn slater_a3(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    slater_a(ctx, s, 3)
}

/// Both sides of the type-BC transformation for `r` terms, argument `A^{r+1} q^r / prod b`.
fn slater_bc_sides(ctx: &QContext, s: &mut Sampler, r: usize) -> Result<(C64, C64)> {
    let q = ctx.q();
    let aa = s.modulus("a", 0.3, 2.0);
    let b = moduli(s, "b", 2 * r + 2, 0.5, 2.0);
    let ak = moduli(s, "a", r, 0.5, 2.0);
    let z = aa.powi(r as i32 + 1) * q.powi(r as i32) / prod(&b);
    let sa = aa.sqrt();
    let mut up = vec![sa * q, -sa * q];
    up.extend(b.iter().copied());
    let mut lo = vec![sa, -sa];
    lo.extend(b.iter().map(|&bj| aa * q / bj));
    s.require_annulus(&up, &lo, z)?;
    s.guard(&[aa, sa, -sa])?;
    s.guard(&b)?;
    s.guard(&lo)?;
    for (m, &am) in ak.iter().enumerate() {
        s.guard(&[am, am / aa, am * am / aa, am / sa, -am / sa])?;
        for &bj in &b {
            s.guard(&[am * q / bj, aa * q / (am * bj), am * bj / aa])?;
        }
        for (k, &ak2) in ak.iter().enumerate() {
            if k != m {
                s.guard(&[ak2 / am, ak2 * am / aa])?;
            }
        }
    }

    let mut lhs = (ONE - aa) / th(ctx, aa)? * psi(ctx, &up, &lo, z)?;
    for &bj in &b {
        lhs *= pr(ctx, &[q / bj, aa * q / bj])?;
    }
    for &a in &ak {
        lhs /= th(ctx, a)? * th(ctx, a / aa)?;
    }
    let mut rhs = ZERO;
    for (m, &am) in ak.iter().enumerate() {
        let mut t = (ONE - am * am / aa)
            / (th(ctx, am)? * th(ctx, am / aa)? * th(ctx, am * am / aa)?);
        for &bj in &b {
            t *= pr(ctx, &[am * q / bj, aa * q / (am * bj)])?;
        }
        for (k, &a2) in ak.iter().enumerate() {
            if k != m {
                t /= th(ctx, a2 / am)? * th(ctx, a2 * am / aa)?;
            }
        }
        let mut u2 = vec![am * q / sa, -am * q / sa];
        u2.extend(b.iter().map(|&bj| am * bj / aa));
        let mut l2 = vec![am / sa, -am / sa];
        l2.extend(b.iter().map(|&bj| am * q / bj));
        rhs += t * psi(ctx, &u2, &l2, z)?;
    }
    Ok((lhs, rhs))
}

fn slater_bc1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = slater_bc_sides(ctx, s, 1)?;
    Ok(s.finish(vec![Comparison::new("one-term side", l, r)]))
}

fn slater_bc2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = slater_bc_sides(ctx, s, 2)?;
    Ok(s.finish(vec![Comparison::new("two-term side", l, r)]))
}

/// The two-term `8psi8` display written out term by term.
fn slater_bc_8psi8(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let q = ctx.q();
    let aa = s.modulus("a", 0.3, 2.0);
    let b = moduli(s, "b", 6, 0.5, 2.0);
    let a1 = s.modulus("a1", 0.5, 2.0);
    let a2 = s.modulus("a2", 0.5, 2.0);
    let z = aa * aa * aa * q * q / prod(&b);
    let sa = aa.sqrt();
    let mut up = vec![sa * q, -sa * q];
    up.extend(b.iter().copied());
    let mut lo = vec![sa, -sa];
    lo.extend(b.iter().map(|&bj| aa * q / bj));
    s.require_annulus(&up, &lo, z)?;
    s.guard(&[aa, sa, -sa, a1, a2, a1 / aa, a2 / aa, a1 * a1 / aa, a2 * a2 / aa])?;
    s.guard(&[a1 / a2, a1 * a2 / aa, a1 / sa, -a1 / sa, a2 / sa, -a2 / sa])?;
    s.guard(&b)?;
    s.guard(&lo)?;
    for &bj in &b {
        s.guard(&[a1 * q / bj, a2 * q / bj, aa * q / (a1 * bj), aa * q / (a2 * bj)])?;
        s.guard(&[a1 * bj / aa, a2 * bj / aa])?;
    }

    let mut pl = ONE;
    for &bj in &b {
        pl *= pr(ctx, &[q / bj, aa * q / bj])?;
    }
    let lhs = (ONE - aa) / th(ctx, aa)? * pl
        / (th(ctx, a1)? * th(ctx, a1 / aa)? * th(ctx, a2)? * th(ctx, a2 / aa)?)
        * psi(ctx, &up, &lo, z)?;

    let term = |am: C64, ao: C64| -> Result<C64> {
        let mut p = ONE;
        for &bj in &b {
            p *= pr(ctx, &[am * q / bj, aa * q / (am * bj)])?;
        }
        let den = th(ctx, am)? * th(ctx, am / aa)? * th(ctx, am * am / aa)? * th(ctx, ao / am)?
            * th(ctx, ao * am / aa)?;
        let mut u2 = vec![am * q / sa, -am * q / sa];
        u2.extend(b.iter().map(|&bj| am * bj / aa));
        let mut l2 = vec![am / sa, -am / sa];
        l2.extend(b.iter().map(|&bj| am * q / bj));
        Ok((ONE - am * am / aa) * p / den * psi(ctx, &u2, &l2, z)?)
    };
    let rhs = term(a1, a2)? + term(a2, a1)?;
    Ok(s.finish(vec![Comparison::new("two-term 8psi8", lhs, rhs)]))
}

fn ramanujan_1psi1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let q = ctx.q();
    let a = s.modulus("a", 0.3, 3.0);
    let b = s.modulus("b", 0.3, 3.0);
    let x = s.annulus("x", (b / a).norm(), 1.0)?;
    s.guard(&[a, b, x, a * x, b / (a * x), b / a])?;
    let lhs = psi(ctx, &[a], &[b], x)?;
    let rhs = pr(ctx, &[a * x, q / (a * x), q, b / a])? / pr(ctx, &[x, b / (a * x), b, q / a])?;
    Ok(s.finish(vec![Comparison::new("product side", lhs, rhs)]))
}

fn bailey_6psi6(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let q = ctx.q();
    let a = s.modulus("a", 0.3, 1.5);
    let b = s.modulus("b", 0.5, 2.0);
    let c = s.modulus("c", 0.5, 2.0);
    let d = s.modulus("d", 0.5, 2.0);
    let e = s.modulus("e", 0.5, 2.0);
    let z = q * a * a / (b * c * d * e);
    let sa = a.sqrt();
    let up = [sa * q, -sa * q, b, c, d, e];
    let lo = [sa, -sa, a * q / b, a * q / c, a * q / d, a * q / e];
    s.require_annulus(&up, &lo, z)?;
    let num = [a * q, a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / (c * d), a * q / (c * e), a * q / (d * e), q, q / a];
    let den = [a * q / b, a * q / c, a * q / d, a * q / e, q / b, q / c, q / d, q / e, z];
    s.guard(&up)?;
    s.guard(&lo)?;
    s.guard(&num[..7])?;
    s.guard(&[a])?;
    s.guard(&den)?;
    let lhs = psi(ctx, &up, &lo, z)?;
    let rhs = pr(ctx, &num)? / pr(ctx, &den)?;
    Ok(s.finish(vec![Comparison::new("product side", lhs, rhs)]))
}

fn slater_a2_sides(ctx: &QContext, s: &mut Sampler) -> Result<(C64, [C64; 3])> {
    let q = ctx.q();
    let (a, b, x) = rpsir_params(s, 2)?;
    let c = moduli(s, "c", 2, 0.5, 2.0);
    let (a1, a2, b1, b2, c1, c2) = (a[0], a[1], b[0], b[1], c[0], c[1]);
    let p = a1 * a2 * x;
    s.guard(&[c1, c2, c1 / c2, p / (q * c1), p / (q * c2), p / (c1 * c2)])?;
    for &cm in &[c1, c2] {
        s.guard(&[cm / a1, cm / a2, q * b1 / cm, q * b2 / cm, q * a1 / cm, q * a2 / cm])?;
    }
    let den = pr(ctx, &[q / a1, q / a2, b1, b2])?;
    let t12 = th(ctx, p / (c1 * c2))?;
    let t1 = q / c1 * th(ctx, p / (q * c2))? * th(ctx, c2)? / (t12 * th(ctx, c1 / c2)?)
        * pr(ctx, &[c1 / a1, c1 / a2, q * b1 / c1, q * b2 / c1])?
        / den;
    let t2 = q / c2 * th(ctx, p / (q * c1))? * th(ctx, c1)? / (t12 * th(ctx, c2 / c1)?)
        * pr(ctx, &[c2 / a1, c2 / a2, q * b1 / c2, q * b2 / c2])?
        / den;
    let xi = b1 * b2 / (a1 * a2 * x);
    let p1 = psi(ctx, &[q * a1 / c1, q * a2 / c1], &[q * b1 / c1, q * b2 / c1], x)?;
    let p2 = psi(ctx, &[q * a1 / c2, q * a2 / c2], &[q * b1 / c2, q * b2 / c2], x)?;
    let p1i = psi(ctx, &[c1 / b1, c1 / b2], &[c1 / a1, c1 / a2], xi)?;
    let p2i = psi(ctx, &[c2 / b1, c2 / b2], &[c2 / a1, c2 / a2], xi)?;
    let lhs = psi(ctx, &a, &b, x)?;
    Ok((lhs, [t1 * p1 + t2 * p2, t1 * p1 + t2 * p2i, t1 * p1i + t2 * p2i]))
}

fn slater_a2_v1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = slater_a2_sides(ctx, s)?;
    Ok(s.finish(vec![Comparison::new("both terms direct", l, r[0])]))
}
fn slater_a2_v2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = slater_a2_sides(ctx, s)?;
    Ok(s.finish(vec![Comparison::new("second term inverted", l, r[1])]))
}
fn slater_a2_v3(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = slater_a2_sides(ctx, s)?;
    Ok(s.finish(vec![Comparison::new("both terms inverted", l, r[2])]))
}

fn bailey_vwp_a(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let q = ctx.q();
    let a = s.modulus("a", 0.3, 2.0);
    let c = s.modulus("c", 0.5, 2.0);
    let d = s.modulus("d", 0.5, 2.0);
    let e = s.modulus("e", 0.5, 2.0);
    let f = s.modulus("f", 0.5, 2.0);
    let x = a * q / (e * f);
    let (up, lo) = ([e, f], [a * q / c, a * q / d]);
    s.require_annulus(&up, &lo, x)?;
    let sa = a.sqrt();
    let u6 = [sa * q, -sa * q, c, d, e, f];
    let l6 = [sa, -sa, a * q / c, a * q / d, a * q / e, a * q / f, ZERO, ZERO];
    s.guard(&u6)?;
    s.guard(&l6[..6])?;
    s.guard(&[a, q / c, q / d, a * q / (c * d), x])?;
    let z = a * a * a * q * q / (c * d * e * f);
    let lhs = psi(ctx, &up, &lo, x)?;
    let rhs = pr(ctx, &[q / c, q / d, a * q / e, a * q / f])?
        / pr(ctx, &[a * q, q / a, a * q / (c * d), x])?
        * psi(ctx, &u6, &l6, z)?;
    Ok(s.finish(vec![Comparison::new("6psi8 side", lhs, rhs)]))
}

fn bailey_vwp_b(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let q = ctx.q();
    let (ab, cd, x) = rpsir_params(s, 2)?;
    let (a, b, c, d) = (ab[0], ab[1], cd[0], cd[1]);
    let w = a * b * x;
    let sq = (q * w).sqrt();
    let t = sq / q;
    let u6 = [sq, -sq, w / c, w / d, a, b];
    let l6 = [t, -t, c, d, b * x, a * x, ZERO, ZERO];
    s.guard(&u6)?;
    s.guard(&l6[..6])?;
    s.guard(&[q * c / w, q * d / w, w, q * q / w, c * d / w])?;
    let lhs = psi(ctx, &ab, &cd, x)?;
    let rhs = pr(ctx, &[a * x, b * x, q * c / w, q * d / w])?
        / pr(ctx, &[x, w, q * q / w, c * d / w])?
        * psi(ctx, &u6, &l6, c * d * x / q)?;
    Ok(s.finish(vec![Comparison::new("6psi8 side", lhs, rhs)]))
}

fn bailey_t(ctx: &QContext, s: &mut Sampler, k: usize) -> Result<Outcome> {
    let q = ctx.q();
    let (ab, cd, x) = rpsir_params(s, 2)?;
    let (a, b, c, d) = (ab[0], ab[1], cd[0], cd[1]);
    let w = a * b * x;
    // (first upper, partner lower, prefactor numerator, denominator pair) per variant.
    let (up, lo, arg, num, den) = match k {
        0 => ([a, w / c], [a * x, d], c / a, [a * x, c / a, d / b, q * c / w], [x, c, q / b, c * d / w]),
        1 => ([b, w / d], [b * x, c], d / b, [b * x, d / b, c / a, q * d / w], [x, d, q / a, c * d / w]),
        2 => ([a, w / d], [a * x, c], d / a, [a * x, d / a, c / b, q * d / w], [x, d, q / b, c * d / w]),
        _ => ([b, w / c], [b * x, d], c / b, [b * x, c / b, d / a, q * c / w], [x, c, q / a, c * d / w]),
    };
    s.require_annulus(&up, &lo, arg)?;
    s.guard(&up)?;
    s.guard(&lo)?;
    s.guard(&num)?;
    s.guard(&den)?;
    let lhs = psi(ctx, &ab, &cd, x)?;
    let rhs = pr(ctx, &num)? / pr(ctx, &den)? * psi(ctx, &up, &lo, arg)?;
    Ok(s.finish(vec![Comparison::new("transformed", lhs, rhs)]))
}

fn bailey_t0(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    bailey_t(ctx, s, 0)
}
fn bailey_t1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    bailey_t(ctx, s, 1)
}
fn bailey_t2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    bailey_t(ctx, s, 2)
}
fn bailey_t3(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    bailey_t(ctx, s, 3)
}

// ---------------------------------------------------------------------------
// mu layer.

/// Admissible `(u, v, alpha)` with every theta argument of the mu forms guarded.
fn mu_point(ctx: &QContext, s: &mut Sampler, re_lo: f64, re_hi: f64) -> Result<MuPoint> {
    let u = s.additive("u");
    let v = s.additive("v");
    let alpha = s.alpha("alpha", re_lo, re_hi, 0.3);
    let at = alpha * ctx.tau();
    s.guard_add(&[u, v, u - v, u - at, v - at, u + v - at, u + v])?;
    MuPoint::new(*ctx, u, v, alpha)
}

fn mu_expr_equiv(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    let vals = [
        ("DEF", mu_def(&p)?.value),
        ("DEF_1PSI2", mu_def_psi12(&p)?.value),
        ("PSI12", mu_psi12(&p)?.value),
        ("PSI22", mu_psi22(&p)?.value),
        ("PSI02", mu_psi02(&p)?.value),
        ("PSI48", mu_psi48(&p)?.value),
        ("PSI48_VWP", mu_vwp_psi48(&p)?.value),
    ];
    let mut cmp = Vec::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            cmp.push(Comparison::new(format!("{} vs {}", vals[i].0, vals[j].0), vals[i].1, vals[j].1));
        }
    }
    Ok(s.finish(cmp))
}

struct Thm11 {
    p: MuPoint,
    x: C64,
    y: C64,
    a: C64,
    q: C64,
    pf: C64,
}

fn thm11_setup(ctx: &QContext, s: &mut Sampler) -> Result<Thm11> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    let (x, y, a, q) = (p.x(), p.y(), p.a(), ctx.q());
    let pf = -I * ctx.q_power(-0.125) * epi(p.alpha * (p.u - p.v));
    s.guard(&[x / (q * q), y / (q * q), q * y / a, q * x / a, a / (q * q), a, q * y / x, q * x / y])?;
    Ok(Thm11 { p, x, y, a, q, pf })
}

/// `mu` at a translated point, by the default representation.
fn mu_at(p: &MuPoint, u: C64, v: C64) -> Result<C64> {
    Ok(mu(&MuPoint::new(p.ctx, u, v, p.alpha)?)?.value)
}

fn thm11_1(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let Thm11 { p, x, y, a, q, .. } = thm11_setup(ctx, s)?;
    let up = s.shift("u'");
    let vp = s.shift("v'");
    let (xp, yp) = (e2pi(up), e2pi(vp));
    let at = p.alpha * ctx.tau();
    s.guard_add(&[up, vp, up - vp, p.u + up, p.v + up, p.u + vp, p.v + vp])?;
    s.guard_add(&[p.u + up - at, p.u + vp - at, p.v + up - at, p.v + vp - at])?;
    let qqa = q * q * a;
    s.guard(&[x * y * yp / qqa, y * xp, x * xp / a, q / yp, x * y * xp * yp / qqa, y * xp / qqa * x, y * yp, x * yp / a, q / xp])?;
    let lhs = mu_def(&p)?.value;
    let d = th(ctx, x * y * xp * yp / qqa)? * th(ctx, y)? * th(ctx, x / a)?;
    let r1 = xp * th(ctx, x * y * yp / qqa)? * th(ctx, y * xp)? * th(ctx, x * xp / a)? * th(ctx, q / yp)?
        / (d * th(ctx, yp / xp)?)
        * mu_at(&p, p.u + up, p.v + up)?;
    let r2 = yp * th(ctx, x * y * xp / qqa)? * th(ctx, y * yp)? * th(ctx, x * yp / a)? * th(ctx, q / xp)?
        / (d * th(ctx, xp / yp)?)
        * mu_at(&p, p.u + vp, p.v + vp)?;
    Ok(s.finish(vec![Comparison::new("two shifted mu terms", lhs, r1 + r2)]))
}

/// `0phi1(-; c; w)` directly, or as `1phi1(w/c; 0; c) / (c)_inf`.
fn phi01(ctx: &QContext, c: C64, w: C64, bessel: bool) -> Result<C64> {
    if bessel {
        Ok(phi(ctx, &[w / c], &[ZERO], c)? / pr(ctx, &[c])?)
    } else {
        phi(ctx, &[], &[c], w)
    }
}

fn thm11_2_sides(ctx: &QContext, s: &mut Sampler, bessel: bool) -> Result<(C64, C64)> {
    let Thm11 { p, x, y, a, q, pf } = thm11_setup(ctx, s)?;
    let up = s.shift("u'");
    let xp = e2pi(up);
    let at = p.alpha * ctx.tau();
    s.guard_add(&[up, p.u + up, p.v + up, p.u + up - at, p.v + up - at])?;
    s.guard(&[y * xp, x * xp / a, x * xp / (q * q), a / (y * xp), x * y * xp / (q * q * a), q / xp])?;
    let lhs = mu_def(&p)?.value;
    let d = th(ctx, x * xp / (q * q))? * th(ctx, y)? * th(ctx, x / a)?;
    let r1 = xp * th(ctx, x / (q * q))? * th(ctx, y * xp)? * th(ctx, x * xp / a)? * th(ctx, q * y / a)?
        / (d * th(ctx, a / (y * xp))?)
        * mu_at(&p, p.u + up, p.v + up)?;
    let r2 = pf * (a / y) * th(ctx, x * y * xp / (q * q * a))? * th(ctx, q / xp)? * pr(ctx, &[a, q * y / x])?
        / (d * th(ctx, y * xp / a)?)
        * phi01(ctx, q * y / x, q * q * y / (a * x), bessel)?;
    Ok((lhs, r1 + r2))
}

fn thm11_2(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = thm11_2_sides(ctx, s, false)?;
    Ok(s.finish(vec![Comparison::new("mu term plus 0phi1 term", l, r)]))
}

fn thm11_2_bessel(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (l, r) = thm11_2_sides(ctx, s, true)?;
    Ok(s.finish(vec![Comparison::new("mu term plus q-Bessel term", l, r)]))
}

fn thm11_3(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let Thm11 { p, x, y, a, q, pf } = thm11_setup(ctx, s)?;
    let lhs = mu_def(&p)?.value;
    let d = th(ctx, a / (q * q))? * th(ctx, y)? * th(ctx, x / a)?;
    let r1 = pf * (a / x) * th(ctx, x / (q * q))? * th(ctx, q * y / a)? * pr(ctx, &[a, q * x / y])?
        / (d * th(ctx, x / y)?)
        * phi01(ctx, q * x / y, q * q * x / (a * y), false)?;
    let r2 = pf * (a / y) * th(ctx, y / (q * q))? * th(ctx, q * x / a)? * pr(ctx, &[a, q * y / x])?
        / (d * th(ctx, y / x)?)
        * phi01(ctx, q * y / x, q * q * y / (a * x), false)?;
    Ok(s.finish(vec![Comparison::new("two 0phi1 terms", lhs, r1 + r2)]))
}

fn zwegers_point(ctx: &QContext, s: &mut Sampler) -> Result<(C64, C64)> {
    let u = s.additive("u");
    let v = s.additive("v");
    s.guard_add(&[u, v, u + v, u - v, u + v + 0.5 * ctx.tau(), u + v + 0.5])?;
    Ok((u, v))
}

fn thm12(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    let d = mu_def(&p)?.value;
    let (u, v) = zwegers_point(ctx, s)?;
    let z = mu_def(&MuPoint::new(*ctx, u, v, ONE)?)?.value;
    Ok(s.finish(vec![
        Comparison::new("explicit sum", d, mu_psi48(&p)?.value),
        Comparison::new("4psi8", d, mu_vwp_psi48(&p)?.value),
        Comparison::new("a = q 4psi8", z, at_q::vwp(ctx, u, v)?),
        Comparison::new("a = q sum", z, at_q::sum(ctx, u, v)?),
        Comparison::new("a = q split", z, at_q::split(ctx, u, v)?),
    ]))
}

fn mu_w_relation(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    let d = mu_def(&p)?.value;
    let (u, v) = zwegers_point(ctx, s)?;
    let z = mu_def(&MuPoint::new(*ctx, u, v, ONE)?)?.value;
    Ok(s.finish(vec![
        Comparison::new("W with shifted prefactor", d, mu_w(&p, WPrefactor::Shifted)?),
        Comparison::new("a = q W over theta", z, at_q::w_theta(ctx, u, v)?),
        Comparison::new("a = q W over triple product", z, at_q::w_jtp(ctx, u, v)?),
    ]))
}

fn trans_110(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    let z = s.shift("z");
    let at = p.alpha * ctx.tau();
    s.guard_add(&[z, p.u + z, p.v + z, p.u + z - at, p.v + z - at, p.u + p.v + z - at])?;
    let lhs = mu_def(&MuPoint::new(*ctx, p.u + z, p.v + z, p.alpha)?)?.value;
    let rhs = translation_rhs(&p, z)?;
    Ok(s.finish(vec![Comparison::new("translated", lhs, rhs)]))
}

fn trans_variation(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, 0.25, 2.0)?;
    s.guard_add(&[(ONE - p.alpha) * ctx.tau()])?;
    let lhs = mu_def(&p)?.value;
    Ok(s.finish(vec![Comparison::new("Phi j + j", lhs, variation_rhs(&p)?)]))
}

fn mu_symmetry(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, -2.0, 2.0)?;
    if crate::mu::hermite_degree(p.alpha, 1e-3).is_some() {
        return Err(QError::Pole("alpha too close to a nonpositive integer".into()));
    }
    let lhs = mu_def(&p)?.value;
    Ok(s.finish(vec![Comparison::new("swapped", lhs, symmetry_transform(&p)?)]))
}

fn mu_cqh(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let u = s.additive("u");
    let v = s.additive("v");
    s.guard_add(&[u, v, u - v])?;
    let mut cmp = Vec::new();
    for k in 0..=10u32 {
        let p = MuPoint::new(*ctx, u, v, C64::new(-(k as f64), 0.0))?;
        cmp.push(Comparison::new(format!("k = {k}"), mu_def(&p)?.value, mu_hermite(ctx, k, u, v)));
    }
    Ok(s.finish(cmp))
}

fn mu_qbessel_rec(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let p = mu_point(ctx, s, -1.5, 1.5)?;
    let m0 = mu(&p)?.value;
    let mp = mu(&p.with_alpha(p.alpha + 1.0)?)?.value;
    let mm = mu(&p.with_alpha(p.alpha - 1.0)?)?.value;
    let cos2 = epi(p.u - p.v) + epi(p.v - p.u);
    let lhs = cos2 * m0;
    let rhs = (ONE - ctx.q_power_c(-p.alpha)) * mp + mm;
    Ok(s.finish(vec![Comparison::new("three-term recursion", lhs, rhs)]))
}

fn zwegers_props(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let (u, v) = zwegers_point(ctx, s)?;
    let tau = ctx.tau();
    let z = |a: C64, b: C64| -> Result<C64> { Ok(mu_def(&MuPoint::new(*ctx, a, b, ONE)?)?.value) };
    let m = z(u, v)?;
    Ok(s.finish(vec![
        Comparison::new("u + 1", -m, z(u + 1.0, v)?),
        Comparison::new("(u, v) + tau", m, z(u + tau, v + tau)?),
        Comparison::new("(-u, -v)", m, z(-u, -v)?),
        Comparison::new("(v, u)", m, z(v, u)?),
    ]))
}

// ---------------------------------------------------------------------------
// Elliptic layer.

fn elliptic_point(ctx: &QContext, s: &mut Sampler) -> Result<(C64, C64)> {
    let u = s.additive("u");
    let v = s.additive("v");
    let h = C64::new(0.5, 0.0);
    s.guard_add(&[u, v, u + v, u - v, 2.0 * u, 2.0 * v, u + h, v + h])?;
    s.guard_add(&[(u + v) * 0.5, (u + v) * 0.5 + h, 2.0 * u - h, 2.0 * v - h])?;
    s.guard_add(&[u + 0.5 * ctx.tau(), v + 0.5 * ctx.tau()])?;
    Ok((u, v))
}

fn elliptic_wp(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let ec = EllipticContext::new(*ctx)?;
    let (u, v) = elliptic_point(ctx, s)?;
    let o = wp_diff_oracle(&ec, u, v)?;
    Ok(s.finish(vec![
        Comparison::new("2psi6", o, wp_diff_psi26(&ec, u, v, Psi26Arg::Quartic)?),
        Comparison::new("bilateral", o, wp_diff_bilateral(&ec, u, v)?),
        Comparison::new("split", o, wp_diff_split(&ec, u, v)?),
        Comparison::new("6psi6", o, wp_diff_bailey(&ec, u, v)?),
        Comparison::new("Bailey sum", o, wp_diff_bailey_sum(&ec, u, v)?),
        Comparison::new("Lambert sum", o, wp_diff_lambert(&ec, u, v)?),
        Comparison::new("M(u) - M(v)", o, m_func(&ec, u)? - m_func(&ec, v)?),
    ]))
}

fn elliptic_m(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let ec = EllipticContext::new(*ctx)?;
    let (u, _) = elliptic_point(ctx, s)?;
    let m = m_func(&ec, u)?;
    Ok(s.finish(vec![
        Comparison::new("u + 1", m, m_func(&ec, u + 1.0)?),
        Comparison::new("u + tau", m, m_func(&ec, u + ctx.tau())?),
        Comparison::new("-u", m, m_func(&ec, -u)?),
    ]))
}

/// Reference point for the Jacobi calibration draw.
pub fn jacobi_reference_point(ctx: &QContext) -> C64 {
    C64::new(0.23, 0.0) + ctx.tau() * 0.37
}

fn elliptic_jacobi(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let ec = EllipticContext::new(*ctx)?;
    let cal = JacobiCalibration::from_draw(&ec, jacobi_reference_point(ctx))?;
    let (u, _) = elliptic_point(ctx, s)?;
    s.guard_add(&[u + 0.25, u - 0.25])?;
    let o = jacobi_combo_oracle(&ec, u)?;
    let f = cal.apply(jacobi_combo_forms(&ec, u)?);
    Ok(s.finish(vec![
        Comparison::new("4psi8", o, f[0]),
        Comparison::new("bilateral", o, f[1]),
        Comparison::new("split", o, f[2]),
        Comparison::new("4psi8 vs bilateral", f[0], f[1]),
        Comparison::new("bilateral vs split", f[1], f[2]),
    ]))
}

fn elliptic_curious(ctx: &QContext, s: &mut Sampler) -> Result<Outcome> {
    let ec = EllipticContext::new(*ctx)?;
    let (u, v) = elliptic_point(ctx, s)?;
    let (l, r) = curious_relation(&ec, u, v, Psi26Arg::Quartic)?;
    Ok(s.finish(vec![Comparison::new("6psi6 vs 2psi6 difference", l, r)]))
}

// ---------------------------------------------------------------------------

macro_rules! entry {
    ($id:expr, $r:expr, $arity:expr, $dom:expr, $tol:expr, $qmax:expr, $f:expr) => {
        IdentityDescriptor {
            id: $id,
            paper_ref: $r,
            arity: $arity,
            domain: $dom,
            default_tol: $tol,
            q_max: $qmax,
            check: $f,
        }
    };
}

const RPSIR: &str = "moduli in [0.5, 2], |x| inside the annulus shrunk by 0.1 in log-modulus";
const MU_DOM: &str = "Im u, Im v in (0.05, 0.95) Im tau, Re alpha in [0.25, 2], |Im alpha| <= 0.3";

/// The fixed built-in identity set.
pub fn registry() -> Vec<IdentityDescriptor> {
    vec![
        entry!("INV_R1", "inversion of r psi r, r = 1", 3, RPSIR, 1e-8, 0.5, inv_r1),
        entry!("INV_R2", "inversion of r psi r, r = 2", 5, RPSIR, 1e-8, 0.5, inv_r2),
        entry!("INV_R3", "inversion of r psi r, r = 3", 7, RPSIR, 1e-8, 0.5, inv_r3),
        entry!("SLATER_A_R1", "Slater type-A transformation of r psi r, r = 1", 4, RPSIR, 1e-8, 0.5, slater_a1),
        entry!("SLATER_A_R2", "Slater type-A transformation of r psi r, r = 2", 7, RPSIR, 1e-8, 0.5, slater_a2),
        entry!("SLATER_A_R3", "Slater type-A transformation of r psi r, r = 3", 10, RPSIR, 1e-8, 0.3, slater_a3),
        entry!("SLATER_BC_R1", "Slater type-BC transformation, r = 1", 6, "a in [0.3, 2], b and a_k in [0.5, 2]", 1e-8, 0.5, slater_bc1),
        entry!("SLATER_BC_R2", "Slater type-BC transformation, r = 2", 9, "a in [0.3, 2], b and a_k in [0.5, 2]", 1e-8, 0.5, slater_bc2),
        entry!("RAMANUJAN_1PSI1", "Ramanujan 1psi1 summation", 3, "a, b in [0.3, 3], |b/a| < |x| < 1 with margin", 1e-8, 0.5, ramanujan_1psi1),
        entry!("BAILEY_6PSI6", "Bailey 6psi6 summation", 5, "a in [0.3, 1.5], b..e in [0.5, 2]", 1e-8, 0.5, bailey_6psi6),
        entry!("SLATER_A2_1", "two-term 2psi2 transformation, both terms direct", 7, RPSIR, 1e-8, 0.5, slater_a2_v1),
        entry!("SLATER_A2_2", "two-term 2psi2 transformation, second term inverted", 7, RPSIR, 1e-8, 0.5, slater_a2_v2),
        entry!("SLATER_A2_3", "two-term 2psi2 transformation, both terms inverted", 7, RPSIR, 1e-8, 0.5, slater_a2_v3),
        entry!("BAILEY_VWP_A", "Bailey 2psi2 to very-well-poised 6psi8, argument aq/(ef)", 5, "a in [0.3, 2], c..f in [0.5, 2]", 1e-8, 0.5, bailey_vwp_a),
        entry!("BAILEY_VWP_B", "Bailey 2psi2 to very-well-poised 6psi8, general argument", 5, RPSIR, 1e-8, 0.5, bailey_vwp_b),
        entry!("SLATER_BC_8PSI8", "two-term 8psi8 transformation", 9, "a in [0.3, 2], b and a_k in [0.5, 2]", 1e-8, 0.5, slater_bc_8psi8),
        entry!("BAILEY_T0", "Bailey 2psi2 transformation, (a, abx/c; ax, d; c/a)", 5, RPSIR, 1e-8, 0.5, bailey_t0),
        entry!("BAILEY_T1", "Bailey 2psi2 transformation, (b, abx/d; bx, c; d/b)", 5, RPSIR, 1e-8, 0.5, bailey_t1),
        entry!("BAILEY_T2", "Bailey 2psi2 transformation, (a, abx/d; ax, c; d/a)", 5, RPSIR, 1e-8, 0.5, bailey_t2),
        entry!("BAILEY_T3", "Bailey 2psi2 transformation, (b, abx/c; bx, d; c/b)", 5, RPSIR, 1e-8, 0.5, bailey_t3),
        entry!("MU_EXPR_EQUIV", "bilateral series expressions of the generalized mu-function", 3, MU_DOM, 1e-8, 0.5, mu_expr_equiv),
        entry!("THM11_1", "mu transformation with two free parameters x', y'", 5, MU_DOM, 1e-8, 0.5, thm11_1),
        entry!("THM11_2", "mu transformation with one free parameter and a 0phi1 term", 4, MU_DOM, 1e-8, 0.5, thm11_2),
        entry!("THM11_3", "mu as a sum of two 0phi1 terms", 3, MU_DOM, 1e-8, 0.5, thm11_3),
        entry!("THM11_2_QBESSEL_FORM", "the 0phi1 term read as Jackson's q-Bessel function", 4, MU_DOM, 1e-8, 0.5, thm11_2_bessel),
        entry!("THM12", "degenerate very-well-poised 4psi8 expression of mu and its a = q case", 5, MU_DOM, 1e-8, 0.5, thm12),
        entry!("MU_W_RELATION", "mu through the degenerate very-well-poised series W", 5, MU_DOM, 1e-8, 0.5, mu_w_relation),
        entry!("TRANS_110", "translation formula for mu(u + z, v + z)", 4, MU_DOM, 1e-8, 0.5, trans_110),
        entry!("TRANS_VARIATION", "mu as Phi j(u - v) + j(v - u)", 3, MU_DOM, 1e-8, 0.5, trans_variation),
        entry!("MU_SYMMETRY", "symmetry of the generalized mu-function under u <-> v", 3, "as mu, Re alpha in [-2, 2]", 1e-8, 0.5, mu_symmetry),
        entry!("MU_CQH", "continuous q-Hermite polynomials at alpha = -k, k = 0..10", 2, "Im u, Im v in (0.05, 0.95) Im tau", 1e-9, 0.5, mu_cqh),
        entry!("MU_QBESSEL_REC", "three-term recursion in alpha (q-Bessel type)", 3, "as mu, Re alpha in [-1.5, 1.5]", 1e-8, 0.5, mu_qbessel_rec),
        entry!("ZWEGERS_PROPS", "periodicity and symmetry of Zwegers' mu", 2, "Im u, Im v in (0.05, 0.95) Im tau", 1e-8, 0.5, zwegers_props),
        entry!("ELLIPTIC_WP", "q-expansions of wp(u) - wp(v)", 2, "Im u, Im v in (0.05, 0.95) Im tau", 1e-8, 0.4, elliptic_wp),
        entry!("ELLIPTIC_M", "double periodicity and evenness of M(u)", 1, "Im u in (0.05, 0.95) Im tau", 1e-8, 0.4, elliptic_m),
        entry!("ELLIPTIC_JACOBI", "q-expansions of the Jacobi combination dn/(sn cn)", 1, "Im u in (0.05, 0.95) Im tau", 1e-8, 0.4, elliptic_jacobi),
        entry!("ELLIPTIC_CURIOUS", "relation between the Bailey 6psi6 and the 2psi6 terms", 2, "Im u, Im v in (0.05, 0.95) Im tau", 1e-8, 0.4, elliptic_curious),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::r;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert!(reg.len() >= 22);
        assert!(reg.iter().any(|d| d.id == "THM11_1"));
        assert!(reg.iter().all(|d| !d.paper_ref.is_empty()));
        let mut ids: Vec<_> = reg.iter().map(|d| d.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn unknown_identity() {
        let ctx = QContext::from_q(r(0.2)).unwrap();
        assert_eq!(
            verify(&ctx, "nonexistent", 1, 5).unwrap_err(),
            QError::UnknownIdentity("nonexistent".into())
        );
    }

    #[test]
    fn sampler_is_deterministic() {
        let ctx = QContext::from_q(r(0.2)).unwrap();
        let mut a = Sampler::new(9, ctx);
        let mut b = Sampler::new(9, ctx);
        for _ in 0..5 {
            assert_eq!(a.modulus("z", 0.5, 2.0), b.modulus("z", 0.5, 2.0));
        }
    }

    #[test]
    fn annulus_respects_margin() {
        let ctx = QContext::from_q(r(0.2)).unwrap();
        let mut s = Sampler::new(3, ctx);
        for _ in 0..200 {
            let z = s.annulus("x", 0.2, 1.0).unwrap();
            assert!(Float::ln(z.norm()) >= Float::ln(0.2) + ANNULUS_MARGIN - 1e-12);
            assert!(Float::ln(z.norm()) <= -ANNULUS_MARGIN + 1e-12);
        }
        assert!(s.annulus("x", 0.9, 1.0).is_err());
    }
}
