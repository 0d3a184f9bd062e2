//! Unilateral `r phi s` and bilateral `r psi s` series with adaptive windows.
//!
//! Sums grow symmetric windows `N = 8, 16, 32, ...` until two successive
//! partial sums and the boundary terms fall below `tol * |value|`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{QError, Result};
use crate::qcore::{poch, poch_recip, QContext, C64, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Unilateral,
    Bilateral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub upper: Vec<C64>,
    pub lower: Vec<C64>,
    pub arg: C64,
    pub kind: SeriesKind,
}

impl HypergeometricSpec {
    pub fn phi(upper: &[C64], lower: &[C64], arg: C64) -> Self {
        Self { upper: upper.to_vec(), lower: lower.to_vec(), arg, kind: SeriesKind::Unilateral }
    }

    pub fn psi(upper: &[C64], lower: &[C64], arg: C64) -> Self {
        Self { upper: upper.to_vec(), lower: lower.to_vec(), arg, kind: SeriesKind::Bilateral }
    }

    /// Exponent of `(-1)^n q^{n(n-1)/2}` in the n-th term.
    pub fn sign_exponent(&self) -> i64 {
        let (r, s) = (self.upper.len() as i64, self.lower.len() as i64);
        match self.kind {
            SeriesKind::Unilateral => s - r + 1,
            SeriesKind::Bilateral => s - r,
        }
    }

    /// `|b_1 ... b_s / (a_1 ... a_r)|`, the inner radius of a bilateral annulus.
    pub fn inner_radius(&self) -> f64 {
        let b: f64 = self.lower.iter().map(|z| z.norm()).product();
        let a: f64 = self.upper.iter().map(|z| z.norm()).product();
        b / a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    Convergent,
    Divergent,
    Conditional,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub value: C64,
    pub n_min: i64,
    pub n_max: i64,
    pub tail_estimate: f64,
    pub converged: bool,
}

fn classify(ctx: &QContext, x: f64, lo: f64, hi: f64) -> Convergence {
    let m = ctx.pole_eps;
    let inside_lo = lo == 0.0 || x > lo * (1.0 + m);
    let inside_hi = hi.is_infinite() || x < hi * (1.0 - m);
    if inside_lo && inside_hi {
        return Convergence::Convergent;
    }
    let out_lo = lo > 0.0 && x < lo * (1.0 - m);
    let out_hi = hi.is_finite() && x > hi * (1.0 + m);
    if out_lo || out_hi {
        Convergence::Divergent
    } else {
        Convergence::Conditional
    }
}

pub fn convergence_check(ctx: &QContext, spec: &HypergeometricSpec) -> Convergence {
    let (r, s) = (spec.upper.len(), spec.lower.len());
    let x = spec.arg.norm();
    match spec.kind {
        SeriesKind::Unilateral => {
            if x == 0.0 || r < s + 1 {
                Convergence::Convergent
            } else if r == s + 1 {
                classify(ctx, x, 0.0, 1.0)
            } else {
                Convergence::Divergent
            }
        }
        SeriesKind::Bilateral => {
            if r > s || x == 0.0 {
                return Convergence::Divergent;
            }
            let lo = spec.inner_radius();
            if lo.is_infinite() {
                return Convergence::Divergent;
            }
            let hi = if r == s { 1.0 } else { f64::INFINITY };
            classify(ctx, x, lo, hi)
        }
    }
}

fn divergence_reason(spec: &HypergeometricSpec) -> alloc::string::String {
    let (r, s) = (spec.upper.len(), spec.lower.len());
    let x = spec.arg.norm();
    match spec.kind {
        SeriesKind::Unilateral => {
            if r > s + 1 {
                format!("{r}phi{s} with r > s + 1 and x != 0")
            } else {
                format!("|x| >= 1 (|x| = {x})")
            }
        }
        SeriesKind::Bilateral => {
            if r > s {
                format!("{r}psi{s} with r > s")
            } else if r == s && x >= 1.0 {
                format!("|x| >= 1 (|x| = {x})")
            } else {
                format!("|x| <= |b1...bs/(a1...ar)| (|x| = {x}, bound {})", spec.inner_radius())
            }
        }
    }
}

/// `((-1)^n q^{n(n-1)/2})^e x^n`, computed in log form to avoid overflow.
fn sign_power(ctx: &QContext, n: i64, e: i64, x: C64) -> C64 {
    let tri = n * (n - 1) / 2;
    let sign = if (n * e).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    if x == ZERO {
        return if n == 0 { ONE } else { ZERO };
    }
    let lq = ctx.tau() * crate::qcore::I * (2.0 * core::f64::consts::PI);
    let l = lq * ((tri * e) as f64) + x.ln() * (n as f64);
    l.exp() * sign
}

/// Exact n-th summand.
pub fn term(ctx: &QContext, spec: &HypergeometricSpec, n: i64) -> Result<C64> {
    if spec.kind == SeriesKind::Unilateral && n < 0 {
        return Ok(ZERO);
    }
    let mut t = ONE;
    for (i, &a) in spec.upper.iter().enumerate() {
        t *= poch(ctx, a, n).map_err(|_| {
            QError::Pole(format!("upper parameter a{} = {a} at index {n}", i + 1))
        })?;
    }
    for (i, &b) in spec.lower.iter().enumerate() {
        t *= poch_recip(ctx, b, n).map_err(|_| {
            QError::Pole(format!("lower parameter b{} = {b} at index {n}", i + 1))
        })?;
    }
    if spec.kind == SeriesKind::Unilateral {
        t *= poch_recip(ctx, ctx.q(), n)?;
    }
    Ok(t * sign_power(ctx, n, spec.sign_exponent(), spec.arg))
}

/// Outcome of asking a term generator for the next summand.
pub(crate) enum Step {
    Term(C64),
    /// Every further term on this side vanishes identically.
    Stop,
}

/// Doubling-window driver shared by the ratio and explicit-term evaluators.
pub(crate) fn drive(
    ctx: &QContext,
    bilateral: bool,
    mut pos: impl FnMut(i64) -> Result<Step>,
    mut neg: impl FnMut(i64) -> Result<Step>,
) -> Result<TruncationReport> {
    let mut sum = ZERO;
    let mut max_abs = 0.0f64;
    let (mut pos_n, mut neg_n) = (-1i64, 0i64);
    let (mut pos_done, mut neg_done) = (false, !bilateral);
    let (mut pos_last, mut pos_prev) = (ZERO, ZERO);
    let (mut neg_last, mut neg_prev) = (ZERO, ZERO);
    let mut prev_sum: Option<C64> = None;
    let mut window: i64 = 8;
    loop {
        while !pos_done && pos_n < window {
            pos_n += 1;
            match pos(pos_n)? {
                Step::Term(t) => {
                    if !t.is_finite() {
                        return Err(QError::NonConvergence { terms: pos_n as usize });
                    }
                    sum += t;
                    max_abs = max_abs.max(t.norm());
                    pos_prev = pos_last;
                    pos_last = t;
                }
                Step::Stop => {
                    pos_done = true;
                    pos_prev = ZERO;
                    pos_last = ZERO;
                }
            }
        }
        while !neg_done && neg_n > -window {
            neg_n -= 1;
            match neg(neg_n)? {
                Step::Term(t) => {
                    if !t.is_finite() {
                        return Err(QError::NonConvergence { terms: (-neg_n) as usize });
                    }
                    sum += t;
                    max_abs = max_abs.max(t.norm());
                    neg_prev = neg_last;
                    neg_last = t;
                }
                Step::Stop => {
                    neg_done = true;
                    neg_prev = ZERO;
                    neg_last = ZERO;
                }
            }
        }
        let tail = tail_of(pos_last, pos_prev) + tail_of(neg_last, neg_prev);
        let scale = sum.norm();
        let floor = 4.0 * f64::EPSILON * max_abs;
        let thresh = (ctx.tol * scale).max(floor);
        let diff = prev_sum.map_or(f64::INFINITY, |p| (sum - p).norm());
        let boundary = pos_last.norm() + neg_last.norm();
        if (pos_done && neg_done) || (diff <= thresh && boundary <= thresh && tail <= thresh) {
            let n_min = if bilateral { neg_n } else { 0 };
            return Ok(TruncationReport {
                value: sum,
                n_min,
                n_max: pos_n,
                tail_estimate: tail,
                converged: true,
            });
        }
        if window as usize >= ctx.max_terms {
            return Err(QError::NonConvergence { terms: window as usize });
        }
        prev_sum = Some(sum);
        window = (window * 2).min(ctx.max_terms as i64);
    }
}

/// Geometric estimate of the omitted tail from the last two terms.
fn tail_of(last: C64, prev: C64) -> f64 {
    let l = last.norm();
    if l == 0.0 {
        return 0.0;
    }
    let p = prev.norm();
    if p == 0.0 {
        return l;
    }
    let rho = l / p;
    if rho < 0.95 {
        l * rho / (1.0 - rho)
    } else {
        l * 20.0
    }
}

/// Sum explicit terms `f(n)` over `n >= 0` (unilateral) or all of `Z`.
pub fn sum_terms(
    ctx: &QContext,
    kind: SeriesKind,
    mut f: impl FnMut(i64) -> Result<C64>,
) -> Result<TruncationReport> {
    let cell = core::cell::RefCell::new(&mut f);
    drive(
        ctx,
        kind == SeriesKind::Bilateral,
        |n| Ok(Step::Term((cell.borrow_mut())(n)?)),
        |n| Ok(Step::Term((cell.borrow_mut())(n)?)),
    )
}

/// Adaptive evaluation by term-ratio recursion.
pub fn eval(ctx: &QContext, spec: &HypergeometricSpec) -> Result<TruncationReport> {
    if convergence_check(ctx, spec) == Convergence::Divergent {
        return Err(QError::Divergent(divergence_reason(spec)));
    }
    let q = ctx.q();
    let e = spec.sign_exponent();
    let x = spec.arg;
    let unilateral = spec.kind == SeriesKind::Unilateral;
    let eps = ctx.pole_eps;
    let sgn = if e.rem_euclid(2) == 1 { -1.0 } else { 1.0 };

    // Forward: t_{n} from t_{n-1} via ratio(n-1), with q^{n-1} tracked.
    let mut t = ONE;
    let mut qm = ONE;
    let pos = |n: i64| -> Result<Step> {
        if n == 0 {
            return Ok(Step::Term(ONE));
        }
        let mut num = ONE;
        let mut den = ONE;
        for &a in &spec.upper {
            num *= ONE - a * qm;
        }
        for (i, &b) in spec.lower.iter().enumerate() {
            let f = ONE - b * qm;
            if f.norm() < eps {
                return Err(QError::Pole(format!(
                    "lower parameter b{} = {b} meets q^-{}",
                    i + 1,
                    n - 1
                )));
            }
            den *= f;
        }
        if unilateral {
            den *= ONE - qm * q;
        }
        if num.norm() < eps * den.norm() {
            return Ok(Step::Stop);
        }
        t = t * num / den * x * qm.powi(e as i32) * sgn;
        qm *= q;
        Ok(Step::Term(t))
    };

    // Backward: t_{m} = t_{m+1} / ratio(m) with p = q^{-m} small.
    let mut tn = ONE;
    let mut p = q;
    let neg = |_m: i64| -> Result<Step> {
        let mut num = ONE;
        let mut den = ONE;
        for (i, &a) in spec.upper.iter().enumerate() {
            let f = p - a;
            if f.norm() < eps * p.norm() {
                return Err(QError::Pole(format!(
                    "upper parameter a{} = {a} meets a power of q on the negative side",
                    i + 1
                )));
            }
            num *= f;
        }
        for &b in &spec.lower {
            let f = p - b;
            if f.norm() < eps * p.norm() {
                return Ok(Step::Stop);
            }
            den *= f;
        }
        let ratio = num / den * x * sgn;
        tn /= ratio;
        p *= q;
        Ok(Step::Term(tn))
    };
    drive(ctx, !unilateral, pos, neg)
}

/// Value of a unilateral `r phi s`.
pub fn phi(ctx: &QContext, upper: &[C64], lower: &[C64], x: C64) -> Result<C64> {
    Ok(eval(ctx, &HypergeometricSpec::phi(upper, lower, x))?.value)
}

/// Value of a bilateral `r psi s`.
pub fn psi(ctx: &QContext, upper: &[C64], lower: &[C64], x: C64) -> Result<C64> {
    Ok(eval(ctx, &HypergeometricSpec::psi(upper, lower, x))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, prod_inf, r};

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-30)
    }

    #[test]
    fn classification() {
        let cx = QContext::from_q(r(0.3)).unwrap();
        let s = HypergeometricSpec::psi(&[r(1.0), r(1.0)], &[r(0.1), r(1.0)], r(0.5));
        assert_eq!(convergence_check(&cx, &s), Convergence::Convergent);
        let s = HypergeometricSpec::psi(&[r(1.0), r(1.0)], &[r(0.1), r(1.0)], r(1.2));
        assert_eq!(convergence_check(&cx, &s), Convergence::Divergent);
        let z = [ZERO; 4];
        let s = HypergeometricSpec::psi(
            &[r(0.5), r(2.0), r(3.0), r(0.7)],
            &[r(0.1), r(0.2), r(0.3), r(0.4), z[0], z[1], z[2], z[3]],
            r(1e-3),
        );
        assert_eq!(convergence_check(&cx, &s), Convergence::Convergent);
        let s = HypergeometricSpec::psi(&[r(0.5), r(2.0)], &[r(0.1)], r(0.2));
        assert_eq!(convergence_check(&cx, &s), Convergence::Divergent);
        let s = HypergeometricSpec::psi(&[r(1.0)], &[r(0.5)], r(1.0));
        assert_eq!(convergence_check(&cx, &s), Convergence::Conditional);
    }

    #[test]
    fn term_conventions() {
        let cx = QContext::from_q(c(0.3, 0.1)).unwrap();
        let s = HypergeometricSpec::psi(&[r(0.4)], &[r(0.1)], r(0.5));
        assert_eq!(term(&cx, &s, 0).unwrap(), ONE);
        let (a, b, x) = (c(0.3, 0.2), c(-0.5, 0.1), c(0.7, 0.3));
        let s = HypergeometricSpec::phi(&[a], &[b], x);
        let want = -(ONE - a) * x / ((ONE - b) * (ONE - cx.q()));
        assert!(rel(term(&cx, &s, 1).unwrap(), want) < 1e-14);
        let s = HypergeometricSpec::psi(&[a], &[ZERO, x], x);
        let want = poch(&cx, a, -1).unwrap() / poch(&cx, x, -1).unwrap() / x
            * sign_power(&cx, -1, 1, ONE);
        assert!(rel(term(&cx, &s, -1).unwrap(), want) < 1e-14);
    }

    #[test]
    fn ramanujan_example() {
        let cx = QContext::from_q(r(0.3)).unwrap();
        let (a, b, x) = (r(0.4), r(0.1), r(0.5));
        let q = cx.q();
        let lhs = psi(&cx, &[a], &[b], x).unwrap();
        let rhs = prod_inf(&cx, &[a * x, q / (a * x), q, b / a]).unwrap()
            / prod_inf(&cx, &[x, b / (a * x), b, q / a]).unwrap();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn unilateral_zero_argument() {
        let cx = QContext::from_q(r(0.3)).unwrap();
        assert_eq!(phi(&cx, &[r(0.2), r(0.4)], &[r(0.5)], ZERO).unwrap(), ONE);
    }

    #[test]
    fn euler_smoke() {
        let cx = QContext::from_q(c(0.2, 0.3)).unwrap();
        let x = c(0.4, -0.3);
        let lhs = phi(&cx, &[ZERO], &[], x).unwrap();
        let rhs = crate::qcore::poch_inf(&cx, x).unwrap().inv();
        assert!(rel(lhs, rhs) < 1e-13);
    }

    #[test]
    fn divergent_error_names_condition() {
        let cx = QContext::from_q(r(0.3)).unwrap();
        let e = psi(&cx, &[r(0.5)], &[r(0.2)], r(1.5)).unwrap_err();
        assert!(alloc::format!("{e}").contains("|x| >= 1"));
    }
}
