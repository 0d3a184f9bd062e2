//! Nome context, q-Pochhammer symbols and the three theta functions.
//!
//! Everything is parametrised by `tau` with `Im tau > 0`; fractional powers
//! are `q^s := exp(2 pi i tau s)` so no branch choice is ever implicit.

use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex;
use num_traits::Float;

use crate::error::{QError, Result};

pub type C64 = Complex<f64>;

pub const I: C64 = Complex { re: 0.0, im: 1.0 };
pub const ONE: C64 = Complex { re: 1.0, im: 0.0 };
pub const ZERO: C64 = Complex { re: 0.0, im: 0.0 };

/// `exp(2 pi i z)`.
pub fn e2pi(z: C64) -> C64 {
    (I * (2.0 * PI) * z).exp()
}

/// `exp(pi i z)`.
pub fn epi(z: C64) -> C64 {
    (I * PI * z).exp()
}

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn r(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

/// Immutable evaluation context: nome, tolerances and truncation limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    tau: C64,
    q: C64,
    euler: C64,
    pub tol: f64,
    pub max_terms: usize,
    pub pole_eps: f64,
}

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_TERMS: usize = 5000;
pub const DEFAULT_POLE_EPS: f64 = 1e-12;

impl QContext {
    pub fn from_tau(tau: C64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(QError::InvalidContext(format!("Im tau must be > 0, got {tau}")));
        }
        let q = e2pi(tau);
        Self::build(tau, q)
    }

    /// `tau = log q / (2 pi i)` on the principal branch.
    pub fn from_q(q: C64) -> Result<Self> {
        let m = q.norm();
        if !(m > 0.0 && m < 1.0) {
            return Err(QError::InvalidContext(format!("need 0 < |q| < 1, got |q| = {m}")));
        }
        let tau = q.ln() / (I * (2.0 * PI));
        Self::build(tau, q)
    }

    fn build(tau: C64, q: C64) -> Result<Self> {
        if !(q.norm() > 0.0 && q.norm() < 1.0) {
            return Err(QError::InvalidContext(format!("|q| = {} out of range", q.norm())));
        }
        let mut ctx = QContext {
            tau,
            q,
            euler: ONE,
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            pole_eps: DEFAULT_POLE_EPS,
        };
        ctx.euler = pochhammer(&ctx, q, PochIndex::Infinite)?.value;
        Ok(ctx)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(QError::InvalidContext(format!("tol must be > 0, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms < 8 {
            return Err(QError::InvalidContext(format!("max_terms must be >= 8, got {max_terms}")));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn with_pole_eps(mut self, pole_eps: f64) -> Result<Self> {
        if !(pole_eps > 0.0) {
            return Err(QError::InvalidContext(format!("pole_eps must be > 0, got {pole_eps}")));
        }
        self.pole_eps = pole_eps;
        Ok(self)
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    /// `(q;q)_inf`, cached at construction.
    pub fn euler(&self) -> C64 {
        self.euler
    }

    /// `q^s = exp(2 pi i tau s)`; integral `s` uses repeated multiplication so
    /// that `q_power(1) == q` exactly.
    pub fn q_power(&self, s: f64) -> C64 {
        if s == 0.0 {
            return ONE;
        }
        if Float::fract(s) == 0.0 && s.abs() <= 64.0 {
            return self.q.powi(s as i32);
        }
        e2pi(self.tau * s)
    }

    /// `q^s` for complex `s`, e.g. `a = q^alpha`.
    pub fn q_power_c(&self, s: C64) -> C64 {
        if s.im == 0.0 {
            return self.q_power(s.re);
        }
        e2pi(self.tau * s)
    }

    /// `q^k` for a possibly large integer exponent.
    pub fn q_int(&self, k: i64) -> C64 {
        if k.unsigned_abs() <= 64 {
            self.q.powi(k as i32)
        } else {
            e2pi(self.tau * (k as f64))
        }
    }

    /// Distance of the additive point `w` from the lattice `Z + Z tau`.
    pub fn lattice_distance(&self, w: C64) -> f64 {
        let t = w.im / self.tau.im;
        let s = w.re - t * self.tau.re;
        let ds = s - Float::round(s);
        let dt = t - Float::round(t);
        (r(ds) + self.tau * dt).norm()
    }

    /// Distance of `log(y) / (2 pi i)` from the lattice, i.e. how far the
    /// multiplicative point `y` is from a zero of `theta(y)`.
    pub fn mult_lattice_distance(&self, y: C64) -> f64 {
        if y == ZERO {
            return 0.0;
        }
        self.lattice_distance(y.ln() / (I * (2.0 * PI)))
    }
}

/// Index of a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochIndex {
    Finite(i64),
    Infinite,
}

impl From<i64> for PochIndex {
    fn from(n: i64) -> Self {
        PochIndex::Finite(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerValue {
    pub value: C64,
    /// Factors used; `|n|` for finite `n`.
    pub truncation_terms: usize,
    /// Geometric bound on the omitted tail; zero for finite `n`.
    pub tail_bound: f64,
}

/// `(a;q)_n` for `n` in `Z` or infinity, with `(0;q)_n = 1`.
pub fn pochhammer(ctx: &QContext, a: C64, n: PochIndex) -> Result<PochhammerValue> {
    let q = ctx.q;
    match n {
        PochIndex::Finite(n) => {
            let terms = n.unsigned_abs() as usize;
            if a == ZERO {
                return Ok(PochhammerValue { value: ONE, truncation_terms: terms, tail_bound: 0.0 });
            }
            let mut p = ONE;
            if n >= 0 {
                let mut t = a;
                for _ in 0..n {
                    p *= ONE - t;
                    t *= q;
                }
            } else {
                let qi = q.inv();
                let mut t = a * qi;
                for j in 1..=(-n) {
                    let f = ONE - t;
                    if f.norm() < ctx.pole_eps {
                        return Err(QError::Pole(format!(
                            "({a};q)_{n}: factor 1 - a q^-{j} vanishes"
                        )));
                    }
                    p *= f;
                    t *= qi;
                }
                p = p.inv();
            }
            Ok(PochhammerValue { value: p, truncation_terms: terms, tail_bound: 0.0 })
        }
        PochIndex::Infinite => {
            if a == ZERO {
                return Ok(PochhammerValue { value: ONE, truncation_terms: 0, tail_bound: 0.0 });
            }
            let qm = q.norm();
            let eps = ctx.tol.min(f64::EPSILON);
            let mut p = ONE;
            let mut t = a;
            let mut min_factor = f64::INFINITY;
            for m in 0..ctx.max_terms {
                let tail = t.norm() / (1.0 - qm);
                if p == ZERO {
                    return Ok(PochhammerValue { value: p, truncation_terms: m, tail_bound: 0.0 });
                }
                let scale = min_factor.clamp(1e-100, 1.0);
                if tail < eps * scale {
                    return Ok(PochhammerValue { value: p, truncation_terms: m, tail_bound: tail });
                }
                let f = ONE - t;
                min_factor = min_factor.min(f.norm());
                p *= f;
                t *= q;
            }
            Err(QError::Truncation { terms: ctx.max_terms })
        }
    }
}

/// `(a;q)_inf`.
pub fn poch_inf(ctx: &QContext, a: C64) -> Result<C64> {
    Ok(pochhammer(ctx, a, PochIndex::Infinite)?.value)
}

/// `(a;q)_n` for finite `n`.
pub fn poch(ctx: &QContext, a: C64, n: i64) -> Result<C64> {
    Ok(pochhammer(ctx, a, PochIndex::Finite(n))?.value)
}

/// `1/(a;q)_n` for finite `n`; never singular for `n < 0`.
pub fn poch_recip(ctx: &QContext, a: C64, n: i64) -> Result<C64> {
    if n >= 0 {
        let p = poch(ctx, a, n)?;
        if p.norm() < ctx.pole_eps {
            return Err(QError::Pole(format!("1/({a};q)_{n}: product vanishes")));
        }
        Ok(p.inv())
    } else {
        let qi = ctx.q.inv();
        let mut t = a * qi;
        let mut p = ONE;
        for _ in 1..=(-n) {
            p *= ONE - t;
            t *= qi;
        }
        Ok(p)
    }
}

/// `(a_1, ..., a_r; q)_n`.
pub fn pochhammer_multi(ctx: &QContext, as_: &[C64], n: PochIndex) -> Result<C64> {
    let mut p = ONE;
    for &a in as_ {
        p *= pochhammer(ctx, a, n)?.value;
    }
    Ok(p)
}

/// `(a_1, ..., a_r; q)_inf`.
pub fn prod_inf(ctx: &QContext, as_: &[C64]) -> Result<C64> {
    pochhammer_multi(ctx, as_, PochIndex::Infinite)
}

/// `theta(y) = (y, q/y; q)_inf`.
pub fn theta_div(ctx: &QContext, y: C64) -> Result<C64> {
    if y == ZERO {
        return Err(QError::Pole("theta(0) is undefined".into()));
    }
    Ok(poch_inf(ctx, y)? * poch_inf(ctx, ctx.q / y)?)
}

/// `theta_q(x) = (q, -x, -q/x; q)_inf`.
pub fn theta_jtp(ctx: &QContext, x: C64) -> Result<C64> {
    if x == ZERO {
        return Err(QError::Pole("theta_q(0) is undefined".into()));
    }
    Ok(ctx.euler * poch_inf(ctx, -x)? * poch_inf(ctx, -ctx.q / x)?)
}

/// Odd Jacobi theta `-i q^{1/8} e^{-pi i u} (q, e^{2 pi i u}, q e^{-2 pi i u}; q)_inf`.
pub fn vartheta11(ctx: &QContext, u: C64) -> Result<C64> {
    let x = e2pi(u);
    let pre = -I * ctx.q_power(0.125) * epi(-u);
    Ok(pre * ctx.euler * poch_inf(ctx, x)? * poch_inf(ctx, ctx.q / x)?)
}

/// Reject values whose modulus is below `pole_eps`.
pub(crate) fn nonzero(ctx: &QContext, z: C64, what: &str) -> Result<C64> {
    if z.norm() < ctx.pole_eps || !z.is_finite() {
        Err(QError::Pole(format!("{what} vanishes")))
    } else {
        Ok(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: C64) -> QContext {
        QContext::from_q(q).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn q_power_basics() {
        let cx = QContext::from_tau(c(0.1, 0.4)).unwrap();
        assert_eq!(cx.q_power(0.0), ONE);
        assert_eq!(cx.q_power(1.0), cx.q());
        let h = cx.q_power(0.5);
        assert!(close(h * h, cx.q(), 1e-14));
        let a = cx.q_power(1.0 / 3.0) * cx.q_power(0.25);
        assert!(close(a, cx.q_power(7.0 / 12.0), 1e-14));
    }

    #[test]
    fn context_validation() {
        assert!(QContext::from_tau(c(0.0, -0.1)).is_err());
        assert!(QContext::from_q(r(1.0)).is_err());
        assert!(QContext::from_q(r(0.0)).is_err());
        let cx = ctx(r(0.3));
        assert!(cx.with_tol(0.0).is_err());
        assert!(cx.with_max_terms(7).is_err());
        assert!(cx.with_pole_eps(-1.0).is_err());
        assert!((cx.tau().im - (-(0.3f64).ln() / (2.0 * PI))).abs() < 1e-15);
    }

    #[test]
    fn finite_pochhammer() {
        let cx = ctx(c(0.3, 0.1));
        let a = c(0.7, -0.2);
        assert_eq!(poch(&cx, a, 0).unwrap(), ONE);
        let m1 = poch(&cx, a, -1).unwrap();
        assert!(close(m1, (ONE - a / cx.q()).inv(), 1e-14));
        let v = pochhammer(&cx, a, PochIndex::Finite(-3)).unwrap();
        assert_eq!(v.truncation_terms, 3);
        assert_eq!(v.tail_bound, 0.0);
        assert_eq!(poch(&cx, ZERO, -4).unwrap(), ONE);
        assert!(matches!(poch(&cx, cx.q() * cx.q(), -2), Err(QError::Pole(_))));
    }

    #[test]
    fn infinite_pochhammer_half() {
        let cx = ctx(r(0.5));
        let v = pochhammer(&cx, r(0.5), PochIndex::Infinite).unwrap();
        assert!((v.value.re - 0.288_788_095_086_602_4).abs() < 1e-12);
        assert!(v.tail_bound < 1e-14);
    }

    #[test]
    fn pochhammer_multi_pair() {
        let cx = ctx(c(0.2, 0.1));
        let (a, b) = (c(0.3, 0.5), c(-1.1, 0.2));
        let q = cx.q();
        let want = (ONE - a) * (ONE - a * q) * (ONE - b) * (ONE - b * q);
        let got = pochhammer_multi(&cx, &[a, b], PochIndex::Finite(2)).unwrap();
        assert!(close(got, want, 1e-14));
        assert_eq!(pochhammer_multi(&cx, &[], PochIndex::Finite(5)).unwrap(), ONE);
    }

    #[test]
    fn theta_zeros_and_symmetry() {
        let cx = ctx(c(0.25, 0.1));
        assert!(theta_div(&cx, cx.q()).unwrap().norm() < 1e-15);
        assert!(theta_jtp(&cx, -ONE).unwrap().norm() < 1e-15);
        assert!(vartheta11(&cx, ZERO).unwrap().norm() < 1e-15);
        let y = c(0.4, 0.9);
        let a = theta_div(&cx, y).unwrap();
        let b = theta_div(&cx, cx.q() / y).unwrap();
        assert!(close(a, b, 1e-14));
    }

    #[test]
    fn vartheta_antiperiod() {
        let cx = ctx(c(0.1, 0.2));
        let u = c(0.23, 0.05);
        let a = vartheta11(&cx, u + 1.0).unwrap();
        let b = vartheta11(&cx, u).unwrap();
        assert!(close(a, -b, 1e-13));
    }

    #[test]
    fn lattice_distance_zero_on_lattice() {
        let cx = QContext::from_tau(c(0.2, 0.7)).unwrap();
        let w = cx.tau() * 3.0 - 2.0;
        assert!(cx.lattice_distance(w) < 1e-12);
        assert!((cx.lattice_distance(c(0.5, 0.0)) - 0.5).abs() < 1e-12);
        assert!(cx.mult_lattice_distance(cx.q()) < 1e-12);
    }
}
