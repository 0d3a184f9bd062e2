//! The generalized mu-function `mu(u, v; alpha)` and its auxiliary functions.
//!
//! All `(x/y)^{alpha/2}`-type factors are computed from additive coordinates
//! as `exp(pi i alpha (u - v))`; multiplicative entry points pick `u`, `v` by
//! the principal logarithm.

use alloc::format;
use core::f64::consts::PI;
use num_traits::Float;

use crate::error::{QError, Result};
use crate::qcore::{
    e2pi, epi, nonzero, poch, poch_inf, poch_recip, prod_inf, theta_div, vartheta11, QContext,
    C64, I, ONE, ZERO,
};
use crate::series::{drive, eval, phi, sum_terms, Step, HypergeometricSpec, SeriesKind, TruncationReport};

/// Additive coordinates of a point of the generalized mu-function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuPoint {
    pub u: C64,
    pub v: C64,
    pub alpha: C64,
    pub ctx: QContext,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Defining bilateral sum.
    Def,
    Psi12,
    Psi22,
    Psi02,
    /// Degenerate very-well-poised explicit sum.
    Psi48,
    /// Polynomial value at `alpha = -k`.
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuValue {
    pub value: C64,
    pub representation: Representation,
    pub report: TruncationReport,
}

impl MuPoint {
    pub fn new(ctx: QContext, u: C64, v: C64, alpha: C64) -> Result<Self> {
        let p = MuPoint { u, v, alpha, ctx };
        let eps = ctx.pole_eps;
        if ctx.lattice_distance(u) < eps {
            return Err(QError::Pole(format!("u = {u} lies on Z + Z tau")));
        }
        if ctx.lattice_distance(v) < eps {
            return Err(QError::Pole(format!("v = {v} lies on Z + Z tau")));
        }
        if ctx.lattice_distance(u - alpha * ctx.tau()) < eps {
            return Err(QError::Pole("theta(x/a) vanishes".into()));
        }
        Ok(p)
    }

    /// Point from `x`, `y` via principal logarithms.
    pub fn from_multiplicative(ctx: QContext, x: C64, y: C64, alpha: C64) -> Result<Self> {
        let k = I * (2.0 * PI);
        Self::new(ctx, x.ln() / k, y.ln() / k, alpha)
    }

    pub fn x(&self) -> C64 {
        e2pi(self.u)
    }

    pub fn y(&self) -> C64 {
        e2pi(self.v)
    }

    pub fn a(&self) -> C64 {
        self.ctx.q_power_c(self.alpha)
    }

    pub fn with_alpha(&self, alpha: C64) -> Result<Self> {
        Self::new(self.ctx, self.u, self.v, alpha)
    }

    pub fn swapped(&self) -> Result<Self> {
        Self::new(self.ctx, self.v, self.u, self.alpha)
    }

    /// `-i q^{-1/8} e^{pi i alpha (u - v)}`.
    fn prefactor(&self) -> C64 {
        -I * self.ctx.q_power(-0.125) * epi(self.alpha * (self.u - self.v))
    }
}

fn finish(
    value_scale: C64,
    rep: TruncationReport,
    representation: Representation,
) -> MuValue {
    let value = value_scale * rep.value;
    MuValue {
        value,
        representation,
        report: TruncationReport {
            value,
            tail_estimate: rep.tail_estimate * value_scale.norm(),
            ..rep
        },
    }
}

fn th(ctx: &QContext, y: C64, what: &str) -> Result<C64> {
    nonzero(ctx, theta_div(ctx, y)?, what)
}

/// Defining sum `e^{pi i alpha (u-v)}/theta11(v) sum (-1)^n e^{2 pi i (n+1/2) v}
/// q^{n(n+1)/2} (x q^{n+1})_inf / (x q^{n-alpha+1})_inf`.
///
/// The term ratio is that of `1psi2(xq/a; xq, 0; q, qy)`, which is how it is summed.
pub fn mu_def(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let den = nonzero(ctx, poch_inf(ctx, x * q / a)?, "(x q^{1-alpha})_inf")?;
    let r0 = poch_inf(ctx, x * q)? / den;
    let t11 = nonzero(ctx, vartheta11(ctx, p.v)?, "theta11(v)")?;
    let spec = HypergeometricSpec::psi(&[x * q / a], &[x * q, ZERO], q * y);
    let rep = eval(ctx, &spec)?;
    let scale = epi(p.alpha * (p.u - p.v)) / t11 * epi(p.v) * r0;
    Ok(finish(scale, rep, Representation::Def))
}

/// `1psi2(x/a; 0, x; q, y)` form of the definition.
pub fn mu_def_psi12(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let (x, y, a) = (p.x(), p.y(), p.a());
    let den = ctx.euler() * th(ctx, y, "theta(y)")? * nonzero(ctx, poch_inf(ctx, x / a)?, "(x/a)_inf")?;
    let rep = eval(ctx, &HypergeometricSpec::psi(&[x / a], &[ZERO, x], y))?;
    let scale = p.prefactor() * poch_inf(ctx, x)? / den;
    Ok(finish(scale, rep, Representation::Def))
}

/// `1psi2(y/a; 0, y; q, x)` form.
pub fn mu_psi12(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let den = ctx.euler()
        * th(ctx, x / a, "theta(x/a)")?
        * nonzero(ctx, poch_inf(ctx, q / y)?, "(q/y)_inf")?;
    let rep = eval(ctx, &HypergeometricSpec::psi(&[y / a], &[ZERO, y], x))?;
    let scale = p.prefactor() * poch_inf(ctx, a * q / y)? / den;
    Ok(finish(scale, rep, Representation::Psi12))
}

fn common_den(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    Ok(ctx.euler() * th(ctx, p.y(), "theta(y)")? * th(ctx, p.x() / p.a(), "theta(x/a)")?)
}

/// `2psi2(x/a, y/a; 0, 0; q, a)` form; needs `|a| < 1`.
pub fn mu_psi22(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let rep = eval(ctx, &HypergeometricSpec::psi(&[x / a, y / a], &[ZERO, ZERO], a))?;
    let scale = p.prefactor() * prod_inf(ctx, &[a, a * q / x, a * q / y])? / common_den(p)?;
    Ok(finish(scale, rep, Representation::Psi22))
}

/// `0psi2(-; x, y; q, xy/a)` form; needs `|a| < 1`.
pub fn mu_psi02(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let (x, y, a) = (p.x(), p.y(), p.a());
    let rep = eval(ctx, &HypergeometricSpec::psi(&[], &[x, y], x * y / a))?;
    let scale = p.prefactor() * prod_inf(ctx, &[a, x, y])? / common_den(p)?;
    Ok(finish(scale, rep, Representation::Psi02))
}

fn vwp_den(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    let (x, y, a) = (p.x(), p.y(), p.a());
    Ok(common_den(p)? * th(ctx, x * y / (a * ctx.q()), "theta(xy/(aq))")?)
}

/// Explicit degenerate very-well-poised sum
/// `sum (1 - (xy/a) q^{2n-1}) (x/a, y/a)_n/(x, y)_n q^{2n^2-3n} (x^2 y^2/a)^n`.
pub fn mu_psi48(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let tau = ctx.tau();
    let w = 2.0 * p.u + 2.0 * p.v - p.alpha * tau;
    let rep = sum_terms(ctx, SeriesKind::Bilateral, |n| {
        let nf = n as f64;
        let pw = e2pi(tau * (2.0 * nf * nf - 3.0 * nf) + w * nf);
        let vw = ONE - x * y / a * ctx.q_int(2 * n - 1);
        let pq = poch(ctx, x / a, n)? * poch(ctx, y / a, n)?
            * poch_recip(ctx, x, n)?
            * poch_recip(ctx, y, n)?;
        Ok(vw * pq * pw)
    })?;
    let scale = p.prefactor() * prod_inf(ctx, &[x, y, a * q / x, a * q / y])? / vwp_den(p)?;
    Ok(finish(scale, rep, Representation::Psi48))
}

/// The same sum written as a `4psi8` series with argument `x^2 y^2/(aq)`.
pub fn mu_vwp_psi48(p: &MuPoint) -> Result<MuValue> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let tau = ctx.tau();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let s = epi(tau + p.u + p.v - p.alpha * tau);
    let t = epi(p.u + p.v - p.alpha * tau - tau);
    let upper = [s, -s, x / a, y / a];
    let lower = [t, -t, y, x, ZERO, ZERO, ZERO, ZERO];
    let rep = eval(ctx, &HypergeometricSpec::psi(&upper, &lower, x * x * y * y / (a * q)))?;
    let scale = p.prefactor()
        * prod_inf(ctx, &[x, y, a * q / x, a * q / y])?
        * (ONE - x * y / (a * q))
        / vwp_den(p)?;
    Ok(finish(scale, rep, Representation::Psi48))
}

/// Which infinite product multiplies the degenerate very-well-poised series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WPrefactor {
    /// `(x/q, y/q, aq/x, aq/y)_inf`.
    Shifted,
    /// `(x, y, aq/x, aq/y)_inf`.
    Unshifted,
}

/// mu rebuilt from `W(xy/(aq); x/a, y/a)` with the chosen product prefactor.
pub fn mu_w(p: &MuPoint, pf: WPrefactor) -> Result<C64> {
    let ctx = &p.ctx;
    let q = ctx.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let prod = match pf {
        WPrefactor::Shifted => prod_inf(ctx, &[x / q, y / q, a * q / x, a * q / y])?,
        WPrefactor::Unshifted => prod_inf(ctx, &[x, y, a * q / x, a * q / y])?,
    };
    let w = w_func(ctx, x * y / (a * q), x / a, y / a)?;
    Ok(p.prefactor() * prod / vwp_den(p)? * w)
}

/// `W(a; b, c; q) = sum (1 - a q^{2n}) (b, c)_n / (a/b, a/c)_{n+1} q^{2n^2} (a^3/(bc))^n`.
pub fn w_func(ctx: &QContext, a: C64, b: C64, c: C64) -> Result<C64> {
    Ok(w_report(ctx, a, b, c)?.value)
}

pub fn w_report(ctx: &QContext, a: C64, b: C64, c: C64) -> Result<TruncationReport> {
    if a == ZERO || b == ZERO || c == ZERO {
        return Err(QError::Pole("W needs nonzero a, b, c".into()));
    }
    // Summand (1 - a p^{2n}) R_n, with R_n advanced by its term ratio so that
    // huge Pochhammer factors and tiny powers of p never meet.
    let p = ctx.q();
    let eps = ctx.pole_eps;
    let (ab, ac) = (a / b, a / c);
    let z = a * a * a / (b * c);
    let d0 = (ONE - ab) * (ONE - ac);
    if d0.norm() < eps {
        return Err(QError::Pole(format!("(a/b;p)_1 (a/c;p)_1 vanishes at a = {a}")));
    }
    let r0 = ONE / d0;
    let pole = |what: &str, n: i64| QError::Pole(format!("W summand: {what} meets p^{n}"));

    let (mut r, mut pm) = (r0, ONE);
    let pos = |n: i64| -> Result<Step> {
        if n == 0 {
            return Ok(Step::Term((ONE - a) * r0));
        }
        // pm = p^{n-1}
        let (nb, nc) = (ONE - b * pm, ONE - c * pm);
        if nb.norm() < eps || nc.norm() < eps {
            return Ok(Step::Stop);
        }
        let (db, dc) = (ONE - ab * pm * p, ONE - ac * pm * p);
        if db.norm() < eps || dc.norm() < eps {
            return Err(pole("a/b or a/c", n));
        }
        r = r * (nb / db) * (nc / dc) * pm.powi(4) * p * p * z;
        if r == ZERO {
            return Ok(Step::Stop);
        }
        pm *= p;
        Ok(Step::Term((ONE - a * pm * pm) * r))
    };

    // Backward in u = p^{-m}, which shrinks as m decreases.
    let (mut rn, mut u) = (r0, ONE);
    let neg = |m: i64| -> Result<Step> {
        u *= p;
        let near = |x: C64, y: C64| (x - y).norm() < eps * x.norm().max(y.norm());
        if near(u, ab * p) || near(u, ac * p) {
            return Ok(Step::Stop);
        }
        if near(u, b) || near(u, c) {
            return Err(pole("b or c", m));
        }
        let (nb, nc, db, dc) = (u - ab * p, u - ac * p, u - b, u - c);
        rn = rn * (nb / db) * (nc / dc) * u.powi(4) / (p * p * z);
        if rn == ZERO {
            // underflow: every further term is below the smallest double
            return Ok(Step::Stop);
        }
        Ok(Step::Term((u * u - a) * (rn / u / u)))
    };
    drive(ctx, true, pos, neg)
}

/// Continuous q-Hermite polynomial `H_k(cos pi w | q)`.
pub fn cont_q_hermite(ctx: &QContext, k: u32, w: C64) -> C64 {
    let k = k as i64;
    let q = ctx.q();
    let qk = poch(ctx, q, k).unwrap_or(ONE);
    let mut s = ZERO;
    for l in 0..=k {
        let binom = qk / (poch(ctx, q, l).unwrap_or(ONE) * poch(ctx, q, k - l).unwrap_or(ONE));
        s += binom * epi(w * ((k - 2 * l) as f64));
    }
    s
}

/// `mu` at `alpha = -k`: `-i q^{-1/8} H_k(cos pi (u - v))`.
pub fn mu_hermite(ctx: &QContext, k: u32, u: C64, v: C64) -> C64 {
    -I * ctx.q_power(-0.125) * cont_q_hermite(ctx, k, u - v)
}

/// Nonpositive integer `k` with `|alpha + k| < eps`, if any.
pub fn hermite_degree(alpha: C64, eps: f64) -> Option<u32> {
    let k = Float::round(-alpha.re);
    if k >= 0.0 && (alpha + k).norm() < eps {
        Some(k as u32)
    } else {
        None
    }
}

/// Default evaluation: polynomial path near `alpha = -k`, the `2psi2` form
/// when `|a| < 1`, the defining sum otherwise.
pub fn mu(p: &MuPoint) -> Result<MuValue> {
    if let Some(k) = hermite_degree(p.alpha, p.ctx.pole_eps) {
        let value = mu_hermite(&p.ctx, k, p.u, p.v);
        return Ok(MuValue {
            value,
            representation: Representation::Hermite,
            report: TruncationReport {
                value,
                n_min: 0,
                n_max: k as i64,
                tail_estimate: 0.0,
                converged: true,
            },
        });
    }
    if p.a().norm() < 0.98 {
        if let Ok(v) = mu_psi22(p) {
            return Ok(v);
        }
    }
    mu_def(p)
}

/// Zwegers' `mu(u, v)`, the `alpha = 1` case.
pub fn zwegers_mu(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
    Ok(mu_def(&MuPoint::new(*ctx, u, v, ONE)?)?.value)
}

/// `Phi(u, v; alpha) = theta11(v - alpha tau) theta11(u) / (theta11(u - alpha tau) theta11(v)) e^{2 pi i alpha (u - v)}`.
pub fn phi_factor(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    let at = p.alpha * ctx.tau();
    let num = vartheta11(ctx, p.v - at)? * vartheta11(ctx, p.u)?;
    let den = nonzero(ctx, vartheta11(ctx, p.u - at)? * vartheta11(ctx, p.v)?, "theta11(u - alpha tau) theta11(v)")?;
    Ok(num / den * e2pi(p.alpha * (p.u - p.v)))
}

/// `j(w; alpha) = i q^{1/8} (q)_inf/(q^{1-alpha})_inf e^{pi i (1-alpha) w}/theta11(w)
/// 1phi1(q^{1-alpha}; 0; q, e^{2 pi i w} q)`.
pub fn j_func(ctx: &QContext, w: C64, alpha: C64) -> Result<C64> {
    let b = ctx.q_power_c(ONE - alpha);
    let den = nonzero(ctx, poch_inf(ctx, b)?, "(q^{1-alpha})_inf")?
        * nonzero(ctx, vartheta11(ctx, w)?, "theta11(w)")?;
    let s = phi(ctx, &[b], &[ZERO], e2pi(w) * ctx.q())?;
    Ok(I * ctx.q_power(0.125) * ctx.euler() / den * epi((ONE - alpha) * w) * s)
}

/// `(Phi j(u - v) + j(v - u)) / (i q^{1/8})`, which equals `mu(u, v; alpha)`.
pub fn variation_rhs(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    let d = p.u - p.v;
    let s = phi_factor(p)? * j_func(ctx, d, p.alpha)? + j_func(ctx, -d, p.alpha)?;
    Ok(s / (I * ctx.q_power(0.125)))
}

/// Right side of the translation formula for `mu(u + z, v + z; alpha)`.
pub fn translation_rhs(p: &MuPoint, z: C64) -> Result<C64> {
    let ctx = &p.ctx;
    let at = p.alpha * ctx.tau();
    let (u, v) = (p.u, p.v);
    let swapped = mu(&p.swapped()?)?.value;
    let den = nonzero(
        ctx,
        vartheta11(ctx, u - at)?
            * vartheta11(ctx, v)?
            * vartheta11(ctx, u + z - at)?
            * vartheta11(ctx, v + z)?,
        "translation theta denominator",
    )?;
    let num = vartheta11(ctx, z)? * vartheta11(ctx, u + v + z - at)?;
    let pre = -I
        * poch_inf(ctx, p.a())?
        * ctx.euler()
        * ctx.euler()
        * ctx.q_power_c((ONE - 4.0 * p.alpha) / 8.0);
    let b = ctx.q_power_c(ONE - p.alpha);
    let s = phi(ctx, &[b], &[ZERO], e2pi(u - v) * ctx.q())?;
    Ok(phi_factor(p)? * swapped + pre * num / den * epi((ONE + p.alpha) * (u - v)) * s)
}

/// `2 cos pi (u - v) mu(alpha) - [(1 - q^{-alpha}) mu(alpha + 1) + mu(alpha - 1)]`.
pub fn recursion_residual(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    let m0 = mu(p)?.value;
    let mp = mu(&p.with_alpha(p.alpha + 1.0)?)?.value;
    let mm = mu(&p.with_alpha(p.alpha - 1.0)?)?.value;
    let cos = (epi(p.u - p.v) + epi(p.v - p.u)) * 0.5;
    Ok(cos * 2.0 * m0 - ((ONE - ctx.q_power_c(-p.alpha)) * mp + mm))
}

/// `theta(y/a) theta(x) / (theta(x/a) theta(y)) (x/y)^alpha mu(v, u; alpha)`.
pub fn symmetry_transform(p: &MuPoint) -> Result<C64> {
    let ctx = &p.ctx;
    let (x, y, a) = (p.x(), p.y(), p.a());
    let q = theta_div(ctx, y / a)? * theta_div(ctx, x)?
        / (th(ctx, x / a, "theta(x/a)")? * th(ctx, y, "theta(y)")?);
    Ok(q * e2pi(p.alpha * (p.u - p.v)) * mu(&p.swapped()?)?.value)
}

/// Forms of Zwegers' mu valid at `a = q`.
pub mod at_q {
    use super::*;

    fn sqrt_xy(u: C64, v: C64) -> C64 {
        epi(u + v)
    }

    fn base(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let (x, y) = (e2pi(u), e2pi(v));
        Ok(I * ctx.q_power(-0.125) * sqrt_xy(u, v) / (ctx.euler() * th(ctx, x * y, "theta(xy)")?))
    }

    /// `4psi8` form with argument `(xy/q)^2`.
    pub fn vwp(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let q = ctx.q();
        let (x, y) = (e2pi(u), e2pi(v));
        let s = sqrt_xy(u, v);
        let t = s / q;
        let ser = eval(
            ctx,
            &HypergeometricSpec::psi(
                &[s, -s, x / q, y / q],
                &[t, -t, y, x, ZERO, ZERO, ZERO, ZERO],
                (x * y / q) * (x * y / q),
            ),
        )?
        .value;
        let den = (ONE - x / q) * (q - y) * ctx.euler() * th(ctx, x * y / (q * q), "theta(xy/q^2)")?;
        Ok(I * ctx.q_power(-0.125) * s / den * (ONE - x * y / (q * q)) * ser)
    }

    /// `sum (1 - xy q^{2n}) (xy)^{2n} q^{2n^2} / ((1 - x q^n)(1 - y q^n))`.
    pub fn sum(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let (x, y) = (e2pi(u), e2pi(v));
        let tau = ctx.tau();
        let s = sum_terms(ctx, SeriesKind::Bilateral, |n| {
            let nf = n as f64;
            let qn = ctx.q_int(n);
            let pw = e2pi((u + v) * (2.0 * nf) + tau * (2.0 * nf * nf));
            Ok((ONE - x * y * qn * qn) / ((ONE - x * qn) * (ONE - y * qn)) * pw)
        })?;
        Ok(base(ctx, u, v)? * s.value)
    }

    /// The same sum split into its two Lambert-type halves.
    pub fn split(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let (x, y) = (e2pi(u), e2pi(v));
        let tau = ctx.tau();
        let s = sum_terms(ctx, SeriesKind::Bilateral, |n| {
            let nf = n as f64;
            let qn = ctx.q_int(n);
            let p1 = e2pi((u + v) * (2.0 * nf) + tau * (2.0 * nf * nf));
            let p2 = e2pi(-(u + v) * (2.0 * nf) + tau * (2.0 * nf * nf));
            Ok(p1 / ((ONE - x * qn) * (ONE - y * qn)) - p2 / ((ONE - qn / x) * (ONE - qn / y)))
        })?;
        Ok(base(ctx, u, v)? * s.value)
    }

    /// `i q^{-9/8} sqrt(xy) / ((q)_inf theta(xy/q^2)) W(xy/q^2; x/q, y/q)`.
    pub fn w_theta(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let q = ctx.q();
        let (x, y) = (e2pi(u), e2pi(v));
        let w = w_func(ctx, x * y / (q * q), x / q, y / q)?;
        let den = ctx.euler() * th(ctx, x * y / (q * q), "theta(xy/q^2)")?;
        Ok(I * ctx.q_power(-1.125) * sqrt_xy(u, v) / den * w)
    }

    /// As [`w_theta`] with the Jacobi triple product `theta_q(-xy/q^2)` in the denominator.
    pub fn w_jtp(ctx: &QContext, u: C64, v: C64) -> Result<C64> {
        let q = ctx.q();
        let (x, y) = (e2pi(u), e2pi(v));
        let w = w_func(ctx, x * y / (q * q), x / q, y / q)?;
        let den = nonzero(ctx, crate::qcore::theta_jtp(ctx, -x * y / (q * q))?, "theta_q(-xy/q^2)")?;
        Ok(I * ctx.q_power(-1.125) * sqrt_xy(u, v) / den * w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, r};

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-30)
    }

    fn point() -> MuPoint {
        let ctx = QContext::from_tau(c(0.13, 0.3)).unwrap();
        MuPoint::new(ctx, c(0.31, 0.12), c(-0.17, 0.09), c(0.7, 0.2)).unwrap()
    }

    #[test]
    fn alpha_zero_is_constant() {
        let p = point().with_alpha(ZERO).unwrap();
        let want = -I * p.ctx.q_power(-0.125);
        assert!(rel(mu_def(&p).unwrap().value, want) < 1e-12);
        assert_eq!(mu(&p).unwrap().representation, Representation::Hermite);
    }

    #[test]
    fn alpha_minus_one_is_cosine() {
        let p = point().with_alpha(r(-1.0)).unwrap();
        let cos2 = epi(p.u - p.v) + epi(p.v - p.u);
        let want = -I * p.ctx.q_power(-0.125) * cos2;
        assert!(rel(mu_def(&p).unwrap().value, want) < 1e-12);
    }

    #[test]
    fn representations_agree() {
        let p = point();
        let d = mu_def(&p).unwrap().value;
        for v in [
            mu_def_psi12(&p).unwrap().value,
            mu_psi12(&p).unwrap().value,
            mu_psi22(&p).unwrap().value,
            mu_psi02(&p).unwrap().value,
            mu_psi48(&p).unwrap().value,
            mu_vwp_psi48(&p).unwrap().value,
            mu_w(&p, WPrefactor::Shifted).unwrap(),
        ] {
            assert!(rel(d, v) < 1e-11, "{d} vs {v}");
        }
        assert!(rel(d, mu_w(&p, WPrefactor::Unshifted).unwrap()) > 1e-3);
    }

    #[test]
    fn hermite_small_degrees() {
        let ctx = QContext::from_q(c(0.2, 0.1)).unwrap();
        let w = c(0.3, -0.2);
        assert_eq!(cont_q_hermite(&ctx, 0, w), ONE);
        let h1 = epi(w) + epi(-w);
        assert!(rel(cont_q_hermite(&ctx, 1, w), h1) < 1e-15);
        let h2 = epi(w * 2.0) + epi(-w * 2.0) + ONE + ctx.q();
        assert!(rel(cont_q_hermite(&ctx, 2, w), h2) < 1e-14);
    }

    #[test]
    fn phi_on_diagonal() {
        let p = point();
        let d = MuPoint::new(p.ctx, p.u, p.u, p.alpha).unwrap();
        assert!(rel(phi_factor(&d).unwrap(), ONE) < 1e-14);
    }

    #[test]
    fn j_pole_at_alpha_one() {
        let ctx = QContext::from_q(r(0.3)).unwrap();
        assert!(matches!(j_func(&ctx, c(0.2, 0.05), ONE), Err(QError::Pole(_))));
        let s = phi(&ctx, &[ONE], &[ZERO], c(0.3, 0.4)).unwrap();
        assert_eq!(s, ONE);
    }

    #[test]
    fn invalid_points() {
        let ctx = QContext::from_q(r(0.3)).unwrap();
        assert!(MuPoint::new(ctx, ZERO, c(0.1, 0.1), ONE).is_err());
        assert!(MuPoint::new(ctx, c(0.1, 0.1), ctx.tau(), ONE).is_err());
        assert!(MuPoint::new(ctx, ctx.tau() * 0.5, c(0.2, 0.1), r(0.5)).is_err());
    }

    #[test]
    fn psi22_near_theta_zero_is_pole() {
        let ctx = QContext::from_q(r(0.3)).unwrap();
        let alpha = r(0.5);
        let u = alpha * ctx.tau() + 1e-14;
        let p = MuPoint { u, v: c(0.2, 0.05), alpha, ctx };
        assert!(matches!(mu_psi22(&p), Err(QError::Pole(_))));
    }
}
