//! Truncated Laurent series in `q^{1/D}` with exact rational coefficients.
//!
//! A [`FormalSeries`] stores its exponents as integers over a per-series
//! denominator `D` together with the order below which every coefficient is
//! known exactly. Binary operations merge denominators by lcm and propagate
//! the provable order of the result.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QError, Result};
use crate::qcore::PochIndex;

/// Bilateral and Eulerian scans give up past this index.
pub const MAX_INDEX: i64 = 1_000_000;
/// Consecutive settled terms needed before a scan stops.
const SETTLE_RUN: usize = 3;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn units(e: Rational64, d: i64) -> i64 {
    let v = e * Rational64::from_integer(d);
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Exact truncated Laurent series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    denom: i64,
    coeffs: BTreeMap<i64, BigRational>,
    /// `None` means the series is exact (a Laurent polynomial).
    order: Option<i64>,
}

impl FormalSeries {
    fn raw(denom: i64, coeffs: BTreeMap<i64, BigRational>, order: Option<i64>) -> Self {
        let mut s = FormalSeries { denom, coeffs, order };
        s.coeffs.retain(|_, c| !c.is_zero());
        if let Some(o) = s.order {
            s.coeffs.retain(|&k, _| k < o);
        }
        s.canonical()
    }

    fn canonical(mut self) -> Self {
        let mut g = self.denom;
        for &k in self.coeffs.keys() {
            g = g.gcd(&k);
        }
        if let Some(o) = self.order {
            g = g.gcd(&o);
        }
        if g > 1 {
            self.denom /= g;
            self.coeffs = self.coeffs.into_iter().map(|(k, c)| (k / g, c)).collect();
            self.order = self.order.map(|o| o / g);
        }
        self
    }

    fn rescaled(&self, d: i64) -> (BTreeMap<i64, BigRational>, Option<i64>) {
        let f = d / self.denom;
        (
            self.coeffs.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
            self.order.map(|o| o * f),
        )
    }

    /// The exact zero series.
    pub fn zero() -> Self {
        FormalSeries { denom: 1, coeffs: BTreeMap::new(), order: None }
    }

    /// `O(q^order)`.
    pub fn zero_to(order: Rational64) -> Self {
        let d = *order.denom();
        FormalSeries::raw(d, BTreeMap::new(), Some(units(order, d)))
    }

    pub fn one() -> Self {
        FormalSeries::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        m.insert(0, c);
        FormalSeries::raw(1, m, None)
    }

    /// The exact series `c q^e`.
    pub fn monomial(m: &Monomial) -> Self {
        let d = *m.e.denom();
        let mut map = BTreeMap::new();
        map.insert(units(m.e, d), m.c.clone());
        FormalSeries::raw(d, map, None)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I>(terms: I, order: Option<Rational64>) -> Self
    where
        I: IntoIterator<Item = (Rational64, BigRational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut d = order.map_or(1, |o| *o.denom());
        for (e, _) in &terms {
            d = d.lcm(e.denom());
        }
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(units(e, d)).or_insert_with(BigRational::zero) += c;
        }
        FormalSeries::raw(d, map, order.map(|o| units(o, d)))
    }

    /// Integer exponents and coefficients, known to `order`.
    pub fn from_ints(terms: &[(i64, i64)], order: Option<i64>) -> Self {
        FormalSeries::from_terms(
            terms.iter().map(|&(e, c)| (Rational64::from_integer(e), rat(c))),
            order.map(Rational64::from_integer),
        )
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Exponents below the order are exact; `None` for an exact series.
    pub fn order(&self) -> Option<Rational64> {
        self.order.map(|o| Rational64::new(o, self.denom))
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// No stored coefficients (the series is zero to its order).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: Rational64) -> BigRational {
        let scaled = e * Rational64::from_integer(self.denom);
        if !scaled.is_integer() {
            return BigRational::zero();
        }
        self.coeffs.get(&scaled.to_integer()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of an integer power.
    pub fn coeff_int(&self, e: i64) -> BigRational {
        self.coeff(Rational64::from_integer(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        let d = self.denom;
        self.coeffs.iter().map(move |(&k, c)| (Rational64::new(k, d), c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational64> {
        self.coeffs.keys().next().map(|&k| Rational64::new(k, self.denom))
    }

    /// Valuation if nonzero, else the order: a lower bound for the true valuation.
    fn val_bound(&self) -> Option<i64> {
        self.coeffs.keys().next().copied().or(self.order)
    }

    /// Drops everything at or above `order` and lowers the order accordingly.
    pub fn truncate(&self, order: Rational64) -> Self {
        let d = self.denom.lcm(order.denom());
        let (map, o) = self.rescaled(d);
        let cut = units(order, d);
        let o = Some(o.map_or(cut, |o| o.min(cut)));
        FormalSeries::raw(d, map, o)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let map = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        FormalSeries::raw(self.denom, map, self.order)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Rational64) -> Self {
        let d = self.denom.lcm(e.denom());
        let (map, o) = self.rescaled(d);
        let s = units(e, d);
        FormalSeries::raw(d, map.into_iter().map(|(k, c)| (k + s, c)).collect(), o.map(|o| o + s))
    }

    fn common(&self, other: &Self) -> (i64, BTreeMap<i64, BigRational>, Option<i64>, BTreeMap<i64, BigRational>, Option<i64>) {
        let d = self.denom.lcm(&other.denom);
        let (a, oa) = self.rescaled(d);
        let (b, ob) = other.rescaled(d);
        (d, a, oa, b, ob)
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        let (d, mut a, oa, b, ob) = self.common(other);
        for (k, c) in b {
            let e = a.entry(k).or_insert_with(BigRational::zero);
            if sign {
                *e += c;
            } else {
                *e -= c;
            }
        }
        let order = match (oa, ob) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        FormalSeries::raw(d, a, order)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (d, a, oa, b, ob) = self.common(other);
        let fa = FormalSeries { denom: d, coeffs: a, order: oa };
        let fb = FormalSeries { denom: d, coeffs: b, order: ob };
        if (fa.is_zero() && fa.is_exact()) || (fb.is_zero() && fb.is_exact()) {
            return FormalSeries::zero();
        }
        let va = fa.val_bound().expect("nonzero or truncated");
        let vb = fb.val_bound().expect("nonzero or truncated");
        let mut order: Option<i64> = None;
        if let Some(ob) = fb.order {
            order = Some(va.saturating_add(ob));
        }
        if let Some(oa) = fa.order {
            let cand = vb.saturating_add(oa);
            order = Some(order.map_or(cand, |o| o.min(cand)));
        }
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&i, x) in &fa.coeffs {
            if let Some(o) = order {
                if i.saturating_add(vb) >= o {
                    break;
                }
            }
            for (&j, y) in &fb.coeffs {
                let k = i + j;
                if order.is_some_and(|o| k >= o) {
                    break;
                }
                *out.entry(k).or_insert_with(BigRational::zero) += x * y;
            }
        }
        FormalSeries::raw(d, out, order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = FormalSeries::one();
        for _ in 0..k {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Multiplicative inverse to the available order.
    ///
    /// An exact series with more than one term has an infinite inverse; use
    /// [`FormalSeries::invert_to`] for those.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QError::NonUnit);
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                let (&k, c) = self.coeffs.iter().next().expect("one term");
                let mut m = BTreeMap::new();
                m.insert(-k, c.recip());
                return Ok(FormalSeries::raw(self.denom, m, None));
            }
            return Err(QError::Instability(String::from(
                "the inverse of an exact polynomial needs an explicit order",
            )));
        }
        self.invert_impl(None)
    }

    /// Inverse known at least to `order` or to the precision the input allows,
    /// whichever is lower.
    pub fn invert_to(&self, order: Rational64) -> Result<Self> {
        if self.is_zero() {
            return Err(QError::NonUnit);
        }
        self.invert_impl(Some(order))
    }

    fn invert_impl(&self, target: Option<Rational64>) -> Result<Self> {
        let d = match target {
            Some(t) => self.denom.lcm(t.denom()),
            None => self.denom,
        };
        let (a, oa) = self.rescaled(d);
        let v = *a.keys().next().ok_or(QError::NonUnit)?;
        let mut len: Option<i64> = oa.map(|o| o - v);
        if let Some(t) = target {
            let want = units(t, d) + v;
            len = Some(len.map_or(want, |l| l.min(want)));
        }
        let len = len.expect("finite order");
        let out_order = Some(len - v);
        if len <= 0 {
            return Ok(FormalSeries::raw(d, BTreeMap::new(), out_order));
        }
        let rel: Vec<(usize, BigRational)> =
            a.iter().filter(|(&k, _)| k - v < len).map(|(&k, c)| ((k - v) as usize, c.clone())).collect();
        let a0inv = rel[0].1.recip();
        let n = len as usize;
        let mut g: Vec<BigRational> = vec![BigRational::zero(); n];
        g[0] = a0inv.clone();
        for k in 1..n {
            let mut s = BigRational::zero();
            for (i, ai) in rel.iter().skip(1) {
                if *i > k {
                    break;
                }
                if !g[k - i].is_zero() {
                    s += ai * &g[k - i];
                }
            }
            g[k] = -(s * &a0inv);
        }
        let map = g.into_iter().enumerate().map(|(i, c)| (i as i64 - v, c)).collect();
        Ok(FormalSeries::raw(d, map, out_order))
    }

    /// Numeric substitution with the principal branch of `q^{1/D}`.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        let root = if self.denom == 1 { q } else { q.powf(1.0 / self.denom as f64) };
        let mut acc = Complex64::new(0.0, 0.0);
        for (&k, c) in &self.coeffs {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += root.powi(k as i32) * cf;
        }
        acc
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.eval(Complex64::new(q, 0.0)).re
    }

    /// Every stored coefficient has denominator one.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// One row per nonzero coefficient, exponent fraction reduced.
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.terms()
            .map(|(e, c)| CsvRow {
                exp_num: *e.numer(),
                exp_den: *e.denom(),
                coef_num: c.numer().clone(),
                coef_den: c.denom().clone(),
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for r in self.csv_rows() {
            s.push_str(&format!("{r}\n"));
        }
        s
    }

    /// First exponent below both orders where the coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Rational64, BigRational, BigRational)> {
        let diff = self - other;
        diff.valuation().map(|e| (e, self.coeff(e), other.coeff(e)))
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if e.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}*")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{}", e.numer())?;
            } else {
                write!(f, "q^({}/{})", e.numer(), e.denom())?;
            }
        }
        if let Some(o) = self.order() {
            if o.is_integer() {
                write!(f, " + O(q^{})", o.numer())?;
            } else {
                write!(f, " + O(q^({}/{}))", o.numer(), o.denom())?;
            }
        }
        Ok(())
    }
}

/// One line of the coefficient dump: `exp_num,exp_den,coef_num,coef_den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvRow {
    pub exp_num: i64,
    pub exp_den: i64,
    pub coef_num: BigInt,
    pub coef_den: BigInt,
}

impl fmt::Display for CsvRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.exp_num, self.exp_den, self.coef_num, self.coef_den)
    }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;
    fn add(self, o: &FormalSeries) -> FormalSeries {
        self.add_impl(o, true)
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;
    fn sub(self, o: &FormalSeries) -> FormalSeries {
        self.add_impl(o, false)
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;
    fn mul(self, o: &FormalSeries) -> FormalSeries {
        self.mul_impl(o)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        self.scale(&-BigRational::one())
    }
}

impl Add for FormalSeries {
    type Output = FormalSeries;
    fn add(self, o: FormalSeries) -> FormalSeries {
        &self + &o
    }
}

impl Sub for FormalSeries {
    type Output = FormalSeries;
    fn sub(self, o: FormalSeries) -> FormalSeries {
        &self - &o
    }
}

impl Mul for FormalSeries {
    type Output = FormalSeries;
    fn mul(self, o: FormalSeries) -> FormalSeries {
        &self * &o
    }
}

impl Neg for FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        -&self
    }
}

/// A signed monomial `c q^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub c: BigRational,
    pub e: Rational64,
}

impl Monomial {
    pub fn new(c: BigRational, e: Rational64) -> Self {
        Monomial { c, e }
    }

    /// `c q^e` with integer data.
    pub fn int(c: i64, e: i64) -> Self {
        Monomial { c: rat(c), e: Rational64::from_integer(e) }
    }

    /// `c q^{num/den}`.
    pub fn frac(c: i64, num: i64, den: i64) -> Self {
        Monomial { c: rat(c), e: Rational64::new(num, den) }
    }

    /// `q^e`.
    pub fn q(e: i64) -> Self {
        Monomial::int(1, e)
    }

    pub fn constant(c: i64) -> Self {
        Monomial::int(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { c: &self.c * &o.c, e: self.e + o.e }
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial { c: &self.c / &o.c, e: self.e - o.e }
    }

    pub fn neg(&self) -> Monomial {
        Monomial { c: -self.c.clone(), e: self.e }
    }

    pub fn recip(&self) -> Monomial {
        Monomial { c: self.c.recip(), e: -self.e }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        let c = if k >= 0 {
            num_traits::pow(self.c.clone(), k as usize)
        } else {
            num_traits::pow(self.c.recip(), k.unsigned_abs() as usize)
        };
        Monomial { c, e: self.e * Rational64::from_integer(k) }
    }
}

/// `(1 - c q^e)^k` with `e > 0`.
#[derive(Clone, Debug)]
struct Binomial {
    c: BigRational,
    e: Rational64,
    k: i64,
}

/// `prod_{j >= 0} (1 - c pc^j q^{e + j pe})^k` with `e, pe > 0`.
#[derive(Clone, Debug)]
struct InfiniteFactor {
    c: BigRational,
    e: Rational64,
    pc: BigRational,
    pe: Rational64,
    k: i64,
}

/// A product of a monomial, binomials `(1 - c q^e)^k` and infinite
/// q-Pochhammer powers, expanded exactly on demand.
///
/// Factors with nonpositive exponents are normalized into the monomial as
/// they are added, so the valuation is known without expanding.
#[derive(Clone, Debug)]
pub struct Factored {
    scalar: BigRational,
    exp: Rational64,
    binomials: Vec<Binomial>,
    infinite: Vec<InfiniteFactor>,
    zeros: i64,
    pole: bool,
    err: Option<QError>,
}

impl Default for Factored {
    fn default() -> Self {
        Factored::one()
    }
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            scalar: BigRational::one(),
            exp: Rational64::zero(),
            binomials: Vec::new(),
            infinite: Vec::new(),
            zeros: 0,
            pole: false,
            err: None,
        }
    }

    pub fn monomial(m: &Monomial) -> Self {
        Factored::one().times(m)
    }

    pub fn times(mut self, m: &Monomial) -> Self {
        self.scalar *= &m.c;
        self.exp += m.e;
        self
    }

    pub fn times_int(self, c: i64) -> Self {
        self.times(&Monomial::constant(c))
    }

    pub fn times_rat(mut self, c: &BigRational) -> Self {
        self.scalar *= c;
        self
    }

    /// Multiplies by `(1 - m)^k`.
    pub fn one_minus(mut self, m: &Monomial, k: i64) -> Self {
        if k == 0 || m.is_zero() {
            return self;
        }
        if m.e.is_zero() {
            let s = BigRational::one() - &m.c;
            if s.is_zero() {
                if k > 0 {
                    self.zeros += k;
                } else {
                    self.pole = true;
                }
            } else {
                self.scalar *= Monomial::new(s, Rational64::zero()).pow(k).c;
            }
        } else if m.e < Rational64::zero() {
            // 1 - c q^e = -c q^e (1 - c^{-1} q^{-e})
            let lead = m.neg().pow(k);
            self = self.times(&lead);
            self.binomials.push(Binomial { c: m.c.recip(), e: -m.e, k });
        } else {
            self.binomials.push(Binomial { c: m.c.clone(), e: m.e, k });
        }
        self
    }

    /// Multiplies by `(1 + m)^k`.
    pub fn one_plus(self, m: &Monomial, k: i64) -> Self {
        self.one_minus(&m.neg(), k)
    }

    /// Multiplies by `(a; p)_n^k`.
    pub fn poch(mut self, a: &Monomial, p: &Monomial, n: PochIndex, k: i64) -> Self {
        if a.is_zero() || k == 0 {
            return self;
        }
        match n {
            PochIndex::Finite(n) if n >= 0 => {
                let mut f = a.clone();
                for _ in 0..n {
                    self = self.one_minus(&f, k);
                    f = f.mul(p);
                }
                self
            }
            PochIndex::Finite(n) => {
                // (a;p)_n = 1 / (a p^n; p)_{-n}
                let mut f = a.mul(&p.pow(n));
                for _ in 0..(-n) {
                    self = self.one_minus(&f, -k);
                    f = f.mul(p);
                }
                self
            }
            PochIndex::Infinite => {
                if p.e <= Rational64::zero() {
                    self.err = Some(QError::Instability(format!(
                        "infinite product with base exponent {} never stabilises",
                        p.e
                    )));
                    return self;
                }
                let mut f = a.clone();
                while f.e <= Rational64::zero() {
                    self = self.one_minus(&f, k);
                    f = f.mul(p);
                }
                self.infinite.push(InfiniteFactor { c: f.c, e: f.e, pc: p.c.clone(), pe: p.e, k });
                self
            }
        }
    }

    /// Multiplies by `theta_p(x)^k = (p, -x, -p/x; p)_inf^k`.
    pub fn theta(self, x: &Monomial, p: &Monomial, k: i64) -> Self {
        if x.is_zero() {
            let mut s = self;
            s.err = Some(QError::Pole(String::from("theta at x = 0")));
            return s;
        }
        let inf = PochIndex::Infinite;
        self.poch(p, p, inf, k).poch(&x.neg(), p, inf, k).poch(&p.div(x).neg(), p, inf, k)
    }

    /// Product of two factored expressions.
    pub fn product(mut self, other: &Factored) -> Self {
        self.scalar *= &other.scalar;
        self.exp += other.exp;
        self.binomials.extend(other.binomials.iter().cloned());
        self.infinite.extend(other.infinite.iter().cloned());
        self.zeros += other.zeros;
        self.pole |= other.pole;
        if self.err.is_none() {
            self.err = other.err.clone();
        }
        self
    }

    /// The product vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() || self.zeros > 0
    }

    /// Lowest exponent, `None` when the product is identically zero.
    pub fn valuation(&self) -> Result<Option<Rational64>> {
        if let Some(e) = &self.err {
            return Err(e.clone());
        }
        if self.pole {
            return Err(QError::Pole(String::from("factor (1 - 1) in a denominator")));
        }
        if self.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.exp))
    }

    /// Exact expansion to `order`.
    /// Direct floating-point value at real `0 < q < 1`, multiplying the
    /// factors without forming a series.
    pub fn eval_f64(&self, q: f64) -> Result<f64> {
        if let Some(e) = &self.err {
            return Err(e.clone());
        }
        if self.pole {
            return Err(QError::Pole(String::from("factor (1 - 1) in a denominator")));
        }
        if self.zeros > 0 || self.scalar.is_zero() {
            return Ok(0.0);
        }
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        let pw = |e: Rational64| num_traits::Float::powf(q, *e.numer() as f64 / *e.denom() as f64);
        let mut v = f(&self.scalar) * pw(self.exp);
        for b in &self.binomials {
            v *= num_traits::Float::powi(1.0 - f(&b.c) * pw(b.e), b.k as i32);
        }
        for inf in &self.infinite {
            let (mut c, mut x) = (f(&inf.c), pw(inf.e));
            let (pc, px) = (f(&inf.pc), pw(inf.pe));
            let mut prod = 1.0;
            for _ in 0..MAX_INDEX {
                let t = c * x;
                prod *= 1.0 - t;
                if num_traits::Float::abs(t) < 1e-18 {
                    break;
                }
                c *= pc;
                x *= px;
            }
            v *= num_traits::Float::powi(prod, inf.k as i32);
        }
        Ok(v)
    }

    pub fn expand(&self, order: Rational64) -> Result<FormalSeries> {
        if self.valuation()?.is_none() {
            return Ok(FormalSeries::zero_to(order));
        }
        let mut d = order.denom().lcm(self.exp.denom());
        for b in &self.binomials {
            d = d.lcm(b.e.denom());
        }
        for f in &self.infinite {
            d = d.lcm(f.e.denom()).lcm(f.pe.denom());
        }
        let len = units(order - self.exp, d);
        if len <= 0 {
            return Ok(FormalSeries::zero_to(order));
        }
        let integral = self.binomials.iter().all(|b| b.c.is_integer())
            && self.infinite.iter().all(|f| f.c.is_integer() && f.pc.is_integer());
        let buf: Vec<BigRational> = if integral {
            let ops = self.ops(d, len, |c| c.to_integer());
            run_ops::<BigInt>(len as usize, &ops).into_iter().map(BigRational::from_integer).collect()
        } else {
            let ops = self.ops(d, len, |c| c.clone());
            run_ops::<BigRational>(len as usize, &ops)
        };
        let shift = units(self.exp, d);
        let map = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, c * &self.scalar))
            .collect();
        Ok(FormalSeries::raw(d, map, Some(units(order, d))))
    }

    fn ops<T>(&self, d: i64, len: i64, conv: impl Fn(&BigRational) -> T) -> Vec<(T, usize, i64)> {
        let mut ops = Vec::new();
        for b in &self.binomials {
            let e = units(b.e, d);
            if e < len {
                ops.push((conv(&b.c), e as usize, b.k));
            }
        }
        for f in &self.infinite {
            let step = units(f.pe, d);
            let mut e = units(f.e, d);
            let mut c = f.c.clone();
            while e < len {
                ops.push((conv(&c), e as usize, f.k));
                c *= &f.pc;
                e += step;
            }
        }
        ops
    }
}

fn run_ops<T>(len: usize, ops: &[(T, usize, i64)]) -> Vec<T>
where
    T: Clone + Zero + One + PartialEq + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Neg<Output = T>,
{
    let mut buf = vec![T::zero(); len];
    buf[0] = T::one();
    let one = T::one();
    let minus_one = -&one;
    for (c, e, k) in ops {
        let e = *e;
        let unit = *c == one;
        let neg_unit = *c == minus_one;
        for _ in 0..k.unsigned_abs() {
            if *k > 0 {
                // multiply by (1 - c q^e): descending so sources are untouched
                for i in (e..len).rev() {
                    let (lo, hi) = buf.split_at_mut(i);
                    let src = &lo[i - e];
                    if src.is_zero() {
                        continue;
                    }
                    if unit {
                        hi[0] -= src;
                    } else if neg_unit {
                        hi[0] += src;
                    } else {
                        let t = c * src;
                        hi[0] -= &t;
                    }
                }
            } else {
                // divide by (1 - c q^e): ascending geometric recurrence
                for i in e..len {
                    let (lo, hi) = buf.split_at_mut(i);
                    let src = &lo[i - e];
                    if src.is_zero() {
                        continue;
                    }
                    if unit {
                        hi[0] += src;
                    } else if neg_unit {
                        hi[0] -= src;
                    } else {
                        let t = c * src;
                        hi[0] += &t;
                    }
                }
            }
        }
    }
    buf
}

/// `(a; p)_n` to `order`.
pub fn poch_fs(a: &Monomial, n: PochIndex, p: &Monomial, order: Rational64) -> Result<FormalSeries> {
    if n == PochIndex::Infinite && !a.is_zero() && a.e <= Rational64::zero() {
        return Err(QError::Instability(format!(
            "infinite product with argument exponent {} never stabilises",
            a.e
        )));
    }
    Factored::one().poch(a, p, n, 1).expand(order)
}

/// `theta_p(x) = (p, -x, -p/x; p)_inf` to `order`.
pub fn theta_fs(x: &Monomial, p: &Monomial, order: Rational64) -> Result<FormalSeries> {
    Factored::one().theta(x, p, 1).expand(order)
}

/// Scans `n = start, start + step, ...` and collects the indices whose
/// valuation lies below `order`. Stops once the valuation has stayed at or
/// above `order` and non-decreasing for a few consecutive indices.
fn scan<V>(valuation: &mut V, start: i64, step: i64, order: Rational64) -> Result<Vec<i64>>
where
    V: FnMut(i64) -> Result<Option<Rational64>>,
{
    let mut hits = Vec::new();
    let mut run = 0usize;
    let mut prev: Option<Option<Rational64>> = None;
    let mut n = start;
    loop {
        if n.abs() > MAX_INDEX {
            return Err(QError::RangeOverflow);
        }
        let v = valuation(n)?;
        match v {
            Some(v) if v < order => {
                hits.push(n);
                run = 0;
            }
            _ => {
                let rising = match (prev, v) {
                    (None, _) => true,
                    (Some(None), Some(_)) => false,
                    (Some(Some(p)), Some(v)) => v >= p,
                    (Some(_), None) => true,
                };
                run = if rising { run + 1 } else { 0 };
                if run >= SETTLE_RUN {
                    return Ok(hits);
                }
            }
        }
        prev = Some(v);
        n += step;
    }
}

/// The inclusive index range `{n : valuation(n) < order}` of a bilateral sum,
/// or `None` when no term reaches below `order`.
pub fn bilateral_window<V>(mut valuation: V, order: Rational64) -> Result<Option<(i64, i64)>>
where
    V: FnMut(i64) -> Result<Option<Rational64>>,
{
    let mut hits = scan(&mut valuation, 0, 1, order)?;
    hits.extend(scan(&mut valuation, -1, -1, order)?);
    Ok(hits.iter().min().zip(hits.iter().max()).map(|(a, b)| (*a, *b)))
}

/// `sum_{n in Z} term(n)` to `order`.
///
/// `valuation(n)` must be the exact lowest exponent of `term(n)` (`None` for a
/// vanishing term) and must tend to infinity in both directions. `term` gets
/// the target order and must return a series exact to at least that order.
pub fn bilateral_sum_fs<V, T>(mut valuation: V, mut term: T, order: Rational64) -> Result<FormalSeries>
where
    V: FnMut(i64) -> Result<Option<Rational64>>,
    T: FnMut(i64, Rational64) -> Result<FormalSeries>,
{
    let mut hits = scan(&mut valuation, 0, 1, order)?;
    hits.extend(scan(&mut valuation, -1, -1, order)?);
    hits.sort_unstable();
    let mut acc = FormalSeries::zero_to(order);
    for n in hits {
        acc = &acc + &term(n, order)?;
    }
    Ok(acc.truncate(order))
}

/// `sum_{n >= start} term(n)` to `order`; the unilateral analogue of
/// [`bilateral_sum_fs`].
pub fn eulerian_sum_fs<V, T>(start: i64, mut valuation: V, mut term: T, order: Rational64) -> Result<FormalSeries>
where
    V: FnMut(i64) -> Result<Option<Rational64>>,
    T: FnMut(i64, Rational64) -> Result<FormalSeries>,
{
    let hits = scan(&mut valuation, start, 1, order)?;
    let mut acc = FormalSeries::zero_to(order);
    for n in hits {
        acc = &acc + &term(n, order)?;
    }
    Ok(acc.truncate(order))
}

/// Bilateral sum of factored terms.
pub fn bilateral_sum_factored<T>(mut term: T, order: Rational64) -> Result<FormalSeries>
where
    T: FnMut(i64) -> Factored,
{
    let mut cache: BTreeMap<i64, Factored> = BTreeMap::new();
    let mut get = |n: i64| -> Factored { cache.entry(n).or_insert_with(|| term(n)).clone() };
    let mut hits = scan(&mut |n| get(n).valuation(), 0, 1, order)?;
    hits.extend(scan(&mut |n| get(n).valuation(), -1, -1, order)?);
    hits.sort_unstable();
    let mut acc = FormalSeries::zero_to(order);
    for n in hits {
        acc = &acc + &get(n).expand(order)?;
    }
    Ok(acc.truncate(order))
}

/// Unilateral sum of factored terms from `start`.
pub fn eulerian_sum_factored<T>(start: i64, mut term: T, order: Rational64) -> Result<FormalSeries>
where
    T: FnMut(i64) -> Factored,
{
    let mut acc = FormalSeries::zero_to(order);
    let mut terms: Vec<Factored> = Vec::new();
    let hits = scan(
        &mut |n| {
            let t = term(n);
            let v = t.valuation();
            terms.push(t);
            v
        },
        start,
        1,
        order,
    )?;
    for n in hits {
        acc = &acc + &terms[(n - start) as usize].expand(order)?;
    }
    Ok(acc.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn s(terms: &[(i64, i64)], order: i64) -> FormalSeries {
        FormalSeries::from_ints(terms, Some(order))
    }

    #[test]
    fn product_of_conjugates() {
        let a = FormalSeries::from_ints(&[(0, 1), (1, 1)], None);
        let b = FormalSeries::from_ints(&[(0, 1), (1, -1)], None);
        assert_eq!(&a * &b, FormalSeries::from_ints(&[(0, 1), (2, -1)], None));
    }

    #[test]
    fn add_negation_is_zero_to_order() {
        let f = s(&[(0, 3), (2, -5), (7, 1)], 10);
        let z = &f + &(-&f);
        assert!(z.is_zero());
        assert_eq!(z.order(), Some(r(10)));
    }

    #[test]
    fn product_order_uses_valuations() {
        // q^2 + O(q^5) times q^3 + O(q^7): min(2 + 7, 5 + 3) = 8
        let f = s(&[(2, 1)], 5);
        let g = s(&[(3, 1)], 7);
        assert_eq!((&f * &g).order(), Some(r(8)));
        let exact = FormalSeries::monomial(&Monomial::q(4));
        assert_eq!((&f * &exact).order(), Some(r(9)));
    }

    #[test]
    fn geometric_inverse() {
        let f = s(&[(0, 1), (1, -1)], 12);
        let g = f.invert().unwrap();
        let ones: Vec<(i64, i64)> = (0..12).map(|k| (k, 1)).collect();
        assert_eq!(g, s(&ones, 12));
    }

    #[test]
    fn laurent_inverse() {
        let f = s(&[(1, 1), (2, -1)], 12);
        let g = f.invert().unwrap();
        let expect: Vec<(i64, i64)> = (-1..10).map(|k| (k, 1)).collect();
        assert_eq!(g, s(&expect, 10));
        assert_eq!(f.invert_to(r(5)).unwrap().order(), Some(r(5)));
    }

    #[test]
    fn exact_polynomial_inverse_needs_order() {
        let f = FormalSeries::from_ints(&[(0, 1), (1, -1)], None);
        assert!(matches!(f.invert(), Err(QError::Instability(_))));
        assert_eq!(f.invert_to(r(3)).unwrap(), s(&[(0, 1), (1, 1), (2, 1)], 3));
        assert_eq!(FormalSeries::zero().invert(), Err(QError::NonUnit));
    }

    #[test]
    fn euler_function_segment() {
        let q = Monomial::q(1);
        let e = poch_fs(&q, PochIndex::Infinite, &q, r(6)).unwrap();
        assert_eq!(e, s(&[(0, 1), (1, -1), (2, -1), (5, 1)], 6));
        let e5 = poch_fs(&q, PochIndex::Infinite, &q, r(5)).unwrap();
        assert_eq!(e5, s(&[(0, 1), (1, -1), (2, -1)], 5));
    }

    #[test]
    fn small_pochhammers() {
        let q = Monomial::q(1);
        let p = poch_fs(&Monomial::int(-1, 1), PochIndex::Finite(1), &q, r(10)).unwrap();
        assert_eq!(p, s(&[(0, 1), (1, 1)], 10));
        let z = poch_fs(&Monomial::int(0, 0), PochIndex::Finite(4), &q, r(10)).unwrap();
        assert_eq!(z, s(&[(0, 1)], 10));
        assert!(matches!(
            poch_fs(&Monomial::q(0), PochIndex::Infinite, &q, r(5)),
            Err(QError::Instability(_))
        ));
        // (q;q)_{-1} = 1/(1 - 1) is a pole
        assert!(matches!(
            poch_fs(&q, PochIndex::Finite(-1), &q, r(5)),
            Err(QError::Pole(_))
        ));
        // (q^2;q)_{-1} = 1/(1 - q)
        let g = poch_fs(&Monomial::q(2), PochIndex::Finite(-1), &q, r(4)).unwrap();
        assert_eq!(g, s(&[(0, 1), (1, 1), (2, 1), (3, 1)], 4));
    }

    #[test]
    fn theta_vanishes_at_minus_one() {
        let t = theta_fs(&Monomial::constant(-1), &Monomial::q(1), r(20)).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn theta_matches_sum_form() {
        // theta_{q^4}(-q^5) against sum x^n p^{n(n-1)/2}
        let p = Monomial::q(4);
        let x = Monomial::int(-1, 5);
        let n_ord = r(60);
        let prod = theta_fs(&x, &p, n_ord).unwrap();
        let sum = bilateral_sum_fs(
            |n| Ok(Some(x.pow(n).mul(&p.pow(n * (n - 1) / 2)).e)),
            |n, o| Ok(FormalSeries::monomial(&x.pow(n).mul(&p.pow(n * (n - 1) / 2))).truncate(o)),
            n_ord,
        )
        .unwrap();
        assert_eq!(prod, sum);
        assert!(!prod.is_zero());
    }

    #[test]
    fn window_of_quadratic_valuation() {
        let w = bilateral_window(|n| Ok(Some(r(2 * n * n))), r(40)).unwrap();
        assert_eq!(w, Some((-4, 4)));
        let empty = bilateral_window(|n| Ok(Some(r(2 * n * n + 50))), r(40)).unwrap();
        assert_eq!(empty, None);
        let z = bilateral_sum_fs(|n| Ok(Some(r(n * n + 5))), |_, o| Ok(FormalSeries::zero_to(o)), r(3)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.order(), Some(r(3)));
    }

    #[test]
    fn runaway_valuation_overflows() {
        let e = bilateral_window(|_| Ok(Some(r(0))), r(10));
        assert_eq!(e, Err(QError::RangeOverflow));
    }

    #[test]
    fn half_integer_exponents() {
        let f = FormalSeries::monomial(&Monomial::frac(1, 1, 2));
        let g = &f * &f;
        assert_eq!(g, FormalSeries::monomial(&Monomial::q(1)));
        assert_eq!(g.denom(), 1);
        assert_eq!(f.denom(), 2);
        let rows = f.to_csv();
        assert_eq!(rows, "1,2,1,1\n");
    }

    #[test]
    fn csv_format() {
        let f = s(&[(0, 1), (1, 1), (2, -2), (3, 3)], 4);
        assert_eq!(f.to_csv(), "0,1,1,1\n1,1,1,1\n2,1,-2,1\n3,1,3,1\n");
    }

    #[test]
    fn numeric_substitution() {
        let q = Monomial::q(1);
        let mut direct = 1.0;
        for j in 1..200 {
            direct *= 1.0 - 0.1f64.powi(j);
        }
        for n in [3, 6, 12] {
            let e = poch_fs(&q, PochIndex::Infinite, &q, r(n)).unwrap();
            assert!((e.eval_f64(0.1) - direct).abs() < 0.1f64.powi(n as i32) * 10.0);
        }
    }

    #[test]
    fn normalized_negative_exponent_factor() {
        // (1 - q^{-2}) = -q^{-2} (1 - q^2)
        let f = Factored::one().one_minus(&Monomial::q(-2), 1);
        assert_eq!(f.valuation().unwrap(), Some(r(-2)));
        assert_eq!(f.expand(r(5)).unwrap(), s(&[(-2, -1), (0, 1)], 5));
    }

    #[test]
    fn display_reads_naturally() {
        let f = s(&[(0, 1), (1, -2), (3, 1)], 4);
        assert_eq!(alloc::format!("{f}"), "1 - 2*q + q^3 + O(q^4)");
    }
}
