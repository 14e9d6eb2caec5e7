//! Evaluation at `q = exp(2*pi*i/N)` with certified error bounds.
//!
//! Values are complex balls in fixed point: a midpoint `(re, im)` scaled by
//! `2^prec` and a radius in the same units. Every operation rounds the radius
//! up, so the true value always lies inside the ball.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::scalar::QScalar;
use super::QError;

pub const MIN_PRECISION_BITS: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 2048;
pub const PRECISION_ENV: &str = "SPIDER_PRECISION_BITS";

/// Evaluation environment for one root order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootContext {
    pub order_n: u64,
    pub precision_bits: u32,
    /// Precision ceiling for the automatic retry in [`RootContext::certify_nonzero`].
    pub max_precision_bits: u32,
}

impl RootContext {
    pub fn new(order_n: u64, precision_bits: u32) -> Result<Self, QError> {
        if order_n == 0 || !order_n.is_multiple_of(2) {
            return Err(QError::BadOrder(order_n));
        }
        if precision_bits < MIN_PRECISION_BITS {
            return Err(QError::PrecisionTooLow(precision_bits));
        }
        Ok(RootContext {
            order_n,
            precision_bits,
            max_precision_bits: DEFAULT_PRECISION_CAP.max(precision_bits),
        })
    }

    /// Like [`RootContext::new`] with the precision taken from
    /// `SPIDER_PRECISION_BITS` when set, else 128 bits.
    pub fn from_env(order_n: u64) -> Result<Self, QError> {
        let bits = match std::env::var(PRECISION_ENV) {
            Ok(s) => s
                .trim()
                .parse::<u32>()
                .map_err(|_| QError::Parse(format!("{PRECISION_ENV}={s:?} is not an integer")))?,
            Err(_) => MIN_PRECISION_BITS,
        };
        Self::new(order_n, bits)
    }

    pub fn with_precision(&self, bits: u32) -> Self {
        RootContext {
            precision_bits: bits,
            ..*self
        }
    }

    /// `q^k` as a ball with radius one unit in the last place.
    pub fn power(&self, k: i64) -> Ball {
        let table = trig_table(self.order_n, self.precision_bits);
        let idx = k.rem_euclid(self.order_n as i64) as usize;
        let (c, s) = &table[idx];
        Ball {
            re: c.clone(),
            im: s.clone(),
            rad: BigInt::one(),
            prec: self.precision_bits,
        }
    }

    /// `sin(2*pi*k/N)` as a real ball.
    pub fn sin_2pi(&self, k: i64) -> Ball {
        let z = self.power(k);
        Ball {
            re: z.im,
            im: BigInt::zero(),
            rad: z.rad,
            prec: z.prec,
        }
    }

    pub fn eval_poly(&self, p: &LaurentPoly) -> Ball {
        let n = self.order_n as i64;
        // Collect integer coefficients per residue class first so rounding
        // happens once per root power.
        let mut classes: HashMap<i64, BigInt> = HashMap::new();
        for (e, c) in p.terms() {
            *classes.entry(e.rem_euclid(n)).or_default() += c;
        }
        let mut keys: Vec<_> = classes.keys().copied().collect();
        keys.sort_unstable();
        let mut acc = Ball::exact_int(BigInt::zero(), self.precision_bits);
        for k in keys {
            let c = &classes[&k];
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.power(k).scale_int(c));
        }
        acc
    }

    /// Single evaluation at the context precision.
    pub fn eval(&self, s: &QScalar) -> Result<Ball, QError> {
        let num = self.eval_poly(s.numerator());
        if s.denominator().is_one() {
            return Ok(num);
        }
        let den = self.eval_poly(s.denominator());
        num.div(&den)
            .ok_or(QError::DenominatorVanishes(self.order_n))
    }

    /// Decide whether `s` is nonzero at this root, doubling precision until
    /// the ball excludes zero or the cap is reached.
    pub fn certify_nonzero(&self, s: &QScalar) -> Result<Certified, QError> {
        let mut ctx = *self;
        loop {
            let v = ctx.eval(s);
            match v {
                Ok(b) if b.certified_nonzero() => {
                    return Ok(Certified {
                        value: b.to_value(),
                        precision_bits: ctx.precision_bits,
                    });
                }
                // A vanishing denominator can be a precision artifact only if
                // the ball is wide; keep retrying in that case too.
                Ok(_) | Err(QError::DenominatorVanishes(_)) => {}
                Err(e) => return Err(e),
            }
            if s.is_zero() || ctx.precision_bits >= ctx.max_precision_bits {
                return match v {
                    Err(e) => Err(e),
                    Ok(_) => Err(QError::PrecisionExhausted(ctx.precision_bits)),
                };
            }
            ctx = ctx.with_precision((ctx.precision_bits * 2).min(ctx.max_precision_bits));
        }
    }
}

/// A nonzero certificate: the value and the precision that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub value: RootValue,
    pub precision_bits: u32,
}

/// Floating summary of a ball, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootValue {
    pub re: f64,
    pub im: f64,
    pub error_bound: f64,
}

impl RootValue {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Fixed-point complex ball: center `(re + i*im) / 2^prec`, radius `rad / 2^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u32,
}

impl Ball {
    pub fn exact_int(c: BigInt, prec: u32) -> Self {
        Ball {
            re: c << prec,
            im: BigInt::zero(),
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Upper bound on `|center|` in fixed-point units.
    fn mag_upper(&self) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im).sqrt() + 1
    }

    /// Lower bound on `|center|` in fixed-point units.
    fn mag_lower(&self) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im).sqrt()
    }

    /// `|center| > 2 * radius`.
    pub fn certified_nonzero(&self) -> bool {
        self.mag_lower() > &self.rad * 2
    }

    /// `|center| <= radius`, i.e. zero is consistent with the ball.
    pub fn contains_zero(&self) -> bool {
        self.mag_lower() <= self.rad
    }

    pub fn add(&self, o: &Ball) -> Ball {
        assert_eq!(self.prec, o.prec);
        Ball {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn scale_int(&self, k: &BigInt) -> Ball {
        Ball {
            re: &self.re * k,
            im: &self.im * k,
            rad: &self.rad * k.abs(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let re = (&self.re * &o.re - &self.im * &o.im) >> p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> p;
        let cross = self.mag_upper() * &o.rad + o.mag_upper() * &self.rad + &self.rad * &o.rad;
        // ceil(cross / 2^p) plus two units for the truncated center.
        let rad = ceil_shift(&cross, p) + 2;
        Ball {
            re,
            im,
            rad,
            prec: p,
        }
    }

    /// Quotient, or `None` when the divisor ball contains zero.
    pub fn div(&self, o: &Ball) -> Option<Ball> {
        assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let y_low = o.mag_lower();
        if y_low <= o.rad {
            return None;
        }
        let norm = &o.re * &o.re + &o.im * &o.im;
        let re = ((&self.re * &o.re + &self.im * &o.im) << p) / &norm;
        let im = ((&self.im * &o.re - &self.re * &o.im) << p) / &norm;
        let center = Ball {
            re,
            im,
            rad: BigInt::zero(),
            prec: p,
        };
        // |x/y - x'/y'| <= (ex + |x'/y'| * ey) / (|y'| - ey), in units.
        let q_mag = center.mag_upper() + 2;
        let top = (&self.rad << p) + &q_mag * &o.rad;
        let bottom = &y_low - &o.rad;
        let rad = ceil_div(&top, &bottom) + 2;
        Some(Ball { rad, ..center })
    }

    pub fn to_value(&self) -> RootValue {
        RootValue {
            re: fixed_to_f64(&self.re, self.prec),
            im: fixed_to_f64(&self.im, self.prec),
            error_bound: fixed_to_f64_up(&self.rad, self.prec),
        }
    }

    /// Sign of the real part when the ball certifies it, else `None`.
    pub fn real_sign(&self) -> Option<i8> {
        if self.re.abs() > &self.rad * 2 {
            Some(if self.re.is_negative() { -1 } else { 1 })
        } else {
            None
        }
    }
}

fn ceil_shift(x: &BigInt, p: u32) -> BigInt {
    let one = BigInt::one() << p;
    (x + &one - 1) >> p
}

fn ceil_div(x: &BigInt, d: &BigInt) -> BigInt {
    (x + d - 1) / d
}

fn fixed_to_f64(x: &BigInt, p: u32) -> f64 {
    let bits = x.bits() as i64;
    let drop = (bits - 60).max(0);
    let top = (x >> drop as usize).to_f64().unwrap_or(f64::NAN);
    top * 2f64.powi((drop - p as i64) as i32)
}

fn fixed_to_f64_up(x: &BigInt, p: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let v = fixed_to_f64(x, p) * (1.0 + 1e-12);
    if v == 0.0 {
        f64::from_bits(1)
    } else {
        v
    }
}

type Table = Arc<Vec<(BigInt, BigInt)>>;

fn trig_table(n: u64, prec: u32) -> Table {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(n, prec)) {
        return t.clone();
    }
    let t = Arc::new(build_table(n, prec));
    cache.lock().unwrap().insert((n, prec), t.clone());
    t
}

const GUARD_BITS: u32 = 64;

/// `(cos, sin)` of `2*pi*k/N` for `k < N`, each within one unit at `prec`.
fn build_table(n: u64, prec: u32) -> Vec<(BigInt, BigInt)> {
    let w = prec + GUARD_BITS;
    let two_pi = pi_fixed(w) << 1;
    (0..n)
        .map(|k| {
            let theta = (&two_pi * BigInt::from(k)) / BigInt::from(n);
            let (c, s) = cos_sin_fixed(&theta, w);
            (round_shift(&c, GUARD_BITS), round_shift(&s, GUARD_BITS))
        })
        .collect()
}

fn round_shift(x: &BigInt, g: u32) -> BigInt {
    (x + (BigInt::one() << (g - 1))) >> g
}

/// `atan(1/k)` in fixed point with `w` fractional bits.
fn atan_inv(k: u64, w: u32) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut term = (BigInt::one() << w) / &k;
    let mut sum = term.clone();
    let mut i: u64 = 1;
    while !term.is_zero() {
        term /= &k2;
        let t = &term / BigInt::from(2 * i + 1);
        if i % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        i += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    let g = 16;
    let wp = w + g;
    let pi = atan_inv(5, wp) * 16 - atan_inv(239, wp) * 4;
    pi >> g
}

fn cos_sin_fixed(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let x2 = (theta * theta) >> w;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut tc = one;
    let mut ts = theta.clone();
    let mut i: u64 = 1;
    loop {
        tc = -((&tc * &x2) >> w) / BigInt::from((2 * i - 1) * (2 * i));
        ts = -((&ts * &x2) >> w) / BigInt::from((2 * i) * (2 * i + 1));
        if tc.is_zero() && ts.is_zero() {
            break;
        }
        cos += &tc;
        sin += &ts;
        i += 1;
    }
    (cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::qint;

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        let v = fixed_to_f64(&pi, 200);
        assert!((v - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn qint_two_at_sixteen() {
        let ctx = RootContext::new(16, 128).unwrap();
        let v = ctx.eval(&QScalar::qint(2)).unwrap().to_value();
        assert!((v.re - 2.0 * (std::f64::consts::PI / 8.0).cos()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-30);
        assert!(v.error_bound < 1e-30);
    }

    #[test]
    fn half_order_vanishes() {
        for n in [12u64, 16, 20, 40] {
            let ctx = RootContext::new(n, 128).unwrap();
            let b = ctx.eval_poly(&qint(n as i64 / 2));
            assert!(b.contains_zero(), "N = {n}");
        }
    }

    #[test]
    fn vanishing_denominator_detected() {
        let ctx = RootContext::new(12, 128).unwrap();
        let s = QScalar::one().checked_div(&QScalar::qint(6)).unwrap();
        assert_eq!(ctx.eval(&s), Err(QError::DenominatorVanishes(12)));
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(RootContext::new(15, 128).is_err());
        assert!(RootContext::new(16, 64).is_err());
    }
}
