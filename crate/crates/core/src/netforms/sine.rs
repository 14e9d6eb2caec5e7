//! Sine form of `A_i` and the nonvanishing check at roots of unity.

use serde::{Deserialize, Serialize};

use super::labels::{admissible_generic, TriLabel};
use super::net::NetCalc;
use super::NetError;
use crate::qscalar::{q, Ball, QScalar, RootContext, RootValue};

/// The expanded sine numerator of `A_i` together with its certified sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SineExpression {
    pub ball: Ball,
    pub sign: i8,
}

/// Evaluate the six-term sine expansion of `A_i` with `j = m+i`,
/// `s = n+i` and `u = 2*pi/N`. It equals
/// `A_i * [3][2][2j+2][2s+2][j]^2[s]^2 * sin(u)^9`.
pub fn theorem9_sine_ball(i: u32, m: u32, n: u32, ctx: &RootContext) -> Ball {
    let j = (m + i) as i64;
    let s = (n + i) as i64;
    let sn = |k: i64| ctx.sin_2pi(k);
    let prod = |fs: &[Ball]| {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = acc.mul(f);
        }
        acc
    };
    // sin(x * pi / N) with even x is sin((x/2) u).
    let t1 = prod(&[
        sn(2 * s),
        sn(s + 1),
        sn(s - 1),
        sn(2 * j + 2),
        sn(j),
        sn(j),
        sn(3),
        sn(2),
        sn(1),
    ]);
    let t2 = prod(&[
        sn(2 * j),
        sn(j + 1),
        sn(j - 1),
        sn(2 * s + 2),
        sn(s),
        sn(s),
        sn(3),
        sn(2),
        sn(1),
    ]);
    let t3 = prod(&[
        sn(s - 1),
        sn(2 * s + 2),
        sn(s),
        sn(2 * j + 2),
        sn(j),
        sn(j),
        sn(6),
        sn(2),
        sn(1),
    ]);
    let t4 = prod(&[
        sn(j - 1),
        sn(2 * j + 2),
        sn(j),
        sn(2 * s + 2),
        sn(s),
        sn(s),
        sn(6),
        sn(2),
        sn(1),
    ]);
    let t5 = prod(&[
        sn(s - 1),
        sn(j - 1),
        sn(2 * s + 2),
        sn(2 * j + 2),
        sn(s),
        sn(j),
        sn(3),
        sn(1),
        sn(4),
    ]);
    let t6 = prod(&[
        sn(6),
        sn(2),
        sn(2),
        sn(2 * s + 2),
        sn(2 * j + 2),
        sn(j),
        sn(j),
        sn(s),
        sn(s),
    ]);
    t1.add(&t2).add(&t3).add(&t4).sub(&t5).sub(&t6)
}

pub fn theorem9_sine_expression(
    i: u32,
    m: u32,
    n: u32,
    ctx: &RootContext,
) -> Result<SineExpression, NetError> {
    let ball = theorem9_sine_ball(i, m, n, ctx);
    match ball.real_sign() {
        Some(sign) => Ok(SineExpression { ball, sign }),
        None => Err(NetError::IndeterminateSign(ball.to_value())),
    }
}

/// The positive denominator cleared in the sine expansion, as a scalar.
pub fn theorem9_cleared_denominator(i: u32, m: u32, n: u32) -> QScalar {
    let j = (m + i) as i64;
    let s = (n + i) as i64;
    q(3) * q(2) * q(2 * j + 2) * q(2 * s + 2) * q(j).pow(2) * q(s).pow(2)
}

/// Result of [`check_nonvanishing`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Nonvanishing {
    pub nonzero: bool,
    /// Certified lower bound on `|theta|` at the root.
    pub margin: f64,
    pub value: RootValue,
    pub precision_bits: u32,
}

/// Certify `theta(t) != 0` at `q = exp(2*pi*i/N)` for `N > 2(a+b+c)+4`.
pub fn check_nonvanishing(t: TriLabel, ctx: &RootContext) -> Result<Nonvanishing, NetError> {
    check_nonvanishing_with(NetCalc::global(), t, ctx)
}

pub fn check_nonvanishing_with(
    calc: &NetCalc,
    t: TriLabel,
    ctx: &RootContext,
) -> Result<Nonvanishing, NetError> {
    if !admissible_generic(t) {
        return Err(NetError::Inadmissible(t, t.inadmissibility().unwrap()));
    }
    let bound = 2 * t.sum() as u64 + 4;
    if ctx.order_n <= bound {
        return Err(NetError::OutsideHypothesis {
            order: ctx.order_n,
            bound,
        });
    }
    let theta = calc.theta(t).value;
    let cert = ctx.certify_nonzero(&theta)?;
    let v = cert.value;
    Ok(Nonvanishing {
        nonzero: true,
        margin: v.abs() - v.error_bound,
        value: v,
        precision_bits: cert.precision_bits,
    })
}
