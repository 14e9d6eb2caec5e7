//! Closed-form coefficients. These are the uncached definitions; the cached
//! entry points live on [`NetCalc`](super::NetCalc).

use crate::qscalar::{q, QScalar};

/// Value of a free single loop, `-[2][6]/[3]`.
pub fn delta1() -> QScalar {
    -(q(2) * q(6) / q(3))
}

/// Value of a free double loop, `[6][5]/([3][2])`.
pub fn delta2() -> QScalar {
    q(6) * q(5) / (q(3) * q(2))
}

/// `[6][2]/[3]`, the modulus of the single loop.
pub(crate) fn loop_mag() -> QScalar {
    q(2) * q(6) / q(3)
}

pub(crate) fn alpha_raw(n: u32) -> QScalar {
    assert!(n >= 1, "alpha is defined for n >= 1");
    let n = n as i64;
    if n == 1 {
        return QScalar::zero();
    }
    q(2 * n) * q(n + 1) * q(n - 1) / (q(2 * n + 2) * q(n).pow(2))
}

pub(crate) fn beta_raw(n: u32) -> QScalar {
    assert!(n >= 1, "beta is defined for n >= 1");
    let n = n as i64;
    q(n - 1) / (q(n) * q(2))
}

pub(crate) fn coeff_a_from(
    alpha_j: &QScalar,
    alpha_s: &QScalar,
    beta_j: &QScalar,
    beta_s: &QScalar,
) -> QScalar {
    let l = loop_mag();
    let bb = q(4) * q(2) * beta_s * beta_j;
    -&l + alpha_j + alpha_s + l * (beta_s + beta_j) - bb
}

/// The telescoped form of `B_{i+1} ... B_p`.
pub(crate) fn prod_b_telescoped(i: u32, p: u32, m: u32, n: u32) -> QScalar {
    let (i, p, m, n) = (i as i64, p as i64, m as i64, n as i64);
    let head = q(2 * m + 2 * i + 2) * q(m + i) * q(n + i) * q(2 * n + 2 * i + 2)
        / (q(m + i + 1) * q(n + i + 1));
    let tail = q(m + p + 1) * q(n + p + 1)
        / (q(2 * m + 2 * p + 2) * q(2 * n + 2 * p + 2) * q(n + p) * q(m + p));
    head * tail
}

pub(crate) fn clasp_trace_raw(p: u32) -> QScalar {
    let p = p as i64;
    q(2 * p + 4) * q(p + 3) * q(p + 1) / (q(4) * q(3))
}

/// One factor of the trace recurrence: closing the last strand of the
/// expansion of `P_n` gives `delta1 + alpha_n - delta1 * beta_n` times the
/// previous trace.
pub(crate) fn trace_step(n: u32) -> QScalar {
    let d = delta1();
    &d + alpha_raw(n) - d * beta_raw(n)
}
