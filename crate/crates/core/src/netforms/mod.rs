//! Formula-level theta computations.
//!
//! Conventions: `[n]` is the symmetric quantum integer, the single loop is
//! `delta1 = -[2][6]/[3]`, and [`clasp_trace`] is the positive formula
//! `[2p+4][p+3][p+1]/([4][3])`. The diagrammatic trace of `P_p` is
//! `(-1)^p` times that. When at most one strand runs around the outside, the
//! diagrammatic theta is `(-1)^b * theta(a,b,c)`.

mod coeffs;
mod labels;
mod net;
mod sine;

use thiserror::Error;

use crate::qscalar::{QError, QScalar, RootValue};

pub use coeffs::{delta1, delta2};
pub use labels::{
    admissible_generic, admissible_level, negligible, tri_to_net, Inadmissible, LevelContext,
    NetShape, TriLabel,
};
pub use net::{NetCalc, ThetaValue};
pub use sine::{
    check_nonvanishing, check_nonvanishing_with, theorem9_cleared_denominator, theorem9_sine_ball,
    theorem9_sine_expression, Nonvanishing, SineExpression,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetError {
    #[error("inadmissible triple {0}: {1}")]
    Inadmissible(TriLabel, Inadmissible),
    #[error("split (p_e, p_i) = ({p_e}, {p_i}) does not satisfy p_e + p_i = p - 1 for p = {p}")]
    BadSplit { p: u32, p_e: u32, p_i: u32 },
    #[error("product range needs 1 <= i < p, got i = {i}, p = {p}")]
    ProductRange { i: u32, p: u32 },
    #[error("telescoped form disagrees with direct product (i={i}, p={p}, m={m}, n={n})")]
    TelescopeMismatch { i: u32, p: u32, m: u32, n: u32 },
    #[error("indeterminate sign: {0:?}")]
    IndeterminateSign(RootValue),
    #[error("root order {order} does not exceed 2(a+b+c)+4 = {bound}")]
    OutsideHypothesis { order: u64, bound: u64 },
    #[error(transparent)]
    Scalar(#[from] QError),
}

pub fn alpha(n: u32) -> QScalar {
    NetCalc::global().alpha(n)
}

pub fn beta(n: u32) -> QScalar {
    NetCalc::global().beta(n)
}

pub fn coeff_a(i: u32, m: u32, n: u32) -> QScalar {
    NetCalc::global().coeff_a(i, m, n)
}

pub fn coeff_b(i: u32, m: u32, n: u32) -> QScalar {
    NetCalc::global().coeff_b(i, m, n)
}

pub fn prod_b(i: u32, p: u32, m: u32, n: u32) -> Result<QScalar, NetError> {
    NetCalc::global().prod_b(i, p, m, n)
}

pub fn clasp_trace(p: u32) -> QScalar {
    NetCalc::global().clasp_trace(p)
}

pub fn clasp_trace_recursive(p: u32) -> QScalar {
    NetCalc::global().clasp_trace_recursive(p)
}

pub fn net_base(m: u32, n: u32) -> QScalar {
    NetCalc::global().net_base(m, n)
}

pub fn net_ladder(m: u32, n: u32, p: u32) -> QScalar {
    NetCalc::global().net_ladder(m, n, p)
}

pub fn net_closed(m: u32, n: u32, p: u32) -> QScalar {
    NetCalc::global().net_closed(m, n, p)
}

pub fn theta(t: TriLabel) -> ThetaValue {
    NetCalc::global().theta(t)
}

/// Sign relating the diagrammatic theta to [`theta`]: `(-1)^b`.
pub fn diagram_sign(t: TriLabel) -> i32 {
    if t.b.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::q;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn lim(x: &QScalar) -> BigRational {
        x.limit_q1().unwrap()
    }

    #[test]
    fn alpha_beta_values() {
        assert!(alpha(1).is_zero());
        assert_eq!(alpha(2), q(4) * q(3) / (q(6) * q(2).pow(2)));
        assert_eq!(lim(&alpha(2)), rat(1, 2));
        assert_eq!(lim(&alpha(5)), rat(10 * 6 * 4, 12 * 25));
        assert!(beta(1).is_zero());
        assert_eq!(beta(2), QScalar::one() / q(2).pow(2));
        assert_eq!(lim(&beta(7)), rat(3, 7));
    }

    #[test]
    fn a_and_b_values() {
        assert_eq!(lim(&coeff_a(1, 0, 1)), rat(-5, 2));
        assert_eq!(coeff_a(1, 0, 0), delta1());
        let l = q(6) * q(2) / q(3);
        let expect = -&l + alpha(3) * QScalar::from_int(2) + QScalar::from_int(2) * &l * beta(3)
            - q(4) * q(2) * beta(3).pow(2);
        assert_eq!(coeff_a(2, 1, 1), expect);
        assert!(coeff_b(1, 0, 5).is_zero());
        assert_eq!(coeff_b(1, 1, 1), alpha(2).pow(2));
        assert_eq!(lim(&coeff_b(2, 1, 0)), rat(1, 3));
    }

    #[test]
    fn products_of_b() {
        assert_eq!(prod_b(2, 3, 1, 4).unwrap(), coeff_b(3, 1, 4));
        assert_eq!(prod_b(1, 2, 1, 1).unwrap(), alpha(3).pow(2));
        assert_eq!(
            prod_b(1, 3, 1, 2).unwrap(),
            coeff_b(2, 1, 2) * coeff_b(3, 1, 2)
        );
        assert!(prod_b(0, 3, 1, 2).is_err());
        assert!(prod_b(3, 3, 1, 2).is_err());
    }

    #[test]
    fn traces() {
        assert!(clasp_trace(0).is_one());
        assert_eq!(clasp_trace(1), q(6) * q(2) / q(3));
        for (p, d) in [(2, 10), (3, 20), (4, 35)] {
            assert_eq!(lim(&clasp_trace(p)), rat(d, 1));
        }
        assert_eq!(clasp_trace_recursive(1), delta1());
        assert_eq!(lim(&clasp_trace_recursive(2)), rat(10, 1));
    }

    #[test]
    fn nets() {
        assert!(net_base(0, 0).is_one());
        assert_eq!(net_base(1, 0), clasp_trace(1));
        assert_eq!(net_base(2, 1), clasp_trace(3));
        assert_eq!(net_ladder(2, 1, 0), net_base(2, 1));
        assert_eq!(net_ladder(0, 1, 1), coeff_a(1, 0, 1) * clasp_trace(1));
        assert_eq!(lim(&net_ladder(0, 1, 1)), rat(-10, 1));
        assert_eq!(
            lim(&net_ladder(1, 1, 1)),
            lim(&coeff_a(1, 1, 1)) * rat(10, 1)
        );
        assert_eq!(net_closed(3, 1, 1), coeff_a(1, 3, 1) * net_base(3, 1));
        assert_eq!(net_closed(0, 1, 1), net_ladder(0, 1, 1));
        assert_eq!(net_closed(2, 2, 2), net_ladder(2, 2, 2));
    }

    #[test]
    fn thetas() {
        assert_eq!(theta(TriLabel::new(3, 3, 0)).value, clasp_trace(3));
        let t = theta(TriLabel::new(1, 1, 1));
        assert!(t.value.is_zero());
        assert_eq!(t.inadmissible, Some(Inadmissible::Parity));
        let t = theta(TriLabel::new(1, 1, 2));
        assert_eq!(t.value, net_closed(0, 1, 1));
        assert_eq!(lim(&t.value), rat(-10, 1));
    }

    #[test]
    fn uncached_matches_cached() {
        let plain = NetCalc::uncached();
        for (m, n, p) in [(1, 2, 3), (0, 0, 4), (2, 2, 2)] {
            assert_eq!(plain.net_closed(m, n, p), net_closed(m, n, p));
            assert_eq!(plain.net_ladder(m, n, p), net_ladder(m, n, p));
        }
    }
}
