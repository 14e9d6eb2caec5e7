use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{qint, LaurentPoly};
use super::poly::{gcd, DensePoly};
use super::QError;

/// An element of `Q(q)` kept in canonical reduced form.
///
/// Canonical means: numerator and denominator have integer coefficients and
/// no common factor of positive degree, their joint integer content is 1, the
/// denominator's lowest exponent is 0 and its leading coefficient is
/// positive. Zero is `0/1`. Two values are equal as rational functions iff
/// they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, QError> {
        Self::new(LaurentPoly::constant(n), LaurentPoly::constant(d))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        QScalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// The quantum integer `[n]` as a scalar.
    pub fn qint(n: i64) -> Self {
        Self::from_poly(qint(n))
    }

    /// `num / den`, brought to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(num.dense(), den.dense());
        let (n, d) = if g.0.len() > 1 {
            (
                num.div_exact(&from_dense(&g))
                    .expect("gcd divides numerator"),
                den.div_exact(&from_dense(&g))
                    .expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        Ok(Self::finish(n, d))
    }

    /// Normalize shift, content and sign of a pair already free of common
    /// polynomial factors.
    fn finish(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low_exp();
        let mut num = num.shift(-shift);
        let mut den = den.shift(-shift);
        let mut c = num.dense().content().gcd(&den.dense().content());
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = LaurentPoly::from_dense(num.low_exp(), num.dense().scale_div(&c));
            den = LaurentPoly::from_dense(0, den.dense().scale_div(&c));
        }
        QScalar { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Re-derive the canonical form from scratch. Always returns an equal
    /// value; exposed so idempotence can be tested.
    pub fn normalize(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone()).expect("canonical denominator is nonzero")
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            let n = self.num.add(&other.num);
            return Self::new(n, self.den.clone()).unwrap();
        }
        let g = from_dense(&gcd(self.den.dense(), other.den.dense()));
        let (xd, yd) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                other.den.div_exact(&g).unwrap(),
            )
        };
        let num = self.num.mul(&yd).add(&other.num.mul(&xd));
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&yd);
        if g.is_one() {
            return Self::finish(num, den);
        }
        // Any common factor of num and den divides g.
        let h = from_dense(&gcd(num.dense(), g.dense()));
        if h.is_one() {
            Self::finish(num, den)
        } else {
            Self::finish(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    pub fn neg_ref(&self) -> Self {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (xn, yd) = cancel(&self.num, &other.den);
        let (yn, xd) = cancel(&other.num, &self.den);
        Self::finish(xn.mul(&yn), xd.mul(&yd))
    }

    pub fn recip(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QError> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact value at `q = 1`, cancelling common powers of `q - 1` first.
    pub fn limit_q1(&self) -> Result<BigRational, QError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let kn = self.num.order_at_one();
        let kd = self.den.order_at_one();
        if kn < kd {
            return Err(QError::DivergentLimit);
        }
        if kn > kd {
            return Ok(BigRational::zero());
        }
        let n = strip_at_one(&self.num, kn);
        let d = strip_at_one(&self.den, kd);
        Ok(BigRational::new(n, d))
    }

    /// Substitute `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let flip =
            |p: &LaurentPoly| LaurentPoly::from_terms(p.terms().map(|(e, c)| (-e, c.clone())));
        Self::finish(flip(&self.num), flip(&self.den))
    }
}

fn from_dense(p: &DensePoly) -> LaurentPoly {
    LaurentPoly::from_dense(0, p.clone())
}

fn cancel(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if a.is_one() || b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = from_dense(&gcd(a.dense(), b.dense()));
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

fn strip_at_one(p: &LaurentPoly, k: usize) -> BigInt {
    let root = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let mut p = p.clone();
    for _ in 0..k {
        p = p.div_exact(&root).expect("root at q = 1");
    }
    p.eval_one()
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                self.$f(rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                self.$f(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                self.$f(rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl QScalar {
    fn div_or_panic(&self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("division by zero QScalar")
    }
}

// Panics on a zero divisor; use `checked_div` to get an error instead.
forward_binop!(Div, div, div_or_panic);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        QScalar::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QScalar {
        QScalar::qint(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn loop_ratio_limit() {
        let x = &(&q(2) * &q(6)) / &q(3);
        assert_eq!(x.limit_q1().unwrap(), rat(4, 1));
    }

    #[test]
    fn reduced_form_cancels() {
        // [6]/[3] = q^3 + q^-3
        let x = &q(6) / &q(3);
        assert!(x.denominator().is_one());
        assert_eq!(x.numerator(), &LaurentPoly::from_terms([(3, 1), (-3, 1)]));
    }

    #[test]
    fn inverse_and_identity() {
        let x = &q(5) / &(&q(2) * &q(4));
        assert_eq!(&x * &QScalar::one(), x);
        assert!((&x + &(-&x)).is_zero());
        assert!((&x / &x).is_one());
        assert_eq!(QScalar::zero().recip(), Err(QError::DivisionByZero));
    }

    #[test]
    fn limits() {
        assert_eq!(QScalar::one().limit_q1().unwrap(), rat(1, 1));
        assert_eq!((&q(0) / &q(1)).limit_q1().unwrap(), rat(0, 1));
        let pole = QScalar::new(
            LaurentPoly::one(),
            LaurentPoly::from_terms([(1, 1), (0, -1)]),
        )
        .unwrap();
        assert_eq!(pole.limit_q1(), Err(QError::DivergentLimit));
        let vanishing = QScalar::from_poly(LaurentPoly::from_terms([(1, 1), (0, -1)]));
        assert_eq!(vanishing.limit_q1().unwrap(), rat(0, 1));
    }

    #[test]
    fn canonical_sign_and_content() {
        let x = QScalar::new(
            LaurentPoly::constant(-4),
            LaurentPoly::constant(-6).shift(3),
        )
        .unwrap();
        assert_eq!(x.denominator(), &LaurentPoly::constant(3));
        assert_eq!(x.numerator(), &LaurentPoly::constant(2).shift(-3));
    }

    #[test]
    fn json_shape() {
        let x = &q(2) / &q(3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"num":["1:1","3:1"],"den":["0:1","2:1","4:1"]}"#);
        let back: QScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
