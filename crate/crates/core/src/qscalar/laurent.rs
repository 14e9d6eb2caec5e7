use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::DensePoly;
use super::QError;

/// A Laurent polynomial in `q` with integer coefficients.
///
/// Stored densely as `q^low * poly(q)`, where `poly` has a nonzero constant
/// term. The zero polynomial has an empty `poly` and `low == 0`, so derived
/// equality is structural equality of the mathematical object.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    low: i64,
    poly: DensePoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c.into())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        Self::from_dense(exp, DensePoly::new(vec![c]))
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub(crate) fn from_dense(low: i64, poly: DensePoly) -> Self {
        let mut coeffs = poly.0;
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            poly: DensePoly::new(coeffs),
        }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::from_dense(lo, DensePoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.poly.0.len() == 1 && self.poly.0[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn high_exp(&self) -> i64 {
        self.low + self.poly.degree() as i64
    }

    pub(crate) fn dense(&self) -> &DensePoly {
        &self.poly
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.poly
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.poly.0.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.poly.0.last()
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            poly: self.poly.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_dense(self.low, self.poly.scale(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = pad(&self.poly, (self.low - low) as usize);
        let b = pad(&other.poly, (other.low - low) as usize);
        Self::from_dense(low, a.add(&b))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            poly: self.poly.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_dense(self.low + other.low, self.poly.mul(&other.poly))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient in `Z[q, q^-1]`, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let quot = self.poly.div_exact(&d.poly)?;
        Some(Self::from_dense(self.low - d.low, quot))
    }

    /// Substitute `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.poly.0.iter().sum()
    }

    /// Multiplicity of `q = 1` as a root.
    pub(crate) fn order_at_one(&self) -> usize {
        assert!(!self.is_zero());
        let mut p = self.poly.clone();
        let root = DensePoly::new(vec![-BigInt::one(), BigInt::one()]);
        let mut k = 0;
        while p.eval(&BigInt::one()).is_zero() {
            p = p
                .div_exact(&root)
                .expect("q-1 divides a polynomial vanishing at 1");
            k += 1;
        }
        k
    }

    /// Parse the serialized `"exp:coef"` list.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[S]) -> Result<Self, QError> {
        let mut terms = Vec::with_capacity(pairs.len());
        let mut last: Option<i64> = None;
        for p in pairs {
            let p = p.as_ref();
            let (e, c) = p
                .split_once(':')
                .ok_or_else(|| QError::Parse(format!("expected exp:coef, got {p:?}")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| QError::Parse(format!("bad exponent in {p:?}")))?;
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| QError::Parse(format!("bad coefficient in {p:?}")))?;
            if c.is_zero() {
                return Err(QError::Parse(format!("zero coefficient stored in {p:?}")));
            }
            if last.is_some_and(|l| l >= e) {
                return Err(QError::Parse(
                    "exponents must be strictly increasing".into(),
                ));
            }
            last = Some(e);
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_pairs(&self) -> Vec<String> {
        self.terms().map(|(e, c)| format!("{e}:{c}")).collect()
    }
}

fn pad(p: &DensePoly, k: usize) -> DensePoly {
    if k == 0 {
        return p.clone();
    }
    let mut v = vec![BigInt::zero(); k];
    v.extend(p.0.iter().cloned());
    DensePoly(v)
}

/// The quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qint(n: i64) -> LaurentPoly {
    if n < 0 {
        return qint(-n).neg();
    }
    LaurentPoly::from_terms((0..n).map(|i| (n - 1 - 2 * i, 1)))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        LaurentPoly::from_pairs(&v).map_err(serde::de::Error::custom)
    }
}
