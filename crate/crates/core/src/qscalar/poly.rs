//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind [`LaurentPoly`](super::LaurentPoly) and the
//! gcd reduction of [`QScalar`](super::QScalar). Coefficients are stored from
//! the constant term upward and the vector is always trimmed, so the zero
//! polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct DensePoly(pub(crate) Vec<BigInt>);

impl DensePoly {
    pub(crate) fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly(coeffs)
    }

    pub(crate) fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn lc(&self) -> &BigInt {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub(crate) fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub(crate) fn scale_div(&self, d: &BigInt) -> Self {
        DensePoly(self.0.iter().map(|c| c / d).collect())
    }

    pub(crate) fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return DensePoly::default();
        }
        DensePoly(self.0.iter().map(|c| c * k).collect())
    }

    /// Primitive part with a positive leading coefficient.
    pub(crate) fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.scale_div(&c)
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub(crate) fn neg(&self) -> Self {
        DensePoly(self.0.iter().map(|c| -c).collect())
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePoly::default();
        }
        if self.0.len() == 1 {
            return other.scale(&self.0[0]);
        }
        if other.0.len() == 1 {
            return self.scale(&other.0[0]);
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub(crate) fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn max_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Exact quotient `self / d` over the integers, or `None` when `d` does
    /// not divide `self` in `Z[q]`.
    pub(crate) fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(DensePoly::default());
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        if d.0.len() == 1 {
            let c = &d.0[0];
            let mut out = Vec::with_capacity(self.0.len());
            for a in &self.0 {
                let (q, r) = a.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(DensePoly(out));
        }
        let mut rem = self.0.clone();
        let dl = d.0.len();
        let lc = d.lc();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let mut rem = self.0.clone();
        let dl = d.0.len();
        let lc = d.lc().clone();
        while rem.len() >= dl {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - dl;
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[shift + j] -= &top * dc;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        DensePoly(rem)
    }
}

/// Greatest common divisor in `Q[q]`, returned as a primitive integer
/// polynomial with positive leading coefficient. `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.0.len() == 1 || b.0.len() == 1 {
        return DensePoly::constant(BigInt::one());
    }
    let a = a.primitive();
    let b = b.primitive();
    if a == b {
        return a;
    }
    // Common powers of q are handled by the caller (Laurent shift), but the
    // dense form may still carry them when used directly.
    let za = a.0.iter().take_while(|c| c.is_zero()).count();
    let zb = b.0.iter().take_while(|c| c.is_zero()).count();
    let z = za.min(zb);
    let a_s = DensePoly(a.0[za..].to_vec());
    let b_s = DensePoly(b.0[zb..].to_vec());
    let core = if a_s.0.len() == 1 || b_s.0.len() == 1 {
        DensePoly::constant(BigInt::one())
    } else {
        heuristic_gcd(&a_s, &b_s).unwrap_or_else(|| prs_gcd(&a_s, &b_s))
    };
    if z == 0 {
        core
    } else {
        let mut v = vec![BigInt::zero(); z];
        v.extend(core.0);
        DensePoly(v)
    }
}

/// Heuristic gcd by evaluation at a large integer and symmetric
/// `x`-adic reconstruction. Inputs must be primitive and nonconstant.
fn heuristic_gcd(f: &DensePoly, g: &DensePoly) -> Option<DensePoly> {
    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let b: BigInt = BigInt::from(2) * f_norm.clone().min(g_norm.clone()) + 29;
    let lower = BigInt::from(2) * (&f_norm / f.lc().abs()).min(&g_norm / g.lc().abs()) + 2;
    let mut x = (b.clone().min(BigInt::from(99) * b.sqrt())).max(lower);
    for _ in 0..6 {
        let ff = f.eval(&x);
        let gg = g.eval(&x);
        if !ff.is_zero() && !gg.is_zero() {
            let h = ff.gcd(&gg);
            let cand = interpolate(&h, &x).primitive();
            if !cand.is_zero() && f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        x = (BigInt::from(73794) * &x * x.sqrt().sqrt()) / BigInt::from(27011);
    }
    None
}

fn interpolate(h: &BigInt, x: &BigInt) -> DensePoly {
    let mut h = h.clone();
    let half = x / 2;
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let mut r = h.mod_floor(x);
        if r > half {
            r -= x;
        }
        h = (h - &r) / x;
        coeffs.push(r);
    }
    DensePoly::new(coeffs)
}

/// Primitive polynomial remainder sequence; slow but unconditional.
fn prs_gcd(f: &DensePoly, g: &DensePoly) -> DensePoly {
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.primitive(), g.primitive())
    } else {
        (g.primitive(), f.primitive())
    };
    while !b.is_zero() {
        let r = a.prem(&b);
        a = b;
        b = if r.is_zero() { r } else { r.primitive() };
    }
    let out = a.primitive();
    if out.0.len() == 1 {
        DensePoly::constant(BigInt::one())
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> DensePoly {
        DensePoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (q+1)(q^2+q+1) and (q+1)(q-2)
        let a = p(&[1, 1]).mul(&p(&[1, 1, 1]));
        let b = p(&[1, 1]).mul(&p(&[-2, 1]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
        assert_eq!(prs_gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(gcd(&a, &b), p(&[1]));
    }

    #[test]
    fn gcd_keeps_common_q_power() {
        let a = p(&[0, 0, 2, 2]);
        let b = p(&[0, 3, 3]);
        assert_eq!(gcd(&a, &b), p(&[0, 1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[2, 3, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[2, 1])));
        assert_eq!(a.div_exact(&p(&[3, 1])), None);
        assert_eq!(p(&[4, 6]).div_exact(&p(&[2])), Some(p(&[2, 3])));
    }

    #[test]
    fn heuristic_agrees_with_prs_on_cyclotomic_products() {
        // q^12 - 1 and q^18 - 1 share q^6 - 1.
        let mut a = vec![0i64; 13];
        a[0] = -1;
        a[12] = 1;
        let mut b = vec![0i64; 19];
        b[0] = -1;
        b[18] = 1;
        let (a, b) = (p(&a), p(&b));
        let mut g = vec![0i64; 7];
        g[0] = -1;
        g[6] = 1;
        assert_eq!(gcd(&a, &b), p(&g));
        assert_eq!(prs_gcd(&a, &b), p(&g));
    }
}
