use std::fmt;

use serde::{Deserialize, Serialize};

use super::NetError;

/// Theta labels: highest weights `(a,0)`, `(b,0)`, `(c,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriLabel {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl TriLabel {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        TriLabel { a, b, c }
    }

    pub fn sum(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// Why the triple is inadmissible over generic `q`, if it is. Parity is
    /// checked first.
    pub fn inadmissibility(&self) -> Option<Inadmissible> {
        let TriLabel { a, b, c } = *self;
        if (a + b + c) % 2 != 0 {
            Some(Inadmissible::Parity)
        } else if a + b < c || b + c < a || a + c < b {
            Some(Inadmissible::Triangle)
        } else {
            None
        }
    }

    /// All six permutations of the labels, with repeats.
    pub fn permutations(&self) -> [TriLabel; 6] {
        let TriLabel { a, b, c } = *self;
        [
            TriLabel::new(a, b, c),
            TriLabel::new(a, c, b),
            TriLabel::new(b, a, c),
            TriLabel::new(b, c, a),
            TriLabel::new(c, a, b),
            TriLabel::new(c, b, a),
        ]
    }
}

impl fmt::Display for TriLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inadmissible {
    Parity,
    Triangle,
}

impl Inadmissible {
    pub fn as_str(&self) -> &'static str {
        match self {
            Inadmissible::Parity => "parity",
            Inadmissible::Triangle => "triangle",
        }
    }
}

impl fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Strand-bundle sizes between the three clasps of a theta net.
///
/// `split` optionally records the `(p_e, p_i)` position reached by the ladder
/// recursion, with `p_e + p_i = p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NetShape {
    pub m: u32,
    pub n: u32,
    pub p: u32,
    pub split: Option<(u32, u32)>,
}

impl NetShape {
    pub fn new(m: u32, n: u32, p: u32) -> Self {
        NetShape {
            m,
            n,
            p,
            split: None,
        }
    }

    pub fn with_split(m: u32, n: u32, p: u32, p_e: u32, p_i: u32) -> Result<Self, NetError> {
        if p == 0 || p_e + p_i != p - 1 {
            return Err(NetError::BadSplit { p, p_e, p_i });
        }
        Ok(NetShape {
            m,
            n,
            p,
            split: Some((p_e, p_i)),
        })
    }

    /// The labels this shape closes up to: `a = m+p`, `b = m+n`, `c = n+p`.
    pub fn labels(&self) -> TriLabel {
        TriLabel::new(self.m + self.p, self.m + self.n, self.n + self.p)
    }
}

/// Level `k` of `Sp(4)_k`, with root order `N = 4k + 12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelContext {
    pub k: u32,
}

impl LevelContext {
    pub fn new(k: u32) -> Self {
        LevelContext { k }
    }

    pub fn order_n(&self) -> u64 {
        4 * self.k as u64 + 12
    }

    /// The level whose root order is `n`, if `n` has the form `4k + 12`.
    pub fn from_order(n: u64) -> Option<Self> {
        (n >= 12 && (n - 12).is_multiple_of(4)).then(|| LevelContext::new(((n - 12) / 4) as u32))
    }

    /// Smallest level whose root order exceeds `bound`.
    pub fn smallest_above(bound: u64) -> Self {
        let mut k = 0;
        while LevelContext::new(k).order_n() <= bound {
            k += 1;
        }
        LevelContext::new(k)
    }
}

pub fn admissible_generic(t: TriLabel) -> bool {
    t.inadmissibility().is_none()
}

pub fn admissible_level(t: TriLabel, ctx: LevelContext) -> bool {
    admissible_generic(t) && t.sum() < 2 * ctx.k + 4
}

/// Clasps of weight `(p, 0)` with `p > k` are negligible at level `k`.
pub fn negligible(p: u32, ctx: LevelContext) -> bool {
    p > ctx.k
}

pub fn tri_to_net(t: TriLabel) -> Result<NetShape, NetError> {
    if let Some(reason) = t.inadmissibility() {
        return Err(NetError::Inadmissible(t, reason));
    }
    let TriLabel { a, b, c } = t;
    Ok(NetShape::new(
        (a + b - c) / 2,
        (b + c - a) / 2,
        (a + c - b) / 2,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn net_shapes() {
        assert_eq!(
            tri_to_net(TriLabel::new(3, 2, 1)).unwrap(),
            NetShape::new(2, 0, 1)
        );
        assert_eq!(
            tri_to_net(TriLabel::new(1, 1, 2)).unwrap(),
            NetShape::new(0, 1, 1)
        );
        assert_eq!(
            tri_to_net(TriLabel::new(5, 5, 0)).unwrap(),
            NetShape::new(5, 0, 0)
        );
        let t = TriLabel::new(4, 6, 8);
        assert_eq!(tri_to_net(t).unwrap().labels(), t);
    }

    #[test]
    fn admissibility() {
        assert!(admissible_generic(TriLabel::new(3, 4, 5)));
        assert_eq!(
            TriLabel::new(1, 1, 4).inadmissibility(),
            Some(Inadmissible::Triangle)
        );
        assert_eq!(
            TriLabel::new(2, 2, 1).inadmissibility(),
            Some(Inadmissible::Parity)
        );
        assert!(admissible_level(
            TriLabel::new(3, 4, 5),
            LevelContext::new(10)
        ));
        assert!(!admissible_level(
            TriLabel::new(4, 4, 4),
            LevelContext::new(3)
        ));
        assert!(admissible_level(
            TriLabel::new(1, 1, 0),
            LevelContext::new(0)
        ));
    }

    #[test]
    fn negligibility() {
        assert!(negligible(4, LevelContext::new(3)));
        assert!(!negligible(3, LevelContext::new(3)));
        assert!(!negligible(0, LevelContext::new(0)));
    }

    #[test]
    fn levels() {
        assert_eq!(LevelContext::new(3).order_n(), 24);
        assert_eq!(LevelContext::from_order(24), Some(LevelContext::new(3)));
        assert_eq!(LevelContext::from_order(26), None);
        assert_eq!(LevelContext::smallest_above(8), LevelContext::new(0));
        assert_eq!(LevelContext::smallest_above(12), LevelContext::new(1));
    }

    #[test]
    fn split_invariant() {
        assert!(NetShape::with_split(1, 1, 3, 1, 1).is_ok());
        assert!(NetShape::with_split(1, 1, 3, 2, 1).is_err());
    }
}
