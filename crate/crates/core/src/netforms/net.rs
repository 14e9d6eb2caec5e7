use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::coeffs::{
    alpha_raw, beta_raw, clasp_trace_raw, coeff_a_from, delta1, prod_b_telescoped, trace_step,
};
use super::labels::{tri_to_net, Inadmissible, TriLabel};
use super::NetError;
use crate::qscalar::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Alpha(u32),
    Beta(u32),
    A(u32, u32, u32),
    Trace(u32),
    TraceRec(u32),
    Closed(u32, u32, u32),
    Ladder(u32, u32, u32),
    Split(u32, u32, u32, u32),
}

/// Formula evaluator with an optional memo table.
///
/// The cache is transparent: a `NetCalc::uncached()` returns identical
/// values. Free functions in [`netforms`](super) use a shared cached
/// instance.
#[derive(Debug, Default)]
pub struct NetCalc {
    memo: Option<RwLock<HashMap<Key, QScalar>>>,
}

impl NetCalc {
    pub fn cached() -> Self {
        NetCalc {
            memo: Some(RwLock::new(HashMap::new())),
        }
    }

    pub fn uncached() -> Self {
        NetCalc { memo: None }
    }

    pub fn global() -> &'static NetCalc {
        static G: OnceLock<NetCalc> = OnceLock::new();
        G.get_or_init(NetCalc::cached)
    }

    pub fn is_cached(&self) -> bool {
        self.memo.is_some()
    }

    fn memo(&self, key: Key, f: impl FnOnce() -> QScalar) -> QScalar {
        let Some(m) = &self.memo else {
            return f();
        };
        if let Some(v) = m.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = f();
        m.write().unwrap().insert(key, v.clone());
        v
    }

    pub fn alpha(&self, n: u32) -> QScalar {
        self.memo(Key::Alpha(n), || alpha_raw(n))
    }

    pub fn beta(&self, n: u32) -> QScalar {
        self.memo(Key::Beta(n), || beta_raw(n))
    }

    /// # Panics
    /// If `i == 0`.
    pub fn coeff_a(&self, i: u32, m: u32, n: u32) -> QScalar {
        assert!(i >= 1, "coefficient index starts at 1");
        self.memo(Key::A(i, m, n), || {
            let (j, s) = (m + i, n + i);
            coeff_a_from(&self.alpha(j), &self.alpha(s), &self.beta(j), &self.beta(s))
        })
    }

    /// # Panics
    /// If `i == 0`.
    pub fn coeff_b(&self, i: u32, m: u32, n: u32) -> QScalar {
        assert!(i >= 1, "coefficient index starts at 1");
        self.alpha(n + i) * self.alpha(m + i)
    }

    /// `B_{i+1} ... B_p`, computed as a direct product and checked against
    /// the telescoped closed form.
    pub fn prod_b(&self, i: u32, p: u32, m: u32, n: u32) -> Result<QScalar, NetError> {
        if i < 1 || i >= p {
            return Err(NetError::ProductRange { i, p });
        }
        let direct: QScalar = (i + 1..=p).map(|k| self.coeff_b(k, m, n)).product();
        let tele = prod_b_telescoped(i, p, m, n);
        if direct != tele {
            return Err(NetError::TelescopeMismatch { i, p, m, n });
        }
        Ok(direct)
    }

    pub fn clasp_trace(&self, p: u32) -> QScalar {
        self.memo(Key::Trace(p), || clasp_trace_raw(p))
    }

    /// Trace of `P_p` from the one-step recurrence. Equals
    /// `(-1)^p * clasp_trace(p)`.
    ///
    /// # Panics
    /// If `p == 0`.
    pub fn clasp_trace_recursive(&self, p: u32) -> QScalar {
        assert!(p >= 1, "recurrence starts at p = 1");
        self.memo(Key::TraceRec(p), || {
            if p == 1 {
                delta1()
            } else {
                self.clasp_trace_recursive(p - 1) * trace_step(p)
            }
        })
    }

    pub fn net_base(&self, m: u32, n: u32) -> QScalar {
        self.clasp_trace(m + n)
    }

    /// `Net(m,n,p)` by the ladder: one step down in `p`, then strands are
    /// walked from the inner to the outer position.
    pub fn net_ladder(&self, m: u32, n: u32, p: u32) -> QScalar {
        self.memo(Key::Ladder(m, n, p), || match p {
            0 => self.net_base(m, n),
            1 => self.coeff_a(1, m, n) * self.net_base(m, n),
            _ => {
                let lower = self.net_ladder(m, n, p - 1);
                self.coeff_a(p, m, n) * lower
                    + self.coeff_b(p, m, n) * self.net_split(m, n, p, 1, p - 2)
            }
        })
    }

    /// `Net(m,n,p_e,p_i)` with `p_e + p_i = p - 1`.
    pub fn net_split(&self, m: u32, n: u32, p: u32, p_e: u32, p_i: u32) -> QScalar {
        assert!(
            p >= 1 && p_e + p_i == p - 1,
            "split must satisfy p_e + p_i = p - 1"
        );
        self.memo(Key::Split(m, n, p_e, p_i), || {
            let lower = self.net_ladder(m, n, p - 1);
            if p_i == 0 {
                self.coeff_a(1, m, n) * lower
            } else {
                self.coeff_a(p_i + 1, m, n) * lower
                    + self.coeff_b(p_i + 1, m, n) * self.net_split(m, n, p, p_e + 1, p_i - 1)
            }
        })
    }

    /// The factor `A_p + sum_i A_i B_{i+1}...B_p` relating `Net(m,n,p)` to
    /// `Net(m,n,p-1)`.
    pub fn closed_step(&self, m: u32, n: u32, p: u32) -> Result<QScalar, NetError> {
        let mut f = self.coeff_a(p, m, n);
        for i in 1..p {
            f = f + self.coeff_a(i, m, n) * self.prod_b(i, p, m, n)?;
        }
        Ok(f)
    }

    pub fn net_closed(&self, m: u32, n: u32, p: u32) -> QScalar {
        self.try_net_closed(m, n, p)
            .expect("telescoped product agrees with the direct product")
    }

    pub fn try_net_closed(&self, m: u32, n: u32, p: u32) -> Result<QScalar, NetError> {
        if p == 0 {
            return Ok(self.net_base(m, n));
        }
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.read().unwrap().get(&Key::Closed(m, n, p)) {
                return Ok(v.clone());
            }
        }
        let v = self.closed_step(m, n, p)? * self.try_net_closed(m, n, p - 1)?;
        if let Some(memo) = &self.memo {
            memo.write()
                .unwrap()
                .insert(Key::Closed(m, n, p), v.clone());
        }
        Ok(v)
    }

    pub fn theta(&self, t: TriLabel) -> ThetaValue {
        match tri_to_net(t) {
            Ok(s) => ThetaValue {
                value: self.net_closed(s.m, s.n, s.p),
                inadmissible: None,
            },
            Err(NetError::Inadmissible(_, reason)) => ThetaValue {
                value: QScalar::zero(),
                inadmissible: Some(reason),
            },
            Err(e) => unreachable!("{e}"),
        }
    }
}

/// A theta value; inadmissible triples are a zero tagged with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub value: QScalar,
    pub inadmissible: Option<Inadmissible>,
}
