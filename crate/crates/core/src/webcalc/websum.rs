use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canon::canonicalize;
use super::web::{Strand, Web};
use super::WebError;
use crate::netforms::{delta1, delta2};
use crate::qscalar::QScalar;

pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

/// Strand types around the disk, counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct BoundarySignature(pub Vec<Strand>);

impl BoundarySignature {
    pub fn closed() -> Self {
        BoundarySignature(Vec::new())
    }

    pub fn is_closed(&self) -> bool {
        self.0.is_empty()
    }
}

/// Linear combination of canonical webs. Free loops are multiplied into
/// the coefficients on insertion, so stored webs carry none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebSum {
    signature: BoundarySignature,
    terms: BTreeMap<Web, QScalar>,
    budget: usize,
}

pub(crate) fn loop_factor(loops: [u32; 2]) -> QScalar {
    let mut f = QScalar::one();
    if loops[0] > 0 {
        f = f * delta1().pow(loops[0]);
    }
    if loops[1] > 0 {
        f = f * delta2().pow(loops[1]);
    }
    f
}

impl WebSum {
    pub fn new(signature: BoundarySignature) -> Self {
        WebSum {
            signature,
            terms: BTreeMap::new(),
            budget: DEFAULT_TERM_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn from_web(web: &Web) -> Self {
        let mut s = WebSum::new(BoundarySignature(web.boundary.clone()));
        s.insert(web, QScalar::one())
            .expect("single term fits any budget");
        s
    }

    /// The scalar `c` as a multiple of the empty closed web.
    pub fn scalar(c: QScalar) -> Self {
        let mut s = WebSum::new(BoundarySignature::closed());
        s.insert(&Web::empty(), c)
            .expect("single term fits any budget");
        s
    }

    pub fn signature(&self) -> &BoundarySignature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Web, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, web: &Web) -> QScalar {
        let c = canonicalize(web);
        let mut k = c.clone();
        k.loops = [0, 0];
        let f = loop_factor(c.loops);
        self.terms
            .get(&k)
            .map(|x| x * &f)
            .unwrap_or_else(QScalar::zero)
    }

    /// Add `coef * web`.
    pub fn insert(&mut self, web: &Web, coef: QScalar) -> Result<(), WebError> {
        if web.boundary != self.signature.0 {
            return Err(WebError::SignatureMismatch);
        }
        if coef.is_zero() {
            return Ok(());
        }
        let mut c = canonicalize(web);
        let coef = coef * loop_factor(c.loops);
        c.loops = [0, 0];
        self.insert_canonical(c, coef)
    }

    /// Add a term whose web is already canonical and loop-free.
    pub(crate) fn insert_canonical(&mut self, web: Web, coef: QScalar) -> Result<(), WebError> {
        use std::collections::btree_map::Entry;
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.entry(web) {
            Entry::Occupied(mut o) => {
                let v = o.get() + &coef;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
        if self.terms.len() > self.budget {
            return Err(WebError::TermBudget(self.budget));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &WebSum, coef: &QScalar) -> Result<(), WebError> {
        if other.signature != self.signature {
            return Err(WebError::SignatureMismatch);
        }
        for (w, c) in &other.terms {
            self.insert_canonical(w.clone(), c * coef)?;
        }
        Ok(())
    }

    pub fn scale(&self, coef: &QScalar) -> WebSum {
        let mut out = WebSum::new(self.signature.clone()).with_budget(self.budget);
        if coef.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c * coef))
            .collect();
        out
    }
}
