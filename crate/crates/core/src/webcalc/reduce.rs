use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::canon::{canonical_connected, canonicalize};
use super::rules::{apply, first_site, sites, small_faces, Site};
use super::web::{VertexKind, Web};
use super::websum::{loop_factor, WebSum, DEFAULT_TERM_BUDGET};
use super::WebError;
use crate::qscalar::QScalar;

type ClosedMemo = Arc<RwLock<HashMap<Web, QScalar>>>;

fn global_memo() -> ClosedMemo {
    static M: OnceLock<ClosedMemo> = OnceLock::new();
    M.get_or_init(Default::default).clone()
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    /// Share evaluated closed components across calls.
    pub memo: bool,
    /// Pick rewrite sites at random with this seed instead of the fixed order.
    pub seed: Option<u64>,
    pub term_budget: usize,
    /// Keep a record of every rewrite.
    pub log: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            memo: true,
            seed: None,
            term_budget: DEFAULT_TERM_BUDGET,
            log: false,
        }
    }
}

impl ReduceOptions {
    pub fn randomized(seed: u64) -> Self {
        ReduceOptions {
            memo: false,
            seed: Some(seed),
            ..Default::default()
        }
    }
}

/// One rewrite: the measure `(faces, vertices, edges)` before, and after for
/// each produced term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: &'static str,
    pub before: (i64, i64, i64),
    pub after: Vec<(i64, i64, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReduceStats {
    pub steps: u64,
    /// Largest number of terms alive in one sum.
    pub max_terms: usize,
    pub memo_hits: u64,
}

/// Rewriting engine for closed and open webs.
pub struct Reducer {
    opts: ReduceOptions,
    closed: Option<ClosedMemo>,
    open: HashMap<Web, WebSum>,
    rng: Option<ChaCha8Rng>,
    pub stats: ReduceStats,
    pub log: Vec<Step>,
}

impl Default for Reducer {
    fn default() -> Self {
        Reducer::new(ReduceOptions::default())
    }
}

fn rule_name(site: &Site) -> &'static str {
    match site {
        Site::DoubleEdge(..) => "double-edge",
        Site::Face(f) => match f.len() {
            1 => "monogon",
            2 => "bigon",
            _ => "triangle",
        },
    }
}

impl Reducer {
    pub fn new(opts: ReduceOptions) -> Self {
        Reducer {
            closed: opts.memo.then(global_memo),
            rng: opts.seed.map(ChaCha8Rng::seed_from_u64),
            opts,
            open: HashMap::new(),
            stats: ReduceStats::default(),
            log: Vec::new(),
        }
    }

    pub fn options(&self) -> &ReduceOptions {
        &self.opts
    }

    fn pick(&mut self, web: &Web) -> Option<Site> {
        match &mut self.rng {
            None => first_site(web),
            Some(rng) => sites(web).choose(rng).cloned(),
        }
    }

    fn rewrite(&mut self, web: &Web, site: &Site) -> Result<Vec<(QScalar, Web)>, WebError> {
        let terms = apply(web, site)?;
        let before = web.measure();
        let after: Vec<_> = terms.iter().map(|(_, w)| w.measure()).collect();
        if let Some(bad) = after.iter().find(|m| **m >= before) {
            return Err(WebError::MeasureIncrease {
                before,
                after: *bad,
            });
        }
        self.stats.steps += 1;
        if self.opts.log {
            self.log.push(Step {
                rule: rule_name(site),
                before,
                after,
            });
        }
        Ok(terms)
    }

    /// Value of a closed web.
    pub fn eval(&mut self, web: &Web) -> Result<QScalar, WebError> {
        if !web.is_closed() {
            return Err(WebError::NotClosed);
        }
        let (_, comps, loops) = web.split();
        let mut acc = loop_factor(loops);
        for c in comps {
            if acc.is_zero() {
                break;
            }
            acc = acc * self.eval_connected(&c)?;
        }
        Ok(acc)
    }

    fn eval_connected(&mut self, web: &Web) -> Result<QScalar, WebError> {
        let key = if let Some(memo) = &self.closed {
            let k = canonical_connected(web);
            if let Some(v) = memo.read().unwrap().get(&k) {
                self.stats.memo_hits += 1;
                return Ok(v.clone());
            }
            Some(k)
        } else {
            None
        };
        let w = key.as_ref().unwrap_or(web);
        if w.kinds.iter().all(|k| *k == VertexKind::Tetravalent) && small_faces(w).is_empty() {
            return Err(WebError::Stuck(format!(
                "{} vertices and no face with fewer than four sides",
                w.kinds.len()
            )));
        }
        let site = self.pick(w).ok_or_else(|| {
            WebError::Stuck(format!(
                "no rule applies to a web with {} vertices",
                w.kinds.len()
            ))
        })?;
        let terms = self.rewrite(w, &site)?;
        self.stats.max_terms = self.stats.max_terms.max(terms.len());
        let mut acc = QScalar::zero();
        for (c, t) in terms {
            let v = self.eval(&t)?;
            acc = acc + c * v;
        }
        if let (Some(k), Some(m)) = (key, &self.closed) {
            m.write().unwrap().insert(k, acc.clone());
        }
        Ok(acc)
    }

    /// Value of a closed sum.
    pub fn reduce_closed(&mut self, ws: &WebSum) -> Result<QScalar, WebError> {
        if !ws.signature().is_closed() {
            return Err(WebError::NotClosed);
        }
        self.stats.max_terms = self.stats.max_terms.max(ws.len());
        let mut acc = QScalar::zero();
        for (w, c) in ws.terms() {
            acc = acc + c * self.eval(w)?;
        }
        Ok(acc)
    }

    /// Rewrite every face and double edge away from the boundary, and
    /// evaluate closed components.
    pub fn reduce_open(&mut self, web: &Web) -> Result<WebSum, WebError> {
        let (open, comps, loops) = web.split();
        let mut scalar = loop_factor(loops);
        for c in comps {
            if scalar.is_zero() {
                break;
            }
            scalar = scalar * self.eval_connected(&c)?;
        }
        let sig = super::websum::BoundarySignature(web.boundary.clone());
        let mut out = WebSum::new(sig).with_budget(self.opts.term_budget);
        let Some(open) = open else {
            out.insert(&Web::empty(), scalar)?;
            return Ok(out);
        };
        if scalar.is_zero() {
            return Ok(out);
        }
        let part = self.reduce_open_part(&canonicalize(&open))?;
        out.add_scaled(&part, &scalar)?;
        Ok(out)
    }

    fn reduce_open_part(&mut self, web: &Web) -> Result<WebSum, WebError> {
        let memo = self.rng.is_none();
        if memo {
            if let Some(v) = self.open.get(web) {
                return Ok(v.clone());
            }
        }
        let sig = super::websum::BoundarySignature(web.boundary.clone());
        let mut out = WebSum::new(sig).with_budget(self.opts.term_budget);
        match self.pick(web) {
            None => out.insert(web, QScalar::one())?,
            Some(site) => {
                for (c, t) in self.rewrite(web, &site)? {
                    let sub = self.reduce_open(&t)?;
                    out.add_scaled(&sub, &c)?;
                }
            }
        }
        self.stats.max_terms = self.stats.max_terms.max(out.len());
        if memo {
            self.open.insert(web.clone(), out.clone());
        }
        Ok(out)
    }

    /// Reduce every term of an open sum.
    pub fn reduce_sum(&mut self, ws: &WebSum) -> Result<WebSum, WebError> {
        let mut out = WebSum::new(ws.signature().clone()).with_budget(self.opts.term_budget);
        for (w, c) in ws.terms() {
            let r = self.reduce_open(w)?;
            out.add_scaled(&r, c)?;
        }
        self.stats.max_terms = self.stats.max_terms.max(out.len());
        Ok(out)
    }
}

/// Value of a closed sum, terms reduced in parallel and summed in order.
pub fn reduce_closed_with(
    ws: &WebSum,
    opts: &ReduceOptions,
) -> Result<(QScalar, ReduceStats), WebError> {
    use rayon::prelude::*;
    if !ws.signature().is_closed() {
        return Err(WebError::NotClosed);
    }
    let terms: Vec<(&Web, &QScalar)> = ws.terms().collect();
    let chunk = 16.max(terms.len() / (4 * rayon::current_num_threads()).max(1));
    let parts: Vec<Result<(QScalar, ReduceStats), WebError>> = terms
        .par_chunks(chunk)
        .enumerate()
        .map(|(i, ch)| {
            let mut o = opts.clone();
            o.seed = opts.seed.map(|s| s.wrapping_add(i as u64));
            let mut r = Reducer::new(o);
            let mut acc = QScalar::zero();
            for (w, c) in ch {
                acc = acc + *c * r.eval(w)?;
            }
            Ok((acc, r.stats))
        })
        .collect();
    let mut total = QScalar::zero();
    let mut stats = ReduceStats {
        max_terms: ws.len(),
        ..Default::default()
    };
    for p in parts {
        let (v, s) = p?;
        total = total + v;
        stats.steps += s.steps;
        stats.memo_hits += s.memo_hits;
        stats.max_terms = stats.max_terms.max(s.max_terms);
    }
    Ok((total, stats))
}
