//! Clasp expansions as sums of webs between `n` bottom and `n` top points.
//!
//! A web with `k` bottom and `l` top points has boundary indices
//! `0..k` for the bottom (left to right) and `k+l-1-j` for top point `j`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use super::reduce::{ReduceOptions, Reducer};
use super::web::{glue, End, PortRef, Strand, VertexKind, Web};
use super::websum::{BoundarySignature, WebSum};
use super::WebError;
use crate::netforms::{alpha, beta};
use crate::qscalar::{q, QScalar};

pub fn identity(n: usize, t: Strand) -> Web {
    Web {
        boundary: vec![t; 2 * n],
        bnd: (0..2 * n).map(|i| End::B((2 * n - 1 - i) as u32)).collect(),
        ..Web::default()
    }
}

/// Cap on the two bottom points and cup on the two top points.
pub fn turnback(t: Strand) -> Web {
    Web {
        boundary: vec![t; 4],
        bnd: vec![End::B(1), End::B(0), End::B(3), End::B(2)],
        ..Web::default()
    }
}

/// Tetravalent vertex between two single strands.
pub fn crossing_x() -> Web {
    Web {
        kinds: vec![VertexKind::Tetravalent],
        adj: vec![(0..4).map(End::B).collect()],
        boundary: vec![Strand::Single; 4],
        bnd: (0..4).map(|s| End::V(0, s)).collect(),
        loops: [0, 0],
    }
}

/// Square of single edges with a trivalent vertex at each corner, the
/// double legs running to the four boundary points.
pub fn square() -> Web {
    use End::{B, V};
    Web {
        kinds: vec![VertexKind::Trivalent; 4],
        adj: vec![
            vec![V(1, 1), V(3, 0), B(0)],
            vec![V(2, 1), V(0, 0), B(1)],
            vec![V(3, 1), V(1, 0), B(2)],
            vec![V(0, 1), V(2, 0), B(3)],
        ],
        boundary: vec![Strand::Double; 4],
        bnd: (0..4).map(|v| V(v, 2)).collect(),
        loops: [0, 0],
    }
}

/// `upper ∘ lower`, with `mid` points between them.
pub fn compose(upper: &Web, lower: &Web, mid: usize) -> Result<Web, WebError> {
    let k = lower.boundary.len() - mid;
    let r = upper.boundary.len() - mid;
    let joins: Vec<(PortRef, PortRef)> = (0..mid).map(|j| ((0, k + mid - 1 - j), (1, j))).collect();
    let mut outer: Vec<PortRef> = (0..k).map(|i| (0, i)).collect();
    outer.extend((mid..mid + r).map(|i| (1, i)));
    glue(&[lower, upper], &joins, &outer)
}

/// Side by side, `a` on the left.
pub fn tensor(a: &Web, ka: usize, b: &Web, kb: usize) -> Result<Web, WebError> {
    let la = a.boundary.len() - ka;
    let lb = b.boundary.len() - kb;
    let mut outer: Vec<PortRef> = (0..ka).map(|i| (0, i)).collect();
    outer.extend((0..kb).map(|i| (1, i)));
    outer.extend((kb..kb + lb).map(|i| (1, i)));
    outer.extend((ka..ka + la).map(|i| (0, i)));
    glue(&[a, b], &[], &outer)
}

fn reduce_terms(
    terms: Vec<(QScalar, Web)>,
    sig: BoundarySignature,
    opts: &ReduceOptions,
) -> Result<WebSum, WebError> {
    let parts: Vec<Result<WebSum, WebError>> = terms
        .par_chunks(64.max(terms.len() / (4 * rayon::current_num_threads()).max(1)))
        .map(|chunk| {
            let mut r = Reducer::new(opts.clone());
            let mut acc = WebSum::new(sig.clone()).with_budget(opts.term_budget);
            for (c, w) in chunk {
                acc.add_scaled(&r.reduce_open(w)?, c)?;
            }
            Ok(acc)
        })
        .collect();
    let mut out = WebSum::new(sig).with_budget(opts.term_budget);
    for p in parts {
        out.add_scaled(&p?, &QScalar::one())?;
    }
    Ok(out)
}

/// `upper ∘ lower` on sums, reduced.
pub fn compose_sums(
    upper: &WebSum,
    lower: &WebSum,
    mid: usize,
    opts: &ReduceOptions,
) -> Result<WebSum, WebError> {
    let mut terms = Vec::with_capacity(upper.len() * lower.len());
    for (u, cu) in upper.terms() {
        for (l, cl) in lower.terms() {
            terms.push((cu * cl, compose(u, l, mid)?));
        }
    }
    if terms.len() > opts.term_budget {
        return Err(WebError::TermBudget(opts.term_budget));
    }
    let sig = match terms.first() {
        Some((_, w)) => BoundarySignature(w.boundary.clone()),
        None => {
            let k = lower.signature().0.len() - mid;
            let mut s = lower.signature().0[..k].to_vec();
            s.extend_from_slice(&upper.signature().0[mid..]);
            BoundarySignature(s)
        }
    };
    reduce_terms(terms, sig, opts)
}

fn tensor_strand(ws: &WebSum, n: usize, t: Strand) -> Result<WebSum, WebError> {
    let id = identity(1, t);
    let mut out: Option<WebSum> = None;
    for (w, c) in ws.terms() {
        let g = tensor(w, n, &id, 1)?;
        let o = out.get_or_insert_with(|| {
            WebSum::new(BoundarySignature(g.boundary.clone())).with_budget(ws.budget())
        });
        o.insert(&g, c.clone())?;
    }
    Ok(out.unwrap_or_else(|| WebSum::new(BoundarySignature(vec![t; 2 * (n + 1)]))))
}

fn local(n: usize, gadget: &Web, t: Strand) -> Result<WebSum, WebError> {
    let w = tensor(&identity(n - 2, t), n - 2, gadget, 2)?;
    Ok(WebSum::from_web(&w))
}

/// Coefficients for the double-strand recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubleCoeffs {
    /// Turnback coefficient `[2n-1][2n-2]/([2n+1][2])` as drawn.
    AsDrawn,
    /// Turnback coefficient `[2n-1][2n-2]/([2n+1][2n])`, which makes the
    /// result annihilate turnbacks and squares.
    Corrected,
}

type ClaspKey = (Strand, DoubleCoeffs, usize, usize);

fn clasp_cache() -> &'static Mutex<HashMap<ClaspKey, WebSum>> {
    static C: OnceLock<Mutex<HashMap<ClaspKey, WebSum>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// One step of the clasp recursion:
/// `P_n = P' + c1 * P' E P' + c2 * P' G P'` with `P' = P_{n-1} ⊗ 1`.
fn recurse(
    prev: &WebSum,
    n: usize,
    t: Strand,
    gadget: &Web,
    c1: &QScalar,
    c2: &QScalar,
    opts: &ReduceOptions,
) -> Result<WebSum, WebError> {
    let q1 = tensor_strand(prev, n - 1, t)?;
    let mut out = q1.clone().with_budget(opts.term_budget);
    for (c, g) in [(c1, turnback(t)), (c2, gadget.clone())] {
        if c.is_zero() {
            continue;
        }
        let mid = compose_sums(&local(n, &g, t)?, &q1, n, opts)?;
        let full = compose_sums(&q1, &mid, n, opts)?;
        out.add_scaled(&full, c)?;
    }
    Ok(out)
}

fn expand(t: Strand, dc: DoubleCoeffs, n: usize, opts: &ReduceOptions) -> Result<WebSum, WebError> {
    let key = (t, dc, n, opts.term_budget);
    if let Some(v) = clasp_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = match n {
        0 => WebSum::from_web(&Web::empty()),
        1 => WebSum::from_web(&identity(1, t)),
        _ => {
            let prev = expand(t, dc, n - 1, opts)?;
            let ni = n as i64;
            let (c1, c2, gadget) = match t {
                Strand::Single => (alpha(n as u32), beta(n as u32), crossing_x()),
                Strand::Double => (
                    q(2 * ni - 1) * q(2 * ni - 2)
                        / (q(2 * ni + 1)
                            * match dc {
                                DoubleCoeffs::AsDrawn => q(2),
                                DoubleCoeffs::Corrected => q(2 * ni),
                            }),
                    q(2 * ni - 2) / (q(2 * ni) * q(2) * q(2)),
                    square(),
                ),
            };
            recurse(&prev, n, t, &gadget, &c1, &c2, opts)?
        }
    };
    clasp_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Full expansion of the clasp on `n` single strands.
pub fn expand_clasp_single(n: usize) -> Result<WebSum, WebError> {
    expand(
        Strand::Single,
        DoubleCoeffs::AsDrawn,
        n,
        &ReduceOptions::default(),
    )
}

pub fn expand_clasp_single_with(n: usize, opts: &ReduceOptions) -> Result<WebSum, WebError> {
    expand(Strand::Single, DoubleCoeffs::AsDrawn, n, opts)
}

/// Expansion on `n` double strands with the coefficients as drawn. For
/// `n >= 2` this is not idempotent; see [`DoubleCoeffs`].
pub fn expand_clasp_double(n: usize) -> Result<WebSum, WebError> {
    expand(
        Strand::Double,
        DoubleCoeffs::AsDrawn,
        n,
        &ReduceOptions::default(),
    )
}

/// The double-strand clasp.
pub fn expand_clasp_double_corrected(n: usize) -> Result<WebSum, WebError> {
    expand(
        Strand::Double,
        DoubleCoeffs::Corrected,
        n,
        &ReduceOptions::default(),
    )
}

pub fn expand_clasp_double_with(
    n: usize,
    coeffs: DoubleCoeffs,
    opts: &ReduceOptions,
) -> Result<WebSum, WebError> {
    expand(Strand::Double, coeffs, n, opts)
}

/// Cap the last two top points and the last two bottom points of a sum on
/// `n` strands and join the rest straight through.
pub fn last_pair_witness(ws: &WebSum, n: usize) -> Result<QScalar, WebError> {
    let top = |j: usize| 2 * n - 1 - j;
    let mut pairs = vec![(top(n - 1), top(n - 2)), (n - 2, n - 1)];
    pairs.extend((0..n - 2).map(|i| (i, top(i))));
    Reducer::default().reduce_closed(&close_with(ws, &pairs)?)
}

/// Close a sum with `pairs` of boundary points joined by strands.
pub fn close_with(ws: &WebSum, pairs: &[(usize, usize)]) -> Result<WebSum, WebError> {
    let sig = &ws.signature().0;
    let cap = Web {
        boundary: sig.clone(),
        bnd: {
            let mut b = vec![End::B(0); sig.len()];
            for &(x, y) in pairs {
                b[x] = End::B(y as u32);
                b[y] = End::B(x as u32);
            }
            b
        },
        ..Web::default()
    };
    let joins: Vec<(PortRef, PortRef)> = (0..sig.len()).map(|i| ((0, i), (1, i))).collect();
    let mut out = WebSum::new(BoundarySignature::closed()).with_budget(ws.budget());
    for (w, c) in ws.terms() {
        out.insert(&glue(&[w, &cap], &joins, &[])?, c.clone())?;
    }
    Ok(out)
}

/// Pairs for the trace closure of an `n`-to-`n` morphism.
pub fn trace_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, 2 * n - 1 - i)).collect()
}

pub fn clasp_trace_oracle(n: usize) -> Result<QScalar, WebError> {
    let p = expand_clasp_single(n)?;
    Reducer::default().reduce_closed(&close_with(&p, &trace_pairs(n))?)
}

/// Trace of `P_n ∘ P_n`.
pub fn clasp_square_trace(n: usize) -> Result<QScalar, WebError> {
    let p = expand_clasp_single(n)?;
    let opts = ReduceOptions::default();
    let pp = compose_sums(&p, &p, n, &opts)?;
    Reducer::default().reduce_closed(&close_with(&pp, &trace_pairs(n))?)
}

/// Cap the top points `0` and `1` of `P_n` and close the remaining points
/// with nested arcs. Zero for a genuine clasp.
pub fn annihilation_witness(n: usize) -> Result<QScalar, WebError> {
    let p = expand_clasp_single(n)?;
    let top = |j: usize| 2 * n - 1 - j;
    let mut pairs = vec![(top(1), top(0))];
    // boundary indices 0 .. 2n-2 remain, counter-clockwise
    let rest: Vec<usize> = (0..2 * n - 2).collect();
    let m = rest.len();
    for i in 0..m / 2 {
        pairs.push((rest[i], rest[m - 1 - i]));
    }
    Reducer::default().reduce_closed(&close_with(&p, &pairs)?)
}
