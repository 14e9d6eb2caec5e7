//! Theta webs: three clasps `P_a`, `P_b`, `P_c` side by side, with `m`
//! strands between the first two, `n` between the last two and `p`
//! around the outside, on top and bottom alike.

use rayon::prelude::*;

use super::clasp::expand_clasp_single_with;
use super::reduce::{reduce_closed_with, ReduceOptions, ReduceStats, Reducer};
use super::web::{glue, PortRef};
use super::websum::{BoundarySignature, WebSum};
use super::WebError;
use crate::netforms::{tri_to_net, NetError, TriLabel};
use crate::qscalar::QScalar;

fn bundles(a: u32, b: u32, c: u32) -> Result<(usize, usize, usize), WebError> {
    let t = TriLabel::new(a, b, c);
    match tri_to_net(t) {
        Ok(s) => Ok((s.m as usize, s.n as usize, s.p as usize)),
        Err(NetError::Inadmissible(t, why)) => Err(WebError::Inadmissible(t, why)),
        Err(e) => unreachable!("{e}"),
    }
}

fn glue_all(
    x: &WebSum,
    y: &WebSum,
    joins: &[(PortRef, PortRef)],
    outer: &[PortRef],
    opts: &ReduceOptions,
    reduce: bool,
) -> Result<WebSum, WebError> {
    let mut pairs = Vec::with_capacity(x.len() * y.len());
    for (u, cu) in x.terms() {
        for (v, cv) in y.terms() {
            pairs.push((u, cu, v, cv));
        }
    }
    if pairs.len() > opts.term_budget {
        return Err(WebError::TermBudget(opts.term_budget));
    }
    let sig = BoundarySignature(
        outer
            .iter()
            .map(|&(p, i)| {
                if p == 0 {
                    x.signature().0[i]
                } else {
                    y.signature().0[i]
                }
            })
            .collect(),
    );
    let chunk = 32.max(pairs.len() / (4 * rayon::current_num_threads()).max(1));
    let parts: Vec<Result<WebSum, WebError>> = pairs
        .par_chunks(chunk)
        .map(|ch| {
            let mut r = Reducer::new(opts.clone());
            let mut acc = WebSum::new(sig.clone()).with_budget(opts.term_budget);
            for (u, cu, v, cv) in ch {
                let g = glue(&[u, v], joins, outer)?;
                let c = *cu * *cv;
                if reduce {
                    acc.add_scaled(&r.reduce_open(&g)?, &c)?;
                } else {
                    acc.insert(&g, c)?;
                }
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

/// The closed theta sum. The first two clasps are glued and reduced before
/// the third is attached.
pub fn glue_theta(a: u32, b: u32, c: u32) -> Result<WebSum, WebError> {
    glue_theta_with(a, b, c, &ReduceOptions::default())
}

pub fn glue_theta_with(a: u32, b: u32, c: u32, opts: &ReduceOptions) -> Result<WebSum, WebError> {
    let (m, n, p) = bundles(a, b, c)?;
    let (a, b, c) = (a as usize, b as usize, c as usize);
    let pa = expand_clasp_single_with(a, opts)?;
    let pb = expand_clasp_single_with(b, opts)?;
    let pc = expand_clasp_single_with(c, opts)?;
    let top = |size: usize, j: usize| 2 * size - 1 - j;

    // P_a and P_b joined along m strands above and below.
    let mut joins = Vec::new();
    for r in 0..m {
        joins.push(((0, top(a, p + m - 1 - r)), (1, top(b, r))));
        joins.push(((0, p + m - 1 - r), (1, r)));
    }
    let mut outer: Vec<PortRef> = (0..p).map(|i| (0, i)).collect();
    outer.extend((m..m + n).map(|i| (1, i)));
    outer.extend((m..m + n).rev().map(|j| (1, top(b, j))));
    outer.extend((0..p).rev().map(|j| (0, top(a, j))));
    let ab = glue_all(&pa, &pb, &joins, &outer, opts, true)?;

    // Indices on the combined boundary: bottoms of P_a, bottoms of P_b,
    // tops of P_b, tops of P_a.
    let mut joins = Vec::new();
    for r in 0..n {
        joins.push(((0, p + n + r), (1, top(c, r))));
        joins.push(((0, p + n - 1 - r), (1, r)));
    }
    for r in 0..p {
        joins.push(((0, p + 2 * n + r), (1, top(c, n + r))));
        joins.push(((0, p - 1 - r), (1, n + r)));
    }
    glue_all(&ab, &pc, &joins, &[], opts, false)
}

/// Diagrammatic theta value by brute-force reduction.
pub fn theta_oracle(a: u32, b: u32, c: u32) -> Result<QScalar, WebError> {
    theta_oracle_with(a, b, c, &ReduceOptions::default()).map(|r| r.0)
}

pub fn theta_oracle_with(
    a: u32,
    b: u32,
    c: u32,
    opts: &ReduceOptions,
) -> Result<(QScalar, ReduceStats), WebError> {
    let ws = glue_theta_with(a, b, c, opts)?;
    reduce_closed_with(&ws, opts)
}
