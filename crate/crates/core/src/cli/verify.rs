use std::io::Write;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{CliError, VerifyArgs};
use crate::netforms::{
    check_nonvanishing, clasp_trace, clasp_trace_recursive, diagram_sign, net_closed, net_ladder,
    theta, tri_to_net, LevelContext, TriLabel,
};
use crate::qscalar::{QScalar, RootContext};
use crate::webcalc::{clasp_trace_oracle, theta_oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Closed form against the ladder recursion.
    Recursion,
    /// Brute-force web reduction against the closed form.
    Oracle,
    /// Clasp traces: recurrence, classical dimension, web reduction.
    Trace,
    /// Certified nonvanishing at the smallest allowed root.
    Theorem9,
    All,
}

impl Suite {
    pub fn default_max_sum(self) -> u32 {
        match self {
            Suite::Recursion => 24,
            Suite::Oracle => 8,
            Suite::Trace => 16,
            Suite::Theorem9 => 16,
            Suite::All => 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub suite: &'static str,
    pub case: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn timed(suite: &'static str, case: String, f: impl FnOnce() -> Result<(), String>) -> CaseResult {
    let t = Instant::now();
    let r = f();
    CaseResult {
        suite,
        case,
        pass: r.is_ok(),
        detail: r.err().unwrap_or_default(),
        elapsed: t.elapsed(),
    }
}

/// Admissible triples with `a+b+c <= s`, all orderings.
fn admissible(s: u32) -> Vec<TriLabel> {
    let mut v = Vec::new();
    for a in 0..=s {
        for b in 0..=s - a {
            for c in 0..=s - a - b {
                let t = TriLabel::new(a, b, c);
                if t.inadmissibility().is_none() {
                    v.push(t);
                }
            }
        }
    }
    v
}

fn signed(x: &QScalar, s: i32) -> QScalar {
    if s < 0 {
        -x
    } else {
        x.clone()
    }
}

fn recursion(s: u32) -> Vec<CaseResult> {
    admissible(s)
        .into_par_iter()
        .map(|t| {
            timed("recursion", t.to_string(), || {
                let n = tri_to_net(t).map_err(|e| e.to_string())?;
                if net_closed(n.m, n.n, n.p) == net_ladder(n.m, n.n, n.p) {
                    Ok(())
                } else {
                    Err(format!(
                        "Net({},{},{}) closed form differs from ladder",
                        n.m, n.n, n.p
                    ))
                }
            })
        })
        .collect()
}

fn oracle(s: u32) -> Vec<CaseResult> {
    admissible(s)
        .into_iter()
        .map(|t| {
            timed("oracle", t.to_string(), || {
                let w = theta_oracle(t.a, t.b, t.c).map_err(|e| e.to_string())?;
                let f = signed(&theta(t).value, diagram_sign(t));
                if w == f {
                    Ok(())
                } else {
                    Err(format!("web value {w} vs closed form {f}"))
                }
            })
        })
        .collect()
}

fn weyl_dim(p: u32) -> BigRational {
    let p = BigInt::from(p);
    BigRational::from_integer((&p + 1) * (&p + 2) * (&p + 3) / 6)
}

fn trace(s: u32) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for p in 1..=s.max(1) {
        out.push(timed("trace", format!("recurrence p={p}"), || {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            if clasp_trace_recursive(p) == signed(&clasp_trace(p), sign) {
                Ok(())
            } else {
                Err("recurrence differs from closed form".into())
            }
        }));
    }
    for p in 0..=s {
        out.push(timed("trace", format!("dimension p={p}"), || {
            let l = clasp_trace(p).limit_q1().map_err(|e| e.to_string())?;
            if l == weyl_dim(p) {
                Ok(())
            } else {
                Err(format!("limit {l} vs {}", weyl_dim(p)))
            }
        }));
    }
    for p in 1..=s.min(4) {
        out.push(timed("trace", format!("web p={p}"), || {
            let w = clasp_trace_oracle(p as usize).map_err(|e| e.to_string())?;
            let sign = if p % 2 == 0 { 1 } else { -1 };
            if w == signed(&clasp_trace(p), sign) {
                Ok(())
            } else {
                Err(format!("web trace {w}"))
            }
        }));
    }
    out
}

fn nonvanishing(s: u32) -> Vec<CaseResult> {
    admissible(s)
        .into_par_iter()
        .map(|t| {
            let level = LevelContext::smallest_above(2 * t.sum() as u64 + 4);
            timed("theorem9", format!("{t} N={}", level.order_n()), || {
                let ctx = RootContext::from_env(level.order_n()).map_err(|e| e.to_string())?;
                let r = check_nonvanishing(t, &ctx).map_err(|e| e.to_string())?;
                if r.nonzero && r.value.abs() > 2.0 * r.value.error_bound {
                    Ok(())
                } else {
                    Err(format!(
                        "|theta| = {} with error {}",
                        r.value.abs(),
                        r.value.error_bound
                    ))
                }
            })
        })
        .collect()
}

pub fn run_suite(suite: Suite, max_sum: u32) -> Vec<CaseResult> {
    match suite {
        Suite::Recursion => recursion(max_sum),
        Suite::Oracle => oracle(max_sum),
        Suite::Trace => trace(max_sum),
        Suite::Theorem9 => nonvanishing(max_sum),
        Suite::All => [
            Suite::Recursion,
            Suite::Oracle,
            Suite::Trace,
            Suite::Theorem9,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, max_sum))
        .collect(),
    }
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s = args.max_sum.unwrap_or(args.suite.default_max_sum());
    let results = run_suite(args.suite, s);
    let mut failed = 0;
    for r in &results {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        write!(
            out,
            "{tag} {} {} {:.3}ms",
            r.suite,
            r.case,
            r.elapsed.as_secs_f64() * 1e3
        )?;
        if r.pass {
            writeln!(out)?;
        } else {
            failed += 1;
            writeln!(out, "  {}", r.detail)?;
        }
    }
    writeln!(out, "{} passed, {failed} failed", results.len() - failed)?;
    if failed > 0 {
        return Err(CliError::VerifyFailed {
            failed,
            total: results.len(),
        });
    }
    Ok(())
}
