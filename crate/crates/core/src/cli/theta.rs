use std::io::Write;

use serde::Serialize;

use super::table::float;
use super::{resolve_level, CliError, Format, ThetaArgs};
use crate::netforms::{admissible_generic, admissible_level, theta, TriLabel};
use crate::qscalar::{QScalar, RootContext, RootValue};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub admissible_generic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub order_n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible_level: Option<bool>,
    /// Reason for a tagged zero.
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<QScalar>,
    pub q1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_root: Option<RootValue>,
}

pub(crate) fn q1_string(x: &QScalar) -> Option<String> {
    x.limit_q1().ok().map(|r| r.to_string())
}

fn report(args: &ThetaArgs) -> Result<ThetaReport, CliError> {
    let (level, order) = resolve_level(args.level, args.at_root)?;
    let t = TriLabel::new(args.a, args.b, args.c);
    let v = theta(t);
    let at_root = match order {
        Some(n) if !args.q1 => Some(RootContext::from_env(n)?.eval(&v.value)?.to_value()),
        _ => None,
    };
    Ok(ThetaReport {
        a: t.a,
        b: t.b,
        c: t.c,
        admissible_generic: admissible_generic(t),
        k: level.map(|l| l.k),
        order_n: order,
        admissible_level: level.map(|l| admissible_level(t, l)),
        reason: v.inadmissible.map(|r| r.as_str().to_string()),
        exact: (!args.q1).then(|| v.value.clone()),
        q1: q1_string(&v.value),
        at_root,
    })
}

pub fn cmd_theta(args: &ThetaArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let r = report(args)?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "a",
                "b",
                "c",
                "admissible_generic",
                "k",
                "N",
                "admissible_level",
                "reason",
                "exact",
                "q1",
                "re",
                "im",
                "error_bound",
            ])?;
            let opt = |x: Option<String>| x.unwrap_or_default();
            w.write_record([
                r.a.to_string(),
                r.b.to_string(),
                r.c.to_string(),
                r.admissible_generic.to_string(),
                opt(r.k.map(|k| k.to_string())),
                opt(r.order_n.map(|n| n.to_string())),
                opt(r.admissible_level.map(|b| b.to_string())),
                opt(r.reason.clone()),
                opt(r.exact.as_ref().map(serde_json::to_string).transpose()?),
                opt(r.q1.clone()),
                opt(r.at_root.map(|v| float(v.re))),
                opt(r.at_root.map(|v| float(v.im))),
                opt(r.at_root.map(|v| float(v.error_bound))),
            ])?;
            w.flush()?;
        }
        Format::Text => {
            if args.q1 {
                writeln!(out, "{}", r.q1.as_deref().unwrap_or("divergent"))?;
            } else {
                writeln!(
                    out,
                    "theta({},{},{}) = {}",
                    r.a,
                    r.b,
                    r.c,
                    r.exact.as_ref().unwrap()
                )?;
                if let Some(l) = &r.q1 {
                    writeln!(out, "q -> 1: {l}")?;
                }
                if let (Some(n), Some(v)) = (r.order_n, r.at_root) {
                    writeln!(
                        out,
                        "at N = {n}: {} + {}i (error <= {:e})",
                        v.re, v.im, v.error_bound
                    )?;
                }
            }
            match &r.reason {
                Some(why) => writeln!(out, "inadmissible: {why}")?,
                None => writeln!(out, "admissible")?,
            }
            if let (Some(k), Some(b)) = (r.k, r.admissible_level) {
                writeln!(out, "admissible at level {k}: {b}")?;
            }
        }
    }
    Ok(())
}
