use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::theta::q1_string;
use super::{resolve_level, CliError, TableArgs, TableFormat};
use crate::netforms::{
    admissible_generic, admissible_level, negligible, theta, LevelContext, TriLabel,
};
use crate::qscalar::{QScalar, RootContext, RootValue};

/// One line of a level table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub admissible_generic: bool,
    pub admissible_level: bool,
    pub negligible_any_clasp: bool,
    pub theta_exact: QScalar,
    /// Absent when a denominator vanishes at the root.
    pub theta_at_root: Option<RootValue>,
    pub theta_q1: Option<String>,
    pub nonzero_certified: bool,
}

fn row(t: TriLabel, level: LevelContext, root: &RootContext) -> TableRow {
    let v = theta(t).value;
    let at_root = root.eval(&v).ok().map(|b| b.to_value());
    let nonzero_certified = !v.is_zero()
        && match root.certify_nonzero(&v) {
            Ok(c) => c.value.abs() > 2.0 * c.value.error_bound,
            Err(_) => false,
        };
    TableRow {
        a: t.a,
        b: t.b,
        c: t.c,
        k: level.k,
        n: level.order_n(),
        admissible_generic: admissible_generic(t),
        admissible_level: admissible_level(t, level),
        negligible_any_clasp: [t.a, t.b, t.c].into_iter().any(|p| negligible(p, level)),
        theta_q1: q1_string(&v),
        theta_exact: v,
        theta_at_root: at_root,
        nonzero_certified,
    }
}

/// Rows for `a <= b <= c`, `a+b+c <= max_sum`, in lexicographic order.
pub fn table_rows(max_sum: u32, level: LevelContext, root: &RootContext) -> Vec<TableRow> {
    let mut triples = Vec::new();
    for a in 0..=max_sum {
        for b in a..=max_sum - a {
            for c in b..=max_sum - a - b {
                triples.push(TriLabel::new(a, b, c));
            }
        }
    }
    triples.par_iter().map(|t| row(*t, level, root)).collect()
}

const CSV_HEADER: [&str; 14] = [
    "a",
    "b",
    "c",
    "k",
    "N",
    "admissible_generic",
    "admissible_level",
    "negligible_any_clasp",
    "theta_exact",
    "theta_at_root_re",
    "theta_at_root_im",
    "theta_at_root_error_bound",
    "theta_q1",
    "nonzero_certified",
];

/// Shortest round-trip form, with an exponent for tiny values.
pub(crate) fn float(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

fn write_csv(rows: &[TableRow], w: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let root = |f: fn(&RootValue) -> f64| {
            r.theta_at_root
                .as_ref()
                .map(|v| float(f(v)))
                .unwrap_or_default()
        };
        w.write_record([
            r.a.to_string(),
            r.b.to_string(),
            r.c.to_string(),
            r.k.to_string(),
            r.n.to_string(),
            r.admissible_generic.to_string(),
            r.admissible_level.to_string(),
            r.negligible_any_clasp.to_string(),
            serde_json::to_string(&r.theta_exact)?,
            root(|v| v.re),
            root(|v| v.im),
            root(|v| v.error_bound),
            r.theta_q1.clone().unwrap_or_default(),
            r.nonzero_certified.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (level, n) = resolve_level(Some(args.level), args.at_root)?;
    let (level, n) = (level.unwrap(), n.unwrap());
    let root = RootContext::from_env(n)?;
    let rows = table_rows(args.max_sum, level, &root);
    let mut f = BufWriter::new(File::create(&args.out)?);
    match args.format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut f, &rows)?;
            writeln!(f)?;
        }
        TableFormat::Csv => write_csv(&rows, &mut f)?,
    }
    f.flush()?;
    writeln!(out, "wrote {} rows to {}", rows.len(), args.out.display())?;
    Ok(())
}
