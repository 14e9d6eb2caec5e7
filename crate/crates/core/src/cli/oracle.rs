use std::io::Write;

use serde::Serialize;

use super::theta::q1_string;
use super::{CliError, Format, OracleArgs};
use crate::qscalar::QScalar;
use crate::webcalc::{parse_web, reduce_closed_with, theta_oracle_with, ReduceOptions, WebSum};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub input: String,
    pub value: QScalar,
    pub q1: Option<String>,
    pub steps: u64,
    pub max_terms: usize,
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = ReduceOptions {
        term_budget: args.term_budget,
        ..Default::default()
    };
    let (input, (value, stats)) = match (&args.web_file, args.a, args.b, args.c) {
        (Some(path), ..) => {
            let web = parse_web(&std::fs::read_to_string(path)?)?;
            if !web.is_closed() {
                return Err(CliError::Usage(format!(
                    "{} is not a closed web",
                    path.display()
                )));
            }
            let ws = WebSum::from_web(&web).with_budget(args.term_budget);
            (path.display().to_string(), reduce_closed_with(&ws, &opts)?)
        }
        (None, Some(a), Some(b), Some(c)) => (
            format!("theta({a},{b},{c})"),
            theta_oracle_with(a, b, c, &opts)?,
        ),
        _ => {
            return Err(CliError::Usage(
                "give --a, --b and --c, or --web-file".into(),
            ))
        }
    };
    let r = OracleReport {
        input,
        q1: q1_string(&value),
        value,
        steps: stats.steps,
        max_terms: stats.max_terms,
    };
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["input", "value", "q1", "steps", "max_terms"])?;
            w.write_record([
                r.input.clone(),
                serde_json::to_string(&r.value)?,
                r.q1.clone().unwrap_or_default(),
                r.steps.to_string(),
                r.max_terms.to_string(),
            ])?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{} = {}", r.input, r.value)?;
            if let Some(l) = &r.q1 {
                writeln!(out, "q -> 1: {l}")?;
            }
            writeln!(out, "steps: {}", r.steps)?;
            writeln!(out, "max terms: {}", r.max_terms)?;
        }
    }
    Ok(())
}
