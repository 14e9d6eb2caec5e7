//! Planar webs and a brute-force reduction engine.
//!
//! Webs are rotation systems with typed half-edges. Closed webs are
//! evaluated by converting every double edge into the tetravalent basis
//! and then removing faces with fewer than four sides, which always exist
//! in a closed tetravalent web. See [`rules`](self) for the rewrite rules.

mod canon;
mod clasp;
mod dump;
mod reduce;
mod rules;
mod theta;
mod web;
mod websum;

use thiserror::Error;

use crate::netforms::{Inadmissible, TriLabel};
use crate::qscalar::QScalar;

pub use canon::canonicalize;
pub use clasp::{
    annihilation_witness, clasp_square_trace, clasp_trace_oracle, close_with, compose,
    compose_sums, crossing_x, expand_clasp_double, expand_clasp_double_corrected,
    expand_clasp_double_with, expand_clasp_single, expand_clasp_single_with, identity,
    last_pair_witness, square, tensor, trace_pairs, turnback, DoubleCoeffs,
};
pub use dump::{dump_web, parse_web, BoundaryDump, LoopDump, VertexDump, WebDump};
pub use reduce::{reduce_closed_with, ReduceOptions, ReduceStats, Reducer, Step};
pub use theta::{glue_theta, glue_theta_with, theta_oracle, theta_oracle_with};
pub use web::{glue, End, PortRef, Strand, VertexKind, Web};
pub use websum::{BoundarySignature, WebSum, DEFAULT_TERM_BUDGET};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WebError {
    #[error("malformed web: {0}")]
    Malformed(String),
    #[error("embedding is not planar: V={v}, E={e}, F={f}")]
    NotPlanar { v: i64, e: i64, f: i64 },
    #[error("cannot glue: {0}")]
    Glue(String),
    #[error("non-closed input")]
    NotClosed,
    #[error("boundary signatures differ")]
    SignatureMismatch,
    #[error("stuck state: {0}")]
    Stuck(String),
    #[error("rewrite did not decrease the measure: {before:?} -> {after:?}")]
    MeasureIncrease {
        before: (i64, i64, i64),
        after: (i64, i64, i64),
    },
    #[error("term budget exceeded ({0} terms)")]
    TermBudget(usize),
    #[error("inadmissible triple {0}: {1}")]
    Inadmissible(TriLabel, Inadmissible),
}

/// Value of a closed sum with default options.
pub fn reduce_closed(ws: &WebSum) -> Result<QScalar, WebError> {
    reduce_closed_with(ws, &ReduceOptions::default()).map(|r| r.0)
}

/// Value of a single closed web.
pub fn evaluate(web: &Web) -> Result<QScalar, WebError> {
    web.validate()?;
    Reducer::default().eval(web)
}
