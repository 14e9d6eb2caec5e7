//! Exact theta nets for the C2 (Sp(4)) spider.
//!
//! - [`qscalar`]: Laurent polynomials, the field `Q(q)`, `q -> 1` limits and
//!   certified evaluation at roots of unity.
//! - [`netforms`]: expansion coefficients, clasp traces, the Net recursions
//!   and theta values, admissibility and nonvanishing checks.
//! - [`webcalc`]: planar webs, the reduction engine, clasp expansions and a
//!   brute-force diagrammatic theta oracle.
//! - [`cli`]: the command implementations behind the `c2-theta` binary.

pub mod cli;
pub mod netforms;
pub mod qscalar;
pub mod webcalc;

pub use qscalar::{qint, LaurentPoly, QError, QScalar, RootContext};
