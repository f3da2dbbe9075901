//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by evaluators, zero solvers and enumerators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested value leaves the representable range of `f64`.
    ///
    /// Raised instead of silently returning an infinity, e.g. for
    /// `Y_nu(x)` with tiny `x` and large `nu`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An order or argument cap was exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// An iteration failed to converge; carries the bracket state at failure.
    #[error("no convergence in {what} after {iterations} iterations (bracket [{lo}, {hi}], f(lo)={f_lo:e}, f(hi)={f_hi:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// Structurally invalid input (empty grids, identical scan pairs, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
