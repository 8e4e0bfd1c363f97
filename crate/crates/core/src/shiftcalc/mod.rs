//! Lazy operator calculus for the Toeplitz algebra on `ℓ²(ℕ₀)`.
//!
//! Operators are finite sums of shifts times diagonal functions ([`ShiftSeries`]),
//! multiplied exactly via `S*S = 1` and `SS* = 1 − |e₀⟩⟨e₀|`. Truncated matrices
//! appear only as a cross-check.

mod diag;
mod series;
mod symbol;
mod trace;

pub use diag::{DiagFn, Tail, SETTLED_RATE};
pub use series::{
    spectral_norm, ss_arith, ss_func_calc, symbol_of, Lipschitz, ScalarFn, SeriesOp, ShiftSeries,
    CHECK_N, LIPSCHITZ_SAFETY,
};
pub use symbol::{pi_rep_apply, pi_trace_difference, LaurentSymbol, PiRep};
pub use trace::{trace_diag, TraceValue, LIMIT_ZERO_TOL, MAX_TERMS, RATIO_SAFETY};
