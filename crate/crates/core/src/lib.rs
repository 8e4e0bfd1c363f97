//! Fibre-product realization of the generic Podleś spheres `S²_qs`.
//!
//! The crate has two layers:
//!
//! * an exact symbolic layer ([`ncpoly`], [`suq2`]) over rational `(q, s)`,
//!   covering `O(SU_q(2))`, the embedding of the sphere, the weight vectors
//!   `u_N, w_N` and the rank-two projection `P₁`;
//! * an operator layer ([`shiftcalc`], [`podles`], [`bundles`], [`index`])
//!   in double precision, realizing `C(S²_qs)` as pairs of Toeplitz operators
//!   with equal symbols, the line-bundle projections `E_N, Q_N, P₁`, and the two
//!   index pairings.

pub mod bundles;
pub mod error;
pub mod index;
pub mod ncpoly;
pub mod params;
pub mod podles;
pub mod report;
pub mod shiftcalc;
pub mod suq2;

pub use error::{Error, Result};
pub use params::{Params, ParsedRational, Rational};
