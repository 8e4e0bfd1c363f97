//! Traces of diagonal parts with certified or heuristic remainder bounds.

use super::diag::Tail;
use super::series::ShiftSeries;
use crate::error::{Error, Result};

/// Band-0 limits below this are treated as zero.
pub const LIMIT_ZERO_TOL: f64 = 1e-12;
/// Hard cap on summed terms.
pub const MAX_TERMS: u64 = 10_000_000;
/// Safety factor of the ratio-test remainder estimate.
pub const RATIO_SAFETY: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceValue {
    pub value: f64,
    /// Bound on `|Σ_{n ≥ terms} d(n)|`.
    pub bound: f64,
    pub terms: u64,
    /// `false` when the bound comes from the ratio test rather than a certificate.
    pub certified: bool,
}

/// `Σ_n ⟨e_n, x e_n⟩`, summed until the remainder is at most `tol`.
pub fn trace_diag(x: &ShiftSeries, tol: f64) -> Result<TraceValue> {
    let Some(d) = x.band_of(0) else {
        return Ok(TraceValue {
            value: 0.0,
            bound: 0.0,
            terms: 0,
            certified: true,
        });
    };
    let limit = d.limit().ok_or(Error::SymbolUndefined { band: 0 })?;
    if limit.abs() > LIMIT_ZERO_TOL {
        return Err(Error::NotTraceClass { limit });
    }
    let partial = |terms: u64| (0..terms).map(|n| d.eval(n)).sum::<f64>();
    match d.tail() {
        Tail::Settled { from } => Ok(TraceValue {
            value: partial(from),
            bound: 0.0,
            terms: from,
            certified: true,
        }),
        Tail::Geometric { c, r } => {
            let remainder = |n: u64| c * r.powf(n as f64) / (1.0 - r);
            if c == 0.0 {
                return Ok(TraceValue {
                    value: 0.0,
                    bound: 0.0,
                    terms: 0,
                    certified: true,
                });
            }
            // Smallest n with c rⁿ / (1 − r) ≤ tol.
            let need = ((tol * (1.0 - r) / c).ln() / r.ln()).ceil().max(0.0);
            if !need.is_finite() || need > MAX_TERMS as f64 {
                return Err(Error::Convergence { terms: MAX_TERMS });
            }
            let terms = need as u64;
            Ok(TraceValue {
                value: partial(terms),
                bound: remainder(terms),
                terms,
                certified: true,
            })
        }
        Tail::Unknown => ratio_test(|n| d.eval(n), tol),
    }
}

/// Sums until the last-term ratio predicts a remainder of at most `tol`.
fn ratio_test(f: impl Fn(u64) -> f64, tol: f64) -> Result<TraceValue> {
    const MIN_TERMS: u64 = 8;
    const ZERO_RUN: u64 = 64;
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    let mut zeros = 0;
    let mut worst_ratio: f64 = 0.0;
    for n in 0..MAX_TERMS {
        let t = f(n);
        sum += t;
        zeros = if t == 0.0 { zeros + 1 } else { 0 };
        if zeros >= ZERO_RUN {
            return Ok(TraceValue {
                value: sum,
                bound: 0.0,
                terms: n + 1,
                certified: false,
            });
        }
        if prev.is_finite() && prev != 0.0 {
            let ratio = (t / prev).abs();
            // Track the recent worst ratio so a single small step does not stop early.
            worst_ratio = if n % 16 == 0 {
                ratio
            } else {
                worst_ratio.max(ratio)
            };
            if n >= MIN_TERMS && worst_ratio < 1.0 {
                let bound = RATIO_SAFETY * t.abs() * worst_ratio / (1.0 - worst_ratio);
                if bound <= tol {
                    return Ok(TraceValue {
                        value: sum,
                        bound,
                        terms: n + 1,
                        certified: false,
                    });
                }
            }
        }
        prev = t;
    }
    Err(Error::Convergence { terms: MAX_TERMS })
}
