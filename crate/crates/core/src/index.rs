//! The two index pairings of sphere projections and a direct Fredholm count.
//!
//! `pair_rho` is `tr(ρ₊ − ρ₋)(p)` summed entrywise over the diagonal with a
//! certified tail; `pair_eps` is `tr(π₊ − π₋)(σ(p))`, a finite-rank trace.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::bundles::BundleProjection;
use crate::error::{Error, Result};
use crate::podles::MatPodles;
use crate::shiftcalc::{pi_trace_difference, trace_diag, ShiftSeries};

/// Eigenvalues within this distance of `±1` count towards kernel or cokernel.
pub const UNIT_EIGEN_TOL: f64 = 1e-6;
/// Eigenvalues with `UNIT_EIGEN_TOL < 1 − |λ| < UNIT_EIGEN_GAP` make the count ambiguous.
pub const UNIT_EIGEN_GAP: f64 = 1e-2;
/// Band diagonals must be this close to their limit at half the truncation.
pub const SETTLE_TOL: f64 = 1e-8;
/// Agreement required between the two `π` trace routes.
pub const EPS_ROUTE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairingReport {
    pub value: f64,
    pub tail_bound: f64,
    pub rounded: i64,
    /// `|value − rounded|`.
    pub gap: f64,
    /// Tail bound is certificate-backed and `gap + tail_bound < 1/2`.
    pub certified: bool,
}

impl PairingReport {
    pub fn new(value: f64, tail_bound: f64, tail_certified: bool) -> Self {
        let rounded = value.round() as i64;
        let gap = (value - rounded as f64).abs();
        Self {
            value,
            tail_bound,
            rounded,
            gap,
            certified: tail_certified && gap + tail_bound < 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    Rho,
    Eps,
}

/// One pairing of one projection, as emitted in reports.
#[derive(Clone, Debug, Serialize)]
pub struct PairingRecord {
    #[serde(rename = "N")]
    pub n: i64,
    pub form: &'static str,
    pub q: String,
    pub s: String,
    pub pair: Pairing,
    pub value: f64,
    pub tail_bound: f64,
    pub rounded: i64,
    pub certified: bool,
}

impl PairingRecord {
    pub fn new(p: &BundleProjection, pair: Pairing, r: &PairingReport) -> Self {
        Self {
            n: p.n,
            form: p.form.as_str(),
            q: p.params().q().to_string(),
            s: p.params().s().to_string(),
            pair,
            value: r.value,
            tail_bound: r.tail_bound,
            rounded: r.rounded,
            certified: r.certified,
        }
    }
}

fn require_square(m: &MatPodles) -> Result<usize> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "pairing of a {}×{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

/// `Σ_i tr(ρ₊(p_ii) − ρ₋(p_ii))`, each trace to within `tol / dim`.
pub fn pair_rho(p: &MatPodles, tol: f64) -> Result<PairingReport> {
    let d = require_square(p)?;
    let (mut value, mut bound, mut certified) = (0.0, 0.0, true);
    for i in 0..d {
        let e = p.get(i, i);
        let t = trace_diag(&e.plus().sub(e.minus()), tol / d as f64)?;
        value += t.value;
        bound += t.bound;
        certified &= t.certified;
    }
    Ok(PairingReport::new(value, bound, certified))
}

/// Both `π` routes for the diagonal entries: window-matrix trace and constant coefficient.
pub fn pair_eps_routes(p: &MatPodles) -> Result<(f64, f64)> {
    let d = require_square(p)?;
    let (mut matrix, mut constant) = (0.0, 0.0);
    for i in 0..d {
        let sym = p.get(i, i).symbol()?;
        let radius = sym.max_degree() as usize + 2;
        matrix += pi_trace_difference(&sym, radius)?.re;
        constant += sym.coeff(0).re;
    }
    Ok((matrix, constant))
}

/// `Σ_i tr((π₊ − π₋)(σ(p_ii)))`. Exact up to rounding; the tail bound is zero.
pub fn pair_eps(p: &MatPodles) -> Result<PairingReport> {
    let (matrix, constant) = pair_eps_routes(p)?;
    if (matrix - constant).abs() > EPS_ROUTE_TOL {
        return Err(Error::Incompatible(format!(
            "π-trace routes disagree: {matrix} vs {constant}"
        )));
    }
    Ok(PairingReport::new(matrix, 0.0, true))
}

fn block_truncation(
    p: &MatPodles,
    m: usize,
    leg: impl Fn(&crate::podles::PodlesElem) -> &ShiftSeries,
) -> DMatrix<f64> {
    let d = p.rows();
    let mut out = DMatrix::zeros(d * m, d * m);
    for i in 0..d {
        for j in 0..d {
            let t = leg(p.get(i, j)).truncate(m);
            out.view_mut((i * m, j * m), (m, m)).copy_from(&t);
        }
    }
    out
}

fn settle_check(p: &MatPodles, m: usize) -> Result<()> {
    let half = (m / 2) as u64;
    for e in p.entries() {
        for leg in [e.minus(), e.plus()] {
            for d in leg.bands().values() {
                let lim = d.limit().unwrap_or(f64::NAN);
                let dev = (half..m as u64)
                    .map(|n| (d.eval(n) - lim).abs())
                    .fold(0.0, f64::max);
                if dev.is_nan() || dev > SETTLE_TOL {
                    return Err(Error::TruncationTooSmall {
                        dim: m,
                        deviation: dev,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Kernel and cokernel dimensions of `ρ₋(p)ρ₊(p) : ρ₊(p)H → ρ₋(p)H` on `m`-dimensional truncations.
///
/// The kernel is `ran ρ₊(p) ∩ ker ρ₋(p)`, the `+1` eigenspace of `ρ₊(p) − ρ₋(p)`; the
/// cokernel is `ran ρ₋(p) ∩ ker ρ₊(p)`, its `−1` eigenspace. Rows and columns of the
/// truncated difference that vanish identically are dropped before diagonalizing.
pub fn fredholm_kernel_cokernel(p: &MatPodles, m: usize) -> Result<(usize, usize)> {
    require_square(p)?;
    settle_check(p, m)?;
    let d = block_truncation(p, m, |e| e.plus()) - block_truncation(p, m, |e| e.minus());
    let d = (&d + d.transpose()) * 0.5;
    let support: Vec<usize> = (0..d.nrows())
        .filter(|&i| d.row(i).iter().any(|&x| x != 0.0))
        .collect();
    if support.is_empty() {
        return Ok((0, 0));
    }
    let reduced = DMatrix::from_fn(support.len(), support.len(), |i, j| {
        d[(support[i], support[j])]
    });
    let (mut ker, mut coker) = (0, 0);
    for &l in SymmetricEigen::new(reduced).eigenvalues.iter() {
        let gap = 1.0 - l.abs();
        if !l.is_finite() || (gap > UNIT_EIGEN_TOL && gap < UNIT_EIGEN_GAP) || gap < -UNIT_EIGEN_GAP
        {
            return Err(Error::IndeterminateIndex {
                eigenvalue: l,
                dim: m,
            });
        }
        if gap.abs() <= UNIT_EIGEN_TOL {
            if l > 0.0 {
                ker += 1;
            } else {
                coker += 1;
            }
        }
    }
    Ok((ker, coker))
}

/// `dim ker − dim coker` of the truncated operator.
pub fn fredholm_index_direct(p: &MatPodles, m: usize) -> Result<i64> {
    let (ker, coker) = fredholm_kernel_cokernel(p, m)?;
    Ok(ker as i64 - coker as i64)
}
