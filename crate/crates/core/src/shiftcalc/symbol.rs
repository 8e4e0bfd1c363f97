//! Laurent polynomials in the circle unitary `U`, and the representations `π±` on `ℓ²(ℤ)`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Σ_k c_k U^k` with finitely many non-zero `c_k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentSymbol {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: i64, c: Complex64) {
        let v = *self.coeffs.entry(k).or_default() + c;
        if v == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    /// Largest `|k|` in the support; `0` for the zero symbol.
    pub fn max_degree(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            out.add_term(k, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &other.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn star(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.conj())).collect(),
        }
    }

    /// Largest coefficient-wise difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|&k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }
}

impl fmt::Display for LaurentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("({c})U^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiRep {
    /// `U` acts as the bilateral shift.
    Plus,
    /// `U` shifts along `ℤ∖{0}` and kills `e₀`.
    Minus,
}

/// Image of `e_n` under `π(U^k)`, or `None` if it is zero.
fn pi_target(which: PiRep, n: i64, k: i64) -> Option<i64> {
    match which {
        PiRep::Plus => Some(n + k),
        PiRep::Minus => {
            if n == 0 {
                return None;
            }
            // Order-preserving bijection ℤ∖{0} → ℤ.
            let to = |m: i64| if m < 0 { m } else { m - 1 };
            let from = |m: i64| if m < 0 { m } else { m + 1 };
            Some(from(to(n) + k))
        }
    }
}

/// Matrix of `π(sym)` on `e_{−radius}, …, e_{radius}` (row/column `n + radius`).
pub fn pi_rep_apply(
    sym: &LaurentSymbol,
    which: PiRep,
    radius: usize,
) -> Result<DMatrix<Complex64>> {
    let degree = sym.max_degree();
    if radius as i64 <= degree + 1 {
        return Err(Error::Window { radius, degree });
    }
    let r = radius as i64;
    let dim = 2 * radius + 1;
    let mut out = DMatrix::zeros(dim, dim);
    for (&k, &c) in sym.coeffs() {
        for n in -r..=r {
            if let Some(t) = pi_target(which, n, k) {
                if t.abs() <= r {
                    out[((t + r) as usize, (n + r) as usize)] += c;
                }
            }
        }
    }
    Ok(out)
}

/// `tr((π₊ − π₋)(sym))` from the window matrices.
///
/// The difference is supported on `|n| ≤ max_degree`, so any admissible window gives the same value.
pub fn pi_trace_difference(sym: &LaurentSymbol, radius: usize) -> Result<Complex64> {
    let p = pi_rep_apply(sym, PiRep::Plus, radius)?;
    let m = pi_rep_apply(sym, PiRep::Minus, radius)?;
    Ok((p - m).trace())
}
