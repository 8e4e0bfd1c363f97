//! Finite band sums `Σ_k S^k·D_k` on `ℓ²(ℕ₀)` and their exact arithmetic.
//!
//! Band `k > 0` is `S^k·D`, band `k < 0` is `D·S^{*|k|}`, band `0` is `D`.
//! The matrix entry `⟨e_i, x e_j⟩` is `D_{i−j}(min(i, j))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;

use super::diag::{DiagFn, Tail};
use super::symbol::LaurentSymbol;
use crate::error::{Error, Result};

/// Default range of `n` for pointwise comparisons and domain checks.
pub const CHECK_N: u64 = 256;

#[derive(Clone, Default)]
pub struct ShiftSeries {
    bands: BTreeMap<i64, DiagFn>,
}

impl fmt::Debug for ShiftSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.bands.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    /// Adjoint of the first operand; the second is ignored.
    StarFirst,
}

pub fn ss_arith(x: &ShiftSeries, y: &ShiftSeries, op: SeriesOp) -> ShiftSeries {
    match op {
        SeriesOp::Add => x.add(y),
        SeriesOp::Mul => x.mul(y),
        SeriesOp::StarFirst => x.star(),
    }
}

impl ShiftSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(1.0)
    }

    pub fn scalar(c: f64) -> Self {
        Self::diag(DiagFn::constant(c))
    }

    pub fn diag(d: DiagFn) -> Self {
        Self::band(0, d)
    }

    /// `S^k` for `k ≥ 0`, `S^{*|k|}` for `k < 0`.
    pub fn shift(k: i64) -> Self {
        Self::band(k, DiagFn::constant(1.0))
    }

    pub fn band(k: i64, d: DiagFn) -> Self {
        let mut out = Self::zero();
        out.insert(k, d);
        out
    }

    fn insert(&mut self, k: i64, d: DiagFn) {
        if d.is_zero() {
            return;
        }
        let merged = match self.bands.remove(&k) {
            Some(prev) => prev.add(&d),
            None => d,
        };
        if !merged.is_zero() {
            self.bands.insert(k, merged);
        }
    }

    pub fn bands(&self) -> &BTreeMap<i64, DiagFn> {
        &self.bands
    }

    pub fn band_of(&self, k: i64) -> Option<&DiagFn> {
        self.bands.get(&k)
    }

    /// Band 0, or the zero diagonal.
    pub fn diagonal(&self) -> DiagFn {
        self.bands.get(&0).cloned().unwrap_or_else(DiagFn::zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.bands.keys().all(|&k| k == 0)
    }

    pub fn add(&self, other: &ShiftSeries) -> ShiftSeries {
        let mut out = self.clone();
        for (&k, d) in &other.bands {
            out.insert(k, d.clone());
        }
        out
    }

    pub fn sub(&self, other: &ShiftSeries) -> ShiftSeries {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> ShiftSeries {
        let mut out = Self::zero();
        for (&k, d) in &self.bands {
            out.insert(k, d.scale(c));
        }
        out
    }

    /// Adjoint. Diagonals are real, so `(S^k D)* = D S^{*k}` just flips the band.
    pub fn star(&self) -> ShiftSeries {
        Self {
            bands: self.bands.iter().map(|(&k, d)| (-k, d.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &ShiftSeries) -> ShiftSeries {
        let mut out = Self::zero();
        for (&a, x) in &self.bands {
            for (&b, y) in &other.bands {
                let k = a + b;
                // Result entry at (m + max(k,0), m + max(−k,0)) passes through
                // the intermediate index l = m + lm.
                let lm = k.max(0) - a;
                let ox = k.max(0).min(lm);
                let oy = lm.min((-k).max(0));
                let guard = (-lm).max(0) as u64;
                let d = x.shift_guarded(ox, guard).mul(&y.shift_guarded(oy, guard));
                out.insert(k, d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ShiftSeries {
        (0..e).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// `⟨e_i, x e_j⟩`.
    pub fn entry(&self, i: u64, j: u64) -> f64 {
        let k = i as i64 - j as i64;
        self.bands.get(&k).map_or(0.0, |d| d.eval(i.min(j)))
    }

    /// `x e_j` as sparse `(index, value)` pairs.
    pub fn apply_basis(&self, j: u64) -> Vec<(u64, f64)> {
        let mut out = Vec::with_capacity(self.bands.len());
        for (&k, d) in &self.bands {
            let i = j as i64 + k;
            if i >= 0 {
                let v = d.eval(j.min(i as u64));
                if v != 0.0 {
                    out.push((i as u64, v));
                }
            }
        }
        out
    }

    /// `x v` for a finitely supported `v`; the result is long enough to hold every entry.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let reach = self.bands.keys().next_back().map_or(0, |&k| k.max(0)) as usize;
        let mut out = vec![0.0; v.len() + reach];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0.0 {
                continue;
            }
            for (i, c) in self.apply_basis(j as u64) {
                out[i as usize] += c * vj;
            }
        }
        out
    }

    /// The `m × m` compression onto `span{e_0, …, e_{m−1}}`.
    pub fn truncate(&self, m: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(m, m);
        for (&k, d) in &self.bands {
            for n in 0..m {
                let (i, j) = (n as i64 + k.max(0), n as i64 + (-k).max(0));
                if (i as usize) < m && (j as usize) < m {
                    out[(i as usize, j as usize)] = d.eval(n as u64);
                }
            }
        }
        out
    }

    /// Truncation and its largest singular value.
    pub fn truncate_and_norm(&self, m: usize) -> (DMatrix<f64>, f64) {
        let t = self.truncate(m);
        let norm = spectral_norm(&t);
        (t, norm)
    }

    pub fn symbol(&self) -> Result<LaurentSymbol> {
        symbol_of(self)
    }

    /// Largest pointwise difference of all bands on `n ≤ n_max`, including limits.
    pub fn max_diff(&self, other: &ShiftSeries, n_max: u64) -> f64 {
        let zero = DiagFn::zero();
        self.bands
            .keys()
            .chain(other.bands.keys())
            .map(|k| {
                let a = self.bands.get(k).unwrap_or(&zero);
                let b = other.bands.get(k).unwrap_or(&zero);
                a.max_diff(b, n_max)
            })
            .fold(0.0, f64::max)
    }

    /// Every band's tail certificate spot-checks on `n ≤ n_max`.
    pub fn tails_hold(&self, n_max: u64) -> bool {
        self.bands.values().all(|d| d.tail_holds(n_max))
    }
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Symbol map: the coefficient of `U^k` is the limit of band `k`.
pub fn symbol_of(x: &ShiftSeries) -> Result<LaurentSymbol> {
    let mut out = LaurentSymbol::zero();
    for (&k, d) in &x.bands {
        let l = d.limit().ok_or(Error::SymbolUndefined { band: k })?;
        out.add_term(k, l.into());
    }
    Ok(out)
}

/// A real function with a declared domain and optional Lipschitz constant near limits.
#[derive(Clone)]
pub struct ScalarFn {
    pub name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: Arc<dyn Fn(f64) -> bool + Send + Sync>,
    lipschitz: Lipschitz,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lipschitz {
    /// Caller-proved bound on `|f(x) − f(L)| / |x − L|` over the diagonal's range.
    Declared(f64),
    /// Largest secant slope to the limit over the sampled range, times a safety factor.
    Sampled,
    /// Drop the tail certificate.
    Absent,
}

/// Safety factor applied to sampled secant slopes.
pub const LIPSCHITZ_SAFETY: f64 = 2.0;

impl ScalarFn {
    pub fn new(
        name: impl Into<String>,
        domain: impl Fn(f64) -> bool + Send + Sync + 'static,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
            domain: Arc::new(domain),
            lipschitz: Lipschitz::Absent,
        }
    }

    pub fn everywhere(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, |_| true, f)
    }

    pub fn with_lipschitz(mut self, l: Lipschitz) -> Self {
        self.lipschitz = l;
        self
    }

    pub fn call(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn in_domain(&self, t: f64) -> bool {
        (self.domain)(t)
    }

    fn lipschitz_for(&self, d: &DiagFn, n_max: u64) -> Option<f64> {
        match self.lipschitz {
            Lipschitz::Declared(k) => Some(k),
            Lipschitz::Absent => None,
            Lipschitz::Sampled => {
                let l = d.limit()?;
                let fl = self.call(l);
                let slope = (0..=n_max)
                    .filter_map(|n| {
                        let x = d.eval(n);
                        (x != l).then(|| (self.call(x) - fl).abs() / (x - l).abs())
                    })
                    .fold(0.0, f64::max);
                Some(slope * LIPSCHITZ_SAFETY)
            }
        }
    }
}

/// Pointwise functional calculus of a diagonal operator.
///
/// The domain is checked at `n ≤ check_n` and at the limit.
pub fn ss_func_calc(f: &ScalarFn, x: &ShiftSeries, check_n: u64) -> Result<ShiftSeries> {
    if !x.is_diagonal() {
        return Err(Error::Incompatible(format!(
            "functional calculus of `{}` needs a diagonal operand",
            f.name
        )));
    }
    let d = x.diagonal();
    for n in 0..=check_n {
        let v = d.eval(n);
        if !f.in_domain(v) {
            return Err(Error::Domain {
                func: f.name.clone(),
                at: format!("n = {n}"),
                value: v,
            });
        }
    }
    if let Some(l) = d.limit() {
        if !f.in_domain(l) {
            return Err(Error::Domain {
                func: f.name.clone(),
                at: "limit".into(),
                value: l,
            });
        }
    }
    let lip = match d.tail() {
        Tail::Geometric { .. } => f.lipschitz_for(&d, check_n),
        _ => None,
    };
    Ok(ShiftSeries::diag(d.map(f.f.clone(), lip)))
}

impl Add for &ShiftSeries {
    type Output = ShiftSeries;
    fn add(self, rhs: &ShiftSeries) -> ShiftSeries {
        ShiftSeries::add(self, rhs)
    }
}

impl Sub for &ShiftSeries {
    type Output = ShiftSeries;
    fn sub(self, rhs: &ShiftSeries) -> ShiftSeries {
        ShiftSeries::sub(self, rhs)
    }
}

impl Mul for &ShiftSeries {
    type Output = ShiftSeries;
    fn mul(self, rhs: &ShiftSeries) -> ShiftSeries {
        ShiftSeries::mul(self, rhs)
    }
}

impl Neg for &ShiftSeries {
    type Output = ShiftSeries;
    fn neg(self) -> ShiftSeries {
        self.scale(-1.0)
    }
}
