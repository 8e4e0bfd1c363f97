//! Diagonal coefficient functions `n ↦ d(n)` on `ℓ²(ℕ₀)` with a limit and a tail certificate.

use std::fmt;
use std::sync::Arc;

/// Fallback rate used when an eventually-constant function must be expressed geometrically.
pub const SETTLED_RATE: f64 = 0.5;
/// Relative rounding allowance of [`DiagFn::tail_holds`].
const ROUNDING_SLACK: f64 = 64.0 * f64::EPSILON;

/// How fast `eval(n)` approaches `limit`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// `eval(n) == limit` exactly for all `n >= from`.
    Settled { from: u64 },
    /// `|eval(n) − limit| ≤ c·rⁿ` for all `n`, with `0 < r < 1`.
    Geometric { c: f64, r: f64 },
    /// No certificate; traces fall back to a ratio test.
    Unknown,
}

type EvalFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Const(f64),
    Func(EvalFn),
}

/// A pure function `ℕ₀ → ℝ`. Cloning is cheap.
#[derive(Clone)]
pub struct DiagFn {
    kind: Kind,
    limit: Option<f64>,
    tail: Tail,
}

impl fmt::Debug for DiagFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Const(v) => write!(f, "DiagFn::Const({v})"),
            Kind::Func(_) => write!(
                f,
                "DiagFn {{ d(0) = {}, limit: {:?}, tail: {:?} }}",
                self.eval(0),
                self.limit,
                self.tail
            ),
        }
    }
}

impl DiagFn {
    pub fn constant(v: f64) -> Self {
        Self {
            kind: Kind::Const(v),
            limit: Some(v),
            tail: Tail::Settled { from: 0 },
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Wraps a closure. A `Geometric` tail with `r = 0` is rejected; use `Settled`.
    pub fn new(
        f: impl Fn(u64) -> f64 + Send + Sync + 'static,
        limit: Option<f64>,
        tail: Tail,
    ) -> Self {
        let tail = match (limit, tail) {
            (None, _) => Tail::Unknown,
            (_, Tail::Geometric { c, r }) => {
                assert!(
                    (0.0..1.0).contains(&r) && r > 0.0 && c >= 0.0,
                    "bad geometric tail ({c}, {r})"
                );
                Tail::Geometric { c, r }
            }
            (_, t) => t,
        };
        Self {
            kind: Kind::Func(Arc::new(f)),
            limit,
            tail,
        }
    }

    /// The indicator of `{n ≥ a}`.
    pub fn indicator_from(a: u64) -> Self {
        if a == 0 {
            return Self::constant(1.0);
        }
        Self::new(
            move |n| if n >= a { 1.0 } else { 0.0 },
            Some(1.0),
            Tail::Settled { from: a },
        )
    }

    /// The indicator of `{n < a}`.
    pub fn indicator_below(a: u64) -> Self {
        if a == 0 {
            return Self::zero();
        }
        Self::new(
            move |n| if n < a { 1.0 } else { 0.0 },
            Some(0.0),
            Tail::Settled { from: a },
        )
    }

    #[inline]
    pub fn eval(&self, n: u64) -> f64 {
        match &self.kind {
            Kind::Const(v) => *v,
            Kind::Func(f) => f(n),
        }
    }

    pub fn limit(&self) -> Option<f64> {
        self.limit
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.kind {
            Kind::Const(v) => Some(v),
            Kind::Func(_) => None,
        }
    }

    /// Structurally zero (not a pointwise test).
    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    /// `(C, r)` with `|eval(n) − limit| ≤ C·rⁿ`, if known. `r` is at least `min_rate`.
    pub fn certificate(&self, min_rate: f64) -> Option<(f64, f64)> {
        let lim = self.limit?;
        match self.tail {
            Tail::Geometric { c, r } => Some((c, r.max(min_rate))),
            Tail::Settled { from } => {
                let r = if min_rate > 0.0 {
                    min_rate
                } else {
                    SETTLED_RATE
                };
                let c = (0..from)
                    .map(|n| (self.eval(n) - lim).abs() / r.powi(n as i32))
                    .fold(0.0, f64::max);
                Some((c, r))
            }
            Tail::Unknown => None,
        }
    }

    /// Spot-checks the tail certificate at `n = 0..=n_max`.
    pub fn tail_holds(&self, n_max: u64) -> bool {
        let Some(lim) = self.limit else { return true };
        match self.tail {
            Tail::Settled { from } => (from..=n_max.max(from)).all(|n| self.eval(n) == lim),
            Tail::Geometric { c, r } => (0..=n_max).all(|n| {
                let v = self.eval(n);
                // Once c·rⁿ is below one ulp the computed deviation is pure rounding.
                let ulps = ROUNDING_SLACK * (lim.abs() + v.abs());
                (v - lim).abs() <= c * r.powi(n as i32) * (1.0 + 1e-9) + ulps
            }),
            Tail::Unknown => true,
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 || self.is_zero() {
            return Self::zero();
        }
        if k == 1.0 {
            return self.clone();
        }
        if let Some(v) = self.as_const() {
            return Self::constant(k * v);
        }
        let inner = self.clone();
        let tail = match self.tail {
            Tail::Geometric { c, r } => Tail::Geometric { c: c * k.abs(), r },
            t => t,
        };
        Self::new(move |n| k * inner.eval(n), self.limit.map(|l| k * l), tail)
    }

    pub fn add(&self, other: &DiagFn) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_const(), other.as_const()) {
            return Self::constant(a + b);
        }
        let limit = self.limit.zip(other.limit).map(|(a, b)| a + b);
        let tail = combine(self, other, |(c1, _), (c2, _)| c1 + c2, |a, b| a.max(b));
        let (x, y) = (self.clone(), other.clone());
        Self::new(move |n| x.eval(n) + y.eval(n), limit, tail)
    }

    pub fn sub(&self, other: &DiagFn) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &DiagFn) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(a) = self.as_const() {
            return other.scale(a);
        }
        if let Some(b) = other.as_const() {
            return self.scale(b);
        }
        let limit = self.limit.zip(other.limit).map(|(a, b)| a * b);
        let (l1, l2) = (
            self.limit.unwrap_or(0.0).abs(),
            other.limit.unwrap_or(0.0).abs(),
        );
        let tail = combine(
            self,
            other,
            |(c1, _), (c2, _)| l1 * c2 + l2 * c1 + c1 * c2,
            |a, b| a.max(b),
        );
        let (x, y) = (self.clone(), other.clone());
        Self::new(move |n| x.eval(n) * y.eval(n), limit, tail)
    }

    /// `m ↦ [m ≥ guard]·d(m + offset)`. Requires `offset + guard ≥ 0`.
    pub fn shift_guarded(&self, offset: i64, guard: u64) -> Self {
        assert!(
            offset + guard as i64 >= 0,
            "shift would read a negative index"
        );
        if offset == 0 && guard == 0 {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero();
        }
        if guard == 0 {
            if let Some(v) = self.as_const() {
                return Self::constant(v);
            }
        }
        let lim = self.limit;
        let tail = match (lim, self.tail) {
            (None, _) | (_, Tail::Unknown) => Tail::Unknown,
            (Some(l), Tail::Settled { from }) => {
                let base = (from as i64 - offset).max(0) as u64;
                Tail::Settled {
                    from: if l == 0.0 { base } else { base.max(guard) },
                }
            }
            (Some(l), Tail::Geometric { c, r }) => {
                let shifted = c * r.powi(offset as i32);
                let guarded = if guard > 0 {
                    l.abs() * r.powi(1 - guard as i32)
                } else {
                    0.0
                };
                Tail::Geometric {
                    c: shifted.max(guarded),
                    r,
                }
            }
        };
        let inner = self.clone();
        Self::new(
            move |m| {
                if m < guard {
                    0.0
                } else {
                    inner.eval((m as i64 + offset) as u64)
                }
            },
            lim,
            tail,
        )
    }

    /// Pointwise `f ∘ d`. The tail survives only if a Lipschitz constant of `f`
    /// around the limit (relative to the limit) is supplied.
    pub fn map(&self, f: Arc<dyn Fn(f64) -> f64 + Send + Sync>, lipschitz: Option<f64>) -> Self {
        let limit = self.limit.map(|l| f(l));
        if let Some(v) = self.as_const() {
            return Self::constant(f(v));
        }
        let tail = match (self.tail, lipschitz) {
            (Tail::Settled { from }, _) => Tail::Settled { from },
            (Tail::Geometric { c, r }, Some(k)) => Tail::Geometric { c: c * k, r },
            _ => Tail::Unknown,
        };
        let inner = self.clone();
        Self::new(move |n| f(inner.eval(n)), limit, tail)
    }

    /// Largest `|d(n) − e(n)|` for `n ≤ n_max`, plus the limit discrepancy.
    pub fn max_diff(&self, other: &DiagFn, n_max: u64) -> f64 {
        let pointwise = (0..=n_max)
            .map(|n| (self.eval(n) - other.eval(n)).abs())
            .fold(0.0, f64::max);
        let lim = match (self.limit, other.limit) {
            (Some(a), Some(b)) => (a - b).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        pointwise.max(lim)
    }
}

fn combine(
    x: &DiagFn,
    y: &DiagFn,
    coeff: impl Fn((f64, f64), (f64, f64)) -> f64,
    rate: impl Fn(f64, f64) -> f64,
) -> Tail {
    match (x.tail, y.tail) {
        (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
        _ if x.limit.is_none() || y.limit.is_none() => Tail::Unknown,
        (Tail::Settled { from: a }, Tail::Settled { from: b }) => Tail::Settled { from: a.max(b) },
        (tx, ty) => {
            let r = rate(geometric_rate(tx), geometric_rate(ty));
            let cx = x.certificate(r).expect("limit present");
            let cy = y.certificate(r).expect("limit present");
            Tail::Geometric {
                c: coeff(cx, cy),
                r,
            }
        }
    }
}

fn geometric_rate(t: Tail) -> f64 {
    match t {
        Tail::Geometric { r, .. } => r,
        _ => 0.0,
    }
}
