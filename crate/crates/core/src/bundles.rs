//! Line-bundle projections over the sphere: `E_N`, the Bott-type `Q_N`, the
//! partial isometries `Y_N`, the represented `P_{±1}` and the rank-one `G`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{to_f64, Params};
use crate::podles::{evaluate_poly, func_calc, make_generators, MatPodles, PodlesElem};
use crate::report::{Check, CheckReport};
use crate::shiftcalc::{LaurentSymbol, Lipschitz, ScalarFn, ShiftSeries, CHECK_N};
use crate::suq2::build_p1_symbolic;

/// Residual tolerance for projection and equivalence identities.
pub const BUNDLE_TOL: f64 = 1e-10;
/// Tolerance for `Q_N + Q_{−N} = 1`.
pub const COMPLEMENT_TOL: f64 = 1e-12;
/// Linear factors smaller than this, relative to their terms, are rounding noise around an exact zero.
const ZERO_FACTOR_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    E,
    Q,
    P1,
    G,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::E => "E",
            Form::Q => "Q",
            Form::P1 => "P1",
            Form::G => "G",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BundleProjection {
    pub n: i64,
    pub form: Form,
    pub mat: MatPodles,
}

impl BundleProjection {
    pub fn params(&self) -> &Params {
        self.mat.params()
    }

    /// `‖p² − p‖` and `‖p* − p‖`, pointwise on `n ≤ n_max`.
    pub fn projection_residuals(&self, n_max: u64) -> Result<(f64, f64)> {
        let sq = self.mat.mul(&self.mat)?;
        Ok((
            sq.residual(&self.mat, n_max)?,
            self.mat.star_transpose().residual(&self.mat, n_max)?,
        ))
    }
}

fn s_pow_n(k: i64) -> ShiftSeries {
    let sk = ShiftSeries::shift(k);
    sk.mul(&sk.star())
}

/// `E_N = (S^N S^{*N}, 1)` for `N ≥ 0` and `(1, S^{|N|} S^{*|N|})` for `N < 0`.
pub fn build_e(n: i64, params: &Params) -> BundleProjection {
    let proj = s_pow_n(n.abs());
    let (m, p) = if n >= 0 {
        (proj, ShiftSeries::identity())
    } else {
        (ShiftSeries::identity(), proj)
    };
    let elem = PodlesElem::new(m, p, params).expect("both legs have symbol 1");
    BundleProjection {
        n,
        form: Form::E,
        mat: MatPodles::scalar(elem),
    }
}

/// `G = (0, 1 − SS*)`.
pub fn build_g(params: &Params) -> BundleProjection {
    let p0 = ShiftSeries::identity().sub(&s_pow_n(1));
    let elem = PodlesElem::new(ShiftSeries::zero(), p0, params).expect("both legs have symbol 0");
    BundleProjection {
        n: 0,
        form: Form::G,
        mat: MatPodles::scalar(elem),
    }
}

/// `f_n(t) = Π_{k<n} (1 − q^{2k}t)` and `g_n(t) = Π_{k<n} (s² + q^{2k}t)`.
#[derive(Clone, Copy, Debug)]
pub struct BottFactors {
    n: u32,
    q2: f64,
    s2: f64,
}

impl BottFactors {
    pub fn new(n: u32, params: &Params) -> Self {
        assert!(n >= 1, "Bott factors need n ≥ 1");
        Self {
            n,
            q2: to_f64(&(params.q() * params.q())),
            s2: to_f64(&(params.s() * params.s())),
        }
    }

    fn product(&self, a: f64, sign: f64, t: f64) -> f64 {
        let mut acc = 1.0;
        let mut w = 1.0;
        for _ in 0..self.n {
            let bt = sign * w * t;
            let v = a + bt;
            // Factors that vanish exactly on the spectrum come out as ±1e-16.
            acc *= if v.abs() <= ZERO_FACTOR_REL * (a.abs() + bt.abs()) {
                0.0
            } else {
                v
            };
            w *= self.q2;
        }
        acc
    }

    pub fn f(&self, t: f64) -> f64 {
        self.product(1.0, -1.0, t)
    }

    pub fn g(&self, t: f64) -> f64 {
        self.product(self.s2, 1.0, t)
    }
}

/// `(f_n, g_n)` as scalar functions.
pub fn build_fg(n: u32, params: &Params) -> (ScalarFn, ScalarFn) {
    let b = BottFactors::new(n, params);
    (
        ScalarFn::everywhere(format!("f_{n}"), move |t| b.f(t)),
        ScalarFn::everywhere(format!("g_{n}"), move |t| b.g(t)),
    )
}

#[derive(Clone, Copy)]
enum BottEntry {
    G,
    F,
    Off,
    SqrtG,
    SqrtF,
}

/// `t ↦ h(λt)` for the ratios built from `f_n, g_n`. Square roots require
/// non-negative arguments; a negative value is reported as a domain error.
fn bott_fn(b: BottFactors, entry: BottEntry, lambda: f64) -> ScalarFn {
    let name = match entry {
        BottEntry::G => "g/(f+g)",
        BottEntry::F => "f/(f+g)",
        BottEntry::Off => "sqrt(fg)/(f+g)",
        BottEntry::SqrtG => "sqrt(g/(f+g))",
        BottEntry::SqrtF => "sqrt(f/(f+g))",
    };
    let parts = move |t: f64| {
        let x = lambda * t;
        (b.f(x), b.g(x))
    };
    let domain = move |t: f64| {
        let (f, g) = parts(t);
        let den = f + g;
        den > 0.0
            && match entry {
                BottEntry::G | BottEntry::F => true,
                BottEntry::Off => f * g >= 0.0,
                BottEntry::SqrtG => g >= 0.0,
                BottEntry::SqrtF => f >= 0.0,
            }
    };
    let value = move |t: f64| {
        let (f, g) = parts(t);
        let den = f + g;
        match entry {
            BottEntry::G => g / den,
            BottEntry::F => f / den,
            BottEntry::Off => (f * g).sqrt() / den,
            BottEntry::SqrtG => (g / den).sqrt(),
            BottEntry::SqrtF => (f / den).sqrt(),
        }
    };
    ScalarFn::new(format!("{name} at {lambda}*t (n = {})", b.n), domain, value)
        .with_lipschitz(Lipschitz::Sampled)
}

fn zeta_fn(b: BottFactors, entry: BottEntry, lambda: f64, zeta: &PodlesElem) -> Result<PodlesElem> {
    func_calc(&bott_fn(b, entry, lambda), zeta)
}

/// `Q_N` from its closed form; `Q_0 = (1,0)ᵀ(1,0)`.
pub fn build_q(n: i64, params: &Params) -> Result<BundleProjection> {
    if n == 0 {
        let (one, zero) = (PodlesElem::one(params), PodlesElem::zero(params));
        let mat = MatPodles::from_rows(vec![vec![one, zero.clone()], vec![zero.clone(), zero]])?;
        return Ok(BundleProjection {
            n,
            form: Form::Q,
            mat,
        });
    }
    let k = n.unsigned_abs() as u32;
    let b = BottFactors::new(k, params);
    let lambda = to_f64(&params.q_pow(-2 * i64::from(k)));
    let zeta = make_generators(params).zeta;
    let sn = PodlesElem::frak_shift(i64::from(k), params);
    let sn_star = sn.star();

    let off_top = &zeta_fn(b, BottEntry::Off, lambda, &zeta)? * &sn;
    let off_bottom = &zeta_fn(b, BottEntry::Off, 1.0, &zeta)? * &sn_star;
    let rows = if n > 0 {
        vec![
            vec![zeta_fn(b, BottEntry::G, lambda, &zeta)?, off_top],
            vec![off_bottom, zeta_fn(b, BottEntry::F, 1.0, &zeta)?],
        ]
    } else {
        vec![
            vec![
                zeta_fn(b, BottEntry::F, lambda, &zeta)?,
                off_top.scale(-1.0),
            ],
            vec![
                off_bottom.scale(-1.0),
                zeta_fn(b, BottEntry::G, 1.0, &zeta)?,
            ],
        ]
    };
    Ok(BundleProjection {
        n,
        form: Form::Q,
        mat: MatPodles::from_rows(rows)?,
    })
}

/// The row `Y_N` with `Y_N*Y_N = Q_N` and `Y_N Y_N* = E_N`.
///
/// `Y_n = (√(g/(f+g)), √(f/(f+g))·𝔖^n)` and `Y_{−n} = (√(f/(f+g)), −√(g/(f+g))·𝔖^n)`,
/// all functions taken at `q^{−2n}ζ`.
pub fn build_y(n: i64, params: &Params) -> Result<MatPodles> {
    if n == 0 {
        return Err(Error::InvalidParams("Y_N is defined for N ≠ 0".into()));
    }
    let k = n.unsigned_abs() as u32;
    let b = BottFactors::new(k, params);
    let lambda = to_f64(&params.q_pow(-2 * i64::from(k)));
    let zeta = make_generators(params).zeta;
    let sn = PodlesElem::frak_shift(i64::from(k), params);
    let (first, second, sign) = if n > 0 {
        (BottEntry::SqrtG, BottEntry::SqrtF, 1.0)
    } else {
        (BottEntry::SqrtF, BottEntry::SqrtG, -1.0)
    };
    let a = zeta_fn(b, first, lambda, &zeta)?;
    let c = (&zeta_fn(b, second, lambda, &zeta)? * &sn).scale(sign);
    MatPodles::from_rows(vec![vec![a, c]])
}

/// `P_{±1}` evaluated entrywise from its closed form over the sphere polynomials.
pub fn build_p1_matrix(sign: i8, params: &Params) -> Result<BundleProjection> {
    let sym = build_p1_symbolic(sign, params)?;
    let mut rows = Vec::with_capacity(2);
    for row in &sym {
        rows.push(row.iter().map(evaluate_poly).collect::<Result<Vec<_>>>()?);
    }
    Ok(BundleProjection {
        n: i64::from(sign),
        form: Form::P1,
        mat: MatPodles::from_rows(rows)?,
    })
}

/// The boundary symbol of `Q_N` predicted by `f_n(0) = 1`, `g_n(0) = s^{2n}`.
pub fn expected_q_symbol(n: i64, params: &Params) -> [[LaurentSymbol; 2]; 2] {
    let k = n.abs();
    let sn = params.sf().powi(k as i32);
    let den = 1.0 + sn * sn;
    let c = |k: i64, v: f64| LaurentSymbol::monomial(k, v.into());
    if n == 0 {
        return [
            [c(0, 1.0), LaurentSymbol::zero()],
            [LaurentSymbol::zero(), LaurentSymbol::zero()],
        ];
    }
    let sign = if n > 0 { 1.0 } else { -1.0 };
    let (top, bottom) = if n > 0 {
        (sn * sn / den, 1.0 / den)
    } else {
        (1.0 / den, sn * sn / den)
    };
    [
        [c(0, top), c(k, sign * sn / den)],
        [c(-k, sign * sn / den), c(0, bottom)],
    ]
}

fn symbol_gap(m: &MatPodles, want: &[[LaurentSymbol; 2]; 2]) -> f64 {
    let mut gap: f64 = 0.0;
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            let e = m.get(i, j);
            let d = match (e.minus().symbol(), e.plus().symbol()) {
                (Ok(a), Ok(b)) => a.max_diff(w).max(b.max_diff(w)),
                _ => f64::INFINITY,
            };
            gap = gap.max(d);
        }
    }
    gap
}

fn projection_checks(label: &str, p: &BundleProjection, checks: &mut Vec<Check>) -> Result<()> {
    let (idem, sa) = p.projection_residuals(CHECK_N)?;
    checks.push(Check::new(format!("{label}^2 = {label}"), idem, BUNDLE_TOL));
    checks.push(Check::new(format!("{label}^* = {label}"), sa, BUNDLE_TOL));
    Ok(())
}

/// All projection and equivalence identities at winding number `n`.
pub fn verify_bundle_identities(n: i64, params: &Params) -> Result<CheckReport> {
    let mut checks = Vec::new();
    let e = build_e(n, params);
    projection_checks(&format!("E_{n}"), &e, &mut checks)?;
    let sym_e = e.mat.get(0, 0).symbol()?;
    checks.push(Check::new(
        format!("symbol(E_{n}) = 1"),
        sym_e.max_diff(&LaurentSymbol::constant(1.0.into())),
        COMPLEMENT_TOL,
    ));

    let q = build_q(n, params)?;
    projection_checks(&format!("Q_{n}"), &q, &mut checks)?;
    checks.push(Check::new(
        format!("symbol(Q_{n}) closed form"),
        symbol_gap(&q.mat, &expected_q_symbol(n, params)),
        COMPLEMENT_TOL,
    ));

    if n != 0 {
        let k = n.abs();
        let qm = build_q(-n, params)?;
        let sum = q.mat.add(&qm.mat)?;
        checks.push(Check::new(
            format!("Q_{n} + Q_{} = 1", -n),
            sum.residual(&MatPodles::identity(2, params), CHECK_N)?,
            COMPLEMENT_TOL,
        ));

        let y = build_y(n, params)?;
        let ys = y.star_transpose();
        checks.push(Check::new(
            format!("Y_{n}^* Y_{n} = Q_{n}"),
            ys.mul(&y)?.residual(&q.mat, CHECK_N)?,
            BUNDLE_TOL,
        ));
        checks.push(Check::new(
            format!("Y_{n} Y_{n}^* = E_{n}"),
            y.mul(&ys)?.residual(&e.mat, CHECK_N)?,
            BUNDLE_TOL,
        ));

        // (g/(f+g))(q^{-2k}ζ)·(P, P) = (0, P) and (f/(f+g))(q^{-2k}ζ)·(P, P) = (P, 0), P = 1 − S^kS^{*k}.
        let b = BottFactors::new(k as u32, params);
        let lambda = to_f64(&params.q_pow(-2 * k));
        let zeta = make_generators(params).zeta;
        let proj = ShiftSeries::identity().sub(&s_pow_n(k));
        let pp = PodlesElem::diagonal_embed(&proj, params);
        let hg = &zeta_fn(b, BottEntry::G, lambda, &zeta)? * &pp;
        let hf = &zeta_fn(b, BottEntry::F, lambda, &zeta)? * &pp;
        let zero = ShiftSeries::zero();
        let gap_g = hg
            .minus()
            .max_diff(&zero, CHECK_N)
            .max(hg.plus().max_diff(&proj, CHECK_N));
        let gap_f = hf
            .minus()
            .max_diff(&proj, CHECK_N)
            .max(hf.plus().max_diff(&zero, CHECK_N));
        checks.push(Check::new(
            format!("g/(f+g)(q^-2n zeta)(P,P) = (0,P), n = {k}"),
            gap_g,
            BUNDLE_TOL,
        ));
        checks.push(Check::new(
            format!("f/(f+g)(q^-2n zeta)(P,P) = (P,0), n = {k}"),
            gap_f,
            BUNDLE_TOL,
        ));
    }

    if n.abs() == 1 {
        let p1 = build_p1_matrix(n as i8, params)?;
        let label = if n > 0 { "P_1" } else { "P_-1" };
        projection_checks(label, &p1, &mut checks)?;
        let tr = p1.mat.trace()?.symbol()?;
        checks.push(Check::new(
            format!("symbol(tr {label}) = 1"),
            tr.max_diff(&LaurentSymbol::constant(1.0.into())),
            COMPLEMENT_TOL,
        ));
    }
    Ok(CheckReport {
        n: Some(n),
        q: params.q().to_string(),
        s: params.s().to_string(),
        checks,
    })
}

/// `Q_N` entries must have certified tails; used by tests and the pairing layer.
pub fn tails_hold(p: &BundleProjection, n_max: u64) -> bool {
    p.mat.entries().iter().all(|e| e.tails_hold(n_max))
}
