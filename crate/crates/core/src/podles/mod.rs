//! `C(S²_qs)` as pairs `(a₀, a₁)` of Toeplitz operators with equal symbols.
//!
//! The first leg is the `ρ₋` image, the second the `ρ₊` image. The symbol
//! representation `ρ₀` is not stored separately: it is the common symbol.

mod disc;
mod matrix;

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ncpoly::{Basis, Gen, NCPoly};
use crate::params::{to_f64, Params};
use crate::report::{Check, CheckReport};
use crate::shiftcalc::{ss_func_calc, DiagFn, LaurentSymbol, ScalarFn, ShiftSeries, Tail, CHECK_N};

pub use disc::{
    fibre_check_and_psi, psi, quantum_disc_check, DiscOperators, FibreResult, DISC_TOL,
};
pub use matrix::{mat_arith, MatOp, MatPodles};

/// Coefficient-wise tolerance for the symbol-matching invariant.
pub const SYMBOL_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct PodlesElem {
    minus: ShiftSeries,
    plus: ShiftSeries,
    params: Params,
}

impl PodlesElem {
    /// Checks that both legs have the same symbol.
    pub fn new(minus: ShiftSeries, plus: ShiftSeries, params: &Params) -> Result<Self> {
        let (sm, sp) = (minus.symbol()?, plus.symbol()?);
        let diff = sm.max_diff(&sp);
        if diff > SYMBOL_TOL {
            return Err(Error::Incompatible(format!(
                "leg symbols differ: {sm} vs {sp} (by {diff:e})"
            )));
        }
        Ok(Self {
            minus,
            plus,
            params: params.clone(),
        })
    }

    /// For results of operations that preserve symbol matching.
    fn from_legs(minus: ShiftSeries, plus: ShiftSeries, params: &Params) -> Self {
        Self {
            minus,
            plus,
            params: params.clone(),
        }
    }

    pub fn scalar(c: f64, params: &Params) -> Self {
        Self::from_legs(ShiftSeries::scalar(c), ShiftSeries::scalar(c), params)
    }

    pub fn one(params: &Params) -> Self {
        Self::scalar(1.0, params)
    }

    pub fn zero(params: &Params) -> Self {
        Self::from_legs(ShiftSeries::zero(), ShiftSeries::zero(), params)
    }

    /// `(x, x)` for any Toeplitz operator `x`.
    pub fn diagonal_embed(x: &ShiftSeries, params: &Params) -> Self {
        Self::from_legs(x.clone(), x.clone(), params)
    }

    /// `𝔖^k = (S^k, S^k)`, with `k < 0` meaning `𝔖^{*|k|}`.
    pub fn frak_shift(k: i64, params: &Params) -> Self {
        Self::diagonal_embed(&ShiftSeries::shift(k), params)
    }

    pub fn minus(&self) -> &ShiftSeries {
        &self.minus
    }

    pub fn plus(&self) -> &ShiftSeries {
        &self.plus
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// The common symbol (taken from the `ρ₊` leg).
    pub fn symbol(&self) -> Result<LaurentSymbol> {
        self.plus.symbol()
    }

    pub fn symbol_gap(&self) -> Result<f64> {
        Ok(self.minus.symbol()?.max_diff(&self.plus.symbol()?))
    }

    fn same_params(&self, other: &Self) {
        assert_eq!(
            self.params, other.params,
            "PodlesElem operands with different parameters"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_params(other);
        Self::from_legs(
            self.minus.add(&other.minus),
            self.plus.add(&other.plus),
            &self.params,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_params(other);
        Self::from_legs(
            self.minus.sub(&other.minus),
            self.plus.sub(&other.plus),
            &self.params,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_params(other);
        Self::from_legs(
            self.minus.mul(&other.minus),
            self.plus.mul(&other.plus),
            &self.params,
        )
    }

    pub fn star(&self) -> Self {
        Self::from_legs(self.minus.star(), self.plus.star(), &self.params)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_legs(self.minus.scale(c), self.plus.scale(c), &self.params)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.params), |acc, _| {
            PodlesElem::mul(&acc, self)
        })
    }

    /// Largest pointwise difference over both legs on `n ≤ n_max`.
    pub fn residual(&self, other: &Self, n_max: u64) -> f64 {
        self.minus
            .max_diff(&other.minus, n_max)
            .max(self.plus.max_diff(&other.plus, n_max))
    }

    pub fn tails_hold(&self, n_max: u64) -> bool {
        self.minus.tails_hold(n_max) && self.plus.tails_hold(n_max)
    }
}

impl Add for PodlesElem {
    type Output = PodlesElem;
    fn add(self, rhs: PodlesElem) -> PodlesElem {
        PodlesElem::add(&self, &rhs)
    }
}

impl Mul for PodlesElem {
    type Output = PodlesElem;
    fn mul(self, rhs: PodlesElem) -> PodlesElem {
        PodlesElem::mul(&self, &rhs)
    }
}

impl Add for &PodlesElem {
    type Output = PodlesElem;
    fn add(self, rhs: &PodlesElem) -> PodlesElem {
        PodlesElem::add(self, rhs)
    }
}

impl Sub for &PodlesElem {
    type Output = PodlesElem;
    fn sub(self, rhs: &PodlesElem) -> PodlesElem {
        PodlesElem::sub(self, rhs)
    }
}

impl Mul for &PodlesElem {
    type Output = PodlesElem;
    fn mul(self, rhs: &PodlesElem) -> PodlesElem {
        PodlesElem::mul(self, rhs)
    }
}

impl Neg for &PodlesElem {
    type Output = PodlesElem;
    fn neg(self) -> PodlesElem {
        self.scale(-1.0)
    }
}

#[derive(Clone, Debug)]
pub struct Generators {
    pub zeta: PodlesElem,
    pub eta: PodlesElem,
    /// `𝔖 = (S, S)`.
    pub frak_s: PodlesElem,
}

/// `n ↦ q^{2(n+1)}` with its exact tail certificate.
pub fn spectral_diag(params: &Params) -> DiagFn {
    let q2 = to_f64(&(params.q() * params.q()));
    DiagFn::new(
        move |n| q2.powi(n as i32 + 1),
        Some(0.0),
        Tail::Geometric { c: q2, r: q2 },
    )
}

pub fn make_generators(params: &Params) -> Generators {
    let q2 = to_f64(&(params.q() * params.q()));
    let s = params.sf();
    let s2 = to_f64(&(params.s() * params.s()));
    let x = spectral_diag(params);

    let zeta_minus = ShiftSeries::diag(x.scale(-s2));
    let zeta_plus = ShiftSeries::diag(x.clone());

    // ρ₋(η) = S·s√((1+s²x)(1−x)),  ρ₊(η) = S·√((1−x)(s²+x)); both tend to s.
    let eta_minus = DiagFn::new(
        move |n| {
            let x = q2.powi(n as i32 + 1);
            s * ((1.0 + s2 * x) * (1.0 - x)).sqrt()
        },
        Some(s),
        Tail::Geometric {
            c: s * ((s2 - 1.0).abs() + s2 * q2) * q2,
            r: q2,
        },
    );
    let eta_plus = DiagFn::new(
        move |n| {
            let x = q2.powi(n as i32 + 1);
            ((1.0 - x) * (s2 + x)).sqrt()
        },
        Some(s),
        Tail::Geometric {
            c: ((1.0 - s2).abs() + q2) * q2 / s,
            r: q2,
        },
    );
    Generators {
        zeta: PodlesElem::from_legs(zeta_minus, zeta_plus, params),
        eta: PodlesElem::from_legs(
            ShiftSeries::band(1, eta_minus),
            ShiftSeries::band(1, eta_plus),
            params,
        ),
        frak_s: PodlesElem::frak_shift(1, params),
    }
}

/// Substitutes the represented generators into a sphere polynomial.
pub fn evaluate_poly(p: &NCPoly) -> Result<PodlesElem> {
    if p.basis() != Basis::Podles {
        return Err(Error::Incompatible(format!(
            "expected a sphere polynomial, got {:?} basis",
            p.basis()
        )));
    }
    let params = p.params();
    let g = make_generators(params);
    let eta_star = g.eta.star();
    Ok(p.eval_with(
        PodlesElem::one(params),
        |x| match x {
            Gen::Zeta => g.zeta.clone(),
            Gen::Eta => g.eta.clone(),
            Gen::EtaStar => eta_star.clone(),
            other => unreachable!("{other:?} is not a sphere generator"),
        },
        |c, t| t.scale(to_f64(c)),
    ))
}

/// Legwise functional calculus of an element whose legs are both diagonal.
pub fn func_calc(f: &ScalarFn, x: &PodlesElem) -> Result<PodlesElem> {
    let minus = ss_func_calc(f, &x.minus, CHECK_N)?;
    let plus = ss_func_calc(f, &x.plus, CHECK_N)?;
    PodlesElem::new(minus, plus, &x.params)
}

/// `f(ζ)`.
pub fn func_calc_zeta(f: &ScalarFn, params: &Params) -> Result<PodlesElem> {
    func_calc(f, &make_generators(params).zeta)
}

/// Residual tolerance of the operator suite.
pub const OPERATOR_TOL: f64 = 1e-10;

/// Sphere relations, polar decomposition of `η`, the `𝔖`–`ζ` commutation and
/// intertwining instances `f(ζ)𝔖 = 𝔖f(q²ζ)`, followed by the disc checks.
pub fn verify_operator_relations(params: &Params) -> Result<CheckReport> {
    let g = make_generators(params);
    let q2 = to_f64(&(params.q() * params.q()));
    let s2 = to_f64(&(params.s() * params.s()));
    let one = PodlesElem::one(params);
    let (z, e, es, fs) = (&g.zeta, &g.eta, &g.eta.star(), &g.frak_s);
    let zq = z.scale(1.0 / q2);
    let tol = OPERATOR_TOL;

    let mut checks = vec![
        Check::new(
            "zeta eta = q^2 eta zeta",
            (z * e).residual(&(e * z).scale(q2), CHECK_N),
            tol,
        ),
        Check::new(
            "eta^* eta = (1 - zeta)(s^2 + zeta)",
            (es * e).residual(&(&(&one - z) * &(&one.scale(s2) + z)), CHECK_N),
            tol,
        ),
        Check::new(
            "eta eta^* = (1 - q^-2 zeta)(s^2 + q^-2 zeta)",
            (e * es).residual(&(&(&one - &zq) * &(&one.scale(s2) + &zq)), CHECK_N),
            tol,
        ),
        Check::new(
            "frakS zeta = q^-2 zeta frakS",
            (fs * z).residual(&(z * fs).scale(1.0 / q2), CHECK_N),
            tol,
        ),
        Check::new(
            "frakS^* frakS = 1",
            (&fs.star() * fs).residual(&one, CHECK_N),
            tol,
        ),
    ];

    let polar_fn = ScalarFn::new(
        "sqrt((1-t)(s^2+t))",
        move |t| (1.0 - t) * (s2 + t) >= 0.0,
        move |t| ((1.0 - t) * (s2 + t)).sqrt(),
    );
    let polar = fs * &func_calc(&polar_fn, z)?;
    checks.push(Check::new(
        "eta = frakS sqrt((1 - zeta)(s^2 + zeta))",
        polar.residual(e, CHECK_N),
        tol,
    ));

    let samples = [
        ("t^2", (|t| t * t) as fn(f64) -> f64),
        ("1/(1+t^2)", |t| 1.0 / (1.0 + t * t)),
        ("exp(t)", f64::exp),
    ];
    for (name, f) in samples {
        let fz = func_calc(&ScalarFn::everywhere(name, f), z)?;
        let fq = func_calc(&ScalarFn::everywhere(name, f), &z.scale(q2))?;
        checks.push(Check::new(
            format!("f(zeta) frakS = frakS f(q^2 zeta), f = {name}"),
            (&fz * fs).residual(&(fs * &fq), CHECK_N),
            tol,
        ));
        checks.push(Check::new(
            format!("frakS^* f(zeta) = f(q^2 zeta) frakS^*, f = {name}"),
            (&fs.star() * &fz).residual(&(&fq * &fs.star()), CHECK_N),
            tol,
        ));
    }

    checks.extend(quantum_disc_check(params)?.checks);
    Ok(CheckReport {
        n: None,
        q: params.q().to_string(),
        s: params.s().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{nc_normalize, parse::parse_raw, Strategy};

    fn params() -> Params {
        Params::from_fracs((1, 2), (3, 2)).unwrap()
    }

    fn poly(text: &str, p: &Params) -> NCPoly {
        nc_normalize(
            &parse_raw(text, p).unwrap(),
            Basis::Podles,
            p,
            Strategy::Leftmost,
        )
        .unwrap()
    }

    #[test]
    fn generators_satisfy_relations() {
        let p = params();
        let g = make_generators(&p);
        let (q2, s2) = (0.25, 2.25);
        let one = PodlesElem::one(&p);
        let z = &g.zeta;
        let (e, es) = (&g.eta, &g.eta.star());
        // ζη = q²ηζ
        assert!((z * e).residual(&(e * z).scale(q2), CHECK_N) <= 1e-12);
        // η*η = (1−ζ)(s²+ζ)
        let rhs = &(&one - z) * &(&one.scale(s2) + z);
        assert!((es * e).residual(&rhs, CHECK_N) <= 1e-12);
        // ηη* = (1−q⁻²ζ)(s²+q⁻²ζ)
        let zq = z.scale(1.0 / q2);
        let rhs = &(&one - &zq) * &(&one.scale(s2) + &zq);
        assert!((e * es).residual(&rhs, CHECK_N) <= 1e-12);
        assert_eq!(g.zeta.plus().diagonal().eval(0), q2);
        assert!(g.zeta.tails_hold(300) && g.eta.tails_hold(300));
    }

    #[test]
    fn generator_symbols() {
        let p = params();
        let g = make_generators(&p);
        assert_eq!(g.zeta.symbol().unwrap(), LaurentSymbol::zero());
        let su = LaurentSymbol::monomial(1, 1.5.into());
        assert!(g.eta.minus().symbol().unwrap().approx_eq(&su, 1e-15));
        assert!(g.eta.plus().symbol().unwrap().approx_eq(&su, 1e-15));
        assert_eq!(
            g.frak_s.symbol().unwrap(),
            LaurentSymbol::monomial(1, 1.0.into())
        );
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let p = params();
        let g = make_generators(&p);
        let ze = evaluate_poly(&poly("z*e", &p)).unwrap();
        assert!(ze.residual(&(&g.zeta * &g.eta), CHECK_N) <= 1e-14);
        let ese = evaluate_poly(&poly("es*e", &p)).unwrap();
        let direct = evaluate_poly(&poly("(1 - z)*(s^2 + z)", &p)).unwrap();
        assert!(ese.residual(&direct, CHECK_N) <= 1e-12);
        assert!(matches!(
            evaluate_poly(&NCPoly::one(Basis::SuQ2, &p)),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn zeta_functional_calculus() {
        let p = params();
        let one = func_calc_zeta(&ScalarFn::everywhere("1", |_| 1.0), &p).unwrap();
        assert_eq!(one.residual(&PodlesElem::one(&p), CHECK_N), 0.0);
        let f = func_calc_zeta(&ScalarFn::everywhere("1-t", |t| 1.0 - t), &p).unwrap();
        let d = f.plus().diagonal();
        assert!((d.eval(0) - 0.75).abs() < 1e-15 && d.limit() == Some(1.0));
    }

    #[test]
    fn operator_suite_passes() {
        for (q, s) in [((3, 10), (1, 2)), ((4, 5), (2, 1))] {
            let p = Params::from_fracs(q, s).unwrap();
            let r = verify_operator_relations(&p).unwrap();
            for c in &r.checks {
                assert!(c.pass, "{} residual {:e}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn mismatched_symbols_rejected() {
        let p = params();
        let r = PodlesElem::new(ShiftSeries::shift(1), ShiftSeries::identity(), &p);
        assert!(matches!(r, Err(Error::Incompatible(_))));
    }
}
