//! Quantum-disc coordinates on the two hemispheres and the line-bundle gluing.

use super::{make_generators, PodlesElem, SYMBOL_TOL};
use crate::error::{Error, Result};
use crate::params::{to_f64, Params};
use crate::report::{Check, CheckReport};
use crate::shiftcalc::{ss_func_calc, LaurentSymbol, Lipschitz, ScalarFn, ShiftSeries, CHECK_N};

/// Residual tolerance of the disc checks.
pub const DISC_TOL: f64 = 1e-12;

/// Stereographic disc coordinates `z₋ = s⁻¹ρ₋(η)(1−ρ₋(ζ))^{−1/2}` and `z₊ = ρ₊(η)(s²+ρ₊(ζ))^{−1/2}`.
#[derive(Clone, Debug)]
pub struct DiscOperators {
    pub z_minus: ShiftSeries,
    pub z_plus: ShiftSeries,
}

impl DiscOperators {
    pub fn new(params: &Params) -> Result<Self> {
        let g = make_generators(params);
        let s = params.sf();
        let s2 = s * s;
        let inv_sqrt_minus = ScalarFn::new("(1-t)^(-1/2)", |t| t < 1.0, |t| (1.0 - t).powf(-0.5))
            .with_lipschitz(Lipschitz::Sampled);
        let inv_sqrt_plus = ScalarFn::new(
            "(s^2+t)^(-1/2)",
            move |t| t > -s2,
            move |t| (s2 + t).powf(-0.5),
        )
        .with_lipschitz(Lipschitz::Sampled);
        let z_minus = g
            .eta
            .minus()
            .mul(&ss_func_calc(&inv_sqrt_minus, g.zeta.minus(), CHECK_N)?)
            .scale(1.0 / s);
        let z_plus = g
            .eta
            .plus()
            .mul(&ss_func_calc(&inv_sqrt_plus, g.zeta.plus(), CHECK_N)?);
        Ok(Self { z_minus, z_plus })
    }
}

fn disc_defect(z: &ShiftSeries, q2: f64) -> f64 {
    let lhs = z.star().mul(z).sub(&z.mul(&z.star()).scale(q2));
    lhs.max_diff(&ShiftSeries::scalar(1.0 - q2), CHECK_N)
}

/// Disc relation on both legs, recovery of `ζ` and `η` from `z±`, and the boundary symbols.
pub fn quantum_disc_check(params: &Params) -> Result<CheckReport> {
    let g = make_generators(params);
    let d = DiscOperators::new(params)?;
    let q2 = to_f64(&(params.q() * params.q()));
    let s = params.sf();
    let s2 = s * s;
    let k = 1.0 / (1.0 / q2 - 1.0);
    let (zm, zp) = (&d.z_minus, &d.z_plus);
    let comm = |z: &ShiftSeries| z.mul(&z.star()).sub(&z.star().mul(z));

    let mut checks = vec![
        Check::new(
            "z_-^* z_- - q^2 z_- z_-^* = 1 - q^2",
            disc_defect(zm, q2),
            DISC_TOL,
        ),
        Check::new(
            "z_+^* z_+ - q^2 z_+ z_+^* = 1 - q^2",
            disc_defect(zp, q2),
            DISC_TOL,
        ),
        Check::new(
            "rho_-(zeta) = (q^-2 - 1)^-1 s^2 (z_- z_-^* - z_-^* z_-)",
            comm(zm).scale(k * s2).max_diff(g.zeta.minus(), CHECK_N),
            DISC_TOL,
        ),
        Check::new(
            "rho_+(zeta) = (q^-2 - 1)^-1 (z_+^* z_+ - z_+ z_+^*)",
            comm(zp).scale(-k).max_diff(g.zeta.plus(), CHECK_N),
            DISC_TOL,
        ),
        Check::new(
            "(q^-2 - 1)^-1 (z_+ z_+^* - z_+^* z_+) = -rho_+(zeta)",
            comm(zp)
                .scale(k)
                .max_diff(&g.zeta.plus().scale(-1.0), CHECK_N),
            DISC_TOL,
        ),
    ];

    let sqrt_minus = ScalarFn::new("(1-t)^(1/2)", |t| t <= 1.0, |t| (1.0 - t).sqrt());
    let sqrt_plus = ScalarFn::new("(s^2+t)^(1/2)", move |t| t >= -s2, move |t| (s2 + t).sqrt());
    let eta_minus = zm
        .mul(&ss_func_calc(&sqrt_minus, g.zeta.minus(), CHECK_N)?)
        .scale(s);
    let eta_plus = zp.mul(&ss_func_calc(&sqrt_plus, g.zeta.plus(), CHECK_N)?);
    checks.push(Check::new(
        "rho_-(eta) = s z_- (1 - rho_-(zeta))^(1/2)",
        eta_minus.max_diff(g.eta.minus(), CHECK_N),
        DISC_TOL,
    ));
    checks.push(Check::new(
        "rho_+(eta) = z_+ (s^2 + rho_+(zeta))^(1/2)",
        eta_plus.max_diff(g.eta.plus(), CHECK_N),
        DISC_TOL,
    ));

    let u = LaurentSymbol::monomial(1, 1.0.into());
    for (name, z) in [("symbol(z_-) = U", zm), ("symbol(z_+) = U", zp)] {
        let gap = z.symbol().map_or(f64::INFINITY, |sym| sym.max_diff(&u));
        checks.push(Check::new(name, gap, DISC_TOL));
    }
    Ok(CheckReport {
        n: None,
        q: params.q().to_string(),
        s: params.s().to_string(),
        checks,
    })
}

#[derive(Clone, Debug)]
pub struct FibreResult {
    pub member: bool,
    /// `Ψ_N(a₀, a₁)` when `member`.
    pub image: Option<PodlesElem>,
}

/// Tests `σ(a₀) = U^N σ(a₁)` and, for members, applies
/// `Ψ_N(a₀, a₁) = (a₀S^{*N}, a₁)` for `N ≥ 0` and `(a₀, a₁S^{*|N|})` for `N < 0`.
pub fn fibre_check_and_psi(
    a0: &ShiftSeries,
    a1: &ShiftSeries,
    n: i64,
    params: &Params,
) -> Result<FibreResult> {
    let shifted = LaurentSymbol::monomial(n, 1.0.into()).mul(&a1.symbol()?);
    let member = a0.symbol()?.approx_eq(&shifted, SYMBOL_TOL);
    if !member {
        return Ok(FibreResult {
            member,
            image: None,
        });
    }
    let back = ShiftSeries::shift(-n.abs());
    let (m, p) = if n >= 0 {
        (a0.mul(&back), a1.clone())
    } else {
        (a0.clone(), a1.mul(&back))
    };
    Ok(FibreResult {
        member,
        image: Some(PodlesElem::new(m, p, params)?),
    })
}

/// `Ψ_N`, failing for pairs outside `L_N`.
pub fn psi(a0: &ShiftSeries, a1: &ShiftSeries, n: i64, params: &Params) -> Result<PodlesElem> {
    fibre_check_and_psi(a0, a1, n, params)?
        .image
        .ok_or(Error::NotInLineBundle { n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::from_fracs((3, 5), (2, 1)).unwrap()
    }

    #[test]
    fn disc_report_passes() {
        let r = quantum_disc_check(&params()).unwrap();
        for c in &r.checks {
            assert!(c.pass, "{} residual {:e}", c.name, c.residual);
        }
    }

    #[test]
    fn shift_pair_lies_in_first_bundle() {
        let p = params();
        let s = ShiftSeries::shift(1);
        let r = fibre_check_and_psi(&s, &ShiftSeries::identity(), 1, &p).unwrap();
        assert!(r.member);
        let img = r.image.unwrap();
        let e1 = PodlesElem::new(s.mul(&s.star()), ShiftSeries::identity(), &p).unwrap();
        assert_eq!(img.residual(&e1, CHECK_N), 0.0);
        assert!(
            !fibre_check_and_psi(&s, &ShiftSeries::identity(), -1, &p)
                .unwrap()
                .member
        );
        assert_eq!(
            psi(&s, &ShiftSeries::identity(), 2, &p).unwrap_err(),
            Error::NotInLineBundle { n: 2 }
        );
    }

    #[test]
    fn psi_round_trip() {
        let p = params();
        let g = make_generators(&p);
        let (a0, a1) = (g.eta.minus().clone(), g.eta.plus().clone());
        for n in -3..=3i64 {
            let sn = ShiftSeries::shift(n.abs());
            let en = if n >= 0 {
                PodlesElem::new(sn.mul(&sn.star()), ShiftSeries::identity(), &p).unwrap()
            } else {
                PodlesElem::new(ShiftSeries::identity(), sn.mul(&sn.star()), &p).unwrap()
            };
            let (b0, b1) = if n >= 0 {
                (a0.mul(&sn), a1.clone())
            } else {
                (a0.clone(), a1.mul(&sn))
            };
            let img = psi(&b0, &b1, n, &p).unwrap();
            let want = g.eta.mul(&en);
            assert!(img.residual(&want, CHECK_N) <= 1e-15, "N = {n}");
            assert!(img.mul(&en).residual(&img, CHECK_N) <= 1e-15);
        }
    }
}
