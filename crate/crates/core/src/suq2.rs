//! Explicit formulas inside `O(SU_q(2))`: the embedding of the Podleś sphere,
//! the weight vectors `u_N`, `w_N`, their commutation and norm identities,
//! the `s ↔ 1/s` isomorphism and the rank-two projection `P₁`.
//!
//! Several identities mix the sphere parameter `s` with `q^{±n}s`. All such
//! instances are embedded into the one ambient `O(SU_q(2))` at fixed `(q, s)`;
//! the ambient `s` only matters for `u_N, w_N`.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{Basis, Gen, NCPoly};
use crate::params::{int, Params, Rational};

fn gen(g: Gen, p: &Params) -> NCPoly {
    NCPoly::generator(g, p)
}

fn one(p: &Params) -> NCPoly {
    NCPoly::one(Basis::SuQ2, p)
}

fn c(p: &Params, x: Rational) -> NCPoly {
    NCPoly::constant(Basis::SuQ2, p, x)
}

/// Images of `ζ_σ`, `η_σ`, `η_σ*` in the ambient `O(SU_q(2))`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sphere_s: Rational,
    pub zeta: NCPoly,
    pub eta: NCPoly,
    pub eta_star: NCPoly,
}

impl Embedding {
    /// `η_σ = (δ + q⁻¹σβ)(β − σδ)`, `ζ_σ = 1 − (α − qσγ)(δ + σβ)`.
    pub fn new(ambient: &Params, sphere_s: &Rational) -> Self {
        let p = ambient;
        let (a, b, g, d) = (
            gen(Gen::Alpha, p),
            gen(Gen::Beta, p),
            gen(Gen::Gamma, p),
            gen(Gen::Delta, p),
        );
        let sg = sphere_s;
        let eta = (&d + &b.scale(&(p.q_pow(-1) * sg))) * (&b - &d.scale(sg));
        let zeta = &one(p) - &((&a - &g.scale(&(p.q_pow(1) * sg))) * (&d + &b.scale(sg)));
        let eta_star = eta.star();
        Self {
            sphere_s: sg.clone(),
            zeta,
            eta,
            eta_star,
        }
    }

    /// Pushes a polynomial in `ζ, η, η*` (at sphere parameter `sphere_s`) into `O(SU_q(2))`.
    pub fn embed(&self, x: &NCPoly) -> Result<NCPoly> {
        if x.basis() != Basis::Podles {
            return Err(Error::Incompatible(
                "only sphere polynomials can be embedded".into(),
            ));
        }
        if x.params().q() != self.zeta.params().q() || x.params().s() != &self.sphere_s {
            return Err(Error::Incompatible(
                "embedding built for different parameters".into(),
            ));
        }
        let ambient = self.zeta.params();
        Ok(x.eval_with(
            one(ambient),
            |g| match g {
                Gen::Zeta => self.zeta.clone(),
                Gen::Eta => self.eta.clone(),
                Gen::EtaStar => self.eta_star.clone(),
                _ => unreachable!(),
            },
            |c, w| w.scale(c),
        ))
    }
}

/// `(ζ_s, η_s)` inside `O(SU_q(2))` for the sphere with the same parameters.
pub fn podles_embedding(params: &Params) -> (NCPoly, NCPoly) {
    let e = Embedding::new(params, params.s());
    (e.zeta, e.eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeightKind {
    U,
    W,
}

#[derive(Clone, Debug)]
pub struct WeightVector {
    pub n: i64,
    pub kind: WeightKind,
    pub poly: NCPoly,
}

/// The highest (`U`) and lowest (`W`) weight vectors:
///
/// ```text
/// u_N = q^{-N} Π_{k=1..N} (β − q^k s δ),              N > 0
/// u_N = Π_{k=1..|N|} (δ + q^{-k} s β),                N < 0
/// w_N = Π_{k=1..N} (α − q^k s γ),                     N > 0
/// w_N = (−q)^{|N|} Π_{k=1..|N|} (γ + q^{-k} s α),     N < 0
/// ```
///
/// and `u_0 = w_0 = 1`.
pub fn build_weight_vector(n: i64, kind: WeightKind, params: &Params) -> WeightVector {
    let p = params;
    let s = p.s();
    let (a, b, g, d) = (
        gen(Gen::Alpha, p),
        gen(Gen::Beta, p),
        gen(Gen::Gamma, p),
        gen(Gen::Delta, p),
    );
    let mut poly = one(p);
    let m = n.abs();
    for k in 1..=m {
        let factor = match (kind, n > 0) {
            (WeightKind::U, true) => &b - &d.scale(&(p.q_pow(k) * s)),
            (WeightKind::U, false) => &d + &b.scale(&(p.q_pow(-k) * s)),
            (WeightKind::W, true) => &a - &g.scale(&(p.q_pow(k) * s)),
            (WeightKind::W, false) => &g + &a.scale(&(p.q_pow(-k) * s)),
        };
        poly = &poly * &factor;
    }
    let prefactor = match (kind, n.signum()) {
        (WeightKind::U, 1) => p.q_pow(-n),
        (WeightKind::W, -1) => crate::params::rational_pow(&-p.q().clone(), m),
        _ => Rational::one(),
    };
    WeightVector {
        n,
        kind,
        poly: poly.scale(&prefactor),
    }
}

fn u(n: i64, p: &Params) -> NCPoly {
    build_weight_vector(n, WeightKind::U, p).poly
}

fn w(n: i64, p: &Params) -> NCPoly {
    build_weight_vector(n, WeightKind::W, p).poly
}

/// `Π_{k ∈ range} (coef(k)·1 + scale(k)·x)`.
fn product_of_linear(
    p: &Params,
    x: &NCPoly,
    ks: impl Iterator<Item = i64>,
    term: impl Fn(i64) -> (Rational, Rational),
) -> NCPoly {
    let mut acc = one(p);
    for k in ks {
        let (c0, c1) = term(k);
        acc = &acc * &(&c(p, c0) + &x.scale(&c1));
    }
    acc
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: i64,
    pub q: String,
    pub s: String,
    pub identities: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }
}

/// Checks the weight-vector identities for `u_{±n}`, `w_{±n}` against the sphere
/// generators at parameters `s` and `q^{±n}s`:
/// six commutation rules, four `xx*` norms, two `uw*` products and four `x*x` norms.
pub fn verify_weight_identities(n: i64, params: &Params) -> Result<IdentityReport> {
    if n < 0 {
        return Err(Error::InvalidParams(format!(
            "n = {n} must be non-negative"
        )));
    }
    let p = params;
    let s = p.s();
    let s2 = s * s;
    let here = Embedding::new(p, s);
    let up = Embedding::new(p, &(p.q_pow(n) * s));
    let down = Embedding::new(p, &(p.q_pow(-n) * s));
    let (un, wn, um, wm) = (u(n, p), w(n, p), u(-n, p), w(-n, p));
    let (zs, es) = (&here.zeta, &here.eta);
    let qp = |e: i64| p.q_pow(e);
    let mut out = Vec::new();
    let mut check = |name: &str, lhs: NCPoly, rhs: NCPoly| {
        out.push(IdentityCheck {
            name: name.to_string(),
            pass: lhs == rhs,
        });
    };

    check("u_n zeta_{q^n s} = zeta_s u_n", &un * &up.zeta, zs * &un);
    check(
        "w_n zeta_{q^n s} = q^{2n} zeta_s w_n",
        &wn * &up.zeta,
        (zs * &wn).scale(&qp(2 * n)),
    );
    check(
        "u_{-n} zeta_{q^{-n} s} = q^{-2n} zeta_s u_{-n}",
        &um * &down.zeta,
        (zs * &um).scale(&qp(-2 * n)),
    );
    check(
        "w_{-n} zeta_{q^{-n} s} = zeta_s w_{-n}",
        &wm * &down.zeta,
        zs * &wm,
    );
    check(
        "u_n eta_{q^n s} = q^n eta_s u_n",
        &un * &up.eta,
        (es * &un).scale(&qp(n)),
    );
    check(
        "u_{-n} eta_{q^{-n} s} = q^{-n} eta_s u_{-n}",
        &um * &down.eta,
        (es * &um).scale(&qp(-n)),
    );

    check(
        "u_n u_n* = q^{-2n} prod_{k=1}^{n} (q^{2k} s^2 + zeta_s)",
        &un * &un.star(),
        product_of_linear(p, zs, 1..=n, |k| (qp(2 * k) * &s2, Rational::one())).scale(&qp(-2 * n)),
    );
    check(
        "w_n w_n* = prod_{k=0}^{n-1} (1 - q^{2k} zeta_s)",
        &wn * &wn.star(),
        product_of_linear(p, zs, 0..n, |k| (Rational::one(), -qp(2 * k))),
    );
    check(
        "u_{-n} u_{-n}* = prod_{k=1}^{n} (1 - q^{-2k} zeta_s)",
        &um * &um.star(),
        product_of_linear(p, zs, 1..=n, |k| (Rational::one(), -qp(-2 * k))),
    );
    check(
        "w_{-n} w_{-n}* = prod_{k=0}^{n-1} (q^{-2k} s^2 + zeta_s)",
        &wm * &wm.star(),
        product_of_linear(p, zs, 0..n, |k| (qp(-2 * k) * &s2, Rational::one())),
    );

    check(
        "u_n w_n* = q^{n(n-1)/2} eta_s^n",
        &un * &wn.star(),
        es.pow(n as u32).scale(&p.q_triangular(n)),
    );
    check(
        "u_{-n} w_{-n}* = q^{-n(n-1)/2} eta_s^n",
        &um * &wm.star(),
        es.pow(n as u32).scale(&p.q_triangular(n).recip()),
    );

    check(
        "u_n* u_n = q^{-2n} prod_{k=1}^{n} (q^{2k} s^2 + zeta_{q^n s})",
        &un.star() * &un,
        product_of_linear(p, &up.zeta, 1..=n, |k| (qp(2 * k) * &s2, Rational::one()))
            .scale(&qp(-2 * n)),
    );
    check(
        "w_n* w_n = prod_{k=1}^{n} (1 - q^{-2k} zeta_{q^n s})",
        &wn.star() * &wn,
        product_of_linear(p, &up.zeta, 1..=n, |k| (Rational::one(), -qp(-2 * k))),
    );
    check(
        "u_{-n}* u_{-n} = prod_{k=0}^{n-1} (1 - q^{2k} zeta_{q^{-n} s})",
        &um.star() * &um,
        product_of_linear(p, &down.zeta, 0..n, |k| (Rational::one(), -qp(2 * k))),
    );
    check(
        "w_{-n}* w_{-n} = prod_{k=0}^{n-1} (q^{-2k} s^2 + zeta_{q^{-n} s})",
        &wm.star() * &wm,
        product_of_linear(p, &down.zeta, 0..n, |k| (qp(-2 * k) * &s2, Rational::one())),
    );

    Ok(IdentityReport {
        n,
        q: p.q().to_string(),
        s: p.s().to_string(),
        identities: out,
    })
}

/// The normalized sums `u*u + q^{n(n-1)} w*w` (negative weights) and
/// `q^{-n(n-1)} u*u + w*w` (positive weights) against their product forms.
pub fn verify_norm_sums(n: i64, params: &Params) -> Result<Vec<IdentityCheck>> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("n = {n} must be positive")));
    }
    let p = params;
    let s2 = p.s() * p.s();
    let qp = |e: i64| p.q_pow(e);
    let tri2 = p.q_pow(n * (n - 1));
    let up = Embedding::new(p, &(qp(n) * p.s()));
    let down = Embedding::new(p, &(qp(-n) * p.s()));
    let (un, wn, um, wm) = (u(n, p), w(n, p), u(-n, p), w(-n, p));

    let lhs_neg = &(&um.star() * &um) + &(&wm.star() * &wm).scale(&tri2);
    let rhs_neg = &product_of_linear(p, &down.zeta, 0..n, |k| (Rational::one(), -qp(2 * k)))
        + &product_of_linear(p, &down.zeta, 0..n, |k| (s2.clone(), qp(2 * k)));
    let lhs_pos = &(&un.star() * &un).scale(&tri2.recip()) + &(&wn.star() * &wn);
    let rhs_pos = &product_of_linear(p, &up.zeta, 0..n, |k| (s2.clone(), qp(2 * k - 2 * n)))
        + &product_of_linear(p, &up.zeta, 0..n, |k| (Rational::one(), -qp(2 * k - 2 * n)));
    Ok(vec![
        IdentityCheck {
            name: format!("u_{{-{n}}}*u_{{-{n}}} + q^{{n(n-1)}} w_{{-{n}}}*w_{{-{n}}}"),
            pass: lhs_neg == rhs_neg,
        },
        IdentityCheck {
            name: format!("q^{{-n(n-1)}} u_{n}*u_{n} + w_{n}*w_{n}"),
            pass: lhs_pos == rhs_pos,
        },
    ])
}

/// The three defining relations and `ζ* = ζ` under the embedding.
pub fn verify_embedded_relations(params: &Params) -> Vec<IdentityCheck> {
    let p = params;
    let e = Embedding::new(p, p.s());
    let s2 = p.s() * p.s();
    let o = one(p);
    let qp = |x: i64| p.q_pow(x);
    let (z, eta, es) = (&e.zeta, &e.eta, &e.eta_star);
    let rel1 = (z * eta) == (eta * z).scale(&qp(2));
    let rel2 = (es * eta) == (&o - z) * (&c(p, s2.clone()) + z);
    let rel3 = (eta * es) == (&o - &z.scale(&qp(-2))) * (&c(p, s2.clone()) + &z.scale(&qp(-2)));
    vec![
        IdentityCheck {
            name: "zeta* = zeta".into(),
            pass: z.star() == *z,
        },
        IdentityCheck {
            name: "zeta eta = q^2 eta zeta".into(),
            pass: rel1,
        },
        IdentityCheck {
            name: "eta* eta = (1 - zeta)(s^2 + zeta)".into(),
            pass: rel2,
        },
        IdentityCheck {
            name: "eta eta* = (1 - q^-2 zeta)(s^2 + q^-2 zeta)".into(),
            pass: rel3,
        },
    ]
}

/// The isomorphism `O(S²_{q,s}) → O(S²_{q,1/s})`, `ζ ↦ −s²ζ`, `η ↦ s²η`.
pub fn invert_s(x: &NCPoly) -> Result<NCPoly> {
    if x.basis() != Basis::Podles {
        return Err(Error::Incompatible(
            "s-inversion acts on sphere polynomials".into(),
        ));
    }
    let p = x.params();
    let s2 = p.s() * p.s();
    let target = p.with_s(p.s().recip())?;
    Ok(x.eval_with(
        NCPoly::one(Basis::Podles, &target),
        |g| {
            NCPoly::generator(g, &target).scale(&if g == Gen::Zeta {
                -s2.clone()
            } else {
                s2.clone()
            })
        },
        |c, w| w.scale(c),
    ))
}

/// The defining relations of the sphere as polynomials that must vanish.
pub fn sphere_relations(params: &Params) -> Vec<NCPoly> {
    let p = params;
    let g = |x| NCPoly::generator(x, p);
    let k = |x: Rational| NCPoly::constant(Basis::Podles, p, x);
    let s2 = p.s() * p.s();
    let (z, e, es) = (g(Gen::Zeta), g(Gen::Eta), g(Gen::EtaStar));
    let o = k(Rational::one());
    let qm2 = p.q_pow(-2);
    // Built without normalization-side shortcuts: each side is a product of normal forms.
    vec![
        &(&z * &e) - &(&e * &z).scale(&p.q_pow(2)),
        &(&es * &e) - &((&o - &z) * (&k(s2.clone()) + &z)),
        &(&e * &es) - &((&o - &z.scale(&qm2)) * (&k(s2.clone()) + &z.scale(&qm2))),
    ]
}

/// A 2×2 matrix of sphere polynomials.
pub type SymMatrix2 = [[NCPoly; 2]; 2];

pub fn sym_mul(x: &SymMatrix2, y: &SymMatrix2) -> SymMatrix2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn sym_star_transpose(x: &SymMatrix2) -> SymMatrix2 {
    [
        [x[0][0].star(), x[1][0].star()],
        [x[0][1].star(), x[1][1].star()],
    ]
}

/// `P_{±1} = V V*` for `V = (1+s²)^{-1/2} (w_{±1}, u_{±1})ᵀ`, written in sphere generators:
///
/// ```text
/// P_{+1} = (1+s²)⁻¹ [[1 − ζ, η*], [η, s² + q⁻²ζ]]
/// P_{−1} = (1+s²)⁻¹ [[s² + ζ, η*], [η, 1 − q⁻²ζ]]
/// ```
pub fn build_p1_symbolic(sign: i8, params: &Params) -> Result<SymMatrix2> {
    let p = params;
    let g = |x| NCPoly::generator(x, p);
    let k = |x: Rational| NCPoly::constant(Basis::Podles, p, x);
    let s2 = p.s() * p.s();
    let norm = (Rational::one() + &s2).recip();
    let (z, e, es) = (g(Gen::Zeta), g(Gen::Eta), g(Gen::EtaStar));
    let zq = z.scale(&p.q_pow(-2));
    let (d0, d1) = match sign {
        1 => (&k(Rational::one()) - &z, &k(s2) + &zq),
        -1 => (&k(s2) + &z, &k(Rational::one()) - &zq),
        _ => return Err(Error::InvalidParams(format!("sign must be ±1, got {sign}"))),
    };
    Ok([
        [d0.scale(&norm), es.scale(&norm)],
        [e.scale(&norm), d1.scale(&norm)],
    ])
}

/// Checks the closed form of `P_{±1}` against `V V*` computed in `O(SU_q(2))`,
/// together with `V*V = 1`.
pub fn verify_p1_derivation(sign: i8, params: &Params) -> Result<Vec<IdentityCheck>> {
    let p = params;
    let pm = build_p1_symbolic(sign, p)?;
    let n = i64::from(sign);
    let v = [w(n, p), u(n, p)];
    let norm2 = Rational::one() + p.s() * p.s();
    let emb = Embedding::new(p, p.s());
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let vv = &v[i] * &v[j].star();
            let lhs = emb.embed(&pm[i][j])?.scale(&norm2);
            out.push(IdentityCheck {
                name: format!("P[{i}][{j}] = (VV*)[{i}][{j}]"),
                pass: lhs == vv,
            });
        }
    }
    let vstar_v = &(&v[0].star() * &v[0]) + &(&v[1].star() * &v[1]);
    out.push(IdentityCheck {
        name: "V*V = 1".into(),
        pass: vstar_v == c(p, norm2),
    });
    Ok(out)
}

/// `tr P_{±1} = (1+s²)⁻¹ (1 + s² ± (q⁻² − 1) ζ)`.
pub fn p1_trace(sign: i8, params: &Params) -> Result<NCPoly> {
    let m = build_p1_symbolic(sign, params)?;
    Ok(&m[0][0] + &m[1][1])
}

pub fn expected_p1_trace(sign: i8, params: &Params) -> NCPoly {
    let p = params;
    let s2 = p.s() * p.s();
    let norm = (Rational::one() + &s2).recip();
    let z = NCPoly::generator(Gen::Zeta, p);
    let slope = (p.q_pow(-2) - int(1)) * int(i64::from(sign));
    (&NCPoly::constant(Basis::Podles, p, Rational::one() + s2) + &z.scale(&slope)).scale(&norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{nc_normalize, parse_raw, Strategy};
    use crate::params::ratio;

    fn params() -> Params {
        Params::from_fracs((1, 2), (2, 3)).unwrap()
    }

    fn suq2(text: &str, p: &Params) -> NCPoly {
        nc_normalize(
            &parse_raw(text, p).unwrap(),
            Basis::SuQ2,
            p,
            Strategy::Leftmost,
        )
        .unwrap()
    }

    #[test]
    fn eta_embedding_normal_form() {
        let p = params();
        let (_, eta) = podles_embedding(&p);
        assert_eq!(eta, suq2("q^-1*(1 - s^2)*b*d + q^-1*s*b^2 - s*d^2", &p));
    }

    #[test]
    fn zeta_is_hermitian_and_relations_hold() {
        let p = params();
        let (zeta, _) = podles_embedding(&p);
        assert_eq!(zeta.star(), zeta);
        for check in verify_embedded_relations(&p) {
            assert!(check.pass, "{}", check.name);
        }
    }

    #[test]
    fn weight_vectors_small_cases() {
        let p = params();
        assert_eq!(u(1, &p), suq2("q^-1*b - s*d", &p));
        assert_eq!(u(0, &p), one(&p));
        assert_eq!(w(0, &p), one(&p));
        assert_eq!(w(-1, &p), suq2("-q*c - s*a", &p));
    }

    #[test]
    fn identities_at_small_n() {
        let p = params();
        for n in 0..=3 {
            let r = verify_weight_identities(n, &p).unwrap();
            assert_eq!(r.identities.len(), 16);
            for c in &r.identities {
                assert!(c.pass, "n = {n}: {}", c.name);
            }
        }
        assert!(verify_weight_identities(-1, &p).is_err());
    }

    #[test]
    fn first_uw_product_is_eta() {
        let p = params();
        let (_, eta) = podles_embedding(&p);
        assert_eq!(&u(1, &p) * &w(1, &p).star(), eta);
    }

    #[test]
    fn norm_sums() {
        let p = params();
        for n in 1..=3 {
            for c in verify_norm_sums(n, &p).unwrap() {
                assert!(c.pass, "{}", c.name);
            }
        }
    }

    #[test]
    fn embedding_respects_eta_star_eta() {
        let p = params();
        let e = Embedding::new(&p, p.s());
        let lhs = e
            .embed(
                &nc_normalize(
                    &parse_raw("es*e", &p).unwrap(),
                    Basis::Podles,
                    &p,
                    Strategy::Leftmost,
                )
                .unwrap(),
            )
            .unwrap();
        let rhs = e
            .embed(
                &nc_normalize(
                    &parse_raw("(1 - z)*(s^2 + z)", &p).unwrap(),
                    Basis::Podles,
                    &p,
                    Strategy::Leftmost,
                )
                .unwrap(),
            )
            .unwrap();
        assert!(lhs.nc_equals(&rhs).unwrap());
    }

    #[test]
    fn s_inversion_maps_relations_and_round_trips() {
        let p = params();
        for rel in sphere_relations(&p) {
            assert!(invert_s(&rel).unwrap().is_zero());
        }
        let x = nc_normalize(
            &parse_raw("e^2*z - 3*z*es + 1/5", &p).unwrap(),
            Basis::Podles,
            &p,
            Strategy::Leftmost,
        )
        .unwrap();
        let back = invert_s(&invert_s(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn p1_is_projection_and_matches_weight_vectors() {
        let p = params();
        for sign in [1, -1] {
            let m = build_p1_symbolic(sign, &p).unwrap();
            assert_eq!(sym_mul(&m, &m), m);
            assert_eq!(sym_star_transpose(&m), m);
            for c in verify_p1_derivation(sign, &p).unwrap() {
                assert!(c.pass, "sign {sign}: {}", c.name);
            }
            assert_eq!(p1_trace(sign, &p).unwrap(), expected_p1_trace(sign, &p));
        }
        assert!(build_p1_symbolic(0, &p).is_err());
    }

    #[test]
    fn report_serializes() {
        let p = Params::new(ratio(1, 2), ratio(1, 1)).unwrap();
        let r = verify_weight_identities(1, &p).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 1);
        assert_eq!(v["q"], "1/2");
        assert_eq!(v["s"], "1");
        assert_eq!(v["identities"][0]["pass"], true);
    }
}
