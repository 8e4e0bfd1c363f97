//! Exact noncommutative polynomials in PBW normal form.
//!
//! Two presentations are supported:
//!
//! * [`Basis::SuQ2`], generated by `α, β, γ, δ` subject to
//!   `αβ = qβα, αγ = qγα, βδ = qδβ, γδ = qδγ, βγ = γβ, αδ − qβγ = 1, δα − q⁻¹βγ = 1`.
//!   Normal words are `α^i β^j γ^k δ^l` with `i·l = 0`.
//! * [`Basis::Podles`], generated by `η, ζ, η*` subject to
//!   `ζη = q²ηζ, η*η = (1−ζ)(s²+ζ), ηη* = (1−q⁻²ζ)(s²+q⁻²ζ)`.
//!   Normal words are `η^a ζ^b` or `ζ^b (η*)^c`.
//!
//! In both cases a word is stored as an exponent vector over the generators in
//! their fixed order; the "extreme" pair (`α,δ` resp. `η,η*`) never co-occurs.
//!
//! Products go through a closed-form right multiplication by single letters.
//! Raw word sums go through the rewriting system in [`rewrite`], which is an
//! independent route used to cross-check confluence and multiplication.
//!
//! Coefficients are exact rationals at a fixed rational `(q, s)`. Identities
//! polynomial in `(q, s)` are therefore checked pointwise at sample parameters,
//! which is evidence and not a proof over the function field.

pub mod parse;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::{Params, Rational};

pub use parse::parse_raw;
pub use rewrite::{nc_normalize, RawPoly, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    SuQ2,
    Podles,
}

impl Basis {
    /// Generators in normal-form order.
    pub fn generators(self) -> &'static [Gen] {
        match self {
            Basis::SuQ2 => &[Gen::Alpha, Gen::Beta, Gen::Gamma, Gen::Delta],
            Basis::Podles => &[Gen::Eta, Gen::Zeta, Gen::EtaStar],
        }
    }

    /// Slot of the last generator; slot 0 and this slot never share a normal word.
    pub(crate) fn top_slot(self) -> usize {
        self.generators().len() - 1
    }
}

/// A generator letter of either presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Eta,
    Zeta,
    EtaStar,
}

impl Gen {
    pub fn basis(self) -> Basis {
        match self {
            Gen::Alpha | Gen::Beta | Gen::Gamma | Gen::Delta => Basis::SuQ2,
            Gen::Eta | Gen::Zeta | Gen::EtaStar => Basis::Podles,
        }
    }

    /// Position in the normal-form order of its basis.
    pub fn slot(self) -> usize {
        match self {
            Gen::Alpha | Gen::Eta => 0,
            Gen::Beta | Gen::Zeta => 1,
            Gen::Gamma | Gen::EtaStar => 2,
            Gen::Delta => 3,
        }
    }

    /// Textual name used by the expression format.
    pub fn token(self) -> &'static str {
        match self {
            Gen::Alpha => "a",
            Gen::Beta => "b",
            Gen::Gamma => "c",
            Gen::Delta => "d",
            Gen::Eta => "e",
            Gen::Zeta => "z",
            Gen::EtaStar => "es",
        }
    }

    pub(crate) fn from_slot(basis: Basis, slot: usize) -> Gen {
        basis.generators()[slot]
    }
}

/// Exponent vector of a normal-form word.
pub type Mono = [u32; 4];

const ONE_MONO: Mono = [0; 4];

/// A polynomial in normal form. Immutable once built; all operations return new values.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    basis: Basis,
    params: Params,
    terms: BTreeMap<Mono, Rational>,
}

impl NCPoly {
    pub fn zero(basis: Basis, params: &Params) -> Self {
        Self {
            basis,
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(basis: Basis, params: &Params, c: Rational) -> Self {
        let mut p = Self::zero(basis, params);
        p.add_term(ONE_MONO, c);
        p
    }

    pub fn one(basis: Basis, params: &Params) -> Self {
        Self::constant(basis, params, Rational::one())
    }

    pub fn generator(g: Gen, params: &Params) -> Self {
        let mut m = ONE_MONO;
        m[g.slot()] = 1;
        let mut p = Self::zero(g.basis(), params);
        p.add_term(m, Rational::one());
        p
    }

    /// Builds a polynomial from normal-form exponent vectors; rejects words that are not normal.
    pub fn from_terms(
        basis: Basis,
        params: &Params,
        terms: impl IntoIterator<Item = (Mono, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(basis, params);
        for (m, c) in terms {
            if !is_normal(basis, &m) {
                return Err(Error::Malformed(format!(
                    "{m:?} is not a normal word for {basis:?}"
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for constants, `None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &NCPoly) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Incompatible(format!(
                "basis {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        if self.params != other.params {
            return Err(Error::Incompatible(format!(
                "params ({}) vs ({})",
                self.params, other.params
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_compatible(other)?;
        let mut out = NCPoly::zero(self.basis, &self.params);
        for (m, c) in &other.terms {
            let mut part = self.clone();
            for g in word_of(self.basis, m) {
                part = part.mul_gen(g);
            }
            for (pm, pc) in part.terms {
                out.add_term(pm, pc * c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        let mut out = NCPoly::zero(self.basis, &self.params);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    fn neg_ref(&self) -> NCPoly {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut out = NCPoly::one(self.basis, &self.params);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Right multiplication by a single generator of the same basis.
    pub fn mul_gen(&self, g: Gen) -> NCPoly {
        assert_eq!(
            g.basis(),
            self.basis,
            "generator {g:?} does not belong to {:?}",
            self.basis
        );
        let mut out = NCPoly::zero(self.basis, &self.params);
        for (m, c) in &self.terms {
            for (pm, pc) in mono_times_gen(&self.params, self.basis, m, g) {
                out.add_term(pm, pc * c);
            }
        }
        out
    }

    /// The involution: anti-multiplicative, fixes rational scalars.
    pub fn star(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.basis, &self.params);
        for (m, c) in &self.terms {
            let mut acc = NCPoly::one(self.basis, &self.params);
            for g in word_of(self.basis, m).into_iter().rev() {
                acc = &acc * &star_gen(g, &self.params);
            }
            for (pm, pc) in acc.terms {
                out.add_term(pm, pc * c);
            }
        }
        out
    }

    /// Equality of normal forms; errors on mismatched basis or params.
    pub fn nc_equals(&self, other: &NCPoly) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.terms == other.terms)
    }

    /// Evaluates the polynomial through a ring homomorphism given on generators.
    pub fn eval_with<T, F>(&self, one: T, mut gen: F, scalar: impl Fn(&Rational, &T) -> T) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: FnMut(Gen) -> T,
    {
        let images: Vec<T> = self.basis.generators().iter().map(|&g| gen(g)).collect();
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut w = one.clone();
            for g in word_of(self.basis, m) {
                w = w * images[g.slot()].clone();
            }
            let term = scalar(c, &w);
            acc = Some(match acc {
                None => term,
                Some(a) => a + term,
            });
        }
        acc.unwrap_or_else(|| scalar(&Rational::zero(), &one))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{:?}]({})", self.basis, self)
    }
}

/// Prints in the expression format accepted by [`parse_raw`].
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Mono, &Rational)> = self.terms.iter().collect();
        ordered.sort_by_cached_key(|(m, _)| {
            let w: Vec<usize> = word_of(self.basis, m).iter().map(|g| g.slot()).collect();
            (w.len(), w)
        });
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let word: Vec<String> = self
                .basis
                .generators()
                .iter()
                .filter(|g| m[g.slot()] > 0)
                .map(|g| match m[g.slot()] {
                    1 => g.token().to_string(),
                    e => format!("{}^{e}", g.token()),
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (word.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", word.join("*"))?,
                (false, false) => write!(f, "{a}*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&NCPoly> for &NCPoly {
            type Output = NCPoly;
            fn $method(self, rhs: &NCPoly) -> NCPoly {
                self.$inner(rhs).expect("operands share basis and params")
            }
        }
        impl $tr<NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $method(self, rhs: NCPoly) -> NCPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.neg_ref()
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.neg_ref()
    }
}

/// Which binary operation [`nc_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    /// Star of the first operand; the second is ignored.
    StarFirst,
}

pub fn nc_arith(x: &NCPoly, y: &NCPoly, op: ArithOp) -> Result<NCPoly> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::StarFirst => Ok(x.star()),
    }
}

pub fn nc_equals(x: &NCPoly, y: &NCPoly) -> Result<bool> {
    x.nc_equals(y)
}

pub fn is_normal(basis: Basis, m: &Mono) -> bool {
    let top = basis.top_slot();
    if m[top + 1..].iter().any(|&e| e != 0) {
        return false;
    }
    !(m[0] > 0 && m[top] > 0)
}

/// The letters of a normal word, in order.
pub fn word_of(basis: Basis, m: &Mono) -> Vec<Gen> {
    let mut w = Vec::with_capacity(m.iter().sum::<u32>() as usize);
    for (slot, &e) in m.iter().enumerate().take(basis.top_slot() + 1) {
        for _ in 0..e {
            w.push(Gen::from_slot(basis, slot));
        }
    }
    w
}

fn star_gen(g: Gen, params: &Params) -> NCPoly {
    match g {
        Gen::Alpha => NCPoly::generator(Gen::Delta, params),
        Gen::Delta => NCPoly::generator(Gen::Alpha, params),
        Gen::Beta => NCPoly::generator(Gen::Gamma, params).scale(&-params.q_pow(1)),
        Gen::Gamma => NCPoly::generator(Gen::Beta, params).scale(&-params.q_pow(-1)),
        Gen::Zeta => NCPoly::generator(Gen::Zeta, params),
        Gen::Eta => NCPoly::generator(Gen::EtaStar, params),
        Gen::EtaStar => NCPoly::generator(Gen::Eta, params),
    }
}

/// Closed-form `(normal word) · g`, returned as normal terms.
pub(crate) fn mono_times_gen(
    params: &Params,
    basis: Basis,
    m: &Mono,
    g: Gen,
) -> Vec<(Mono, Rational)> {
    let qp = |e: i64| params.q_pow(e);
    match basis {
        Basis::SuQ2 => {
            let [i, j, k, l] = *m;
            let (jk, li) = (i64::from(j + k), i64::from(l));
            match g {
                Gen::Alpha if l == 0 => vec![([i + 1, j, k, 0], qp(-jk))],
                // β^jγ^kδ^l·α = β^jγ^kδ^{l-1}(1 + q⁻¹βγ)
                Gen::Alpha => vec![
                    ([0, j, k, l - 1], Rational::one()),
                    ([0, j + 1, k + 1, l - 1], qp(-1 - 2 * (li - 1))),
                ],
                Gen::Beta => vec![([i, j + 1, k, l], qp(-li))],
                Gen::Gamma => vec![([i, j, k + 1, l], qp(-li))],
                Gen::Delta if i == 0 => vec![([0, j, k, l + 1], Rational::one())],
                // α^iβ^jγ^k·δ = q^{j+k} α^{i-1}(1 + qβγ)β^jγ^k
                Gen::Delta => vec![
                    ([i - 1, j, k, 0], qp(jk)),
                    ([i - 1, j + 1, k + 1, 0], qp(jk + 1)),
                ],
                _ => unreachable!("checked by caller"),
            }
        }
        Basis::Podles => {
            let [a, b, c, _] = *m;
            let (bi, ci) = (i64::from(b), i64::from(c));
            let s2 = params.s() * params.s();
            let one_minus_s2 = Rational::one() - &s2;
            match g {
                Gen::Zeta => vec![([a, b + 1, c, 0], qp(2 * ci))],
                Gen::Eta if c == 0 => vec![([a + 1, b, 0, 0], qp(2 * bi))],
                // ζ^b η*^{c-1} (η*η), with η*η = s² + (1−s²)ζ − ζ²
                Gen::Eta => vec![
                    ([0, b, c - 1, 0], s2),
                    ([0, b + 1, c - 1, 0], one_minus_s2 * qp(2 * (ci - 1))),
                    ([0, b + 2, c - 1, 0], -qp(4 * (ci - 1))),
                ],
                Gen::EtaStar if a == 0 => vec![([0, b, c + 1, 0], Rational::one())],
                // η^{a-1} (ηη*) ζ^b q^{-2b}, with ηη* = s² + q⁻²(1−s²)ζ − q⁻⁴ζ²
                Gen::EtaStar => vec![
                    ([a - 1, b, 0, 0], s2 * qp(-2 * bi)),
                    ([a - 1, b + 1, 0, 0], one_minus_s2 * qp(-2 - 2 * bi)),
                    ([a - 1, b + 2, 0, 0], -qp(-4 - 2 * bi)),
                ],
                _ => unreachable!("checked by caller"),
            }
        }
    }
}
