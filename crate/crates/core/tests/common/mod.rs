//! Random inputs and parameter grids shared by the integration tests.
#![allow(dead_code)]

use podles_core::ncpoly::{Basis, Gen, RawPoly};
use podles_core::params::ratio;
use podles_core::shiftcalc::{DiagFn, ShiftSeries, Tail};
use podles_core::Params;
use rand::rngs::StdRng;
use rand::Rng;

pub const Q_GRID: [(i64, i64); 3] = [(3, 10), (1, 2), (4, 5)];
pub const S_GRID: [(i64, i64); 3] = [(1, 2), (1, 1), (2, 1)];

pub fn grid() -> Vec<Params> {
    let mut out = Vec::new();
    for q in Q_GRID {
        for s in S_GRID {
            out.push(Params::from_fracs(q, s).unwrap());
        }
    }
    out
}

/// A sum of up to `max_terms` words of length ≤ `max_len` with small rational coefficients.
pub fn random_raw(rng: &mut StdRng, basis: Basis, max_terms: usize, max_len: usize) -> RawPoly {
    let gens = basis.generators();
    let terms = rng.random_range(1..=max_terms);
    (0..terms)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            let word: Vec<Gen> = (0..len)
                .map(|_| gens[rng.random_range(0..gens.len())])
                .collect();
            let num = rng.random_range(-5..=5i64);
            let den = rng.random_range(1..=4i64);
            (ratio(num, den), word)
        })
        .collect()
}

/// `c + a·rⁿ` with its exact geometric certificate.
pub fn random_diag(rng: &mut StdRng) -> DiagFn {
    let c: f64 = rng.random_range(-2.0..2.0);
    let a: f64 = rng.random_range(-2.0..2.0);
    let r: f64 = rng.random_range(0.1..0.9);
    DiagFn::new(
        move |n| c + a * r.powi(n as i32),
        Some(c),
        Tail::Geometric { c: a.abs(), r },
    )
}

/// A random product of shifts, adjoint shifts and diagonals, summed a few times.
pub fn random_series(rng: &mut StdRng) -> ShiftSeries {
    let mut acc = ShiftSeries::zero();
    for _ in 0..rng.random_range(1..=3) {
        let mut term = ShiftSeries::identity();
        for _ in 0..rng.random_range(1..=4) {
            let f = match rng.random_range(0..3) {
                0 => ShiftSeries::shift(1),
                1 => ShiftSeries::shift(-1),
                _ => ShiftSeries::diag(random_diag(rng)),
            };
            term = term.mul(&f);
        }
        acc = acc.add(&term);
    }
    acc
}
