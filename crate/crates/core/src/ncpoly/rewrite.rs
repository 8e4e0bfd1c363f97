//! Word rewriting to PBW normal form.
//!
//! Redexes are adjacent out-of-order pairs plus the sandwich `x m y`, where
//! `x`/`y` are the first/last generators and `m` is an already sorted run of
//! middle generators. Any choice of redex terminates in the same normal form;
//! [`Strategy`] picks which one fires so that confluence can be tested.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use num_traits::{One, Zero};

use super::{Basis, Gen, Mono, NCPoly};
use crate::error::{Error, Result};
use crate::params::{Params, Rational};

/// A formal linear combination of words, not yet reduced.
pub type RawPoly = Vec<(Rational, Vec<Gen>)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, reproducible from the seed.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Redex {
    /// Out-of-order letters at `i, i+1`.
    Swap(usize),
    /// Extreme pair enclosing a sorted middle run: positions `i..=j`.
    Sandwich(usize, usize),
}

/// Reduces a raw word sum to normal form by rewriting.
pub fn nc_normalize(
    raw: &RawPoly,
    basis: Basis,
    params: &Params,
    strategy: Strategy,
) -> Result<NCPoly> {
    for (_, w) in raw {
        if let Some(g) = w.iter().find(|g| g.basis() != basis) {
            return Err(Error::Malformed(format!(
                "generator `{}` is not part of the {basis:?} basis",
                g.token()
            )));
        }
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    let mut out = NCPoly::zero(basis, params);
    let mut work: Vec<(Rational, Vec<Gen>)> =
        raw.iter().filter(|(c, _)| !c.is_zero()).cloned().collect();
    while let Some((c, w)) = work.pop() {
        let redexes = find_redexes(basis, &w);
        if redexes.is_empty() {
            out.add_term(counts(&w), c);
            continue;
        }
        let pick = match (strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => redexes[0],
            (Strategy::Rightmost, _) => *redexes.last().expect("non-empty"),
            (Strategy::Random(_), Some(r)) => redexes[r.random_range(0..redexes.len())],
            (Strategy::Random(_), None) => unreachable!(),
        };
        for (rc, rw) in apply(basis, params, &w, pick) {
            let nc = &c * rc;
            if !nc.is_zero() {
                work.push((nc, rw));
            }
        }
    }
    Ok(out)
}

fn counts(w: &[Gen]) -> Mono {
    let mut m = [0; 4];
    for g in w {
        m[g.slot()] += 1;
    }
    m
}

fn find_redexes(basis: Basis, w: &[Gen]) -> Vec<Redex> {
    let top = basis.top_slot();
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[i].slot(), w[i + 1].slot());
        if a > b {
            out.push(Redex::Swap(i));
        }
        if a == 0 {
            // Sorted run of middle letters followed by the top letter.
            let mut j = i + 1;
            let mut last = 0;
            while j < w.len() {
                let sj = w[j].slot();
                if sj == top {
                    out.push(Redex::Sandwich(i, j));
                    break;
                }
                if sj == 0 || sj < last {
                    break;
                }
                last = sj;
                j += 1;
            }
        }
    }
    out.sort_by_key(|r| match *r {
        Redex::Swap(i) => (i, 0),
        Redex::Sandwich(i, _) => (i, 1),
    });
    out
}

fn splice(w: &[Gen], lo: usize, hi: usize, mid: &[Gen]) -> Vec<Gen> {
    let mut v = Vec::with_capacity(w.len() + mid.len());
    v.extend_from_slice(&w[..lo]);
    v.extend_from_slice(mid);
    v.extend_from_slice(&w[hi + 1..]);
    v
}

fn apply(basis: Basis, params: &Params, w: &[Gen], r: Redex) -> Vec<(Rational, Vec<Gen>)> {
    use Gen::*;
    let qp = |e: i64| params.q_pow(e);
    let one = Rational::one;
    let s2 = params.s() * params.s();
    match r {
        Redex::Swap(i) => {
            let rep: Vec<(Rational, Vec<Gen>)> = match (w[i], w[i + 1]) {
                (Beta, Alpha) => vec![(qp(-1), vec![Alpha, Beta])],
                (Gamma, Alpha) => vec![(qp(-1), vec![Alpha, Gamma])],
                (Delta, Alpha) => vec![(one(), vec![]), (qp(-1), vec![Beta, Gamma])],
                (Gamma, Beta) => vec![(one(), vec![Beta, Gamma])],
                (Delta, Beta) => vec![(qp(-1), vec![Beta, Delta])],
                (Delta, Gamma) => vec![(qp(-1), vec![Gamma, Delta])],
                (Zeta, Eta) => vec![(qp(2), vec![Eta, Zeta])],
                (EtaStar, Zeta) => vec![(qp(2), vec![Zeta, EtaStar])],
                (EtaStar, Eta) => vec![
                    (s2.clone(), vec![]),
                    (one() - &s2, vec![Zeta]),
                    (-one(), vec![Zeta, Zeta]),
                ],
                (x, y) => unreachable!("no swap rule for {x:?}{y:?}"),
            };
            rep.into_iter()
                .map(|(c, m)| (c, splice(w, i, i + 1, &m)))
                .collect()
        }
        Redex::Sandwich(i, j) => {
            let mid = &w[i + 1..j];
            let len = mid.len() as i64;
            match basis {
                // α m δ = q^{|m|} (1 + qβγ) m  for m = β^jγ^k
                Basis::SuQ2 => {
                    let mut with_bg = vec![Beta, Gamma];
                    with_bg.extend_from_slice(mid);
                    vec![
                        (qp(len), splice(w, i, j, mid)),
                        (qp(len + 1), splice(w, i, j, &with_bg)),
                    ]
                }
                // η ζ^b η* = q^{-2b} (ηη*) ζ^b
                Basis::Podles => {
                    let base = qp(-2 * len);
                    let mut z1 = vec![Zeta];
                    z1.extend_from_slice(mid);
                    let mut z2 = vec![Zeta, Zeta];
                    z2.extend_from_slice(mid);
                    vec![
                        (&base * &s2, splice(w, i, j, mid)),
                        (&base * (one() - &s2) * qp(-2), splice(w, i, j, &z1)),
                        (-&base * qp(-4), splice(w, i, j, &z2)),
                    ]
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::*;

    fn params() -> Params {
        Params::from_fracs((1, 2), (2, 3)).unwrap()
    }

    #[test]
    fn detects_sandwich_only_when_middle_sorted() {
        assert_eq!(
            find_redexes(Basis::SuQ2, &[Alpha, Beta, Gamma, Delta]),
            vec![Redex::Sandwich(0, 3)]
        );
        let r = find_redexes(Basis::SuQ2, &[Alpha, Gamma, Beta, Delta]);
        assert_eq!(r, vec![Redex::Swap(1)]);
        assert!(find_redexes(Basis::Podles, &[Eta, Zeta, Zeta]).is_empty());
        assert_eq!(
            find_redexes(Basis::Podles, &[Eta, Zeta, EtaStar]),
            vec![Redex::Sandwich(0, 2)]
        );
    }

    #[test]
    fn rejects_foreign_generators() {
        let raw: RawPoly = vec![(Rational::one(), vec![Alpha, Zeta])];
        assert!(matches!(
            nc_normalize(&raw, Basis::SuQ2, &params(), Strategy::Leftmost),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn strategies_agree_on_long_word() {
        let p = params();
        let raw: RawPoly = vec![(
            Rational::one(),
            vec![Delta, Gamma, Alpha, Delta, Beta, Alpha],
        )];
        let l = nc_normalize(&raw, Basis::SuQ2, &p, Strategy::Leftmost).unwrap();
        let r = nc_normalize(&raw, Basis::SuQ2, &p, Strategy::Rightmost).unwrap();
        let x = nc_normalize(&raw, Basis::SuQ2, &p, Strategy::Random(7)).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, x);
    }

    #[test]
    fn normalizing_a_normal_form_is_identity() {
        let p = params();
        let raw: RawPoly = vec![(Rational::one(), vec![EtaStar, Zeta, Eta, Eta])];
        let n = nc_normalize(&raw, Basis::Podles, &p, Strategy::Leftmost).unwrap();
        let again: RawPoly = n
            .terms()
            .iter()
            .map(|(m, c)| (c.clone(), super::super::word_of(Basis::Podles, m)))
            .collect();
        assert_eq!(
            nc_normalize(&again, Basis::Podles, &p, Strategy::Rightmost).unwrap(),
            n
        );
    }
}
