mod common;

use podles_core::ncpoly::{nc_normalize, Basis, Gen, Strategy};
use podles_core::podles::{evaluate_poly, make_generators, psi, PodlesElem};
use podles_core::shiftcalc::{ShiftSeries, CHECK_N};
use podles_core::Params;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn params() -> Params {
    Params::from_fracs((1, 2), (2, 3)).unwrap()
}

/// Letters: ζ, η, η*, 𝔖, 𝔖*.
fn random_word(rng: &mut StdRng, p: &Params) -> PodlesElem {
    let g = make_generators(p);
    let letters = [
        g.zeta.clone(),
        g.eta.clone(),
        g.eta.star(),
        g.frak_s.clone(),
        g.frak_s.star(),
    ];
    let len = rng.random_range(1..=6);
    (0..len).fold(PodlesElem::one(p), |acc, _| {
        &acc * &letters[rng.random_range(0..letters.len())]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_preserves_symbol_matching(seed in any::<u64>()) {
        let p = params();
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_word(&mut rng, &p);
        let b = random_word(&mut rng, &p);
        for x in [&a * &b, &a + &b, a.star(), &(&a * &b.star()) - &b] {
            prop_assert!(x.symbol_gap().unwrap() <= 1e-12);
        }
    }

    #[test]
    fn evaluation_respects_normal_forms(seed in any::<u64>()) {
        let p = params();
        let raw = common::random_raw(&mut StdRng::seed_from_u64(seed), Basis::Podles, 3, 4);
        let normal = nc_normalize(&raw, Basis::Podles, &p, Strategy::Leftmost).unwrap();
        let g = make_generators(&p);
        let image = |x: Gen| match x {
            Gen::Zeta => g.zeta.clone(),
            Gen::Eta => g.eta.clone(),
            _ => g.eta.star(),
        };
        let direct = raw.iter().fold(PodlesElem::zero(&p), |acc, (c, w)| {
            let word = w.iter().fold(PodlesElem::one(&p), |m, &x| &m * &image(x));
            &acc + &word.scale(podles_core::params::to_f64(c))
        });
        let via = evaluate_poly(&normal).unwrap();
        prop_assert!(direct.residual(&via, CHECK_N) <= 1e-9);
        // Faithfulness proxy: a non-zero normal form has a non-zero image.
        if !normal.is_zero() {
            prop_assert!(via.residual(&PodlesElem::zero(&p), CHECK_N) > 1e-9);
        }
        prop_assert!(evaluate_poly(&normal.star()).unwrap().residual(&via.star(), CHECK_N) <= 1e-9);
    }

    #[test]
    fn psi_lands_in_the_projective_module(seed in any::<u64>(), n in -3i64..=3) {
        let p = params();
        let x = random_word(&mut StdRng::seed_from_u64(seed), &p);
        let sn = ShiftSeries::shift(n.abs());
        let (a0, a1) = if n >= 0 { (x.minus().mul(&sn), x.plus().clone()) } else { (x.minus().clone(), x.plus().mul(&sn)) };
        let img = psi(&a0, &a1, n, &p).unwrap();
        let proj = sn.mul(&sn.star());
        let en = if n >= 0 {
            PodlesElem::new(proj, ShiftSeries::identity(), &p).unwrap()
        } else {
            PodlesElem::new(ShiftSeries::identity(), proj, &p).unwrap()
        };
        prop_assert!(img.residual(&(&x * &en), CHECK_N) <= 1e-12);
    }
}
