mod common;

use podles_core::ncpoly::{
    nc_arith, nc_normalize, parse_raw, ArithOp, Basis, NCPoly, RawPoly, Strategy,
};
use podles_core::Params;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn params() -> Params {
    Params::from_fracs((2, 5), (3, 2)).unwrap()
}

fn basis_of(flag: bool) -> Basis {
    if flag {
        Basis::SuQ2
    } else {
        Basis::Podles
    }
}

fn norm(raw: &RawPoly, basis: Basis) -> NCPoly {
    nc_normalize(raw, basis, &params(), Strategy::Leftmost).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rewriting_is_confluent(seed in any::<u64>(), suq2 in any::<bool>()) {
        let basis = basis_of(suq2);
        let raw = common::random_raw(&mut StdRng::seed_from_u64(seed), basis, 4, 6);
        let p = params();
        let l = nc_normalize(&raw, basis, &p, Strategy::Leftmost).unwrap();
        prop_assert_eq!(&l, &nc_normalize(&raw, basis, &p, Strategy::Rightmost).unwrap());
        prop_assert_eq!(&l, &nc_normalize(&raw, basis, &p, Strategy::Random(seed ^ 0xa5a5)).unwrap());
    }

    #[test]
    fn product_of_normal_forms_matches_concatenation(seed in any::<u64>(), suq2 in any::<bool>()) {
        let basis = basis_of(suq2);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = common::random_raw(&mut rng, basis, 3, 3);
        let y = common::random_raw(&mut rng, basis, 3, 3);
        let mut xy: RawPoly = Vec::new();
        for (cx, wx) in &x {
            for (cy, wy) in &y {
                xy.push((cx * cy, wx.iter().chain(wy).copied().collect()));
            }
        }
        let prod = nc_arith(&norm(&x, basis), &norm(&y, basis), ArithOp::Mul).unwrap();
        prop_assert_eq!(prod, norm(&xy, basis));
    }

    #[test]
    fn star_is_an_anti_multiplicative_involution(seed in any::<u64>(), suq2 in any::<bool>()) {
        let basis = basis_of(suq2);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = norm(&common::random_raw(&mut rng, basis, 3, 4), basis);
        let y = norm(&common::random_raw(&mut rng, basis, 3, 4), basis);
        prop_assert_eq!(&x.star().star(), &x);
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
    }

    #[test]
    fn display_round_trips(seed in any::<u64>(), suq2 in any::<bool>()) {
        let basis = basis_of(suq2);
        let x = norm(&common::random_raw(&mut StdRng::seed_from_u64(seed), basis, 4, 5), basis);
        let back = nc_normalize(&parse_raw(&x.to_string(), &params()).unwrap(), basis, &params(), Strategy::Rightmost).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn mixing_bases_is_rejected() {
    let p = params();
    let a = NCPoly::one(Basis::SuQ2, &p);
    let z = NCPoly::one(Basis::Podles, &p);
    assert!(nc_arith(&a, &z, ArithOp::Mul).is_err());
    let other = NCPoly::one(Basis::SuQ2, &Params::from_fracs((1, 2), (1, 1)).unwrap());
    assert!(nc_arith(&a, &other, ArithOp::Add).is_err());
}
