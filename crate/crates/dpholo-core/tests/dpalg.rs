mod common;

use common::poly;
use dpholo_core::checks;
use dpholo_core::dpalg::rational::to_rational;
use dpholo_core::dpalg::Bound;
use dpholo_core::ordinal;
use proptest::prelude::*;

fn bound(nvars: usize) -> impl Strategy<Value = Bound> {
    prop::sample::select(checks::all_bounds(nvars))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_commutative_and_associative(f in poly(4, 5, 4), g in poly(4, 5, 4), h in poly(4, 5, 3)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn pullback_is_a_ring_map(f in poly(3, 4, 4), g in poly(3, 4, 4), m in 0usize..4, seed in any::<prop::sample::Index>()) {
        let maps = ordinal::all_maps(m, 3);
        let alpha = &maps[seed.index(maps.len())];
        let lhs = f.mul(&g).ordinal_pullback(alpha).unwrap();
        let rhs = f.ordinal_pullback(alpha).unwrap().mul(&g.ordinal_pullback(alpha).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_embedding_is_multiplicative(f in poly(3, 4, 4), g in poly(3, 4, 4)) {
        prop_assert_eq!(to_rational(&f.mul(&g)), to_rational(&f).mul(&to_rational(&g)));
    }

    #[test]
    fn integral_of_a_derivative(f in poly(4, 5, 5), i in 1usize..=4, lo in bound(4), hi in bound(4)) {
        prop_assert!(checks::integral_of_derivative_residual(&f, i, lo, hi).unwrap().is_zero());
    }

    #[test]
    fn integration_by_parts(f in poly(4, 3, 4), g in poly(4, 3, 4), i in 1usize..=4, lo in bound(4), hi in bound(4)) {
        prop_assert!(checks::integration_by_parts_residual(&f, &g, i, lo, hi).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_an_integral(f in poly(4, 5, 5), i in 1usize..=4, k in 1usize..=4, hi in bound(4)) {
        prop_assume!(hi != Bound::Var(k));
        let f = f.replace_var(k, Bound::Theta);
        prop_assert!(checks::derivative_of_integral_residual(&f, i, k, hi).unwrap().is_zero());
    }

    #[test]
    fn integrals_agree_with_the_rational_oracle(f in poly(3, 4, 4), i in 1usize..=3, lo in bound(3), hi in bound(3)) {
        let exact = to_rational(&f.definite_integral(i, lo, hi).unwrap());
        prop_assert_eq!(exact, to_rational(&f).definite_integral(i, lo, hi));
    }
}
