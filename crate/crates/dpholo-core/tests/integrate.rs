mod common;

use dpholo_core::chains::enumerate_maximal;
use dpholo_core::derham::GForm;
use dpholo_core::integrate::*;
use dpholo_core::ordinal;
use dpholo_core::simplicial::*;
use proptest::prelude::*;

fn nr() -> impl Strategy<Value = (usize, usize)> {
    (0usize..=3, 0usize..=3).prop_filter("size", |(n, r)| n + r <= 5)
}

fn global_form() -> impl Strategy<Value = ProductForm> {
    nr().prop_flat_map(|(n, r)| common::gform(n + r, 2, 3, 4).prop_map(move |g| ProductForm::from_global(n, r, &g).unwrap()))
}

/// `pr_U^* b ^ pr_X^* a` on `X x U` for forms on two realized standard simplices.
fn split_form(prod: &Realized<ProductModel>, xr: &Realized<NerveModel>, ur: &Realized<NerveModel>, a: &GForm, b: &GForm) -> FormMap {
    let fa = FormMap::on_standard(xr, a).unwrap().pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.0)).unwrap();
    let fb = FormMap::on_standard(ur, b).unwrap().pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.1)).unwrap();
    fb.wedge(&fa).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn stokes_on_products(pf in global_form()) {
        prop_assert!(stokes_residual_product(&pf).unwrap().is_zero());
    }

    #[test]
    fn fiberwise_is_natural_in_the_base(
        (pf, alpha) in (0usize..=2, 0usize..=2, 0usize..=2).prop_flat_map(|(m, n, r)| {
            let maps = ordinal::all_maps(m, n);
            (common::gform(n + r, 2, 2, 3).prop_map(move |g| ProductForm::from_global(n, r, &g).unwrap()), prop::sample::select(maps))
        })
    ) {
        let r = pf.r();
        let lhs = fiberwise(&pf).unwrap().pullback(&alpha).unwrap();
        let rhs = fiberwise(&pf.pullback(&alpha, &ordinal::identity(r)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fiber_degenerate_forms_integrate_to_zero(pf in global_form().prop_filter("r<3", |pf| pf.r() < 3), h in 0usize..3) {
        let h = h % (pf.r() + 1);
        prop_assert!(fiberwise(&pf.degeneracy_fiber(h).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn fiberwise_is_linear(pf in global_form(), k in -5i64..5) {
        let twice = pf.add(&pf.scale(&k.into())).unwrap();
        let expect = fiberwise(&pf).unwrap().scale(&(k + 1).into());
        prop_assert_eq!(fiberwise(&twice).unwrap(), expect);
    }

    #[test]
    fn stokes_on_split_forms(
        ((n, r), a, b) in (0usize..=2, 1usize..=2).prop_flat_map(|(n, r)| (Just((n, r)), common::gform(n, 2, 2, 3), common::gform(r, 2, 2, 3)))
    ) {
        let (xr, ur) = (standard_realized(n), standard_realized(r));
        let prod = product(xr.set(), ur.set(), n + r).unwrap();
        let w = split_form(&prod, &xr, &ur, &a, &b);
        prop_assert!(w.is_valid());
        prop_assert!(stokes_residual(&prod, &w).unwrap().is_zero());
        let direct = fiberwise_general(&prod, &w).unwrap();
        prop_assert!(direct.is_valid());
    }
}

#[test]
fn stokes_chain_identity_on_every_maximal_chain() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    for (n, r) in [(1usize, 2usize), (1, 1), (2, 1), (2, 2), (0, 2), (1, 3)] {
        for c in enumerate_maximal(n, r) {
            for _ in 0..4 {
                let f = common::gform(r, 2, 3, 3).new_tree(&mut runner).unwrap().current();
                let f = f.filter_mask(|m| m.count_ones() as usize + 1 == r);
                let b = common::gform(n, 0, 3, 3).new_tree(&mut runner).unwrap().current().retruncate(2);
                let res = stokes_chain_residual(&c, &f, &b).unwrap();
                assert!(res.is_zero(), "chain {c:?}: {res:?}");
            }
        }
    }
}

#[test]
fn unsigned_boundary_breaks_stokes() {
    let g = GForm::function(dpholo_core::dpalg::DPPoly::var(1, 1), 0).add(&GForm::one(1, 0));
    let pf = ProductForm::from_global(0, 1, &g).unwrap();
    assert!(stokes_residual_product(&pf).unwrap().is_zero());
    let xr = standard_realized(0);
    let ur = standard_realized(1);
    let prod = product(xr.set(), ur.set(), 1).unwrap();
    let w = split_form(&prod, &xr, &ur, &GForm::one(0, 0), &g);
    assert!(stokes_residual_with(&prod, &w, true, false).unwrap().is_zero());
    assert!(!stokes_residual_with(&prod, &w, false, false).unwrap().is_zero());
}

#[test]
fn literal_part_of_d_omega_breaks_stokes_for_mixed_degrees() {
    use dpholo_core::dpalg::DPPoly;
    let xr = standard_realized(0);
    let ur = standard_realized(2);
    let prod = product(xr.set(), ur.set(), 2).unwrap();
    let f = DPPoly::var_power(2, 2, 2);
    let b = GForm::function(f, 0).add(&GForm::term(2, 0, vec![], &[1, 2], DPPoly::one(2)).unwrap());
    let w = split_form(&prod, &xr, &ur, &GForm::one(0, 0), &b);
    assert_eq!(support(&prod, &w).unwrap().part.len(), 1);
    assert_eq!(support(&prod, &w.d()).unwrap().part.len(), 2);
    assert!(stokes_residual(&prod, &w).unwrap().is_zero());
    assert!(!stokes_residual_with(&prod, &w, true, true).unwrap().is_zero());
}

#[test]
fn fiber_of_a_point_is_identity() {
    let xr = standard_realized(2);
    let ur = standard_realized(0);
    let prod = product(xr.set(), ur.set(), 2).unwrap();
    let a = GForm::dx(2, 1, 0).add(&GForm::function(dpholo_core::dpalg::DPPoly::var(2, 2), 0));
    let w = split_form(&prod, &xr, &ur, &a, &GForm::one(0, 0));
    assert_eq!(fiberwise_general(&prod, &w).unwrap(), FormMap::on_standard(&xr, &a).unwrap());
}
