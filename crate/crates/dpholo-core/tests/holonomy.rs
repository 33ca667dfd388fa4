mod common;

use dpholo_core::derham::GForm;
use dpholo_core::dpalg::DPPoly;
use dpholo_core::holonomy::*;
use dpholo_core::linfty::Letter;
use dpholo_core::simplicial::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

fn letter(g: u16) -> Letter {
    Letter { gens: vec![g], deg: 1 }
}

fn random_forms(runner: &mut TestRunner, xr: &Realized<NerveModel>, r: usize, strat: impl Strategy<Value = GForm>) -> Vec<FormMap> {
    (0..r).map(|_| FormMap::on_standard(xr, &strat.new_tree(runner).unwrap().current()).unwrap()).collect()
}

#[test]
fn derivative_formula_tracks_env_degrees() {
    let mut runner = TestRunner::deterministic();
    for n in [1usize, 2] {
        let xr = standard_realized(n);
        let path = path_space(xr.set(), n).unwrap();
        for r in 1..=3usize {
            for _ in 0..8 {
                let ws = random_forms(&mut runner, &xr, r, common::gform(n, 3, 2, 3));
                assert!(diff_formula_residual_env(&path, &ws).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn displayed_derivative_formula_on_even_env() {
    let mut runner = TestRunner::deterministic();
    let even = vec![Letter { gens: vec![0, 1], deg: 2 }];
    for n in [1usize, 2] {
        let xr = standard_realized(n);
        let path = path_space(xr.set(), n).unwrap();
        for r in 1..=3usize {
            for _ in 0..6 {
                let ws: Vec<FormMap> = (0..r)
                    .map(|i| {
                        let env = if i % 2 == 0 { vec![] } else { even.clone() };
                        let g = common::with_env(n, 3, env, (i % (n + 1)) as u32, 2).new_tree(&mut runner).unwrap().current();
                        FormMap::on_standard(&xr, &g).unwrap()
                    })
                    .collect();
                for mode in [DegreeMode::Total, DegreeMode::Form] {
                    assert!(diff_formula_residual(&path, &ws, mode, Differential::Literal).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn displayed_derivative_formula_fails_for_odd_env() {
    let xr = standard_realized(1);
    let path = path_space(xr.set(), 1).unwrap();
    let w1 = FormMap::on_standard(&xr, &GForm::term(1, 3, vec![letter(0)], &[], DPPoly::var(1, 1)).unwrap()).unwrap();
    let w2 = FormMap::on_standard(&xr, &GForm::term(1, 3, vec![], &[1], DPPoly::var(1, 1)).unwrap()).unwrap();
    let ws = [w1, w2];
    assert!(diff_formula_residual_env(&path, &ws).unwrap().is_zero());
    assert!(!diff_formula_residual(&path, &ws, DegreeMode::Total, Differential::Literal).unwrap().is_zero());
}

#[test]
fn de_rham_is_a_chain_map_on_delta_three() {
    let mut runner = TestRunner::deterministic();
    let xr = standard_realized(3);
    for _ in 0..20 {
        let w = FormMap::on_standard(&xr, &common::gform(3, 2, 3, 4).new_tree(&mut runner).unwrap().current()).unwrap();
        for s in xr.set().nondegenerate() {
            assert!(chain_map_residual(&w, &s).unwrap().is_zero(), "simplex {s}");
        }
    }
}

#[test]
fn hol_is_simplicial_on_paths_in_a_triangle() {
    let d2 = standard_realized(2);
    let path = path_space(d2.set(), 2).unwrap();
    let nabla = GForm::term(2, 3, vec![letter(0)], &[1], DPPoly::var(2, 2)).unwrap().add(&GForm::term(2, 3, vec![letter(1)], &[2], DPPoly::one(2)).unwrap());
    let nabla = FormMap::on_standard(&d2, &nabla).unwrap();
    assert!(check_hol_simplicial(&path, &nabla, 3).unwrap() > 0);
}

#[test]
fn hol_of_constant_paths_is_one() {
    let d1 = standard_realized(1);
    let path = path_space(d1.set(), 1).unwrap();
    let nabla = FormMap::on_standard(&d1, &GForm::term(1, 4, vec![letter(0)], &[1], DPPoly::one(1)).unwrap()).unwrap();
    for i in 0..path.set().count(0) {
        let g = Simplex::nondegenerate(0, i);
        let h = hol_at(&path, &nabla, 4, &g).unwrap();
        if path.endpoint(&g, 0).unwrap() == path.endpoint(&g, 1).unwrap() {
            assert_eq!(h, Cochain::unit(0, 4));
        } else {
            assert_ne!(h, Cochain::unit(0, 4));
        }
    }
}

#[test]
fn zero_connection_has_trivial_holonomy() {
    let d2 = standard_realized(2);
    let path = path_space(d2.set(), 1).unwrap();
    let nabla = FormMap::zero(d2.set(), 2);
    for g in path.set().nondegenerate() {
        assert_eq!(hol_at(&path, &nabla, 3, &g).unwrap(), Cochain::unit(g.dim(), 2));
    }
}
