use std::collections::BTreeMap;

use dpholo_core::ainfty::*;
use dpholo_core::checks::Report;
use dpholo_core::derham::GForm;
use dpholo_core::dpalg::DPPoly;
use dpholo_core::linfty::Letter;
use dpholo_core::simplicial::{standard, standard_realized, Cell, FiniteSimplicialSet, FormMap, Simplex};
use num_bigint::BigInt;

fn assert_passes(rep: &Report) {
    assert!(rep.passed(), "{}: {} of {} failed, first: {:?}", rep.name, rep.failures.len(), rep.cases, rep.failures.first());
    assert!(rep.cases > 0, "{} ran no cases", rep.name);
}

fn letter(g: u16) -> Letter {
    Letter { gens: vec![g], deg: 1 }
}

fn g0(word: &[u16], theta: u32) -> GBasis {
    GBasis { dim: 0, simplex: vec![0], word: word.iter().map(|&g| letter(g)).collect(), theta }
}

fn elem(terms: &[(i64, &[u16], u32)]) -> Lin<GBasis> {
    let mut l = Lin::new();
    for &(c, w, t) in terms {
        lin_add(&mut l, g0(w, t), BigInt::from(c));
    }
    l
}

fn moore_toy(max_dim: usize) -> FromDgAlgebra<GThetaMoore> {
    from_dg_algebra(GThetaMoore::new(3, &[letter(0), letter(1)], max_dim, 1, 1)).unwrap()
}

#[test]
fn simplex_categories_square_to_zero() {
    for n in 0..=3 {
        let a = simplex_category(n);
        assert_passes(&check_square_zero(&a, 4).unwrap());
        assert_passes(&check_strict_units(&a, 4).unwrap());
    }
}

#[test]
fn cosimplicial_maps_compose() {
    let [functorial, strict] = check_cosimplicial(3, 3).unwrap();
    assert_passes(&functorial);
    assert_passes(&strict);
}

#[test]
fn cochain_algebra_imports_with_square_zero() {
    let a = moore_toy(1);
    let small = GThetaMoore::with_basis(3, a.algebra().basis().into_iter().filter(|b| b.theta == 0 || b.dim == 0).collect());
    let small = from_dg_algebra(small).unwrap();
    assert_passes(&check_square_zero(&small, 3).unwrap());
    assert_passes(&check_strict_units(&small, 3).unwrap());
}

#[test]
fn exterior_algebra_b2_is_associative_up_to_sign() {
    let a = from_dg_algebra(TableAlgebra::exterior(false)).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let w = vec![x, y, z];
                let dd = coderivation(&a, &coderivation(&a, &single(w.clone())).unwrap()).unwrap();
                assert!(dd.is_empty(), "{w:?}");
            }
        }
    }
}

#[test]
fn unitalization_squares_to_zero_and_has_strict_units() {
    let u = unitalize(simplex_category(2));
    assert_passes(&check_square_zero(&u, 4).unwrap());
    assert_passes(&check_strict_units(&u, 4).unwrap());
    let u = unitalize(from_dg_algebra(TableAlgebra::exterior(true)).unwrap());
    assert_passes(&check_square_zero(&u, 4).unwrap());
    assert_passes(&check_strict_units(&u, 4).unwrap());
}

#[test]
fn unitalization_extends_functors_uniquely() {
    for alpha in [vec![0, 1], vec![0, 2], vec![1, 1], vec![0, 0]] {
        let a = simplex_category(1);
        let b = simplex_category(2);
        let f = cosimplicial_map(&alpha, 2).unwrap();
        let u = unitalize(a);
        let ext = extend_to_unitalization::<SimplexCategory, _>(&b, &f).unwrap();
        assert_passes(&check_functor(&u, &b, &ext, 4).unwrap());
        assert_passes(&check_unit_preserving(&u, &b, &ext).unwrap());
        let incl = u.inclusion();
        let back = incl.then(&ext);
        assert_passes(&check_functors_agree(&back, &f, &a.generators()).unwrap());
    }
}

fn glued_boundary() -> FiniteSimplicialSet {
    let v = |i| Simplex::nondegenerate(0, i);
    let cell = |label: &str, faces: Vec<Simplex>| Cell { label: label.to_string(), faces };
    FiniteSimplicialSet::new(
        1,
        vec![
            vec![cell("0", vec![]), cell("1", vec![]), cell("2", vec![])],
            vec![cell("01", vec![v(1), v(0)]), cell("12", vec![v(2), v(1)]), cell("02", vec![v(2), v(0)])],
        ],
    )
    .unwrap()
}

#[test]
fn free_models_on_path_quivers_square_to_zero() {
    for (x, cap) in [(standard(1), 2), (standard(2), 1), (glued_boundary(), 1)] {
        let pq = path_quiver(&x, cap, ChainKind::Unnormalized).unwrap();
        let free = free_on_quiver(pq.quiver.clone(), 3);
        assert_passes(&check_square_zero_on(&free, &free.tree_words(3)).unwrap());
    }
}

#[test]
fn nerve_accepts_objects_and_closed_edges() {
    let b = moore_toy(0);
    let r = nerve_validate(&b, 0, &NerveCandidate { objects: vec![0], edges: BTreeMap::new() }, 4).unwrap();
    assert!(r.valid());
    let edges = [((0, 1), elem(&[(1, &[], 0), (3, &[0], 1)]))].into_iter().collect();
    assert!(nerve_validate(&b, 1, &NerveCandidate { objects: vec![0, 0], edges }, 4).unwrap().valid());
}

#[test]
fn nerve_rejects_an_edge_that_is_not_closed() {
    let mut alg = TableAlgebra::integers();
    alg.labels.extend(["t".to_string(), "s".to_string()]);
    alg.degrees.extend([0, -1]);
    alg.differential = vec![Lin::new(), single(2), Lin::new()];
    alg.products.insert((0, 1), single(1));
    alg.products.insert((1, 0), single(1));
    alg.products.insert((0, 2), single(2));
    alg.products.insert((2, 0), single(2));
    let b = from_dg_algebra(alg).unwrap();
    let cand = |e: Lin<usize>| NerveCandidate { objects: vec![0, 0], edges: [((0, 1), e)].into_iter().collect() };
    assert!(nerve_validate(&b, 1, &cand(single(0)), 4).unwrap().valid());
    let r = nerve_validate(&b, 1, &cand(single(1)), 4).unwrap();
    assert!(!r.valid());
}

fn triangle() -> NerveCandidate<GBasis> {
    let edges = [
        ((0, 1), elem(&[(1, &[], 0), (1, &[0], 1)])),
        ((1, 2), elem(&[(1, &[], 0), (1, &[1], 1)])),
        ((0, 2), elem(&[(1, &[], 0), (1, &[0], 1), (1, &[1], 1), (2, &[0, 1], 2)])),
    ];
    NerveCandidate { objects: vec![0, 0, 0], edges: edges.into_iter().collect() }
}

fn perturbations(c: &NerveCandidate<GBasis>) -> Vec<NerveCandidate<GBasis>> {
    let mut out = Vec::new();
    for (k, v) in &c.edges {
        for t in v.keys() {
            let mut p = c.clone();
            let e = p.edges.get_mut(k).unwrap().get_mut(t).unwrap();
            *e = -e.clone();
            out.push(p);
        }
    }
    out
}

#[test]
fn nerve_accepts_the_triangle_and_rejects_sign_flips() {
    let b = moore_toy(0);
    let c = triangle();
    let r = nerve_validate(&b, 2, &c, 4).unwrap();
    assert!(r.valid(), "{:?}", r.first_violation);
    for p in perturbations(&c) {
        assert!(!nerve_validate(&b, 2, &p, 4).unwrap().valid());
    }
}

#[test]
fn nerve_accepts_a_tetrahedron_of_products() {
    let b = moore_toy(0);
    let alg = b.algebra();
    let steps = [elem(&[(1, &[], 0), (1, &[0], 1)]), elem(&[(1, &[], 0), (-1, &[1], 1)]), elem(&[(1, &[], 0), (2, &[0], 0)])];
    let mut edges = BTreeMap::new();
    for i in 0..4 {
        let mut acc = single(alg.unit().unwrap());
        for j in i + 1..4 {
            acc = mul_lin(alg, &acc, &steps[j - 1]).unwrap();
            edges.insert((i, j), acc.clone());
        }
    }
    let c = NerveCandidate { objects: vec![0; 4], edges };
    assert!(nerve_validate(&b, 3, &c, 4).unwrap().valid());
    for p in perturbations(&c) {
        assert!(!nerve_validate(&b, 3, &p, 4).unwrap().valid());
    }
}

fn abelian_connection(set: &FiniteSimplicialSet, on_standard: Option<usize>, trunc: usize) -> FormMap {
    match on_standard {
        Some(n) => {
            let delta = standard_realized(n);
            let mut form = GForm::zero(n, trunc);
            for i in 1..=n {
                let g = ((i - 1) % 2) as u16;
                form = form.add(&GForm::term(n, trunc, vec![letter(g)], &[i], DPPoly::one(n)).unwrap());
            }
            FormMap::on_standard(&delta, &form).unwrap()
        }
        None => FormMap::from_fn(set, trunc, |s| {
            if s.dim() == 1 {
                GForm::term(1, trunc, vec![letter((s.core % 2) as u16)], &[1], DPPoly::one(1))
            } else {
                Ok(GForm::zero(s.dim(), trunc))
            }
        })
        .unwrap(),
    }
}

fn ahol_reports(x: &FiniteSimplicialSet, nabla: &FormMap, cap: usize, order: usize, leaves: usize) -> Vec<Report> {
    let pq = path_quiver(x, cap, ChainKind::Unnormalized).unwrap();
    let target = from_dg_algebra(GThetaMoore::with_basis(nabla.trunc(), Vec::new())).unwrap();
    let images = ahol_images(&pq, target.algebra(), nabla, order).unwrap();
    let objects = vec![0; pq.quiver.objects()];
    let f = |g: usize| Ok(images[g].clone());
    let morphism = check_quiver_morphism(&pq.quiver, &target, &objects, &f).unwrap();
    let free = free_on_quiver(pq.quiver.clone(), leaves);
    let functor = ahol_functor(&pq, &target, &images);
    let commutes = check_functor_on(&free, &target, &functor, &free.tree_words(leaves)).unwrap();
    vec![morphism, commutes]
}

#[test]
fn holonomy_functor_commutes_with_d_on_the_triangle() {
    let x = standard(2);
    let nabla = abelian_connection(&x, Some(2), 3);
    assert!(!nabla.is_zero());
    for rep in ahol_reports(&x, &nabla, 1, 3, 3) {
        assert_passes(&rep);
    }
}

#[test]
fn holonomy_functor_commutes_with_d_on_glued_and_interval_examples() {
    let x = glued_boundary();
    let nabla = abelian_connection(&x, None, 2);
    for rep in ahol_reports(&x, &nabla, 1, 2, 3) {
        assert_passes(&rep);
    }
    let x = standard(1);
    let nabla = abelian_connection(&x, Some(1), 2);
    for rep in ahol_reports(&x, &nabla, 2, 2, 2) {
        assert_passes(&rep);
    }
}

#[test]
fn zero_connection_sends_generators_to_units() {
    let x = standard(2);
    let nabla = FormMap::zero(&x, 2);
    let pq = path_quiver(&x, 1, ChainKind::Unnormalized).unwrap();
    let target = GThetaMoore::with_basis(2, Vec::new());
    let images = ahol_images(&pq, &target, &nabla, 3).unwrap();
    for (a, img) in pq.arrows.iter().zip(&images) {
        let d = a.simplex.dim();
        let mut expected = Lin::new();
        for v in 0..=d {
            lin_add(&mut expected, GBasis { dim: d, simplex: vec![v], word: vec![], theta: 0 }, BigInt::from(1));
        }
        assert_eq!(img, &expected);
    }
}

#[test]
fn holonomy_of_the_edge_is_the_exponential() {
    let x = standard(1);
    let nabla = abelian_connection(&x, Some(1), 4);
    let pq = path_quiver(&x, 0, ChainKind::Normalized).unwrap();
    let target = GThetaMoore::with_basis(4, Vec::new());
    let images = ahol_images(&pq, &target, &nabla, 4).unwrap();
    let edge = pq.arrows.iter().position(|a| a.source == 0 && a.target == 1).unwrap();
    let expected = elem(&[(1, &[], 0), (1, &[0], 1), (1, &[0, 0], 2), (1, &[0, 0, 0], 3), (1, &[0, 0, 0, 0], 4)]);
    assert_eq!(images[edge], expected);
}
