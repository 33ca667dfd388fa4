//! Fiberwise integration of forms on products of simplices and of simplicial
//! sets, the boundary integral and the Stokes residual.
//!
//! The chain integral integrates the part of a form on `Delta^p` that carries
//! every fiber differential of a global chain `[p] -> [n] x [r]`, one fiber
//! variable at a time, and pulls the result back to `Delta^n` along the base
//! section of the chain.  Summing over the maximal chains of `[n] x [r]` after
//! splitting off base degeneracies gives the fiberwise integral.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::chains::{self, Chain};
use crate::derham::{mask_of, wedge_sign, GForm};
use crate::dpalg::Bound;
use crate::error::{Error, Result};
use crate::ordinal;
use crate::simplicial::{FormMap, ProductForm, ProductModel, Realized, Simplex};

/// `int_{Delta^r x| Gamma} omega` for a form on `Delta^p` and a global chain
/// `Gamma: [p] -> [n] x [r]`; the result lives on `Delta^n`.
pub fn chain_integral(omega: &GForm, c: &Chain) -> Result<GForm> {
    let p = c.p();
    if omega.nvars() != p {
        return Err(Error::VariableCount { expected: p, found: omega.nvars() });
    }
    let a = c.analyze()?;
    let n = c.n();
    let fiber_mask = mask_of(&a.big_fs);
    let base_mask = mask_of(&a.bs[1..]);
    let mut out = GForm::zero(n, omega.trunc());
    for (w, mask, f) in omega.terms() {
        if mask & fiber_mask != fiber_mask || mask & !(fiber_mask | base_mask) != 0 {
            continue;
        }
        let b_mask = mask & !fiber_mask;
        let sign = wedge_sign(fiber_mask, b_mask).expect("disjoint masks");
        let mut g = f.clone();
        for (k, &v) in a.big_fs.iter().enumerate() {
            let lower = Bound::from_index(v + 1, p);
            let upper = Bound::from_index(a.us[k], p);
            g = g.definite_integral(v, lower, upper)?;
        }
        let g = g.ordinal_pullback(&a.bs)?;
        let new_mask = (1..=n).filter(|&j| b_mask >> a.bs[j] & 1 == 1).fold(0u32, |m, j| m | 1 << j);
        out.add_term(w.clone(), new_mask, if sign < 0 { g.neg() } else { g });
    }
    Ok(out)
}

/// The fiberwise integral along `Delta^n x Delta^r -> Delta^n`, computed on the
/// base-nondegenerate core and pulled back along the splitting surjection.
pub fn fiberwise(omega: &ProductForm) -> Result<GForm> {
    let (sigma, core) = omega.ez_factor_base();
    fiberwise_direct(&core)?.pullback(&sigma)
}

/// The sum of chain integrals over all maximal chains, without splitting off
/// base degeneracies first.
pub fn fiberwise_direct(omega: &ProductForm) -> Result<GForm> {
    let mut out = GForm::zero(omega.n(), omega.trunc());
    for (c, v) in omega.values() {
        out = out.add(&chain_integral(v, c)?);
    }
    Ok(out)
}

/// The boundary integral on `Delta^n x Delta^r`: the fiberwise integrals of
/// the fiber faces, with alternating signs when `signed` is set.
pub fn boundary_fiberwise_product(omega: &ProductForm, signed: bool) -> Result<GForm> {
    let mut out = GForm::zero(omega.n(), omega.trunc());
    if omega.r() == 0 {
        return Ok(out);
    }
    for i in 0..=omega.r() {
        let term = fiberwise(&omega.face_fiber(i)?)?;
        out = if signed && i % 2 == 1 { out.sub(&term) } else { out.add(&term) };
    }
    Ok(out)
}

/// `fint d omega - oint omega - (-1)^r d fint omega` on `Delta^n x Delta^r`
/// with the signed boundary integral.
pub fn stokes_residual_product(omega: &ProductForm) -> Result<GForm> {
    let lhs = fiberwise(&omega.d())?;
    let bdry = boundary_fiberwise_product(omega, true)?;
    let inner = fiberwise(omega)?.d();
    let inner = if omega.r() % 2 == 1 { inner.neg() } else { inner };
    Ok(lhs.sub(&bdry).sub(&inner))
}

/// The fiber simplices over which a form on `X x U` is nondegenerate, and the
/// maximal ones among them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportSet {
    pub supp: Vec<Simplex>,
    pub part: Vec<Simplex>,
}

/// Whether `(id x u)^* omega` is degenerate along the fiber.
fn fiber_degenerate(prod: &Realized<ProductModel>, omega: &FormMap, u: &Simplex) -> Result<bool> {
    let x = &prod.model().x;
    let r = u.dim();
    for j in 0..r {
        let mut all = true;
        for s in x.nondegenerate() {
            let pf = prod.restrict(omega, &s, u)?;
            let sd = ordinal::compose(&ordinal::coface(r, j), &ordinal::codegeneracy(r - 1, j));
            if pf.pullback(&ordinal::identity(pf.n()), &sd)? != pf {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The support of `omega` along the projection to `X` and its maximal part.
pub fn support(prod: &Realized<ProductModel>, omega: &FormMap) -> Result<SupportSet> {
    let u_set = &prod.model().y;
    let mut supp = Vec::new();
    for u in u_set.nondegenerate() {
        if !fiber_degenerate(prod, omega, &u)? {
            supp.push(u);
        }
    }
    let mut below: BTreeSet<Simplex> = BTreeSet::new();
    for u in &supp {
        let r = u.dim();
        for k in 0..r {
            for inj in ordinal::all_injections(k, r) {
                below.insert(u_set.act(u, &inj)?);
            }
        }
    }
    let part = supp.iter().filter(|u| !below.contains(*u)).cloned().collect();
    Ok(SupportSet { supp, part })
}

/// `fint_{pr_X} (id x u)^* omega`: the fiberwise integral over a single fiber simplex.
pub fn fiberwise_over(prod: &Realized<ProductModel>, omega: &FormMap, u: &Simplex) -> Result<FormMap> {
    let x = prod.model().x.clone();
    FormMap::from_fn(&x, omega.trunc(), |s| fiberwise(&prod.restrict(omega, s, u)?))
}

/// The fiberwise integral along `X x U -> X`, summed over the maximal support.
pub fn fiberwise_general(prod: &Realized<ProductModel>, omega: &FormMap) -> Result<FormMap> {
    fiberwise_over_all(prod, omega, &support(prod, omega)?.part)
}

/// The boundary integral along `X x U -> X`; `signed` inserts `(-1)^i` on face `i`.
pub fn boundary_fiberwise(prod: &Realized<ProductModel>, omega: &FormMap, signed: bool) -> Result<FormMap> {
    let sup = support(prod, omega)?;
    let u_set = &prod.model().y;
    let mut out = FormMap::zero(&prod.model().x, omega.trunc());
    for u in &sup.part {
        let r = u.dim();
        if r == 0 {
            continue;
        }
        for i in 0..=r {
            let face = u_set.face(u, i)?;
            let term = fiberwise_over(prod, omega, &face)?;
            out = if signed && i % 2 == 1 { out.sub(&term)? } else { out.add(&term)? };
        }
    }
    Ok(out)
}

/// The fiberwise integral over a given family of fiber simplices.
pub fn fiberwise_over_all(prod: &Realized<ProductModel>, omega: &FormMap, part: &[Simplex]) -> Result<FormMap> {
    let mut out = FormMap::zero(&prod.model().x, omega.trunc());
    for u in part {
        out = out.add(&fiberwise_over(prod, omega, u)?)?;
    }
    Ok(out)
}

/// `fint d omega - oint omega - sum_{u in part} (-1)^{dim u} d fint (id x u)^* omega`.
///
/// `signed` selects the alternating boundary integral.  With `literal_part`
/// the integral of `d omega` runs over the maximal support of `d omega`
/// itself; otherwise it runs over the maximal support of `omega`, like the
/// other two terms.
pub fn stokes_residual_with(prod: &Realized<ProductModel>, omega: &FormMap, signed: bool, literal_part: bool) -> Result<FormMap> {
    let part = support(prod, omega)?.part;
    let domega = omega.d();
    let lhs = if literal_part { fiberwise_general(prod, &domega)? } else { fiberwise_over_all(prod, &domega, &part)? };
    let bdry = boundary_fiberwise(prod, omega, signed)?;
    let mut res = lhs.sub(&bdry)?;
    for u in &part {
        let term = fiberwise_over(prod, omega, u)?.d();
        res = if u.dim() % 2 == 1 { res.add(&term)? } else { res.sub(&term)? };
    }
    Ok(res)
}

/// The Stokes residual with the alternating boundary integral.
pub fn stokes_residual(prod: &Realized<ProductModel>, omega: &FormMap) -> Result<FormMap> {
    stokes_residual_with(prod, omega, true, false)
}

/// The per-chain Stokes identity for a maximal chain: the chain integral of
/// `Gamma_fs^* d(omega_fs) ^ Gamma_bs^* omega_bs` minus the signed sum over the
/// block vertices.  `omega_fs` is a form on `Delta^r`, `omega_bs` on `Delta^n`.
pub fn stokes_chain_residual(c: &Chain, omega_fs: &GForm, omega_bs: &GForm) -> Result<GForm> {
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let on_chain = |pts: &Chain| -> Result<GForm> {
        let f = omega_fs.pullback(&pts.fiber_coord())?;
        let b = omega_bs.pullback(&pts.base_coord())?;
        f.wedge(&b)
    };
    let lhs_form = omega_fs.d().pullback(&c.fiber_coord())?.wedge(&omega_bs.pullback(&c.base_coord())?)?;
    let mut res = chain_integral(&lhs_form, c)?;
    let a = c.analyze()?;
    for j in 1..=a.block_count() {
        let rj = a.block_sizes[j - 1];
        for i in 0..=rj {
            let v = a.block_vertices[j - 1][i];
            let big_r = a.offset(j, i);
            let face = c.drop_vertex(v);
            let term = if i == 0 || i == rj {
                chain_integral(&on_chain(&face)?, &face)?
            } else {
                let (gv, h) = chains::face_factor(c, v)?;
                if h != big_r {
                    return Err(Error::NoFaceFactor(v));
                }
                chain_integral(&on_chain(&face)?, &gv)?
            };
            res = if big_r % 2 == 1 { res.add(&term) } else { res.sub(&term) };
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalg::DPPoly;
    use crate::simplicial::{product, standard, standard_realized};

    fn chain(n: usize, r: usize, pts: &[(usize, usize)]) -> Chain {
        Chain::new(n, r, pts.to_vec()).unwrap()
    }

    #[test]
    fn chain_integral_of_a_fiber_one_form() {
        let c = chain(0, 1, &[(0, 0), (0, 1)]);
        let w = GForm::dx(1, 1, 1);
        assert_eq!(chain_integral(&w, &c).unwrap(), GForm::function(DPPoly::theta(0), 1));
        let c = chain(1, 1, &[(0, 0), (0, 1), (1, 1)]);
        let w = GForm::dx(2, 1, 1);
        let expected = GForm::function(DPPoly::theta(1).sub(&DPPoly::var(1, 1)), 1);
        assert_eq!(chain_integral(&w, &c).unwrap(), expected);
        assert!(chain_integral(&GForm::one(2, 1), &c).unwrap().is_zero());
    }

    #[test]
    fn fiber_length_is_constant() {
        let pf = ProductForm::from_global(1, 1, &GForm::dx(2, 2, 1)).unwrap();
        assert_eq!(fiberwise(&pf).unwrap(), GForm::function(DPPoly::theta(1), 1));
    }

    #[test]
    fn empty_fiber_is_identity() {
        let g = GForm::function(DPPoly::var(2, 1).mul(&DPPoly::var(2, 2)), 1).add(&GForm::dx(2, 2, 1));
        let pf = ProductForm::from_global(2, 0, &g).unwrap();
        assert_eq!(fiberwise(&pf).unwrap(), g);
    }

    #[test]
    fn general_over_a_point_and_an_interval() {
        let d1 = standard(1);
        let d0 = standard(0);
        let prod = product(&d1, &d0, 1).unwrap();
        let f = FormMap::on_standard(&standard_realized(1), &GForm::function(DPPoly::var(1, 1), 1)).unwrap();
        let omega = f.pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.0)).unwrap();
        assert!(omega.is_valid());
        assert_eq!(fiberwise_general(&prod, &omega).unwrap(), f);
        let prod = product(&d0, &d1, 1).unwrap();
        let g = FormMap::on_standard(&standard_realized(1), &GForm::dx(1, 1, 1)).unwrap();
        let omega = g.pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.1)).unwrap();
        let sup = support(&prod, &omega).unwrap();
        assert_eq!(sup.part.len(), 1);
        let res = fiberwise_general(&prod, &omega).unwrap();
        assert_eq!(res.value(0, 0), &GForm::function(DPPoly::theta(0), 1));
    }
}
