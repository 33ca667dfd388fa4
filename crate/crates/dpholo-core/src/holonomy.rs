//! Iterated integrals on path spaces, the de Rham map to cochains with values
//! in `U g (x) Z<theta>`, the Alexander-Whitney cup product and the truncated
//! holonomy series of a connection.
//!
//! The iterated integral of `omega_1, .., omega_r` at a `p`-simplex `gamma` of
//! `[Delta^1, X]` is computed directly on `Delta^p x Delta^r`: on a maximal
//! chain `k -> (b_k, f_k)` the `j`-th factor is `omega_j` pulled back along the
//! simplex of `X` obtained by evaluating `gamma` at the points
//! `([f_k >= j], b_k)` of `[1] x [p]`.  The fiberwise integral of the wedge of
//! these factors is the value of the iterated integral at `gamma`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chains;
use crate::derham::GForm;
use crate::error::{Error, Result};
use crate::integrate;
use crate::linfty::word_degree;
use crate::ordinal::{self, OrdMap};
use crate::simplicial::{FormMap, MapModel, ProductForm, Realized, Simplex};

/// Which degree of a homogeneous form enters the sign rules.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegreeMode {
    /// The total degree `q - p` of form degree `q` and env degree `p`.
    Total,
    /// The form degree `q` alone.
    Form,
}

/// Which differential acts on valued forms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Differential {
    /// `d(v (x) w) = v (x) dw`.
    Literal,
    /// `d(v (x) w) = (-1)^{deg v} v (x) dw`.
    Koszul,
}

impl Differential {
    pub fn apply(self, g: &GForm) -> GForm {
        match self {
            Differential::Literal => g.d(),
            Differential::Koszul => g.d_koszul(),
        }
    }

    pub fn apply_map(self, w: &FormMap) -> FormMap {
        w.map(|g| self.apply(g))
    }
}

/// The common degree of all nonzero values, if there is one.
pub fn homogeneous_degree(w: &FormMap, mode: DegreeMode) -> Option<i32> {
    let mut deg = None;
    for d in 0..=w.set().cap() {
        for i in 0..w.set().count(d) {
            let v = w.value(d, i);
            if v.is_zero() {
                continue;
            }
            let here = match mode {
                DegreeMode::Total => v.total_degree()?,
                DegreeMode::Form => v.form_degree()? as i32,
            };
            match deg {
                None => deg = Some(here),
                Some(e) if e != here => return None,
                _ => {}
            }
        }
    }
    Some(deg.unwrap_or(0))
}

fn odd(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

/// The sign `(-1)^{sum_i (r - i)(|omega_i| - 1)}` of the map `C`.
pub fn c_sign(degrees: &[i32]) -> i32 {
    let r = degrees.len() as i32;
    let e: i32 = degrees.iter().enumerate().map(|(i, &d)| (r - 1 - i as i32) * (d - 1)).sum();
    if odd(e) {
        -1
    } else {
        1
    }
}

/// `omega_1 x .. x omega_r` restricted to `Delta^p x Delta^r` over a path simplex.
pub fn iterated_product(path: &Realized<MapModel>, omegas: &[FormMap], gamma: &Simplex, trunc: usize) -> Result<ProductForm> {
    let p = gamma.dim();
    let r = omegas.len();
    let mut values = BTreeMap::new();
    for c in chains::enumerate_maximal(p, r) {
        let mut acc = GForm::one(p + r, trunc);
        for (j, w) in omegas.iter().enumerate() {
            let pts: Vec<(usize, usize)> = c.points().iter().map(|&(b, f)| (usize::from(f > j), b)).collect();
            let x = path.evaluate(gamma, &pts)?;
            acc = acc.wedge(&w.value_at(&x)?)?;
        }
        values.insert(c, acc);
    }
    ProductForm::new_unchecked(p, r, trunc, values)
}

fn common_trunc(path: &Realized<MapModel>, omegas: &[FormMap]) -> Result<usize> {
    let target = &path.model().target;
    let mut trunc = None;
    for w in omegas {
        if w.set() != target {
            return Err(Error::Incompatible(String::from("form does not live on the target of the path space")));
        }
        match trunc {
            None => trunc = Some(w.trunc()),
            Some(t) if t != w.trunc() => return Err(Error::TruncationMismatch(t, w.trunc())),
            _ => {}
        }
    }
    trunc.ok_or_else(|| Error::Malformed(String::from("the iterated integral needs an explicit truncation when r = 0")))
}

/// `(int omega_1 .. omega_r)` at one simplex of the path space.
pub fn iterated_integral_at(path: &Realized<MapModel>, omegas: &[FormMap], gamma: &Simplex, trunc: usize) -> Result<GForm> {
    if omegas.is_empty() {
        return Ok(GForm::one(gamma.dim(), trunc));
    }
    integrate::fiberwise(&iterated_product(path, omegas, gamma, trunc)?)
}

/// The iterated integral as a form on the path space.
pub fn iterated_integral(path: &Realized<MapModel>, omegas: &[FormMap]) -> Result<FormMap> {
    let trunc = common_trunc(path, omegas)?;
    FormMap::from_fn(path.set(), trunc, |s| iterated_integral_at(path, omegas, s, trunc))
}

/// The iterated integral with an explicit truncation, allowing `r = 0`.
pub fn iterated_integral_trunc(path: &Realized<MapModel>, omegas: &[FormMap], trunc: usize) -> Result<FormMap> {
    FormMap::from_fn(path.set(), trunc, |s| iterated_integral_at(path, omegas, s, trunc))
}

/// `C(omega_1[-1] (x) .. (x) omega_r[-1])`: the iterated integral with its sign.
pub fn c_map(path: &Realized<MapModel>, omegas: &[FormMap], mode: DegreeMode) -> Result<FormMap> {
    let degrees = degrees_of(omegas, mode)?;
    Ok(iterated_integral(path, omegas)?.scale(&BigInt::from(c_sign(&degrees))))
}

fn degrees_of(omegas: &[FormMap], mode: DegreeMode) -> Result<Vec<i32>> {
    omegas.iter().enumerate().map(|(i, w)| homogeneous_degree(w, mode).ok_or_else(|| Error::Malformed(format!("form {} is not homogeneous", i + 1)))).collect()
}

/// `E_eps^* omega`: a form on `X` pulled back to the path space along an endpoint.
pub fn endpoint_pullback(path: &Realized<MapModel>, w: &FormMap, eps: usize) -> Result<FormMap> {
    w.pullback_along(path.set(), |s| path.endpoint(s, eps))
}

fn pm(sign_odd: bool, w: FormMap) -> FormMap {
    if sign_odd {
        w.scale(&BigInt::from(-1))
    } else {
        w
    }
}

/// The differential of an iterated integral minus the sum of the four kinds
/// of terms: the differentiated slots, the merged neighbours and the two
/// endpoint terms.  The residual vanishes exactly when the formula holds.
pub fn diff_formula_residual(path: &Realized<MapModel>, omegas: &[FormMap], mode: DegreeMode, diff: Differential) -> Result<FormMap> {
    let r = omegas.len();
    if r == 0 {
        return Err(Error::Malformed(String::from("the derivative formula needs r >= 1")));
    }
    let trunc = common_trunc(path, omegas)?;
    let degs = degrees_of(omegas, mode)?;
    let mut res = diff.apply_map(&iterated_integral(path, omegas)?);
    let mut prefix = 0i32;
    for i in 0..r {
        let mut ws = omegas.to_vec();
        ws[i] = diff.apply_map(&omegas[i]);
        let term = iterated_integral(path, &ws)?;
        res = res.sub(&pm(odd(prefix + r as i32), term))?;
        prefix += degs[i];
    }
    for i in 0..r.saturating_sub(1) {
        let mut ws: Vec<FormMap> = omegas[..i].to_vec();
        ws.push(omegas[i].wedge(&omegas[i + 1])?);
        ws.extend_from_slice(&omegas[i + 2..]);
        let term = iterated_integral(path, &ws)?;
        res = res.sub(&pm(odd(r as i32 - 2 - i as i32), term))?;
    }
    let rest = iterated_integral_trunc(path, &omegas[1..], trunc)?;
    let head = endpoint_pullback(path, &omegas[0], 1)?.wedge(&rest)?;
    res = res.sub(&pm(odd((r as i32 - 1) * (degs[0] - 1)), head))?;
    let init = iterated_integral_trunc(path, &omegas[..r - 1], trunc)?;
    let tail = init.wedge(&endpoint_pullback(path, &omegas[r - 1], 0)?)?;
    res.add(&tail)
}

/// The part of a form of env degree `p` and form degree `q`.
pub fn bihomogeneous_part(w: &FormMap, p: i32, q: u32) -> FormMap {
    w.map(|g| {
        let mut out = GForm::zero(g.nvars(), g.trunc());
        for (word, m, f) in g.terms() {
            if word_degree(word) == p && m.count_ones() == q {
                out.add_term(word.clone(), m, f.clone());
            }
        }
        out
    })
}

/// The nonzero bihomogeneous parts `(p, q, part)` of a form.
pub fn bihomogeneous_parts(w: &FormMap) -> Vec<(i32, u32, FormMap)> {
    let mut degs = alloc::collections::BTreeSet::new();
    for d in 0..=w.set().cap() {
        for i in 0..w.set().count(d) {
            degs.extend(w.value(d, i).bidegrees());
        }
    }
    degs.into_iter().map(|(p, q)| (p, q, bihomogeneous_part(w, p, q))).collect()
}

/// The derivative formula with signs that track env degrees under the
/// literal differential.  For bihomogeneous `omega_i` of env degree `p_i` and
/// form degree `q_i`:
///
/// `d int = sum_i (-1)^{q_1 + .. + q_{i-1} + r + p_{i+1} + .. + p_r} int .. d omega_i ..`
/// `      + sum_i (-1)^{r-1-i} int .. (omega_i ^ omega_{i+1}) ..`
/// `      + (-1)^{(r-1)(q_1 - 1)} E_1^* omega_1 ^ int omega_2 .. omega_r`
/// `      - (-1)^{(r-1) p_r} int omega_1 .. omega_{r-1} ^ E_0^* omega_r`.
///
/// General forms are split into bihomogeneous parts and the residuals summed.
pub fn diff_formula_residual_env(path: &Realized<MapModel>, omegas: &[FormMap]) -> Result<FormMap> {
    let r = omegas.len();
    if r == 0 {
        return Err(Error::Malformed(String::from("the derivative formula needs r >= 1")));
    }
    let trunc = common_trunc(path, omegas)?;
    let parts: Vec<Vec<(i32, u32, FormMap)>> = omegas.iter().map(bihomogeneous_parts).collect();
    let mut total = FormMap::zero(path.set(), trunc);
    let mut idx = vec![0usize; r];
    if parts.iter().any(Vec::is_empty) {
        return Ok(total);
    }
    loop {
        let ws: Vec<FormMap> = (0..r).map(|i| parts[i][idx[i]].2.clone()).collect();
        let ps: Vec<i32> = (0..r).map(|i| parts[i][idx[i]].0).collect();
        let qs: Vec<i32> = (0..r).map(|i| parts[i][idx[i]].1 as i32).collect();
        total = total.add(&bihomogeneous_residual(path, &ws, &ps, &qs, trunc)?)?;
        let mut k = 0;
        loop {
            if k == r {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < parts[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn bihomogeneous_residual(path: &Realized<MapModel>, ws: &[FormMap], ps: &[i32], qs: &[i32], trunc: usize) -> Result<FormMap> {
    let r = ws.len();
    let mut res = iterated_integral(path, ws)?.d();
    for i in 0..r {
        let mut slot = ws.to_vec();
        slot[i] = ws[i].d();
        let e = qs[..i].iter().sum::<i32>() + r as i32 + ps[i + 1..].iter().sum::<i32>();
        res = res.sub(&pm(odd(e), iterated_integral(path, &slot)?))?;
    }
    for i in 0..r - 1 {
        let mut merged: Vec<FormMap> = ws[..i].to_vec();
        merged.push(ws[i].wedge(&ws[i + 1])?);
        merged.extend_from_slice(&ws[i + 2..]);
        res = res.sub(&pm(odd(r as i32 - 2 - i as i32), iterated_integral(path, &merged)?))?;
    }
    let rest = iterated_integral_trunc(path, &ws[1..], trunc)?;
    let head = endpoint_pullback(path, &ws[0], 1)?.wedge(&rest)?;
    res = res.sub(&pm(odd((r as i32 - 1) * (qs[0] - 1)), head))?;
    let init = iterated_integral_trunc(path, &ws[..r - 1], trunc)?;
    let tail = init.wedge(&endpoint_pullback(path, &ws[r - 1], 0)?)?;
    res.add(&pm(odd((r as i32 - 1) * ps[r - 1]), tail))
}

/// `<omega, x> = fint_{Delta^q -> Delta^0} x^* omega` for a `q`-simplex `x`.
pub fn integrate_simplex(w: &FormMap, x: &Simplex) -> Result<GForm> {
    integrate_form(&w.value_at(x)?)
}

/// The integral of a form on `Delta^q` over the whole simplex.
pub fn integrate_form(g: &GForm) -> Result<GForm> {
    integrate::fiberwise(&ProductForm::from_global(0, g.nvars(), g)?)
}

/// `<omega, sum m_x x>` for an integer chain of simplices.
pub fn de_rham(w: &FormMap, chain: &[(BigInt, Simplex)]) -> Result<GForm> {
    let mut out = GForm::zero(0, w.trunc());
    for (m, x) in chain {
        out = out.add(&integrate_simplex(w, x)?.scale(m));
    }
    Ok(out)
}

/// The boundary `sum (-1)^i x delta_i` of a simplex as an integer chain.
pub fn boundary_chain(set: &crate::simplicial::FiniteSimplicialSet, x: &Simplex) -> Result<Vec<(BigInt, Simplex)>> {
    let k = x.dim();
    if k == 0 {
        return Ok(Vec::new());
    }
    (0..=k).map(|i| Ok((BigInt::from(if i % 2 == 0 { 1 } else { -1 }), set.face(x, i)?))).collect()
}

/// `int_x d omega - int_{boundary x} omega`.
pub fn chain_map_residual(w: &FormMap, x: &Simplex) -> Result<GForm> {
    let lhs = integrate_simplex(&w.d(), x)?;
    Ok(lhs.sub(&de_rham(w, &boundary_chain(w.set(), x)?)?))
}

/// The Alexander-Whitney diagonal of a `k`-simplex given by its vertex list.
pub fn alexander_whitney(vertices: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..vertices.len()).map(|p| (vertices[..=p].to_vec(), vertices[p..].to_vec())).collect()
}

/// A normalized cochain on `Delta^n` with values in `U g (x) Z<theta>`: one value
/// per nondegenerate simplex, keyed by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    n: usize,
    trunc: usize,
    values: BTreeMap<Vec<usize>, GForm>,
}

fn increasing_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n + 1).flat_map(|k| ordinal::all_injections(k - 1, n)).collect()
}

fn flip_by_env(g: &GForm, q: usize) -> GForm {
    if q.is_multiple_of(2) {
        return g.clone();
    }
    let mut out = GForm::zero(g.nvars(), g.trunc());
    for (w, m, f) in g.terms() {
        out.add_term(w.clone(), m, if odd(word_degree(w)) { f.neg() } else { f.clone() });
    }
    out
}

impl Cochain {
    pub fn zero(n: usize, trunc: usize) -> Self {
        Cochain { n, trunc, values: BTreeMap::new() }
    }

    /// The unit: `1` on every vertex.
    pub fn unit(n: usize, trunc: usize) -> Self {
        let mut c = Self::zero(n, trunc);
        for v in 0..=n {
            c.set(vec![v], GForm::one(0, trunc));
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, GForm> {
        &self.values
    }

    /// Sets the value on a nondegenerate simplex.
    pub fn set(&mut self, simplex: Vec<usize>, value: GForm) {
        if value.is_zero() {
            self.values.remove(&simplex);
        } else {
            self.values.insert(simplex, value);
        }
    }

    /// The value on a simplex given by a weakly increasing vertex list; zero on degenerate ones.
    pub fn eval(&self, simplex: &[usize]) -> GForm {
        self.values.get(simplex).cloned().unwrap_or_else(|| GForm::zero(0, self.trunc))
    }

    /// The de Rham image of a form on `Delta^n`.
    pub fn from_form(g: &GForm) -> Result<Self> {
        let mut c = Self::zero(g.nvars(), g.trunc());
        for s in increasing_subsets(g.nvars()) {
            let v = integrate_form(&g.pullback(&s)?)?;
            c.set(s, v);
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self, other: &Cochain) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCount { expected: self.n, found: other.n });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.eval(k).add(v);
            out.set(k.clone(), s);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = Self::zero(self.n, self.trunc);
        for (s, v) in &self.values {
            out.set(s.clone(), v.scale(k));
        }
        out
    }

    /// `(a cup b)(x) = sum_p (-1)^{p |v_b|} a(x|0..p) b(x|p..k)`.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain> {
        self.check(other)?;
        let mut out = Self::zero(self.n, self.trunc);
        for s in increasing_subsets(self.n) {
            let mut acc = GForm::zero(0, self.trunc);
            for (p, (front, back)) in alexander_whitney(&s).into_iter().enumerate() {
                let a = self.eval(&front);
                if a.is_zero() {
                    continue;
                }
                let b = flip_by_env(&other.eval(&back), p);
                acc = acc.add(&a.wedge(&b)?);
            }
            out.set(s, acc);
        }
        Ok(out)
    }

    /// `(delta c)(x) = c(boundary x) = sum_i (-1)^i c(x delta_i)`.
    pub fn coboundary(&self) -> Cochain {
        let mut out = Self::zero(self.n, self.trunc);
        for s in increasing_subsets(self.n) {
            if s.len() < 2 {
                continue;
            }
            let mut acc = GForm::zero(0, self.trunc);
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let v = self.eval(&f);
                acc = if i % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
            }
            out.set(s, acc);
        }
        out
    }

    /// `alpha^* c` for `alpha: [m] -> [n]`: `(alpha^* c)(x) = c(alpha x)`.
    pub fn pullback(&self, alpha: &[usize]) -> Result<Cochain> {
        ordinal::validate(alpha, self.n)?;
        let m = alpha.len() - 1;
        let mut out = Self::zero(m, self.trunc);
        for s in increasing_subsets(m) {
            let img: OrdMap = s.iter().map(|&v| alpha[v]).collect();
            if ordinal::is_injective(&img) {
                out.set(s, self.eval(&img));
            }
        }
        Ok(out)
    }

    /// Drops env words longer than `trunc`.
    pub fn retruncate(&self, trunc: usize) -> Cochain {
        let mut out = Self::zero(self.n, trunc);
        for (s, v) in &self.values {
            out.set(s.clone(), v.retruncate(trunc));
        }
        out
    }
}

/// The truncated holonomy `sum_{r <= order} int int nabla .. nabla` at a path simplex,
/// each order wrapped with the sign of `C` computed from total degrees.
pub fn hol_at(path: &Realized<MapModel>, nabla: &FormMap, order: usize, gamma: &Simplex) -> Result<Cochain> {
    let trunc = nabla.trunc();
    let p = gamma.dim();
    let deg = homogeneous_degree(nabla, DegreeMode::Total).ok_or_else(|| Error::Malformed(String::from("connection is not homogeneous")))?;
    let mut total = GForm::zero(p, trunc);
    for r in 0..=order {
        let omegas = vec![nabla.clone(); r];
        let term = iterated_integral_at(path, &omegas, gamma, trunc)?;
        total = total.add(&term.scale(&BigInt::from(c_sign(&vec![deg; r]))));
    }
    Cochain::from_form(&total)
}

/// The same sum without the sign of `C`.
pub fn hol_unsigned_at(path: &Realized<MapModel>, nabla: &FormMap, order: usize, gamma: &Simplex) -> Result<Cochain> {
    let trunc = nabla.trunc();
    let mut total = GForm::zero(gamma.dim(), trunc);
    for r in 0..=order {
        total = total.add(&iterated_integral_at(path, &vec![nabla.clone(); r], gamma, trunc)?);
    }
    Cochain::from_form(&total)
}

/// The holonomy on every nondegenerate simplex of the path space.
pub fn hol(path: &Realized<MapModel>, nabla: &FormMap, order: usize) -> Result<Vec<Vec<Cochain>>> {
    if !nabla.is_connection() {
        return Err(Error::Malformed(String::from("a connection must have form degree 1")));
    }
    let set = path.set();
    (0..=set.cap()).map(|d| (0..set.count(d)).map(|i| hol_at(path, nabla, order, &Simplex::nondegenerate(d, i))).collect()).collect()
}

/// Checks `hol(gamma alpha) = alpha^* hol(gamma)` for every nondegenerate
/// `gamma` and every ordinal map `alpha` into its dimension; returns the
/// number of checks or the first failure.
pub fn check_hol_simplicial(path: &Realized<MapModel>, nabla: &FormMap, order: usize) -> Result<usize> {
    let set = path.set();
    let mut count = 0;
    for gamma in set.nondegenerate() {
        let h = hol_at(path, nabla, order, &gamma)?;
        let k = gamma.dim();
        for m in 0..=set.cap() {
            for alpha in ordinal::all_maps(m, k) {
                let lhs = hol_at(path, nabla, order, &set.act(&gamma, &alpha)?)?;
                if lhs != h.pullback(&alpha)? {
                    return Err(Error::Axiom(format!("hol fails to commute with {alpha:?} at {gamma}")));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalg::DPPoly;
    use crate::linfty::Letter;
    use crate::simplicial::{path_space, standard_realized};

    fn e() -> Letter {
        Letter { gens: vec![0], deg: 1 }
    }

    fn tautological(path: &Realized<MapModel>) -> Simplex {
        (0..path.set().count(0))
            .map(|i| Simplex::nondegenerate(0, i))
            .find(|s| path.endpoint(s, 0).unwrap().core == 0 && path.endpoint(s, 1).unwrap().core == 1)
            .unwrap()
    }

    #[test]
    fn c_sign_examples() {
        assert_eq!(c_sign(&[3]), 1);
        assert_eq!(c_sign(&[1, 1]), 1);
        assert_eq!(c_sign(&[2, 1]), -1);
        assert_eq!(c_sign(&[0, 0]), -1);
    }

    #[test]
    fn iterated_integrals_of_a_constant_connection() {
        let d1 = standard_realized(1);
        let path = path_space(d1.set(), 1).unwrap();
        let w = FormMap::on_standard(&d1, &GForm::term(1, 3, vec![e()], &[1], DPPoly::one(1)).unwrap()).unwrap();
        let g = tautological(&path);
        let one = iterated_integral_at(&path, core::slice::from_ref(&w), &g, 3).unwrap();
        assert_eq!(one, GForm::term(0, 3, vec![e()], &[], DPPoly::theta(0)).unwrap());
        let two = iterated_integral_at(&path, &[w.clone(), w.clone()], &g, 3).unwrap();
        let expect = GForm::term(0, 3, vec![e(), e()], &[], DPPoly::var_power(0, 0, 2)).unwrap();
        assert_eq!(two, expect.neg());
        let h = hol_at(&path, &w, 3, &g).unwrap();
        let mut sum = GForm::zero(0, 3);
        for r in 0..=3u32 {
            sum = sum.add(&GForm::term(0, 3, vec![e(); r as usize], &[], DPPoly::var_power(0, 0, r)).unwrap());
        }
        assert_eq!(h.eval(&[0]), sum);
    }

    #[test]
    fn cup_is_associative_and_unital() {
        let f = GForm::term(2, 2, vec![e()], &[1], DPPoly::var(2, 2)).unwrap().add(&GForm::function(DPPoly::var(2, 1), 2));
        let a = Cochain::from_form(&f).unwrap();
        let b = Cochain::from_form(&GForm::term(2, 2, vec![e()], &[2], DPPoly::one(2)).unwrap()).unwrap();
        let u = Cochain::unit(2, 2);
        assert_eq!(a.cup(&u).unwrap(), a);
        assert_eq!(u.cup(&a).unwrap(), a);
        let l = a.cup(&b).unwrap().cup(&a).unwrap();
        let r = a.cup(&b.cup(&a).unwrap()).unwrap();
        assert_eq!(l, r);
        assert!(a.coboundary().coboundary().is_zero());
    }

    #[test]
    fn de_rham_of_a_point() {
        let d0 = standard_realized(0);
        let f = GForm::function(DPPoly::theta(0), 1);
        let w = FormMap::on_standard(&d0, &f).unwrap();
        assert_eq!(integrate_simplex(&w, &Simplex::nondegenerate(0, 0)).unwrap(), f);
    }

    #[test]
    fn aw_diagonal_of_a_triangle() {
        let aw = alexander_whitney(&[0, 1, 2]);
        assert_eq!(aw, vec![(vec![0], vec![0, 1, 2]), (vec![0, 1], vec![1, 2]), (vec![0, 1, 2], vec![2])]);
    }
}
