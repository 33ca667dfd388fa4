//! Finite simplicial sets presented by their nondegenerate simplices, products,
//! path spaces, hom spaces, finite `Ex` iterations and forms on them.
//!
//! A simplex is stored in Eilenberg-Zilber normal form: a surjection
//! `[k] -> [d]` together with a nondegenerate `d`-simplex.  Every nondegenerate
//! simplex carries its face table, and the action of an arbitrary ordinal map
//! is computed from the face tables through epi-mono factorization.
//!
//! Derived objects (nerves, products, mapping spaces) are described by a
//! [`SimplicialModel`]: a key type for simplices, a list of candidate keys per
//! dimension and the action of ordinal maps on keys.  [`Realized::build`] turns
//! a model into a [`FiniteSimplicialSet`] up to a dimension cap.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::chains::{self, Chain};
use crate::derham::GForm;
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdMap};

/// A simplex `surj^* core` of dimension `surj.len() - 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    pub surj: OrdMap,
    pub core_dim: usize,
    pub core: usize,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, idx: usize) -> Self {
        Simplex { surj: ordinal::identity(dim), core_dim: dim, core: idx }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == self.core_dim
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nondegenerate() {
            write!(f, "x{}_{}", self.core_dim, self.core)
        } else {
            write!(f, "{:?}*x{}_{}", self.surj, self.core_dim, self.core)
        }
    }
}

/// A nondegenerate simplex with its faces in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    pub label: String,
    pub faces: Vec<Simplex>,
}

/// A simplicial set with finitely many nondegenerate simplices, all of
/// dimension at most `cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSimplicialSet {
    cap: usize,
    cells: Vec<Vec<Cell>>,
}

impl FiniteSimplicialSet {
    /// Validates face tables and the simplicial identities.
    pub fn new(cap: usize, mut cells: Vec<Vec<Cell>>) -> Result<Self> {
        if cells.len() > cap + 1 {
            return Err(Error::CapExceeded { cap, what: format!("cells given up to dimension {}", cells.len() - 1) });
        }
        cells.resize(cap + 1, Vec::new());
        let set = FiniteSimplicialSet { cap, cells };
        for d in 0..=cap {
            for (i, c) in set.cells[d].iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if c.faces.len() != expected {
                    return Err(Error::Malformed(format!("cell {d}/{i} has {} faces, expected {expected}", c.faces.len())));
                }
                for s in &c.faces {
                    let ok = s.dim() + 1 == d && s.core_dim < d && ordinal::is_surjective(&s.surj, s.core_dim) && s.core < set.count(s.core_dim);
                    if !ok {
                        return Err(Error::Malformed(format!("cell {d}/{i} has an invalid face {s}")));
                    }
                }
            }
        }
        set.check_identities()?;
        Ok(set)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The largest dimension carrying a nondegenerate simplex.
    pub fn top_dim(&self) -> usize {
        (0..=self.cap).rev().find(|&d| !self.cells[d].is_empty()).unwrap_or(0)
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        self.cells.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn cell(&self, d: usize, i: usize) -> &Cell {
        &self.cells[d][i]
    }

    /// Iterates over all nondegenerate simplices, lowest dimension first.
    pub fn nondegenerate(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..=self.cap).flat_map(move |d| (0..self.count(d)).map(move |i| Simplex::nondegenerate(d, i)))
    }

    /// `alpha^* s` for an ordinal map `alpha: [m] -> [dim s]`.
    pub fn act(&self, s: &Simplex, alpha: &[usize]) -> Result<Simplex> {
        ordinal::validate(alpha, s.dim())?;
        if s.core_dim > self.cap || s.core >= self.count(s.core_dim) {
            return Err(Error::IndexOutOfRange { index: s.core, bound: self.count(s.core_dim) });
        }
        Ok(self.act_core(s.core_dim, s.core, &ordinal::compose(&s.surj, alpha)))
    }

    fn act_core(&self, d: usize, idx: usize, beta: &[usize]) -> Simplex {
        let (epi, mono) = ordinal::epi_mono(beta);
        if mono.len() == d + 1 {
            return Simplex { surj: epi, core_dim: d, core: idx };
        }
        let i = (0..=d).find(|v| !mono.contains(v)).expect("mono misses a vertex");
        let mono2: OrdMap = mono.iter().map(|&v| if v < i { v } else { v - 1 }).collect();
        let face = &self.cells[d][idx].faces[i];
        let beta2 = ordinal::compose(&face.surj, &ordinal::compose(&mono2, &epi));
        self.act_core(face.core_dim, face.core, &beta2)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let k = s.dim();
        if k == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, bound: k });
        }
        self.act(s, &ordinal::coface(k, i))
    }

    pub fn degeneracy(&self, s: &Simplex, j: usize) -> Result<Simplex> {
        let k = s.dim();
        if j > k {
            return Err(Error::IndexOutOfRange { index: j, bound: k });
        }
        self.act(s, &ordinal::codegeneracy(k, j))
    }

    /// The Eilenberg-Zilber decomposition `(sigma, core)` of a simplex.
    pub fn ez_factor(&self, s: &Simplex) -> (OrdMap, Simplex) {
        (s.surj.clone(), Simplex::nondegenerate(s.core_dim, s.core))
    }

    /// The vertex `t` of a simplex, as an index of a 0-cell.
    pub fn vertex(&self, s: &Simplex, t: usize) -> Result<usize> {
        Ok(self.act(s, &[t])?.core)
    }

    pub fn vertices(&self, s: &Simplex) -> Result<Vec<usize>> {
        (0..=s.dim()).map(|t| self.vertex(s, t)).collect()
    }

    /// The constant `d`-simplex at a vertex.
    pub fn constant(&self, v: usize, d: usize) -> Simplex {
        Simplex { surj: vec![0; d + 1], core_dim: 0, core: v }
    }

    /// All `d`-simplices, degenerate ones included.
    pub fn simplices(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for e in 0..=d.min(self.cap) {
            if self.count(e) == 0 {
                continue;
            }
            for surj in ordinal::all_surjections(d, e) {
                for idx in 0..self.count(e) {
                    out.push(Simplex { surj: surj.clone(), core_dim: e, core: idx });
                }
            }
        }
        out
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for d in 2..=self.cap {
            for (idx, c) in self.cells[d].iter().enumerate() {
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.act(&c.faces[j], &ordinal::coface(d - 1, i))?;
                        let rhs = self.act(&c.faces[i], &ordinal::coface(d - 1, j - 1))?;
                        if lhs != rhs {
                            return Err(Error::Axiom(format!("d_{i} d_{j} != d_{} d_{i} on cell {d}/{idx}", j - 1)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The Euler characteristic of the nondegenerate simplices.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.cap).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }
}

/// A combinatorial description of a simplicial set by keys.
pub trait SimplicialModel {
    type Key: Ord + Clone + fmt::Debug;

    /// Keys of dimension `k`; must include every nondegenerate simplex.
    fn candidates(&self, k: usize) -> Result<Vec<Self::Key>>;

    /// `alpha^* key` for `alpha: [m] -> [k]`.
    fn act(&self, key: &Self::Key, alpha: &[usize]) -> Result<Self::Key>;

    fn label(&self, key: &Self::Key) -> String {
        format!("{key:?}")
    }
}

/// A model together with its realization as a finite simplicial set.
#[derive(Clone, Debug)]
pub struct Realized<M: SimplicialModel> {
    model: M,
    set: FiniteSimplicialSet,
    keys: Vec<Vec<M::Key>>,
    index: BTreeMap<(usize, M::Key), usize>,
}

fn degenerate_index<M: SimplicialModel>(model: &M, key: &M::Key, k: usize) -> Result<Option<usize>> {
    for j in 0..k {
        let sd = ordinal::compose(&ordinal::coface(k, j), &ordinal::codegeneracy(k - 1, j));
        if model.act(key, &sd)? == *key {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn normalize_key<M: SimplicialModel>(model: &M, index: &BTreeMap<(usize, M::Key), usize>, cap: usize, key: &M::Key, k: usize) -> Result<Simplex> {
    if let Some(j) = degenerate_index(model, key, k)? {
        let y = model.act(key, &ordinal::coface(k, j))?;
        let s = normalize_key(model, index, cap, &y, k - 1)?;
        return Ok(Simplex { surj: ordinal::compose(&s.surj, &ordinal::codegeneracy(k - 1, j)), ..s });
    }
    if k > cap {
        return Err(Error::CapExceeded { cap, what: format!("nondegenerate {k}-simplex {key:?}") });
    }
    match index.get(&(k, key.clone())) {
        Some(&i) => Ok(Simplex::nondegenerate(k, i)),
        None => Err(Error::Malformed(format!("nondegenerate {k}-simplex {key:?} missing from the candidates"))),
    }
}

impl<M: SimplicialModel> Realized<M> {
    /// Enumerates nondegenerate simplices up to dimension `cap`.
    pub fn build(model: M, cap: usize) -> Result<Self> {
        let mut keys: Vec<Vec<M::Key>> = Vec::with_capacity(cap + 1);
        let mut index = BTreeMap::new();
        let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(cap + 1);
        for d in 0..=cap {
            let mut nd = BTreeSet::new();
            for key in model.candidates(d)? {
                if degenerate_index(&model, &key, d)?.is_none() {
                    nd.insert(key);
                }
            }
            let nd: Vec<M::Key> = nd.into_iter().collect();
            for (i, key) in nd.iter().enumerate() {
                index.insert((d, key.clone()), i);
            }
            let mut row = Vec::with_capacity(nd.len());
            for key in &nd {
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    (0..=d)
                        .map(|i| {
                            let y = model.act(key, &ordinal::coface(d, i))?;
                            normalize_key(&model, &index, cap, &y, d - 1)
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                row.push(Cell { label: model.label(key), faces });
            }
            cells.push(row);
            keys.push(nd);
        }
        let set = FiniteSimplicialSet::new(cap, cells)?;
        Ok(Realized { model, set, keys, index })
    }

    pub fn set(&self) -> &FiniteSimplicialSet {
        &self.set
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn key(&self, d: usize, i: usize) -> &M::Key {
        &self.keys[d][i]
    }

    pub fn keys(&self, d: usize) -> &[M::Key] {
        self.keys.get(d).map_or(&[], |v| v.as_slice())
    }

    /// The key of an arbitrary simplex of the realization.
    pub fn key_of(&self, s: &Simplex) -> Result<M::Key> {
        self.model.act(&self.keys[s.core_dim][s.core], &s.surj)
    }

    /// The normal form of a key of dimension `k`.
    pub fn normalize(&self, key: &M::Key, k: usize) -> Result<Simplex> {
        normalize_key(&self.model, &self.index, self.set.cap, key, k)
    }
}

/// The nerve of a finite poset given by its order relation.
#[derive(Clone, Debug)]
pub struct NerveModel {
    leq: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl NerveModel {
    pub fn new(leq: Vec<Vec<bool>>, labels: Vec<String>) -> Result<Self> {
        let n = leq.len();
        if labels.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(String::from("poset relation must be square and labelled")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::Axiom(format!("poset relation is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::Axiom(format!("poset relation is not antisymmetric at {a},{b}")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::Axiom(format!("poset relation is not transitive at {a},{b},{c}")));
                    }
                }
            }
        }
        Ok(NerveModel { leq, labels })
    }

    /// The total order `[n]`.
    pub fn ordinal(n: usize) -> Self {
        NerveModel { leq: (0..=n).map(|a| (0..=n).map(|b| a <= b).collect()).collect(), labels: (0..=n).map(|a| format!("{a}")).collect() }
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }
}

impl SimplicialModel for NerveModel {
    type Key = Vec<usize>;

    fn candidates(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k + 1);
        fn rec(m: &NerveModel, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k + 1 {
                out.push(cur.clone());
                return;
            }
            for e in 0..m.size() {
                if let Some(&last) = cur.last() {
                    if last == e || !m.leq[last][e] {
                        continue;
                    }
                }
                cur.push(e);
                rec(m, k, cur, out);
                cur.pop();
            }
        }
        rec(self, k, &mut cur, &mut out);
        Ok(out)
    }

    fn act(&self, key: &Vec<usize>, alpha: &[usize]) -> Result<Vec<usize>> {
        ordinal::validate(alpha, key.len() - 1)?;
        Ok(alpha.iter().map(|&j| key[j]).collect())
    }

    fn label(&self, key: &Vec<usize>) -> String {
        let parts: Vec<&str> = key.iter().map(|&e| self.labels[e].as_str()).collect();
        format!("<{}>", parts.join(","))
    }
}

/// The standard simplex `Delta^n` with its simplices keyed by vertex lists.
pub fn standard_realized(n: usize) -> Realized<NerveModel> {
    Realized::build(NerveModel::ordinal(n), n).expect("the nerve of [n] is well formed")
}

pub fn standard(n: usize) -> FiniteSimplicialSet {
    standard_realized(n).set
}

/// The product of two simplicial sets; keys are pairs of simplices.
#[derive(Clone, Debug)]
pub struct ProductModel {
    pub x: FiniteSimplicialSet,
    pub y: FiniteSimplicialSet,
}

impl SimplicialModel for ProductModel {
    type Key = (Simplex, Simplex);

    fn candidates(&self, k: usize) -> Result<Vec<(Simplex, Simplex)>> {
        let mut out = Vec::new();
        for dx in 0..=k.min(self.x.top_dim()) {
            for dy in 0..=k.min(self.y.top_dim()) {
                if dx + dy < k || self.x.count(dx) == 0 || self.y.count(dy) == 0 {
                    continue;
                }
                for c in chains::enumerate_global(dx, dy, k) {
                    let fib = c.fiber_coord();
                    if !ordinal::is_surjective(&fib, dy) {
                        continue;
                    }
                    let base = c.base_coord();
                    for i in 0..self.x.count(dx) {
                        for j in 0..self.y.count(dy) {
                            out.push((Simplex { surj: base.clone(), core_dim: dx, core: i }, Simplex { surj: fib.clone(), core_dim: dy, core: j }));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn act(&self, key: &(Simplex, Simplex), alpha: &[usize]) -> Result<(Simplex, Simplex)> {
        Ok((self.x.act(&key.0, alpha)?, self.y.act(&key.1, alpha)?))
    }

    fn label(&self, key: &(Simplex, Simplex)) -> String {
        format!("({}, {})", key.0, key.1)
    }
}

pub fn product(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, cap: usize) -> Result<Realized<ProductModel>> {
    Realized::build(ProductModel { x: x.clone(), y: y.clone() }, cap)
}

impl Realized<ProductModel> {
    /// The simplex of the product with the two given components.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        if a.dim() != b.dim() {
            return Err(Error::Malformed(format!("components of dimensions {} and {}", a.dim(), b.dim())));
        }
        self.normalize(&(a.clone(), b.clone()), a.dim())
    }

    /// `(x x u)^* omega` as a form on `Delta^n x Delta^r`.
    pub fn restrict(&self, omega: &FormMap, x: &Simplex, u: &Simplex) -> Result<ProductForm> {
        let (n, r) = (x.dim(), u.dim());
        let mut values = BTreeMap::new();
        for c in chains::enumerate_maximal(n, r) {
            let a = self.model.x.act(x, &c.base_coord())?;
            let b = self.model.y.act(u, &c.fiber_coord())?;
            let s = self.pair(&a, &b)?;
            values.insert(c, omega.value_at(&s)?);
        }
        ProductForm::new(n, r, omega.trunc(), values)
    }
}

/// The shape whose maps into a simplicial set form a mapping space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    /// The nerve of `[1] x [k]`, giving the path space `[Delta^1, X]`.
    Prism,
    /// The nerve of the nonempty subsets of `[k]`, giving `Ex X`.
    Subdivision,
}

impl Shape {
    /// Maximal chains of the shape poset in dimension `k`, as element labels.
    pub fn maximal_chains(self, k: usize) -> Vec<Vec<Vec<usize>>> {
        match self {
            Shape::Prism => (0..=k)
                .map(|v| {
                    let mut c: Vec<Vec<usize>> = (0..=v).map(|b| vec![0, b]).collect();
                    c.extend((v..=k).map(|b| vec![1, b]));
                    c
                })
                .collect(),
            Shape::Subdivision => {
                let mut out = Vec::new();
                let mut perm: Vec<usize> = Vec::new();
                fn rec(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
                    if perm.len() == k + 1 {
                        let chain = (1..=k + 1)
                            .map(|l| {
                                let mut s = perm[..l].to_vec();
                                s.sort_unstable();
                                s
                            })
                            .collect();
                        out.push(chain);
                        return;
                    }
                    for v in 0..=k {
                        if !perm.contains(&v) {
                            perm.push(v);
                            rec(k, perm, out);
                            perm.pop();
                        }
                    }
                }
                rec(k, &mut perm, &mut out);
                out
            }
        }
    }

    /// The image of a shape element under the map induced by `alpha`.
    pub fn induced(self, alpha: &[usize], elem: &[usize]) -> Vec<usize> {
        match self {
            Shape::Prism => vec![elem[0], alpha[elem[1]]],
            Shape::Subdivision => {
                let s: BTreeSet<usize> = elem.iter().map(|&e| alpha[e]).collect();
                s.into_iter().collect()
            }
        }
    }

    fn dim_of_key(self, key: &[Simplex]) -> usize {
        match self {
            Shape::Prism => key[0].dim() - 1,
            Shape::Subdivision => key[0].dim(),
        }
    }
}

/// Simplicial maps from a shape into a target, one simplex per maximal chain.
#[derive(Clone, Debug)]
pub struct MapModel {
    pub target: FiniteSimplicialSet,
    pub shape: Shape,
    /// For path spaces: required start and end vertices.
    pub endpoints: Option<(usize, usize)>,
}

impl MapModel {
    /// Evaluates a map of dimension `k` on a weakly increasing list of shape elements.
    pub fn eval(&self, key: &[Simplex], k: usize, pts: &[Vec<usize>]) -> Result<Simplex> {
        for (ci, c) in self.shape.maximal_chains(k).iter().enumerate() {
            let pos: Option<Vec<usize>> = pts.iter().map(|p| c.iter().position(|q| q == p)).collect();
            if let Some(pos) = pos {
                if ordinal::is_monotone(&pos) {
                    return self.target.act(&key[ci], &pos);
                }
            }
        }
        Err(Error::Malformed(format!("points {pts:?} do not lie on one chain")))
    }

    fn vertex_ok(&self, elem: &[usize], v: usize) -> bool {
        match (self.shape, self.endpoints) {
            (Shape::Prism, Some((x, y))) => v == if elem[0] == 0 { x } else { y },
            _ => true,
        }
    }
}

/// Points a maximal chain shares with an earlier one: the earlier chain's
/// index and the positions of the shared points on each chain.
type SharedFace = (usize, Vec<usize>, Vec<usize>);

impl SimplicialModel for MapModel {
    type Key = Vec<Simplex>;

    fn candidates(&self, k: usize) -> Result<Vec<Vec<Simplex>>> {
        let chains = self.shape.maximal_chains(k);
        let len = chains[0].len();
        let sims = self.target.simplices(len - 1);
        let common: Vec<Vec<SharedFace>> = (0..chains.len())
            .map(|i| {
                (0..i)
                    .filter_map(|j| {
                        let mut pi = Vec::new();
                        let mut pj = Vec::new();
                        for (a, e) in chains[i].iter().enumerate() {
                            if let Some(b) = chains[j].iter().position(|q| q == e) {
                                pi.push(a);
                                pj.push(b);
                            }
                        }
                        (!pi.is_empty()).then_some((j, pi, pj))
                    })
                    .collect()
            })
            .collect();
        let mut allowed: Vec<Vec<usize>> = Vec::with_capacity(chains.len());
        for c in &chains {
            let mut ok = Vec::new();
            for (si, s) in sims.iter().enumerate() {
                let good = c.iter().enumerate().all(|(t, e)| self.target.vertex(s, t).map(|v| self.vertex_ok(e, v)).unwrap_or(false));
                if good {
                    ok.push(si);
                }
            }
            allowed.push(ok);
        }
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::with_capacity(chains.len());
        fn rec(
            m: &MapModel,
            sims: &[Simplex],
            allowed: &[Vec<usize>],
            common: &[Vec<SharedFace>],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<Simplex>>,
        ) -> Result<()> {
            let i = cur.len();
            if i == allowed.len() {
                out.push(cur.iter().map(|&s| sims[s].clone()).collect());
                return Ok(());
            }
            for &s in &allowed[i] {
                let mut ok = true;
                for (j, pi, pj) in &common[i] {
                    if m.target.act(&sims[s], pi)? != m.target.act(&sims[cur[*j]], pj)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    cur.push(s);
                    rec(m, sims, allowed, common, cur, out)?;
                    cur.pop();
                }
            }
            Ok(())
        }
        rec(self, &sims, &allowed, &common, &mut cur, &mut out)?;
        Ok(out)
    }

    fn act(&self, key: &Vec<Simplex>, alpha: &[usize]) -> Result<Vec<Simplex>> {
        let k = self.shape.dim_of_key(key);
        ordinal::validate(alpha, k)?;
        let m = alpha.len() - 1;
        self.shape
            .maximal_chains(m)
            .iter()
            .map(|c| {
                let pts: Vec<Vec<usize>> = c.iter().map(|e| self.shape.induced(alpha, e)).collect();
                self.eval(key, k, &pts)
            })
            .collect()
    }

    fn label(&self, key: &Vec<Simplex>) -> String {
        let parts: Vec<String> = key.iter().map(|s| format!("{s}")).collect();
        format!("[{}]", parts.join(" | "))
    }
}

/// The path space `[Delta^1, X]` up to dimension `cap`.
pub fn path_space(x: &FiniteSimplicialSet, cap: usize) -> Result<Realized<MapModel>> {
    Realized::build(MapModel { target: x.clone(), shape: Shape::Prism, endpoints: None }, cap)
}

/// The hom space `X(a, b)` of paths from vertex `a` to vertex `b`.
pub fn hom_space(x: &FiniteSimplicialSet, a: usize, b: usize, cap: usize) -> Result<Realized<MapModel>> {
    if a >= x.count(0) || b >= x.count(0) {
        return Err(Error::IndexOutOfRange { index: a.max(b), bound: x.count(0) });
    }
    Realized::build(MapModel { target: x.clone(), shape: Shape::Prism, endpoints: Some((a, b)) }, cap)
}

/// `Ex X`: maps from the subdivided simplices into `X`.
pub fn ex_step(x: &FiniteSimplicialSet, cap: usize) -> Result<Realized<MapModel>> {
    Realized::build(MapModel { target: x.clone(), shape: Shape::Subdivision, endpoints: None }, cap)
}

/// `Ex^k X` with every stage capped at the same dimension.
pub fn ex_iterate(x: &FiniteSimplicialSet, k: usize, cap: usize) -> Result<FiniteSimplicialSet> {
    let mut cur = x.clone();
    for _ in 0..k {
        cur = ex_step(&cur, cap)?.set;
    }
    Ok(cur)
}

impl Realized<MapModel> {
    /// For a path-space simplex, the simplex of `X` over `{eps} x Delta^p`.
    pub fn endpoint(&self, s: &Simplex, eps: usize) -> Result<Simplex> {
        let key = self.key_of(s)?;
        let p = s.dim();
        let pts: Vec<Vec<usize>> = (0..=p).map(|b| vec![eps, b]).collect();
        self.model.eval(&key, p, &pts)
    }

    /// For a path-space simplex of dimension `p`, the simplex of `X` along a
    /// weakly increasing list of points of `[1] x [p]`.
    pub fn evaluate(&self, s: &Simplex, pts: &[(usize, usize)]) -> Result<Simplex> {
        let key = self.key_of(s)?;
        let pts: Vec<Vec<usize>> = pts.iter().map(|&(a, b)| vec![a, b]).collect();
        self.model.eval(&key, s.dim(), &pts)
    }

    /// The image of a simplex of `X` under the inclusion `X -> Ex X`.
    pub fn ex_inclusion(&self, s: &Simplex) -> Result<Simplex> {
        let k = s.dim();
        let key: Vec<Simplex> = Shape::Subdivision
            .maximal_chains(k)
            .iter()
            .map(|c| {
                let last: Vec<usize> = c.iter().map(|e| *e.last().expect("nonempty subset")).collect();
                self.model.target.act(s, &last)
            })
            .collect::<Result<_>>()?;
        self.normalize(&key, k)
    }
}

/// One failed compatibility condition of a form assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub dim: usize,
    pub cell: usize,
    pub face: usize,
    /// `d_face(value) - value(face)`.
    pub difference: GForm,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face {} of cell {}/{}: difference {}", self.face, self.dim, self.cell, self.difference)
    }
}

/// A form on a finite simplicial set, stored on nondegenerate simplices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormMap {
    set: FiniteSimplicialSet,
    trunc: usize,
    values: Vec<Vec<GForm>>,
}

impl FormMap {
    pub fn new(set: FiniteSimplicialSet, trunc: usize, values: Vec<Vec<GForm>>) -> Result<Self> {
        if values.len() != set.cap() + 1 {
            return Err(Error::Malformed(format!("{} value rows for cap {}", values.len(), set.cap())));
        }
        for (d, row) in values.iter().enumerate() {
            if row.len() != set.count(d) {
                return Err(Error::Malformed(format!("{} values for {} cells in dimension {d}", row.len(), set.count(d))));
            }
            for v in row {
                if v.nvars() != d {
                    return Err(Error::VariableCount { expected: d, found: v.nvars() });
                }
                if v.trunc() != trunc {
                    return Err(Error::TruncationMismatch(trunc, v.trunc()));
                }
            }
        }
        Ok(FormMap { set, trunc, values })
    }

    pub fn zero(set: &FiniteSimplicialSet, trunc: usize) -> Self {
        let values = (0..=set.cap()).map(|d| vec![GForm::zero(d, trunc); set.count(d)]).collect();
        FormMap { set: set.clone(), trunc, values }
    }

    pub fn from_fn(set: &FiniteSimplicialSet, trunc: usize, mut f: impl FnMut(&Simplex) -> Result<GForm>) -> Result<Self> {
        let values =
            (0..=set.cap()).map(|d| (0..set.count(d)).map(|i| f(&Simplex::nondegenerate(d, i))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Self::new(set.clone(), trunc, values)
    }

    /// The form on a realized standard simplex pulled back from the top cell.
    pub fn on_standard(delta: &Realized<NerveModel>, form: &GForm) -> Result<Self> {
        Self::from_fn(delta.set(), form.trunc(), |s| form.pullback(delta.key(s.core_dim, s.core)))
    }

    pub fn set(&self) -> &FiniteSimplicialSet {
        &self.set
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn value(&self, d: usize, i: usize) -> &GForm {
        &self.values[d][i]
    }

    /// The value on any simplex, pulled back from its nondegenerate core.
    pub fn value_at(&self, s: &Simplex) -> Result<GForm> {
        let v =
            self.values.get(s.core_dim).and_then(|row| row.get(s.core)).ok_or(Error::IndexOutOfRange { index: s.core, bound: self.set.count(s.core_dim) })?;
        v.pullback(&s.surj)
    }

    /// Every face condition that fails.
    pub fn validate(&self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for d in 1..=self.set.cap() {
            for (i, c) in self.set.cells(d).iter().enumerate() {
                for (k, face) in c.faces.iter().enumerate() {
                    let lhs = self.values[d][i].pullback(&ordinal::coface(d, k)).expect("coface is valid");
                    let rhs = self.value_at(face).expect("face tables are valid");
                    if lhs != rhs {
                        out.push(Mismatch { dim: d, cell: i, face: k, difference: lhs.sub(&rhs) });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Whether every value is zero or of form degree one.
    pub fn is_connection(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero() || v.form_degree() == Some(1))
    }

    pub fn map(&self, f: impl Fn(&GForm) -> GForm) -> FormMap {
        let values = self.values.iter().map(|row| row.iter().map(&f).collect()).collect();
        FormMap { set: self.set.clone(), trunc: self.trunc, values }
    }

    pub fn zip(&self, other: &FormMap, f: impl Fn(&GForm, &GForm) -> Result<GForm>) -> Result<FormMap> {
        if self.set != other.set {
            return Err(Error::Incompatible(String::from("forms live on different simplicial sets")));
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FormMap { set: self.set.clone(), trunc: self.trunc, values })
    }

    pub fn add(&self, other: &FormMap) -> Result<FormMap> {
        self.zip(other, |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, other: &FormMap) -> Result<FormMap> {
        self.zip(other, |a, b| Ok(a.sub(b)))
    }

    pub fn wedge(&self, other: &FormMap) -> Result<FormMap> {
        self.zip(other, |a, b| a.wedge(b))
    }

    pub fn scale(&self, k: &BigInt) -> FormMap {
        self.map(|v| v.scale(k))
    }

    pub fn d(&self) -> FormMap {
        self.map(GForm::d)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(GForm::is_zero)
    }

    /// `f^* omega` for a simplicial map given on nondegenerate simplices of `source`.
    pub fn pullback_along(&self, source: &FiniteSimplicialSet, f: impl Fn(&Simplex) -> Result<Simplex>) -> Result<FormMap> {
        Self::from_fn(source, self.trunc, |s| self.value_at(&f(s)?))
    }
}

/// A form on `Delta^n x Delta^r`: one form on `Delta^{n+r}` per maximal chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductForm {
    n: usize,
    r: usize,
    trunc: usize,
    values: BTreeMap<Chain, GForm>,
}

impl ProductForm {
    /// Requires a value on every maximal chain, agreeing across shared faces.
    pub fn new(n: usize, r: usize, trunc: usize, values: BTreeMap<Chain, GForm>) -> Result<Self> {
        let pf = Self::new_unchecked(n, r, trunc, values)?;
        pf.check_compatible()?;
        Ok(pf)
    }

    /// Checks shapes only; the gluing condition may fail.
    pub fn new_unchecked(n: usize, r: usize, trunc: usize, values: BTreeMap<Chain, GForm>) -> Result<Self> {
        let all = chains::enumerate_maximal(n, r);
        if values.len() != all.len() || all.iter().any(|c| !values.contains_key(c)) {
            return Err(Error::Malformed(format!("a form on [{n}]x[{r}] needs one value per maximal chain")));
        }
        for v in values.values() {
            if v.nvars() != n + r {
                return Err(Error::VariableCount { expected: n + r, found: v.nvars() });
            }
            if v.trunc() != trunc {
                return Err(Error::TruncationMismatch(trunc, v.trunc()));
            }
        }
        Ok(ProductForm { n, r, trunc, values })
    }

    pub fn zero(n: usize, r: usize, trunc: usize) -> Self {
        let values = chains::enumerate_maximal(n, r).into_iter().map(|c| (c, GForm::zero(n + r, trunc))).collect();
        ProductForm { n, r, trunc, values }
    }

    /// Restricts a form in the coordinates `b_1..b_n, f_1..f_r` to every chain.
    pub fn from_global(n: usize, r: usize, g: &GForm) -> Result<Self> {
        if g.nvars() != n + r {
            return Err(Error::VariableCount { expected: n + r, found: g.nvars() });
        }
        let mut values = BTreeMap::new();
        for c in chains::enumerate_maximal(n, r) {
            let map = chains::re_map(&c)?;
            values.insert(c, g.pullback_by(n + r, &map));
        }
        Ok(ProductForm { n, r, trunc: g.trunc(), values })
    }

    /// `phi^* form` for a monotone `phi: [n] x [r] -> [k]` given as a table.
    pub fn from_simplex_map(n: usize, r: usize, phi: &[Vec<usize>], form: &GForm) -> Result<Self> {
        let k = form.nvars();
        if phi.len() != n + 1 || phi.iter().any(|row| row.len() != r + 1) {
            return Err(Error::Malformed(format!("map table must be {}x{}", n + 1, r + 1)));
        }
        for a in 0..=n {
            for b in 0..=r {
                let v = phi[a][b];
                let up = (a < n && phi[a + 1][b] < v) || (b < r && phi[a][b + 1] < v);
                if v > k || up {
                    return Err(Error::NotOrderPreserving);
                }
            }
        }
        let mut values = BTreeMap::new();
        for c in chains::enumerate_maximal(n, r) {
            let alpha: OrdMap = c.points().iter().map(|&(a, b)| phi[a][b]).collect();
            values.insert(c, form.pullback(&alpha)?);
        }
        Ok(ProductForm { n, r, trunc: form.trunc(), values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn values(&self) -> &BTreeMap<Chain, GForm> {
        &self.values
    }

    pub fn value(&self, c: &Chain) -> Option<&GForm> {
        self.values.get(c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(GForm::is_zero)
    }

    /// Neighbouring chains must agree on their common face.
    pub fn check_compatible(&self) -> Result<()> {
        for (c, v) in &self.values {
            let a = c.analyze()?;
            for &vert in a.inn_fs.iter().chain(a.inn_bs.iter()) {
                let other = chains::flip(c, vert)?;
                let face = ordinal::coface(self.n + self.r, vert);
                if v.pullback(&face)? != self.values[&other].pullback(&face)? {
                    return Err(Error::Incompatible(format!("chains {c} and {other} disagree on their common face")));
                }
            }
        }
        Ok(())
    }

    /// `(alpha x beta)^*` for `alpha: [m] -> [n]` and `beta: [s] -> [r]`.
    pub fn pullback(&self, alpha: &[usize], beta: &[usize]) -> Result<ProductForm> {
        ordinal::validate(alpha, self.n)?;
        ordinal::validate(beta, self.r)?;
        let (m, s) = (alpha.len() - 1, beta.len() - 1);
        let mut values = BTreeMap::new();
        for c in chains::enumerate_maximal(m, s) {
            let pts: Vec<(usize, usize)> = c.points().iter().map(|&(a, b)| (alpha[a], beta[b])).collect();
            let (big, pos) = chains::extend_to_maximal(self.n, self.r, &pts)?;
            values.insert(c, self.values[&big].pullback(&pos)?);
        }
        Ok(ProductForm { n: m, r: s, trunc: self.trunc, values })
    }

    pub fn face_base(&self, i: usize) -> Result<ProductForm> {
        if self.n == 0 {
            return Err(Error::IndexOutOfRange { index: i, bound: 0 });
        }
        self.pullback(&ordinal::coface(self.n, i), &ordinal::identity(self.r))
    }

    pub fn face_fiber(&self, i: usize) -> Result<ProductForm> {
        if self.r == 0 {
            return Err(Error::IndexOutOfRange { index: i, bound: 0 });
        }
        self.pullback(&ordinal::identity(self.n), &ordinal::coface(self.r, i))
    }

    pub fn degeneracy_base(&self, j: usize) -> Result<ProductForm> {
        self.pullback(&ordinal::codegeneracy(self.n, j), &ordinal::identity(self.r))
    }

    pub fn degeneracy_fiber(&self, j: usize) -> Result<ProductForm> {
        self.pullback(&ordinal::identity(self.n), &ordinal::codegeneracy(self.r, j))
    }

    /// The first `j` with `s_j d_j omega = omega` in the base direction.
    pub fn base_degeneracy(&self) -> Option<usize> {
        (0..self.n).find(|&j| {
            let sd = ordinal::compose(&ordinal::coface(self.n, j), &ordinal::codegeneracy(self.n - 1, j));
            self.pullback(&sd, &ordinal::identity(self.r)).ok().as_ref() == Some(self)
        })
    }

    /// The first `j` with `s_j d_j omega = omega` in the fiber direction.
    pub fn fiber_degeneracy(&self) -> Option<usize> {
        (0..self.r).find(|&j| {
            let sd = ordinal::compose(&ordinal::coface(self.r, j), &ordinal::codegeneracy(self.r - 1, j));
            self.pullback(&ordinal::identity(self.n), &sd).ok().as_ref() == Some(self)
        })
    }

    /// `omega = (sigma x id)^* core` with `core` nondegenerate in the base direction.
    pub fn ez_factor_base(&self) -> (OrdMap, ProductForm) {
        match self.base_degeneracy() {
            None => (ordinal::identity(self.n), self.clone()),
            Some(j) => {
                let face = self.face_base(j).expect("n > 0 when degenerate");
                let (sigma, core) = face.ez_factor_base();
                (ordinal::compose(&sigma, &ordinal::codegeneracy(self.n - 1, j)), core)
            }
        }
    }

    /// A face `i` and degeneracy `j` with `d_i omega = s_j (...)` although
    /// `omega` itself is nondegenerate in the base direction.
    pub fn degenerate_face(&self) -> Option<(usize, usize)> {
        if self.n < 2 || self.base_degeneracy().is_some() {
            return None;
        }
        (0..=self.n).find_map(|i| self.face_base(i).ok().and_then(|f| f.base_degeneracy()).map(|j| (i, j)))
    }

    pub fn map(&self, f: impl Fn(&GForm) -> GForm) -> ProductForm {
        let values = self.values.iter().map(|(c, v)| (c.clone(), f(v))).collect();
        ProductForm { n: self.n, r: self.r, trunc: self.trunc, values }
    }

    pub fn zip(&self, other: &ProductForm, f: impl Fn(&GForm, &GForm) -> Result<GForm>) -> Result<ProductForm> {
        if (self.n, self.r) != (other.n, other.r) {
            return Err(Error::Incompatible(format!("[{}]x[{}] vs [{}]x[{}]", self.n, self.r, other.n, other.r)));
        }
        let values = self.values.iter().map(|(c, v)| Ok((c.clone(), f(v, &other.values[c])?))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ProductForm { n: self.n, r: self.r, trunc: self.trunc, values })
    }

    pub fn add(&self, other: &ProductForm) -> Result<ProductForm> {
        self.zip(other, |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, other: &ProductForm) -> Result<ProductForm> {
        self.zip(other, |a, b| Ok(a.sub(b)))
    }

    pub fn wedge(&self, other: &ProductForm) -> Result<ProductForm> {
        self.zip(other, |a, b| a.wedge(b))
    }

    pub fn scale(&self, k: &BigInt) -> ProductForm {
        self.map(|v| v.scale(k))
    }

    pub fn neg(&self) -> ProductForm {
        self.map(GForm::neg)
    }

    pub fn d(&self) -> ProductForm {
        self.map(GForm::d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalg::DPPoly;

    #[test]
    fn standard_simplex_counts() {
        let d2 = standard(2);
        assert_eq!((d2.count(0), d2.count(1), d2.count(2)), (3, 3, 1));
        assert_eq!(d2.euler_characteristic(), 1);
        let top = Simplex::nondegenerate(2, 0);
        assert_eq!(d2.vertices(&d2.face(&top, 1).unwrap()).unwrap(), vec![0, 2]);
    }

    #[test]
    fn degeneracies_normalize() {
        let d0 = standard(0);
        let x = Simplex::nondegenerate(0, 0);
        let s0 = d0.degeneracy(&x, 0).unwrap();
        assert_eq!(s0.surj, vec![0, 0]);
        let a = d0.degeneracy(&s0, 0).unwrap();
        let b = d0.degeneracy(&s0, 1).unwrap();
        assert_eq!(a, b);
        let d1 = standard(1);
        let e = Simplex::nondegenerate(1, 0);
        let s1s0 = d1.degeneracy(&d1.degeneracy(&e, 0).unwrap(), 1).unwrap();
        let s0s0 = d1.degeneracy(&d1.degeneracy(&e, 0).unwrap(), 0).unwrap();
        assert_eq!(d1.ez_factor(&s1s0).1, e);
        assert_eq!(s1s0.surj, vec![0, 0, 0, 1]);
        assert_eq!(s0s0.surj, vec![0, 0, 0, 1]);
        assert_eq!(d1.face(&d1.degeneracy(&e, 0).unwrap(), 0).unwrap(), e);
    }

    #[test]
    fn product_counts() {
        let d1 = standard(1);
        let sq = product(&d1, &d1, 2).unwrap();
        assert_eq!(sq.set().count(2), 2);
        assert_eq!(sq.set().count(1), 5);
        assert_eq!(sq.set().euler_characteristic(), 1);
        let p = product(&standard(2), &d1, 3).unwrap();
        assert_eq!(p.set().count(3), 3);
        let unit = product(&standard(2), &standard(0), 2).unwrap();
        assert_eq!(unit.set().count(2), 1);
        assert_eq!(unit.set().count(1), 3);
    }

    #[test]
    fn path_and_hom_spaces() {
        let d1 = standard(1);
        let p = path_space(&d1, 1).unwrap();
        assert_eq!(p.set().count(0), 3);
        let p0 = path_space(&standard(0), 2).unwrap();
        assert_eq!((p0.set().count(0), p0.set().count(1)), (1, 0));
        let d2 = standard(2);
        for i in 0..3 {
            for j in 0..3 {
                let h = hom_space(&d2, i, j, 2).unwrap();
                let expected = usize::from(i <= j);
                assert_eq!(h.set().count(0), expected);
                assert_eq!(h.set().count(1), 0);
            }
        }
    }

    #[test]
    fn ex_of_small_sets() {
        let e0 = ex_step(&standard(0), 2).unwrap();
        assert_eq!((e0.set().count(0), e0.set().count(1)), (1, 0));
        let e1 = ex_step(&standard(1), 1).unwrap();
        assert_eq!(e1.set().count(0), 2);
        let all_maps_count = e1.model().candidates(1).unwrap().len();
        assert_eq!(all_maps_count, 5);
        let v = e1.ex_inclusion(&Simplex::nondegenerate(1, 0)).unwrap();
        assert!(v.is_nondegenerate());
    }

    #[test]
    fn form_map_face_report() {
        let d1 = standard_realized(1);
        let x1 = DPPoly::var(1, 1);
        let f = FormMap::on_standard(&d1, &GForm::function(x1, 1)).unwrap();
        assert!(f.is_valid());
        let mut values = f.values.clone();
        values[0][1] = GForm::function(DPPoly::constant(0, 5), 1);
        let bad = FormMap::new(d1.set().clone(), 1, values).unwrap();
        let report = bad.validate();
        assert_eq!(report.len(), 1);
        assert_eq!((report[0].dim, report[0].face), (1, 0));
    }

    #[test]
    fn product_form_gluing_and_ez() {
        let g = GForm::function(DPPoly::var(2, 1).mul(&DPPoly::var(2, 2)), 1);
        let fiber_only = ProductForm::from_global(1, 1, &GForm::function(DPPoly::var(2, 2), 1)).unwrap();
        assert_eq!(fiber_only.ez_factor_base().0, vec![0, 0]);
        let pf = ProductForm::from_global(1, 1, &g).unwrap();
        assert!(pf.check_compatible().is_ok());
        assert!(pf.fiber_degeneracy().is_none());
        let pulled = pf.degeneracy_base(0).unwrap();
        let (sigma, core) = pulled.ez_factor_base();
        assert_eq!(sigma, vec![0, 0, 1]);
        assert_eq!(core, pf);
    }
}
