//! A-infinity categories as square-zero coderivations on tensor words of
//! graded quivers.
//!
//! Every structure implements [`AInfty`]: a set of objects, arrows with
//! integer degrees and Taylor components `b_k` on composable words of
//! length `k`.  Words are read left to right, so `(f_1, .., f_n)` with
//! `f_i: x_{i-1} -> x_i` is composable.  The coderivation is
//!
//! `D(f_1 .. f_n) = sum (-1)^{|f_1| + .. + |f_p| + p} f_1 .. f_p (x) b_r(f_{p+1} .. f_{p+r}) (x) ..`
//!
//! and all checks compare finite combinations of words exactly.
//!
//! Concrete structures: finite tables ([`AInftyCategory`]), the standard
//! simplices [`SimplexCategory`], dg algebras ([`FromDgAlgebra`]) including
//! the simplicial algebra of cochains ([`GThetaMoore`]), strict
//! unitalization ([`Unitalized`]), the free model on a dg quiver
//! ([`FreeModel`]) and path quivers of finite simplicial sets.

use alloc::boxed::Box;
use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chains;
use crate::checks::Report;
use crate::derham::GForm;
use crate::dpalg::DPPoly;
use crate::error::{Error, Result};
use crate::holonomy::{hol_at, Cochain};
use crate::linfty::{Letter, Word};
use crate::ordinal::{self, OrdMap};
use crate::simplicial::{ex_iterate, hom_space, FiniteSimplicialSet, FormMap, MapModel, Realized, Simplex};

/// A finite integer combination.
pub type Lin<T> = BTreeMap<T, BigInt>;

/// A finite integer combination of words.
pub type Tensor<T> = Lin<Vec<T>>;

/// Adds `c * key` to `acc`, dropping zero coefficients.
pub fn lin_add<T: Ord>(acc: &mut Lin<T>, key: T, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Adds `k * other` to `acc`.
pub fn lin_add_scaled<T: Ord + Clone>(acc: &mut Lin<T>, other: &Lin<T>, k: &BigInt) {
    for (t, c) in other {
        lin_add(acc, t.clone(), c * k);
    }
}

/// The combination `1 * t`.
pub fn single<T: Ord>(t: T) -> Lin<T> {
    let mut l = Lin::new();
    l.insert(t, BigInt::one());
    l
}

/// `-x`.
pub fn lin_neg<T: Ord + Clone>(x: &Lin<T>) -> Lin<T> {
    x.iter().map(|(t, c)| (t.clone(), -c)).collect()
}

fn odd(i: i32) -> bool {
    i.rem_euclid(2) == 1
}

fn sign(odd_exponent: bool) -> BigInt {
    if odd_exponent {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Expands `x_1 (x) .. (x) x_n` into a combination of words.
pub fn expand<T: Ord + Clone>(factors: &[Lin<T>]) -> Tensor<T> {
    let mut acc: Tensor<T> = single(Vec::new());
    for f in factors {
        let mut next = Tensor::new();
        for (w, c) in &acc {
            for (x, k) in f {
                let mut nw = w.clone();
                nw.push(x.clone());
                lin_add(&mut next, nw, c * k);
            }
        }
        acc = next;
    }
    acc
}

/// An A-infinity category with integer coefficients.
pub trait AInfty {
    type Arrow: Clone + Ord + Debug;

    fn objects(&self) -> usize;
    fn source(&self, a: &Self::Arrow) -> usize;
    fn target(&self, a: &Self::Arrow) -> usize;
    /// The unshifted degree.
    fn degree(&self, a: &Self::Arrow) -> i32;
    /// The largest `k` with `b_k` possibly nonzero, when there is one.
    fn arity_bound(&self) -> Option<usize>;
    /// `b_k` on a composable word of length `k >= 1`.
    fn b(&self, word: &[Self::Arrow]) -> Result<Lin<Self::Arrow>>;
    /// The strict unit of an object, when the category is strictly unital.
    fn unit(&self, x: usize) -> Option<Self::Arrow>;
    /// The finite list of arrows over which checks enumerate words.
    fn generators(&self) -> Vec<Self::Arrow>;
}

/// Whether consecutive arrows of a word share their endpoints.
pub fn is_composable<A: AInfty>(a: &A, word: &[A::Arrow]) -> bool {
    word.windows(2).all(|w| a.target(&w[0]) == a.source(&w[1]))
}

/// All composable words of length `1..=max_len` over the given arrows.
pub fn composable_words<A: AInfty>(a: &A, gens: &[A::Arrow], max_len: usize) -> Vec<Vec<A::Arrow>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<A::Arrow>> = gens.iter().map(|g| vec![g.clone()]).collect();
    for len in 1..=max_len {
        out.extend(layer.iter().cloned());
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            let end = a.target(w.last().expect("words are nonempty"));
            for g in gens.iter().filter(|g| a.source(g) == end) {
                let mut nw = w.clone();
                nw.push(g.clone());
                next.push(nw);
            }
        }
        layer = next;
    }
    out
}

/// `b_k` extended multilinearly; non-composable words contribute zero.
pub fn b_multi<A: AInfty>(a: &A, args: &[Lin<A::Arrow>]) -> Result<Lin<A::Arrow>> {
    let mut out = Lin::new();
    for (w, c) in expand(args) {
        if is_composable(a, &w) {
            lin_add_scaled(&mut out, &a.b(&w)?, &c);
        }
    }
    Ok(out)
}

/// The coderivation `D` on a combination of words.
pub fn coderivation<A: AInfty>(a: &A, t: &Tensor<A::Arrow>) -> Result<Tensor<A::Arrow>> {
    let mut out = Tensor::new();
    for (w, c) in t {
        let n = w.len();
        let mut prefix = 0i32;
        for p in 0..n {
            let rmax = a.arity_bound().map_or(n - p, |k| k.min(n - p));
            for r in 1..=rmax {
                let val = a.b(&w[p..p + r])?;
                let s = sign(odd(prefix));
                for (x, k) in val {
                    let mut nw = Vec::with_capacity(n - r + 1);
                    nw.extend_from_slice(&w[..p]);
                    nw.push(x);
                    nw.extend_from_slice(&w[p + r..]);
                    lin_add(&mut out, nw, c * k * &s);
                }
            }
            prefix += a.degree(&w[p]) + 1;
        }
    }
    Ok(out)
}

/// Checks `D(D(w)) = 0` on the given words.
pub fn check_square_zero_on<A: AInfty>(a: &A, words: &[Vec<A::Arrow>]) -> Result<Report> {
    let mut rep = Report::new("coderivation squares to zero");
    for w in words {
        let dd = coderivation(a, &coderivation(a, &single(w.clone()))?)?;
        rep.check(dd.is_empty(), || format!("D^2 {w:?} = {dd:?}"));
    }
    Ok(rep)
}

/// Checks `D(D(w)) = 0` on every composable word of generators up to `max_len`.
pub fn check_square_zero<A: AInfty>(a: &A, max_len: usize) -> Result<Report> {
    check_square_zero_on(a, &composable_words(a, &a.generators(), max_len))
}

/// The value that `b_k` must take on a word containing a strict unit.
fn expected_on_units<A: AInfty>(a: &A, w: &[A::Arrow], is_unit: &dyn Fn(&A::Arrow) -> bool) -> Option<Lin<A::Arrow>> {
    match w {
        [u] if is_unit(u) => Some(Lin::new()),
        [f, u] if is_unit(u) => {
            let mut l = Lin::new();
            lin_add(&mut l, f.clone(), sign(!odd(a.degree(f))));
            Some(l)
        }
        [u, f] if is_unit(u) => Some(lin_neg(&single(f.clone()))),
        _ if w.len() >= 3 && w.iter().any(is_unit) => Some(Lin::new()),
        _ => None,
    }
}

/// Checks the strict unit axioms `b_2(f, id) = (-1)^{|f|+1} f`, `b_2(id, f) = -f`
/// and `b_k = 0` on every other word containing a unit, up to `max_len`.
pub fn check_strict_units<A: AInfty>(a: &A, max_len: usize) -> Result<Report> {
    let mut rep = Report::new("strict unit axioms");
    let mut units = Vec::new();
    for x in 0..a.objects() {
        match a.unit(x) {
            Some(u) => {
                rep.check(a.source(&u) == x && a.target(&u) == x && a.degree(&u) == 0, || format!("unit of {x} is not a degree 0 endomorphism"));
                units.push(u);
            }
            None => rep.check(false, || format!("object {x} has no unit")),
        }
    }
    let mut gens = a.generators();
    for u in &units {
        if !gens.contains(u) {
            gens.push(u.clone());
        }
    }
    let is_unit = |f: &A::Arrow| units.contains(f);
    for w in composable_words(a, &gens, max_len) {
        if let Some(expected) = expected_on_units(a, &w, &is_unit) {
            let got = a.b(&w)?;
            rep.check(got == expected, || format!("b on {w:?} is {got:?}, expected {expected:?}"));
        }
    }
    Ok(rep)
}

/// A strict functor: an object map and a degree-preserving map on arrows,
/// applied letter by letter to words.
pub struct StrictFunctor<'a, S, T> {
    pub objects: Vec<usize>,
    map: ArrowMap<'a, S, T>,
}

type ArrowMap<'a, S, T> = Box<dyn Fn(&S) -> Result<Lin<T>> + 'a>;

impl<'a, S: Clone + Ord + 'a, T: Clone + Ord + 'a> StrictFunctor<'a, S, T> {
    pub fn new(objects: Vec<usize>, map: impl Fn(&S) -> Result<Lin<T>> + 'a) -> Self {
        StrictFunctor { objects, map: Box::new(map) }
    }

    /// The image of one arrow.
    pub fn arrow(&self, s: &S) -> Result<Lin<T>> {
        (self.map)(s)
    }

    /// The image of a combination of words.
    pub fn apply(&self, t: &Tensor<S>) -> Result<Tensor<T>> {
        let mut out = Tensor::new();
        for (w, c) in t {
            let factors = w.iter().map(|s| self.arrow(s)).collect::<Result<Vec<_>>>()?;
            lin_add_scaled(&mut out, &expand(&factors), c);
        }
        Ok(out)
    }

    /// First `self`, then `next`.
    pub fn then<U: Clone + Ord + 'a>(&'a self, next: &'a StrictFunctor<'a, T, U>) -> StrictFunctor<'a, S, U> {
        let objects = self.objects.iter().map(|&x| next.objects[x]).collect();
        StrictFunctor::new(objects, move |s: &S| {
            let mut out = Lin::new();
            for (t, c) in self.arrow(s)? {
                lin_add_scaled(&mut out, &next.arrow(&t)?, &c);
            }
            Ok(out)
        })
    }
}

fn check_arrow_image<A: AInfty, B: AInfty>(a: &A, b: &B, f: &StrictFunctor<A::Arrow, B::Arrow>, s: &A::Arrow, rep: &mut Report) -> Result<()> {
    let img = f.arrow(s)?;
    let (x, y) = (f.objects[a.source(s)], f.objects[a.target(s)]);
    let ok = img.keys().all(|t| b.source(t) == x && b.target(t) == y && b.degree(t) == a.degree(s));
    rep.check(ok, || format!("image of {s:?} has wrong endpoints or degree: {img:?}"));
    Ok(())
}

/// Checks endpoints, degrees and `F D = D F` on the given words.
pub fn check_functor_on<A: AInfty, B: AInfty>(a: &A, b: &B, f: &StrictFunctor<A::Arrow, B::Arrow>, words: &[Vec<A::Arrow>]) -> Result<Report> {
    let mut rep = Report::new("strict functor commutes with D");
    if f.objects.len() != a.objects() || f.objects.iter().any(|&x| x >= b.objects()) {
        rep.check(false, || String::from("object map has the wrong shape"));
        return Ok(rep);
    }
    let mut seen = BTreeMap::new();
    for w in words {
        for s in w {
            if seen.insert(s.clone(), ()).is_none() {
                check_arrow_image(a, b, f, s, &mut rep)?;
            }
        }
        let t = single(w.clone());
        let lhs = f.apply(&coderivation(a, &t)?)?;
        let rhs = coderivation(b, &f.apply(&t)?)?;
        rep.check(lhs == rhs, || format!("F D != D F on {w:?}: {lhs:?} vs {rhs:?}"));
    }
    Ok(rep)
}

/// Checks `F D = D F` on every composable word of generators up to `max_len`.
pub fn check_functor<A: AInfty, B: AInfty>(a: &A, b: &B, f: &StrictFunctor<A::Arrow, B::Arrow>, max_len: usize) -> Result<Report> {
    check_functor_on(a, b, f, &composable_words(a, &a.generators(), max_len))
}

/// Checks that every unit is sent to the unit of its image object.
pub fn check_unit_preserving<A: AInfty, B: AInfty>(a: &A, b: &B, f: &StrictFunctor<A::Arrow, B::Arrow>) -> Result<Report> {
    let mut rep = Report::new("strict functor preserves units");
    for x in 0..a.objects() {
        let (Some(u), Some(v)) = (a.unit(x), b.unit(f.objects[x])) else {
            rep.check(false, || format!("object {x} or its image has no unit"));
            continue;
        };
        let img = f.arrow(&u)?;
        rep.check(img == single(v.clone()), || format!("unit of {x} goes to {img:?}"));
    }
    Ok(rep)
}

/// Checks that two functors agree on objects and on the given arrows.
pub fn check_functors_agree<S: Clone + Ord + Debug, T: Clone + Ord + Debug>(f: &StrictFunctor<S, T>, g: &StrictFunctor<S, T>, arrows: &[S]) -> Result<Report> {
    let mut rep = Report::new("functors agree");
    rep.check(f.objects == g.objects, || format!("object maps {:?} and {:?}", f.objects, g.objects));
    for s in arrows {
        let (x, y) = (f.arrow(s)?, g.arrow(s)?);
        rep.check(x == y, || format!("{s:?} goes to {x:?} and {y:?}"));
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Graded quivers and finite tables
// ---------------------------------------------------------------------------

/// One basis arrow of a graded quiver.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    pub label: String,
}

/// A graded quiver with a finite basis in each hom and an optional
/// differential of degree `-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedQuiver {
    objects: usize,
    arrows: Vec<QuiverArrow>,
    differential: Option<Vec<Lin<usize>>>,
}

impl GradedQuiver {
    pub fn new(objects: usize, arrows: Vec<QuiverArrow>, differential: Option<Vec<Lin<usize>>>) -> Result<Self> {
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= objects || a.target >= objects {
                return Err(Error::Malformed(format!("arrow {i} has an endpoint outside {objects} objects")));
            }
        }
        if let Some(d) = &differential {
            if d.len() != arrows.len() {
                return Err(Error::Malformed(format!("{} differential rows for {} arrows", d.len(), arrows.len())));
            }
            for (i, row) in d.iter().enumerate() {
                for &j in row.keys() {
                    let (a, b) = (&arrows[i], arrows.get(j).ok_or(Error::IndexOutOfRange { index: j, bound: arrows.len() })?);
                    if a.source != b.source || a.target != b.target || b.degree != a.degree - 1 {
                        return Err(Error::Malformed(format!("d({}) has a term {} of the wrong hom or degree", a.label, b.label)));
                    }
                }
            }
        }
        let q = GradedQuiver { objects, arrows, differential };
        for i in 0..q.arrows.len() {
            let mut dd = Lin::new();
            for (j, c) in q.d(i) {
                lin_add_scaled(&mut dd, &q.d(j), &c);
            }
            if !dd.is_empty() {
                return Err(Error::Axiom(format!("d^2 {} = {dd:?}", q.arrows[i].label)));
            }
        }
        Ok(q)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrows(&self) -> &[QuiverArrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &QuiverArrow {
        &self.arrows[i]
    }

    pub fn has_differential(&self) -> bool {
        self.differential.is_some()
    }

    /// The differential of a basis arrow; zero without a differential.
    pub fn d(&self, i: usize) -> Lin<usize> {
        self.differential.as_ref().map(|d| d[i].clone()).unwrap_or_default()
    }
}

/// A finite A-infinity category given by sparse tables of its Taylor components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AInftyCategory {
    quiver: GradedQuiver,
    taylor: BTreeMap<Vec<usize>, Lin<usize>>,
    units: Option<Vec<usize>>,
}

impl AInftyCategory {
    /// `b_1` is taken from the quiver differential and may not also appear in the table.
    pub fn new(quiver: GradedQuiver, taylor: BTreeMap<Vec<usize>, Lin<usize>>, units: Option<Vec<usize>>) -> Result<Self> {
        let n = quiver.arrows.len();
        for (w, out) in &taylor {
            if w.is_empty() || w.iter().chain(out.keys()).any(|&i| i >= n) {
                return Err(Error::Malformed(format!("table entry {w:?} uses an unknown arrow")));
            }
            if w.len() == 1 && quiver.has_differential() {
                return Err(Error::Malformed(String::from("b_1 is given both by the quiver differential and by the table")));
            }
            if !w.windows(2).all(|p| quiver.arrows[p[0]].target == quiver.arrows[p[1]].source) {
                return Err(Error::Malformed(format!("table entry {w:?} is not composable")));
            }
            let deg: i32 = w.iter().map(|&i| quiver.arrows[i].degree).sum::<i32>() + w.len() as i32 - 2;
            let (x, y) = (quiver.arrows[w[0]].source, quiver.arrows[*w.last().expect("nonempty")].target);
            for &j in out.keys() {
                let a = &quiver.arrows[j];
                if a.source != x || a.target != y || a.degree != deg {
                    return Err(Error::Malformed(format!("b{w:?} has a term {} of the wrong hom or degree", a.label)));
                }
            }
        }
        if let Some(u) = &units {
            if u.len() != quiver.objects || u.iter().any(|&i| i >= n) {
                return Err(Error::Malformed(String::from("one unit per object is required")));
            }
        }
        let cat = AInftyCategory { quiver, taylor, units };
        if cat.units.is_some() {
            let rep = check_strict_units(&cat, 3)?;
            if let Some(f) = rep.failures.first() {
                return Err(Error::Axiom(f.clone()));
            }
        }
        Ok(cat)
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn taylor(&self) -> &BTreeMap<Vec<usize>, Lin<usize>> {
        &self.taylor
    }
}

impl AInfty for AInftyCategory {
    type Arrow = usize;

    fn objects(&self) -> usize {
        self.quiver.objects
    }

    fn source(&self, a: &usize) -> usize {
        self.quiver.arrows[*a].source
    }

    fn target(&self, a: &usize) -> usize {
        self.quiver.arrows[*a].target
    }

    fn degree(&self, a: &usize) -> i32 {
        self.quiver.arrows[*a].degree
    }

    fn arity_bound(&self) -> Option<usize> {
        Some(self.taylor.keys().map(Vec::len).max().unwrap_or(1).max(1))
    }

    fn b(&self, word: &[usize]) -> Result<Lin<usize>> {
        if word.len() == 1 && self.quiver.has_differential() {
            return Ok(self.quiver.d(word[0]));
        }
        Ok(self.taylor.get(word).cloned().unwrap_or_default())
    }

    fn unit(&self, x: usize) -> Option<usize> {
        self.units.as_ref().map(|u| u[x])
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.quiver.arrows.len()).collect()
    }
}

// ---------------------------------------------------------------------------
// The cosimplicial object of standard simplices
// ---------------------------------------------------------------------------

/// The A-infinity category of `[n]`: one arrow `(i, j)` of degree 0 for each
/// `i <= j`, with `b_2((i, j), (j, k)) = -(i, k)` and no other components.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SimplexCategory {
    pub n: usize,
}

pub fn simplex_category(n: usize) -> SimplexCategory {
    SimplexCategory { n }
}

impl AInfty for SimplexCategory {
    type Arrow = (usize, usize);

    fn objects(&self) -> usize {
        self.n + 1
    }

    fn source(&self, a: &(usize, usize)) -> usize {
        a.0
    }

    fn target(&self, a: &(usize, usize)) -> usize {
        a.1
    }

    fn degree(&self, _: &(usize, usize)) -> i32 {
        0
    }

    fn arity_bound(&self) -> Option<usize> {
        Some(2)
    }

    fn b(&self, word: &[(usize, usize)]) -> Result<Lin<(usize, usize)>> {
        match word {
            [(i, j), (k, l)] if j == k => Ok(lin_neg(&single((*i, *l)))),
            _ => Ok(Lin::new()),
        }
    }

    fn unit(&self, x: usize) -> Option<(usize, usize)> {
        Some((x, x))
    }

    fn generators(&self) -> Vec<(usize, usize)> {
        (0..=self.n).flat_map(|i| (i..=self.n).map(move |j| (i, j))).collect()
    }
}

/// `alpha_*: A(m) -> A(n)` for `alpha: [m] -> [n]`, relabelling `(i, j)` as `(alpha(i), alpha(j))`.
pub fn cosimplicial_map<'a>(alpha: &[usize], n: usize) -> Result<StrictFunctor<'a, (usize, usize), (usize, usize)>> {
    ordinal::validate(alpha, n)?;
    let a: OrdMap = alpha.to_vec();
    let objects = a.clone();
    Ok(StrictFunctor::new(objects, move |&(i, j): &(usize, usize)| {
        if i > j || j >= a.len() {
            return Err(Error::Malformed(format!("({i}, {j}) is not an arrow of [{}]", a.len() - 1)));
        }
        Ok(single((a[i], a[j])))
    }))
}

/// Checks `(alpha beta)_* = alpha_* beta_*` and that every `alpha_*` is a
/// unit-preserving strict functor, for all ordinal maps between `[0], .., [max]`.
pub fn check_cosimplicial(max: usize, max_len: usize) -> Result<[Report; 2]> {
    let mut functorial = Report::new("composition of cosimplicial maps");
    let mut strict = Report::new("cosimplicial maps are unit-preserving strict functors");
    for l in 0..=max {
        for m in 0..=max {
            for beta in ordinal::all_maps(l, m) {
                let bs = cosimplicial_map(&beta, m)?;
                let (sl, sm) = (simplex_category(l), simplex_category(m));
                let rep = check_functor(&sl, &sm, &bs, max_len)?;
                let units = check_unit_preserving(&sl, &sm, &bs)?;
                strict.check(rep.passed() && units.passed(), || format!("{beta:?}: {:?} {:?}", rep.failures, units.failures));
                for n in 0..=max {
                    for alpha in ordinal::all_maps(m, n) {
                        let al = cosimplicial_map(&alpha, n)?;
                        let composite = cosimplicial_map(&ordinal::compose(&alpha, &beta), n)?;
                        let chained = bs.then(&al);
                        let rep = check_functors_agree(&composite, &chained, &sl.generators())?;
                        functorial.check(rep.passed(), || format!("alpha {alpha:?} beta {beta:?}: {:?}", rep.failures));
                    }
                }
            }
        }
    }
    Ok([functorial, strict])
}

// ---------------------------------------------------------------------------
// Dg algebras
// ---------------------------------------------------------------------------

/// A dg algebra with a basis, a differential of degree `-1` and a product.
pub trait DgAlgebra {
    type Basis: Clone + Ord + Debug;

    fn degree(&self, x: &Self::Basis) -> i32;
    fn d(&self, x: &Self::Basis) -> Result<Lin<Self::Basis>>;
    fn mul(&self, x: &Self::Basis, y: &Self::Basis) -> Result<Lin<Self::Basis>>;
    fn unit(&self) -> Option<Self::Basis>;
    /// The finite list of basis elements over which checks run.
    fn basis(&self) -> Vec<Self::Basis>;
}

/// `d` extended linearly.
pub fn d_lin<D: DgAlgebra>(alg: &D, x: &Lin<D::Basis>) -> Result<Lin<D::Basis>> {
    let mut out = Lin::new();
    for (b, c) in x {
        lin_add_scaled(&mut out, &alg.d(b)?, c);
    }
    Ok(out)
}

/// The product extended bilinearly.
pub fn mul_lin<D: DgAlgebra>(alg: &D, x: &Lin<D::Basis>, y: &Lin<D::Basis>) -> Result<Lin<D::Basis>> {
    let mut out = Lin::new();
    for (a, c) in x {
        for (b, k) in y {
            lin_add_scaled(&mut out, &alg.mul(a, b)?, &(c * k));
        }
    }
    Ok(out)
}

/// Checks degrees, `d^2 = 0`, the Leibniz rule `d(xy) = dx y + (-1)^{|x|} x dy`,
/// associativity and the unit laws on the listed basis.
pub fn check_dg_algebra<D: DgAlgebra>(alg: &D) -> Result<Report> {
    let mut rep = Report::new("dg algebra axioms");
    let basis = alg.basis();
    let degree_ok = |l: &Lin<D::Basis>, deg: i32| l.keys().all(|t| alg.degree(t) == deg);
    for x in &basis {
        let dx = alg.d(x)?;
        rep.check(degree_ok(&dx, alg.degree(x) - 1), || format!("d{x:?} has the wrong degree"));
        let ddx = d_lin(alg, &dx)?;
        rep.check(ddx.is_empty(), || format!("d^2 {x:?} = {ddx:?}"));
    }
    if let Some(u) = alg.unit() {
        rep.check(alg.degree(&u) == 0, || String::from("the unit has nonzero degree"));
        for x in &basis {
            let (l, r) = (alg.mul(&u, x)?, alg.mul(x, &u)?);
            rep.check(l == single(x.clone()) && r == single(x.clone()), || format!("unit law fails on {x:?}"));
        }
    }
    for x in &basis {
        for y in &basis {
            let xy = alg.mul(x, y)?;
            rep.check(degree_ok(&xy, alg.degree(x) + alg.degree(y)), || format!("{x:?}{y:?} has the wrong degree"));
            let lhs = d_lin(alg, &xy)?;
            let mut rhs = mul_lin(alg, &alg.d(x)?, &single(y.clone()))?;
            lin_add_scaled(&mut rhs, &mul_lin(alg, &single(x.clone()), &alg.d(y)?)?, &sign(odd(alg.degree(x))));
            rep.check(lhs == rhs, || format!("Leibniz fails on {x:?}, {y:?}"));
            for z in &basis {
                let l = mul_lin(alg, &xy, &single(z.clone()))?;
                let r = mul_lin(alg, &single(x.clone()), &alg.mul(y, z)?)?;
                rep.check(l == r, || format!("associativity fails on {x:?}, {y:?}, {z:?}"));
            }
        }
    }
    Ok(rep)
}

/// A dg algebra as a one-object A-infinity category:
/// `b_1(x) = dx` and `b_2(x, y) = (-1)^{|x|+1} xy`.
#[derive(Clone, Debug)]
pub struct FromDgAlgebra<D> {
    alg: D,
}

/// Checks the dg algebra axioms and imports the algebra.
pub fn from_dg_algebra<D: DgAlgebra>(alg: D) -> Result<FromDgAlgebra<D>> {
    let rep = check_dg_algebra(&alg)?;
    if let Some(f) = rep.failures.first() {
        return Err(Error::Axiom(f.clone()));
    }
    Ok(FromDgAlgebra { alg })
}

impl<D: DgAlgebra> FromDgAlgebra<D> {
    pub fn algebra(&self) -> &D {
        &self.alg
    }
}

impl<D: DgAlgebra> AInfty for FromDgAlgebra<D> {
    type Arrow = D::Basis;

    fn objects(&self) -> usize {
        1
    }

    fn source(&self, _: &D::Basis) -> usize {
        0
    }

    fn target(&self, _: &D::Basis) -> usize {
        0
    }

    fn degree(&self, a: &D::Basis) -> i32 {
        self.alg.degree(a)
    }

    fn arity_bound(&self) -> Option<usize> {
        Some(2)
    }

    fn b(&self, word: &[D::Basis]) -> Result<Lin<D::Basis>> {
        match word {
            [x] => self.alg.d(x),
            [x, y] => {
                let xy = self.alg.mul(x, y)?;
                Ok(if odd(self.alg.degree(x)) { xy } else { lin_neg(&xy) })
            }
            _ => Ok(Lin::new()),
        }
    }

    fn unit(&self, _: usize) -> Option<D::Basis> {
        self.alg.unit()
    }

    fn generators(&self) -> Vec<D::Basis> {
        self.alg.basis()
    }
}

/// A dg algebra with a finite basis given by tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableAlgebra {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub differential: Vec<Lin<usize>>,
    pub products: BTreeMap<(usize, usize), Lin<usize>>,
    pub unit: Option<usize>,
}

impl TableAlgebra {
    /// The integers: a single basis element `1` in degree 0.
    pub fn integers() -> Self {
        TableAlgebra {
            labels: vec![String::from("1")],
            degrees: vec![0],
            differential: vec![Lin::new()],
            products: [((0, 0), single(0))].into_iter().collect(),
            unit: Some(0),
        }
    }

    /// The exterior algebra on `a`, `b` of degree 1, with basis `1, a, b, ab`.
    /// With `acyclic` the differential is `db = 1`, `d(ab) = -a`; otherwise zero.
    pub fn exterior(acyclic: bool) -> Self {
        let labels = ["1", "a", "b", "ab"].iter().map(|s| String::from(*s)).collect();
        let mut products = BTreeMap::new();
        for x in 0..4 {
            products.insert((0, x), single(x));
            products.insert((x, 0), single(x));
        }
        products.insert((1, 2), single(3));
        products.insert((2, 1), lin_neg(&single(3)));
        let mut differential = vec![Lin::new(); 4];
        if acyclic {
            differential[2] = single(0);
            differential[3] = lin_neg(&single(1));
        }
        TableAlgebra { labels, degrees: vec![0, 1, 1, 2], differential, products, unit: Some(0) }
    }
}

impl DgAlgebra for TableAlgebra {
    type Basis = usize;

    fn degree(&self, x: &usize) -> i32 {
        self.degrees[*x]
    }

    fn d(&self, x: &usize) -> Result<Lin<usize>> {
        self.differential.get(*x).cloned().ok_or(Error::IndexOutOfRange { index: *x, bound: self.degrees.len() })
    }

    fn mul(&self, x: &usize, y: &usize) -> Result<Lin<usize>> {
        Ok(self.products.get(&(*x, *y)).cloned().unwrap_or_default())
    }

    fn unit(&self) -> Option<usize> {
        self.unit
    }

    fn basis(&self) -> Vec<usize> {
        (0..self.degrees.len()).collect()
    }
}

/// A basis element of the simplicial algebra of cochains: in simplicial
/// degree `dim`, the cochain on `Delta^dim` with value `word (x) theta^[theta]`
/// on `simplex` and zero elsewhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GBasis {
    pub dim: usize,
    pub simplex: Vec<usize>,
    pub word: Word,
    pub theta: u32,
}

/// The simplicial algebra `n -> C(Delta^n; U g (x) Z<theta>)` with the cup
/// product in each degree, viewed as a dg algebra through its Moore complex:
/// the differential is `sum (-1)^i d_i` and the product of `a` in degree `p`
/// and `b` in degree `q` is the shuffle product
/// `sum sgn(mu, nu) s_nu a . s_mu b` over `(p, q)`-shuffles.
#[derive(Clone, Debug)]
pub struct GThetaMoore {
    trunc: usize,
    basis: Vec<GBasis>,
}

impl GThetaMoore {
    /// Lists the basis elements of simplicial degree `<= max_dim` whose words
    /// use the given letters, have length `<= max_word` and whose theta power
    /// is `<= max_theta`.
    pub fn new(trunc: usize, letters: &[Letter], max_dim: usize, max_word: usize, max_theta: u32) -> Self {
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_word.min(trunc) {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |l| {
                        let mut nw = w.clone();
                        nw.push(l.clone());
                        nw
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let mut basis = Vec::new();
        for dim in 0..=max_dim {
            for k in 1..=dim + 1 {
                for simplex in ordinal::all_injections(k - 1, dim) {
                    for word in &words {
                        for theta in 0..=max_theta {
                            basis.push(GBasis { dim, simplex: simplex.clone(), word: word.clone(), theta });
                        }
                    }
                }
            }
        }
        GThetaMoore { trunc, basis }
    }

    /// An explicit list of basis elements for checks.
    pub fn with_basis(trunc: usize, basis: Vec<GBasis>) -> Self {
        GThetaMoore { trunc, basis }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// The cochain of a basis element.
    pub fn basis_cochain(&self, b: &GBasis) -> Result<Cochain> {
        let mut c = Cochain::zero(b.dim, self.trunc);
        let value = GForm::term(0, self.trunc, b.word.clone(), &[], DPPoly::var_power(0, 0, b.theta))?;
        c.set(b.simplex.clone(), value);
        Ok(c)
    }

    /// The cochain of a combination whose terms all lie in simplicial degree `dim`.
    pub fn cochain(&self, dim: usize, x: &Lin<GBasis>) -> Result<Cochain> {
        let mut c = Cochain::zero(dim, self.trunc);
        for (b, k) in x {
            if b.dim != dim {
                return Err(Error::Malformed(format!("term {b:?} is not in simplicial degree {dim}")));
            }
            c = c.add(&self.basis_cochain(b)?.scale(k))?;
        }
        Ok(c)
    }

    /// The combination of basis elements of a cochain.
    pub fn element(&self, c: &Cochain) -> Lin<GBasis> {
        let mut out = Lin::new();
        for (s, g) in c.values() {
            for (w, _, f) in g.terms() {
                for (m, k) in f.terms() {
                    let b = GBasis { dim: c.n(), simplex: s.clone(), word: w.clone(), theta: m.exps()[0] };
                    lin_add(&mut out, b, k.clone());
                }
            }
        }
        out
    }
}

impl DgAlgebra for GThetaMoore {
    type Basis = GBasis;

    fn degree(&self, x: &GBasis) -> i32 {
        x.dim as i32
    }

    fn d(&self, x: &GBasis) -> Result<Lin<GBasis>> {
        let c = self.basis_cochain(x)?;
        let mut acc = Cochain::zero(x.dim.saturating_sub(1), self.trunc);
        if x.dim == 0 {
            return Ok(Lin::new());
        }
        for i in 0..=x.dim {
            let face = c.pullback(&ordinal::coface(x.dim, i))?;
            acc = if i % 2 == 0 { acc.add(&face)? } else { acc.sub(&face)? };
        }
        Ok(self.element(&acc))
    }

    fn mul(&self, x: &GBasis, y: &GBasis) -> Result<Lin<GBasis>> {
        let (p, q) = (x.dim, y.dim);
        let (cx, cy) = (self.basis_cochain(x)?, self.basis_cochain(y)?);
        let mut acc = Cochain::zero(p + q, self.trunc);
        for chain in chains::enumerate_maximal(p, q) {
            let pts = chain.points();
            let base: OrdMap = pts.iter().map(|&(b, _)| b).collect();
            let fiber: OrdMap = pts.iter().map(|&(_, f)| f).collect();
            let mut inversions = 0usize;
            let mut fiber_steps = 0usize;
            for t in 0..p + q {
                if base[t + 1] > base[t] {
                    inversions += fiber_steps;
                } else {
                    fiber_steps += 1;
                }
            }
            let term = cx.pullback(&base)?.cup(&cy.pullback(&fiber)?)?;
            acc = if inversions.is_multiple_of(2) { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(self.element(&acc))
    }

    fn unit(&self) -> Option<GBasis> {
        Some(GBasis { dim: 0, simplex: vec![0], word: Vec::new(), theta: 0 })
    }

    fn basis(&self) -> Vec<GBasis> {
        self.basis.clone()
    }
}

// ---------------------------------------------------------------------------
// Strict unitalization
// ---------------------------------------------------------------------------

/// An arrow of the unitalization: a new unit or an arrow of the original.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum UArrow<T> {
    Unit(usize),
    Old(T),
}

/// Adjoins a strict unit `id_x` to every object, disjointly from existing arrows.
#[derive(Clone, Debug)]
pub struct Unitalized<A> {
    inner: A,
}

pub fn unitalize<A: AInfty>(a: A) -> Unitalized<A> {
    Unitalized { inner: a }
}

impl<A: AInfty> Unitalized<A> {
    pub fn inner(&self) -> &A {
        &self.inner
    }

    /// The inclusion of the original category.
    pub fn inclusion<'a>(&'a self) -> StrictFunctor<'a, A::Arrow, UArrow<A::Arrow>> {
        StrictFunctor::new((0..self.inner.objects()).collect(), |a: &A::Arrow| Ok(single(UArrow::Old(a.clone()))))
    }
}

impl<A: AInfty> AInfty for Unitalized<A> {
    type Arrow = UArrow<A::Arrow>;

    fn objects(&self) -> usize {
        self.inner.objects()
    }

    fn source(&self, a: &Self::Arrow) -> usize {
        match a {
            UArrow::Unit(x) => *x,
            UArrow::Old(f) => self.inner.source(f),
        }
    }

    fn target(&self, a: &Self::Arrow) -> usize {
        match a {
            UArrow::Unit(x) => *x,
            UArrow::Old(f) => self.inner.target(f),
        }
    }

    fn degree(&self, a: &Self::Arrow) -> i32 {
        match a {
            UArrow::Unit(_) => 0,
            UArrow::Old(f) => self.inner.degree(f),
        }
    }

    fn arity_bound(&self) -> Option<usize> {
        self.inner.arity_bound().map(|k| k.max(2))
    }

    fn b(&self, word: &[Self::Arrow]) -> Result<Lin<Self::Arrow>> {
        let old: Option<Vec<A::Arrow>> = word
            .iter()
            .map(|a| match a {
                UArrow::Old(f) => Some(f.clone()),
                UArrow::Unit(_) => None,
            })
            .collect();
        if let Some(old) = old {
            return Ok(self.inner.b(&old)?.into_iter().map(|(f, c)| (UArrow::Old(f), c)).collect());
        }
        Ok(match word {
            [UArrow::Old(f), UArrow::Unit(_)] => {
                let mut l = Lin::new();
                lin_add(&mut l, UArrow::Old(f.clone()), sign(!odd(self.inner.degree(f))));
                l
            }
            [UArrow::Unit(_), UArrow::Old(f)] => lin_neg(&single(UArrow::Old(f.clone()))),
            [UArrow::Unit(x), UArrow::Unit(_)] => lin_neg(&single(UArrow::Unit(*x))),
            _ => Lin::new(),
        })
    }

    fn unit(&self, x: usize) -> Option<Self::Arrow> {
        Some(UArrow::Unit(x))
    }

    fn generators(&self) -> Vec<Self::Arrow> {
        let mut g: Vec<Self::Arrow> = self.inner.generators().into_iter().map(UArrow::Old).collect();
        g.extend((0..self.inner.objects()).map(UArrow::Unit));
        g
    }
}

/// The extension of a strict functor `A -> B` into a unital `B` to the
/// unitalization, sending each new unit to the unit of the image object.
pub fn extend_to_unitalization<'a, A: AInfty, B: AInfty>(
    b: &'a B,
    f: &'a StrictFunctor<'a, A::Arrow, B::Arrow>,
) -> Result<StrictFunctor<'a, UArrow<A::Arrow>, B::Arrow>> {
    for &y in &f.objects {
        if b.unit(y).is_none() {
            return Err(Error::Malformed(format!("target object {y} has no strict unit")));
        }
    }
    Ok(StrictFunctor::new(f.objects.clone(), move |a: &UArrow<A::Arrow>| match a {
        UArrow::Unit(x) => Ok(single(b.unit(f.objects[*x]).expect("units checked above"))),
        UArrow::Old(g) => f.arrow(g),
    }))
}

// ---------------------------------------------------------------------------
// The free A-infinity category on a dg quiver
// ---------------------------------------------------------------------------

/// A planar tree: a quiver arrow, or a formal `b_k` (`k >= 2`) of subtrees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Tree {
    Leaf(usize),
    Node(Vec<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(ts) => ts.iter().map(Tree::leaves).sum(),
        }
    }

    fn first_leaf(&self) -> usize {
        match self {
            Tree::Leaf(g) => *g,
            Tree::Node(ts) => ts[0].first_leaf(),
        }
    }

    fn last_leaf(&self) -> usize {
        match self {
            Tree::Leaf(g) => *g,
            Tree::Node(ts) => ts[ts.len() - 1].last_leaf(),
        }
    }
}

/// The free A-infinity category on a dg quiver, with hom complexes spanned by
/// planar trees of at most `leaf_cap` leaves.  `b_k` for `k >= 2` grafts;
/// `b_1` applies the quiver differential to leaves and is forced on nodes by
/// the A-infinity relation.
#[derive(Clone, Debug)]
pub struct FreeModel {
    quiver: GradedQuiver,
    leaf_cap: usize,
}

pub fn free_on_quiver(quiver: GradedQuiver, leaf_cap: usize) -> FreeModel {
    FreeModel { quiver, leaf_cap }
}

impl FreeModel {
    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn leaf_cap(&self) -> usize {
        self.leaf_cap
    }

    fn tree_degree(&self, t: &Tree) -> i32 {
        match t {
            Tree::Leaf(g) => self.quiver.arrows[*g].degree,
            Tree::Node(ts) => ts.iter().map(|s| self.tree_degree(s)).sum::<i32>() + ts.len() as i32 - 2,
        }
    }

    fn b1(&self, t: &Tree) -> Result<Lin<Tree>> {
        let ts = match t {
            Tree::Leaf(g) => return Ok(self.quiver.d(*g).into_iter().map(|(h, c)| (Tree::Leaf(h), c)).collect()),
            Tree::Node(ts) => ts,
        };
        let r = ts.len();
        let mut out = Lin::new();
        let mut prefix = 0i32;
        for p in 0..r {
            let s_neg = -sign(odd(prefix));
            for (x, k) in self.b1(&ts[p])? {
                let mut nw = ts.clone();
                nw[p] = x;
                lin_add(&mut out, Tree::Node(nw), k * &s_neg);
            }
            for s in 2..=(r - p).min(r - 1) {
                let mut nw = Vec::with_capacity(r - s + 1);
                nw.extend_from_slice(&ts[..p]);
                nw.push(Tree::Node(ts[p..p + s].to_vec()));
                nw.extend_from_slice(&ts[p + s..]);
                lin_add(&mut out, Tree::Node(nw), s_neg.clone());
            }
            prefix += self.tree_degree(&ts[p]) + 1;
        }
        Ok(out)
    }

    /// Every planar tree with exactly the given leaves in order.
    pub fn trees_on(leaves: &[usize]) -> Vec<Tree> {
        if leaves.len() == 1 {
            return vec![Tree::Leaf(leaves[0])];
        }
        let mut out = Vec::new();
        for split in 1..leaves.len() {
            let heads = Self::trees_on(&leaves[..split]);
            let tails = Self::forests_on(&leaves[split..]);
            for h in &heads {
                for t in &tails {
                    let mut f = vec![h.clone()];
                    f.extend(t.iter().cloned());
                    out.push(Tree::Node(f));
                }
            }
        }
        out
    }

    /// Every sequence of trees whose leaves, read in order, are the given ones.
    pub fn forests_on(leaves: &[usize]) -> Vec<Vec<Tree>> {
        if leaves.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for split in 1..=leaves.len() {
            let heads = Self::trees_on(&leaves[..split]);
            let tails = Self::forests_on(&leaves[split..]);
            for h in &heads {
                for t in &tails {
                    let mut f = vec![h.clone()];
                    f.extend(t.iter().cloned());
                    out.push(f);
                }
            }
        }
        out
    }

    /// Every composable word of trees with at most `max_leaves` leaves in total.
    pub fn tree_words(&self, max_leaves: usize) -> Vec<Vec<Tree>> {
        let mut out = Vec::new();
        for leaves in composable_words(self, &self.generators(), max_leaves) {
            let leaves: Vec<usize> = leaves
                .iter()
                .map(|t| match t {
                    Tree::Leaf(g) => *g,
                    Tree::Node(_) => unreachable!("generators are leaves"),
                })
                .collect();
            out.extend(Self::forests_on(&leaves));
        }
        out
    }
}

impl AInfty for FreeModel {
    type Arrow = Tree;

    fn objects(&self) -> usize {
        self.quiver.objects
    }

    fn source(&self, a: &Tree) -> usize {
        self.quiver.arrows[a.first_leaf()].source
    }

    fn target(&self, a: &Tree) -> usize {
        self.quiver.arrows[a.last_leaf()].target
    }

    fn degree(&self, a: &Tree) -> i32 {
        self.tree_degree(a)
    }

    fn arity_bound(&self) -> Option<usize> {
        None
    }

    fn b(&self, word: &[Tree]) -> Result<Lin<Tree>> {
        if word.len() == 1 {
            return self.b1(&word[0]);
        }
        let leaves: usize = word.iter().map(Tree::leaves).sum();
        if leaves > self.leaf_cap {
            return Err(Error::CapExceeded { cap: self.leaf_cap, what: format!("tree with {leaves} leaves") });
        }
        Ok(single(Tree::Node(word.to_vec())))
    }

    fn unit(&self, _: usize) -> Option<Tree> {
        None
    }

    fn generators(&self) -> Vec<Tree> {
        (0..self.quiver.arrows.len()).map(Tree::Leaf).collect()
    }
}

fn eval_tree<B: AInfty>(b: &B, f: &dyn Fn(usize) -> Result<Lin<B::Arrow>>, t: &Tree) -> Result<Lin<B::Arrow>> {
    match t {
        Tree::Leaf(g) => f(*g),
        Tree::Node(ts) => {
            let args = ts.iter().map(|s| eval_tree(b, f, s)).collect::<Result<Vec<_>>>()?;
            b_multi(b, &args)
        }
    }
}

/// Checks that a map on quiver arrows preserves endpoints and degrees and
/// satisfies `f(dg) = b_1(f(g))`.
pub fn check_quiver_morphism<B: AInfty>(q: &GradedQuiver, b: &B, objects: &[usize], f: &dyn Fn(usize) -> Result<Lin<B::Arrow>>) -> Result<Report> {
    let mut rep = Report::new("dg quiver morphism");
    if objects.len() != q.objects || objects.iter().any(|&x| x >= b.objects()) {
        rep.check(false, || String::from("object map has the wrong shape"));
        return Ok(rep);
    }
    for (g, a) in q.arrows.iter().enumerate() {
        let img = f(g)?;
        let ok = img.keys().all(|t| b.source(t) == objects[a.source] && b.target(t) == objects[a.target] && b.degree(t) == a.degree);
        rep.check(ok, || format!("image of {} has wrong endpoints or degree", a.label));
        let mut lhs = Lin::new();
        for (h, c) in q.d(g) {
            lin_add_scaled(&mut lhs, &f(h)?, &c);
        }
        let rhs = b_multi(b, &[img])?;
        rep.check(lhs == rhs, || format!("f(d {}) = {lhs:?} but b_1 f({}) = {rhs:?}", a.label, a.label));
    }
    Ok(rep)
}

/// The strict functor out of the free model determined by a dg quiver morphism.
pub fn free_functor<'a, B: AInfty>(b: &'a B, objects: Vec<usize>, f: impl Fn(usize) -> Result<Lin<B::Arrow>> + 'a) -> StrictFunctor<'a, Tree, B::Arrow> {
    StrictFunctor::new(objects, move |t: &Tree| eval_tree(b, &f, t))
}

// ---------------------------------------------------------------------------
// Nerve
// ---------------------------------------------------------------------------

/// A candidate `n`-simplex of the nerve: objects `x_0, .., x_n` and an
/// element for each pair `i < j`; pairs `(i, i)` default to the unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NerveCandidate<T> {
    pub objects: Vec<usize>,
    pub edges: BTreeMap<(usize, usize), Lin<T>>,
}

/// The outcome of a nerve validation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NerveReport {
    pub constraints: usize,
    pub first_violation: Option<String>,
}

impl NerveReport {
    pub fn valid(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that a candidate defines a unit-preserving strict functor from the
/// standard `[n]` category into a strictly unital `B`, on words up to `max_len`.
pub fn nerve_validate<B: AInfty>(b: &B, n: usize, cand: &NerveCandidate<B::Arrow>, max_len: usize) -> Result<NerveReport> {
    if cand.objects.len() != n + 1 || cand.objects.iter().any(|&x| x >= b.objects()) {
        return Err(Error::Malformed(format!("an {n}-simplex needs {} objects of the target", n + 1)));
    }
    for &(i, j) in cand.edges.keys() {
        if i > j || j > n {
            return Err(Error::Malformed(format!("({i}, {j}) is not an arrow of [{n}]")));
        }
    }
    let mut units = Vec::with_capacity(n + 1);
    for &x in &cand.objects {
        units.push(b.unit(x).ok_or_else(|| Error::Malformed(format!("target object {x} has no strict unit")))?);
    }
    let mut constraints = 0;
    for (i, unit) in units.iter().enumerate() {
        constraints += 1;
        if let Some(v) = cand.edges.get(&(i, i)) {
            if *v != single(unit.clone()) {
                return Ok(NerveReport { constraints, first_violation: Some(format!("({i}, {i}) is not sent to the unit")) });
            }
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            if !cand.edges.contains_key(&(i, j)) {
                return Err(Error::Malformed(format!("missing element for ({i}, {j})")));
            }
        }
    }
    let edges = cand.edges.clone();
    let objects = cand.objects.clone();
    let f = StrictFunctor::new(objects, move |&(i, j): &(usize, usize)| {
        if i == j {
            return Ok(single(units[i].clone()));
        }
        edges.get(&(i, j)).cloned().ok_or_else(|| Error::Malformed(format!("missing element for ({i}, {j})")))
    });
    let a = simplex_category(n);
    for w in composable_words(&a, &a.generators(), max_len) {
        let rep = check_functor_on(&a, b, &f, core::slice::from_ref(&w))?;
        constraints += rep.cases;
        if let Some(v) = rep.failures.into_iter().next() {
            return Ok(NerveReport { constraints, first_violation: Some(v) });
        }
    }
    Ok(NerveReport { constraints, first_violation: None })
}

// ---------------------------------------------------------------------------
// Path quivers and the holonomy functor
// ---------------------------------------------------------------------------

/// Which chains on the hom spaces the path quiver uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainKind {
    /// Nondegenerate simplices; degenerate faces are dropped.
    Normalized,
    /// All simplices up to the dimension cap.
    Unnormalized,
}

/// The simplex of a hom space that a path-quiver arrow stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathArrow {
    pub source: usize,
    pub target: usize,
    pub simplex: Simplex,
}

/// The dg quiver of chains on the hom spaces `X(x, y)` up to a dimension cap.
#[derive(Clone, Debug)]
pub struct PathQuiver {
    pub quiver: GradedQuiver,
    pub arrows: Vec<PathArrow>,
    pub kind: ChainKind,
    homs: BTreeMap<(usize, usize), Realized<MapModel>>,
}

impl PathQuiver {
    pub fn hom(&self, x: usize, y: usize) -> Option<&Realized<MapModel>> {
        self.homs.get(&(x, y))
    }
}

/// Builds the path quiver of `X`: objects are vertices, arrows `x -> y` are
/// the simplices of `X(x, y)` of dimension `<= cap` with the alternating face
/// differential.
pub fn path_quiver(x: &FiniteSimplicialSet, cap: usize, kind: ChainKind) -> Result<PathQuiver> {
    let objects = x.count(0);
    let mut arrows = Vec::new();
    let mut qarrows = Vec::new();
    let mut index = BTreeMap::new();
    let mut homs = BTreeMap::new();
    for a in 0..objects {
        for b in 0..objects {
            let hom = hom_space(x, a, b, cap)?;
            for d in 0..=cap {
                let sims = match kind {
                    ChainKind::Normalized => (0..hom.set().count(d)).map(|i| Simplex::nondegenerate(d, i)).collect(),
                    ChainKind::Unnormalized => hom.set().simplices(d),
                };
                for s in sims {
                    index.insert((a, b, s.clone()), arrows.len());
                    qarrows.push(QuiverArrow { source: a, target: b, degree: d as i32, label: format!("{a}->{b}:{s}") });
                    arrows.push(PathArrow { source: a, target: b, simplex: s });
                }
            }
            homs.insert((a, b), hom);
        }
    }
    let mut differential = Vec::with_capacity(arrows.len());
    for arr in &arrows {
        let mut row = Lin::new();
        let d = arr.simplex.dim();
        if d > 0 {
            let hom = &homs[&(arr.source, arr.target)];
            for i in 0..=d {
                let face = hom.set().face(&arr.simplex, i)?;
                if kind == ChainKind::Normalized && !face.is_nondegenerate() {
                    continue;
                }
                let j =
                    index.get(&(arr.source, arr.target, face.clone())).ok_or_else(|| Error::Malformed(format!("face {face} missing from the path quiver")))?;
                lin_add(&mut row, *j, sign(i % 2 == 1));
            }
        }
        differential.push(row);
    }
    let quiver = GradedQuiver::new(objects, qarrows, Some(differential))?;
    Ok(PathQuiver { quiver, arrows, kind, homs })
}

/// The path quiver of `Ex^k X`.
pub fn path_quiver_ex(x: &FiniteSimplicialSet, k: usize, cap: usize, kind: ChainKind) -> Result<(FiniteSimplicialSet, PathQuiver)> {
    let y = ex_iterate(x, k, cap)?;
    let pq = path_quiver(&y, cap, kind)?;
    Ok((y, pq))
}

/// The canonical map from the path quiver of `Delta^n` to the standard `[n]`
/// category: every degree-0 arrow `x -> y` goes to `(x, y)`, higher ones to 0.
pub fn simplex_projection(pq: &PathQuiver) -> Vec<Lin<(usize, usize)>> {
    pq.arrows.iter().map(|a| if a.simplex.dim() == 0 { single((a.source, a.target)) } else { Lin::new() }).collect()
}

/// The holonomy of a connection on every arrow of the path quiver, as
/// elements of the simplicial cochain algebra.
pub fn ahol_images(pq: &PathQuiver, target: &GThetaMoore, nabla: &FormMap, order: usize) -> Result<Vec<Lin<GBasis>>> {
    if !nabla.is_connection() {
        return Err(Error::Malformed(String::from("a connection must have form degree 1")));
    }
    if nabla.trunc() != target.trunc() {
        return Err(Error::TruncationMismatch(nabla.trunc(), target.trunc()));
    }
    pq.arrows
        .iter()
        .map(|a| {
            let hom = &pq.homs[&(a.source, a.target)];
            let c = hol_at(hom, nabla, order, &a.simplex)?;
            Ok(target.element(&c))
        })
        .collect()
}

/// The holonomy functor out of the free model of a path quiver, from
/// precomputed arrow images.
pub fn ahol_functor<'a>(pq: &PathQuiver, target: &'a FromDgAlgebra<GThetaMoore>, images: &'a [Lin<GBasis>]) -> StrictFunctor<'a, Tree, GBasis> {
    free_functor(target, vec![0; pq.quiver.objects()], move |g| Ok(images[g].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard;

    fn two(a: (usize, usize), b: (usize, usize)) -> Vec<(usize, usize)> {
        vec![a, b]
    }

    #[test]
    fn simplex_category_merges_with_a_sign() {
        let a = simplex_category(2);
        let d = coderivation(&a, &single(two((0, 1), (1, 2)))).unwrap();
        assert_eq!(d, lin_neg(&single(vec![(0, 2)])));
        let d3 = coderivation(&a, &single(vec![(0, 1), (1, 2), (2, 3)])).unwrap();
        let mut expected = Tensor::new();
        lin_add(&mut expected, two((0, 2), (2, 3)), BigInt::from(-1));
        lin_add(&mut expected, two((0, 1), (1, 3)), BigInt::from(1));
        assert_eq!(d3, expected);
        assert!(check_square_zero(&a, 4).unwrap().passed());
        assert!(check_strict_units(&a, 4).unwrap().passed());
    }

    #[test]
    fn coface_relabels_arrows() {
        let f = cosimplicial_map(&ordinal::coface(2, 1), 2).unwrap();
        assert_eq!(f.arrow(&(0, 1)).unwrap(), single((0, 2)));
    }

    #[test]
    fn integers_import_with_only_the_unit() {
        let a = from_dg_algebra(TableAlgebra::integers()).unwrap();
        assert_eq!(a.b(&[0, 0]).unwrap(), lin_neg(&single(0)));
        assert!(check_square_zero(&a, 4).unwrap().passed());
        assert!(check_strict_units(&a, 4).unwrap().passed());
    }

    #[test]
    fn exterior_toys_square_to_zero() {
        for acyclic in [false, true] {
            let a = from_dg_algebra(TableAlgebra::exterior(acyclic)).unwrap();
            assert!(check_square_zero(&a, 4).unwrap().passed());
            assert!(check_strict_units(&a, 4).unwrap().passed());
        }
    }

    #[test]
    fn broken_leibniz_is_rejected() {
        let mut alg = TableAlgebra::exterior(true);
        alg.differential[3] = single(1);
        assert!(matches!(from_dg_algebra(alg), Err(Error::Axiom(_))));
    }

    #[test]
    fn unit_on_unit_is_minus_unit() {
        let u = unitalize(simplex_category(1));
        assert_eq!(u.b(&[UArrow::Unit(0), UArrow::Unit(0)]).unwrap(), lin_neg(&single(UArrow::Unit(0))));
        assert_eq!(u.b(&[UArrow::Old((0, 0)), UArrow::Unit(0)]).unwrap(), lin_neg(&single(UArrow::Old((0, 0)))));
        assert!(check_square_zero(&u, 4).unwrap().passed());
        assert!(check_strict_units(&u, 4).unwrap().passed());
    }

    #[test]
    fn unitalized_exterior_algebra_keeps_its_old_unit() {
        let u = unitalize(from_dg_algebra(TableAlgebra::exterior(true)).unwrap());
        assert_eq!(u.generators().len(), 5);
        assert!(check_square_zero(&u, 4).unwrap().passed());
    }

    fn single_arrow() -> GradedQuiver {
        GradedQuiver::new(1, vec![QuiverArrow { source: 0, target: 0, degree: 0, label: String::from("a") }], None).unwrap()
    }

    #[test]
    fn free_model_on_one_arrow_squares_to_zero() {
        let free = free_on_quiver(single_arrow(), 4);
        assert!(check_square_zero_on(&free, &free.tree_words(4)).unwrap().passed());
        assert_eq!(FreeModel::trees_on(&[0, 0, 0]).len(), 3);
    }

    #[test]
    fn free_model_with_a_differential_squares_to_zero() {
        let arrows = vec![
            QuiverArrow { source: 0, target: 1, degree: 1, label: String::from("h") },
            QuiverArrow { source: 0, target: 1, degree: 0, label: String::from("f") },
            QuiverArrow { source: 1, target: 1, degree: 0, label: String::from("g") },
        ];
        let q = GradedQuiver::new(2, arrows, Some(vec![single(1), Lin::new(), Lin::new()])).unwrap();
        let free = free_on_quiver(q, 4);
        assert!(check_square_zero_on(&free, &free.tree_words(4)).unwrap().passed());
    }

    #[test]
    fn free_model_reports_cap_exhaustion() {
        let free = free_on_quiver(single_arrow(), 2);
        let err = free.b(&[Tree::Leaf(0), Tree::Leaf(0), Tree::Leaf(0)]);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn identity_morphism_gives_the_identity_on_generators() {
        let free = free_on_quiver(single_arrow(), 3);
        let f = free_functor(&free, vec![0], |g| Ok(single(Tree::Leaf(g))));
        assert_eq!(f.arrow(&Tree::Leaf(0)).unwrap(), single(Tree::Leaf(0)));
        assert!(check_functor_on(&free, &free, &f, &free.tree_words(3)).unwrap().passed());
    }

    #[test]
    fn path_quiver_of_a_simplex_is_the_order() {
        let pq = path_quiver(&standard(2), 2, ChainKind::Normalized).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let n = pq.arrows.iter().filter(|x| x.source == a && x.target == b).count();
                assert_eq!(n, usize::from(a <= b));
            }
        }
        assert!(pq.arrows.iter().all(|a| a.simplex.dim() == 0));
    }

    #[test]
    fn projection_to_the_simplex_category_is_a_morphism() {
        let pq = path_quiver(&standard(2), 1, ChainKind::Normalized).unwrap();
        let images = simplex_projection(&pq);
        let target = simplex_category(2);
        let objects: Vec<usize> = (0..3).collect();
        let f = |g: usize| Ok(images[g].clone());
        assert!(check_quiver_morphism(&pq.quiver, &target, &objects, &f).unwrap().passed());
        let free = free_on_quiver(pq.quiver.clone(), 4);
        let functor = free_functor(&target, objects, f);
        assert!(check_functor_on(&free, &target, &functor, &free.tree_words(3)).unwrap().passed());
    }

    #[test]
    fn unnormalized_hom_of_a_point_alternates() {
        let pq = path_quiver(&standard(1), 2, ChainKind::Unnormalized).unwrap();
        let arrows: Vec<usize> = (0..pq.arrows.len()).filter(|&i| pq.arrows[i].source == 0 && pq.arrows[i].target == 1).collect();
        assert_eq!(arrows.len(), 3);
        assert!(pq.quiver.d(arrows[1]).is_empty());
        assert_eq!(pq.quiver.d(arrows[2]), single(arrows[1]));
    }

    #[test]
    fn moore_product_of_degree_zero_is_the_value_product() {
        let e = Letter { gens: vec![0], deg: 1 };
        let g = GThetaMoore::new(2, core::slice::from_ref(&e), 0, 1, 1);
        let x = GBasis { dim: 0, simplex: vec![0], word: vec![e.clone()], theta: 1 };
        let prod = g.mul(&x, &x).unwrap();
        let expected = GBasis { dim: 0, simplex: vec![0], word: vec![e.clone(), e], theta: 2 };
        let mut l = Lin::new();
        lin_add(&mut l, expected, BigInt::from(2));
        assert_eq!(prod, l);
    }

    #[test]
    fn small_moore_algebra_is_a_dg_algebra() {
        let e = Letter { gens: vec![0], deg: 1 };
        let g = GThetaMoore::new(2, &[e], 1, 1, 1);
        let rep = check_dg_algebra(&g).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
    }
}
