//! Connected L-infinity algebras presented on a finite graded basis, the
//! coderivation they induce on `Sym g[1]`, and the enveloping dg algebra
//! `U g = T(Ker(Sym g[1] -> Z)[-1])` with its cobar-type differential.
//!
//! Structure maps are stored as the Taylor coefficients
//! `l_k: Sym^k(g[1]) -> g[1]` on canonically sorted monomials of shifted
//! generators.  A generator of degree `d` has shifted degree `d + 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A basis element of the underlying graded module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub deg: i32,
}

/// A monomial of `Sym g[1]`: sorted generator indices.
pub type SymMono = Vec<u16>;

/// A linear combination of `Sym g[1]` monomials.
pub type SymElem = BTreeMap<SymMono, BigInt>;

/// A linear combination of generators.
pub type Combination = Vec<(BigInt, u16)>;

/// Koszul sign of the permutation listing `degs` in the order `perm`:
/// `x_1 ... x_n = eps * x_perm(1) ... x_perm(n)` in a graded-commutative algebra.
pub fn epsilon(perm: &[usize], degs: &[i32]) -> i32 {
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degs[perm[a]].rem_euclid(2) == 1 && degs[perm[b]].rem_euclid(2) == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

fn add_to(map: &mut SymElem, key: SymMono, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

/// A connected L-infinity algebra over the integers.
#[derive(Clone, Debug)]
pub struct LInftyAlgebra {
    basis: Vec<Generator>,
    ops: BTreeMap<SymMono, Combination>,
    arity_bound: usize,
}

impl LInftyAlgebra {
    /// The abelian algebra on the given generators.
    pub fn abelian(basis: Vec<Generator>) -> Result<Self> {
        Self::new(basis, Vec::new())
    }

    /// Builds an algebra from `l_k` entries given on (possibly unsorted) input words.
    pub fn new(basis: Vec<Generator>, entries: Vec<(Vec<u16>, Combination)>) -> Result<Self> {
        for g in &basis {
            if g.deg < 1 {
                return Err(Error::Axiom(format!("generator {} has degree {} < 1", g.name, g.deg)));
            }
        }
        let mut alg = LInftyAlgebra { basis, ops: BTreeMap::new(), arity_bound: 0 };
        let mut seen: BTreeMap<SymMono, (Vec<u16>, Combination)> = BTreeMap::new();
        for (input, out) in entries {
            if input.is_empty() {
                return Err(Error::Malformed(String::from("l_0 entries are not allowed")));
            }
            for &i in input.iter().chain(out.iter().map(|(_, b)| b)) {
                if i as usize >= alg.basis.len() {
                    return Err(Error::IndexOutOfRange { index: i as usize, bound: alg.basis.len() });
                }
            }
            let in_deg: i32 = input.iter().map(|&i| alg.shifted(i)).sum();
            for (c, b) in &out {
                if !c.is_zero() && alg.shifted(*b) != in_deg - 1 {
                    return Err(Error::Axiom(format!(
                        "l_{} on {:?} lands in degree {} instead of {}",
                        input.len(),
                        alg.names(&input),
                        alg.basis[*b as usize].deg,
                        in_deg - 2
                    )));
                }
            }
            let (sign, key) = match alg.canonical(&input) {
                Some(v) => v,
                None => {
                    if out.iter().all(|(c, _)| c.is_zero()) {
                        continue;
                    }
                    return Err(Error::Axiom(format!("input {:?} vanishes in Sym g[1]", alg.names(&input))));
                }
            };
            let mut normalized: BTreeMap<u16, BigInt> = BTreeMap::new();
            for (c, b) in &out {
                *normalized.entry(*b).or_insert_with(BigInt::zero) += c * sign;
            }
            let comb: Combination = normalized.into_iter().filter(|(_, c)| !c.is_zero()).map(|(b, c)| (c, b)).collect();
            if let Some((prev_in, prev)) = seen.get(&key) {
                if *prev != comb {
                    return Err(Error::Axiom(format!("asymmetric table: {:?} and {:?} disagree", alg.names(prev_in), alg.names(&input))));
                }
                continue;
            }
            seen.insert(key.clone(), (input, comb.clone()));
            if !comb.is_empty() {
                alg.arity_bound = alg.arity_bound.max(key.len());
                alg.ops.insert(key, comb);
            }
        }
        Ok(alg)
    }

    /// The L-infinity algebra of a dg Lie algebra: `l_1` is the differential and
    /// `l_2(x[1] y[1]) = (-1)^{|x|+1} [x, y][1]`.  All three axioms are checked.
    pub fn from_dg_lie(basis: Vec<Generator>, differential: Vec<(u16, Combination)>, bracket: Vec<((u16, u16), Combination)>) -> Result<Self> {
        let n = basis.len();
        let deg = |i: u16| basis[i as usize].deg;
        let mut dmap: BTreeMap<u16, BTreeMap<u16, BigInt>> = BTreeMap::new();
        for (x, comb) in &differential {
            for (c, y) in comb {
                if (*y as usize) >= n || (*x as usize) >= n {
                    return Err(Error::IndexOutOfRange { index: n, bound: n });
                }
                if deg(*y) != deg(*x) - 1 && !c.is_zero() {
                    return Err(Error::Axiom(format!("differential of {} has wrong degree", basis[*x as usize].name)));
                }
                *dmap.entry(*x).or_default().entry(*y).or_insert_with(BigInt::zero) += c;
            }
        }
        let mut br: BTreeMap<(u16, u16), BTreeMap<u16, BigInt>> = BTreeMap::new();
        for ((x, y), comb) in &bracket {
            let mut v: BTreeMap<u16, BigInt> = BTreeMap::new();
            for (c, z) in comb {
                if (*z as usize) >= n {
                    return Err(Error::IndexOutOfRange { index: *z as usize, bound: n });
                }
                if deg(*z) != deg(*x) + deg(*y) && !c.is_zero() {
                    return Err(Error::Axiom(format!("bracket [{}, {}] has wrong degree", basis[*x as usize].name, basis[*y as usize].name)));
                }
                *v.entry(*z).or_insert_with(BigInt::zero) += c;
            }
            v.retain(|_, c| !c.is_zero());
            let s = if (deg(*x) * deg(*y)).rem_euclid(2) == 0 { -1 } else { 1 };
            let swapped: BTreeMap<u16, BigInt> = v.iter().map(|(z, c)| (*z, c * s)).collect();
            for (key, val) in [((*x, *y), v.clone()), ((*y, *x), swapped)] {
                if let Some(prev) = br.get(&key) {
                    if *prev != val {
                        return Err(Error::Axiom(format!("skew-symmetry fails on ({}, {})", basis[*x as usize].name, basis[*y as usize].name)));
                    }
                } else {
                    br.insert(key, val);
                }
            }
        }
        let lie = DgLie { basis: &basis, d: &dmap, br: &br };
        lie.check_axioms()?;
        let mut entries = Vec::new();
        for (x, m) in &dmap {
            entries.push((vec![*x], m.iter().map(|(y, c)| (c.clone(), *y)).collect()));
        }
        for ((x, y), m) in &br {
            if x <= y {
                let s: BigInt = if (deg(*x) + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                entries.push((vec![*x, *y], m.iter().map(|(z, c)| (c * &s, *z)).collect()));
            }
        }
        Self::new(basis, entries)
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.basis.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn names(&self, m: &[u16]) -> Vec<String> {
        m.iter().map(|&i| self.basis[i as usize].name.clone()).collect()
    }

    /// Entries `(input, output)` of the structure tables.
    pub fn entries(&self) -> impl Iterator<Item = (&SymMono, &Combination)> {
        self.ops.iter()
    }

    /// Shifted degree `|x| + 1` of a generator.
    pub fn shifted(&self, i: u16) -> i32 {
        self.basis[i as usize].deg + 1
    }

    /// Degree of a monomial in `Sym g[1]`.
    pub fn sym_degree(&self, m: &[u16]) -> i32 {
        m.iter().map(|&i| self.shifted(i)).sum()
    }

    /// Sorts a word of shifted generators, returning the Koszul sign, or `None`
    /// when an odd element repeats.
    pub fn canonical(&self, word: &[u16]) -> Option<(i32, SymMono)> {
        let mut w = word.to_vec();
        let mut sign = 1;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.shifted(w[j - 1]).rem_euclid(2) == 1 && self.shifted(w[j]).rem_euclid(2) == 1 {
                    sign = -sign;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        if w.windows(2).any(|p| p[0] == p[1] && self.shifted(p[0]).rem_euclid(2) == 1) {
            return None;
        }
        Some((sign, w))
    }

    /// The Taylor coefficient `l_k` on a sorted monomial.
    pub fn l(&self, m: &[u16]) -> Option<&Combination> {
        self.ops.get(m)
    }

    /// Splits a monomial along a subset of positions: returns the Koszul sign of
    /// moving the chosen factors to the front, with both parts.
    fn split(&self, m: &[u16], mask: u64) -> (i32, SymMono, SymMono) {
        let mut sign = 1;
        let mut front = Vec::new();
        let mut back = Vec::new();
        let mut passed_odd = 0;
        for (pos, &x) in m.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                if self.shifted(x).rem_euclid(2) == 1 && passed_odd % 2 == 1 {
                    sign = -sign;
                }
                front.push(x);
            } else {
                if self.shifted(x).rem_euclid(2) == 1 {
                    passed_odd += 1;
                }
                back.push(x);
            }
        }
        (sign, front, back)
    }

    /// The coderivation `D` on a monomial of `Sym g[1]`.
    pub fn coderivation(&self, m: &[u16]) -> SymElem {
        let mut out = SymElem::new();
        let n = m.len();
        if n == 0 || self.ops.is_empty() {
            return out;
        }
        for mask in 1u64..(1u64 << n) {
            let k = mask.count_ones() as usize;
            if k > self.arity_bound {
                continue;
            }
            let (sign, front, back) = self.split(m, mask);
            let Some(comb) = self.ops.get(&front) else { continue };
            for (c, y) in comb {
                let mut w = Vec::with_capacity(back.len() + 1);
                w.push(*y);
                w.extend_from_slice(&back);
                if let Some((s2, key)) = self.canonical(&w) {
                    add_to(&mut out, key, c * (sign * s2));
                }
            }
        }
        out
    }

    /// `D` extended linearly.
    pub fn coderivation_elem(&self, x: &SymElem) -> SymElem {
        let mut out = SymElem::new();
        for (m, c) in x {
            for (m2, c2) in self.coderivation(m) {
                add_to(&mut out, m2, c2 * c);
            }
        }
        out
    }

    /// The reduced coproduct `Delta(x) - x (x) 1 - 1 (x) x` as signed splittings.
    pub fn reduced_coproduct(&self, m: &[u16]) -> Vec<(i32, SymMono, SymMono)> {
        let n = m.len();
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        for mask in 1u64..((1u64 << n) - 1) {
            out.push(self.split(m, mask));
        }
        out
    }

    /// All monomials of `Sym g[1]` with weight in `1..=max_weight` and shifted
    /// degree at most `max_degree`.
    pub fn monomials(&self, max_weight: usize, max_degree: i32) -> Vec<SymMono> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.monomials_rec(0, max_weight, max_degree, &mut cur, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    fn monomials_rec(&self, start: u16, left: usize, budget: i32, cur: &mut Vec<u16>, out: &mut Vec<SymMono>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..self.basis.len() as u16 {
            let d = self.shifted(i);
            if d > budget {
                continue;
            }
            if cur.last() == Some(&i) && d.rem_euclid(2) == 1 {
                continue;
            }
            cur.push(i);
            self.monomials_rec(i, left - 1, budget - d, cur, out);
            cur.pop();
        }
    }

    /// Checks `D o D = 0` on every monomial within the caps.
    pub fn check_square_zero(&self, max_weight: usize, max_degree: i32) -> Result<usize> {
        let monos = self.monomials(max_weight, max_degree);
        for m in &monos {
            let dd = self.coderivation_elem(&self.coderivation(m));
            if !dd.is_empty() {
                return Err(Error::Axiom(format!("D^2 does not vanish on {:?}", self.names(m))));
            }
        }
        Ok(monos.len())
    }

    /// The letter `x[-1]` of the enveloping algebra for a monomial `x`.
    pub fn letter(&self, m: &[u16]) -> Letter {
        Letter { gens: m.to_vec(), deg: self.sym_degree(m) - 1 }
    }

    /// The letter attached to a single generator.
    pub fn gen_letter(&self, i: u16) -> Letter {
        self.letter(&[i])
    }

    /// The differential of the enveloping algebra on one letter.
    pub fn delta_letter(&self, x: &Letter, trunc: usize) -> EnvElement {
        let mut out = EnvElement::zero(trunc);
        for (m, c) in self.coderivation(&x.gens) {
            out.add_term(vec![self.letter(&m)], c);
        }
        if trunc >= 2 {
            for (s, a, b) in self.reduced_coproduct(&x.gens) {
                let sa = self.sym_degree(&a);
                let sign = if sa.rem_euclid(2) == 0 { -s } else { s };
                out.add_term(vec![self.letter(&a), self.letter(&b)], BigInt::from(sign));
            }
        }
        out
    }

    /// The differential of the enveloping algebra, extended as a derivation.
    pub fn delta(&self, x: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero(x.trunc);
        for (w, c) in &x.terms {
            let mut before = 0i32;
            for (j, letter) in w.iter().enumerate() {
                let d = self.delta_letter(letter, x.trunc);
                let sign = if before.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
                for (w2, c2) in &d.terms {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend_from_slice(&w[..j]);
                    nw.extend_from_slice(w2);
                    nw.extend_from_slice(&w[j + 1..]);
                    out.add_term(nw, c2 * &sign);
                }
                before += letter.deg;
            }
        }
        out
    }

    /// All letters with at most `max_weight` generators and degree at most `max_degree`.
    pub fn letters(&self, max_weight: usize, max_degree: i32) -> Vec<Letter> {
        self.monomials(max_weight, max_degree + 1).iter().map(|m| self.letter(m)).collect()
    }

    /// Checks `delta o delta = 0` on all words of length at most `trunc - 1`
    /// built from letters within the caps.  Returns the number of words checked.
    pub fn check_delta_square_zero(&self, trunc: usize, max_weight: usize, max_degree: i32) -> Result<usize> {
        let letters = self.letters(max_weight, max_degree);
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut frontier: Vec<Word> = vec![Vec::new()];
        for _ in 0..trunc.saturating_sub(1) {
            let mut next = Vec::new();
            for w in &frontier {
                for l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for w in &words {
            let x = EnvElement::word(w.clone(), trunc);
            let dd = self.delta(&self.delta(&x));
            if !dd.is_zero() {
                return Err(Error::Axiom(format!("delta^2 does not vanish on a word of length {}", w.len())));
            }
        }
        Ok(words.len())
    }
}

struct DgLie<'a> {
    basis: &'a [Generator],
    d: &'a BTreeMap<u16, BTreeMap<u16, BigInt>>,
    br: &'a BTreeMap<(u16, u16), BTreeMap<u16, BigInt>>,
}

type Vect = BTreeMap<u16, BigInt>;

impl DgLie<'_> {
    fn deg(&self, i: u16) -> i32 {
        self.basis[i as usize].deg
    }

    fn dv(&self, v: &Vect) -> Vect {
        let mut out = Vect::new();
        for (x, c) in v {
            if let Some(m) = self.d.get(x) {
                for (y, c2) in m {
                    *out.entry(*y).or_insert_with(BigInt::zero) += c * c2;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn bv(&self, a: &Vect, b: &Vect) -> Vect {
        let mut out = Vect::new();
        for (x, c1) in a {
            for (y, c2) in b {
                if let Some(m) = self.br.get(&(*x, *y)) {
                    for (z, c3) in m {
                        *out.entry(*z).or_insert_with(BigInt::zero) += c1 * c2 * c3;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn unit(i: u16) -> Vect {
        let mut v = Vect::new();
        v.insert(i, BigInt::one());
        v
    }

    fn sum(a: &Vect, b: &Vect, sb: i32) -> Vect {
        let mut out = a.clone();
        for (k, c) in b {
            *out.entry(*k).or_insert_with(BigInt::zero) += c * sb;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn name(&self, i: u16) -> &str {
        &self.basis[i as usize].name
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.basis.len() as u16;
        for x in 0..n {
            if !self.dv(&self.dv(&Self::unit(x))).is_empty() {
                return Err(Error::Axiom(format!("differential squares to nonzero on {}", self.name(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (ux, uy) = (Self::unit(x), Self::unit(y));
                let lhs = self.dv(&self.bv(&ux, &uy));
                let s = if self.deg(x).rem_euclid(2) == 0 { 1 } else { -1 };
                let rhs = Self::sum(&self.bv(&self.dv(&ux), &uy), &self.bv(&ux, &self.dv(&uy)), s);
                if lhs != rhs {
                    return Err(Error::Axiom(format!("Leibniz rule fails on ({}, {})", self.name(x), self.name(y))));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ux, uy, uz) = (Self::unit(x), Self::unit(y), Self::unit(z));
                    let lhs = self.bv(&ux, &self.bv(&uy, &uz));
                    let s = if (self.deg(x) * self.deg(y)).rem_euclid(2) == 0 { 1 } else { -1 };
                    let rhs = Self::sum(&self.bv(&self.bv(&ux, &uy), &uz), &self.bv(&uy, &self.bv(&ux, &uz)), s);
                    if lhs != rhs {
                        return Err(Error::Axiom(format!("Jacobi identity fails on ({}, {}, {})", self.name(x), self.name(y), self.name(z))));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A letter `x[-1]` of the enveloping algebra: a `Sym g[1]` monomial with its degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gens: Vec<u16>,
    pub deg: i32,
}

/// A tensor word of letters.
pub type Word = Vec<Letter>;

/// Degree of a word: the sum of its letter degrees.
pub fn word_degree(w: &[Letter]) -> i32 {
    w.iter().map(|l| l.deg).sum()
}

/// A truncated element of the enveloping algebra: words longer than `trunc` are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnvElement {
    pub trunc: usize,
    pub terms: BTreeMap<Word, BigInt>,
}

impl EnvElement {
    pub fn zero(trunc: usize) -> Self {
        EnvElement { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: usize) -> Self {
        Self::word(Vec::new(), trunc)
    }

    pub fn word(w: Word, trunc: usize) -> Self {
        let mut e = Self::zero(trunc);
        e.add_term(w, BigInt::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() || w.len() > self.trunc {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> EnvElement {
        let mut r = EnvElement::zero(self.trunc);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), c * k);
        }
        r
    }

    /// Concatenation product, truncated.
    pub fn mul(&self, other: &EnvElement) -> EnvElement {
        let mut r = EnvElement::zero(self.trunc.min(other.trunc));
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() > r.trunc {
                    continue;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    /// Distinct word degrees occurring, used for homogeneity checks.
    pub fn degrees(&self) -> BTreeSet<i32> {
        self.terms.keys().map(|w| word_degree(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(spec: &[(&str, i32)]) -> Vec<Generator> {
        spec.iter().map(|(n, d)| Generator { name: String::from(*n), deg: *d }).collect()
    }

    fn one(c: i64, b: u16) -> Combination {
        vec![(BigInt::from(c), b)]
    }

    /// Rank-3 nilpotent dg Lie algebra: [a, b] = c with |a| = |b| = 1, |c| = 2.
    pub(crate) fn heisenberg() -> LInftyAlgebra {
        LInftyAlgebra::from_dg_lie(gens(&[("a", 1), ("b", 1), ("c", 2)]), vec![], vec![((0, 1), one(1, 2))]).unwrap()
    }

    #[test]
    fn abelian_has_zero_coderivation() {
        let g = LInftyAlgebra::abelian(gens(&[("e", 1), ("f", 2)])).unwrap();
        for m in g.monomials(4, 12) {
            assert!(g.coderivation(&m).is_empty());
        }
    }

    #[test]
    fn degree_zero_generators_are_rejected() {
        assert!(LInftyAlgebra::abelian(gens(&[("e", 0)])).is_err());
    }

    #[test]
    fn brackets_forced_to_vanish_by_degree() {
        let g = LInftyAlgebra::from_dg_lie(gens(&[("e", 1), ("f", 2)]), vec![], vec![]).unwrap();
        assert_eq!(g.arity_bound(), 0);
        assert!(g.check_square_zero(4, 10).is_ok());
    }

    #[test]
    fn bracket_with_wrong_degree_is_rejected() {
        let r = LInftyAlgebra::from_dg_lie(gens(&[("e", 1), ("f", 2)]), vec![], vec![((0, 1), one(1, 0))]);
        assert!(r.is_err());
    }

    #[test]
    fn jacobi_violation_is_named() {
        let basis = gens(&[("a", 2), ("b", 2), ("e", 2), ("c", 4), ("d", 6)]);
        let br = vec![((0, 1), one(1, 3)), ((3, 2), one(1, 4))];
        match LInftyAlgebra::from_dg_lie(basis, vec![], br) {
            Err(Error::Axiom(msg)) => assert!(msg.contains("Jacobi"), "{msg}"),
            other => panic!("expected a Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let basis = gens(&[("a", 1), ("b", 1), ("c", 2)]);
        let entries = vec![(vec![0, 1], one(1, 2)), (vec![1, 0], one(-1, 2))];
        assert!(LInftyAlgebra::new(basis, entries).is_err());
    }

    #[test]
    fn nilpotent_example_squares_to_zero() {
        let g = heisenberg();
        assert!(g.check_square_zero(4, 12).unwrap() > 10);
    }

    #[test]
    fn dg_lie_coderivation_matches_displayed_signs() {
        let g = heisenberg();
        let d = g.coderivation(&[0, 1]);
        let mut expected = SymElem::new();
        expected.insert(vec![2], BigInt::from(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn epsilon_is_multiplicative() {
        let degs = [1, 2, 3, 1, 4];
        let perms: [[usize; 5]; 3] = [[1, 0, 2, 4, 3], [4, 3, 2, 1, 0], [2, 0, 1, 3, 4]];
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                let permuted: Vec<i32> = s.iter().map(|&i| degs[i]).collect();
                assert_eq!(epsilon(&st, &degs), epsilon(s, &degs) * epsilon(t, &permuted));
            }
        }
    }

    #[test]
    fn single_generator_letter_is_closed() {
        let g = LInftyAlgebra::abelian(gens(&[("e", 1)])).unwrap();
        let e = g.gen_letter(0);
        assert_eq!(e.deg, 1);
        assert!(g.delta_letter(&e, 4).is_zero());
    }

    #[test]
    fn splitting_term_of_a_product_letter() {
        let g = LInftyAlgebra::abelian(gens(&[("e", 1), ("f", 2)])).unwrap();
        let x = g.letter(&[0, 1]);
        let d = g.delta_letter(&x, 3);
        let (e, f) = (g.gen_letter(0), g.gen_letter(1));
        let mut expected = EnvElement::zero(3);
        expected.add_term(vec![e.clone(), f.clone()], BigInt::from(-1));
        expected.add_term(vec![f, e], BigInt::from(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn delta_squares_to_zero() {
        let g = LInftyAlgebra::abelian(gens(&[("e", 1), ("f", 2)])).unwrap();
        assert!(g.check_delta_square_zero(3, 3, 8).is_ok());
        let h = heisenberg();
        assert!(h.check_delta_square_zero(3, 3, 8).is_ok());
    }

    #[test]
    fn delta_on_weight_two_letters_of_a_dg_lie_algebra() {
        let g = heisenberg();
        let (a, b, c) = (g.gen_letter(0), g.gen_letter(1), g.gen_letter(2));
        let x = g.letter(&[0, 1]);
        let d = g.delta_letter(&x, 3);
        let mut expected = EnvElement::zero(3);
        expected.add_term(vec![c], BigInt::from(1));
        expected.add_term(vec![a.clone(), b.clone()], BigInt::from(-1));
        expected.add_term(vec![b, a], BigInt::from(-1));
        assert_eq!(d, expected);
    }
}
