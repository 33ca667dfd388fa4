//! The divided power de Rham complex on a standard simplex and forms valued in
//! the enveloping algebra of an L-infinity algebra.
//!
//! A term `v (x) f dx_S` is keyed by the env word `v` and the bit mask of `S`
//! (bit `i` stands for `dx_i`), with coefficient `f` in `Z<theta, x_1..x_n>`.
//! Its bidegree is `(p, q) = (deg v, |S|)` and its total degree is `q - p`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dpalg::{pullback_map, Bound, DPPoly};
use crate::error::{Error, Result};
use crate::linfty::{word_degree, EnvElement, Word};

/// Sign of `dx_A ^ dx_B` relative to `dx_{A u B}`, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Indices `i` with `dx_i` present in a mask, increasing.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

fn parity(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

/// A truncated element of `prod U g_p (x) Omega^q(n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GForm {
    n: usize,
    trunc: usize,
    terms: BTreeMap<(Word, u32), DPPoly>,
}

/// Scalar-valued forms are the terms with empty env word.
pub type Form = GForm;

impl GForm {
    pub fn zero(n: usize, trunc: usize) -> Self {
        GForm { n, trunc, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, trunc: usize) -> Self {
        Self::function(DPPoly::one(n), trunc)
    }

    /// A 0-form with empty env word.
    pub fn function(f: DPPoly, trunc: usize) -> Self {
        let mut g = Self::zero(f.nvars(), trunc);
        g.add_term(Vec::new(), 0, f);
        g
    }

    /// The 1-form `dx_i`.
    pub fn dx(n: usize, i: usize, trunc: usize) -> Self {
        let mut g = Self::zero(n, trunc);
        g.add_term(Vec::new(), 1 << i, DPPoly::one(n));
        g
    }

    /// A single term `v (x) f dx_S`; `dx` lists the indices of `S` in any order.
    pub fn term(n: usize, trunc: usize, env: Word, dx: &[usize], f: DPPoly) -> Result<Self> {
        if f.nvars() != n {
            return Err(Error::VariableCount { expected: n, found: f.nvars() });
        }
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in dx {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
            match wedge_sign(mask, 1 << i) {
                Some(s) => sign *= s,
                None => return Ok(Self::zero(n, trunc)),
            }
            mask |= 1 << i;
        }
        let mut g = Self::zero(n, trunc);
        g.add_term(env, mask, if sign < 0 { f.neg() } else { f });
        Ok(g)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32, &DPPoly)> {
        self.terms.iter().map(|((w, m), f)| (w, *m, f))
    }

    /// Adds `v (x) f dx_mask`, dropping words longer than the truncation.
    pub fn add_term(&mut self, env: Word, mask: u32, f: DPPoly) {
        if f.is_zero() || env.len() > self.trunc {
            return;
        }
        let key = (env, mask);
        match self.terms.get_mut(&key) {
            Some(g) => {
                *g = g.add(&f);
                if g.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, f);
            }
        }
    }

    pub fn add(&self, other: &GForm) -> GForm {
        let mut r = self.clone();
        for ((w, m), f) in &other.terms {
            r.add_term(w.clone(), *m, f.clone());
        }
        r
    }

    pub fn sub(&self, other: &GForm) -> GForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GForm {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        if k.is_zero() {
            return r;
        }
        for ((w, m), f) in &self.terms {
            r.add_term(w.clone(), *m, f.scale(k));
        }
        r
    }

    /// Multiplies every coefficient by a 0-form from the left.
    pub fn mul_function(&self, g: &DPPoly) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), f) in &self.terms {
            r.add_term(w.clone(), *m, g.mul(f));
        }
        r
    }

    /// `e . a` for an env element `e`, with no sign since `e` has form degree 0.
    pub fn env_mul_left(&self, e: &EnvElement) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for (v, c) in &e.terms {
            for ((w, m), f) in &self.terms {
                let mut word = v.clone();
                word.extend_from_slice(w);
                r.add_term(word, *m, f.scale(c));
            }
        }
        r
    }

    /// Keeps the terms whose dx mask satisfies a predicate.
    pub fn filter_mask(&self, keep: impl Fn(u32) -> bool) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), f) in &self.terms {
            if keep(*m) {
                r.add_term(w.clone(), *m, f.clone());
            }
        }
        r
    }

    /// Applies a linear map to each env word.
    pub fn map_env(&self, f: impl Fn(&Word) -> EnvElement) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), p) in &self.terms {
            for (w2, c) in f(w).terms {
                r.add_term(w2, *m, p.scale(&c));
            }
        }
        r
    }

    /// The same form with a different word-length cap.
    pub fn retruncate(&self, trunc: usize) -> GForm {
        let mut r = GForm::zero(self.n, trunc);
        for ((w, m), f) in &self.terms {
            r.add_term(w.clone(), *m, f.clone());
        }
        r
    }

    /// Whether every term has the empty env word.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|(w, _)| w.is_empty())
    }

    /// The set of bidegrees `(p, q)` occurring.
    pub fn bidegrees(&self) -> BTreeSet<(i32, u32)> {
        self.terms.keys().map(|(w, m)| (word_degree(w), m.count_ones())).collect()
    }

    /// The total degree `q - p` when the form is homogeneous.
    pub fn total_degree(&self) -> Option<i32> {
        let degs: BTreeSet<i32> = self.bidegrees().iter().map(|(p, q)| *q as i32 - p).collect();
        if degs.len() == 1 {
            degs.into_iter().next()
        } else {
            None
        }
    }

    /// The form degree `q` when all terms share it.
    pub fn form_degree(&self) -> Option<u32> {
        let degs: BTreeSet<u32> = self.terms.keys().map(|(_, m)| m.count_ones()).collect();
        if degs.len() == 1 {
            degs.into_iter().next()
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &GForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCount { expected: self.n, found: other.n });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    /// `(v1 (x) w1) ^ (v2 (x) w2) = (-1)^{q1 p2} (v1 v2) (x) (w1 ^ w2)`.
    pub fn wedge(&self, other: &GForm) -> Result<GForm> {
        self.check_compatible(other)?;
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w1, m1), f1) in &self.terms {
            let q1 = m1.count_ones() as i32;
            for ((w2, m2), f2) in &other.terms {
                if w1.len() + w2.len() > self.trunc {
                    continue;
                }
                let Some(mut sign) = wedge_sign(*m1, *m2) else { continue };
                if parity(q1) && parity(word_degree(w2)) {
                    sign = -sign;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let f = f1.mul(f2);
                r.add_term(w, m1 | m2, if sign < 0 { f.neg() } else { f });
            }
        }
        Ok(r)
    }

    /// `d(v (x) w) = v (x) dw`.
    pub fn d(&self) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), f) in &self.terms {
            for i in 1..=self.n {
                if m >> i & 1 == 1 {
                    continue;
                }
                let df = f.partial(i).expect("index in range");
                if df.is_zero() {
                    continue;
                }
                let below = (m & ((1u32 << i) - 1)).count_ones();
                r.add_term(w.clone(), m | 1 << i, if below.is_multiple_of(2) { df } else { df.neg() });
            }
        }
        r
    }

    /// `d(v (x) w) = (-1)^{deg v} v (x) dw`, the Koszul-consistent variant.
    pub fn d_koszul(&self) -> GForm {
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), f) in &self.terms {
            let mut single = GForm::zero(self.n, self.trunc);
            single.add_term(w.clone(), *m, f.clone());
            let d = single.d();
            r = r.add(&if parity(word_degree(w)) { d.neg() } else { d });
        }
        r
    }

    /// Pullback along an order-preserving `alpha: [m] -> [n]`.
    pub fn pullback(&self, alpha: &[usize]) -> Result<GForm> {
        let map = pullback_map(alpha, self.n)?;
        Ok(self.pullback_by(alpha.len() - 1, &map))
    }

    /// Pullback along the substitution `x_i -> map[i-1]`, sending `dx_i` to `dx_j`
    /// when `x_i -> x_j` and to 0 when `x_i` goes to `theta` or `0`.
    pub fn pullback_by(&self, m: usize, map: &[Bound]) -> GForm {
        let mut r = GForm::zero(m, self.trunc);
        for ((w, mask), f) in &self.terms {
            let mut new_mask = 0u32;
            let mut sign = 1;
            let mut ok = true;
            for i in mask_indices(*mask) {
                match map[i - 1] {
                    Bound::Var(j) => match wedge_sign(new_mask, 1 << j) {
                        Some(s) => {
                            sign *= s;
                            new_mask |= 1 << j;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    },
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let g = f.substitute_unchecked(m, map);
            r.add_term(w.clone(), new_mask, if sign < 0 { g.neg() } else { g });
        }
        r
    }

    /// Interior product with the dual of `dx_i`, acting on the form factor.
    pub fn contract(&self, i: usize) -> Result<GForm> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        let mut r = GForm::zero(self.n, self.trunc);
        for ((w, m), f) in &self.terms {
            if m >> i & 1 == 0 {
                continue;
            }
            let below = (m & ((1u32 << i) - 1)).count_ones();
            r.add_term(w.clone(), m & !(1 << i), if below.is_multiple_of(2) { f.clone() } else { f.neg() });
        }
        Ok(r)
    }

    /// The coefficient of `v (x) dx_mask`.
    pub fn coefficient(&self, env: &Word, mask: u32) -> DPPoly {
        self.terms.get(&(env.clone(), mask)).cloned().unwrap_or_else(|| DPPoly::zero(self.n))
    }
}

impl fmt::Display for GForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((w, m), p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[")?;
            for (j, l) in w.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", l.gens)?;
            }
            write!(f, "]({})", p)?;
            for i in mask_indices(*m) {
                write!(f, " dx{}", i)?;
            }
        }
        Ok(())
    }
}
