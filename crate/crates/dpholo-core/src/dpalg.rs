//! Divided power polynomial algebras `Z<theta, x_1, ..., x_n>`.
//!
//! A monomial `theta^[N_0] x_1^[N_1] ... x_n^[N_n]` is stored as its exponent
//! vector, with slot 0 holding the exponent of `theta`.  Products follow
//! `x^[M] x^[N] = C(M+N, M) x^[M+N]` in every slot.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    if n <= 100 {
        let mut acc: u128 = 1;
        for i in 1..=k as u128 {
            acc = acc * (n as u128 - k as u128 + i) / i;
        }
        return BigInt::from(acc);
    }
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Exponent vector of a divided power monomial; slot 0 is `theta`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The unit monomial over `nvars` non-theta variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars + 1])
    }

    /// `x_i^[power]`, where `i = 0` means `theta`.
    pub fn var_power(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars + 1];
        e[i] = power;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Product of two monomials: returns the integer multiplier and the new exponents.
    pub fn mul(&self, other: &Monomial) -> (BigInt, Monomial) {
        let mut c = BigInt::one();
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if *a != 0 && *b != 0 {
                c *= binomial(a + b, *a);
            }
            e.push(a + b);
        }
        (c, Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0)).then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Where a variable is sent by a substitution, and the bounds of a definite integral.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Bound {
    Theta,
    Var(usize),
    Zero,
}

impl Bound {
    /// Reads index `0` as `theta` and `nvars + 1` as the constant `0`.
    pub fn from_index(i: usize, nvars: usize) -> Bound {
        if i == 0 {
            Bound::Theta
        } else if i > nvars {
            Bound::Zero
        } else {
            Bound::Var(i)
        }
    }

    fn slot(self) -> Option<usize> {
        match self {
            Bound::Theta => Some(0),
            Bound::Var(i) => Some(i),
            Bound::Zero => None,
        }
    }
}

/// An element of `Z<theta, x_1, ..., x_n>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DPPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl DPPoly {
    pub fn zero(nvars: usize) -> Self {
        DPPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(BigInt::one(), Monomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), Monomial::one(nvars))
    }

    pub fn monomial(c: BigInt, m: Monomial) -> Self {
        let mut p = DPPoly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// `x_i^[power]`; `i = 0` gives a power of `theta`.
    pub fn var_power(nvars: usize, i: usize, power: u32) -> Self {
        Self::monomial(BigInt::one(), Monomial::var_power(nvars, i, power))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_power(nvars, i, 1)
    }

    pub fn theta(nvars: usize) -> Self {
        Self::var(nvars, 0)
    }

    /// `b^[power]` for a bound `b`, with `0^[0] = 1` and `0^[N] = 0` otherwise.
    pub fn bound_power(nvars: usize, b: Bound, power: u32) -> Self {
        match b.slot() {
            Some(i) => Self::var_power(nvars, i, power),
            None if power == 0 => Self::one(nvars),
            None => Self::zero(nvars),
        }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, Vec<u32>)>,
        C: Into<BigInt>,
    {
        let mut p = DPPoly::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars + 1 {
                return Err(Error::VariableCount { expected: nvars, found: e.len().saturating_sub(1) });
            }
            p.add_term(Monomial(e), c.into());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest total degree of a term, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &DPPoly, k: &BigInt) {
        debug_assert_eq!(self.nvars, other.nvars);
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn add(&self, other: &DPPoly) -> DPPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &BigInt::one());
        r
    }

    pub fn sub(&self, other: &DPPoly) -> DPPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-BigInt::one());
        r
    }

    pub fn neg(&self) -> DPPoly {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> DPPoly {
        let mut r = DPPoly::zero(self.nvars);
        r.add_assign_scaled(self, k);
        r
    }

    /// The divided power product.
    pub fn mul(&self, other: &DPPoly) -> DPPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut r = DPPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (k, m) = m1.mul(m2);
                r.add_term(m, k * c1 * c2);
            }
        }
        r
    }

    /// The divided power product, rejecting mismatched variable counts.
    pub fn try_mul(&self, other: &DPPoly) -> Result<DPPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: other.nvars });
        }
        Ok(self.mul(other))
    }

    /// The algebra morphism sending `x_i` to `map[i - 1]` and fixing `theta`,
    /// landing in a ring with `target_nvars` variables.
    pub fn substitute(&self, target_nvars: usize, map: &[Bound]) -> Result<DPPoly> {
        if map.len() != self.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: map.len() });
        }
        for b in map {
            if let Bound::Var(j) = b {
                if *j == 0 || *j > target_nvars {
                    return Err(Error::IndexOutOfRange { index: *j, bound: target_nvars });
                }
            }
        }
        Ok(self.substitute_unchecked(target_nvars, map))
    }

    /// Substitution given on every slot including `theta`, which must be fixed.
    pub fn substitute_all(&self, target_nvars: usize, map: &[Bound]) -> Result<DPPoly> {
        match map.first() {
            Some(Bound::Theta) => self.substitute(target_nvars, &map[1..]),
            Some(_) => Err(Error::ThetaMoved),
            None => Err(Error::VariableCount { expected: self.nvars, found: 0 }),
        }
    }

    pub(crate) fn substitute_unchecked(&self, target_nvars: usize, map: &[Bound]) -> DPPoly {
        let mut r = DPPoly::zero(target_nvars);
        'terms: for (m, c) in &self.terms {
            let mut e = vec![0u32; target_nvars + 1];
            let mut k = c.clone();
            e[0] = m.0[0];
            for (i, &n) in m.0.iter().enumerate().skip(1) {
                if n == 0 {
                    continue;
                }
                match map[i - 1].slot() {
                    None => continue 'terms,
                    Some(j) => {
                        if e[j] != 0 {
                            k *= binomial(e[j] + n, n);
                        }
                        e[j] += n;
                    }
                }
            }
            r.add_term(Monomial(e), k);
        }
        r
    }

    /// `eps_{i, b}`: replaces `x_i` by the bound `b` and fixes every other variable.
    pub fn replace_var(&self, i: usize, b: Bound) -> DPPoly {
        let map: Vec<Bound> = (1..=self.nvars).map(|j| if j == i { b } else { Bound::Var(j) }).collect();
        self.substitute_unchecked(self.nvars, &map)
    }

    /// Pullback along an order-preserving `alpha: [m] -> [n]` given by its values.
    pub fn ordinal_pullback(&self, alpha: &[usize]) -> Result<DPPoly> {
        let map = pullback_map(alpha, self.nvars)?;
        Ok(self.substitute_unchecked(alpha.len() - 1, &map))
    }

    /// The derivation `d/dx_i`.
    pub fn partial(&self, i: usize) -> Result<DPPoly> {
        if i == 0 || i > self.nvars {
            return Err(Error::IndexOutOfRange { index: i, bound: self.nvars });
        }
        let mut r = DPPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                r.add_term(Monomial(e), c.clone());
            }
        }
        Ok(r)
    }

    /// The definite integral of `self dx_i` from `lower` to `upper`.
    pub fn definite_integral(&self, i: usize, lower: Bound, upper: Bound) -> Result<DPPoly> {
        if i == 0 || i > self.nvars {
            return Err(Error::IndexOutOfRange { index: i, bound: self.nvars });
        }
        for b in [lower, upper] {
            if let Bound::Var(j) = b {
                if j == 0 || j > self.nvars {
                    return Err(Error::IndexOutOfRange { index: j, bound: self.nvars });
                }
            }
        }
        Ok(self.definite_integral_unchecked(i, lower, upper))
    }

    pub(crate) fn definite_integral_unchecked(&self, i: usize, lower: Bound, upper: Bound) -> DPPoly {
        let mut r = DPPoly::zero(self.nvars);
        if lower == upper {
            return r;
        }
        for (m, c) in &self.terms {
            let n = m.0[i];
            let mut e = m.0.clone();
            e[i] = 0;
            let rest = Monomial(e);
            for (b, sign) in [(upper, 1), (lower, -1)] {
                if let Some(j) = b.slot() {
                    let (k, prod) = rest.mul(&Monomial::var_power(self.nvars, j, n + 1));
                    let k = if sign < 0 { -k } else { k };
                    r.add_term(prod, k * c);
                }
            }
        }
        r
    }

    /// Whether `x_i` occurs in some term.
    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Relabels into a ring with more (or equally many) variables via an index map.
    pub fn relabel(&self, target_nvars: usize, map: &[usize]) -> DPPoly {
        let bounds: Vec<Bound> = map.iter().map(|&j| Bound::from_index(j, target_nvars)).collect();
        self.substitute_unchecked(target_nvars, &bounds)
    }

    /// Largest absolute coefficient, used by generators and reports.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// The variable substitution realising the pullback along `alpha: [m] -> [n]`:
/// `x_i` goes to `x_j` with `j` the least index such that `alpha(j) >= i`,
/// to `theta` when that index is 0, and to `0` when `alpha(m) < i`.
pub fn pullback_map(alpha: &[usize], n: usize) -> Result<Vec<Bound>> {
    if alpha.is_empty() {
        return Err(Error::NotOrderPreserving);
    }
    if alpha.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotOrderPreserving);
    }
    if alpha.iter().any(|&a| a > n) {
        return Err(Error::IndexOutOfRange { index: *alpha.iter().max().unwrap(), bound: n });
    }
    Ok((1..=n)
        .map(|i| match alpha.iter().position(|&a| a >= i) {
            None => Bound::Zero,
            Some(0) => Bound::Theta,
            Some(j) => Bound::Var(j),
        })
        .collect())
}

fn write_var(f: &mut fmt::Formatter<'_>, i: usize, n: u32) -> fmt::Result {
    let name = if i == 0 { alloc::string::String::from("t") } else { alloc::format!("x{}", i) };
    if n == 1 {
        write!(f, "{}", name)
    } else {
        write!(f, "{}^[{}]", name, n)
    }
}

impl fmt::Display for DPPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let unit = m.degree() == 0;
            if !a.is_one() || unit {
                write!(f, "{}", a)?;
            }
            let mut first = a.is_one();
            for (i, &n) in m.0.iter().enumerate() {
                if n > 0 {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write_var(f, i, n)?;
                }
            }
        }
        Ok(())
    }
}

/// Rational-coefficient ordinary polynomials, the target of the canonical
/// embedding `x^[N] -> x^N / N!`.  Used as an independent oracle.
pub mod rational {
    use super::*;
    use num_rational::BigRational;

    #[derive(Clone, PartialEq, Eq, Debug)]
    pub struct RatPoly {
        pub nvars: usize,
        pub terms: BTreeMap<Vec<u32>, BigRational>,
    }

    fn factorial(n: u32) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }

    impl RatPoly {
        pub fn zero(nvars: usize) -> Self {
            RatPoly { nvars, terms: BTreeMap::new() }
        }

        pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
            if c.is_zero() {
                return;
            }
            let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&e);
            }
        }

        pub fn add(&self, other: &RatPoly) -> RatPoly {
            let mut r = self.clone();
            for (e, c) in &other.terms {
                r.add_term(e.clone(), c.clone());
            }
            r
        }

        pub fn sub(&self, other: &RatPoly) -> RatPoly {
            let mut r = self.clone();
            for (e, c) in &other.terms {
                r.add_term(e.clone(), -c.clone());
            }
            r
        }

        pub fn mul(&self, other: &RatPoly) -> RatPoly {
            let mut r = RatPoly::zero(self.nvars);
            for (e1, c1) in &self.terms {
                for (e2, c2) in &other.terms {
                    let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    r.add_term(e, c1 * c2);
                }
            }
            r
        }

        /// Ordinary antiderivative in `x_i` evaluated between two bounds.
        pub fn definite_integral(&self, i: usize, lower: Bound, upper: Bound) -> RatPoly {
            let mut r = RatPoly::zero(self.nvars);
            for (e, c) in &self.terms {
                let n = e[i];
                let c = c / BigRational::from_integer(BigInt::from(n + 1));
                for (b, s) in [(upper, 1i32), (lower, -1i32)] {
                    if let Some(j) = b.slot() {
                        let mut e2 = e.clone();
                        e2[i] = 0;
                        e2[j] += n + 1;
                        let v = if s > 0 { c.clone() } else { -c.clone() };
                        r.add_term(e2, v);
                    }
                }
            }
            r
        }

        /// Ordinary partial derivative in `x_i`.
        pub fn partial(&self, i: usize) -> RatPoly {
            let mut r = RatPoly::zero(self.nvars);
            for (e, c) in &self.terms {
                if e[i] > 0 {
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    r.add_term(e2, c * BigRational::from_integer(BigInt::from(e[i])));
                }
            }
            r
        }
    }

    /// The canonical embedding into rational polynomials.
    pub fn to_rational(f: &DPPoly) -> RatPoly {
        let mut r = RatPoly::zero(f.nvars());
        for (m, c) in f.terms() {
            let den = m.exps().iter().fold(BigInt::one(), |acc, &n| acc * factorial(n));
            r.add_term(m.exps().to_vec(), BigRational::new(c.clone(), den));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::rational::to_rational;
    use super::*;

    fn p(nvars: usize, terms: &[(i64, &[u32])]) -> DPPoly {
        DPPoly::from_terms(nvars, terms.iter().map(|(c, e)| (*c, e.to_vec()))).unwrap()
    }

    #[test]
    fn square_of_a_variable_doubles() {
        let x = DPPoly::var(1, 1);
        assert_eq!(x.mul(&x), p(1, &[(2, &[0, 2])]));
    }

    #[test]
    fn product_of_powers_uses_binomials() {
        let a = DPPoly::var_power(1, 1, 2);
        let b = DPPoly::var_power(1, 1, 3);
        let prod = a.mul(&b);
        assert_eq!(prod, p(1, &[(10, &[0, 5])]));
        assert_eq!(to_rational(&prod), to_rational(&a).mul(&to_rational(&b)));
    }

    #[test]
    fn unit_is_neutral() {
        let f = p(2, &[(3, &[1, 0, 2]), (-1, &[0, 1, 1])]);
        assert_eq!(DPPoly::one(2).mul(&f), f);
    }

    #[test]
    fn substitution_examples() {
        let f = DPPoly::var_power(2, 1, 2);
        assert_eq!(f.substitute(2, &[Bound::Var(2), Bound::Var(2)]).unwrap(), DPPoly::var_power(2, 2, 2));
        let g = p(2, &[(3, &[0, 2, 0]), (1, &[0, 0, 1])]);
        assert_eq!(g.substitute(2, &[Bound::Zero, Bound::Var(2)]).unwrap(), DPPoly::var(2, 2));
        let h = p(2, &[(1, &[0, 1, 1])]);
        assert_eq!(h.substitute(2, &[Bound::Var(2), Bound::Var(2)]).unwrap(), p(2, &[(2, &[0, 0, 2])]));
    }

    #[test]
    fn substitution_rejects_bad_targets() {
        let f = DPPoly::var(1, 1);
        assert!(f.substitute(1, &[Bound::Var(2)]).is_err());
        assert!(f.substitute(1, &[]).is_err());
    }

    #[test]
    fn substitution_must_fix_theta() {
        let f = DPPoly::var(1, 1);
        assert_eq!(f.substitute_all(1, &[Bound::Var(1), Bound::Var(1)]), Err(Error::ThetaMoved));
        assert_eq!(f.substitute_all(1, &[Bound::Theta, Bound::Zero]).unwrap(), DPPoly::zero(1));
    }

    #[test]
    fn pullback_examples() {
        let f = DPPoly::var_power(1, 1, 3);
        assert_eq!(f.ordinal_pullback(&[1]).unwrap(), DPPoly::var_power(0, 0, 3));
        assert_eq!(f.ordinal_pullback(&[0]).unwrap(), DPPoly::zero(0));
        let g = DPPoly::var_power(1, 1, 2);
        assert_eq!(g.ordinal_pullback(&[0, 0, 1]).unwrap(), DPPoly::var_power(2, 2, 2));
        assert!(g.ordinal_pullback(&[1, 0]).is_err());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(DPPoly::var_power(1, 1, 3).partial(1).unwrap(), DPPoly::var_power(1, 1, 2));
        assert_eq!(DPPoly::var_power(1, 0, 2).partial(1).unwrap(), DPPoly::zero(1));
        let f = p(2, &[(1, &[0, 1, 2])]);
        assert_eq!(f.partial(2).unwrap(), p(2, &[(1, &[0, 1, 1])]));
        assert!(f.partial(3).is_err());
        assert!(f.partial(0).is_err());
    }

    #[test]
    fn integral_examples() {
        let one = DPPoly::one(1);
        assert_eq!(one.definite_integral(1, Bound::Zero, Bound::Theta).unwrap(), DPPoly::theta(1));
        let x2 = DPPoly::var(2, 2);
        assert_eq!(x2.definite_integral(1, Bound::Zero, Bound::Var(2)).unwrap(), p(2, &[(2, &[0, 0, 2])]));
        let f = p(2, &[(5, &[1, 1, 2])]);
        assert!(f.definite_integral(2, Bound::Var(1), Bound::Var(1)).unwrap().is_zero());
    }

    #[test]
    fn rational_embedding_examples() {
        use num_rational::BigRational;
        let r = to_rational(&DPPoly::var_power(1, 1, 2));
        assert_eq!(r.terms.get(&vec![0, 2]), Some(&BigRational::new(1.into(), 2.into())));
        let t = to_rational(&DPPoly::theta(1));
        assert_eq!(t.terms.get(&vec![1, 0]), Some(&BigRational::from_integer(1.into())));
        let r2 = to_rational(&p(1, &[(2, &[0, 2])]));
        assert_eq!(r2.terms.get(&vec![0, 2]), Some(&BigRational::from_integer(1.into())));
    }

    #[test]
    fn binomials_agree_across_paths() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(5, 7), BigInt::zero());
        let big = binomial(130, 65);
        let mut pascal = vec![BigInt::one()];
        for _ in 0..130 {
            let mut next = vec![BigInt::one()];
            for w in pascal.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            pascal = next;
        }
        assert_eq!(big, pascal[65]);
    }

    #[test]
    fn display_is_readable() {
        let f = p(2, &[(2, &[1, 0, 0]), (-1, &[0, 2, 0]), (1, &[0, 0, 0])]);
        assert_eq!(alloc::format!("{}", f), "1 + 2*t - x1^[2]");
    }
}
