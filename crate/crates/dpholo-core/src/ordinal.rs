//! Order-preserving maps between finite ordinals `[m] = {0, ..., m}`.
//!
//! A map `[m] -> [n]` is stored as the vector of its values.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An order-preserving map given by its values `alpha(0), ..., alpha(m)`.
pub type OrdMap = Vec<usize>;

pub fn identity(n: usize) -> OrdMap {
    (0..=n).collect()
}

/// The coface `delta_i: [n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> OrdMap {
    (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// The codegeneracy `sigma_i: [n+1] -> [n]` hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> OrdMap {
    (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

pub fn is_monotone(alpha: &[usize]) -> bool {
    alpha.windows(2).all(|w| w[0] <= w[1])
}

pub fn is_injective(alpha: &[usize]) -> bool {
    alpha.windows(2).all(|w| w[0] < w[1])
}

pub fn is_surjective(alpha: &[usize], n: usize) -> bool {
    is_monotone(alpha) && alpha.first() == Some(&0) && alpha.last() == Some(&n) && alpha.windows(2).all(|w| w[1] - w[0] <= 1)
}

/// Checks that `alpha` is an order-preserving map into `[n]`.
pub fn validate(alpha: &[usize], n: usize) -> Result<()> {
    if alpha.is_empty() || !is_monotone(alpha) {
        return Err(Error::NotOrderPreserving);
    }
    if let Some(&a) = alpha.iter().find(|&&a| a > n) {
        return Err(Error::IndexOutOfRange { index: a, bound: n });
    }
    Ok(())
}

/// `alpha o beta`, i.e. first `beta` then `alpha`.
pub fn compose(alpha: &[usize], beta: &[usize]) -> OrdMap {
    beta.iter().map(|&j| alpha[j]).collect()
}

/// Factors `alpha = mono o epi` with `epi` surjective and `mono` injective.
pub fn epi_mono(alpha: &[usize]) -> (OrdMap, OrdMap) {
    let mut mono: OrdMap = Vec::new();
    let mut epi = Vec::with_capacity(alpha.len());
    for &a in alpha {
        if mono.last() != Some(&a) {
            mono.push(a);
        }
        epi.push(mono.len() - 1);
    }
    (epi, mono)
}

/// All order-preserving maps `[m] -> [n]` in lexicographic order.
pub fn all_maps(m: usize, n: usize) -> Vec<OrdMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<OrdMap>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

/// All injective order-preserving maps `[m] -> [n]`.
pub fn all_injections(m: usize, n: usize) -> Vec<OrdMap> {
    all_maps(m, n).into_iter().filter(|a| is_injective(a)).collect()
}

/// All surjective order-preserving maps `[m] -> [n]`.
pub fn all_surjections(m: usize, n: usize) -> Vec<OrdMap> {
    all_maps(m, n).into_iter().filter(|a| is_surjective(a, n)).collect()
}
