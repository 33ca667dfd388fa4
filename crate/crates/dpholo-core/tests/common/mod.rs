#![allow(dead_code)]

use dpholo_core::derham::GForm;
use dpholo_core::dpalg::{DPPoly, Monomial};
use dpholo_core::linfty::{Letter, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Divided-power polynomials with degree at most `deg` and coefficients in `[-9, 9]`.
pub fn poly(nvars: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = DPPoly> {
    let slots = nvars + 1;
    prop::collection::vec((prop::collection::vec(0..=deg, slots), -9i64..=9), 0..=max_terms).prop_map(move |terms| {
        let mut f = DPPoly::zero(nvars);
        for (mut e, c) in terms {
            while e.iter().sum::<u32>() > deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            f.add_term(Monomial(e), BigInt::from(c));
        }
        f
    })
}

/// Words of length at most `max_len` over letters of degrees 1 and 2.
pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    let letters = vec![Letter { gens: vec![0], deg: 1 }, Letter { gens: vec![1], deg: 1 }, Letter { gens: vec![0, 1], deg: 2 }];
    prop::collection::vec(prop::sample::select(letters), 0..=max_len)
}

/// Forms on `Delta^nvars` with a few random terms.
pub fn gform(nvars: usize, trunc: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = GForm> {
    let masks = 1u32 << nvars;
    prop::collection::vec((word(trunc), 0..masks, poly(nvars, deg, 3)), 1..=max_terms).prop_map(move |terms| {
        let mut g = GForm::zero(nvars, trunc);
        for (w, m, f) in terms {
            g.add_term(w, m << 1, f);
        }
        g
    })
}

/// Homogeneous forms on `Delta^nvars` of total degree `t` (form degree minus env degree).
pub fn homogeneous(nvars: usize, trunc: usize, t: i32, deg: u32, max_terms: usize) -> impl Strategy<Value = GForm> {
    gform(nvars, trunc, deg, max_terms * 3).prop_map(move |g| {
        let mut out = GForm::zero(nvars, trunc);
        for (w, m, f) in g.terms() {
            let p: i32 = w.iter().map(|l| l.deg).sum();
            if m.count_ones() as i32 - p == t {
                out.add_term(w.clone(), m, f.clone());
            }
        }
        out
    })
}

/// Pure forms whose env is a single fixed word of the given letters.
pub fn with_env(nvars: usize, trunc: usize, env: Word, q: u32, deg: u32) -> impl Strategy<Value = GForm> {
    prop::collection::vec((0u32..(1 << nvars), poly(nvars, deg, 3)), 1..=3).prop_map(move |terms| {
        let mut out = GForm::zero(nvars, trunc);
        for (m, f) in terms {
            if m.count_ones() == q {
                out.add_term(env.clone(), m << 1, f);
            }
        }
        out
    })
}
