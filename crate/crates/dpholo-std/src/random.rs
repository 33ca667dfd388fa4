//! Seeded generators for polynomials, env words, forms, ordinal maps and the
//! two fixture algebras used by the randomized suites.

use dpholo_core::derham::GForm;
use dpholo_core::dpalg::{DPPoly, Monomial};
use dpholo_core::linfty::{Combination, Generator, LInftyAlgebra, Letter, Word};
use dpholo_core::ordinal::OrdMap;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The abelian algebra on `e` and `f`, both in degree 1.
pub fn abelian_rank2() -> LInftyAlgebra {
    LInftyAlgebra::abelian(vec![gen("e", 1), gen("f", 1)]).expect("positive degrees")
}

/// The abelian algebra on a single generator `e` in degree 1.
pub fn abelian_rank1() -> LInftyAlgebra {
    LInftyAlgebra::abelian(vec![gen("e", 1)]).expect("positive degrees")
}

/// The dg Lie algebra `[a, b] = c` with `|a| = |b| = 1` and `|c| = 2`.
pub fn nilpotent_rank3() -> LInftyAlgebra {
    let one: Combination = vec![(BigInt::from(1), 2)];
    LInftyAlgebra::from_dg_lie(vec![gen("a", 1), gen("b", 1), gen("c", 2)], vec![], vec![((0, 1), one)]).expect("the Heisenberg bracket satisfies the axioms")
}

/// The dg Lie algebra with `d y = x`, `|x| = 1`, `|y| = 2`, and `[x, x] = 0`.
pub fn acyclic_pair() -> LInftyAlgebra {
    LInftyAlgebra::from_dg_lie(vec![gen("x", 1), gen("y", 2)], vec![(1, vec![(BigInt::from(1), 0)])], vec![]).expect("an acyclic pair is a dg Lie algebra")
}

fn gen(name: &str, deg: i32) -> Generator {
    Generator { name: name.to_string(), deg }
}

/// The letters used for random env words: every generator and every
/// weight-2 monomial of letter degree at most 3.
pub fn letters_of(g: &LInftyAlgebra) -> Vec<Letter> {
    g.letters(2, 3)
}

/// A reproducible source of random test data.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A polynomial with at most `max_terms` terms, total degree at most
    /// `max_deg` counting theta, and coefficients in `[-max_coeff, max_coeff]`.
    pub fn poly(&mut self, nvars: usize, max_deg: u32, max_coeff: i64, max_terms: usize) -> DPPoly {
        let mut f = DPPoly::zero(nvars);
        let count = self.range(1, max_terms.max(1));
        for _ in 0..count {
            let mut e = vec![0u32; nvars + 1];
            let deg = self.rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                let i = self.below(nvars + 1);
                e[i] += 1;
            }
            let c = self.rng.gen_range(-max_coeff..=max_coeff);
            let m = Monomial(e);
            if f.coeff(&m).is_zero() {
                f.add_term(m, BigInt::from(c));
            }
        }
        f
    }

    pub fn word(&mut self, letters: &[Letter], max_len: usize) -> Word {
        let len = self.range(0, max_len);
        (0..len).map(|_| letters[self.below(letters.len())].clone()).collect()
    }

    /// A mask of `q` distinct differentials among `dx_1 .. dx_n`.
    pub fn mask(&mut self, n: usize, q: usize) -> u32 {
        let mut idx: Vec<usize> = (1..=n).collect();
        let mut m = 0u32;
        for _ in 0..q.min(n) {
            let k = self.below(idx.len());
            m |= 1 << idx.remove(k);
        }
        m
    }

    /// A form with random words, form degrees and polynomial coefficients.
    pub fn form(&mut self, n: usize, trunc: usize, letters: &[Letter], max_word: usize, max_deg: u32, max_terms: usize) -> GForm {
        let mut w = GForm::zero(n, trunc);
        let count = self.range(1, max_terms.max(1));
        for _ in 0..count {
            let word = self.word(letters, max_word.min(trunc));
            let q = self.range(0, n);
            let m = self.mask(n, q);
            let f = self.poly(n, max_deg, 9, 3);
            w.add_term(word, m, f);
        }
        w
    }

    /// A form of total degree `t`: every term has form degree minus env
    /// degree equal to `t`.  Terms that cannot reach `t` are skipped.
    pub fn homogeneous(&mut self, n: usize, trunc: usize, letters: &[Letter], t: i32, max_deg: u32, max_terms: usize) -> GForm {
        let mut w = GForm::zero(n, trunc);
        for _ in 0..4 * max_terms {
            if w.len() >= max_terms {
                break;
            }
            let word = self.word(letters, trunc);
            let p: i32 = word.iter().map(|l| l.deg).sum();
            let q = t + p;
            if q < 0 || q as usize > n {
                continue;
            }
            let m = self.mask(n, q as usize);
            let f = self.poly(n, max_deg, 9, 3);
            w.add_term(word, m, f);
        }
        w
    }

    /// A form on `Delta^{n+r}` whose terms carry all or all but one of the
    /// fiber differentials `dx_{n+1} .. dx_{n+r}` and random base differentials,
    /// so that fiber integrals rarely vanish for trivial reasons.
    #[allow(clippy::too_many_arguments)]
    pub fn fiber_form(&mut self, n: usize, r: usize, trunc: usize, letters: &[Letter], max_word: usize, max_deg: u32, max_terms: usize) -> GForm {
        let k = n + r;
        let mut w = GForm::zero(k, trunc);
        for _ in 0..self.range(1, max_terms.max(1)) {
            let word = self.word(letters, max_word.min(trunc));
            let q = self.range(0, n);
            let mut m = self.mask(n, q);
            let skip = if r > 0 && self.coin() { Some(n + 1 + self.below(r)) } else { None };
            for j in n + 1..=k {
                if Some(j) != skip {
                    m |= 1 << j;
                }
            }
            let f = self.poly(k, max_deg, 9, 3);
            w.add_term(word, m, f);
        }
        w
    }

    /// A form whose env is the fixed word `env` and whose form degree is `q`.
    pub fn with_env(&mut self, n: usize, trunc: usize, env: &[Letter], q: usize, max_deg: u32) -> GForm {
        let mut w = GForm::zero(n, trunc);
        for _ in 0..self.range(1, 3) {
            let m = self.mask(n, q);
            w.add_term(env.to_vec(), m, self.poly(n, max_deg, 9, 3));
        }
        w
    }

    /// A uniformly chosen order-preserving map `[m] -> [n]`.
    pub fn ordinal_map(&mut self, m: usize, n: usize) -> OrdMap {
        let mut v: Vec<usize> = (0..=m).map(|_| self.range(0, n)).collect();
        v.sort_unstable();
        v
    }

    /// A monotone table `[n] x [r] -> [k]` of the form `min(k, f(a) + g(b))`.
    pub fn monotone_table(&mut self, n: usize, r: usize, k: usize) -> Vec<Vec<usize>> {
        let f = self.ordinal_map(n, k);
        let g = self.ordinal_map(r, k);
        (0..=n).map(|a| (0..=r).map(|b| (f[a] + g[b]).min(k)).collect()).collect()
    }
}
