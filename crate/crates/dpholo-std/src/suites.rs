//! The verification suites behind `selftest` and the acceptance target.
//!
//! Each numbered criterion bundles a few checks.  A check records how many
//! cases it ran, the failures it saw and whether it covered its whole domain,
//! sampled it at random, or ran with reduced caps.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use dpholo_core::ainfty::*;
use dpholo_core::chains::enumerate_maximal;
use dpholo_core::checks::{self, Report};
use dpholo_core::derham::GForm;
use dpholo_core::dpalg::rational::{to_rational, RatPoly};
use dpholo_core::dpalg::{binomial, DPPoly};
use dpholo_core::holonomy::{self, chain_map_residual, diff_formula_residual, diff_formula_residual_env, hol_at, DegreeMode, Differential};
use dpholo_core::integrate::{boundary_fiberwise_product, fiberwise, stokes_residual, stokes_residual_product};
use dpholo_core::linfty::{LInftyAlgebra, Letter};
use dpholo_core::simplicial::*;
use dpholo_core::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::random::{self, Sampler};

/// How much of its domain a check covered.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coverage {
    Exhaustive,
    Sampled,
    Capped,
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coverage::Exhaustive => "exhaustive",
            Coverage::Sampled => "sampled",
            Coverage::Capped => "capped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub coverage: Coverage,
}

impl Check {
    pub fn new(label: impl Into<String>, coverage: Coverage) -> Self {
        Check { label: label.into(), cases: 0, failures: Vec::new(), coverage }
    }

    pub fn from_report(rep: Report, coverage: Coverage) -> Self {
        Check { label: rep.name.to_string(), cases: rep.cases, failures: rep.failures, coverage }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records a computation that may fail; an error counts as a failure.
    pub fn record_result(&mut self, res: Result<bool>, what: impl FnOnce() -> String) {
        match res {
            Ok(ok) => self.record(ok, what),
            Err(e) => self.record(false, || format!("{}: {e}", what())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub limit: Duration,
    pub elapsed: Duration,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn in_time(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.in_time() && self.checks.iter().all(Check::passed)
    }

    /// The coverage of the weakest check.
    pub fn coverage(&self) -> Coverage {
        let covs: Vec<Coverage> = self.checks.iter().map(|c| c.coverage).collect();
        if covs.contains(&Coverage::Capped) {
            Coverage::Capped
        } else if covs.contains(&Coverage::Sampled) {
            Coverage::Sampled
        } else {
            Coverage::Exhaustive
        }
    }

    /// One summary line, e.g. `PASS [ 1] ... (0.10 s, limit 5 s, exhaustive)`.
    pub fn summary(&self) -> String {
        self.summary_with(true)
    }

    /// The summary line, with or without the run time.  Without it the line
    /// depends only on the seed and the caps.
    pub fn summary_with(&self, timed: bool) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = if timed {
            format!("{status} [{:>2}] {} ({:.2} s, limit {} s, {})", self.id, self.title, self.elapsed.as_secs_f64(), self.limit.as_secs(), self.coverage())
        } else {
            format!("{status} [{:>2}] {} ({})", self.id, self.title, self.coverage())
        };
        if !self.in_time() {
            line.push_str(" over time");
        }
        line
    }

    /// One line per check, with the first failure when there is one.
    pub fn details(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed() { "ok  " } else { "FAIL" };
                let mut s = format!("    {status} {} [{}] {}/{} cases", c.label, c.coverage, c.cases - c.failures.len(), c.cases);
                if let Some(first) = c.failures.first() {
                    s.push_str(&format!("; first failure: {first}"));
                }
                s
            })
            .collect()
    }
}

/// Settings shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    /// Reduced caps; every check is then marked as capped.
    pub quick: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 7, quick: false }
    }
}

impl Settings {
    fn cov(&self, full: Coverage) -> Coverage {
        if self.quick {
            Coverage::Capped
        } else {
            full
        }
    }

    fn pick(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }
}

pub const TITLES: [&str; 10] = [
    "maximal chain counts and brute-force oracle",
    "chain, pullback, square and stability combinatorics",
    "integral identities for divided-power polynomials",
    "Stokes residual on products of simplices",
    "differential of iterated integrals",
    "de Rham chain-map law",
    "holonomy of the constant connection on the interval",
    "square-zero suite",
    "cosimplicial functoriality and nerve validation",
    "holonomy functor commutes with the differentials",
];

const LIMITS: [u64; 10] = [5, 60, 10, 120, 120, 30, 5, 60, 30, 120];

/// Runs criterion `id` (1 to 10).
pub fn run(id: usize, s: &Settings) -> Criterion {
    assert!((1..=10).contains(&id), "criteria are numbered 1 to 10");
    let start = Instant::now();
    let checks = match id {
        1 => chain_counts(s),
        2 => combinatorics(s),
        3 => calculus(s),
        4 => stokes(s),
        5 => iterated(s),
        6 => de_rham(s),
        7 => exponential(s),
        8 => square_zero(s),
        9 => cosimplicial_and_nerve(s),
        _ => holonomy_functor(s),
    };
    Criterion { id, title: TITLES[id - 1], limit: Duration::from_secs(LIMITS[id - 1]), elapsed: start.elapsed(), checks }
}

pub fn run_all(s: &Settings) -> Vec<Criterion> {
    (1..=10).map(|i| run(i, s)).collect()
}

// ---------------------------------------------------------------------------
// 1. Chain counts
// ---------------------------------------------------------------------------

fn chain_counts(s: &Settings) -> Vec<Check> {
    let (max, oracle_max) = (s.pick(5, 3), s.pick(3, 2));
    let mut count = Check::new("enumerate_maximal(n, r) has C(n+r, n) elements", s.cov(Coverage::Exhaustive));
    let mut order = Check::new("chains are maximal, distinct and in lexicographic order", s.cov(Coverage::Exhaustive));
    for n in 0..=max {
        for r in 0..=max {
            let cs = enumerate_maximal(n, r);
            let expected = binomial((n + r) as u32, n as u32);
            count.record(BigInt::from(cs.len()) == expected, || format!("n={n} r={r}: {} vs {expected}", cs.len()));
            let sorted = cs.windows(2).all(|w| w[0].points() < w[1].points());
            order.record(sorted && cs.iter().all(|c| c.is_maximal()), || format!("n={n} r={r}"));
        }
    }
    let mut oracle = Check::new("brute-force oracle agrees element-wise", s.cov(Coverage::Exhaustive));
    for n in 0..=oracle_max {
        for r in 0..=oracle_max {
            let mut brute = checks::all_injective_chains(n, r, n + r);
            brute.sort();
            let ours: Vec<Vec<(usize, usize)>> = enumerate_maximal(n, r).iter().map(|c| c.points().to_vec()).collect();
            oracle.record(ours == brute, || format!("n={n} r={r}: {} vs {} chains", ours.len(), brute.len()));
        }
    }
    vec![count, order, oracle]
}

// ---------------------------------------------------------------------------
// 2. Combinatorics
// ---------------------------------------------------------------------------

fn combinatorics(s: &Settings) -> Vec<Check> {
    let max = s.pick(3, 2);
    let cov = s.cov(Coverage::Exhaustive);
    let mut out: Vec<Check> = checks::chain_suite(max).into_iter().map(|r| Check::from_report(r, cov)).collect();
    out.push(Check::from_report(checks::faces_stay_nondegenerate(max, max), cov));
    out
}

// ---------------------------------------------------------------------------
// 3. Calculus
// ---------------------------------------------------------------------------

fn calculus(s: &Settings) -> Vec<Check> {
    let count = s.pick(500, 60);
    let mut sampler = Sampler::new(s.seed);
    let mut identities = Check::new("integral of a derivative, integration by parts, derivative of an integral", s.cov(Coverage::Sampled));
    let mut oracle = Check::new("definite integrals and derivatives agree with the rational embedding", s.cov(Coverage::Sampled));
    for k in 0..count {
        let nvars = 1 + k % 4;
        let f = sampler.poly(nvars, 5, 9, 4);
        let g = sampler.poly(nvars, 5, 9, 4);
        match checks::integral_identities(&f, &g) {
            Ok(n) => identities.record(n > 0, || format!("no identities for {f}")),
            Err(e) => identities.record(false, || format!("f = {f}, g = {g}: {e}")),
        }
        oracle.record_result(rational_agrees(&f), || format!("f = {f}"));
    }
    vec![identities, oracle]
}

fn rational_agrees(f: &DPPoly) -> Result<bool> {
    let rf = to_rational(f);
    for i in 1..=f.nvars() {
        if to_rational(&f.partial(i)?) != rf.partial(i) {
            return Ok(false);
        }
        for lo in checks::all_bounds(f.nvars()) {
            for hi in checks::all_bounds(f.nvars()) {
                if to_rational(&f.definite_integral(i, lo, hi)?) != rf.definite_integral(i, lo, hi) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// 4. Stokes
// ---------------------------------------------------------------------------

/// A random form on `Delta^n x Delta^r`: either the restriction of a global
/// form or the pullback of a form along a monotone `[n] x [r] -> [k]`.
pub fn random_product_form(sampler: &mut Sampler, letters: &[Letter], n: usize, r: usize, trunc: usize, max_word: usize) -> Result<ProductForm> {
    if sampler.below(4) > 0 {
        let g = sampler.fiber_form(n, r, trunc, letters, max_word, 3, 4);
        ProductForm::from_global(n, r, &g)
    } else {
        let k = sampler.range(1, n + r + 1);
        let table = sampler.monotone_table(n, r, k);
        let g = sampler.form(k, trunc, letters, max_word, 3, 4);
        ProductForm::from_simplex_map(n, r, &table, &g)
    }
}

/// Runs the Stokes residual on `count` random forms for one `(n, r)`.
pub fn stokes_random(sampler: &mut Sampler, g: &LInftyAlgebra, n: usize, r: usize, count: usize, max_word: usize, check: &mut Check) {
    let letters = random::letters_of(g);
    for _ in 0..count {
        let res = random_product_form(sampler, &letters, n, r, max_word.max(2), max_word).and_then(|pf| Ok(stokes_residual_product(&pf)?.is_zero()));
        check.record_result(res, || format!("n={n} r={r}"));
    }
}

fn stokes(s: &Settings) -> Vec<Check> {
    let mut sampler = Sampler::new(s.seed);
    let per = s.pick(8, 1);
    let mut out = Vec::new();
    let max = s.pick(3, 2);
    for (name, g) in [("abelian rank 2", random::abelian_rank2()), ("nilpotent rank 3", random::nilpotent_rank3())] {
        let mut c = Check::new(format!("residual 0 on Delta^n x Delta^r, n, r <= {max}, {name}"), s.cov(Coverage::Sampled));
        for n in 0..=max {
            for r in 0..=max {
                stokes_random(&mut sampler, &g, n, r, per, 2, &mut c);
            }
        }
        out.push(c);
    }
    let mut faults = Check::new("an unsigned boundary integral leaves a nonzero residual", s.cov(Coverage::Sampled));
    let letters = random::letters_of(&random::abelian_rank2());
    let mut caught = 0;
    let mut nontrivial = 0;
    let tries = s.pick(40, 24);
    for k in 0..tries {
        let (n, r) = (k % 3, 1 + k % 2);
        let res = random_product_form(&mut sampler, &letters, n, r, 2, 2).and_then(|pf| {
            let inner = fiberwise(&pf)?.d();
            let inner = if r % 2 == 1 { inner.neg() } else { inner };
            let unsigned = fiberwise(&pf.d())?.sub(&boundary_fiberwise_product(&pf, false)?).sub(&inner);
            Ok((!unsigned.is_zero(), !fiberwise(&pf)?.is_zero()))
        });
        match res {
            Ok((c, t)) => {
                caught += c as usize;
                nontrivial += t as usize;
            }
            Err(e) => faults.record(false, || e.to_string()),
        }
    }
    faults.record(caught > 0, || format!("no residual in {tries} forms"));
    faults.record(nontrivial * 3 >= tries, || format!("only {nontrivial} of {tries} forms have a nonzero fiber integral"));
    out.push(faults);
    let mut split = Check::new("residual 0 for products of forms on the product simplicial set", s.cov(Coverage::Sampled));
    let letters = random::letters_of(&random::abelian_rank2());
    for (n, r) in [(0usize, 1usize), (1, 1), (0, 2), (1, 2), (2, 1)] {
        for _ in 0..s.pick(2, 1) {
            let a = sampler.form(n, 2, &letters, 1, 2, 2);
            let b = sampler.form(r, 2, &letters, 1, 2, 2);
            split.record_result(split_stokes(n, r, &a, &b), || format!("n={n} r={r}"));
        }
    }
    out.push(split);
    out
}

fn split_stokes(n: usize, r: usize, a: &GForm, b: &GForm) -> Result<bool> {
    let (xr, ur) = (standard_realized(n), standard_realized(r));
    let prod = product(xr.set(), ur.set(), n + r)?;
    let fa = FormMap::on_standard(&xr, a)?.pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.0))?;
    let fb = FormMap::on_standard(&ur, b)?.pullback_along(prod.set(), |s| Ok(prod.key_of(s)?.1))?;
    Ok(stokes_residual(&prod, &fb.wedge(&fa)?)?.is_zero())
}

// ---------------------------------------------------------------------------
// 5. Iterated integrals
// ---------------------------------------------------------------------------

fn iterated(s: &Settings) -> Vec<Check> {
    let mut sampler = Sampler::new(s.seed);
    let per = s.pick(6, 2);
    let mut general = Check::new("derivative formula with env-tracking signs on homogeneous forms", s.cov(Coverage::Sampled));
    let mut even = Check::new("derivative formula on forms with even env", s.cov(Coverage::Sampled));
    let algebras = [random::abelian_rank2(), random::nilpotent_rank3()];
    let nil = &algebras[1];
    let even_words: [Vec<Letter>; 4] =
        [vec![], vec![nil.gen_letter(2)], vec![nil.gen_letter(0), nil.gen_letter(1)], vec![nil.gen_letter(2), nil.gen_letter(0), nil.gen_letter(0)]];
    for n in [1usize, 2] {
        let xr = standard_realized(n);
        let path = match path_space(xr.set(), n) {
            Ok(p) => p,
            Err(e) => {
                general.record(false, || format!("path space of Delta^{n}: {e}"));
                continue;
            }
        };
        for r in 1..=3usize {
            for k in 0..per {
                let letters = random::letters_of(&algebras[k % 2]);
                let res = (|| {
                    let ws: Vec<FormMap> = (0..r)
                        .map(|_| {
                            let t = sampler.range(0, 3) as i32 - 2;
                            FormMap::on_standard(&xr, &sampler.homogeneous(n, 3, &letters, t, 2, 3))
                        })
                        .collect::<Result<_>>()?;
                    Ok(diff_formula_residual_env(&path, &ws)?.is_zero())
                })();
                general.record_result(res, || format!("X = Delta^{n}, r = {r}"));
                let res = (|| {
                    let ws: Vec<FormMap> = (0..r)
                        .map(|_| {
                            let env = &even_words[sampler.below(even_words.len())];
                            let q = sampler.range(0, n);
                            FormMap::on_standard(&xr, &sampler.with_env(n, 3, env, q, 2))
                        })
                        .collect::<Result<_>>()?;
                    let total = diff_formula_residual(&path, &ws, DegreeMode::Total, Differential::Literal)?.is_zero();
                    let form = diff_formula_residual(&path, &ws, DegreeMode::Form, Differential::Literal)?.is_zero();
                    Ok(total && form)
                })();
                even.record_result(res, || format!("X = Delta^{n}, r = {r}"));
            }
        }
    }
    vec![general, even]
}

// ---------------------------------------------------------------------------
// 6. De Rham chain-map law
// ---------------------------------------------------------------------------

fn de_rham(s: &Settings) -> Vec<Check> {
    let mut sampler = Sampler::new(s.seed);
    let per = s.pick(12, 3);
    let letters = random::letters_of(&random::nilpotent_rank3());
    let mut c = Check::new("integral of d w over x equals integral of w over the boundary of x", s.cov(Coverage::Sampled));
    for n in 0..=3usize {
        let xr = standard_realized(n);
        for _ in 0..per {
            let g = sampler.form(n, 2, &letters, 2, 3, 4);
            match FormMap::on_standard(&xr, &g) {
                Ok(w) => {
                    for x in xr.set().nondegenerate() {
                        c.record_result(chain_map_residual(&w, &x).map(|r| r.is_zero()), || format!("simplex {x} of Delta^{n}"));
                    }
                }
                Err(e) => c.record(false, || format!("Delta^{n}: {e}")),
            }
        }
    }
    vec![c]
}

// ---------------------------------------------------------------------------
// 7. Holonomy exponential
// ---------------------------------------------------------------------------

/// The holonomy of `e dx_1` on `Delta^1` along the path from 0 to 1, as a
/// function on the path's single vertex.
pub fn interval_holonomy(order: usize, trunc: usize) -> Result<GForm> {
    let d1 = standard_realized(1);
    let path = path_space(d1.set(), 1)?;
    let e = Letter { gens: vec![0], deg: 1 };
    let nabla = FormMap::on_standard(&d1, &GForm::term(1, trunc, vec![e], &[1], DPPoly::one(1))?)?;
    for i in 0..path.set().count(0) {
        let g = Simplex::nondegenerate(0, i);
        if path.endpoint(&g, 0)? != path.endpoint(&g, 1)? {
            return Ok(hol_at(&path, &nabla, order, &g)?.eval(&[0]));
        }
    }
    Err(dpholo_core::Error::Malformed("the interval has no nonconstant path".into()))
}

fn exponential(_: &Settings) -> Vec<Check> {
    const R: usize = 8;
    let mut exact = Check::new("hol = sum over r <= 8 of e^r theta^[r]", Coverage::Exhaustive);
    let mut rational = Check::new("rational embedding is the truncated exponential", Coverage::Exhaustive);
    match interval_holonomy(R, R) {
        Ok(h) => {
            let e = Letter { gens: vec![0], deg: 1 };
            let mut expected = GForm::zero(0, R);
            for r in 0..=R {
                expected.add_term(vec![e.clone(); r], 0, DPPoly::var_power(0, 0, r as u32));
            }
            exact.record(h == expected, || format!("got {h}"));
            for r in 0..=R {
                let mut exp = RatPoly::zero(0);
                let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
                exp.add_term(vec![r as u32], BigRational::new(BigInt::one(), fact));
                let got = to_rational(&h.coefficient(&vec![e.clone(); r], 0));
                rational.record(got == exp, || format!("order {r}: {got:?}"));
            }
        }
        Err(e) => exact.record(false, || e.to_string()),
    }
    vec![exact, rational]
}

// ---------------------------------------------------------------------------
// 8. Square-zero suite
// ---------------------------------------------------------------------------

fn square_zero(s: &Settings) -> Vec<Check> {
    let cov = s.cov(Coverage::Exhaustive);
    let len = s.pick(4, 3);
    let mut sym = Check::new("D^2 = 0 on Sym g[1], weight <= 4", cov);
    let mut env = Check::new("delta^2 = 0 on the enveloping algebra, words of length <= W - 1 with W = 4", cov);
    for (name, g) in [("abelian", random::abelian_rank2()), ("nilpotent", random::nilpotent_rank3()), ("acyclic", random::acyclic_pair())] {
        sym.record_result(g.check_square_zero(s.pick(4, 3), 8).map(|n| n > 0), || name.to_string());
        env.record_result(g.check_delta_square_zero(s.pick(4, 3), 2, 3).map(|n| n > 0), || name.to_string());
    }
    let mut imported = Check::new(format!("from_dg_algebra squares to zero, words of length <= {len}"), cov);
    let mut unital = Check::new(format!("unitalize squares to zero and has strict units, words of length <= {len}"), cov);
    let mut free = Check::new(format!("free_on_quiver squares to zero, trees with <= {len} leaves"), cov);
    let mut simplex = Check::new(format!("the [n] category squares to zero for n <= 3, words of length <= {len}"), cov);
    let absorb = |c: &mut Check, tag: &str, rep: Result<Report>| match rep {
        Ok(r) => {
            c.cases += r.cases;
            c.failures.extend(r.failures.into_iter().map(|f| format!("{tag}: {f}")));
        }
        Err(e) => c.record(false, || format!("{tag}: {e}")),
    };
    for acyclic in [false, true] {
        let tag = if acyclic { "acyclic exterior algebra" } else { "exterior algebra" };
        match from_dg_algebra(TableAlgebra::exterior(acyclic)) {
            Ok(a) => {
                absorb(&mut imported, tag, check_square_zero(&a, len));
                let u = unitalize(a);
                absorb(&mut unital, tag, check_square_zero(&u, len));
                absorb(&mut unital, tag, check_strict_units(&u, len));
            }
            Err(e) => imported.record(false, || format!("{tag}: {e}")),
        }
    }
    match from_dg_algebra(moore_toy(1)) {
        Ok(a) => absorb(&mut imported, "cochain algebra", check_square_zero(&a, len.min(3))),
        Err(e) => imported.record(false, || format!("cochain algebra: {e}")),
    }
    let u = unitalize(simplex_category(2));
    absorb(&mut unital, "[2] category", check_square_zero(&u, len));
    absorb(&mut unital, "[2] category", check_strict_units(&u, len));
    for n in 0..=3 {
        let a = simplex_category(n);
        absorb(&mut simplex, &format!("[{n}]"), check_square_zero(&a, len));
        absorb(&mut simplex, &format!("[{n}]"), check_strict_units(&a, len));
    }
    for (tag, q) in sample_quivers() {
        let m = free_on_quiver(q, len);
        absorb(&mut free, tag, check_square_zero_on(&m, &m.tree_words(len)));
    }
    for (tag, x, cap) in [("paths in Delta^1", standard(1), 2), ("paths in Delta^2", standard(2), 1)] {
        match path_quiver(&x, cap, ChainKind::Unnormalized) {
            Ok(pq) => {
                let m = free_on_quiver(pq.quiver.clone(), 3);
                absorb(&mut free, tag, check_square_zero_on(&m, &m.tree_words(3)));
            }
            Err(e) => free.record(false, || format!("{tag}: {e}")),
        }
    }
    vec![sym, env, imported, unital, free, simplex]
}

/// The cochain algebra with two degree-1 letters, truncated at word length 3,
/// restricted to elements of simplicial degree 0 or with no theta.
pub fn moore_toy(max_dim: usize) -> GThetaMoore {
    let letters = [Letter { gens: vec![0], deg: 1 }, Letter { gens: vec![1], deg: 1 }];
    let full = GThetaMoore::new(3, &letters, max_dim, 1, 1);
    let basis = full.basis().into_iter().filter(|b| b.theta == 0 || b.dim == 0).collect();
    GThetaMoore::with_basis(3, basis)
}

fn sample_quivers() -> Vec<(&'static str, GradedQuiver)> {
    let arrow = |source, target, degree, label: &str| QuiverArrow { source, target, degree, label: label.to_string() };
    let mut out = Vec::new();
    if let Ok(q) = GradedQuiver::new(1, vec![arrow(0, 0, 0, "f")], None) {
        out.push(("one loop", q));
    }
    let arrows = vec![arrow(0, 1, 1, "g"), arrow(0, 1, 0, "h"), arrow(1, 1, -1, "k")];
    let mut d = vec![Lin::new(); 3];
    d[0].insert(1, BigInt::one());
    if let Ok(q) = GradedQuiver::new(2, arrows, Some(d)) {
        out.push(("two objects with a differential", q));
    }
    out
}

// ---------------------------------------------------------------------------
// 9. Cosimplicial maps and nerves
// ---------------------------------------------------------------------------

fn g0(word: &[u16], theta: u32) -> GBasis {
    GBasis { dim: 0, simplex: vec![0], word: word.iter().map(|&g| Letter { gens: vec![g], deg: 1 }).collect(), theta }
}

fn elem(terms: &[(i64, &[u16], u32)]) -> Lin<GBasis> {
    let mut l = Lin::new();
    for &(c, w, t) in terms {
        lin_add(&mut l, g0(w, t), BigInt::from(c));
    }
    l
}

/// The hand-checked simplices of the nerve of the cochain algebra: a point,
/// an edge, a triangle of exponentials and a tetrahedron of products.
pub fn nerve_families(b: &FromDgAlgebra<GThetaMoore>) -> Result<Vec<(String, usize, NerveCandidate<GBasis>)>> {
    let mut out = vec![("point".to_string(), 0, NerveCandidate { objects: vec![0], edges: BTreeMap::new() })];
    let edge = [((0, 1), elem(&[(1, &[], 0), (3, &[0], 1)]))].into_iter().collect();
    out.push(("edge".to_string(), 1, NerveCandidate { objects: vec![0, 0], edges: edge }));
    let tri = [
        ((0, 1), elem(&[(1, &[], 0), (1, &[0], 1)])),
        ((1, 2), elem(&[(1, &[], 0), (1, &[1], 1)])),
        ((0, 2), elem(&[(1, &[], 0), (1, &[0], 1), (1, &[1], 1), (2, &[0, 1], 2)])),
    ];
    out.push(("triangle".to_string(), 2, NerveCandidate { objects: vec![0; 3], edges: tri.into_iter().collect() }));
    let alg = b.algebra();
    let unit = alg.unit().ok_or_else(|| dpholo_core::Error::Malformed("no unit".into()))?;
    let steps = [elem(&[(1, &[], 0), (1, &[0], 1)]), elem(&[(1, &[], 0), (-1, &[1], 1)]), elem(&[(1, &[], 0), (2, &[0], 0)])];
    let mut edges = BTreeMap::new();
    for i in 0..4 {
        let mut acc = single(unit.clone());
        for j in i + 1..4 {
            acc = mul_lin(alg, &acc, &steps[j - 1])?;
            edges.insert((i, j), acc.clone());
        }
    }
    out.push(("tetrahedron".to_string(), 3, NerveCandidate { objects: vec![0; 4], edges }));
    Ok(out)
}

/// Every candidate obtained by flipping the sign of one term of one edge.
pub fn sign_flips<T: Clone + Ord>(c: &NerveCandidate<T>) -> Vec<NerveCandidate<T>> {
    let mut out = Vec::new();
    for (k, v) in &c.edges {
        for t in v.keys() {
            let mut p = c.clone();
            if let Some(e) = p.edges.get_mut(k).and_then(|e| e.get_mut(t)) {
                *e = -e.clone();
            }
            out.push(p);
        }
    }
    out
}

fn cosimplicial_and_nerve(s: &Settings) -> Vec<Check> {
    let cov = s.cov(Coverage::Exhaustive);
    let mut out = Vec::new();
    match check_cosimplicial(s.pick(3, 2), 3) {
        Ok(reps) => out.extend(reps.into_iter().map(|r| Check::from_report(r, cov))),
        Err(e) => {
            let mut c = Check::new("cosimplicial maps", cov);
            c.record(false, || e.to_string());
            out.push(c);
        }
    }
    let mut accept = Check::new("nerve_validate accepts the hand-checked families", cov);
    let mut reject = Check::new("nerve_validate rejects every single-sign perturbation of a triangle or tetrahedron", cov);
    let built = from_dg_algebra(GThetaMoore::new(3, &[Letter { gens: vec![0], deg: 1 }, Letter { gens: vec![1], deg: 1 }], 0, 1, 1));
    match built.and_then(|b| Ok((nerve_families(&b)?, b))) {
        Ok((families, b)) => {
            for (name, n, cand) in families {
                accept.record_result(nerve_validate(&b, n, &cand, 4).map(|r| r.valid()), || name.clone());
                if n < 2 {
                    continue;
                }
                for p in sign_flips(&cand) {
                    reject.record_result(nerve_validate(&b, n, &p, 4).map(|r| !r.valid()), || format!("{name} perturbed"));
                }
            }
        }
        Err(e) => accept.record(false, || e.to_string()),
    }
    out.push(accept);
    out.push(reject);
    out
}

// ---------------------------------------------------------------------------
// 10. Holonomy functor
// ---------------------------------------------------------------------------

/// `e dx_1 + f dx_2` on `Delta^2`, valued in the abelian algebra on `e, f`.
pub fn triangle_connection(trunc: usize) -> Result<FormMap> {
    let delta = standard_realized(2);
    let mut form = GForm::zero(2, trunc);
    for i in 1..=2 {
        let g = (i - 1) as u16;
        form = form.add(&GForm::term(2, trunc, vec![Letter { gens: vec![g], deg: 1 }], &[i], DPPoly::one(2))?);
    }
    FormMap::on_standard(&delta, &form)
}

/// Checks that the holonomy images form a quiver morphism and that the
/// induced functor on the free model commutes with the differentials.
pub fn ahol_checks(x: &FiniteSimplicialSet, nabla: &FormMap, cap: usize, order: usize, leaves: usize, cov: Coverage) -> Vec<Check> {
    let mut morphism = Check::new("holonomy images respect the differential on arrows", cov);
    let mut commutes = Check::new(format!("F D = D F on tree words with <= {leaves} leaves"), cov);
    let res = (|| -> Result<(Report, Report)> {
        let pq = path_quiver(x, cap, ChainKind::Unnormalized)?;
        let target = from_dg_algebra(GThetaMoore::with_basis(nabla.trunc(), Vec::new()))?;
        let images = ahol_images(&pq, target.algebra(), nabla, order)?;
        let objects = vec![0; pq.quiver.objects()];
        let f = |g: usize| Ok(images[g].clone());
        let m = check_quiver_morphism(&pq.quiver, &target, &objects, &f)?;
        let free = free_on_quiver(pq.quiver.clone(), leaves);
        let functor = ahol_functor(&pq, &target, &images);
        let c = check_functor_on(&free, &target, &functor, &free.tree_words(leaves))?;
        Ok((m, c))
    })();
    match res {
        Ok((m, c)) => {
            morphism.cases = m.cases;
            morphism.failures = m.failures;
            commutes.cases = c.cases;
            commutes.failures = c.failures;
        }
        Err(e) => morphism.record(false, || e.to_string()),
    }
    vec![morphism, commutes]
}

fn holonomy_functor(s: &Settings) -> Vec<Check> {
    let mut nonzero = Check::new("the connection is a nonzero degree-1 form", Coverage::Exhaustive);
    match triangle_connection(3) {
        Ok(nabla) => {
            nonzero.record(!nabla.is_zero() && nabla.is_connection() && nabla.is_valid(), || "connection".into());
            let deg = holonomy::homogeneous_degree(&nabla, DegreeMode::Total);
            nonzero.record(deg == Some(0), || format!("total degree {deg:?}"));
            let mut out = vec![nonzero];
            out.extend(ahol_checks(&standard(2), &nabla, 1, 3, s.pick(3, 2), s.cov(Coverage::Exhaustive)));
            out
        }
        Err(e) => {
            nonzero.record(false, || e.to_string());
            vec![nonzero]
        }
    }
}
