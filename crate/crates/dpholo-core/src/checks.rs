//! Exhaustive checks of the combinatorial properties of chains, of their
//! pullbacks and pushforwards along ordinal maps, and of the stability of
//! forms on products under faces.
//!
//! Every check enumerates all cases up to the given bounds and returns a
//! [`Report`] with the number of cases and a description of each failure.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{self, Chain};
use crate::derham::GForm;
use crate::dpalg::{Bound, DPPoly};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdMap};
use crate::simplicial::ProductForm;

/// Outcome of one exhaustive check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub(crate) fn new(name: &'static str) -> Self {
        Report { name, cases: 0, failures: Vec::new() }
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `min { j | f(j) >= i }`, or the length of `f` when no such `j` exists.
fn first_at_least(f: &[usize], i: usize) -> usize {
    chains::min_at_least(f, i).unwrap_or(f.len())
}

/// Every order-preserving injection `[p] -> [n] x [r]`, by brute force.
pub fn all_injective_chains(n: usize, r: usize, p: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(n: usize, r: usize, p: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied();
        for a in 0..=n {
            for b in 0..=r {
                if let Some((a0, b0)) = lo {
                    if a < a0 || b < b0 || (a, b) == (a0, b0) {
                        continue;
                    }
                }
                cur.push((a, b));
                rec(n, r, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, r, p, &mut Vec::new(), &mut out);
    out
}

/// The count of maximal chains by brute force over all injections `[n+r] -> [n] x [r]`.
pub fn brute_force_maximal_count(n: usize, r: usize) -> usize {
    all_injective_chains(n, r, n + r).len()
}

fn bs_of(c: &Chain) -> Option<OrdMap> {
    c.bs().ok()
}

/// Injective chains of length `n + r` project onto `[n]`.
pub fn surjective_base_projection(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("surjective base projection");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for pts in all_injective_chains(n, r, n + r) {
                let base: OrdMap = pts.iter().map(|p| p.0).collect();
                rep.check(ordinal::is_surjective(&base, n), || format!("n={n} r={r} {pts:?}"));
            }
        }
    }
    rep
}

/// `bs` and `fs` of a maximal chain are injective.
pub fn sections_injective(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("base and fiber sections injective");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for c in chains::enumerate_maximal(n, r) {
                let ok = match (c.bs(), c.fs().into_iter().collect::<Option<Vec<_>>>()) {
                    (Ok(bs), Some(fs)) => ordinal::is_injective(&bs) && ordinal::is_injective(&fs),
                    _ => false,
                };
                rep.check(ok, || format!("{c}"));
            }
        }
    }
    rep
}

/// The two coordinates of the `i`-th vertex of a maximal chain sum to `i`.
pub fn coordinates_sum_to_index(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("coordinates sum to index");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for c in chains::enumerate_maximal(n, r) {
                for i in 0..=c.p() {
                    let (a, b) = c.point(i);
                    rep.check(a + b == i, || format!("{c} at {i}"));
                }
            }
        }
    }
    rep
}

/// The first base vertex past the end of a block, before and after removing a
/// block vertex.
pub fn block_end_under_faces(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("block ends under block-vertex faces");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for c in chains::enumerate_maximal(n, r) {
                let a = c.analyze().expect("maximal chains are global");
                let bs = a.bs.clone();
                let m = a.block_count();
                for j in 1..=m {
                    for i in 0..=a.block_sizes[j - 1] {
                        let v = a.block_vertices[j - 1][i];
                        let face = c.drop_vertex(v);
                        let Some(bs_face) = bs_of(&face) else {
                            rep.check(false, || format!("{c}: dropping {v} is not global"));
                            continue;
                        };
                        for l in 1..=m {
                            let end = a.block_vertices[l - 1][a.block_sizes[l - 1]];
                            let lhs = first_at_least(&bs, end + 1);
                            let rhs = if l < j { first_at_least(&bs_face, end + 1) } else { first_at_least(&bs_face, end) };
                            rep.check(lhs == rhs, || format!("{c}: j={j} i={i} l={l}: {lhs} vs {rhs}"));
                        }
                    }
                }
            }
        }
    }
    rep
}

/// The first base vertex at or past `i` before and after removing an inner vertex.
pub fn inner_vertex_transport(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("first base vertex under inner faces");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for c in chains::enumerate_maximal(n, r) {
                let a = c.analyze().expect("maximal chains are global");
                let p = c.p();
                for &v in a.inn_fs.iter().chain(a.inn_bs.iter()) {
                    let face = c.drop_vertex(v);
                    let Some(bs_face) = bs_of(&face) else {
                        rep.check(false, || format!("{c}: dropping {v} is not global"));
                        continue;
                    };
                    for i in 0..=v {
                        let (lhs, rhs) = (first_at_least(&a.bs, i), first_at_least(&bs_face, i));
                        rep.check(lhs == rhs, || format!("{c} v={v} i={i}: {lhs} vs {rhs}"));
                    }
                    let start = if a.inn_fs.contains(&v) { v + 1 } else { v + 2 };
                    for i in start..=p {
                        let (lhs, rhs) = (first_at_least(&a.bs, i), first_at_least(&bs_face, i - 1));
                        rep.check(lhs == rhs, || format!("{c} v={v} i={i}: {lhs} vs {rhs}"));
                    }
                }
            }
        }
    }
    rep
}

/// Pullbacks of maximal chains along injective `alpha x id` satisfy
/// `beta . bs_2 = bs_1 . alpha`, are totally ordered, and come with a witness
/// when they are not maximal.
pub fn pullback_properties(max_n: usize, max_r: usize) -> [Report; 3] {
    let mut legs = Report::new("pullback leg identity for base sections");
    let mut witness = Report::new("witness for non-maximal pullbacks");
    let mut total = Report::new("pullback is totally ordered");
    for n in 0..=max_n {
        for r in 0..=max_r {
            for c in chains::enumerate_maximal(n, r) {
                let bs1 = c.bs().expect("maximal");
                for m in 0..=n {
                    for alpha in ordinal::all_injections(m, n) {
                        let (g2, beta) = chains::pullback(&c, &alpha).expect("injective alpha");
                        match g2.bs() {
                            Ok(bs2) => {
                                let lhs = ordinal::compose(&beta, &bs2);
                                let rhs = ordinal::compose(&bs1, &alpha);
                                legs.check(lhs == rhs, || format!("{c} alpha={alpha:?}"));
                            }
                            Err(_) => legs.check(false, || format!("{c} alpha={alpha:?}: pullback not global")),
                        }
                        if !g2.is_maximal() {
                            let w = chains::non_maximal_witness(&c, &alpha).ok().flatten();
                            witness.check(w.is_some_and(|l| !alpha.contains(&l)), || format!("{c} alpha={alpha:?}"));
                        }
                        let poset: Vec<(usize, (usize, usize))> = (0..=c.p())
                            .flat_map(|k| {
                                let (a, b) = c.point(k);
                                alpha.iter().position(|&x| x == a).map(|j| (k, (j, b)))
                            })
                            .collect();
                        let leq = |x: &(usize, (usize, usize)), y: &(usize, (usize, usize))| x.0 <= y.0 && x.1 .0 <= y.1 .0 && x.1 .1 <= y.1 .1;
                        let comparable = poset.iter().all(|x| poset.iter().all(|y| leq(x, y) || leq(y, x)));
                        let same = poset.iter().map(|x| x.1).collect::<Vec<_>>() == g2.points();
                        total.check(comparable && same, || format!("{c} alpha={alpha:?}"));
                    }
                }
            }
        }
    }
    [legs, witness, total]
}

/// Every square `(alpha x id) Gamma_2 = Gamma_1 beta` of maximal chains, by brute force.
fn commuting_squares(m: usize, n: usize, r: usize) -> Vec<(OrdMap, Chain, Chain, OrdMap)> {
    let mut out = Vec::new();
    let big = chains::enumerate_maximal(n, r);
    for alpha in ordinal::all_maps(m, n) {
        for g2 in chains::enumerate_maximal(m, r) {
            for g1 in &big {
                let beta: Option<OrdMap> = g2.points().iter().map(|&(a, b)| g1.points().iter().position(|&q| q == (alpha[a], b))).collect();
                if let Some(beta) = beta {
                    out.push((alpha.clone(), g2.clone(), g1.clone(), beta));
                }
            }
        }
    }
    out
}

/// Commuting squares of maximal chains transport `fs` on `1..=r` and `us`; with injective
/// legs they also transport the first vertex past each fiber step.  The block
/// anchors are checked for every `alpha` and, separately, for injective `alpha`.
pub fn square_properties(max_n: usize, max_r: usize) -> [Report; 4] {
    let mut fs_rep = Report::new("squares transport fiber sections");
    let mut us_rep = Report::new("squares transport block anchors");
    let mut us_inj = Report::new("squares with injective alpha transport block anchors");
    let mut next_rep = Report::new("squares transport fiber successors");
    for n in 0..=max_n {
        for m in 0..=max_n {
            for r in 0..=max_r {
                for (alpha, g2, g1, beta) in commuting_squares(m, n, r) {
                    let (a1, a2) = (g1.analyze().expect("maximal"), g2.analyze().expect("maximal"));
                    let fs1: Vec<usize> = a1.fs.iter().map(|x| x.expect("maximal")).collect();
                    let fs2: Vec<usize> = a2.fs.iter().map(|x| x.expect("maximal")).collect();
                    let tag = || format!("{g2} -> {g1} alpha={alpha:?} beta={beta:?}");
                    fs_rep.check(ordinal::compose(&beta, &fs2[1..]) == fs1[1..], tag);
                    let us_ok = ordinal::compose(&beta, &a2.us) == a1.us;
                    us_rep.check(us_ok, tag);
                    if ordinal::is_injective(&alpha) {
                        us_inj.check(us_ok, tag);
                    }
                    if ordinal::is_injective(&alpha) && ordinal::is_injective(&beta) {
                        for i in 1..=r {
                            let lhs = first_at_least(&beta, fs1[i] + 1);
                            next_rep.check(lhs == fs2[i] + 1, || format!("{} i={i}", tag()));
                        }
                    }
                }
            }
        }
    }
    [fs_rep, us_rep, us_inj, next_rep]
}

/// The pushforward pair exists, is unique, and agrees with the constructive one.
pub fn pushforward_unique(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("unique pushforward pair");
    for n in 0..=max_n {
        for m in 0..=max_n {
            for r in 0..=max_r {
                let squares = commuting_squares(m, n, r);
                for alpha in ordinal::all_maps(m, n) {
                    for g in chains::enumerate_maximal(m, r) {
                        let found: Vec<(&Chain, &OrdMap)> = squares.iter().filter(|s| s.0 == alpha && s.1 == g).map(|s| (&s.2, &s.3)).collect();
                        let built = chains::pushforward_pair(&g, &alpha, n).ok();
                        let ok = found.len() == 1 && built.as_ref().map(|(c, b)| (c, b)) == Some(found[0]);
                        rep.check(ok, || format!("{g} alpha={alpha:?}: {} squares", found.len()));
                    }
                }
            }
        }
    }
    rep
}

/// Face factorizations `Gamma delta_v = (id x delta_h) Gamma_v` are unique,
/// agree with the constructive one, and exist at every interior block vertex.
pub fn face_factor_unique(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("unique face factorization");
    for n in 0..=max_n {
        for r in 1..=max_r {
            let small = chains::enumerate_maximal(n, r - 1);
            for c in chains::enumerate_maximal(n, r) {
                let a = c.analyze().expect("maximal");
                let interior: BTreeSet<usize> = (1..=a.block_count()).flat_map(|j| a.block_vertices[j - 1][1..a.block_sizes[j - 1]].to_vec()).collect();
                for v in 0..=c.p() {
                    let face = c.drop_vertex(v);
                    let mut found = Vec::new();
                    for h in 0..=r {
                        let delta = ordinal::coface(r, h);
                        for gv in &small {
                            let image: Vec<(usize, usize)> = gv.points().iter().map(|&(x, y)| (x, delta[y])).collect();
                            if image == face.points() {
                                found.push((gv.clone(), h));
                            }
                        }
                    }
                    let built = chains::face_factor(&c, v).ok();
                    let ok = found.len() <= 1 && built == found.first().cloned() && (!interior.contains(&v) || found.len() == 1);
                    rep.check(ok, || format!("{c} v={v}: {} factorizations", found.len()));
                }
            }
        }
    }
    rep
}

/// `alpha^* incl_{alpha_* P}(X_i^[N]) = incl_P (P^* alpha)^*(X_i^[N])` for
/// `N <= max_power`.
pub fn incl_transport(max_n: usize, max_r: usize, max_power: u32) -> Report {
    let mut rep = Report::new("incl commutes with ordinal maps");
    for n in 0..=max_n {
        for m in 0..=max_n {
            for r in 0..=max_r {
                for alpha in ordinal::all_maps(m, n) {
                    for pc in chains::enumerate_maximal(m, r) {
                        let (q, beta) = chains::pushforward_pair(&pc, &alpha, n).expect("pushforward exists");
                        for i in 1..=n + r {
                            for big_n in 1..=max_power {
                                let x = DPPoly::var_power(n + r, i, big_n);
                                let lhs = chains::incl(&q, &x).and_then(|f| chains::act_on_base(&f, &alpha, n, r));
                                let rhs = x.ordinal_pullback(&beta).and_then(|f| chains::incl(&pc, &f));
                                rep.check(lhs.is_ok() && lhs == rhs, || format!("{pc} alpha={alpha:?} i={i} N={big_n}"));
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

/// The family of global coordinate forms used by [`faces_stay_nondegenerate`]:
/// a product of two distinct variables plus an optional lower term.
pub fn stability_family(n: usize, r: usize, trunc: usize) -> Vec<ProductForm> {
    let k = n + r;
    let mut lower: Vec<DPPoly> = vec![DPPoly::zero(k), DPPoly::one(k)];
    lower.extend((1..=k).map(|i| DPPoly::var(k, i)));
    let mut out = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            let top = DPPoly::var(k, a).mul(&DPPoly::var(k, b));
            for low in &lower {
                let g = GForm::function(top.add(low), trunc);
                out.push(ProductForm::from_global(n, r, &g).expect("matching variable count"));
            }
        }
    }
    out
}

/// Faces of base-nondegenerate forms on `Delta^n x Delta^r` are base-nondegenerate.
pub fn faces_stay_nondegenerate(max_n: usize, max_r: usize) -> Report {
    let mut rep = Report::new("faces of nondegenerate forms are nondegenerate");
    for n in 2..=max_n {
        for r in 0..=max_r {
            for pf in stability_family(n, r, 1) {
                if pf.base_degeneracy().is_some() {
                    continue;
                }
                let bad = pf.degenerate_face();
                rep.check(bad.is_none(), || {
                    let (i, j) = bad.expect("checked");
                    format!("n={n} r={r}: face {i} of {:?} is degenerate along {j}", pf.values().values().next())
                });
            }
        }
    }
    rep
}

/// `int_X^Y (d_i f) dx_i - (eps_{i,Y} f - eps_{i,X} f)`.
pub fn integral_of_derivative_residual(f: &DPPoly, i: usize, lower: Bound, upper: Bound) -> Result<DPPoly> {
    let lhs = f.partial(i)?.definite_integral(i, lower, upper)?;
    Ok(lhs.sub(&f.replace_var(i, upper)).add(&f.replace_var(i, lower)))
}

/// `int_X^Y f (d_i g) dx_i - (eps_{i,Y}(fg) - eps_{i,X}(fg) - int_X^Y (d_i f) g dx_i)`.
pub fn integration_by_parts_residual(f: &DPPoly, g: &DPPoly, i: usize, lower: Bound, upper: Bound) -> Result<DPPoly> {
    let fg = f.try_mul(g)?;
    let lhs = f.try_mul(&g.partial(i)?)?.definite_integral(i, lower, upper)?;
    let other = f.partial(i)?.try_mul(g)?.definite_integral(i, lower, upper)?;
    Ok(lhs.sub(&fg.replace_var(i, upper)).add(&fg.replace_var(i, lower)).add(&other))
}

/// `d_k int_{x_k}^Y f dx_i + eps_{i,x_k} f` for `f` free of `x_k` and `Y != x_k`.
pub fn derivative_of_integral_residual(f: &DPPoly, i: usize, k: usize, upper: Bound) -> Result<DPPoly> {
    if f.contains_var(k) || upper == Bound::Var(k) {
        return Err(Error::Malformed(format!("integrand must be free of x_{k} and the upper bound must differ from it")));
    }
    let lower = Bound::Var(k);
    Ok(f.definite_integral(i, lower, upper)?.partial(k)?.add(&f.replace_var(i, lower)))
}

/// Every bound of a definite integral in `nvars` variables.
pub fn all_bounds(nvars: usize) -> Vec<Bound> {
    let mut out = vec![Bound::Theta, Bound::Zero];
    out.extend((1..=nvars).map(Bound::Var));
    out
}

/// Runs the three integral identities on `f` and `g` for every variable and
/// every pair of bounds, returning the number of identities checked.
pub fn integral_identities(f: &DPPoly, g: &DPPoly) -> Result<usize> {
    let n = f.nvars();
    let bounds = all_bounds(n);
    let mut count = 0;
    for i in 1..=n {
        for &lo in &bounds {
            for &hi in &bounds {
                let r1 = integral_of_derivative_residual(f, i, lo, hi)?;
                let r2 = integration_by_parts_residual(f, g, i, lo, hi)?;
                if !r1.is_zero() || !r2.is_zero() {
                    return Err(Error::Axiom(format!("integral identity fails for x_{i} from {lo:?} to {hi:?}")));
                }
                count += 2;
            }
        }
        for k in 1..=n {
            let free = f.replace_var(k, Bound::Theta);
            for &hi in bounds.iter().filter(|&&b| b != Bound::Var(k)) {
                if !derivative_of_integral_residual(&free, i, k, hi)?.is_zero() {
                    return Err(Error::Axiom(format!("derivative of integral fails for x_{i}, x_{k}, {hi:?}")));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Every chain-combinatorics check with bounds `n, r <= max`.
pub fn chain_suite(max: usize) -> Vec<Report> {
    let mut out = vec![
        surjective_base_projection(max, max),
        sections_injective(max, max),
        coordinates_sum_to_index(max, max),
        block_end_under_faces(max, max),
        inner_vertex_transport(max, max),
    ];
    out.extend(pullback_properties(max, max));
    out.extend(square_properties(max, max));
    out.push(pushforward_unique(max, max));
    out.push(face_factor_unique(max, max));
    out.push(incl_transport(max, max, 2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_counts_match_binomials() {
        assert_eq!(brute_force_maximal_count(1, 1), 2);
        assert_eq!(brute_force_maximal_count(2, 2), 6);
        assert_eq!(brute_force_maximal_count(3, 2), 10);
    }

    #[test]
    fn small_suite_passes_apart_from_anchors_along_collapses() {
        for rep in chain_suite(2) {
            assert!(rep.cases > 0, "{}", rep.name);
            if rep.name != "squares transport block anchors" {
                assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
            }
        }
    }

    #[test]
    fn integral_identities_on_a_small_example() {
        let f = DPPoly::var_power(2, 1, 2).mul(&DPPoly::var(2, 2)).add(&DPPoly::theta(2));
        let g = DPPoly::var(2, 1).add(&DPPoly::var_power(2, 2, 3));
        assert_eq!(integral_identities(&f, &g).unwrap(), 2 * (2 * 16 + 2 * 3));
        assert!(derivative_of_integral_residual(&f, 1, 1, Bound::Zero).is_err());
    }

    #[test]
    fn collapsing_alpha_merges_blocks() {
        let g2 = Chain::new(1, 2, vec![(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        let (g1, beta) = chains::pushforward_pair(&g2, &[0, 0], 0).unwrap();
        assert_eq!(g1, Chain::new(0, 2, vec![(0, 0), (0, 1), (0, 2)]).unwrap());
        assert_eq!(beta, vec![0, 1, 1, 2]);
        let (a1, a2) = (g1.analyze().unwrap(), g2.analyze().unwrap());
        assert_eq!(ordinal::compose(&beta, &a2.us), vec![0, 1]);
        assert_eq!(a1.us, vec![0, 0]);
    }
}
