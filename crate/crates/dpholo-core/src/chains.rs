//! Chains `[p] -> [n] x [r]` in the product poset and their derived maps.
//!
//! A chain is an injective order-preserving map, stored as its list of points.
//! It is maximal when `p = n + r` and global when its first projection is onto.
//! For a global chain the maps `bs: [n] -> [p]` and `fs: [r] -> [p]` pick the
//! first vertex over each base coordinate and the first vertex at or above each
//! fiber coordinate; `Fs` enumerates the vertices off the image of `bs`, grouped
//! into blocks of consecutive vertices, each block anchored at the vertex `us`
//! just before it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dpalg::{Bound, DPPoly};
use crate::error::{Error, Result};
use crate::ordinal::{self, OrdMap};

/// An injective order-preserving map `[p] -> [n] x [r]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chain {
    n: usize,
    r: usize,
    points: Vec<(usize, usize)>,
}

impl Chain {
    pub fn new(n: usize, r: usize, points: Vec<(usize, usize)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidChain(format!("empty chain in [{n}]x[{r}]")));
        }
        for &(a, b) in &points {
            if a > n || b > r {
                return Err(Error::InvalidChain(format!("point ({a},{b}) outside [{n}]x[{r}]")));
            }
        }
        for w in points.windows(2) {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            if a1 < a0 || b1 < b0 || (a0, b0) == (a1, b1) {
                return Err(Error::InvalidChain(format!("({a0},{b0}) then ({a1},{b1}) is not strictly increasing")));
            }
        }
        Ok(Chain { n, r, points })
    }

    /// The maximal chain taking fiber steps at the given positions `1..=n+r`.
    pub fn from_fiber_steps(n: usize, r: usize, steps: &BTreeSet<usize>) -> Result<Self> {
        if steps.len() != r || steps.iter().any(|&k| k == 0 || k > n + r) {
            return Err(Error::InvalidChain(format!("fiber steps {steps:?} do not fit [{n}]x[{r}]")));
        }
        let mut pts = vec![(0, 0)];
        let (mut a, mut b) = (0, 0);
        for k in 1..=n + r {
            if steps.contains(&k) {
                b += 1;
            } else {
                a += 1;
            }
            pts.push((a, b));
        }
        Chain::new(n, r, pts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn point(&self, i: usize) -> (usize, usize) {
        self.points[i]
    }

    pub fn is_maximal(&self) -> bool {
        self.p() == self.n + self.r
    }

    pub fn is_global(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        for &(a, _) in &self.points {
            seen[a] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// First projection `[p] -> [n]`.
    pub fn base_coord(&self) -> OrdMap {
        self.points.iter().map(|p| p.0).collect()
    }

    /// Second projection `[p] -> [r]`.
    pub fn fiber_coord(&self) -> OrdMap {
        self.points.iter().map(|p| p.1).collect()
    }

    /// The composite with the coface skipping vertex `v`.
    pub fn drop_vertex(&self, v: usize) -> Chain {
        let mut pts = self.points.clone();
        pts.remove(v);
        Chain { n: self.n, r: self.r, points: pts }
    }

    /// Positions `k` whose incoming step raises the fiber coordinate only.
    pub fn fiber_steps(&self) -> BTreeSet<usize> {
        (1..self.points.len()).filter(|&k| self.points[k].0 == self.points[k - 1].0).collect()
    }

    /// `bs(i) = min { j | base(j) = i }`.
    pub fn bs(&self) -> Result<OrdMap> {
        (0..=self.n).map(|i| self.points.iter().position(|p| p.0 == i).ok_or(Error::NotGlobal(i))).collect()
    }

    /// `fs(i) = min { j | fiber(j) >= i }`, `None` when the chain never reaches `i`.
    pub fn fs(&self) -> Vec<Option<usize>> {
        (0..=self.r).map(|i| self.points.iter().position(|p| p.1 >= i)).collect()
    }

    /// The full analysis of a global chain.
    pub fn analyze(&self) -> Result<ChainAnalysis> {
        ChainAnalysis::new(self)
    }
}

impl core::fmt::Display for Chain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.points.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// Derived data of a global chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainAnalysis {
    pub bs: OrdMap,
    pub fs: Vec<Option<usize>>,
    /// `Fs(k)` for `k = 1..=p-n`, stored at index `k - 1`.
    pub big_fs: Vec<usize>,
    /// `us(k)` for `k = 1..=p-n`, stored at index `k - 1`.
    pub us: Vec<usize>,
    /// Block number `F(k)` (1-based) for `k = 1..=p-n`.
    pub block_of: Vec<usize>,
    /// Anchor vertex of each block.
    pub vs: Vec<usize>,
    /// Block sizes `r_j`.
    pub block_sizes: Vec<usize>,
    /// `v^j_i` for `i = 0..=r_j`.
    pub block_vertices: Vec<Vec<usize>>,
    pub inn_fs: BTreeSet<usize>,
    pub inn_bs: BTreeSet<usize>,
    pub out: BTreeSet<usize>,
}

impl ChainAnalysis {
    fn new(c: &Chain) -> Result<Self> {
        let bs = c.bs()?;
        let fs = c.fs();
        let p = c.p();
        let in_bs: BTreeSet<usize> = bs.iter().copied().collect();
        let big_fs: Vec<usize> = (0..=p).filter(|j| !in_bs.contains(j)).collect();
        let shift = |k: usize| big_fs[k - 1] - k;
        let us: Vec<usize> = (1..=big_fs.len())
            .map(|k| {
                let first = (1..=big_fs.len()).find(|&j| shift(j) == shift(k)).expect("k itself qualifies");
                big_fs[first - 1] - 1
            })
            .collect();
        let mut vs: Vec<usize> = Vec::new();
        let mut block_of = Vec::with_capacity(us.len());
        for &u in &us {
            if vs.last() != Some(&u) {
                vs.push(u);
            }
            block_of.push(vs.len());
        }
        let mut block_sizes = vec![0; vs.len()];
        let mut block_vertices: Vec<Vec<usize>> = vs.iter().map(|&v| vec![v]).collect();
        for (k, &j) in block_of.iter().enumerate() {
            block_sizes[j - 1] += 1;
            block_vertices[j - 1].push(big_fs[k]);
        }
        let cact: BTreeSet<usize> = block_vertices.iter().flatten().copied().collect();
        let mut inn_fs = BTreeSet::new();
        let mut inn_bs = BTreeSet::new();
        let mut out = BTreeSet::new();
        for &v in &cact {
            let corner = v > 0 && v < p && {
                let (b0, f0) = c.point(v - 1);
                c.point(v + 1) == (b0 + 1, f0 + 1)
            };
            if corner && c.point(v + 1) == (c.point(v).0 + 1, c.point(v).1) {
                inn_fs.insert(v);
            } else if corner && c.point(v + 1) == (c.point(v).0, c.point(v).1 + 1) {
                inn_bs.insert(v);
            } else {
                out.insert(v);
            }
        }
        Ok(ChainAnalysis { bs, fs, big_fs, us, block_of, vs, block_sizes, block_vertices, inn_fs, inn_bs, out })
    }

    pub fn block_count(&self) -> usize {
        self.vs.len()
    }

    /// `R^j_i = r_1 + ... + r_{j-1} + i` for a 1-based block `j`.
    pub fn offset(&self, j: usize, i: usize) -> usize {
        self.block_sizes[..j - 1].iter().sum::<usize>() + i
    }

    /// All vertices in some block, `us` and `Fs` values together.
    pub fn block_vertex_set(&self) -> BTreeSet<usize> {
        self.block_vertices.iter().flatten().copied().collect()
    }
}

/// All maximal chains of `[n] x [r]`, in lexicographic order of point lists.
pub fn enumerate_maximal(n: usize, r: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut pts = vec![(0usize, 0usize)];
    fn rec(n: usize, r: usize, pts: &mut Vec<(usize, usize)>, out: &mut Vec<Chain>) {
        let (a, b) = *pts.last().expect("nonempty");
        if a == n && b == r {
            out.push(Chain { n, r, points: pts.clone() });
            return;
        }
        if b < r {
            pts.push((a, b + 1));
            rec(n, r, pts, out);
            pts.pop();
        }
        if a < n {
            pts.push((a + 1, b));
            rec(n, r, pts, out);
            pts.pop();
        }
    }
    rec(n, r, &mut pts, &mut out);
    out
}

/// All global chains of length `p` in `[n] x [r]`.
pub fn enumerate_global(n: usize, r: usize, p: usize) -> Vec<Chain> {
    let all: Vec<(usize, usize)> = (0..=n).flat_map(|a| (0..=r).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(all: &[(usize, usize)], n: usize, r: usize, p: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Chain>) {
        if cur.len() == p + 1 {
            let c = Chain { n, r, points: cur.clone() };
            if c.is_global() {
                out.push(c);
            }
            return;
        }
        for &q in all {
            if let Some(&(a, b)) = cur.last() {
                if q.0 < a || q.1 < b || q == (a, b) {
                    continue;
                }
            }
            cur.push(q);
            rec(all, n, r, p, cur, out);
            cur.pop();
        }
    }
    rec(&all, n, r, p, &mut cur, &mut out);
    out.sort();
    out
}

/// `Gamma'` agreeing with `Gamma` off the corner vertex `v`, turned the other way.
pub fn flip(c: &Chain, v: usize) -> Result<Chain> {
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let a = c.analyze()?;
    let mut pts = c.points.clone();
    let (b0, f0) = c.point(v.checked_sub(1).ok_or(Error::NotInner(v))?);
    if a.inn_fs.contains(&v) {
        pts[v] = (b0 + 1, f0);
    } else if a.inn_bs.contains(&v) {
        pts[v] = (b0, f0 + 1);
    } else {
        return Err(Error::NotInner(v));
    }
    Chain::new(c.n, c.r, pts)
}

/// Factors `Gamma . delta_v = (id x delta_h) Gamma_v` with `Gamma_v` maximal in `[n] x [r-1]`.
pub fn face_factor(c: &Chain, v: usize) -> Result<(Chain, usize)> {
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    if c.r == 0 || v > c.p() {
        return Err(Error::NoFaceFactor(v));
    }
    let h = c.point(v).1;
    let mut pts = Vec::with_capacity(c.p());
    for i in 0..c.p() {
        if i < v {
            pts.push(c.point(i));
        } else {
            let (b, f) = c.point(i + 1);
            pts.push((b, f.checked_sub(1).ok_or(Error::NoFaceFactor(v))?));
        }
    }
    let gv = Chain::new(c.n, c.r - 1, pts).map_err(|_| Error::NoFaceFactor(v))?;
    if !gv.is_maximal() {
        return Err(Error::NoFaceFactor(v));
    }
    let delta_h = ordinal::coface(c.r, h);
    let face = c.drop_vertex(v);
    let ok = gv.points.iter().zip(face.points.iter()).all(|(&(b, f), &q)| f < delta_h.len() && (b, delta_h[f]) == q);
    if !ok {
        return Err(Error::NoFaceFactor(v));
    }
    Ok((gv, h))
}

/// Vertices admitting a face factorization.
pub fn face_factor_vertices(c: &Chain) -> Vec<usize> {
    (0..=c.p()).filter(|&v| face_factor(c, v).is_ok()).collect()
}

/// For a maximal chain over `[m] x [r]` and `alpha: [m] -> [n]`, the unique
/// maximal chain over `[n] x [r]` and map `beta: [m+r] -> [n+r]` with
/// `(alpha x id) Gamma = (alpha_* Gamma) beta`.
pub fn pushforward_pair(c: &Chain, alpha: &[usize], n: usize) -> Result<(Chain, OrdMap)> {
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    ordinal::validate(alpha, n)?;
    if alpha.len() != c.n + 1 {
        return Err(Error::VariableCount { expected: c.n + 1, found: alpha.len() });
    }
    let fs = c.fs();
    let steps: BTreeSet<usize> = (1..=c.r)
        .map(|j| {
            let v = fs[j].expect("maximal chains reach every fiber level");
            alpha[c.point(v).0] + j
        })
        .collect();
    let target = Chain::from_fiber_steps(n, c.r, &steps)?;
    let beta: OrdMap = c.points.iter().map(|&(a, b)| target.points.iter().position(|&q| q == (alpha[a], b)).ok_or(Error::NotMaximal)).collect::<Result<_>>()?;
    Ok((target, beta))
}

/// The pullback of a maximal chain along `alpha x id` for injective `alpha`,
/// with its leg `beta: [p] -> [n+r]`.
pub fn pullback(c: &Chain, alpha: &[usize]) -> Result<(Chain, OrdMap)> {
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    ordinal::validate(alpha, c.n)?;
    if !ordinal::is_injective(alpha) {
        return Err(Error::NotInjective);
    }
    let m = alpha.len() - 1;
    let mut pts = Vec::new();
    let mut beta = Vec::new();
    for (k, &(a, b)) in c.points.iter().enumerate() {
        if let Some(j) = alpha.iter().position(|&x| x == a) {
            pts.push((j, b));
            beta.push(k);
        }
    }
    Ok((Chain::new(m, c.r, pts)?, beta))
}

/// A base vertex `l` outside the image of `alpha` whose first vertex is followed
/// by a fiber step; such a vertex exists whenever the pullback is not maximal.
pub fn non_maximal_witness(c: &Chain, alpha: &[usize]) -> Result<Option<usize>> {
    let bs = c.bs()?;
    let in_bs: BTreeSet<usize> = bs.iter().copied().collect();
    Ok((0..=c.n).find(|l| !alpha.contains(l) && bs[*l] < c.p() && !in_bs.contains(&(bs[*l] + 1))))
}

/// `min { j | bs(j) >= i }` for a global chain.
pub fn min_bs_at_least(c: &Chain, i: usize) -> Result<Option<usize>> {
    Ok(c.bs()?.iter().position(|&b| b >= i))
}

/// `min { j | beta(j) >= i }`.
pub fn min_at_least(beta: &[usize], i: usize) -> Option<usize> {
    beta.iter().position(|&b| b >= i)
}

/// A maximal chain of `[n] x [r]` through the given weakly increasing points,
/// with the position of each point on it.  Between consecutive points the
/// chain takes its base steps first.
pub fn extend_to_maximal(n: usize, r: usize, pts: &[(usize, usize)]) -> Result<(Chain, OrdMap)> {
    let mut path = vec![(0usize, 0usize)];
    let mut pos = Vec::with_capacity(pts.len());
    for &(a, b) in pts {
        let cur = *path.last().expect("nonempty");
        if a < cur.0 || b < cur.1 || a > n || b > r {
            return Err(Error::InvalidChain(format!("point ({a},{b}) does not extend a chain in [{n}]x[{r}]")));
        }
        let mut cur = cur;
        while cur.0 < a {
            cur.0 += 1;
            path.push(cur);
        }
        while cur.1 < b {
            cur.1 += 1;
            path.push(cur);
        }
        pos.push(path.len() - 1);
    }
    let mut cur = *path.last().expect("nonempty");
    while cur.0 < n {
        cur.0 += 1;
        path.push(cur);
    }
    while cur.1 < r {
        cur.1 += 1;
        path.push(cur);
    }
    Ok((Chain { n, r, points: path }, pos))
}

/// The ring `Z<theta, b_1..b_n, f_1..f_r>` is modelled on `n + r` variables with
/// `b_j` at slot `j` and `f_j` at slot `n + j`.  `incl` sends `x_i` to the base
/// or fiber variable whose first vertex is `i`.
pub fn incl(c: &Chain, f: &DPPoly) -> Result<DPPoly> {
    let a = c.analyze()?;
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let (n, r) = (c.n, c.r);
    let map: Vec<Bound> = (1..=n + r)
        .map(|i| {
            if let Some(j) = a.bs.iter().position(|&x| x == i) {
                Bound::Var(j)
            } else {
                let j = a.fs.iter().position(|&x| x == Some(i)).expect("maximal chains cover every vertex");
                Bound::Var(n + j)
            }
        })
        .collect();
    f.substitute(n + r, &map)
}

/// The substitution behind `re`: `b_i -> x_{bs(i)}`, `f_i -> x_{fs(i)}`.
pub fn re_map(c: &Chain) -> Result<Vec<Bound>> {
    let a = c.analyze()?;
    if !c.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let (n, r) = (c.n, c.r);
    let mut map: Vec<Bound> = (1..=n).map(|i| Bound::from_index(a.bs[i], n + r)).collect();
    map.extend((1..=r).map(|i| Bound::from_index(a.fs[i].expect("maximal"), n + r)));
    Ok(map)
}

/// The retraction of `incl`: `b_i -> x_{bs(i)}`, `f_i -> x_{fs(i)}`.
pub fn re(c: &Chain, f: &DPPoly) -> Result<DPPoly> {
    f.substitute(c.n + c.r, &re_map(c)?)
}

/// The action of `alpha: [m] -> [n]` on base variables, fixing fiber variables.
pub fn act_on_base(f: &DPPoly, alpha: &[usize], n: usize, r: usize) -> Result<DPPoly> {
    let base = crate::dpalg::pullback_map(alpha, n)?;
    let m = alpha.len() - 1;
    let mut map: Vec<Bound> = base
        .into_iter()
        .map(|b| match b {
            Bound::Var(j) => Bound::Var(j),
            other => other,
        })
        .collect();
    map.extend((1..=r).map(|j| Bound::Var(m + j)));
    f.substitute(m + r, &map)
}

/// Identification classes of `(chain, vertex)` pairs under flips: returns the
/// number of classes and whether each class has a single image point.
pub fn glued_vertex_classes(n: usize, r: usize) -> (usize, bool) {
    let chains = enumerate_maximal(n, r);
    let len = n + r + 1;
    let mut parent: Vec<usize> = (0..chains.len() * len).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (ci, c) in chains.iter().enumerate() {
        let a = c.analyze().expect("maximal chains are global");
        for &v in a.inn_fs.iter().chain(a.inn_bs.iter()) {
            let other = flip(c, v).expect("inner vertex");
            let cj = chains.binary_search(&other).expect("flip stays maximal");
            for i in (0..len).filter(|&i| i != v) {
                let (x, y) = (find(&mut parent, ci * len + i), find(&mut parent, cj * len + i));
                parent[x] = y;
            }
        }
    }
    let mut images: alloc::collections::BTreeMap<usize, BTreeSet<(usize, usize)>> = Default::default();
    for (ci, c) in chains.iter().enumerate() {
        for i in 0..len {
            let root = find(&mut parent, ci * len + i);
            images.entry(root).or_default().insert(c.point(i));
        }
    }
    let consistent = images.values().all(|s| s.len() == 1);
    let distinct: BTreeSet<(usize, usize)> = images.values().flatten().copied().collect();
    (images.len(), consistent && distinct.len() == images.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize, r: usize, pts: &[(usize, usize)]) -> Chain {
        Chain::new(n, r, pts.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let c = enumerate_maximal(1, 1);
        assert_eq!(c, vec![chain(1, 1, &[(0, 0), (0, 1), (1, 1)]), chain(1, 1, &[(0, 0), (1, 0), (1, 1)])]);
        assert_eq!(enumerate_maximal(3, 0).len(), 1);
        assert_eq!(enumerate_maximal(2, 2).len(), 6);
    }

    #[test]
    fn analysis_of_the_two_square_chains() {
        let a = chain(1, 1, &[(0, 0), (0, 1), (1, 1)]).analyze().unwrap();
        assert_eq!(a.bs, vec![0, 2]);
        assert_eq!(a.fs[1], Some(1));
        assert_eq!(a.big_fs, vec![1]);
        assert_eq!(a.us, vec![0]);
        assert_eq!(a.block_count(), 1);
        assert_eq!(a.block_sizes, vec![1]);
        assert_eq!(a.block_vertex_set().into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(a.inn_fs.contains(&1) && a.out.contains(&0));
        let b = chain(1, 1, &[(0, 0), (1, 0), (1, 1)]).analyze().unwrap();
        assert_eq!(b.bs, vec![0, 1]);
        assert_eq!(b.fs[1], Some(2));
        assert_eq!(b.big_fs, vec![2]);
        assert_eq!(b.us, vec![1]);
        let e = chain(2, 0, &[(0, 0), (1, 0), (2, 0)]).analyze().unwrap();
        assert!(e.big_fs.is_empty() && e.block_count() == 0);
    }

    #[test]
    fn non_global_chains_are_rejected() {
        assert!(chain(1, 1, &[(0, 0), (0, 1)]).analyze().is_err());
    }

    #[test]
    fn flip_examples() {
        let g = chain(1, 1, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(flip(&g, 1).unwrap(), chain(1, 1, &[(0, 0), (1, 0), (1, 1)]));
        let g = chain(1, 2, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
        let a = g.analyze().unwrap();
        assert!(a.inn_fs.contains(&1));
        let f = flip(&g, 1).unwrap();
        assert_eq!(f, chain(1, 2, &[(0, 0), (1, 0), (1, 1), (1, 2)]));
        assert_eq!(flip(&f, 1).unwrap(), g);
        assert_eq!(f.drop_vertex(1), g.drop_vertex(1));
        assert!(flip(&g, 3).is_err());
    }

    #[test]
    fn face_factor_out_vertices() {
        for g in enumerate_maximal(1, 2) {
            let a = g.analyze().unwrap();
            for j in 1..=a.block_count() {
                for i in 1..a.block_sizes[j - 1] {
                    let v = a.block_vertices[j - 1][i];
                    let (_, h) = face_factor(&g, v).unwrap();
                    assert_eq!(h, 1);
                }
            }
        }
        for g in enumerate_maximal(2, 1) {
            let a = g.analyze().unwrap();
            assert!(a.block_sizes.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn pullback_examples() {
        let g = chain(1, 1, &[(0, 0), (0, 1), (1, 1)]);
        let (p, beta) = pullback(&g, &[0]).unwrap();
        assert_eq!(p, chain(0, 1, &[(0, 0), (0, 1)]));
        assert!(p.is_maximal());
        assert_eq!(beta, vec![0, 1]);
        let g = chain(1, 1, &[(0, 0), (1, 0), (1, 1)]);
        let (p, _) = pullback(&g, &[0]).unwrap();
        assert_eq!(p, chain(0, 1, &[(0, 0)]));
        assert!(!p.is_maximal());
        assert_eq!(non_maximal_witness(&g, &[0]).unwrap(), Some(1));
        assert_eq!(pullback(&g, &[0, 1]).unwrap(), (g.clone(), vec![0, 1, 2]));
    }

    #[test]
    fn pushforward_identity() {
        for g in enumerate_maximal(2, 2) {
            let (h, beta) = pushforward_pair(&g, &[0, 1, 2], 2).unwrap();
            assert_eq!(h, g);
            assert_eq!(beta, ordinal::identity(4));
        }
    }

    #[test]
    fn glueing_reproduces_the_grid() {
        for n in 0..4 {
            for r in 0..4 {
                let (classes, ok) = glued_vertex_classes(n, r);
                assert!(ok);
                assert_eq!(classes, (n + 1) * (r + 1));
            }
        }
    }
}
