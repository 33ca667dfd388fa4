//! JSON formats for polynomials, forms, chains, simplicial sets, connections,
//! L-infinity algebras and A-infinity categories.
//!
//! Every top-level file carries `"v": 1`.  Nested objects (a polynomial inside
//! a form, a form inside a connection) do not.  Env letters are written as
//! lists of generator names and resolved against an L-infinity algebra; a
//! file without an algebra gets the abelian one on the names it mentions, each
//! in degree 1.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use dpholo_core::ainfty::{lin_add, AInftyCategory, GradedQuiver, Lin, QuiverArrow};
use dpholo_core::chains::Chain;
use dpholo_core::derham::{mask_indices, mask_of, GForm};
use dpholo_core::dpalg::{DPPoly, Monomial};
use dpholo_core::linfty::{Combination, Generator, LInftyAlgebra, Letter, Word};
use dpholo_core::simplicial::{standard_realized, Cell, FiniteSimplicialSet, FormMap, Simplex};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

/// Parses JSON text, reporting syntax and shape errors with line and column.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| anyhow!("{origin}:{}:{}: {e}", e.line(), e.column()))
}

/// Reads and parses a versioned file.
pub fn read_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let head: VersionOnly = parse(&text, &path.display().to_string())?;
    if head.v != VERSION {
        bail!("{}: unsupported schema version {} (expected {VERSION})", path.display(), head.v);
    }
    parse(&text, &path.display().to_string())
}

/// Serializes with two-space indentation and a trailing newline.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[derive(Deserialize)]
struct VersionOnly {
    v: u32,
}

/// A versioned top-level document.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Doc<T> {
    pub v: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Doc<T> {
    pub fn new(body: T) -> Self {
        Doc { v: VERSION, body }
    }
}

// ---------------------------------------------------------------------------
// Integers and polynomials
// ---------------------------------------------------------------------------

/// An integer written either as a JSON number or as a decimal string.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum IntJson {
    Num(i64),
    Str(String),
}

impl IntJson {
    pub fn value(&self) -> Result<BigInt> {
        match self {
            IntJson::Num(n) => Ok(BigInt::from(*n)),
            IntJson::Str(s) => s.trim().parse().map_err(|_| anyhow!("invalid integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolyTermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<PolyTermJson>,
}

impl PolyJson {
    pub fn from_poly(f: &DPPoly) -> Self {
        let terms = f.terms().map(|(m, c)| PolyTermJson { c: c.to_string(), e: m.exps().to_vec() }).collect();
        PolyJson { nvars: f.nvars(), terms }
    }

    pub fn to_poly(&self) -> Result<DPPoly> {
        let mut f = DPPoly::zero(self.nvars);
        for t in &self.terms {
            if t.e.len() != self.nvars + 1 {
                bail!("exponent vector {:?} needs {} entries (theta first)", t.e, self.nvars + 1);
            }
            let c: BigInt = t.c.trim().parse().map_err(|_| anyhow!("invalid coefficient {:?}", t.c))?;
            f.add_term(Monomial(t.e.clone()), c);
        }
        Ok(f)
    }
}

// ---------------------------------------------------------------------------
// L-infinity algebras and env words
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GeneratorJson {
    pub name: String,
    pub deg: i32,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct OutJson {
    pub c: IntJson,
    pub b: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct OpJson {
    #[serde(rename = "in")]
    pub input: Vec<String>,
    pub out: Vec<OutJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LInftyJson {
    pub basis: Vec<GeneratorJson>,
    #[serde(default)]
    pub l: BTreeMap<String, Vec<OpJson>>,
}

impl LInftyJson {
    pub fn from_algebra(g: &LInftyAlgebra) -> Self {
        let basis = g.basis().iter().map(|b| GeneratorJson { name: b.name.clone(), deg: b.deg }).collect();
        let mut l: BTreeMap<String, Vec<OpJson>> = BTreeMap::new();
        for (m, comb) in g.entries() {
            let out = comb.iter().map(|(c, b)| OutJson { c: int_json(c), b: g.basis()[*b as usize].name.clone() }).collect();
            l.entry(m.len().to_string()).or_default().push(OpJson { input: g.names(m), out });
        }
        LInftyJson { basis, l }
    }

    pub fn to_algebra(&self) -> Result<LInftyAlgebra> {
        let basis: Vec<Generator> = self.basis.iter().map(|g| Generator { name: g.name.clone(), deg: g.deg }).collect();
        let index =
            |name: &str| -> Result<u16> { basis.iter().position(|g| g.name == name).map(|i| i as u16).ok_or_else(|| anyhow!("unknown generator {name:?}")) };
        let mut entries = Vec::new();
        for (arity, ops) in &self.l {
            let k: usize = arity.parse().map_err(|_| anyhow!("operation key {arity:?} is not an arity"))?;
            for op in ops {
                if op.input.len() != k {
                    bail!("l_{k} entry has {} inputs", op.input.len());
                }
                let input = op.input.iter().map(|n| index(n)).collect::<Result<Vec<_>>>()?;
                let out: Combination = op.out.iter().map(|o| Ok((o.c.value()?, index(&o.b)?))).collect::<Result<_>>()?;
                entries.push((input, out));
            }
        }
        Ok(LInftyAlgebra::new(basis, entries)?)
    }
}

fn int_json(c: &BigInt) -> IntJson {
    i64::try_from(c).map(IntJson::Num).unwrap_or_else(|_| IntJson::Str(c.to_string()))
}

/// The abelian algebra on degree-1 generators named in order of first appearance.
pub fn implicit_algebra<'a>(names: impl IntoIterator<Item = &'a String>) -> Result<LInftyAlgebra> {
    let mut basis: Vec<Generator> = Vec::new();
    for n in names {
        if !basis.iter().any(|g| &g.name == n) {
            basis.push(Generator { name: n.clone(), deg: 1 });
        }
    }
    Ok(LInftyAlgebra::abelian(basis)?)
}

/// Resolves an env word; returns the sign picked up by sorting each letter, or
/// `None` when a letter vanishes in the symmetric algebra.
pub fn resolve_word(g: &LInftyAlgebra, word: &[Vec<String>]) -> Result<Option<(i32, Word)>> {
    let mut sign = 1;
    let mut out = Vec::with_capacity(word.len());
    for letter in word {
        if letter.is_empty() {
            bail!("an env letter needs at least one generator");
        }
        let idx = letter.iter().map(|n| g.index_of(n).ok_or_else(|| anyhow!("unknown generator {n:?}"))).collect::<Result<Vec<u16>>>()?;
        match g.canonical(&idx) {
            Some((s, m)) => {
                sign *= s;
                out.push(g.letter(&m));
            }
            None => return Ok(None),
        }
    }
    Ok(Some((sign, out)))
}

pub fn word_json(g: &LInftyAlgebra, word: &[Letter]) -> Vec<Vec<String>> {
    word.iter().map(|l| g.names(&l.gens)).collect()
}

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FormTermJson {
    pub env: Vec<Vec<String>>,
    pub poly: PolyJson,
    pub dx: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GFormJson {
    pub n: usize,
    pub trunc: usize,
    pub terms: Vec<FormTermJson>,
}

impl GFormJson {
    pub fn from_form(g: &LInftyAlgebra, w: &GForm) -> Self {
        let terms = w.terms().map(|(word, mask, f)| FormTermJson { env: word_json(g, word), poly: PolyJson::from_poly(f), dx: mask_indices(mask) }).collect();
        GFormJson { n: w.nvars(), trunc: w.trunc(), terms }
    }

    pub fn to_form(&self, g: &LInftyAlgebra) -> Result<GForm> {
        let mut out = GForm::zero(self.n, self.trunc);
        for t in &self.terms {
            let f = t.poly.to_poly()?;
            if f.nvars() != self.n {
                bail!("a polynomial in {} variables inside a form on Delta^{}", f.nvars(), self.n);
            }
            if t.dx.iter().any(|&i| i == 0 || i > self.n) {
                bail!("dx indices {:?} must lie in 1..={}", t.dx, self.n);
            }
            let mut sorted = t.dx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != t.dx.len() {
                continue;
            }
            let perm_sign = permutation_sign(&t.dx);
            let Some((sign, word)) = resolve_word(g, &t.env)? else {
                continue;
            };
            let f = if sign * perm_sign < 0 { f.neg() } else { f };
            out.add_term(word, mask_of(&sorted), f);
        }
        Ok(out)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.terms.iter().flat_map(|t| t.env.iter().flatten())
    }
}

fn permutation_sign(v: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A form file: a form on `Delta^n` with an optional algebra.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FormFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<LInftyJson>,
    #[serde(flatten)]
    pub form: GFormJson,
}

impl FormFile {
    pub fn load(&self) -> Result<(LInftyAlgebra, GForm)> {
        let g = match &self.algebra {
            Some(a) => a.to_algebra()?,
            None => implicit_algebra(self.form.names())?,
        };
        let w = self.form.to_form(&g)?;
        Ok((g, w))
    }
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ChainJson {
    pub n: usize,
    pub r: usize,
    pub points: Vec<(usize, usize)>,
}

impl ChainJson {
    pub fn from_chain(c: &Chain) -> Self {
        ChainJson { n: c.n(), r: c.r(), points: c.points().to_vec() }
    }

    pub fn to_chain(&self) -> Result<Chain> {
        Ok(Chain::new(self.n, self.r, self.points.clone())?)
    }
}

// ---------------------------------------------------------------------------
// Simplicial sets and connections
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum CellJson {
    Vertex(String),
    Cell { id: String, faces: Vec<(Vec<usize>, String)> },
}

impl CellJson {
    fn id(&self) -> &str {
        match self {
            CellJson::Vertex(id) | CellJson::Cell { id, .. } => id,
        }
    }
}

/// Either `{"standard": n}` or an explicit cell table.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SpaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<BTreeMap<String, Vec<CellJson>>>,
}

/// A parsed simplicial set; `standard` is set for `Delta^n`.
#[derive(Clone, Debug)]
pub struct Space {
    pub set: FiniteSimplicialSet,
    pub standard: Option<usize>,
}

impl Space {
    /// Looks up a nondegenerate cell by dimension and id.
    pub fn find(&self, d: usize, id: &str) -> Option<usize> {
        self.set.cells(d).iter().position(|c| c.label == id)
    }
}

impl SpaceJson {
    pub fn from_set(set: &FiniteSimplicialSet) -> Self {
        let mut cells = BTreeMap::new();
        for d in 0..=set.cap() {
            let row: Vec<CellJson> = set
                .cells(d)
                .iter()
                .map(|c| {
                    if d == 0 {
                        CellJson::Vertex(c.label.clone())
                    } else {
                        let faces = c.faces.iter().map(|s| (s.surj.clone(), set.cell(s.core_dim, s.core).label.clone())).collect();
                        CellJson::Cell { id: c.label.clone(), faces }
                    }
                })
                .collect();
            cells.insert(d.to_string(), row);
        }
        SpaceJson { standard: None, cap: Some(set.cap()), cells: Some(cells) }
    }

    pub fn to_space(&self) -> Result<Space> {
        match (&self.standard, &self.cells) {
            (Some(n), None) => Ok(Space { set: standard_realized(*n).set().clone(), standard: Some(*n) }),
            (None, Some(cells)) => {
                let top = cells.keys().map(|k| k.parse::<usize>().map_err(|_| anyhow!("cell key {k:?} is not a dimension"))).collect::<Result<Vec<_>>>()?;
                let cap = self.cap.unwrap_or_else(|| top.iter().copied().max().unwrap_or(0));
                let mut rows: Vec<Vec<CellJson>> = vec![Vec::new(); cap + 1];
                for (k, row) in cells {
                    let d: usize = k.parse()?;
                    if d > cap {
                        bail!("cells in dimension {d} exceed the cap {cap}");
                    }
                    rows[d] = row.clone();
                }
                let mut built: Vec<Vec<Cell>> = Vec::with_capacity(cap + 1);
                for (d, row) in rows.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for c in row {
                        if out.iter().any(|x: &Cell| x.label == c.id()) {
                            bail!("duplicate id {:?} in dimension {d}", c.id());
                        }
                        let faces = match c {
                            CellJson::Vertex(_) if d == 0 => Vec::new(),
                            CellJson::Cell { faces, .. } if d > 0 => faces
                                .iter()
                                .map(|(surj, core)| {
                                    let core_dim = *surj.last().ok_or_else(|| anyhow!("empty face map in cell {:?}", c.id()))?;
                                    let idx = built
                                        .get(core_dim)
                                        .and_then(|r| r.iter().position(|x| x.label == *core))
                                        .ok_or_else(|| anyhow!("face {core:?} of {:?} is not a cell of dimension {core_dim}", c.id()))?;
                                    Ok(Simplex { surj: surj.clone(), core_dim, core: idx })
                                })
                                .collect::<Result<Vec<_>>>()?,
                            CellJson::Cell { faces, .. } if faces.is_empty() => Vec::new(),
                            _ => bail!("cell {:?} in dimension {d} has the wrong shape", c.id()),
                        };
                        out.push(Cell { label: c.id().to_string(), faces });
                    }
                    built.push(out);
                }
                Ok(Space { set: FiniteSimplicialSet::new(cap, built)?, standard: None })
            }
            _ => bail!("a space needs exactly one of \"standard\" and \"cells\""),
        }
    }
}

/// A form map on a space: a global form on `Delta^n` or one value per cell id.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FormMapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<LInftyJson>,
    pub trunc: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<GFormJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, BTreeMap<String, GFormJson>>>,
}

impl FormMapJson {
    pub fn algebra(&self) -> Result<LInftyAlgebra> {
        if let Some(a) = &self.algebra {
            return a.to_algebra();
        }
        let mut names: Vec<&String> = Vec::new();
        if let Some(f) = &self.form {
            names.extend(f.names());
        }
        for row in self.values.iter().flat_map(|v| v.values()) {
            for f in row.values() {
                names.extend(f.names());
            }
        }
        implicit_algebra(names)
    }

    /// Builds the form map and checks the face conditions.
    pub fn load(&self, space: &Space) -> Result<(LInftyAlgebra, FormMap)> {
        let g = self.algebra()?;
        let map = match (&self.form, &self.values) {
            (Some(form), None) => {
                let n = space.standard.ok_or_else(|| anyhow!("a global form needs a standard simplex as the space"))?;
                let w = form.to_form(&g)?;
                if w.nvars() != n {
                    bail!("a form on Delta^{} given for Delta^{n}", w.nvars());
                }
                FormMap::on_standard(&standard_realized(n), &w.retruncate(self.trunc))?
            }
            (None, Some(values)) => {
                for (k, row) in values {
                    let d: usize = k.parse().map_err(|_| anyhow!("value key {k:?} is not a dimension"))?;
                    for id in row.keys() {
                        if space.find(d, id).is_none() {
                            bail!("no cell {id:?} in dimension {d}");
                        }
                    }
                }
                FormMap::from_fn(&space.set, self.trunc, |s| {
                    let d = s.core_dim;
                    let id = &space.set.cell(d, s.core).label;
                    match values.get(&d.to_string()).and_then(|row| row.get(id)) {
                        Some(f) => {
                            let w = f.to_form(&g).map_err(|e| dpholo_core::Error::Malformed(e.to_string()))?;
                            if w.nvars() != d {
                                return Err(dpholo_core::Error::VariableCount { expected: d, found: w.nvars() });
                            }
                            Ok(w.retruncate(self.trunc))
                        }
                        None => Ok(GForm::zero(d, self.trunc)),
                    }
                })?
            }
            _ => bail!("a form map needs exactly one of \"form\" and \"values\""),
        };
        if let Some(m) = map.validate().first() {
            bail!("the values do not agree on faces: {m}");
        }
        Ok((g, map))
    }
}

// ---------------------------------------------------------------------------
// A-infinity categories
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ArrowJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub deg: i32,
}

/// Objects, arrows with unshifted degrees, Taylor components `b_k` keyed by
/// arity (`b_1` is the differential) and optional strict units.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AInftyJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub b: BTreeMap<String, Vec<OpJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<BTreeMap<String, String>>,
}

impl AInftyJson {
    pub fn to_quiver(&self) -> Result<GradedQuiver> {
        let (arrows, d, _) = self.parts()?;
        Ok(GradedQuiver::new(self.objects.len(), arrows, d)?)
    }

    #[allow(clippy::type_complexity)]
    fn parts(&self) -> Result<(Vec<QuiverArrow>, Option<Vec<Lin<usize>>>, BTreeMap<Vec<usize>, Lin<usize>>)> {
        let obj = |name: &str| self.objects.iter().position(|o| o == name).ok_or_else(|| anyhow!("unknown object {name:?}"));
        let arr = |name: &str| self.arrows.iter().position(|a| a.name == name).ok_or_else(|| anyhow!("unknown arrow {name:?}"));
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok(QuiverArrow { source: obj(&a.source)?, target: obj(&a.target)?, degree: a.deg, label: a.name.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let mut d: Option<Vec<Lin<usize>>> = None;
        let mut taylor = BTreeMap::new();
        for (arity, ops) in &self.b {
            let k: usize = arity.parse().map_err(|_| anyhow!("operation key {arity:?} is not an arity"))?;
            for op in ops {
                if op.input.len() != k {
                    bail!("b_{k} entry has {} inputs", op.input.len());
                }
                let input = op.input.iter().map(|n| arr(n)).collect::<Result<Vec<_>>>()?;
                let mut out = Lin::new();
                for o in &op.out {
                    lin_add(&mut out, arr(&o.b)?, o.c.value()?);
                }
                if k == 1 {
                    let table = d.get_or_insert_with(|| vec![Lin::new(); arrows.len()]);
                    table[input[0]] = out;
                } else if taylor.insert(input, out).is_some() {
                    bail!("b_{k} is given twice on {:?}", op.input);
                }
            }
        }
        Ok((arrows, d, taylor))
    }

    pub fn to_category(&self) -> Result<AInftyCategory> {
        let (arrows, d, taylor) = self.parts()?;
        let quiver = GradedQuiver::new(self.objects.len(), arrows, d)?;
        let units = match &self.units {
            Some(u) => {
                let mut out = Vec::with_capacity(self.objects.len());
                for o in &self.objects {
                    let name = u.get(o).ok_or_else(|| anyhow!("object {o:?} has no unit"))?;
                    out.push(self.arrows.iter().position(|a| &a.name == name).ok_or_else(|| anyhow!("unknown unit {name:?}"))?);
                }
                Some(out)
            }
            None => None,
        };
        Ok(AInftyCategory::new(quiver, taylor, units)?)
    }
}

/// The file given to `ainfty-check`: either an L-infinity algebra or an
/// A-infinity category.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum StructureJson {
    LInfty(LInftyJson),
    AInfty(AInftyJson),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{self, Sampler};
    use proptest::prelude::*;

    #[test]
    fn polynomial_round_trip_is_exact() {
        let text = r#"{"nvars":2,"terms":[{"c":"-3","e":[0,0,1]},{"c":"123456789012345678901234567890","e":[1,2,0]}]}"#;
        let p: PolyJson = parse(text, "test").unwrap();
        let f = p.to_poly().unwrap();
        let back = serde_json::to_string(&PolyJson::from_poly(&f)).unwrap();
        let again: PolyJson = parse(&back, "test").unwrap();
        assert_eq!(again.to_poly().unwrap(), f);
        assert_eq!(serde_json::to_string(&PolyJson::from_poly(&again.to_poly().unwrap())).unwrap(), back);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse::<PolyJson>("{\n  \"nvars\": 2,\n  \"terms\": [ }", "bad.json").unwrap_err().to_string();
        assert!(err.starts_with("bad.json:3:"), "{err}");
    }

    #[test]
    fn dx_order_sets_the_sign() {
        let text = r#"{"n":2,"trunc":1,"terms":[{"env":[],"poly":{"nvars":2,"terms":[{"c":"1","e":[0,0,0]}]},"dx":[2,1]}]}"#;
        let f: GFormJson = parse(text, "t").unwrap();
        let g = implicit_algebra(f.names()).unwrap();
        let w = f.to_form(&g).unwrap();
        assert_eq!(w, GForm::term(2, 1, vec![], &[1, 2], DPPoly::constant(2, -1)).unwrap());
    }

    #[test]
    fn letters_are_sorted_with_koszul_signs() {
        let g = LInftyAlgebra::abelian(vec![Generator { name: "a".into(), deg: 2 }, Generator { name: "b".into(), deg: 2 }]).unwrap();
        let (s, w) = resolve_word(&g, &[vec!["b".into(), "a".into()]]).unwrap().unwrap();
        assert_eq!((s, w[0].gens.clone()), (-1, vec![0, 1]));
        assert!(resolve_word(&g, &[vec!["a".into(), "a".into()]]).unwrap().is_none());
    }

    #[test]
    fn standard_simplex_round_trips_through_cells() {
        let set = standard_realized(2).set().clone();
        let text = serde_json::to_string(&SpaceJson::from_set(&set)).unwrap();
        let back: SpaceJson = parse(&text, "t").unwrap();
        assert_eq!(back.to_space().unwrap().set, set);
    }

    #[test]
    fn category_files_build_the_interval() {
        let text = r#"{"objects":["0","1"],
            "arrows":[{"name":"i0","source":"0","target":"0","deg":0},{"name":"i1","source":"1","target":"1","deg":0},
                      {"name":"f","source":"0","target":"1","deg":0}],
            "b":{"2":[{"in":["i0","i0"],"out":[{"c":-1,"b":"i0"}]},{"in":["i1","i1"],"out":[{"c":-1,"b":"i1"}]},
                      {"in":["i0","f"],"out":[{"c":-1,"b":"f"}]},{"in":["f","i1"],"out":[{"c":-1,"b":"f"}]}]},
            "units":{"0":"i0","1":"i1"}}"#;
        let a: AInftyJson = parse(text, "t").unwrap();
        let cat = a.to_category().unwrap();
        let rep = dpholo_core::ainfty::check_square_zero(&cat, 4).unwrap();
        assert!(rep.passed() && rep.cases > 0);
    }

    #[test]
    fn algebras_round_trip() {
        for g in [random::abelian_rank2(), random::nilpotent_rank3(), random::acyclic_pair()] {
            let text = serde_json::to_string(&LInftyJson::from_algebra(&g)).unwrap();
            let h = parse::<LInftyJson>(&text, "algebra").unwrap().to_algebra().unwrap();
            assert_eq!(h.basis(), g.basis());
            assert_eq!(h.entries().collect::<Vec<_>>(), g.entries().collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn polynomials_round_trip(seed in any::<u64>(), nvars in 0usize..5) {
            let f = Sampler::new(seed).poly(nvars, 6, 1000, 6);
            let text = serde_json::to_string(&PolyJson::from_poly(&f)).unwrap();
            prop_assert_eq!(parse::<PolyJson>(&text, "poly").unwrap().to_poly().unwrap(), f);
        }

        #[test]
        fn forms_round_trip(seed in any::<u64>(), n in 0usize..4, nilpotent in any::<bool>()) {
            let g = if nilpotent { random::nilpotent_rank3() } else { random::abelian_rank2() };
            let w = Sampler::new(seed).form(n, 3, &random::letters_of(&g), 3, 3, 5);
            let text = serde_json::to_string(&GFormJson::from_form(&g, &w)).unwrap();
            prop_assert_eq!(parse::<GFormJson>(&text, "form").unwrap().to_form(&g).unwrap(), w);
        }
    }
}
