//! The `dpholo` command line: chains, integrals, Stokes and de Rham checks,
//! truncated holonomy and structural validation of L-infinity and A-infinity
//! data.  Output goes to any writer so that runs can be captured.
//!
//! Exit status: 0 when every verification passes, 1 when one fails, 2 when a
//! cap is exhausted, 3 for unreadable or malformed input or bad arguments.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::json::{self, ChainJson, Doc, FormFile, FormMapJson, GFormJson, LInftyJson, PolyJson, SpaceJson, StructureJson};
use crate::random::{self, Sampler};
use crate::suites::{self, Check, Coverage, Settings};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dpholo_core::ainfty::{check_square_zero, check_square_zero_on, check_strict_units, free_on_quiver, unitalize};
use dpholo_core::chains::enumerate_maximal;
use dpholo_core::checks::{self, Report};
use dpholo_core::derham::GForm;
use dpholo_core::holonomy::{self, chain_map_residual, hol_at, integrate_simplex, DegreeMode};
use dpholo_core::integrate::{boundary_fiberwise_product, fiberwise, stokes_residual_product};
use dpholo_core::linfty::{word_degree, LInftyAlgebra, Letter};
use dpholo_core::simplicial::{path_space, standard_realized, FormMap, ProductForm, Simplex};
use dpholo_core::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dpholo", version, about = "Divided-power de Rham forms, simplicial integration and truncated holonomy")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List the maximal chains of [n] x [r].
    Chains(ChainsArgs),
    /// Integrate a form on Delta^(n+r) along the fibers of Delta^n x Delta^r,
    /// or check the integral identities on random polynomials.
    Integrate(IntegrateArgs),
    /// Check Stokes' formula for fiberwise integration.
    Stokes(StokesArgs),
    /// Truncated holonomy of a connection on the path space of a simplicial set.
    Hol(HolArgs),
    /// Integrate a form over every simplex and check the chain-map law.
    Derham(DerhamArgs),
    /// Run every structural check on an L-infinity algebra or A-infinity category file.
    AinftyCheck(AinftyArgs),
    /// Run the numbered verification suites.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ChainsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Largest n + r accepted.
    #[arg(long, default_value_t = 12)]
    cap: usize,
    /// Write the chains as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IntegrateArgs {
    /// A form on Delta^(n+r).
    #[arg(long, conflicts_with = "random", requires_all = ["n", "r"])]
    form: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Check the integral identities on this many random polynomial pairs.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the fiberwise integral as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StokesArgs {
    /// Number of random forms.
    #[arg(long, conflicts_with = "form")]
    random: Option<usize>,
    /// A form on Delta^(n+r) to check instead of random ones.
    #[arg(long)]
    form: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// `abelian`, `nilpotent` or an L-infinity algebra file.
    #[arg(long, default_value = "abelian")]
    algebra: String,
    /// Longest env word in random forms.
    #[arg(long, default_value_t = 2)]
    word_cap: usize,
}

#[derive(Args)]
struct HolArgs {
    /// The simplicial set.
    #[arg(long)]
    space: PathBuf,
    /// The connection: a form map of form degree 1.
    #[arg(long)]
    conn: PathBuf,
    /// Truncation order R of the holonomy series.
    #[arg(long)]
    order: usize,
    /// Word-length truncation W; defaults to the one in the connection file.
    #[arg(long)]
    trunc: Option<usize>,
    /// Largest dimension D of path-space simplices.
    #[arg(long, default_value_t = 0)]
    degree_cap: usize,
    /// Also check that holonomy commutes with the simplicial operators.
    #[arg(long)]
    check: bool,
    /// Write the holonomy as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DerhamArgs {
    /// The simplicial set.
    #[arg(long, requires = "form", conflicts_with = "random")]
    space: Option<PathBuf>,
    /// A form map on the space.
    #[arg(long, requires = "space")]
    form: Option<PathBuf>,
    /// Check the chain-map law on this many random forms on Delta^n.
    #[arg(long, requires = "n")]
    random: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the integrals as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AinftyArgs {
    file: PathBuf,
    /// Longest word (A-infinity) or Sym weight (L-infinity) checked.
    #[arg(long, default_value_t = 4)]
    word_cap: usize,
    /// Largest letter degree enumerated for L-infinity checks.
    #[arg(long, default_value_t = 8)]
    degree_cap: i32,
}

#[derive(Args)]
struct SelftestArgs {
    /// Reduced caps; every check is then reported as capped.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<usize>,
    /// Print run times and time limits.
    #[arg(long)]
    timings: bool,
}

/// Runs one invocation and returns its exit status.  Reports go to `out`,
/// errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                3
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let res = match cli.verb {
        Verb::Chains(a) => chains(a, out),
        Verb::Integrate(a) => integrate(a, out),
        Verb::Stokes(a) => stokes(a, out),
        Verb::Hol(a) => hol(a, out),
        Verb::Derham(a) => derham(a, out),
        Verb::AinftyCheck(a) => ainfty_check(a, out),
        Verb::Selftest(a) => selftest(a, out),
    };
    match res {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 2,
        Some(Error::Axiom(_) | Error::Incompatible(_)) => 1,
        _ => 3,
    }
}

fn cap_exceeded(cap: usize, what: String) -> anyhow::Error {
    Error::CapExceeded { cap, what }.into()
}

fn write_json<T: Serialize>(out: &mut dyn Write, path: &Path, body: T) -> Result<()> {
    fs::write(path, json::to_text(&Doc::new(body))).with_context(|| format!("cannot write {}", path.display()))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(())
}

/// Prints a check in the same layout as `selftest`.
fn report(out: &mut dyn Write, c: &Check) -> Result<bool> {
    let status = if c.passed() { "ok  " } else { "FAIL" };
    writeln!(out, "{status} {} [{}] {}/{} cases", c.label, c.coverage, c.cases - c.failures.len(), c.cases)?;
    for f in c.failures.iter().take(5) {
        writeln!(out, "    {f}")?;
    }
    Ok(c.passed())
}

fn algebra_arg(name: &str) -> Result<LInftyAlgebra> {
    match name {
        "abelian" => Ok(random::abelian_rank2()),
        "nilpotent" => Ok(random::nilpotent_rank3()),
        path => json::read_file::<LInftyJson>(Path::new(path))?.to_algebra(),
    }
}

fn word_text(g: &LInftyAlgebra, w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|l| g.names(&l.gens).join("")).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ChainsOut {
    n: usize,
    r: usize,
    chains: Vec<ChainJson>,
}

fn chains(a: ChainsArgs, out: &mut dyn Write) -> Result<bool> {
    if a.n + a.r > a.cap {
        return Err(cap_exceeded(a.cap, format!("chains of [{}] x [{}] need n + r = {}", a.n, a.r, a.n + a.r)));
    }
    let cs = enumerate_maximal(a.n, a.r);
    writeln!(out, "{} chains of [{}] x [{}]", cs.len(), a.n, a.r)?;
    for c in &cs {
        writeln!(out, "{c}")?;
    }
    if let Some(path) = &a.out {
        write_json(out, path, ChainsOut { n: a.n, r: a.r, chains: cs.iter().map(ChainJson::from_chain).collect() })?;
    }
    Ok(true)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct FiberIntegralOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<LInftyJson>,
    #[serde(flatten)]
    form: GFormJson,
}

fn load_product_form(path: &Path, n: usize, r: usize) -> Result<(LInftyAlgebra, GForm, ProductForm)> {
    let file: FormFile = json::read_file(path)?;
    let (g, w) = file.load()?;
    if w.nvars() != n + r {
        bail!("{}: a form on Delta^{} given for Delta^{n} x Delta^{r}", path.display(), w.nvars());
    }
    let pf = ProductForm::from_global(n, r, &w)?;
    Ok((g, w, pf))
}

fn integrate(a: IntegrateArgs, out: &mut dyn Write) -> Result<bool> {
    if let Some(count) = a.random {
        writeln!(out, "seed {}", a.seed)?;
        let mut sampler = Sampler::new(a.seed);
        let mut c = Check::new("integral of a derivative, integration by parts, derivative of an integral", Coverage::Sampled);
        for k in 0..count {
            let nvars = 1 + k % 4;
            let f = sampler.poly(nvars, 5, 9, 4);
            let g = sampler.poly(nvars, 5, 9, 4);
            c.record_result(checks::integral_identities(&f, &g).map(|n| n > 0), || format!("f = {f}, g = {g}"));
        }
        writeln!(out, "identities hold in {}/{}", c.cases - c.failures.len(), c.cases)?;
        return report(out, &c);
    }
    let path = a.form.as_ref().ok_or_else(|| anyhow!("give --form with --n and --r, or --random"))?;
    let (n, r) = (a.n.unwrap_or(0), a.r.unwrap_or(0));
    let (g, _, pf) = load_product_form(path, n, r)?;
    let integral = fiberwise(&pf)?;
    let boundary = boundary_fiberwise_product(&pf, true)?;
    let residual = stokes_residual_product(&pf)?;
    writeln!(out, "fiberwise integral over Delta^{r}: {}", form_text(&g, &integral))?;
    writeln!(out, "boundary integral: {}", form_text(&g, &boundary))?;
    writeln!(out, "stokes residual: {}", form_text(&g, &residual))?;
    if let Some(path) = &a.out {
        write_json(out, path, FiberIntegralOut { algebra: Some(LInftyJson::from_algebra(&g)), form: GFormJson::from_form(&g, &integral) })?;
    }
    Ok(residual.is_zero())
}

fn form_text(g: &LInftyAlgebra, w: &GForm) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    w.terms()
        .map(|(word, m, f)| {
            let dx: String = dpholo_core::derham::mask_indices(m).iter().map(|i| format!(" dx{i}")).collect();
            format!("[{}]({f}){dx}", word_text(g, word))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

// ---------------------------------------------------------------------------

fn stokes(a: StokesArgs, out: &mut dyn Write) -> Result<bool> {
    if let Some(path) = &a.form {
        let (g, _, pf) = load_product_form(path, a.n, a.r)?;
        let residual = stokes_residual_product(&pf)?;
        let ok = residual.is_zero();
        writeln!(out, "residual {} in {}/1", if ok { "0" } else { "nonzero" }, usize::from(ok))?;
        if !ok {
            writeln!(out, "residual: {}", form_text(&g, &residual))?;
        }
        return Ok(ok);
    }
    let count = a.random.ok_or_else(|| anyhow!("give --random K or --form FILE"))?;
    let g = algebra_arg(&a.algebra)?;
    writeln!(out, "seed {}", a.seed)?;
    let mut sampler = Sampler::new(a.seed);
    let mut c = Check::new(format!("Stokes on Delta^{} x Delta^{}", a.n, a.r), Coverage::Sampled);
    suites::stokes_random(&mut sampler, &g, a.n, a.r, count, a.word_cap, &mut c);
    let good = c.cases - c.failures.len();
    if good == c.cases {
        writeln!(out, "residual 0 in {good}/{}", c.cases)?;
    } else {
        writeln!(out, "residual 0 in {good}/{}; failures:", c.cases)?;
        for f in c.failures.iter().take(5) {
            writeln!(out, "    {f}")?;
        }
    }
    Ok(c.passed())
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct HolTerm {
    on: Vec<usize>,
    env: Vec<Vec<String>>,
    value: PolyJson,
}

#[derive(Serialize)]
struct HolPart {
    env_degree: i32,
    cochain_degree: usize,
    exact: bool,
    terms: Vec<HolTerm>,
}

#[derive(Serialize)]
struct HolSimplex {
    dim: usize,
    label: String,
    source: String,
    target: String,
    parts: Vec<HolPart>,
}

#[derive(Serialize)]
struct HolOut {
    order: usize,
    trunc: usize,
    path_dim_cap: usize,
    exact_through_env_degree: usize,
    simplices: BTreeMap<String, HolSimplex>,
}

fn hol(a: HolArgs, out: &mut dyn Write) -> Result<bool> {
    let space = json::read_file::<SpaceJson>(&a.space)?.to_space()?;
    let mut conn: FormMapJson = json::read_file(&a.conn)?;
    if let Some(w) = a.trunc {
        conn.trunc = w;
    }
    let w = conn.trunc;
    if a.order > w {
        return Err(cap_exceeded(w, format!("order {} needs words of length {} but the word cap is {w}", a.order, a.order)));
    }
    let (g, nabla) = conn.load(&space)?;
    if !nabla.is_connection() {
        bail!("{}: a connection must have form degree 1", a.conn.display());
    }
    if g.basis().iter().any(|b| b.deg < 1) {
        bail!("{}: the algebra must be connected (generator degrees >= 1)", a.conn.display());
    }
    if holonomy::homogeneous_degree(&nabla, DegreeMode::Total).is_none() {
        bail!("{}: the connection is not homogeneous", a.conn.display());
    }
    let horizon = a.order.min(w);
    let path = path_space(&space.set, a.degree_cap)?;
    let set = path.set();
    let vertex = |s: &Simplex| -> Result<String> { Ok(space.set.cell(0, s.core).label.clone()) };
    let mut simplices = BTreeMap::new();
    writeln!(out, "holonomy to order {} with word cap {w}; exact in env degree <= {horizon}", a.order)?;
    for gamma in set.nondegenerate() {
        let d = gamma.dim();
        let label = set.cell(d, gamma.core).label.clone();
        let id = format!("{d}:{}", gamma.core);
        let (source, target) = (vertex(&path.endpoint(&gamma, 0)?)?, vertex(&path.endpoint(&gamma, 1)?)?);
        let h = hol_at(&path, &nabla, a.order, &gamma)?;
        let mut rows: Vec<(usize, i32, &Vec<usize>, &Vec<Letter>, _)> = Vec::new();
        for (on, value) in h.values() {
            for (word, _, f) in value.terms() {
                rows.push((on.len() - 1, word_degree(word), on, word, f));
            }
        }
        rows.sort_by(|x, y| (x.0, x.1, x.2, x.3).cmp(&(y.0, y.1, y.2, y.3)));
        writeln!(out, "{id} {label} from {source} to {target}")?;
        let mut parts: BTreeMap<(i32, usize), Vec<HolTerm>> = BTreeMap::new();
        for (q, p, on, word, f) in rows {
            writeln!(out, "  q={q} p={p} on {on:?}  {}  {f}", word_text(&g, word))?;
            parts.entry((p, q)).or_default().push(HolTerm { on: on.clone(), env: json::word_json(&g, word), value: PolyJson::from_poly(f) });
        }
        let parts = parts.into_iter().map(|((p, q), terms)| HolPart { env_degree: p, cochain_degree: q, exact: p <= horizon as i32, terms }).collect();
        simplices.insert(id, HolSimplex { dim: d, label, source, target, parts });
    }
    let mut ok = true;
    if a.check {
        match holonomy::check_hol_simplicial(&path, &nabla, a.order) {
            Ok(n) => writeln!(out, "ok   holonomy commutes with the simplicial operators [exhaustive] {n}/{n} cases")?,
            Err(e) => {
                writeln!(out, "FAIL holonomy commutes with the simplicial operators: {e}")?;
                ok = false;
            }
        }
    }
    if let Some(path) = &a.out {
        write_json(out, path, HolOut { order: a.order, trunc: w, path_dim_cap: a.degree_cap, exact_through_env_degree: horizon, simplices })?;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DerhamOut {
    algebra: LInftyJson,
    trunc: usize,
    integrals: BTreeMap<String, BTreeMap<String, GFormJson>>,
}

fn derham(a: DerhamArgs, out: &mut dyn Write) -> Result<bool> {
    if let Some(count) = a.random {
        let n = a.n.unwrap_or(0);
        writeln!(out, "seed {}", a.seed)?;
        let mut sampler = Sampler::new(a.seed);
        let letters = random::letters_of(&random::nilpotent_rank3());
        let xr = standard_realized(n);
        let mut c = Check::new(format!("integral of d w over x equals integral of w over the boundary of x, x in Delta^{n}"), Coverage::Sampled);
        for k in 0..count {
            let w = FormMap::on_standard(&xr, &sampler.form(n, 2, &letters, 2, 3, 4))?;
            for x in xr.set().nondegenerate() {
                c.record_result(chain_map_residual(&w, &x).map(|r| r.is_zero()), || format!("form {k}, simplex {x}"));
            }
        }
        writeln!(out, "residual 0 in {}/{}", c.cases - c.failures.len(), c.cases)?;
        return report(out, &c);
    }
    let (space_path, form_path) = match (&a.space, &a.form) {
        (Some(s), Some(f)) => (s, f),
        _ => bail!("give --space and --form, or --random with --n"),
    };
    let space = json::read_file::<SpaceJson>(space_path)?.to_space()?;
    let (g, w) = json::read_file::<FormMapJson>(form_path)?.load(&space)?;
    let mut integrals: BTreeMap<String, BTreeMap<String, GFormJson>> = BTreeMap::new();
    let mut c = Check::new("integral of d w over x equals integral of w over the boundary of x", Coverage::Exhaustive);
    for x in space.set.nondegenerate() {
        let d = x.dim();
        let id = space.set.cell(d, x.core).label.clone();
        let v = integrate_simplex(&w, &x)?;
        writeln!(out, "{d}:{id}  {}", form_text(&g, &v))?;
        integrals.entry(d.to_string()).or_default().insert(id.clone(), GFormJson::from_form(&g, &v));
        c.record_result(chain_map_residual(&w, &x).map(|r| r.is_zero()), || format!("simplex {id}"));
    }
    let ok = report(out, &c)?;
    if let Some(path) = &a.out {
        write_json(out, path, DerhamOut { algebra: LInftyJson::from_algebra(&g), trunc: w.trunc(), integrals })?;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------

fn from_report(rep: Result<Report, Error>, label: &str) -> Check {
    match rep {
        Ok(r) => {
            let mut c = Check::from_report(r, Coverage::Capped);
            c.label = label.to_string();
            c
        }
        Err(e) => {
            let mut c = Check::new(label, Coverage::Capped);
            c.record(false, || e.to_string());
            c
        }
    }
}

/// Records a check that returns its number of cases or the first failure.
fn count_into(c: &mut Check, res: Result<usize, Error>) {
    match res {
        Ok(0) => c.record(false, || "no cases within the caps".into()),
        Ok(n) => c.cases += n,
        Err(e) => c.record(false, || e.to_string()),
    }
}

fn ainfty_check(a: AinftyArgs, out: &mut dyn Write) -> Result<bool> {
    if a.word_cap == 0 {
        bail!("--word-cap must be positive");
    }
    let file: StructureJson = json::read_file(&a.file)?;
    let mut checks = Vec::new();
    match file {
        StructureJson::LInfty(l) => {
            let g = l.to_algebra()?;
            writeln!(out, "L-infinity algebra on {} generators", g.basis().len())?;
            let mut sym = Check::new(format!("D^2 = 0 on Sym g[1], weight <= {}, degree <= {}", a.word_cap, a.degree_cap), Coverage::Capped);
            count_into(&mut sym, g.check_square_zero(a.word_cap, a.degree_cap));
            let mut env = Check::new(format!("delta^2 = 0 on the enveloping algebra, words of length <= {}", a.word_cap), Coverage::Capped);
            count_into(&mut env, g.check_delta_square_zero(a.word_cap + 1, 2, a.degree_cap.min(4)));
            checks.extend([sym, env]);
        }
        StructureJson::AInfty(c) => {
            let cat = c.to_category()?;
            let len = a.word_cap;
            writeln!(out, "A-infinity category with {} objects and {} arrows", c.objects.len(), c.arrows.len())?;
            checks.push(from_report(check_square_zero(&cat, len), &format!("b^2 = 0, words of length <= {len}")));
            if c.units.is_some() {
                checks.push(from_report(check_strict_units(&cat, len), &format!("strict units, words of length <= {len}")));
            }
            let u = unitalize(cat.clone());
            checks.push(from_report(check_square_zero(&u, len), &format!("unitalization: b^2 = 0, words of length <= {len}")));
            checks.push(from_report(check_strict_units(&u, len), &format!("unitalization: strict units, words of length <= {len}")));
            let leaves = len.min(3);
            let free = free_on_quiver(cat.quiver().clone(), leaves);
            checks.push(from_report(
                check_square_zero_on(&free, &free.tree_words(leaves)),
                &format!("free model on the quiver: b^2 = 0, trees with <= {leaves} leaves"),
            ));
        }
    }
    let mut ok = true;
    for c in &checks {
        ok &= report(out, c)?;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------

fn selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<bool> {
    let settings = Settings { seed: a.seed, quick: a.quick };
    let ids: Vec<usize> = if a.only.is_empty() { (1..=10).collect() } else { a.only.clone() };
    if let Some(bad) = ids.iter().find(|i| !(1..=10).contains(*i)) {
        bail!("no criterion {bad}; they are numbered 1 to 10");
    }
    writeln!(out, "selftest: seed {}, {} caps", a.seed, if a.quick { "reduced" } else { "full" })?;
    let (mut passed, mut failed) = (0, 0);
    let mut by_coverage: BTreeMap<&str, usize> = BTreeMap::new();
    for id in ids {
        let c = suites::run(id, &settings);
        writeln!(out, "{}", c.summary_with(a.timings))?;
        for line in c.details() {
            writeln!(out, "{line}")?;
        }
        for check in &c.checks {
            *by_coverage
                .entry(match check.coverage {
                    Coverage::Exhaustive => "exhaustive",
                    Coverage::Sampled => "sampled",
                    Coverage::Capped => "capped",
                })
                .or_default() += 1;
        }
        if c.passed() {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    let cov = |k: &str| by_coverage.get(k).copied().unwrap_or(0);
    writeln!(
        out,
        "selftest: {passed} passed, {failed} failed; checks: {} exhaustive, {} sampled, {} capped",
        cov("exhaustive"),
        cov("sampled"),
        cov("capped")
    )?;
    if a.quick {
        writeln!(out, "selftest: capped checks ran with reduced caps; a pass does not cover the full domain")?;
    }
    Ok(failed == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
    }

    fn invoke(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("dpholo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("dpholo-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn chains_of_a_square() {
        let (code, out, _) = invoke(&["chains", "--n", "2", "--r", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("6 chains of [2] x [2]\n"));
        assert_eq!(out.lines().filter(|l| l.starts_with('{')).count(), 6);
    }

    #[test]
    fn random_stokes_example() {
        let (code, out, _) = invoke(&["stokes", "--random", "100", "--n", "2", "--r", "2", "--seed", "7"]);
        assert_eq!((code, out.as_str()), (0, "seed 7\nresidual 0 in 100/100\n"));
    }

    #[test]
    fn holonomy_table_is_the_divided_power_exponential() {
        let (code, out, err) = invoke(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "6"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("holonomy to order 6 with word cap 8; exact in env degree <= 6\n"));
        for r in 1..=6 {
            let word = vec!["e"; r].join(" ");
            let value = if r == 1 { "t".to_string() } else { format!("t^[{r}]") };
            assert!(out.contains(&format!("  q=0 p={r} on [0]  {word}  {value}\n")), "order {r}");
        }
        assert!(!out.contains("p=7"));
    }

    #[test]
    fn holonomy_json_is_versioned_and_indexed_by_bidegree() {
        let path = scratch("hol.json");
        let (code, _, err) =
            invoke(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(doc["v"], 1);
        assert_eq!(doc["exact_through_env_degree"], 2);
        let moving = doc["simplices"].as_object().unwrap().values().find(|s| s["source"] != s["target"]).unwrap();
        let degrees: Vec<i64> = moving["parts"].as_array().unwrap().iter().map(|p| p["env_degree"].as_i64().unwrap()).collect();
        assert_eq!(degrees, vec![0, 1, 2]);
    }

    #[test]
    fn exhausted_caps_exit_with_2() {
        let (code, _, err) = invoke(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "9"]);
        assert_eq!(code, 2);
        assert!(err.contains("cap 8 exceeded: order 9"), "{err}");
        assert_eq!(invoke(&["chains", "--n", "7", "--r", "6"]).0, 2);
    }

    #[test]
    fn parse_errors_name_line_and_column() {
        let bad = scratch("bad.json");
        fs::write(&bad, "{\"v\": 1,\n  \"standard\": 1,,\n}").unwrap();
        let (code, _, err) = invoke(&["derham", "--space", bad.to_str().unwrap(), "--form", &data("const-e.json")]);
        assert_eq!(code, 3);
        assert!(err.contains("bad.json:2:"), "{err}");
    }

    #[test]
    fn bad_arguments_exit_with_3() {
        assert_eq!(invoke(&["chains", "--n", "two", "--r", "2"]).0, 3);
        assert_eq!(invoke(&["stokes", "--n", "1", "--r", "1"]).0, 3);
        assert_eq!(invoke(&["--help"]).0, 0);
    }

    #[test]
    fn structural_checks_pass_and_fail() {
        let (code, out, _) = invoke(&["ainfty-check", &data("interval.json")]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().filter(|l| l.starts_with("ok   ")).count(), 5);
        let (code, out, _) = invoke(&["ainfty-check", &data("heisenberg.json"), "--word-cap", "3"]);
        assert_eq!(code, 0, "{out}");
        let text = fs::read_to_string(data("interval.json")).unwrap();
        let bad = scratch("bad-unit.json");
        fs::write(&bad, text.replace("\"in\": [\"f\", \"i1\"], \"out\": [{ \"c\": -1", "\"in\": [\"f\", \"i1\"], \"out\": [{ \"c\": 1")).unwrap();
        assert_eq!(invoke(&["ainfty-check", bad.to_str().unwrap()]).0, 1);
    }

    #[test]
    fn output_is_byte_identical_for_a_fixed_seed() {
        let args = ["derham", "--random", "3", "--n", "2", "--seed", "19"];
        assert_eq!(invoke(&args), invoke(&args));
        let args = ["selftest", "--quick", "--only", "3,6"];
        assert_eq!(invoke(&args), invoke(&args));
    }

    #[test]
    fn reduced_caps_are_marked_as_such() {
        let (code, out, _) = invoke(&["selftest", "--quick", "--only", "1"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS [ 1] maximal chain counts and brute-force oracle (capped)"));
        assert!(out.contains("0 exhaustive, 0 sampled, 3 capped"));
        assert!(out.contains("a pass does not cover the full domain"));
    }
}
