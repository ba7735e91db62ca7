//! Command-line front end. Exit codes: 0 pass, 1 check failure, 2 usage or
//! parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compat::{
    check_derivation_of_phi1, check_f_membership, check_f_singular, decompose_contact, search_phi1,
    verify_full_system, Phi1Search,
};
use crate::error::Error;
use crate::exterior::{contact_coefficient, is_darboux, structure_equations, KForm};
use crate::families::{self, CheckResult, CheckStatus, Mode, VerificationReport};
use crate::liealg::{check_jacobi, LieAlgebra};
use crate::multilinear::{Cochain2, Endo};
use crate::rp;
use crate::scalar::{parse_scalar, Ctx, ScalarContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// k → coefficient of e_k in [e_i, e_j].
    pub coefficients: BTreeMap<usize, String>,
}

/// An algebra definition file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default)]
    pub params: Vec<ParamDecl>,
    /// Pairs (a, b) with a·b = 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reciprocals: Vec<(String, String)>,
    pub brackets: Vec<BracketEntry>,
    /// A second bilinear map φ; `check --checks compat` then asks whether
    /// some φ₁ makes (bracket, φ₁, φ) 2-compatible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<BracketEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact_form: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub darboux: Option<bool>,
}

fn entries_to_cochain(
    dim: usize,
    ctx: &Ctx,
    entries: &[BracketEntry],
    what: &str,
) -> Result<Cochain2, String> {
    let mut c = Cochain2::new(dim, ctx);
    for e in entries {
        if !(1 <= e.i && e.i < e.j && e.j <= dim) {
            return Err(format!(
                "{what} entry ({}, {}): need 1 <= i < j <= {dim}",
                e.i, e.j
            ));
        }
        for (k, text) in &e.coefficients {
            if !(1..=dim).contains(k) {
                return Err(format!(
                    "{what} entry ({}, {}): index k = {k} out of range",
                    e.i, e.j
                ));
            }
            let s = parse_scalar(text, ctx).map_err(|err| {
                format!(
                    "{what} entry ({}, {}), coefficient of e{k}: {err}",
                    e.i, e.j
                )
            })?;
            c.add_to(e.i, e.j, *k, &s);
        }
    }
    Ok(c)
}

fn cochain_to_entries(c: &Cochain2) -> Vec<BracketEntry> {
    let mut map: BTreeMap<(usize, usize), BTreeMap<usize, String>> = BTreeMap::new();
    for ((i, j), k, s) in c.entries() {
        if !s.is_zero() {
            map.entry((i, j)).or_default().insert(k, s.to_string());
        }
    }
    map.into_iter()
        .map(|((i, j), coefficients)| BracketEntry { i, j, coefficients })
        .collect()
}

impl AlgebraFile {
    pub fn context(&self) -> Result<Ctx, String> {
        let mut b = ScalarContext::builder();
        for p in &self.params {
            b = b.param(&p.name);
            if let Some(r) = &p.relation {
                b = b.relation(&p.name, r);
            }
        }
        for (a, c) in &self.reciprocals {
            b = b.reciprocal(a, c);
        }
        b.build().map_err(|e| format!("parameters: {e}"))
    }

    /// The algebra and the optional deformation, validated.
    pub fn load(&self) -> Result<(LieAlgebra, Option<Cochain2>), String> {
        if self.dim == 0 {
            return Err("dim must be positive".into());
        }
        let ctx = self.context()?;
        let bracket = entries_to_cochain(self.dim, &ctx, &self.brackets, "bracket")?;
        let mut g = LieAlgebra::unchecked(bracket);
        if !self.labels.is_empty() {
            g = g
                .with_labels(self.labels.clone())
                .map_err(|e| format!("labels: {e}"))?;
        }
        let phi = match &self.deformation {
            Some(d) => Some(entries_to_cochain(self.dim, &ctx, d, "deformation")?),
            None => None,
        };
        Ok((g, phi))
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let ctx = g.ctx();
        let mut params = Vec::new();
        let mut reciprocals = Vec::new();
        for (i, name) in ctx.params().iter().enumerate() {
            params.push(ParamDecl {
                name: name.clone(),
                relation: ctx.relation_text(i),
            });
            if let Some(j) = ctx.reciprocal_of(i) {
                if i < j {
                    reciprocals.push((name.clone(), ctx.params()[j].clone()));
                }
            }
        }
        let default_labels: Vec<String> = (1..=g.dim()).map(|i| format!("e{i}")).collect();
        let darboux = g.dim() % 2 == 1 && is_darboux(g, 1);
        AlgebraFile {
            dim: g.dim(),
            labels: if g.labels() == default_labels.as_slice() {
                vec![]
            } else {
                g.labels().to_vec()
            },
            params,
            reciprocals,
            brackets: cochain_to_entries(g.bracket()),
            deformation: None,
            contact_form: darboux.then_some(1),
            darboux: darboux.then_some(true),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text)
            .map_err(|e| format!("line {}, column {}: {e}", e.line(), e.column()))
    }
}

/// Structural equations of an algebra as text, one row per line.
pub fn equations_text(g: &LieAlgebra) -> String {
    structure_equations(g)
        .iter()
        .enumerate()
        .map(|(k, f)| format!("dw{} = {f}\n", k + 1))
        .collect()
}

#[derive(Parser, Debug)]
#[command(
    name = "contactlie",
    version,
    about = "Exact checks for contact Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra file.
    Check {
        path: PathBuf,
        /// Comma-separated subset of jacobi,contact,darboux,compat,f, or all.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Catalog of classified families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// The graded algebra r_p.
    #[command(subcommand)]
    Rp(RpCmd),
    /// Split a contact algebra in a Darboux basis into mu0 + phi1 + phi2.
    Decompose {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    List {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Emit {
        id: String,
        #[arg(short = 'p')]
        p: Option<usize>,
        /// name=expr, repeatable.
        #[arg(long = "set")]
        set: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    id: Option<String>,
    #[arg(long, conflicts_with = "id")]
    all: bool,
    #[arg(short = 'p')]
    p: Option<usize>,
    #[arg(long, value_enum, default_value = "symbolic")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    sample_seed: u64,
    /// Record wall-clock time per family (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum RpCmd {
    Basis {
        #[arg(short = 'p')]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Grading {
        #[arg(short = 'p')]
        p: usize,
    },
    /// Membership of a matrix (JSON array of rows of expressions).
    Check {
        #[arg(short = 'p')]
        p: usize,
        path: PathBuf,
    },
}

/// Outcome of a command: exit code plus text for stdout and stderr.
struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn status(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { EXIT_OK } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), Outcome> {
    std::fs::write(path, text)
        .map_err(|e| Outcome::usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<(AlgebraFile, LieAlgebra, Option<Cochain2>), Outcome> {
    let text = read_file(path)?;
    let file = AlgebraFile::parse(&text)
        .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    let (g, phi) = file
        .load()
        .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    Ok((file, g, phi))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

const ALL_CHECKS: [&str; 5] = ["jacobi", "contact", "darboux", "compat", "f"];

fn compat_check(g: &LieAlgebra, phi: Option<&Cochain2>) -> CheckResult {
    if let Some(phi) = phi {
        return match search_phi1(g.bracket(), phi) {
            Ok(Phi1Search::Found(_)) => CheckResult::verdict("compat", true, "a phi1 completing the pair exists"),
            Ok(Phi1Search::Infeasible { cocycle_dim, triple, component, value }) => CheckResult::verdict(
                "compat",
                false,
                format!(
                    "no phi1 cocycle exists: for every common cocycle phi1 (space of dimension {cocycle_dim}), \
                     (phi1.phi1 + d_mu0 phi)(e{}, e{}, e{}) has e{component}-component {value}",
                    triple.0, triple.1, triple.2
                ),
            ),
            Ok(Phi1Search::Undecided { cocycle_dim }) => CheckResult::verdict(
                "compat",
                false,
                format!("undecided: the quadratic condition on the {cocycle_dim}-dimensional cocycle space has no constant obstruction"),
            ),
            Err(e) => CheckResult::verdict("compat", false, e.to_string()),
        };
    }
    match decompose_contact(g, 1).and_then(|d| verify_full_system(&d.base)) {
        Ok(r) => {
            let bad: Vec<&str> = r
                .residuals
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| x.name)
                .collect();
            CheckResult::verdict(
                "compat",
                r.ok,
                if r.ok {
                    "EQ2-EQ5 residuals vanish".to_string()
                } else {
                    format!("nonzero residuals: {bad:?}")
                },
            )
        }
        Err(e) => CheckResult::verdict("compat", false, e.to_string()),
    }
}

fn f_check(g: &LieAlgebra) -> CheckResult {
    let d = match decompose_contact(g, 1) {
        Ok(d) => d,
        Err(e) => return CheckResult::verdict("f", false, e.to_string()),
    };
    let member = check_f_membership(&d.f, d.p);
    let der = check_derivation_of_phi1(&d);
    let sing = check_f_singular(&d);
    match (member, der) {
        (Ok(m), Ok(r)) => CheckResult::verdict(
            "f",
            m.ok && r.ok() && sing.ok,
            format!(
                "f in r_p {}, f in Der(phi1) {}, singular {}",
                m.ok,
                r.ok(),
                sing.ok
            ),
        ),
        (Err(e), _) | (_, Err(e)) => CheckResult::verdict("f", false, e.to_string()),
    }
}

fn cmd_check(path: &Path, checks: &str, out: Option<&Path>) -> Outcome {
    let (file, g, phi) = match load_algebra(path) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let wanted: Vec<&str> = if checks.trim() == "all" {
        ALL_CHECKS.to_vec()
    } else {
        checks.split(',').map(str::trim).collect()
    };
    if let Some(bad) = wanted.iter().find(|c| !ALL_CHECKS.contains(c)) {
        return Outcome::usage(format!(
            "unknown check `{bad}`; expected one of {}",
            ALL_CHECKS.join(",")
        ));
    }
    let idx = file.contact_form.unwrap_or(1);
    if idx == 0 || idx > g.dim() {
        return Outcome::usage(format!("contact_form index {idx} out of range"));
    }
    let mut results = Vec::new();
    for c in &wanted {
        results.push(match *c {
            "jacobi" => {
                let r = check_jacobi(g.bracket());
                let detail = match r.violations.first() {
                    None => "Jacobi identity holds".to_string(),
                    Some((t, v)) => format!("fails at {t:?}: {v}"),
                };
                CheckResult::verdict("jacobi", r.ok, detail)
            }
            "contact" => match contact_coefficient(&g, &KForm::omega(g.dim(), idx, g.ctx())) {
                Ok(c) => CheckResult::verdict(
                    "contact",
                    !c.is_zero(),
                    format!("w{idx} ^ (dw{idx})^p = ({c}) vol"),
                ),
                Err(e) => CheckResult::verdict("contact", false, e.to_string()),
            },
            "darboux" => CheckResult::verdict(
                "darboux",
                is_darboux(&g, idx),
                format!("dw{idx} in Darboux form"),
            ),
            "compat" => compat_check(&g, phi.as_ref()),
            _ => f_check(&g),
        });
    }
    let pass = results.iter().all(|r| r.status != CheckStatus::Fail);
    let text: String = results
        .iter()
        .map(|r| format!("{:<8} {:<5} {}\n", r.name, r.status.to_string(), r.detail))
        .collect();
    if let Some(o) = out {
        #[derive(Serialize)]
        struct Report<'a> {
            path: String,
            ok: bool,
            checks: &'a [CheckResult],
        }
        let rep = Report {
            path: path.display().to_string(),
            ok: pass,
            checks: &results,
        };
        if let Err(e) = write_out(o, &to_json(&rep)) {
            return e;
        }
    }
    Outcome::status(pass, text)
}

fn parse_sets(set: &[String]) -> Result<BTreeMap<String, String>, Outcome> {
    let mut m = BTreeMap::new();
    for s in set {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Outcome::usage(format!("--set expects name=expr, got `{s}`")))?;
        m.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(m)
}

fn family_list(out: Option<&Path>) -> Outcome {
    #[derive(Serialize)]
    struct Entry {
        id: &'static str,
        dim: String,
        params: Vec<String>,
        relations: Vec<String>,
        constraints: Vec<String>,
        summary: &'static str,
    }
    let mut entries = Vec::new();
    for f in families::list_families() {
        let (dim, t) = match f.dim {
            families::DimSpec::Fixed(n) => (n.to_string(), f.table(None)),
            families::DimSpec::Odd { min_p } => (format!("2p+1, p>={min_p}"), f.table(Some(min_p))),
        };
        let t = t.expect("catalog tables build");
        entries.push(Entry {
            id: f.id,
            dim,
            params: t.params.clone(),
            relations: t
                .relations
                .iter()
                .map(|(_, r)| format!("{r} = 0"))
                .collect(),
            constraints: t
                .constraints
                .iter()
                .map(|(n, e)| format!("{n} = {e}"))
                .collect(),
            summary: f.summary,
        });
    }
    let mut text = String::new();
    for e in &entries {
        let mut extra: Vec<String> = e.relations.clone();
        extra.extend(e.constraints.iter().cloned());
        let extra = if extra.is_empty() {
            String::new()
        } else {
            format!(" [{}]", extra.join(", "))
        };
        text.push_str(&format!(
            "{:<24} {:<14} {}{extra}\n",
            e.id, e.dim, e.summary
        ));
    }
    text.push_str(&format!("{} families\n", entries.len()));
    if let Some(o) = out {
        if let Err(e) = write_out(o, &to_json(&entries)) {
            return e;
        }
    }
    Outcome::ok(text)
}

/// Unknown ids, missing p and violated hypotheses are usage errors.
fn family_error(e: Error) -> Outcome {
    Outcome::usage(e.to_string())
}

fn family_emit(id: &str, p: Option<usize>, set: &[String], out: Option<&Path>) -> Outcome {
    let bindings = match parse_sets(set) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let table = match families::family(id).and_then(|f| f.table(p)) {
        Ok(t) => t,
        Err(e) => return family_error(e),
    };
    let inst = match families::instantiate_table(&table, &bindings) {
        Ok(i) => i,
        Err(e) => return family_error(e),
    };
    let json = to_json(&AlgebraFile::from_algebra(&inst.algebra));
    let mut text = String::new();
    for (name, v) in &inst.resolved {
        if !bindings.contains_key(name) {
            text.push_str(&format!("# {name} = {v}\n"));
        }
    }
    match out {
        Some(o) => {
            if let Err(e) = write_out(o, &json) {
                return e;
            }
            text.push_str(&equations_text(&inst.algebra));
            Outcome::ok(text)
        }
        None => Outcome::ok(json),
    }
}

fn family_verify(a: &VerifyArgs) -> Outcome {
    let mode = match a.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::Sampled,
    };
    let mut ids: Vec<&str> = match (&a.id, a.all) {
        (_, true) => families::list_families().iter().map(|f| f.id).collect(),
        (Some(id), false) => vec![id.as_str()],
        (None, false) => return Outcome::usage("family verify needs an id or --all"),
    };
    ids.sort();
    // with --all, p only applies to the generic families
    let run = |id: &str| -> Result<VerificationReport, Error> {
        let spec = families::family(id)?;
        let p = match spec.dim {
            families::DimSpec::Fixed(_) if a.all => None,
            _ => a.p,
        };
        let t0 = Instant::now();
        let mut r = families::verify_family(id, p, mode, a.sample_seed)?;
        if a.timings {
            r.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
        }
        Ok(r)
    };
    let results: Vec<Result<VerificationReport, Error>> =
        ids.par_iter().map(|id| run(id)).collect();
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return family_error(e),
        }
    }
    let pass = reports.iter().all(|r| r.ok);
    let mut text: String = reports.iter().map(|r| r.to_string()).collect();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.ok)
        .map(|r| r.id.as_str())
        .collect();
    text.push_str(&format!(
        "{} of {} families verified{}\n",
        reports.len() - failed.len(),
        reports.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {}", failed.join(", "))
        }
    ));
    if let Some(o) = &a.out {
        let json = if a.all {
            to_json(&reports)
        } else {
            to_json(&reports[0])
        };
        if let Err(e) = write_out(o, &json) {
            return e;
        }
    }
    Outcome::status(pass, text)
}

fn rp_basis_cmd(p: usize, out: Option<&Path>) -> Outcome {
    if p == 0 {
        return Outcome::usage("p must be at least 1");
    }
    let basis = rp::rp_basis(p, &ScalarContext::empty());
    #[derive(Serialize)]
    struct Element {
        component: String,
        matrix: Vec<Vec<String>>,
    }
    let els: Vec<Element> = basis
        .elements()
        .into_iter()
        .map(|(c, m)| Element {
            component: c.to_string(),
            matrix: m.rows_as_strings(),
        })
        .collect();
    let mut text = String::new();
    for e in &els {
        text.push_str(&format!("[{}]\n", e.component));
        for row in &e.matrix {
            text.push_str(&format!("  {}\n", row.join(" ")));
        }
    }
    text.push_str(&format!(
        "{} matrices, dim r_{p} = {}\n",
        els.len(),
        rp::rp_dimension(p)
    ));
    if let Some(o) = out {
        if let Err(e) = write_out(o, &to_json(&els)) {
            return e;
        }
    }
    Outcome::ok(text)
}

fn rp_grading_cmd(p: usize) -> Outcome {
    if p == 0 {
        return Outcome::usage("p must be at least 1");
    }
    let r = rp::check_grading(p);
    let mut text = format!(
        "grading of r_{p}: {} pairs checked, {}\n",
        r.pairs_checked,
        if r.ok { "ok" } else { "FAILED" }
    );
    for (a, b, s) in &r.leaks {
        text.push_str(&format!("  [{a}, {b}] has support {s:?}\n"));
    }
    Outcome::status(r.ok, text)
}

fn rp_check_cmd(p: usize, path: &Path) -> Outcome {
    if p == 0 {
        return Outcome::usage("p must be at least 1");
    }
    let text = match read_file(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let rows: Vec<Vec<serde_json::Value>> = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::usage(format!(
                "{}: line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        }
    };
    if rows.len() != 2 * p || rows.iter().any(|r| r.len() != 2 * p) {
        return Outcome::usage(format!("expected a {0}x{0} matrix", 2 * p));
    }
    let ctx = ScalarContext::empty();
    let mut m = Vec::new();
    for row in &rows {
        let mut out = Vec::new();
        for v in row {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Outcome::usage(format!("bad matrix entry {other}")),
            };
            match parse_scalar(&s, &ctx) {
                Ok(x) => out.push(x),
                Err(e) => return Outcome::usage(format!("matrix entry `{s}`: {e}")),
            }
        }
        m.push(out);
    }
    let a = match Endo::from_rows(&ctx, m) {
        Ok(a) => a,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    match rp::is_in_rp(&a, p) {
        Ok(true) => {
            let support: Vec<String> = rp::support(&a, p).iter().map(|c| c.to_string()).collect();
            Outcome::ok(format!("in r_{p}; components {}\n", support.join(" ")))
        }
        Ok(false) => Outcome::status(false, format!("not in r_{p}\n")),
        Err(e) => Outcome::usage(e.to_string()),
    }
}

fn endo_text(e: &Endo) -> String {
    e.rows_as_strings()
        .iter()
        .map(|r| format!("  [{}]\n", r.join(", ")))
        .collect()
}

fn cmd_decompose(path: &Path, out: Option<&Path>) -> Outcome {
    let (_, g, _) = match load_algebra(path) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let d = match decompose_contact(&g, 1) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let system = verify_full_system(&d.base);
    let ok = system.as_ref().is_ok_and(|r| r.ok);
    #[derive(Serialize)]
    struct Decomposition {
        p: usize,
        mu0: Vec<BracketEntry>,
        phi1: Vec<BracketEntry>,
        phi2: Vec<BracketEntry>,
        f: Vec<Vec<String>>,
        f_s: Option<Vec<Vec<String>>>,
        f_n: Option<Vec<Vec<String>>>,
        spectrum: Option<Vec<(String, usize)>>,
        system_ok: bool,
    }
    let rep = Decomposition {
        p: d.p,
        mu0: cochain_to_entries(&d.base.mu0),
        phi1: cochain_to_entries(&d.base.phi1),
        phi2: cochain_to_entries(&d.base.phi2),
        f: d.f.rows_as_strings(),
        f_s: d.f_s.as_ref().map(|e| e.rows_as_strings()),
        f_n: d.f_n.as_ref().map(|e| e.rows_as_strings()),
        spectrum: d
            .spectrum
            .as_ref()
            .map(|s| s.iter().map(|(l, m)| (l.to_string(), *m)).collect()),
        system_ok: ok,
    };
    let mut text = format!(
        "p = {}\nmu0:  {}\nphi1: {}\nphi2: {}\nf:\n{}",
        d.p,
        d.base.mu0,
        d.base.phi1,
        d.base.phi2,
        endo_text(&d.f)
    );
    if let (Some(s), Some(n)) = (&d.f_s, &d.f_n) {
        text.push_str(&format!("f_s:\n{}f_n:\n{}", endo_text(s), endo_text(n)));
    }
    if let Some(s) = &rep.spectrum {
        let parts: Vec<String> = s.iter().map(|(l, m)| format!("{l} (x{m})")).collect();
        text.push_str(&format!("spectrum: {}\n", parts.join(", ")));
    }
    text.push_str(&format!("EQ2-EQ5: {}\n", if ok { "ok" } else { "FAILED" }));
    if let Some(o) = out {
        if let Err(e) = write_out(o, &to_json(&rep)) {
            return e;
        }
    }
    Outcome::status(ok, text)
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { path, checks, out } => cmd_check(&path, &checks, out.as_deref()),
        Command::Family(FamilyCmd::List { out }) => family_list(out.as_deref()),
        Command::Family(FamilyCmd::Emit { id, p, set, out }) => {
            family_emit(&id, p, &set, out.as_deref())
        }
        Command::Family(FamilyCmd::Verify(a)) => family_verify(&a),
        Command::Rp(RpCmd::Basis { p, out }) => rp_basis_cmd(p, out.as_deref()),
        Command::Rp(RpCmd::Grading { p }) => rp_grading_cmd(p),
        Command::Rp(RpCmd::Check { p, path }) => rp_check_cmd(p, &path),
        Command::Decompose { path, out } => cmd_decompose(&path, out.as_deref()),
    }
}

/// Runs the CLI on `args` (program name first), writing to the given
/// streams, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let o = dispatch(cli);
    let _ = stdout.write_all(o.stdout.as_bytes());
    let _ = stderr.write_all(o.stderr.as_bytes());
    o.code
}
