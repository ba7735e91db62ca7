use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{family, instantiate_table, Instance, Table};
use crate::compat::{
    check_derivation_of_phi1, check_f_membership, check_f_singular, check_lie_modulo,
    check_phi1_degree3_identity, compute_rank, decompose_contact, kernel_closure, spectral_support,
    spectrum_symmetric, verify_full_system, ContactDecomposition,
};
use crate::error::{Error, Result};
use crate::exterior::{check_d_squared, contact_coefficient, d_form, is_darboux, KForm};
use crate::liealg::{check_jacobi, LieAlgebra};
use crate::multilinear::Vector;
use crate::scalar::Scalar;

/// Random points per sampled verification.
pub const SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "info")]
    Info,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a",
            CheckStatus::Skipped => "skipped",
            CheckStatus::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    pub fn verdict(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(
            name,
            if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail,
        )
    }
}

/// Field order is part of the output format.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub p: Option<usize>,
    pub dim: usize,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub ok: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p.map(|p| format!(" p={p}")).unwrap_or_default();
        writeln!(
            f,
            "{}{p} (dim {}): {}",
            self.id,
            self.dim,
            if self.ok { "ok" } else { "FAILED" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<28} {:<8} {}",
                c.name,
                c.status.to_string(),
                c.detail
            )?;
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(f, "  elapsed {ms} ms")?;
        }
        Ok(())
    }
}

fn parametrized(e: &Error) -> bool {
    matches!(
        e,
        Error::Parametrized(_) | Error::ParameterDependentSolvability
    )
}

/// Runs a check that needs numeric data; parametric input skips it.
fn numeric_check(name: &str, r: Result<CheckResult>) -> CheckResult {
    match r {
        Ok(c) => c,
        Err(e) if parametrized(&e) => CheckResult::new(
            name,
            CheckStatus::Skipped,
            format!("needs numeric data: {e}"),
        ),
        Err(e) => CheckResult::new(name, CheckStatus::Fail, e.to_string()),
    }
}

fn polynomial_detail(c: &Scalar) -> String {
    if c.is_constant() {
        format!("{c}")
    } else {
        format!("{c} (nonzero polynomial; vanishes where {c} = 0)")
    }
}

/// (dω)^k restricted to span(e1+e2, e3, …, en) in the basis given there.
fn frobenius_ideal(g: &LieAlgebra) -> Result<CheckResult> {
    let n = g.dim();
    let ctx = g.ctx();
    let mut basis = vec![Vector::basis(n, 1, ctx).add(&Vector::basis(n, 2, ctx))];
    basis.extend((3..=n).map(|i| Vector::basis(n, i, ctx)));
    // membership in the ideal means equal first two coordinates
    let mut escapes = Vec::new();
    for i in 1..=n {
        for (a, y) in basis.iter().enumerate() {
            let z = g.bracket().eval(&Vector::basis(n, i, ctx), y);
            if z.coeff(1) != z.coeff(2) {
                escapes.push((i, a + 1));
            }
        }
    }
    let dw = d_form(g, &KForm::omega(n, 2, ctx))?;
    let top = dw.pullback(&basis).power((n - 1) / 2).top_coefficient();
    let ok = escapes.is_empty() && !top.is_zero();
    let detail = if !escapes.is_empty() {
        format!("span(e1+e2, e3..e{n}) is not an ideal: [e_i, y_a] escapes at {escapes:?}")
    } else {
        format!(
            "ideal span(e1+e2, e3..e{n}); top power of restricted dw2 = {}",
            polynomial_detail(&top)
        )
    };
    Ok(CheckResult::verdict("frobenius", ok, detail))
}

fn frobenius_algebra(g: &LieAlgebra) -> Result<CheckResult> {
    let n = g.dim();
    let dw = d_form(g, &KForm::omega(n, 1, g.ctx()))?;
    let top = dw.power(n / 2).top_coefficient();
    Ok(CheckResult::verdict(
        "frobenius",
        !top.is_zero(),
        format!("(dw1)^{} = {}", n / 2, polynomial_detail(&top)),
    ))
}

fn rank_check(t: &Table, d: &ContactDecomposition) -> CheckResult {
    match (compute_rank(d), t.declared_rank) {
        (Ok(rd), Some(r)) => CheckResult::verdict(
            "rank",
            rd.rank == r,
            format!(
                "rank {} (declared {r}); {} pairs, {} relations",
                rd.rank,
                rd.pairs.len(),
                rd.relations.len() / 2
            ),
        ),
        (Ok(rd), None) => CheckResult::new("rank", CheckStatus::Info, format!("rank {}", rd.rank)),
        (Err(e), Some(_)) if parametrized(&e) => {
            CheckResult::new("rank", CheckStatus::Skipped, e.to_string())
        }
        (Err(e), Some(_)) => CheckResult::new("rank", CheckStatus::Fail, e.to_string()),
        (Err(e), None) => CheckResult::new("rank", CheckStatus::Info, format!("not defined: {e}")),
    }
}

const CONTACT_ONLY: [&str; 14] = [
    "contact_coefficient",
    "darboux",
    "decomposition",
    "eq2",
    "eq3",
    "eq4",
    "eq5",
    "f_in_rp",
    "f_derivation_of_phi1",
    "f_singular",
    "rank",
    "spectrum_symmetric",
    "kernel_closure",
    "spectral_support",
];

/// The full battery on one instance. Checks needing numeric data are
/// skipped when the instance is parametric.
fn battery(t: &Table, inst: &Instance) -> Vec<CheckResult> {
    let g = &inst.algebra;
    let mut out = Vec::new();
    let jac = check_jacobi(g.bracket());
    let d2 = check_d_squared(g);
    out.push(CheckResult::verdict(
        "jacobi",
        jac.ok && d2.ok,
        if jac.ok && d2.ok {
            "d^2 = 0".to_string()
        } else {
            format!("d^2 != 0 on {:?}", d2.failing_triples())
        },
    ));
    if !t.contact {
        for name in CONTACT_ONLY {
            out.push(CheckResult::new(
                name,
                CheckStatus::NotApplicable,
                "not a contact table",
            ));
        }
        out.push(numeric_check("frobenius", frobenius_algebra(g)));
        return out;
    }
    let omega = KForm::omega(g.dim(), 1, g.ctx());
    out.push(match contact_coefficient(g, &omega) {
        Ok(c) => CheckResult::verdict("contact_coefficient", !c.is_zero(), polynomial_detail(&c)),
        Err(e) => CheckResult::new("contact_coefficient", CheckStatus::Fail, e.to_string()),
    });
    out.push(CheckResult::verdict(
        "darboux",
        is_darboux(g, 1),
        "dw1 = w2^w3 + ... + w(2p)^w(2p+1)",
    ));
    let d = match decompose_contact(g, 1) {
        Ok(d) => d,
        Err(e) => {
            out.push(CheckResult::new(
                "decomposition",
                CheckStatus::Fail,
                e.to_string(),
            ));
            return out;
        }
    };
    let same = d.reassemble() == *g.bracket();
    out.push(CheckResult::verdict(
        "decomposition",
        same,
        "mu0 + phi1 + phi2 reproduces the bracket",
    ));
    match verify_full_system(&d.base) {
        Ok(rep) => {
            for (name, key) in [
                ("eq2", "EQ2"),
                ("eq3", "EQ3"),
                ("eq4", "EQ4"),
                ("eq5", "EQ5"),
            ] {
                let zero = rep.residual(key).is_some_and(|r| r.is_zero());
                out.push(CheckResult::verdict(
                    name,
                    zero,
                    if zero {
                        "residual 0"
                    } else {
                        "nonzero residual"
                    },
                ));
            }
        }
        Err(e) => {
            for name in ["eq2", "eq3", "eq4", "eq5"] {
                out.push(CheckResult::new(name, CheckStatus::Fail, e.to_string()));
            }
        }
    }
    out.push(match check_f_membership(&d.f, d.p) {
        Ok(m) => CheckResult::verdict(
            "f_in_rp",
            m.ok,
            format!(
                "theta condition {}, block condition {}",
                m.theta_condition, m.block_condition
            ),
        ),
        Err(e) => CheckResult::new("f_in_rp", CheckStatus::Fail, e.to_string()),
    });
    out.push(match check_derivation_of_phi1(&d) {
        Ok(r) => {
            let part = |x: Option<bool>| x.map_or("unknown".to_string(), |b| b.to_string());
            CheckResult::verdict(
                "f_derivation_of_phi1",
                r.ok(),
                format!(
                    "f {}, f_s {}, f_n {}, f^ in Der(mu0) {}",
                    r.f,
                    part(r.f_s),
                    part(r.f_n),
                    r.f_hat_mu0
                ),
            )
        }
        Err(e) => CheckResult::new("f_derivation_of_phi1", CheckStatus::Fail, e.to_string()),
    });
    let s = check_f_singular(&d);
    let rk = |r: Option<usize>| r.map_or("?".to_string(), |r| r.to_string());
    out.push(CheckResult::verdict(
        "f_singular",
        s.ok,
        format!(
            "det f = {}, rank f {}, rank f_s {}",
            s.det,
            rk(s.rank_f),
            rk(s.rank_fs)
        ),
    ));
    out.push(rank_check(t, &d));
    out.push(CheckResult::verdict(
        "spectrum_symmetric",
        spectrum_symmetric(&d.f),
        "chi_f(-x) = chi_f(x)",
    ));
    out.push(numeric_check(
        "kernel_closure",
        kernel_closure(g, &d)
            .map(|ok| CheckResult::verdict("kernel_closure", ok, "ker f^ is a subalgebra")),
    ));
    out.push(if d.spectrum.is_none() {
        CheckResult::new(
            "spectral_support",
            CheckStatus::Skipped,
            "spectrum of f is not rational",
        )
    } else {
        numeric_check(
            "spectral_support",
            spectral_support(&d).map(|r| {
                let detail = format!(
                    "{} eigenvalue pairs, failures {:?}",
                    r.pairs_checked, r.failures
                );
                CheckResult::verdict("spectral_support", r.ok, detail)
            }),
        )
    });
    if t.frobenius_quotient {
        out.push(numeric_check("frobenius", frobenius_ideal(g)));
    } else {
        out.push(CheckResult::new(
            "frobenius",
            CheckStatus::NotApplicable,
            "no frobeniusian quotient asserted",
        ));
    }
    out.push(numeric_check(
        "lie_modulo",
        check_lie_modulo(&d).map(|r| {
            CheckResult::verdict(
                "lie_modulo",
                r.cocycle && r.square_is_coboundary,
                format!(
                    "phi1 cocycle {}, phi1.phi1 coboundary {}, phi1 coboundary {}",
                    r.cocycle, r.square_is_coboundary, r.phi1_is_coboundary
                ),
            )
        }),
    ));
    out.push(match check_phi1_degree3_identity(&d) {
        Ok(r) if r.ok => CheckResult::new("phi1_degree3_identity", CheckStatus::Info, "holds"),
        Ok(r) => CheckResult::new(
            "phi1_degree3_identity",
            CheckStatus::Info,
            format!(
                "fails on {} quadruples, first {:?}",
                r.failures.len(),
                r.failures[0].0
            ),
        ),
        Err(e) => CheckResult::new("phi1_degree3_identity", CheckStatus::Info, e.to_string()),
    });
    out
}

fn mix_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the id, folded into the user seed
    let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    seed ^ h
}

/// Parameters that receive random values: free ones and the first member
/// of each reciprocal pair. Related and constrained parameters stay put.
fn sampled_params(t: &Table) -> Vec<String> {
    let related: Vec<&String> = t.relations.iter().map(|(n, _)| n).collect();
    let constrained: Vec<&String> = t.constraints.iter().map(|(n, _)| n).collect();
    let partners: Vec<&String> = t.reciprocals.iter().map(|(_, b)| b).collect();
    t.params
        .iter()
        .filter(|p| !related.contains(p) && !constrained.contains(p) && !partners.contains(p))
        .cloned()
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng, names: &[String]) -> BTreeMap<String, String> {
    names
        .iter()
        .map(|n| {
            let num: i64 = rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den: i64 = rng.gen_range(1..=13);
            (n.clone(), format!("{num}/{den}"))
        })
        .collect()
}

fn aggregate(runs: &[(BTreeMap<String, String>, Vec<CheckResult>)]) -> Vec<CheckResult> {
    let Some((_, first)) = runs.first() else {
        return vec![];
    };
    let mut out = Vec::new();
    for (i, c) in first.iter().enumerate() {
        let statuses: Vec<&CheckResult> = runs.iter().map(|(_, r)| &r[i]).collect();
        let failed: Vec<String> = runs
            .iter()
            .filter(|(_, r)| r[i].status == CheckStatus::Fail)
            .map(|(b, r)| format!("{b:?}: {}", r[i].detail))
            .collect();
        let all = |s: CheckStatus| statuses.iter().all(|c| c.status == s);
        let (status, detail) = if !failed.is_empty() {
            (CheckStatus::Fail, failed.join("; "))
        } else if all(CheckStatus::NotApplicable)
            || all(CheckStatus::Info)
            || all(CheckStatus::Skipped)
        {
            (statuses[0].status, statuses[0].detail.clone())
        } else {
            let passed = statuses
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count();
            (
                CheckStatus::Pass,
                format!("{passed}/{} samples pass", runs.len()),
            )
        };
        out.push(CheckResult::new(
            &format!("sampled.{}", c.name),
            status,
            detail,
        ));
    }
    out
}

/// Runs the battery on a family. Symbolic mode keeps the parameters free
/// after constraint substitution; sampled mode adds the battery on random
/// rational points. Generic families default to their smallest p.
pub fn verify_family(
    id: &str,
    p: Option<usize>,
    mode: Mode,
    seed: u64,
) -> Result<VerificationReport> {
    let spec = family(id)?;
    let p = match (spec.dim, p) {
        (super::DimSpec::Odd { min_p }, None) => Some(min_p),
        (super::DimSpec::Odd { .. }, p) => p,
        (super::DimSpec::Fixed(_), p) => p,
    };
    let t = spec.table(p)?;
    let inst = instantiate_table(&t, &BTreeMap::new())?;
    let mut checks = battery(&t, &inst);
    if mode == Mode::Sampled {
        let names = sampled_params(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, id));
        let mut runs = Vec::new();
        let mut attempts = 0;
        while runs.len() < SAMPLES {
            attempts += 1;
            let point = random_point(&mut rng, &names);
            match instantiate_table(&t, &point) {
                Ok(inst) => runs.push((point, battery(&t, &inst))),
                Err(Error::Hypothesis(_)) if attempts < 64 => continue,
                Err(e) => {
                    checks.push(CheckResult::new(
                        "sampled",
                        CheckStatus::Fail,
                        format!("sampling failed: {e}"),
                    ));
                    break;
                }
            }
        }
        checks.extend(aggregate(&runs));
    }
    let ok = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(VerificationReport {
        id: id.to_string(),
        p: match spec.dim {
            super::DimSpec::Odd { .. } => p,
            super::DimSpec::Fixed(_) => None,
        },
        dim: t.dim,
        mode,
        seed: (mode == Mode::Sampled).then_some(seed),
        ok,
        checks,
        elapsed_ms: None,
    })
}
