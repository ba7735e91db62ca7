//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use contactlie::compat::{decompose_contact, phi2_rigidity_kernel, search_phi1, Phi1Search};
use contactlie::exterior::{contact_coefficient, reeb_vector, KForm};
use contactlie::families::errata::{errata, errata_tsv};
use contactlie::families::{instantiate, list_families, verify_family, Mode};
use contactlie::liealg::{is_ideal, Subspace};
use contactlie::multilinear::{coboundary2, Cochain2, Vector};
use contactlie::rp::{check_grading, r0p_basis, rp_basis, rp_dimension};
use contactlie::scalar::{int, Scalar, ScalarContext};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn catalog_soundness() -> Outcome {
    let ids: Vec<&str> = list_families().iter().map(|f| f.id).collect();
    ensure(ids.len() >= 20, format!("only {} families", ids.len()))?;
    let failures: Vec<String> = ids
        .par_iter()
        .filter_map(|id| match verify_family(id, None, Mode::Symbolic, 0) {
            Ok(r) if r.ok => None,
            Ok(r) => Some(format!("{id}:\n{r}")),
            Err(e) => Some(format!("{id}: {e}")),
        })
        .collect();
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{} families verified symbolically", ids.len()))
}

fn dimension_formulas() -> Outcome {
    let ctx = ScalarContext::empty();
    for p in 1..=5 {
        let r = rp_dimension(p);
        let r0 = r0p_basis(p, &ctx).len();
        ensure(r == p * (2 * p + 1), format!("dim r_{p} = {r}"))?;
        ensure(r0 == p * (2 * p - 1), format!("dim r0_{p} = {r0}"))?;
        ensure(
            rp_basis(p, &ctx).len() == r,
            format!("graded basis of r_{p} has the wrong size"),
        )?;
    }
    ensure(
        rp_dimension(2) == 10 && r0p_basis(2, &ctx).len() == 6,
        "p = 2 values",
    )?;
    Ok("p = 1..5 match p(2p+1) and p(2p-1)".into())
}

fn grading() -> Outcome {
    let mut pairs = 0;
    for p in 2..=4 {
        let r = check_grading(p);
        ensure(r.ok, format!("p = {p}: {} leaks", r.leaks.len()))?;
        pairs += r.pairs_checked;
    }
    Ok(format!("p = 2, 3, 4; {pairs} commutators checked"))
}

fn worked_example() -> Outcome {
    let g = instantiate("example.so3-r2", None, &BTreeMap::new()).map_err(|e| e.to_string())?;
    let ctx = g.ctx().clone();
    let w1 = KForm::omega(5, 1, &ctx);
    let c = contact_coefficient(&g, &w1).map_err(|e| e.to_string())?;
    ensure(!c.is_zero(), "omega1 is not contact")?;
    let reeb = reeb_vector(&g, &w1).map_err(|e| e.to_string())?;
    ensure(
        reeb == Vector::basis(5, 1, &ctx),
        format!("Reeb vector {reeb:?}"),
    )?;
    let ideal = Subspace::from_rationals(
        5,
        vec![
            vec![int(1), int(0), int(0), int(1), int(0)],
            vec![int(0), int(0), int(0), int(0), int(1)],
        ],
    );
    ensure(
        is_ideal(&g, &ideal, &[]).map_err(|e| e.to_string())?,
        "span(e1+e4, e5) is not an ideal",
    )?;
    let d = decompose_contact(&g, 1).map_err(|e| e.to_string())?;
    let f = d.f_hat();
    let q = f.to_qmatrix().map_err(|e| e.to_string())?;
    ensure(q.rank() == 2, format!("rank f = {}", q.rank()))?;
    let fe2 = f.apply(&Vector::basis(5, 2, &ctx));
    let fe3 = f.apply(&Vector::basis(5, 3, &ctx));
    ensure(fe2 == Vector::basis(5, 2, &ctx), "f(e2) != e2")?;
    ensure(
        fe3 == Vector::basis(5, 3, &ctx).scale(&-Scalar::one(&ctx)),
        "f(e3) != -e3",
    )?;
    Ok("contact, Reeb e1, ideal span(e1+e4, e5), f rank 2 with f(e2)=e2, f(e3)=-e3".into())
}

fn counterexample() -> Outcome {
    let ctx = ScalarContext::empty();
    let one = Scalar::one(&ctx);
    let mut mu0 = Cochain2::new(3, &ctx);
    mu0.set(1, 2, 1, one.clone());
    let mut phi = Cochain2::new(3, &ctx);
    phi.set(1, 2, 3, one.clone());
    phi.set(1, 3, 1, -one.clone());
    phi.set(2, 3, 2, one.clone());
    let delta = coboundary2(&mu0, &phi).map_err(|e| e.to_string())?;
    let v = delta.eval_basis(1, 2, 3);
    ensure(
        v == Vector::basis(3, 1, &ctx).scale(&-one),
        format!("delta phi(e1,e2,e3) = {v:?}"),
    )?;
    match search_phi1(&mu0, &phi).map_err(|e| e.to_string())? {
        Phi1Search::Infeasible { cocycle_dim, .. } => Ok(format!(
            "delta phi(e1,e2,e3) = -e1; common cocycle space of dim {cocycle_dim} admits no phi1"
        )),
        other => Err(format!("solver returned {other:?}")),
    }
}

fn rigidity() -> Outcome {
    let ctx = ScalarContext::empty();
    for p in 2..=4 {
        let k = phi2_rigidity_kernel(p, &ctx).map_err(|e| e.to_string())?;
        ensure(k == 0, format!("p = {p}: kernel of dim {k}"))?;
    }
    Ok("kernel is zero for p = 2, 3, 4".into())
}

fn jordan_chevalley() -> Outcome {
    let mut parts = Vec::new();
    for n in [4, 6] {
        let s = common::jc_campaign(n, 100, 2024 + n as u64);
        ensure(s.failures.is_empty(), s.failures.join("; "))?;
        parts.push(format!(
            "{n}x{n}: {} matrices, {} split and matched",
            s.checked, s.split
        ));
    }
    Ok(parts.join("; "))
}

fn erratum_ledger() -> Outcome {
    let list = errata();
    ensure(!list.is_empty(), "no errata")?;
    for e in &list {
        let (printed_fails, corrected_ok) = e.check().map_err(|x| x.to_string())?;
        ensure(
            printed_fails,
            format!("printed {} {} satisfies d^2 = 0", e.id, e.location_text()),
        )?;
        ensure(corrected_ok, format!("corrected {} fails d^2 = 0", e.id))?;
    }
    let file = include_str!("../data/errata.tsv");
    ensure(
        file == errata_tsv().map_err(|e| e.to_string())?,
        "data/errata.tsv is stale",
    )?;
    Ok(format!(
        "{} corrections: printed fails d^2 = 0, corrected passes",
        list.len()
    ))
}

fn property_suites() -> Outcome {
    let mut names = Vec::new();
    for (name, suite) in common::props::SUITES {
        suite(&mut common::props::runner()).map_err(|e| format!("{name}: {e}"))?;
        names.push(*name);
    }
    Ok(format!(
        "{} cases each: {}",
        common::props::CASES,
        names.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("catalog soundness", catalog_soundness),
        ("dimension formulas", dimension_formulas),
        ("grading of r_p", grading),
        ("worked example so(3)+r(2)", worked_example),
        ("non-compatible pair", counterexample),
        ("phi2 rigidity", rigidity),
        ("Jordan-Chevalley", jordan_chevalley),
        ("erratum ledger", erratum_ledger),
        ("property suites", property_suites),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {}: {tag} {name} ({:.2}s): {detail}",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
