use super::errata::{errata, errata_tsv, Location};
use super::*;
use crate::compat::{compute_rank, decompose_contact, verify_full_system};
use crate::exterior::{check_d_squared, is_darboux, structure_equations};
use crate::liealg::check_jacobi;
use crate::multilinear::Vector;

fn bind(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn any_table(spec: &FamilySpec) -> Table {
    match spec.dim {
        DimSpec::Fixed(_) => spec.table(None).unwrap(),
        DimSpec::Odd { min_p } => spec.table(Some(min_p)).unwrap(),
    }
}

#[test]
fn catalog_checklist() {
    let expected = [
        "dim3.heisenberg",
        "dim3.simple",
        "dim3.nilpotent-f",
        "example.so3-r2",
        "example.frobenius-ext-5",
        "dim5.remark.a2-1",
        "dim5.remark.a2-0",
        "maxrank.2p+1",
        "rank-p-2.C",
        "rank-p-2.D",
        "rank-p-2.C.core",
        "rank-p-2.D.core",
        "dim11.rank2.a",
        "dim11.rank2.b",
        "dim13.rank3.a",
        "dim13.rank3.b",
        "dim5.A",
        "dim5.B",
        "dim5.C",
        "dim5.D",
        "dim5.E",
        "dim5.F",
        "dim5.G",
        "dim5.H",
        "dim5.I",
        "dim5.J",
        "dim5.K",
        "dim5.L",
    ];
    let ids: Vec<&str> = list_families().iter().map(|f| f.id).collect();
    assert_eq!(ids.len(), expected.len());
    for id in expected {
        assert_eq!(ids.iter().filter(|x| **x == id).count(), 1, "{id}");
    }
    assert!(ids.len() >= 20);
}

#[test]
fn golden_ratio_family_carries_its_relation() {
    let t = family("dim5.F").unwrap().table(None).unwrap();
    assert_eq!(t.relations, vec![("f".to_string(), "f^2-f-1".to_string())]);
    let ctx = instantiate_table(&t, &BTreeMap::new())
        .unwrap()
        .algebra
        .ctx()
        .clone();
    let i = ctx.index_of("f").unwrap();
    assert_eq!(ctx.relation_text(i).unwrap(), "f^2 - f - 1");
}

#[test]
fn every_family_is_lie_and_darboux() {
    for spec in list_families() {
        let t = any_table(spec);
        let inst = instantiate_table(&t, &BTreeMap::new()).unwrap();
        assert!(check_d_squared(&inst.algebra).ok, "{}", spec.id);
        assert!(check_jacobi(inst.algebra.bracket()).ok, "{}", spec.id);
        if t.contact {
            assert!(is_darboux(&inst.algebra, 1), "{}", spec.id);
        }
    }
}

#[test]
fn equations_reproduce_the_table() {
    for spec in list_families() {
        let t = any_table(spec);
        if !t.constraints.is_empty() {
            continue;
        }
        let inst = instantiate_table(&t, &BTreeMap::new()).unwrap();
        let ctx = inst.algebra.ctx().clone();
        let eqs = structure_equations(&inst.algebra);
        for k in 1..=t.dim {
            let want = crate::exterior::parse_two_form(t.row(k), t.dim, &ctx).unwrap();
            assert_eq!(eqs[k - 1], want, "{} row {k}", spec.id);
        }
    }
}

#[test]
fn decomposition_round_trip() {
    for spec in list_families() {
        let t = any_table(spec);
        if !t.contact {
            continue;
        }
        let g = instantiate_table(&t, &BTreeMap::new()).unwrap().algebra;
        let d = decompose_contact(&g, 1).unwrap();
        assert_eq!(d.reassemble(), *g.bracket(), "{}", spec.id);
        assert!(verify_full_system(&d.base).unwrap().ok, "{}", spec.id);
    }
}

#[test]
fn maxrank_dimension_seven_instance() {
    let b = bind(&[("lambda4", "1"), ("lambda6", "2"), ("d4", "0"), ("d6", "1")]);
    let g = instantiate("maxrank.2p+1", Some(3), &b).unwrap();
    assert_eq!(g.dim(), 7);
    assert!(g.is_numeric());
    assert!(check_jacobi(g.bracket()).ok);
}

#[test]
fn so3_r2_table() {
    let g = instantiate("example.so3-r2", None, &BTreeMap::new()).unwrap();
    let ctx = g.ctx().clone();
    let v = g.bracket_of(&g.basis_vector(4), &g.basis_vector(5));
    let want = Vector::basis(5, 1, &ctx).add(&Vector::basis(5, 4, &ctx));
    assert_eq!(v, want);
}

#[test]
fn remark_model_keeps_lambda_symbolic() {
    let g = instantiate("dim5.remark.a2-1", None, &BTreeMap::new()).unwrap();
    assert!(g.ctx().index_of("lambda4").is_some());
    assert!(check_jacobi(g.bracket()).ok);
}

#[test]
fn hypotheses_are_enforced() {
    let err = instantiate("maxrank.2p+1", Some(3), &bind(&[("lambda4", "0")])).unwrap_err();
    assert_eq!(
        err,
        Error::Hypothesis("hypothesis `lambda4 != 0` is violated".into())
    );
    // repeated nonzero eigenvalue breaks the standing hypothesis
    let err = instantiate(
        "maxrank.2p+1",
        Some(3),
        &bind(&[("lambda4", "1"), ("lambda6", "1")]),
    )
    .unwrap_err();
    assert!(
        matches!(err, Error::Hypothesis(ref m) if m.contains("simple")),
        "{err}"
    );
    let err = instantiate("dim3.simple", None, &bind(&[("a", "0"), ("b", "0")])).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(ref m) if m.contains("a^2 + b*c")));
}

#[test]
fn p_is_checked() {
    assert_eq!(
        instantiate("maxrank.2p+1", None, &BTreeMap::new()).unwrap_err(),
        Error::MissingP("maxrank.2p+1".into())
    );
    assert!(instantiate("maxrank.2p+1", Some(2), &BTreeMap::new()).is_err());
    assert!(instantiate("dim5.A", Some(3), &BTreeMap::new()).is_err());
    assert!(instantiate("dim5.A", Some(2), &BTreeMap::new()).is_ok());
    assert_eq!(
        instantiate("dim5.Z", None, &BTreeMap::new()).unwrap_err(),
        Error::UnknownFamily("dim5.Z".into())
    );
}

#[test]
fn relations_are_checked_on_bound_values() {
    assert!(instantiate("dim5.G", None, &bind(&[("f", "-1")])).is_ok());
    assert!(matches!(
        instantiate("dim5.G", None, &bind(&[("f", "2")])),
        Err(Error::Hypothesis(_))
    ));
    // f^2 - f - 1 has no rational root
    assert!(instantiate("dim5.F", None, &bind(&[("f", "1")])).is_err());
}

#[test]
fn family_l_resolves_e() {
    let t = family("dim5.L").unwrap().table(None).unwrap();
    let inst = instantiate_table(&t, &bind(&[("d", "1")])).unwrap();
    assert_eq!(inst.resolved["e"].to_string(), "-1");
    assert_eq!(inst.resolved["dinv"].to_string(), "1");
    let inst = instantiate_table(&t, &bind(&[("d", "2")])).unwrap();
    assert_eq!(inst.resolved["e"].to_string(), "-1/2");
    assert!(instantiate_table(&t, &bind(&[("d", "2"), ("e", "1")])).is_err());
    assert!(instantiate_table(&t, &bind(&[("d", "0")])).is_err());
    // symbolic: e d + 1 = 0 holds in the reciprocal context
    let g = instantiate_table(&t, &BTreeMap::new()).unwrap().algebra;
    assert!(check_jacobi(g.bracket()).ok);
}

#[test]
fn rank_p_2_c_consumes_its_constraint() {
    let g = instantiate("rank-p-2.C", Some(4), &BTreeMap::new()).unwrap();
    assert!(g.ctx().index_of("d8").is_none());
    let d = decompose_contact(&g, 1).unwrap();
    let r = verify_full_system(&d.base).unwrap();
    for name in ["EQ2", "EQ3", "EQ4", "EQ5"] {
        assert!(r.residual(name).unwrap().is_zero(), "{name}");
    }
    assert_eq!(compute_rank(&d).unwrap().rank, 2);
}

#[test]
fn dim13_b_is_diagonal_of_rank_three() {
    let g = instantiate("dim13.rank3.b", None, &BTreeMap::new()).unwrap();
    let d = decompose_contact(&g, 1).unwrap();
    let n = d.f.dim();
    assert!((1..=n).all(|i| (1..=n).all(|j| i == j || d.f.get(i, j).is_zero())));
    let rd = compute_rank(&d).unwrap();
    assert_eq!(rd.rank, 3);
    assert_eq!(rd.pairs.len(), 5);
}

#[test]
fn declared_ranks_match() {
    for spec in list_families() {
        let t = any_table(spec);
        if let Some(r) = t.declared_rank {
            let g = instantiate_table(&t, &BTreeMap::new()).unwrap().algebra;
            let d = decompose_contact(&g, 1).unwrap();
            assert_eq!(compute_rank(&d).unwrap().rank, r, "{}", spec.id);
        }
    }
    for p in 3..=5 {
        let g = instantiate("maxrank.2p+1", Some(p), &BTreeMap::new()).unwrap();
        let d = decompose_contact(&g, 1).unwrap();
        assert_eq!(compute_rank(&d).unwrap().rank, p - 1);
    }
}

#[test]
fn sampled_reports_are_deterministic() {
    let a = verify_family("dim5.B", None, Mode::Sampled, 7).unwrap();
    let b = verify_family("dim5.B", None, Mode::Sampled, 7).unwrap();
    assert!(a.ok);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(
        a.check("sampled.frobenius").unwrap().status,
        CheckStatus::Pass
    );
}

#[test]
fn errata_printed_fail_corrected_pass() {
    for e in errata() {
        let (printed_fails, corrected_ok) = e.check().unwrap();
        assert!(
            printed_fails,
            "printed {} {:?} satisfies d^2 = 0",
            e.id, e.location
        );
        assert!(corrected_ok, "{}", e.id);
    }
}

#[test]
fn errata_file_is_current() {
    let tsv = errata_tsv().unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/errata.tsv");
    if std::env::var_os("UPDATE_ERRATA").is_some() {
        std::fs::write(path, &tsv).unwrap();
    }
    assert_eq!(std::fs::read_to_string(path).unwrap(), tsv);
    assert_eq!(tsv.lines().count(), errata().len() + 1);
}

#[test]
fn constraint_erratum_reverts_constraints() {
    let e = errata()
        .into_iter()
        .find(|e| e.location == Location::Constraints)
        .unwrap();
    let printed = e.printed_table().unwrap();
    assert_eq!(printed.constraints.len(), 1);
    assert_eq!(e.corrected_table().unwrap().constraints.len(), 4);
}
