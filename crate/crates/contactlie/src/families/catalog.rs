//! Structural equations of the catalogued families.

use super::{DimSpec, FamilySpec, Table};

fn heis(p: usize) -> String {
    (1..=p)
        .map(|i| format!("w{}^w{}", 2 * i, 2 * i + 1))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The diagonal rows for the pair (e_k, e_{k+1}): eigenvalues ±lam and the
/// ω₃-coefficients d, -1-d.
fn diag_pair(k: usize, lam: &str, d: &str) -> [(usize, String); 2] {
    [
        (
            k,
            format!("({lam})*w1^w{k} - ({lam})*w2^w{k} + ({d})*w3^w{k}"),
        ),
        (
            k + 1,
            format!(
                "-({lam})*w1^w{k1} + ({lam})*w2^w{k1} + (-1-({d}))*w3^w{k1}",
                k1 = k + 1
            ),
        ),
    ]
}

/// dω₁ = dω₂ = Σ ω_{2i}∧ω_{2i+1}, dω₃ = 0, diagonal f with the given
/// (λ, d) per pair starting at e₄.
fn diagonal_base(p: usize, pairs: &[(String, String)]) -> Vec<(usize, String)> {
    let mut rows = vec![(1, heis(p)), (2, heis(p))];
    for (i, (lam, d)) in pairs.iter().enumerate() {
        rows.extend(diag_pair(4 + 2 * i, lam, d));
    }
    rows
}

fn append(rows: &mut [(usize, String)], k: usize, extra: &str) {
    let row = rows.iter_mut().find(|(r, _)| *r == k).expect("row exists");
    row.1 = format!("{} + {extra}", row.1);
}

fn lambda_nonzero(names: &[String]) -> Vec<(String, String)> {
    names
        .iter()
        .map(|n| (n.clone(), format!("{n} != 0")))
        .collect()
}

fn s(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn dim3_heisenberg(_: usize) -> Table {
    Table::contact(3, vec![(1, "w2^w3".into())])
}

fn dim3_simple(_: usize) -> Table {
    Table {
        params: s(&["a", "b", "c"]),
        nonzero: pairs(&[("a^2+b*c", "a^2 + b*c != 0")]),
        ..Table::contact(
            3,
            vec![
                (1, "w2^w3".into()),
                (2, "a*w1^w2 + c*w1^w3".into()),
                (3, "b*w1^w2 - a*w1^w3".into()),
            ],
        )
    }
}

fn dim3_nilpotent_f(_: usize) -> Table {
    Table {
        params: s(&["c"]),
        ..Table::contact(3, vec![(1, "w2^w3".into()), (3, "w1^w2 + c*w2^w3".into())])
    }
}

fn so3_r2(_: usize) -> Table {
    Table::contact(
        5,
        vec![
            (1, "w2^w3 + w4^w5".into()),
            (2, "w1^w2 + w2^w4".into()),
            (3, "-w1^w3 - w3^w4".into()),
            (4, "w4^w5".into()),
        ],
    )
}

fn frobenius_ext_5(_: usize) -> Table {
    Table {
        params: s(&["a1", "a2", "a3"]),
        frobenius_quotient: true,
        ..Table::contact(
            5,
            vec![
                (1, "w2^w3 + w4^w5".into()),
                (2, "w2^w3 + w4^w5".into()),
                (
                    4,
                    "a1*w1^w4 + a3*w1^w5 - a1*w2^w4 - a3*w2^w5 - 1/2*w3^w4".into(),
                ),
                (
                    5,
                    "a2*w1^w4 - a1*w1^w5 - a2*w2^w4 + a1*w2^w5 - 1/2*w3^w5".into(),
                ),
            ],
        )
    }
}

/// The extension of the 4-dimensional frobeniusian model by a derivation,
/// in the basis Y₁..Y₅ where it is first written down.
pub fn frobenius_ext_5_y(_: usize) -> Table {
    Table {
        params: s(&["a1", "a2", "a3"]),
        contact: false,
        ..Table::contact(
            5,
            vec![
                (1, "w1^w2 + w3^w4".into()),
                (3, "-1/2*w2^w3 + a1*w5^w3 + a3*w5^w4".into()),
                (4, "-1/2*w2^w4 + a2*w5^w3 - a1*w5^w4".into()),
            ],
        )
    }
}

fn dim5_a(_: usize) -> Table {
    let mut rows = vec![(1, heis(2)), (2, "w2^w3".into())];
    rows.push((4, "lambda4*w1^w4 - lambda4*w2^w4 + d4*w3^w4".into()));
    rows.push((5, "-lambda4*w1^w5 + lambda4*w2^w5 - d4*w3^w5".into()));
    Table {
        params: s(&["lambda4", "d4"]),
        nonzero: lambda_nonzero(&s(&["lambda4"])),
        declared_rank: Some(1),
        ..Table::contact(5, rows)
    }
}

fn dim5_b(_: usize) -> Table {
    let mut rows = vec![(1, heis(2)), (2, heis(2))];
    rows.extend(diag_pair(4, "lambda4", "d4"));
    Table {
        params: s(&["lambda4", "d4"]),
        nonzero: lambda_nonzero(&s(&["lambda4"])),
        declared_rank: Some(1),
        frobenius_quotient: true,
        ..Table::contact(5, rows)
    }
}

fn dim5_c(_: usize) -> Table {
    Table::contact(
        5,
        vec![
            (1, heis(2)),
            (2, "w3^w4 + w1^w3".into()),
            (3, "w3^w5".into()),
            (4, "w2^w3 + w1^w5".into()),
        ],
    )
}

fn dim5_d(_: usize) -> Table {
    Table::contact(
        5,
        vec![
            (1, heis(2)),
            (2, "w2^w5 - w3^w4 + w1^w3".into()),
            (4, "w2^w3 + w1^w5".into()),
        ],
    )
}

fn dim5_e(_: usize) -> Table {
    Table {
        params: s(&["f"]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "w2^w5 - w3^w4 + f*w4^w5 + w1^w3".into()),
                (4, "w2^w3 + f*w2^w5 - f*w3^w4 + f^2*w4^w5 + w1^w5".into()),
            ],
        )
    }
}

fn dim5_f(_: usize) -> Table {
    Table {
        params: s(&["f", "l"]),
        relations: pairs(&[("f", "f^2-f-1")]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "w2^w3 + f*w4^w5 + w1^w3".into()),
                (4, "f*w2^w5 - f*w3^w4 + l*w4^w5 + w1^w5".into()),
            ],
        )
    }
}

fn dim5_g(_: usize) -> Table {
    Table {
        params: s(&["f", "l"]),
        relations: pairs(&[("f", "f^2-1")]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "f*w4^w5 + w1^w3".into()),
                (4, "f*w2^w5 - f*w3^w4 + l*w4^w5 + w1^w5".into()),
            ],
        )
    }
}

fn dim5_h(_: usize) -> Table {
    Table {
        params: s(&["c", "f", "g"]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "c*w2^w5".into()),
                (3, "2*w2^w3 + f*w2^w5 + 2*w4^w5".into()),
                (
                    4,
                    "c*w2^w3 + w2^w4 + g*w2^w5 - (c^2+1/2)*w3^w5 + 3*c*w4^w5 + w1^w5".into(),
                ),
                (5, "w2^w5".into()),
            ],
        )
    }
}

fn dim5_i(_: usize) -> Table {
    Table {
        params: s(&["c", "j", "l"]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "-2*w2^w3 + j*w3^w5 - 2*w4^w5".into()),
                (3, "c*w3^w5".into()),
                (
                    4,
                    "c*w2^w3 + (c^2+1/2)*w2^w5 + w3^w4 + l*w3^w5 + 3*c*w4^w5 + w1^w5".into(),
                ),
                (5, "w3^w5".into()),
            ],
        )
    }
}

fn dim5_j(_: usize) -> Table {
    Table {
        params: s(&["j", "l", "p"]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "w2^w3 + j*w3^w5".into()),
                (4, "-w2^w5 + l*w3^w5 + p*w4^w5 + w1^w5".into()),
            ],
        )
    }
}

fn dim5_k(_: usize) -> Table {
    Table {
        params: s(&["e", "f", "g", "j", "l"]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "e*w2^w5 + j*w3^w5".into()),
                (3, "f*w2^w5 + (1-e)*w3^w5".into()),
                (4, "w2^w3 + g*w2^w5 + l*w3^w5 + w1^w5".into()),
            ],
        )
    }
}

fn dim5_l(_: usize) -> Table {
    Table {
        params: s(&["a", "d", "dinv", "e"]),
        reciprocals: pairs(&[("d", "dinv")]),
        constraints: pairs(&[("e", "-dinv")]),
        ..Table::contact(
            5,
            vec![
                (1, heis(2)),
                (2, "a*w2^w3 + e*w3^w4 + a*w4^w5 + w1^w5".into()),
                (4, "-a*w3^w4 + d*w2^w5 + w1^w3".into()),
            ],
        )
    }
}

fn remark_a2_1(_: usize) -> Table {
    dim5_b(0)
}

fn remark_a2_0(_: usize) -> Table {
    dim5_a(0)
}

fn maxrank(p: usize) -> Table {
    let lams: Vec<String> = (2..=p).map(|i| format!("lambda{}", 2 * i)).collect();
    let ds: Vec<String> = (2..=p).map(|i| format!("d{}", 2 * i)).collect();
    let pr: Vec<(String, String)> = lams.iter().cloned().zip(ds.iter().cloned()).collect();
    let mut params = lams.clone();
    params.extend(ds);
    Table {
        params,
        nonzero: lambda_nonzero(&lams),
        declared_rank: Some(p - 1),
        frobenius_quotient: true,
        ..Table::contact(2 * p + 1, diagonal_base(p, &pr))
    }
}

/// Eigenvalue pairs for e₁₀, e₁₂, … beyond the first `fixed` pairs.
fn generic_tail(p: usize, from: usize) -> Vec<(String, String)> {
    (from..=p)
        .map(|i| (format!("lambda{}", 2 * i), format!("d{}", 2 * i)))
        .collect()
}

fn rank_p_2(p: usize) -> (Vec<(usize, String)>, Vec<String>, Vec<String>) {
    let mut pr = pairs(&[
        ("lambda4", "d4"),
        ("lambda6", "d6"),
        ("lambda4+lambda6", "d8"),
    ]);
    let tail = generic_tail(p, 5);
    pr.extend(tail.iter().cloned());
    let mut params = s(&["lambda4", "lambda6", "d4", "d6", "d8"]);
    let mut lams = s(&["lambda4", "lambda6", "lambda4+lambda6"]);
    for (l, d) in tail {
        params.push(l.clone());
        params.push(d);
        lams.push(l);
    }
    (diagonal_base(p, &pr), params, lams)
}

fn rank_p_2_c(p: usize) -> Table {
    let (mut rows, mut params, lams) = rank_p_2(p);
    append(&mut rows, 5, "(alpha1+beta2)*w6^w9");
    append(&mut rows, 7, "beta2*w4^w9");
    append(&mut rows, 8, "alpha1*w4^w6");
    params.extend(s(&["alpha1", "beta2"]));
    Table {
        params,
        constraints: pairs(&[("d8", "d4+d6")]),
        nonzero: lambda_nonzero(&lams),
        declared_rank: Some(p - 2),
        frobenius_quotient: true,
        ..Table::contact(2 * p + 1, rows)
    }
}

fn rank_p_2_d(p: usize) -> Table {
    let (mut rows, mut params, lams) = rank_p_2(p);
    append(&mut rows, 4, "alpha3*w7^w8");
    append(&mut rows, 6, "alpha2*w5^w8");
    append(&mut rows, 9, "(alpha3-alpha2)*w5^w7");
    params.extend(s(&["alpha2", "alpha3"]));
    Table {
        params,
        constraints: pairs(&[("d8", "d4+d6+1")]),
        nonzero: lambda_nonzero(&lams),
        declared_rank: Some(p - 2),
        frobenius_quotient: true,
        ..Table::contact(2 * p + 1, rows)
    }
}

/// The 8-dimensional frobeniusian quotients of the dimension-9 members of
/// the two rank p-2 families. Index i here is ω_{i+1} there.
fn core_c(_: usize) -> Table {
    Table {
        params: s(&["d4", "d6", "d8", "alpha1", "beta2"]),
        constraints: pairs(&[("d8", "d4+d6")]),
        labels: Some((2..=9).map(|i| format!("e{i}")).collect()),
        contact: false,
        ..Table::contact(
            8,
            vec![
                (1, "w1^w2 + w3^w4 + w5^w6 + w7^w8".into()),
                (3, "d4*w2^w3".into()),
                (4, "(-1-d4)*w2^w4 + (alpha1+beta2)*w5^w8".into()),
                (5, "d6*w2^w5".into()),
                (6, "(-1-d6)*w2^w6 + beta2*w3^w8".into()),
                (7, "d8*w2^w7 + alpha1*w3^w5".into()),
                (8, "(-1-d8)*w2^w8".into()),
            ],
        )
    }
}

fn core_d(_: usize) -> Table {
    Table {
        params: s(&["d4", "d6", "d8", "alpha2", "alpha3"]),
        constraints: pairs(&[("d8", "d4+d6+1")]),
        labels: Some((2..=9).map(|i| format!("e{i}")).collect()),
        contact: false,
        ..Table::contact(
            8,
            vec![
                (1, "w1^w2 + w3^w4 + w5^w6 + w7^w8".into()),
                (3, "d4*w2^w3 + alpha3*w6^w7".into()),
                (4, "(-1-d4)*w2^w4".into()),
                (5, "d6*w2^w5 + alpha2*w4^w7".into()),
                (6, "(-1-d6)*w2^w6".into()),
                (7, "d8*w2^w7".into()),
                (8, "(-1-d8)*w2^w8 + (alpha3-alpha2)*w4^w6".into()),
            ],
        )
    }
}

fn dim11(b: bool) -> Table {
    let pr = pairs(&[
        ("lambda4", "d4"),
        ("lambda6", "d6"),
        ("lambda4+lambda6", "d8"),
        ("2*lambda4+lambda6", "d10"),
    ]);
    let mut rows = diagonal_base(5, &pr);
    let mut params = s(&["lambda4", "lambda6", "d4", "d6", "d8", "d10"]);
    let mut constraints = vec![];
    if b {
        append(&mut rows, 5, "beta5*w6^w9");
        append(&mut rows, 7, "beta1*w4^w9");
        append(&mut rows, 8, "alpha1*w4^w6");
        params.extend(s(&["alpha1", "beta1", "beta5"]));
        constraints = pairs(&[("d8", "d4+d6"), ("beta5", "alpha1+beta1")]);
    }
    Table {
        params,
        constraints,
        nonzero: lambda_nonzero(&s(&[
            "lambda4",
            "lambda6",
            "lambda4+lambda6",
            "2*lambda4+lambda6",
        ])),
        declared_rank: Some(2),
        frobenius_quotient: true,
        ..Table::contact(11, rows)
    }
}

fn dim11_a(_: usize) -> Table {
    dim11(false)
}

fn dim11_b(_: usize) -> Table {
    dim11(true)
}

fn dim13(b: bool) -> Table {
    let pr = pairs(&[
        ("lambda4", "d4"),
        ("lambda6", "d6"),
        ("lambda4+lambda6", "d8"),
        ("lambda10", "d10"),
        ("lambda4+lambda10", "d12"),
    ]);
    let mut rows = diagonal_base(6, &pr);
    let mut params = s(&[
        "lambda4", "lambda6", "lambda10", "d4", "d6", "d8", "d10", "d12",
    ]);
    let mut constraints = vec![];
    if b {
        append(&mut rows, 5, "a69*w6^w9 + a1013*w10^w13");
        append(&mut rows, 7, "a49*w4^w9");
        append(&mut rows, 8, "a46*w4^w6");
        append(&mut rows, 11, "a413*w4^w13");
        append(&mut rows, 12, "a410*w4^w10");
        params.extend(s(&["a46", "a49", "a69", "a410", "a413", "a1013"]));
        constraints = pairs(&[
            ("d8", "d4+d6"),
            ("d12", "d4+d10"),
            ("a69", "a46+a49"),
            ("a1013", "a410+a413"),
        ]);
    }
    Table {
        params,
        constraints,
        nonzero: lambda_nonzero(&s(&[
            "lambda4",
            "lambda6",
            "lambda10",
            "lambda4+lambda6",
            "lambda4+lambda10",
        ])),
        declared_rank: Some(3),
        frobenius_quotient: true,
        ..Table::contact(13, rows)
    }
}

fn dim13_a(_: usize) -> Table {
    dim13(false)
}

fn dim13_b(_: usize) -> Table {
    dim13(true)
}

pub(super) static CATALOG: &[FamilySpec] = &[
    FamilySpec {
        id: "dim3.heisenberg",
        summary: "3-dimensional Heisenberg algebra, f = 0",
        dim: DimSpec::Fixed(3),
        build: dim3_heisenberg,
    },
    FamilySpec {
        id: "dim3.simple",
        summary: "3-dimensional simple case, f traceless with nonzero determinant",
        dim: DimSpec::Fixed(3),
        build: dim3_simple,
    },
    FamilySpec {
        id: "dim3.nilpotent-f",
        summary: "3-dimensional case with nilpotent f(e2) = e3",
        dim: DimSpec::Fixed(3),
        build: dim3_nilpotent_f,
    },
    FamilySpec {
        id: "example.so3-r2",
        summary: "so(3) + r(2) in a Darboux basis",
        dim: DimSpec::Fixed(5),
        build: so3_r2,
    },
    FamilySpec {
        id: "example.frobenius-ext-5",
        summary: "extension of the 4-dimensional frobeniusian model by a derivation",
        dim: DimSpec::Fixed(5),
        build: frobenius_ext_5,
    },
    FamilySpec {
        id: "dim5.remark.a2-1",
        summary: "diagonal 5-dimensional model with a2 = 1",
        dim: DimSpec::Fixed(5),
        build: remark_a2_1,
    },
    FamilySpec {
        id: "dim5.remark.a2-0",
        summary: "diagonal 5-dimensional model with a2 = 0",
        dim: DimSpec::Fixed(5),
        build: remark_a2_0,
    },
    FamilySpec {
        id: "maxrank.2p+1",
        summary: "diagonal contact algebras of maximal rank p-1",
        dim: DimSpec::Odd { min_p: 3 },
        build: maxrank,
    },
    FamilySpec {
        id: "rank-p-2.C",
        summary: "diagonal, rank p-2, lambda8 = lambda4 + lambda6, d8 = d4 + d6",
        dim: DimSpec::Odd { min_p: 4 },
        build: rank_p_2_c,
    },
    FamilySpec {
        id: "rank-p-2.D",
        summary: "diagonal, rank p-2, lambda8 = lambda4 + lambda6, d8 = d4 + d6 + 1",
        dim: DimSpec::Odd { min_p: 4 },
        build: rank_p_2_d,
    },
    FamilySpec {
        id: "rank-p-2.C.core",
        summary: "8-dimensional frobeniusian quotient of rank-p-2.C at p = 4",
        dim: DimSpec::Fixed(8),
        build: core_c,
    },
    FamilySpec {
        id: "rank-p-2.D.core",
        summary: "8-dimensional frobeniusian quotient of rank-p-2.D at p = 4",
        dim: DimSpec::Fixed(8),
        build: core_d,
    },
    FamilySpec {
        id: "dim11.rank2.a",
        summary: "11-dimensional diagonal, rank 2, no coupling terms",
        dim: DimSpec::Fixed(11),
        build: dim11_a,
    },
    FamilySpec {
        id: "dim11.rank2.b",
        summary: "11-dimensional diagonal, rank 2, d8 = d4 + d6 with coupling terms",
        dim: DimSpec::Fixed(11),
        build: dim11_b,
    },
    FamilySpec {
        id: "dim13.rank3.a",
        summary: "13-dimensional diagonal, rank 3, no coupling terms",
        dim: DimSpec::Fixed(13),
        build: dim13_a,
    },
    FamilySpec {
        id: "dim13.rank3.b",
        summary: "13-dimensional diagonal, rank 3, both relation triples coupled",
        dim: DimSpec::Fixed(13),
        build: dim13_b,
    },
    FamilySpec {
        id: "dim5.A",
        summary: "f diagonal, dw2 = w2^w3",
        dim: DimSpec::Fixed(5),
        build: dim5_a,
    },
    FamilySpec {
        id: "dim5.B",
        summary: "f diagonal, frobeniusian extension",
        dim: DimSpec::Fixed(5),
        build: dim5_b,
    },
    FamilySpec {
        id: "dim5.C",
        summary: "f reduced, nilpotent, dw3 = w3^w5",
        dim: DimSpec::Fixed(5),
        build: dim5_c,
    },
    FamilySpec {
        id: "dim5.D",
        summary: "f reduced, nilpotent, dw3 = 0",
        dim: DimSpec::Fixed(5),
        build: dim5_d,
    },
    FamilySpec {
        id: "dim5.E",
        summary: "f reduced, one free parameter f",
        dim: DimSpec::Fixed(5),
        build: dim5_e,
    },
    FamilySpec {
        id: "dim5.F",
        summary: "f reduced, f^2 - f - 1 = 0",
        dim: DimSpec::Fixed(5),
        build: dim5_f,
    },
    FamilySpec {
        id: "dim5.G",
        summary: "f reduced, f^2 - 1 = 0",
        dim: DimSpec::Fixed(5),
        build: dim5_g,
    },
    FamilySpec {
        id: "dim5.H",
        summary: "f(e5) = e4, dw5 = w2^w5",
        dim: DimSpec::Fixed(5),
        build: dim5_h,
    },
    FamilySpec {
        id: "dim5.I",
        summary: "f(e5) = e4, dw5 = w3^w5",
        dim: DimSpec::Fixed(5),
        build: dim5_i,
    },
    FamilySpec {
        id: "dim5.J",
        summary: "f(e5) = e4, dw2 = w2^w3 + j w3^w5",
        dim: DimSpec::Fixed(5),
        build: dim5_j,
    },
    FamilySpec {
        id: "dim5.K",
        summary: "f(e5) = e4, dw5 = 0, five free parameters",
        dim: DimSpec::Fixed(5),
        build: dim5_k,
    },
    FamilySpec {
        id: "dim5.L",
        summary: "f nilpotent, not reduced, e d + 1 = 0",
        dim: DimSpec::Fixed(5),
        build: dim5_l,
    },
];
