//! Randomized property suites shared by the proptest tests and the
//! acceptance harness. Each suite runs `CASES` deterministic cases.

use contactlie::compat::{decompose_contact, kernel_closure, spectrum_symmetric};
use contactlie::exterior::{d_form, KForm};
use contactlie::liealg::LieAlgebra;
use contactlie::linalg::QMatrix;
use contactlie::multilinear::{comp_product, Cochain2, Vector};
use contactlie::rp::tilde;
use contactlie::scalar::{rat, Ctx, Scalar, ScalarContext};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::{numeric_contact_families, numeric_instance};

pub const CASES: u32 = 64;

pub fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        max_global_rejects: 4096,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

type Suite = fn(&mut TestRunner) -> Result<(), String>;

/// (name, suite) for every property of the acceptance list.
pub const SUITES: &[(&str, Suite)] = &[
    ("antiderivation", antiderivation),
    ("d_of_one_form", d_of_one_form),
    ("comp_product_alternating", comp_product_alternating),
    ("tilde_product", tilde_product),
    ("spectrum_symmetry", spectrum_symmetry),
    ("kernel_closure", kernel_is_a_subalgebra),
];

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=5)
}

fn seeds(max: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec(small_rat(), 1..max)
}

fn family_values() -> impl Strategy<Value = (usize, Vec<(i64, i64)>)> {
    let n = numeric_contact_families().len();
    (0..n, prop::collection::vec((1i64..=40, 1i64..=7), 1..6))
}

fn instance(idx: usize, vals: &[(i64, i64)]) -> Result<LieAlgebra, TestCaseError> {
    let (id, p) = numeric_contact_families()[idx];
    numeric_instance(id, p, vals).ok_or_else(|| TestCaseError::reject("hypothesis violated"))
}

fn form(dim: usize, degree: usize, ctx: &Ctx, seed: &[(i64, i64)]) -> KForm {
    let mut f = KForm::zero(dim, degree, ctx);
    for (t, &(a, b)) in seed.iter().enumerate() {
        let idx: Vec<usize> = (0..degree)
            .map(|s| (a.unsigned_abs() as usize + 3 * s + t) % dim + 1)
            .collect();
        f.add_term(&idx, Scalar::constant(ctx, rat(a, b)));
    }
    f
}

fn vector(dim: usize, ctx: &Ctx, seed: &[(i64, i64)]) -> Vector {
    let v: Vec<_> = (0..dim)
        .map(|i| {
            let (a, b) = seed[i % seed.len()];
            rat(a - i as i64, b)
        })
        .collect();
    Vector::from_rationals(ctx, &v)
}

fn report<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// d(α∧β) = dα∧β + (−1)^{deg α} α∧dβ, and d² = 0, on catalog algebras.
pub fn antiderivation(r: &mut TestRunner) -> Result<(), String> {
    let s = (family_values(), 1usize..=2, 1usize..=2, seeds(5), seeds(5));
    report(r.run(&s, |((idx, vals), da, db, sa, sb)| {
        let g = instance(idx, &vals)?;
        let (n, ctx) = (g.dim(), g.ctx().clone());
        let a = form(n, da, &ctx, &sa);
        let b = form(n, db, &ctx, &sb);
        let sign = Scalar::from_int(&ctx, if da % 2 == 0 { 1 } else { -1 });
        let lhs = d_form(&g, &a.wedge(&b).unwrap()).unwrap();
        let rhs = d_form(&g, &a)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&d_form(&g, &b).unwrap()).unwrap().scale(&sign))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(d_form(&g, &d_form(&g, &a).unwrap()).unwrap().is_zero());
        Ok(())
    }))
}

/// dα(x, y) = α([x, y]) for 1-forms, the sign that makes dω_k = Σ C_ij^k ω_i∧ω_j.
pub fn d_of_one_form(r: &mut TestRunner) -> Result<(), String> {
    let s = (family_values(), seeds(6), seeds(4), seeds(4));
    report(r.run(&s, |((idx, vals), sa, sx, sy)| {
        let g = instance(idx, &vals)?;
        let (n, ctx) = (g.dim(), g.ctx().clone());
        let a = form(n, 1, &ctx, &sa);
        let (x, y) = (vector(n, &ctx, &sx), vector(n, &ctx, &sy));
        let lhs = d_form(&g, &a).unwrap().eval(&[x.clone(), y.clone()]);
        prop_assert_eq!(lhs, a.eval(&[g.bracket_of(&x, &y)]));
        Ok(())
    }))
}

/// φ∘ψ is alternating and agrees with its cyclic definition.
pub fn comp_product_alternating(r: &mut TestRunner) -> Result<(), String> {
    let entry = (1usize..=6, 1usize..=6, 1usize..=6, -4i64..=4);
    let s = (
        3usize..=6,
        prop::collection::vec(entry.clone(), 1..12),
        prop::collection::vec(entry, 1..12),
        prop::collection::vec(small_rat(), 3..9),
    );
    report(r.run(&s, |(n, phi, psi, sv)| {
        let ctx = ScalarContext::empty();
        let build = |entries: &[(usize, usize, usize, i64)]| {
            let mut c = Cochain2::new(n, &ctx);
            for &(i, j, k, v) in entries {
                let (i, j, k) = ((i - 1) % n + 1, (j - 1) % n + 1, (k - 1) % n + 1);
                if i < j {
                    c.add_to(i, j, k, &Scalar::from_int(&ctx, v));
                }
            }
            c
        };
        let (phi, psi) = (build(&phi), build(&psi));
        let c = comp_product(&phi, &psi).unwrap();
        let x = vector(n, &ctx, &sv);
        let y = vector(n, &ctx, &sv[1..]);
        let z = vector(n, &ctx, &sv[2..]);
        let v = c.eval(&x, &y, &z);
        let minus = -Scalar::one(&ctx);
        prop_assert_eq!(c.eval(&y, &x, &z), v.scale(&minus));
        prop_assert_eq!(c.eval(&x, &z, &y), v.scale(&minus));
        prop_assert_eq!(c.eval(&y, &z, &x), v.clone());
        prop_assert!(c.eval(&x, &x, &z).is_zero());
        let oracle = phi
            .eval(&psi.eval(&x, &y), &z)
            .add(&phi.eval(&psi.eval(&y, &z), &x))
            .add(&phi.eval(&psi.eval(&z, &x), &y));
        prop_assert_eq!(v, oracle);
        Ok(())
    }))
}

/// A·Ã = −det(A)·Id on 2×2 blocks.
pub fn tilde_product(r: &mut TestRunner) -> Result<(), String> {
    let s = (small_rat(), small_rat(), small_rat(), small_rat());
    report(r.run(&s, |(a, b, c, d)| {
        let ctx = ScalarContext::empty();
        let s = |(n, m): (i64, i64)| Scalar::constant(&ctx, rat(n, m));
        let m = vec![vec![s(a), s(b)], vec![s(c), s(d)]];
        let t = tilde(&m).unwrap();
        // determinant by hand
        let det = rat(a.0, a.1) * rat(d.0, d.1) - rat(b.0, b.1) * rat(c.0, c.1);
        for i in 0..2 {
            for j in 0..2 {
                let mut e = Scalar::zero(&ctx);
                for k in 0..2 {
                    e += &m[i][k].try_mul(&t[k][j]).unwrap();
                }
                let want = if i == j { -det.clone() } else { rat(0, 1) };
                prop_assert_eq!(e, Scalar::constant(&ctx, want));
            }
        }
        Ok(())
    }))
}

/// Nonzero eigenvalues of catalog f come in ± pairs:
/// det(−x − f) = (−1)^n det(x − f) at sample points.
pub fn spectrum_symmetry(r: &mut TestRunner) -> Result<(), String> {
    let s = (family_values(), prop::collection::vec(-20i64..=20, 3));
    report(r.run(&s, |((idx, vals), xs)| {
        let g = instance(idx, &vals)?;
        let d = decompose_contact(&g, 1).unwrap();
        prop_assert!(spectrum_symmetric(&d.f));
        let f = d.f.to_qmatrix().unwrap();
        let n = f.row(0).len();
        let chi = |x: i64| QMatrix::identity(n).scale(&rat(x, 1)).sub(&f).det();
        let sgn = rat(if n % 2 == 0 { 1 } else { -1 }, 1);
        for x in xs {
            prop_assert_eq!(chi(-x), sgn.clone() * chi(x));
        }
        Ok(())
    }))
}

/// ker f̂ is closed under the bracket.
pub fn kernel_is_a_subalgebra(r: &mut TestRunner) -> Result<(), String> {
    report(r.run(&family_values(), |(idx, vals)| {
        let g = instance(idx, &vals)?;
        let d = decompose_contact(&g, 1).unwrap();
        prop_assert!(kernel_closure(&g, &d).unwrap());
        let fh = d.f_hat().to_qmatrix().unwrap();
        let ctx = g.ctx().clone();
        let ker: Vec<Vector> = fh
            .kernel()
            .iter()
            .map(|v| Vector::from_rationals(&ctx, v))
            .collect();
        prop_assert!(!ker.is_empty());
        for u in &ker {
            for v in &ker {
                let w = g.bracket_of(u, v).to_rationals().unwrap();
                prop_assert!(fh.apply(&w).iter().all(Zero::is_zero));
            }
        }
        Ok(())
    }))
}
