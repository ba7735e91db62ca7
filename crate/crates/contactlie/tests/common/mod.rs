//! Test-only oracles, written without the library's own algorithms for the
//! quantity under test.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use contactlie::families::{instantiate_table, list_families, DimSpec};
use contactlie::liealg::LieAlgebra;
use contactlie::linalg::QMatrix;
use contactlie::scalar::{rat, Rational};
use contactlie::upoly::{charpoly, UPoly};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Contact families usable for random numeric instances: every free parameter
/// can be bound to an arbitrary rational.
pub fn numeric_contact_families() -> Vec<(&'static str, usize)> {
    let mut out = Vec::new();
    for spec in list_families() {
        let ps: Vec<usize> = match spec.dim {
            DimSpec::Fixed(_) => vec![0],
            DimSpec::Odd { min_p } => vec![min_p, min_p + 1],
        };
        for p in ps {
            let t = spec.table(if p == 0 { None } else { Some(p) }).unwrap();
            if t.contact && t.relations.is_empty() {
                out.push((spec.id, p));
            }
        }
    }
    out
}

/// Binds every unconstrained parameter of a family to the given values
/// (cycled) and returns the algebra, or None when a hypothesis is violated.
pub fn numeric_instance(id: &str, p: usize, values: &[(i64, i64)]) -> Option<LieAlgebra> {
    let spec = contactlie::families::family(id).unwrap();
    let t = spec.table(if p == 0 { None } else { Some(p) }).unwrap();
    let partners: Vec<&String> = t.reciprocals.iter().map(|(_, b)| b).collect();
    let mut b = BTreeMap::new();
    let free = t
        .params
        .iter()
        .filter(|n| !t.constraints.iter().any(|(c, _)| c == *n) && !partners.contains(n));
    for (k, name) in free.enumerate() {
        let (num, den) = values[k % values.len()];
        let v = rat(num + k as i64, den);
        b.insert(name.clone(), v.to_string());
    }
    let inst = instantiate_table(&t, &b).ok()?;
    assert!(
        inst.algebra.is_numeric(),
        "{id}: {:?}",
        inst.algebra.ctx().params()
    );
    Some(inst.algebra)
}

pub fn qmat(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_i64(rows)
}

/// Block-diagonal Jordan matrix with the given (eigenvalue, block size) pairs.
pub fn jordan_matrix(blocks: &[(i64, usize)]) -> (QMatrix, QMatrix) {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut j = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![vec![Rational::zero(); n]; n];
    let mut at = 0;
    for &(lambda, size) in blocks {
        for i in 0..size {
            j[at + i][at + i] = rat(lambda, 1);
            d[at + i][at + i] = rat(lambda, 1);
            if i + 1 < size {
                j[at + i][at + i + 1] = Rational::one();
            }
        }
        at += size;
    }
    (QMatrix::from_rows(j), QMatrix::from_rows(d))
}

/// Semisimple part of a matrix whose characteristic polynomial splits over ℚ,
/// assembled from generalized eigenspaces: S = P·diag(λ)·P⁻¹.
pub fn semisimple_by_factorization(a: &QMatrix) -> Option<QMatrix> {
    let cp = charpoly(a);
    let roots = cp.rational_roots();
    let n = a.row(0).len();
    if roots.iter().map(|r| r.1).sum::<usize>() != n {
        return None;
    }
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    let mut diag = Vec::new();
    for (lambda, m) in roots {
        let shifted = a.sub(&QMatrix::identity(n).scale(&lambda));
        let ker = shifted.pow(m as u32).kernel();
        assert_eq!(ker.len(), m, "generalized eigenspace has the wrong size");
        for v in ker {
            cols.push(v);
            diag.push(lambda.clone());
        }
    }
    let p = QMatrix::from_rows(cols).transpose();
    let mut d = vec![vec![Rational::zero(); n]; n];
    for (i, l) in diag.into_iter().enumerate() {
        d[i][i] = l;
    }
    Some(p.mul(&QMatrix::from_rows(d)).mul(&p.inverse()?))
}

/// Postconditions of a Jordan–Chevalley pair, checked from first principles.
pub fn jc_holds(a: &QMatrix, s: &QMatrix, n: &QMatrix) -> bool {
    let dim = a.row(0).len();
    let sum = s.add(n) == *a;
    let commute = s.mul(n) == n.mul(s);
    let nilpotent = n.pow(dim as u32).is_zero();
    // S is semisimple iff the squarefree part of its characteristic
    // polynomial annihilates it
    let sf: UPoly = charpoly(s).squarefree_part();
    let semisimple = sf.eval_matrix(s).is_zero();
    sum && commute && nilpotent && semisimple
}

fn random_rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    QMatrix::from_rows(
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                    .collect()
            })
            .collect(),
    )
}

/// Outcome of a Jordan–Chevalley campaign.
#[derive(Debug, Default)]
pub struct JcStats {
    pub checked: usize,
    pub split: usize,
    pub failures: Vec<String>,
}

/// Runs the Newton decomposition on `count` random rational n×n matrices.
/// Odd-numbered instances are P·J·P⁻¹ with a random rational Jordan form J,
/// so that the split case is exercised; the rest are dense random matrices.
/// Postconditions are checked on every instance and the semisimple part is
/// compared with the factorization oracle whenever χ splits over ℚ.
pub fn jc_campaign(n: usize, count: usize, seed: u64) -> JcStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = JcStats::default();
    while stats.checked < count {
        let a = if stats.checked % 2 == 1 {
            let mut blocks = Vec::new();
            let mut left = n;
            while left > 0 {
                let s = rng.gen_range(1..=left.min(3));
                blocks.push((rng.gen_range(-3..=3), s));
                left -= s;
            }
            let (j, _) = jordan_matrix(&blocks);
            let p = random_rational_matrix(&mut rng, n);
            let Some(pinv) = p.inverse() else { continue };
            p.mul(&j).mul(&pinv)
        } else {
            random_rational_matrix(&mut rng, n)
        };
        stats.checked += 1;
        let (s, nil) = contactlie::compat::jordan_chevalley_q(&a);
        if !jc_holds(&a, &s, &nil) {
            stats.failures.push(format!("postconditions fail on {a:?}"));
        }
        if let Some(oracle) = semisimple_by_factorization(&a) {
            stats.split += 1;
            if oracle != s {
                stats
                    .failures
                    .push(format!("semisimple part differs on {a:?}"));
            }
        }
    }
    stats
}
