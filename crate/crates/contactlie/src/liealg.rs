//! Lie algebras given by structure constants, subspaces over ℚ, and the
//! usual ideal-theoretic invariants.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::{comp_product, Cochain2, Vector};
use crate::scalar::{rat, Ctx, Rational, Scalar, ScalarContext};

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    bracket: Cochain2,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}, {:?})", self.dim(), self.bracket)
    }
}

impl LieAlgebra {
    /// Builds the algebra after checking the Jacobi identity symbolically.
    pub fn new(bracket: Cochain2) -> Result<Self> {
        let report = check_jacobi(&bracket);
        if let Some((t, _)) = report.violations.first() {
            return Err(Error::NotLie(*t));
        }
        Ok(Self::unchecked(bracket))
    }

    /// Skips the Jacobi check; for studying non-Lie brackets.
    pub fn unchecked(bracket: Cochain2) -> Self {
        let labels = (1..=bracket.dim()).map(|i| format!("e{i}")).collect();
        LieAlgebra { labels, bracket }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimMismatch(labels.len(), self.dim()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket(&self) -> &Cochain2 {
        &self.bracket
    }

    pub fn ctx(&self) -> &Ctx {
        self.bracket.ctx()
    }

    pub fn bracket_of(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval(x, y)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i, self.ctx())
    }

    pub fn is_numeric(&self) -> bool {
        self.bracket.scalars().all(|s| s.is_constant())
    }

    /// Substitutes rational values and moves to the context of the
    /// remaining parameters. Jacobi is not rechecked: it is preserved by
    /// specialization.
    pub fn specialize(
        &self,
        values: &std::collections::BTreeMap<String, Rational>,
        ctx: &Ctx,
    ) -> Result<Self> {
        let bracket = self
            .bracket
            .map(ctx, |s| s.substitute_rationals(values)?.transfer(ctx))?;
        Ok(LieAlgebra {
            labels: self.labels.clone(),
            bracket,
        })
    }

    /// Applies a scalar map to every structure constant, e.g. a substitution
    /// into another context.
    pub fn map_scalars<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<Self> {
        Ok(LieAlgebra {
            labels: self.labels.clone(),
            bracket: self.bracket.map(ctx, f)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub ok: bool,
    pub violations: Vec<((usize, usize, usize), Vector)>,
}

pub fn check_jacobi(brk: &Cochain2) -> JacobiReport {
    let jac = comp_product(brk, brk).expect("same cochain");
    let violations = jac.nonzero();
    JacobiReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn numeric(v: &Vector) -> Result<Vec<Rational>> {
    v.to_rationals()
        .ok_or_else(|| Error::Parametrized("vector has parametric coordinates".into()))
}

/// A subspace of ℚ^n kept as the rows of a reduced echelon matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: vec![] }
    }

    pub fn whole(dim: usize) -> Self {
        Self::from_rationals(
            dim,
            (0..dim).map(|i| {
                (0..dim)
                    .map(|j| if i == j { rat(1, 1) } else { rat(0, 1) })
                    .collect()
            }),
        )
    }

    pub fn from_rationals<I: IntoIterator<Item = Vec<Rational>>>(dim: usize, gens: I) -> Self {
        let gens: Vec<Vec<Rational>> = gens.into_iter().collect();
        if gens.is_empty() {
            return Self::zero(dim);
        }
        let mut m = QMatrix::from_rows(gens);
        let r = m.rref().len();
        Subspace {
            dim,
            rows: (0..r).map(|i| m.row(i).to_vec()).collect(),
        }
    }

    /// Fails with `Parametrized` if a generator has non-constant coordinates.
    pub fn span(dim: usize, gens: &[Vector]) -> Result<Self> {
        Ok(Self::from_rationals(
            dim,
            gens.iter().map(numeric).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn basis_vectors(&self, ctx: &Ctx) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|r| Vector::from_rationals(ctx, r))
            .collect()
    }

    pub fn contains_rationals(&self, v: &[Rational]) -> bool {
        if v.iter().all(|c| c.is_zero()) {
            return true;
        }
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        QMatrix::from_rows(rows).rank() == self.rows.len()
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.contains_rationals(&numeric(v)?))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        Self::from_rationals(self.dim, self.rows.iter().chain(&o.rows).cloned())
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.rows.iter().all(|r| o.contains_rationals(r))
    }
}

fn all_brackets<'a>(g: &'a LieAlgebra, extra: &'a [Cochain2]) -> Vec<&'a Cochain2> {
    std::iter::once(g.bracket()).chain(extra.iter()).collect()
}

/// Span of b(x, y) for x in `a`, y in `b`, over every bracket b.
pub fn bracket_span(
    g: &LieAlgebra,
    extra: &[Cochain2],
    a: &Subspace,
    b: &Subspace,
) -> Result<Subspace> {
    let ctx = g.ctx();
    let (xs, ys) = (a.basis_vectors(ctx), b.basis_vectors(ctx));
    let mut gens = Vec::new();
    for brk in all_brackets(g, extra) {
        for x in &xs {
            for y in &ys {
                gens.push(numeric(&brk.eval(x, y))?);
            }
        }
    }
    Ok(Subspace::from_rationals(g.dim(), gens))
}

/// {X : μ(X, e_j) = 0 for all j}.
pub fn center(g: &LieAlgebra) -> Result<Subspace> {
    let n = g.dim();
    // row (j, k) of the system: Σ_i X_i c_ij^k = 0
    let mut m = QMatrix::zeros(n * n, n);
    for i in 1..=n {
        for j in 1..=n {
            for (k, s) in g.bracket().eval_basis(i, j).support() {
                m[((j - 1) * n + (k - 1), i - 1)] = s
                    .to_rational()
                    .ok_or_else(|| Error::Parametrized("bracket has parameters".into()))?;
            }
        }
    }
    Ok(Subspace::from_rationals(n, m.kernel()))
}

/// C⁰ = V, C^{k+1} = ⟦V, C^k⟧ where ⟦·,·⟧ uses the bracket and any extra
/// bilinear maps; stops when the chain stabilizes.
pub fn lower_central_series(g: &LieAlgebra, extra: &[Cochain2]) -> Result<Vec<Subspace>> {
    let n = g.dim();
    let whole = Subspace::whole(n);
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        let next = bracket_span(g, extra, &whole, last)?;
        if next.dim() == last.dim() {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &LieAlgebra, extra: &[Cochain2]) -> Result<bool> {
    Ok(lower_central_series(g, extra)?.last().unwrap().is_zero())
}

pub fn is_ideal(g: &LieAlgebra, s: &Subspace, extra: &[Cochain2]) -> Result<bool> {
    Ok(bracket_span(g, extra, &Subspace::whole(g.dim()), s)?.is_subspace_of(s))
}

pub fn is_subalgebra(g: &LieAlgebra, s: &Subspace, extra: &[Cochain2]) -> Result<bool> {
    Ok(bracket_span(g, extra, s, s)?.is_subspace_of(s))
}

/// ℋ_{2p+1}: μ(e_{2i}, e_{2i+1}) = e₁.
pub fn make_heisenberg(p: usize, ctx: &Ctx) -> LieAlgebra {
    assert!(p >= 1, "p must be positive");
    let mut mu = Cochain2::new(2 * p + 1, ctx);
    for i in 1..=p {
        mu.set(2 * i, 2 * i + 1, 1, Scalar::one(ctx));
    }
    LieAlgebra::unchecked(mu)
}

/// The 4-dim frobeniusian model [Y1,Y2] = [Y3,Y4] = Y1, [Y2,Y3] = −½Y3,
/// [Y2,Y4] = −½Y4.
pub fn make_frobenius_model4() -> LieAlgebra {
    let ctx = ScalarContext::empty();
    let mut mu = Cochain2::new(4, &ctx);
    let one = Scalar::one(&ctx);
    let half = Scalar::constant(&ctx, rat(-1, 2));
    mu.set(1, 2, 1, one.clone());
    mu.set(3, 4, 1, one);
    mu.set(2, 3, 3, half.clone());
    mu.set(2, 4, 4, half);
    LieAlgebra::unchecked(mu)
        .with_labels((1..=4).map(|i| format!("Y{i}")).collect())
        .expect("four labels")
}

/// Splits μ along e_x: the first part keeps brackets involving e_x, the
/// second keeps the rest.
pub fn split_along(g: &LieAlgebra, x: usize) -> (Cochain2, Cochain2) {
    let ctx = g.ctx();
    let mut mu0 = Cochain2::new(g.dim(), ctx);
    let mut phi = Cochain2::new(g.dim(), ctx);
    for ((i, j), k, s) in g.bracket().entries() {
        let target = if i == x || j == x { &mut mu0 } else { &mut phi };
        target.set(i, j, k, s.clone());
    }
    (mu0, phi)
}
