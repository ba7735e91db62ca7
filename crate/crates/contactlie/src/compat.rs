//! 2-compatible structures (μ₀, φ₁, φ₂), the contact decomposition in a
//! Darboux basis, and the analysis of f(e_i) = φ₂(e₁, e_i).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::is_darboux;
use crate::liealg::{check_jacobi, is_subalgebra, make_heisenberg, LieAlgebra, Subspace};
use crate::linalg::{QMatrix, Restriction};
use crate::multilinear::{
    coboundary1, coboundary2, coboundary_kernel, comp_product, solve_coboundary_membership,
    Cochain2, Cochain3, Endo, Unknown, Vector,
};
use crate::rp;
use crate::scalar::{Ctx, Rational, Scalar};
use crate::upoly::{charpoly, UPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCompatible {
    pub mu0: Cochain2,
    pub phi1: Cochain2,
    pub phi2: Cochain2,
}

impl TwoCompatible {
    pub fn new(mu0: Cochain2, phi1: Cochain2, phi2: Cochain2) -> Result<Self> {
        for c in [&phi1, &phi2] {
            if c.dim() != mu0.dim() {
                return Err(Error::DimMismatch(mu0.dim(), c.dim()));
            }
        }
        Ok(TwoCompatible { mu0, phi1, phi2 })
    }

    pub fn dim(&self) -> usize {
        self.mu0.dim()
    }

    pub fn ctx(&self) -> &Ctx {
        self.mu0.ctx()
    }

    /// μ₀ + φ₁ + φ₂, the bracket at t = 1.
    pub fn full_bracket(&self) -> Cochain2 {
        self.mu0.add(&self.phi1).add(&self.phi2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub name: &'static str,
    pub value: Cochain3,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    pub ok: bool,
    pub residuals: Vec<Residual>,
    /// Jacobi for μ₀ + φ₁ + φ₂; only filled by `verify_full_system`.
    pub full_jacobi: Option<bool>,
}

impl SystemReport {
    pub fn residual(&self, name: &str) -> Option<&Cochain3> {
        self.residuals
            .iter()
            .find(|r| r.name == name)
            .map(|r| &r.value)
    }
}

fn sum3(a: Cochain3, b: Cochain3) -> Cochain3 {
    a.add(&b)
}

/// δ_{μ₀}φ₁ = 0, φ₁∘φ₁ + δ_{μ₀}φ₂ = 0, δ_{φ₂}φ₁ = 0.
pub fn verify_axioms(t: &TwoCompatible) -> Result<SystemReport> {
    let residuals = vec![
        Residual {
            name: "d_mu0(phi1)",
            value: coboundary2(&t.mu0, &t.phi1)?,
        },
        Residual {
            name: "phi1.phi1 + d_mu0(phi2)",
            value: sum3(
                comp_product(&t.phi1, &t.phi1)?,
                coboundary2(&t.mu0, &t.phi2)?,
            ),
        },
        Residual {
            name: "d_phi2(phi1)",
            value: coboundary2(&t.phi2, &t.phi1)?,
        },
    ];
    Ok(SystemReport {
        ok: residuals.iter().all(Residual::is_zero),
        residuals,
        full_jacobi: None,
    })
}

/// The graded components of Jacobi for μ₀ + tφ₁ + t²φ₂, labelled EQ2–EQ5
/// after μ₀∘μ₀.
pub fn verify_full_system(t: &TwoCompatible) -> Result<SystemReport> {
    let residuals = vec![
        Residual {
            name: "mu.mu",
            value: comp_product(&t.mu0, &t.mu0)?,
        },
        Residual {
            name: "EQ2",
            value: coboundary2(&t.mu0, &t.phi1)?,
        },
        Residual {
            name: "EQ3",
            value: sum3(
                comp_product(&t.phi1, &t.phi1)?,
                coboundary2(&t.mu0, &t.phi2)?,
            ),
        },
        Residual {
            name: "EQ4",
            value: coboundary2(&t.phi1, &t.phi2)?,
        },
        Residual {
            name: "EQ5",
            value: comp_product(&t.phi2, &t.phi2)?,
        },
    ];
    let full = check_jacobi(&t.full_bracket()).ok;
    Ok(SystemReport {
        ok: full && residuals.iter().all(Residual::is_zero),
        residuals,
        full_jacobi: Some(full),
    })
}

/// A contact algebra split along a Darboux basis.
#[derive(Debug, Clone)]
pub struct ContactDecomposition {
    pub p: usize,
    pub base: TwoCompatible,
    /// f on V₂ = span(e₂, …, e_{2p+1}); local index a stands for e_{a+1}.
    pub f: Endo,
    pub f_s: Option<Endo>,
    pub f_n: Option<Endo>,
    /// Eigenvalues with algebraic multiplicity, when known exactly.
    pub spectrum: Option<Vec<(Scalar, usize)>>,
}

impl ContactDecomposition {
    pub fn reassemble(&self) -> Cochain2 {
        self.base.full_bracket()
    }

    pub fn f_hat(&self) -> Endo {
        f_hat(&self.f)
    }
}

/// Extends f on V₂ to V by f̂(e₁) = 0.
pub fn f_hat(f: &Endo) -> Endo {
    let n = f.dim() + 1;
    let mut out = Endo::zero(n, f.ctx());
    for a in 1..n {
        for b in 1..n {
            out.set(a + 1, b + 1, f.get(a, b).clone());
        }
    }
    out
}

fn is_triangular(f: &Endo) -> bool {
    let n = f.dim();
    let upper = (1..=n).all(|i| (1..i).all(|j| f.get(i, j).is_zero()));
    let lower = (1..=n).all(|i| (i + 1..=n).all(|j| f.get(i, j).is_zero()));
    upper || lower
}

fn group_eigenvalues(vals: Vec<Scalar>) -> Vec<(Scalar, usize)> {
    let mut out: Vec<(Scalar, usize)> = Vec::new();
    for v in vals {
        match out.iter_mut().find(|(x, _)| *x == v) {
            Some(e) => e.1 += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

/// Eigenvalues of f: the diagonal of a triangular matrix, or the rational
/// roots of a numeric characteristic polynomial that splits over ℚ.
pub fn spectrum(f: &Endo) -> Option<Vec<(Scalar, usize)>> {
    if is_triangular(f) {
        return Some(group_eigenvalues(
            (1..=f.dim()).map(|i| f.get(i, i).clone()).collect(),
        ));
    }
    let q = f.to_qmatrix().ok()?;
    let cp = charpoly(&q);
    if !cp.splits() {
        return None;
    }
    Some(
        cp.rational_roots()
            .into_iter()
            .map(|(r, m)| (Scalar::constant(f.ctx(), r), m))
            .collect(),
    )
}

/// Splits a contact algebra given in a Darboux basis with contact form ω₁.
pub fn decompose_contact(
    g: &LieAlgebra,
    darboux_first_index: usize,
) -> Result<ContactDecomposition> {
    if darboux_first_index != 1 || !is_darboux(g, 1) {
        return Err(Error::NotDarboux(darboux_first_index));
    }
    let n = g.dim();
    let p = (n - 1) / 2;
    let ctx = g.ctx();
    let mu0 = make_heisenberg(p, ctx).bracket().clone();
    let mut phi1 = Cochain2::new(n, ctx);
    let mut phi2 = Cochain2::new(n, ctx);
    let mut f = Endo::zero(2 * p, ctx);
    for ((i, j), k, s) in g.bracket().entries() {
        if i == 1 {
            phi2.set(i, j, k, s.clone());
            f.set(k - 1, j - 1, s.clone());
        } else if k != 1 {
            phi1.set(i, j, k, s.clone());
        }
    }
    let (f_s, f_n) = match jordan_chevalley(&f) {
        Ok((s, n)) => (Some(s), Some(n)),
        Err(_) if f.is_zero() => (Some(f.clone()), Some(f.clone())),
        Err(_) => {
            // a diagonal f is already semisimple
            let diag = (1..=2 * p).all(|i| (1..=2 * p).all(|j| i == j || f.get(i, j).is_zero()));
            if diag {
                (Some(f.clone()), Some(Endo::zero(2 * p, ctx)))
            } else {
                (None, None)
            }
        }
    };
    let spectrum = spectrum(&f);
    Ok(ContactDecomposition {
        p,
        base: TwoCompatible { mu0, phi1, phi2 },
        f,
        f_s,
        f_n,
        spectrum,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMembership {
    pub ok: bool,
    pub theta_condition: bool,
    pub block_condition: bool,
}

/// ᵗFΘ + ΘF = 0, cross-checked against the block conditions.
pub fn check_f_membership(f: &Endo, p: usize) -> Result<FMembership> {
    if f.dim() % 2 == 1 {
        return Err(Error::Invalid(format!(
            "f must have even size, got {}",
            f.dim()
        )));
    }
    let theta_condition = rp::is_in_rp(f, p)?;
    let block_condition = rp::block_test(f, p)?;
    Ok(FMembership {
        ok: theta_condition && block_condition,
        theta_condition,
        block_condition,
    })
}

/// f = f_s + f_n over ℚ by Newton iteration on the squarefree part of the
/// characteristic polynomial.
pub fn jordan_chevalley_q(a: &QMatrix) -> (QMatrix, QMatrix) {
    let q = charpoly(a).squarefree_part();
    let (_, u, _) = q.derivative().ext_gcd(&q);
    let mut x = a.clone();
    for _ in 0..64 {
        let qx = q.eval_matrix(&x);
        if qx.is_zero() {
            break;
        }
        x = x.sub(&qx.mul(&u.eval_matrix(&x)));
    }
    debug_assert!(q.eval_matrix(&x).is_zero());
    let n = a.sub(&x);
    (x, n)
}

pub fn jordan_chevalley(f: &Endo) -> Result<(Endo, Endo)> {
    let q = f.to_qmatrix()?;
    let (s, n) = jordan_chevalley_q(&q);
    Ok((
        Endo::from_qmatrix(f.ctx(), &s),
        Endo::from_qmatrix(f.ctx(), &n),
    ))
}

/// The minimal polynomial of a rational matrix.
pub fn minimal_polynomial(a: &QMatrix) -> UPoly {
    let n = a.rows;
    let mut powers = vec![QMatrix::identity(n)];
    loop {
        let k = powers.len();
        let cols: Vec<Vec<Rational>> = powers
            .iter()
            .map(|m| (0..n).flat_map(|i| m.row(i).to_vec()).collect())
            .collect();
        let mut sys = QMatrix::zeros(n * n, k);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                sys[(i, j)] = x.clone();
            }
        }
        let ker = sys.kernel();
        if let Some(v) = ker.first() {
            return UPoly::new(v.clone()).monic();
        }
        powers.push(powers.last().unwrap().mul(a));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationReport {
    pub f: bool,
    pub f_s: Option<bool>,
    pub f_n: Option<bool>,
    /// f̂ ∈ Der(μ₀).
    pub f_hat_mu0: bool,
}

impl DerivationReport {
    pub fn ok(&self) -> bool {
        self.f && self.f_s != Some(false) && self.f_n != Some(false) && self.f_hat_mu0
    }
}

pub fn check_derivation_of_phi1(d: &ContactDecomposition) -> Result<DerivationReport> {
    let phi1 = &d.base.phi1;
    let der = |e: &Endo| -> Result<bool> { Ok(coboundary1(phi1, &f_hat(e))?.is_zero()) };
    Ok(DerivationReport {
        f: der(&d.f)?,
        f_s: d.f_s.as_ref().map(der).transpose()?,
        f_n: d.f_n.as_ref().map(der).transpose()?,
        f_hat_mu0: coboundary1(&d.base.mu0, &d.f_hat())?.is_zero(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularReport {
    pub p: usize,
    pub det: Scalar,
    pub singular: bool,
    pub rank_f: Option<usize>,
    pub rank_fs: Option<usize>,
    pub ok: bool,
}

fn generic_diag_rank(f: &Endo) -> Option<usize> {
    let n = f.dim();
    let diag = (1..=n).all(|i| (1..=n).all(|j| i == j || f.get(i, j).is_zero()));
    diag.then(|| (1..=n).filter(|&i| !f.get(i, i).is_zero()).count())
}

/// det f = 0 and rk f_s ≤ 2p − 2 when p ≥ 2. Parametric f reports the
/// determinant polynomial; ranks are then generic ranks of a diagonal f.
pub fn check_f_singular(d: &ContactDecomposition) -> SingularReport {
    let det = d.f.det();
    let singular = det.is_zero();
    let (rank_f, rank_fs) = match d.f.to_qmatrix() {
        Ok(q) => (
            Some(q.rank()),
            d.f_s
                .as_ref()
                .and_then(|s| s.to_qmatrix().ok())
                .map(|s| s.rank()),
        ),
        Err(_) => (generic_diag_rank(&d.f), generic_diag_rank(&d.f)),
    };
    let bound = (2 * d.p).saturating_sub(2);
    let ok = d.p < 2 || (singular && rank_fs.is_none_or(|r| r <= bound));
    SingularReport {
        p: d.p,
        det,
        singular,
        rank_f,
        rank_fs,
        ok,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootData {
    /// Nonzero eigenvalues in spectrum order.
    pub eigenvalues: Vec<Scalar>,
    /// One representative λ of each (λ, −λ) pair.
    pub pairs: Vec<Scalar>,
    /// (i, j, k) with λ_i + λ_j = λ_k, indices into `eigenvalues`, i ≤ j.
    pub relations: Vec<(usize, usize, usize)>,
    pub rank: usize,
}

/// Root data of a spectrum under the standing hypothesis: nonzero
/// eigenvalues simple, 0 of multiplicity 2.
pub fn root_data(spec: &[(Scalar, usize)]) -> Result<RootData> {
    let zero_mult: usize = spec
        .iter()
        .filter(|(l, _)| l.is_zero())
        .map(|(_, m)| m)
        .sum();
    if zero_mult != 2 {
        return Err(Error::Hypothesis(format!(
            "0 must be an eigenvalue of multiplicity 2, found {zero_mult}"
        )));
    }
    if let Some((l, _)) = spec.iter().find(|(l, m)| !l.is_zero() && *m > 1) {
        return Err(Error::Hypothesis(format!(
            "non-zero eigenvalues must be simple; {l} is repeated"
        )));
    }
    let eigenvalues: Vec<Scalar> = spec
        .iter()
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, _)| l.clone())
        .collect();
    let mut pair_of = vec![usize::MAX; eigenvalues.len()];
    let mut sign = vec![1i64; eigenvalues.len()];
    let mut pairs = Vec::new();
    for i in 0..eigenvalues.len() {
        if pair_of[i] != usize::MAX {
            continue;
        }
        let neg = -&eigenvalues[i];
        let j = eigenvalues.iter().position(|x| *x == neg).ok_or_else(|| {
            Error::Hypothesis(format!("eigenvalue {} has no opposite", eigenvalues[i]))
        })?;
        pair_of[i] = pairs.len();
        pair_of[j] = pairs.len();
        sign[j] = -1;
        pairs.push(eigenvalues[i].clone());
    }
    let mut relations = Vec::new();
    let mut rows = Vec::new();
    for i in 0..eigenvalues.len() {
        for j in i..eigenvalues.len() {
            let s = &eigenvalues[i] + &eigenvalues[j];
            for (k, l) in eigenvalues.iter().enumerate() {
                if *l == s {
                    relations.push((i, j, k));
                    let mut row = vec![Rational::zero(); pairs.len()];
                    row[pair_of[i]] += Rational::from_integer(sign[i].into());
                    row[pair_of[j]] += Rational::from_integer(sign[j].into());
                    row[pair_of[k]] -= Rational::from_integer(sign[k].into());
                    rows.push(row);
                }
            }
        }
    }
    let rel_rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(rows).rank()
    };
    Ok(RootData {
        rank: pairs.len() - rel_rank,
        eigenvalues,
        pairs,
        relations,
    })
}

pub fn compute_rank(d: &ContactDecomposition) -> Result<RootData> {
    let spec = d
        .spectrum
        .as_ref()
        .ok_or_else(|| Error::Parametrized("spectrum of f is not known exactly".into()))?;
    root_data(spec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub ok: bool,
    pub failures: Vec<((usize, usize, usize, usize), Vector)>,
}

/// −J(x,y,φ₁(z,v)) + φ₁(J(x,y,z),v) − φ₁(J(x,y,v),z) = 0 with J = φ₁∘φ₁, on
/// basis vectors of V₂. This is a diagnostic: it does not follow from the
/// axioms in general.
pub fn check_phi1_degree3_identity(d: &ContactDecomposition) -> Result<IdentityReport> {
    let phi = &d.base.phi1;
    let n = phi.dim();
    let ctx = phi.ctx();
    let j = comp_product(phi, phi)?;
    let mut failures = Vec::new();
    if !j.is_zero() {
        let e = |i: usize| Vector::basis(n, i, ctx);
        for x in 2..=n {
            for y in x + 1..=n {
                let jz: Vec<Vector> = (1..=n).map(|z| j.eval_basis(x, y, z)).collect();
                for z in 2..=n {
                    for v in z + 1..=n {
                        let a = j.eval(&e(x), &e(y), &phi.eval_basis(z, v));
                        let b = phi.eval(&jz[z - 1], &e(v));
                        let c = phi.eval(&jz[v - 1], &e(z));
                        let r = b.sub(&a).sub(&c);
                        if !r.is_zero() {
                            failures.push(((x, y, z, v), r));
                        }
                    }
                }
            }
        }
    }
    Ok(IdentityReport {
        ok: failures.is_empty(),
        failures,
    })
}

/// Finds g with δ_μ g = target, solving over ℚ (related parameters by
/// restriction of scalars).
pub fn solve_coboundary1_membership(mu: &Cochain2, target: &Cochain2) -> Result<Option<Endo>> {
    let n = mu.dim();
    let res = Restriction::for_scalars(mu.ctx(), mu.scalars().chain(target.scalars()))
        .map_err(|_| Error::ParameterDependentSolvability)?;
    // unknown g_ab (coefficient of e_a in g(e_b)) at column (a-1)*n + (b-1)
    let nvars = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    let zero = Scalar::zero(mu.ctx());
    for i in 1..=n {
        for j in i + 1..=n {
            let mij = mu.eval_basis(i, j);
            for k in 1..=n {
                let mut row = vec![zero.clone(); nvars];
                for a in 1..=n {
                    let c1 = mu.get(a, j, k);
                    if !c1.is_zero() {
                        row[(a - 1) * n + (i - 1)] += &c1;
                    }
                    let c2 = mu.get(i, a, k);
                    if !c2.is_zero() {
                        row[(a - 1) * n + (j - 1)] += &c2;
                    }
                    let c3 = mij.coeff(a);
                    if !c3.is_zero() {
                        row[(k - 1) * n + (a - 1)] -= c3;
                    }
                }
                rows.push(row);
                rhs.push(target.get(i, j, k));
            }
        }
    }
    let m = res.expand(&rows);
    let b = res.expand_vector(&rhs);
    Ok(m.solve(&b).map(|x| {
        let vals = res.collapse_vector(&x);
        let mut g = Endo::zero(n, mu.ctx());
        for a in 1..=n {
            for b in 1..=n {
                g.set(a, b, vals[(a - 1) * n + (b - 1)].clone());
            }
        }
        g
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModuloReport {
    /// δ_{μ₀}φ₁ = 0.
    pub cocycle: bool,
    /// Whether φ₁ ∈ B²(μ₀, μ₀); reported, not asserted.
    pub phi1_is_coboundary: bool,
    /// φ₁∘φ₁ ∈ B³(μ₀, μ₀).
    pub square_is_coboundary: bool,
    pub witness: Option<Cochain2>,
}

pub fn check_lie_modulo(d: &ContactDecomposition) -> Result<LieModuloReport> {
    let t = &d.base;
    let cocycle = coboundary2(&t.mu0, &t.phi1)?.is_zero();
    let phi1_is_coboundary = solve_coboundary1_membership(&t.mu0, &t.phi1)?.is_some();
    let witness = solve_coboundary_membership(&t.mu0, &comp_product(&t.phi1, &t.phi1)?)?;
    Ok(LieModuloReport {
        cocycle,
        phi1_is_coboundary,
        square_is_coboundary: witness.is_some(),
        witness,
    })
}

/// Outcome of the search for φ₁ completing (μ₀, ·, φ₂) to a 2-compatible
/// structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phi1Search {
    Found(Cochain2),
    /// Some component of φ₁∘φ₁ + δ_{μ₀}φ₂ is a nonzero constant for every
    /// φ₁ in Z²(μ₀) ∩ Z²(φ₂).
    Infeasible {
        cocycle_dim: usize,
        triple: (usize, usize, usize),
        component: usize,
        value: Rational,
    },
    Undecided {
        cocycle_dim: usize,
    },
}

/// Solves the linear conditions δ_{μ₀}φ₁ = δ_{φ₂}φ₁ = 0 exactly, then
/// inspects the quadratic condition on the generic common cocycle.
pub fn search_phi1(mu0: &Cochain2, phi2: &Cochain2) -> Result<Phi1Search> {
    let n = mu0.dim();
    let all: Vec<Unknown> = crate::multilinear::all_unknowns(n);
    let basis = coboundary_kernel(&[mu0, phi2], &all)?;
    let names: Vec<String> = (1..=basis.len()).map(|i| format!("t{i}")).collect();
    let ctx = mu0.ctx().extend(&names)?;
    let mut generic = Cochain2::new(n, &ctx);
    for (b, name) in basis.iter().zip(&names) {
        let t = Scalar::param(&ctx, name)?;
        generic = generic.add(&b.transfer(&ctx)?.scale(&t));
    }
    let mu0x = mu0.transfer(&ctx)?;
    let phi2x = phi2.transfer(&ctx)?;
    let residual = comp_product(&generic, &generic)?.add(&coboundary2(&mu0x, &phi2x)?);
    if coboundary2(mu0, phi2)?.is_zero() {
        return Ok(Phi1Search::Found(Cochain2::new(n, mu0.ctx())));
    }
    for (triple, v) in residual.nonzero() {
        for (k, s) in v.support() {
            if s.is_constant() {
                return Ok(Phi1Search::Infeasible {
                    cocycle_dim: basis.len(),
                    triple,
                    component: k,
                    value: s.to_rational().unwrap(),
                });
            }
        }
    }
    Ok(Phi1Search::Undecided {
        cocycle_dim: basis.len(),
    })
}

/// Dimension of the kernel of δ_{μ₀} (Heisenberg ℋ_{2p+1}) on cochains
/// supported on pairs (e₁, e_i) with values in V₂.
pub fn phi2_rigidity_kernel(p: usize, ctx: &Ctx) -> Result<usize> {
    let n = 2 * p + 1;
    let mu0 = make_heisenberg(p, ctx).bracket().clone();
    let unknowns: Vec<Unknown> = (2..=n)
        .flat_map(|i| (2..=n).map(move |k| (1, i, k)))
        .collect();
    Ok(coboundary_kernel(&[&mu0], &unknowns)?.len())
}

/// χ_f(−x) = ±χ_f(x), i.e. the spectrum is symmetric under negation.
pub fn spectrum_symmetric(f: &Endo) -> bool {
    let n = f.dim();
    f.charpoly()
        .iter()
        .enumerate()
        .all(|(k, c)| k % 2 == n % 2 || c.is_zero())
}

/// ker f̂ (which contains e₁) is a subalgebra of g.
pub fn kernel_closure(g: &LieAlgebra, d: &ContactDecomposition) -> Result<bool> {
    let fh = d.f_hat().to_qmatrix()?;
    let ker = Subspace::from_rationals(g.dim(), fh.kernel());
    is_subalgebra(g, &ker, &[])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralReport {
    pub ok: bool,
    pub pairs_checked: usize,
    pub failures: Vec<(Rational, Rational)>,
}

/// φ₁(C_a, C_b) ⊆ C_{a+b} for generalized eigenspaces of f̂, zero when a+b
/// is not an eigenvalue. Needs a numeric f whose spectrum is rational.
pub fn spectral_support(d: &ContactDecomposition) -> Result<SpectralReport> {
    let fh = d.f_hat().to_qmatrix()?;
    let n = fh.rows;
    // f̂ has the spectrum of f plus the eigenvalue 0 on e₁
    let known: Option<Vec<Rational>> = d
        .spectrum
        .as_ref()
        .and_then(|s| s.iter().map(|(l, _)| l.to_rational()).collect());
    let mut roots = match known {
        Some(r) => r,
        None => {
            let cp = charpoly(&fh);
            if !cp.splits() {
                return Err(Error::Invalid(
                    "characteristic polynomial of f does not split over Q".into(),
                ));
            }
            cp.rational_roots().into_iter().map(|(r, _)| r).collect()
        }
    };
    if !roots.iter().any(|r| r.is_zero()) {
        roots.push(Rational::zero());
    }
    let spaces: Vec<Subspace> = roots
        .iter()
        .map(|r| {
            let shifted = fh.sub(&QMatrix::identity(n).scale(r)).pow(n as u32);
            Subspace::from_rationals(n, shifted.kernel())
        })
        .collect();
    let ctx = d.f.ctx();
    let phi = &d.base.phi1;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (a, ca) in roots.iter().zip(&spaces) {
        for (b, cb) in roots.iter().zip(&spaces) {
            pairs += 1;
            let target = roots
                .iter()
                .position(|r| *r == a + b)
                .map(|k| spaces[k].clone())
                .unwrap_or_else(|| Subspace::zero(n));
            let mut ok = true;
            for x in ca.basis_vectors(ctx) {
                for y in cb.basis_vectors(ctx) {
                    if !target.contains(&phi.eval(&x, &y))? {
                        ok = false;
                    }
                }
            }
            if !ok {
                failures.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(SpectralReport {
        ok: failures.is_empty(),
        pairs_checked: pairs,
        failures,
    })
}

/// (μ₀, φ, 0) with μ₀ the brackets involving e_x and φ the rest.
pub fn characteristic_split(g: &LieAlgebra, x: usize) -> TwoCompatible {
    let (mu0, phi) = crate::liealg::split_along(g, x);
    let zero = Cochain2::new(g.dim(), g.ctx());
    TwoCompatible {
        mu0,
        phi1: phi,
        phi2: zero,
    }
}

/// True when the squarefree part of χ annihilates `s` and `n` is nilpotent,
/// `s + n = a` and they commute.
pub fn jc_postconditions(a: &QMatrix, s: &QMatrix, n: &QMatrix) -> bool {
    let q = charpoly(a).squarefree_part();
    let dim = a.rows;
    s.add(n) == *a
        && s.mul(n) == n.mul(s)
        && q.eval_matrix(s).is_zero()
        && n.pow(dim as u32).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{bracket_from_equations, parse_two_form};
    use crate::scalar::{parse_scalar, ScalarContext};

    fn from_rows(dim: usize, ctx: &Ctx, rows: &[(usize, &str)]) -> LieAlgebra {
        let rows: Vec<_> = rows
            .iter()
            .map(|(k, t)| (*k, parse_two_form(t, dim, ctx).unwrap()))
            .collect();
        LieAlgebra::unchecked(bracket_from_equations(dim, ctx, &rows).unwrap())
    }

    fn so3_r2() -> LieAlgebra {
        let ctx = ScalarContext::empty();
        from_rows(
            5,
            &ctx,
            &[
                (1, "w2^w3 + w4^w5"),
                (2, "w1^w2 + w2^w4"),
                (3, "-w1^w3 - w3^w4"),
                (4, "w4^w5"),
            ],
        )
    }

    #[test]
    fn so3_r2_decomposition() {
        let g = so3_r2();
        let d = decompose_contact(&g, 1).unwrap();
        let ctx = g.ctx();
        let expected = Endo::from_i64(
            ctx,
            &[vec![1, 0, 0, 0], vec![0, -1, 0, 0], vec![0; 4], vec![0; 4]],
        );
        assert_eq!(d.f, expected);
        assert!(verify_full_system(&d.base).unwrap().ok);
        assert_eq!(d.reassemble(), *g.bracket());
        let s = check_f_singular(&d);
        assert!(s.singular && s.ok);
        assert_eq!(s.rank_f, Some(2));
        assert!(check_f_membership(&d.f, 2).unwrap().ok);
        assert!(check_derivation_of_phi1(&d).unwrap().ok());
        assert!(kernel_closure(&g, &d).unwrap());
        assert!(spectral_support(&d).unwrap().ok);
        assert!(spectrum_symmetric(&d.f));
    }

    #[test]
    fn degree3_identity_as_printed() {
        let ctx = ScalarContext::empty();
        let h = decompose_contact(&make_heisenberg(2, &ctx), 1).unwrap();
        assert!(check_phi1_degree3_identity(&h).unwrap().ok);
        let lie = from_rows(5, &ctx, &[(1, "w2^w3 + w4^w5"), (4, "w2^w3")]);
        let d = decompose_contact(&lie, 1).unwrap();
        assert!(check_jacobi(&d.base.phi1).ok);
        assert!(check_phi1_degree3_identity(&d).unwrap().ok);
        // J(e2,e4,e5) = -e2 and the third term gives e2 on (e2,e4,e4,e5)
        let d = decompose_contact(&so3_r2(), 1).unwrap();
        let r = check_phi1_degree3_identity(&d).unwrap();
        let hit = r.failures.iter().find(|(t, _)| *t == (2, 4, 4, 5)).unwrap();
        assert_eq!(hit.1, Vector::basis(5, 2, &ctx));
    }

    #[test]
    fn non_darboux_is_refused() {
        let ctx = ScalarContext::empty();
        let g = make_heisenberg(1, &ctx);
        assert!(matches!(
            decompose_contact(&g, 2),
            Err(Error::NotDarboux(2))
        ));
    }

    #[test]
    fn dimension_three_matrix_condition() {
        let names = ["c232", "c233", "c122", "c123", "c132"];
        let ctx = ScalarContext::new(&names).unwrap();
        let g = from_rows(
            3,
            &ctx,
            &[
                (1, "w2^w3"),
                (2, "c232*w2^w3 + c122*w1^w2 + c132*w1^w3"),
                (3, "c233*w2^w3 + c123*w1^w2 - c122*w1^w3"),
            ],
        );
        let d = decompose_contact(&g, 1).unwrap();
        let r = verify_full_system(&d.base).unwrap();
        assert!(r.residual("EQ2").unwrap().is_zero());
        assert!(r.residual("EQ3").unwrap().is_zero());
        assert!(r.residual("EQ5").unwrap().is_zero());
        let eq4 = r.residual("EQ4").unwrap().eval_basis(1, 2, 3);
        let s = |t: &str| parse_scalar(t, &ctx).unwrap();
        assert_eq!(eq4.coeff(2), &-s("c122*c232 + c132*c233"));
        assert_eq!(eq4.coeff(3), &-s("c123*c232 - c122*c233"));
    }

    #[test]
    fn jordan_chevalley_examples() {
        let ctx = ScalarContext::empty();
        let (s, n) = jordan_chevalley(&Endo::from_i64(&ctx, &[vec![1, 1], vec![0, 1]])).unwrap();
        assert_eq!(s, Endo::identity(2, &ctx));
        assert_eq!(n, Endo::from_i64(&ctx, &[vec![0, 1], vec![0, 0]]));
        let diag = Endo::from_i64(&ctx, &[vec![2, 0], vec![0, -3]]);
        assert_eq!(
            jordan_chevalley(&diag).unwrap(),
            (diag.clone(), Endo::zero(2, &ctx))
        );
        let nil = Endo::from_i64(&ctx, &[vec![0, 1, 2], vec![0, 0, 3], vec![0, 0, 0]]);
        assert_eq!(
            jordan_chevalley(&nil).unwrap(),
            (Endo::zero(3, &ctx), nil.clone())
        );
        // irreducible quadratic factor: x^2 + 1 squared
        let a = QMatrix::from_i64(&[
            vec![0, -1, 1, 0],
            vec![1, 0, 0, 1],
            vec![0, 0, 0, -1],
            vec![0, 0, 1, 0],
        ]);
        let (s, n) = jordan_chevalley_q(&a);
        assert!(jc_postconditions(&a, &s, &n));
        assert!(!n.is_zero());
    }

    #[test]
    fn root_data_examples() {
        let ctx = ScalarContext::new(&["l4", "l6"]).unwrap();
        let s = |t: &str| parse_scalar(t, &ctx).unwrap();
        let spec = |v: &[&str]| group_eigenvalues(v.iter().map(|t| s(t)).collect());
        let r = root_data(&spec(&["0", "0", "l4", "-l4", "l6", "-l6"])).unwrap();
        assert_eq!((r.rank, r.relations.len()), (2, 0));
        let r = root_data(&spec(&[
            "0", "0", "l4", "-l4", "l6", "-l6", "l4+l6", "-l4-l6",
        ]))
        .unwrap();
        assert_eq!(r.rank, 2);
        assert!(!r.relations.is_empty());
        assert!(matches!(
            root_data(&spec(&["0", "0", "0", "0"])),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            root_data(&spec(&["0", "0", "l4", "l4"])),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn rigidity_of_phi2() {
        let ctx = ScalarContext::empty();
        for p in 2..=3 {
            assert_eq!(phi2_rigidity_kernel(p, &ctx).unwrap(), 0);
        }
        assert!(phi2_rigidity_kernel(1, &ctx).unwrap() > 0);
    }

    #[test]
    fn non_compatible_pair_has_no_phi1() {
        let ctx = ScalarContext::empty();
        let mut mu0 = Cochain2::new(3, &ctx);
        mu0.set(1, 2, 1, Scalar::one(&ctx));
        let mut phi = Cochain2::new(3, &ctx);
        phi.set(1, 2, 3, Scalar::one(&ctx));
        phi.set(1, 3, 1, -Scalar::one(&ctx));
        phi.set(2, 3, 2, Scalar::one(&ctx));
        let r = search_phi1(&mu0, &phi).unwrap();
        assert!(matches!(r, Phi1Search::Infeasible { .. }), "{r:?}");
    }

    #[test]
    fn characteristic_split_of_filiform() {
        let ctx = ScalarContext::empty();
        let g = from_rows(5, &ctx, &[(3, "w1^w2"), (4, "w1^w3"), (5, "w1^w4 + w2^w3")]);
        assert!(check_jacobi(g.bracket()).ok);
        let t = characteristic_split(&g, 1);
        assert!(verify_axioms(&t).unwrap().ok);
        assert!(check_jacobi(&t.phi1).ok);
    }

    #[test]
    fn lie_modulo_on_numeric_family() {
        let ctx = ScalarContext::empty();
        let g = from_rows(
            5,
            &ctx,
            &[
                (1, "w2^w3 + w4^w5"),
                (2, "w2^w3"),
                (4, "w1^w4 - w2^w4 + 2*w3^w4"),
                (5, "-w1^w5 + w2^w5 - 2*w3^w5"),
            ],
        );
        assert!(check_jacobi(g.bracket()).ok);
        let d = decompose_contact(&g, 1).unwrap();
        let r = check_lie_modulo(&d).unwrap();
        assert!(r.cocycle && r.square_is_coboundary);
        let w = r.witness.unwrap();
        assert_eq!(
            coboundary2(&d.base.mu0, &w).unwrap(),
            comp_product(&d.base.phi1, &d.base.phi1).unwrap()
        );
    }
}
