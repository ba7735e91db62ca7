//! Vectors, endomorphisms and alternating V-valued 2- and 3-cochains over a
//! fixed basis e_1..e_n. All public indices are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Restriction, SparseSystem};
use crate::scalar::{Ctx, Rational, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    ctx: Ctx,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector({self})")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("e{}", i + 1)
                } else {
                    format!("({c})*e{}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Vector {
    pub fn zero(dim: usize, ctx: &Ctx) -> Self {
        Vector {
            ctx: ctx.clone(),
            coeffs: vec![Scalar::zero(ctx); dim],
        }
    }

    pub fn basis(dim: usize, i: usize, ctx: &Ctx) -> Self {
        let mut v = Self::zero(dim, ctx);
        v.coeffs[i - 1] = Scalar::one(ctx);
        v
    }

    pub fn from_scalars(ctx: &Ctx, coeffs: Vec<Scalar>) -> Self {
        Vector {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_rationals(ctx: &Ctx, v: &[Rational]) -> Self {
        Vector {
            ctx: ctx.clone(),
            coeffs: v.iter().map(|c| Scalar::constant(ctx, c.clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Coefficient on e_i.
    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i - 1]
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        self.coeffs[i - 1] = s;
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        Vector {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, o: &Vector) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.to_rational()).collect()
    }

    /// Nonzero entries as (1-based index, coefficient).
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c))
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<Vector> {
        Ok(Vector {
            ctx: ctx.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// Square matrix; column j holds the image of e_j.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    ctx: Ctx,
    n: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo{:?}", self.rows_as_strings())
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows_as_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Endo {
    pub fn zero(n: usize, ctx: &Ctx) -> Self {
        Endo {
            ctx: ctx.clone(),
            n,
            entries: vec![Scalar::zero(ctx); n * n],
        }
    }

    pub fn identity(n: usize, ctx: &Ctx) -> Self {
        let mut e = Self::zero(n, ctx);
        for i in 1..=n {
            e.set(i, i, Scalar::one(ctx));
        }
        e
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("endomorphism matrix must be square".into()));
        }
        Ok(Endo {
            ctx: ctx.clone(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_qmatrix(ctx: &Ctx, m: &QMatrix) -> Self {
        assert_eq!(m.rows, m.cols);
        let mut e = Self::zero(m.rows, ctx);
        for i in 0..m.rows {
            for j in 0..m.cols {
                e.entries[i * m.cols + j] = Scalar::constant(ctx, m[(i, j)].clone());
            }
        }
        e
    }

    pub fn from_i64(ctx: &Ctx, rows: &[Vec<i64>]) -> Self {
        Self::from_qmatrix(ctx, &QMatrix::from_i64(rows))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Entry in row i, column j.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.entries[(i - 1) * self.n + (j - 1)] = s;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_scalars(
            &self.ctx,
            (1..=self.n).map(|i| self.get(i, j).clone()).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.n, &self.ctx);
        for (j, c) in v.support() {
            out.add_scaled(c, &self.column(j));
        }
        out
    }

    pub fn compose(&self, o: &Endo) -> Endo {
        let n = self.n;
        let mut out = Endo::zero(n, &self.ctx);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Endo) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Endo) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn commutator(&self, o: &Endo) -> Endo {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn transpose(&self) -> Endo {
        let mut t = Endo::zero(self.n, &self.ctx);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero(&self.ctx);
        for i in 1..=self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn to_qmatrix(&self) -> Result<QMatrix> {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (k, s) in self.entries.iter().enumerate() {
            m[(k / self.n, k % self.n)] = s
                .to_rational()
                .ok_or_else(|| Error::Parametrized("matrix entry is not rational".into()))?;
        }
        Ok(m)
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<Endo> {
        Ok(Endo {
            ctx: ctx.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Characteristic polynomial det(xI - A), lowest coefficient first,
    /// by the division-free Berkowitz algorithm.
    pub fn charpoly(&self) -> Vec<Scalar> {
        let n = self.n;
        let a = |i: usize, j: usize| &self.entries[i * n + j];
        // coefficients highest degree first
        let mut poly = vec![Scalar::one(&self.ctx)];
        for r in 0..n {
            let mut v = vec![Scalar::one(&self.ctx), -a(r, r)];
            // S = column r above the diagonal, R = row r left of the diagonal
            let mut w: Vec<Scalar> = (0..r).map(|i| a(i, r).clone()).collect();
            for _ in 0..r {
                let mut rs = Scalar::zero(&self.ctx);
                for (j, wj) in w.iter().enumerate() {
                    if !wj.is_zero() {
                        rs += &(a(r, j) * wj);
                    }
                }
                v.push(-rs);
                let mut next = vec![Scalar::zero(&self.ctx); r];
                for (i, ni) in next.iter_mut().enumerate() {
                    for (j, wj) in w.iter().enumerate() {
                        if !wj.is_zero() {
                            *ni += &(a(i, j) * wj);
                        }
                    }
                }
                w = next;
            }
            let mut np = vec![Scalar::zero(&self.ctx); r + 2];
            for (i, npi) in np.iter_mut().enumerate() {
                for (j, pj) in poly.iter().enumerate().take(i + 1) {
                    *npi += &(&v[i - j] * pj);
                }
            }
            poly = np;
        }
        poly.reverse();
        poly
    }

    pub fn det(&self) -> Scalar {
        let cp = self.charpoly();
        if self.n % 2 == 0 {
            cp[0].clone()
        } else {
            -&cp[0]
        }
    }
}

fn ordered(i: usize, j: usize) -> Option<(usize, usize, bool)> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => Some((i, j, false)),
        Greater => Some((j, i, true)),
        Equal => None,
    }
}

/// Alternating bilinear map V×V→V stored as c_ij^k for i < j.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain2 {
    ctx: Ctx,
    dim: usize,
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain2 {{ {self} }}")
    }
}

impl fmt::Display for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j), _) in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "(e{i},e{j}) -> {}", self.eval_basis(i, j))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Cochain2 {
    pub fn new(dim: usize, ctx: &Ctx) -> Self {
        Cochain2 {
            ctx: ctx.clone(),
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn check(&self, i: usize, j: usize, k: usize) {
        assert!(
            (1..=self.dim).contains(&i)
                && (1..=self.dim).contains(&j)
                && (1..=self.dim).contains(&k),
            "basis index out of range"
        );
    }

    /// Sets the coefficient of e_k in c(e_i, e_j); i > j stores the negation.
    pub fn set(&mut self, i: usize, j: usize, k: usize, s: Scalar) {
        self.check(i, j, k);
        let (a, b, flip) = ordered(i, j).expect("diagonal entry of an alternating map");
        let s = if flip { -s } else { s };
        let row = self.entries.entry((a, b)).or_default();
        if s.is_zero() {
            row.remove(&k);
        } else {
            row.insert(k, s);
        }
        if row.is_empty() {
            self.entries.remove(&(a, b));
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, s: &Scalar) {
        let cur = self.get(i, j, k);
        self.set(i, j, k, cur + s);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        match ordered(i, j) {
            None => Scalar::zero(&self.ctx),
            Some((a, b, flip)) => {
                let v = self
                    .entries
                    .get(&(a, b))
                    .and_then(|r| r.get(&k))
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(&self.ctx));
                if flip {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Nonzero structure constants ((i, j), k, c) with i < j.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize, &Scalar)> {
        self.entries
            .iter()
            .flat_map(|(&p, row)| row.iter().map(move |(&k, s)| (p, k, s)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn eval_basis(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zero(self.dim, &self.ctx);
        if let Some((a, b, flip)) = ordered(i, j) {
            if let Some(row) = self.entries.get(&(a, b)) {
                for (&k, s) in row {
                    v.set(k, if flip { -s } else { s.clone() });
                }
            }
        }
        v
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim, &self.ctx);
        for (&(i, j), row) in &self.entries {
            let c = x.coeff(i) * y.coeff(j) - x.coeff(j) * y.coeff(i);
            if c.is_zero() {
                continue;
            }
            for (&k, s) in row {
                let cur = out.coeff(k).clone();
                out.set(k, cur + &c * s);
            }
        }
        out
    }

    /// c(v, e_j) for a vector v.
    fn eval_vec_basis(&self, v: &Vector, j: usize) -> Vector {
        let mut out = Vector::zero(self.dim, &self.ctx);
        for (i, c) in v.support() {
            if i != j {
                out.add_scaled(c, &self.eval_basis(i, j));
            }
        }
        out
    }

    pub fn add(&self, o: &Cochain2) -> Cochain2 {
        let mut out = self.clone();
        for ((i, j), k, s) in o.entries() {
            out.add_to(i, j, k, s);
        }
        out
    }

    pub fn sub(&self, o: &Cochain2) -> Cochain2 {
        self.add(&o.scale(&-Scalar::one(&self.ctx)))
    }

    pub fn scale(&self, s: &Scalar) -> Cochain2 {
        let mut out = Cochain2::new(self.dim, &self.ctx);
        for ((i, j), k, c) in self.entries() {
            out.set(i, j, k, c * s);
        }
        out
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<Cochain2> {
        let mut out = Cochain2::new(self.dim, ctx);
        for ((i, j), k, c) in self.entries() {
            out.set(i, j, k, f(c)?);
        }
        Ok(out)
    }

    pub fn transfer(&self, ctx: &Ctx) -> Result<Cochain2> {
        self.map(ctx, |s| s.transfer(ctx))
    }

    pub fn scalars(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.values().flat_map(|r| r.values())
    }
}

/// Alternating trilinear map stored on sorted triples i < j < k.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain3 {
    ctx: Ctx,
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), BTreeMap<usize, Scalar>>,
}

impl fmt::Debug for Cochain3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain3 {{ {self} }}")
    }
}

impl fmt::Display for Cochain3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, j, k) in self.entries.keys() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "(e{i},e{j},e{k}) -> {}", self.eval_basis(i, j, k))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn sort3(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), bool)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut odd = false;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                odd = !odd;
            }
        }
    }
    Some(((v[0], v[1], v[2]), odd))
}

impl Cochain3 {
    pub fn new(dim: usize, ctx: &Ctx) -> Self {
        Cochain3 {
            ctx: ctx.clone(),
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, s: Scalar) {
        let (key, odd) = sort3(i, j, k).expect("repeated index in alternating map");
        let s = if odd { -s } else { s };
        let row = self.entries.entry(key).or_default();
        if s.is_zero() {
            row.remove(&l);
        } else {
            row.insert(l, s);
        }
        if row.is_empty() {
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        self.eval_basis(i, j, k).coeff(l).clone()
    }

    pub fn eval_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut v = Vector::zero(self.dim, &self.ctx);
        if let Some((key, odd)) = sort3(i, j, k) {
            if let Some(row) = self.entries.get(&key) {
                for (&l, s) in row {
                    v.set(l, if odd { -s } else { s.clone() });
                }
            }
        }
        v
    }

    pub fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim, &self.ctx);
        for (&(i, j, k), row) in &self.entries {
            // determinant of the 3x3 minor of (x, y, z) at rows i, j, k
            let m = |v: &Vector, a: usize| v.coeff(a).clone();
            let c = m(x, i) * (m(y, j) * m(z, k) - m(y, k) * m(z, j))
                - m(x, j) * (m(y, i) * m(z, k) - m(y, k) * m(z, i))
                + m(x, k) * (m(y, i) * m(z, j) - m(y, j) * m(z, i));
            if c.is_zero() {
                continue;
            }
            for (&l, s) in row {
                let cur = out.coeff(l).clone();
                out.set(l, cur + &c * s);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero values on sorted basis triples.
    pub fn nonzero(&self) -> Vec<((usize, usize, usize), Vector)> {
        self.entries
            .keys()
            .map(|&(i, j, k)| ((i, j, k), self.eval_basis(i, j, k)))
            .collect()
    }

    pub fn add(&self, o: &Cochain3) -> Cochain3 {
        let mut out = self.clone();
        for (&(i, j, k), row) in &o.entries {
            for (&l, s) in row {
                let cur = out.get(i, j, k, l);
                out.set(i, j, k, l, cur + s);
            }
        }
        out
    }

    pub fn neg(&self) -> Cochain3 {
        let mut out = self.clone();
        for row in out.entries.values_mut() {
            for s in row.values_mut() {
                *s = -&*s;
            }
        }
        out
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<Cochain3> {
        let mut out = Cochain3::new(self.dim, ctx);
        for (&(i, j, k), row) in &self.entries {
            for (&l, s) in row {
                out.set(i, j, k, l, f(s)?);
            }
        }
        Ok(out)
    }

    pub fn scalars(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.values().flat_map(|r| r.values())
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimMismatch(a, b))
    }
}

/// φ∘ψ(a,b,c) = φ(ψ(a,b),c) + φ(ψ(b,c),a) + φ(ψ(c,a),b).
pub fn comp_product(phi: &Cochain2, psi: &Cochain2) -> Result<Cochain3> {
    check_dims(phi.dim, psi.dim)?;
    let n = phi.dim;
    let mut out = Cochain3::new(n, &phi.ctx);
    if phi.is_zero() || psi.is_zero() {
        return Ok(out);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let mut v = phi.eval_vec_basis(&psi.eval_basis(i, j), k);
                v = v.add(&phi.eval_vec_basis(&psi.eval_basis(j, k), i));
                v = v.add(&phi.eval_vec_basis(&psi.eval_basis(k, i), j));
                for (l, s) in v.support() {
                    out.set(i, j, k, l, s.clone());
                }
            }
        }
    }
    Ok(out)
}

/// δ_μ φ = μ∘φ + φ∘μ.
pub fn coboundary2(mu: &Cochain2, phi: &Cochain2) -> Result<Cochain3> {
    Ok(comp_product(mu, phi)?.add(&comp_product(phi, mu)?))
}

/// δ_μ g (x, y) = μ(gx, y) + μ(x, gy) − g(μ(x, y)); zero iff g is a derivation.
pub fn coboundary1(mu: &Cochain2, g: &Endo) -> Result<Cochain2> {
    check_dims(mu.dim, g.n)?;
    let n = mu.dim;
    let mut out = Cochain2::new(n, &mu.ctx);
    let cols: Vec<Vector> = (1..=n).map(|j| g.column(j)).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            let ei = Vector::basis(n, i, &mu.ctx);
            let ej = Vector::basis(n, j, &mu.ctx);
            let v = mu
                .eval(&cols[i - 1], &ej)
                .add(&mu.eval(&ei, &cols[j - 1]))
                .sub(&g.apply(&mu.eval_basis(i, j)));
            for (k, s) in v.support() {
                out.set(i, j, k, s.clone());
            }
        }
    }
    Ok(out)
}

/// Unknown 2-cochain coefficient X(e_i, e_j) on e_k with i < j.
pub type Unknown = (usize, usize, usize);

pub fn all_unknowns(n: usize) -> Vec<Unknown> {
    let mut u = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                u.push((i, j, k));
            }
        }
    }
    u
}

/// Rows of the linear map X ↦ δ_μ X restricted to the given unknowns. Each
/// row is keyed by (sorted triple, output index) and maps unknown positions to
/// coefficients.
fn coboundary_rows(
    mu: &Cochain2,
    unknowns: &[Unknown],
) -> BTreeMap<((usize, usize, usize), usize), BTreeMap<usize, Scalar>> {
    let n = mu.dim;
    let pos: BTreeMap<Unknown, usize> = unknowns.iter().enumerate().map(|(p, &u)| (u, p)).collect();
    let mut rows: BTreeMap<((usize, usize, usize), usize), BTreeMap<usize, Scalar>> =
        BTreeMap::new();
    let push = |rows: &mut BTreeMap<_, BTreeMap<usize, Scalar>>,
                key,
                u: Unknown,
                sign_flip: bool,
                c: Scalar| {
        if let Some(&p) = pos.get(&u) {
            let c = if sign_flip { -c } else { c };
            let row = rows.entry(key).or_default();
            let e = row.entry(p).or_insert_with(|| Scalar::zero(&mu.ctx));
            *e += &c;
        }
    };
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let cyc = [(a, b, c), (b, c, a), (c, a, b)];
                for &(x, y, z) in &cyc {
                    // μ(X(x,y), z): Σ_k X_xy^k μ(e_k, e_z)
                    let (p, q, flip) = ordered(x, y).unwrap();
                    for k in 1..=n {
                        for (l, s) in mu.eval_basis(k, z).support() {
                            push(&mut rows, ((a, b, c), l), (p, q, k), flip, s.clone());
                        }
                    }
                    // X(μ(x,y), z): Σ_m μ(x,y)_m X(e_m, e_z)
                    for (m, s) in mu.eval_basis(x, y).support() {
                        if let Some((p, q, flip)) = ordered(m, z) {
                            for l in 1..=n {
                                push(&mut rows, ((a, b, c), l), (p, q, l), flip, s.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    for row in rows.values_mut() {
        row.retain(|_, s| !s.is_zero());
    }
    rows.retain(|_, r| !r.is_empty());
    rows
}

/// Finds X with δ_μ X = target, or `None` when no 2-cochain works.
///
/// Coefficients may involve parameters carrying a relation; the system is
/// then solved over ℚ by restriction of scalars. Free parameters give
/// `ParameterDependentSolvability` unless the target is zero.
pub fn solve_coboundary_membership(mu: &Cochain2, target: &Cochain3) -> Result<Option<Cochain2>> {
    check_dims(mu.dim, target.dim)?;
    let n = mu.dim;
    if target.is_zero() {
        return Ok(Some(Cochain2::new(n, &mu.ctx)));
    }
    let res = Restriction::for_scalars(&mu.ctx, mu.scalars().chain(target.scalars()))
        .map_err(|_| Error::ParameterDependentSolvability)?;
    let d = res.degree();
    let unknowns = all_unknowns(n);
    let rows = coboundary_rows(mu, &unknowns);
    let mut sys = SparseSystem::new(unknowns.len() * d);
    let mut keys: Vec<((usize, usize, usize), usize)> = rows.keys().copied().collect();
    for (&(i, j, k), row) in &target.entries {
        for &l in row.keys() {
            keys.push(((i, j, k), l));
        }
    }
    keys.sort();
    keys.dedup();
    let empty = BTreeMap::new();
    for key in keys {
        let ((i, j, k), l) = key;
        let rhs = res.coords(&target.get(i, j, k, l));
        let row = rows.get(&key).unwrap_or(&empty);
        let mats: Vec<(usize, QMatrix)> =
            row.iter().map(|(&p, s)| (p, res.mult_matrix(s))).collect();
        for (t, r) in rhs.into_iter().enumerate() {
            let mut eq = BTreeMap::new();
            for (p, m) in &mats {
                for b in 0..d {
                    let c = &m[(t, b)];
                    if !c.is_zero() {
                        eq.insert(p * d + b, c.clone());
                    }
                }
            }
            sys.add_equation(eq, r);
        }
        if !sys.is_consistent() {
            return Ok(None);
        }
    }
    let Some(x) = sys.solution() else {
        return Ok(None);
    };
    let mut out = Cochain2::new(n, &mu.ctx);
    for (p, &(i, j, k)) in unknowns.iter().enumerate() {
        let s = res.lift(&x[p * d..(p + 1) * d]);
        if !s.is_zero() {
            out.set(i, j, k, s);
        }
    }
    Ok(Some(out))
}

/// Common kernel of δ_μ for every μ in `mus`, restricted to cochains
/// supported on the given unknowns; returns a ℚ-basis. Brackets must be
/// parameter-free.
pub fn coboundary_kernel(mus: &[&Cochain2], unknowns: &[Unknown]) -> Result<Vec<Cochain2>> {
    let Some(first) = mus.first() else {
        return Err(Error::Invalid("no bracket given".into()));
    };
    let all_rows: Vec<_> = mus.iter().map(|mu| coboundary_rows(mu, unknowns)).collect();
    let nrows: usize = all_rows.iter().map(|r| r.len()).sum();
    let mut m = QMatrix::zeros(nrows, unknowns.len());
    for (r, row) in all_rows.iter().flat_map(|rows| rows.values()).enumerate() {
        for (&p, s) in row {
            m[(r, p)] = s
                .to_rational()
                .ok_or_else(|| Error::Parametrized("bracket has parameters".into()))?;
        }
    }
    let mut out = Vec::new();
    for v in m.kernel() {
        let mut c = Cochain2::new(first.dim, &first.ctx);
        for (p, &(i, j, k)) in unknowns.iter().enumerate() {
            if !v[p].is_zero() {
                c.set(i, j, k, Scalar::constant(&first.ctx, v[p].clone()));
            }
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, ScalarContext};

    fn one(ctx: &Ctx) -> Scalar {
        Scalar::one(ctx)
    }

    fn h3(ctx: &Ctx) -> Cochain2 {
        let mut mu = Cochain2::new(3, ctx);
        mu.set(2, 3, 1, one(ctx));
        mu
    }

    fn section_pair(ctx: &Ctx) -> (Cochain2, Cochain2) {
        let mut mu0 = Cochain2::new(3, ctx);
        mu0.set(1, 2, 1, one(ctx));
        let mut phi = Cochain2::new(3, ctx);
        phi.set(1, 2, 3, one(ctx));
        phi.set(1, 3, 1, -one(ctx));
        phi.set(2, 3, 2, one(ctx));
        (mu0, phi)
    }

    #[test]
    fn heisenberg_is_jacobi() {
        let ctx = ScalarContext::empty();
        assert!(comp_product(&h3(&ctx), &h3(&ctx)).unwrap().is_zero());
    }

    #[test]
    fn non_compatible_pair_gives_minus_e1() {
        let ctx = ScalarContext::empty();
        let (mu0, phi) = section_pair(&ctx);
        let d = coboundary2(&mu0, &phi).unwrap();
        assert_eq!(
            d.eval_basis(1, 2, 3),
            Vector::basis(3, 1, &ctx).scale(&-one(&ctx))
        );
        assert_eq!(d.nonzero().len(), 1);
    }

    #[test]
    fn single_product_squares_to_zero() {
        let ctx = ScalarContext::empty();
        let mut phi = Cochain2::new(4, &ctx);
        phi.set(2, 3, 2, one(&ctx));
        assert!(comp_product(&phi, &phi)
            .unwrap()
            .eval_basis(2, 3, 4)
            .is_zero());
    }

    #[test]
    fn generic_psi_on_h3() {
        let names: Vec<String> = all_unknowns(3)
            .iter()
            .map(|(i, j, k)| format!("x{i}{j}{k}"))
            .collect();
        let ctx = ScalarContext::new(&names).unwrap();
        let mut psi = Cochain2::new(3, &ctx);
        for (i, j, k) in all_unknowns(3) {
            psi.set(
                i,
                j,
                k,
                Scalar::param(&ctx, &format!("x{i}{j}{k}")).unwrap(),
            );
        }
        let d = coboundary2(&h3(&ctx), &psi).unwrap();
        let v = d.eval_basis(1, 2, 3);
        assert_eq!(v.coeff(1), &parse_scalar("x122 + x133", &ctx).unwrap());
        assert!(v.coeff(2).is_zero() && v.coeff(3).is_zero());
    }

    #[test]
    fn identity_is_not_a_derivation_of_h3() {
        let ctx = ScalarContext::empty();
        let d = coboundary1(&h3(&ctx), &Endo::identity(3, &ctx)).unwrap();
        assert_eq!(d.eval_basis(2, 3), Vector::basis(3, 1, &ctx));
        assert!(coboundary1(&h3(&ctx), &Endo::zero(3, &ctx))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn membership_examples() {
        let ctx = ScalarContext::empty();
        let mu = h3(&ctx);
        assert!(solve_coboundary_membership(&mu, &Cochain3::new(3, &ctx))
            .unwrap()
            .unwrap()
            .is_zero());
        let mut t = Cochain3::new(3, &ctx);
        t.set(1, 2, 3, 1, one(&ctx));
        let x = solve_coboundary_membership(&mu, &t).unwrap().unwrap();
        assert_eq!(coboundary2(&mu, &x).unwrap(), t);
        let abelian = Cochain2::new(3, &ctx);
        assert!(solve_coboundary_membership(&abelian, &t).unwrap().is_none());
    }

    #[test]
    fn membership_rejects_free_parameters() {
        let ctx = ScalarContext::new(&["a"]).unwrap();
        let mu = h3(&ctx);
        let mut t = Cochain3::new(3, &ctx);
        t.set(1, 2, 3, 1, Scalar::param(&ctx, "a").unwrap());
        assert_eq!(
            solve_coboundary_membership(&mu, &t),
            Err(Error::ParameterDependentSolvability)
        );
    }

    #[test]
    fn membership_over_golden_ring() {
        let ctx = ScalarContext::builder()
            .param("f")
            .relation("f", "f^2 - f - 1")
            .build()
            .unwrap();
        let mu = h3(&ctx);
        let mut t = Cochain3::new(3, &ctx);
        t.set(1, 2, 3, 1, parse_scalar("f", &ctx).unwrap());
        let x = solve_coboundary_membership(&mu, &t).unwrap().unwrap();
        assert_eq!(coboundary2(&mu, &x).unwrap(), t);
    }

    #[test]
    fn berkowitz_matches_faddeev() {
        let ctx = ScalarContext::empty();
        let rows = vec![
            vec![2, -1, 0, 3],
            vec![1, 0, 4, 1],
            vec![0, 5, -2, 1],
            vec![3, 3, 1, 1],
        ];
        let e = Endo::from_i64(&ctx, &rows);
        let cp: Vec<Rational> = e
            .charpoly()
            .iter()
            .map(|s| s.to_rational().unwrap())
            .collect();
        let q = crate::upoly::charpoly(&QMatrix::from_i64(&rows));
        assert_eq!(cp, q.coeffs());
        assert_eq!(
            e.det().to_rational().unwrap(),
            QMatrix::from_i64(&rows).det()
        );
    }
}
