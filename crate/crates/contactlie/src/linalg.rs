//! Exact linear algebra over ℚ, and restriction of scalars from
//! ℚ[related params]/(relations) down to ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Ctx, Monomial, Rational, Scalar};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &QMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = Rational::one() / &self[(r, c)];
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pv = m[(c, c)].clone();
            det *= &pv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental sparse Gaussian elimination for `A x = b`, one equation at a time.
#[derive(Debug, Default)]
pub struct SparseSystem {
    nvars: usize,
    // pivot column -> (row with leading 1 at that column, rhs)
    pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(nvars: usize) -> Self {
        SparseSystem {
            nvars,
            ..Default::default()
        }
    }

    pub fn add_equation(&mut self, mut row: BTreeMap<usize, Rational>, mut rhs: Rational) {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                return;
            };
            match self.pivots.get(&lead) {
                Some((prow, prhs)) => {
                    let f = row[&lead].clone();
                    for (c, v) in prow {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= &f * prhs;
                }
                None => {
                    let inv = Rational::one() / &row[&lead];
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    rhs *= &inv;
                    self.pivots.insert(lead, (row, rhs));
                    return;
                }
            }
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A solution with free variables set to zero.
    pub fn solution(&self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.nvars];
        for (&c, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (&j, a) in row.range(c + 1..) {
                if !x[j].is_zero() {
                    v -= a * &x[j];
                }
            }
            x[c] = v;
        }
        Some(x)
    }
}

/// Finite ℚ-basis of the subring generated by the related parameters that
/// occur in a set of scalars. Each scalar becomes a coordinate vector and a
/// multiplication matrix, so linear problems over that ring reduce to ℚ.
#[derive(Debug, Clone)]
pub struct Restriction {
    ctx: Ctx,
    basis: Vec<Monomial>,
}

impl Restriction {
    /// Fails with `Parametrized` when a scalar involves a parameter without a
    /// relation.
    pub fn for_scalars<'a, I: IntoIterator<Item = &'a Scalar>>(
        ctx: &Ctx,
        scalars: I,
    ) -> Result<Self> {
        let mut used = vec![false; ctx.len()];
        for s in scalars {
            for i in s.params_used() {
                used[i] = true;
            }
        }
        let mut basis: Vec<Monomial> = vec![vec![0; ctx.len()]];
        for (i, &u) in used.iter().enumerate() {
            if !u {
                continue;
            }
            let Some(d) = ctx.relation_degree(i) else {
                return Err(Error::Parametrized(format!(
                    "parameter `{}` is free",
                    ctx.params()[i]
                )));
            };
            let mut next = Vec::new();
            for m in &basis {
                for e in 0..d {
                    let mut m2 = m.clone();
                    m2[i] = e;
                    next.push(m2);
                }
            }
            basis = next;
        }
        basis.sort();
        Ok(Restriction {
            ctx: ctx.clone(),
            basis,
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, s: &Scalar) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (m, c) in s.terms() {
            let k = self
                .basis
                .binary_search(m)
                .expect("scalar outside restriction basis");
            v[k] = c.clone();
        }
        v
    }

    pub fn lift(&self, coords: &[Rational]) -> Scalar {
        Scalar::from_terms(
            &self.ctx,
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// Matrix of multiplication by `s`, acting on coordinate columns.
    pub fn mult_matrix(&self, s: &Scalar) -> QMatrix {
        let d = self.basis.len();
        let mut m = QMatrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let prod = s * &Scalar::from_terms(&self.ctx, [(b.clone(), Rational::one())]);
            for (i, c) in self.coords(&prod).into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Expands a matrix over the ring into a ℚ-matrix `d` times larger.
    pub fn expand(&self, rows: &[Vec<Scalar>]) -> QMatrix {
        let d = self.basis.len();
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut out = QMatrix::zeros(nr * d, nc * d);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let m = self.mult_matrix(s);
                for a in 0..d {
                    for b in 0..d {
                        out[(i * d + a, j * d + b)] = m[(a, b)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn expand_vector(&self, v: &[Scalar]) -> Vec<Rational> {
        v.iter().flat_map(|s| self.coords(s)).collect()
    }

    pub fn collapse_vector(&self, v: &[Rational]) -> Vec<Scalar> {
        v.chunks(self.basis.len()).map(|c| self.lift(c)).collect()
    }
}
