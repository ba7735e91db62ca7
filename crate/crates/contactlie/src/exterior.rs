//! Forms on the dual of a Lie algebra and the differential
//! dω_k = Σ_{i<j} C_ij^k ω_i∧ω_j, extended as an antiderivation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{QMatrix, Restriction};
use crate::multilinear::{Cochain2, Vector};
use crate::scalar::{parse_scalar, Ctx, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    ctx: Ctx,
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm({self})")
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let w: Vec<String> = idx.iter().map(|i| format!("w{i}")).collect();
            let w = w.join("^");
            let mut coef = c.to_string();
            let single = c.terms().len() == 1;
            let neg = single && coef.starts_with('-');
            if neg {
                coef.remove(0);
            }
            let text = if coef == "1" {
                w
            } else if single {
                format!("{coef}*{w}")
            } else {
                format!("({coef})*{w}")
            };
            match (n, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for a in 0..idx.len() {
        for b in 0..idx.len() - 1 - a {
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                odd = !odd;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

impl KForm {
    pub fn zero(dim: usize, degree: usize, ctx: &Ctx) -> Self {
        KForm {
            ctx: ctx.clone(),
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The dual basis form ω_i.
    pub fn omega(dim: usize, i: usize, ctx: &Ctx) -> Self {
        let mut f = Self::zero(dim, 1, ctx);
        f.add_term(&[i], Scalar::one(ctx));
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    /// Adds c·ω_{i1}∧…∧ω_{ik} for indices in any order.
    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.degree, "wrong degree");
        assert!(
            idx.iter().all(|&i| (1..=self.dim).contains(&i)),
            "form index out of range"
        );
        let mut key = idx.to_vec();
        let Some(odd) = sort_with_sign(&mut key) else {
            return;
        };
        let c = if odd { -c } else { c };
        let e = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| Scalar::zero(&self.ctx));
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, idx: &[usize]) -> Scalar {
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None => Scalar::zero(&self.ctx),
            Some(odd) => {
                let c = self
                    .terms
                    .get(&key)
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(&self.ctx));
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    fn same_shape(&self, o: &KForm) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(self.dim, o.dim));
        }
        if self.degree != o.degree && !o.is_zero() && !self.is_zero() {
            return Err(Error::Invalid(format!(
                "degrees {} and {} differ",
                self.degree, o.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &KForm) -> Result<KForm> {
        self.same_shape(o)?;
        let mut out = if self.is_zero() {
            KForm {
                degree: o.degree,
                ..self.clone()
            }
        } else {
            self.clone()
        };
        for (idx, c) in &o.terms {
            out.add_term(idx, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &KForm) -> Result<KForm> {
        self.add(&o.scale(&-Scalar::one(&self.ctx)))
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree, &self.ctx);
        for (idx, c) in &self.terms {
            out.add_term(idx, c * s);
        }
        out
    }

    pub fn wedge(&self, o: &KForm) -> Result<KForm> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(self.dim, o.dim));
        }
        let mut out = KForm::zero(self.dim, self.degree + o.degree, &self.ctx);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_term(&idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Value on the given vectors (one per degree).
    pub fn eval(&self, vs: &[Vector]) -> Scalar {
        assert_eq!(vs.len(), self.degree);
        let mut acc = Scalar::zero(&self.ctx);
        for (idx, c) in &self.terms {
            let m: Vec<Vec<Scalar>> = idx
                .iter()
                .map(|&i| vs.iter().map(|v| v.coeff(i).clone()).collect())
                .collect();
            acc += &(c * &det(&m, &self.ctx));
        }
        acc
    }

    /// Interior product i_X α.
    pub fn contract(&self, x: &Vector) -> KForm {
        assert!(self.degree >= 1);
        let mut out = KForm::zero(self.dim, self.degree - 1, &self.ctx);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = x.coeff(i);
                if xi.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &j)| j)
                    .collect();
                let s = if pos % 2 == 1 { -(c * xi) } else { c * xi };
                out.add_term(&rest, s);
            }
        }
        out
    }

    /// Pullback to the span of `vs`, expressed in the basis `vs`.
    pub fn pullback(&self, vs: &[Vector]) -> KForm {
        let m = vs.len();
        let mut out = KForm::zero(m, self.degree, &self.ctx);
        for idx in increasing_tuples(m, self.degree) {
            let args: Vec<Vector> = idx.iter().map(|&i| vs[i - 1].clone()).collect();
            let c = self.eval(&args);
            if !c.is_zero() {
                out.add_term(&idx, c);
            }
        }
        out
    }

    /// α^n by repeated wedging.
    pub fn power(&self, n: usize) -> KForm {
        let mut acc = KForm::zero(self.dim, 0, &self.ctx);
        acc.add_term(&[], Scalar::one(&self.ctx));
        for _ in 0..n {
            acc = acc.wedge(self).expect("same dim");
        }
        acc
    }

    /// Coefficient on ω_1∧…∧ω_n.
    pub fn top_coefficient(&self) -> Scalar {
        if self.degree != self.dim {
            return Scalar::zero(&self.ctx);
        }
        self.coefficient(&(1..=self.dim).collect::<Vec<_>>())
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, ctx: &Ctx, f: F) -> Result<KForm> {
        let mut out = KForm::zero(self.dim, self.degree, ctx);
        for (idx, c) in &self.terms {
            out.add_term(idx, f(c)?);
        }
        Ok(out)
    }
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn det(m: &[Vec<Scalar>], ctx: &Ctx) -> Scalar {
    match m.len() {
        0 => Scalar::one(ctx),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => {
            let mut acc = Scalar::zero(ctx);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, s)| s.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &det(&minor, ctx);
                if j % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
    }
}

/// dω_1, …, dω_n read off the bracket.
pub fn structure_equations(g: &LieAlgebra) -> Vec<KForm> {
    let n = g.dim();
    let mut rows = vec![KForm::zero(n, 2, g.ctx()); n];
    for ((i, j), k, s) in g.bracket().entries() {
        rows[k - 1].add_term(&[i, j], s.clone());
    }
    rows
}

/// Bracket with C_ij^k the coefficient of ω_i∧ω_j in dω_k. Rows not listed
/// are zero.
pub fn bracket_from_equations(dim: usize, ctx: &Ctx, rows: &[(usize, KForm)]) -> Result<Cochain2> {
    let mut c = Cochain2::new(dim, ctx);
    for (k, form) in rows {
        if form.degree != 2 || form.dim != dim {
            return Err(Error::Invalid(format!(
                "row dw{k} is not a 2-form in dimension {dim}"
            )));
        }
        if !(1..=dim).contains(k) {
            return Err(Error::Index(format!("dw{k} in dimension {dim}")));
        }
        for (idx, s) in &form.terms {
            c.add_to(idx[0], idx[1], *k, s);
        }
    }
    Ok(c)
}

fn d_monomial(eqs: &[KForm], idx: &[usize], c: &Scalar, out: &mut KForm) {
    let dim = out.dim;
    let ctx = out.ctx.clone();
    for (t, &i) in idx.iter().enumerate() {
        let mut left = KForm::zero(dim, t, &ctx);
        left.add_term(&idx[..t], if t % 2 == 1 { -c.clone() } else { c.clone() });
        let mut right = KForm::zero(dim, idx.len() - t - 1, &ctx);
        right.add_term(&idx[t + 1..], Scalar::one(&ctx));
        let term = left.wedge(&eqs[i - 1]).unwrap().wedge(&right).unwrap();
        for (k, s) in term.terms {
            out.add_term(&k, s);
        }
    }
}

fn d_with(eqs: &[KForm], alpha: &KForm) -> KForm {
    let mut out = KForm::zero(alpha.dim, alpha.degree + 1, &alpha.ctx);
    for (idx, c) in &alpha.terms {
        d_monomial(eqs, idx, c, &mut out);
    }
    out
}

pub fn d_form(g: &LieAlgebra, alpha: &KForm) -> Result<KForm> {
    if alpha.dim != g.dim() {
        return Err(Error::DimMismatch(alpha.dim, g.dim()));
    }
    Ok(d_with(&structure_equations(g), alpha))
}

/// c with ω∧(dω)^p = c·ω_1∧…∧ω_{2p+1}.
pub fn contact_coefficient(g: &LieAlgebra, omega: &KForm) -> Result<Scalar> {
    let n = g.dim();
    if n % 2 == 0 {
        return Err(Error::Invalid(format!(
            "contact forms need odd dimension, got {n}"
        )));
    }
    let dw = d_form(g, omega)?;
    Ok(omega.wedge(&dw.power(n / 2))?.top_coefficient())
}

/// Solves a linear system over the scalar ring. Related parameters are
/// handled by restriction of scalars; otherwise elimination only pivots on
/// nonzero constants. Returns `None` when the solution is not unique or does
/// not exist.
fn solve_unique(ctx: &Ctx, a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let ncols = a.first().map_or(0, |r| r.len());
    if let Ok(res) = Restriction::for_scalars(ctx, a.iter().flatten().chain(b)) {
        let m = res.expand(a);
        let rhs = res.expand_vector(b);
        if m.rank() < ncols * res.degree() {
            return Ok(None);
        }
        return Ok(m.solve(&rhs).map(|x| res.collapse_vector(&x)));
    }
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..ncols {
        let Some(p) =
            (r0..rows.len()).find(|&r| !rows[r].0[col].is_zero() && rows[r].0[col].is_constant())
        else {
            if (r0..rows.len()).all(|r| rows[r].0[col].is_zero()) {
                return Ok(None);
            }
            return Err(Error::Parametrized("no constant pivot available".into()));
        };
        rows.swap(r0, p);
        let inv = num_traits::Inv::inv(rows[r0].0[col].to_rational().unwrap());
        let (prow, prhs) = (
            rows[r0].0.iter().map(|s| s.scale(&inv)).collect::<Vec<_>>(),
            rows[r0].1.scale(&inv),
        );
        rows[r0] = (prow.clone(), prhs.clone());
        for r in 0..rows.len() {
            if r == r0 || rows[r].0[col].is_zero() {
                continue;
            }
            let f = rows[r].0[col].clone();
            for (x, y) in rows[r].0.iter_mut().zip(&prow) {
                *x -= &(&f * y);
            }
            rows[r].1 -= &(&f * &prhs);
        }
        pivots.push(col);
        r0 += 1;
    }
    for (_, rhs) in &rows[r0..] {
        if !rhs.is_zero() {
            if rhs.is_constant() {
                return Ok(None);
            }
            return Err(Error::Parametrized(
                "consistency depends on parameters".into(),
            ));
        }
    }
    Ok(Some(rows[..ncols].iter().map(|(_, r)| r.clone()).collect()))
}

/// The unique X with ω(X) = 1 and i_X dω = 0.
pub fn reeb_vector(g: &LieAlgebra, omega: &KForm) -> Result<Vector> {
    let n = g.dim();
    let ctx = g.ctx();
    let dw = d_form(g, omega)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    a.push((1..=n).map(|i| omega.coefficient(&[i])).collect::<Vec<_>>());
    b.push(Scalar::one(ctx));
    for j in 1..=n {
        a.push((1..=n).map(|i| dw.coefficient(&[i, j])).collect());
        b.push(Scalar::zero(ctx));
    }
    match solve_unique(ctx, &a, &b)? {
        Some(x) => Ok(Vector::from_scalars(ctx, x)),
        None => Err(Error::NotContact),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredReport {
    pub ok: bool,
    /// (k, d(dω_k)) for every nonzero row.
    pub failures: Vec<(usize, KForm)>,
}

impl DSquaredReport {
    /// Sorted index triples on which some d(dω_k) is nonzero.
    pub fn failing_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self
            .failures
            .iter()
            .flat_map(|(_, f)| f.terms.keys().map(|i| (i[0], i[1], i[2])))
            .collect();
        t.sort();
        t.dedup();
        t
    }
}

pub fn check_d_squared(g: &LieAlgebra) -> DSquaredReport {
    let eqs = structure_equations(g);
    let failures: Vec<(usize, KForm)> = eqs
        .iter()
        .enumerate()
        .map(|(k, e)| (k + 1, d_with(&eqs, e)))
        .filter(|(_, f)| !f.is_zero())
        .collect();
    DSquaredReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// ω_2∧ω_3 + ⋯ + ω_{2p}∧ω_{2p+1}.
pub fn canonical_symplectic(dim: usize, ctx: &Ctx) -> KForm {
    let mut f = KForm::zero(dim, 2, ctx);
    for i in 1..=(dim - 1) / 2 {
        f.add_term(&[2 * i, 2 * i + 1], Scalar::one(ctx));
    }
    f
}

pub fn is_darboux_form(g: &LieAlgebra, omega: &KForm) -> Result<bool> {
    if g.dim() % 2 == 0 {
        return Ok(false);
    }
    Ok(d_form(g, omega)? == canonical_symplectic(g.dim(), g.ctx()))
}

/// True iff dω_i is exactly the canonical sum.
pub fn is_darboux(g: &LieAlgebra, omega_index: usize) -> bool {
    omega_index >= 1
        && omega_index <= g.dim()
        && is_darboux_form(g, &KForm::omega(g.dim(), omega_index, g.ctx())).unwrap_or(false)
}

/// Parses a 2-form written as a sum of terms `[coef*]w<i>^w<j>`, where a
/// coefficient with several terms must be parenthesized, e.g.
/// `w2^w3 - (1+d4)*w3^w5 + lambda4*w1^w4`.
pub fn parse_two_form(text: &str, dim: usize, ctx: &Ctx) -> Result<KForm> {
    let mut out = KForm::zero(dim, 2, ctx);
    let t = text.trim();
    if t == "0" || t.is_empty() {
        return Ok(out);
    }
    let bytes = t.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (pos, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && pos > 0 => {
                pieces.push((start, &t[start..pos]));
                start = pos;
            }
            _ => {}
        }
    }
    pieces.push((start, &t[start..]));
    for (offset, piece) in pieces {
        let p = piece.trim();
        let (neg, body) = match p.as_bytes().first() {
            Some(b'-') => (true, p[1..].trim()),
            Some(b'+') => (false, p[1..].trim()),
            _ => (false, p),
        };
        let syntax = |msg: &str| Error::Syntax {
            pos: offset,
            msg: msg.to_string(),
        };
        let wpos = body
            .rfind('w')
            .ok_or_else(|| syntax("expected a term ending in w<i>^w<j>"))?;
        let basis = &body[..wpos];
        let (coef_text, first) = match basis.rfind("*w") {
            Some(s)
                if basis[s + 2..]
                    .trim_end_matches('^')
                    .chars()
                    .all(|c| c.is_ascii_digit()) =>
            {
                (&basis[..s], &basis[s + 1..])
            }
            _ if basis.starts_with('w') => ("", basis),
            _ => return Err(syntax("expected a term ending in w<i>^w<j>")),
        };
        let i: usize = first
            .trim_start_matches('w')
            .trim_end_matches('^')
            .parse()
            .map_err(|_| syntax("bad form index"))?;
        let j: usize = body[wpos + 1..]
            .parse()
            .map_err(|_| syntax("bad form index"))?;
        if !first.ends_with('^') || i == 0 || j == 0 || i > dim || j > dim {
            return Err(syntax("bad form index"));
        }
        let coef = if coef_text.trim().is_empty() {
            Scalar::one(ctx)
        } else {
            parse_scalar(coef_text, ctx)?
        };
        out.add_term(&[i, j], if neg { -coef } else { coef });
    }
    Ok(out)
}

/// Rational coordinates of a numeric form, keyed as stored.
pub fn numeric_terms(f: &KForm) -> Option<BTreeMap<Vec<usize>, crate::scalar::Rational>> {
    f.terms
        .iter()
        .map(|(k, s)| s.to_rational().map(|r| (k.clone(), r)))
        .collect()
}

/// Rank of a numeric 2-form as a skew matrix.
pub fn two_form_rank(f: &KForm) -> Result<usize> {
    let n = f.dim;
    let mut m = QMatrix::zeros(n, n);
    for (k, s) in &f.terms {
        let r = s
            .to_rational()
            .ok_or_else(|| Error::Parametrized("form has parameters".into()))?;
        m[(k[0] - 1, k[1] - 1)] = r.clone();
        m[(k[1] - 1, k[0] - 1)] = -r;
    }
    Ok(m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::make_heisenberg;
    use crate::scalar::{int, ScalarContext};

    fn so3_r2() -> LieAlgebra {
        let ctx = ScalarContext::empty();
        let rows = [
            (1, "w2^w3 + w4^w5"),
            (2, "w1^w2 + w2^w4"),
            (3, "-w1^w3 - w3^w4"),
            (4, "w4^w5"),
        ];
        let rows: Vec<(usize, KForm)> = rows
            .iter()
            .map(|(k, t)| (*k, parse_two_form(t, 5, &ctx).unwrap()))
            .collect();
        LieAlgebra::new(bracket_from_equations(5, &ctx, &rows).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_differentials() {
        let ctx = ScalarContext::empty();
        let h = make_heisenberg(1, &ctx);
        assert_eq!(
            d_form(&h, &KForm::omega(3, 1, &ctx)).unwrap(),
            parse_two_form("w2^w3", 3, &ctx).unwrap()
        );
        assert!(d_form(&h, &KForm::omega(3, 3, &ctx)).unwrap().is_zero());
        assert!(is_darboux(&h, 1));
        assert!(!is_darboux(&h, 2));
    }

    #[test]
    fn wedge_examples() {
        let ctx = ScalarContext::empty();
        let a = parse_two_form("w2^w3", 5, &ctx).unwrap();
        let b = parse_two_form("w4^w5", 5, &ctx).unwrap();
        let ab = a.wedge(&b).unwrap();
        assert_eq!(ab.coefficient(&[2, 3, 4, 5]), Scalar::one(&ctx));
        let w2 = KForm::omega(5, 2, &ctx);
        assert!(w2.wedge(&w2).unwrap().is_zero());
        let s = a.add(&b).unwrap();
        assert_eq!(s.wedge(&s).unwrap(), ab.scale(&Scalar::from_int(&ctx, 2)));
    }

    #[test]
    fn contact_coefficients() {
        let ctx = ScalarContext::empty();
        for (p, fact) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            let h = make_heisenberg(p, &ctx);
            let c = contact_coefficient(&h, &KForm::omega(2 * p + 1, 1, &ctx)).unwrap();
            assert_eq!(c.to_rational().unwrap(), int(fact));
        }
        let g = so3_r2();
        assert!(!contact_coefficient(&g, &KForm::omega(5, 1, &ctx))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn reeb_vectors() {
        let ctx = ScalarContext::empty();
        let g = so3_r2();
        assert_eq!(
            reeb_vector(&g, &KForm::omega(5, 1, &ctx)).unwrap(),
            Vector::basis(5, 1, &ctx)
        );
        let h = make_heisenberg(2, &ctx);
        let w = KForm::omega(5, 1, &ctx)
            .add(&KForm::omega(5, 2, &ctx))
            .unwrap();
        let x = reeb_vector(&h, &w).unwrap();
        assert_eq!(w.eval(&[x.clone()]), Scalar::one(&ctx));
        assert!(d_form(&h, &w).unwrap().contract(&x).is_zero());
        assert_eq!(
            reeb_vector(&h, &KForm::omega(5, 2, &ctx)),
            Err(Error::NotContact)
        );
    }

    #[test]
    fn symbolic_reeb_vector() {
        let ctx = ScalarContext::new(&["a"]).unwrap();
        let rows = vec![
            (1, parse_two_form("w2^w3", 3, &ctx).unwrap()),
            (2, parse_two_form("a*w1^w2", 3, &ctx).unwrap()),
            (3, parse_two_form("-a*w1^w3", 3, &ctx).unwrap()),
        ];
        let g = LieAlgebra::new(bracket_from_equations(3, &ctx, &rows).unwrap()).unwrap();
        assert_eq!(
            reeb_vector(&g, &KForm::omega(3, 1, &ctx)).unwrap(),
            Vector::basis(3, 1, &ctx)
        );
    }

    #[test]
    fn d_squared_matches_jacobi_on_broken_table() {
        let ctx = ScalarContext::empty();
        let mut mu = Cochain2::new(3, &ctx);
        mu.set(1, 2, 3, Scalar::one(&ctx));
        mu.set(1, 3, 2, Scalar::one(&ctx));
        mu.set(1, 2, 2, Scalar::one(&ctx));
        mu.set(2, 3, 1, Scalar::one(&ctx));
        let r = check_d_squared(&LieAlgebra::unchecked(mu));
        assert!(!r.ok);
        assert_eq!(r.failing_triples(), vec![(1, 2, 3)]);
        assert!(check_d_squared(&so3_r2()).ok);
    }

    #[test]
    fn parser_and_display_round_trip() {
        let ctx = ScalarContext::new(&["lambda4", "d4"]).unwrap();
        let f = parse_two_form(
            "lambda4*w1^w4 - lambda4*w2^w4 - (1+d4)*w3^w5 + w4^w1",
            5,
            &ctx,
        )
        .unwrap();
        assert_eq!(
            f.coefficient(&[1, 4]),
            parse_scalar("lambda4 - 1", &ctx).unwrap()
        );
        assert_eq!(parse_two_form(&f.to_string(), 5, &ctx).unwrap(), f);
        assert!(parse_two_form("w2^w9", 5, &ctx).is_err());
        assert!(parse_two_form("3*w2", 5, &ctx).is_err());
        assert!(parse_two_form("0", 5, &ctx).unwrap().is_zero());
    }

    #[test]
    fn pullback_of_symplectic_form() {
        let ctx = ScalarContext::empty();
        let f = canonical_symplectic(5, &ctx);
        let vs: Vec<Vector> = [2, 3].iter().map(|&i| Vector::basis(5, i, &ctx)).collect();
        assert_eq!(f.pullback(&vs), parse_two_form("w1^w2", 2, &ctx).unwrap());
        assert_eq!(two_form_rank(&f).unwrap(), 4);
    }
}
