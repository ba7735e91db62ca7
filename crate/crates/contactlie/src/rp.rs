//! The matrix algebra 𝔯_p = {A : ᵗAΘ_p + Θ_pA = 0} of 2p×2p matrices, its
//! block description, the subalgebra 𝔯⁰_p and the ℤ₂^(p−1)-grading.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::Endo;
use crate::scalar::{int, Ctx, Rational, Scalar, ScalarContext};

/// Block-diagonal with p copies of [[0,1],[−1,0]].
pub fn theta(p: usize, ctx: &Ctx) -> Endo {
    let mut t = Endo::zero(2 * p, ctx);
    for b in 0..p {
        t.set(2 * b + 1, 2 * b + 2, Scalar::one(ctx));
        t.set(2 * b + 2, 2 * b + 1, -Scalar::one(ctx));
    }
    t
}

/// [[a,b],[c,d]] ↦ [[−d,b],[c,−a]].
pub fn tilde(a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    if a.len() != 2 || a.iter().any(|r| r.len() != 2) {
        return Err(Error::Invalid("tilde needs a 2x2 matrix".into()));
    }
    Ok(vec![
        vec![-&a[1][1], a[0][1].clone()],
        vec![a[1][0].clone(), -&a[0][0]],
    ])
}

fn check_size(a: &Endo, p: usize) -> Result<()> {
    if a.dim() != 2 * p {
        return Err(Error::DimMismatch(a.dim(), 2 * p));
    }
    Ok(())
}

/// Exact test of ᵗAΘ + ΘA = 0.
pub fn is_in_rp(a: &Endo, p: usize) -> Result<bool> {
    check_size(a, p)?;
    let t = theta(p, a.ctx());
    Ok(a.transpose().compose(&t).add(&t.compose(a)).is_zero())
}

/// The 2×2 block A_ij (0-based block indices).
pub fn block(a: &Endo, i: usize, j: usize) -> Vec<Vec<Scalar>> {
    (0..2)
        .map(|r| {
            (0..2)
                .map(|c| a.get(2 * i + r + 1, 2 * j + c + 1).clone())
                .collect()
        })
        .collect()
}

fn set_block(a: &mut Endo, i: usize, j: usize, b: &[Vec<Scalar>]) {
    for r in 0..2 {
        for c in 0..2 {
            a.set(2 * i + r + 1, 2 * j + c + 1, b[r][c].clone());
        }
    }
}

/// Block form of membership: tr A_ii = 0 and A_ji = Ã_ij for i < j.
pub fn block_test(a: &Endo, p: usize) -> Result<bool> {
    check_size(a, p)?;
    for i in 0..p {
        let d = block(a, i, i);
        if !(&d[0][0] + &d[1][1]).is_zero() {
            return Ok(false);
        }
        for j in i + 1..p {
            if block(a, j, i) != tilde(&block(a, i, j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tuple of p−1 bits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaLabel(pub Vec<u8>);

impl GammaLabel {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Nonempty with contiguous 1-positions.
    pub fn in_gamma(&self) -> bool {
        let ones: Vec<usize> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect();
        !ones.is_empty() && ones.last().unwrap() - ones[0] + 1 == ones.len()
    }

    pub fn xor(&self, o: &GammaLabel) -> GammaLabel {
        GammaLabel(self.0.iter().zip(&o.0).map(|(a, b)| a ^ b).collect())
    }
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Label of the off-diagonal block (i, j), 0-based: ones at positions
/// min..max−1.
pub fn block_label(p: usize, i: usize, j: usize) -> GammaLabel {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    GammaLabel((0..p - 1).map(|k| u8::from(k >= lo && k < hi)).collect())
}

/// All labels of Γ, ordered by block position (i > j, by i then j).
pub fn gamma(p: usize) -> Vec<GammaLabel> {
    let mut out = Vec::new();
    for i in 1..p {
        for j in 0..i {
            out.push(block_label(p, i, j));
        }
    }
    out
}

/// Grading component of a basis element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    H,
    M(GammaLabel),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::H => write!(f, "h"),
            Component::M(g) => write!(f, "m{g}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub p: usize,
    pub h: Vec<Endo>,
    pub m: BTreeMap<GammaLabel, Vec<Endo>>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.h.len() + self.m.values().map(|v| v.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements tagged with their component, h first.
    pub fn elements(&self) -> Vec<(Component, &Endo)> {
        let mut out: Vec<(Component, &Endo)> = self.h.iter().map(|e| (Component::H, e)).collect();
        for (g, es) in &self.m {
            out.extend(es.iter().map(|e| (Component::M(g.clone()), e)));
        }
        out
    }
}

fn unit_block(ctx: &Ctx, r: usize, c: usize) -> Vec<Vec<Scalar>> {
    let mut b = vec![vec![Scalar::zero(ctx); 2]; 2];
    b[r][c] = Scalar::one(ctx);
    b
}

/// Graded basis: three sl(2) generators per diagonal block, and for each
/// block (i, j) with i > j four elements E ⊕ Ẽ.
pub fn rp_basis(p: usize, ctx: &Ctx) -> GradedBasis {
    assert!(p >= 1);
    let mut h = Vec::new();
    for b in 0..p {
        let mut hh = Endo::zero(2 * p, ctx);
        hh.set(2 * b + 1, 2 * b + 1, Scalar::one(ctx));
        hh.set(2 * b + 2, 2 * b + 2, -Scalar::one(ctx));
        let mut e = Endo::zero(2 * p, ctx);
        e.set(2 * b + 1, 2 * b + 2, Scalar::one(ctx));
        let mut f = Endo::zero(2 * p, ctx);
        f.set(2 * b + 2, 2 * b + 1, Scalar::one(ctx));
        h.extend([hh, e, f]);
    }
    let mut m: BTreeMap<GammaLabel, Vec<Endo>> = BTreeMap::new();
    for i in 1..p {
        for j in 0..i {
            let list = m.entry(block_label(p, i, j)).or_default();
            for r in 0..2 {
                for c in 0..2 {
                    let u = unit_block(ctx, r, c);
                    let mut a = Endo::zero(2 * p, ctx);
                    set_block(&mut a, i, j, &u);
                    set_block(&mut a, j, i, &tilde(&u).unwrap());
                    list.push(a);
                }
            }
        }
    }
    GradedBasis { p, h, m }
}

fn flatten(a: &Endo) -> Result<Vec<Rational>> {
    let q = a.to_qmatrix()?;
    Ok((0..q.rows).flat_map(|i| q.row(i).to_vec()).collect())
}

/// Linear map A ↦ ᵗAΘ + ΘA as a 4p²×4p² matrix on row-major entries.
fn rp_condition(p: usize) -> QMatrix {
    let n = 2 * p;
    let th = theta(p, &ScalarContext::empty()).to_qmatrix().unwrap();
    let mut m = QMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            // unit matrix E_ab
            let mut e = QMatrix::zeros(n, n);
            e[(a, b)] = int(1);
            let img = e.transpose().mul(&th).add(&th.mul(&e));
            for r in 0..n {
                for c in 0..n {
                    m[(r * n + c, a * n + b)] = img[(r, c)].clone();
                }
            }
        }
    }
    m
}

fn from_flat(p: usize, v: &[Rational], ctx: &Ctx) -> Endo {
    let n = 2 * p;
    let mut e = Endo::zero(n, ctx);
    for r in 0..n {
        for c in 0..n {
            e.set(r + 1, c + 1, Scalar::constant(ctx, v[r * n + c].clone()));
        }
    }
    e
}

/// dim 𝔯_p by exact nullspace computation.
pub fn rp_dimension(p: usize) -> usize {
    rp_condition(p).kernel().len()
}

fn r0_condition(p: usize) -> QMatrix {
    let n = 2 * p;
    let base = rp_condition(p);
    let extra = 2 * n;
    let mut m = QMatrix::zeros(base.rows + extra, n * n);
    for r in 0..base.rows {
        for c in 0..base.cols {
            m[(r, c)] = base[(r, c)].clone();
        }
    }
    for k in 0..n {
        // first column entry (k, 0), second row entry (1, k)
        m[(base.rows + k, k * n)] = int(1);
        m[(base.rows + n + k, n + k)] = int(1);
    }
    m
}

/// Basis of 𝔯⁰_p: elements of 𝔯_p whose first column and second row vanish.
pub fn r0p_basis(p: usize, ctx: &Ctx) -> Vec<Endo> {
    r0_condition(p)
        .kernel()
        .iter()
        .map(|v| from_flat(p, v, ctx))
        .collect()
}

/// Coordinates of `a` in `basis`, if it lies in the span.
pub fn coordinates(a: &Endo, basis: &[Endo]) -> Result<Option<Vec<Rational>>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(flatten).collect::<Result<_>>()?;
    let target = flatten(a)?;
    let mut m = QMatrix::zeros(target.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    Ok(m.solve(&target))
}

/// True when every commutator of two elements lies in their span.
pub fn closed_under_commutator(basis: &[Endo]) -> Result<bool> {
    for a in basis {
        for b in basis {
            if coordinates(&a.commutator(b), basis)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Components in which a matrix has nonzero blocks.
pub fn support(a: &Endo, p: usize) -> Vec<Component> {
    let mut out = Vec::new();
    for i in 0..p {
        for j in 0..p {
            if block(a, i, j).iter().flatten().all(|s| s.is_zero()) {
                continue;
            }
            let c = if i == j {
                Component::H
            } else {
                Component::M(block_label(p, i, j))
            };
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// Predicted component of [x, y]; `None` means the bracket must vanish.
pub fn predicted(a: &Component, b: &Component) -> Option<Component> {
    match (a, b) {
        (Component::H, c) | (c, Component::H) => Some(c.clone()),
        (Component::M(x), Component::M(y)) => {
            let s = x.xor(y);
            if s.is_zero() {
                Some(Component::H)
            } else if s.in_gamma() {
                Some(Component::M(s))
            } else {
                None
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingReport {
    pub p: usize,
    pub ok: bool,
    pub pairs_checked: usize,
    /// (left component, right component, observed support) for each leak.
    pub leaks: Vec<(Component, Component, Vec<Component>)>,
    /// Pairs of m-labels whose sum leaves Γ, with the observed support of
    /// their brackets (always expected empty).
    pub outside_gamma: Vec<(GammaLabel, GammaLabel, Vec<Component>)>,
}

/// Checks every commutator of graded basis elements against the predicted
/// component.
pub fn check_grading(p: usize) -> GradingReport {
    let ctx = ScalarContext::empty();
    let basis = rp_basis(p, &ctx);
    let els = basis.elements();
    let mut leaks = Vec::new();
    let mut outside: BTreeMap<(GammaLabel, GammaLabel), Vec<Component>> = BTreeMap::new();
    let mut pairs = 0;
    for (ca, a) in &els {
        for (cb, b) in &els {
            pairs += 1;
            let sup = support(&a.commutator(b), p);
            let pred = predicted(ca, cb);
            let fits = match &pred {
                Some(c) => sup.iter().all(|s| s == c),
                None => sup.is_empty(),
            };
            if let (Component::M(x), Component::M(y), None) = (ca, cb, &pred) {
                let e = outside.entry((x.clone(), y.clone())).or_default();
                for s in &sup {
                    if !e.contains(s) {
                        e.push(s.clone());
                    }
                }
            }
            if !fits {
                leaks.push((ca.clone(), cb.clone(), sup));
            }
        }
    }
    GradingReport {
        p,
        ok: leaks.is_empty(),
        pairs_checked: pairs,
        leaks,
        outside_gamma: outside.into_iter().map(|((a, b), s)| (a, b, s)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    #[test]
    fn tilde_examples() {
        let ctx = ScalarContext::new(&["a", "b", "c", "d"]).unwrap();
        let s = |t: &str| parse_scalar(t, &ctx).unwrap();
        let m = vec![vec![s("a"), s("b")], vec![s("c"), s("d")]];
        assert_eq!(
            tilde(&m).unwrap(),
            vec![vec![s("-d"), s("b")], vec![s("c"), s("-a")]]
        );
        let e = ScalarContext::empty();
        let n = Endo::from_i64(&e, &[vec![1, 2], vec![3, 4]]);
        let t = Endo::from_rows(&e, tilde(&n.rows()).unwrap()).unwrap();
        assert_eq!(n.compose(&t), Endo::from_i64(&e, &[vec![2, 0], vec![0, 2]]));
        let id = Endo::identity(2, &e);
        assert_eq!(
            tilde(&id.rows()).unwrap(),
            Endo::identity(2, &e)
                .scale(&Scalar::from_int(&e, -1))
                .rows()
        );
    }

    #[test]
    fn dimensions() {
        let ctx = ScalarContext::empty();
        for p in 1..=4 {
            let b = rp_basis(p, &ctx);
            assert_eq!(b.len(), p * (2 * p + 1));
            assert_eq!(b.h.len(), 3 * p);
            assert_eq!(b.m.len(), p * (p - 1) / 2);
            assert!(b.elements().iter().all(|(_, e)| is_in_rp(e, p).unwrap()));
            assert_eq!(rp_dimension(p), p * (2 * p + 1));
            assert_eq!(r0p_basis(p, &ctx).len(), p * (2 * p - 1));
        }
    }

    #[test]
    fn membership() {
        let ctx = ScalarContext::empty();
        assert!(!is_in_rp(&Endo::identity(4, &ctx), 2).unwrap());
        assert!(is_in_rp(&Endo::zero(4, &ctx), 2).unwrap());
        assert!(is_in_rp(&Endo::identity(4, &ctx), 3).is_err());
        let f = Endo::from_i64(
            &ctx,
            &[vec![1, 0, 0, 0], vec![0, -1, 0, 0], vec![0; 4], vec![0; 4]],
        );
        assert!(is_in_rp(&f, 2).unwrap() && block_test(&f, 2).unwrap());
        let g = Endo::from_i64(
            &ctx,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0; 4], vec![0; 4]],
        );
        assert!(!is_in_rp(&g, 2).unwrap() && !block_test(&g, 2).unwrap());
    }

    #[test]
    fn symbolic_f_prime_is_in_r2() {
        let names = ["lambda", "a12", "a32", "a33", "a34", "a42", "a43"];
        let ctx = ScalarContext::new(&names).unwrap();
        let s = |t: &str| parse_scalar(t, &ctx).unwrap();
        let rows = vec![
            vec![s("lambda"), s("a12"), s("-a42"), s("a32")],
            vec![s("0"), s("-lambda"), s("0"), s("0")],
            vec![s("0"), s("a32"), s("a33"), s("a34")],
            vec![s("0"), s("a42"), s("a43"), s("-a33")],
        ];
        let f = Endo::from_rows(&ctx, rows).unwrap();
        assert!(is_in_rp(&f, 2).unwrap());
        assert!(block_test(&f, 2).unwrap());
    }

    #[test]
    fn r0_is_a_subalgebra() {
        let ctx = ScalarContext::empty();
        let b = r0p_basis(2, &ctx);
        assert!(closed_under_commutator(&b).unwrap());
        assert_eq!(r0p_basis(1, &ctx).len(), 1);
    }

    #[test]
    fn gamma_labels() {
        assert_eq!(gamma(3).len(), 3);
        assert!(gamma(4).iter().all(|g| g.in_gamma()));
        assert!(!GammaLabel(vec![1, 0, 1]).in_gamma());
        assert_eq!(block_label(3, 2, 0), GammaLabel(vec![1, 1]));
    }

    #[test]
    fn grading_small() {
        for p in 2..=3 {
            let r = check_grading(p);
            assert!(r.ok, "{:?}", r.leaks);
        }
    }
}
