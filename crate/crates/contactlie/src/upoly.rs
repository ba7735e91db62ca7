//! Univariate polynomials over ℚ, enough for squarefree parts, modular
//! inverses and rational roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::QMatrix;
use crate::scalar::Rational;

/// Coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(vec![])
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    /// `x - a`
    pub fn linear(a: Rational) -> Self {
        UPoly::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &UPoly) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let l = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &l;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return UPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &QMatrix) -> QMatrix {
        let n = m.rows;
        let mut acc = QMatrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&QMatrix::identity(n).scale(c));
        }
        acc
    }

    /// Distinct rational roots with multiplicities.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return vec![];
        }
        let mut p = self.clone();
        let mut out = Vec::new();
        let mut zero_mult = 0;
        while p.0.first().is_some_and(|c| c.is_zero()) {
            p = UPoly::new(p.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        // clear denominators
        let l = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            p.0.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1i32, -1] {
                    let cand = Rational::new(num.clone() * BigInt::from(sign), den.clone());
                    if cand.denom() != &den || out.iter().any(|(r, _)| *r == cand) {
                        continue;
                    }
                    let lin = UPoly::linear(cand.clone());
                    let mut m = 0;
                    while p.degree().unwrap_or(0) > 0 {
                        let (q, r) = p.divrem(&lin);
                        if !r.is_zero() {
                            break;
                        }
                        p = q;
                        m += 1;
                    }
                    if m > 0 {
                        out.push((cand, m));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// True when the polynomial is a product of linear factors over ℚ.
    pub fn splits(&self) -> bool {
        let total: usize = self.rational_roots().iter().map(|(_, m)| m).sum();
        Some(total) == self.degree()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Characteristic polynomial `det(x I - m)` by Faddeev–LeVerrier.
pub fn charpoly(m: &QMatrix) -> UPoly {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = QMatrix::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&QMatrix::identity(n).scale(&c[n - k + 1]));
        let am = m.mul(&mk);
        c[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
    }
    UPoly::new(c)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part(), p(&[-2, 1, 1]));
        assert_eq!(f.gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn roots() {
        // (2x - 1)(x + 3)^2 x
        let f = p(&[-1, 2])
            .mul(&p(&[3, 1]))
            .mul(&p(&[3, 1]))
            .mul(&p(&[0, 1]));
        assert_eq!(
            f.rational_roots(),
            vec![(int(-3), 2), (int(0), 1), (rat(1, 2), 1)]
        );
        assert!(f.splits());
        assert!(!p(&[-2, 0, 1]).splits());
    }

    #[test]
    fn charpoly_small() {
        let m = QMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(charpoly(&m), p(&[1, -2, 1]));
        assert!(charpoly(&m).eval_matrix(&m).is_zero());
    }
}
