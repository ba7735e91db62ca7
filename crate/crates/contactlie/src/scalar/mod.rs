//! Exact coefficients: polynomials over ℚ in named parameters, reduced modulo
//! monic univariate relations and reciprocal pairs.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::parse_scalar;

pub type Rational = num_rational::BigRational;
pub type Ctx = Arc<ScalarContext>;

/// Exponent vector, one entry per context parameter.
pub type Monomial = Vec<u32>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parameter names, their defining relations and reciprocal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarContext {
    params: Vec<String>,
    // Monic relation coefficients, low degree first, leading 1 included.
    relations: Vec<Option<Vec<Rational>>>,
    partner: Vec<Option<usize>>,
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

#[derive(Debug, Default, Clone)]
pub struct ContextBuilder {
    params: Vec<String>,
    relations: Vec<(String, String)>,
    reciprocals: Vec<(String, String)>,
}

impl ContextBuilder {
    pub fn param(mut self, name: &str) -> Self {
        self.params.push(name.to_string());
        self
    }

    pub fn params<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.params
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    /// `text` is a polynomial in `name` alone; it is normalized to be monic.
    pub fn relation(mut self, name: &str, text: &str) -> Self {
        self.relations.push((name.to_string(), text.to_string()));
        self
    }

    /// Declares `a * b = 1`.
    pub fn reciprocal(mut self, a: &str, b: &str) -> Self {
        self.reciprocals.push((a.to_string(), b.to_string()));
        self
    }

    pub fn build(self) -> Result<Ctx> {
        let n = self.params.len();
        for (i, p) in self.params.iter().enumerate() {
            if !valid_ident(p) {
                return Err(Error::InvalidContext(format!("bad parameter name `{p}`")));
            }
            if self.params[..i].contains(p) {
                return Err(Error::InvalidContext(format!("duplicate parameter `{p}`")));
            }
        }
        let index = |name: &str| {
            self.params
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| Error::UnknownParam(name.to_string()))
        };
        let mut relations = vec![None; n];
        for (name, text) in &self.relations {
            let i = index(name)?;
            if relations[i].is_some() {
                return Err(Error::InvalidContext(format!(
                    "second relation for `{name}`"
                )));
            }
            let local = ScalarContext::new(&[name.as_str()])?;
            let poly = parse_scalar(text, &local)?;
            let mut coeffs: Vec<Rational> = Vec::new();
            for (mono, c) in &poly.terms {
                let e = mono[0] as usize;
                if coeffs.len() <= e {
                    coeffs.resize(e + 1, Rational::zero());
                }
                coeffs[e] = c.clone();
            }
            if coeffs.len() < 3 {
                return Err(Error::InvalidContext(format!(
                    "relation for `{name}` has degree < 2"
                )));
            }
            let lead = coeffs.last().unwrap().clone();
            for c in coeffs.iter_mut() {
                *c /= lead.clone();
            }
            relations[i] = Some(coeffs);
        }
        let mut partner = vec![None; n];
        for (a, b) in &self.reciprocals {
            let (i, j) = (index(a)?, index(b)?);
            if i == j || partner[i].is_some() || partner[j].is_some() {
                return Err(Error::InvalidContext(format!(
                    "bad reciprocal pair `{a}`, `{b}`"
                )));
            }
            if relations[i].is_some() || relations[j].is_some() {
                return Err(Error::InvalidContext(format!(
                    "reciprocal pair `{a}`, `{b}` cannot carry a relation"
                )));
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        Ok(Arc::new(ScalarContext {
            params: self.params,
            relations,
            partner,
        }))
    }
}

impl ScalarContext {
    pub fn builder() -> ContextBuilder {
        ContextBuilder::default()
    }

    pub fn new<S: AsRef<str>>(params: &[S]) -> Result<Ctx> {
        Self::builder().params(params).build()
    }

    pub fn empty() -> Ctx {
        Arc::new(ScalarContext {
            params: vec![],
            relations: vec![],
            partner: vec![],
        })
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Monic coefficients (low degree first) of the relation on parameter `i`.
    pub fn relation(&self, i: usize) -> Option<&[Rational]> {
        self.relations[i].as_deref()
    }

    pub fn relation_degree(&self, i: usize) -> Option<u32> {
        self.relations[i].as_ref().map(|r| (r.len() - 1) as u32)
    }

    pub fn reciprocal_of(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    /// True when the parameter carries neither a relation nor a reciprocal.
    pub fn is_free(&self, i: usize) -> bool {
        self.relations[i].is_none() && self.partner[i].is_none()
    }

    /// Relation polynomial as text, e.g. `f^2 - f - 1`.
    pub fn relation_text(&self, i: usize) -> Option<String> {
        let rel = self.relations[i].as_ref()?;
        let local = ScalarContext::new(&[self.params[i].as_str()]).ok()?;
        let mut terms = BTreeMap::new();
        for (e, c) in rel.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![e as u32], c.clone());
            }
        }
        Some(Scalar { ctx: local, terms }.to_string())
    }

    /// Same parameters and relations plus `extra` fresh free parameters.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx> {
        let mut b = Self::builder().params(&self.params).params(extra);
        for i in 0..self.len() {
            if let Some(t) = self.relation_text(i) {
                b = b.relation(&self.params[i], &t);
            }
            if let Some(j) = self.partner[i] {
                if i < j {
                    b = b.reciprocal(&self.params[i], &self.params[j]);
                }
            }
        }
        b.build()
    }

    fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Element of ℚ[params]/(relations), always stored in reduced canonical form.
#[derive(Clone)]
pub struct Scalar {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && ScalarContext::same(&self.ctx, &other.ctx)
    }
}

impl Eq for Scalar {}

fn push_reduced(
    ctx: &ScalarContext,
    out: &mut BTreeMap<Monomial, Rational>,
    mut mono: Monomial,
    c: Rational,
) {
    if c.is_zero() {
        return;
    }
    for i in 0..mono.len() {
        if let Some(j) = ctx.partner[i] {
            if i < j {
                let m = mono[i].min(mono[j]);
                mono[i] -= m;
                mono[j] -= m;
            }
        }
    }
    for i in 0..mono.len() {
        if let Some(rel) = &ctx.relations[i] {
            let d = (rel.len() - 1) as u32;
            if mono[i] >= d {
                let e = mono[i];
                for (t, r) in rel[..d as usize].iter().enumerate() {
                    if !r.is_zero() {
                        let mut m2 = mono.clone();
                        m2[i] = e - d + t as u32;
                        push_reduced(ctx, out, m2, -(&c * r));
                    }
                }
                return;
            }
        }
    }
    match out.get_mut(&mono) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                out.remove(&mono);
            }
        }
        None => {
            out.insert(mono, c);
        }
    }
}

impl Scalar {
    pub fn zero(ctx: &Ctx) -> Self {
        Scalar {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ctx.len()], c);
        }
        Scalar {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, int(n))
    }

    pub fn param(ctx: &Ctx, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownParam(name.to_string()))?;
        Ok(Self::param_index(ctx, i))
    }

    pub fn param_index(ctx: &Ctx, i: usize) -> Self {
        let mut mono = vec![0; ctx.len()];
        mono[i] = 1;
        Self::from_terms(ctx, [(mono, Rational::one())])
    }

    /// Builds a scalar from raw terms, reducing them.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Ctx, terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(
                m.len(),
                ctx.len(),
                "monomial length differs from context size"
            );
            push_reduced(ctx, &mut out, m, c);
        }
        Scalar {
            ctx: ctx.clone(),
            terms: out,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Indices of parameters that occur with a nonzero exponent.
    pub fn params_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ctx.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn check_ctx(&self, other: &Scalar) -> Result<()> {
        if ScalarContext::same(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_ctx(rhs)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(Scalar {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_ctx(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Scalar::zero(&self.ctx));
        }
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                push_reduced(&self.ctx, &mut out, m, c1 * c2);
            }
        }
        Ok(Scalar {
            ctx: self.ctx.clone(),
            terms: out,
        })
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Scalar {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(&self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces bound parameters by the given values; unbound ones pass through.
    /// Values must live in this scalar's context. Relations of bound
    /// parameters are not checked.
    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut slots: Vec<Option<&Scalar>> = vec![None; self.ctx.len()];
        for (name, v) in bindings {
            let i = self
                .ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownParam(name.clone()))?;
            self.check_ctx(v)?;
            slots[i] = Some(v);
        }
        let mut cache: BTreeMap<(usize, u32), Scalar> = BTreeMap::new();
        let mut acc = Scalar::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut factor = Scalar::one(&self.ctx);
            for (i, slot) in slots.iter().enumerate() {
                if let Some(v) = slot {
                    if m[i] > 0 {
                        let p = cache
                            .entry((i, m[i]))
                            .or_insert_with(|| v.pow(m[i]))
                            .clone();
                        factor = &factor * &p;
                    }
                    rest[i] = 0;
                }
            }
            let mono = Scalar::from_terms(&self.ctx, [(rest, c.clone())]);
            acc += &(&factor * &mono);
        }
        Ok(acc)
    }

    pub fn substitute_rationals(&self, values: &BTreeMap<String, Rational>) -> Result<Scalar> {
        let b = values
            .iter()
            .map(|(k, v)| (k.clone(), Scalar::constant(&self.ctx, v.clone())))
            .collect();
        self.substitute(&b)
    }

    /// Re-expresses this scalar in another context by parameter name.
    pub fn transfer(&self, ctx: &Ctx) -> Result<Scalar> {
        if ScalarContext::same(&self.ctx, ctx) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ctx.params.iter().map(|p| ctx.index_of(p)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = vec![0; ctx.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm[j] = e,
                    None => return Err(Error::UnknownParam(self.ctx.params[i].clone())),
                }
            }
            terms.push((nm, c.clone()));
        }
        Ok(Scalar::from_terms(ctx, terms))
    }

    /// Coefficients in parameter `i`, lowest degree first.
    pub fn coefficients_in(&self, i: usize) -> Vec<Scalar> {
        let deg = self.degree_in(i) as usize;
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![vec![]; deg + 1];
        for (m, c) in &self.terms {
            let mut r = m.clone();
            let e = r[i] as usize;
            r[i] = 0;
            parts[e].push((r, c.clone()));
        }
        parts
            .into_iter()
            .map(|t| Scalar::from_terms(&self.ctx, t))
            .collect()
    }
}

fn fmt_monomial(ctx: &ScalarContext, m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.params[i].clone()),
            _ => parts.push(format!("{}^{}", ctx.params[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar context mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$try(&rhs).expect("scalar context mismatch")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$try(rhs).expect("scalar context mismatch")
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$try(&rhs).expect("scalar context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.try_add(rhs).expect("scalar context mismatch");
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.try_sub(rhs).expect("scalar context mismatch");
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.try_mul(rhs).expect("scalar context mismatch");
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Scalar {
            ctx: self.ctx.clone(),
            terms,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn scalar_arith(lhs: &Scalar, rhs: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Ctx {
        ScalarContext::builder()
            .param("f")
            .relation("f", "f^2 - f - 1")
            .build()
            .unwrap()
    }

    #[test]
    fn golden_square_reduces() {
        let ctx = golden();
        let f = Scalar::param(&ctx, "f").unwrap();
        let sq = scalar_arith(&f, &f, ArithOp::Mul).unwrap();
        assert_eq!(sq, parse_scalar("f + 1", &ctx).unwrap());
        assert!((&sq - &f - Scalar::one(&ctx)).is_zero());
        assert_eq!(f.pow(5), parse_scalar("5*f + 3", &ctx).unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let ctx = ScalarContext::new(&["lambda4", "d4"]).unwrap();
        let a = parse_scalar("lambda4 + d4", &ctx).unwrap();
        let b = parse_scalar("lambda4 - d4", &ctx).unwrap();
        assert_eq!(&a * &b, parse_scalar("lambda4^2 - d4^2", &ctx).unwrap());
    }

    #[test]
    fn additive_identity() {
        let ctx = ScalarContext::new(&["x"]).unwrap();
        let x = Scalar::param(&ctx, "x").unwrap();
        assert_eq!(
            scalar_arith(&x, &Scalar::zero(&ctx), ArithOp::Add).unwrap(),
            x
        );
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = ScalarContext::new(&["x"]).unwrap();
        let b = ScalarContext::new(&["y"]).unwrap();
        let x = Scalar::param(&a, "x").unwrap();
        let y = Scalar::param(&b, "y").unwrap();
        assert_eq!(
            scalar_arith(&x, &y, ArithOp::Add),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn substitution_examples() {
        let ctx = ScalarContext::new(&["lambda4", "d4", "d6", "d8", "x"]).unwrap();
        let s = parse_scalar("lambda4^2 - d4^2", &ctx).unwrap();
        let vals = BTreeMap::from([("lambda4".to_string(), int(2)), ("d4".to_string(), int(1))]);
        assert_eq!(
            s.substitute_rationals(&vals).unwrap(),
            Scalar::from_int(&ctx, 3)
        );

        let x = Scalar::param(&ctx, "x").unwrap();
        assert_eq!(x.substitute(&BTreeMap::new()).unwrap(), x);

        let c = parse_scalar("d4 + d6 - d8", &ctx).unwrap();
        let b = BTreeMap::from([("d8".to_string(), parse_scalar("d4 + d6", &ctx).unwrap())]);
        assert!(c.substitute(&b).unwrap().is_zero());
    }

    #[test]
    fn reciprocal_pairs_cancel() {
        let ctx = ScalarContext::builder()
            .params(&["d", "dinv"])
            .reciprocal("d", "dinv")
            .build()
            .unwrap();
        let s = parse_scalar("d^3*dinv^2 + dinv*d - 2", &ctx).unwrap();
        assert_eq!(s, parse_scalar("d - 1", &ctx).unwrap());
    }

    #[test]
    fn relations_must_be_univariate_of_degree_two() {
        assert!(ScalarContext::builder()
            .param("f")
            .relation("f", "f - 1")
            .build()
            .is_err());
        assert!(ScalarContext::builder()
            .param("f")
            .param("g")
            .relation("f", "f^2 - g")
            .build()
            .is_err());
        let ctx = ScalarContext::builder()
            .param("f")
            .relation("f", "2*f^2 - 2")
            .build()
            .unwrap();
        assert_eq!(ctx.relation_text(0).unwrap(), "f^2 - 1");
    }

    #[test]
    fn transfer_between_contexts() {
        let small = ScalarContext::new(&["a"]).unwrap();
        let big = ScalarContext::new(&["b", "a"]).unwrap();
        let s = parse_scalar("a^2 + 1/3", &small).unwrap();
        let t = s.transfer(&big).unwrap();
        assert_eq!(t, parse_scalar("a^2 + 1/3", &big).unwrap());
        let b = Scalar::param(&big, "b").unwrap();
        assert!(b.transfer(&small).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let ctx = ScalarContext::new(&["a", "b"]).unwrap();
        let s = parse_scalar("1 - b + 3/2*a*b - a^2", &ctx).unwrap();
        assert_eq!(s.to_string(), "-a^2 + 3/2*a*b - b + 1");
    }
}
