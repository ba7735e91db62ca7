//! Catalog of classified contact Lie algebra families, with instantiation
//! and a verifier that runs the full battery of checks on each member.

mod catalog;
pub mod errata;
mod verify;

use std::collections::BTreeMap;

use crate::compat::{decompose_contact, root_data};
use crate::error::{Error, Result};
use crate::exterior::{bracket_from_equations, parse_two_form, KForm};
use crate::liealg::LieAlgebra;
use crate::scalar::{parse_scalar, Ctx, Rational, Scalar, ScalarContext};

pub use catalog::frobenius_ext_5_y;
pub use verify::{verify_family, CheckResult, CheckStatus, Mode, VerificationReport, SAMPLES};

/// A family's structural equations together with everything needed to
/// instantiate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub dim: usize,
    /// Basis labels when they differ from e1..en.
    pub labels: Option<Vec<String>>,
    pub params: Vec<String>,
    /// (parameter, monic univariate relation).
    pub relations: Vec<(String, String)>,
    /// Pairs (a, b) with a·b = 1.
    pub reciprocals: Vec<(String, String)>,
    /// (parameter, expression): the parameter is eliminated by substitution.
    pub constraints: Vec<(String, String)>,
    /// (expression, hypothesis text): the expression must not vanish.
    pub nonzero: Vec<(String, String)>,
    /// (k, dω_k); rows not listed are zero.
    pub rows: Vec<(usize, String)>,
    /// Whether ω₁ is a Darboux contact form.
    pub contact: bool,
    /// Whether span(e1+e2, e3, …, en) is a frobeniusian ideal.
    pub frobenius_quotient: bool,
    /// The rank claimed for a diagonal family.
    pub declared_rank: Option<usize>,
}

impl Table {
    pub fn contact(dim: usize, rows: Vec<(usize, String)>) -> Self {
        Table {
            dim,
            labels: None,
            params: vec![],
            relations: vec![],
            reciprocals: vec![],
            constraints: vec![],
            nonzero: vec![],
            rows,
            contact: true,
            frobenius_quotient: false,
            declared_rank: None,
        }
    }

    /// Context over every declared parameter, constrained ones included.
    pub fn full_context(&self) -> Result<Ctx> {
        let mut b = ScalarContext::builder().params(&self.params);
        for (name, rel) in &self.relations {
            b = b.relation(name, rel);
        }
        for (a, c) in &self.reciprocals {
            b = b.reciprocal(a, c);
        }
        b.build()
    }

    /// Replaces row `k` by `text`; used to rebuild printed variants.
    pub fn with_row(mut self, k: usize, text: &str) -> Self {
        match self.rows.iter_mut().find(|(r, _)| *r == k) {
            Some(row) => row.1 = text.to_string(),
            None => self.rows.push((k, text.to_string())),
        }
        self
    }

    /// The row text for dω_k, `0` when absent.
    pub fn row(&self, k: usize) -> &str {
        self.rows
            .iter()
            .find(|(r, _)| *r == k)
            .map_or("0", |(_, t)| t.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimSpec {
    Fixed(usize),
    /// Dimension 2p+1 for p ≥ min_p.
    Odd {
        min_p: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct FamilySpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub dim: DimSpec,
    pub build: fn(usize) -> Table,
}

impl FamilySpec {
    /// Resolves p: generic families need it, fixed ones accept only their own.
    pub fn resolve_p(&self, p: Option<usize>) -> Result<usize> {
        match (self.dim, p) {
            (DimSpec::Odd { min_p }, Some(p)) if p >= min_p => Ok(p),
            (DimSpec::Odd { min_p }, Some(p)) => Err(Error::Hypothesis(format!(
                "family `{}` needs p >= {min_p}, got {p}",
                self.id
            ))),
            (DimSpec::Odd { .. }, None) => Err(Error::MissingP(self.id.to_string())),
            (DimSpec::Fixed(n), Some(p)) if 2 * p + 1 != n && 2 * p != n => {
                Err(Error::Invalid(format!(
                    "family `{}` has fixed dimension {n}; p = {p} does not match",
                    self.id
                )))
            }
            (DimSpec::Fixed(n), _) => Ok(n / 2),
        }
    }

    pub fn table(&self, p: Option<usize>) -> Result<Table> {
        let p = self.resolve_p(p)?;
        Ok((self.build)(p))
    }
}

/// Every catalogued family, in catalog order.
pub fn list_families() -> &'static [FamilySpec] {
    catalog::CATALOG
}

pub fn family(id: &str) -> Result<&'static FamilySpec> {
    list_families()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// A table instantiated at some bindings.
#[derive(Debug, Clone)]
pub struct Instance {
    pub algebra: LieAlgebra,
    /// Structural equations dω_1 … dω_n in the reduced context.
    pub equations: Vec<KForm>,
    /// Every eliminated parameter with its value in the reduced context.
    pub resolved: BTreeMap<String, Scalar>,
}

fn eval_univariate(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::from_integer(0.into()), |acc, c| acc * x + c)
}

/// Applies bindings and constraints, checks relations and hypotheses, and
/// builds the algebra over the remaining parameters.
pub fn instantiate_table(table: &Table, bindings: &BTreeMap<String, String>) -> Result<Instance> {
    instantiate_inner(table, bindings, true)
}

/// The algebra of a table with constraints substituted and no hypothesis
/// guards; printed variants of corrected tables are built this way.
pub fn table_algebra(table: &Table) -> Result<LieAlgebra> {
    Ok(instantiate_inner(table, &BTreeMap::new(), false)?.algebra)
}

fn instantiate_inner(
    table: &Table,
    bindings: &BTreeMap<String, String>,
    guard: bool,
) -> Result<Instance> {
    let full = table.full_context()?;
    let mut bound: BTreeMap<String, Scalar> = BTreeMap::new();
    for (name, text) in bindings {
        let i = full
            .index_of(name)
            .ok_or_else(|| Error::UnknownParam(name.clone()))?;
        let v = parse_scalar(text, &full)?;
        if let Some(rel) = full.relation(i) {
            let r = v.to_rational().ok_or_else(|| {
                Error::Invalid(format!(
                    "`{name}` carries a relation and must be bound to a number"
                ))
            })?;
            if eval_univariate(rel, &r) != Rational::from_integer(0.into()) {
                return Err(Error::Hypothesis(format!(
                    "{name} = {text} violates the relation {} = 0",
                    full.relation_text(i).unwrap_or_default()
                )));
            }
        }
        if let Some(j) = full.reciprocal_of(i) {
            let r = v.to_rational().ok_or_else(|| {
                Error::Invalid(format!(
                    "`{name}` has a reciprocal partner and must be bound to a number"
                ))
            })?;
            if r == Rational::from_integer(0.into()) {
                return Err(Error::Hypothesis(format!("{name} must be invertible")));
            }
            let partner = &full.params()[j];
            let inv = Scalar::constant(&full, num_traits::Inv::inv(r));
            if let Some(prev) = bound.get(partner) {
                if *prev != inv {
                    return Err(Error::Hypothesis(format!(
                        "{name} * {partner} = 1 is violated"
                    )));
                }
            }
            bound.insert(partner.clone(), inv);
        }
        if let Some(prev) = bound.get(name) {
            if *prev != v {
                return Err(Error::Hypothesis(format!(
                    "{name} * its reciprocal = 1 is violated"
                )));
            }
        }
        bound.insert(name.clone(), v);
    }
    // constraints are stated in terms of unconstrained parameters
    let mut eliminated = BTreeMap::new();
    for (name, expr) in &table.constraints {
        let v = parse_scalar(expr, &full)?.substitute(&bound)?;
        if let Some(given) = bound.get(name) {
            if given.substitute(&bound)? != v {
                return Err(Error::Hypothesis(format!(
                    "binding of {name} violates the constraint {name} = {expr}"
                )));
            }
        }
        eliminated.insert(name.clone(), v);
    }
    let mut all = bound.clone();
    all.extend(eliminated.clone());
    for (expr, text) in table.nonzero.iter().filter(|_| guard) {
        if parse_scalar(expr, &full)?.substitute(&all)?.is_zero() {
            return Err(Error::Hypothesis(format!(
                "hypothesis `{text}` is violated"
            )));
        }
    }

    let remaining: Vec<&String> = table
        .params
        .iter()
        .filter(|p| !all.contains_key(*p))
        .collect();
    let mut b = ScalarContext::builder().params(&remaining);
    for (name, rel) in &table.relations {
        if !all.contains_key(name) {
            b = b.relation(name, rel);
        }
    }
    for (x, y) in &table.reciprocals {
        if !all.contains_key(x) && !all.contains_key(y) {
            b = b.reciprocal(x, y);
        }
    }
    let ctx = b.build()?;
    let reduce = |s: &Scalar| -> Result<Scalar> { s.substitute(&all)?.transfer(&ctx) };

    let mut rows = Vec::new();
    for (k, text) in &table.rows {
        let form = parse_two_form(text, table.dim, &full)?;
        rows.push((*k, form.map(&ctx, reduce)?));
    }
    let bracket = bracket_from_equations(table.dim, &ctx, &rows)?;
    let mut algebra = LieAlgebra::unchecked(bracket);
    if let Some(labels) = &table.labels {
        algebra = algebra.with_labels(labels.clone())?;
    }
    let equations = crate::exterior::structure_equations(&algebra);
    let mut resolved = BTreeMap::new();
    for (name, v) in &all {
        resolved.insert(name.clone(), reduce(v)?);
    }
    if guard && table.declared_rank.is_some() && table.contact {
        // standing hypotheses of the diagonal classification
        if let Some(spec) = decompose_contact(&algebra, 1).ok().and_then(|d| d.spectrum) {
            root_data(&spec)?;
        }
    }
    Ok(Instance {
        algebra,
        equations,
        resolved,
    })
}

/// Instantiates a catalogued family. Bindings map parameter names to
/// expressions; constraints are substituted automatically.
pub fn instantiate(
    id: &str,
    p: Option<usize>,
    bindings: &BTreeMap<String, String>,
) -> Result<LieAlgebra> {
    let table = family(id)?.table(p)?;
    Ok(instantiate_table(&table, bindings)?.algebra)
}

#[cfg(test)]
mod tests;
