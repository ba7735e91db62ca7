//! Corrections applied to the printed tables. Each entry records the printed
//! fragment (transcribed into the row syntax of the catalog) next to the
//! corrected one; `check` rebuilds both variants.

use super::{family, frobenius_ext_5_y, table_algebra, Table};
use crate::error::Result;
use crate::exterior::check_d_squared;

/// Id of the auxiliary table written in the Y basis.
pub const FROBENIUS_EXT_Y: &str = "example.frobenius-ext-5.Y";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// The row dω_k.
    Row(usize),
    Constraints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub id: &'static str,
    pub p: Option<usize>,
    pub location: Location,
    pub printed: &'static str,
    /// One of `d2=0`, `darboux`, `eigenvalue-pairing`.
    pub tag: &'static str,
}

const fn row(
    id: &'static str,
    p: Option<usize>,
    k: usize,
    printed: &'static str,
    tag: &'static str,
) -> Erratum {
    Erratum {
        id,
        p,
        location: Location::Row(k),
        printed,
        tag,
    }
}

const SIGN9: &str = "-(lambda4-lambda6)*w1^w9 + (lambda4-lambda6)*w2^w9 + (-1-d8)*w3^w9";

pub fn errata() -> Vec<Erratum> {
    vec![
        row("dim5.H", None, 4, "c*w2^w3 + w2^w4 + g*w2^w5 - 1/2*w3^w5 + c*w4^w5 + w1^w5", "d2=0"),
        row("dim5.I", None, 5, "w2^w5", "d2=0"),
        row("dim5.K", None, 2, "e*w2^w3 + j*w3^w5", "d2=0"),
        row("dim5.K", None, 3, "f*w2^w3 + (1-e)*w3^w5", "d2=0"),
        row("dim5.K", None, 4, "g*w2^w5 + l*w3^w5 + w1^w5", "d2=0"),
        row("dim5.remark.a2-1", None, 4, "lambda4*w1^w4 - lambda4*w2^w4 + (-1-d4)*w3^w4", "d2=0"),
        row("dim5.remark.a2-1", None, 5, "lambda4*w1^w5 + lambda4*w2^w5 + (-1-d4)*w3^w5", "eigenvalue-pairing"),
        row("dim5.remark.a2-0", None, 4, "lambda4*w1^w4 - lambda4*w2^w4 + (-1-d4)*w3^w4", "d2=0"),
        row("dim5.remark.a2-0", None, 5, "lambda4*w1^w5 + lambda4*w2^w5 - d4*w3^w5", "eigenvalue-pairing"),
        row("rank-p-2.C", Some(4), 9, SIGN9, "eigenvalue-pairing"),
        row("rank-p-2.D", Some(4), 8, "(lambda4+lambda6)*w1^w8 + d8*w3^w8", "d2=0"),
        row(
            "rank-p-2.D",
            Some(4),
            9,
            "-(lambda4-lambda6)*w1^w9 - (lambda4-lambda6)*w2^w9 + (-1-d8)*w3^w9 + (alpha3-alpha2)*w5^w7",
            "eigenvalue-pairing",
        ),
        row("dim11.rank2.a", None, 9, SIGN9, "eigenvalue-pairing"),
        row("dim11.rank2.b", None, 9, SIGN9, "eigenvalue-pairing"),
        row(
            "dim11.rank2.b",
            None,
            5,
            "-lambda4*w1^w5 + lambda4*w2^w5 + (-1-d4)*w3^w5 + beta5*w5^w9",
            "d2=0",
        ),
        row("dim13.rank3.a", None, 9, SIGN9, "eigenvalue-pairing"),
        row("dim13.rank3.b", None, 9, SIGN9, "eigenvalue-pairing"),
        Erratum { id: "dim13.rank3.b", p: None, location: Location::Constraints, printed: "d8 := d4+d6", tag: "d2=0" },
        row("rank-p-2.C.core", None, 1, "w1^w2 + w3^w4 + w7^w8", "d2=0"),
        row(FROBENIUS_EXT_Y, None, 3, "-1/2*w2^w3 - a1*w1^w3 - a3*w1^w4", "d2=0"),
        row(FROBENIUS_EXT_Y, None, 4, "-1/2*w2^w4 + a2*w1^w4 - a1*w1^w5", "d2=0"),
    ]
}

fn base_table(id: &str, p: Option<usize>) -> Result<Table> {
    if id == FROBENIUS_EXT_Y {
        return Ok(frobenius_ext_5_y(2));
    }
    family(id)?.table(p)
}

fn format_constraints(c: &[(String, String)]) -> String {
    c.iter()
        .map(|(n, e)| format!("{n} := {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn parse_constraints(text: &str) -> Vec<(String, String)> {
    text.split(';')
        .filter_map(|c| c.split_once(":="))
        .map(|(n, e)| (n.trim().to_string(), e.trim().to_string()))
        .collect()
}

impl Erratum {
    pub fn corrected_table(&self) -> Result<Table> {
        base_table(self.id, self.p)
    }

    /// The corrected table with only this entry reverted to print.
    pub fn printed_table(&self) -> Result<Table> {
        let t = self.corrected_table()?;
        Ok(match self.location {
            Location::Row(k) => t.with_row(k, self.printed),
            Location::Constraints => Table {
                constraints: parse_constraints(self.printed),
                ..t
            },
        })
    }

    pub fn corrected(&self) -> Result<String> {
        let t = self.corrected_table()?;
        Ok(match self.location {
            Location::Row(k) => t.row(k).to_string(),
            Location::Constraints => format_constraints(&t.constraints),
        })
    }

    pub fn location_text(&self) -> String {
        match self.location {
            Location::Row(k) => format!("dw{k}"),
            Location::Constraints => "constraints".to_string(),
        }
    }

    /// (printed fails d²=0, corrected satisfies d²=0).
    pub fn check(&self) -> Result<(bool, bool)> {
        let d2 = |t: &Table| -> Result<bool> { Ok(check_d_squared(&table_algebra(t)?).ok) };
        Ok((!d2(&self.printed_table()?)?, d2(&self.corrected_table()?)?))
    }
}

/// Tab-separated errata file: id, location, printed, corrected, tag.
pub fn errata_tsv() -> Result<String> {
    let mut out = String::from("id\tlocation\tprinted\tcorrected\ttag\n");
    for e in errata() {
        let id = match e.p {
            Some(p) => format!("{} (p={p})", e.id),
            None => e.id.to_string(),
        };
        out.push_str(&format!(
            "{id}\t{}\t{}\t{}\t{}\n",
            e.location_text(),
            e.printed,
            e.corrected()?,
            e.tag
        ));
    }
    Ok(out)
}
