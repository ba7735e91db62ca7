//! Splits a contact algebra as mu0 + phi1 + phi2 around the Heisenberg
//! bracket and checks the 2-compatibility equations.

use std::collections::BTreeMap;

use contactlie::compat::{check_f_membership, compute_rank, decompose_contact, verify_full_system};
use contactlie::families::instantiate;

fn main() -> contactlie::Result<()> {
    let mut b = BTreeMap::new();
    b.insert("lambda4".to_string(), "1".to_string());
    b.insert("lambda6".to_string(), "2".to_string());
    let g = instantiate("maxrank.2p+1", Some(3), &b)?;
    let d = decompose_contact(&g, 1)?;
    println!("phi1 =\n{}", d.base.phi1);
    println!("phi2 =\n{}", d.base.phi2);
    println!("f =\n{}", d.f);

    let report = verify_full_system(&d.base)?;
    for r in &report.residuals {
        println!("{:<4} zero: {}", r.name, r.value.is_zero());
    }
    println!("f in r_p pattern: {}", check_f_membership(&d.f, d.p)?.ok);
    println!("rank: {}", compute_rank(&d)?.rank);
    Ok(())
}
