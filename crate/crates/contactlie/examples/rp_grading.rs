//! The algebra r_p: dimension, graded basis and the grading check.

use contactlie::rp::{check_grading, gamma, r0p_basis, rp_basis, rp_dimension};
use contactlie::scalar::ScalarContext;

fn main() {
    let ctx = ScalarContext::empty();
    for p in 1..=4 {
        println!(
            "p = {p}: dim r_p = {}, dim r0_p = {}",
            rp_dimension(p),
            r0p_basis(p, &ctx).len()
        );
    }
    let p = 3;
    let labels: Vec<String> = gamma(p).iter().map(ToString::to_string).collect();
    println!("Gamma for p = {p}: {}", labels.join(" "));
    let basis = rp_basis(p, &ctx);
    println!("graded basis of r_{p}: {} elements", basis.len());
    let r = check_grading(p);
    println!("grading ok: {} ({} commutators)", r.ok, r.pairs_checked);
}
