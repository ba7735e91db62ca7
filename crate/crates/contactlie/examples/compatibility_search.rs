//! Decides whether a pair (mu0, phi2) extends to a 2-compatible structure,
//! on an example where it cannot.

use contactlie::compat::{search_phi1, Phi1Search};
use contactlie::multilinear::{coboundary2, Cochain2};
use contactlie::scalar::{Scalar, ScalarContext};

fn main() -> contactlie::Result<()> {
    let ctx = ScalarContext::empty();
    let one = Scalar::one(&ctx);
    let mut mu0 = Cochain2::new(3, &ctx);
    mu0.set(1, 2, 1, one.clone());
    let mut phi = Cochain2::new(3, &ctx);
    phi.set(1, 2, 3, one.clone());
    phi.set(1, 3, 1, -one.clone());
    phi.set(2, 3, 2, one);

    let delta = coboundary2(&mu0, &phi)?;
    println!("delta_mu0 phi (e1,e2,e3) = {}", delta.eval_basis(1, 2, 3));
    match search_phi1(&mu0, &phi)? {
        Phi1Search::Found(phi1) => println!("phi1 =\n{phi1}"),
        Phi1Search::Infeasible { cocycle_dim, triple, component, value } => println!(
            "no phi1: on the {cocycle_dim}-dim cocycle space the e{component} component at {triple:?} is the constant {value}"
        ),
        Phi1Search::Undecided { cocycle_dim } => println!("undecided ({cocycle_dim} unknowns)"),
    }
    Ok(())
}
