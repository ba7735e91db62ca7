//! Structural equations, contact coefficient and Reeb vector of so(3) + r(2)
//! in a Darboux basis.

use std::collections::BTreeMap;

use contactlie::exterior::{
    contact_coefficient, is_darboux, reeb_vector, structure_equations, KForm,
};
use contactlie::families::instantiate;

fn main() -> contactlie::Result<()> {
    let g = instantiate("example.so3-r2", None, &BTreeMap::new())?;
    for (k, dw) in structure_equations(&g).iter().enumerate() {
        println!("dw{} = {dw}", k + 1);
    }
    let w1 = KForm::omega(g.dim(), 1, g.ctx());
    println!("w1 ^ (dw1)^2 = {} vol", contact_coefficient(&g, &w1)?);
    println!("Darboux: {}", is_darboux(&g, 1));
    println!("Reeb vector: {}", reeb_vector(&g, &w1)?);
    Ok(())
}
