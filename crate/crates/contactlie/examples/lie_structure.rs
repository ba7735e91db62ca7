//! Builds a Lie algebra from its structural equations and inspects it:
//! Jacobi identity, center and lower central series.

use contactlie::exterior::{bracket_from_equations, parse_two_form};
use contactlie::liealg::{center, check_jacobi, is_nilpotent, lower_central_series, LieAlgebra};
use contactlie::scalar::ScalarContext;

fn main() -> contactlie::Result<()> {
    let ctx = ScalarContext::empty();
    // 5-dimensional filiform algebra
    let rows = [(3, "w1^w2"), (4, "w1^w3"), (5, "w1^w4 + w2^w3")];
    let rows: Vec<_> = rows
        .iter()
        .map(|(k, t)| Ok((*k, parse_two_form(t, 5, &ctx)?)))
        .collect::<contactlie::Result<_>>()?;
    let g = LieAlgebra::new(bracket_from_equations(5, &ctx, &rows)?)?;

    println!("Jacobi holds: {}", check_jacobi(g.bracket()).ok);
    println!("center has dimension {}", center(&g)?.dim());
    let dims: Vec<usize> = lower_central_series(&g, &[])?
        .iter()
        .map(|s| s.dim())
        .collect();
    println!("lower central series dimensions: {dims:?}");
    println!("nilpotent: {}", is_nilpotent(&g, &[])?);
    Ok(())
}
