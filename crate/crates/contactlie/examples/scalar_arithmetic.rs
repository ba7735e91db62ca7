//! Exact arithmetic over Q[params] with a quadratic relation and a
//! reciprocal pair.

use contactlie::scalar::{parse_scalar, ScalarContext};

fn main() -> contactlie::Result<()> {
    let ctx = ScalarContext::builder()
        .params(&["f", "d", "dinv", "t"])
        .relation("f", "f^2 - f - 1")
        .reciprocal("d", "dinv")
        .build()?;

    let phi = parse_scalar("f", &ctx)?;
    println!("f^2       = {}", phi.pow(2));
    println!("f^5       = {}", phi.pow(5));
    let x = parse_scalar("d*dinv*t + (t - 1)^2", &ctx)?;
    println!("d*dinv*t + (t-1)^2 = {x}");
    let q = parse_scalar("1/2*t^2 - 3/4", &ctx)?;
    println!("(1/2 t^2 - 3/4) * f = {}", q.try_mul(&phi)?);
    Ok(())
}
