//! Lists the family catalog and verifies a few entries symbolically and by
//! sampling.

use contactlie::families::{list_families, verify_family, Mode};

fn main() -> contactlie::Result<()> {
    for f in list_families() {
        println!("{:<26} {}", f.id, f.summary);
    }
    for id in ["dim5.F", "rank-p-2.C"] {
        let report = verify_family(id, None, Mode::Symbolic, 0)?;
        println!("\n{report}");
    }
    let sampled = verify_family("dim11.rank2.b", None, Mode::Sampled, 42)?;
    println!("\n{sampled}");
    Ok(())
}
