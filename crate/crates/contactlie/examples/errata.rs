//! Prints every corrected catalog row with its printed form and shows that
//! only the corrected one satisfies d^2 = 0.

use contactlie::families::errata::errata;

fn main() -> contactlie::Result<()> {
    for e in errata() {
        let (printed_fails, corrected_ok) = e.check()?;
        println!("{} {} [{}]", e.id, e.location_text(), e.tag);
        println!("  printed:   {}", e.printed);
        println!("  corrected: {}", e.corrected()?);
        println!("  printed fails d^2=0: {printed_fails}, corrected passes: {corrected_ok}");
    }
    Ok(())
}
