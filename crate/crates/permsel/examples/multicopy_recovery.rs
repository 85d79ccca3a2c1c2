//! Recovering almost all entanglement by stacking copies on the same molecules.
//!
//! A single two-pair ensemble loses a sizeable fraction of its two ebits to
//! the permutation constraint. But if `C` copies of the ensemble ride on the
//! *same* two molecules (as extra internal atoms), the twirl still acts only
//! on the molecular ordering — one shared permutation across all copies —
//! and the loss stops growing: of the `2C` nominal ebits, all but a single
//! ebit is recovered as `C → ∞`.
//!
//! Run with: `cargo run --example multicopy_recovery`

use permsel::entanglement::multicopy_recovery;

fn main() -> permsel::Result<()> {
    println!(
        "{:>4} {:>16} {:>10} {:>16} {:>14}",
        "C", "E_rec (ebits)", "nominal", "gap (ebits)", "loss per copy"
    );
    for copies in 1..=12u32 {
        let (recovered, nominal) = multicopy_recovery(copies)?;
        let gap = nominal - recovered;
        println!(
            "{copies:>4} {recovered:>16.10} {nominal:>10} {gap:>16.10} {:>14.10}",
            gap / f64::from(copies)
        );
    }
    println!();
    println!("The gap saturates at one ebit: a single copy pays the full price of");
    println!("the lost ordering, and every further copy is essentially free.");
    Ok(())
}
