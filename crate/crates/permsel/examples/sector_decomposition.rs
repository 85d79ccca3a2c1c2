//! Decompose an ensemble of `N` spin-1/2 molecules into total-spin sectors.
//!
//! Under the permutation superselection rule, `(C²)^⊗N` splits into blocks
//! labelled by a total spin `j`; the block for `j` appears with a
//! multiplicity `d_j` (the dimension of the matching two-row symmetric-group
//! irrep) and contributes `d_j · (2j + 1)` dimensions. This example prints
//! the table for several `N`, checks that the block dimensions add back up
//! to `2^N`, and shows the analogous bookkeeping at the irrep level.
//!
//! Run with: `cargo run --example sector_decomposition`

use permsel::sectors::{matrix_element_projectors, spin_sectors};
use permsel::young::YoungFrame;

fn main() -> permsel::Result<()> {
    for n in [2usize, 3, 4, 8] {
        let sectors = spin_sectors(n)?;
        println!("N = {n}: {} spin sectors", sectors.len());
        println!("  {:>5} {:>12} {:>8} {:>12}", "j", "mult d_j", "2j+1", "block dim");
        let mut total: u128 = 0;
        for s in &sectors {
            let orbital = (s.j.twice() + 1) as u128;
            let block = s.multiplicity * orbital;
            total += block;
            println!(
                "  {:>5} {:>12} {:>8} {:>12}",
                s.j.value(),
                s.multiplicity,
                orbital,
                block
            );
        }
        println!("  sum of block dims = {total} (expected 2^{n} = {})\n", 1u128 << n);
        assert_eq!(total, 1u128 << n, "sector dimensions must tile the full space");
    }

    // The same count from the symmetric-group side: over all Young frames of
    // S_n with at most d rows, (irrep dim) × (multiplicity of the irrep in
    // (C^d)^⊗n) adds up to d^n. The multiplicities come out of the canonical
    // matrix-element projectors.
    let (n, d) = (3usize, 2usize);
    println!("irrep-level bookkeeping for n = {n} qudits of dimension d = {d}:");
    let mut total: u128 = 0;
    for frame in YoungFrame::all(n) {
        let mep = matrix_element_projectors(n, d, &frame)?;
        let contribution = frame.hook_dimension()? * mep.multiplicity();
        total += contribution;
        println!(
            "  frame {frame}: irrep dim {} × multiplicity {} = {contribution}",
            frame.hook_dimension()?,
            mep.multiplicity()
        );
    }
    println!("  sum = {total} (expected d^n = {})", (d as u128).pow(n as u32));
    assert_eq!(total, (d as u128).pow(n as u32));
    Ok(())
}
