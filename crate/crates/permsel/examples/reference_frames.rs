//! Building a permutation reference frame out of the molecules themselves.
//!
//! A reference frame for molecular ordering is a token state whose `N!`
//! permuted versions are mutually distinguishable. Starting from a fiducial
//! product state of `N` qudits (dimension `d`), the permuted copies span a
//! frame whose quality is read off the Gram matrix: zero off-diagonal
//! overlap means the frame is perfect. Perfect frames need `d ≥ N`; for
//! `d < N` the antisymmetric-heavy irreps are missing from the pool and a
//! residual overlap remains.
//!
//! Run with: `cargo run --example reference_frames`

use permsel::frames::{classical_label_state, rf_gram};
use permsel::layout::Party;

fn main() -> permsel::Result<()> {
    // A deficient frame: three molecules but only qubit tokens.
    let family = rf_gram(3, 2)?;
    println!("frame from N = 3 fiducial qudits of dimension d = 2:");
    println!(
        "  normalizer D = {} (sum of included irrep dims squared; N! = 6 when perfect)",
        family.normalizer
    );
    println!("  irrep pool:");
    for entry in &family.pool {
        let tag = if entry.included { "included" } else { "missing" };
        println!(
            "    frame {} (dim {}, multiplicity {}): {tag}",
            entry.frame, entry.irrep_dim, entry.multiplicity
        );
    }
    println!(
        "  worst |⟨p|q⟩|² between distinct permuted states = {:.6}",
        family.max_off_diagonal_overlap_sq()
    );
    println!("  perfect? {}\n", family.is_perfect());

    // Raising the token dimension to d = N repairs the frame.
    let family = rf_gram(3, 3)?;
    println!("same three molecules with d = 3 tokens:");
    println!("  normalizer D = {}", family.normalizer);
    println!(
        "  worst |⟨p|q⟩|² = {:.3e}, perfect? {}\n",
        family.max_off_diagonal_overlap_sq(),
        family.is_perfect()
    );

    // The pattern holds across sizes: perfect exactly when d ≥ N.
    println!("{:>4} {:>4} {:>14} {:>9}", "N", "d", "worst overlap²", "perfect");
    for (n, d) in [(2usize, 2usize), (3, 2), (3, 3), (4, 3), (4, 4), (5, 5)] {
        let family = rf_gram(n, d)?;
        println!(
            "{n:>4} {d:>4} {:>14.6} {:>9}",
            family.max_off_diagonal_overlap_sq(),
            family.is_perfect()
        );
    }
    println!();

    // Classical label registers are the extreme case: one N-level atom per
    // molecule, so the permuted copies are orthogonal basis states.
    let label = classical_label_state(3, Party::A)?;
    println!(
        "a classical 3-molecule label register (one 3-level atom per molecule, \
         dimension {}) distinguishes all 3! = 6 orderings exactly",
        label.dim()
    );
    Ok(())
}
