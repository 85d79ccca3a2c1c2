//! Bound entanglement under the permutation rule, and two ways to free it.
//!
//! The bound pair state carries one ebit on paper, yet under the
//! permutation constraint no entanglement is operationally accessible — its
//! local twirl even stays positive under partial transposition, like a
//! separable state. The ebit is not gone, though:
//!
//! - *activation*: appending classical ordering labels on both sides and
//!   reading them out restores the full ebit in one shot;
//! - *distillation*: two copies carried by the same pair of molecules split
//!   under the twirl into biorthogonal branches, each a clean ebit.
//!
//! Run with: `cargo run --example activation_distillation`

use permsel::entanglement::constrained_entanglement_bruteforce;
use permsel::frames::{bound_pair_state, distillation_demo, shared_rf_state, SharedFrameKind};
use permsel::layout::Party;
use permsel::state::is_ppt;
use permsel::twirl::local_twirl;

fn main() -> permsel::Result<()> {
    // The bound pair state: a single ebit hidden behind the constraint.
    let psi = bound_pair_state()?;
    let constrained = constrained_entanglement_bruteforce(&psi)?;
    println!("bound pair state (dimension {}):", psi.dim());
    println!("  constrained entanglement = {:.12} ebits", constrained.total);

    // Its twirl is PPT — no distillable entanglement without outside help.
    let twirled = local_twirl(&psi.density())?;
    println!("  local twirl PPT? {}\n", is_ppt(&twirled, Party::A)?);

    // Activation: classical labels lift the constraint.
    let (before, after) = permsel::frames::activation_demo()?;
    println!("activation with classical ordering labels:");
    println!("  before labels: {before:.12} ebits");
    println!("  after reading the labels: {after:.12} ebits\n");

    // Distillation: two copies on the same molecules beat one copy twice.
    let (one_copy, two_copies) = distillation_demo()?;
    println!("two-copy distillation on the same molecules:");
    println!("  one copy alone: {one_copy:.12} ebits");
    println!("  two copies jointly: {two_copies:.12} ebits, weighted over the twirl branches\n");

    // A coherently shared quantum frame is also PPT after the twirl, even
    // though holding it enables the same activation — the frame carries its
    // power in permutation-invariant correlations, not in distillable
    // entanglement.
    let frame = shared_rf_state(2, SharedFrameKind::Pure)?;
    let effective = local_twirl(&frame)?;
    println!(
        "shared two-molecule quantum frame, after the twirl: PPT? {}",
        is_ppt(&effective, Party::A)?
    );
    Ok(())
}
