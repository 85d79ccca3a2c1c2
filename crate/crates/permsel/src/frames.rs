//! Permutation reference frames: states that encode a molecule ordering,
//! the diagnostics that tell a perfect frame from a partial one, and the
//! activation/distillation demonstrations they enable.
//!
//! A party holding a frame state can condition on it and thereby undo the
//! twirl that the superselection rule otherwise imposes. A *perfect* frame
//! is a fiducial vector `|p₀⟩` whose permuted copies `T(p)|p₀⟩` are
//! mutually orthogonal — the Gram matrix of the family is the identity.
//! Two constructions are provided: classical label registers
//! ([`classical_label_state`], dimension `N` per molecule, trivially
//! perfect) and the minimal construction
//! `|p₀⟩ = Σ_{y∈Ȳ} Σ_i √(D_y/D) |y, i, i⟩` over Young frames with enough
//! multiplicity ([`rf_fiducial_state`]), which is perfect exactly when
//! every frame of `N` boxes fits, i.e. when `d ≥ N`.

use num_complex::Complex64;

use crate::entanglement::{constrained_entanglement_bruteforce, pure_entanglement};
use crate::layout::{Atom, EnsembleLayout, Party, Scope};
use crate::perm::{apply_index_map, permutation_index_map, Permutation};
use crate::sectors::{matrix_element_projectors, swap_sector_projectors};
use crate::state::{
    entropy_bits, partial_trace, zip_compose, CMat, CVec, DensityOperator, StateVector,
};
use crate::twirl::local_twirl;
use crate::young::YoungFrame;
use crate::{Error, Result};

/// Cap on `N` for classical label frames (dimension `N^N`).
pub const LABEL_FRAME_MAX_N: usize = 6;
/// Cap on `N` for the minimal fiducial construction (group-sum budget).
pub const FIDUCIAL_MAX_N: usize = 5;
/// Cap on the atom dimension `d` of the fiducial construction.
pub const FIDUCIAL_MAX_D: usize = 6;
/// Cap on `N` for shared frame states (the label realization squares the
/// dimension, so the global dimension cap bites first at `N = 4`).
pub const SHARED_FRAME_MAX_N: usize = 4;
/// Off-diagonal Gram weight below which a frame counts as perfect.
pub const PERFECT_FRAME_TOL: f64 = 1e-9;

/// Whether a shared frame is held coherently or as a classical mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharedFrameKind {
    /// `(1/√N!) Σ_p |p⟩_A |p⟩_B`, held in superposition.
    Pure,
    /// `(1/N!) Σ_p |p⟩⟨p|_A ⊗ |p⟩⟨p|_B`, a separable classical correlation.
    Mixed,
}

/// One Young frame's role in a fiducial state: its irrep dimension `D_y`,
/// its multiplicity in `(ℂ_d)^{⊗N}`, and whether the construction could
/// include it (`multiplicity ≥ D_y`).
#[derive(Debug, Clone)]
pub struct FramePoolEntry {
    pub frame: YoungFrame,
    pub irrep_dim: u128,
    pub multiplicity: u128,
    pub included: bool,
}

/// A fiducial frame state together with its `N!` permuted copies and their
/// Gram matrix — everything needed to judge how good the frame is.
#[derive(Debug, Clone)]
pub struct FrameFamily {
    /// The fiducial vector `|p₀⟩`.
    pub fiducial: StateVector,
    /// `T(p)|p₀⟩` for every `p`, in enumeration order.
    pub states: Vec<StateVector>,
    /// Overlaps `⟨p_r|p_c⟩`; Hermitian with unit diagonal.
    pub gram: CMat,
    /// Every Young frame of `N` boxes with its inclusion verdict.
    pub pool: Vec<FramePoolEntry>,
    /// `D = Σ_{y∈Ȳ} D_y²`, the normalization of the fiducial state.
    pub normalizer: u128,
}

impl FrameFamily {
    /// Largest squared overlap `|⟨p_r|p_c⟩|²` off the Gram diagonal.
    pub fn max_off_diagonal_overlap_sq(&self) -> f64 {
        let mut max = 0.0f64;
        let n = self.gram.nrows();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    max = max.max(self.gram[(r, c)].norm_sqr());
                }
            }
        }
        max
    }

    /// True when every off-diagonal squared overlap is below
    /// [`PERFECT_FRAME_TOL`] — the permuted copies are orthogonal and the
    /// frame distinguishes all `N!` orderings.
    pub fn is_perfect(&self) -> bool {
        self.max_off_diagonal_overlap_sq() < PERFECT_FRAME_TOL
    }
}

/// The classical ordering register `|0, 1, …, N-1⟩`: one label atom of
/// dimension `N` per molecule, molecule `m` carrying label `m`.
pub fn classical_label_state(n: usize, party: Party) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::Validation("label frame needs at least one molecule".into()));
    }
    if n > LABEL_FRAME_MAX_N {
        return Err(Error::Budget(format!(
            "label frame capped at N = {LABEL_FRAME_MAX_N} (dimension N^N), got N = {n}"
        )));
    }
    let layout = EnsembleLayout::new(n, vec![Atom::new(n, party)])?;
    let digits: Vec<usize> = (0..n).collect();
    StateVector::basis_state(layout, &digits)
}

/// Build the minimal fiducial frame state on `N` molecules of one
/// `d`-dimensional atom, returning the frame pool and normalizer with it.
fn build_fiducial(n: usize, d: usize) -> Result<(StateVector, Vec<FramePoolEntry>, u128)> {
    if n == 0 || d == 0 {
        return Err(Error::Validation("fiducial frame needs N ≥ 1 and d ≥ 1".into()));
    }
    if n > FIDUCIAL_MAX_N || d > FIDUCIAL_MAX_D {
        return Err(Error::Budget(format!(
            "fiducial construction capped at N ≤ {FIDUCIAL_MAX_N}, d ≤ {FIDUCIAL_MAX_D}, \
             got N = {n}, d = {d}"
        )));
    }
    let layout = EnsembleLayout::uniform(n, d)?;
    let dim = layout.total_dim();

    // First pass: which frames carry enough multiplicity to contribute.
    let mut pool = Vec::new();
    let mut meps = Vec::new();
    for frame in YoungFrame::all(n) {
        let mep = matrix_element_projectors(n, d, &frame)?;
        let irrep_dim = mep.irrep_dim() as u128;
        let multiplicity = mep.multiplicity();
        let included = multiplicity >= irrep_dim;
        pool.push(FramePoolEntry { frame, irrep_dim, multiplicity, included });
        meps.push(mep);
    }
    let normalizer: u128 = pool
        .iter()
        .filter(|e| e.included)
        .map(|e| e.irrep_dim * e.irrep_dim)
        .sum();
    if normalizer == 0 {
        return Err(Error::Validation(format!(
            "no Young frame of {n} boxes fits in d = {d} with enough multiplicity"
        )));
    }

    // Second pass: |p₀⟩ = Σ_y √(D_y/D) Σ_i |y, i, i⟩, with the multiplicity
    // basis |y, 0, q⟩ fixed by Gram–Schmidt over the images P^y_{00}|e_t⟩ of
    // computational basis vectors in index order, and |y, i, q⟩ = P^y_{i0}|y, 0, q⟩.
    let mut amps = CVec::zeros(dim);
    for (entry, mep) in pool.iter().zip(&meps) {
        if !entry.included {
            continue;
        }
        let d_y = entry.irrep_dim as usize;
        let weight = Complex64::from((entry.irrep_dim as f64 / normalizer as f64).sqrt());
        let mut basis: Vec<CVec> = Vec::with_capacity(d_y);
        for t in 0..dim {
            if basis.len() == d_y {
                break;
            }
            let mut probe = CVec::zeros(dim);
            probe[t] = Complex64::ONE;
            let mut v = mep.apply(0, 0, &probe);
            for _ in 0..2 {
                for b in basis.iter() {
                    let overlap = b.dotc(&v);
                    v -= b * overlap;
                }
            }
            let norm = v.norm();
            if norm > 1e-6 {
                basis.push(v.unscale(norm));
            }
        }
        if basis.len() < d_y {
            return Err(Error::Numerics(format!(
                "found only {} of {d_y} multiplicity vectors for frame {}",
                basis.len(),
                entry.frame
            )));
        }
        for (i, q_vec) in basis.iter().enumerate() {
            amps += mep.apply(i, 0, q_vec) * weight;
        }
    }
    let state = StateVector::from_amplitudes(layout, amps.iter().copied().collect())?;
    Ok((state, pool, normalizer))
}

/// The minimal fiducial frame state `|p₀⟩` on `N` molecules of dimension `d`.
pub fn rf_fiducial_state(n: usize, d: usize) -> Result<StateVector> {
    build_fiducial(n, d).map(|(state, _, _)| state)
}

/// Build the full frame family: `|p₀⟩`, all `N!` permuted copies, and
/// their Gram matrix.
pub fn rf_gram(n: usize, d: usize) -> Result<FrameFamily> {
    let (fiducial, pool, normalizer) = build_fiducial(n, d)?;
    let layout = fiducial.layout().clone();
    let perms = Permutation::all(n);
    let mut states = Vec::with_capacity(perms.len());
    for p in &perms {
        let map = permutation_index_map(&layout, p, Scope::Global)?;
        let amps = apply_index_map(&map, fiducial.amps());
        states.push(StateVector::from_amplitudes(layout.clone(), amps.iter().copied().collect())?);
    }
    let gram = CMat::from_fn(perms.len(), perms.len(), |r, c| states[r].inner(&states[c]));
    Ok(FrameFamily { fiducial, states, gram, pool, normalizer })
}

/// Layout of a shared frame: `N` molecules, each carrying one `N`-level
/// label atom per party.
fn shared_frame_layout(n: usize) -> Result<EnsembleLayout> {
    EnsembleLayout::new(n, vec![Atom::new(n, Party::A), Atom::new(n, Party::B)])
}

/// The coherent shared frame `(1/√N!) Σ_p |p⟩_A |p⟩_B` in the label
/// realization: both parties' registers name the same ordering, in
/// superposition over all orderings.
pub fn shared_rf_pure_vector(n: usize) -> Result<StateVector> {
    if !(2..=SHARED_FRAME_MAX_N).contains(&n) {
        return Err(Error::Validation(format!(
            "shared frames are defined for 2 ≤ N ≤ {SHARED_FRAME_MAX_N}, got N = {n}"
        )));
    }
    let layout = shared_frame_layout(n)?;
    let scale = Complex64::from(1.0 / (Permutation::all(n).len() as f64).sqrt());
    let mut amps = vec![Complex64::ZERO; layout.total_dim()];
    for p in Permutation::all(n) {
        let inv = p.inverse();
        let mut digits = Vec::with_capacity(2 * n);
        for mol in 0..n {
            let label = inv.apply(mol);
            digits.push(label);
            digits.push(label);
        }
        amps[layout.index_of(&digits)] += scale;
    }
    StateVector::from_amplitudes(layout, amps)
}

/// A shared reference frame for `N` molecules, pure or mixed.
pub fn shared_rf_state(n: usize, kind: SharedFrameKind) -> Result<DensityOperator> {
    match kind {
        SharedFrameKind::Pure => Ok(shared_rf_pure_vector(n)?.density()),
        SharedFrameKind::Mixed => {
            if !(2..=SHARED_FRAME_MAX_N).contains(&n) {
                return Err(Error::Validation(format!(
                    "shared frames are defined for 2 ≤ N ≤ {SHARED_FRAME_MAX_N}, got N = {n}"
                )));
            }
            let layout = shared_frame_layout(n)?;
            let perms = Permutation::all(n);
            let weight = 1.0 / perms.len() as f64;
            let mut components = Vec::with_capacity(perms.len());
            for p in perms {
                let inv = p.inverse();
                let mut digits = Vec::with_capacity(2 * n);
                for mol in 0..n {
                    let label = inv.apply(mol);
                    digits.push(label);
                    digits.push(label);
                }
                components.push((weight, StateVector::basis_state(layout.clone(), &digits)?));
            }
            DensityOperator::mixture(&components)
        }
    }
}

/// The two-pair state `(|+⟩_A|−⟩_B + |−⟩_A|+⟩_B)/√2` with
/// `|±⟩ = (|↑↓⟩ ± |↓↑⟩)/√2` across the two molecules: each party's share
/// sits in a definite exchange sector, so the local twirl leaves the state
/// separable, yet the underlying pure state carries one full ebit.
pub fn bound_pair_state() -> Result<StateVector> {
    let layout = EnsembleLayout::qubit_pairs(2)?;
    let dim = layout.total_dim();
    let mut amps = vec![Complex64::ZERO; dim];
    // (|+−⟩ + |−+⟩)/√2 expanded over (a₁, b₁, a₂, b₂) digits: amplitudes
    // ±1/(2√2) on the eight basis states with one ↑ per party.
    let scale = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    for (a1, a2, sa) in [(0, 1, 1.0), (1, 0, 1.0)] {
        for (b1, b2, sb) in [(0, 1, 1.0), (1, 0, -1.0)] {
            // |+⟩_A|−⟩_B term and the A↔B-swapped |−⟩_A|+⟩_B term.
            amps[layout.index_of(&[a1, b1, a2, b2])] += Complex64::from(scale * sa * sb);
            amps[layout.index_of(&[b1, a1, b2, a2])] += Complex64::from(scale * sa * sb);
        }
    }
    StateVector::from_amplitudes(layout, amps)
}

/// Activation: the bound pair state alone has no constrained entanglement,
/// but measuring an appended pair of classical label frames lifts the
/// constraint and exposes the full ebit.
///
/// Returns `(E_before, E_after)`: the constrained entanglement of the bare
/// state, and the expected pure entanglement after both parties append
/// `|p₀⟩` label registers and read them out.
pub fn activation_demo() -> Result<(f64, f64)> {
    let psi = bound_pair_state()?;
    let before = constrained_entanglement_bruteforce(&psi)?.total;

    let labels_a = classical_label_state(2, Party::A)?;
    let labels_b = classical_label_state(2, Party::B)?;
    let joint = zip_compose(&[&psi, &labels_a, &labels_b])?;
    let layout = joint.layout().clone();
    // Label atoms sit at per-molecule positions 2 (A) and 3 (B).
    let label_slots = [
        layout.slot_of(0, 2),
        layout.slot_of(0, 3),
        layout.slot_of(1, 2),
        layout.slot_of(1, 3),
    ];
    let mut after = 0.0;
    for p in Permutation::all(2) {
        for q in Permutation::all(2) {
            let inv_p = p.inverse();
            let inv_q = q.inverse();
            let digits =
                [inv_p.apply(0), inv_q.apply(0), inv_p.apply(1), inv_q.apply(1)];
            let projector = label_projector(&layout, &label_slots, &digits)?;
            let (weight, conditioned) = match joint.project(&projector) {
                Ok(pair) => pair,
                Err(Error::Numerics(_)) => continue, // zero-weight outcome
                Err(e) => return Err(e),
            };
            after += weight * pure_entanglement(&conditioned)?;
        }
    }
    Ok((before, after))
}

/// Projector onto fixed digits of the given slots, identity elsewhere.
fn label_projector(
    layout: &EnsembleLayout,
    slots: &[usize],
    digits: &[usize],
) -> Result<CMat> {
    let sub_dim: usize = slots.iter().map(|&s| layout.slot_dim(s)).product();
    let mut sub = CMat::zeros(sub_dim, sub_dim);
    let idx = layout.pack_sub_index(slots, digits);
    sub[(idx, idx)] = Complex64::ONE;
    crate::state::embed_on_slots(layout, slots, &sub)
}

/// Two-copy distillation: one copy of the bound pair state yields nothing,
/// but two copies — carried by the *same* two molecules as extra atoms —
/// split under the local twirl into two biorthogonal pure components, each
/// a full ebit.
///
/// Returns `(E_one_copy, E_two_copies)`.
pub fn distillation_demo() -> Result<(f64, f64)> {
    let psi = bound_pair_state()?;
    let one_copy = constrained_entanglement_bruteforce(&psi)?.total;

    let doubled = zip_compose(&[&psi, &psi])?;
    let layout = doubled.layout().clone();
    let rho = local_twirl(&doubled.density())?;
    let (sym_a, anti_a) = swap_sector_projectors(&layout, Scope::A)?;
    let (sym_b, anti_b) = swap_sector_projectors(&layout, Scope::B)?;
    let mut two_copies = 0.0;
    for pa in [&sym_a, &anti_a] {
        for pb in [&sym_b, &anti_b] {
            let block = pa * pb * rho.mat() * pb * pa;
            let weight = block.diagonal().iter().map(|z| z.re).sum::<f64>();
            if weight < 1e-12 {
                continue;
            }
            let component = DensityOperator::from_matrix(layout.clone(), block.unscale(weight))?;
            let purity = component.purity();
            if (purity - 1.0).abs() > 1e-9 {
                return Err(Error::Numerics(format!(
                    "twirled two-copy block is not pure (purity {purity})"
                )));
            }
            two_copies += weight * entropy_bits(&partial_trace(&component, Scope::A)?)?;
        }
    }
    Ok((one_copy, two_copies))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::permutation_operator;
    use crate::state::{is_ppt, max_abs_entry, partial_transpose};
    use crate::twirl::global_twirl;
    use approx::assert_relative_eq;

    #[test]
    fn permuted_label_states_are_orthogonal() {
        let base = classical_label_state(3, Party::Unassigned).unwrap();
        let layout = base.layout().clone();
        let states: Vec<StateVector> = Permutation::all(3)
            .iter()
            .map(|p| {
                let map = permutation_index_map(&layout, p, Scope::Global).unwrap();
                let amps = apply_index_map(&map, base.amps());
                StateVector::from_amplitudes(layout.clone(), amps.iter().copied().collect())
                    .unwrap()
            })
            .collect();
        for (r, sr) in states.iter().enumerate() {
            for (c, sc) in states.iter().enumerate() {
                let overlap = sr.inner(sc).norm();
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((overlap - expect).abs() < 1e-12, "⟨{r}|{c}⟩ = {overlap}");
            }
        }
    }

    #[test]
    fn two_qubit_fiducial_state_amplitudes() {
        // |p₀⟩ = (|00⟩ + (|01⟩ - |10⟩)/√2)/√2: the symmetric frame
        // contributes its first canonical vector |00⟩, the antisymmetric
        // frame its unique vector.
        let p0 = rf_fiducial_state(2, 2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [s, 0.5, -0.5, 0.0];
        for (k, &want) in expect.iter().enumerate() {
            assert_relative_eq!(p0.amps()[k].re, want, epsilon = 1e-12);
            assert!(p0.amps()[k].im.abs() < 1e-12);
        }
    }

    #[test]
    fn frame_pool_and_normalizer() {
        let family = rf_gram(3, 3).unwrap();
        assert_eq!(family.normalizer, 6, "full S₃ pool: 1² + 2² + 1²");
        assert!(family.pool.iter().all(|e| e.included));

        let family = rf_gram(3, 2).unwrap();
        assert_eq!(family.normalizer, 5, "qubits exclude the single-column frame");
        let excluded: Vec<String> =
            family.pool.iter().filter(|e| !e.included).map(|e| e.frame.to_string()).collect();
        assert_eq!(excluded, ["[1,1,1]"]);
    }

    #[test]
    fn gram_is_identity_exactly_when_every_frame_fits() {
        for (n, d) in [(2usize, 2usize), (3, 3), (4, 4), (2, 3), (3, 4)] {
            let family = rf_gram(n, d).unwrap();
            assert!(
                family.is_perfect(),
                "(N,d) = ({n},{d}) should be perfect, max overlap² = {}",
                family.max_off_diagonal_overlap_sq()
            );
        }
        let family = rf_gram(3, 2).unwrap();
        assert!(!family.is_perfect());
        // ⟨p₀|T(p)|p₀⟩ = (χ_[3](p) + 2χ_[2,1](p))/5 = ±1/5 off the diagonal.
        assert_relative_eq!(family.max_off_diagonal_overlap_sq(), 0.04, epsilon = 1e-9);
    }

    #[test]
    fn frame_family_is_covariant() {
        let family = rf_gram(3, 2).unwrap();
        let layout = family.fiducial.layout().clone();
        let perms = Permutation::all(3);
        for (n, p_n) in perms.iter().enumerate() {
            for q in &perms {
                let map = permutation_index_map(&layout, q, Scope::Global).unwrap();
                let moved = apply_index_map(&map, family.states[n].amps());
                let composed = q.compose(p_n);
                let target = perms.iter().position(|p| *p == composed).unwrap();
                let diff = (&moved - family.states[target].amps()).norm();
                assert!(diff < 1e-12, "T({q})|p_{n}⟩ ≠ |{q}∘p_{n}⟩");
            }
        }
    }

    #[test]
    fn shared_pure_frame_ppt_after_twirl() {
        let raw = shared_rf_state(2, SharedFrameKind::Pure).unwrap();
        // The raw coherent frame is maximally entangled, hence not PPT…
        assert!(!is_ppt(&raw, Party::B).unwrap());
        // …but the state the parties can actually access — its local twirl —
        // equals its own partial transpose entry for entry.
        let effective = local_twirl(&raw).unwrap();
        let pt = partial_transpose(&effective, Party::B).unwrap();
        assert!(max_abs_entry(&(pt.mat() - effective.mat())) < 1e-12);
        assert!(is_ppt(&effective, Party::B).unwrap());
    }

    #[test]
    fn shared_pure_frame_is_globally_invariant_and_holds_one_ebit() {
        let vec = shared_rf_pure_vector(2).unwrap();
        let rho = vec.density();
        let twirled = global_twirl(&rho).unwrap();
        assert!(max_abs_entry(&(twirled.mat() - rho.mat())) < 1e-10);
        assert!((pure_entanglement(&vec).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shared_mixed_frame_is_ppt() {
        let mixed = shared_rf_state(2, SharedFrameKind::Mixed).unwrap();
        assert!(is_ppt(&mixed, Party::B).unwrap());
    }

    #[test]
    fn shared_frame_caps() {
        assert!(matches!(shared_rf_state(1, SharedFrameKind::Pure), Err(Error::Validation(_))));
        assert!(matches!(shared_rf_state(5, SharedFrameKind::Pure), Err(Error::Validation(_))));
        // N = 4 satisfies the precondition but the (N^N)² dimension
        // exceeds the global cap.
        assert!(matches!(shared_rf_state(4, SharedFrameKind::Pure), Err(Error::Budget(_))));
    }

    #[test]
    fn bound_pair_state_sits_in_crossed_sectors() {
        let psi = bound_pair_state().unwrap();
        assert!((pure_entanglement(&psi).unwrap() - 1.0).abs() < 1e-12);
        let report = constrained_entanglement_bruteforce(&psi).unwrap();
        assert!(report.total.abs() < 1e-9, "constrained entanglement should vanish");
        // Weight ½ in each of Alice's exchange sectors.
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert!((row.weight - 0.5).abs() < 1e-9);
            assert!(row.entanglement.abs() < 1e-9);
        }
    }

    #[test]
    fn activation_returns_zero_then_one() {
        let (before, after) = activation_demo().unwrap();
        assert!(before.abs() < 1e-9, "E_before = {before}");
        assert!((after - 1.0).abs() < 1e-9, "E_after = {after}");
    }

    #[test]
    fn distillation_returns_zero_then_one() {
        let (one, two) = distillation_demo().unwrap();
        assert!(one.abs() < 1e-9, "E_one_copy = {one}");
        assert!((two - 1.0).abs() < 1e-9, "E_two_copies = {two}");
    }

    #[test]
    fn distillation_observable_is_allowed_by_the_rule() {
        // The projector |++⟩⟨++| + |−−⟩⟨−−| on one party's four qubits
        // commutes with that party's molecule swap, so discriminating the
        // two-copy components respects the superselection rule.
        let psi = bound_pair_state().unwrap();
        let doubled = zip_compose(&[&psi, &psi]).unwrap();
        let layout = doubled.layout().clone();
        let (sym, _) = swap_sector_projectors(&layout, Scope::A).unwrap();
        let a_slots = layout.scope_slots(Scope::A);
        let plus = copy_pair_vector(1.0);
        let minus = copy_pair_vector(-1.0);
        let observable_sub = &plus * plus.adjoint() + &minus * minus.adjoint();
        let observable =
            crate::state::embed_on_slots(&layout, &a_slots, &observable_sub).unwrap();
        let swap = permutation_operator(
            &layout,
            &Permutation::transposition(2, 0, 1).unwrap(),
            Scope::A,
        )
        .unwrap();
        let comm = &observable * &swap - &swap * &observable;
        assert!(max_abs_entry(&comm) < 1e-12);
        // Sanity: the observable lives inside the symmetric sector.
        let outside = (CMat::identity(sym.nrows(), sym.ncols()) - &sym) * &observable;
        assert!(max_abs_entry(&outside) < 1e-12);
    }

    /// `|±⟩ ⊗ |±⟩` of the two copies as a column on party A's 16-dim
    /// sub-space, whose digit order is (copy1 mol0, copy2 mol0, copy1 mol1,
    /// copy2 mol1).
    fn copy_pair_vector(sign: f64) -> CMat {
        let mut col = CMat::zeros(16, 1);
        for (a, b, s1) in [(0usize, 1usize, 1.0), (1, 0, sign)] {
            for (c, d, s2) in [(0usize, 1usize, 1.0), (1, 0, sign)] {
                let idx = ((a * 2 + c) * 2 + b) * 2 + d;
                col[(idx, 0)] += Complex64::from(0.5 * s1 * s2);
            }
        }
        col
    }
}
