//! Ensemble geometry: how molecules, atoms, and parties tile a Hilbert space.
//!
//! An ensemble is `N` identical molecules, each built from the same ordered
//! list of atoms. Every atom has a dimension and an ownership tag (party A,
//! party B, or unassigned). The joint basis is ordered molecule-major,
//! atom-minor: the atom in slot `(m, a)` varies slower than `(m, a + 1)` and
//! slower than every atom of molecule `m + 1`. Under this ordering a
//! permutation of molecules (or of one party's atoms across molecules) acts
//! on basis indices as a pure index permutation, which the twirling and
//! projector code relies on.

use serde::Serialize;

use crate::{Error, Result};

/// Hard cap on the joint dimension of any dense state or operator.
pub const DIM_CAP: usize = 1 << 14;

/// Ownership tag for one atom within a molecule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Party {
    /// Held by Alice.
    A,
    /// Held by Bob.
    B,
    /// Not assigned to either party (single-party or spectator systems).
    Unassigned,
}

/// Which atoms an operation acts on: everything, or one party's share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// All atoms of every molecule.
    Global,
    /// Only the atoms tagged [`Party::A`].
    A,
    /// Only the atoms tagged [`Party::B`].
    B,
}

impl Scope {
    /// The party selected by this scope, if it is not global.
    pub fn party(self) -> Option<Party> {
        match self {
            Scope::Global => None,
            Scope::A => Some(Party::A),
            Scope::B => Some(Party::B),
        }
    }
}

/// One constituent subsystem of a molecule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    /// Hilbert-space dimension of this atom (≥ 1).
    pub dim: usize,
    /// Which party holds this atom.
    pub party: Party,
}

impl Atom {
    /// Atom of dimension `dim` held by `party`.
    pub fn new(dim: usize, party: Party) -> Self {
        Atom { dim, party }
    }

    /// Two-level atom held by `party`.
    pub fn qubit(party: Party) -> Self {
        Atom { dim: 2, party }
    }
}

/// Layout of an ensemble: `n_molecules` copies of one molecule signature.
///
/// Storing a single signature makes the "all molecules identical" invariant
/// hold by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleLayout {
    molecule: Vec<Atom>,
    n_molecules: usize,
    /// Dimension of each global slot, molecule-major atom-minor.
    slot_dims: Vec<usize>,
    /// Mixed-radix strides: slot 0 is the most significant digit.
    strides: Vec<usize>,
    total_dim: usize,
}

impl EnsembleLayout {
    /// Build a layout of `n_molecules` molecules sharing `molecule` as their
    /// atom signature.
    ///
    /// Fails if the signature is empty, any atom has dimension 0, or the
    /// joint dimension exceeds [`DIM_CAP`].
    pub fn new(n_molecules: usize, molecule: Vec<Atom>) -> Result<Self> {
        if n_molecules == 0 {
            return Err(Error::Validation("layout needs at least one molecule".into()));
        }
        if molecule.is_empty() {
            return Err(Error::Validation("molecule signature must contain at least one atom".into()));
        }
        if let Some(atom) = molecule.iter().find(|a| a.dim == 0) {
            return Err(Error::Validation(format!("atom dimension must be ≥ 1, got {}", atom.dim)));
        }
        let mut total: u128 = 1;
        for _ in 0..n_molecules {
            for atom in &molecule {
                total = total.saturating_mul(atom.dim as u128);
                if total > DIM_CAP as u128 {
                    return Err(Error::Budget(format!(
                        "joint dimension exceeds the dense cap of {DIM_CAP}"
                    )));
                }
            }
        }
        let slot_dims: Vec<usize> = (0..n_molecules)
            .flat_map(|_| molecule.iter().map(|a| a.dim))
            .collect();
        let mut strides = vec![1usize; slot_dims.len()];
        for s in (0..slot_dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * slot_dims[s + 1];
        }
        Ok(EnsembleLayout {
            molecule,
            n_molecules,
            slot_dims,
            strides,
            total_dim: total as usize,
        })
    }

    /// `n` molecules of a single unassigned atom of dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        EnsembleLayout::new(n, vec![Atom::new(d, Party::Unassigned)])
    }

    /// `n` molecules of one A qubit and one B qubit — the layout of a shared
    /// ensemble of two-level pairs.
    pub fn qubit_pairs(n: usize) -> Result<Self> {
        EnsembleLayout::new(n, vec![Atom::qubit(Party::A), Atom::qubit(Party::B)])
    }

    /// Number of molecules `N`.
    pub fn n_molecules(&self) -> usize {
        self.n_molecules
    }

    /// Atom signature shared by every molecule.
    pub fn molecule(&self) -> &[Atom] {
        &self.molecule
    }

    /// Atoms per molecule `M`.
    pub fn atoms_per_molecule(&self) -> usize {
        self.molecule.len()
    }

    /// Joint dimension of the whole ensemble.
    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Dimension of a single molecule.
    pub fn molecule_dim(&self) -> usize {
        self.molecule.iter().map(|a| a.dim).product()
    }

    /// Total number of atom slots (`N · M`).
    pub fn n_slots(&self) -> usize {
        self.slot_dims.len()
    }

    /// Dimension of global slot `slot`.
    pub fn slot_dim(&self, slot: usize) -> usize {
        self.slot_dims[slot]
    }

    /// Global slot index of atom `atom` inside molecule `mol`.
    pub fn slot_of(&self, mol: usize, atom: usize) -> usize {
        mol * self.molecule.len() + atom
    }

    /// Global slots selected by `scope`, ascending.
    pub fn scope_slots(&self, scope: Scope) -> Vec<usize> {
        match scope.party() {
            None => (0..self.n_slots()).collect(),
            Some(p) => (0..self.n_slots())
                .filter(|&s| self.molecule[s % self.molecule.len()].party == p)
                .collect(),
        }
    }

    /// Product of the dimensions of the slots selected by `scope`.
    pub fn scope_dim(&self, scope: Scope) -> usize {
        self.scope_slots(scope).iter().map(|&s| self.slot_dims[s]).product()
    }

    /// Decompose a joint basis index into per-slot digits.
    pub fn digits_of(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.total_dim);
        self.strides
            .iter()
            .zip(&self.slot_dims)
            .map(|(&stride, &dim)| (index / stride) % dim)
            .collect()
    }

    /// Recompose per-slot digits into a joint basis index.
    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.n_slots());
        digits
            .iter()
            .zip(&self.strides)
            .map(|(&digit, &stride)| digit * stride)
            .sum()
    }

    /// Split a joint index into (digits on `slots`, digits on the rest),
    /// each in ascending slot order.
    pub fn split_digits(&self, index: usize, slots: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let digits = self.digits_of(index);
        let mut selected = Vec::with_capacity(slots.len());
        let mut rest = Vec::with_capacity(digits.len() - slots.len());
        let mut mark = vec![false; digits.len()];
        for &s in slots {
            mark[s] = true;
        }
        for (s, &d) in digits.iter().enumerate() {
            if mark[s] {
                selected.push(d);
            } else {
                rest.push(d);
            }
        }
        (selected, rest)
    }

    /// Pack digits listed on an ascending `slots` subset into a flat index of
    /// the subspace spanned by those slots.
    pub fn pack_sub_index(&self, slots: &[usize], digits: &[usize]) -> usize {
        let mut idx = 0;
        for (&s, &d) in slots.iter().zip(digits) {
            idx = idx * self.slot_dims[s] + d;
        }
        idx
    }

    /// True when every atom belongs to party A or party B.
    pub fn fully_bipartite(&self) -> bool {
        self.molecule.iter().all(|a| a.party != Party::Unassigned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip_is_molecule_major() {
        let layout = EnsembleLayout::new(
            2,
            vec![Atom::qubit(Party::A), Atom::new(3, Party::B)],
        )
        .unwrap();
        assert_eq!(layout.total_dim(), 36);
        // Slot order: (mol0 A), (mol0 B), (mol1 A), (mol1 B); slot 0 most significant.
        let idx = layout.index_of(&[1, 2, 0, 1]);
        assert_eq!(idx, 1 * 18 + 2 * 6 + 0 * 3 + 1);
        assert_eq!(layout.digits_of(idx), vec![1, 2, 0, 1]);
    }

    #[test]
    fn scope_selects_party_slots() {
        let layout = EnsembleLayout::qubit_pairs(3).unwrap();
        assert_eq!(layout.scope_slots(Scope::A), vec![0, 2, 4]);
        assert_eq!(layout.scope_slots(Scope::B), vec![1, 3, 5]);
        assert_eq!(layout.scope_dim(Scope::A), 8);
        assert_eq!(layout.scope_slots(Scope::Global).len(), 6);
    }

    #[test]
    fn dimension_cap_is_a_budget_error() {
        let err = EnsembleLayout::uniform(15, 2).unwrap_err();
        assert!(matches!(err, Error::Budget(_)), "expected budget error, got {err:?}");
        assert!(EnsembleLayout::uniform(14, 2).is_ok(), "2^14 exactly should be allowed");
    }

    #[test]
    fn split_and_pack_agree() {
        let layout = EnsembleLayout::qubit_pairs(2).unwrap();
        let slots = layout.scope_slots(Scope::B);
        let idx = layout.index_of(&[1, 0, 1, 1]);
        let (sel, rest) = layout.split_digits(idx, &slots);
        assert_eq!(sel, vec![0, 1]);
        assert_eq!(rest, vec![1, 1]);
        assert_eq!(layout.pack_sub_index(&slots, &sel), 1);
    }
}
