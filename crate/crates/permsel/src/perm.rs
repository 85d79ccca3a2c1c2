//! Permutations of molecules and their unitary action on ensemble states.
//!
//! Composition is the left action `(p ∘ q)(x) = p(q(x))`. The unitary
//! `T(p)` moves the contents of molecule `m` to molecule `p(m)`; with the
//! molecule-major basis ordering this is a pure permutation of basis
//! indices, so applying `T(p)` to vectors or conjugating operators never
//! multiplies matrices.

use num_complex::Complex64;

use crate::layout::{EnsembleLayout, Scope};
use crate::state::CMat;
use crate::{Error, Result};

/// A permutation of `{0, …, n-1}` stored as its one-line image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Identity on `n` points.
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// Transposition of `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::Validation(format!("transposition ({a} {b}) out of range for n={n}")));
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Ok(Permutation { image })
    }

    /// Adjacent transposition `s_k` exchanging `k` and `k+1`.
    pub fn adjacent(n: usize, k: usize) -> Result<Self> {
        if k + 1 >= n {
            return Err(Error::Validation(format!("adjacent transposition s_{k} needs n > {}", k + 1)));
        }
        Permutation::transposition(n, k, k + 1)
    }

    /// Build from a one-line image, validating it is a bijection.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::Validation(format!("{image:?} is not a permutation image")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of a point: `p(x)`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// One-line image slice.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Left-action composition `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { image: inv }
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Number of cycles (fixed points count as cycles).
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut cycles = 0;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
            }
        }
        cycles
    }

    /// Every element of `S_n` in lexicographic order of the one-line image.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut image = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if image.len() == n {
                out.push(Permutation { image: image.clone() });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    image.push(x);
                    rec(n, image, used, out);
                    image.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut image, &mut used, &mut out);
        out
    }

    /// Factor into adjacent transpositions: returns `[a₀, a₁, …]` with
    /// `self = s_{a₀} ∘ s_{a₁} ∘ …` (the rightmost factor acts first).
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let n = self.n();
        let mut w = self.image.clone();
        let mut swaps = Vec::new();
        // Bubble-sort the one-line word; each in-place swap of positions
        // (k, k+1) is a right multiplication by s_k.
        loop {
            let mut done = true;
            for k in 0..n.saturating_sub(1) {
                if w[k] > w[k + 1] {
                    w.swap(k, k + 1);
                    swaps.push(k);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        // w ∘ s_{swaps[0]} ∘ … ∘ s_{swaps[m]} = id, so
        // self = s_{swaps[m]} ∘ … ∘ s_{swaps[0]}.
        swaps.reverse();
        swaps
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// The basis-index permutation induced by `T(p)` on `layout` under `scope`:
/// `T(p)|x⟩ = |σ(x)⟩` with `σ = ` the returned map.
///
/// A global scope moves whole molecules; a party scope moves only that
/// party's atoms across molecules, keeping each atom's position within its
/// molecule.
pub fn permutation_index_map(
    layout: &EnsembleLayout,
    p: &Permutation,
    scope: Scope,
) -> Result<Vec<usize>> {
    if p.n() != layout.n_molecules() {
        return Err(Error::Validation(format!(
            "permutation on {} points cannot act on {} molecules",
            p.n(),
            layout.n_molecules()
        )));
    }
    if scope.party().is_some() && layout.scope_slots(scope).is_empty() {
        return Err(Error::Validation(format!("no atoms belong to scope {scope:?}")));
    }
    let m = layout.atoms_per_molecule();
    let moved: Vec<bool> = match scope.party() {
        None => vec![true; m],
        Some(party) => layout.molecule().iter().map(|a| a.party == party).collect(),
    };
    let n_slots = layout.n_slots();
    // slot_image[s] = destination slot of the digit currently in slot s.
    let mut slot_image: Vec<usize> = (0..n_slots).collect();
    for mol in 0..layout.n_molecules() {
        for (a, &does_move) in moved.iter().enumerate() {
            if does_move {
                slot_image[layout.slot_of(mol, a)] = layout.slot_of(p.apply(mol), a);
            }
        }
    }
    let mut map = vec![0usize; layout.total_dim()];
    let mut dest = vec![0usize; n_slots];
    for (idx, entry) in map.iter_mut().enumerate() {
        let digits = layout.digits_of(idx);
        for s in 0..n_slots {
            dest[slot_image[s]] = digits[s];
        }
        *entry = layout.index_of(&dest);
    }
    Ok(map)
}

/// Dense unitary matrix of `T(p)` on `layout` under `scope` — a 0/1
/// permutation matrix.
pub fn permutation_operator(layout: &EnsembleLayout, p: &Permutation, scope: Scope) -> Result<CMat> {
    let map = permutation_index_map(layout, p, scope)?;
    let dim = layout.total_dim();
    let mut mat = CMat::zeros(dim, dim);
    for (x, &y) in map.iter().enumerate() {
        mat[(y, x)] = Complex64::ONE;
    }
    Ok(mat)
}

/// Apply an index map to a vector: `out[σ(x)] = v[x]`.
pub fn apply_index_map(map: &[usize], v: &crate::state::CVec) -> crate::state::CVec {
    let mut out = crate::state::CVec::zeros(v.len());
    for (x, &y) in map.iter().enumerate() {
        out[y] = v[x];
    }
    out
}

/// Conjugate a matrix by an index map: `out[σ(i), σ(j)] = m[i, j]`, i.e.
/// `T(p) · m · T(p)†` without matrix products.
pub fn conjugate_by_index_map(map: &[usize], m: &CMat) -> CMat {
    let dim = m.nrows();
    let mut out = CMat::zeros(dim, dim);
    for j in 0..dim {
        let cj = map[j];
        for i in 0..dim {
            out[(map[i], cj)] = m[(i, j)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{Atom, Party};
    use crate::state::StateVector;

    #[test]
    fn composition_is_left_action() {
        let p = Permutation::from_image(vec![1, 2, 0]).unwrap();
        let q = Permutation::from_image(vec![0, 2, 1]).unwrap();
        let pq = p.compose(&q);
        // (p∘q)(1) = p(q(1)) = p(2) = 0.
        assert_eq!(pq.apply(1), 0);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].image(), &[0, 1, 2]);
        assert_eq!(all[5].image(), &[2, 1, 0]);
    }

    #[test]
    fn adjacent_factorization_recomposes() {
        for p in Permutation::all(5) {
            let mut q = Permutation::identity(5);
            for &k in &p.adjacent_factorization() {
                // Rightmost factor acts first: accumulate q ← q ∘ s_k.
                q = q.compose(&Permutation::adjacent(5, k).unwrap());
            }
            assert_eq!(q, p, "factorization failed for {p}");
        }
    }

    #[test]
    fn cycle_count_matches_structure() {
        assert_eq!(Permutation::identity(4).cycle_count(), 4);
        assert_eq!(Permutation::from_image(vec![1, 0, 2, 3]).unwrap().cycle_count(), 3);
        assert_eq!(Permutation::from_image(vec![1, 2, 3, 0]).unwrap().cycle_count(), 1);
    }

    #[test]
    fn global_operator_permutes_molecule_contents() {
        // Two molecules of one 3-level atom: swap moves |0⟩|2⟩ → |2⟩|0⟩.
        let layout = EnsembleLayout::uniform(2, 3).unwrap();
        let psi = StateVector::basis_state(layout.clone(), &[0, 2]).unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let map = permutation_index_map(&layout, &swap, Scope::Global).unwrap();
        let moved = apply_index_map(&map, psi.amps());
        let expect = StateVector::basis_state(layout, &[2, 0]).unwrap();
        assert_eq!(moved, *expect.amps());
    }

    #[test]
    fn scoped_swap_moves_only_party_a() {
        // Molecules of two A atoms and one B atom; the A-scoped swap takes
        // |↑↑↑⟩|↓↓↓⟩ to |↓↓↑⟩|↑↑↓⟩.
        let layout = EnsembleLayout::new(
            2,
            vec![Atom::qubit(Party::A), Atom::qubit(Party::A), Atom::qubit(Party::B)],
        )
        .unwrap();
        let psi = StateVector::basis_state(layout.clone(), &[0, 0, 0, 1, 1, 1]).unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let map = permutation_index_map(&layout, &swap, Scope::A).unwrap();
        let moved = apply_index_map(&map, psi.amps());
        let expect = StateVector::basis_state(layout, &[1, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(moved, *expect.amps());
    }

    #[test]
    fn operator_matrix_is_unitary_01() {
        let layout = EnsembleLayout::uniform(3, 2).unwrap();
        let p = Permutation::from_image(vec![2, 0, 1]).unwrap();
        let t = permutation_operator(&layout, &p, Scope::Global).unwrap();
        let prod = &t * t.adjoint();
        for i in 0..t.nrows() {
            for j in 0..t.ncols() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)].re - expect).abs() < 1e-14);
                assert!(t[(i, j)].im == 0.0 && (t[(i, j)].re == 0.0 || t[(i, j)].re == 1.0));
            }
        }
    }

    #[test]
    fn index_maps_respect_composition() {
        let layout = EnsembleLayout::qubit_pairs(3).unwrap();
        let all = Permutation::all(3);
        for p in &all {
            for q in &all {
                let mp = permutation_index_map(&layout, p, Scope::A).unwrap();
                let mq = permutation_index_map(&layout, q, Scope::A).unwrap();
                let mpq = permutation_index_map(&layout, &p.compose(q), Scope::A).unwrap();
                let composed: Vec<usize> = (0..mpq.len()).map(|x| mp[mq[x]]).collect();
                assert_eq!(composed, mpq, "T(p)T(q) ≠ T(p∘q) for p={p}, q={q}");
            }
        }
    }
}
