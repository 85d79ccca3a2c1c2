//! Dense state vectors and density operators over an [`EnsembleLayout`],
//! with the bipartite toolkit used everywhere else: tensor composition,
//! partial trace, von Neumann entropy in bits, partial transposition, and
//! the PPT check.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::layout::{EnsembleLayout, Party, Scope};
use crate::numeric::{clip_eigenvalue, entropy_bits_of_probs};
use crate::{Error, Result};

/// Dense complex matrix used throughout the crate.
pub type CMat = DMatrix<Complex64>;
/// Dense complex vector used throughout the crate.
pub type CVec = DVector<Complex64>;

/// Tolerance for norm/trace validation in constructors.
const NORM_TOL: f64 = 1e-8;
/// Tolerance for the Hermiticity check before eigendecompositions.
const HERMITICITY_TOL: f64 = 1e-9;

/// Largest absolute entry of a matrix (used for residual checks).
pub fn max_abs_entry(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Pure state of an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: EnsembleLayout,
    amps: CVec,
}

impl StateVector {
    /// Wrap amplitudes that are already normalized (within 1e-8).
    pub fn from_amplitudes(layout: EnsembleLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::Validation(format!(
                "amplitude count {} does not match layout dimension {}",
                amps.len(),
                layout.total_dim()
            )));
        }
        let v = CVec::from_vec(amps);
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!(
                "state vector norm {norm} is not 1; use `normalized` to rescale"
            )));
        }
        // Polish the norm so downstream squared-norm checks hold to 1e-10.
        Ok(StateVector { layout, amps: v / Complex64::from(norm) })
    }

    /// Normalize arbitrary amplitudes into a state.
    pub fn normalized(layout: EnsembleLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::Validation(format!(
                "amplitude count {} does not match layout dimension {}",
                amps.len(),
                layout.total_dim()
            )));
        }
        let v = CVec::from_vec(amps);
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        Ok(StateVector { layout, amps: v / Complex64::from(norm) })
    }

    /// Computational basis state with the given per-slot digits.
    pub fn basis_state(layout: EnsembleLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.n_slots() {
            return Err(Error::Validation(format!(
                "expected {} digits, got {}",
                layout.n_slots(),
                digits.len()
            )));
        }
        for (s, &d) in digits.iter().enumerate() {
            if d >= layout.slot_dim(s) {
                return Err(Error::Validation(format!(
                    "digit {d} out of range for slot {s} of dimension {}",
                    layout.slot_dim(s)
                )));
            }
        }
        let mut amps = vec![Complex64::ZERO; layout.total_dim()];
        amps[layout.index_of(digits)] = Complex64::ONE;
        Ok(StateVector { layout, amps: CVec::from_vec(amps) })
    }

    /// Layout this state lives on.
    pub fn layout(&self) -> &EnsembleLayout {
        &self.layout
    }

    /// Amplitudes in molecule-major basis order.
    pub fn amps(&self) -> &CVec {
        &self.amps
    }

    /// Joint dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// Rank-one density operator |ψ⟩⟨ψ|.
    pub fn density(&self) -> DensityOperator {
        let mat = &self.amps * self.amps.adjoint();
        DensityOperator { layout: self.layout.clone(), mat }
    }

    /// Apply `op` (full-space matrix) and renormalize; returns the squared
    /// norm before renormalization together with the resulting state.
    pub fn project(&self, op: &CMat) -> Result<(f64, StateVector)> {
        let v = op * &self.amps;
        let w = v.norm_squared();
        if w < 1e-12 {
            return Err(Error::Numerics("projection annihilated the state".into()));
        }
        Ok((
            w,
            StateVector { layout: self.layout.clone(), amps: v / Complex64::from(w.sqrt()) },
        ))
    }
}

/// Mixed state of an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    layout: EnsembleLayout,
    mat: CMat,
}

impl DensityOperator {
    /// Wrap a matrix as a density operator on `layout`.
    ///
    /// Validates only the shape; trace and positivity are the caller's
    /// business (twirl outputs, for instance, are validated in tests).
    pub fn from_matrix(layout: EnsembleLayout, mat: CMat) -> Result<Self> {
        if mat.nrows() != layout.total_dim() || mat.ncols() != layout.total_dim() {
            return Err(Error::Validation(format!(
                "matrix is {}x{} but layout dimension is {}",
                mat.nrows(),
                mat.ncols(),
                layout.total_dim()
            )));
        }
        Ok(DensityOperator { layout, mat })
    }

    /// Convex mixture Σ wᵢ |ψᵢ⟩⟨ψᵢ| of pure components on a shared layout.
    pub fn mixture(components: &[(f64, StateVector)]) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::Validation("mixture needs at least one component".into()));
        };
        let layout = first.layout().clone();
        let dim = layout.total_dim();
        let mut mat = CMat::zeros(dim, dim);
        let mut total = 0.0;
        for (w, psi) in components {
            if *w < -1e-12 {
                return Err(Error::Validation(format!("mixture weight {w} is negative")));
            }
            if psi.layout() != &layout {
                return Err(Error::Validation("mixture components live on different layouts".into()));
            }
            mat += (psi.amps() * psi.amps().adjoint()).scale(*w);
            total += w;
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!("mixture weights sum to {total}, not 1")));
        }
        Ok(DensityOperator { layout, mat })
    }

    /// Layout this operator lives on.
    pub fn layout(&self) -> &EnsembleLayout {
        &self.layout
    }

    /// Matrix in molecule-major basis order.
    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    /// Joint dimension.
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Trace (should be ≈ 1 for states).
    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// tr ρ², i.e. the purity.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest deviation from Hermiticity, max |ρ - ρ†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.mat.nrows() {
            for j in i..self.mat.ncols() {
                let d = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Real spectrum of a Hermitian operator, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.hermiticity_defect() > HERMITICITY_TOL {
            return Err(Error::Numerics(format!(
                "operator is not Hermitian within {HERMITICITY_TOL:e} (defect {:e})",
                self.hermiticity_defect()
            )));
        }
        let eig = SymmetricEigen::new(self.mat.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Ok(vals)
    }
}

/// Tensor product of pure states, appending molecules in declared order.
///
/// Every factor must share one molecule signature so the result is again a
/// valid ensemble; composition that extends molecules with extra atoms is
/// [`zip_compose`].
pub fn tensor_compose(factors: &[&StateVector]) -> Result<StateVector> {
    let Some(first) = factors.first() else {
        return Err(Error::Validation("tensor_compose needs at least one factor".into()));
    };
    let signature = first.layout().molecule().to_vec();
    let mut n_total = 0;
    for f in factors {
        if f.layout().molecule() != signature.as_slice() {
            return Err(Error::Validation(
                "tensor_compose factors must share one molecule signature".into(),
            ));
        }
        n_total += f.layout().n_molecules();
    }
    let layout = EnsembleLayout::new(n_total, signature)?;
    let mut amps = vec![Complex64::ONE];
    for f in factors {
        let mut next = Vec::with_capacity(amps.len() * f.dim());
        for &a in &amps {
            for b in f.amps().iter() {
                next.push(a * b);
            }
        }
        amps = next;
    }
    StateVector::from_amplitudes(layout, amps)
}

/// Tensor product of density operators, appending molecules in declared
/// order (same signature rule as [`tensor_compose`]).
pub fn tensor_compose_ops(factors: &[&DensityOperator]) -> Result<DensityOperator> {
    let Some(first) = factors.first() else {
        return Err(Error::Validation("tensor_compose needs at least one factor".into()));
    };
    let signature = first.layout().molecule().to_vec();
    let mut n_total = 0;
    for f in factors {
        if f.layout().molecule() != signature.as_slice() {
            return Err(Error::Validation(
                "tensor_compose factors must share one molecule signature".into(),
            ));
        }
        n_total += f.layout().n_molecules();
    }
    let layout = EnsembleLayout::new(n_total, signature)?;
    let mut mat = CMat::from_element(1, 1, Complex64::ONE);
    for f in factors {
        mat = mat.kronecker(f.mat());
    }
    DensityOperator::from_matrix(layout, mat)
}

/// Tensor product *within* each molecule: all factors share one molecule
/// count, and the result's molecules carry the concatenated atom lists.
///
/// This is how an ensemble acquires more atoms per molecule — extra copies
/// of a shared state, or appended reference-frame tokens — while keeping a
/// single permutation group acting on whole molecules.
pub fn zip_compose(factors: &[&StateVector]) -> Result<StateVector> {
    let Some(first) = factors.first() else {
        return Err(Error::Validation("zip_compose needs at least one factor".into()));
    };
    let n = first.layout().n_molecules();
    let mut signature = Vec::new();
    for f in factors {
        if f.layout().n_molecules() != n {
            return Err(Error::Validation(
                "zip_compose factors must share one molecule count".into(),
            ));
        }
        signature.extend_from_slice(f.layout().molecule());
    }
    let layout = EnsembleLayout::new(n, signature)?;
    let m_total = layout.atoms_per_molecule();
    // Per-factor atom offsets within the combined molecule.
    let mut offsets = Vec::with_capacity(factors.len());
    let mut off = 0;
    for f in factors {
        offsets.push(off);
        off += f.layout().atoms_per_molecule();
    }
    let mut amps = Vec::with_capacity(layout.total_dim());
    let mut factor_digits: Vec<Vec<usize>> =
        factors.iter().map(|f| vec![0; f.layout().n_slots()]).collect();
    for idx in 0..layout.total_dim() {
        let digits = layout.digits_of(idx);
        for (fi, f) in factors.iter().enumerate() {
            let m_f = f.layout().atoms_per_molecule();
            for mol in 0..n {
                for a in 0..m_f {
                    factor_digits[fi][mol * m_f + a] = digits[mol * m_total + offsets[fi] + a];
                }
            }
        }
        let mut amp = Complex64::ONE;
        for (fi, f) in factors.iter().enumerate() {
            amp *= f.amps()[f.layout().index_of(&factor_digits[fi])];
            if amp == Complex64::ZERO {
                break;
            }
        }
        amps.push(amp);
    }
    StateVector::from_amplitudes(layout, amps)
}

/// Joint index table `joint[k][t]` for a slot subset: `k` runs over the
/// packed digits on `slots`, `t` over the packed digits on the complement.
fn split_index_table(layout: &EnsembleLayout, slots: &[usize]) -> (usize, usize, Vec<usize>) {
    let dim_k: usize = slots.iter().map(|&s| layout.slot_dim(s)).product();
    let dim_t = layout.total_dim() / dim_k;
    let complement: Vec<usize> =
        (0..layout.n_slots()).filter(|s| !slots.contains(s)).collect();
    let mut joint = vec![0usize; dim_k * dim_t];
    for idx in 0..layout.total_dim() {
        let (sel, rest) = layout.split_digits(idx, slots);
        let k = layout.pack_sub_index(slots, &sel);
        let t = layout.pack_sub_index(&complement, &rest);
        joint[k * dim_t + t] = idx;
    }
    (dim_k, dim_t, joint)
}

/// Lift an operator acting on a slot subset to the full layout space:
/// `op ⊗ 1` with the correct index interleaving.
pub fn embed_on_slots(layout: &EnsembleLayout, slots: &[usize], op: &CMat) -> Result<CMat> {
    let (dim_k, dim_t, joint) = split_index_table(layout, slots);
    if op.nrows() != dim_k || op.ncols() != dim_k {
        return Err(Error::Validation(format!(
            "operator is {}x{} but the selected slots span dimension {dim_k}",
            op.nrows(),
            op.ncols()
        )));
    }
    let dim = layout.total_dim();
    let mut out = CMat::zeros(dim, dim);
    for ka in 0..dim_k {
        for kb in 0..dim_k {
            let v = op[(ka, kb)];
            if v == Complex64::ZERO {
                continue;
            }
            for t in 0..dim_t {
                out[(joint[ka * dim_t + t], joint[kb * dim_t + t])] = v;
            }
        }
    }
    Ok(out)
}

/// Apply `op ⊗ 1` (op on a slot subset) to a full-space vector without
/// materializing the embedded matrix.
pub fn apply_on_slots(layout: &EnsembleLayout, slots: &[usize], op: &CMat, v: &CVec) -> Result<CVec> {
    let (dim_k, dim_t, joint) = split_index_table(layout, slots);
    if op.nrows() != dim_k || op.ncols() != dim_k || v.len() != layout.total_dim() {
        return Err(Error::Validation("operator/vector dimensions do not match the slot subset".into()));
    }
    let mut out = CVec::zeros(v.len());
    for t in 0..dim_t {
        for ka in 0..dim_k {
            let mut acc = Complex64::ZERO;
            for kb in 0..dim_k {
                let c = op[(ka, kb)];
                if c != Complex64::ZERO {
                    acc += c * v[joint[kb * dim_t + t]];
                }
            }
            out[joint[ka * dim_t + t]] = acc;
        }
    }
    Ok(out)
}

/// Reduced density operator on the slots selected by `keep`.
///
/// `Scope::A`/`Scope::B` trace out everything the party does not hold; the
/// result lives on a layout whose molecules carry only the kept atoms.
pub fn partial_trace(rho: &DensityOperator, keep: Scope) -> Result<DensityOperator> {
    let layout = rho.layout();
    let kept_atoms: Vec<_> = match keep.party() {
        None => return Ok(rho.clone()),
        Some(p) => layout.molecule().iter().copied().filter(|a| a.party == p).collect(),
    };
    if kept_atoms.is_empty() {
        return Err(Error::Validation(format!("no atoms belong to scope {keep:?}")));
    }
    let slots = layout.scope_slots(keep);
    let reduced_layout = EnsembleLayout::new(layout.n_molecules(), kept_atoms)?;
    let (dim_k, dim_t, joint) = split_index_table(layout, &slots);
    let mut out = CMat::zeros(dim_k, dim_k);
    for ka in 0..dim_k {
        for kb in 0..dim_k {
            let mut acc = Complex64::ZERO;
            for t in 0..dim_t {
                acc += rho.mat()[(joint[ka * dim_t + t], joint[kb * dim_t + t])];
            }
            out[(ka, kb)] = acc;
        }
    }
    DensityOperator::from_matrix(reduced_layout, out)
}

/// Reduced density operator of a pure state on the slots selected by
/// `keep` — avoids materializing the full |ψ⟩⟨ψ|.
pub fn pure_marginal(psi: &StateVector, keep: Scope) -> Result<DensityOperator> {
    let layout = psi.layout();
    let kept_atoms: Vec<_> = match keep.party() {
        None => return Ok(psi.density()),
        Some(p) => layout.molecule().iter().copied().filter(|a| a.party == p).collect(),
    };
    if kept_atoms.is_empty() {
        return Err(Error::Validation(format!("no atoms belong to scope {keep:?}")));
    }
    let slots = layout.scope_slots(keep);
    let reduced_layout = EnsembleLayout::new(layout.n_molecules(), kept_atoms)?;
    let (dim_k, dim_t, joint) = split_index_table(layout, &slots);
    // Reshape ψ into a (kept × rest) table, then contract the rest index.
    let mut table = CMat::zeros(dim_k, dim_t);
    for k in 0..dim_k {
        for t in 0..dim_t {
            table[(k, t)] = psi.amps()[joint[k * dim_t + t]];
        }
    }
    let out = &table * table.adjoint();
    DensityOperator::from_matrix(reduced_layout, out)
}

/// Von Neumann entropy in bits, with the crate's eigenvalue clipping.
pub fn entropy_bits(rho: &DensityOperator) -> Result<f64> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > 1e-6 {
        return Err(Error::Validation(format!("density operator trace {trace} is not 1")));
    }
    let mut probs = Vec::with_capacity(rho.dim());
    for v in rho.eigenvalues()? {
        probs.push(clip_eigenvalue(v)?);
    }
    Ok(entropy_bits_of_probs(&probs))
}

/// Transpose the factor held by `party`, leaving the other party alone.
///
/// A pure index permutation of matrix entries: applying it twice returns
/// the input bit for bit.
pub fn partial_transpose(rho: &DensityOperator, party: Party) -> Result<DensityOperator> {
    let layout = rho.layout();
    if !layout.fully_bipartite() {
        return Err(Error::Validation(
            "partial transpose needs every atom assigned to party A or B".into(),
        ));
    }
    let scope = match party {
        Party::A => Scope::A,
        Party::B => Scope::B,
        Party::Unassigned => {
            return Err(Error::Validation("partial transpose over an unassigned scope".into()))
        }
    };
    let slots = layout.scope_slots(scope);
    let dim = layout.total_dim();
    let mut out = CMat::zeros(dim, dim);
    for i in 0..dim {
        let di = layout.digits_of(i);
        for j in 0..dim {
            let mut dj = layout.digits_of(j);
            // Swap the party's digits between row and column index.
            let mut di_swapped = di.clone();
            for &s in &slots {
                di_swapped[s] = dj[s];
            }
            for &s in &slots {
                dj[s] = di[s];
            }
            out[(layout.index_of(&di_swapped), layout.index_of(&dj))] = rho.mat()[(i, j)];
        }
    }
    DensityOperator::from_matrix(layout.clone(), out)
}

/// Peres–Horodecki check: true when the partial transpose over `party` has
/// no eigenvalue below the roundoff floor.
pub fn is_ppt(rho: &DensityOperator, party: Party) -> Result<bool> {
    let pt = partial_transpose(rho, party)?;
    let vals = pt.eigenvalues()?;
    Ok(vals.first().map(|&v| v >= crate::numeric::NEG_EIG_TOL).unwrap_or(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Atom;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// |ψ⁻⟩ on one molecule of an A qubit and a B qubit.
    fn singlet() -> StateVector {
        let layout = EnsembleLayout::qubit_pairs(1).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_amplitudes(
            layout,
            vec![Complex64::ZERO, c(s), c(-s), Complex64::ZERO],
        )
        .unwrap()
    }

    #[test]
    fn tensor_compose_orders_molecule_major() {
        let up = StateVector::basis_state(EnsembleLayout::uniform(1, 2).unwrap(), &[0]).unwrap();
        let down = StateVector::basis_state(EnsembleLayout::uniform(1, 2).unwrap(), &[1]).unwrap();
        let composed = tensor_compose(&[&up, &down]).unwrap();
        let expected = [0.0, 1.0, 0.0, 0.0];
        for (k, &e) in expected.iter().enumerate() {
            assert_relative_eq!(composed.amps()[k].re, e, epsilon = 1e-14);
        }
        assert_eq!(composed.layout().n_molecules(), 2);
    }

    #[test]
    fn singlet_marginal_is_maximally_mixed() {
        let rho_a = pure_marginal(&singlet(), Scope::A).unwrap();
        assert_eq!(rho_a.dim(), 2);
        assert_relative_eq!(rho_a.mat()[(0, 0)].re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(rho_a.mat()[(1, 1)].re, 0.5, epsilon = 1e-12);
        assert!(rho_a.mat()[(0, 1)].norm() < 1e-12);
        assert_relative_eq!(entropy_bits(&rho_a).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_of_product_state_is_exact() {
        let layout = EnsembleLayout::qubit_pairs(1).unwrap();
        let psi = StateVector::basis_state(layout, &[1, 0]).unwrap();
        let rho_b = partial_trace(&psi.density(), Scope::B).unwrap();
        assert_relative_eq!(rho_b.mat()[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(entropy_bits(&rho_b).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_of_three_quarters_mixture() {
        let layout = EnsembleLayout::uniform(1, 2).unwrap();
        let up = StateVector::basis_state(layout.clone(), &[0]).unwrap();
        let down = StateVector::basis_state(layout, &[1]).unwrap();
        let rho = DensityOperator::mixture(&[(0.75, up), (0.25, down)]).unwrap();
        assert_relative_eq!(
            entropy_bits(&rho).unwrap(),
            0.8112781244591328,
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_rejects_non_hermitian() {
        let layout = EnsembleLayout::uniform(1, 2).unwrap();
        let mut mat = CMat::zeros(2, 2);
        mat[(0, 0)] = c(0.5);
        mat[(1, 1)] = c(0.5);
        mat[(0, 1)] = c(0.3);
        mat[(1, 0)] = c(-0.3);
        let rho = DensityOperator::from_matrix(layout, mat).unwrap();
        assert!(matches!(entropy_bits(&rho), Err(Error::Numerics(_))));
    }

    #[test]
    fn singlet_partial_transpose_has_negative_eigenvalue() {
        let rho = singlet().density();
        let pt = partial_transpose(&rho, Party::B).unwrap();
        let vals = pt.eigenvalues().unwrap();
        assert_relative_eq!(vals[0], -0.5, epsilon = 1e-12);
        assert!(!is_ppt(&rho, Party::B).unwrap());
    }

    #[test]
    fn product_state_is_ppt() {
        let layout = EnsembleLayout::qubit_pairs(1).unwrap();
        let psi = StateVector::basis_state(layout, &[0, 1]).unwrap();
        assert!(is_ppt(&psi.density(), Party::B).unwrap());
    }

    #[test]
    fn partial_transpose_is_a_bitwise_involution() {
        let rho = singlet().density();
        let back = partial_transpose(&partial_transpose(&rho, Party::A).unwrap(), Party::A).unwrap();
        assert_eq!(
            rho.mat().as_slice(),
            back.mat().as_slice(),
            "double partial transpose must return the input bit for bit"
        );
    }

    #[test]
    fn zip_compose_extends_molecules() {
        // Zipping two singlet copies puts both copies inside one molecule:
        // one molecule of four atoms rather than two molecules of two.
        let s = singlet();
        let two = zip_compose(&[&s, &s]).unwrap();
        assert_eq!(two.layout().n_molecules(), 1);
        assert_eq!(two.layout().atoms_per_molecule(), 4);
        assert_eq!(
            two.layout().molecule(),
            &[
                Atom::qubit(Party::A),
                Atom::qubit(Party::B),
                Atom::qubit(Party::A),
                Atom::qubit(Party::B)
            ]
        );
        // Amplitude of |↑↓⟩⊗|↑↓⟩ ordered as (A₁ B₁ A₂ B₂) = digits (0,1,0,1).
        let idx = two.layout().index_of(&[0, 1, 0, 1]);
        assert_relative_eq!(two.amps()[idx].re, 0.5, epsilon = 1e-12);
        // The A marginal of two singlets is I/4: two bits of entropy.
        let rho_a = pure_marginal(&two, Scope::A).unwrap();
        assert_relative_eq!(entropy_bits(&rho_a).unwrap(), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn mixture_validates_weights() {
        let layout = EnsembleLayout::uniform(1, 2).unwrap();
        let up = StateVector::basis_state(layout.clone(), &[0]).unwrap();
        assert!(DensityOperator::mixture(&[(0.5, up)]).is_err());
    }
}
