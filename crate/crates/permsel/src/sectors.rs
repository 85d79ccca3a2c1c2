//! Sector structure of qubit ensembles under simultaneous permutation and
//! rotation symmetry, and the projectors that resolve it.
//!
//! `N` spin-1/2 molecules decompose as `⊕_j M_j ⊗ Q_j` where `j` is the
//! total spin, `Q_j` the `(2j+1)`-dimensional angular-momentum factor, and
//! `M_j` a `d_j`-dimensional factor that permutations act on irreducibly.
//! Three projector families live here:
//!
//! - [`sector_projectors`]: onto fixed total spin `j`, built by
//!   diagonalizing the total-spin operator `Ĵ²` on the scoped qubits;
//! - [`matrix_element_projectors`]: the canonical intertwiners
//!   `P^y_{ik} = (D_y/N!) Σ_p [t_y(p)]_{ik} T(p)` for one Young frame `y`,
//!   which resolve individual multiplicity basis vectors;
//! - [`swap_sector_projectors`]: the `N = 2` symmetric/antisymmetric pair
//!   `(1 ± T)/2` for molecules of any dimension.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::layout::{EnsembleLayout, Scope};
use crate::perm::{permutation_index_map, permutation_operator, Permutation};
use crate::state::{embed_on_slots, CMat, CVec};
use crate::young::{young_orthogonal_rep, YoungFrame};
use crate::{Error, Result};

/// Cap on the number of scoped qubits for the `Ĵ²` eigendecomposition.
pub const SECTOR_MAX_QUBITS: usize = 10;
/// Cap on molecules for matrix-element projectors (group-sum budget).
pub const MEP_MAX_N: usize = 5;
/// Cap on `N` for exact integer sector dimensions.
pub const SPIN_SECTOR_MAX_N: usize = 120;

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl Serialize for HalfInt {
    /// Half-integers serialize as their numeric value (`3/2` → `1.5`),
    /// which every `k/2` represents exactly in binary floating point.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

impl HalfInt {
    /// From twice the value (`HalfInt::from_twice(3)` is 3/2).
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    /// Twice the value.
    pub fn twice(self) -> i64 {
        self.0
    }

    /// The value as a float.
    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// True when the value is a whole number.
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// One total-spin sector of `N` spin-1/2 molecules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinSector {
    /// Total spin `j`.
    pub j: HalfInt,
    /// Dimension `d_j` of the permutation factor `M_j` (the multiplicity
    /// of spin `j`, equal to the hook dimension of the two-row frame).
    pub multiplicity: u128,
}

/// Exact binomial coefficient in `u128`.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// Total-spin sectors of `n` spin-1/2 molecules, ascending in `j`.
///
/// `j` runs from `0` (`n` even) or `1/2` (`n` odd) up to `J = n/2`, with
/// `d_j = C(n, n/2 - j) · (2j+1)/(J+j+1)`, computed exactly via the
/// difference form `C(n, k) - C(n, k-1)`.
pub fn spin_sectors(n: usize) -> Result<Vec<SpinSector>> {
    if n == 0 {
        return Err(Error::Validation("spin sectors need at least one molecule".into()));
    }
    if n > SPIN_SECTOR_MAX_N {
        return Err(Error::Budget(format!(
            "exact sector dimensions overflow beyond N = {SPIN_SECTOR_MAX_N}, got N = {n}"
        )));
    }
    let mut sectors = Vec::new();
    let mut two_j = (n % 2) as i64;
    while two_j <= n as i64 {
        let k = (n as i64 - two_j) as usize / 2;
        let d = binomial(n, k) - if k == 0 { 0 } else { binomial(n, k - 1) };
        sectors.push(SpinSector { j: HalfInt::from_twice(two_j), multiplicity: d });
        two_j += 2;
    }
    Ok(sectors)
}

/// Projector onto one total-spin sector of the scoped qubits.
#[derive(Debug, Clone)]
pub struct SectorProjector {
    /// Total spin of the sector.
    pub j: HalfInt,
    /// `d_j`, the dimension of the permutation factor.
    pub multiplicity: u128,
    /// Rank of the projector: `d_j (2j+1)`.
    pub rank: usize,
    /// Projector matrix on the scoped subspace (slot-ascending ordering).
    pub projector: CMat,
}

/// The full sector decomposition of a scoped set of qubits.
#[derive(Debug, Clone)]
pub struct SectorDecomposition {
    layout: EnsembleLayout,
    scope: Scope,
    slots: Vec<usize>,
    /// Sectors ascending in `j`.
    pub sectors: Vec<SectorProjector>,
}

impl SectorDecomposition {
    /// Scoped slots the projectors act on.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// Scope used to build the decomposition.
    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// Dimension of the scoped subspace.
    pub fn scoped_dim(&self) -> usize {
        self.slots.iter().map(|&s| self.layout.slot_dim(s)).product()
    }

    /// Sector projector lifted to the full layout space (identity on the
    /// complement slots).
    pub fn embedded_projector(&self, idx: usize) -> Result<CMat> {
        embed_on_slots(&self.layout, &self.slots, &self.sectors[idx].projector)
    }
}

/// Single-qubit spin operators `(S_x, S_y, S_z) = σ/2`, basis `{m=+1/2, m=-1/2}`.
fn spin_half_ops() -> [CMat; 3] {
    let i = Complex64::I;
    let sx = CMat::from_row_slice(2, 2, &[0.0.into(), 0.5.into(), 0.5.into(), 0.0.into()]);
    let sy = CMat::from_row_slice(2, 2, &[0.0.into(), -0.5 * i, 0.5 * i, 0.0.into()]);
    let sz = CMat::from_row_slice(2, 2, &[0.5.into(), 0.0.into(), 0.0.into(), (-0.5).into()]);
    [sx, sy, sz]
}

/// Decompose the scoped qubits of `layout` into total-spin sectors by
/// diagonalizing `Ĵ² = Ĵx² + Ĵy² + Ĵz²`.
///
/// Requires every scoped atom to be a qubit with exactly one scoped atom
/// per molecule, so the permutation group and the spin sectors line up.
pub fn sector_projectors(layout: &EnsembleLayout, scope: Scope) -> Result<SectorDecomposition> {
    let slots = layout.scope_slots(scope);
    let n = layout.n_molecules();
    if slots.len() != n {
        return Err(Error::Validation(format!(
            "sector projectors need exactly one scoped atom per molecule, got {} slots for {} molecules",
            slots.len(),
            n
        )));
    }
    if slots.iter().any(|&s| layout.slot_dim(s) != 2) {
        return Err(Error::Validation("sector projectors act on qubit atoms only".into()));
    }
    if n > SECTOR_MAX_QUBITS {
        return Err(Error::Budget(format!(
            "sector eigendecomposition capped at {SECTOR_MAX_QUBITS} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    // Total spin components as sums of single-site operators.
    let singles = spin_half_ops();
    let mut j_sq = CMat::zeros(dim, dim);
    for single in &singles {
        let mut total = CMat::zeros(dim, dim);
        for site in 0..n {
            let mut op = CMat::identity(1, 1);
            for s in 0..n {
                let factor = if s == site { single.clone() } else { CMat::identity(2, 2) };
                op = op.kronecker(&factor);
            }
            total += op;
        }
        j_sq += &total * &total;
    }
    let eig = nalgebra::SymmetricEigen::new(j_sq);
    // Assign each eigenvector a spin label via x = j(j+1).
    let expected = spin_sectors(n)?;
    let mut grouped: Vec<(i64, Vec<usize>)> =
        expected.iter().map(|s| (s.j.twice(), Vec::new())).collect();
    for (col, &x) in eig.eigenvalues.iter().enumerate() {
        let j_raw = 0.5 * ((1.0 + 4.0 * x).sqrt() - 1.0);
        let two_j = (2.0 * j_raw).round() as i64;
        if (j_raw - two_j as f64 / 2.0).abs() > 1e-6 {
            return Err(Error::Numerics(format!(
                "Ĵ² eigenvalue {x} does not sit near a half-integer spin (j ≈ {j_raw})"
            )));
        }
        let slot = grouped
            .iter_mut()
            .find(|(t, _)| *t == two_j)
            .ok_or_else(|| Error::Numerics(format!("unexpected spin sector 2j = {two_j}")))?;
        slot.1.push(col);
    }
    let mut sectors = Vec::with_capacity(grouped.len());
    for (sector, (two_j, cols)) in expected.iter().zip(grouped) {
        let rank = cols.len();
        let expected_rank = (sector.multiplicity * (two_j as u128 + 1)) as usize;
        if rank != expected_rank {
            return Err(Error::Numerics(format!(
                "sector j = {} has rank {rank}, expected {expected_rank}",
                sector.j
            )));
        }
        let mut projector = CMat::zeros(dim, dim);
        for &col in &cols {
            let v = eig.eigenvectors.column(col);
            projector += &v * v.adjoint();
        }
        sectors.push(SectorProjector {
            j: sector.j,
            multiplicity: sector.multiplicity,
            rank,
            projector,
        });
    }
    Ok(SectorDecomposition { layout: layout.clone(), scope, slots, sectors })
}

/// Symmetric and antisymmetric projectors `( (1+T)/2, (1-T)/2 )` on the
/// full layout space for an `N = 2` ensemble, with `T` the scoped swap.
///
/// Works for molecules of any dimension (ranks `(d²±d)/2` on the scoped
/// factor, tensored with identity elsewhere).
pub fn swap_sector_projectors(layout: &EnsembleLayout, scope: Scope) -> Result<(CMat, CMat)> {
    if layout.n_molecules() != 2 {
        return Err(Error::Validation(format!(
            "symmetric/antisymmetric projectors need N = 2, got N = {}",
            layout.n_molecules()
        )));
    }
    let swap = Permutation::transposition(2, 0, 1)?;
    let t = permutation_operator(layout, &swap, scope)?;
    let id = CMat::identity(layout.total_dim(), layout.total_dim());
    let sym = (&id + &t).scale(0.5);
    let anti = (&id - &t).scale(0.5);
    Ok((sym, anti))
}

/// The canonical intertwiners `P^y_{ik}` for one Young frame on
/// `(ℂ_d)^{⊗N}`, kept in lazy form (irrep matrices plus permutation index
/// maps) so they can be applied to vectors without materializing dense
/// operators at large dimension.
#[derive(Debug, Clone)]
pub struct MatrixElementProjectors {
    frame: YoungFrame,
    layout: EnsembleLayout,
    /// True when the frame has more rows than `d`: every operator is zero.
    pub vanishes: bool,
    irrep_dim: usize,
    /// `t_y(p)` for every `p`, aligned with `maps`.
    rep_matrices: Vec<DMatrix<f64>>,
    /// Basis-index map of `T(p)` for every `p` in enumeration order.
    maps: Vec<Vec<usize>>,
    /// `d^{cycles(p)}` for every `p` (traces of `T(p)`), for multiplicity counts.
    op_traces: Vec<f64>,
}

impl MatrixElementProjectors {
    /// Frame these projectors belong to.
    pub fn frame(&self) -> &YoungFrame {
        &self.frame
    }

    /// Irrep dimension `D_y`.
    pub fn irrep_dim(&self) -> usize {
        self.irrep_dim
    }

    /// Layout (`N` molecules of one `d`-dimensional atom) the operators act on.
    pub fn layout(&self) -> &EnsembleLayout {
        &self.layout
    }

    /// Apply `P^y_{ik}` to a vector: `(D_y/N!) Σ_p [t_y(p)]_{ik} T(p)|v⟩`.
    pub fn apply(&self, i: usize, k: usize, v: &CVec) -> CVec {
        let dim = self.layout.total_dim();
        let mut out = CVec::zeros(dim);
        if self.vanishes {
            return out;
        }
        let scale = self.irrep_dim as f64 / self.maps.len() as f64;
        for (t_p, map) in self.rep_matrices.iter().zip(&self.maps) {
            let coeff = t_p[(i, k)];
            if coeff == 0.0 {
                continue;
            }
            let c = Complex64::from(coeff * scale);
            for (x, &y) in map.iter().enumerate() {
                out[y] += c * v[x];
            }
        }
        out
    }

    /// Dense matrix of `P^y_{ik}` (budget-capped at dimension 1024).
    pub fn dense(&self, i: usize, k: usize) -> Result<CMat> {
        let dim = self.layout.total_dim();
        if dim > 1024 {
            return Err(Error::Budget(format!(
                "dense matrix-element projector capped at dimension 1024, got {dim}"
            )));
        }
        let mut out = CMat::zeros(dim, dim);
        if self.vanishes {
            return Ok(out);
        }
        let scale = self.irrep_dim as f64 / self.maps.len() as f64;
        for (t_p, map) in self.rep_matrices.iter().zip(&self.maps) {
            let coeff = t_p[(i, k)];
            if coeff == 0.0 {
                continue;
            }
            let c = Complex64::from(coeff * scale);
            for (x, &y) in map.iter().enumerate() {
                out[(y, x)] += c;
            }
        }
        Ok(out)
    }

    /// `tr P^y_{ii}` — the multiplicity of the frame's irrep in
    /// `(ℂ_d)^{⊗N}`, computed from permutation traces alone.
    pub fn multiplicity(&self) -> u128 {
        if self.vanishes {
            return 0;
        }
        let scale = self.irrep_dim as f64 / self.maps.len() as f64;
        let m: f64 = self
            .rep_matrices
            .iter()
            .zip(&self.op_traces)
            .map(|(t_p, &tr)| t_p[(0, 0)] * tr)
            .sum::<f64>()
            * scale;
        m.round() as u128
    }
}

/// Build the matrix-element projectors of `frame` acting on `N` molecules
/// of one `d`-dimensional atom.
pub fn matrix_element_projectors(
    n: usize,
    d: usize,
    frame: &YoungFrame,
) -> Result<MatrixElementProjectors> {
    if frame.n() != n {
        return Err(Error::Validation(format!(
            "frame {frame} has {} boxes but N = {n}",
            frame.n()
        )));
    }
    if n > MEP_MAX_N {
        return Err(Error::Budget(format!(
            "matrix-element projectors capped at N = {MEP_MAX_N}, got N = {n}"
        )));
    }
    let layout = EnsembleLayout::uniform(n, d)?;
    let rep = young_orthogonal_rep(frame)?;
    let vanishes = frame.n_rows() > d;
    let perms = Permutation::all(n);
    let mut rep_matrices = Vec::with_capacity(perms.len());
    let mut maps = Vec::with_capacity(perms.len());
    let mut op_traces = Vec::with_capacity(perms.len());
    for p in &perms {
        rep_matrices.push(rep.matrix(p)?);
        maps.push(permutation_index_map(&layout, p, Scope::Global)?);
        op_traces.push((d as f64).powi(p.cycle_count() as i32));
    }
    Ok(MatrixElementProjectors {
        frame: frame.clone(),
        layout,
        vanishes,
        irrep_dim: rep.dim(),
        rep_matrices,
        maps,
        op_traces,
    })
}

/// Multiplicity of `frame`'s irrep in `(ℂ_d)^{⊗N}` by the Weyl dimension
/// formula `Π (d + col - row)/hook` — an independent cross-check of
/// [`MatrixElementProjectors::multiplicity`].
pub fn weyl_multiplicity(frame: &YoungFrame, d: usize) -> u128 {
    if frame.n_rows() > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (r, &len) in frame.rows().iter().enumerate() {
        for c in 0..len {
            num *= (d as i64 + c as i64 - r as i64) as u128;
            den *= frame.hook_len(r, c) as u128;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::max_abs_entry;

    #[test]
    fn sector_tables_for_small_n() {
        let n2 = spin_sectors(2).unwrap();
        assert_eq!(n2.len(), 2);
        assert_eq!((n2[0].j.twice(), n2[0].multiplicity), (0, 1));
        assert_eq!((n2[1].j.twice(), n2[1].multiplicity), (2, 1));

        let n3 = spin_sectors(3).unwrap();
        assert_eq!(
            n3.iter().map(|s| (s.j.twice(), s.multiplicity)).collect::<Vec<_>>(),
            vec![(1, 2), (3, 1)]
        );

        let n4 = spin_sectors(4).unwrap();
        assert_eq!(
            n4.iter().map(|s| (s.j.twice(), s.multiplicity)).collect::<Vec<_>>(),
            vec![(0, 2), (2, 3), (4, 1)]
        );
    }

    #[test]
    fn sector_dimensions_sum_to_full_space() {
        for n in 1..=20usize {
            let total: u128 = spin_sectors(n)
                .unwrap()
                .iter()
                .map(|s| s.multiplicity * (s.j.twice() as u128 + 1))
                .sum();
            assert_eq!(total, 1u128 << n, "Σ d_j (2j+1) ≠ 2^N at N = {n}");
        }
    }

    #[test]
    fn sector_dimensions_match_hook_formula() {
        for n in 1..=8usize {
            for sector in spin_sectors(n).unwrap() {
                let frame = YoungFrame::two_row(n, sector.j.twice() as usize).unwrap();
                assert_eq!(
                    sector.multiplicity,
                    frame.hook_dimension().unwrap(),
                    "d_j ≠ hook dimension at n={n}, j={}",
                    sector.j
                );
            }
        }
    }

    #[test]
    fn projectors_resolve_the_identity_with_expected_ranks() {
        let layout = EnsembleLayout::uniform(4, 2).unwrap();
        let dec = sector_projectors(&layout, Scope::Global).unwrap();
        let ranks: Vec<usize> = dec.sectors.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![2, 9, 5]);
        let dim = dec.scoped_dim();
        let mut sum = CMat::zeros(dim, dim);
        for s in &dec.sectors {
            sum += &s.projector;
            // Idempotent and Hermitian.
            let defect = max_abs_entry(&(&s.projector * &s.projector - &s.projector));
            assert!(defect < 1e-10, "projector j={} not idempotent: {defect:e}", s.j);
        }
        let id_defect = max_abs_entry(&(sum - CMat::identity(dim, dim)));
        assert!(id_defect < 1e-10, "sector projectors do not resolve identity: {id_defect:e}");
    }

    #[test]
    fn single_molecule_is_one_sector() {
        let layout = EnsembleLayout::uniform(1, 2).unwrap();
        let dec = sector_projectors(&layout, Scope::Global).unwrap();
        assert_eq!(dec.sectors.len(), 1);
        assert_eq!(dec.sectors[0].j.twice(), 1);
        let defect = max_abs_entry(&(dec.sectors[0].projector.clone() - CMat::identity(2, 2)));
        assert!(defect < 1e-12);
    }

    #[test]
    fn n2_sectors_agree_with_swap_projectors() {
        let layout = EnsembleLayout::uniform(2, 2).unwrap();
        let dec = sector_projectors(&layout, Scope::Global).unwrap();
        let (sym, anti) = swap_sector_projectors(&layout, Scope::Global).unwrap();
        // Ascending j: j=0 is the antisymmetric (singlet) sector for qubits.
        assert_eq!(dec.sectors[0].rank, 1);
        assert_eq!(dec.sectors[1].rank, 3);
        assert!(max_abs_entry(&(dec.sectors[0].projector.clone() - anti)) < 1e-10);
        assert!(max_abs_entry(&(dec.sectors[1].projector.clone() - sym)) < 1e-10);
    }

    #[test]
    fn matrix_element_projectors_match_sector_projectors_for_qubpairs() {
        // N=2, d=2: frames [2] and [1,1] reproduce the symmetric and
        // antisymmetric projectors.
        let layout = EnsembleLayout::uniform(2, 2).unwrap();
        let (sym, anti) = swap_sector_projectors(&layout, Scope::Global).unwrap();
        let p_sym = matrix_element_projectors(2, 2, &YoungFrame::new(vec![2]).unwrap()).unwrap();
        let p_anti = matrix_element_projectors(2, 2, &YoungFrame::new(vec![1, 1]).unwrap()).unwrap();
        assert!(max_abs_entry(&(p_sym.dense(0, 0).unwrap() - sym)) < 1e-12);
        assert!(max_abs_entry(&(p_anti.dense(0, 0).unwrap() - anti)) < 1e-12);
    }

    #[test]
    fn tall_frame_vanishes_on_qubits() {
        let frame = YoungFrame::new(vec![1, 1, 1]).unwrap();
        let p = matrix_element_projectors(3, 2, &frame).unwrap();
        assert!(p.vanishes);
        assert_eq!(p.multiplicity(), 0);
        assert!(max_abs_entry(&p.dense(0, 0).unwrap()) == 0.0);
    }

    #[test]
    fn matrix_element_projectors_are_a_complete_orthogonal_family() {
        // N=3, d=3: Σ_{y,i} rank P^y_{ii} = 27, and the P^y_{ik} compose as
        // matrix units: P_{ik} P_{lm} = δ_{kl} P_{im}.
        let mut total_rank = 0.0;
        for frame in YoungFrame::all(3) {
            let p = matrix_element_projectors(3, 3, &frame).unwrap();
            let d_y = p.irrep_dim();
            for i in 0..d_y {
                let pii = p.dense(i, i).unwrap();
                total_rank += pii.diagonal().iter().map(|z| z.re).sum::<f64>();
                let defect = max_abs_entry(&(&pii * &pii - &pii));
                assert!(defect < 1e-10, "P_{{{i}{i}}} not idempotent for {frame}");
            }
            for i in 0..d_y {
                for k in 0..d_y {
                    for l in 0..d_y {
                        let pik = p.dense(i, k).unwrap();
                        let plm = p.dense(l, 0).unwrap();
                        let prod = &pik * &plm;
                        let expect = if k == l { p.dense(i, 0).unwrap() } else { CMat::zeros(27, 27) };
                        assert!(
                            max_abs_entry(&(prod - expect)) < 1e-10,
                            "matrix-unit relation fails for {frame} at ({i},{k})({l},0)"
                        );
                    }
                }
            }
            // Multiplicity agrees with the Weyl dimension formula.
            assert_eq!(p.multiplicity(), weyl_multiplicity(&frame, 3), "multiplicity mismatch for {frame}");
        }
        assert!((total_rank - 27.0).abs() < 1e-8, "ranks sum to {total_rank}, not 27");
    }

    #[test]
    fn weyl_multiplicities_for_qutrits() {
        // (ℂ₃)^⊗3 = 10 ⊕ 8 ⊕ 8 ⊕ 1.
        assert_eq!(weyl_multiplicity(&YoungFrame::new(vec![3]).unwrap(), 3), 10);
        assert_eq!(weyl_multiplicity(&YoungFrame::new(vec![2, 1]).unwrap(), 3), 8);
        assert_eq!(weyl_multiplicity(&YoungFrame::new(vec![1, 1, 1]).unwrap(), 3), 1);
    }

    #[test]
    fn lazy_apply_matches_dense() {
        let frame = YoungFrame::new(vec![2, 1]).unwrap();
        let p = matrix_element_projectors(3, 2, &frame).unwrap();
        let dim = p.layout().total_dim();
        for basis in 0..dim {
            let mut v = CVec::zeros(dim);
            v[basis] = Complex64::ONE;
            let lazy = p.apply(1, 0, &v);
            let dense = p.dense(1, 0).unwrap() * v;
            assert!((lazy - dense).norm() < 1e-12);
        }
    }
}
