//! Entanglement measures, with and without the permutation superselection
//! constraint.
//!
//! The headline quantity is the entanglement left in an ensemble of shared
//! pairs when neither party can tell its molecules apart, so each only ever
//! acts on the locally twirled state. For ensembles of identical pairs
//! `|ψ⟩ = α|↓↓⟩ + β|↑↑⟩` this constrained entanglement is a weighted sum of
//! per-sector pure-state entanglements, evaluated here in log space so it
//! stays stable up to `N = 2^14`
//! ([`bell_ensemble_constrained_entanglement`]). An independent brute-force
//! path ([`constrained_entanglement_bruteforce`]) twirls the state
//! explicitly and splits it into biorthogonal pure components at small `N`,
//! validating the closed form. [`multicopy_recovery`] quantifies how merging
//! copies into larger molecules recovers the loss, and
//! [`irrelevant_information`] measures the entropy a global twirl adds.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::layout::{EnsembleLayout, Scope};
use crate::numeric::{entropy_bits_of_probs, log_pow, log_sum_exp, LN_2};
use crate::perm::{permutation_index_map, Permutation};
use crate::sectors::{spin_sectors, HalfInt};
use crate::state::{entropy_bits, pure_marginal, CVec, DensityOperator, StateVector};
use crate::twirl::{global_twirl, local_twirl};
use crate::{Error, Result};

/// Cap on `N` for the closed-form constrained entanglement.
pub const CLOSED_FORM_MAX_N: usize = 1 << 14;
/// Cap on `N` for the brute-force twirl-and-decompose path.
pub const BRUTE_FORCE_MAX_N: usize = crate::twirl::LOCAL_TWIRL_MAX_N;
/// Biorthogonal components below this probability are dropped.
const COMPONENT_DROP_TOL: f64 = 1e-12;
/// Two marginals with trace overlap above this are not locally orthogonal.
const MARGINAL_OVERLAP_TOL: f64 = 1e-8;

/// Entropy of entanglement across the A|B cut of a pure state, in ebits.
///
/// Both marginal entropies are computed and must agree; the A-side value is
/// returned. The bipartition is the party assignment carried by the state's
/// layout, which must assign every atom.
pub fn pure_entanglement(psi: &StateVector) -> Result<f64> {
    let layout = psi.layout();
    if !layout.fully_bipartite() {
        return Err(Error::Validation(
            "pure entanglement needs every atom assigned to party A or B".into(),
        ));
    }
    if layout.scope_slots(Scope::A).is_empty() || layout.scope_slots(Scope::B).is_empty() {
        return Err(Error::Validation("pure entanglement needs atoms on both parties".into()));
    }
    let s_a = entropy_bits(&pure_marginal(psi, Scope::A)?)?;
    let s_b = entropy_bits(&pure_marginal(psi, Scope::B)?)?;
    if (s_a - s_b).abs() > 1e-9 {
        return Err(Error::Numerics(format!(
            "marginal entropies disagree: S_A = {s_a}, S_B = {s_b}"
        )));
    }
    Ok(s_a)
}

/// Entanglement of a biorthogonal mixture: the probability-weighted sum of
/// its components' pure entanglements.
///
/// Valid only when the components are locally distinguishable by *both*
/// parties; this is checked via the trace overlap of the party marginals
/// and violating inputs are refused, because the weighted-sum formula would
/// silently overestimate otherwise.
pub fn biorthogonal_entanglement(components: &[(f64, StateVector)]) -> Result<f64> {
    if components.is_empty() {
        return Err(Error::Validation("biorthogonal mixture needs at least one component".into()));
    }
    let total: f64 = components.iter().map(|(p, _)| p).sum();
    if components.iter().any(|&(p, _)| p < -1e-12) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!(
            "component probabilities must be nonnegative and sum to 1, got sum {total}"
        )));
    }
    let layout = components[0].1.layout();
    if components.iter().any(|(_, psi)| psi.layout() != layout) {
        return Err(Error::Validation("components must share one layout".into()));
    }
    let marginals: Vec<[DensityOperator; 2]> = components
        .iter()
        .map(|(_, psi)| {
            Ok([pure_marginal(psi, Scope::A)?, pure_marginal(psi, Scope::B)?])
        })
        .collect::<Result<_>>()?;
    for k in 0..components.len() {
        for l in k + 1..components.len() {
            for (side, scope) in [(0, "A"), (1, "B")] {
                let overlap = (marginals[k][side].mat() * marginals[l][side].mat())
                    .diagonal()
                    .iter()
                    .map(|z| z.re)
                    .sum::<f64>();
                if overlap.abs() > MARGINAL_OVERLAP_TOL {
                    return Err(Error::Validation(format!(
                        "components {k} and {l} overlap on party {scope} \
                         (marginal support overlap {overlap:e}); the weighted-sum \
                         formula does not apply"
                    )));
                }
            }
        }
    }
    let mut e = 0.0;
    for (p, psi) in components {
        if *p > 0.0 {
            e += p * pure_entanglement(psi)?;
        }
    }
    Ok(e)
}

/// One total-spin sector's contribution to the constrained entanglement.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectorRow {
    /// Total spin `j` of the sector.
    pub j: HalfInt,
    /// Probability weight `d_j² ℘_j` of landing in this sector.
    pub weight: f64,
    /// Entanglement of the sector's pure component, in ebits.
    pub entanglement: f64,
}

/// Constrained entanglement of an ensemble, resolved by total-spin sector.
#[derive(Debug, Clone, Serialize)]
pub struct ConstrainedEntanglementReport {
    /// Number of shared pairs in the ensemble.
    pub n_molecules: usize,
    /// Per-sector rows, ascending in `j`; exact-zero sectors are omitted.
    pub rows: Vec<SectorRow>,
    /// Constrained entanglement `Σ_j weight_j · E_j`, in ebits.
    pub total: f64,
    /// Entanglement of the same state without the constraint, in ebits.
    pub unconstrained: f64,
}

impl ConstrainedEntanglementReport {
    /// Assemble and validate a report from per-sector rows.
    fn assemble(n_molecules: usize, rows: Vec<SectorRow>, unconstrained: f64) -> Result<Self> {
        let weight_sum: f64 = rows.iter().map(|r| r.weight).sum();
        if (weight_sum - 1.0).abs() > 1e-9 {
            return Err(Error::Numerics(format!(
                "sector weights sum to {weight_sum}, expected 1"
            )));
        }
        let total: f64 = rows.iter().map(|r| r.weight * r.entanglement).sum();
        if total > unconstrained + 1e-9 {
            return Err(Error::Numerics(format!(
                "constrained entanglement {total} exceeds unconstrained {unconstrained}"
            )));
        }
        Ok(ConstrainedEntanglementReport { n_molecules, rows, total, unconstrained })
    }

    /// Ebits lost to the constraint.
    pub fn loss(&self) -> f64 {
        self.unconstrained - self.total
    }
}

/// Closed-form constrained entanglement of `N` shared pairs
/// `|ψ⟩ = α|↓↓⟩ + β|↑↑⟩`.
///
/// Working per total-spin sector `j` with `J = N/2`: the sector is entered
/// with probability `d_j² ℘_j` where `d_j ℘_j = Σ_{m=-j}^{j} α^{2(J-m)} β^{2(J+m)}`,
/// and conditioned on it the shared state is pure with Schmidt weights
/// `α^{2(J-m)} β^{2(J+m)} / (d_j ℘_j)`. All sums run in log space
/// (log-sum-exp over integer powers), which keeps the result finite and
/// accurate up to `N = 2^14` and handles `α ∈ {0, 1}` exactly.
pub fn bell_ensemble_constrained_entanglement(
    alpha: f64,
    beta: f64,
    n: usize,
) -> Result<ConstrainedEntanglementReport> {
    if !(alpha.is_finite() && beta.is_finite()) || (alpha * alpha + beta * beta - 1.0).abs() > 1e-12
    {
        return Err(Error::Validation(format!(
            "amplitudes must satisfy α² + β² = 1 within 1e-12, got α = {alpha}, β = {beta}"
        )));
    }
    if n == 0 {
        return Err(Error::Validation("ensemble needs at least one pair".into()));
    }
    if n > CLOSED_FORM_MAX_N {
        return Err(Error::Budget(format!(
            "closed form capped at N = {CLOSED_FORM_MAX_N}, got N = {n}"
        )));
    }
    let sectors: Vec<(HalfInt, f64)> = if n <= crate::sectors::SPIN_SECTOR_MAX_N {
        spin_sectors(n)?.into_iter().map(|s| (s.j, (s.multiplicity as f64).ln())).collect()
    } else {
        ln_sector_dims(n)
    };
    let ln_a_sq = 2.0 * alpha.abs().ln();
    let ln_b_sq = 2.0 * beta.abs().ln();
    let two_big_j = n as i64;
    let mut rows = Vec::with_capacity(sectors.len());
    let mut log_terms: Vec<f64> = Vec::with_capacity(n + 1);
    for (j, ln_d) in sectors {
        log_terms.clear();
        let mut two_m = -j.twice();
        while two_m <= j.twice() {
            // α^{2(J-m)} β^{2(J+m)} with exact integer exponents J ∓ m.
            let t = log_pow(ln_a_sq, (two_big_j - two_m) as f64 / 2.0)
                + log_pow(ln_b_sq, (two_big_j + two_m) as f64 / 2.0);
            log_terms.push(t);
            two_m += 2;
        }
        let ln_sector_sum = log_sum_exp(&log_terms);
        if ln_sector_sum == f64::NEG_INFINITY {
            continue; // sector weight is exactly zero (α or β is 0)
        }
        // Schmidt weights of the sector's pure component.
        let probs: Vec<f64> = log_terms.iter().map(|&t| (t - ln_sector_sum).exp()).collect();
        rows.push(SectorRow {
            j,
            weight: (ln_d + ln_sector_sum).exp(),
            entanglement: entropy_bits_of_probs(&probs),
        });
    }
    let unconstrained = n as f64 * entropy_bits_of_probs(&[alpha * alpha, beta * beta]);
    ConstrainedEntanglementReport::assemble(n, rows, unconstrained)
}

/// Sector list as `(j, ln d_j)` pairs, ascending in `j`, for `N` beyond
/// exact integer range: `ln d_j = ln C(N, k) + ln((2j+1)/(J+j+1))` with
/// `k = (N-2j)/2`, from the factorial-logarithm table.
fn ln_sector_dims(n: usize) -> Vec<(HalfInt, f64)> {
    let ln_fact = crate::numeric::ln_factorials(n);
    let mut out = Vec::new();
    let mut two_j = (n % 2) as i64;
    while two_j <= n as i64 {
        let k = (n as i64 - two_j) as usize / 2;
        let ln_binom = ln_fact[n] - ln_fact[k] - ln_fact[n - k];
        let ln_d = ln_binom + ((two_j + 1) as f64 / ((n as i64 + two_j) as f64 / 2.0 + 1.0)).ln();
        out.push((HalfInt::from_twice(two_j), ln_d));
        two_j += 2;
    }
    out
}

/// Large-`N` value `(1/2) log₂ N` of the constrained entanglement — of the
/// `N` ebits shared, only about this many survive losing the molecular
/// ordering. Provided for comparison plots.
pub fn asymptotic_loss(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Validation("asymptotic loss needs N ≥ 2".into()));
    }
    Ok(0.5 * (n as f64).log2())
}

/// Entanglement retained when `C` shared pairs are merged into one pair of
/// `d = 2^C`-dimensional molecules and then twirled under S₂.
///
/// Returns `(retained, unconstrained)` ebits with `unconstrained = 2C`.
/// The defining weighted average
/// `E = ((d²-d)/2d²) log₂((d²-d)/2) + ((d²+d)/2d²) log₂((d²+d)/2)`
/// is evaluated in the equivalent form `E = (2C - 1) + g(1/d)` with
/// `g(x) = ((1+x)/2) log₂(1+x) + ((1-x)/2) log₂(1-x)`, which keeps the gap
/// `2C - E = 1 - g(1/d)` fully accurate at large `C`.
pub fn multicopy_recovery(copies: u32) -> Result<(f64, f64)> {
    if copies == 0 {
        return Err(Error::Validation("recovery needs at least one copy".into()));
    }
    if copies > 1000 {
        return Err(Error::Budget(format!(
            "recovery overflows f64 beyond C = 1000, got C = {copies}"
        )));
    }
    let x = 0.5f64.powi(copies as i32); // 1/d
    let g = (1.0 + x) / 2.0 * x.ln_1p() / LN_2 + (1.0 - x) / 2.0 * (-x).ln_1p() / LN_2;
    let unconstrained = 2.0 * copies as f64;
    Ok((unconstrained - 1.0 + g, unconstrained))
}

/// Entropy added by the global twirl: `S(P(ρ)) - S(ρ)` in bits.
///
/// This is the information in `ρ` that the superselection rule makes
/// inaccessible; it vanishes exactly when `ρ` is already permutation
/// invariant.
pub fn irrelevant_information(rho: &DensityOperator) -> Result<f64> {
    let twirled = global_twirl(rho)?;
    let gap = entropy_bits(&twirled)? - entropy_bits(rho)?;
    if gap < -1e-9 {
        return Err(Error::Numerics(format!(
            "twirl decreased entropy by {gap}, beyond roundoff"
        )));
    }
    Ok(gap.max(0.0))
}

/// Per-party machinery for the brute-force path: Young orthogonal matrices
/// of every permutation for every two-row frame, and the scoped basis-index
/// maps realizing `T(p)` on that party's atoms.
struct PartyGauge {
    js: Vec<HalfInt>,
    /// `t_y(p)` per sector (ascending `j`), aligned with `maps`.
    reps: Vec<Vec<DMatrix<f64>>>,
    /// Irrep dimension `D_y = d_j` per sector.
    dims: Vec<usize>,
    /// Basis-index map of the scoped `T(p)` per permutation.
    maps: Vec<Vec<usize>>,
}

impl PartyGauge {
    fn build(layout: &EnsembleLayout, scope: Scope, perms: &[Permutation]) -> Result<Self> {
        let n = layout.n_molecules();
        let maps = perms
            .iter()
            .map(|p| permutation_index_map(layout, p, scope))
            .collect::<Result<Vec<_>>>()?;
        let mut js = Vec::new();
        let mut reps = Vec::new();
        let mut dims = Vec::new();
        for sector in spin_sectors(n)? {
            let frame = crate::young::YoungFrame::two_row(n, sector.j.twice() as usize)?;
            let rep = crate::young::young_orthogonal_rep(&frame)?;
            debug_assert_eq!(rep.dim() as u128, sector.multiplicity);
            reps.push(perms.iter().map(|p| rep.matrix(p)).collect::<Result<Vec<_>>>()?);
            dims.push(rep.dim());
            js.push(sector.j);
        }
        Ok(PartyGauge { js, reps, dims, maps })
    }

    /// Apply the multiplicity-resolving projector `P^y_{aa}` of sector
    /// `sector` on this party's atoms: `(D_y/N!) Σ_p [t_y(p)]_{aa} T(p)|v⟩`.
    fn apply(&self, sector: usize, a: usize, v: &CVec) -> CVec {
        let scale = self.dims[sector] as f64 / self.maps.len() as f64;
        let mut out = CVec::zeros(v.len());
        for (t_p, map) in self.reps[sector].iter().zip(&self.maps) {
            let coeff = t_p[(a, a)];
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
}

/// Brute-force constrained entanglement: twirl both parties explicitly,
/// split the result into biorthogonal pure components, and add up their
/// entanglements.
///
/// The twirled state is block diagonal over each party's (sector `j`,
/// multiplicity index) labels. Every block's weight is computed from
/// permutation traces; nonnegligible blocks are verified to be pure (their
/// single eigenvector is recovered by projecting a probe vector) and
/// contribute `weight × pure_entanglement(component)`. Rows are grouped by
/// party A's sector. Nothing here shares code with the closed form, so
/// agreement between the two is a genuine cross-check.
pub fn constrained_entanglement_bruteforce(
    psi: &StateVector,
) -> Result<ConstrainedEntanglementReport> {
    let layout = psi.layout().clone();
    let n = layout.n_molecules();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Budget(format!(
            "brute force capped at N = {BRUTE_FORCE_MAX_N}, got N = {n}"
        )));
    }
    let is_pair_molecule = layout.atoms_per_molecule() == 2
        && layout.molecule().iter().all(|a| a.dim == 2)
        && layout.scope_slots(Scope::A).len() == n
        && layout.scope_slots(Scope::B).len() == n;
    if !is_pair_molecule {
        return Err(Error::Validation(
            "brute force needs molecules of exactly one qubit per party".into(),
        ));
    }
    let unconstrained = pure_entanglement(psi)?;
    let rho = local_twirl(&psi.density())?;
    let mat = rho.mat();
    let dim = layout.total_dim();

    let perms = Permutation::all(n);
    let nf = perms.len();
    let gauge_a = PartyGauge::build(&layout, Scope::A, &perms)?;
    let gauge_b = PartyGauge::build(&layout, Scope::B, &perms)?;

    // trace_table[p*N! + q] = tr(ρ' T_A(p) T_B(q)), read off the matrix
    // entries ρ'[i, σ(i)] of the combined index permutation σ.
    let mut trace_table = vec![Complex64::ZERO; nf * nf];
    for (pi, map_a) in gauge_a.maps.iter().enumerate() {
        for (qi, map_b) in gauge_b.maps.iter().enumerate() {
            let mut acc = Complex64::ZERO;
            for i in 0..dim {
                acc += mat[(i, map_a[map_b[i]])];
            }
            trace_table[pi * nf + qi] = acc;
        }
    }

    let n_sectors = gauge_a.js.len();
    let mut row_weight = vec![0.0; n_sectors];
    let mut row_weighted_e = vec![0.0; n_sectors];
    for ja in 0..n_sectors {
        for a in 0..gauge_a.dims[ja] {
            for jb in 0..n_sectors {
                for b in 0..gauge_b.dims[jb] {
                    let w = block_weight(&gauge_a, &gauge_b, &trace_table, (ja, a), (jb, b))?;
                    if w < COMPONENT_DROP_TOL {
                        continue;
                    }
                    let component =
                        extract_pure_component(&layout, mat, &gauge_a, &gauge_b, (ja, a), (jb, b), w)?;
                    let e = pure_entanglement(&component)?;
                    row_weight[ja] += w;
                    row_weighted_e[ja] += w * e;
                }
            }
        }
    }

    let mut rows = Vec::new();
    for ja in 0..n_sectors {
        if row_weight[ja] >= COMPONENT_DROP_TOL {
            rows.push(SectorRow {
                j: gauge_a.js[ja],
                weight: row_weight[ja],
                entanglement: row_weighted_e[ja] / row_weight[ja],
            });
        }
    }
    ConstrainedEntanglementReport::assemble(n, rows, unconstrained)
}

/// Weight `tr(ρ' P^{y_A}_{aa} P^{y_B}_{bb})` of one block, from the
/// precomputed permutation traces.
fn block_weight(
    gauge_a: &PartyGauge,
    gauge_b: &PartyGauge,
    trace_table: &[Complex64],
    (ja, a): (usize, usize),
    (jb, b): (usize, usize),
) -> Result<f64> {
    let nf = gauge_a.maps.len();
    let mut acc = Complex64::ZERO;
    for pi in 0..nf {
        let ca = gauge_a.reps[ja][pi][(a, a)];
        if ca == 0.0 {
            continue;
        }
        for qi in 0..nf {
            let cb = gauge_b.reps[jb][qi][(b, b)];
            if cb == 0.0 {
                continue;
            }
            acc += Complex64::from(ca * cb) * trace_table[pi * nf + qi];
        }
    }
    let scale = (gauge_a.dims[ja] * gauge_b.dims[jb]) as f64 / (nf * nf) as f64;
    let w = acc * Complex64::from(scale);
    if w.im.abs() > 1e-10 || w.re < -1e-10 {
        return Err(Error::Numerics(format!("block weight {w} is not a probability")));
    }
    Ok(w.re.max(0.0))
}

/// Recover the single pure vector spanning a rank-one block of the twirled
/// state, verifying along the way that the block really is rank one.
fn extract_pure_component(
    layout: &EnsembleLayout,
    mat: &crate::state::CMat,
    gauge_a: &PartyGauge,
    gauge_b: &PartyGauge,
    (ja, a): (usize, usize),
    (jb, b): (usize, usize),
    weight: f64,
) -> Result<StateVector> {
    let dim = layout.total_dim();
    let project = |v: &CVec| gauge_a.apply(ja, a, &gauge_b.apply(jb, b, v));
    // A rank-one block w|x⟩⟨x| maps some basis probe to w x̄_t |x⟩ with
    // |x_t|² ≥ 1/dim, so scanning probes in index order must find a vector
    // of norm ≥ w/√dim.
    for t in 0..dim {
        let mut probe = CVec::zeros(dim);
        probe[t] = Complex64::ONE;
        let projected = project(&probe);
        if projected.norm_squared() < 1e-4 / dim as f64 {
            continue;
        }
        let v = project(&(mat * projected));
        let norm = v.norm();
        if norm < weight * 1e-4 {
            continue;
        }
        let vhat = v.unscale(norm);
        let image = mat * &vhat;
        let rayleigh = vhat.dotc(&image).re;
        let residual = (&image - &vhat * Complex64::from(rayleigh)).norm();
        if residual > 1e-8 || (rayleigh - weight).abs() > 1e-8 {
            return Err(Error::Numerics(format!(
                "block (j_A = {}, j_B = {}) is not a pure component \
                 (residual {residual:e}, weight mismatch {:e})",
                gauge_a.js[ja],
                gauge_b.js[jb],
                (rayleigh - weight).abs()
            )));
        }
        let amps: Vec<Complex64> = vhat.iter().copied().collect();
        return StateVector::from_amplitudes(layout.clone(), amps);
    }
    Err(Error::Numerics(format!(
        "no probe reached the block (j_A = {}, j_B = {}) of weight {weight:e}",
        gauge_a.js[ja], gauge_b.js[jb]
    )))
}

/// The shared-pair ensemble state `(α|↓↓⟩ + β|↑↑⟩)^⊗N` on a qubit-pairs
/// layout, with the qubit basis ordered `{↑, ↓}`.
pub fn bell_ensemble_state(alpha: f64, beta: f64, n: usize) -> Result<StateVector> {
    if (alpha * alpha + beta * beta - 1.0).abs() > 1e-12 {
        return Err(Error::Validation(format!(
            "amplitudes must satisfy α² + β² = 1 within 1e-12, got α = {alpha}, β = {beta}"
        )));
    }
    let layout = EnsembleLayout::qubit_pairs(n)?;
    let dim = layout.total_dim();
    let mut amps = vec![Complex64::ZERO; dim];
    // Each molecule contributes a factor α (both qubits ↓, digit 1) or
    // β (both ↑, digit 0); cross terms vanish.
    for bits in 0..(1usize << n) {
        let mut digits = Vec::with_capacity(2 * n);
        let mut amp = 1.0;
        for mol in 0..n {
            let down = (bits >> mol) & 1;
            digits.push(down);
            digits.push(down);
            amp *= if down == 1 { alpha } else { beta };
        }
        if amp != 0.0 {
            amps[layout.index_of(&digits)] = Complex64::from(amp);
        }
    }
    StateVector::from_amplitudes(layout, amps)
}
