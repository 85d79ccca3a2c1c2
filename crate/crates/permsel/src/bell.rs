//! Mermin-type Bell test for perfectly anticorrelated spin-`j` pairs and
//! for ensembles of singlets measured without a molecule ordering.
//!
//! The local-causality bound takes the form `M_J(θ) ≥ 0` for three coplanar
//! axes with a common opening angle; quantum mechanics assigns a spin-`j`
//! pair the value `M_J = f_j(θ) - (1/J)(2j/3)(j+1) sin θ`, which dips below
//! zero in a window of small θ. For an ensemble of `N` singlets under the
//! permutation constraint the observable is additive over total-spin
//! sectors, giving the weighted sector sum of [`m_ensemble`] — the weights
//! being exactly the constrained-entanglement sector weights. The violation
//! window shrinks like `arcsin(1/2J)` and the depth like `-1/J`, but the
//! violation never disappears: Bell nonlocality survives the constraint.
//!
//! Rotation matrices are computed by diagonalizing `J_y` once per `j` and
//! exponentiating on the spectrum, which stays orthogonal to machine
//! precision at any angle (the textbook factorial sum loses all f64
//! accuracy beyond `j ≈ 25` through cancellation; tests keep it as a
//! small-`j` cross-check).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::entanglement::bell_ensemble_constrained_entanglement;
use crate::sectors::HalfInt;
use crate::state::CMat;
use crate::{Error, Result};

/// Cap on `j` for rotation matrices (dense `(2j+1)²` eigendecomposition).
pub const WIGNER_MAX_TWO_J: i64 = 400;
/// Cap on `j` for the two-particle correlation oracles.
pub const ORACLE_MAX_TWO_J: i64 = 20;
/// Fewest grid points a violation scan accepts.
pub const SCAN_MIN_GRID: usize = 200;
/// Target θ-resolution of window edges and depth location.
const SCAN_REFINE_TOL: f64 = 1e-6;

/// How the ensemble Bell quantity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleMode {
    /// Full sector sum with exact `f_j`.
    Exact,
    /// Small-θ form `(2/3) j(j+1) sin θ (2 sin θ - 1/J)` per sector.
    Approx,
}

/// Reusable rotation machinery for one spin `j`: the spectral decomposition
/// of `J_y`, from which `d^j(β) = V e^{-iβΛ} V†` follows for any angle.
pub struct WignerEngine {
    j: HalfInt,
    /// Eigenvalues of `J_y`, snapped to exact half-integers.
    freqs: Vec<f64>,
    vectors: CMat,
}

impl WignerEngine {
    /// Diagonalize `J_y` for spin `j` (basis ordered `m = +j … -j`).
    pub fn new(j: HalfInt) -> Result<Self> {
        if j.twice() < 0 || j.twice() > WIGNER_MAX_TWO_J {
            return Err(Error::Budget(format!(
                "rotation matrices capped at j = {}, got j = {j}",
                WIGNER_MAX_TWO_J / 2
            )));
        }
        let dim = (j.twice() + 1) as usize;
        let jv = j.value();
        // J_y = (J₊ - J₋)/2i: tridiagonal, purely imaginary, Hermitian.
        let mut jy = CMat::zeros(dim, dim);
        for k in 1..dim {
            // Raising matrix element between m(k) = j - k and m(k-1).
            let m = jv - k as f64;
            let c = (jv * (jv + 1.0) - m * (m + 1.0)).sqrt();
            jy[(k - 1, k)] = Complex64::new(0.0, -0.5) * c;
            jy[(k, k - 1)] = Complex64::new(0.0, 0.5) * c;
        }
        let eig = nalgebra::SymmetricEigen::new(jy);
        let mut freqs = Vec::with_capacity(dim);
        for &lambda in eig.eigenvalues.iter() {
            let snapped = (2.0 * lambda).round() / 2.0;
            if (lambda - snapped).abs() > 1e-8 {
                return Err(Error::Numerics(format!(
                    "J_y eigenvalue {lambda} is not a half-integer"
                )));
            }
            freqs.push(snapped);
        }
        Ok(WignerEngine { j, freqs, vectors: eig.eigenvectors })
    }

    /// Spin this engine was built for.
    pub fn j(&self) -> HalfInt {
        self.j
    }

    /// The rotation matrix `d^j(β) = ⟨m'|e^{-iβJ_y}|m⟩`, real orthogonal,
    /// basis ordered `m = +j … -j`.
    pub fn matrix(&self, beta: f64) -> DMatrix<f64> {
        let dim = self.freqs.len();
        let mut phased = self.vectors.clone();
        for (c, &f) in self.freqs.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -beta * f);
            for r in 0..dim {
                phased[(r, c)] *= phase;
            }
        }
        let full = phased * self.vectors.adjoint();
        DMatrix::from_fn(dim, dim, |r, c| full[(r, c)].re)
    }

    /// `f_j(θ) = (1/(2j+1)) Σ_{m,m'} |m - m'| d^j_{m m'}(2θ)²`: the mean
    /// absolute spin-projection difference of a perfectly anticorrelated
    /// pair measured along axes an angle `π - 2θ` apart.
    pub fn f(&self, theta: f64) -> f64 {
        let d = self.matrix(2.0 * theta);
        let dim = self.freqs.len();
        let mut acc = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                // m(r) - m(c) = c - r under the descending convention.
                acc += (c as f64 - r as f64).abs() * d[(r, c)] * d[(r, c)];
            }
        }
        acc / dim as f64
    }
}

/// One-shot rotation matrix `d^j(β)`; see [`WignerEngine`] for reuse.
pub fn wigner_small_d(j: HalfInt, beta: f64) -> Result<DMatrix<f64>> {
    Ok(WignerEngine::new(j)?.matrix(beta))
}

/// One-shot `f_j(θ)`; see [`WignerEngine::f`].
pub fn f_j(j: HalfInt, theta: f64) -> Result<f64> {
    Ok(WignerEngine::new(j)?.f(theta))
}

/// The spin-`j` pair Bell quantity `M = f_j(θ) - (1/J)(2j/3)(j+1) sin θ`,
/// negative exactly when local causality fails for bound `J ≥ j`.
pub fn m_spin_j(big_j: f64, j: HalfInt, theta: f64) -> Result<f64> {
    if j.twice() <= 0 {
        return Err(Error::Validation(format!("the pair quantity needs j > 0, got j = {j}")));
    }
    if big_j < j.value() {
        return Err(Error::Validation(format!(
            "spin bound J = {big_j} is below j = {j}; the premise |m| ≤ J fails"
        )));
    }
    let engine = WignerEngine::new(j)?;
    Ok(m_spin_j_with(&engine, big_j, theta))
}

fn m_spin_j_with(engine: &WignerEngine, big_j: f64, theta: f64) -> f64 {
    let jv = engine.j().value();
    engine.f(theta) - (2.0 * jv / 3.0) * (jv + 1.0) * theta.sin() / big_j
}

/// Sector weights and rotation engines for an `N`-singlet ensemble,
/// shared across the θ grid of a scan.
struct EnsembleContext {
    big_j: f64,
    /// `(weight d_j² ℘_j, engine)` per sector with `j > 0`, ascending.
    sectors: Vec<(f64, WignerEngine)>,
}

impl EnsembleContext {
    fn new(n_pairs: usize) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let report = bell_ensemble_constrained_entanglement(s, s, n_pairs)?;
        let mut sectors = Vec::new();
        for row in &report.rows {
            if row.j.twice() == 0 {
                continue; // all spin components vanish: contributes exactly 0
            }
            sectors.push((row.weight, WignerEngine::new(row.j)?));
        }
        Ok(EnsembleContext { big_j: n_pairs as f64 / 2.0, sectors })
    }

    fn m(&self, theta: f64, mode: EnsembleMode) -> f64 {
        let mut acc = 0.0;
        for (weight, engine) in &self.sectors {
            let term = match mode {
                EnsembleMode::Exact => m_spin_j_with(engine, self.big_j, theta),
                EnsembleMode::Approx => {
                    let jv = engine.j().value();
                    (2.0 / 3.0) * jv * (jv + 1.0) * theta.sin()
                        * (2.0 * theta.sin() - 1.0 / self.big_j)
                }
            };
            acc += weight * term;
        }
        acc
    }
}

/// Ensemble Bell quantity for `N` shared singlets measured non-collectively,
/// with the maximal bound `J = N/2`.
pub fn m_ensemble(n_pairs: usize, theta: f64, mode: EnsembleMode) -> Result<f64> {
    Ok(EnsembleContext::new(n_pairs)?.m(theta, mode))
}

/// One grid point of a violation scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub theta: f64,
    pub m_exact: f64,
    pub m_approx: f64,
}

/// Result of scanning the ensemble Bell quantity over `θ ∈ (0, π/2]`.
#[derive(Debug, Clone, Serialize)]
pub struct BellScanResult {
    /// Number of singlet pairs `N`.
    pub n_pairs: usize,
    /// Spin bound `J = N/2`.
    pub big_j: f64,
    /// Grid rows in ascending θ.
    pub rows: Vec<ScanRow>,
    /// θ interval on which the scanned quantity is negative, edges located
    /// to 1e-6; `None` when no grid point violates.
    pub window: Option<(f64, f64)>,
    /// Most negative value found (grid plus golden-section descent).
    pub depth: f64,
    /// θ at which the depth is attained.
    pub depth_theta: f64,
    /// Small-θ window edge `arcsin(1/2J)` for comparison.
    pub analytic_bound: f64,
}

/// Scan the exact ensemble quantity over a θ grid; see
/// [`violation_scan_mode`].
pub fn violation_scan(n_pairs: usize, grid: usize) -> Result<BellScanResult> {
    violation_scan_mode(n_pairs, grid, EnsembleMode::Exact)
}

/// Scan the ensemble quantities over a θ grid (rows always carry both the
/// exact and the approximate value), refine the violation-window edges of
/// the chosen mode by bisection, and locate its depth by golden-section
/// search.
pub fn violation_scan_mode(
    n_pairs: usize,
    grid: usize,
    mode: EnsembleMode,
) -> Result<BellScanResult> {
    if grid < SCAN_MIN_GRID {
        return Err(Error::Validation(format!(
            "scan needs at least {SCAN_MIN_GRID} grid points, got {grid}"
        )));
    }
    let ctx = EnsembleContext::new(n_pairs)?;
    let step = std::f64::consts::FRAC_PI_2 / grid as f64;
    let mut rows = Vec::with_capacity(grid);
    for k in 1..=grid {
        let theta = k as f64 * step;
        rows.push(ScanRow {
            theta,
            m_exact: ctx.m(theta, EnsembleMode::Exact),
            m_approx: ctx.m(theta, EnsembleMode::Approx),
        });
    }

    let picked = |theta: f64| ctx.m(theta, mode);
    let of_row = |r: &ScanRow| match mode {
        EnsembleMode::Exact => r.m_exact,
        EnsembleMode::Approx => r.m_approx,
    };
    let first_neg = rows.iter().position(|r| of_row(r) < 0.0);
    let mut window = None;
    let mut depth = f64::INFINITY;
    let mut depth_theta = 0.0;
    if let Some(i0) = first_neg {
        let mut i1 = i0;
        while i1 + 1 < rows.len() && of_row(&rows[i1 + 1]) < 0.0 {
            i1 += 1;
        }
        // The quantity vanishes at θ = 0 exactly, so a violation starting
        // at the first grid point extends down to the origin.
        let lo = if i0 == 0 {
            0.0
        } else {
            bisect_zero(&picked, rows[i0 - 1].theta, rows[i0].theta)
        };
        let hi = if i1 + 1 == rows.len() {
            rows[i1].theta
        } else {
            bisect_zero(&picked, rows[i1].theta, rows[i1 + 1].theta)
        };
        window = Some((lo, hi));

        let k_min = (i0..=i1)
            .min_by(|&a, &b| of_row(&rows[a]).partial_cmp(&of_row(&rows[b])).expect("finite"))
            .expect("nonempty run");
        let bracket_lo = if k_min == 0 { lo } else { rows[k_min - 1].theta };
        let bracket_hi = if k_min + 1 == rows.len() { hi } else { rows[k_min + 1].theta };
        let (t, v) = golden_min(&picked, bracket_lo, bracket_hi);
        depth = v;
        depth_theta = t;
    } else {
        for r in &rows {
            if of_row(r) < depth {
                depth = of_row(r);
                depth_theta = r.theta;
            }
        }
    }
    Ok(BellScanResult {
        n_pairs,
        big_j: ctx.big_j,
        rows,
        window,
        depth,
        depth_theta,
        analytic_bound: (1.0 / n_pairs as f64).asin(),
    })
}

/// Most negative value of the spin-`j` pair quantity at the maximal bound
/// `J = j`, located by a grid scan over the violation dip (which sits below
/// `θ ≈ 3·arcsin(1/2j)`) refined by golden-section descent. Returns
/// `(θ_min, depth)`.
pub fn pair_depth(j: HalfInt, grid: usize) -> Result<(f64, f64)> {
    if j.twice() <= 0 {
        return Err(Error::Validation(format!("the pair quantity needs j > 0, got j = {j}")));
    }
    if grid < 50 {
        return Err(Error::Validation(format!(
            "pair-depth scan needs at least 50 grid points, got {grid}"
        )));
    }
    let engine = WignerEngine::new(j)?;
    let big_j = j.value();
    let hi = (3.0 * (0.5 / big_j).min(1.0).asin()).min(std::f64::consts::FRAC_PI_2);
    let step = hi / grid as f64;
    let m = |theta: f64| m_spin_j_with(&engine, big_j, theta);
    let mut k_min = 1;
    let mut best = f64::INFINITY;
    for k in 1..=grid {
        let v = m(k as f64 * step);
        if v < best {
            best = v;
            k_min = k;
        }
    }
    let lo = (k_min - 1) as f64 * step;
    let hi = ((k_min + 1) as f64 * step).min(hi);
    Ok(golden_min(&m, lo, hi))
}

/// Bisect a bracketed sign change of `f` down to the scan tolerance.
fn bisect_zero(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > SCAN_REFINE_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimum of `f` on `[lo, hi]` to the scan tolerance.
fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > SCAN_REFINE_TOL {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Spin operators `(S_z, S_x)` for spin `j`, basis `m = +j … -j`.
fn spin_ops(j: HalfInt) -> (DMatrix<f64>, DMatrix<f64>) {
    let dim = (j.twice() + 1) as usize;
    let jv = j.value();
    let sz = DMatrix::from_fn(dim, dim, |r, c| if r == c { jv - r as f64 } else { 0.0 });
    let mut sx = DMatrix::zeros(dim, dim);
    for k in 1..dim {
        let m = jv - k as f64;
        let c = 0.5 * (jv * (jv + 1.0) - m * (m + 1.0)).sqrt();
        sx[(k - 1, k)] = c;
        sx[(k, k - 1)] = c;
    }
    (sz, sx)
}

/// Amplitudes of the two-particle total-spin-zero state
/// `Σ_m (-1)^{j-m} |m, -m⟩ / √(2j+1)`, indexed `a·dim + b`.
fn spin_zero_pair(j: HalfInt) -> Vec<f64> {
    let dim = (j.twice() + 1) as usize;
    let norm = 1.0 / (dim as f64).sqrt();
    let mut psi = vec![0.0; dim * dim];
    for a in 0..dim {
        // m(a) = j - a, its partner -m sits at index dim - 1 - a.
        let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
        psi[a * dim + (dim - 1 - a)] = sign * norm;
    }
    psi
}

/// Correlation `⟨S_A(ẑ) · S_B(n̂)⟩` of the total-spin-zero pair, with `n̂`
/// at `angle` from `ẑ` — an oracle built from explicit operators, no
/// rotation-matrix formula involved. Equals `-(j(j+1)/3) cos(angle)`.
pub fn correlation_oracle(j: HalfInt, angle: f64) -> Result<f64> {
    if j.twice() <= 0 || j.twice() > ORACLE_MAX_TWO_J {
        return Err(Error::Budget(format!(
            "correlation oracle needs 0 < j ≤ {}, got j = {j}",
            ORACLE_MAX_TWO_J / 2
        )));
    }
    let dim = (j.twice() + 1) as usize;
    let (sz, sx) = spin_ops(j);
    let sb = &sz * angle.cos() + &sx * angle.sin();
    let psi = spin_zero_pair(j);
    let mut acc = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for b2 in 0..dim {
                acc += psi[a * dim + b] * sz[(a, a)] * sb[(b, b2)] * psi[a * dim + b2];
            }
        }
    }
    let jv = j.value();
    let expected = -(jv * (jv + 1.0) / 3.0) * angle.cos();
    if (acc - expected).abs() > 1e-8 {
        return Err(Error::Numerics(format!(
            "correlation {acc} deviates from the sum rule value {expected}"
        )));
    }
    Ok(acc)
}

/// Mean `⟨|m_A - m_B|⟩` of the total-spin-zero pair measured along axes an
/// angle `π - 2θ` apart, computed from numerically diagonalized spin
/// operators — the independent oracle behind `f_j(θ)`.
pub fn anticorrelation_difference_oracle(j: HalfInt, theta: f64) -> Result<f64> {
    if j.twice() <= 0 || j.twice() > ORACLE_MAX_TWO_J {
        return Err(Error::Budget(format!(
            "difference oracle needs 0 < j ≤ {}, got j = {j}",
            ORACLE_MAX_TWO_J / 2
        )));
    }
    let dim = (j.twice() + 1) as usize;
    let (sz, sx) = spin_ops(j);
    let angle = std::f64::consts::PI - 2.0 * theta;
    let sb = &sz * angle.cos() + &sx * angle.sin();
    let eig = sb.symmetric_eigen();
    let psi = spin_zero_pair(j);
    let jv = j.value();
    let mut acc = 0.0;
    for kb in 0..dim {
        let m_b = (2.0 * eig.eigenvalues[kb]).round() / 2.0;
        for a in 0..dim {
            let m_a = jv - a as f64;
            let mut amp = 0.0;
            for b in 0..dim {
                amp += eig.eigenvectors[(b, kb)] * psi[a * dim + b];
            }
            acc += (m_a - m_b).abs() * amp * amp;
        }
    }
    Ok(acc)
}
