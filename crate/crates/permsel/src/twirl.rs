//! Twirling channels: averages over molecule permutations.
//!
//! Under the superselection rule a party without a permutation reference
//! frame only ever accesses the twirl of a state. The global twirl
//! `P(ρ) = (1/N!) Σ_p T(p) ρ T(p)†` averages over permutations of whole
//! molecules; the local twirl `P_A ⊗ P_B` averages each party's share
//! independently. Because `T_A(p)` and `T_B(q)` commute, the `(N!)²`-term
//! double sum factors exactly into two single group sums, which is how it
//! is evaluated; every conjugation is a pure index permutation.

use crate::layout::Scope;
use crate::perm::{permutation_index_map, Permutation};
use crate::state::{CMat, DensityOperator};
use crate::{Error, Result};

/// Cap on `N` for the global twirl (`N!` conjugations).
pub const GLOBAL_TWIRL_MAX_N: usize = 6;
/// Cap on `N` for the local twirl (`(N!)²` terms in its defining sum).
pub const LOCAL_TWIRL_MAX_N: usize = 5;

/// Average `ρ` over the permutations of one scope: `(1/N!) Σ_p T(p) ρ T(p)†`.
fn scoped_group_average(rho: &DensityOperator, scope: Scope) -> Result<DensityOperator> {
    let layout = rho.layout();
    let n = layout.n_molecules();
    let dim = layout.total_dim();
    let mut acc = CMat::zeros(dim, dim);
    for p in Permutation::all(n) {
        let map = permutation_index_map(layout, &p, scope)?;
        let mat = rho.mat();
        for j in 0..dim {
            let cj = map[j];
            for i in 0..dim {
                acc[(map[i], cj)] += mat[(i, j)];
            }
        }
    }
    let factorial: f64 = (1..=n as u64).map(|k| k as f64).product();
    DensityOperator::from_matrix(layout.clone(), acc.unscale(factorial))
}

/// Global twirl: average over simultaneous permutations of whole molecules.
pub fn global_twirl(rho: &DensityOperator) -> Result<DensityOperator> {
    let n = rho.layout().n_molecules();
    if n > GLOBAL_TWIRL_MAX_N {
        return Err(Error::Budget(format!(
            "global twirl capped at N = {GLOBAL_TWIRL_MAX_N} (N! group sum), got N = {n}"
        )));
    }
    scoped_group_average(rho, Scope::Global)
}

/// Twirl of a single party's share, leaving the other party untouched.
pub fn party_twirl(rho: &DensityOperator, scope: Scope) -> Result<DensityOperator> {
    let n = rho.layout().n_molecules();
    if n > LOCAL_TWIRL_MAX_N {
        return Err(Error::Budget(format!(
            "party twirl capped at N = {LOCAL_TWIRL_MAX_N}, got N = {n}"
        )));
    }
    if scope.party().is_none() {
        return Err(Error::Validation("party twirl needs scope A or B; use global_twirl".into()));
    }
    scoped_group_average(rho, scope)
}

/// Local twirl `P_A ⊗ P_B`: both parties average their own shares.
///
/// Evaluated as the exact factorization `P_A ∘ P_B` of the `(N!)²`-term
/// double sum.
pub fn local_twirl(rho: &DensityOperator) -> Result<DensityOperator> {
    let layout = rho.layout();
    let n = layout.n_molecules();
    if n > LOCAL_TWIRL_MAX_N {
        return Err(Error::Budget(format!(
            "local twirl capped at N = {LOCAL_TWIRL_MAX_N} ((N!)² terms), got N = {n}"
        )));
    }
    if layout.scope_slots(Scope::A).is_empty() || layout.scope_slots(Scope::B).is_empty() {
        return Err(Error::Validation("local twirl needs atoms on both parties".into()));
    }
    let after_b = scoped_group_average(rho, Scope::B)?;
    scoped_group_average(&after_b, Scope::A)
}
