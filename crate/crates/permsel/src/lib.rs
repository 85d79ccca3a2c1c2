//! Numerical toolkit for bipartite entanglement under a symmetric-group
//! superselection rule.
//!
//! The physical setting is an ensemble of `N` identical molecules shared
//! between two parties who cannot address individual molecules: every
//! allowed operation commutes with permutations of the molecules, so states
//! are only ever accessible through their permutation twirl. This crate
//! provides
//!
//! - dense states and operators over molecule/atom layouts ([`layout`],
//!   [`state`]),
//! - the symmetric-group machinery: permutation operators, Young frames and
//!   their orthogonal irreducible representations, spin-sector and
//!   matrix-element projectors, and global/local twirling channels
//!   ([`perm`], [`young`], [`sectors`], [`twirl`]),
//! - entanglement measures constrained by the superselection rule, in both
//!   a closed form and a brute-force route that twirls and decomposes states
//!   explicitly ([`entanglement`]),
//! - permutation reference frames — token states that restore access to the
//!   forbidden coherences — together with activation and distillation
//!   demonstrations ([`frames`]),
//! - a Mermin-type Bell-inequality evaluator for constrained singlet
//!   ensembles ([`bell`]),
//! - report types that serialize every capability to a versioned JSON/CSV
//!   surface, shared with the thin `permsel` binary ([`report`]).
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod bell;
pub mod entanglement;
pub mod frames;
pub mod layout;
pub mod numeric;
pub mod perm;
pub mod report;
pub mod sectors;
pub mod state;
pub mod twirl;
pub mod young;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    Validation(String),
    /// The request was well-formed but exceeds an enforced compute budget
    /// (group-sum size or dense-dimension cap).
    #[error("compute budget exceeded: {0}")]
    Budget(String),
    /// A numerical guarantee failed (non-Hermitian input, eigenvalue outside
    /// tolerated clipping range, residual above tolerance).
    #[error("numerical failure: {0}")]
    Numerics(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
