//! Young frames and the orthogonal irreducible representations of the
//! symmetric group.
//!
//! A frame (partition of `N`) labels an irrep of `S_N`; its dimension comes
//! from the hook-length formula. The representation matrices are built in
//! Young's orthogonal form on the basis of standard tableaux: each adjacent
//! transposition `s_k` acts through the inverse axial distance between the
//! boxes holding `k` and `k+1`, and a general group element is the product
//! of generator matrices along an adjacent-transposition factorization.

use nalgebra::DMatrix;

use crate::perm::Permutation;
use crate::{Error, Result};

/// Largest `N` for which the representation builder runs (group-sum and
/// tableau enumeration budget).
pub const YOUNG_REP_MAX_N: usize = 6;

/// A Young frame: non-increasing positive row lengths summing to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungFrame {
    rows: Vec<usize>,
}

impl YoungFrame {
    /// Validate row lengths (non-increasing, positive).
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Validation("a frame needs at least one row".into()));
        }
        if rows.iter().any(|&r| r == 0) {
            return Err(Error::Validation("frame rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!("frame rows {rows:?} must be non-increasing")));
        }
        Ok(YoungFrame { rows })
    }

    /// Row lengths.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of boxes `N`.
    pub fn n(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of rows.
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// The two-row (or one-row) frame `(J + j, J - j)` attached to total
    /// spin `j` of `n = 2J` spin-1/2 molecules; `two_j` is `2j`.
    pub fn two_row(n: usize, two_j: usize) -> Result<Self> {
        if two_j > n || (n - two_j) % 2 != 0 {
            return Err(Error::Validation(format!("no two-row frame for n={n}, 2j={two_j}")));
        }
        let lower = (n - two_j) / 2;
        if lower == 0 {
            YoungFrame::new(vec![n])
        } else {
            YoungFrame::new(vec![n - lower, lower])
        }
    }

    /// All frames of `n` boxes in decreasing lexicographic order
    /// (`[n]` first, `[1,…,1]` last).
    pub fn all(n: usize) -> Vec<YoungFrame> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<YoungFrame>) {
            if remaining == 0 {
                out.push(YoungFrame { rows: current.clone() });
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                current.push(part);
                rec(remaining - part, part, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }

    /// Hook length of the box at (row, col), 0-based.
    pub(crate) fn hook_len(&self, row: usize, col: usize) -> usize {
        let arm = self.rows[row] - col - 1;
        let leg = self.rows[row + 1..].iter().filter(|&&r| r > col).count();
        arm + leg + 1
    }

    /// Irrep dimension by the hook-length formula, exact in `u128`
    /// (supported for `n ≤ 33`, far above every enforced budget).
    pub fn hook_dimension(&self) -> Result<u128> {
        let n = self.n();
        if n > 33 {
            return Err(Error::Budget(format!("hook dimension overflows u128 beyond n=33, got n={n}")));
        }
        let mut numerator: u128 = 1;
        for k in 1..=n {
            numerator *= k as u128;
        }
        let mut denominator: u128 = 1;
        for (r, &len) in self.rows.iter().enumerate() {
            for c in 0..len {
                denominator *= self.hook_len(r, c) as u128;
            }
        }
        Ok(numerator / denominator)
    }
}

impl std::fmt::Display for YoungFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// A standard tableau stored as `row_of[k]` = row of entry `k` (entries are
/// `0..n`, increasing along rows and down columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    row_of: Vec<usize>,
    col_of: Vec<usize>,
}

impl StandardTableau {
    /// Row of entry `k` (0-based).
    pub fn row_of(&self, k: usize) -> usize {
        self.row_of[k]
    }

    /// Column of entry `k` (0-based).
    pub fn col_of(&self, k: usize) -> usize {
        self.col_of[k]
    }

    /// Content (column minus row) of entry `k`.
    fn content(&self, k: usize) -> i64 {
        self.col_of[k] as i64 - self.row_of[k] as i64
    }
}

/// All standard tableaux of `frame`, sorted by last-letter order: tableaux
/// compare by the rows of their largest entries, largest entry first.
pub fn standard_tableaux(frame: &YoungFrame) -> Vec<StandardTableau> {
    let n = frame.n();
    let rows = frame.rows().to_vec();
    let mut fill = vec![0usize; rows.len()];
    let mut row_of = vec![0usize; n];
    let mut col_of = vec![0usize; n];
    let mut out = Vec::new();
    fn rec(
        k: usize,
        n: usize,
        rows: &[usize],
        fill: &mut [usize],
        row_of: &mut [usize],
        col_of: &mut [usize],
        out: &mut Vec<StandardTableau>,
    ) {
        if k == n {
            out.push(StandardTableau { row_of: row_of.to_vec(), col_of: col_of.to_vec() });
            return;
        }
        for r in 0..rows.len() {
            let can_place = fill[r] < rows[r] && (r == 0 || fill[r - 1] > fill[r]);
            if can_place {
                row_of[k] = r;
                col_of[k] = fill[r];
                fill[r] += 1;
                rec(k + 1, n, rows, fill, row_of, col_of, out);
                fill[r] -= 1;
            }
        }
    }
    rec(0, n, &rows, &mut fill, &mut row_of, &mut col_of, &mut out);
    out.sort_by(|a, b| {
        let key = |t: &StandardTableau| -> Vec<usize> { (0..n).rev().map(|k| t.row_of[k]).collect() };
        key(a).cmp(&key(b))
    });
    out
}

/// Young's orthogonal representation of `S_N` for one frame.
#[derive(Debug, Clone)]
pub struct IrrepRep {
    frame: YoungFrame,
    tableaux: Vec<StandardTableau>,
    /// `generators[k]` represents the adjacent transposition `s_k`.
    generators: Vec<DMatrix<f64>>,
}

impl IrrepRep {
    /// Frame this representation belongs to.
    pub fn frame(&self) -> &YoungFrame {
        &self.frame
    }

    /// Representation dimension (number of standard tableaux).
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Standard tableaux labelling the basis, in last-letter order.
    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// Matrix of the adjacent transposition `s_k`.
    pub fn generator(&self, k: usize) -> &DMatrix<f64> {
        &self.generators[k]
    }

    /// Matrix of an arbitrary group element, composed along its
    /// adjacent-transposition factorization.
    pub fn matrix(&self, p: &Permutation) -> Result<DMatrix<f64>> {
        if p.n() != self.frame.n() {
            return Err(Error::Validation(format!(
                "permutation on {} points in a representation of S_{}",
                p.n(),
                self.frame.n()
            )));
        }
        let mut m = DMatrix::<f64>::identity(self.dim(), self.dim());
        for k in p.adjacent_factorization() {
            m = m * &self.generators[k];
        }
        Ok(m)
    }

    /// Character `χ(p) = tr t(p)`.
    pub fn character(&self, p: &Permutation) -> Result<f64> {
        Ok(self.matrix(p)?.trace())
    }
}

/// Build Young's orthogonal form for `frame`.
pub fn young_orthogonal_rep(frame: &YoungFrame) -> Result<IrrepRep> {
    let n = frame.n();
    if n > YOUNG_REP_MAX_N {
        return Err(Error::Budget(format!(
            "orthogonal representation capped at N = {YOUNG_REP_MAX_N}, got N = {n}"
        )));
    }
    let tableaux = standard_tableaux(frame);
    let dim = tableaux.len();
    // Index of a tableau by its row word, to find the k↔k+1 partner.
    let index_of = |rw: &[usize]| -> Option<usize> {
        tableaux.iter().position(|t| t.row_of == rw)
    };
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for (t_idx, t) in tableaux.iter().enumerate() {
            let d = t.content(k + 1) - t.content(k);
            let rho = 1.0 / d as f64;
            m[(t_idx, t_idx)] = rho;
            if d.unsigned_abs() > 1 {
                // Exchanging k and k+1 keeps the tableau standard exactly
                // when they share neither row nor column.
                let mut rw = t.row_of.clone();
                rw.swap(k, k + 1);
                let partner = index_of(&rw).expect("axial distance > 1 implies a standard partner");
                m[(partner, t_idx)] = (1.0 - rho * rho).sqrt();
            }
        }
        generators.push(m);
    }
    Ok(IrrepRep { frame: frame.clone(), tableaux, generators })
}
