//! Versioned report payloads behind the `permsel` binary: every capability
//! rendered to deterministic JSON or CSV.
//!
//! All floating-point values are rounded to 12 significant digits before
//! serialization, so a payload built from the same flags is byte-identical
//! across runs and machines with IEEE-754 doubles. Every JSON payload
//! carries `schema_version` and a `kind` discriminator and validates
//! against `schemas/output-v1.json`; CSV renderings start with a header
//! row and use `.` as the decimal separator regardless of locale.

use serde::Serialize;

use crate::bell::{violation_scan_mode, BellScanResult, EnsembleMode};
use crate::entanglement::{
    bell_ensemble_constrained_entanglement, bell_ensemble_state,
    constrained_entanglement_bruteforce, multicopy_recovery, ConstrainedEntanglementReport,
};
use crate::frames::{rf_gram, shared_rf_state, SharedFrameKind};
use crate::layout::Party;
use crate::numeric::round_sig;
use crate::sectors::{spin_sectors, HalfInt};
use crate::state::is_ppt;
use crate::twirl::local_twirl;
use crate::{frames, Error, Result};

/// Version string stamped into every JSON payload.
pub const SCHEMA_VERSION: &str = "1";
/// Significant digits kept on every serialized float.
pub const SIG_DIGITS: u32 = 12;

fn sig(x: f64) -> f64 {
    round_sig(x, SIG_DIGITS)
}

/// Render a float for CSV with the same rounding as the JSON payloads.
fn csv_num(x: f64) -> String {
    format!("{}", sig(x))
}

/// A payload that renders to both output formats.
pub trait Report: Serialize {
    /// Pretty JSON with a trailing newline.
    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }

    /// Header row plus data rows, `\n`-terminated.
    fn to_csv(&self) -> String;
}

/// One spin sector of the `N`-molecule decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct SectorLine {
    /// Total spin of the sector.
    pub j: HalfInt,
    /// Dimension of the permutation factor (multiplicity of spin `j`).
    pub d_j: u128,
    /// Rank of the sector projector, `d_j · (2j+1)`.
    pub rank: u128,
}

/// Output of `permsel decompose`.
#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    pub sectors: Vec<SectorLine>,
}

impl DecomposeReport {
    /// Decompose `(C²)^⊗N` into total-spin sectors.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("N must be ≥ 1".into()));
        }
        let sectors = spin_sectors(n)?
            .into_iter()
            .map(|s| SectorLine {
                j: s.j,
                d_j: s.multiplicity,
                rank: s.multiplicity * (s.j.twice() + 1) as u128,
            })
            .collect();
        Ok(DecomposeReport { schema_version: SCHEMA_VERSION, kind: "decompose", n, sectors })
    }
}

impl Report for DecomposeReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("j,d_j,rank\n");
        for s in &self.sectors {
            out.push_str(&format!("{},{},{}\n", csv_num(s.j.value()), s.d_j, s.rank));
        }
        out
    }
}

/// How `permsel entanglement` evaluates the constrained entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementMode {
    /// Log-space sector sum, any `N` up to 2^14.
    Closed,
    /// Explicit twirl-and-decompose on the dense state, `N ≤ 5`.
    Brute,
}

/// One sector row of an entanglement report.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementLine {
    pub j: HalfInt,
    pub weight: f64,
    pub entanglement: f64,
}

/// Output of `permsel entanglement`.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementCliReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha_sq: f64,
    pub mode: &'static str,
    pub rows: Vec<EntanglementLine>,
    pub total: f64,
    pub unconstrained: f64,
    pub loss: f64,
}

impl EntanglementCliReport {
    /// Constrained entanglement of `N` shared pairs `α|↑↓⟩ + β|↓↑⟩` with
    /// `α² = alpha_sq`.
    pub fn new(n: usize, alpha_sq: f64, mode: EntanglementMode) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::Validation(format!("alpha_sq must lie in [0, 1], got {alpha_sq}")));
        }
        let alpha = alpha_sq.sqrt();
        let beta = (1.0 - alpha_sq).sqrt();
        let (inner, mode_name): (ConstrainedEntanglementReport, _) = match mode {
            EntanglementMode::Closed => {
                (bell_ensemble_constrained_entanglement(alpha, beta, n)?, "closed")
            }
            EntanglementMode::Brute => {
                let psi = bell_ensemble_state(alpha, beta, n)?;
                (constrained_entanglement_bruteforce(&psi)?, "brute")
            }
        };
        let rows = inner
            .rows
            .iter()
            .map(|r| EntanglementLine {
                j: r.j,
                weight: sig(r.weight),
                entanglement: sig(r.entanglement),
            })
            .collect();
        Ok(EntanglementCliReport {
            schema_version: SCHEMA_VERSION,
            kind: "entanglement",
            n,
            alpha_sq: sig(alpha_sq),
            mode: mode_name,
            rows,
            total: sig(inner.total),
            unconstrained: sig(inner.unconstrained),
            loss: sig(inner.loss()),
        })
    }
}

impl Report for EntanglementCliReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("j,weight,entanglement\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_num(r.j.value()),
                csv_num(r.weight),
                csv_num(r.entanglement)
            ));
        }
        out
    }
}

/// One multicopy row: `C` copies recover `E` of the `2C` constraint-free
/// ebits, leaving `gap = 2C - E`.
#[derive(Debug, Clone, Serialize)]
pub struct RecoverLine {
    #[serde(rename = "C")]
    pub c: u32,
    #[serde(rename = "E")]
    pub e: f64,
    pub gap: f64,
}

/// Output of `permsel recover`.
#[derive(Debug, Clone, Serialize)]
pub struct RecoverReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub c_max: u32,
    pub rows: Vec<RecoverLine>,
}

impl RecoverReport {
    /// Constrained entanglement of `C` copies of a perfect Bell pair for
    /// every `C` up to `c_max`.
    pub fn new(c_max: u32) -> Result<Self> {
        let mut rows = Vec::with_capacity(c_max as usize);
        for c in 1..=c_max {
            let (e, unconstrained) = multicopy_recovery(c)?;
            rows.push(RecoverLine { c, e: sig(e), gap: sig(unconstrained - e) });
        }
        if rows.is_empty() {
            return Err(Error::Validation("c_max must be ≥ 1".into()));
        }
        Ok(RecoverReport { schema_version: SCHEMA_VERSION, kind: "recover", c_max, rows })
    }
}

impl Report for RecoverReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("C,E,gap\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.c, csv_num(r.e), csv_num(r.gap)));
        }
        out
    }
}

/// One Young frame of the reference-frame pool.
#[derive(Debug, Clone, Serialize)]
pub struct FrameLine {
    /// Row lengths, e.g. `"[3,2]"`.
    pub frame: String,
    pub irrep_dim: u128,
    pub multiplicity: u128,
    /// Whether the local dimension admits this frame (`multiplicity ≥ irrep_dim`).
    pub included: bool,
}

/// Output of `permsel refframe`.
#[derive(Debug, Clone, Serialize)]
pub struct RefframeReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    /// Normalizer `D = Σ_{y∈Ȳ} D_y²`.
    #[serde(rename = "D")]
    pub normalizer: u128,
    pub frames: Vec<FrameLine>,
    pub max_offdiag_overlap_sq: f64,
    pub perfect: bool,
}

impl RefframeReport {
    /// Gram diagnostics of the best fiducial frame for `N` molecules of
    /// local dimension `d`.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!(
                "a reference frame needs at least 2 molecules to order, got N = {n}"
            )));
        }
        let family = rf_gram(n, d)?;
        let frames = family
            .pool
            .iter()
            .map(|p| FrameLine {
                frame: p.frame.to_string(),
                irrep_dim: p.irrep_dim,
                multiplicity: p.multiplicity,
                included: p.included,
            })
            .collect();
        Ok(RefframeReport {
            schema_version: SCHEMA_VERSION,
            kind: "refframe",
            n,
            d,
            normalizer: family.normalizer,
            frames,
            max_offdiag_overlap_sq: sig(family.max_off_diagonal_overlap_sq()),
            perfect: family.is_perfect(),
        })
    }
}

impl Report for RefframeReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        out.push_str(&format!("D,{}\n", self.normalizer));
        let included = self.frames.iter().filter(|f| f.included).count();
        out.push_str(&format!("frames_included,{included}\n"));
        out.push_str(&format!(
            "max_offdiag_overlap_sq,{}\n",
            csv_num(self.max_offdiag_overlap_sq)
        ));
        out.push_str(&format!("perfect,{}\n", self.perfect));
        out
    }
}

/// Entanglement before/after frame-assisted activation.
#[derive(Debug, Clone, Serialize)]
pub struct ActivationBlock {
    pub before: f64,
    pub after: f64,
}

/// Constrained entanglement of one vs two copies of the bound pair.
#[derive(Debug, Clone, Serialize)]
pub struct DistillationBlock {
    pub one_copy: f64,
    pub two_copies: f64,
}

/// Output of `permsel demos`.
#[derive(Debug, Clone, Serialize)]
pub struct DemosReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub activation: ActivationBlock,
    pub distillation: DistillationBlock,
    /// Whether the twirled two-molecule pure shared frame has a positive
    /// partial transpose.
    pub shared_rf_ppt: bool,
}

impl DemosReport {
    /// Run the activation and distillation demonstrations and the shared
    /// reference-frame PPT check.
    pub fn new() -> Result<Self> {
        let (before, after) = frames::activation_demo()?;
        let (one_copy, two_copies) = frames::distillation_demo()?;
        let shared = shared_rf_state(2, SharedFrameKind::Pure)?;
        let twirled = local_twirl(&shared)?;
        let ppt = is_ppt(&twirled, Party::A)?;
        Ok(DemosReport {
            schema_version: SCHEMA_VERSION,
            kind: "demos",
            activation: ActivationBlock { before: sig(before), after: sig(after) },
            distillation: DistillationBlock { one_copy: sig(one_copy), two_copies: sig(two_copies) },
            shared_rf_ppt: ppt,
        })
    }
}

impl Report for DemosReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        out.push_str(&format!("activation_before,{}\n", csv_num(self.activation.before)));
        out.push_str(&format!("activation_after,{}\n", csv_num(self.activation.after)));
        out.push_str(&format!("distillation_one_copy,{}\n", csv_num(self.distillation.one_copy)));
        out.push_str(&format!(
            "distillation_two_copies,{}\n",
            csv_num(self.distillation.two_copies)
        ));
        out.push_str(&format!("shared_rf_ppt,{}\n", self.shared_rf_ppt));
        out
    }
}

/// Output of `permsel bell`: summary in JSON, the full scan table in CSV.
#[derive(Debug, Clone, Serialize)]
pub struct BellReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub n_pairs: usize,
    pub big_j: f64,
    pub grid: usize,
    pub mode: &'static str,
    /// Violation window of the scanned mode, `[θ_lo, θ_hi]`, or `null`.
    pub window: Option<[f64; 2]>,
    pub depth: f64,
    pub depth_theta: f64,
    /// Small-θ edge `arcsin(1/2J)`.
    pub analytic_bound: f64,
    #[serde(skip)]
    scan: BellScanResult,
}

impl BellReport {
    /// Scan the ensemble Bell quantity for `J = big_j` (so `N = 2J` pairs)
    /// over a θ grid.
    pub fn new(big_j: f64, grid: usize, mode: EnsembleMode) -> Result<Self> {
        let doubled = 2.0 * big_j;
        let n = doubled.round();
        if (doubled - n).abs() > 1e-9 || n < 1.0 {
            return Err(Error::Validation(format!(
                "J must be a positive half-integer so that N = 2J counts pairs, got J = {big_j}"
            )));
        }
        let scan = violation_scan_mode(n as usize, grid, mode)?;
        Ok(BellReport {
            schema_version: SCHEMA_VERSION,
            kind: "bell",
            n_pairs: scan.n_pairs,
            big_j: sig(scan.big_j),
            grid,
            mode: match mode {
                EnsembleMode::Exact => "exact",
                EnsembleMode::Approx => "approx",
            },
            window: scan.window.map(|(lo, hi)| [sig(lo), sig(hi)]),
            depth: sig(scan.depth),
            depth_theta: sig(scan.depth_theta),
            analytic_bound: sig(scan.analytic_bound),
            scan,
        })
    }
}

impl Report for BellReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("theta,m_exact,m_approx\n");
        for r in &self.scan.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_num(r.theta),
                csv_num(r.m_exact),
                csv_num(r.m_approx)
            ));
        }
        out
    }
}

/// Machine-readable error object written to stderr by the binary.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub error_type: &'static str,
    pub message: String,
}

impl ErrorReport {
    /// Wrap a crate error; `error_type` mirrors the exit-code taxonomy.
    pub fn new(err: &Error) -> Self {
        let error_type = match err {
            Error::Validation(_) => "validation",
            Error::Budget(_) => "budget",
            Error::Numerics(_) => "numerics",
        };
        ErrorReport {
            schema_version: SCHEMA_VERSION,
            kind: "error",
            error_type,
            message: err.to_string(),
        }
    }

    /// Process exit code for the wrapped error: 2 for validation, 3 for
    /// budget and numerics failures.
    pub fn exit_code(&self) -> i32 {
        if self.error_type == "validation" {
            2
        } else {
            3
        }
    }

    /// Single-line JSON (stderr should stay line-oriented).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("error report serializes")
    }
}
