//! The ten headline acceptance checks, one test per criterion, each at its
//! stated tolerance and runtime budget. Run with
//! `cargo test --test acceptance -- --nocapture` to see one summary line
//! per criterion.

use std::time::Instant;

use permsel::bell::{
    anticorrelation_difference_oracle, f_j, m_ensemble, pair_depth, violation_scan, EnsembleMode,
};
use permsel::entanglement::{
    bell_ensemble_constrained_entanglement, bell_ensemble_state,
    constrained_entanglement_bruteforce, multicopy_recovery,
};
use permsel::frames::{
    activation_demo, distillation_demo, rf_gram, shared_rf_state, SharedFrameKind,
};
use permsel::layout::Party;
use permsel::sectors::HalfInt;
use permsel::state::{is_ppt, max_abs_entry, partial_transpose};
use permsel::twirl::local_twirl;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn pass(id: u32, what: &str, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_s,
        "criterion {id}: FAIL — runtime {elapsed:.2} s exceeds the {budget_s} s budget"
    );
    println!("criterion {id:2}: PASS — {what} ({elapsed:.2} s)");
}

#[test]
fn criterion_01_n2_constrained_entanglement() {
    let t = Instant::now();
    let expected = 0.75 * 3.0f64.log2();
    let closed = bell_ensemble_constrained_entanglement(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 2).unwrap();
    assert!(
        (closed.total - expected).abs() < 1e-9,
        "criterion 1: FAIL — closed form {} vs (3/4)log2(3) = {expected}",
        closed.total
    );
    let psi = bell_ensemble_state(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 2).unwrap();
    let brute = constrained_entanglement_bruteforce(&psi).unwrap();
    assert!(
        (brute.total - expected).abs() < 1e-8,
        "criterion 1: FAIL — brute force {} vs (3/4)log2(3) = {expected}",
        brute.total
    );
    pass(1, "N=2 singlet ensemble keeps (3/4)·log2(3) ≈ 1.188722 ebits", t, 1.0);
}

#[test]
fn criterion_02_closed_vs_brute_oracle() {
    let t = Instant::now();
    for n in 2..=5usize {
        for alpha_sq in [0.5f64, 0.3, 0.1] {
            let (a, b) = (alpha_sq.sqrt(), (1.0 - alpha_sq).sqrt());
            let closed = bell_ensemble_constrained_entanglement(a, b, n).unwrap();
            let brute =
                constrained_entanglement_bruteforce(&bell_ensemble_state(a, b, n).unwrap())
                    .unwrap();
            assert_eq!(
                closed.rows.len(),
                brute.rows.len(),
                "criterion 2: FAIL — sector counts differ at N={n}, alpha²={alpha_sq}"
            );
            for (c, bf) in closed.rows.iter().zip(&brute.rows) {
                assert_eq!(c.j.twice(), bf.j.twice());
                assert!(
                    (c.weight - bf.weight).abs() < 1e-8
                        && (c.entanglement - bf.entanglement).abs() < 1e-8,
                    "criterion 2: FAIL — sector j={} disagrees at N={n}, alpha²={alpha_sq}: \
                     weight {} vs {}, entanglement {} vs {}",
                    c.j,
                    c.weight,
                    bf.weight,
                    c.entanglement,
                    bf.entanglement
                );
            }
        }
    }
    pass(2, "closed form matches the brute-force twirl for N ≤ 5, three ensembles", t, 120.0);
}

#[test]
fn criterion_03_weight_normalization_at_2_pow_14() {
    let t = Instant::now();
    let report =
        bell_ensemble_constrained_entanglement(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 1 << 14).unwrap();
    let total_weight: f64 = report.rows.iter().map(|r| r.weight).sum();
    assert!(
        (total_weight - 1.0).abs() < 1e-9,
        "criterion 3: FAIL — sector weights sum to {total_weight} at N = 2^14"
    );
    pass(3, "sector weights sum to 1 within 1e-9 at N = 2^14", t, 10.0);
}

#[test]
fn criterion_04_asymptotic_loss_ratio() {
    let t = Instant::now();
    let n = 1usize << 14;
    let report =
        bell_ensemble_constrained_entanglement(FRAC_1_SQRT_2, FRAC_1_SQRT_2, n).unwrap();
    let leading = 0.5 * (n as f64).log2();
    let ratio = report.total / leading;
    assert!(
        (0.75..=1.25).contains(&ratio),
        "criterion 4: FAIL — E_constrained/(½log2 N) = {ratio} at N = 2^14"
    );
    pass(4, "surviving entanglement tracks ½·log2(N) within 25% at N = 2^14", t, 30.0);
}

#[test]
fn criterion_05_multicopy_recovery() {
    let t = Instant::now();
    let (e1, _) = multicopy_recovery(1).unwrap();
    let (e2, _) = multicopy_recovery(2).unwrap();
    assert!(
        (e1 - 1.1887218755408672).abs() < 1e-9,
        "criterion 5: FAIL — E(1) = {e1}"
    );
    assert!(
        (e2 - 3.045565997075035).abs() < 1e-9,
        "criterion 5: FAIL — E(2) = {e2}"
    );
    let mut last_gap = 0.0;
    for c in 1..=20 {
        let (e, unconstrained) = multicopy_recovery(c).unwrap();
        let gap = unconstrained - e;
        assert!(gap > last_gap, "criterion 5: FAIL — gap not increasing at C = {c}");
        last_gap = gap;
    }
    assert!(
        last_gap > 0.99 && last_gap < 1.0,
        "criterion 5: FAIL — gap at C = 20 is {last_gap}"
    );
    pass(5, "multicopy recovery values and the 2C−E → 1 gap behave as stated", t, 1.0);
}

#[test]
fn criterion_06_gram_identity_and_imperfection() {
    let t = Instant::now();
    for (n, d) in [(2usize, 2usize), (3, 3), (4, 4)] {
        let family = rf_gram(n, d).unwrap();
        // Off-diagonal entries below 1e-9 in magnitude, i.e. 1e-18 squared.
        let max_sq = family.max_off_diagonal_overlap_sq();
        assert!(
            max_sq < 1e-18,
            "criterion 6: FAIL — ({n},{d}) frame has off-diagonal overlap² = {max_sq}"
        );
    }
    let imperfect = rf_gram(3, 2).unwrap();
    let max_sq = imperfect.max_off_diagonal_overlap_sq();
    assert!(
        (max_sq - 0.04).abs() < 1e-9,
        "criterion 6: FAIL — (3,2) frame overlap² = {max_sq}, expected 0.04"
    );
    pass(6, "frames are perfect for d ≥ N and measurably imperfect at (3,2)", t, 30.0);
}

#[test]
fn criterion_07_shared_frame_is_ppt() {
    let t = Instant::now();
    let shared = shared_rf_state(2, SharedFrameKind::Pure).unwrap();
    let effective = local_twirl(&shared).unwrap();
    let pt = partial_transpose(&effective, Party::B).unwrap();
    let deviation = max_abs_entry(&(pt.mat() - effective.mat()));
    assert!(
        deviation < 1e-12,
        "criterion 7: FAIL — partial transpose deviates elementwise by {deviation}"
    );
    assert!(
        is_ppt(&effective, Party::B).unwrap(),
        "criterion 7: FAIL — twirled shared frame is not PPT"
    );
    pass(7, "the accessible two-molecule shared frame equals its partial transpose", t, 1.0);
}

#[test]
fn criterion_08_activation_and_distillation() {
    let t = Instant::now();
    let (before, after) = activation_demo().unwrap();
    assert!(
        before.abs() < 1e-9 && (after - 1.0).abs() < 1e-9,
        "criterion 8: FAIL — activation gave ({before}, {after})"
    );
    let (one, two) = distillation_demo().unwrap();
    assert!(
        one.abs() < 1e-9 && (two - 1.0).abs() < 1e-9,
        "criterion 8: FAIL — distillation gave ({one}, {two})"
    );
    pass(8, "activation and two-copy distillation both recover exactly 1 ebit", t, 5.0);
}

#[test]
fn criterion_09_bell_violation_survey() {
    let t = Instant::now();
    // Window edges against the small-θ bound sin θ = 1/2J, measured in the
    // sine relative to the exact edge.
    for (big_j, pairs, tol) in [(1.0, 2usize, 0.20), (3.0, 6, 0.08)] {
        let scan = violation_scan(pairs, 400).unwrap();
        let (_, hi) = scan.window.expect("violation window exists");
        let rel = (hi.sin() - 0.5 / big_j).abs() / hi.sin();
        assert!(
            rel < tol,
            "criterion 9: FAIL — J={big_j} edge sin {} vs {} differs by {rel:.4}",
            hi.sin(),
            0.5 / big_j
        );
    }
    // Spin-J pair depth at J = 50 approaches the constant -1/12.
    let (_, depth50) = pair_depth(HalfInt::from_twice(100), 400).unwrap();
    let rel50 = (depth50 + 1.0 / 12.0).abs() / (1.0 / 12.0);
    assert!(
        rel50 < 0.05,
        "criterion 9: FAIL — pair depth at J=50 is {depth50}, {rel50:.4} from -1/12"
    );
    // Ensemble depth scales like -1/J: halving J doubles the depth.
    let depth8 = violation_scan(16, 400).unwrap().depth;
    let depth16 = violation_scan(32, 400).unwrap().depth;
    let ratio = depth8 / depth16;
    assert!(
        (ratio - 2.0).abs() < 0.2,
        "criterion 9: FAIL — depth(J=8)/depth(J=16) = {ratio}"
    );
    // Nonlocality survives the constraint at every ensemble size up to J=16.
    for big_j in 1..=16usize {
        let theta = 0.7 * (0.5 / big_j as f64).asin();
        let m = m_ensemble(2 * big_j, theta, EnsembleMode::Exact).unwrap();
        assert!(m < 0.0, "criterion 9: FAIL — no violation at J = {big_j} (M = {m})");
    }
    pass(9, "Bell windows, depths, and survival at every J ≤ 16 all check out", t, 120.0);
}

#[test]
fn criterion_10_f_oracle_equivalence() {
    let t = Instant::now();
    for two_j in 1..=10i64 {
        let j = HalfInt::from_twice(two_j);
        for theta in [0.1, 0.3, 0.7] {
            let direct = f_j(j, theta).unwrap();
            let oracle = anticorrelation_difference_oracle(j, theta).unwrap();
            assert!(
                (direct - oracle).abs() < 1e-8,
                "criterion 10: FAIL — f mismatch at j={j}, θ={theta}: {direct} vs {oracle}"
            );
        }
    }
    pass(10, "f_j matches the anticorrelated-pair oracle for every j ≤ 5", t, 30.0);
}
