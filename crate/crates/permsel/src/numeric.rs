//! Scalar numerics shared across modules: factorial logarithms, stable
//! log-space sums, the eigenvalue clipping policy, and significant-digit
//! rounding for reports.

use crate::{Error, Result};

/// Natural log of 2, used to convert natural logs to bits.
pub const LN_2: f64 = std::f64::consts::LN_2;

/// Eigenvalues (and probabilities) smaller than this in magnitude are
/// treated as exact zeros before any logarithm.
pub const EIG_CLIP: f64 = 1e-12;

/// Negative eigenvalues above this threshold are attributed to roundoff and
/// clipped; anything more negative is a numerics error.
pub const NEG_EIG_TOL: f64 = -1e-10;

/// Cumulative table `t[k] = ln(k!)` for `k = 0..=n`.
///
/// Every log-gamma use in the crate has an integer argument, so a running
/// sum of `ln k` is exact to f64 accumulation error (well below 1e-12
/// relative at the sizes involved).
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// `ln Σ exp(t)` over `terms`, stable against large negative magnitudes.
///
/// Returns `f64::NEG_INFINITY` for an empty or all-`-inf` input.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// `exponent · log_base` with the convention that a zero exponent yields 0
/// even when `log_base = -inf` (i.e. `x^0 = 1` including `0^0`).
pub fn log_pow(log_base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else {
        exponent * log_base
    }
}

/// Apply the crate's eigenvalue clipping policy to a would-be probability.
///
/// Magnitudes below [`EIG_CLIP`] become exact zeros; negatives down to
/// [`NEG_EIG_TOL`] are treated as roundoff and clipped; anything more
/// negative is reported as a numerics failure.
pub fn clip_eigenvalue(x: f64) -> Result<f64> {
    if x < NEG_EIG_TOL {
        return Err(Error::Numerics(format!(
            "eigenvalue {x:e} below the tolerated roundoff floor {NEG_EIG_TOL:e}"
        )));
    }
    if x.abs() < EIG_CLIP {
        Ok(0.0)
    } else {
        Ok(x.max(0.0))
    }
}

/// Shannon entropy in bits of a clipped probability vector.
///
/// Zero entries are skipped; the caller is responsible for normalization.
pub fn entropy_bits_of_probs(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Round to `digits` significant decimal digits (used when serializing
/// reports so reruns are byte-identical and diff-friendly).
pub fn round_sig(x: f64, digits: u32) -> f64 {
    if x == 0.0 {
        return 0.0; // normalizes -0.0, which would serialize as "-0.0"
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits as usize - 1, x)
        .parse()
        .expect("formatted float always reparses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_factorials_match_direct_products() {
        let t = ln_factorials(20);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[1], 0.0);
        let direct: f64 = (2.43290200817664e18_f64).ln(); // 20!
        assert!((t[20] - direct).abs() < 1e-9, "ln 20! off: {} vs {}", t[20], direct);
    }

    #[test]
    fn log_sum_exp_handles_extremes() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        let x = log_sum_exp(&[-1000.0, -1000.0]);
        assert!((x - (-1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn clipping_policy() {
        assert_eq!(clip_eigenvalue(1e-13).unwrap(), 0.0);
        assert_eq!(clip_eigenvalue(-1e-11).unwrap(), 0.0);
        assert!(clip_eigenvalue(-1e-9).is_err());
        assert_eq!(clip_eigenvalue(0.25).unwrap(), 0.25);
    }

    #[test]
    fn sig_digit_rounding() {
        assert_eq!(round_sig(1.1887218755408672, 12), 1.18872187554);
        assert_eq!(round_sig(0.0, 12), 0.0);
        assert_eq!(round_sig(-3.0455659970750349, 12), -3.04556599708);
    }
}
