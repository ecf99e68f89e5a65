//! Free cumulants of μ_c and the Hankel-positivity test of their shifted sequence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::cumulants::series::free_from_moments_generic;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, integer_row};
use crate::rational::{serde_rational, RationalSeq, Role, Sign};
use crate::transforms::jacobi::{chebyshev, predicted_hankel_sign, scaled_mu_c_moments};

/// Largest order for exact free cumulants of μ_c.
pub const MAX_FID_ORDER: usize = 400;
/// Largest `k` for a direct fraction-free Hankel determinant.
pub const MAX_HANKEL_DIRECT: usize = 40;

/// Index convention of reported Hankel determinants.
pub const HANKEL_CONVENTION: &str = "H_k = det[s_(i+j)], 0 <= i,j <= k (a (k+1)x(k+1) matrix)";

fn check_c(c: &BigRational) -> Result<()> {
    if *c < -BigRational::one() {
        return Err(Error::domain(format!("μ_c needs c ≥ -1, got {c}")));
    }
    Ok(())
}

/// Free cumulants of μ_c scaled by `q^{n/2}` (`c = p/q`); all integers.
fn scaled_free_cumulants(c: &BigRational, order: usize) -> Vec<BigInt> {
    if *c == -BigRational::one() {
        return vec![BigInt::zero(); order + 1];
    }
    free_from_moments_generic(&scaled_mu_c_moments(c, order))
}

/// Exact free cumulants `fc_0 … fc_order` of μ_c (index 0 is zero).
pub fn free_cumulants_of_mu_c(c: &BigRational, order: usize) -> Result<RationalSeq> {
    check_c(c)?;
    Error::check_bound("order", order, MAX_FID_ORDER)?;
    let q = c.denom().clone();
    let values = scaled_free_cumulants(c, order)
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            if n % 2 == 1 {
                BigRational::zero()
            } else {
                BigRational::new(v, Pow::pow(&q, (n / 2) as u32))
            }
        })
        .collect();
    RationalSeq::new(values, Role::Free)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidReport {
    #[serde(with = "serde_rational")]
    pub c: BigRational,
    pub tested_order: usize,
    /// Largest `k` whose pivot `β_k` was computed.
    pub depth: usize,
    pub verdict: Verdict,
    /// First `k` with `H_k ≤ 0` (equivalently the first nonpositive `β_k`).
    pub first_negative_index: Option<usize>,
    /// Sign of the failing pivot, when there is one.
    pub failing_pivot: Option<Sign>,
    /// Signs of `β_0 … β_depth`.
    pub beta_signs: Vec<Sign>,
    pub convention: String,
    pub note: Option<String>,
}

/// Tests positive definiteness of `s_n = fc_{n+2}(μ_c)` for `n ≤ order-2`.
///
/// The pivots are computed on the integer-scaled sequence; the scaling is a
/// positive diagonal congruence, so every Hankel sign is unchanged.
pub fn fid_test(c: &BigRational, order: usize) -> Result<FidReport> {
    check_c(c)?;
    if order < 4 {
        return Err(Error::domain("order must be at least 4"));
    }
    Error::check_bound("order", order, MAX_FID_ORDER)?;
    let depth = (order - 2) / 2;
    let mut report = FidReport {
        c: c.clone(),
        tested_order: order,
        depth,
        verdict: Verdict::Pass,
        first_negative_index: None,
        failing_pivot: None,
        beta_signs: vec![],
        convention: HANKEL_CONVENTION.to_string(),
        note: None,
    };
    if *c == -BigRational::one() {
        report.note = Some(
            "c = -1 is δ₀: every free cumulant vanishes, so the shifted sequence is the \
             moment sequence of the zero measure"
                .into(),
        );
        return Ok(report);
    }
    let s: Vec<BigRational> = scaled_free_cumulants(c, order)
        .into_iter()
        .skip(2)
        .map(BigRational::from_integer)
        .collect();
    let ch = chebyshev(&s);
    report.beta_signs = ch.beta.iter().map(crate::rational::sign).collect();
    let first_bad = report
        .beta_signs
        .iter()
        .position(|s| *s != Sign::Positive)
        .or(ch.zero_pivot);
    if let Some(k) = first_bad {
        report.verdict = Verdict::Fail;
        report.first_negative_index = Some(k);
        report.failing_pivot = Some(report.beta_signs.get(k).copied().unwrap_or(Sign::Zero));
    }
    Ok(report)
}

/// Sign of `det[seq_{i+j}]_{i,j=0..k}` by fraction-free elimination.
pub fn hankel_sign(seq: &RationalSeq, k: usize) -> Result<Sign> {
    Error::check_bound("k", k, MAX_HANKEL_DIRECT)?;
    if 2 * k >= seq.len() {
        return Err(Error::bound("2k", 2 * k, seq.len().saturating_sub(1)));
    }
    let v = seq.values();
    // scaling each row by a positive integer keeps the sign
    let rows = (0..=k).map(|i| integer_row(&v[i..=i + k])).collect();
    Ok(Sign::of_int(&det_bareiss(rows)))
}

/// Hankel signs `H_0 … H_depth` predicted from the pivots of `seq`.
pub fn hankel_signs_from_pivots(seq: &RationalSeq) -> Vec<Sign> {
    let ch = chebyshev(seq.values());
    let mut out: Vec<Sign> = (0..ch.beta.len())
        .map(|k| predicted_hankel_sign(&ch.beta, k))
        .collect();
    if ch.zero_pivot.is_some() {
        out.push(Sign::Zero);
    }
    out
}

/// The shifted sequence `s_n = fc_{n+2}(μ_c)`, `n = 0 … order-2`.
pub fn shifted_sequence_of_mu_c(c: &BigRational, order: usize) -> Result<RationalSeq> {
    let fc = free_cumulants_of_mu_c(c, order)?;
    RationalSeq::new(fc.values()[2..].to_vec(), Role::Shifted)
}
