//! Weighted pairing sums and cumulant-coordinate operations on distributions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{for_each_pairing, Partition, MAX_PAIRING_LIST};
use crate::rational::{serde_rational, RationalSeq, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightKind {
    /// `s^{cc(π)}`
    CcPower,
    /// `q^{cr(π)}`
    CrPower,
    /// `b^{n - h(π)}` for a pairing of `2n` points
    Bdj,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    #[serde(with = "serde_rational")]
    pub parameter: BigRational,
}

impl WeightSpec {
    pub fn new(kind: WeightKind, parameter: BigRational) -> Self {
        WeightSpec { kind, parameter }
    }

    /// Exponent of the parameter for one pairing.
    pub fn exponent(kind: WeightKind, p: &Partition) -> usize {
        match kind {
            WeightKind::CcPower => p.statistics().cc,
            WeightKind::CrPower => p.crossings(),
            WeightKind::Bdj => p.num_blocks() - p.statistics().h,
        }
    }
}

/// Number of pairings of `[n]` with each value of the weight exponent.
pub fn weight_histogram(n: usize, kind: WeightKind) -> Result<Vec<BigInt>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::domain(format!("expected a positive even order, got {n}")));
    }
    Error::check_bound("n", n, MAX_PAIRING_LIST)?;
    let mut hist: Vec<u64> = Vec::new();
    for_each_pairing(n, |p| {
        let e = WeightSpec::exponent(kind, p);
        if hist.len() <= e {
            hist.resize(e + 1, 0);
        }
        hist[e] += 1;
    })?;
    Ok(hist.into_iter().map(BigInt::from).collect())
}

/// `Σ_{π ∈ P_2(n)} w(π)` for the weight `w`.
pub fn weighted_pairing_moment(n: usize, w: &WeightSpec) -> Result<BigRational> {
    let hist = weight_histogram(n, w.kind)?;
    Ok(hist
        .iter()
        .enumerate()
        .map(|(e, count)| BigRational::from_integer(count.clone()) * Pow::pow(&w.parameter, e))
        .sum())
}

/// `Σ_{π ∈ NC_2(2n)} Π_V (ip(V) + 1)`.
pub fn nc_innerpoint_sum(two_n: usize) -> Result<BigInt> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::domain(format!("expected a positive even order, got {two_n}")));
    }
    Error::check_bound("two_n", two_n, MAX_PAIRING_LIST)?;
    let mut total = BigInt::zero();
    for_each_pairing(two_n, |p| {
        if p.is_noncrossing() {
            let prod: u64 = p.statistics().ip.iter().map(|&i| i as u64 + 1).product();
            total += prod;
        }
    })?;
    Ok(total)
}

fn require_cumulants(seq: &RationalSeq, role: Role) -> Result<()> {
    if seq.role() != role {
        return Err(Error::domain(format!("expected {role:?} cumulants, got {:?}", seq.role())));
    }
    Ok(())
}

/// Dilation `D_b`: `fc_n ↦ bⁿ fc_n`.
pub fn dilate_free(f: &RationalSeq, b: &BigRational) -> Result<RationalSeq> {
    require_cumulants(f, Role::Free)?;
    let mut scale = BigRational::one();
    let mut out = Vec::with_capacity(f.len());
    for v in f.values() {
        out.push(v * &scale);
        scale *= b;
    }
    RationalSeq::new(out, Role::Free)
}

/// Dilation that multiplies the variance by `v`: `fc_n ↦ v^{n/2} fc_n`.
///
/// Defined for even sequences only, so that `v` need not be a square.
pub fn dilate_free_variance(f: &RationalSeq, v: &BigRational) -> Result<RationalSeq> {
    require_cumulants(f, Role::Free)?;
    if !f.is_even() {
        return Err(Error::domain("variance dilation needs a sequence with vanishing odd terms"));
    }
    let out = f
        .values()
        .iter()
        .enumerate()
        .map(|(n, x)| x * Pow::pow(v, n / 2))
        .collect();
    RationalSeq::new(out, Role::Free)
}

/// Free convolution power `μ^{⊞s}`: `fc_n ↦ s·fc_n`.
pub fn free_power(f: &RationalSeq, s: &BigRational) -> Result<RationalSeq> {
    require_cumulants(f, Role::Free)?;
    RationalSeq::new(f.values().iter().map(|x| x * s).collect(), Role::Free)
}

fn add(a: &RationalSeq, b: &RationalSeq, role: Role) -> Result<RationalSeq> {
    require_cumulants(a, role)?;
    require_cumulants(b, role)?;
    a.require_aligned(b)?;
    let v = a.values().iter().zip(b.values()).map(|(x, y)| x + y).collect();
    RationalSeq::new(v, role)
}

pub fn free_convolve(f1: &RationalSeq, f2: &RationalSeq) -> Result<RationalSeq> {
    add(f1, f2, Role::Free)
}

pub fn boolean_convolve(b1: &RationalSeq, b2: &RationalSeq) -> Result<RationalSeq> {
    add(b1, b2, Role::Boolean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::gaussian::{gaussian_free_cumulants, semicircle_free_cumulants};
    use crate::cumulants::series::moments_from_free;
    use crate::rational::{int, rat};

    #[test]
    fn histograms() {
        assert_eq!(weight_histogram(4, WeightKind::CcPower).unwrap(), vec![0.into(), 1.into(), 2.into()]);
        assert_eq!(weight_histogram(2, WeightKind::CcPower).unwrap(), vec![0.into(), 1.into()]);
        assert!(weight_histogram(3, WeightKind::CcPower).is_err());
    }

    #[test]
    fn cc_power_four() {
        for s in [rat(1, 2), int(2), int(3)] {
            let w = WeightSpec::new(WeightKind::CcPower, s.clone());
            assert_eq!(weighted_pairing_moment(4, &w).unwrap(), &s * &s * int(2) + &s);
        }
        let w = WeightSpec::new(WeightKind::CcPower, rat(2, 7));
        assert_eq!(weighted_pairing_moment(2, &w).unwrap(), rat(2, 7));
    }

    #[test]
    fn crossing_weight_extremes() {
        let mut double_factorial = 1i64;
        let catalan = [1i64, 1, 2, 5, 14, 42, 132];
        for n in 1..=6 {
            double_factorial *= 2 * n as i64 - 1;
            let one = WeightSpec::new(WeightKind::CrPower, int(1));
            let zero = WeightSpec::new(WeightKind::CrPower, int(0));
            assert_eq!(weighted_pairing_moment(2 * n, &one).unwrap(), int(double_factorial));
            assert_eq!(weighted_pairing_moment(2 * n, &zero).unwrap(), int(catalan[n]));
        }
    }

    #[test]
    fn innerpoint_sum() {
        assert_eq!(nc_innerpoint_sum(2).unwrap(), BigInt::from(1));
        assert_eq!(nc_innerpoint_sum(6).unwrap(), BigInt::from(27));
        assert_eq!(nc_innerpoint_sum(8).unwrap(), BigInt::from(248));
    }

    #[test]
    fn gbm_power_four() {
        let g = gaussian_free_cumulants(4).unwrap().free;
        for s in [rat(1, 3), int(2)] {
            let m = moments_from_free(&free_power(&g, &s).unwrap()).unwrap();
            assert_eq!(m[4], &s + &s * &s * int(2));
        }
    }

    #[test]
    fn dilation_and_convolution() {
        let g = gaussian_free_cumulants(8).unwrap().free;
        assert_eq!(dilate_free(&g, &int(1)).unwrap(), g);
        assert_eq!(dilate_free(&g, &int(2)).unwrap()[4], int(16));
        assert_eq!(dilate_free_variance(&g, &int(2)).unwrap()[4], int(4));
        let s = semicircle_free_cumulants(6);
        let sum = free_convolve(&s, &s).unwrap();
        assert_eq!(sum.values(), RationalSeq::from_ints(&[0, 0, 2, 0, 0, 0, 0], Role::Free).unwrap().values());
        assert!(free_convolve(&s, &g).is_err());
        let b = RationalSeq::from_ints(&[0, 1, 2], Role::Boolean).unwrap();
        assert_eq!(boolean_convolve(&b, &b).unwrap()[2], int(4));
    }
}
