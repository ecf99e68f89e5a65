//! Free cumulants of the standard Gaussian and their shifted sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{RationalSeq, Role};

/// Largest order for the exact Gaussian recursions.
pub const MAX_GAUSSIAN_ORDER: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianCumulants {
    /// `fc_0 … fc_N`, odd orders zero.
    pub free: RationalSeq,
    /// `s_n = fc_{n+2}` for `n = 0 … N-2`.
    pub shifted: RationalSeq,
}

/// Even free cumulants `fc_2, fc_4, …, fc_{2n}` by the Riordan recursion
/// `fc_{2n} = (n-1) Σ_{i=1}^{n-1} fc_{2i} fc_{2(n-i)}`.
pub fn riordan(n: usize) -> Vec<BigInt> {
    // r[i] holds fc_{2i}
    let mut r = vec![BigInt::zero(); n + 1];
    if n >= 1 {
        r[1] = BigInt::one();
    }
    for k in 2..=n {
        let sum: BigInt = (1..k).map(|i| &r[i] * &r[k - i]).sum();
        r[k] = sum * BigInt::from(k - 1);
    }
    r
}

/// Even shifted values `s_0, s_2, …, s_{2n}` by `s_{2n} = n Σ_{i<n} s_{2i} s_{2(n-1-i)}`.
pub fn shifted_recursion1(n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::one()];
    for k in 1..=n {
        let sum: BigInt = (0..k).map(|i| &s[i] * &s[k - 1 - i]).sum();
        s.push(sum * BigInt::from(k));
    }
    s
}

/// Checks `s_{2n} = n Σ_{i<n} s_{2i} s_{2(n-1-i)}` on even values; returns the first failing `n`.
pub fn first_recursion1_failure(even: &[BigInt]) -> Option<usize> {
    (1..even.len()).find(|&k| {
        let sum: BigInt = (0..k).map(|i| &even[i] * &even[k - 1 - i]).sum();
        even[k] != sum * BigInt::from(k)
    })
}

/// Checks `s_{2n} = Σ_{i<n} (2i+1) s_{2i} s_{2(n-1-i)}`; returns the first failing `n`.
pub fn first_recursion2_failure(even: &[BigInt]) -> Option<usize> {
    (1..even.len()).find(|&k| {
        let sum: BigInt = (0..k)
            .map(|i| BigInt::from(2 * i + 1) * &even[i] * &even[k - 1 - i])
            .sum();
        even[k] != sum
    })
}

/// Gaussian free cumulants through order `order` (≥ 2), with the shifted sequence.
///
/// Both shifted recursions are verified on the result; a mismatch is reported
/// as a verification failure.
pub fn gaussian_free_cumulants(order: usize) -> Result<GaussianCumulants> {
    if order < 2 {
        return Err(Error::domain("order must be at least 2"));
    }
    Error::check_bound("order", order, MAX_GAUSSIAN_ORDER)?;
    let r = riordan(order / 2);
    let mut free = vec![BigInt::zero(); order + 1];
    for (i, v) in r.iter().enumerate().skip(1) {
        free[2 * i] = v.clone();
    }
    let even: Vec<BigInt> = r[1..].to_vec();
    if let Some(k) = first_recursion1_failure(&even) {
        return Err(Error::Verification(format!("first shifted recursion fails at s_{}", 2 * k)));
    }
    if let Some(k) = first_recursion2_failure(&even) {
        return Err(Error::Verification(format!("second shifted recursion fails at s_{}", 2 * k)));
    }
    let shifted = free[2..].to_vec();
    Ok(GaussianCumulants {
        free: RationalSeq::from_bigints(free, Role::Free)?,
        shifted: RationalSeq::from_bigints(shifted, Role::Shifted)?,
    })
}

/// Gaussian moments `(k-1)!!` through `order`.
pub fn gaussian_moments(order: usize) -> RationalSeq {
    let mut v = vec![BigInt::one()];
    for k in 1..=order {
        v.push(if k % 2 == 1 {
            BigInt::zero()
        } else {
            &v[k - 2] * BigInt::from(k - 1)
        });
    }
    RationalSeq::from_bigints(v, Role::Moment).expect("m0 = 1")
}

/// Free cumulants of the standard semicircle: `fc_2 = 1`, all others zero.
pub fn semicircle_free_cumulants(order: usize) -> RationalSeq {
    let v = (0..=order).map(|k| BigInt::from((k == 2) as u8)).collect();
    RationalSeq::from_bigints(v, Role::Free).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::series::free_from_moments;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn riordan_values() {
        assert_eq!(riordan(6), big(&[0, 1, 1, 4, 27, 248, 2830]));
    }

    #[test]
    fn gaussian_twelve() {
        let g = gaussian_free_cumulants(12).unwrap();
        assert_eq!(g.free[10], BigInt::from(248).into());
        assert_eq!(g.free[12], BigInt::from(2830).into());
        assert!(g.free.is_even());
        assert_eq!(g.shifted.values()[..5], g.free.values()[2..7]);
        assert_eq!(g.shifted[0], BigInt::one().into());
        assert_eq!(g.shifted[6], BigInt::from(27).into());
    }

    #[test]
    fn recursions_agree() {
        let s = shifted_recursion1(40);
        assert_eq!(s, riordan(41)[1..].to_vec());
        assert_eq!(first_recursion2_failure(&s), None);
        let mut bad = s.clone();
        bad[3] += 1;
        assert_eq!(first_recursion1_failure(&bad), Some(3));
        assert_eq!(first_recursion2_failure(&bad), Some(3));
    }

    #[test]
    fn matches_moment_route() {
        let f = free_from_moments(&gaussian_moments(30)).unwrap();
        assert_eq!(f, gaussian_free_cumulants(30).unwrap().free);
    }

    #[test]
    fn order_checks() {
        assert!(gaussian_free_cumulants(1).is_err());
        assert!(matches!(gaussian_free_cumulants(1001), Err(Error::Bound { .. })));
    }
}
