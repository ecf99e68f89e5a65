//! Coefficientwise check of `-φφ' = φ - 1/z` for `φ(z) = Σ s_n z^{-n-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cumulants::gaussian_free_cumulants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalCheck {
    pub order: usize,
    pub holds: bool,
    /// Smallest `k` whose `z^{-k-1}` coefficients disagree.
    pub first_failure: Option<usize>,
}

/// Compares the `z^{-k-1}` coefficients, `k = 0 … s.len()-1`, of both sides.
///
/// `-φφ'` contributes `Σ_{a+b=k-2} (b+1) s_a s_b`; `φ - 1/z` contributes `s_k - [k=0]`.
pub fn formal_phi_ode_check_seq(s: &[BigRational]) -> FormalCheck {
    let first_failure = (0..s.len()).find(|&k| {
        let lhs: BigRational = if k >= 2 {
            (0..=k - 2)
                .map(|a| {
                    let b = k - 2 - a;
                    &s[a] * &s[b] * BigRational::from_integer(BigInt::from(b + 1))
                })
                .sum()
        } else {
            BigRational::zero()
        };
        let rhs = if k == 0 {
            &s[0] - BigRational::one()
        } else {
            s[k].clone()
        };
        lhs != rhs
    });
    FormalCheck {
        order: s.len().saturating_sub(1),
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// The identity on the Gaussian shifted sequence `s_0 … s_order`.
pub fn formal_phi_ode_check(order: usize) -> Result<FormalCheck> {
    if order < 1 {
        return Err(Error::domain("order must be at least 1"));
    }
    let s = gaussian_free_cumulants(order + 2)?.shifted;
    Ok(formal_phi_ode_check_seq(&s.values()[..=order]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn gaussian_sequence_satisfies_identity() {
        assert!(formal_phi_ode_check(12).unwrap().holds);
        assert!(formal_phi_ode_check(2).unwrap().holds);
        assert!(formal_phi_ode_check(60).unwrap().holds);
    }

    #[test]
    fn perturbation_is_caught() {
        let mut s = gaussian_free_cumulants(14).unwrap().shifted.into_values();
        s[6] += int(1);
        let r = formal_phi_ode_check_seq(&s[..=12]);
        assert!(!r.holds);
        assert_eq!(r.first_failure, Some(6));
        s[6] -= int(1);
        s[0] = int(2);
        assert_eq!(formal_phi_ode_check_seq(&s[..=2]).first_failure, Some(0));
    }
}
