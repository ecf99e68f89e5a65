//! Jacobi parameters, moments by weighted Motzkin paths, and the Chebyshev inverse.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_rational, serde_rational_vec, sign, RationalSeq, Role, Sign};

/// Largest moment order produced from Jacobi data.
pub const MAX_JACOBI_ORDER: usize = 1000;

/// Three-term recurrence data with `G(z) = 1/(z-α₀-β₁/(z-α₁-β₂/(…)))`.
///
/// `alpha[n]` is `α_n` and `beta[n]` is `β_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiParams {
    #[serde(with = "serde_rational_vec")]
    pub alpha: Vec<BigRational>,
    #[serde(with = "serde_rational_vec")]
    pub beta: Vec<BigRational>,
}

impl JacobiParams {
    pub fn depth(&self) -> usize {
        self.beta.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }
}

/// Jacobi data of μ_c: `α_n = 0`, `β_n = c+n`; `c = -1` gives δ₀ (all β zero).
pub fn mu_c_jacobi(c: &BigRational, depth: usize) -> Result<JacobiParams> {
    let minus_one = -BigRational::one();
    if *c < minus_one {
        return Err(Error::domain(format!("μ_c needs c ≥ -1, got {c}")));
    }
    if depth == 0 {
        return Err(Error::domain("depth must be at least 1"));
    }
    let beta = if *c == minus_one {
        vec![BigRational::zero(); depth]
    } else {
        (1..=depth)
            .map(|n| c + BigRational::from_integer(n.into()))
            .collect()
    };
    Ok(JacobiParams {
        alpha: vec![BigRational::zero(); depth],
        beta,
    })
}

/// `m_0 … m_order` as weighted Motzkin path counts over any ring.
///
/// An up step weighs 1, a level step at height `h` weighs `alpha[h]`, a down step
/// from height `h` weighs `beta[h-1]`. Callers guarantee the slices are long enough.
pub(crate) fn motzkin_moments<T: Clone + Num>(alpha: &[T], beta: &[T], order: usize) -> Vec<T> {
    let top = order / 2;
    let mut row = vec![T::zero(); top + 2];
    row[0] = T::one();
    let mut m = vec![T::one()];
    for step in 1..=order {
        // heights that can still return to 0
        let reach = step.min(order - step).min(top);
        let mut next = vec![T::zero(); top + 2];
        for h in 0..=reach {
            let mut v = T::zero();
            if h > 0 {
                v = v + row[h - 1].clone();
            }
            if !row[h].is_zero() && h < alpha.len() {
                v = v + alpha[h].clone() * row[h].clone();
            }
            if h < top && !row[h + 1].is_zero() {
                v = v + beta[h].clone() * row[h + 1].clone();
            }
            next[h] = v;
        }
        row = next;
        m.push(row[0].clone());
    }
    m
}

/// Exact moments `m_0 … m_order` of the measure with the given Jacobi data.
pub fn moments_from_jacobi(j: &JacobiParams, order: usize) -> Result<RationalSeq> {
    Error::check_bound("order", order, MAX_JACOBI_ORDER)?;
    Error::check_bound("order", order, 2 * j.beta.len())?;
    Error::check_bound("order", order.div_ceil(2), j.alpha.len())?;
    RationalSeq::moments(motzkin_moments(&j.alpha, &j.beta, order))
}

/// Raw output of the Chebyshev algorithm on `m_0 … m_{L-1}`.
///
/// `beta[0]` is the mass `β₀ = m_0`; `beta[k]` for `k ≥ 1` continues through
/// negative pivots and stops only at an exactly vanishing one.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev {
    pub alpha: Vec<BigRational>,
    pub beta: Vec<BigRational>,
    /// Index `k` with `σ_{k,k} = 0`, if the recursion stopped there.
    pub zero_pivot: Option<usize>,
}

/// Chebyshev's algorithm in exact arithmetic, to depth `⌊(L-1)/2⌋`.
///
/// `σ_{k,k} = β₀β₁…β_k = H_k / H_{k-1}` where `H_k = det[m_{i+j}]_{i,j=0..k}`.
pub fn chebyshev(m: &[BigRational]) -> Chebyshev {
    let len = m.len();
    let zero = BigRational::zero();
    if len == 0 || m[0].is_zero() {
        return Chebyshev {
            alpha: vec![],
            beta: vec![],
            zero_pivot: Some(0),
        };
    }
    let mut alpha = Vec::new();
    let mut beta = vec![m[0].clone()];
    if len >= 2 {
        alpha.push(&m[1] / &m[0]);
    }
    let mut prev = vec![zero.clone(); len];
    let mut cur = m.to_vec();
    let kmax = (len - 1) / 2;
    for k in 1..=kmax {
        let mut next = vec![zero.clone(); len];
        for l in k..len - k {
            let mut v = &cur[l + 1] - &alpha[k - 1] * &cur[l];
            if !prev[l].is_zero() {
                v -= &beta[k - 1] * &prev[l];
            }
            next[l] = v;
        }
        if next[k].is_zero() {
            return Chebyshev {
                alpha,
                beta,
                zero_pivot: Some(k),
            };
        }
        beta.push(&next[k] / &cur[k - 1]);
        if 2 * k + 2 <= len {
            alpha.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        }
        prev = cur;
        cur = next;
    }
    Chebyshev {
        alpha,
        beta,
        zero_pivot: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    /// Index `k` of the first nonpositive `β_k` (`k = 0` is the mass).
    pub index: usize,
    pub pivot: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiRecovery {
    #[serde(with = "serde_rational")]
    pub mass: BigRational,
    /// Parameters up to (excluding) the breakdown.
    pub params: JacobiParams,
    pub breakdown: Option<Breakdown>,
}

/// Exact Jacobi data from moments (or any sequence with nonzero `m_0`).
///
/// Recovery stops at the first pivot that vanishes or turns negative; that
/// index is reported rather than raised.
pub fn jacobi_from_moments(m: &RationalSeq) -> Result<JacobiRecovery> {
    if !matches!(m.role(), Role::Moment | Role::Shifted) {
        return Err(Error::domain("expected a moment or shifted sequence"));
    }
    let ch = chebyshev(m.values());
    let first_bad = ch.beta.iter().position(|b| !b.is_positive());
    let breakdown = match (first_bad, ch.zero_pivot) {
        (Some(i), _) => Some(Breakdown {
            index: i,
            pivot: sign(&ch.beta[i]),
        }),
        (None, Some(k)) => Some(Breakdown {
            index: k,
            pivot: Sign::Zero,
        }),
        (None, None) => None,
    };
    let mass = ch.beta.first().cloned().unwrap_or_else(BigRational::zero);
    let good = first_bad.unwrap_or(ch.beta.len());
    let depth = good.saturating_sub(1).min(ch.alpha.len());
    Ok(JacobiRecovery {
        mass,
        params: JacobiParams {
            alpha: ch.alpha[..depth].to_vec(),
            beta: ch.beta[1..=depth].to_vec(),
        },
        breakdown,
    })
}

/// Sign of `H_k` predicted from pivots: `H_k = Π_{j≤k} β_j^{k+1-j}`.
pub fn predicted_hankel_sign(beta: &[BigRational], k: usize) -> Sign {
    if beta[..=k].iter().any(Zero::is_zero) {
        return Sign::Zero;
    }
    let negative_odd = (0..=k)
        .filter(|&j| beta[j].is_negative() && (k + 1 - j) % 2 == 1)
        .count();
    if negative_odd % 2 == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Integer moments of μ_c scaled by `q^{n/2}` for `c = p/q`, i.e. with `β'_n = p + nq`.
pub(crate) fn scaled_mu_c_moments(c: &BigRational, order: usize) -> Vec<BigInt> {
    let (p, q) = (c.numer().clone(), c.denom().clone());
    let depth = order / 2 + 1;
    let beta: Vec<BigInt> = (1..=depth).map(|n| &p + &q * BigInt::from(n)).collect();
    let alpha = vec![BigInt::zero(); depth];
    motzkin_moments(&alpha, &beta, order)
}
