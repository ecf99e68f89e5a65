//! Moment–cumulant conversions by triangular series recursions.
//!
//! The free recursions are division-free and generic over any commutative ring,
//! so integer moment data yields integer cumulants without rational overhead.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use crate::error::{Error, Result};
use crate::rational::{RationalSeq, Role};

fn require_role(seq: &RationalSeq, role: Role) -> Result<()> {
    if seq.role() != role {
        return Err(Error::domain(format!(
            "expected a {role:?} sequence, got {:?}",
            seq.role()
        )));
    }
    Ok(())
}

/// `[z^j] M(z)^s` for `s ≥ 1` and `s + j ≤ n`, filled as moments become known.
struct PowerTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Clone + Num> PowerTable<T> {
    fn new(n: usize) -> Self {
        PowerTable {
            rows: (0..=n).map(|s| Vec::with_capacity(n + 1 - s)).collect(),
        }
    }

    /// Extends every row so that `[z^{k-s}] M^s` is available, given `m[0..k]`.
    fn extend(&mut self, m: &[T], k: usize) {
        for s in 1..=k {
            let j = k - s;
            let v = if s == 1 {
                m[j].clone()
            } else {
                let prev = &self.rows[s - 1];
                (0..=j).fold(T::zero(), |acc, i| acc + m[i].clone() * prev[j - i].clone())
            };
            debug_assert_eq!(self.rows[s].len(), j);
            self.rows[s].push(v);
        }
    }

    fn get(&self, s: usize, j: usize) -> &T {
        &self.rows[s][j]
    }
}

/// Free cumulants from moments over any ring; `m[0]` must be the unit.
///
/// Uses `M(z) = C(z M(z))`, i.e. `m_n = Σ_s κ_s [z^{n-s}] M(z)^s`. Index 0 of the
/// result is zero.
pub fn free_from_moments_generic<T: Clone + Num>(m: &[T]) -> Vec<T> {
    let n = m.len().saturating_sub(1);
    let mut table = PowerTable::new(n);
    let mut k = vec![T::zero(); n + 1];
    for order in 1..=n {
        table.extend(m, order);
        let mut acc = m[order].clone();
        for s in 1..order {
            acc = acc - k[s].clone() * table.get(s, order - s).clone();
        }
        k[order] = acc;
    }
    k
}

/// Moments from free cumulants over any ring.
pub fn moments_from_free_generic<T: Clone + Num>(k: &[T]) -> Vec<T> {
    let n = k.len().saturating_sub(1);
    let mut table = PowerTable::new(n);
    let mut m = vec![T::one(); n + 1];
    for order in 1..=n {
        table.extend(&m, order);
        let mut acc = k[order].clone();
        for s in 1..order {
            acc = acc + k[s].clone() * table.get(s, order - s).clone();
        }
        m[order] = acc;
    }
    m
}

pub fn free_from_moments(m: &RationalSeq) -> Result<RationalSeq> {
    require_role(m, Role::Moment)?;
    RationalSeq::new(free_from_moments_generic(m.values()), Role::Free)
}

pub fn moments_from_free(f: &RationalSeq) -> Result<RationalSeq> {
    require_role(f, Role::Free)?;
    RationalSeq::moments(moments_from_free_generic(f.values()))
}

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Classical cumulants: `m_n = Σ_k C(n-1,k-1) κ_k m_{n-k}` solved for `κ_n`.
pub fn classical_from_moments(m: &RationalSeq) -> Result<RationalSeq> {
    require_role(m, Role::Moment)?;
    let n = m.order();
    let mut k = vec![BigRational::zero(); n + 1];
    for order in 1..=n {
        let mut acc = m[order].clone();
        for j in 1..order {
            acc -= binom(order - 1, j - 1) * &k[j] * &m[order - j];
        }
        k[order] = acc;
    }
    RationalSeq::new(k, Role::Classical)
}

pub fn moments_from_classical(c: &RationalSeq) -> Result<RationalSeq> {
    require_role(c, Role::Classical)?;
    let n = c.order();
    let mut m = vec![BigRational::zero(); n + 1];
    m[0] = BigRational::from_integer(1.into());
    for order in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=order {
            acc += binom(order - 1, j - 1) * &c[j] * &m[order - j];
        }
        m[order] = acc;
    }
    RationalSeq::moments(m)
}

/// Boolean cumulants: `M = 1/(1 - H)`, i.e. `m_n = Σ_k b_k m_{n-k}`.
pub fn boolean_from_moments(m: &RationalSeq) -> Result<RationalSeq> {
    require_role(m, Role::Moment)?;
    let n = m.order();
    let mut b = vec![BigRational::zero(); n + 1];
    for order in 1..=n {
        let mut acc = m[order].clone();
        for j in 1..order {
            acc -= &b[j] * &m[order - j];
        }
        b[order] = acc;
    }
    RationalSeq::new(b, Role::Boolean)
}

pub fn moments_from_boolean(b: &RationalSeq) -> Result<RationalSeq> {
    require_role(b, Role::Boolean)?;
    let n = b.order();
    let mut m = vec![BigRational::zero(); n + 1];
    m[0] = BigRational::from_integer(1.into());
    for order in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=order {
            acc += &b[j] * &m[order - j];
        }
        m[order] = acc;
    }
    RationalSeq::moments(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn gaussian(n: usize) -> RationalSeq {
        let mut v = vec![int(1)];
        for k in 1..=n {
            v.push(if k % 2 == 1 {
                int(0)
            } else {
                &v[k - 2] * int(k as i64 - 1)
            });
        }
        RationalSeq::moments(v).unwrap()
    }

    fn ints(seq: &RationalSeq) -> Vec<i64> {
        seq.values()
            .iter()
            .map(|v| v.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn gaussian_classical() {
        let c = classical_from_moments(&gaussian(6)).unwrap();
        assert_eq!(ints(&c), vec![0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn gaussian_free() {
        let f = free_from_moments(&gaussian(12)).unwrap();
        assert_eq!(ints(&f), vec![0, 0, 1, 0, 1, 0, 4, 0, 27, 0, 248, 0, 2830]);
    }

    #[test]
    fn gaussian_boolean() {
        let b = boolean_from_moments(&gaussian(6)).unwrap();
        assert_eq!(ints(&b), vec![0, 0, 1, 0, 2, 0, 10]);
    }

    #[test]
    fn small_classical() {
        let m = RationalSeq::from_ints(&[1, 1, 2, 5], Role::Moment).unwrap();
        let c = classical_from_moments(&m).unwrap();
        assert_eq!(ints(&c), vec![0, 1, 1, 1]);
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let f = RationalSeq::from_ints(&[0, 0, 1, 0, 0, 0, 0, 0, 0], Role::Free).unwrap();
        let m = moments_from_free(&f).unwrap();
        assert_eq!(ints(&m), vec![1, 0, 1, 0, 2, 0, 5, 0, 14]);
    }

    #[test]
    fn delta_zero() {
        let m = RationalSeq::from_ints(&[1, 0, 0, 0, 0], Role::Moment).unwrap();
        for k in [
            classical_from_moments(&m).unwrap(),
            free_from_moments(&m).unwrap(),
            boolean_from_moments(&m).unwrap(),
        ] {
            assert!(k.values().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn round_trips() {
        let m = RationalSeq::moments(vec![
            int(1),
            rat(1, 2),
            rat(2, 3),
            rat(-1, 7),
            int(3),
            rat(5, 11),
            rat(13, 4),
        ])
        .unwrap();
        assert_eq!(moments_from_classical(&classical_from_moments(&m).unwrap()).unwrap(), m);
        assert_eq!(moments_from_free(&free_from_moments(&m).unwrap()).unwrap(), m);
        assert_eq!(moments_from_boolean(&boolean_from_moments(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn integer_ring() {
        let m: Vec<BigInt> = [1, 0, 1, 0, 3, 0, 15].iter().map(|&v| BigInt::from(v)).collect();
        let k = free_from_moments_generic(&m);
        assert_eq!(k[6], BigInt::from(4));
        assert_eq!(moments_from_free_generic(&k), m);
    }

    #[test]
    fn role_is_checked() {
        let f = RationalSeq::from_ints(&[0, 1], Role::Free).unwrap();
        assert!(free_from_moments(&f).is_err());
    }
}
