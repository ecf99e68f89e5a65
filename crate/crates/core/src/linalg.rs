//! Fraction-free (Bareiss) elimination over big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Multiplies a rational row by the lcm of its denominators.
pub fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter()
        .map(|r| r.numer() * (&l / r.denom()))
        .collect()
}

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every intermediate division is exact, so entries stay integral throughout.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Solves `a x = b` exactly for a nonsingular rational system.
///
/// Rows are scaled to integers, reduced to upper-triangular form with
/// fraction-free steps, then back-substituted in rationals.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::domain("solve needs a square system"));
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full)
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Err(Error::Structure("singular linear system".into()));
            };
            m.swap(k, i);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(bi(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(det_bareiss(bi(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            det_bareiss(bi(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::zero()
        );
        // Hankel matrix of Gaussian moments 1,0,1,0,3: det = 1*(1*3-0) - 0 + 1*(0-1) = 2
        assert_eq!(
            det_bareiss(bi(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 3]])),
            BigInt::from(2)
        );
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![rat(1, 2), int(1)], vec![int(3), rat(-1, 3)]];
        let b = vec![int(2), int(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1], b[0]);
        assert_eq!(&a[1][0] * &x[0] + &a[1][1] * &x[1], b[1]);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(2)]).is_err());
    }
}
